use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Gaussian rational re + i im.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for &GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Mul for &GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

/// Exact scalars: finite sums of Gaussian rationals times sqrt(2)^b pi^a, b in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    terms: BTreeMap<(i32, u8), GaussQ>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::rat(1, 1)
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Coeff::monomial(q(n, d), BigRational::zero(), 0, 0)
    }

    pub fn from_big(r: BigRational) -> Self {
        Coeff::monomial(r, BigRational::zero(), 0, 0)
    }

    pub fn i() -> Self {
        Coeff::monomial(BigRational::zero(), BigRational::one(), 0, 0)
    }

    pub fn sqrt2() -> Self {
        Coeff::monomial(BigRational::one(), BigRational::zero(), 0, 1)
    }

    /// pi^a.
    pub fn pi_pow(a: i32) -> Self {
        Coeff::monomial(BigRational::one(), BigRational::zero(), a, 0)
    }

    /// r * pi^a * sqrt(2)^b for any integer b.
    pub fn scaled(n: i64, d: i64, pi: i32, sqrt2: i32) -> Self {
        let half = sqrt2.div_euclid(2);
        let odd = sqrt2.rem_euclid(2) as u8;
        let two = if half >= 0 {
            BigRational::from_integer(BigInt::from(2).pow(half as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(2).pow((-half) as u32))
        };
        Coeff::monomial(q(n, d) * two, BigRational::zero(), pi, odd)
    }

    fn monomial(re: BigRational, im: BigRational, a: i32, b: u8) -> Self {
        let mut c = Coeff::zero();
        let g = GaussQ::new(re, im);
        if !g.is_zero() {
            c.terms.insert((a, b), g);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn conj(&self) -> Self {
        Coeff {
            terms: self.terms.iter().map(|(k, g)| (*k, GaussQ::new(g.re.clone(), -&g.im))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Coeff::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Numerical value, for reporting only.
    pub fn to_c64(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let f = |r: &BigRational| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
        self.terms
            .iter()
            .map(|(&(a, b), g)| {
                let s = std::f64::consts::PI.powi(a) * if b == 1 { std::f64::consts::SQRT_2 } else { 1.0 };
                num_complex::Complex64::new(f(&g.re), f(&g.im)) * s
            })
            .sum()
    }

    fn add_term(&mut self, key: (i32, u8), g: GaussQ) {
        let e = self.terms.entry(key).or_insert_with(|| GaussQ::new(BigRational::zero(), BigRational::zero()));
        *e = &*e + &g;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        for (k, g) in &o.terms {
            self.add_term(*k, g.clone());
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { terms: self.terms.iter().map(|(k, g)| (*k, GaussQ::new(-&g.re, -&g.im))).collect() }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut r = Coeff::zero();
        for (&(a1, b1), g1) in &self.terms {
            for (&(a2, b2), g2) in &o.terms {
                let mut g = g1 * g2;
                let b = b1 + b2;
                if b == 2 {
                    let two = BigRational::from_integer(BigInt::from(2));
                    g = GaussQ::new(&g.re * &two, &g.im * &two);
                }
                r.add_term((a1 + a2, b % 2), g);
            }
        }
        r
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = match (g.re.is_zero(), g.im.is_zero()) {
                (false, true) => format!("{}", g.re),
                (true, false) => format!("{}i", g.im),
                _ => format!("({}{}{}i)", g.re, if g.im.is_negative() { "" } else { "+" }, g.im),
            };
            write!(f, "{c}")?;
            if b == 1 {
                write!(f, "*sqrt2")?;
            }
            if a != 0 {
                write!(f, "*pi^{a}")?;
            }
        }
        Ok(())
    }
}
