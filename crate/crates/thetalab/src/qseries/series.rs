use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent series sum_{n >= val} c_n q^n, known modulo q^prec.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    pub val: i64,
    pub coeffs: Vec<BigRational>,
    pub prec: i64,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QSeries {
    pub fn new(val: i64, coeffs: Vec<BigRational>, prec: i64) -> Self {
        let mut s = QSeries { val, coeffs, prec };
        s.truncate();
        s
    }

    pub fn from_ints(val: i64, c: &[i64], prec: i64) -> Self {
        QSeries::new(val, c.iter().map(|&x| big(x)).collect(), prec)
    }

    pub fn one(prec: i64) -> Self {
        QSeries::new(0, vec![BigRational::one()], prec)
    }

    fn truncate(&mut self) {
        let keep = (self.prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.val += 1;
        }
    }

    /// Coefficient of q^n (zero outside the stored range; panics beyond precision).
    pub fn coeff(&self, n: i64) -> BigRational {
        assert!(n < self.prec, "coefficient q^{n} beyond precision {}", self.prec);
        if n < self.val {
            return BigRational::zero();
        }
        self.coeffs.get((n - self.val) as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_f64(&self, n: i64) -> f64 {
        let c = self.coeff(n);
        c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QSeries::new(self.val, self.coeffs.iter().map(|x| x * c).collect(), self.prec)
    }

    pub fn shift(&self, k: i64) -> Self {
        QSeries::new(self.val + k, self.coeffs.clone(), self.prec + k)
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Self {
        let a0 = self.coeffs.first().expect("inverse of zero series").clone();
        let rel = self.prec - self.val;
        let n = rel.max(0) as usize;
        let mut b = vec![BigRational::zero(); n];
        if n > 0 {
            b[0] = BigRational::one() / &a0;
        }
        for k in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += &self.coeffs[j] * &b[k - j];
            }
            b[k] = -s / &a0;
        }
        QSeries::new(-self.val, b, -self.val + rel)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = QSeries::one(self.prec - self.val);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inverse()
    }

    pub fn eval_f64(&self, q: num_complex::Complex64) -> num_complex::Complex64 {
        let mut s = num_complex::Complex64::new(0.0, 0.0);
        let mut qn = q.powi(self.val as i32);
        for c in &self.coeffs {
            let cf = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            s += qn * cf;
            qn *= q;
        }
        s
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let prec = self.prec.min(o.prec);
        let val = self.val.min(o.val);
        let n = (prec - val).max(0) as usize;
        let c = (0..n)
            .map(|i| {
                let k = val + i as i64;
                self.coeff(k) + o.coeff(k)
            })
            .collect();
        QSeries::new(val, c, prec)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.val, self.coeffs.iter().map(|c| -c).collect(), self.prec)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self + &(-o)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let val = self.val + o.val;
        let prec = (self.prec + o.val).min(o.prec + self.val);
        let n = (prec - val).max(0) as usize;
        let mut c = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        QSeries::new(val, c, prec)
    }
}

fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// 1 + c * sum sigma_{k}(n) q^n.
fn eisenstein(k: u32, c: i64, prec: i64) -> QSeries {
    let mut v = vec![BigRational::one()];
    for n in 1..prec.max(1) {
        v.push(BigRational::from_integer(sigma(k, n as u64) * c));
    }
    QSeries::new(0, v, prec)
}

pub fn e4(prec: i64) -> QSeries {
    eisenstein(3, 240, prec)
}

pub fn e6(prec: i64) -> QSeries {
    eisenstein(5, -504, prec)
}

pub fn delta(prec: i64) -> QSeries {
    let a = e4(prec).pow(3);
    let b = e6(prec).pow(2);
    (&a - &b).scale(&(BigRational::one() / big(1728)))
}

/// Known scalar level-one series, exact up to q^prec.
pub fn classic_series(name: &str, prec: i64) -> Result<QSeries> {
    if prec < 1 {
        return Err(Error::Parse(format!("prec must be at least 1, got {prec}")));
    }
    let work = prec + 4;
    let s = match name {
        "E4" => e4(work),
        "E6" => e6(work),
        "Delta" => delta(work),
        "j" => e4(work + 2).pow(3).div(&delta(work + 2)),
        "j_minus_744" => {
            let j = e4(work + 2).pow(3).div(&delta(work + 2));
            &j - &QSeries::from_ints(0, &[744], j.prec)
        }
        "E4sqE6_over_DeltaSq" => {
            let d = delta(work + 4);
            let num = &e4(work + 4).pow(2) * &e6(work + 4);
            num.div(&(&d * &d))
        }
        _ => return Err(Error::UnknownSeries(name.to_string())),
    };
    let mut s = s;
    s.prec = s.prec.min(prec);
    s.truncate();
    Ok(s)
}
