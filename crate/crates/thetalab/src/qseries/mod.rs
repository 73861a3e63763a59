//! Vector-valued q-expansions, weak Maass forms given by their two
//! coefficient tables, the xi-operator and the duality pairing.

mod induce;
mod series;

pub use induce::{eta, gamma0_cosets, induce_from_scalar, level_one, modularity_residual, Induced, ScalarForm};
pub use series::{classic_series, delta, e4, e6, QSeries};

use crate::error::{Error, Result};
use crate::fqm::{frac, WeilRep};
use crate::special::h_function;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// A Fourier coefficient, exact (real and imaginary rational parts) or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Coef {
    Exact(BigRational, BigRational),
    Float(Complex64),
}

fn big_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl Coef {
    pub fn rational(r: BigRational) -> Self {
        Coef::Exact(r, BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Coef::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Coef::int(0)
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Coef::Exact(re, im) => Complex64::new(big_to_f64(re), big_to_f64(im)),
            Coef::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coef::Exact(..))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Exact(re, im) => re.is_zero() && im.is_zero(),
            Coef::Float(z) => *z == Complex64::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Coef::Exact(re, im) => Coef::Exact(re.clone(), -im),
            Coef::Float(z) => Coef::Float(z.conj()),
        }
    }

    pub fn add(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Exact(a, b), Coef::Exact(c, d)) => Coef::Exact(a + c, b + d),
            _ => Coef::Float(self.to_c64() + o.to_c64()),
        }
    }

    pub fn mul(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Exact(a, b), Coef::Exact(c, d)) => Coef::Exact(a * c - b * d, a * d + b * c),
            _ => Coef::Float(self.to_c64() * o.to_c64()),
        }
    }
}

fn rat_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn e_tau(n: Rational64, tau: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI * rat_f64(n)) * tau).exp()
}

/// True when n is an admissible exponent for component h of `rep`.
fn in_support(rep: &WeilRep, h: usize, n: Rational64) -> bool {
    frac(n - rep.disc.q_signed(h, rep.dual)).is_zero()
}

fn check_support(rep: &WeilRep, table: &BTreeMap<(usize, Rational64), Coef>) -> Result<()> {
    for &(h, n) in table.keys() {
        if h >= rep.dim() {
            return Err(Error::Mismatch(format!("component {h} outside a group of order {}", rep.dim())));
        }
        if !in_support(rep, h, n) {
            return Err(Error::Mismatch(format!("exponent {n} not admissible for component {h}")));
        }
    }
    Ok(())
}

/// A holomorphic vector-valued q-expansion sum c(h,n) q^n e_h, known for n < prec.
#[derive(Clone, Debug)]
pub struct VVSeries {
    pub weight: Rational64,
    pub rep: WeilRep,
    pub coeffs: BTreeMap<(usize, Rational64), Coef>,
    pub prec: Rational64,
}

impl VVSeries {
    pub fn new(weight: Rational64, rep: WeilRep, prec: Rational64) -> Self {
        VVSeries { weight, rep, coeffs: BTreeMap::new(), prec }
    }

    pub fn insert(&mut self, h: usize, n: Rational64, c: Coef) -> Result<()> {
        if !in_support(&self.rep, h, n) {
            return Err(Error::Mismatch(format!("exponent {n} not admissible for component {h}")));
        }
        if n >= self.prec {
            return Err(Error::Mismatch(format!("exponent {n} beyond precision {}", self.prec)));
        }
        if !c.is_zero() {
            self.coeffs.insert((h, n), c);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        check_support(&self.rep, &self.coeffs)
    }

    pub fn get(&self, h: usize, n: Rational64) -> Coef {
        self.coeffs.get(&(h, n)).cloned().unwrap_or_else(Coef::zero)
    }

    /// A scalar level-one series as a form for the trivial representation.
    pub fn from_scalar(s: &QSeries, weight: Rational64, rep: WeilRep) -> Result<Self> {
        if rep.dim() != 1 {
            return Err(Error::Mismatch("scalar series need a one-dimensional representation".into()));
        }
        let mut out = VVSeries::new(weight, rep, Rational64::from_integer(s.prec));
        for (i, c) in s.coeffs.iter().enumerate() {
            out.insert(0, Rational64::from_integer(s.val + i as i64), Coef::rational(c.clone()))?;
        }
        Ok(out)
    }

    pub fn eval(&self, tau: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.rep.dim()];
        for (&(h, n), c) in &self.coeffs {
            out[h] += c.to_c64() * e_tau(n, tau);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Coef::is_zero)
    }

    pub fn is_cuspidal(&self) -> bool {
        self.coeffs.keys().all(|&(_, n)| n > Rational64::zero())
    }
}

/// Which subspace of weak Maass forms a coefficient table claims to lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormClass {
    WeaklyHolomorphic,
    HPlus,
    HGeneral,
}

impl FormClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormClass::WeaklyHolomorphic => "weakly_holomorphic",
            FormClass::HPlus => "H_plus",
            FormClass::HGeneral => "H_general",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "weakly_holomorphic" => Ok(FormClass::WeaklyHolomorphic),
            "H_plus" => Ok(FormClass::HPlus),
            "H_general" => Ok(FormClass::HGeneral),
            _ => Err(Error::Parse(format!("unknown form class {s}"))),
        }
    }
}

/// f = f^+ + f^- with f^+ = sum a+(h,n) e(n tau) and
/// f^- = sum a-(h,0) v^{1-k} + sum_{n != 0} a-(h,n) H(2 pi n v) e(n u).
#[derive(Clone, Debug)]
pub struct WeakMaassForm {
    pub weight: Rational64,
    pub rep: WeilRep,
    pub plus: BTreeMap<(usize, Rational64), Coef>,
    pub minus: BTreeMap<(usize, Rational64), Coef>,
    pub class: FormClass,
    pub prec: Rational64,
}

impl WeakMaassForm {
    pub fn weakly_holomorphic(s: VVSeries) -> Self {
        WeakMaassForm {
            weight: s.weight,
            rep: s.rep,
            plus: s.coeffs,
            minus: BTreeMap::new(),
            class: FormClass::WeaklyHolomorphic,
            prec: s.prec,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_support(&self.rep, &self.plus)?;
        check_support(&self.rep, &self.minus)?;
        match self.class {
            FormClass::WeaklyHolomorphic if self.minus.values().any(|c| !c.is_zero()) => {
                Err(Error::Mismatch("weakly holomorphic form with a nonholomorphic part".into()))
            }
            FormClass::HPlus if self.minus.iter().any(|(&(_, n), c)| n >= Rational64::zero() && !c.is_zero()) => {
                Err(Error::Mismatch("H_plus form with a-(h,n) != 0 for some n >= 0".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn weight_f64(&self) -> f64 {
        rat_f64(self.weight)
    }

    /// Holomorphic part as a series.
    pub fn plus_series(&self) -> VVSeries {
        VVSeries { weight: self.weight, rep: self.rep.clone(), coeffs: self.plus.clone(), prec: self.prec }
    }

    /// Checks a+(-h, n) = sign * a+(h, n) on the stored table.
    pub fn has_parity(&self, sign: i32) -> bool {
        self.plus.iter().all(|(&(h, n), c)| {
            let other = self.plus.get(&(self.rep.disc.neg[h], n)).map(|c| c.to_c64()).unwrap_or_default();
            (other - c.to_c64() * sign as f64).norm() <= 1e-12 * (1.0 + c.to_c64().norm())
        })
    }

    /// Values of f^+ and f^- at tau, with a tail estimate (ten times the last stored term).
    pub fn eval_parts(&self, tau: Complex64) -> Result<(Vec<Complex64>, Vec<Complex64>, f64)> {
        let d = self.rep.dim();
        let k = self.weight_f64();
        let v = tau.im;
        let mut fp = vec![Complex64::zero(); d];
        let mut fm = vec![Complex64::zero(); d];
        let mut last = 0.0f64;
        for (&(h, n), c) in &self.plus {
            let t = c.to_c64() * e_tau(n, tau);
            fp[h] += t;
            last = t.norm();
        }
        let mut tail = 10.0 * last;
        let mut lastm = 0.0f64;
        for (&(h, n), c) in &self.minus {
            let t = if n.is_zero() {
                c.to_c64() * v.powf(1.0 - k)
            } else {
                let nf = rat_f64(n);
                let w = 2.0 * PI * nf * v;
                let phase = Complex64::new(0.0, 2.0 * PI * nf * tau.re).exp();
                c.to_c64() * h_function(k, w)? * phase
            };
            fm[h] += t;
            if n < Rational64::zero() && lastm == 0.0 {
                lastm = t.norm();
            }
        }
        tail += 10.0 * lastm;
        Ok((fp, fm, tail))
    }

    pub fn eval(&self, tau: Complex64) -> Result<(Vec<Complex64>, f64)> {
        let (p, m, tail) = self.eval_parts(tau)?;
        Ok((p.iter().zip(&m).map(|(a, b)| a + b).collect(), tail))
    }

    /// Builds an H_plus-type form whose image under xi is `g`, using only the
    /// nonholomorphic part; `plus` supplies an arbitrary holomorphic part.
    pub fn xi_preimage(g: &VVSeries, plus: BTreeMap<(usize, Rational64), Coef>) -> Result<Self> {
        let k = Rational64::from_integer(2) - g.weight;
        let kf = rat_f64(k);
        let rep = g.rep.dualized();
        let mut minus = BTreeMap::new();
        for (&(h, m), b) in &g.coeffs {
            let c = xi_factor(kf, rat_f64(m));
            let a = Coef::Float(-b.to_c64().conj() / c);
            minus.insert((h, -m), a);
        }
        let class = if g.is_cuspidal() { FormClass::HPlus } else { FormClass::HGeneral };
        let f = WeakMaassForm { weight: k, rep, plus, minus, class, prec: g.prec };
        f.validate()?;
        Ok(f)
    }
}

/// (4 pi m)^{1-k} for m != 0 (principal branch) and k - 1 for m = 0.
fn xi_factor(k: f64, m: f64) -> Complex64 {
    if m == 0.0 {
        Complex64::new(k - 1.0, 0.0)
    } else {
        Complex64::new(4.0 * PI * m, 0.0).powf(1.0 - k)
    }
}

/// xi_k f = v^{k-2} conj(L_k f), a holomorphic form of weight 2-k for the dual
/// representation, with b(h, m) = -(4 pi m)^{1-k} conj(a-(h, -m)) and
/// b(h, 0) = (1 - k) conj(a-(h, 0)).
pub fn xi_map(f: &WeakMaassForm) -> VVSeries {
    let k = f.weight_f64();
    let mut out = VVSeries::new(Rational64::from_integer(2) - f.weight, f.rep.dualized(), f.prec);
    for (&(h, n), a) in &f.minus {
        let m = -n;
        let b = if m.is_zero() {
            let one_minus_k = Rational64::from_integer(1) - f.weight;
            let c = BigRational::new(BigInt::from(*one_minus_k.numer()), BigInt::from(*one_minus_k.denom()));
            Coef::rational(c).mul(&a.conj())
        } else {
            Coef::Float(-xi_factor(k, rat_f64(m)).conj() * a.to_c64().conj())
        };
        if !b.is_zero() {
            out.coeffs.insert((h, m), b);
        }
    }
    out.prec = out.coeffs.keys().map(|&(_, m)| m + 1).max().unwrap_or(Rational64::zero()).max(Rational64::from_integer(1));
    out
}

fn check_pair(g: &VVSeries, f: &WeakMaassForm) -> Result<()> {
    if g.weight + f.weight != Rational64::from_integer(2) {
        return Err(Error::Mismatch(format!("weights {} and {} are not complementary", g.weight, f.weight)));
    }
    if g.rep.dual == f.rep.dual || g.rep.disc.gram != f.rep.disc.gram {
        return Err(Error::Mismatch("representations are not dual to each other".into()));
    }
    Ok(())
}

fn pairing_impl(g: &VVSeries, f: &WeakMaassForm, strict: bool) -> Result<Coef> {
    check_pair(g, f)?;
    let mut s = Coef::zero();
    for (&(h, n), a) in &f.plus {
        if n > Rational64::zero() || (strict && n.is_zero()) {
            continue;
        }
        if -n >= g.prec {
            return Err(Error::Mismatch(format!("g is known only below q^{}, need q^{}", g.prec, -n)));
        }
        s = s.add(&a.mul(&g.get(h, -n)));
    }
    Ok(s)
}

/// {g, f} = sum_h sum_{n <= 0} a+(h, n) b(h, -n).
pub fn pairing(g: &VVSeries, f: &WeakMaassForm) -> Result<Coef> {
    pairing_impl(g, f, false)
}

/// The variant with strictly negative n.
pub fn pairing_prime(g: &VVSeries, f: &WeakMaassForm) -> Result<Coef> {
    pairing_impl(g, f, true)
}

/// The n <= 0 slice of f^+.
pub fn principal_part(f: &WeakMaassForm) -> VVSeries {
    let mut out = VVSeries::new(f.weight, f.rep.clone(), Rational64::from_integer(1));
    for (&(h, n), c) in &f.plus {
        if n <= Rational64::zero() && !c.is_zero() {
            out.coeffs.insert((h, n), c.clone());
        }
    }
    out
}

/// Whether sum_h a+(h,0) c_h vanishes for each supplied constant-term vector c.
pub fn constant_term_orthogonal(f: &WeakMaassForm, constants: &[Vec<Complex64>], tol: f64) -> bool {
    constants.iter().all(|c| {
        let s: Complex64 = (0..f.rep.dim())
            .map(|h| f.plus.get(&(h, Rational64::zero())).map(|a| a.to_c64()).unwrap_or_default() * c[h])
            .sum();
        s.norm() <= tol
    })
}
