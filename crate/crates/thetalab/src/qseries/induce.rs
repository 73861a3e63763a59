//! Induction of scalar forms on Gamma_0(N) to vector-valued forms.

use super::{Coef, QSeries, VVSeries};
use crate::error::{Error, Result};
use crate::fqm::{MetaplecticWord, WeilRep};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use std::f64::consts::PI;

/// A product of eta quotients eta(m tau)^e and level-one series g(m tau).
#[derive(Clone, Debug)]
pub struct ScalarForm {
    pub eta: Vec<(u32, i32)>,
    /// (series, weight, scale m, power)
    pub level_one: Vec<(QSeries, i64, u32, u32)>,
}

impl ScalarForm {
    pub fn weight(&self) -> Rational64 {
        let e: i64 = self.eta.iter().map(|&(_, e)| e as i64).sum();
        let l: i64 = self.level_one.iter().map(|(_, k, _, p)| k * *p as i64).sum();
        Rational64::new(e, 2) + Rational64::from_integer(l)
    }

    pub fn eval(&self, tau: Complex64) -> Complex64 {
        let mut out = Complex64::new(1.0, 0.0);
        for &(m, e) in &self.eta {
            out *= eta(tau * m as f64).powi(e);
        }
        for (s, k, m, p) in &self.level_one {
            out *= level_one(s, *k, tau * *m as f64).powi(*p as i32);
        }
        out
    }
}

/// Dedekind eta, reduced to the standard fundamental domain before summing the product.
pub fn eta(tau: Complex64) -> Complex64 {
    let mut t = tau;
    let mut factor = Complex64::new(1.0, 0.0);
    loop {
        let n = t.re.round();
        t.re -= n;
        factor *= Complex64::from_polar(1.0, 2.0 * PI * n / 24.0);
        if t.norm_sqr() < 1.0 - 1e-14 {
            factor /= (t / Complex64::i()).sqrt();
            t = -t.inv();
        } else {
            break;
        }
    }
    let q = (Complex64::new(0.0, 2.0 * PI) * t).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 0..200 {
        prod *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
        if qn.norm() < 1e-18 {
            break;
        }
    }
    factor * (Complex64::new(0.0, 2.0 * PI / 24.0) * t).exp() * prod
}

/// A level-one form of integer weight k given by its q-expansion, evaluated after reduction.
pub fn level_one(s: &QSeries, k: i64, tau: Complex64) -> Complex64 {
    let mut t = tau;
    let mut factor = Complex64::new(1.0, 0.0);
    loop {
        t.re -= t.re.round();
        if t.norm_sqr() < 1.0 - 1e-14 {
            factor *= t.powi(-k as i32);
            t = -t.inv();
        } else {
            break;
        }
    }
    let q = (Complex64::new(0.0, 2.0 * PI) * t).exp();
    factor * s.eval_f64(q)
}

/// Coset representatives of Gamma_0(N) in SL_2(Z), one per point of P^1(Z/N).
pub fn gamma0_cosets(n: u64) -> Vec<[i64; 4]> {
    let n = n as i64;
    if n == 1 {
        return vec![[1, 0, 0, 1]];
    }
    let units: Vec<i64> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if c.gcd(&d).gcd(&n) != 1 {
                continue;
            }
            let canon = units.iter().map(|u| ((u * c) % n, (u * d) % n)).min().unwrap();
            if !seen.insert(canon) {
                continue;
            }
            out.push(lift_bottom_row(c, d, n));
        }
    }
    out.sort_by_key(|m| (m[2] != 0, m[2], m[3]));
    out
}

fn lift_bottom_row(c: i64, d: i64, n: i64) -> [i64; 4] {
    if c == 0 && d == 1 {
        return [1, 0, 0, 1];
    }
    for s in 0..=n {
        for t in 0..=n {
            let (c1, d1) = (c + s * n, d + t * n);
            let g = c1.extended_gcd(&d1);
            if g.gcd == 1 {
                // a d1 - b c1 = 1 with a = y, b = -x from x c1 + y d1 = 1
                return [g.y, -g.x, c1, d1];
            }
        }
    }
    unreachable!("bottom row ({c},{d}) mod {n} has no coprime lift")
}

/// The function sum over cosets of (f e_0)|_k gamma, evaluated pointwise.
pub struct Induced {
    f: ScalarForm,
    k2: i32,
    terms: Vec<([i64; 4], MetaplecticWord, Vec<Complex64>)>,
    dim: usize,
}

impl Induced {
    pub fn new(f: &ScalarForm, level: u64, rep: &WeilRep) -> Result<Self> {
        let k2 = f.weight() * 2;
        if !k2.is_integer() {
            return Err(Error::Mismatch("weight must be a half-integer".into()));
        }
        let mut terms = Vec::new();
        for g in gamma0_cosets(level) {
            let w = MetaplecticWord::from_matrix(g, false)?;
            let inv = rep.element(&w).adjoint();
            let col = (0..rep.dim()).map(|h| inv[(h, 0)]).collect();
            terms.push((g, w, col));
        }
        Ok(Induced { f: f.clone(), k2: k2.to_integer() as i32, terms, dim: rep.dim() })
    }

    pub fn eval(&self, tau: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.dim];
        for (g, w, col) in &self.terms {
            let gt = crate::fqm::mobius(*g, tau);
            let phi = w.multiplier(tau);
            let val = phi.powi(-self.k2) * self.f.eval(gt);
            for h in 0..self.dim {
                out[h] += val * col[h];
            }
        }
        out
    }
}

/// Largest relative residual of the S- and T-transformation laws at the sample points.
pub fn modularity_residual(
    eval: &dyn Fn(Complex64) -> Vec<Complex64>,
    rep: &WeilRep,
    weight: Rational64,
    samples: &[Complex64],
) -> f64 {
    let s = rep.s_matrix();
    let t = rep.t_matrix();
    let k2 = (weight * 2).to_integer() as i32;
    let mut worst = 0.0f64;
    for &tau in samples {
        let f = nalgebra::DVector::from_vec(eval(tau));
        let scale = f.iter().map(|z| z.norm()).fold(1e-300, f64::max);
        let ft = nalgebra::DVector::from_vec(eval(tau + 1.0));
        worst = worst.max((ft - &t * &f).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale);
        let fs = nalgebra::DVector::from_vec(eval(-tau.inv()));
        let want = (&s * &f) * tau.sqrt().powi(k2);
        worst = worst.max((fs - want).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale);
    }
    worst
}

/// Induces a scalar form on Gamma_0(level) to `rep`, then reads off Fourier
/// coefficients for nmin <= n < prec by sampling along Im tau = height.
pub fn induce_from_scalar(
    f: &ScalarForm,
    level: u64,
    rep: &WeilRep,
    nmin: Rational64,
    prec: Rational64,
    height: f64,
    samples: usize,
) -> Result<VVSeries> {
    let ind = Induced::new(f, level, rep)?;
    let weight = f.weight();
    let probe = [Complex64::new(0.13, 1.07), Complex64::new(-0.31, 0.83), Complex64::new(0.45, 1.4)];
    let res = modularity_residual(&|t| ind.eval(t), rep, weight, &probe);
    if res > 1e-8 {
        return Err(Error::Multiplier(res));
    }
    let values: Vec<(f64, Vec<Complex64>)> = (0..samples)
        .map(|j| {
            let u = (j as f64 + 0.5) / samples as f64;
            (u, ind.eval(Complex64::new(u, height)))
        })
        .collect();
    let mut out = VVSeries::new(weight, rep.clone(), prec);
    for h in 0..rep.dim() {
        let q = rep.disc.q_signed(h, rep.dual);
        let mut n = nmin.floor() + q;
        while n < prec {
            if n >= nmin {
                let nf = *n.numer() as f64 / *n.denom() as f64;
                let mut c = Complex64::zero();
                for (u, val) in &values {
                    c += val[h] * Complex64::from_polar(1.0, -2.0 * PI * nf * u);
                }
                c = c / samples as f64 * (2.0 * PI * nf * height).exp();
                if c.norm() > 1e-9 {
                    out.insert(h, n, Coef::Float(c))?;
                }
            }
            n += 1;
        }
    }
    Ok(out)
}
