//! Regularized theta lifts of weak Maass forms against the Gaussian and the
//! psi Schwartz forms, and finite-difference shadows of their identities.

use crate::error::{Error, Result};
use crate::fock::wedge_word;
use crate::fqm::{discriminant_group, DiscriminantForm, Lattice};
use crate::numdiff::{derivative_vec, mixed_derivative};
use crate::qseries::{FormClass, WeakMaassForm};
use crate::special::{h_function, upper_gamma};
use crate::theta::{enumerate, GrassmannPoint, Kernel, SchwartzPoly, ThetaSum};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

/// Quadrature and safety parameters of a lift evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftOptions {
    pub tol: f64,
    /// Gauss-Legendre nodes per panel and direction on F_1.
    pub nodes: usize,
    /// Number of panel halvings allowed by the error control.
    pub max_level: usize,
    /// Smallest admissible distance |lambda_z| to the singular locus.
    pub eps_min: f64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { tol: 1e-6, nodes: 16, max_level: 3, eps_min: 1e-4 }
    }
}

/// A lift value: a scalar (word 0) or the components of a form over wedge words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftValue {
    pub kind: String,
    pub components: BTreeMap<u32, Complex64>,
    pub error: f64,
    /// The constant C of the zero-vector term, when a+(0,0) entered.
    pub regularization_constant: Option<f64>,
    pub f1_part: BTreeMap<u32, Complex64>,
    pub upper_part: BTreeMap<u32, Complex64>,
}

impl LiftValue {
    pub fn scalar(&self) -> Complex64 {
        self.components.get(&0).copied().unwrap_or_default()
    }

    pub fn get(&self, w: u32) -> Complex64 {
        self.components.get(&w).copied().unwrap_or_default()
    }
}

/// One vector near the singular locus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub h: usize,
    pub n: String,
    pub lambda: Vec<f64>,
    /// |lambda_z|, the length of the projection to the negative plane.
    pub distance: f64,
}

fn rat_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn gl(n: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap()).as_node_weight_pairs().to_vec()
}

/// Exact q(lambda) for lambda = rep_h + m.
fn exact_q(l: &Lattice, disc: &DiscriminantForm, h: usize, lam: &[f64]) -> Rational64 {
    let rep = &disc.reps[h];
    let x: Vec<Rational64> = rep
        .iter()
        .zip(lam)
        .map(|(r, &v)| *r + Rational64::from_integer((v - rat_f64(*r)).round() as i64))
        .collect();
    let n = x.len();
    let mut s = Rational64::zero();
    for i in 0..n {
        for j in 0..n {
            s += x[i] * x[j] * l.gram[i][j];
        }
    }
    s / 2
}

fn check_input(l: &Lattice, f: &WeakMaassForm, weight: f64) -> Result<DiscriminantForm> {
    if f.rep.disc.gram != l.gram || !f.rep.dual {
        return Err(Error::Mismatch("the input must transform with the dual Weil representation of the lattice".into()));
    }
    if (f.weight_f64() + weight).abs() > 1e-12 {
        return Err(Error::Mismatch(format!("input weight {} does not match the kernel weight {}", f.weight, weight)));
    }
    if f.class == FormClass::HGeneral {
        return Err(Error::Mismatch("inputs with a nonholomorphic part growing at the cusp are not supported".into()));
    }
    let sign = if l.q % 2 == 0 { 1 } else { -1 };
    if !f.has_parity(sign) {
        return Err(Error::Symmetry);
    }
    discriminant_group(l)
}

/// Largest q(lambda) that can carry a nonzero principal-part coefficient.
fn q_max(f: &WeakMaassForm) -> f64 {
    f.plus
        .iter()
        .filter(|(&(_, n), c)| n < Rational64::zero() && !c.is_zero())
        .map(|(&(_, n), _)| -rat_f64(n))
        .fold(0.0, f64::max)
}

/// Vectors lambda in L# with a+(lambda, -q(lambda)) != 0, n < 0 and |q(lambda_z)| < eps.
pub fn singular_set(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, eps: f64) -> Result<Vec<SingularEntry>> {
    let disc = discriminant_group(l)?;
    let qm = q_max(f);
    if qm == 0.0 {
        return Ok(Vec::new());
    }
    // |x|^2 = 2 |x_-|^2 + 2 q(lambda) = 4 |q(lambda_z)| + 2 q(lambda)
    let r = 4.0 * eps + 2.0 * qm + 1e-9;
    let mut out = Vec::new();
    for (h, rep) in disc.reps_f64().iter().enumerate() {
        for lam in enumerate(z, rep, r) {
            let q = exact_q(l, &disc, h, &lam);
            let n = -q;
            if n >= Rational64::zero() || f.plus.get(&(h, n)).map_or(true, |c| c.is_zero()) {
                continue;
            }
            let nq = z.neg_norm(&lam);
            if nq < eps {
                out.push(SingularEntry { h, n: crate::fqm::rat_string(n), distance: (2.0 * nq).sqrt(), lambda: lam });
            }
        }
    }
    Ok(out)
}

/// int_1^infty v^{s-1} e^{-a v} dv = a^{-s} Gamma(s, a).
pub fn v_integral(s: f64, a: f64) -> f64 {
    a.powf(-s) * upper_gamma(s, a)
}

/// The same integral by Gauss-Legendre panels on [1, V] plus a Gauss-Laguerre
/// tail, with V = 40 max(1, 1/a) so that the tail integrand is smooth.
pub fn v_integral_numeric(s: f64, a: f64) -> f64 {
    let rule = gl(20);
    let mut total = 0.0;
    let cut = 40.0 * (1.0 / a).max(1.0);
    // panels refined near v = 1, then no wider than v/2 or 1/a
    let mut edges = vec![1.0];
    let mut x: f64 = 1.0;
    let mut step = (1.0 / a).clamp(1e-3, 0.5);
    while x < cut {
        x = (x + step).min(cut);
        edges.push(x);
        step = (step * 1.5).min(0.5 * x).min(1.0 / a);
    }
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (m, r) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        for &(t, wt) in &rule {
            let v = m + r * t;
            total += wt * r * v.powf(s - 1.0) * (-a * v).exp();
        }
    }
    // v = V + t / a: e^{-a V} a^{-1} int_0^infty (V + t/a)^{s-1} e^{-t} dt
    let lag = gauss_quad::GaussLaguerre::new(NonZeroUsize::new(40).unwrap(), gauss_quad::FiniteAboveNegOneF64::new(0.0).unwrap());
    let tail = lag.integrate(|t| (cut + t / a).powf(s - 1.0)) * (-cut * a).exp() / a;
    total + tail
}

/// Holomorphic-part contribution on v >= 1 for one lambda, with frame coordinates x.
fn upper_term(poly: &SchwartzPoly, x: &[f64], acc: &mut BTreeMap<u32, Complex64>, coef: Complex64) {
    let p = poly.p;
    let a = PI * x[p..].iter().map(|t| t * t).sum::<f64>() * 2.0;
    let pow = poly.v_power();
    for t in &poly.terms {
        let s = pow + t.deg as f64 / 2.0 - 1.0;
        let mono: f64 = x.iter().zip(&t.exps).map(|(xi, &e)| xi.powi(e as i32)).product();
        *acc.entry(t.word).or_default() += coef * t.coeff * mono * v_integral(s, a);
    }
}

/// One closed-form term and its numeric counterpart, for the regularization oracle.
pub fn upper_term_pair(kernel: &Kernel, p: usize, q: usize, x: &[f64]) -> Result<(BTreeMap<u32, f64>, BTreeMap<u32, f64>)> {
    let poly = SchwartzPoly::new(kernel, p, q)?;
    let a = 2.0 * PI * x[p..].iter().map(|t| t * t).sum::<f64>();
    let pow = poly.v_power();
    let mut closed = BTreeMap::new();
    let mut numeric = BTreeMap::new();
    for t in &poly.terms {
        let s = pow + t.deg as f64 / 2.0 - 1.0;
        let mono: f64 = x.iter().zip(&t.exps).map(|(xi, &e)| xi.powi(e as i32)).product();
        let c = t.coeff.re * mono;
        *closed.entry(t.word).or_insert(0.0) += c * v_integral(s, a);
        *numeric.entry(t.word).or_insert(0.0) += c * v_integral_numeric(s, a);
    }
    Ok((closed, numeric))
}

struct Upper {
    parts: BTreeMap<u32, Complex64>,
    error: f64,
    min_distance: f64,
    near: usize,
}

fn upper_plus(l: &Lattice, disc: &DiscriminantForm, z: &GrassmannPoint, poly: &SchwartzPoly, f: &WeakMaassForm, opts: &LiftOptions) -> Result<Upper> {
    let deg = poly.max_degree() as i32;
    let qm = q_max(f);
    let coeffs: Vec<(f64, f64)> =
        f.plus.iter().filter(|(_, c)| !c.is_zero()).map(|(&(_, n), c)| (rat_f64(n), c.to_c64().norm())).collect();
    // a term with index n > 0 has |x_-|^2 >= 2n; bound everything beyond |x_-|^2 = big_x
    let bound = |big_x: f64| {
        coeffs
            .iter()
            .map(|&(n, c)| {
                let y = big_x.max(2.0 * n);
                c * (-2.0 * PI * y).exp() * (1.0 + y).powi(deg + 2)
            })
            .fold(0.0, f64::max)
            * 1e3
    };
    let mut big_x = 1.0;
    while bound(big_x) > opts.tol {
        big_x *= 1.2;
        if big_x > 200.0 {
            return Err(Error::ToleranceTooSmall(opts.tol));
        }
    }
    if let Some(&(n_last, c_last)) = coeffs.last() {
        let beyond = c_last * (-4.0 * PI * f.prec.to_f64().unwrap_or(n_last)).exp() * 1e3;
        if beyond > opts.tol {
            return Err(Error::ToleranceTooSmall(opts.tol));
        }
    }
    let r = 2.0 * big_x + 2.0 * qm;
    let mut parts = BTreeMap::new();
    let mut min_distance = f64::INFINITY;
    let mut near = 0;
    for (h, rep) in disc.reps_f64().iter().enumerate() {
        for lam in enumerate(z, rep, r) {
            if lam.iter().all(|c| c.abs() < 1e-12) {
                // the zero vector: Laurent constant of int_1^infty v^{-1-s} dv vanishes
                continue;
            }
            let n = -exact_q(l, disc, h, &lam);
            if n >= f.prec {
                continue;
            }
            let Some(c) = f.plus.get(&(h, n)) else { continue };
            if c.is_zero() {
                continue;
            }
            let x = z.coords(&lam);
            let dist = x[z.p..].iter().map(|t| t * t).sum::<f64>().sqrt();
            if n.is_negative() {
                if dist < min_distance {
                    min_distance = dist;
                }
                if dist < opts.eps_min {
                    near += 1;
                    continue;
                }
            }
            upper_term(poly, &x, &mut parts, c.to_c64());
        }
    }
    Ok(Upper { parts, error: bound(big_x), min_distance, near })
}

fn upper_minus(l: &Lattice, disc: &DiscriminantForm, z: &GrassmannPoint, poly: &SchwartzPoly, f: &WeakMaassForm, opts: &LiftOptions) -> Result<BTreeMap<u32, Complex64>> {
    let mut parts = BTreeMap::new();
    let terms: Vec<_> = f.minus.iter().filter(|(_, c)| !c.is_zero()).collect();
    if terms.is_empty() {
        return Ok(parts);
    }
    let cmax = terms.iter().map(|(_, c)| c.to_c64().norm()).fold(0.0, f64::max);
    let mut r = 1.0;
    while cmax * (-PI * r).exp() * 1e3 > opts.tol {
        r *= 1.2;
    }
    let k = f.weight_f64();
    let pow = poly.v_power();
    let rule = gl(12);
    for (h, rep) in disc.reps_f64().iter().enumerate() {
        for lam in enumerate(z, rep, r) {
            let n = -exact_q(l, disc, h, &lam);
            let Some(c) = f.minus.get(&(h, n)) else { continue };
            if n >= Rational64::zero() {
                return Err(Error::Mismatch("nonholomorphic coefficients at index >= 0".into()));
            }
            let x = z.coords(&lam);
            let r2: f64 = x.iter().map(|t| t * t).sum();
            let nf = rat_f64(n);
            let decay = 2.0 * PI * nf.abs() + PI * r2;
            let vmax = 1.0 + (-(opts.tol * 1e-3).ln() / decay).max(1.0);
            let panels = ((vmax - 1.0) / 0.5).ceil() as usize;
            let width = (vmax - 1.0) / panels as f64;
            for t in &poly.terms {
                let mono: f64 = x.iter().zip(&t.exps).map(|(xi, &e)| xi.powi(e as i32)).product();
                let mut s = 0.0;
                for j in 0..panels {
                    let lo = 1.0 + j as f64 * width;
                    for &(node, w) in &rule {
                        let v = lo + width * (node + 1.0) / 2.0;
                        let hv = h_function(k, 2.0 * PI * nf * v)?;
                        s += w * width / 2.0 * hv * v.powf(pow + t.deg as f64 / 2.0 - 2.0) * (-PI * v * r2).exp();
                    }
                }
                *parts.entry(t.word).or_default() += c.to_c64() * t.coeff * mono * s;
            }
        }
    }
    Ok(parts)
}

/// Tensor Gauss-Legendre on F_1 = {|u| <= 1/2, sqrt(1-u^2) <= v <= 1} with
/// `panels` panels per direction.
fn f1_nodes(nodes: usize, panels: usize) -> Vec<(Complex64, f64)> {
    let rule = gl(nodes);
    let mut out = Vec::new();
    let w = 1.0 / panels as f64;
    for pu in 0..panels {
        for &(su, wu) in &rule {
            let u = -0.5 + w * (pu as f64 + (su + 1.0) / 2.0);
            let a = (1.0 - u * u).sqrt();
            for pt in 0..panels {
                for &(st, wt) in &rule {
                    let t = w * (pt as f64 + (st + 1.0) / 2.0);
                    let v = a + t * (1.0 - a);
                    let weight = wu * w / 2.0 * wt * w / 2.0 * (1.0 - a);
                    out.push((Complex64::new(u, v), weight));
                }
            }
        }
    }
    out
}

fn f1_integral(sum: &ThetaSum, f: &WeakMaassForm, nodes: &[(Complex64, f64)]) -> Result<BTreeMap<u32, Complex64>> {
    let vals: Vec<Result<Vec<Complex64>>> = nodes
        .par_iter()
        .map(|&(tau, w)| {
            let (fv, _) = f.eval(tau)?;
            let th = sum.eval(tau);
            let scale = w / (tau.im * tau.im);
            Ok(sum
                .words
                .iter()
                .map(|wd| {
                    let mut s = Complex64::default();
                    for (h, fh) in fv.iter().enumerate() {
                        s += fh * th.components[h].get(wd).copied().unwrap_or_default();
                    }
                    s * scale
                })
                .collect())
        })
        .collect();
    let mut out = BTreeMap::new();
    for (k, &wd) in sum.words.iter().enumerate() {
        let col: Vec<Complex64> = vals.iter().map(|r| r.as_ref().map(|v| v[k]).unwrap_or_default()).collect();
        out.insert(wd, crate::theta::pairwise_sum(&col));
    }
    for r in vals {
        r?;
    }
    Ok(out)
}

/// int_{F_1} v^{-1} du dv, the constant C of the zero-vector term.
pub fn regularization_constant(nodes: usize) -> f64 {
    f1_nodes(nodes, 2).iter().map(|(t, w)| w / t.im).sum()
}

/// The regularized lift of f against the theta series of `kernel`.
pub fn lift(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, kernel: &Kernel, opts: &LiftOptions) -> Result<LiftValue> {
    let poly = SchwartzPoly::new(kernel, l.p, l.q)?;
    let disc = check_input(l, f, poly.weight)?;
    let kind = if poly.words() == vec![0] { "scalar" } else { "form" };
    let upper = upper_plus(l, &disc, z, &poly, f, opts)?;
    if upper.near > 0 {
        return Err(Error::NearSingular { distance: upper.min_distance, count: upper.near });
    }
    let minus = upper_minus(l, &disc, z, &poly, f, opts)?;
    let vmin = 3f64.sqrt() / 2.0;
    let sum = ThetaSum::with_poly(l, &disc, z, poly.clone(), vmin, opts.tol * 1e-2, 0)?;
    let mut prev = f1_integral(&sum, f, &f1_nodes(opts.nodes, 1))?;
    let mut err = f64::INFINITY;
    let mut panels = 1;
    for _ in 0..opts.max_level.max(1) {
        panels *= 2;
        let cur = f1_integral(&sum, f, &f1_nodes(opts.nodes, panels))?;
        err = cur.iter().map(|(w, c)| (c - prev.get(w).copied().unwrap_or_default()).norm()).fold(0.0, f64::max);
        prev = cur;
        if err < opts.tol {
            break;
        }
    }
    let f1 = prev;
    let mut upper_part = upper.parts;
    for (w, c) in minus {
        *upper_part.entry(w).or_default() += c;
    }
    let mut components = f1.clone();
    for (w, c) in &upper_part {
        *components.entry(*w).or_default() += c;
    }
    let zero_coeff = f.plus.get(&(0, Rational64::zero())).map(|c| !c.is_zero()).unwrap_or(false);
    let constant = (zero_coeff && matches!(kernel, Kernel::Phi0)).then(|| regularization_constant(opts.nodes));
    let theta_err = sum.error_bound(vmin) * f1.len() as f64;
    Ok(LiftValue {
        kind: kind.into(),
        components,
        error: err + upper.error + theta_err,
        regularization_constant: constant,
        f1_part: f1,
        upper_part,
    })
}

/// Phi(z, f) for signature (p, 2).
pub fn lift_phi0(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions) -> Result<LiftValue> {
    if l.q != 2 {
        return Err(Error::NeedQ2(l.q));
    }
    lift(l, f, z, &Kernel::Phi0, opts)
}

/// Phi(z, f, psi), a (q-1)-form in the frame of z.
pub fn lift_psi(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions) -> Result<LiftValue> {
    lift(l, f, z, &Kernel::Psi, opts)
}

fn check_step(step: f64, tol: f64, order: i32) -> Result<()> {
    if tol / step.powi(order) > 1e-4 {
        return Err(Error::Step(step));
    }
    Ok(())
}

fn generators(p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut g = Vec::new();
    for a in 1..=p {
        for mu in p + 1..=p + q {
            g.push((a, mu));
        }
    }
    g
}

/// Components X_{alpha mu} Phi(z, f) of dPhi along the frame flows.
pub fn d_lift_phi0(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions, step: f64) -> Result<BTreeMap<u32, Complex64>> {
    check_step(step, opts.tol, 1)?;
    let mut out = BTreeMap::new();
    for (a, mu) in generators(l.p, l.q) {
        let d = derivative_vec(|t| Ok(vec![lift_phi0(l, f, &z.flow(a, mu, t), opts)?.scalar()]), 0.0, step, 3)?;
        out.insert(1u32 << crate::fock::gen_index(l.p, l.q, a, mu), d[0]);
    }
    Ok(out)
}

/// d^c Phi(z, f) = (1/4pi) sum_alpha (X_{alpha,p+1} Phi omega_{alpha,p+2} - X_{alpha,p+2} Phi omega_{alpha,p+1}).
pub fn dc_lift_phi0(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions, step: f64) -> Result<BTreeMap<u32, Complex64>> {
    let d = d_lift_phi0(l, f, z, opts, step)?;
    Ok(dc_from_d(l.p, &d))
}

fn dc_from_d(p: usize, d: &BTreeMap<u32, Complex64>) -> BTreeMap<u32, Complex64> {
    let q = 2;
    let mut out = BTreeMap::new();
    for a in 1..=p {
        let g1 = 1u32 << crate::fock::gen_index(p, q, a, p + 1);
        let g2 = 1u32 << crate::fock::gen_index(p, q, a, p + 2);
        let x1 = d.get(&g1).copied().unwrap_or_default();
        let x2 = d.get(&g2).copied().unwrap_or_default();
        out.insert(g2, x1 / (4.0 * PI));
        out.insert(g1, -x2 / (4.0 * PI));
    }
    out
}

/// Lambda_B(f) = dd^c Phi(z, f) from mixed second differences along pairs of flows.
pub fn lambda_b(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions, step: f64) -> Result<BTreeMap<u32, Complex64>> {
    if l.q != 2 {
        return Err(Error::NeedQ2(l.q));
    }
    check_step(step, opts.tol, 2)?;
    let (p, q) = (l.p, l.q);
    // d^c Phi = sum_b c_b omega_b with c_b = sign_b X_{J b} Phi / 4 pi
    let partner = |a: usize, mu: usize| if mu == p + 1 { (a, p + 2, -1.0) } else { (a, p + 1, 1.0) };
    let mut out = BTreeMap::new();
    for (aj, mj) in generators(p, q) {
        let gj = crate::fock::gen_index(p, q, aj, mj);
        for (ab, mb) in generators(p, q) {
            let gb = crate::fock::gen_index(p, q, ab, mb);
            if gb == gj {
                continue;
            }
            let (ak, mk, sign) = partner(ab, mb);
            let xx = mixed_derivative(
                |s, t| Ok(lift_phi0(l, f, &z.flow(aj, mj, s).flow(ak, mk, t), opts)?.scalar()),
                step,
                3,
            )?;
            // X_j c_b omega_j ^ omega_b
            if let Some((word, neg)) = wedge_word(&[gj, gb]) {
                let c = xx * sign / (4.0 * PI);
                *out.entry(word).or_default() += if neg { -c } else { c };
            }
        }
    }
    Ok(out)
}

/// d Phi(z, f, psi) by first differences of every component along every flow.
pub fn d_lift_psi(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, opts: &LiftOptions, step: f64) -> Result<BTreeMap<u32, Complex64>> {
    check_step(step, opts.tol, 1)?;
    let (p, q) = (l.p, l.q);
    let words = SchwartzPoly::new(&Kernel::Psi, p, q)?.words();
    let mut out = BTreeMap::new();
    for (a, mu) in generators(p, q) {
        let g = crate::fock::gen_index(p, q, a, mu);
        let d = derivative_vec(
            |t| {
                let v = lift_psi(l, f, &z.flow(a, mu, t), opts)?;
                Ok(words.iter().map(|w| v.get(*w)).collect())
            },
            0.0,
            step,
            3,
        )?;
        for (k, &w) in words.iter().enumerate() {
            let mut gens = vec![g];
            gens.extend((0..32).filter(|b| w & (1 << b) != 0));
            if let Some((word, neg)) = wedge_word(&gens) {
                *out.entry(word).or_default() += if neg { -d[k] } else { d[k] };
            }
        }
    }
    Ok(out)
}

/// Result of a wall-crossing measurement for q = 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpReport {
    pub measured: f64,
    pub predicted: f64,
    pub walls: usize,
    pub left: f64,
    pub right: f64,
    pub quadrature_error: f64,
    pub bounded: bool,
}

/// Frame at z rotated so that the positive part of lambda lies along b_1, then
/// moved along X_{1,p+1} onto the wall lambda^perp. Returns None if the flow misses it.
pub fn point_on_wall(z: &GrassmannPoint, lambda: &[f64]) -> Option<GrassmannPoint> {
    let p = z.p;
    let x = z.coords(lambda);
    let pos: f64 = x[..p].iter().map(|t| t * t).sum::<f64>().sqrt();
    if pos == 0.0 {
        return None;
    }
    // Householder-free rotation: Gram-Schmidt completion of x_+/|x_+| inside the positive block
    let n = z.n();
    let mut rot = nalgebra::DMatrix::<f64>::identity(n, n);
    let mut cols: Vec<nalgebra::DVector<f64>> = vec![nalgebra::DVector::from_iterator(p, x[..p].iter().map(|t| t / pos))];
    for i in 0..p {
        let mut e = nalgebra::DVector::<f64>::zeros(p);
        e[i] = 1.0;
        for c in &cols {
            let d = c.dot(&e);
            e -= c * d;
        }
        if e.norm() > 1e-8 && cols.len() < p {
            let nrm = e.norm();
            cols.push(e / nrm);
        }
    }
    for (j, c) in cols.iter().enumerate() {
        for i in 0..p {
            rot[(i, j)] = c[i];
        }
    }
    let zr = z.with_frame(&z.frame * rot);
    let x = zr.coords(lambda);
    // along b(t): x_{p+1}(t) = cosh t x_{p+1} - sinh t x_1 in the new frame
    let ratio = x[p] / x[0];
    if ratio.abs() >= 1.0 {
        return None;
    }
    Some(zr.flow(1, p + 1, ratio.atanh()))
}

/// Measures the jump of Phi(z, f, psi) across the wall lambda^perp (q = 1) by
/// linear extrapolation from both sides of the flow through `center` along X_{1,p+1}.
pub fn jump_check(l: &Lattice, f: &WeakMaassForm, center: &GrassmannPoint, delta: f64, opts: &LiftOptions) -> Result<JumpReport> {
    if l.q != 1 {
        return Err(Error::Mismatch("wall crossing needs signature (p, 1)".into()));
    }
    let p = l.p;
    let disc = discriminant_group(l)?;
    let at = |t: f64| -> Result<(f64, f64)> {
        let v = lift_psi(l, f, &center.flow(1, p + 1, t), opts)?;
        Ok((v.scalar().re, v.error))
    };
    // walls crossed on [-2 delta, 2 delta] and the predicted jump
    let (a, b) = (center.flow(1, p + 1, -2.0 * delta), center.flow(1, p + 1, 2.0 * delta));
    let qm = q_max(f);
    let mut walls: Vec<Vec<f64>> = Vec::new();
    let mut predicted = 0.0;
    if qm > 0.0 {
        let r = 2.0 * qm + 4.0;
        for (h, rep) in disc.reps_f64().iter().enumerate() {
            for lam in enumerate(center, rep, r) {
                let n = -exact_q(l, &disc, h, &lam);
                if !n.is_negative() {
                    continue;
                }
                let Some(c) = f.plus.get(&(h, n)) else { continue };
                if c.is_zero() {
                    continue;
                }
                // (lambda, b_{p+1}) = -x_{p+1}
                let sa = -a.coords(&lam)[p];
                let sb = -b.coords(&lam)[p];
                if sa.signum() == sb.signum() {
                    continue;
                }
                predicted += c.to_c64().re * 0.5 * (sb.signum() - sa.signum());
                let nrm = lam.iter().map(|t| t * t).sum::<f64>().sqrt();
                let dir: Vec<f64> = lam.iter().map(|t| t / nrm).collect();
                let same = |w: &Vec<f64>| {
                    let d: f64 = w.iter().zip(&dir).map(|(x, y)| x * y).sum();
                    (d.abs() - 1.0).abs() < 1e-9
                };
                if !walls.iter().any(same) {
                    walls.push(dir);
                }
            }
        }
    }
    if walls.len() > 1 {
        return Err(Error::Walls(walls.len()));
    }
    let (r1, e1) = at(delta)?;
    let (r2, e2) = at(2.0 * delta)?;
    let (l1, e3) = at(-delta)?;
    let (l2, e4) = at(-2.0 * delta)?;
    let right = 2.0 * r1 - r2;
    let left = 2.0 * l1 - l2;
    let bounded = [r1, r2, l1, l2].iter().all(|v| v.is_finite() && v.abs() < 1e6);
    Ok(JumpReport {
        measured: right - left,
        predicted,
        walls: walls.len(),
        left,
        right,
        quadrature_error: 3.0 * (e1 + e2 + e3 + e4),
        bounded,
    })
}

/// Phi(z_t) + 2m log|lambda_{z_t}| along a path, for the log-singularity certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogSingularityReport {
    pub samples: Vec<(f64, f64, f64)>,
    pub variation: f64,
}

/// Evaluates Phi(z(t)) + 2 m log dist(z(t)) at dyadic t in [t_min, t_max].
pub fn log_singularity_check(
    l: &Lattice,
    f: &WeakMaassForm,
    path: &dyn Fn(f64) -> Result<GrassmannPoint>,
    lambda: &[f64],
    multiplicity: f64,
    t_min: f64,
    t_max: f64,
    opts: &LiftOptions,
) -> Result<LogSingularityReport> {
    let mut samples = Vec::new();
    let mut t = t_max;
    while t >= t_min * (1.0 - 1e-12) {
        let z = path(t)?;
        let dist = (2.0 * z.neg_norm(lambda)).sqrt();
        if dist < 1e-14 {
            return Err(Error::Mismatch("the path touches the wall".into()));
        }
        let v = lift_phi0(l, f, &z, opts)?.scalar().re;
        samples.push((t, v, v + 2.0 * multiplicity * dist.ln()));
        t /= 2.0;
    }
    let variation = samples.windows(2).map(|w| (w[1].2 - w[0].2).abs()).sum();
    Ok(LogSingularityReport { samples, variation })
}

/// The constant part of e_q as numbers, indexed by wedge word.
pub fn euler_values(p: usize, q: usize) -> Result<BTreeMap<u32, Complex64>> {
    let e = crate::fock::build_euler(p, q)?;
    let zero = vec![0u16; p + q];
    let mut out = BTreeMap::new();
    for ((m, w), c) in &e.terms {
        if *m == zero {
            out.insert(*w, c.to_c64());
        }
    }
    Ok(out)
}

/// The Petersson-style integral of Theta(phi_KM) against xi f over the fundamental
/// domain cut at v = v_max, computed from the theta series and the xi image directly.
pub fn kernel_path_integral(l: &Lattice, f: &WeakMaassForm, z: &GrassmannPoint, v_max: f64, opts: &LiftOptions) -> Result<BTreeMap<u32, Complex64>> {
    let g = crate::qseries::xi_map(f);
    let disc = discriminant_group(l)?;
    let sum = ThetaSum::new(l, &disc, z, &Kernel::PhiKm, 3f64.sqrt() / 2.0, opts.tol * 1e-2)?;
    let weight = sum.poly.weight;
    let mut out: BTreeMap<u32, Complex64> = sum.words.iter().map(|&w| (w, Complex64::default())).collect();
    if g.is_zero() {
        return Ok(out);
    }
    let mut nodes = f1_nodes(opts.nodes, 2);
    let rule = gl(opts.nodes);
    let mut lo = 1.0;
    while lo < v_max {
        let hi = (2.0 * lo).min(v_max);
        for &(su, wu) in &rule {
            for &(sv, wv) in &rule {
                let tau = Complex64::new(su / 2.0, lo + (hi - lo) * (sv + 1.0) / 2.0);
                nodes.push((tau, wu / 2.0 * wv * (hi - lo) / 2.0));
            }
        }
        lo = hi;
    }
    let vals: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|&(tau, w)| {
            let gv = g.eval(tau);
            let th = sum.eval(tau);
            let scale = w * tau.im.powf(weight) / (tau.im * tau.im);
            sum.words
                .iter()
                .map(|wd| {
                    let mut s = Complex64::default();
                    for (h, gh) in gv.iter().enumerate() {
                        s += th.components[h].get(wd).copied().unwrap_or_default() * gh.conj();
                    }
                    s * scale
                })
                .collect()
        })
        .collect();
    for (k, w) in sum.words.iter().enumerate() {
        let col: Vec<Complex64> = vals.iter().map(|r| r[k]).collect();
        out.insert(*w, crate::theta::pairwise_sum(&col));
    }
    Ok(out)
}
