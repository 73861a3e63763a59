//! Theta series of Schwartz forms over an indefinite lattice, evaluated at a
//! point of the Grassmannian of negative q-planes.

use crate::error::{Error, Result};
use crate::fock::{build_phi0, build_phi_km, build_psi, fock_to_schrodinger, FockForm};
use crate::fqm::{discriminant_group, DiscriminantForm, Lattice, WeilRep};
use crate::special::{gamma_fn, upper_gamma};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Enumeration radius cap, in units of 1/v.
const RADIUS_CAP: f64 = 400.0;

/// A point z of the Grassmannian, stored as a frame B (columns b_1..b_{p+q})
/// with B^T G B = diag(1,..,1,-1,..,-1); z is spanned by the last q columns.
#[derive(Clone, Debug)]
pub struct GrassmannPoint {
    pub p: usize,
    pub q: usize,
    pub gram: DMatrix<f64>,
    pub frame: DMatrix<f64>,
    /// x = coords * lambda gives frame coordinates, lambda = sum x_j b_j.
    coords: DMatrix<f64>,
    majorant: DMatrix<f64>,
}

fn eta_diag(p: usize, q: usize) -> DMatrix<f64> {
    DMatrix::from_fn(p + q, p + q, |i, j| if i != j { 0.0 } else if i < p { 1.0 } else { -1.0 })
}

/// A frame adapted to the signature of `g`: positive directions first.
pub fn base_frame(gram: &DMatrix<f64>) -> DMatrix<f64> {
    let n = gram.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let eig = SymmetricEigen::new(gram.clone());
    let mut idx: Vec<usize> = (0..n).collect();
    // positive eigenvalues first, each block in index order of the dominant coordinate
    let dominant = |k: usize| {
        let v = eig.eigenvectors.column(k);
        (0..n).max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap().then(b.cmp(&a))).unwrap()
    };
    idx.sort_by_key(|&k| (eig.eigenvalues[k] < 0.0, dominant(k)));
    let mut b = DMatrix::zeros(n, n);
    for (col, &k) in idx.iter().enumerate() {
        let mut v = eig.eigenvectors.column(k).into_owned();
        if v[dominant(k)] < 0.0 {
            v = -v;
        }
        v /= eig.eigenvalues[k].abs().sqrt();
        b.set_column(col, &v);
    }
    b
}

impl GrassmannPoint {
    /// The point with the given frame, after checking B^T G B = diag(I_p, -I_q).
    pub fn from_frame(l: &Lattice, frame: DMatrix<f64>) -> Result<Self> {
        let gram = l.gram_f64();
        let n = l.rank();
        if frame.nrows() != n || frame.ncols() != n {
            return Err(Error::InvalidLattice("frame has the wrong shape".into()));
        }
        let eta = eta_diag(l.p, l.q);
        let res = (frame.transpose() * &gram * &frame - &eta).abs().max();
        let scale = frame.abs().max().powi(2).max(1.0);
        if res > 1e-10 * scale {
            return Err(Error::NotIsometry(res));
        }
        let coords = &eta * frame.transpose() * &gram;
        let majorant = coords.transpose() * &coords;
        Ok(GrassmannPoint { p: l.p, q: l.q, gram, frame, coords, majorant })
    }

    /// z = g z_0 for a real isometry g of the lattice's quadratic space.
    pub fn from_group(l: &Lattice, g: &DMatrix<f64>) -> Result<Self> {
        let gram = l.gram_f64();
        let n = l.rank();
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::InvalidLattice("group element has the wrong shape".into()));
        }
        let res = (g.transpose() * &gram * g - &gram).abs().max();
        if res > 1e-10 * g.abs().max().powi(2).max(1.0) {
            return Err(Error::NotIsometry(res));
        }
        GrassmannPoint::from_frame(l, g * base_frame(&gram))
    }

    pub fn base(l: &Lattice) -> Self {
        GrassmannPoint::from_frame(l, base_frame(&l.gram_f64())).expect("eigenframe is orthonormal")
    }

    /// The point of the U+U Grassmannian attached to (z1, z2) in H x H: the
    /// negative plane spanned by Re Z and Im Z with Z = (z1 z2, 1, -z1, z2).
    pub fn from_h2(z1: Complex64, z2: Complex64) -> Result<Self> {
        if z1.im <= 0.0 || z2.im <= 0.0 {
            return Err(Error::NotInH);
        }
        let l = Lattice::u_plus_u();
        let gram = l.gram_f64();
        let zv = [z1 * z2, Complex64::new(1.0, 0.0), -z1, z2];
        let s = (2.0 * z1.im * z2.im).sqrt();
        let n1 = DVector::from_iterator(4, zv.iter().map(|c| c.re / s));
        let n2 = DVector::from_iterator(4, zv.iter().map(|c| c.im / s));
        let pair = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * &gram * b)[(0, 0)];
        // project the standard basis onto the orthogonal complement and orthonormalize
        let mut pos: Vec<DVector<f64>> = Vec::new();
        let mut cands: Vec<DVector<f64>> = (0..4)
            .map(|i| {
                let mut e = DVector::zeros(4);
                e[i] = 1.0;
                let c1 = pair(&e, &n1);
                let c2 = pair(&e, &n2);
                e + &n1 * c1 + &n2 * c2
            })
            .collect();
        for _ in 0..2 {
            for c in cands.iter_mut() {
                for b in &pos {
                    let t = pair(c, b);
                    *c -= b * t;
                }
            }
            let (best, _) = cands
                .iter()
                .enumerate()
                .map(|(i, c)| (i, pair(c, c)))
                .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 + 1e-12 { x } else { acc });
            let c = cands.remove(best);
            let nrm = pair(&c, &c).sqrt();
            pos.push(c / nrm);
        }
        let mut frame = DMatrix::zeros(4, 4);
        frame.set_column(0, &pos[0]);
        frame.set_column(1, &pos[1]);
        frame.set_column(2, &n1);
        frame.set_column(3, &n2);
        GrassmannPoint::from_frame(&l, frame)
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Frame coordinates x with lambda = sum x_j b_j.
    pub fn coords(&self, lambda: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(lambda);
        (&self.coords * v).iter().copied().collect()
    }

    /// The majorant (lambda, lambda)_z in lattice coordinates.
    pub fn majorant_matrix(&self) -> &DMatrix<f64> {
        &self.majorant
    }

    pub fn majorant(&self, lambda: &[f64]) -> f64 {
        self.coords(lambda).iter().map(|x| x * x).sum()
    }

    /// |q(lambda_z)| = half the squared length of the negative part.
    pub fn neg_norm(&self, lambda: &[f64]) -> f64 {
        self.coords(lambda)[self.p..].iter().map(|x| x * x).sum::<f64>() / 2.0
    }

    /// The point B exp(t X_{alpha mu}) (1-based, alpha <= p < mu).
    pub fn flow(&self, alpha: usize, mu: usize, t: f64) -> Self {
        let n = self.n();
        let (a, m) = (alpha - 1, mu - 1);
        let mut e = DMatrix::identity(n, n);
        e[(a, a)] = t.cosh();
        e[(m, m)] = t.cosh();
        e[(a, m)] = t.sinh();
        e[(m, a)] = t.sinh();
        self.with_frame(&self.frame * e)
    }

    /// gamma z for a matrix acting on lattice coordinates.
    pub fn translate(&self, gamma: &DMatrix<f64>) -> Self {
        self.with_frame(gamma * &self.frame)
    }

    /// The same lattice with a new frame, without the isometry check.
    pub fn with_frame(&self, frame: DMatrix<f64>) -> Self {
        let eta = eta_diag(self.p, self.q);
        let coords = &eta * frame.transpose() * &self.gram;
        let majorant = coords.transpose() * &coords;
        GrassmannPoint { p: self.p, q: self.q, gram: self.gram.clone(), frame, coords, majorant }
    }

    /// Isometry residual of the stored frame.
    pub fn residual(&self) -> f64 {
        let eta = eta_diag(self.p, self.q);
        (self.frame.transpose() * &self.gram * &self.frame - eta).abs().max()
    }
}

/// All lambda in L + h with (lambda, lambda)_z < r, by Fincke-Pohst enumeration
/// on the Cholesky factor of the majorant. `h` is a coset representative in
/// lattice coordinates.
pub fn enumerate(z: &GrassmannPoint, h: &[f64], r: f64) -> Vec<Vec<f64>> {
    let n = z.n();
    if n == 0 {
        return vec![vec![]];
    }
    let chol = nalgebra::Cholesky::new(z.majorant.clone()).expect("majorant is positive definite");
    // M = R^T R with R upper triangular
    let rt = chol.l().transpose();
    let mut out = Vec::new();
    let mut y = vec![0.0; n];
    let slack = 1e-9 * (1.0 + r);
    fp_rec(&rt, h, r + slack, n - 1, &mut y, 0.0, &mut out);
    out.retain(|v| z.majorant(v) < r * (1.0 - 1e-12));
    out
}

fn fp_rec(rt: &DMatrix<f64>, h: &[f64], r: f64, i: usize, y: &mut [f64], used: f64, out: &mut Vec<Vec<f64>>) {
    let n = y.len();
    let rii = rt[(i, i)];
    let mut c = 0.0;
    for j in i + 1..n {
        c -= rt[(i, j)] / rii * y[j];
    }
    let rem = r - used;
    if rem < 0.0 {
        return;
    }
    let w = rem.sqrt() / rii;
    let lo = (c - w - h[i]).ceil() as i64;
    let hi = (c + w - h[i]).floor() as i64;
    for m in lo..=hi {
        y[i] = h[i] + m as f64;
        let t = rii * (y[i] - c);
        let u = used + t * t;
        if u > r {
            continue;
        }
        if i == 0 {
            out.push(y.to_vec());
        } else {
            fp_rec(rt, h, r, i - 1, y, u, out);
        }
    }
    y[i] = 0.0;
}

/// The Schwartz forms whose theta series are supported.
#[derive(Clone, Debug)]
pub enum Kernel {
    Phi0,
    PhiKm,
    Psi,
    /// -dd^c phi_0 (q = 2), which equals omega(L) phi_KM.
    DdcPhi0,
    /// Any Fock-model form with its K'-weight.
    Custom(FockForm, f64),
}

impl Kernel {
    pub fn parse(s: &str) -> Result<Kernel> {
        match s {
            "phi0" => Ok(Kernel::Phi0),
            "phikm" => Ok(Kernel::PhiKm),
            "psi" => Ok(Kernel::Psi),
            "ddcphi0" => Ok(Kernel::DdcPhi0),
            _ => Err(Error::Parse(format!("unknown kernel {s}"))),
        }
    }

    /// The Fock form and its K'-weight in signature (p, q).
    pub fn fock(&self, p: usize, q: usize) -> Result<(FockForm, f64)> {
        let (pf, qf) = (p as f64, q as f64);
        Ok(match self {
            Kernel::Phi0 => (build_phi0(p, q), (pf - qf) / 2.0),
            Kernel::PhiKm => (build_phi_km(p, q)?, (pf + qf) / 2.0),
            Kernel::Psi => (build_psi(p, q)?, (pf + qf) / 2.0 - 2.0),
            Kernel::DdcPhi0 => {
                let f = build_phi0(p, q).ddc()?;
                (f.scale(&crate::fock::Coeff::rat(-1, 1)), (pf + qf) / 2.0 - 2.0)
            }
            Kernel::Custom(f, w) => {
                if f.p != p || f.q != q {
                    return Err(Error::SignatureRange(f.p, f.q));
                }
                (f.clone(), *w)
            }
        })
    }
}

/// A term c x^m of a Schroedinger polynomial, attached to a wedge word.
#[derive(Clone, Debug)]
pub struct PolyTerm {
    pub word: u32,
    pub exps: Vec<u16>,
    pub deg: u32,
    pub coeff: Complex64,
}

/// The polynomial P with F = P phi_0, in floating point.
#[derive(Clone, Debug)]
pub struct SchwartzPoly {
    pub p: usize,
    pub q: usize,
    pub terms: Vec<PolyTerm>,
    pub weight: f64,
}

impl SchwartzPoly {
    pub fn new(kernel: &Kernel, p: usize, q: usize) -> Result<Self> {
        if q == 0 || p == 0 {
            // only the Gaussian makes sense without both directions
            return match kernel {
                Kernel::Phi0 => Ok(SchwartzPoly {
                    p,
                    q,
                    terms: vec![PolyTerm { word: 0, exps: vec![0; p + q], deg: 0, coeff: Complex64::new(1.0, 0.0) }],
                    weight: (p as f64 - q as f64) / 2.0,
                }),
                _ => Err(Error::SignatureRange(p, q)),
            };
        }
        let (f, weight) = kernel.fock(p, q)?;
        let s = fock_to_schrodinger(&f);
        let terms = s
            .terms
            .iter()
            .map(|((m, w), c)| PolyTerm {
                word: *w,
                exps: m.clone(),
                deg: m.iter().map(|&e| e as u32).sum(),
                coeff: c.to_c64(),
            })
            .collect();
        Ok(SchwartzPoly { p, q, terms, weight })
    }

    /// Exponent of v in front of the lattice sum.
    pub fn v_power(&self) -> f64 {
        (self.p + self.q) as f64 / 4.0 - self.weight / 2.0
    }

    pub fn words(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.iter().map(|t| t.word).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.deg).max().unwrap_or(0)
    }
}

fn monomial(x: &[f64], exps: &[u16]) -> f64 {
    let mut r = 1.0;
    for (xi, &e) in x.iter().zip(exps) {
        if e > 0 {
            r *= xi.powi(e as i32);
        }
    }
    r
}

/// Theta values: one map from wedge words to numbers per element of L#/L.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub components: Vec<BTreeMap<u32, Complex64>>,
    pub error: f64,
    pub weight: f64,
    pub v_power: f64,
    pub radius: f64,
}

impl ThetaValue {
    pub fn max_diff(&self, other: &ThetaValue) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in self.components.iter().zip(&other.components) {
            for w in a.keys().chain(b.keys()) {
                let x = a.get(w).copied().unwrap_or_default();
                let y = b.get(w).copied().unwrap_or_default();
                worst = worst.max((x - y).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().flat_map(|c| c.values()).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Estimate of the sum over |x|^2 >= r of v^pow |P(sqrt v x)| e^{-pi v |x|^2}: a volume
/// comparison whose cut is moved inward by the fundamental-domain diameter, times 10.
fn tail_bound(poly: &[(u32, f64)], pow: f64, n: usize, covol: f64, diam: f64, v: f64, r: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let reff = (r.sqrt() - diam).max(0.0).powi(2);
    let nf = n as f64;
    let shell = PI.powf(nf / 2.0) / gamma_fn(nf / 2.0) / covol;
    let mut s = 0.0;
    for &(d, c) in poly {
        let a = (nf + d as f64) / 2.0;
        let x = PI * v * reff;
        let integral = if x > 0.0 { (PI * v).powf(-a) * upper_gamma(a, x) } else { (PI * v).powf(-a) * gamma_fn(a) };
        s += c * v.powf(pow + d as f64 / 2.0) * shell * integral;
    }
    10.0 * s
}

/// Precomputed data for repeated evaluation of one theta series at one point.
pub struct ThetaSum {
    pub poly: SchwartzPoly,
    pub words: Vec<u32>,
    /// Frame coordinates of the enumerated vectors, and (lambda, lambda), per coset.
    pub vectors: Vec<Vec<(Vec<f64>, f64)>>,
    pub radius: f64,
    pub vmin: f64,
    covol: f64,
    diam: f64,
    degree_bounds: Vec<(u32, f64)>,
}

impl ThetaSum {
    /// Enumerates every coset out to the radius needed for `tol` at all v >= vmin.
    pub fn new(l: &Lattice, disc: &DiscriminantForm, z: &GrassmannPoint, kernel: &Kernel, vmin: f64, tol: f64) -> Result<Self> {
        let poly = SchwartzPoly::new(kernel, l.p, l.q)?;
        ThetaSum::with_poly(l, disc, z, poly, vmin, tol, 0)
    }

    pub fn with_poly(
        l: &Lattice,
        disc: &DiscriminantForm,
        z: &GrassmannPoint,
        poly: SchwartzPoly,
        vmin: f64,
        tol: f64,
        extra_degree: u32,
    ) -> Result<Self> {
        if vmin <= 0.0 {
            return Err(Error::NotInH);
        }
        let n = l.rank();
        let covol = (l.det().unsigned_abs() as f64).sqrt().max(1e-300);
        let diam = 0.5 * (0..n).map(|i| z.majorant[(i, i)].sqrt()).sum::<f64>();
        let mut by_deg: BTreeMap<u32, f64> = BTreeMap::new();
        for t in &poly.terms {
            *by_deg.entry(t.deg + extra_degree).or_default() += t.coeff.norm() * (1.0 + extra_degree as f64);
        }
        let degree_bounds: Vec<(u32, f64)> = by_deg.into_iter().collect();
        let pow = poly.v_power() + extra_degree as f64;
        let mut radius = 1.0 / vmin;
        // the bound is decreasing in v beyond the Gaussian peak, so vmin is the worst case
        while tail_bound(&degree_bounds, pow, n, covol, diam, vmin, radius) > tol {
            radius *= 1.15;
            if radius * vmin > RADIUS_CAP {
                return Err(Error::ToleranceTooSmall(tol));
            }
        }
        let vectors = disc
            .reps_f64()
            .iter()
            .map(|h| {
                enumerate(z, h, radius)
                    .into_iter()
                    .map(|lam| {
                        let norm = l.pair_f64(&lam, &lam);
                        (z.coords(&lam), norm)
                    })
                    .collect()
            })
            .collect();
        let words = poly.words();
        Ok(ThetaSum { poly, words, vectors, radius, vmin, covol, diam, degree_bounds })
    }

    pub fn error_bound(&self, v: f64) -> f64 {
        let n = self.poly.p + self.poly.q;
        tail_bound(&self.degree_bounds, self.poly.v_power(), n, self.covol, self.diam, v, self.radius)
    }

    /// The theta value at tau (requires Im tau >= vmin).
    pub fn eval(&self, tau: Complex64) -> ThetaValue {
        let (u, v) = (tau.re, tau.im);
        let pow = self.poly.v_power();
        let sv = v.sqrt();
        let comps = self
            .vectors
            .iter()
            .map(|vecs| {
                let terms: Vec<Vec<Complex64>> = vecs
                    .par_iter()
                    .map(|(x, norm)| {
                        let r2: f64 = x.iter().map(|t| t * t).sum();
                        let g = Complex64::from_polar((-PI * v * r2).exp(), PI * u * norm);
                        let mut acc = vec![Complex64::default(); self.words.len()];
                        for t in &self.poly.terms {
                            let k = self.words.binary_search(&t.word).unwrap();
                            acc[k] += t.coeff * monomial(x, &t.exps) * sv.powi(t.deg as i32);
                        }
                        acc.iter().map(|a| a * g).collect()
                    })
                    .collect();
                let mut out = BTreeMap::new();
                for (k, &w) in self.words.iter().enumerate() {
                    let col: Vec<Complex64> = terms.iter().map(|t| t[k]).collect();
                    out.insert(w, pairwise_sum(&col) * v.powf(pow));
                }
                out
            })
            .collect();
        ThetaValue {
            components: comps,
            error: self.error_bound(v),
            weight: self.poly.weight,
            v_power: pow,
            radius: self.radius,
        }
    }

    /// L = -2 i v^2 d/d(tau bar) applied to every lattice term.
    pub fn eval_lowered(&self, tau: Complex64) -> ThetaValue {
        let (u, v) = (tau.re, tau.im);
        let pow = self.poly.v_power();
        let comps = self
            .vectors
            .iter()
            .map(|vecs| {
                let terms: Vec<Vec<Complex64>> = vecs
                    .par_iter()
                    .map(|(x, norm)| {
                        let r2: f64 = x.iter().map(|t| t * t).sum();
                        let g = Complex64::from_polar((-PI * v * r2).exp(), PI * u * norm);
                        let mut acc = vec![Complex64::default(); self.words.len()];
                        for t in &self.poly.terms {
                            let k = self.words.binary_search(&t.word).unwrap();
                            let e = pow + t.deg as f64 / 2.0;
                            let base = t.coeff * monomial(x, &t.exps);
                            // term = base v^e g(u, v)
                            let du = base * v.powf(e) * Complex64::new(0.0, PI * norm);
                            let dv = base * (e * v.powf(e - 1.0) - PI * r2 * v.powf(e));
                            acc[k] += Complex64::new(0.0, -1.0) * v * v * (du + Complex64::i() * dv);
                        }
                        acc.iter().map(|a| a * g).collect()
                    })
                    .collect();
                let mut out = BTreeMap::new();
                for (k, &w) in self.words.iter().enumerate() {
                    let col: Vec<Complex64> = terms.iter().map(|t| t[k]).collect();
                    out.insert(w, pairwise_sum(&col));
                }
                out
            })
            .collect();
        ThetaValue { components: comps, error: 0.0, weight: self.poly.weight - 2.0, v_power: pow + 1.0, radius: self.radius }
    }
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Theta(tau, z, phi) with truncation error at most `tol` (per component).
pub fn theta_eval(l: &Lattice, kernel: &Kernel, tau: Complex64, z: &GrassmannPoint, tol: f64) -> Result<ThetaValue> {
    if tau.im <= 0.0 {
        return Err(Error::NotInH);
    }
    let disc = discriminant_group(l)?;
    let sum = ThetaSum::new(l, &disc, z, kernel, tau.im, tol)?;
    Ok(sum.eval(tau))
}

/// Generators for the modularity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S,
    T,
}

/// Max-norm residual of Theta(gamma tau) = phi^{2 wt} rho(gamma) Theta(tau).
pub fn modularity_residual(
    l: &Lattice,
    kernel: &Kernel,
    tau: Complex64,
    z: &GrassmannPoint,
    gen: Generator,
    tol: f64,
) -> Result<f64> {
    let rep = WeilRep::new(l, false)?;
    let base = theta_eval(l, kernel, tau, z, tol)?;
    let (image, mat, factor) = match gen {
        Generator::T => (tau + 1.0, rep.t_matrix(), Complex64::new(1.0, 0.0)),
        Generator::S => {
            let w2 = (2.0 * base.weight).round() as i32;
            (-tau.inv(), rep.s_matrix(), tau.sqrt().powi(w2))
        }
    };
    let moved = theta_eval(l, kernel, image, z, tol)?;
    let mut worst = 0.0f64;
    let words: Vec<u32> = base.components.iter().flat_map(|c| c.keys().copied()).collect();
    for &w in &words {
        for h in 0..rep.dim() {
            let mut want = Complex64::default();
            for k in 0..rep.dim() {
                want += mat[(h, k)] * base.components[k].get(&w).copied().unwrap_or_default();
            }
            let got = moved.components[h].get(&w).copied().unwrap_or_default();
            worst = worst.max((got - want * factor).norm());
        }
    }
    Ok(worst)
}

/// Max residual between L Theta(phi_KM) (termwise derivative) and Theta(-dd^c phi_0); q = 2.
pub fn lowering_theta_check(l: &Lattice, tau: Complex64, z: &GrassmannPoint, tol: f64) -> Result<f64> {
    if l.q != 2 {
        return Err(Error::NeedQ2(l.q));
    }
    let disc = discriminant_group(l)?;
    let km = SchwartzPoly::new(&Kernel::PhiKm, l.p, l.q)?;
    let lhs = ThetaSum::with_poly(l, &disc, z, km, tau.im, tol, 2)?.eval_lowered(tau);
    let rhs = ThetaSum::new(l, &disc, z, &Kernel::DdcPhi0, tau.im, tol)?.eval(tau);
    Ok(lhs.max_diff(&rhs))
}

/// Weight as a rational, for interfaces that need it.
pub fn weight_rational(w: f64) -> Rational64 {
    Rational64::new((2.0 * w).round() as i64, 2)
}
