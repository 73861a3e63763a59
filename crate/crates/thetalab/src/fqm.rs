//! Discriminant forms of even lattices and the Weil representation on
//! their group algebra.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_integer::Integer as _;
use num_rational::Rational64;
use num_traits::{One, Zero};
use std::f64::consts::PI;

const EAGER_LIMIT: i128 = 1_000_000;

/// An even lattice given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub gram: Vec<Vec<i64>>,
    pub p: usize,
    pub q: usize,
    pub name: Option<String>,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("gram matrix not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("gram matrix not symmetric".into()));
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(Error::NotEven);
            }
        }
        if n > 0 && det_bareiss(&gram) == 0 {
            return Err(Error::SingularLattice);
        }
        let (p, q) = signature(&gram);
        Ok(Lattice { gram, p, q, name: None })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> i128 {
        det_bareiss(&self.gram)
    }

    pub fn gram_f64(&self) -> DMatrix<f64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |i, j| self.gram[i][j] as f64)
    }

    /// Bilinear form on real coordinate vectors.
    pub fn pair_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.rank();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * self.gram[i][j] as f64 * y[j];
            }
        }
        s
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j];
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = other.gram[i][j];
            }
        }
        Lattice { gram: g, p: self.p + other.p, q: self.q + other.q, name: None }
    }

    pub fn hyperbolic() -> Lattice {
        Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap().named("U")
    }

    /// U + U with coordinates (a, b, c, d) and (x, x) = 2ab + 2cd.
    pub fn u_plus_u() -> Lattice {
        Lattice::hyperbolic().direct_sum(&Lattice::hyperbolic()).named("U+U")
    }

    pub fn a2() -> Lattice {
        Lattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap().named("A2")
    }

    pub fn diagonal(d: &[i64]) -> Result<Lattice> {
        let n = d.len();
        let mut g = vec![vec![0; n]; n];
        for i in 0..n {
            g[i][i] = d[i];
        }
        Lattice::new(g)
    }
}

fn signature(gram: &[Vec<i64>]) -> (usize, usize) {
    let n = gram.len();
    if n == 0 {
        return (0, 0);
    }
    let m = DMatrix::from_fn(n, n, |i, j| gram[i][j] as f64);
    let eig = SymmetricEigen::new(m);
    let p = eig.eigenvalues.iter().filter(|&&x| x > 0.0).count();
    (p, n - p)
}

/// Exact determinant by fraction-free elimination.
pub fn det_bareiss(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Smith normal form: returns (u, d, v) with u * a * v = diag(d), d_i | d_{i+1}.
pub fn smith_normal_form(a: &[Vec<i64>]) -> (Vec<Vec<i128>>, Vec<i128>, Vec<Vec<i128>>) {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = m[i][t].div_euclid(m[t][t]);
                if f != 0 {
                    for j in 0..n {
                        m[i][j] -= f * m[t][j];
                        u[i][j] -= f * u[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = m[t][j].div_euclid(m[t][t]);
                if f != 0 {
                    for i in 0..n {
                        m[i][j] -= f * m[i][t];
                        v[i][j] -= f * v[i][t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility into the rest of the block
            let mut bad = None;
            'outer: for i in t + 1..n {
                for j in t + 1..n {
                    if m[i][j] % m[t][t] != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in 0..n {
                        m[t][j] += m[i][j];
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for j in 0..n {
                m[t][j] = -m[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let d = (0..n).map(|i| m[i][i]).collect();
    (u, d, v)
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Reduce a rational into [0, 1).
pub fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

/// e(r) = exp(2 pi i r) from an exactly reduced rational angle.
pub fn e_rat(r: Rational64) -> Complex64 {
    let f = frac(r);
    let (n, d) = (*f.numer(), *f.denom());
    // fold to (-1/2, 1/2] for accuracy
    let (n, d) = if 2 * n > d { (n - d, d) } else { (n, d) };
    let ang = 2.0 * PI * (n as f64) / (d as f64);
    Complex64::new(ang.cos(), ang.sin())
}

/// The finite quadratic module L#/L.
#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    pub gram: Vec<Vec<i64>>,
    /// Elementary divisors greater than one.
    pub invariants: Vec<u64>,
    /// Generators of L#/L as rational vectors in lattice coordinates.
    pub generators: Vec<Vec<Rational64>>,
    /// Residue tuples, one per element, in mixed radix order.
    pub elements: Vec<Vec<u64>>,
    /// Coset representatives with coordinates in [0, 1).
    pub reps: Vec<Vec<Rational64>>,
    pub qvals: Vec<Rational64>,
    pub level: u64,
    pub order: u64,
    pub neg: Vec<usize>,
}

pub fn discriminant_group(l: &Lattice) -> Result<DiscriminantForm> {
    let n = l.rank();
    for i in 0..n {
        if l.gram[i][i] % 2 != 0 {
            return Err(Error::NotEven);
        }
    }
    let det = l.det();
    if n > 0 && det == 0 {
        return Err(Error::SingularLattice);
    }
    if det.abs() > EAGER_LIMIT {
        return Err(Error::InvalidLattice(format!("|det| = {} exceeds the eager limit", det.abs())));
    }
    let (_u, d, v) = smith_normal_form(&l.gram);
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        if d[i] > 1 {
            invariants.push(d[i] as u64);
            let g: Vec<Rational64> = (0..n).map(|k| Rational64::new(v[k][i] as i64, d[i] as i64)).collect();
            generators.push(g.into_iter().map(frac).collect::<Vec<_>>());
        }
    }
    let order: u64 = invariants.iter().product();
    let mut elements = Vec::with_capacity(order as usize);
    let mut reps = Vec::with_capacity(order as usize);
    for idx in 0..order {
        let mut rem = idx;
        let mut res = vec![0u64; invariants.len()];
        for (k, &dk) in invariants.iter().enumerate().rev() {
            res[k] = rem % dk;
            rem /= dk;
        }
        let mut x = vec![Rational64::zero(); n];
        for (k, &c) in res.iter().enumerate() {
            for i in 0..n {
                x[i] += generators[k][i] * Rational64::from_integer(c as i64);
            }
        }
        elements.push(res);
        reps.push(x.into_iter().map(frac).collect::<Vec<_>>());
    }
    let qvals: Vec<Rational64> = reps.iter().map(|x| frac(half_norm(&l.gram, x))).collect();
    let level = qvals.iter().fold(1i64, |acc, r| acc.lcm(r.denom())) as u64;
    let neg = elements
        .iter()
        .map(|res| {
            let m: Vec<u64> = res.iter().zip(&invariants).map(|(&c, &dk)| (dk - c) % dk).collect();
            index_of(&m, &invariants)
        })
        .collect();
    Ok(DiscriminantForm { gram: l.gram.clone(), invariants, generators, elements, reps, qvals, level, order, neg })
}

fn index_of(res: &[u64], inv: &[u64]) -> usize {
    let mut idx = 0u64;
    for (c, d) in res.iter().zip(inv) {
        idx = idx * d + c;
    }
    idx as usize
}

fn half_norm(g: &[Vec<i64>], x: &[Rational64]) -> Rational64 {
    bilinear(g, x, x) / Rational64::from_integer(2)
}

fn bilinear(g: &[Vec<i64>], x: &[Rational64], y: &[Rational64]) -> Rational64 {
    let mut s = Rational64::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..y.len() {
            s += x[i] * y[j] * Rational64::from_integer(g[i][j]);
        }
    }
    s
}

impl DiscriminantForm {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn q(&self, h: usize) -> Rational64 {
        self.qvals[h]
    }

    /// b(h, h') = (x_h, x_h') mod 1.
    pub fn b(&self, h: usize, k: usize) -> Rational64 {
        frac(bilinear(&self.gram, &self.reps[h], &self.reps[k]))
    }

    pub fn add(&self, h: usize, k: usize) -> usize {
        let m: Vec<u64> = self.elements[h]
            .iter()
            .zip(&self.elements[k])
            .zip(&self.invariants)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        index_of(&m, &self.invariants)
    }

    /// Coset of a vector of L# given in lattice coordinates.
    pub fn coset_of(&self, x: &[Rational64]) -> Option<usize> {
        let r: Vec<Rational64> = x.iter().map(|&c| frac(c)).collect();
        self.reps.iter().position(|rep| *rep == r)
    }

    pub fn reps_f64(&self) -> Vec<Vec<f64>> {
        self.reps.iter().map(|x| x.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect()).collect()
    }
}

/// Generators of the metaplectic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    S,
    T,
    SInv,
    TInv,
}

/// A word in S, T and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MetaplecticWord(pub Vec<Gen>);

impl MetaplecticWord {
    pub fn from_str_word(s: &str) -> Option<Self> {
        let mut w = Vec::new();
        let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < cs.len() {
            let inv = cs.get(i + 1) == Some(&'\'');
            let g = match (cs[i], inv) {
                ('S', false) => Gen::S,
                ('S', true) => Gen::SInv,
                ('T', false) => Gen::T,
                ('T', true) => Gen::TInv,
                _ => return None,
            };
            w.push(g);
            i += if inv { 2 } else { 1 };
        }
        Some(MetaplecticWord(w))
    }

    /// Underlying SL2(Z) matrix [a, b, c, d].
    pub fn matrix(&self) -> [i64; 4] {
        let mut m = [1i64, 0, 0, 1];
        for g in &self.0 {
            let h = gen_matrix(*g);
            m = mat_mul(m, h);
        }
        m
    }

    /// The metaplectic multiplier phi(tau) with phi^2 = c tau + d.
    pub fn multiplier(&self, tau: Complex64) -> Complex64 {
        // (g1, f1)(g2, f2) = (g1 g2, f1(g2 tau) f2(tau)); fold from the right
        let mut acc = Complex64::new(1.0, 0.0);
        let mut t = tau;
        for g in self.0.iter().rev() {
            let f = match g {
                Gen::T | Gen::TInv => Complex64::new(1.0, 0.0),
                Gen::S => t.sqrt(),
                Gen::SInv => (-t.inv()).sqrt().inv(),
            };
            acc *= f;
            t = mobius(gen_matrix(*g), t);
        }
        acc
    }

    /// Canonical word for (m, branch): branch 0 selects the principal root sqrt(c tau + d)
    /// at tau = i, branch 1 the other one.
    pub fn from_matrix(m: [i64; 4], branch: bool) -> Result<Self> {
        let [a, b, c, d] = m;
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::NotUnimodular(m));
        }
        let mut word = Vec::new();
        let mut cur = m;
        while cur[2] != 0 {
            let n = (cur[0] as f64 / cur[2] as f64).round() as i64;
            push_t(&mut word, n);
            cur = mat_mul(t_pow(-n), cur);
            word.push(Gen::S);
            cur = mat_mul(gen_matrix(Gen::SInv), cur);
        }
        if cur[0] == -1 {
            word.push(Gen::S);
            word.push(Gen::S);
            cur = mat_mul([-1, 0, 0, -1], cur);
        }
        push_t(&mut word, cur[1]);
        let mut w = MetaplecticWord(word);
        let i = Complex64::new(0.0, 1.0);
        let principal = (c as f64 * i + d as f64).sqrt();
        let got = w.multiplier(i);
        let on_principal = (got - principal).norm() < 1e-9;
        if on_principal == branch {
            w.0.extend([Gen::S; 4]);
        }
        debug_assert_eq!(w.matrix(), m);
        Ok(w)
    }
}

fn push_t(w: &mut Vec<Gen>, n: i64) {
    let g = if n >= 0 { Gen::T } else { Gen::TInv };
    for _ in 0..n.unsigned_abs() {
        w.push(g);
    }
}

fn t_pow(n: i64) -> [i64; 4] {
    [1, n, 0, 1]
}

fn gen_matrix(g: Gen) -> [i64; 4] {
    match g {
        Gen::S => [0, -1, 1, 0],
        Gen::SInv => [0, 1, -1, 0],
        Gen::T => [1, 1, 0, 1],
        Gen::TInv => [1, -1, 0, 1],
    }
}

fn mat_mul(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn mobius(m: [i64; 4], t: Complex64) -> Complex64 {
    (t * m[0] as f64 + m[1] as f64) / (t * m[2] as f64 + m[3] as f64)
}

/// The Weil representation attached to a lattice, or its dual when `dual` is set.
#[derive(Clone, Debug)]
pub struct WeilRep {
    pub disc: DiscriminantForm,
    pub p: usize,
    pub q: usize,
    pub dual: bool,
}

impl WeilRep {
    pub fn new(l: &Lattice, dual: bool) -> Result<Self> {
        Ok(WeilRep { disc: discriminant_group(l)?, p: l.p, q: l.q, dual })
    }

    /// The one-dimensional trivial representation, tagged with a signature p - q = 0 mod 8.
    pub fn trivial(p: usize, q: usize) -> Result<Self> {
        if (p as i64 - q as i64).rem_euclid(8) != 0 {
            return Err(Error::InvalidLattice(format!("signature ({p},{q}) is not 0 mod 8")));
        }
        Ok(WeilRep { disc: discriminant_group(&Lattice::hyperbolic())?, p, q, dual: false })
    }

    pub fn dualized(&self) -> Self {
        WeilRep { dual: !self.dual, ..self.clone() }
    }

    pub fn signature_mod8(&self) -> i64 {
        (self.p as i64 - self.q as i64).rem_euclid(8)
    }

    pub fn dim(&self) -> usize {
        self.disc.len()
    }

    pub fn t_matrix(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for h in 0..n {
            m[(h, h)] = self.phase(e_rat(self.disc.q(h)));
        }
        m
    }

    /// rho(S)_{h', h} = sqrt(i)^{q-p} |D|^{-1/2} e(-(h, h')).
    pub fn s_matrix(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let pref = e_rat(Rational64::new(-self.signature_mod8(), 8)) / (n as f64).sqrt();
        let mut m = DMatrix::zeros(n, n);
        for h in 0..n {
            for k in 0..n {
                m[(k, h)] = self.phase(pref * e_rat(-self.disc.b(h, k)));
            }
        }
        m
    }

    fn phase(&self, z: Complex64) -> Complex64 {
        if self.dual {
            z.conj()
        } else {
            z
        }
    }

    pub fn generator(&self, g: Gen) -> DMatrix<Complex64> {
        match g {
            Gen::S => self.s_matrix(),
            Gen::T => self.t_matrix(),
            Gen::SInv => self.s_matrix().adjoint(),
            Gen::TInv => self.t_matrix().adjoint(),
        }
    }

    pub fn element(&self, w: &MetaplecticWord) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::identity(n, n);
        let s = self.s_matrix();
        let t = self.t_matrix();
        for g in &w.0 {
            m = match g {
                Gen::S => m * &s,
                Gen::T => m * &t,
                Gen::SInv => m * s.adjoint(),
                Gen::TInv => m * t.adjoint(),
            };
        }
        m
    }

    /// The permutation e_h -> e_{-h}.
    pub fn negation(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for h in 0..n {
            m[(self.disc.neg[h], h)] = Complex64::one();
        }
        m
    }

    /// i^{q-p} (or its conjugate for the dual), the scalar in rho(S)^2 = c * negation.
    pub fn s_squared_scalar(&self) -> Complex64 {
        self.phase(e_rat(Rational64::new(-self.signature_mod8(), 4)))
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn rat_string(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?);
            (b != 0).then(|| Rational64::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

impl DiscriminantForm {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Elements of order dividing two.
    pub fn two_torsion(&self) -> Vec<usize> {
        (0..self.len()).filter(|&h| self.neg[h] == h).collect()
    }

    pub fn q_signed(&self, h: usize, dual: bool) -> Rational64 {
        if dual {
            frac(-self.qvals[h])
        } else {
            self.qvals[h]
        }
    }
}
