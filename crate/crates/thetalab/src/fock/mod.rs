//! The polynomial Fock model P(C^{p+q}) tensor the exterior algebra of p*,
//! with the Lie-algebra operators acting on it, all over an exact ring.

mod build;
mod ring;

pub use build::*;
pub use ring::{Coeff, GaussQ};

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Exponent vector over z_1..z_{p+q} (or x_1..x_{p+q} in the Schroedinger picture).
pub type Mono = Vec<u16>;

/// An element of P(C^{p+q}) tensor wedge(p*). Wedge words are bit masks over the
/// generators omega_{alpha mu}, ordered lexicographically in (alpha, mu).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockForm {
    pub p: usize,
    pub q: usize,
    pub terms: BTreeMap<(Mono, u32), Coeff>,
}

/// Bit index of omega_{alpha mu} for 1 <= alpha <= p < mu <= p + q.
pub fn gen_index(p: usize, q: usize, alpha: usize, mu: usize) -> u32 {
    debug_assert!(alpha >= 1 && alpha <= p && mu > p && mu <= p + q);
    ((alpha - 1) * q + (mu - p - 1)) as u32
}

/// (alpha, mu) of a generator bit.
pub fn gen_pair(p: usize, q: usize, g: u32) -> (usize, usize) {
    let g = g as usize;
    (g / q + 1, p + 1 + g % q)
}

fn sign_below(word: u32, g: u32) -> bool {
    (word & ((1u32 << g) - 1)).count_ones() % 2 == 1
}

impl FockForm {
    pub fn zero(p: usize, q: usize) -> Self {
        FockForm { p, q, terms: BTreeMap::new() }
    }

    pub fn constant(p: usize, q: usize, c: Coeff) -> Self {
        let mut f = FockForm::zero(p, q);
        f.add_term(vec![0; p + q], 0, c);
        f
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, w: u32, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let key = (m, w);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &FockForm) -> FockForm {
        let mut r = self.clone();
        for ((m, w), c) in &o.terms {
            r.add_term(m.clone(), *w, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &FockForm) -> FockForm {
        self.add(&o.scale(&Coeff::rat(-1, 1)))
    }

    pub fn scale(&self, c: &Coeff) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m, w), d) in &self.terms {
            r.add_term(m.clone(), *w, d * c);
        }
        r
    }

    /// Exterior degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(_, w)| w.count_ones()).collect();
        d.sort();
        d.dedup();
        d
    }

    /// Product with another form: polynomials multiply, wedge words wedge.
    pub fn wedge(&self, o: &FockForm) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m1, w1), c1) in &self.terms {
            for ((m2, w2), c2) in &o.terms {
                if w1 & w2 != 0 {
                    continue;
                }
                let mut neg = false;
                let mut w = *w1;
                // move the generators of w2 in increasing order to their slots
                for g in 0..32 {
                    if w2 & (1 << g) != 0 {
                        // left-wedge from the right end: count generators of w above g
                        neg ^= (w >> (g + 1)).count_ones() % 2 == 1;
                        w |= 1 << g;
                    }
                }
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                r.add_term(m, w, if neg { -&c } else { c });
            }
        }
        r
    }

    /// z_j times the form (0-based j).
    pub fn mul_z(&self, j: usize) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m, w), c) in &self.terms {
            let mut m = m.clone();
            m[j] += 1;
            r.add_term(m, *w, c.clone());
        }
        r
    }

    /// d/dz_j of the polynomial part (0-based j).
    pub fn d_z(&self, j: usize) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m, w), c) in &self.terms {
            if m[j] == 0 {
                continue;
            }
            let e = m[j] as i64;
            let mut m = m.clone();
            m[j] -= 1;
            r.add_term(m, *w, c * &Coeff::rat(e, 1));
        }
        r
    }

    /// Left multiplication A_g by the generator g.
    pub fn left_wedge(&self, g: u32) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m, w), c) in &self.terms {
            if w & (1 << g) != 0 {
                continue;
            }
            let c = if sign_below(*w, g) { -c } else { c.clone() };
            r.add_term(m.clone(), w | (1 << g), c);
        }
        r
    }

    /// Interior multiplication A*_g.
    pub fn contract(&self, g: u32) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for ((m, w), c) in &self.terms {
            if w & (1 << g) == 0 {
                continue;
            }
            let c = if sign_below(*w, g) { -c } else { c.clone() };
            r.add_term(m.clone(), w & !(1 << g), c);
        }
        r
    }

    /// omega(X_{alpha mu}) = -4 pi d^2/dz_alpha dz_mu + (1/4pi) z_alpha z_mu (1-based indices).
    pub fn omega_x(&self, alpha: usize, mu: usize) -> FockForm {
        let a = self.d_z(alpha - 1).d_z(mu - 1).scale(&Coeff::scaled(-4, 1, 1, 0));
        let b = self.mul_z(alpha - 1).mul_z(mu - 1).scale(&Coeff::scaled(1, 4, -1, 0));
        a.add(&b)
    }

    /// omega(L) = 2 pi sum_alpha d^2/dz_alpha^2 - (1/8 pi) sum_mu z_mu^2.
    pub fn lowering(&self) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for a in 0..self.p {
            r = r.add(&self.d_z(a).d_z(a).scale(&Coeff::scaled(2, 1, 1, 0)));
        }
        for m in self.p..self.n() {
            r = r.add(&self.mul_z(m).mul_z(m).scale(&Coeff::scaled(-1, 8, -1, 0)));
        }
        r
    }

    /// omega(R) = -(1/8 pi) sum_alpha z_alpha^2 + 2 pi sum_mu d^2/dz_mu^2.
    pub fn raising(&self) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for a in 0..self.p {
            r = r.add(&self.mul_z(a).mul_z(a).scale(&Coeff::scaled(-1, 8, -1, 0)));
        }
        for m in self.p..self.n() {
            r = r.add(&self.d_z(m).d_z(m).scale(&Coeff::scaled(2, 1, 1, 0)));
        }
        r
    }

    /// d = sum omega(X_{alpha mu}) tensor A_{alpha mu}.
    pub fn d(&self) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for a in 1..=self.p {
            for mu in self.p + 1..=self.n() {
                let g = gen_index(self.p, self.q, a, mu);
                r = r.add(&self.omega_x(a, mu).left_wedge(g));
            }
        }
        r
    }

    /// h = sum z_mu d/dz_alpha tensor A*_{alpha mu}.
    pub fn h(&self) -> FockForm {
        let mut r = FockForm::zero(self.p, self.q);
        for a in 1..=self.p {
            for mu in self.p + 1..=self.n() {
                let g = gen_index(self.p, self.q, a, mu);
                r = r.add(&self.d_z(a - 1).mul_z(mu - 1).contract(g));
            }
        }
        r
    }

    fn need_q2(&self) -> Result<()> {
        if self.q != 2 {
            return Err(Error::NeedQ2(self.q));
        }
        Ok(())
    }

    /// The holomorphic (sign = -1) or antiholomorphic (sign = +1) part of d for q = 2:
    /// (1/2) sum omega(X_{a,p+1} + s i X_{a,p+2}) tensor (omega_{a,p+1} - s i omega_{a,p+2}).
    fn half_d(&self, s: i64) -> Result<FockForm> {
        self.need_q2()?;
        let (p, q) = (self.p, self.q);
        let si = Coeff::i().scale_int(s);
        let mut r = FockForm::zero(p, q);
        for a in 1..=p {
            let g1 = gen_index(p, q, a, p + 1);
            let g2 = gen_index(p, q, a, p + 2);
            let op = self.omega_x(a, p + 1).add(&self.omega_x(a, p + 2).scale(&si));
            let wedge = op.left_wedge(g1).sub(&op.left_wedge(g2).scale(&si));
            r = r.add(&wedge.scale(&Coeff::rat(1, 2)));
        }
        Ok(r)
    }

    pub fn del(&self) -> Result<FockForm> {
        self.half_d(-1)
    }

    pub fn delbar(&self) -> Result<FockForm> {
        self.half_d(1)
    }

    /// d^c = (1 / 4 pi i) (del - delbar).
    pub fn dc(&self) -> Result<FockForm> {
        let diff = self.del()?.sub(&self.delbar()?);
        Ok(diff.scale(&(&Coeff::scaled(-1, 4, -1, 0) * &Coeff::i())))
    }

    /// dd^c = -(1 / 2 pi i) del delbar.
    pub fn ddc(&self) -> Result<FockForm> {
        let f = self.delbar()?.del()?;
        Ok(f.scale(&(&Coeff::scaled(1, 2, -1, 0) * &Coeff::i())))
    }

    /// The infinitesimal action of the compact generator rotating indices a, b
    /// (both in 1..=p or both in p+1..=p+q) on polynomials and forms.
    pub fn k_action(&self, a: usize, b: usize) -> FockForm {
        let poly = self.d_z(b - 1).mul_z(a - 1).sub(&self.d_z(a - 1).mul_z(b - 1));
        let mut wedge = FockForm::zero(self.p, self.q);
        let (p, q) = (self.p, self.q);
        if a <= p && b <= p {
            for mu in p + 1..=p + q {
                let (ga, gb) = (gen_index(p, q, a, mu), gen_index(p, q, b, mu));
                wedge = wedge.add(&self.contract(gb).left_wedge(ga)).sub(&self.contract(ga).left_wedge(gb));
            }
        } else {
            for al in 1..=p {
                let (ga, gb) = (gen_index(p, q, al, a), gen_index(p, q, al, b));
                wedge = wedge.add(&self.contract(gb).left_wedge(ga)).sub(&self.contract(ga).left_wedge(gb));
            }
        }
        poly.add(&wedge)
    }

    /// True when every infinitesimal generator of K annihilates the form.
    pub fn is_k_invariant(&self) -> bool {
        let n = self.n();
        for a in 1..=n {
            for b in a + 1..=n {
                if (a <= self.p) != (b <= self.p) {
                    continue;
                }
                if !self.k_action(a, b).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficient of the monomial with exponents `m` and wedge word `w`.
    pub fn coeff(&self, m: &[u16], w: u32) -> Coeff {
        self.terms.get(&(m.to_vec(), w)).cloned().unwrap_or_default()
    }
}

impl Coeff {
    pub fn scale_int(&self, s: i64) -> Coeff {
        self * &Coeff::rat(s, 1)
    }
}

/// Operators accepted by [`apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    L,
    R,
    X(usize, usize),
    D,
    H,
    A(usize, usize),
    AStar(usize, usize),
    Del,
    DelBar,
    Dc,
    Ddc,
}

pub fn apply(op: Op, f: &FockForm) -> Result<FockForm> {
    let (p, q) = (f.p, f.q);
    let check = |a: usize, mu: usize| -> Result<u32> {
        if a < 1 || a > p || mu <= p || mu > p + q {
            return Err(Error::SignatureRange(a, mu));
        }
        Ok(gen_index(p, q, a, mu))
    };
    Ok(match op {
        Op::L => f.lowering(),
        Op::R => f.raising(),
        Op::X(a, mu) => {
            check(a, mu)?;
            f.omega_x(a, mu)
        }
        Op::D => f.d(),
        Op::H => f.h(),
        Op::A(a, mu) => f.left_wedge(check(a, mu)?),
        Op::AStar(a, mu) => f.contract(check(a, mu)?),
        Op::Del => f.del()?,
        Op::DelBar => f.delbar()?,
        Op::Dc => f.dc()?,
        Op::Ddc => f.ddc()?,
    })
}
