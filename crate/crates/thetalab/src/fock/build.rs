use super::{gen_index, Coeff, FockForm, Mono};
use crate::error::{Error, Result};

/// (-sqrt 2 / 4 pi)^q.
fn km_prefactor(q: usize) -> Coeff {
    let sign = if q % 2 == 0 { 1 } else { -1 };
    // (sqrt2)^q (4 pi)^{-q} = sqrt2^q * 2^{-2q} * pi^{-q}
    Coeff::scaled(sign, 1, -(q as i32), q as i32 - 4 * q as i32)
}

/// All tuples in {1..p}^len.
fn tuples(p: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=p).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn mono_of(n: usize, idx: &[usize]) -> Mono {
    let mut m = vec![0u16; n];
    for &i in idx {
        m[i - 1] += 1;
    }
    m
}

/// The wedge omega_{g_1} ^ ... ^ omega_{g_k} as (word, sign), or None if it vanishes.
pub fn wedge_word(gens: &[u32]) -> Option<(u32, bool)> {
    let mut w = 0u32;
    let mut neg = false;
    for &g in gens.iter().rev() {
        if w & (1 << g) != 0 {
            return None;
        }
        neg ^= (w & ((1u32 << g) - 1)).count_ones() % 2 == 1;
        w |= 1 << g;
    }
    Some((w, neg))
}

fn signed(c: &Coeff, neg: bool) -> Coeff {
    if neg {
        -c
    } else {
        c.clone()
    }
}

fn check_sig(p: usize, q: usize) -> Result<()> {
    if p < 1 || q < 1 || p * q > 32 {
        return Err(Error::SignatureRange(p, q));
    }
    Ok(())
}

/// phi_0 in the Fock model: the constant 1.
pub fn build_phi0(p: usize, q: usize) -> FockForm {
    FockForm::constant(p, q, Coeff::one())
}

/// (-sqrt2/4pi)^q sum z_{a_1}..z_{a_q} omega_{a_1,p+1} ^ ... ^ omega_{a_q,p+q}.
pub fn build_phi_km(p: usize, q: usize) -> Result<FockForm> {
    check_sig(p, q)?;
    let pre = km_prefactor(q);
    let mut f = FockForm::zero(p, q);
    for t in tuples(p, q) {
        let gens: Vec<u32> = t.iter().enumerate().map(|(j, &a)| gen_index(p, q, a, p + 1 + j)).collect();
        let (w, neg) = wedge_word(&gens).expect("distinct columns give distinct generators");
        f.add_term(mono_of(p + q, &t), w, signed(&pre, neg));
    }
    Ok(f)
}

/// psi = -1/(2(p+q-1)) h(phi_KM).
pub fn build_psi(p: usize, q: usize) -> Result<FockForm> {
    let phi = build_phi_km(p, q)?;
    Ok(phi.h().scale(&Coeff::rat(-1, 2 * (p + q - 1) as i64)))
}

/// Determinant of the matrix with rows omega_{rows[i], cols[j]}, expanded along the first row.
fn omega_det(p: usize, q: usize, rows: &[usize], cols: &[usize]) -> FockForm {
    if rows.is_empty() {
        return FockForm::constant(p, q, Coeff::one());
    }
    let mut out = FockForm::zero(p, q);
    for (j, &mu) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
        let minor = omega_det(p, q, &rows[1..], &rest);
        let term = minor.left_wedge(gen_index(p, q, rows[0], mu));
        out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// psi from the determinant formula with first row z_{p+1} .. z_{p+q}.
pub fn build_psi_formula(p: usize, q: usize) -> Result<FockForm> {
    check_sig(p, q)?;
    let mut fact = 1i64;
    for j in 1..q as i64 {
        fact *= j;
    }
    let pre = &km_prefactor(q) * &Coeff::rat(-1, 2 * fact);
    let cols: Vec<usize> = (p + 1..=p + q).collect();
    let mut out = FockForm::zero(p, q);
    for t in tuples(p, q - 1) {
        let mut det = FockForm::zero(p, q);
        for (j, &mu) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
            let minor = omega_det(p, q, &t, &rest).mul_z(mu - 1);
            det = if j % 2 == 0 { det.add(&minor) } else { det.sub(&minor) };
        }
        let mut term = det;
        for &a in &t {
            term = term.mul_z(a - 1);
        }
        out = out.add(&term);
    }
    Ok(out.scale(&pre))
}

/// Omega_{mu nu} = sum_alpha omega_{alpha mu} ^ omega_{alpha nu}.
fn big_omega(p: usize, q: usize, mu: usize, nu: usize) -> FockForm {
    let mut f = FockForm::zero(p, q);
    for a in 1..=p {
        if let Some((w, neg)) = wedge_word(&[gen_index(p, q, a, mu), gen_index(p, q, a, nu)]) {
            f.add_term(vec![0; p + q], w, signed(&Coeff::one(), neg));
        }
    }
    f
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            // inserting the largest element at pos creates (len - pos) inversions
            let s = sign ^ ((perm.len() - pos) % 2 == 1);
            out.push((p, s));
        }
    }
    out
}

/// e_q = (-1/4pi)^l (1/l!) sum_sigma sgn(sigma) Omega_{..} ^ ... for q = 2l, zero for q odd.
pub fn build_euler(p: usize, q: usize) -> Result<FockForm> {
    check_sig(p, q)?;
    if q % 2 == 1 {
        return Ok(FockForm::zero(p, q));
    }
    let l = q / 2;
    let mut lfact = 1i64;
    for j in 1..=l as i64 {
        lfact *= j;
    }
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let pre = Coeff::scaled(sign, lfact * 4i64.pow(l as u32), -(l as i32), 0);
    let mut out = FockForm::zero(p, q);
    for (perm, neg) in permutations(q) {
        let mut term = FockForm::constant(p, q, Coeff::one());
        for j in 0..l {
            let om = big_omega(p, q, p + 1 + perm[2 * j], p + 1 + perm[2 * j + 1]);
            term = term.wedge(&om);
        }
        out = if neg { out.sub(&term) } else { out.add(&term) };
    }
    Ok(out.scale(&pre))
}

/// The Schroedinger picture: F = P(x) phi_0, with z_j acting as P -> -4 pi x_j P + dP/dx_j.
/// Exponents of the returned form refer to x_1..x_{p+q}.
pub fn fock_to_schrodinger(f: &FockForm) -> FockForm {
    let mut out = FockForm::zero(f.p, f.q);
    for ((m, w), c) in &f.terms {
        let mut poly = FockForm::constant(f.p, f.q, c.clone());
        for (j, &e) in m.iter().enumerate() {
            for _ in 0..e {
                let a = poly.mul_z(j).scale(&Coeff::scaled(-4, 1, 1, 0));
                poly = a.add(&poly.d_z(j));
            }
        }
        for ((pm, _), pc) in poly.terms {
            out.add_term(pm, *w, pc);
        }
    }
    out
}

/// The value at x = 0 of a Schroedinger-picture form (phi_0(0) = 1).
pub fn value_at_origin(s: &FockForm) -> FockForm {
    let zero: Mono = vec![0; s.n()];
    let mut out = FockForm::zero(s.p, s.q);
    for ((m, w), c) in &s.terms {
        if *m == zero {
            out.add_term(m.clone(), *w, c.clone());
        }
    }
    out
}

/// (4 pi)^{-m/2} H_m(sqrt(2 pi) x_j) as a polynomial in x_j, with
/// H_m the physicists' Hermite polynomial.
pub fn hermite_factor(p: usize, q: usize, j: usize, m: usize) -> FockForm {
    // integer coefficients of H_m(t), by H_{k+1} = 2t H_k - 2k H_{k-1}
    let mut prev: Vec<i64> = vec![1];
    let mut cur: Vec<i64> = vec![0, 2];
    if m == 0 {
        cur = prev.clone();
    } else {
        for k in 1..m {
            let mut next = vec![0i64; k + 2];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += 2 * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= 2 * k as i64 * c;
            }
            prev = cur;
            cur = next;
        }
    }
    let mut out = FockForm::zero(p, q);
    for (i, &c) in cur.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // (4 pi)^{-m/2} (2 pi)^{i/2} = sqrt2^{i - 2m} pi^{(i - m)/2}, with i = m mod 2
        let mut mono = vec![0u16; p + q];
        mono[j - 1] = i as u16;
        let coeff = Coeff::scaled(c, 1, (i as i32 - m as i32) / 2, i as i32 - 2 * m as i32);
        out.add_term(mono, 0, coeff);
    }
    out
}

/// Result of an exact identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub p: usize,
    pub q: usize,
    pub pass: bool,
    pub diff_term_count: usize,
    pub diff: FockForm,
}

fn report(identity: &str, p: usize, q: usize, diff: FockForm) -> IdentityReport {
    IdentityReport { identity: identity.into(), p, q, pass: diff.is_zero(), diff_term_count: diff.len(), diff }
}

pub const IDENTITIES: [&str; 7] = ["closed", "kmpsi", "ddc", "dcpsi", "psiformel", "euler", "hermite"];

/// Checks one of the exact identities; the difference form is empty on success.
pub fn verify_identity(name: &str, p: usize, q: usize) -> Result<IdentityReport> {
    if p < 1 || q < 1 || p + q > 8 {
        return Err(Error::SignatureRange(p, q));
    }
    let diff = match name {
        "closed" => build_phi_km(p, q)?.d(),
        "kmpsi" => build_phi_km(p, q)?.lowering().sub(&build_psi(p, q)?.d()),
        "ddc" => {
            let lhs = build_phi_km(p, q)?.lowering();
            lhs.add(&build_phi0(p, q).ddc()?)
        }
        "dcpsi" => build_psi(p, q)?.add(&build_phi0(p, q).dc()?),
        "psiformel" => build_psi(p, q)?.sub(&build_psi_formula(p, q)?),
        "euler" => value_at_origin(&fock_to_schrodinger(&build_phi_km(p, q)?)).sub(&build_euler(p, q)?),
        "hermite" => {
            let s = fock_to_schrodinger(&build_phi_km(p, q)?);
            let mut expected = FockForm::zero(p, q);
            for t in tuples(p, q) {
                let gens: Vec<u32> = t.iter().enumerate().map(|(j, &a)| gen_index(p, q, a, p + 1 + j)).collect();
                let (w, neg) = wedge_word(&gens).expect("distinct generators");
                let mut poly = FockForm::constant(p, q, signed(&Coeff::one(), neg));
                for a in 1..=p {
                    let mult = t.iter().filter(|&&b| b == a).count();
                    poly = poly.wedge(&hermite_factor(p, q, a, mult));
                }
                for ((m, _), c) in poly.terms {
                    expected.add_term(m, w, c);
                }
            }
            s.sub(&expected)
        }
        _ => return Err(Error::Parse(format!("unknown identity {name}"))),
    };
    Ok(report(name, p, q, diff))
}
