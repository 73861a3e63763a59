//! JSON file formats. Rationals are strings "a/b"; complex numbers are
//! {"re", "im"} objects or [re, im] pairs where noted.

use crate::error::{Error, Result};
use crate::fock::IdentityReport;
use crate::fqm::{parse_rat, rat_string, DiscriminantForm, Lattice, WeilRep};
use crate::qseries::{Coef, FormClass, VVSeries, WeakMaassForm};
use crate::theta::GrassmannPoint;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn rat(s: &str) -> Result<Rational64> {
    parse_rat(s).ok_or_else(|| Error::Parse(format!("not a rational: {s}")))
}

fn big_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("not a rational: {s}")))?;
    let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("not a rational: {s}")))?;
    if b == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s}")));
    }
    Ok(BigRational::new(a, b))
}

fn big_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LatticeJson {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn lattice_to_json(l: &Lattice) -> LatticeJson {
    LatticeJson { gram: l.gram.clone(), name: l.name.clone() }
}

pub fn lattice_from_json(j: &LatticeJson) -> Result<Lattice> {
    let l = Lattice::new(j.gram.clone())?;
    Ok(match &j.name {
        Some(n) => l.named(n),
        None => l,
    })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QEntry {
    pub h: Vec<u64>,
    pub q: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DiscReport {
    pub invariants: Vec<u64>,
    pub order: u64,
    pub level: u64,
    pub q_table: Vec<QEntry>,
}

pub fn disc_report(d: &DiscriminantForm) -> DiscReport {
    DiscReport {
        invariants: d.invariants.clone(),
        order: d.order,
        level: d.level,
        q_table: d.elements.iter().zip(&d.qvals).map(|(h, q)| QEntry { h: h.clone(), q: rat_string(*q) }).collect(),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RepJson {
    pub gram: Vec<Vec<i64>>,
    pub dual: bool,
    /// Signature (p, q); defaults to that of the Gram matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CoefJson {
    pub h: Vec<u64>,
    pub n: String,
    pub re: f64,
    pub im: f64,
    /// Exact real and imaginary parts, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<[String; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FormJson {
    pub weight: String,
    pub rep: RepJson,
    pub plus: Vec<CoefJson>,
    #[serde(default)]
    pub minus: Vec<CoefJson>,
    pub class: String,
    pub prec: String,
}

pub fn rep_to_json(r: &WeilRep) -> RepJson {
    RepJson { gram: r.disc.gram.clone(), dual: r.dual, signature: Some([r.p, r.q]) }
}

pub fn rep_from_json(j: &RepJson) -> Result<WeilRep> {
    let l = Lattice::new(j.gram.clone())?;
    let mut r = WeilRep::new(&l, j.dual)?;
    if let Some([p, q]) = j.signature {
        if (p as i64 - q as i64 - l.p as i64 + l.q as i64).rem_euclid(8) != 0 {
            return Err(Error::Parse(format!("signature ({p},{q}) is incompatible with the Gram matrix")));
        }
        r.p = p;
        r.q = q;
    }
    Ok(r)
}

fn coefs_to_json(rep: &WeilRep, m: &BTreeMap<(usize, Rational64), Coef>) -> Vec<CoefJson> {
    m.iter()
        .map(|(&(h, n), c)| {
            let v = c.to_c64();
            let exact = match c {
                Coef::Exact(a, b) => Some([big_string(a), big_string(b)]),
                Coef::Float(_) => None,
            };
            CoefJson { h: rep.disc.elements[h].clone(), n: rat_string(n), re: v.re, im: v.im, exact }
        })
        .collect()
}

fn coefs_from_json(rep: &WeilRep, v: &[CoefJson]) -> Result<BTreeMap<(usize, Rational64), Coef>> {
    let mut out = BTreeMap::new();
    for e in v {
        let h = rep
            .disc
            .elements
            .iter()
            .position(|x| *x == e.h)
            .ok_or_else(|| Error::Parse(format!("unknown group element {:?}", e.h)))?;
        let c = match &e.exact {
            Some([a, b]) => Coef::Exact(big_rat(a)?, big_rat(b)?),
            None => Coef::Float(Complex64::new(e.re, e.im)),
        };
        out.insert((h, rat(&e.n)?), c);
    }
    Ok(out)
}

pub fn form_to_json(f: &WeakMaassForm) -> FormJson {
    FormJson {
        weight: rat_string(f.weight),
        rep: rep_to_json(&f.rep),
        plus: coefs_to_json(&f.rep, &f.plus),
        minus: coefs_to_json(&f.rep, &f.minus),
        class: f.class.as_str().into(),
        prec: rat_string(f.prec),
    }
}

pub fn form_from_json(j: &FormJson) -> Result<WeakMaassForm> {
    let rep = rep_from_json(&j.rep)?;
    let f = WeakMaassForm {
        weight: rat(&j.weight)?,
        plus: coefs_from_json(&rep, &j.plus)?,
        minus: coefs_from_json(&rep, &j.minus)?,
        rep,
        class: FormClass::parse(&j.class)?,
        prec: rat(&j.prec)?,
    };
    f.validate()?;
    Ok(f)
}

/// A holomorphic series in the Form JSON layout (class weakly_holomorphic, no minus part).
pub fn series_to_json(s: &VVSeries) -> FormJson {
    form_to_json(&WeakMaassForm::weakly_holomorphic(s.clone()))
}

pub fn series_from_json(j: &FormJson) -> Result<VVSeries> {
    let f = form_from_json(j)?;
    if f.minus.values().any(|c| !c.is_zero()) {
        return Err(Error::Parse("expected a holomorphic series".into()));
    }
    Ok(f.plus_series())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FockReportJson {
    pub identity: String,
    pub sig: [usize; 2],
    pub pass: bool,
    pub diff_term_count: usize,
}

pub fn fock_report(r: &IdentityReport) -> FockReportJson {
    FockReportJson { identity: r.identity.clone(), sig: [r.p, r.q], pass: r.pass, diff_term_count: r.diff_term_count }
}

/// A point of the Grassmannian: a group element, an explicit frame, or (z1, z2)
/// for U+U; optional flows exp(t X_{alpha mu}) are applied afterwards.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PointJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<[[f64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flows: Vec<(usize, usize, f64)>,
}

fn matrix(rows: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("expected a {n}x{n} matrix")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn point_from_json(l: &Lattice, j: &PointJson) -> Result<GrassmannPoint> {
    let n = l.rank();
    let mut z = match (&j.g, &j.frame, &j.h2) {
        (Some(g), None, None) => GrassmannPoint::from_group(l, &matrix(g, n)?)?,
        (None, Some(f), None) => GrassmannPoint::from_frame(l, matrix(f, n)?)?,
        (None, None, Some([a, b])) => {
            if l.gram != Lattice::u_plus_u().gram {
                return Err(Error::Parse("h2 points need the lattice U+U".into()));
            }
            GrassmannPoint::from_h2(Complex64::new(a[0], a[1]), Complex64::new(b[0], b[1]))?
        }
        (None, None, None) => GrassmannPoint::base(l),
        _ => return Err(Error::Parse("give at most one of g, frame, h2".into())),
    };
    for &(a, mu, t) in &j.flows {
        if a < 1 || a > l.p || mu <= l.p || mu > n {
            return Err(Error::Parse(format!("flow ({a}, {mu}) outside 1..p x p+1..p+q")));
        }
        z = z.flow(a, mu, t);
    }
    Ok(z)
}

pub fn point_to_json(z: &GrassmannPoint) -> PointJson {
    let n = z.n();
    let frame = (0..n).map(|i| (0..n).map(|j| z.frame[(i, j)]).collect()).collect();
    PointJson { g: None, frame: Some(frame), h2: None, flows: Vec::new() }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_err)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
