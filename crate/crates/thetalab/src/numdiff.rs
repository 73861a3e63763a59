//! Central differences with Richardson extrapolation.

use crate::error::Result;
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// d/dx f at x from central differences at h, h/2, ..., h/2^(levels-1),
/// extrapolated to order h^(2 levels).
pub fn derivative<T, F>(f: F, x: f64, h: f64, levels: usize) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let levels = levels.max(1);
    let mut prev: Vec<T> = Vec::new();
    for i in 0..levels {
        let hi = h / f64::powi(2.0, i as i32);
        let mut row = vec![(f(x + hi) - f(x - hi)) * (0.5 / hi)];
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) * (1.0 / (fac - 1.0));
            row.push(r);
        }
        prev = row;
    }
    prev[levels - 1]
}

/// Componentwise Richardson-extrapolated central difference of a fallible vector-valued map.
pub fn derivative_vec<F>(f: F, x: f64, h: f64, levels: usize) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Result<Vec<Complex64>>,
{
    let levels = levels.max(1);
    let mut prev: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..levels {
        let hi = h / f64::powi(2.0, i as i32);
        let (a, b) = (f(x + hi)?, f(x - hi)?);
        let mut row = vec![a.iter().zip(&b).map(|(a, b)| (a - b) * (0.5 / hi)).collect::<Vec<_>>()];
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            let r = row[j - 1].iter().zip(&prev[j - 1]).map(|(c, p)| c + (c - p) / (fac - 1.0)).collect();
            row.push(r);
        }
        prev = row;
    }
    Ok(prev.swap_remove(levels - 1))
}

/// d^2/ds dt f at (0, 0) from the four-point stencil, Richardson-extrapolated.
pub fn mixed_derivative<F>(f: F, h: f64, levels: usize) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let levels = levels.max(1);
    let mut prev: Vec<Complex64> = Vec::new();
    for i in 0..levels {
        let hi = h / f64::powi(2.0, i as i32);
        let d = (f(hi, hi)? - f(hi, -hi)? - f(-hi, hi)? + f(-hi, -hi)?) / (4.0 * hi * hi);
        let mut row = vec![d];
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            row.push(row[j - 1] + (row[j - 1] - prev[j - 1]) / (fac - 1.0));
        }
        prev = row;
    }
    Ok(prev[levels - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_derivative() {
        let d: f64 = derivative(f64::exp, 0.3, 0.1, 4);
        assert!((d - 0.3f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn mixed_partial_of_product() {
        let d = mixed_derivative(|s, t| Ok(Complex64::new((0.2 + s).sin() * (0.5 + t).exp(), 0.0)), 0.1, 3).unwrap();
        assert!((d.re - 0.2f64.cos() * 0.5f64.exp()).abs() < 1e-10);
    }
}
