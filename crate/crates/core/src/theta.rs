//! Numeric checks with the theta function
//! `theta(z) = -sum_n (-1)^n q^{-n(n-1)/2} z^n`, which solves
//! `theta(qz) = -qz * theta(z)` and vanishes exactly on `q^Z`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ThetaParams {
    pub q: Complex64,
    pub truncation: usize,
    pub samples: Vec<Complex64>,
}

/// A truncated value together with the size of the first omitted terms.
#[derive(Clone, Copy, Debug)]
pub struct ThetaValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// The exponent vector `n` of `prod_r theta(zeta^r z)^{n_r}` tested by
/// [`relation_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `y * sigma_{zeta^2}(y) / sigma_zeta(y)^2`, needs `t >= 3`.
    Second,
    /// `(sigma_{zeta^u}(y) / sigma_{zeta^v}(y))^n`, needs `t | n(u - v)`.
    Shifted { u: u32, v: u32, n: i64 },
    /// `(y / sigma_zeta(y))^t`.
    Power,
}

impl ThetaParams {
    pub fn new(q: Complex64, truncation: usize, samples: Vec<Complex64>) -> Result<Self> {
        if q.norm() <= 1.0 {
            return Err(Error::Invalid(format!("|q| = {} must exceed 1 for the series to converge", q.norm())));
        }
        if truncation < 8 {
            return Err(Error::Invalid("truncation must be at least 8".into()));
        }
        if samples.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::Invalid("sample points must be nonzero".into()));
        }
        Ok(ThetaParams { q, truncation, samples })
    }

    /// `count` points in the annulus `0.5 <= |z| <= 2` such that no
    /// `zeta_t^r z` comes near a zero `q^k`.
    pub fn with_default_samples(q: Complex64, truncation: usize, count: usize, t: u32) -> Result<Self> {
        Self::new(q, truncation, default_samples(q, count, t))
    }
}

/// Deterministic low-discrepancy samples kept at relative distance 0.1 from
/// every `zeta^{-r} q^k`.
pub fn default_samples(q: Complex64, count: usize, t: u32) -> Vec<Complex64> {
    let t = t.max(1);
    let mut out = Vec::with_capacity(count);
    let mut j = 0u64;
    while out.len() < count {
        j += 1;
        let a = (0.5 + j as f64 * 0.618_033_988_749_895).fract();
        let b = (j as f64 * 0.754_877_666_246_693).fract();
        let z = Complex64::from_polar(0.5 * 4f64.powf(b), 2.0 * PI * a);
        let clear = (0..t).all(|r| {
            let w = z * Complex64::from_polar(1.0, 2.0 * PI * r as f64 / t as f64);
            (-4..=4).all(|k| {
                let zero = q.powi(k);
                (w - zero).norm() >= 0.1 * zero.norm()
            })
        });
        if clear {
            out.push(z);
        }
    }
    out
}

fn term(q: Complex64, z: Complex64, n: i64) -> Complex64 {
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let e = -(n * (n - 1) / 2);
    // q^e * z^n via logs keeps huge intermediate powers in range
    let log = q.ln() * e as f64 + z.ln() * n as f64;
    log.exp() * sign
}

pub fn theta_eval(p: &ThetaParams, z: Complex64) -> Result<ThetaValue> {
    if z.norm() == 0.0 {
        return Err(Error::Invalid("theta is evaluated away from 0".into()));
    }
    let n = p.truncation as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    // small terms first
    for k in (1..=n).rev() {
        sum += term(p.q, z, k) + term(p.q, z, -k);
    }
    sum += term(p.q, z, 0);
    let tail: f64 = (n + 1..=n + 3).map(|k| term(p.q, z, k).norm() + term(p.q, z, -k).norm()).sum();
    Ok(ThetaValue { value: -sum, error_estimate: tail })
}

fn theta(p: &ThetaParams, z: Complex64) -> Complex64 {
    theta_eval(p, z).map(|v| v.value).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `max |theta(qz) + qz theta(z)|` over the samples.
pub fn functional_eq_residual(p: &ThetaParams) -> f64 {
    p.samples
        .par_iter()
        .map(|&z| (theta(p, p.q * z) + p.q * z * theta(p, z)).norm())
        .reduce(|| 0.0, f64::max)
}

/// `max |theta(q^2 z) - q^3 z^2 theta(z)|`, the functional equation applied
/// twice.
pub fn iterated_functional_eq_residual(p: &ThetaParams) -> f64 {
    p.samples
        .par_iter()
        .map(|&z| {
            let q = p.q;
            (theta(p, q * q * z) - (-q * z) * (-q * q * z) * theta(p, z)).norm()
        })
        .reduce(|| 0.0, f64::max)
}

/// `max |L(qz)/L(z) - 1|` for `L(z) = prod_r theta(zeta^r z)^{n_r}`,
/// `zeta = exp(2 pi i / t)`.
pub fn phi_invariance_residual(p: &ThetaParams, n: &[i64]) -> f64 {
    let t = n.len();
    let expr = |z: Complex64| -> Complex64 {
        n.iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(r, &e)| {
                let zeta_r = Complex64::from_polar(1.0, 2.0 * PI * r as f64 / t as f64);
                theta(p, zeta_r * z).powi(e as i32)
            })
            .product()
    };
    p.samples
        .par_iter()
        .map(|&z| (expr(p.q * z) / expr(z) - 1.0).norm())
        .reduce(|| 0.0, f64::max)
}

/// Exponent vector of a relation family.
pub fn relation_exponents(kind: RelationKind, t: u32) -> Result<Vec<i64>> {
    if t < 2 {
        return Err(Error::Invalid("t must be at least 2".into()));
    }
    let mut n = vec![0i64; t as usize];
    match kind {
        RelationKind::Second => {
            if t < 3 {
                return Err(Error::Invalid("this relation needs t >= 3".into()));
            }
            n[0] = 1;
            n[1] = -2;
            n[2] = 1;
        }
        RelationKind::Shifted { u, v, n: power } => {
            if u >= t || v >= t || u == v || power < 1 {
                return Err(Error::Invalid("need distinct u, v in [0, t) and n >= 1".into()));
            }
            if (power * (u as i64 - v as i64)).rem_euclid(t as i64) != 0 {
                return Err(Error::Invalid(format!("t = {t} must divide n(u - v) = {}", power * (u as i64 - v as i64))));
            }
            n[u as usize] += power;
            n[v as usize] -= power;
        }
        RelationKind::Power => {
            n[0] = t as i64;
            n[1] = -(t as i64);
        }
    }
    Ok(n)
}

/// Perturbed exponents that must not give an invariant: the power `t - 1`
/// for [`RelationKind::Power`], `n - 1` for [`RelationKind::Shifted`], and a
/// nonzero exponent sum for [`RelationKind::Second`].
pub fn control_exponents(kind: RelationKind, t: u32) -> Result<Vec<i64>> {
    let mut n = relation_exponents(kind, t)?;
    match kind {
        RelationKind::Power => {
            n[0] -= 1;
            n[1] += 1;
        }
        RelationKind::Shifted { u, v, .. } => {
            n[u as usize] -= 1;
            n[v as usize] += 1;
        }
        RelationKind::Second => n[1] += 1,
    }
    Ok(n)
}

pub fn relation_check(kind: RelationKind, t: u32, p: &ThetaParams) -> Result<f64> {
    Ok(phi_invariance_residual(p, &relation_exponents(kind, t)?))
}
