//! Certificates `(phi, b)` with `phi(a) = sigma_q(b)/b`.
//!
//! Synthesis follows the linear system on the unknowns `n_r`, `l_{k,d,i}`
//! and `M`: the exponent equations telescope in `d`, so they are solvable
//! iff `n` lies in the kernel of every circulant `A_i`; the `l` values are
//! then prefix sums, and `M` is fixed by matching constants. The brute-force
//! oracle at the bottom searches exponent vectors directly and shares none of
//! the kernel machinery.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constgroup::{Case, Case1Relation};
use crate::criterion::ExponentSummary;
use crate::exactalg::{integer_kernel, IntMatrix};
use crate::ratfun::{FactoredRatFun, MultFunction, RootRef};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub phi: MultFunction,
    pub b: FactoredRatFun,
}

impl Witness {
    pub fn new(n: Vec<BigInt>, b: FactoredRatFun) -> Self {
        Witness { phi: MultFunction::new(n), b }
    }
}

/// How the z-power `M` of `b` is completed once `n` and `l` are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantPlan {
    /// `lambda^u = q^v`: `M = v * (sum n) / u - sum l`.
    QPower { u: BigInt, v: BigInt },
    /// `lambda^w = 1`: `M = -sum l`.
    Torsion { w: BigInt },
    /// `sum n = 0`: `M = -sum l`.
    ZeroSum,
}

/// Kernel basis of the stacked circulants (plus the all-ones row in case 2).
pub fn kernel_basis(s: &ExponentSummary, case: &Case) -> Vec<Vec<BigInt>> {
    let t = s.t as usize;
    let mut m = IntMatrix::zeros(0, t);
    for i in 0..s.orbit_count() {
        m = m.vstack(&s.circulant(i));
    }
    if matches!(case, Case::Two) {
        m = m.vstack(&IntMatrix::from_rows(t, &[vec![1i64; t]]));
    }
    integer_kernel(&m)
}

/// Deterministic pick from a kernel basis: smallest max-norm, then smallest
/// last support index, then lexicographic.
pub fn select_n(basis: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    basis
        .iter()
        .min_by(|x, y| {
            let key = |v: &Vec<BigInt>| {
                let norm = v.iter().map(|a| a.abs()).max().unwrap_or_default();
                let last = v.iter().rposition(|a| !a.is_zero()).unwrap_or(0);
                (norm, last)
            };
            key(x).cmp(&key(y)).then_with(|| x.cmp(y))
        })
        .cloned()
}

pub fn solve_n(s: &ExponentSummary, case: &Case) -> Option<Vec<BigInt>> {
    select_n(&kernel_basis(s, case))
}

/// Scales `n` by `prescale * c` (with `c` the case multiplier `u`, `w` or 1)
/// and returns the matching completion plan. With `prescale = t` the
/// root-of-unity part of `phi(a)` always vanishes.
pub fn rescale_n(n: &[BigInt], case: &Case, prescale: u32) -> (Vec<BigInt>, ConstantPlan) {
    let (c, plan) = match case {
        Case::One(Case1Relation::QPower { u, v }) => (u.clone(), ConstantPlan::QPower { u: u.clone(), v: v.clone() }),
        Case::One(Case1Relation::Torsion { w }) => (w.clone(), ConstantPlan::Torsion { w: w.clone() }),
        Case::Two => (BigInt::one(), ConstantPlan::ZeroSum),
    };
    let factor = c * BigInt::from(prescale);
    (n.iter().map(|x| x * &factor).collect(), plan)
}

/// Builds `b = z^M prod (z - zeta^k q^d r_i)^l_{k,d,i}` from a kernel vector.
pub fn recover_l_m(a: &FactoredRatFun, n: &[BigInt], plan: &ConstantPlan) -> Result<FactoredRatFun> {
    let domain = a.domain();
    let t = domain.t();
    if n.len() != t as usize {
        return Err(Error::Invalid(format!("exponent vector has length {}, expected {t}", n.len())));
    }
    let mut l = BTreeMap::new();
    for orbit in 0..domain.orbit_count() {
        let Some((lo, hi)) = a.window(orbit) else {
            continue;
        };
        for k in 0..t {
            // l_{k,d+1} - l_{k,d} = c_d, with l vanishing below the window
            let mut running = BigInt::zero();
            for d in lo..=hi {
                let mut c = BigInt::zero();
                for (r, nr) in n.iter().enumerate() {
                    if nr.is_zero() {
                        continue;
                    }
                    let src = RootRef { orbit, zeta_exp: (k + r as u32) % t, q_exp: d };
                    c += a.exponent(&src) * nr;
                }
                running += c;
                if d < hi && !running.is_zero() {
                    l.insert(RootRef { orbit, zeta_exp: k, q_exp: d + 1 }, running.clone());
                }
            }
            if !running.is_zero() {
                return Err(Error::Internal(format!(
                    "telescoping sum for orbit {orbit}, twist {k} is {running}; n is not in the kernel"
                )));
            }
        }
    }
    let sum_l: BigInt = l.values().sum();
    let m = match plan {
        ConstantPlan::QPower { u, v } => {
            let sum_n: BigInt = n.iter().sum();
            let (q, rem) = (v * sum_n).div_rem(u);
            if !rem.is_zero() {
                return Err(Error::Internal("q-power completion is not integral".into()));
            }
            q - sum_l
        }
        ConstantPlan::Torsion { .. } | ConstantPlan::ZeroSum => -sum_l,
    };
    FactoredRatFun::new(domain, domain.group().one(), m, l)
}

/// Exact check of `phi(a) = sigma_q(b)/b` with `phi` nontrivial.
pub fn verify(a: &FactoredRatFun, w: &Witness) -> bool {
    if w.phi.is_trivial() || w.phi.len() != a.domain().t() as usize {
        return false;
    }
    if a.domain() != w.b.domain() {
        return false;
    }
    match w.phi.apply(a) {
        Ok(lhs) => lhs == w.b.sigma_q_ratio(),
        Err(_) => false,
    }
}

// ---- brute-force oracle ----

// Dense i64 copy of the exponents of `a` for the cheap telescoping filter.
struct Profile {
    t: usize,
    // per orbit: (lo, width, s[k * width + (d - lo)])
    orbits: Vec<(i64, usize, Vec<i64>)>,
}

impl Profile {
    fn new(a: &FactoredRatFun) -> Option<Profile> {
        let t = a.domain().t() as usize;
        let mut orbits = Vec::new();
        for orbit in 0..a.domain().orbit_count() {
            let Some((lo, hi)) = a.window(orbit) else {
                continue;
            };
            let width = (hi - lo + 1) as usize;
            let mut s = vec![0i64; t * width];
            for (r, e) in a.factors().iter().filter(|(r, _)| r.orbit == orbit) {
                s[r.zeta_exp as usize * width + (r.q_exp - lo) as usize] = e.to_i64()?;
            }
            orbits.push((lo, width, s));
        }
        Some(Profile { t, orbits })
    }

    // Whether every twist of every orbit telescopes to zero under `n`.
    fn telescopes(&self, n: &[i64]) -> bool {
        let t = self.t;
        self.orbits.iter().all(|(_, width, s)| {
            (0..t).all(|k| {
                let mut total = 0i64;
                for (r, &nr) in n.iter().enumerate() {
                    if nr == 0 {
                        continue;
                    }
                    let row = &s[((k + r) % t) * width..((k + r) % t + 1) * width];
                    total += nr * row.iter().sum::<i64>();
                }
                total == 0
            })
        })
    }
}

/// Tries to complete `n` to a certificate without using the criterion:
/// apply `phi`, telescope the result in `d`, then solve for `M`.
fn complete(a: &FactoredRatFun, n: &[BigInt]) -> Option<Witness> {
    let phi = MultFunction::new(n.to_vec());
    let image = phi.apply(a).ok()?;
    if !image.z_power().is_zero() {
        return None;
    }
    let g = a.domain().group();
    let mut l = BTreeMap::new();
    let mut keys: Vec<(usize, u32)> = image.factors().keys().map(|r| (r.orbit, r.zeta_exp)).collect();
    keys.dedup();
    for (orbit, k) in keys {
        let col: Vec<(i64, BigInt)> = image
            .factors()
            .iter()
            .filter(|(r, _)| r.orbit == orbit && r.zeta_exp == k)
            .map(|(r, e)| (r.q_exp, e.clone()))
            .collect();
        let lo = col.first()?.0;
        let hi = col.last()?.0;
        let mut running = BigInt::zero();
        for d in lo..=hi {
            if let Some((_, e)) = col.iter().find(|(dd, _)| *dd == d) {
                running += e;
            }
            if d < hi && !running.is_zero() {
                l.insert(RootRef { orbit, zeta_exp: k, q_exp: d + 1 }, running.clone());
            }
        }
        if !running.is_zero() {
            return None;
        }
    }
    let sum_l: BigInt = l.values().sum();
    // constant of phi(a) must equal q^(M + sum l)
    let total = g.q_log(image.constant())?;
    let b = FactoredRatFun::new(a.domain(), g.one(), total - sum_l, l).ok()?;
    let w = Witness { phi, b };
    verify(a, &w).then_some(w)
}

/// Exhaustive search over `n` with `max |n_r| <= bound`, ordered by max-norm
/// and then lexicographically descending. Returns the first verified
/// certificate.
pub fn brute_force_oracle(a: &FactoredRatFun, bound: u32) -> Option<Witness> {
    let t = a.domain().t() as usize;
    let profile = Profile::new(a)?;
    let t_exp = a.z_power();
    let b = bound as i64;
    for norm in 1..=b {
        let mut n = vec![norm; t];
        loop {
            if n.iter().any(|x| x.abs() == norm)
                && (t_exp.is_zero() || n.iter().sum::<i64>() == 0)
                && profile.telescopes(&n)
            {
                let big: Vec<BigInt> = n.iter().map(|&x| x.into()).collect();
                if let Some(w) = complete(a, &big) {
                    return Some(w);
                }
            }
            // odometer, descending
            let mut pos = t;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if n[pos] > -norm {
                    n[pos] -= 1;
                    for x in n.iter_mut().skip(pos + 1) {
                        *x = norm;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    None
}
