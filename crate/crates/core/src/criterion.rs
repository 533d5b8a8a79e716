//! The zero-row criterion.
//!
//! For `a = lambda z^T prod (z - zeta^k q^d r_i)^s_{k,d,i}` let
//! `a_{i,k} = sum_d s_{k,d,i}` and `d_{k,i} = sum_j zeta^(k j) a_{i,j}`. A
//! certificate `phi(a) = sigma_q(b)/b` exists iff the `t x R` matrix `D` has a
//! zero row (case 1) or a zero row other than row 0 (case 2). Each column of
//! `D` is the discrete Fourier transform of one orbit's multiplicity profile,
//! which diagonalises the circulant built from that profile:
//! `E_+ A_i = D_i E_-`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::constgroup::Case;
use crate::exactalg::{CycNum, IntMatrix};
use crate::ratfun::FactoredRatFun;
use crate::witness::{self, ConstantPlan, Witness};
use crate::{Error, Result};

/// Per-orbit multiplicity profile `a[i][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSummary {
    pub t: u32,
    pub a: Vec<Vec<BigInt>>,
    /// Smallest `N` with every q-shift inside `[-N-1, N]`.
    pub n_window: i64,
}

impl ExponentSummary {
    pub fn from_rows(t: u32, a: Vec<Vec<BigInt>>) -> Self {
        assert!(a.iter().all(|r| r.len() == t as usize));
        ExponentSummary { t, a, n_window: 0 }
    }

    pub fn orbit_count(&self) -> usize {
        self.a.len()
    }

    /// Circulant `A_i` with rows `a_{i,k}, a_{i,k+1}, ...`.
    pub fn circulant(&self, i: usize) -> IntMatrix {
        IntMatrix::circulant(&self.a[i])
    }
}

pub fn exponent_summary(f: &FactoredRatFun) -> ExponentSummary {
    let t = f.domain().t();
    let r = f.domain().orbit_count();
    let mut a = vec![vec![BigInt::zero(); t as usize]; r];
    let mut n_window = 0i64;
    for (root, s) in f.factors() {
        a[root.orbit][root.zeta_exp as usize] += s;
        // d in [-N-1, N]
        n_window = n_window.max(root.q_exp).max(-root.q_exp - 1);
    }
    ExponentSummary { t, a, n_window }
}

/// `t x R` matrix of cyclotomic numbers, `entries[k][i] = d_{k,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    pub t: u32,
    pub entries: Vec<Vec<CycNum>>,
}

impl DMatrix {
    /// Rows whose entries all vanish; with no orbits every row qualifies.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.t as usize).filter(|&k| self.entries[k].iter().all(CycNum::is_zero)).collect()
    }
}

fn dft_entry(t: u32, k: usize, row: &[BigInt]) -> CycNum {
    let mut acc = CycNum::zero(t);
    for (j, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = CycNum::zeta_pow(t, (k * j) as i64).scale(&a.clone().into());
        acc = &acc + &term;
    }
    acc
}

pub fn build_d(s: &ExponentSummary) -> DMatrix {
    let entries = (0..s.t as usize).map(|k| s.a.iter().map(|row| dft_entry(s.t, k, row)).collect()).collect();
    DMatrix { t: s.t, entries }
}

fn vandermonde(t: u32, sign: i64) -> Vec<Vec<CycNum>> {
    (0..t as i64).map(|k| (0..t as i64).map(|j| CycNum::zeta_pow(t, sign * k * j)).collect()).collect()
}

/// Checks `E_+ A = D E_-` exactly for the circulant of one profile row.
pub fn dft_identity_row(t: u32, row: &[BigInt]) -> bool {
    let n = t as usize;
    assert_eq!(row.len(), n);
    let e_plus = vandermonde(t, 1);
    let e_minus = vandermonde(t, -1);
    let circ = IntMatrix::circulant(row);
    let diag: Vec<CycNum> = (0..n).map(|k| dft_entry(t, k, row)).collect();
    for k in 0..n {
        for j in 0..n {
            let mut lhs = CycNum::zero(t);
            for m in 0..n {
                let c = &circ[(m, j)];
                if !c.is_zero() {
                    lhs = &lhs + &e_plus[k][m].scale(&c.clone().into());
                }
            }
            let rhs = &diag[k] * &e_minus[k][j];
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn dft_identity_check(s: &ExponentSummary) -> bool {
    s.a.iter().all(|row| dft_identity_row(s.t, row))
}

/// Intermediate data behind a verdict.
#[derive(Clone, Debug)]
pub struct Trace {
    pub summary: ExponentSummary,
    pub d: DMatrix,
    pub kernel_basis: Vec<Vec<BigInt>>,
    pub n: Option<Vec<BigInt>>,
    pub scaled_n: Option<Vec<BigInt>>,
    pub plan: Option<ConstantPlan>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub dependent: bool,
    pub case: Case,
    pub zero_rows: Vec<usize>,
    pub witness: Option<Witness>,
    pub trace: Trace,
}

/// Runs the criterion and, for dependent inputs, synthesises and verifies a
/// certificate.
pub fn decide(f: &FactoredRatFun) -> Result<Verdict> {
    let t = f.domain().t();
    if t < 2 {
        return Err(Error::Invalid(format!("t must be at least 2, got {t}")));
    }
    let summary = exponent_summary(f);
    let d = build_d(&summary);
    let zero_rows = d.zero_rows();
    let case = f.domain().group().classify_lambda(f.constant(), f.z_power())?;
    let dependent = match case {
        Case::One(_) => !zero_rows.is_empty(),
        Case::Two => zero_rows.iter().any(|&k| k != 0),
    };
    let kernel_basis = witness::kernel_basis(&summary, &case);
    let n = witness::select_n(&kernel_basis);
    if n.is_some() != dependent {
        return Err(Error::Internal(format!(
            "zero-row test says dependent={dependent} but the kernel has dimension {}",
            kernel_basis.len()
        )));
    }
    let mut trace = Trace { summary, d, kernel_basis, n: n.clone(), scaled_n: None, plan: None };
    let witness = match n {
        Some(n) => {
            // the t-prescaled candidate always verifies; the unscaled one is
            // kept when the root-of-unity factor happens to vanish already
            let mut found = None;
            for prescale in [1, t] {
                let (scaled, plan) = witness::rescale_n(&n, &case, prescale);
                let b = witness::recover_l_m(f, &scaled, &plan)?;
                let w = Witness::new(scaled.clone(), b);
                if witness::verify(f, &w) {
                    trace.scaled_n = Some(scaled);
                    trace.plan = Some(plan);
                    found = Some(w);
                    break;
                }
            }
            match found {
                Some(w) => Some(w),
                None => return Err(Error::Internal("synthesised witness fails verification".into())),
            }
        }
        None => None,
    };
    Ok(Verdict { dependent, case, zero_rows, witness, trace })
}
