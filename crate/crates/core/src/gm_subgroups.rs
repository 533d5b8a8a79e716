//! Difference-algebraic subgroups of the multiplicative group over the
//! product ring `C = K^t` on which `rho` cycles the idempotents,
//! `rho(e_i) = e_{i+1}`.
//!
//! An equation `e_i * prod_j rho^j(x)^{k_j} = e_i` only constrains coordinate
//! `i` of `x`; there it reads `prod_j x_{i-j}^{k_j} = 1`. Solution sets are
//! therefore subgroups of the torus `(K^*)^t` cut out by integer rows, and
//! their structure comes from the Smith form of those rows.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// Finite groups larger than this are reported without an element list.
pub const ELEMENT_LIMIT: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    /// `e_i * psi(x) = e_i`
    Idempotent,
    /// `e_i * psi(x) = 1`, only consistent when `e_i = 1`
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub idempotent: usize,
    /// `exponents[j]` is the power of `rho^j(x)`.
    pub exponents: Vec<BigInt>,
    pub rhs: Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSystem {
    t: usize,
    equations: Vec<Equation>,
}

/// Where the identity equations go when a system is padded to `t` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    Head,
    Tail,
}

/// `phi(x) = sum_p e_p * prod_j rho^j(x)^{k_{p,j}}`. A missing component
/// means `phi` vanishes on that idempotent, so `phi(x) = 1` has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFunction {
    pub t: usize,
    pub components: Vec<Option<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Present when the group is finite and small enough to list.
    pub elements: Option<Vec<RootTuple>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Group(GroupStructure),
    EmptySolutionSet,
}

/// A point of the torus whose coordinates are roots of unity, stored as
/// fractions of a full turn in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootTuple(pub Vec<BigRational>);

impl RootTuple {
    pub fn coordinate_string(turn: &BigRational) -> String {
        if turn.is_zero() {
            "1".into()
        } else if turn == &BigRational::new(1.into(), 2.into()) {
            "-1".into()
        } else {
            format!("e({turn})")
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Self::coordinate_string).collect()
    }
}

impl fmt::Display for RootTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl GroupStructure {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl MonomialSystem {
    pub fn new(t: usize, equations: Vec<Equation>) -> Result<Self> {
        if t == 0 {
            return Err(Error::Invalid("t must be positive".into()));
        }
        for eq in &equations {
            if eq.idempotent >= t {
                return Err(Error::Invalid(format!("idempotent index {} out of range", eq.idempotent)));
            }
            if eq.exponents.len() != t {
                return Err(Error::Invalid(format!("exponent vector has length {}, expected {t}", eq.exponents.len())));
            }
        }
        Ok(MonomialSystem { t, equations })
    }

    /// The same monomial equation imposed on every idempotent, i.e. as an
    /// equation in `C`.
    pub fn on_every_idempotent(t: usize, exponents: Vec<BigInt>) -> Result<Self> {
        let eqs = (0..t).map(|i| Equation { idempotent: i, exponents: exponents.clone(), rhs: Rhs::Idempotent }).collect();
        Self::new(t, eqs)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Coordinate rows of the system on the torus.
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.equations.iter().map(|e| coordinate_row(self.t, e.idempotent, &e.exponents)).collect();
        IntMatrix::from_rows(self.t, &rows)
    }
}

/// Row of exponents on `(x_0, ..., x_{t-1})` for `e_i * prod rho^j(x)^{k_j}`.
pub fn coordinate_row(t: usize, i: usize, k: &[BigInt]) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); t];
    for (j, kj) in k.iter().enumerate() {
        row[(i + t - j % t) % t] += kj;
    }
    row
}

/// Exponent vector seen from `e_0`: apply `rho^{-i}` to an equation on `e_i`.
fn to_e0(t: usize, i: usize, k: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t];
    for (j, kj) in k.iter().enumerate() {
        out[(j + t - i) % t] += kj;
    }
    out
}

/// Apply `rho^p` to an equation on `e_0`.
fn shift(t: usize, p: usize, k: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t];
    for (j, kj) in k.iter().enumerate() {
        out[(j + p) % t] = kj.clone();
    }
    out
}

/// Collapses a system to a single equation `phi(x) = 1`: move every
/// equation to `e_0`, pad with identities to `t` rows, push row `p` to
/// `e_p` and add up.
pub fn reduce_to_phi(sys: &MonomialSystem) -> Result<PhiFunction> {
    reduce_to_phi_with(sys, Padding::Tail)
}

pub fn reduce_to_phi_with(sys: &MonomialSystem, padding: Padding) -> Result<PhiFunction> {
    let t = sys.t;
    if t > 1 {
        if let Some(eq) = sys.equations.iter().find(|e| e.rhs == Rhs::One) {
            // e_i * psi = 1 forces 1 - e_i = 0: phi is the idempotent 1 - e_i
            let mut components = vec![Some(vec![BigInt::zero(); t]); t];
            components[eq.idempotent] = None;
            return Ok(PhiFunction { t, components });
        }
    }
    let mut rows: Vec<Vec<BigInt>> = sys.equations.iter().map(|e| to_e0(t, e.idempotent, &e.exponents)).collect();
    if rows.len() > t {
        return Err(Error::Unsupported(format!(
            "{} equations on a single idempotent exceed the bound t = {t}",
            rows.len()
        )));
    }
    let pad = vec![vec![BigInt::zero(); t]; t - rows.len()];
    match padding {
        Padding::Tail => rows.extend(pad),
        Padding::Head => {
            let mut head = pad;
            head.extend(rows);
            rows = head;
        }
    }
    let components = rows.iter().enumerate().map(|(p, r)| Some(shift(t, p, r))).collect();
    Ok(PhiFunction { t, components })
}

impl PhiFunction {
    /// `phi = x^{n_0} rho(x)^{n_1} ...` on every idempotent.
    pub fn uniform(n: &[BigInt]) -> Self {
        PhiFunction { t: n.len(), components: vec![Some(n.to_vec()); n.len()] }
    }

    pub fn is_unit(&self) -> bool {
        self.components.iter().all(Option::is_some)
    }

    /// Coordinate rows, one per idempotent; `None` when `phi` is not a unit.
    pub fn matrix(&self) -> Option<IntMatrix> {
        let rows: Option<Vec<Vec<BigInt>>> =
            self.components.iter().enumerate().map(|(p, k)| k.as_ref().map(|k| coordinate_row(self.t, p, k))).collect();
        rows.map(|r| IntMatrix::from_rows(self.t, &r))
    }

    pub fn subgroup(&self) -> Subgroup {
        match self.matrix() {
            Some(m) => Subgroup::Group(group_structure(&m, self.t)),
            None => Subgroup::EmptySolutionSet,
        }
    }
}

/// Solution group of a system, via [`reduce_to_phi`].
pub fn solve(sys: &MonomialSystem) -> Result<Subgroup> {
    Ok(reduce_to_phi(sys)?.subgroup())
}

/// Structure of `{x in (K^*)^t : x^row = 1 for every row}`.
pub fn group_structure(m: &IntMatrix, t: usize) -> GroupStructure {
    assert_eq!(m.cols(), t, "matrix width must equal the torus dimension");
    if m.rows() == 0 {
        return GroupStructure { free_rank: t, torsion: vec![], elements: None };
    }
    let snf = smith_normal_form(m);
    let diag: Vec<BigInt> = snf.diagonal().into_iter().map(|d| d.abs()).collect();
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let rank = nonzero.len();
    let torsion: Vec<BigInt> = nonzero.iter().filter(|d| !d.is_one()).cloned().collect();
    let free_rank = t - rank;
    let order: BigInt = torsion.iter().product();
    let elements = (free_rank == 0 && order <= BigInt::from(ELEMENT_LIMIT)).then(|| {
        // x = exp(2 pi i V phi) with phi_k in (1/s_k) Z
        let count = order.to_u64().unwrap_or(0);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut rest = idx;
            let mut phi = Vec::with_capacity(t);
            for d in &diag[..t] {
                let s = d.to_u64().unwrap_or(1);
                phi.push(BigRational::new(BigInt::from(rest % s), d.clone()));
                rest /= s;
            }
            let theta: Vec<BigRational> = (0..t)
                .map(|i| {
                    let mut acc = BigRational::zero();
                    for (k, p) in phi.iter().enumerate() {
                        acc += p * BigRational::from_integer(snf.v[(i, k)].clone());
                    }
                    acc.clone() - acc.floor()
                })
                .collect();
            out.push(RootTuple(theta));
        }
        out.sort();
        out
    });
    GroupStructure { free_rank, torsion, elements }
}

/// Exact membership: every row pairs with the turn vector to an integer.
pub fn satisfies(m: &IntMatrix, x: &RootTuple) -> bool {
    (0..m.rows()).all(|r| {
        let s: BigRational = m.row(r).iter().zip(&x.0).map(|(a, b)| b * BigRational::from_integer(a.clone())).sum();
        s.is_integer()
    })
}
