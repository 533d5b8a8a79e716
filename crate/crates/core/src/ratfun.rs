//! Rational functions in the factored form
//! `lambda * z^T * prod (z - zeta^k q^d r_i)^s`, and the actions on them.
//!
//! Base roots `r_i` are opaque symbols, assumed pairwise distinct modulo the
//! group generated by `zeta` and `q`. Under that contract two factored forms
//! are equal as rational functions iff their constants agree in the
//! [`ConstGroup`] and their z-powers and factor maps coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constgroup::{ConstElem, ConstGroup};
use crate::{Error, Result};

/// The constants and base roots that factored forms are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    group: ConstGroup,
    bases: Vec<String>,
}

impl Domain {
    pub fn new(group: ConstGroup, bases: Vec<String>) -> Result<Arc<Domain>> {
        for (i, b) in bases.iter().enumerate() {
            if b.is_empty() || bases[..i].contains(b) {
                return Err(Error::Invalid(format!("duplicate or empty base root name `{b}`")));
            }
        }
        Ok(Arc::new(Domain { group, bases }))
    }

    pub fn group(&self) -> &ConstGroup {
        &self.group
    }

    pub fn bases(&self) -> &[String] {
        &self.bases
    }

    pub fn orbit_count(&self) -> usize {
        self.bases.len()
    }

    /// Order `t` of zeta.
    pub fn t(&self) -> u32 {
        self.group.zeta_order()
    }
}

/// The root `zeta^zeta_exp * q^q_exp * r_orbit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootRef {
    pub orbit: usize,
    pub zeta_exp: u32,
    pub q_exp: i64,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FactoredRatFun {
    domain: Arc<Domain>,
    constant: ConstElem,
    z_power: BigInt,
    factors: BTreeMap<RootRef, BigInt>,
}

/// `phi(x) = x^n_0 * sigma_zeta(x)^n_1 * ... * sigma_zeta^(t-1)(x)^n_(t-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultFunction {
    pub n: Vec<BigInt>,
}

impl MultFunction {
    pub fn new(n: Vec<BigInt>) -> Self {
        MultFunction { n }
    }

    pub fn from_i64(n: &[i64]) -> Self {
        MultFunction { n: n.iter().map(|&x| x.into()).collect() }
    }

    pub fn identity(t: usize) -> Self {
        let mut n = vec![BigInt::zero(); t];
        n[0] = BigInt::one();
        MultFunction { n }
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// True for the constant function 1 (all exponents zero).
    pub fn is_trivial(&self) -> bool {
        self.n.iter().all(Zero::is_zero)
    }

    pub fn exponent_sum(&self) -> BigInt {
        self.n.iter().sum()
    }

    /// `phi(f)` for a factored `f`: the product of `sigma_zeta^r(f)^n_r`.
    pub fn apply(&self, f: &FactoredRatFun) -> Result<FactoredRatFun> {
        if self.n.len() != f.domain.t() as usize {
            return Err(Error::Invalid(format!(
                "multiplicative function has {} exponents but t = {}",
                self.n.len(),
                f.domain.t()
            )));
        }
        let mut acc = FactoredRatFun::one(&f.domain);
        let mut shifted = f.clone();
        for (r, nr) in self.n.iter().enumerate() {
            if r > 0 {
                shifted = shifted.sigma_zeta(1);
            }
            if !nr.is_zero() {
                acc = acc.combine(&shifted, &BigInt::one(), nr)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for MultFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .n
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(r, e)| {
                let base = match r {
                    0 => "x".to_string(),
                    1 => "sigma_zeta(x)".to_string(),
                    _ => format!("sigma_zeta^{r}(x)"),
                };
                if e.is_one() {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl FactoredRatFun {
    /// Builds a factored form; zero exponents are dropped, constants
    /// canonicalised, and roots validated against the domain.
    pub fn new(
        domain: &Arc<Domain>,
        constant: ConstElem,
        z_power: BigInt,
        factors: impl IntoIterator<Item = (RootRef, BigInt)>,
    ) -> Result<Self> {
        let t = domain.t();
        let mut map = BTreeMap::new();
        for (root, s) in factors {
            if root.orbit >= domain.orbit_count() {
                return Err(Error::Invalid(format!("orbit index {} is not a declared base", root.orbit)));
            }
            if root.zeta_exp >= t {
                return Err(Error::Invalid(format!("zeta exponent {} not in [0, {t})", root.zeta_exp)));
            }
            if map.insert(root, s).is_some() {
                return Err(Error::Invalid(format!("root {root:?} listed twice")));
            }
        }
        map.retain(|_, s: &mut BigInt| !s.is_zero());
        let constant = domain.group.elem(constant.exponents().to_vec())?;
        Ok(FactoredRatFun { domain: domain.clone(), constant, z_power, factors: map })
    }

    pub fn one(domain: &Arc<Domain>) -> Self {
        FactoredRatFun {
            domain: domain.clone(),
            constant: domain.group.one(),
            z_power: BigInt::zero(),
            factors: BTreeMap::new(),
        }
    }

    pub fn constant_fn(domain: &Arc<Domain>, c: ConstElem) -> Result<Self> {
        Self::new(domain, c, BigInt::zero(), [])
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn constant(&self) -> &ConstElem {
        &self.constant
    }

    pub fn z_power(&self) -> &BigInt {
        &self.z_power
    }

    pub fn factors(&self) -> &BTreeMap<RootRef, BigInt> {
        &self.factors
    }

    pub fn exponent(&self, root: &RootRef) -> BigInt {
        self.factors.get(root).cloned().unwrap_or_default()
    }

    /// Total degree: `T` plus the sum of all factor exponents.
    pub fn degree(&self) -> BigInt {
        &self.z_power + self.factors.values().sum::<BigInt>()
    }

    pub fn is_constant(&self) -> bool {
        self.z_power.is_zero() && self.factors.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.domain.group.is_one(&self.constant)
    }

    /// Smallest and largest q-shift present in `orbit`.
    pub fn window(&self, orbit: usize) -> Option<(i64, i64)> {
        let ds = self.factors.keys().filter(|r| r.orbit == orbit).map(|r| r.q_exp);
        ds.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }

    /// `f(qz)`: each root moves from `q^d` to `q^(d-1)` and the constant
    /// gains `q^deg`.
    pub fn sigma_q(&self) -> Self {
        let g = &self.domain.group;
        let constant = g.canonical(&self.constant.mul(&g.q_pow(self.degree())));
        let factors = self
            .factors
            .iter()
            .map(|(r, s)| (RootRef { q_exp: r.q_exp - 1, ..*r }, s.clone()))
            .collect();
        FactoredRatFun { domain: self.domain.clone(), constant, z_power: self.z_power.clone(), factors }
    }

    /// `sigma_q^-1`, i.e. `f(z/q)`.
    pub fn sigma_q_inv(&self) -> Self {
        let g = &self.domain.group;
        let constant = g.canonical(&self.constant.mul(&g.q_pow(-self.degree())));
        let factors = self
            .factors
            .iter()
            .map(|(r, s)| (RootRef { q_exp: r.q_exp + 1, ..*r }, s.clone()))
            .collect();
        FactoredRatFun { domain: self.domain.clone(), constant, z_power: self.z_power.clone(), factors }
    }

    /// `f(zeta^r z)`: the exponent at twist `k` of the result is the input
    /// exponent at `k + r`, and the constant gains `zeta^(r * deg)`.
    pub fn sigma_zeta(&self, r: u32) -> Self {
        let t = self.domain.t();
        let r = r % t;
        if r == 0 {
            return self.clone();
        }
        let g = &self.domain.group;
        let constant = g.canonical(&self.constant.mul(&g.zeta_pow(self.degree() * BigInt::from(r))));
        let factors = self
            .factors
            .iter()
            .map(|(root, s)| (RootRef { zeta_exp: (root.zeta_exp + t - r) % t, ..*root }, s.clone()))
            .collect();
        FactoredRatFun { domain: self.domain.clone(), constant, z_power: self.z_power.clone(), factors }
    }

    /// `self^e_self * other^e_other`.
    pub fn combine(&self, other: &Self, e_self: &BigInt, e_other: &BigInt) -> Result<Self> {
        if !Arc::ptr_eq(&self.domain, &other.domain) && self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let g = &self.domain.group;
        let constant = g.canonical(&self.constant.pow(e_self).mul(&other.constant.pow(e_other)));
        let z_power = &self.z_power * e_self + &other.z_power * e_other;
        let mut factors = BTreeMap::new();
        for (r, s) in &self.factors {
            factors.insert(*r, s * e_self);
        }
        for (r, s) in &other.factors {
            *factors.entry(*r).or_insert_with(BigInt::zero) += s * e_other;
        }
        factors.retain(|_, s: &mut BigInt| !s.is_zero());
        Ok(FactoredRatFun { domain: self.domain.clone(), constant, z_power, factors })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, &BigInt::one(), &BigInt::one())
    }

    pub fn pow(&self, e: &BigInt) -> Self {
        self.combine(self, e, &BigInt::zero()).expect("same domain")
    }

    pub fn inv(&self) -> Self {
        self.pow(&BigInt::from(-1))
    }

    /// `sigma_q(self) / self`.
    pub fn sigma_q_ratio(&self) -> Self {
        self.sigma_q().combine(self, &BigInt::one(), &BigInt::from(-1)).expect("same domain")
    }

    /// Same function with every q-shift moved by `delta`; the image of the
    /// input under the base change `r_i -> q^delta r_i`.
    pub fn shift_window(&self, delta: i64) -> Self {
        let factors =
            self.factors.iter().map(|(r, s)| (RootRef { q_exp: r.q_exp + delta, ..*r }, s.clone())).collect();
        FactoredRatFun { factors, ..self.clone() }
    }

    /// Same function with orbit `i` renamed to `perm[i]` (in a domain whose
    /// base list has been permuted accordingly).
    pub fn relabel_orbits(&self, domain: &Arc<Domain>, perm: &[usize]) -> Result<Self> {
        let factors = self.factors.iter().map(|(r, s)| (RootRef { orbit: perm[r.orbit], ..*r }, s.clone()));
        Self::new(domain, self.constant.clone(), self.z_power.clone(), factors)
    }
}

impl fmt::Display for FactoredRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.domain.group;
        let mut parts = Vec::new();
        if !g.is_one(&self.constant) {
            parts.push(g.display(&self.constant));
        }
        if !self.z_power.is_zero() {
            parts.push(if self.z_power.is_one() { "z".into() } else { format!("z^{}", self.z_power) });
        }
        for (r, s) in &self.factors {
            let mut root = Vec::new();
            match r.zeta_exp {
                0 => {}
                1 => root.push("zeta".to_string()),
                k => root.push(format!("zeta^{k}")),
            }
            match r.q_exp {
                0 => {}
                1 => root.push("q".to_string()),
                d => root.push(format!("q^{d}")),
            }
            root.push(self.domain.bases[r.orbit].clone());
            let lin = format!("(z - {})", root.join("*"));
            parts.push(if s.is_one() { lin } else { format!("{lin}^{s}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for FactoredRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRatFun({self})")
    }
}

/// Evaluation of a factored form at a point, given numeric values for the
/// constant generators and base roots. Used to cross-check the symbolic
/// calculus against plain arithmetic.
pub fn evaluate<F>(f: &FactoredRatFun, z: &F, generators: &[F], bases: &[F], zeta: &F, q: &F) -> F
where
    F: Clone
        + One
        + std::ops::Sub<Output = F>
        + std::ops::Mul<Output = F>
        + std::ops::Div<Output = F>,
{
    fn ipow<F: Clone + One + std::ops::Mul<Output = F> + std::ops::Div<Output = F>>(x: &F, e: &BigInt) -> F {
        let k = e.abs().to_u64().expect("exponent fits in u64");
        let mut acc = F::one();
        for _ in 0..k {
            acc = acc * x.clone();
        }
        if e.is_negative() {
            F::one() / acc
        } else {
            acc
        }
    }
    let mut acc = F::one();
    for (g, e) in generators.iter().zip(f.constant.exponents()) {
        acc = acc * ipow(g, e);
    }
    acc = acc * ipow(z, &f.z_power);
    for (r, s) in &f.factors {
        let root = ipow(zeta, &BigInt::from(r.zeta_exp)) * ipow(q, &BigInt::from(r.q_exp)) * bases[r.orbit].clone();
        acc = acc * ipow(&(z.clone() - root), s);
    }
    acc
}
