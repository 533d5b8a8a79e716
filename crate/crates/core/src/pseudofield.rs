//! Finite products of cyclotomic fields with a commuting group action.
//!
//! Every ring automorphism of `K^n` (with `K = Q(zeta_m)`) is a permutation
//! of the components combined with a field automorphism `zeta -> zeta^a` on
//! each, so an action is stored as exactly that data. The convention is
//! `(g.x)[perm[c]] = auto_c(x[c])`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactalg::{euler_phi, integer_kernel, CycNum, IntMatrix};
use crate::{Error, Result};

/// A ring automorphism of `K^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub perm: Vec<usize>,
    pub autos: Vec<u32>,
}

impl Action {
    pub fn identity(n: usize) -> Self {
        Action { perm: (0..n).collect(), autos: vec![1; n] }
    }

    /// Pure permutation action, identity on every field.
    pub fn permutation(perm: Vec<usize>) -> Self {
        let n = perm.len();
        Action { perm, autos: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    fn normalized(mut self, m: u32) -> Self {
        for a in &mut self.autos {
            *a %= m.max(1);
            if m <= 2 {
                *a = 1;
            }
        }
        self
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Action, m: u32) -> Action {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut autos = vec![1; n];
        for c in 0..n {
            let mid = other.perm[c];
            perm[c] = self.perm[mid];
            autos[c] = ((self.autos[mid] as u64 * other.autos[c] as u64) % m.max(1) as u64) as u32;
        }
        Action { perm, autos }.normalized(m)
    }

    pub fn inverse(&self, m: u32) -> Action {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut autos = vec![1; n];
        for c in 0..n {
            perm[self.perm[c]] = c;
            autos[self.perm[c]] = mod_inverse(self.autos[c], m);
        }
        Action { perm, autos }.normalized(m)
    }

    pub fn pow(&self, e: i64, m: u32) -> Action {
        let base = if e < 0 { self.inverse(m) } else { self.clone() };
        let mut acc = Action::identity(self.len());
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(&acc, m);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(c, &p)| p == c) && self.autos.iter().all(|&a| a == 1)
    }

    pub fn apply(&self, x: &PfElement) -> PfElement {
        let mut out = x.coords.clone();
        for (c, v) in x.coords.iter().enumerate() {
            out[self.perm[c]] = v.galois(self.autos[c]);
        }
        PfElement { coords: out }
    }
}

fn mod_inverse(a: u32, m: u32) -> u32 {
    if m <= 2 {
        return 1;
    }
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    let x = e.x.mod_floor(&BigInt::from(m));
    u32::try_from(x).expect("residue below m")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub action: Action,
    pub order: Option<u32>,
}

/// Component indexing of a ring built by [`f_sigma1`]: component
/// `tau * base_components + c` is copy `c` of the base at group element
/// `tau` (mixed radix over `orders`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma1Layout {
    pub orders: Vec<u32>,
    pub base_components: usize,
    pub sigma0_generators: usize,
}

impl Sigma1Layout {
    pub fn group_size(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    pub fn index(&self, mu: &[i64]) -> usize {
        let mut idx = 0usize;
        for (o, e) in self.orders.iter().zip(mu) {
            idx = idx * *o as usize + e.rem_euclid(*o as i64) as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.orders.len()];
        for (j, o) in self.orders.iter().enumerate().rev() {
            out[j] = (idx % *o as usize) as i64;
            idx /= *o as usize;
        }
        out
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        (0..self.group_size()).map(|i| self.element(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudofield {
    m: u32,
    n: usize,
    gens: Vec<Generator>,
    layout: Option<Sigma1Layout>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PfElement {
    pub coords: Vec<CycNum>,
}

impl PfElement {
    pub fn zero(m: u32, n: usize) -> Self {
        PfElement { coords: vec![CycNum::zero(m); n] }
    }

    pub fn one(m: u32, n: usize) -> Self {
        PfElement { coords: vec![CycNum::one(m); n] }
    }

    pub fn from_integers(m: u32, v: &[i64]) -> Self {
        PfElement { coords: v.iter().map(|&x| CycNum::from_integer(m, x.into())).collect() }
    }

    /// Indicator vector of a set of components.
    pub fn indicator(m: u32, n: usize, comps: &[usize]) -> Self {
        let mut e = Self::zero(m, n);
        for &c in comps {
            e.coords[c] = CycNum::one(m);
        }
        e
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        PfElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PfElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        PfElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a * b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycNum::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        &self.mul(self) == self
    }

    /// Coordinates over Q, component by component.
    fn rational_coords(&self) -> Vec<BigRational> {
        self.coords.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }
}

impl fmt::Display for PfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Pseudofield {
    /// `n` copies of `Q(zeta_m)` (`m = 1` for Q) with commuting generators.
    pub fn new(m: u32, n: usize, gens: Vec<Generator>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Invalid("need m >= 1 and at least one component".into()));
        }
        let mut checked = Vec::with_capacity(gens.len());
        for g in gens {
            if g.action.perm.len() != n || g.action.autos.len() != n {
                return Err(Error::Invalid(format!("generator `{}` has the wrong length", g.name)));
            }
            let mut seen = vec![false; n];
            for &p in &g.action.perm {
                if p >= n || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::Invalid(format!("generator `{}` is not a permutation", g.name)));
                }
            }
            if m > 2 && g.action.autos.iter().any(|&a| a.gcd(&m) != 1) {
                return Err(Error::Invalid(format!("generator `{}` uses a non-invertible exponent", g.name)));
            }
            let action = g.action.normalized(m);
            if let Some(o) = g.order {
                if o == 0 || !action.pow(o as i64, m).is_identity() {
                    return Err(Error::Invalid(format!("generator `{}` does not have order dividing {o}", g.name)));
                }
            }
            checked.push(Generator { name: g.name, action, order: g.order });
        }
        for (i, g) in checked.iter().enumerate() {
            for h in &checked[i + 1..] {
                if g.action.compose(&h.action, m) != h.action.compose(&g.action, m) {
                    return Err(Error::Invalid(format!("generators `{}` and `{}` do not commute", g.name, h.name)));
                }
            }
        }
        Ok(Pseudofield { m, n, gens: checked, layout: None })
    }

    pub fn base_order(&self) -> u32 {
        self.m
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn layout(&self) -> Option<&Sigma1Layout> {
        self.layout.as_ref()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn zero(&self) -> PfElement {
        PfElement::zero(self.m, self.n)
    }

    pub fn one(&self) -> PfElement {
        PfElement::one(self.m, self.n)
    }

    fn check(&self, x: &PfElement) -> Result<()> {
        if x.len() != self.n || x.coords.iter().any(|c| c.order() != self.m) {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// The automorphism `prod gens[j]^word[j]`.
    pub fn action_of(&self, word: &[i64]) -> Result<Action> {
        if word.len() != self.gens.len() {
            return Err(Error::Invalid(format!("word has length {}, expected {}", word.len(), self.gens.len())));
        }
        let mut acc = Action::identity(self.n);
        for (g, &e) in self.gens.iter().zip(word) {
            acc = g.action.pow(e, self.m).compose(&acc, self.m);
        }
        Ok(acc)
    }

    pub fn act(&self, gen: usize, x: &PfElement) -> Result<PfElement> {
        self.check(x)?;
        let g = self.gens.get(gen).ok_or_else(|| Error::Invalid(format!("no generator {gen}")))?;
        Ok(g.action.apply(x))
    }

    /// The action of a Sigma_1 element on a ring built by [`f_sigma1`] or on
    /// a ring whose trailing generators play the Sigma_1 role.
    pub fn sigma1_action(&self, sigma0_generators: usize, mu: &[i64]) -> Result<Action> {
        if sigma0_generators + mu.len() != self.gens.len() {
            return Err(Error::Invalid("Sigma_1 element does not match the generator list".into()));
        }
        let mut word = vec![0; sigma0_generators];
        word.extend_from_slice(mu);
        self.action_of(&word)
    }

    /// Orbits of the permutation group generated by the chosen generators.
    pub fn orbits(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut orbits = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let c = orbit[i];
                for &g in gens {
                    let d = self.gens[g].action.perm[c];
                    if label[d] == usize::MAX {
                        label[d] = id;
                        orbit.push(d);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

/// Builds `F_{Sigma_1}(B)`: functions from `Z/o_1 + ... + Z/o_p` to `B`,
/// with `B`'s generators acting pointwise (listed first) and `Sigma_1` by
/// translation, `(mu f)(tau) = f(mu^{-1} tau)`.
pub fn f_sigma1(base: &Pseudofield, orders: &[u32]) -> Result<Pseudofield> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::Invalid("Sigma_1 needs at least one nonzero cyclic factor".into()));
    }
    let layout = Sigma1Layout {
        orders: orders.to_vec(),
        base_components: base.n,
        sigma0_generators: base.gens.len(),
    };
    let size = layout.group_size();
    let n = size * base.n;
    let mut gens = Vec::new();
    for g in &base.gens {
        let mut a = Action::identity(n);
        for tau in 0..size {
            for c in 0..base.n {
                a.perm[tau * base.n + c] = tau * base.n + g.action.perm[c];
                a.autos[tau * base.n + c] = g.action.autos[c];
            }
        }
        gens.push(Generator { name: g.name.clone(), action: a, order: g.order });
    }
    for (j, &o) in orders.iter().enumerate() {
        let mut a = Action::identity(n);
        for tau in 0..size {
            let mut e = layout.element(tau);
            e[j] += 1;
            let target = layout.index(&e);
            for c in 0..base.n {
                a.perm[tau * base.n + c] = target * base.n + c;
            }
        }
        let name = if orders.len() == 1 { "rho".to_string() } else { format!("rho{j}") };
        gens.push(Generator { name, action: a, order: Some(o) });
    }
    let mut pf = Pseudofield::new(base.m, n, gens)?;
    pf.layout = Some(layout);
    Ok(pf)
}

/// Evaluation at `mu`: the copy of `B` sitting over the group element `mu`.
pub fn gamma_mu(pf: &Pseudofield, mu: &[i64], x: &PfElement) -> Result<PfElement> {
    let layout = pf.layout.as_ref().ok_or_else(|| Error::Invalid("ring was not built by f_sigma1".into()))?;
    if mu.len() != layout.orders.len() {
        return Err(Error::Invalid("group element has the wrong number of coordinates".into()));
    }
    pf.check(x)?;
    let start = layout.index(mu) * layout.base_components;
    Ok(PfElement { coords: x.coords[start..start + layout.base_components].to_vec() })
}

/// A unital ring map `K^a -> K^b`: target component `c` receives
/// `autos[c]` applied to source component `src[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMap {
    pub src: Vec<usize>,
    pub autos: Vec<u32>,
}

impl RingMap {
    pub fn new(src: Vec<usize>, autos: Vec<u32>, source: &Pseudofield, target: &Pseudofield) -> Result<Self> {
        if source.m != target.m {
            return Err(Error::DomainMismatch);
        }
        if src.len() != target.n || autos.len() != target.n || src.iter().any(|&s| s >= source.n) {
            return Err(Error::Invalid("ring map does not fit its source and target".into()));
        }
        if source.m > 2 && autos.iter().any(|a| a.gcd(&source.m) != 1) {
            return Err(Error::Invalid("ring map uses a non-invertible exponent".into()));
        }
        let m = source.m;
        let autos = autos.into_iter().map(|a| if m <= 2 { 1 } else { a % m }).collect();
        Ok(RingMap { src, autos })
    }

    /// Projection `K^n -> K` onto component `c`.
    pub fn projection(source: &Pseudofield, target: &Pseudofield, c: usize) -> Result<Self> {
        Self::new(vec![c; target.n], vec![1; target.n], source, target)
    }

    pub fn apply(&self, x: &PfElement) -> PfElement {
        PfElement { coords: self.src.iter().zip(&self.autos).map(|(&s, &a)| x.coords[s].galois(a)).collect() }
    }

    /// `self` after the source automorphism `g`.
    pub fn after(&self, g: &Action, m: u32) -> RingMap {
        let ginv = g.inverse(m);
        let mut src = Vec::with_capacity(self.src.len());
        let mut autos = Vec::with_capacity(self.src.len());
        for (&s, &a) in self.src.iter().zip(&self.autos) {
            // (g x)[s] = g.autos[ginv(s)] applied to x[ginv(s)]
            let from = ginv.perm[s];
            src.push(from);
            autos.push(((a as u64 * g.autos[from] as u64) % m.max(1) as u64) as u32);
        }
        RingMap { src, autos: autos.into_iter().map(|a| if m <= 2 { 1 } else { a }).collect() }
    }

    /// The target automorphism `g` after `self`.
    pub fn before(&self, g: &Action, m: u32) -> RingMap {
        let ginv = g.inverse(m);
        let mut src = Vec::with_capacity(self.src.len());
        let mut autos = Vec::with_capacity(self.src.len());
        for d in 0..self.src.len() {
            let from = ginv.perm[d];
            src.push(self.src[from]);
            autos.push(((g.autos[from] as u64 * self.autos[from] as u64) % m.max(1) as u64) as u32);
        }
        RingMap { src, autos: autos.into_iter().map(|a| if m <= 2 { 1 } else { a }).collect() }
    }
}

fn check_sigma0_equivariant(a: &Pseudofield, phi: &RingMap, b: &Pseudofield, sigma0: usize) -> Result<()> {
    for j in 0..sigma0 {
        let lhs = phi.after(&a.gens[j].action, a.m);
        let rhs = phi.before(&b.gens[j].action, a.m);
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "map does not commute with `{}`, so it is not a difference homomorphism",
                a.gens[j].name
            )));
        }
    }
    Ok(())
}

/// The Taylor homomorphism `Phi_mu: A -> F_{Sigma_1}(B)`,
/// `Phi_mu(a)(tau) = phi(mu tau^{-1} a)`.
///
/// `A`'s generators must be the Sigma_0 generators of `B` followed by one
/// generator per cyclic factor of `f`'s Sigma_1; `phi: A -> B` must commute
/// with the Sigma_0 part.
pub fn taylor_hom(a: &Pseudofield, phi: &RingMap, f: &Pseudofield, mu: &[i64]) -> Result<RingMap> {
    let layout = f.layout.as_ref().ok_or_else(|| Error::Invalid("target was not built by f_sigma1".into()))?;
    if a.m != f.m {
        return Err(Error::DomainMismatch);
    }
    let k = layout.sigma0_generators;
    if a.gens.len() != k + layout.orders.len() || mu.len() != layout.orders.len() {
        return Err(Error::Invalid("generator lists of source and target do not line up".into()));
    }
    if phi.src.len() != layout.base_components || phi.src.iter().any(|&s| s >= a.n) {
        return Err(Error::Invalid("map does not fit its source and target".into()));
    }
    // B is the copy over the identity; its Sigma_0 generators are read off f
    let nb = layout.base_components;
    let b_gens: Vec<Generator> = f.gens[..k]
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            action: Action { perm: g.action.perm[..nb].to_vec(), autos: g.action.autos[..nb].to_vec() },
            order: g.order,
        })
        .collect();
    let b = Pseudofield { m: f.m, n: nb, gens: b_gens, layout: None };
    check_sigma0_equivariant(a, phi, &b, k)?;
    let mut src = Vec::with_capacity(f.n);
    let mut autos = Vec::with_capacity(f.n);
    for tau in layout.elements() {
        let g: Vec<i64> = mu.iter().zip(&tau).map(|(m, t)| m - t).collect();
        let shifted = phi.after(&a.sigma1_action(k, &g)?, a.m);
        src.extend(shifted.src);
        autos.extend(shifted.autos);
    }
    Ok(RingMap { src, autos })
}

/// Whether `psi: A -> F` commutes with every generator (same generator list
/// on both sides).
pub fn is_equivariant(a: &Pseudofield, psi: &RingMap, f: &Pseudofield) -> bool {
    a.gens.len() == f.gens.len()
        && a.gens.iter().zip(&f.gens).all(|(ga, gf)| psi.after(&ga.action, a.m) == psi.before(&gf.action, a.m))
}

/// All equivariant ring maps `A -> F` with `gamma_mu o psi = phi`, found by
/// exhaustive enumeration. Meant for tiny rings; errors above `limit`
/// candidates.
pub fn equivariant_lifts(a: &Pseudofield, phi: &RingMap, f: &Pseudofield, mu: &[i64], limit: usize) -> Result<Vec<RingMap>> {
    let layout = f.layout.as_ref().ok_or_else(|| Error::Invalid("target was not built by f_sigma1".into()))?;
    let units: Vec<u32> = if a.m <= 2 { vec![1] } else { (1..a.m).filter(|x| x.gcd(&a.m) == 1).collect() };
    let choices = a.n * units.len();
    let total = (choices as f64).powi(f.n as i32);
    if total > limit as f64 {
        return Err(Error::Unsupported(format!("{total} candidate maps exceed the limit {limit}")));
    }
    let start = layout.index(mu) * layout.base_components;
    let mut out = Vec::new();
    let mut digits = vec![0usize; f.n];
    loop {
        let psi = RingMap {
            src: digits.iter().map(|d| d / units.len()).collect(),
            autos: digits.iter().map(|d| units[d % units.len()]).collect(),
        };
        let restricted = RingMap {
            src: psi.src[start..start + layout.base_components].to_vec(),
            autos: psi.autos[start..start + layout.base_components].to_vec(),
        };
        if &restricted == phi && is_equivariant(a, &psi, f) {
            out.push(psi);
        }
        let mut i = 0;
        while i < f.n {
            digits[i] += 1;
            if digits[i] < choices {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == f.n {
            break;
        }
    }
    Ok(out)
}

/// Structure of a fixed subring `R^{gens}`.
#[derive(Clone, Debug)]
pub struct ConstantsSubring {
    /// Dimension over Q.
    pub rational_dimension: usize,
    /// Dimension over the base field, when every chosen generator acts
    /// linearly over it.
    pub dimension: Option<usize>,
    /// A Q-basis of the subring.
    pub basis: Vec<PfElement>,
    /// `basis[i] * basis[j] = sum_k table[i][j][k] * basis[k]`.
    pub table: Vec<Vec<Vec<BigRational>>>,
    /// Primitive idempotents: indicators of the component orbits.
    pub idempotents: Vec<PfElement>,
}

impl ConstantsSubring {
    pub fn is_field(&self) -> bool {
        self.idempotents.len() == 1
    }

    /// Membership by solving in the stored basis.
    pub fn contains(&self, x: &PfElement) -> bool {
        let vecs: Vec<Vec<BigRational>> = self.basis.iter().map(PfElement::rational_coords).collect();
        express(&vecs, &x.rational_coords()).is_some()
    }
}

// Coordinates of `target` in the span of `basis`, by Gaussian elimination.
fn express(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = target.len();
    // rows = coordinates, columns = basis vectors plus the target
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).take(k + 1) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][k].clone();
    }
    Some(sol)
}

/// The subring fixed by the chosen generators, computed as the common kernel
/// of `g - id` over Q.
pub fn constants_subring(pf: &Pseudofield, gens: &[usize]) -> Result<ConstantsSubring> {
    if let Some(&g) = gens.iter().find(|&&g| g >= pf.gens.len()) {
        return Err(Error::Invalid(format!("no generator {g}")));
    }
    let deg = euler_phi(pf.m) as usize;
    let dim = pf.n * deg;
    let basis_vecs: Vec<Vec<BigInt>> = if gens.is_empty() {
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        let mut m = IntMatrix::zeros(0, dim);
        for &g in gens {
            let act = &pf.gens[g].action;
            let mut block = IntMatrix::zeros(dim, dim);
            for c in 0..pf.n {
                for j in 0..deg {
                    let img = CycNum::zeta_pow(pf.m, j as i64).galois(act.autos[c]);
                    for (i, v) in img.coeffs().iter().enumerate() {
                        block[(act.perm[c] * deg + i, c * deg + j)] += v.to_integer();
                    }
                    block[(c * deg + j, c * deg + j)] -= 1;
                }
            }
            m = m.vstack(&block);
        }
        integer_kernel(&m)
    };
    let basis: Vec<PfElement> = basis_vecs
        .iter()
        .map(|v| PfElement {
            coords: (0..pf.n)
                .map(|c| {
                    let mut e = CycNum::zero(pf.m);
                    for j in 0..deg {
                        if !v[c * deg + j].is_zero() {
                            let term = CycNum::zeta_pow(pf.m, j as i64).scale(&BigRational::from_integer(v[c * deg + j].clone()));
                            e = &e + &term;
                        }
                    }
                    e
                })
                .collect(),
        })
        .collect();
    let vecs: Vec<Vec<BigRational>> = basis.iter().map(PfElement::rational_coords).collect();
    let mut table = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for y in &basis {
            let coords = express(&vecs, &x.mul(y).rational_coords())
                .ok_or_else(|| Error::Internal("fixed subring is not closed under multiplication".into()))?;
            row.push(coords);
        }
        table.push(row);
    }
    let linear = gens.iter().all(|&g| pf.gens[g].action.autos.iter().all(|&a| a == 1));
    let idempotents = pf.orbits(gens).iter().map(|o| PfElement::indicator(pf.m, pf.n, o)).collect();
    Ok(ConstantsSubring {
        rational_dimension: basis.len(),
        dimension: linear.then_some(basis.len() / deg),
        basis,
        table,
        idempotents,
    })
}

/// Whether the chosen generators permute the components transitively, which
/// for a product of fields is simplicity as a difference ring.
pub fn is_simple(pf: &Pseudofield, gens: &[usize]) -> bool {
    pf.orbits(gens).len() == 1
}

/// `Q(zeta_m)[x]/(x^m - 1)` split into its `m` components `x = zeta^c`, with
/// generators `x -> zeta^a x` for the given `(name, a)` pairs.
pub fn root_of_unity_quotient(m: u32, shifts: &[(&str, u32)]) -> Result<Pseudofield> {
    let n = m as usize;
    let gens = shifts
        .iter()
        .map(|&(name, a)| {
            // f(zeta^a x) at x = zeta^c reads the old component c + a
            let perm = (0..n).map(|d| (d + n - a as usize % n) % n).collect();
            let order = (m / m.gcd(&a)).max(1);
            Generator { name: name.to_string(), action: Action::permutation(perm), order: Some(order) }
        })
        .collect();
    Pseudofield::new(m, n, gens)
}

/// The image of `x^k` in [`root_of_unity_quotient`].
pub fn x_power(m: u32, k: i64) -> PfElement {
    PfElement { coords: (0..m as i64).map(|c| CycNum::zeta_pow(m, c * k)).collect() }
}
