//! The finitely presented abelian group of multiplicative constants.
//!
//! Generators are named symbols: `q` (always present, infinite order), `zeta`
//! (order `t`), and user symbols. The relation lattice `L` is kept in Hermite
//! normal form so that every element has a canonical exponent vector.
//! Nothing here inspects complex numbers: the only facts known about a
//! constant are the relations the caller declared.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{hermite_normal_form, integer_kernel, IntMatrix};
use crate::{Error, Result};

pub const Q: usize = 0;
pub const ZETA: usize = 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConstGroup {
    names: Vec<String>,
    zeta_order: u32,
    relations: IntMatrix,
    pivots: Vec<usize>,
}

/// Exponent vector over the generators of a [`ConstGroup`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConstElem {
    exps: Vec<BigInt>,
}

/// Which half of the dependence criterion applies, with the relation used to
/// complete the constant part of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case {
    /// `T = 0` and lambda is tied to `q` or to a root of unity.
    One(Case1Relation),
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case1Relation {
    /// `lambda^u = q^v` with `u, v` nonzero.
    QPower { u: BigInt, v: BigInt },
    /// `lambda^w = 1`.
    Torsion { w: BigInt },
}

impl Case {
    pub fn number(&self) -> u8 {
        match self {
            Case::One(_) => 1,
            Case::Two => 2,
        }
    }
}

pub struct ConstGroupBuilder {
    names: Vec<String>,
    zeta_order: u32,
    relations: Vec<Vec<(usize, BigInt)>>,
}

impl ConstGroupBuilder {
    fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown constant symbol `{name}`")))
    }

    fn push_name(&mut self, name: &str) -> Result<usize> {
        if name.is_empty() || self.names.iter().any(|n| n == name) {
            return Err(Error::Invalid(format!("duplicate or empty constant symbol `{name}`")));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    /// A fresh generator with no relations.
    pub fn free_symbol(mut self, name: &str) -> Result<Self> {
        self.push_name(name)?;
        Ok(self)
    }

    /// A fresh generator `w` with `w^order = 1`.
    pub fn torsion_symbol(mut self, name: &str, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("torsion order must be positive".into()));
        }
        let i = self.push_name(name)?;
        self.relations.push(vec![(i, BigInt::from(order))]);
        Ok(self)
    }

    /// Declares `prod name^exp = 1`.
    pub fn relation<S: AsRef<str>>(mut self, terms: &[(S, i64)]) -> Result<Self> {
        let mut row = Vec::new();
        for (name, e) in terms {
            row.push((self.index(name.as_ref())?, BigInt::from(*e)));
        }
        self.relations.push(row);
        Ok(self)
    }

    pub fn build(self) -> Result<ConstGroup> {
        let n = self.names.len();
        let mut rows = Vec::new();
        for rel in &self.relations {
            let mut row = vec![BigInt::zero(); n];
            for (i, e) in rel {
                row[*i] += e;
            }
            rows.push(row);
        }
        let mut zrow = vec![BigInt::zero(); n];
        zrow[ZETA] = BigInt::from(self.zeta_order);
        rows.push(zrow);
        let herm = hermite_normal_form(&IntMatrix::from_rows(n, &rows));
        let kept: Vec<Vec<BigInt>> = (0..herm.rank).map(|i| herm.h.row(i).to_vec()).collect();
        let group = ConstGroup {
            names: self.names,
            zeta_order: self.zeta_order,
            relations: IntMatrix::from_rows(n, &kept),
            pivots: herm.pivots,
        };
        if group.order(&group.generator(Q)).is_some() {
            return Err(Error::Invalid("declared relations make q a root of unity".into()));
        }
        if group.order(&group.generator(ZETA)) != Some(BigInt::from(group.zeta_order)) {
            return Err(Error::Invalid("declared relations change the order of zeta".into()));
        }
        Ok(group)
    }
}

impl ConstGroup {
    /// Starts a group containing `q` and a primitive `t`-th root of unity `zeta`.
    pub fn builder(t: u32) -> ConstGroupBuilder {
        assert!(t >= 1);
        ConstGroupBuilder { names: vec!["q".into(), "zeta".into()], zeta_order: t, relations: Vec::new() }
    }

    pub fn new(t: u32) -> ConstGroup {
        Self::builder(t).build().expect("q and zeta alone are consistent")
    }

    pub fn zeta_order(&self) -> u32 {
        self.zeta_order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Relation lattice in Hermite normal form.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> ConstElem {
        ConstElem { exps: vec![BigInt::zero(); self.rank()] }
    }

    pub fn generator(&self, i: usize) -> ConstElem {
        let mut e = self.one();
        e.exps[i] = BigInt::one();
        e
    }

    pub fn q_pow(&self, k: impl Into<BigInt>) -> ConstElem {
        self.generator(Q).pow(&k.into())
    }

    pub fn zeta_pow(&self, k: impl Into<BigInt>) -> ConstElem {
        self.canonical(&self.generator(ZETA).pow(&k.into()))
    }

    /// Element from raw exponents; the vector length must match the group.
    pub fn elem(&self, exps: Vec<BigInt>) -> Result<ConstElem> {
        if exps.len() != self.rank() {
            return Err(Error::DomainMismatch);
        }
        Ok(self.canonical(&ConstElem { exps }))
    }

    fn check(&self, x: &ConstElem) -> Result<()> {
        if x.exps.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    /// Reduction of the exponent vector modulo the Hermite basis of `L`.
    pub fn canonical(&self, x: &ConstElem) -> ConstElem {
        let mut v = x.exps.clone();
        for (r, &c) in self.pivots.iter().enumerate() {
            let row = self.relations.row(r);
            let f = v[c].div_floor(&row[c]);
            if !f.is_zero() {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &f * ri;
                }
            }
        }
        ConstElem { exps: v }
    }

    pub fn is_canonical(&self, x: &ConstElem) -> bool {
        &self.canonical(x) == x
    }

    pub fn is_one(&self, x: &ConstElem) -> bool {
        self.canonical(x).exps.iter().all(Zero::is_zero)
    }

    /// `x == y` modulo the relation lattice.
    pub fn const_equal(&self, x: &ConstElem, y: &ConstElem) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.is_one(&x.div(y)))
    }

    /// Whether `x` lies in the subgroup generated by `gens`.
    pub fn subgroup_member(&self, x: &ConstElem, gens: &[ConstElem]) -> Result<bool> {
        self.check(x)?;
        let n = self.rank();
        let mut rows = Vec::new();
        for g in gens {
            self.check(g)?;
            rows.push(g.exps.clone());
        }
        rows.extend(self.relations.to_rows());
        if rows.is_empty() {
            return Ok(x.exps.iter().all(Zero::is_zero));
        }
        let herm = hermite_normal_form(&IntMatrix::from_rows(n, &rows));
        let mut v = x.exps.clone();
        for (r, &c) in herm.pivots.iter().enumerate() {
            let row = herm.h.row(r);
            let (f, rem) = v[c].div_mod_floor(&row[c]);
            if !rem.is_zero() {
                return Ok(false);
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi -= &f * ri;
            }
        }
        Ok(v.iter().all(Zero::is_zero))
    }

    /// Hermite basis of the lattice `{(a, b) in Z^2 : x^a * y^b = 1}`.
    pub fn relation_lattice(&self, x: &ConstElem, y: &ConstElem) -> Vec<[BigInt; 2]> {
        let n = self.rank();
        let nrel = self.relations.rows();
        let mut m = IntMatrix::zeros(n, 2 + nrel);
        for i in 0..n {
            m[(i, 0)] = x.exps[i].clone();
            m[(i, 1)] = y.exps[i].clone();
            for r in 0..nrel {
                m[(i, 2 + r)] = -&self.relations[(r, i)];
            }
        }
        let proj: Vec<Vec<BigInt>> = integer_kernel(&m).into_iter().map(|v| v[..2].to_vec()).collect();
        if proj.is_empty() {
            return Vec::new();
        }
        let herm = hermite_normal_form(&IntMatrix::from_rows(2, &proj));
        (0..herm.rank).map(|r| [herm.h[(r, 0)].clone(), herm.h[(r, 1)].clone()]).collect()
    }

    /// Multiplicative order of `x`, `None` when infinite.
    pub fn order(&self, x: &ConstElem) -> Option<BigInt> {
        let lat = self.relation_lattice(x, &self.one());
        lat.first().filter(|r| !r[0].is_zero()).map(|r| r[0].clone())
    }

    /// The exponent `v` with `x = q^v`, if one exists.
    pub fn q_log(&self, x: &ConstElem) -> Option<BigInt> {
        let lat = self.relation_lattice(x, &self.generator(Q));
        let first = lat.first()?;
        if first[0].is_one() {
            // x * q^b = 1
            Some(-&first[1])
        } else {
            None
        }
    }

    /// Decides which case of the criterion applies for leading constant
    /// `lambda` and z-power `t_exp`.
    pub fn classify_lambda(&self, lambda: &ConstElem, t_exp: &BigInt) -> Result<Case> {
        self.check(lambda)?;
        if !t_exp.is_zero() {
            return Ok(Case::Two);
        }
        let lat = self.relation_lattice(lambda, &self.generator(Q));
        match lat.first() {
            Some([u, b]) if u.is_positive() => {
                // lambda^u * q^b = 1, so lambda^u = q^(-b)
                if b.is_zero() {
                    Ok(Case::One(Case1Relation::Torsion { w: u.clone() }))
                } else {
                    Ok(Case::One(Case1Relation::QPower { u: u.clone(), v: -b }))
                }
            }
            Some(_) => Err(Error::Internal("q has finite order".into())),
            None => Ok(Case::Two),
        }
    }

    /// Human-readable monomial, e.g. `q^2*zeta*c^-1`.
    pub fn display(&self, x: &ConstElem) -> String {
        let c = self.canonical(x);
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&c.exps)
            .filter(|(_, e)| !e.is_zero())
            .map(|(n, e)| if e.is_one() { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Nonzero exponents keyed by symbol name.
    pub fn named_exponents(&self, x: &ConstElem) -> Vec<(String, BigInt)> {
        let c = self.canonical(x);
        self.names.iter().cloned().zip(c.exps).filter(|(_, e)| !e.is_zero()).collect()
    }
}

impl fmt::Debug for ConstGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstGroup")
            .field("names", &self.names)
            .field("relations", &self.relations)
            .finish()
    }
}

impl ConstElem {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn mul(&self, other: &ConstElem) -> ConstElem {
        ConstElem { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn div(&self, other: &ConstElem) -> ConstElem {
        ConstElem { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn pow(&self, k: &BigInt) -> ConstElem {
        ConstElem { exps: self.exps.iter().map(|a| a * k).collect() }
    }

    pub fn inv(&self) -> ConstElem {
        ConstElem { exps: self.exps.iter().map(|a| -a).collect() }
    }
}
