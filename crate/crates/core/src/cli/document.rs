//! JSON documents: equation input, witness input, and report rendering.
//!
//! Integers may be given as JSON numbers or decimal strings; reports write
//! anything at or beyond 2^53 as a string.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::constgroup::{Case, Case1Relation, ConstElem, ConstGroup, Q, ZETA};
use crate::criterion::{Trace, Verdict};
use crate::exactalg::CycNum;
use crate::gm_subgroups::{Equation, GroupStructure, MonomialSystem, Rhs, Subgroup};
use crate::json::{int_value, ints_value};
use crate::ratfun::{Domain, FactoredRatFun, RootRef};
use crate::witness::{ConstantPlan, Witness};
use crate::{Error, Result};

/// Name of the torsion generator introduced by `lambda.torsion_order`.
pub const TORSION_SYMBOL: &str = "omega";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDocument {
    pub t: u32,
    pub lambda: LambdaDecl,
    #[serde(rename = "T", default, with = "crate::json::bigint")]
    pub t_exp: BigInt,
    #[serde(default)]
    pub orbits: Vec<OrbitDoc>,
}

/// `lambda = q^q_exp * zeta^zeta_exp * omega * prod free symbols`, where
/// `omega` exists only when `torsion_order` is given and satisfies
/// `omega^torsion_order = 1`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaDecl {
    #[serde(default, with = "crate::json::bigint")]
    pub q_exp: BigInt,
    #[serde(default, with = "crate::json::bigint")]
    pub zeta_exp: BigInt,
    #[serde(default)]
    pub torsion_order: Option<u64>,
    #[serde(default)]
    pub free_symbols: Vec<SymbolPower>,
    #[serde(default)]
    pub declared_relations: Vec<BTreeMap<String, i64>>,
}

/// A free symbol in lambda: either `"c"` or `{"c": 2}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SymbolPower {
    Name(String),
    Power(BTreeMap<String, i64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    #[serde(alias = "base_name")]
    pub base: String,
    pub factors: Vec<FactorDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub k: u32,
    pub d: i64,
    #[serde(with = "crate::json::bigint")]
    pub s: BigInt,
}

/// `b = mu * z^z_power * prod (z - zeta^k q^d base)^s`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactoredDoc {
    #[serde(default)]
    pub constant: BTreeMap<String, i64>,
    #[serde(default, with = "crate::json::bigint")]
    pub z_power: BigInt,
    #[serde(default)]
    pub factors: Vec<NamedFactorDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFactorDoc {
    pub base: String,
    pub k: u32,
    pub d: i64,
    #[serde(with = "crate::json::bigint")]
    pub s: BigInt,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    #[serde(with = "crate::json::bigint_vec")]
    pub phi: Vec<BigInt>,
    pub b_factors: FactoredDoc,
    // the remaining fields are ignored; they let witness output be fed back
    #[serde(default)]
    pub b: Option<Value>,
    #[serde(default)]
    pub phi_display: Option<String>,
    #[serde(default, rename = "M")]
    pub m: Option<Value>,
    #[serde(default)]
    pub verified: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDocument {
    pub equation: EquationDocument,
    pub witness: WitnessDoc,
}

pub fn schema_error(e: serde_json::Error) -> Error {
    Error::Invalid(format!("schema: {e}"))
}

impl EquationDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(schema_error)
    }

    pub fn from_value(v: Value) -> Result<Self> {
        serde_json::from_value(v).map_err(schema_error)
    }

    /// Builds the constant group and the factored right-hand side.
    pub fn build(&self) -> Result<FactoredRatFun> {
        if self.t < 2 {
            return Err(Error::Invalid(format!("t must be at least 2, got {}", self.t)));
        }
        let lam = &self.lambda;
        let mut builder = ConstGroup::builder(self.t);
        if let Some(w) = lam.torsion_order {
            builder = builder.torsion_symbol(TORSION_SYMBOL, w)?;
        }
        let mut free = Vec::new();
        for sym in &lam.free_symbols {
            match sym {
                SymbolPower::Name(n) => free.push((n.clone(), 1)),
                SymbolPower::Power(m) => free.extend(m.iter().map(|(n, e)| (n.clone(), *e))),
            }
        }
        // symbols that only occur in relations are free generators too
        let mut names: Vec<String> = free.iter().map(|(n, _)| n.clone()).collect();
        for rel in &lam.declared_relations {
            names.extend(rel.keys().cloned());
        }
        let mut declared: Vec<String> = Vec::new();
        for n in names {
            let reserved = n == "q" || n == "zeta" || (lam.torsion_order.is_some() && n == TORSION_SYMBOL);
            if !reserved && !declared.contains(&n) {
                builder = builder.free_symbol(&n)?;
                declared.push(n);
            }
        }
        for rel in &lam.declared_relations {
            let terms: Vec<(&str, i64)> = rel.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            builder = builder.relation(&terms)?;
        }
        let group = builder.build()?;
        let mut exps = vec![BigInt::zero(); group.rank()];
        exps[Q] += &lam.q_exp;
        exps[ZETA] += &lam.zeta_exp;
        if lam.torsion_order.is_some() {
            exps[group.index_of(TORSION_SYMBOL).expect("declared above")] += 1;
        }
        for (n, e) in &free {
            exps[group.index_of(n).expect("declared above")] += *e;
        }
        let lambda = group.elem(exps)?;

        let mut bases = Vec::new();
        let mut factors = Vec::new();
        for (i, orbit) in self.orbits.iter().enumerate() {
            if bases.contains(&orbit.base) {
                return Err(Error::Invalid(format!("orbit base `{}` appears twice", orbit.base)));
            }
            bases.push(orbit.base.clone());
            for f in &orbit.factors {
                if f.k >= self.t {
                    return Err(Error::Invalid(format!("factor k = {} not in [0, {})", f.k, self.t)));
                }
                if f.s.is_zero() {
                    return Err(Error::Invalid("factor exponents must be nonzero".into()));
                }
                factors.push((RootRef { orbit: i, zeta_exp: f.k, q_exp: f.d }, f.s.clone()));
            }
        }
        let domain = Domain::new(group, bases)?;
        FactoredRatFun::new(&domain, lambda, self.t_exp.clone(), factors)
    }
}

fn named_constant(domain: &Arc<Domain>, named: &BTreeMap<String, i64>) -> Result<ConstElem> {
    let g = domain.group();
    let mut exps = vec![BigInt::zero(); g.rank()];
    for (n, e) in named {
        let i = g.index_of(n).ok_or_else(|| Error::Invalid(format!("unknown constant symbol `{n}`")))?;
        exps[i] += *e;
    }
    g.elem(exps)
}

impl FactoredDoc {
    pub fn build(&self, domain: &Arc<Domain>) -> Result<FactoredRatFun> {
        let constant = named_constant(domain, &self.constant)?;
        let mut factors = Vec::new();
        for f in &self.factors {
            let orbit = domain
                .bases()
                .iter()
                .position(|b| b == &f.base)
                .ok_or_else(|| Error::Invalid(format!("unknown base `{}`", f.base)))?;
            factors.push((RootRef { orbit, zeta_exp: f.k, q_exp: f.d }, f.s.clone()));
        }
        FactoredRatFun::new(domain, constant, self.z_power.clone(), factors)
    }
}

impl WitnessDoc {
    pub fn build(&self, domain: &Arc<Domain>) -> Result<Witness> {
        Ok(Witness::new(self.phi.clone(), self.b_factors.build(domain)?))
    }
}

// ---- reports ----

fn rational_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn cyc_value(x: &CycNum) -> Value {
    Value::Array(x.coeffs().iter().map(rational_value).collect())
}

pub fn constant_value(g: &ConstGroup, x: &ConstElem) -> Value {
    let mut m = Map::new();
    for (n, e) in g.named_exponents(x) {
        m.insert(n, int_value(&e));
    }
    Value::Object(m)
}

pub fn factored_value(f: &FactoredRatFun) -> Value {
    let g = f.domain().group();
    let mut obj = Map::new();
    if !g.is_one(f.constant()) {
        obj.insert("constant".into(), constant_value(g, f.constant()));
    }
    obj.insert("z_power".into(), int_value(f.z_power()));
    let factors: Vec<Value> = f
        .factors()
        .iter()
        .map(|(r, s)| json!({"base": f.domain().bases()[r.orbit], "k": r.zeta_exp, "d": r.q_exp, "s": int_value(s)}))
        .collect();
    obj.insert("factors".into(), Value::Array(factors));
    Value::Object(obj)
}

pub fn witness_value(w: &Witness, verified: bool) -> Value {
    json!({
        "phi": ints_value(&w.phi.n),
        "phi_display": w.phi.to_string(),
        "b": w.b.to_string(),
        "b_factors": factored_value(&w.b),
        "M": int_value(w.b.z_power()),
        "verified": verified,
    })
}

pub fn case_detail(case: &Case) -> Value {
    match case {
        Case::One(Case1Relation::QPower { u, v }) => json!({"relation": "q_power", "u": int_value(u), "v": int_value(v)}),
        Case::One(Case1Relation::Torsion { w }) => json!({"relation": "torsion", "w": int_value(w)}),
        Case::Two => Value::Null,
    }
}

fn plan_value(p: &ConstantPlan) -> Value {
    match p {
        ConstantPlan::QPower { u, v } => json!({"kind": "q_power", "u": int_value(u), "v": int_value(v)}),
        ConstantPlan::Torsion { w } => json!({"kind": "torsion", "w": int_value(w)}),
        ConstantPlan::ZeroSum => json!({"kind": "zero_sum"}),
    }
}

pub fn trace_value(tr: &Trace) -> Value {
    json!({
        "a_matrix": tr.summary.a.iter().map(|r| ints_value(r)).collect::<Vec<_>>(),
        "window_n": tr.summary.n_window,
        "d_matrix": tr.d.entries.iter().map(|row| row.iter().map(cyc_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "kernel_basis": tr.kernel_basis.iter().map(|v| ints_value(v)).collect::<Vec<_>>(),
        "n": tr.n.as_ref().map(|v| ints_value(v)),
        "scaled_n": tr.scaled_n.as_ref().map(|v| ints_value(v)),
        "plan": tr.plan.as_ref().map(plan_value),
    })
}

pub fn verdict_value(v: &Verdict, with_trace: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("dependent".into(), Value::Bool(v.dependent));
    obj.insert("case".into(), Value::from(v.case.number()));
    obj.insert("case_detail".into(), case_detail(&v.case));
    obj.insert("zero_rows".into(), json!(v.zero_rows));
    obj.insert("witness".into(), v.witness.as_ref().map_or(Value::Null, |w| witness_value(w, true)));
    if with_trace {
        obj.insert("trace".into(), trace_value(&v.trace));
    }
    Value::Object(obj)
}

// ---- monomial systems ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmDocument {
    pub t: usize,
    #[serde(default)]
    pub equations: Vec<GmEquationDoc>,
    /// Alternative input: coordinate rows on the torus directly.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmEquationDoc {
    /// An index, or `"all"` for the same equation on every idempotent.
    pub idempotent: Value,
    #[serde(with = "crate::json::bigint_vec")]
    pub exponents: Vec<BigInt>,
    #[serde(default)]
    pub rhs: Option<String>,
}

impl GmDocument {
    pub fn system(&self) -> Result<MonomialSystem> {
        let mut eqs = Vec::new();
        for e in &self.equations {
            let rhs = match e.rhs.as_deref() {
                None | Some("idempotent") => Rhs::Idempotent,
                Some("one") => Rhs::One,
                Some(other) => return Err(Error::Invalid(format!("rhs must be \"idempotent\" or \"one\", got {other:?}"))),
            };
            let targets: Vec<usize> = match &e.idempotent {
                Value::String(s) if s == "all" => (0..self.t).collect(),
                Value::Number(n) => vec![n.as_u64().ok_or_else(|| Error::Invalid("idempotent must be a nonnegative integer".into()))? as usize],
                other => return Err(Error::Invalid(format!("idempotent must be an index or \"all\", got {other}"))),
            };
            for i in targets {
                eqs.push(Equation { idempotent: i, exponents: e.exponents.clone(), rhs });
            }
        }
        MonomialSystem::new(self.t, eqs)
    }
}

pub fn group_value(g: &GroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": ints_value(&g.torsion),
        "order": g.order().map(|o| int_value(&o)),
        "elements": g.elements.as_ref().map(|els| els.iter().map(|x| x.to_strings()).collect::<Vec<_>>()),
    })
}

pub fn subgroup_value(s: &Subgroup) -> Value {
    match s {
        Subgroup::Group(g) => {
            let mut v = group_value(g);
            v["kind"] = Value::from("group");
            v
        }
        Subgroup::EmptySolutionSet => json!({"kind": "empty_solution_set"}),
    }
}
