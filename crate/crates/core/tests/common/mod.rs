#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use qdep_core::constgroup::{ConstElem, ConstGroup};
use qdep_core::ratfun::{Domain, FactoredRatFun, RootRef};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

pub fn root(orbit: usize, k: u32, d: i64) -> RootRef {
    RootRef { orbit, zeta_exp: k, q_exp: d }
}

/// Leading constants drawn for random equations.
#[derive(Clone, Copy, Debug)]
pub enum LambdaKind {
    One,
    ZetaPower(i64),
    QPower(i64),
    Free,
    MinusQ,
}

pub const LAMBDA_KINDS: [LambdaKind; 8] = [
    LambdaKind::One,
    LambdaKind::One,
    LambdaKind::ZetaPower(1),
    LambdaKind::ZetaPower(2),
    LambdaKind::QPower(1),
    LambdaKind::QPower(-2),
    LambdaKind::Free,
    LambdaKind::MinusQ,
];

/// Group with `q`, `zeta`, a torsion symbol `omega` of order 2 and a free
/// symbol `c`.
pub fn group(t: u32) -> ConstGroup {
    ConstGroup::builder(t).torsion_symbol("omega", 2).unwrap().free_symbol("c").unwrap().build().unwrap()
}

pub fn lambda(g: &ConstGroup, kind: LambdaKind) -> ConstElem {
    match kind {
        LambdaKind::One => g.one(),
        LambdaKind::ZetaPower(k) => g.zeta_pow(k),
        LambdaKind::QPower(v) => g.q_pow(v),
        LambdaKind::Free => g.generator(g.index_of("c").unwrap()),
        LambdaKind::MinusQ => g.generator(g.index_of("omega").unwrap()).mul(&g.q_pow(1)),
    }
}

pub struct Shape {
    pub t_range: (u32, u32),
    pub max_orbits: usize,
    pub max_factors: usize,
    pub max_s: i64,
    pub d_range: (i64, i64),
    pub t_exp_choices: &'static [i64],
}

pub fn domain(t: u32, orbits: usize) -> Arc<Domain> {
    let bases = (0..orbits).map(|i| format!("r{i}")).collect();
    Domain::new(group(t), bases).unwrap()
}

pub fn random_fun(rng: &mut ChaCha8Rng, shape: &Shape) -> FactoredRatFun {
    let t = rng.gen_range(shape.t_range.0..=shape.t_range.1);
    let r = rng.gen_range(0..=shape.max_orbits);
    let dom = domain(t, r);
    let mut factors = std::collections::BTreeMap::new();
    for orbit in 0..r {
        let count = rng.gen_range(1..=shape.max_factors);
        for _ in 0..count {
            let k = rng.gen_range(0..t);
            let d = rng.gen_range(shape.d_range.0..=shape.d_range.1);
            let mut s = 0;
            while s == 0 {
                s = rng.gen_range(-shape.max_s..=shape.max_s);
            }
            factors.insert(root(orbit, k, d), BigInt::from(s));
        }
    }
    let kind = *LAMBDA_KINDS.choose(rng).unwrap();
    let t_exp = *shape.t_exp_choices.choose(rng).unwrap();
    FactoredRatFun::new(&dom, lambda(dom.group(), kind), t_exp.into(), factors).unwrap()
}

/// Random `b` over the same domain, with a random constant.
pub fn random_b(rng: &mut ChaCha8Rng, dom: &Arc<Domain>, max_s: i64) -> FactoredRatFun {
    let t = dom.t();
    let mut factors = std::collections::BTreeMap::new();
    for orbit in 0..dom.orbit_count() {
        for _ in 0..rng.gen_range(0..=3) {
            let s = rng.gen_range(-max_s..=max_s);
            factors.insert(root(orbit, rng.gen_range(0..t), rng.gen_range(-2..=2)), BigInt::from(s));
        }
    }
    let g = dom.group();
    let c = g.q_pow(rng.gen_range(-3..=3)).mul(&g.zeta_pow(rng.gen_range(0..t as i64)));
    FactoredRatFun::new(dom, c, rng.gen_range(-3..=3).into(), factors).unwrap()
}
