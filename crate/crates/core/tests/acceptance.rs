//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! show up in `cargo test` output.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use qdep_core::constgroup::{Case, Case1Relation, ConstGroup};
use qdep_core::criterion::{build_d, decide, dft_identity_row, exponent_summary};
use qdep_core::exactalg::{CycNum, IntMatrix};
use qdep_core::gm_subgroups::group_structure;
use qdep_core::pseudofield::{
    constants_subring, equivariant_lifts, f_sigma1, gamma_mu, is_equivariant, is_simple, root_of_unity_quotient,
    taylor_hom, x_power, Action, Generator, PfElement, Pseudofield, RingMap,
};
use qdep_core::ratfun::{Domain, FactoredRatFun, MultFunction};
use qdep_core::theta::{self, RelationKind, ThetaParams};
use qdep_core::witness::{brute_force_oracle, verify};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{big, domain, random_b, random_fun, root, Shape};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let dom = Domain::new(ConstGroup::new(2), vec!["one".into()]).map_err(|e| e.to_string())?;
    let a = FactoredRatFun::new(&dom, dom.group().one(), 0.into(), [(root(0, 1, 0), 1.into()), (root(0, 0, 0), (-1).into())])
        .map_err(|e| e.to_string())?;
    let v = decide(&a).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(v.dependent, || "reported independent".into())?;
    check(v.case.number() == 1, || format!("case {:?}", v.case))?;
    check(v.zero_rows == vec![0], || format!("zero rows {:?}", v.zero_rows))?;
    let w = v.witness.ok_or("no witness")?;
    check(verify(&a, &w), || "witness fails verification".into())?;
    let image = w.phi.apply(&a).map_err(|e| e.to_string())?;
    check(image.is_one(), || format!("phi(a) = {image}"))?;
    check(w.b.is_one(), || format!("b = {}", w.b))?;
    within(elapsed, Duration::from_millis(50))?;
    Ok(format!("phi = {}, b = {}, {elapsed:?}", w.phi, w.b))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for t in [2u32, 3, 4, 6] {
        let start = Instant::now();
        let g = ConstGroup::builder(t).torsion_symbol("omega", 2).and_then(|b| b.build()).map_err(|e| e.to_string())?;
        let lambda = g.generator(g.index_of("omega").unwrap()).mul(&g.q_pow(1));
        let dom = Domain::new(g, vec![]).map_err(|e| e.to_string())?;
        let a = FactoredRatFun::new(&dom, lambda, 1.into(), []).map_err(|e| e.to_string())?;
        let v = decide(&a).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(v.dependent && v.case == Case::Two, || format!("t={t}: dependent={} case={:?}", v.dependent, v.case))?;
        let w = v.witness.ok_or(format!("t={t}: no witness"))?;
        let mut expected = vec![0i64; t as usize];
        expected[0] = t as i64;
        expected[1] = -(t as i64);
        check(w.phi == MultFunction::from_i64(&expected), || format!("t={t}: phi = {}", w.phi))?;
        check(w.b.is_one(), || format!("t={t}: b = {}", w.b))?;
        check(verify(&a, &w), || format!("t={t}: witness fails verification"))?;
        within(elapsed, Duration::from_millis(50))?;
        notes.push(format!("t={t} {elapsed:?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut independent = 0;
    for _ in 0..100 {
        let t = rng.gen_range(2..=8u32);
        let r = rng.gen_range(1..=4usize);
        let dom = domain(t, r);
        let g = dom.group();
        let factors: Vec<_> = (0..r)
            .map(|i| {
                let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                (root(i, rng.gen_range(0..t), rng.gen_range(-3..=3)), BigInt::from(s))
            })
            .collect();
        let lambda = g.zeta_pow(rng.gen_range(0..t as i64)).mul(&g.q_pow(rng.gen_range(-2..=2)));
        let a = FactoredRatFun::new(&dom, lambda, rng.gen_range(-1..=1).into(), factors).map_err(|e| e.to_string())?;
        let v = decide(&a).map_err(|e| e.to_string())?;
        if v.dependent {
            return Err(format!("dependent verdict for {a}"));
        }
        independent += 1;
    }
    Ok(format!("{independent}/100 independent"))
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..500 {
        let t = rng.gen_range(2..=8u32);
        let row: Vec<BigInt> = (0..t).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
        check(dft_identity_row(t, &row), || format!("row {i}: t={t} {row:?}"))?;
    }
    Ok("500/500 rows".into())
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Outcome {
    let shape = Shape {
        t_range: (2, 4),
        max_orbits: 2,
        max_factors: 3,
        max_s: 2,
        d_range: (-1, 1),
        t_exp_choices: &[0, 0, 0, 1, -1],
    };
    let start = Instant::now();
    let mut dependent = 0;
    for i in 0..200 {
        let a = random_fun(rng, &shape);
        let t = a.domain().t();
        let v = decide(&a).map_err(|e| format!("input {i} ({a}): {e}"))?;
        let oracle = brute_force_oracle(&a, 2 * t);
        if v.dependent != oracle.is_some() {
            return Err(format!(
                "input {i}: {a} with t={t}: decide says {}, oracle {:?}",
                v.dependent,
                oracle.map(|w| w.phi.to_string())
            ));
        }
        if let Some(w) = &v.witness {
            check(verify(&a, w), || format!("input {i}: synthesised witness fails"))?;
            dependent += 1;
        }
        if let Some(w) = &oracle {
            check(verify(&a, w), || format!("input {i}: oracle witness fails"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("200 inputs, {dependent} dependent, {elapsed:?}"))
}

fn criterion_6() -> Outcome {
    let m = IntMatrix::circulant(&big(&[1, 0, 1]));
    let gs = group_structure(&m, 3);
    check(gs.free_rank == 0, || format!("free rank {}", gs.free_rank))?;
    check(gs.torsion == big(&[2]), || format!("torsion {:?}", gs.torsion))?;
    let elements: Vec<Vec<String>> = gs.elements.ok_or("no element list")?.iter().map(|e| e.to_strings()).collect();
    let expected = vec![vec!["1"; 3], vec!["-1"; 3]];
    check(elements == expected, || format!("elements {elements:?}"))?;
    Ok("G = {(1,1,1), (-1,-1,-1)}".into())
}

fn criterion_7() -> Outcome {
    let pf = root_of_unity_quotient(4, &[("sigma", 2), ("rho", 1)]).map_err(|e| e.to_string())?;
    let c = constants_subring(&pf, &[0]).map_err(|e| e.to_string())?;
    check(c.dimension == Some(2), || format!("dimension {:?}", c.dimension))?;
    check(!c.is_field(), || "constants form a field".into())?;
    let [e0, e1] = c.idempotents.as_slice() else {
        return Err(format!("{} idempotents", c.idempotents.len()));
    };
    check(e0.is_idempotent() && e1.is_idempotent(), || "not idempotent".into())?;
    check(e0.mul(e1).is_zero() && e0.add(e1) == pf.one(), || "not a complete orthogonal pair".into())?;
    check(*e0 != pf.one() && !e0.is_zero(), || "trivial idempotent".into())?;
    check(c.contains(&x_power(4, 2)), || "x^2 is not a constant".into())?;
    check(is_simple(&pf, &[0, 1]), || "<sigma, rho> is not transitive".into())?;
    Ok(format!("dimension 2, idempotents {e0} and {e1}, transitive"))
}

fn gaussian(conjugation: bool) -> Pseudofield {
    let gens = if conjugation {
        vec![Generator { name: "sigma".into(), action: Action { perm: vec![0], autos: vec![3] }, order: Some(2) }]
    } else {
        vec![]
    };
    Pseudofield::new(4, 1, gens).unwrap()
}

fn rational() -> Pseudofield {
    Pseudofield::new(1, 1, vec![]).unwrap()
}

/// Every element with coordinates from a small value set, or a seeded sample
/// of them when the full grid is too large.
fn element_samples(m: u32, n: usize, rng: &mut ChaCha8Rng) -> Vec<PfElement> {
    let mut values = vec![CycNum::zero(m), CycNum::one(m), CycNum::from_integer(m, (-1).into()), CycNum::from_integer(m, 2.into())];
    if m > 2 {
        values.push(CycNum::zeta_pow(m, 1));
        values.push(&CycNum::one(m) + &CycNum::zeta_pow(m, 1));
    }
    let total = (values.len() as f64).powi(n as i32);
    if total <= 5000.0 {
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            out.push(PfElement { coords: digits.iter().map(|&d| values[d].clone()).collect() });
            let mut i = 0;
            while i < n {
                digits[i] += 1;
                if digits[i] < values.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == n {
                return out;
            }
        }
    }
    (0..3000)
        .map(|_| PfElement { coords: (0..n).map(|_| values[rng.gen_range(0..values.len())].clone()).collect() })
        .collect()
}

/// Checks the Taylor map for `A -> B` against every element sample.
fn taylor_case(a: &Pseudofield, b: &Pseudofield, orders: &[u32], phi: &RingMap, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let f = f_sigma1(b, orders).map_err(|e| e.to_string())?;
    let samples = element_samples(a.base_order(), a.components(), rng);
    let layout = f.layout().unwrap().clone();
    for mu in layout.elements() {
        let big_phi = taylor_hom(a, phi, &f, &mu).map_err(|e| e.to_string())?;
        check(is_equivariant(a, &big_phi, &f), || format!("Phi_{mu:?} is not equivariant"))?;
        for x in &samples {
            let y = big_phi.apply(x);
            check(gamma_mu(&f, &mu, &y).unwrap() == phi.apply(x), || format!("gamma o Phi != phi at mu={mu:?}, x={x}"))?;
            for (j, g) in a.generators().iter().enumerate() {
                let lhs = big_phi.apply(&g.action.apply(x));
                let rhs = f.act(j, &y).unwrap();
                check(lhs == rhs, || format!("Phi_{mu:?} does not commute with {} at {x}", g.name))?;
            }
        }
        if let Ok(lifts) = equivariant_lifts(a, phi, &f, &mu, 2_000_000) {
            check(lifts == vec![big_phi.clone()], || format!("{} equivariant lifts at mu={mu:?}", lifts.len()))?;
        }
    }
    Ok(samples.len())
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for orders in [vec![2u32], vec![4], vec![2, 2]] {
        for conj in [false, true] {
            // A = F_{Sigma1}(B) itself; phi ranges over the Sigma0-equivariant
            // evaluations, twisted by every Galois automorphism of the base
            let b = if conj { gaussian(true) } else { rational() };
            let a = f_sigma1(&b, &orders).map_err(|e| e.to_string())?;
            let base_autos: &[u32] = if conj { &[1, 3] } else { &[1] };
            for c in 0..a.components() {
                for &auto in base_autos {
                    let phi = RingMap::new(vec![c], vec![auto], &a, &b).map_err(|e| e.to_string())?;
                    checked += taylor_case(&a, &b, &orders, &phi, rng)?;
                }
            }
        }
    }
    // a ring that is not of the form F(B): Q(i)[x]/(x^4 - 1) with x -> ix,
    // mapped to Q(i) by x -> i^c
    let a = root_of_unity_quotient(4, &[("rho", 1)]).map_err(|e| e.to_string())?;
    let b = gaussian(false);
    for c in 0..4 {
        let phi = RingMap::projection(&a, &b, c).map_err(|e| e.to_string())?;
        checked += taylor_case(&a, &b, &[4], &phi, rng)?;
    }
    Ok(format!("{checked} sampled elements over Z/2, Z/4, Z/2+Z/2"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, 0.0f64, f64::INFINITY);
    for q in [2.0, 3.0] {
        for t in [3u32, 4] {
            let p = ThetaParams::with_default_samples(Complex64::new(q, 0.0), 40, 32, t).map_err(|e| e.to_string())?;
            let functional = theta::functional_eq_residual(&p);
            check(functional < 1e-10, || format!("q={q} t={t}: functional residual {functional:e}"))?;
            worst.0 = worst.0.max(functional);
            let shifted = if t == 3 { RelationKind::Shifted { u: 1, v: 0, n: 3 } } else { RelationKind::Shifted { u: 2, v: 0, n: 2 } };
            for kind in [RelationKind::Second, shifted, RelationKind::Power] {
                let r = theta::relation_check(kind, t, &p).map_err(|e| e.to_string())?;
                check(r < 1e-9, || format!("q={q} t={t} {kind:?}: residual {r:e}"))?;
                let ctrl = theta::control_exponents(kind, t).map_err(|e| e.to_string())?;
                let c = theta::phi_invariance_residual(&p, &ctrl);
                check(c > 1e-2, || format!("q={q} t={t} {kind:?}: control residual {c:e}"))?;
                worst.1 = worst.1.max(r);
                worst.2 = worst.2.min(c);
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "max functional {:.1e}, max relation {:.1e}, min control {:.2}, {elapsed:?}",
        worst.0, worst.1, worst.2
    ))
}

// property suites

fn ratfun_suite(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let shape = Shape { t_range: (2, 6), max_orbits: 3, max_factors: 4, max_s: 3, d_range: (-3, 3), t_exp_choices: &[-2, 0, 1, 3] };
    for i in 0..1000 {
        let f = random_fun(rng, &shape);
        let dom = f.domain().clone();
        let t = dom.t();
        let g = random_b(rng, &dom, 3);
        for r in 0..t {
            check(f.sigma_q().sigma_zeta(r) == f.sigma_zeta(r).sigma_q(), || format!("iteration {i}: sigma_q and sigma_zeta^{r} do not commute on {f}"))?;
        }
        let n: Vec<i64> = (0..t).map(|_| rng.gen_range(-3..=3)).collect();
        let phi = MultFunction::from_i64(&n);
        let one = BigInt::from(1);
        let fg = f.combine(&g, &one, &one).unwrap();
        let lhs = phi.apply(&fg).unwrap();
        let rhs = phi.apply(&f).unwrap().combine(&phi.apply(&g).unwrap(), &one, &one).unwrap();
        check(lhs == rhs, || format!("iteration {i}: phi not multiplicative"))?;
        for b in [&f, &g] {
            let ratio = b.sigma_q_ratio();
            let mut sums: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
            for (root, s) in ratio.factors() {
                *sums.entry((root.orbit, root.zeta_exp)).or_default() += s;
            }
            check(sums.values().all(Zero::is_zero), || format!("iteration {i}: per-orbit sums of sigma_q(b)/b = {sums:?}"))?;
            check(ratio.z_power().is_zero(), || format!("iteration {i}: z-power in sigma_q(b)/b"))?;
            check(ratio.is_constant() == b.factors().is_empty(), || format!("iteration {i}: constancy of sigma_q({b})/b"))?;
            if ratio.is_constant() {
                let m = dom.group().q_log(ratio.constant());
                check(m.as_ref() == Some(b.z_power()), || format!("iteration {i}: constant of sigma_q(b)/b is not q^M"))?;
            }
        }
    }
    Ok(())
}

fn witness_suite(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let shape = Shape { t_range: (2, 6), max_orbits: 3, max_factors: 3, max_s: 3, d_range: (-2, 2), t_exp_choices: &[0, 0, 0, 1, -1] };
    let small = Shape { t_range: (2, 4), max_orbits: 2, max_factors: 2, max_s: 2, d_range: (-1, 1), t_exp_choices: &[0, 0, 1] };
    for i in 0..1000 {
        // soundness and determinism on random inputs
        let a = random_fun(rng, &shape);
        let v = decide(&a).map_err(|e| format!("iteration {i}: {e}"))?;
        if let Some(w) = &v.witness {
            check(verify(&a, w), || format!("iteration {i}: witness for {a} fails"))?;
            check(!w.phi.is_trivial(), || format!("iteration {i}: trivial phi"))?;
            let again = decide(&a).unwrap().witness;
            check(again.as_ref() == Some(w), || format!("iteration {i}: witness not deterministic"))?;
            let mut sums: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
            for (root, s) in w.b.sigma_q_ratio().factors() {
                *sums.entry((root.orbit, root.zeta_exp)).or_default() += s;
            }
            check(sums.values().all(Zero::is_zero), || format!("iteration {i}: per-orbit sums of sigma_q(b)/b"))?;
            let image = w.phi.apply(&a).unwrap();
            let mut image_sums: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
            for (root, s) in image.factors() {
                *image_sums.entry((root.orbit, root.zeta_exp)).or_default() += s;
            }
            check(image_sums.values().all(Zero::is_zero), || format!("iteration {i}: per-orbit sums of phi(a)"))?;
        }
        // inputs dependent by construction: a = sigma_q(b)/b
        let b = random_b(rng, a.domain(), 3);
        let c = b.sigma_q_ratio();
        let vc = decide(&c).map_err(|e| format!("iteration {i}: {e}"))?;
        check(vc.dependent, || format!("iteration {i}: sigma_q(b)/b = {c} reported independent"))?;
        check(verify(&c, vc.witness.as_ref().unwrap()), || format!("iteration {i}: witness for sigma_q(b)/b fails"))?;
        // one-sided oracle agreement at bound 1
        let s = random_fun(rng, &small);
        let vs = decide(&s).map_err(|e| format!("iteration {i}: {e}"))?;
        if let Some(w) = brute_force_oracle(&s, 1) {
            check(vs.dependent, || format!("iteration {i}: oracle found {} for {s} but decide says independent", w.phi))?;
        }
    }
    Ok(())
}

fn criterion_suite(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let shape = Shape { t_range: (2, 8), max_orbits: 3, max_factors: 4, max_s: 3, d_range: (-3, 3), t_exp_choices: &[0, 0, 1] };
    for i in 0..1000 {
        let f = random_fun(rng, &shape);
        let dom = f.domain().clone();
        let t = dom.t();
        let summary = exponent_summary(&f);
        for row in &summary.a {
            check(dft_identity_row(t, row), || format!("iteration {i}: DFT identity fails for {row:?}"))?;
        }
        let d = build_d(&summary);
        let zero = d.zero_rows();
        let degrees_vanish = summary.a.iter().all(|row| row.iter().sum::<BigInt>().is_zero());
        check(zero.contains(&0) == degrees_vanish, || format!("iteration {i}: row 0 vs total degrees"))?;
        // zero rows are closed under k -> uk for u a unit mod t
        for &k in &zero {
            for u in (1..t as usize).filter(|u| num_integer::gcd(*u, t as usize) == 1) {
                check(zero.contains(&((k * u) % t as usize)), || format!("iteration {i}: zero rows {zero:?} not Galois stable"))?;
            }
        }
        // per-orbit zero rows intersect to the global ones
        let mut meet: Vec<usize> = (0..t as usize).collect();
        for row in &summary.a {
            let single = build_d(&qdep_core::criterion::ExponentSummary::from_rows(t, vec![row.clone()]));
            let z = single.zero_rows();
            meet.retain(|k| z.contains(k));
        }
        check(meet == zero, || format!("iteration {i}: per-orbit zero rows do not intersect to {zero:?}"))?;
        let v = decide(&f).map_err(|e| format!("iteration {i}: {e}"))?;
        // relabelling and global shifts leave the verdict alone
        let r = dom.orbit_count();
        let mut perm: Vec<usize> = (0..r).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
        let mut bases = vec![String::new(); r];
        for (old, &new) in perm.iter().enumerate() {
            bases[new] = dom.bases()[old].clone();
        }
        let relabelled_dom = Domain::new(dom.group().clone(), bases).unwrap();
        let relabelled = f.relabel_orbits(&relabelled_dom, &perm).unwrap();
        let shifted = f.shift_window(rng.gen_range(-4..=4));
        for (name, g) in [("relabelled", relabelled), ("shifted", shifted)] {
            let w = decide(&g).map_err(|e| format!("iteration {i}: {e}"))?;
            check(w.dependent == v.dependent && w.case == v.case && w.zero_rows == v.zero_rows, || {
                format!("iteration {i}: {name} input changes the verdict of {f}")
            })?;
        }
        // pairwise distinct single factors with finite-order lambda
        let g = dom.group();
        let lam = g.zeta_pow(rng.gen_range(0..t as i64));
        let singles: Vec<_> = (0..r)
            .map(|o| (root(o, rng.gen_range(0..t), rng.gen_range(-2..=2)), BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 })))
            .collect();
        if r > 0 {
            let p = FactoredRatFun::new(&dom, lam, 0.into(), singles).unwrap();
            let vp = decide(&p).unwrap();
            check(!vp.dependent && matches!(vp.case, Case::One(Case1Relation::Torsion { .. })), || {
                format!("iteration {i}: pairwise input {p} not independent in case 1")
            })?;
        }
    }
    Ok(())
}

fn criterion_10(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut times = Vec::new();
    for (name, suite) in [
        ("ratfun", ratfun_suite as fn(&mut ChaCha8Rng) -> Result<(), String>),
        ("witness", witness_suite),
        ("criterion", criterion_suite),
    ] {
        let s = Instant::now();
        suite(rng).map_err(|e| format!("{name}: {e}"))?;
        times.push(format!("{name} {:?}", s.elapsed()));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!("3 x 1000 iterations ({})", times.join(", ")))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("mobius example", Box::new(|_| criterion_1())),
        ("theta equation", Box::new(|_| criterion_2())),
        ("pairwise distinct orbits", Box::new(criterion_3)),
        ("DFT identity", Box::new(criterion_4)),
        ("oracle agreement", Box::new(criterion_5)),
        ("Gm circulant subgroup", Box::new(|_| criterion_6())),
        ("quartic pseudofield", Box::new(|_| criterion_7())),
        ("Taylor homomorphism", Box::new(criterion_8)),
        ("theta numerics", Box::new(|_| criterion_9())),
        ("property suites", Box::new(criterion_10)),
    ];
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        // every criterion gets its own stream so running one alone reproduces it
        let mut local = ChaCha8Rng::seed_from_u64(rng.gen::<u64>() ^ i as u64);
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        match run(&mut local) {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
