//! Randomised invariants across the algebra kernels, the constant group, the
//! subgroup solver and the pseudofield layer.

mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qdep_core::constgroup::{Case, Case1Relation, ConstGroup};
use qdep_core::criterion::decide;
use qdep_core::exactalg::{integer_kernel, smith_normal_form, CycNum, IntMatrix};
use qdep_core::gm_subgroups::{
    group_structure, reduce_to_phi, satisfies, Equation, MonomialSystem, PhiFunction, Rhs,
};
use qdep_core::pseudofield::{constants_subring, f_sigma1, Pseudofield};
use qdep_core::ratfun::{Domain, FactoredRatFun};
use qdep_core::theta::{phi_invariance_residual, ThetaParams};

use common::big;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |v| IntMatrix::from_rows(cols, &v.chunks(cols).map(|c| c.to_vec()).collect::<Vec<_>>()))
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn cyc(t: u32) -> impl Strategy<Value = CycNum> {
    proptest::collection::vec(-4i64..=4, t as usize).prop_map(move |coeffs| {
        coeffs.iter().enumerate().fold(CycNum::zero(t), |acc, (i, &c)| {
            &acc + &CycNum::zeta_pow(t, i as i64).scale(&BigInt::from(c).into())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn snf_is_a_unimodular_diagonalisation(m in any_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.s.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        let d = snf.diagonal();
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in any_matrix()) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            prop_assert!(v.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn cyclotomic_ring_axioms((t, a, b, c) in (2u32..=9).prop_flat_map(|t| (Just(t), cyc(t), cyc(t), cyc(t)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let z = CycNum::zeta_pow(t, 1);
        prop_assert!(z.pow(t as u64).is_one());
        for k in 1..t {
            prop_assert!(!z.pow(k as u64).is_one());
        }
    }

    #[test]
    fn const_equal_is_a_congruence(
        t in 2u32..=6,
        x in proptest::collection::vec(-5i64..=5, 4),
        y in proptest::collection::vec(-5i64..=5, 4),
        shift in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let g = ConstGroup::builder(t).torsion_symbol("w", 3).unwrap().free_symbol("c").unwrap().build().unwrap();
        let xe = g.elem(big(&x)).unwrap();
        let ye = g.elem(big(&y)).unwrap();
        // x' differs from x by a relation: w^3 and zeta^t are trivial
        let rel = g.elem(big(&[0, shift[0] * t as i64, shift[1] * 3, 0])).unwrap();
        let x2 = xe.mul(&rel);
        prop_assert!(g.const_equal(&xe, &xe).unwrap());
        prop_assert!(g.const_equal(&xe, &x2).unwrap());
        prop_assert!(g.const_equal(&x2, &xe).unwrap());
        prop_assert!(g.const_equal(&xe.mul(&ye), &x2.mul(&ye)).unwrap());
        let c = g.canonical(&xe);
        prop_assert_eq!(g.canonical(&c), c.clone());
        prop_assert!(g.const_equal(&c, &xe).unwrap());
    }

    #[test]
    fn classify_lambda_relations_hold(t in 2u32..=6, qe in -4i64..=4, ze in 0i64..6, we in 0i64..3, ce in -1i64..=1, t_exp in -1i64..=1) {
        let g = ConstGroup::builder(t).torsion_symbol("w", 3).unwrap().free_symbol("c").unwrap().build().unwrap();
        let lambda = g.elem(big(&[qe, ze, we, ce])).unwrap();
        match g.classify_lambda(&lambda, &BigInt::from(t_exp)).unwrap() {
            Case::One(rel) => {
                prop_assert_eq!(t_exp, 0);
                match rel {
                    Case1Relation::QPower { u, v } => {
                        prop_assert!(!u.is_zero() && !v.is_zero());
                        prop_assert!(g.const_equal(&lambda.pow(&u), &g.q_pow(v)).unwrap());
                    }
                    Case1Relation::Torsion { w } => prop_assert!(g.is_one(&lambda.pow(&w))),
                }
            }
            Case::Two => prop_assert!(t_exp != 0 || ce != 0),
        }
    }

    #[test]
    fn enumerated_elements_satisfy_their_equations(t in 2usize..=4, seed in proptest::collection::vec(-3i64..=3, 16)) {
        let rows: Vec<Vec<i64>> = seed.chunks(4).take(t).map(|c| c[..t].to_vec()).collect();
        let m = IntMatrix::from_rows(t, &rows);
        let gs = group_structure(&m, t);
        prop_assert_eq!(gs.free_rank, t - m.rank());
        if let Some(elements) = &gs.elements {
            prop_assert_eq!(BigInt::from(elements.len()), gs.order().unwrap());
            prop_assert_eq!(BigInt::from(elements.len()), m.determinant().abs());
            for x in elements {
                prop_assert!(satisfies(&m, x));
            }
        }
    }

    #[test]
    fn reduction_preserves_the_solution_group(
        t in 2usize..=4,
        eqs in proptest::collection::vec((0usize..4, proptest::collection::vec(-3i64..=3, 4)), 1..=4),
    ) {
        let equations: Vec<Equation> = eqs
            .iter()
            .take(t)
            .map(|(i, k)| Equation { idempotent: i % t, exponents: big(&k[..t]), rhs: Rhs::Idempotent })
            .collect();
        let sys = MonomialSystem::new(t, equations).unwrap();
        let phi = reduce_to_phi(&sys).unwrap();
        let before = group_structure(&sys.matrix(), t);
        let after = group_structure(&phi.matrix().unwrap(), t);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn regular_action_of_f_sigma1(orders in proptest::collection::vec(1u32..=4, 1..=2)) {
        let base = Pseudofield::new(1, 1, vec![]).unwrap();
        let f = f_sigma1(&base, &orders).unwrap();
        let layout = f.layout().unwrap().clone();
        let size = layout.group_size();
        prop_assert_eq!(f.components(), size);
        // transitive and free: each group element moves component 0 somewhere
        // different, and only the identity fixes anything
        let mut images = std::collections::BTreeSet::new();
        for mu in layout.elements() {
            let act = f.sigma1_action(0, &mu).unwrap();
            images.insert(act.perm[0]);
            if mu.iter().any(|&x| x != 0) {
                prop_assert!((0..size).all(|c| act.perm[c] != c));
            }
        }
        prop_assert_eq!(images.len(), size);
        let all: Vec<usize> = (0..f.generators().len()).collect();
        let c = constants_subring(&f, &[]).unwrap();
        let sum = c.idempotents.iter().fold(f.zero(), |acc, e| acc.add(e));
        prop_assert_eq!(sum, f.one());
        let c = constants_subring(&f, &all).unwrap();
        prop_assert_eq!(c.dimension, Some(1));
    }
}

#[test]
fn idempotents_are_permuted_by_the_action() {
    let pf = qdep_core::pseudofield::root_of_unity_quotient(4, &[("sigma", 2), ("rho", 1)]).unwrap();
    let c = constants_subring(&pf, &[0]).unwrap();
    let sum = c.idempotents.iter().fold(pf.zero(), |acc, e| acc.add(e));
    assert_eq!(sum, pf.one());
    for e in &c.idempotents {
        let moved = pf.act(1, e).unwrap();
        assert!(c.idempotents.contains(&moved));
    }
}

#[test]
fn dependent_phi_cuts_out_a_proper_subgroup() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let shape = common::Shape { t_range: (2, 5), max_orbits: 2, max_factors: 3, max_s: 2, d_range: (-1, 1), t_exp_choices: &[0, 1] };
    let mut seen = 0;
    for _ in 0..300 {
        let a = common::random_fun(&mut rng, &shape);
        if let Some(w) = decide(&a).unwrap().witness {
            let t = w.phi.len();
            let gs = PhiFunction::uniform(&w.phi.n).subgroup();
            match gs {
                qdep_core::gm_subgroups::Subgroup::Group(g) => assert!(g.free_rank < t),
                other => panic!("unexpected {other:?}"),
            }
            seen += 1;
        }
    }
    assert!(seen > 30);
}

#[test]
fn theta_witness_is_numerically_invariant() {
    for t in [2u32, 3, 4] {
        let g = ConstGroup::builder(t).torsion_symbol("omega", 2).unwrap().build().unwrap();
        let lambda = g.generator(g.index_of("omega").unwrap()).mul(&g.q_pow(1));
        let dom = Domain::new(g, vec![]).unwrap();
        let a = FactoredRatFun::new(&dom, lambda, 1.into(), []).unwrap();
        let w = decide(&a).unwrap().witness.unwrap();
        assert!(w.b.is_one());
        let n: Vec<i64> = w.phi.n.iter().map(|x| i64::try_from(x).unwrap()).collect();
        for q in [2.0, 3.0] {
            let p = ThetaParams::with_default_samples(Complex64::new(q, 0.0), 40, 16, t).unwrap();
            assert!(phi_invariance_residual(&p, &n) < 1e-9);
        }
    }
}
