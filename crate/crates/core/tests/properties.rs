use proptest::prelude::*;

use pgalois::commands::{emit_report, run, Command, RunOptions};
use pgalois::coring::{Coring, CoringElement};
use pgalois::dual::DualRing;
use pgalois::field::Fp;
use pgalois::instance::{parse_instance, InstanceDocument};
use pgalois::linalg::Matrix;
use pgalois::morita::morita_context;
use pgalois::random::{corpus, random_global};

fn matrix() -> impl Strategy<Value = Matrix> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..6, 1usize..6).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(prop::collection::vec(0..p, c), r)
            .prop_map(move |rows| Matrix::from_rows(Fp::new(p).unwrap(), c, &rows).unwrap())
    })
}

fn random_coring_element(c: &Coring, coeffs: &[u64]) -> CoringElement {
    let v: Vec<u64> = (0..c.dim()).map(|k| coeffs.get(k).copied().unwrap_or(0)).collect();
    c.from_coordinates(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.rows(), m.cols());
        for r in 0..k.rows() {
            prop_assert!(m.mul_vec(k.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_recovers_a_preimage(m in matrix(), seed in any::<u64>()) {
        let p = m.field().modulus();
        let x: Vec<u64> = (0..m.cols()).map(|i| (seed >> (3 * i)) % p).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix()) {
        if let Some(inv) = m.inverse() {
            let id = Matrix::identity(m.field(), m.rows());
            prop_assert_eq!(m.mul(&inv), id.clone());
            prop_assert_eq!(inv.mul(&m), id);
        } else {
            prop_assert!(!m.is_square() || m.rank() < m.rows());
        }
    }

    #[test]
    fn field_inverse(p in prop::sample::select(vec![2u64, 3, 5, 7, 65_521]), a in 1u64..65_521) {
        let f = Fp::new(p).unwrap();
        let a = f.reduce(a);
        prop_assume!(a != 0);
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn instance_text_round_trip(seed in any::<u64>()) {
        let inst = corpus(seed, 1).remove(0);
        let t = inst.pa.invariants().unwrap();
        let text = InstanceDocument::from_partial_action(&inst.pa, Some(&t)).to_text();
        let doc = parse_instance(&text).unwrap();
        prop_assert_eq!(&doc.to_text(), &text);
        let built = doc.build().unwrap();
        prop_assert_eq!(built.pa, inst.pa);
        prop_assert_eq!(built.subring.unwrap(), t);

        let global = InstanceDocument::from_global_action(&inst.global, &inst.idempotent).to_text();
        let doc = parse_instance(&global).unwrap();
        prop_assert_eq!(&doc.to_text(), &global);
        prop_assert_eq!(doc.build().unwrap().pa, corpus(seed, 1).remove(0).pa);
    }

    #[test]
    fn global_actions_restrict_to_valid_partial_actions(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (ga, _, _) = random_global(&mut rng);
        prop_assert!(ga.validate().is_ok());
        let (_, pa) = ga.restrict(&ga.amb.unit()).unwrap();
        prop_assert!(pa.is_global());
        prop_assert!(pa.validate().is_ok());
    }

    #[test]
    fn coring_structure_maps_are_bimodule_maps(seed in any::<u64>(), coeffs in prop::collection::vec(0u64..5, 24)) {
        let inst = corpus(seed, 1).remove(0);
        let c = Coring::new(inst.pa.clone());
        let p = inst.pa.field().modulus();
        let coeffs: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
        let x = random_coring_element(&c, &coeffs);
        let a = inst.pa.algebra().element(&coeffs[..inst.pa.algebra().dim()]).unwrap();
        let d = c.comultiply(&x);
        prop_assert_eq!(c.counit_left(&d), x.clone());
        prop_assert_eq!(c.counit_right(&d), x.clone());
        prop_assert_eq!(c.comultiply_left(&d), c.comultiply_right(&d));
        prop_assert_eq!(c.comultiply(&c.right_act(&x, &a)), c.tp_right_act(&d, &a));
        prop_assert_eq!(c.comultiply(&c.left_act(&a, &x)), c.tp_left_act(&a, &d));
    }

    #[test]
    fn dual_ring_is_associative_on_random_elements(seed in any::<u64>(), coeffs in prop::collection::vec(0u64..5, 72)) {
        let inst = corpus(seed, 1).remove(0);
        let d = DualRing::new(&inst.pa).unwrap();
        let p = inst.pa.field().modulus();
        let n = d.dim();
        let pick = |k: usize| d.unflatten(&(0..n).map(|i| coeffs[(k * n + i) % coeffs.len()] % p).collect::<Vec<_>>());
        let (x, y, z) = (pick(0), pick(1), pick(2));
        prop_assert_eq!(d.mul(&d.mul(&x, &y), &z), d.mul(&x, &d.mul(&y, &z)));
        prop_assert_eq!(d.mul(&d.one(), &x), x.clone());
        prop_assert_eq!(d.mul(&x, &d.one()), x);
    }

    #[test]
    fn morita_context_on_random_instances(seed in any::<u64>()) {
        let inst = corpus(seed, 1).remove(0);
        let ctx = morita_context(&inst.pa).unwrap();
        let rep = ctx.check();
        prop_assert!(rep.is_ok(), "{}", rep);
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let inst = corpus(seed, 1).remove(0);
        let built = InstanceDocument::from_partial_action(&inst.pa, None).build().unwrap();
        for cmd in [Command::Validate, Command::Galois, Command::Morita, Command::Dashboard] {
            let a = emit_report(&run(cmd, &built, &RunOptions::default()).unwrap()).unwrap();
            let b = emit_report(&run(cmd, &built, &RunOptions::default()).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
