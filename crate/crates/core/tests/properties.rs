use mrba::algebra::{adjoint_bimodule, graph_subalgebra_check, AlgebraRep, BimoduleRep, MRBStructure};
use mrba::cochain::{Cochain, CochainPair};
use mrba::cohomology::{hochschild_coboundary, mrba_coboundary, mrba_matrix, twisted_coboundary, PsiConvention};
use mrba::document::{parse, serialize, InstanceDocument};
use mrba::extensions::{canonical_section, cocycle_from_section, extension_from_cocycle, theta_coboundary, Section};
use mrba::instances::*;
use mrba::linalg::{RatMatrix, Rational};
use mrba::Execution;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

fn unit_or_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(Rational::one()), Just(Rational::from(-1)), rational()]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(rational(), rows * cols)
        .prop_map(move |v| RatMatrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

fn small_instance() -> impl Strategy<Value = (MRBStructure, BimoduleRep)> {
    (0usize..3).prop_map(|i| {
        let s = [k1_mrb(), d2_mrb(), n2_mrb()][i].clone();
        let m = adjoint_bimodule(&s).unwrap();
        (s, m)
    })
}

fn cochain(k: usize, n: usize, m: usize) -> impl Strategy<Value = Cochain> {
    prop::collection::vec(rational(), n.pow(k as u32) * m).prop_map(move |v| Cochain::from_coeffs(k, n, m, v).unwrap())
}

fn instance_and_cochain(k: usize) -> impl Strategy<Value = (MRBStructure, BimoduleRep, Cochain)> {
    small_instance().prop_flat_map(move |(s, m)| {
        let (n, dm) = (s.dim(), m.dim());
        cochain(k, n, dm).prop_map(move |f| (s.clone(), m.clone(), f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(x in rational()) {
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn kernel_basis_is_a_basis(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
        prop_assert_eq!(RatMatrix::from_columns(m.cols(), &kernel).unwrap().rank(), kernel.len());
    }

    #[test]
    fn solve_finds_a_preimage(
        (m, x) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), prop::collection::vec(rational(), c)))
    ) {
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rref_preserves_the_row_space(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (reduced, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        let stacked = m.vstack(&reduced).unwrap();
        prop_assert_eq!(stacked.rank(), m.rank());
    }

    #[test]
    fn hochschild_squares_to_zero((s, m, f) in (0usize..3).prop_flat_map(instance_and_cochain)) {
        let once = hochschild_coboundary(&s, &m, &f).unwrap();
        prop_assert!(hochschild_coboundary(&s, &m, &once).unwrap().is_zero());
        let once = twisted_coboundary(&s, &m, &f).unwrap();
        prop_assert!(twisted_coboundary(&s, &m, &once).unwrap().is_zero());
    }

    #[test]
    fn mrba_squares_to_zero(
        (s, m, chi, phi) in (1usize..3).prop_flat_map(|k| small_instance().prop_flat_map(move |(s, m)| {
            let (n, dm) = (s.dim(), m.dim());
            (Just(s), Just(m), cochain(k, n, dm), cochain(k - 1, n, dm))
        }))
    ) {
        let c = CochainPair::new(chi, phi).unwrap();
        let once = mrba_coboundary(&s, &m, &c, PsiConvention::Corrected).unwrap();
        prop_assert!(mrba_coboundary(&s, &m, &once, PsiConvention::Corrected).unwrap().is_zero());
    }

    #[test]
    fn cochain_eval_is_multilinear(
        (f, x, y, z, t) in cochain(2, 2, 2).prop_flat_map(|f| (
            Just(f),
            prop::collection::vec(rational(), 2),
            prop::collection::vec(rational(), 2),
            prop::collection::vec(rational(), 2),
            rational(),
        ))
    ) {
        let combo: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + &(&t * b)).collect();
        let lhs = f.eval(&[&combo, &z]);
        let fx = f.eval(&[&x, &z]);
        let fy = f.eval(&[&y, &z]);
        let rhs: Vec<Rational> = fx.iter().zip(&fy).map(|(a, b)| a + &(&t * b)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graph_criterion_matches_identity(r in matrix(2, 2)) {
        let graph = graph_subalgebra_check(&d2(), &r).unwrap().closed;
        let identity = MRBStructure::new(d2(), r, Rational::from(-1)).unwrap().validate().unwrap().is_valid();
        prop_assert_eq!(graph, identity);
    }

    #[test]
    fn diagonal_d2_operators(a in unit_or_rational(), b in unit_or_rational()) {
        // (e,e): a² = 2a² − 1; (e,x): ab = b(a + b) − 1; (x,x) is trivial.
        let r = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => a.clone(),
            (1, 1) => b.clone(),
            _ => Rational::zero(),
        });
        let expected = (&a * &a).is_one() && (&b * &b).is_one();
        prop_assert_eq!(graph_subalgebra_check(&d2(), &r).unwrap().closed, expected);
    }

    #[test]
    fn shifted_section_adds_a_coboundary(theta in cochain(1, 2, 2), seed in 0usize..4) {
        let s = d2_mrb();
        let m = adjoint_bimodule(&s).unwrap();
        let d1 = mrba_matrix(&s, &m, 2, PsiConvention::Corrected, Execution::Sequential).unwrap();
        let z2 = d1.kernel_basis();
        let c = CochainPair::from_vector(2, 2, 2, &z2[seed % z2.len()]).unwrap();
        let ext = extension_from_cocycle(&s, &m, &c).unwrap();
        let shifted = cocycle_from_section(&ext, &Section::shifted(&ext, &theta.to_matrix()).unwrap()).unwrap();
        prop_assert_eq!(shifted, c.add(&theta_coboundary(&s, &m, &theta).unwrap()));
        prop_assert_eq!(cocycle_from_section(&ext, &canonical_section(&ext)).unwrap(), c);
    }

    #[test]
    fn documents_round_trip(
        (n, consts, r, w) in (1usize..4).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(rational(), n * n * n),
            matrix(n, n),
            rational(),
        ))
    ) {
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        let alg = AlgebraRep::new(labels, consts).unwrap();
        let s = MRBStructure::new(alg, r, w).unwrap();
        let doc = InstanceDocument::from_mrb(&s);
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.mrb().unwrap(), s);
    }

    #[test]
    fn execution_modes_agree((s, m) in small_instance(), k in 0usize..3) {
        let seq = mrba_matrix(&s, &m, k, PsiConvention::Corrected, Execution::Sequential).unwrap();
        let par = mrba_matrix(&s, &m, k, PsiConvention::Corrected, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }
}
