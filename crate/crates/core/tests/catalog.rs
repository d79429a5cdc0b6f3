use nilsuper::catalog::{
    closed_formula_bracket, csq_model, max_nilindex_super_with, thm32_family, thm32_normal,
    thm32_skeleton, zf_adapted, HeadRows,
};
use nilsuper::invariants::{center, characteristic_sequence, nilindex, right_annihilator};
use nilsuper::io;
use nilsuper::verification::{
    check_generator_placement, verify_isomorphism, verify_lemma_formula, verify_thm32,
    zf_trial_skeleton, DEFAULT_ZERO_PROB,
};
use nilsuper::{
    BasisIndex, CharSequence, Complex64, ComplexAlgebra, Error, Nilindex, Rational,
    RationalAlgebra, Scalar,
};

fn q(p: i64, d: i64) -> Rational {
    nilsuper::scalar::rational(p, d)
}

#[test]
fn nonzero_zero_filiform_completions_are_not_lie() {
    // Leibniz tables from the probe stream with some nonzero parameter.
    let mut seen = 0;
    for t in 0..400 {
        let s = zf_trial_skeleton(2, 3, 5, t, DEFAULT_ZERO_PROB);
        if let Ok(a) = s.complete() {
            assert!(!a.check_lie_superidentity().is_clean());
            seen += 1;
        }
    }
    assert!(seen > 10);
}

#[test]
fn odd_family_matches_skeleton_completion() {
    let g = vec![q(2, 3), q(-1, 1), q(0, 1), q(5, 2)];
    let direct: RationalAlgebra = thm32_family(7, &g).unwrap();
    let completed = thm32_skeleton(7, &g).unwrap().complete().unwrap();
    assert_eq!(direct, completed);
    assert_eq!(nilindex(&direct), Nilindex::Finite(9));
    assert_eq!(
        characteristic_sequence(&direct, 20, 1).unwrap(),
        CharSequence::new(vec![2], vec![7])
    );
    assert!(matches!(
        thm32_family::<Rational>(5, &[q(1, 1), q(1, 1), q(0, 1)]),
        Err(Error::DegenerateFamily)
    ));
}

#[test]
fn odd_family_isomorphic_to_normal_form() {
    let g = [q(1, 2), q(-1, 3), q(2, 1)];
    let gc: Vec<Complex64> = g.iter().map(Complex64::from_rational).collect();
    let b1 = Complex64::new(1.0, 0.0);
    let fam: ComplexAlgebra = thm32_family(5, &gc).unwrap();
    let t = nilsuper::catalog::thm32_basis_change(5, &gc, b1).unwrap();
    assert!(verify_isomorphism(&fam, &thm32_normal(5).unwrap(), &t, 1e-9).unwrap());
    assert!(verify_thm32(5, &gc, b1, 1e-9).unwrap().passed);
}

#[test]
fn max_super_default_and_explicit_m() {
    for n in 1..=4 {
        for m in [n, n + 1] {
            let a: RationalAlgebra = max_nilindex_super_with(n, m).unwrap();
            assert_eq!(nilindex(&a), Nilindex::Finite(n + m + 1));
            assert!(matches!(
                check_generator_placement(&a),
                Err(Error::NotTwoGenerated(1))
            ));
        }
        assert!(max_nilindex_super_with::<Rational>(n, n + 2).is_err());
    }
}

#[test]
fn csq_zero_model_shape() {
    let h = HeadRows::<Rational>::zero(3, 4);
    let a = csq_model(3, vec![2, 2], h.alpha, h.beta)
        .unwrap()
        .complete()
        .unwrap();
    assert_eq!(
        a.bracket_basis(BasisIndex::y(2), BasisIndex::x(1)),
        a.zero_vector()
    );
    assert_eq!(
        a.bracket_basis(BasisIndex::y(3), BasisIndex::x(1)),
        a.unit(BasisIndex::y(4))
    );
    assert_eq!(
        characteristic_sequence(&a, 20, 3).unwrap(),
        CharSequence::new(vec![3], vec![2, 2])
    );
    assert!(right_annihilator(&a).contains_subspace(&center(&a)));
    let h = HeadRows::<Rational>::zero(3, 4);
    assert!(matches!(
        csq_model(3, vec![4], h.alpha, h.beta),
        Err(Error::PartitionMismatch { .. })
    ));
}

#[test]
fn two_even_generators_closed_form() {
    // [y_i, y_1] and [y_1, y_i] from the completion against the closed formula.
    let r = verify_lemma_formula(2, 3, 100, 13);
    assert!(r.passed());
    let beta = vec![vec![q(1, 1)], vec![q(2, 1)], vec![q(3, 1)]];
    let v = closed_formula_bracket(1, 2, &beta, 2, 3).unwrap();
    assert_eq!(v, vec![q(0, 1), q(-2, 1)]);
    // [y2, y2] = [[y2, y1], x1] - [y3, y1] and x3 does not exist.
    let v = closed_formula_bracket(2, 2, &beta, 2, 3).unwrap();
    assert_eq!(v, vec![q(0, 1), q(-3, 1)]);
    assert!(closed_formula_bracket(4, 1, &beta, 2, 3).is_err());
}

#[test]
fn catalog_json_round_trips() {
    let h = HeadRows::<Rational>::zero(3, 3);
    let algebras: Vec<RationalAlgebra> = vec![
        thm32_normal(5).unwrap(),
        max_nilindex_super_with(3, 4).unwrap(),
        zf_adapted(3, 3, h.alpha, h.beta)
            .unwrap()
            .complete()
            .unwrap(),
    ];
    for a in algebras {
        let text = io::serialize(&a);
        let back: RationalAlgebra = io::parse(&text).unwrap();
        assert_eq!(back, a);
        assert!(back.check_leibniz_superidentity().is_clean());
        assert!(matches!(
            io::parse::<Complex64>(&text),
            Err(Error::BackendMismatch { .. })
        ));
    }
}

#[test]
fn odd_family_exact_for_random_gamma() {
    let s = nilsuper::verification::ParamSampler::DENSE;
    for m in [3, 5, 7, 9] {
        let mut rng = nilsuper::verification::trial_rng(31, m as u64);
        for _ in 0..50 {
            let mut g: Vec<Rational> = (0..(m - 1) / 2).map(|_| s.scalar(&mut rng)).collect();
            g.push(s.nonzero(&mut rng));
            let a: RationalAlgebra = thm32_family(m, &g).unwrap();
            assert!(a.check_leibniz_superidentity().is_clean());
        }
    }
}

#[test]
fn normal_form_center_holds_x2() {
    for m in [3, 5, 7, 9] {
        let a: RationalAlgebra = thm32_normal(m).unwrap();
        assert!(center(&a).contains(&a.unit(BasisIndex::x(2))));
        assert_eq!(nilindex(&a), Nilindex::Finite(m + 2));
    }
}
