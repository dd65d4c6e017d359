use proptest::prelude::*;
use qkernel::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn small_q() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=4, 2i64..=7).prop_filter("q < 1", |(p, d)| p < d)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| r(n, d))
}

fn poly() -> impl Strategy<Value = BivariatePolynomial<Rational>> {
    prop::collection::vec(rational(), 1..5).prop_map(BivariatePolynomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn binomial_symmetry_and_pascal((p, d) in small_q(), n in 1usize..10, k in 0usize..10) {
        prop_assume!(k <= n);
        let ctx = QContext::exact(p, d).unwrap();
        let b = q_binomial(n, k, &ctx).unwrap();
        prop_assert_eq!(&b, &q_binomial(n, n - k, &ctx).unwrap());
        prop_assert_eq!(&b, &q_binomial_product(n, k, &ctx).unwrap());
        if k >= 1 && k < n {
            let pascal = q_binomial(n - 1, k - 1, &ctx).unwrap()
                + ctx.qpow(k as i64) * q_binomial(n - 1, k, &ctx).unwrap();
            prop_assert_eq!(b, pascal);
        }
    }

    #[test]
    fn pochhammer_splits((p, d) in small_q(), a in rational(), m in 0usize..6, n in 0usize..6) {
        let ctx = QContext::exact(p, d).unwrap();
        let whole = q_pochhammer(&a, &ctx, m + n);
        let split = q_pochhammer(&a, &ctx, m) * q_pochhammer(&(a.clone() * ctx.qpow(m as i64)), &ctx, n);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn product_evaluates_pointwise(f in poly(), g in poly(), x in rational(), y in rational()) {
        let prod = f.mul(&g);
        prop_assert_eq!(prod.evaluate(&x, &y), f.evaluate(&x, &y) * g.evaluate(&x, &y));
    }

    #[test]
    fn families_solve_their_equations(
        (p, d) in small_q(),
        n in 0usize..7,
        a in (1i64..=9, 1i64..=5),
        b in (1i64..=9, 1i64..=5),
    ) {
        let ctx = QContext::exact(p, d).unwrap();
        let (alpha, beta) = (r(a.0, a.1), r(b.0, b.1));
        let ell = r(a.0 % 5, 1);
        let lag = laguerre_bivariate(n, &ell, &ctx).unwrap();
        let kind = PdeKind::Laguerre { alpha: ell };
        prop_assert!(pde_residual(&lag, &kind, &ctx).unwrap().is_zero());

        let jac = jacobi_bivariate_cleared(n, &alpha, &beta, &ctx).unwrap();
        let kind = PdeKind::Jacobi { alpha, beta };
        prop_assert!(pde_residual(&jac, &kind, &ctx).unwrap().is_zero());
    }

    #[test]
    fn expansion_inverts_synthesis(
        c in prop::collection::vec(rational(), 1..6),
        a in 0i64..=4,
    ) {
        let ctx = QContext::exact(1, 3).unwrap();
        let fam = FamilyParams::QLaguerre { alpha: r(a, 1) };
        let n = c.len() - 1;
        let grid = synthesize(&c, &fam, n, n, &ctx).unwrap();
        let res = expand(&grid, &fam, &ctx, 0.0).unwrap();
        prop_assert!(res.admissible);
        prop_assert_eq!(res.coeffs, c);
    }

    #[test]
    fn float_series_matches_product(a in -0.9f64..0.9, z in -0.9f64..0.9) {
        let q = 0.5;
        let ctx = QContext::float(q).unwrap();
        let s = phi_series_auto(&HyperSeries::new(vec![a], vec![], z), &ctx).unwrap();
        let want = q_pochhammer_inf(a * z, &ctx).unwrap().value / q_pochhammer_inf(z, &ctx).unwrap().value;
        prop_assert!((s.value - want).abs() <= 1e-13 * (1.0 + want.abs()));
    }
}
