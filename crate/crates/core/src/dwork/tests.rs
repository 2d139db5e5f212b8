use super::oracle::{count_quotient_oracle, count_twisted_fixed, singular_point, splitting_points};
use super::*;
use crate::hypersurface::{eval, projective_size, ProjPoint};

fn params(p: u64, k: u32, n: usize, lambda: &[u32]) -> DworkParams {
    let field = Field::new(p, k).unwrap();
    let lambda = field.from_int(lambda[0] as i64);
    DworkParams::new(n, lambda, &field).unwrap()
}

fn cfg() -> CountConfig {
    CountConfig::default()
}

#[test]
fn rejects_bad_parameters() {
    let f3 = Field::new(3, 1).unwrap();
    assert!(matches!(DworkParams::new(2, f3.one(), &f3), Err(Error::CharacteristicDividesDegree { .. })));
    let f7 = Field::new(7, 1).unwrap();
    assert!(matches!(DworkParams::new(1, f7.one(), &f7), Err(Error::DimensionTooSmall(1))));
    let f5 = Field::new(5, 1).unwrap();
    assert!(matches!(DworkParams::new(2, f5.one(), &f7), Err(Error::ForeignElement)));
}

#[test]
fn smoothness_matches_jacobian_search() {
    for (p, k, n) in [(7, 1, 2), (5, 1, 3), (2, 2, 2), (5, 1, 2), (13, 1, 2), (11, 1, 4), (2, 1, 4)] {
        let field = Field::new(p, k).unwrap();
        for lambda in field.elements() {
            let params = DworkParams::new(n, lambda, &field).unwrap();
            let found = singular_point(&params, &cfg()).unwrap();
            assert_eq!(is_smooth(&params), found.is_none(), "p={p} k={k} n={n} lambda={lambda:?}");
        }
    }
}

#[test]
fn smooth_parameter_sets() {
    let f7 = Field::new(7, 1).unwrap();
    let idx: Vec<u32> = smooth_parameters(2, &f7).unwrap().iter().map(|l| l.index()).collect();
    assert_eq!(idx, vec![0, 3, 5, 6]);
    let f5 = Field::new(5, 1).unwrap();
    assert_eq!(smooth_parameters(3, &f5).unwrap(), vec![f5.zero()]);
    let f25 = Field::new(5, 2).unwrap();
    let smooth = smooth_parameters(3, &f25).unwrap();
    assert_eq!(smooth.len(), 21);
    assert!(smooth.iter().all(|&l| f25.pow(l, 4) != f25.one()));
}

#[test]
fn group_structure() {
    assert_eq!(group_order(2), 3);
    assert_eq!(group_order(3), 16);
    assert_eq!(group_order(4), 125);
    for n in 2..=4 {
        let group = group_elements(n);
        assert_eq!(group.len() as u64, group_order(n));
        assert!(group.windows(2).all(|w| w[0] < w[1]));
        assert!(group[0].is_identity());
        for g in &group {
            assert_eq!(GroupElement::new(g.exps().to_vec()).as_ref(), Ok(g));
            for h in &group {
                assert!(group.binary_search(&g.compose(h)).is_ok());
            }
        }
    }
    assert!(GroupElement::new(vec![1, 2, 0]).is_err());
    assert!(GroupElement::new(vec![0, 1, 1]).is_err());
    assert!(GroupElement::new(vec![0, 3, 0]).is_err());
    let g: GroupElement = serde_json::from_str("[0,1,2]").unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap(), "[0,1,2]");
    assert!(serde_json::from_str::<GroupElement>("[0,1,1]").is_err());
}

#[test]
fn action_preserves_the_hypersurface() {
    let params = params(13, 1, 2, &[5]);
    let ext = params.extension(1).unwrap();
    let field = ext.field();
    let zeta = ext.zeta().unwrap();
    let f = dwork_poly(&params);
    let points = crate::hypersurface::collect_points(&f, field, &cfg()).unwrap();
    let group = group_elements(2);
    for x in &points {
        assert_eq!(&act(&group[0], x, zeta, field).unwrap(), x);
        for g in &group {
            let gx = act(g, x, zeta, field).unwrap();
            assert!(eval(&f, &gx, field).unwrap().is_zero());
            for h in &group {
                let lhs = act(g, &act(h, x, zeta, field).unwrap(), zeta, field).unwrap();
                assert_eq!(lhs, act(&g.compose(h), x, zeta, field).unwrap());
            }
        }
    }
    let x = &points[0];
    assert!(matches!(act(&group[1], x, field.one(), field), Err(Error::NotPrimitiveRoot(3))));
    let f5 = Field::new(5, 1).unwrap();
    let y = ProjPoint::new(&[f5.one(), f5.one(), f5.zero()], &f5).unwrap();
    assert!(matches!(act(&group[1], &y, f5.one(), &f5), Err(Error::NonSplit { .. })));
}

#[test]
fn twisted_forms_have_unit_leading_coefficient() {
    let params = params(7, 1, 2, &[3]);
    let f = params.field().clone();
    let g = GroupElement::new(vec![0, 1, 2]).unwrap();
    let form = twist_coefficients(&g, &params, 1).unwrap();
    assert_eq!(form.a()[0], f.one());
    assert!(!form.b().is_zero());
    let closed = twist_coefficients_with(&g, &params, 1, TwistRoute::ClosedForm, TieBreak::MinimalDlog).unwrap();
    assert_eq!(closed.a()[0], f.one());
    let json = serde_json::to_value(&closed).unwrap();
    assert_eq!(json["A"].as_array().unwrap().len(), 3);
    assert_eq!(json["B"].as_array().unwrap().len(), 1);
    let identity = twist_coefficients(&GroupElement::identity(2), &params, 1).unwrap();
    assert!(identity.a().iter().all(|&a| a == f.one()));
    assert_eq!(identity.b(), f.one());
}

#[test]
fn twist_refuses_non_split_fields() {
    let params = params(5, 1, 2, &[1]);
    let g = GroupElement::new(vec![0, 1, 2]).unwrap();
    assert!(matches!(twist_coefficients(&g, &params, 1), Err(Error::NonSplit { .. })));
    assert!(twist_coefficients(&g, &params, 2).is_ok());
}

#[test]
fn identity_twist_is_the_original_count() {
    for (p, k, n, lambda) in [(7, 1, 2, 3), (13, 1, 2, 1), (5, 1, 3, 0), (5, 2, 3, 2)] {
        let params = params(p, k, n, &[lambda]);
        let twisted = twisted_count(&GroupElement::identity(n), &params, 1, &cfg()).unwrap();
        assert_eq!(twisted, count_dwork(&params, 1, &cfg()).unwrap());
    }
}

#[test]
fn twisted_counts_match_frobenius_fixed_points() {
    for (p, n, lambda, m) in [(7, 2, 3, 1), (7, 2, 0, 1), (13, 2, 2, 1), (2, 2, 1, 2), (2, 2, 0, 2)] {
        let params = params(p, 1, n, &[lambda]);
        let sp = splitting_points(&params, m, &cfg()).unwrap();
        for (g, count) in twisted_counts(&params, m, &cfg()).unwrap() {
            assert_eq!(count, count_twisted_fixed(&sp, &g), "p={p} n={n} lambda={lambda} g={g:?}");
        }
    }
}

#[test]
fn routes_and_tie_breaks_agree() {
    for (p, n, lambda) in [(7, 2, 5), (13, 2, 4), (5, 3, 0)] {
        let params = params(p, 1, n, &[lambda]);
        let base = twisted_counts(&params, 1, &cfg()).unwrap();
        for route in [TwistRoute::Extension, TwistRoute::ClosedForm] {
            for tie in [TieBreak::MinimalDlog, TieBreak::Seeded(1), TieBreak::Seeded(99)] {
                let counter = TwistedCounter::new(&params, 1, &cfg()).unwrap().with_route(route, tie).unwrap();
                for (g, expected) in &base {
                    assert_eq!(counter.count(g).unwrap(), *expected, "{route:?} {tie:?} g={g:?}");
                }
            }
        }
    }
    let params = params(7, 1, 2, &[3]);
    let g = GroupElement::new(vec![0, 2, 1]).unwrap();
    let a = twist_coefficients_with(&g, &params, 1, TwistRoute::Extension, TieBreak::MinimalDlog).unwrap();
    let b = twist_coefficients_with(&g, &params, 1, TwistRoute::Extension, TieBreak::Seeded(5)).unwrap();
    assert!(a.a() != b.a() || a.b() != b.b());
}

#[test]
fn extension_route_respects_the_dlog_cap() {
    // Q^(n+1) = 121^5 is far above the cap.
    let params = params(11, 1, 4, &[2]);
    let g = group_elements(4)[7].clone();
    let err = twist_coefficients_with(&g, &params, 2, TwistRoute::Extension, TieBreak::MinimalDlog);
    assert!(matches!(err, Err(Error::TableCapExceeded { .. })));
    assert!(twist_coefficients(&g, &params, 2).is_ok());
}

#[test]
fn quotient_count_matches_orbit_oracle() {
    let cases: &[(u64, u32, usize, u32, u32)] =
        &[(7, 1, 2, 0, 1), (7, 1, 2, 3, 1), (7, 1, 2, 1, 1), (13, 1, 2, 2, 1), (2, 1, 2, 0, 2), (2, 1, 2, 1, 2)];
    for &(p, k, n, lambda, m) in cases {
        let params = params(p, k, n, &[lambda]);
        let fast = count_quotient(&params, m, &cfg()).unwrap();
        let slow = count_quotient_oracle(&params, m, &cfg()).unwrap();
        assert_eq!(fast, slow, "p={p} n={n} lambda={lambda} m={m}");
    }
}

#[test]
fn burnside_reduction() {
    assert_eq!(burnside_reduce(&[10, 4, 4], 3), Ok(6));
    assert!(matches!(burnside_reduce(&[10, 4, 5], 3), Err(Error::NonIntegralBurnside { sum: 19, order: 3 })));
}

#[test]
fn counts_obey_weil_bound() {
    // Primitive middle Betti numbers of degree n+1 hypersurfaces in P^n.
    let betti = |n: usize| -> f64 {
        let d = n as f64 + 1.0;
        ((d - 1.0).powi(n as i32 + 1) + (-1f64).powi(n as i32 + 1) * (d - 1.0)) / d
    };
    assert_eq!(betti(2), 2.0);
    assert_eq!(betti(3), 21.0);
    assert_eq!(betti(4), 204.0);
    for (p, k, n) in [(7, 1, 2), (13, 1, 2), (5, 1, 3), (5, 2, 3), (11, 1, 4)] {
        let field = Field::new(p, k).unwrap();
        let q = field.q() as f64;
        for lambda in smooth_parameters(n, &field).unwrap() {
            let params = DworkParams::new(n, lambda, &field).unwrap();
            let base = projective_size(n - 1, field.q() as u64) as f64;
            let bound = betti(n) * q.powf((n as f64 - 1.0) / 2.0);
            for (g, count) in twisted_counts(&params, 1, &cfg()).unwrap() {
                assert!((count as f64 - base).abs() <= bound, "q={q} n={n} lambda={lambda:?} g={g:?}");
            }
        }
    }
}

#[test]
fn fermat_counts_from_jacobi_sums() {
    for (p, k, n) in [(7, 1, 2), (13, 1, 2), (5, 1, 3), (13, 1, 3), (5, 2, 3), (11, 1, 4), (7, 1, 5), (2, 2, 2)] {
        let params = params(p, k, n, &[0]);
        let direct = count_dwork(&params, 1, &cfg()).unwrap();
        assert_eq!(count_fermat_jacobi(n, params.field()).unwrap(), direct, "p={p} k={k} n={n}");
    }
    let f5 = Field::new(5, 1).unwrap();
    assert!(matches!(count_fermat_jacobi(2, &f5), Err(Error::NotDivisor { .. })));
}

#[test]
fn sequential_and_parallel_agree() {
    let params = params(13, 1, 2, &[7]);
    let seq = count_quotient(&params, 1, &CountConfig::sequential()).unwrap();
    assert_eq!(seq, count_quotient(&params, 1, &cfg()).unwrap());
    let enumerate = CountConfig { strategy: crate::hypersurface::Strategy::Enumerate, ..cfg() };
    assert_eq!(seq, count_quotient(&params, 1, &enumerate).unwrap());
}
