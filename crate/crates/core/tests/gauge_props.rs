use proptest::prelude::*;
use wdk_core::gauge::{self, GaugeParams};
use wdk_core::PExponent;

type Gauge = fn(f64, &GaugeParams) -> wdk_core::Result<f64>;

fn params() -> impl Strategy<Value = GaugeParams> {
    let p = prop_oneof![
        Just(PExponent::ONE),
        Just(PExponent::TWO),
        Just(PExponent::INF),
        (1.0f64..8.0).prop_map(|p| PExponent::new(p).unwrap()),
    ];
    (2usize..=16, p).prop_map(|(n, p)| GaugeParams::new(n, p).unwrap())
}

/// Relative slack for comparing two evaluations of the same smooth formula.
const REL: f64 = 1e-12;

fn leq(a: f64, b: f64) -> bool {
    a <= b + REL * b.abs().max(a.abs()) + 1e-300
}

proptest! {
    #[test]
    fn quasi_homogeneity(gp in params(), frac in 0.0f64..1.0, lambda in 0.0f64..=1.0) {
        let t = frac * gp.gauge_limit() * 0.999;
        let families: [(Gauge, i32); 2] =
            [(gauge::phi_local1, 1), (gauge::varphi_local1, 2)];
        for (g, r) in families {
            prop_assert!(leq(g(lambda * t, &gp).unwrap(), lambda.powi(r) * g(t, &gp).unwrap()));
        }
        let t = frac * gp.gauge_limit().min(1.0) * 0.999;
        let families: [(Gauge, i32); 2] =
            [(gauge::phi_semi, 1), (gauge::varphi_semi, 2)];
        for (g, r) in families {
            prop_assert!(leq(g(lambda * t, &gp).unwrap(), lambda.powi(r) * g(t, &gp).unwrap()));
        }
    }

    #[test]
    fn gauge_property(gp in params(), frac in 0.0f64..=1.0) {
        let r1 = gauge::radius_local1(&gp).value;
        let t = frac * r1;
        prop_assert!(leq(gauge::varphi_local1(t, &gp).unwrap(), t));
        if frac > 1e-3 && frac < 0.999 {
            prop_assert!(gauge::varphi_local1(t, &gp).unwrap() < t);
        }
        let rs = gauge::radius_semi(&gp).value;
        let t = frac * rs;
        prop_assert!(leq(gauge::varphi_semi(t, &gp).unwrap(), t));
        if frac > 1e-3 && frac < 0.999 {
            prop_assert!(gauge::varphi_semi(t, &gp).unwrap() < t);
            prop_assert!(gauge::beta_semi(t, &gp).unwrap() < gauge::psi_semi(t, &gp).unwrap());
        }
    }

    #[test]
    fn monotonicity(gp in params(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (s, t) = if a <= b { (a, b) } else { (b, a) };
        let lim = gp.gauge_limit() * 0.999;
        let (s1, t1) = (s * lim, t * lim);
        prop_assert!(leq(gauge::phi_local1(s1, &gp).unwrap(), gauge::phi_local1(t1, &gp).unwrap()));
        prop_assert!(leq(gauge::h_local2(s1, &gp).unwrap(), gauge::h_local2(t1, &gp).unwrap()));
        prop_assert!(leq(gauge::beta_local2(s1, &gp).unwrap(), gauge::beta_local2(t1, &gp).unwrap()));
        prop_assert!(leq(gauge::psi_local2(t1, &gp).unwrap(), gauge::psi_local2(s1, &gp).unwrap()));
        let r2 = gauge::radius_local2(&gp).value;
        let (s2, t2) = (s * r2, t * r2);
        prop_assert!(leq(gauge::phi_local2(s2, &gp).unwrap(), gauge::phi_local2(t2, &gp).unwrap()));
        let lim = gp.gauge_limit().min(1.0) * 0.999;
        let (s3, t3) = (s * lim, t * lim);
        prop_assert!(leq(gauge::phi_semi(s3, &gp).unwrap(), gauge::phi_semi(t3, &gp).unwrap()));
        prop_assert!(leq(gauge::beta_semi(s3, &gp).unwrap(), gauge::beta_semi(t3, &gp).unwrap()));
        prop_assert!(leq(gauge::psi_semi(t3, &gp).unwrap(), gauge::psi_semi(s3, &gp).unwrap()));
    }

    #[test]
    fn defining_equations(gp in params(), h in 0.01f64..0.99) {
        let r = gauge::radius_local1(&gp).value;
        prop_assert!((gauge::phi_local1(r, &gp).unwrap() - 1.0).abs() <= 1e-12);
        let r = gauge::radius_local1_h(&gp, h).unwrap().value;
        prop_assert!((gauge::phi_local1(r, &gp).unwrap() - h).abs() <= 1e-12);
        let r = gauge::radius_local2(&gp).value;
        prop_assert!((gauge::h_local2(r, &gp).unwrap() - 2.0).abs() <= 1e-12);
        prop_assert!(r >= gauge::lower_bound_local2(&gp) - 1e-12);
        prop_assert!(gauge::wang_zhao_threshold(&gp) <= gauge::lower_bound_local2(&gp));
        let r = gauge::radius_semi(&gp).value;
        prop_assert!((gauge::phi_semi(r, &gp).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn out_of_domain_is_an_error(gp in params(), t in 1.0f64..10.0) {
        let past = gp.gauge_limit() * t;
        prop_assert!(gauge::phi_local1(past, &gp).is_err());
        prop_assert!(gauge::phi_semi(past.max(1.0), &gp).is_err());
        prop_assert!(gauge::h_local2(-t, &gp).is_err());
        prop_assert!(gauge::phi_local1(f64::NAN, &gp).is_err());
    }
}
