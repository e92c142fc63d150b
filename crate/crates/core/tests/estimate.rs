use entropy_core::estimate::*;
use entropy_core::maps::*;
use entropy_core::Error;

struct Diagonal {
    a: f64,
    b: f64,
}

impl DynamicalMap<2> for Diagonal {
    fn evaluate(&self, p: &Point<2>) -> Point<2> {
        [self.a * p[0], self.b * p[1]]
    }
    fn jacobian(&self, _p: &Point<2>) -> Jacobian<2> {
        [[self.a, 0.0], [0.0, self.b]]
    }
    fn domain(&self) -> Domain<2> {
        Domain::unit()
    }
}

fn horseshoe_estimate(n: usize, eps: f64, res: usize) -> EntropyEstimate {
    separated_entropy(
        &ModelHorseshoe::new(),
        n,
        eps,
        &SampleGrid::new(res).unwrap(),
    )
    .unwrap()
}

#[test]
fn linear_growth_rate_is_log_of_top_singular_value() {
    let r = growth_rate(
        &Diagonal {
            a: 3.0,
            b: 1.0 / 3.0,
        },
        10,
        &SampleGrid::new(21).unwrap(),
    )
    .unwrap();
    assert!((r.value - 3f64.ln()).abs() < 1e-6, "{}", r.value);
    for &(m, v) in &r.samples {
        assert!((v - m as f64 * 3f64.ln()).abs() < 1e-9);
    }
    assert!(r.residual < 1e-9);
}

#[test]
fn horseshoe_growth_rate_is_log_three() {
    let r = growth_rate(&ModelHorseshoe::new(), 12, &SampleGrid::new(200).unwrap()).unwrap();
    assert!((r.value - 3f64.ln()).abs() < 0.05, "{}", r.value);
}

#[test]
fn contraction_growth_rate_is_small() {
    let fam = IsotopyFamily::new(ModelHorseshoe::new(), DEFAULT_RAMP).unwrap();
    let slice = isotopy_map(0.99, &fam).unwrap();
    let r = growth_rate(&slice, 12, &SampleGrid::new(60).unwrap()).unwrap();
    assert!(r.value < 0.02, "{}", r.value);
}

#[test]
fn growth_rate_rejects_short_orbits() {
    let err = growth_rate(&ModelHorseshoe::new(), 3, &SampleGrid::new(10).unwrap()).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
}

#[test]
fn contraction_has_no_entropy() {
    let fam = IsotopyFamily::new(ModelHorseshoe::new(), DEFAULT_RAMP).unwrap();
    for t in [0.9, 0.99] {
        let slice = isotopy_map(t, &fam).unwrap();
        let e = separated_entropy(&slice, 10, 1e-2, &SampleGrid::new(100).unwrap()).unwrap();
        assert!(e.value < 0.02, "t={t}: {}", e.value);
    }
}

#[test]
fn horseshoe_entropy_near_log_two() {
    let e = horseshoe_estimate(10, 2e-3, 200);
    let l2 = 2f64.ln();
    assert!(e.value > l2 - 0.1 && e.value < l2 + 0.05, "{}", e.value);
    assert_eq!(e.cardinalities.len(), 10);
    assert_eq!(e.method, "separated-sets");
    assert_eq!(e.window, (5, 10));
}

#[test]
fn cardinalities_grow_and_are_submultiplicative() {
    let e = horseshoe_estimate(10, 2e-3, 200);
    let r = &e.cardinalities;
    for w in r.windows(2) {
        assert!(w[1] >= w[0], "{r:?}");
    }
    for m in 1..10 {
        for k in 1..=(10 - m) {
            let lhs = r[m + k - 1] as f64;
            let rhs = r[m - 1] as f64 * r[k - 1] as f64;
            assert!(lhs <= 1.1 * rhs, "m={m} k={k}");
        }
    }
}

#[test]
fn entropy_is_monotone_in_resolution() {
    let coarse = horseshoe_estimate(12, 1e-2, 400).value;
    let fine = horseshoe_estimate(12, 1e-3, 400).value;
    assert!(coarse <= fine, "coarse {coarse} fine {fine}");
}

#[test]
fn coarse_grid_is_rejected() {
    let err = separated_entropy(
        &ModelHorseshoe::new(),
        5,
        1e-3,
        &SampleGrid::new(50).unwrap(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::GridTooCoarse { .. }));
}

#[test]
fn bad_arguments_are_rejected() {
    let g = SampleGrid::new(100).unwrap();
    let h = ModelHorseshoe::new();
    assert!(separated_entropy(&h, 1, 1e-2, &g).is_err());
    assert!(separated_entropy(&h, 5, 0.0, &g).is_err());
    assert!(SampleGrid::new(1).is_err());
    let mut cfg = EstimatorConfig::new(6, 1e-2, g);
    cfg.tail_window = Some((4, 9));
    assert!(separated_entropy_with(&h, &cfg).is_err());
}

#[test]
fn estimate_csv_has_final_row() {
    let e = horseshoe_estimate(4, 1e-2, 100);
    let csv = e.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "m,cardinality,rate");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("estimate,,"));
}

#[test]
fn ball_entropy_vanishes_for_positive_tau() {
    let fam = IsotopyFamily::new(ModelHorseshoe::new(), DEFAULT_RAMP).unwrap();
    let g = family_g(0.05, &fam).unwrap();
    let e = separated_entropy(&g, 10, 1e-2, &SampleGrid::new(40).unwrap()).unwrap();
    assert!(e.value < 0.05, "{}", e.value);
}
