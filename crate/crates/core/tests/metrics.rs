use geoflow::delaunay::triangulate;
use geoflow::ensembles::gen_bethe;
use geoflow::metrics::{
    bethe_mv_exact, ccdf_power_law_fit, degree_histogram, fit_scaling_exponent, run_sweep, write_sweep_csv, FitError,
    SweepConfig, SWEEP_HEADER,
};
use geoflow::pointgen::sample_points;
use geoflow::routing::congestion;
use geoflow::DensityModel;

#[test]
fn bethe_scaling_exponent_near_two() {
    let samples: Vec<(f64, f64)> = (2..=6)
        .map(|depth| {
            let g = gen_bethe(3, depth).unwrap();
            let rep = congestion::<f64>(&g).unwrap();
            assert!((rep.max_vertex_flow - bethe_mv_exact(3, g.n())).abs() < 1e-6 * rep.max_vertex_flow);
            (g.n() as f64, rep.max_vertex_flow)
        })
        .collect();
    let slope = fit_scaling_exponent(&samples).unwrap();
    assert!((1.9..=2.01).contains(&slope), "slope {slope}");
}

#[test]
fn fit_rejects_bad_samples() {
    assert!(matches!(
        fit_scaling_exponent(&[(1.0, 1.0), (2.0, 2.0)]),
        Err(FitError::TooFewSamples { .. })
    ));
    assert!(matches!(
        fit_scaling_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
        Err(FitError::NonPositiveSample { .. })
    ));
    assert!(matches!(
        fit_scaling_exponent(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]),
        Err(FitError::DegenerateAbscissa)
    ));
    let exact: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, 3.0 * (i as f64).powf(1.5))).collect();
    assert!((fit_scaling_exponent(&exact).unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn generalized_hyperbolic_degrees_have_power_tail() {
    let model: DensityModel = "genhyp:0.01".parse().unwrap();
    let g = triangulate(&sample_points(&model, 10_000, 4).unwrap()).unwrap().graph;
    let hist = degree_histogram(&g);
    let fit = ccdf_power_law_fit(&hist, 5).unwrap();
    assert!(fit.r2 >= 0.9, "r2 {}", fit.r2);
    assert!(fit.slope < 0.0);
}

#[test]
fn sweep_is_deterministic_with_expected_layout() {
    let config = SweepConfig::from_json(
        r#"{"family": "rgg", "params": {"radius": [0.2, 0.3]}, "n_list": [60, 90], "trials": 3, "seed": 9,
            "largest_component": true}"#,
    )
    .unwrap();
    let a = run_sweep(&config).unwrap();
    let b = run_sweep(&config).unwrap();
    assert!(a.failures.is_empty());
    assert_eq!(a.rows.len(), 2 * 2 * 4);
    assert_eq!(a.means().count(), 4);
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    write_sweep_csv(&mut ca, &a.rows).unwrap();
    write_sweep_csv(&mut cb, &b.rows).unwrap();
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    assert_eq!(text.lines().next().unwrap(), SWEEP_HEADER.join(","));
}

#[test]
fn sweep_complete_graphs() {
    let config = SweepConfig::from_json(r#"{"family": "complete", "n_list": [3, 7], "seed": 1}"#).unwrap();
    let out = run_sweep(&config).unwrap();
    for row in out.means() {
        let n = row.n;
        assert_eq!(row.diameter, 1.0);
        assert_eq!(row.max_vflow, n - 1.0);
        assert_eq!(row.max_eflow, 1.0);
        assert_eq!(row.m, n * (n - 1.0) / 2.0);
    }
}
