use jensen_bench::config::{parse_range, Suite, SuiteConfig};
use jensen_bench::gen::gen_scalar;
use jensen_bench::suite::{run_suite, v_grid};
use jensen_bench::BenchError;

fn small(suite: Suite) -> SuiteConfig {
    SuiteConfig {
        suite,
        trials: 200,
        matrix_trials: 6,
        max_depth: 3,
        matrix_max_depth: 2,
        timestamp: false,
        ..SuiteConfig::default()
    }
}

#[test]
fn grid_has_uniform_points_and_nodes() {
    let g = v_grid(2);
    for i in 0..=32 {
        assert!(g.contains(&(i as f64 / 32.0)));
    }
    assert!(g.windows(2).all(|w| w[0] < w[1]));
    let deep = v_grid(7);
    assert!(deep.contains(&(1.0 / 256.0)));
    assert!(!deep.contains(&(1.0 / 512.0)));
}

#[test]
fn config_validation() {
    let bad = [
        SuiteConfig {
            trials: 0,
            ..SuiteConfig::default()
        },
        SuiteConfig {
            max_depth: 41,
            ..SuiteConfig::default()
        },
        SuiteConfig {
            dim_range: (0, 3),
            ..SuiteConfig::default()
        },
        SuiteConfig {
            dim_range: (5, 3),
            ..SuiteConfig::default()
        },
        SuiteConfig {
            dim_range: (2, 65),
            ..SuiteConfig::default()
        },
        SuiteConfig {
            tol: -1.0,
            ..SuiteConfig::default()
        },
    ];
    for cfg in bad {
        assert!(
            matches!(run_suite(&cfg), Err(BenchError::Config(_))),
            "{cfg:?}"
        );
    }
    assert!(SuiteConfig::default().validate().is_ok());
    assert_eq!(parse_range::<usize>("2..6"), Ok((2, 6)));
    assert!(parse_range::<usize>("2-6").is_err());
}

#[test]
fn small_runs_pass_and_are_deterministic() {
    let cfg = small(Suite::All);
    let x = run_suite(&cfg).unwrap();
    let y = run_suite(&cfg).unwrap();
    assert!(x.passed(), "{:#}", x.report);
    assert_eq!(x.exit_code, 0);
    assert_eq!(x.report.to_string(), y.report.to_string());
    assert_eq!(x.families.len(), 7 + 7);
    assert!(x.report.get("timestamp").is_none());
}

#[test]
fn injected_fault_names_the_family() {
    let cfg = SuiteConfig {
        inject_fault: Some("kantorovich".into()),
        ..small(Suite::Scalar)
    };
    let out = run_suite(&cfg).unwrap();
    assert_eq!(out.exit_code, 1);
    assert_eq!(out.failing_families(), vec!["kantorovich"]);
    assert_eq!(out.report["failing_families"][0], "kantorovich");

    let cfg = SuiteConfig {
        inject_fault: Some("heinz_refined".into()),
        ..small(Suite::Matrix)
    };
    assert_eq!(
        run_suite(&cfg).unwrap().failing_families(),
        vec!["heinz_refined"]
    );
}

#[test]
fn worst_case_is_reproducible_from_its_seed() {
    let cfg = small(Suite::Scalar);
    let out = run_suite(&cfg).unwrap();
    for stats in out.families.values() {
        let w = stats.worst.as_ref().unwrap();
        let inst = gen_scalar(w.seed, cfg.range_exp);
        assert_eq!(w.detail["a"], inst.a());
        assert_eq!(w.detail["b"], inst.b());
    }
}

#[test]
fn report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let cfg = SuiteConfig {
        out_path: Some(path.clone()),
        ..small(Suite::Scalar)
    };
    run_suite(&cfg).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["config"]["trials"], 200);

    let cfg = SuiteConfig {
        out_path: Some(dir.path().join("missing/r.json")),
        ..small(Suite::Scalar)
    };
    assert!(matches!(run_suite(&cfg), Err(BenchError::Io { .. })));
}
