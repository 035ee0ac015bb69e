use mermin_sim::{
    collapse, eigencheck, lr_bound_bruteforce, render_report, run_experiment, ExperimentConfig,
    ExperimentReport, NoiseModel, ReportFormat, SetupConfig, SetupId, SimError, Verdict,
};

#[test]
fn json_round_trips_field_for_field() {
    for s in SetupConfig::all() {
        let mut cfg = ExperimentConfig::new(s.n, s.setup_id)
            .with_seed(9)
            .with_shots(2048)
            .with_noise(NoiseModel::new(0.01, 0.02, 0.015).unwrap());
        cfg.expand_permutations = s.n == 4;
        let r = run_experiment(&cfg).unwrap();
        let json = render_report(&r, ReportFormat::Json).unwrap();
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn csv_has_one_line_per_class_plus_summary() {
    for s in SetupConfig::all() {
        let r = run_experiment(&ExperimentConfig::new(s.n, s.setup_id).with_shots(1024)).unwrap();
        let csv = render_report(&r, ReportFormat::Csv).unwrap();
        assert_eq!(
            csv.lines().count(),
            collapse(&s.polynomial).unwrap().len() + 1
        );
    }
}

#[test]
fn markdown_headers() {
    let r = run_experiment(&ExperimentConfig::new(3, SetupId::Mermin)).unwrap();
    let md = render_report(&r, ReportFormat::Markdown).unwrap();
    assert!(md.contains("| 3 qubits | ⟨σxσxσy⟩ | ⟨σyσyσy⟩ | **Result** |"));
    let r = run_experiment(&ExperimentConfig::new(5, SetupId::Al)).unwrap();
    let md = render_report(&r, ReportFormat::Markdown).unwrap();
    assert!(md.contains("| 5 qubits | ⟨σxσxσxσxσx⟩ | ⟨σxσxσxσyσy⟩ | ⟨σxσyσyσyσy⟩ | **Result** |"));
}

#[test]
fn unknown_format_is_rejected() {
    assert_eq!(
        "yaml".parse::<ReportFormat>(),
        Err(SimError::Format("yaml".into()))
    );
}

#[test]
fn reports_carry_verified_bounds() {
    for s in SetupConfig::all() {
        let r = run_experiment(&ExperimentConfig::new(s.n, s.setup_id).with_shots(512)).unwrap();
        assert_eq!(r.lr_bound, lr_bound_bruteforce(&r.polynomial).unwrap());
        let lambda = eigencheck(&r.polynomial, &s.ghz_state()).unwrap();
        assert!((r.qm_value - lambda).abs() <= 1e-9);
    }
}

#[test]
fn zero_noise_always_violates() {
    for s in SetupConfig::all() {
        for seed in 0..50 {
            let r =
                run_experiment(&ExperimentConfig::new(s.n, s.setup_id).with_seed(seed)).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::ViolatesLr,
                "n={} {} seed {seed}",
                s.n,
                s.setup_id
            );
        }
    }
}

#[test]
fn reference_rows_follow_the_setup() {
    let r = run_experiment(&ExperimentConfig::new(4, SetupId::AlMod).with_shots(256)).unwrap();
    assert_eq!(r.reference.len(), 5);
    assert!(r
        .reference
        .iter()
        .all(|row| row.n == 4 && row.setup == SetupId::AlMod));
    assert_eq!(r.reference[0].machine, "Vigo");
}
