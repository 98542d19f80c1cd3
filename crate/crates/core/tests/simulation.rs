use rmprod::sim::{self, render_csv, OutputFormat, CSV_HEADER};
use rmprod::{run_point, DecodeMode, ProductCode, SimConfig, StoppingRule};

fn config(workers: usize, format: OutputFormat) -> SimConfig {
    SimConfig {
        code: "rm(4,1)xrm(2,1)".into(),
        decoder: DecodeMode::Soft,
        iterations: 2,
        ebno_db: vec![1.0, 2.0, 3.0],
        stopping: StoppingRule::new(30, 20_000).unwrap(),
        seed: 1234,
        format,
        workers: Some(workers),
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let outputs: Vec<String> = [1, 2, 4]
            .iter()
            .map(|&w| {
                let cfg = config(w, format);
                sim::render(&cfg, &sim::run_sweep(&cfg).unwrap()).unwrap()
            })
            .collect();
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[0], outputs[2]);
    }
}

#[test]
fn stopping_rule_invariants() {
    let points = sim::run_sweep(&config(2, OutputFormat::Csv)).unwrap();
    for p in &points {
        assert!(p.frames <= 20_000);
        assert!(p.block_errors == 30 || p.frames == 20_000, "{p:?}");
        assert!(p.bler_ci_lo <= p.bler && p.bler <= p.bler_ci_hi);
        assert!(p.bit_errors >= p.block_errors);
    }
    // more noise, more errors
    assert!(points.windows(2).all(|w| w[0].bler >= w[1].bler));
}

#[test]
fn different_seeds_differ() {
    let mut a = config(1, OutputFormat::Csv);
    let b = sim::run_sweep(&a).unwrap();
    a.seed += 1;
    assert_ne!(sim::run_sweep(&a).unwrap(), b);
}

#[test]
fn hard_passing_is_cheaper() {
    let code = ProductCode::parse("rm(5,1)xrm(2,1)").unwrap();
    let rule = StoppingRule::new(1_000, 500).unwrap();
    let soft = run_point(&code, DecodeMode::Soft, 3, 2.0, rule, 0).unwrap();
    let hard = run_point(&code, DecodeMode::Hard, 3, 2.0, rule, 0).unwrap();
    assert!(hard.ops_per_decode < soft.ops_per_decode);
}

#[test]
fn high_snr_is_error_free() {
    let code = ProductCode::parse("rm(3,1)xrm(3,2)").unwrap();
    let rule = StoppingRule::new(1, 2_000).unwrap();
    let p = run_point(&code, DecodeMode::Soft, 2, 40.0, rule, 9).unwrap();
    assert_eq!((p.frames, p.block_errors, p.bit_errors), (2_000, 0, 0));
    assert_eq!(p.bler_ci_lo, 0.0);
}

#[test]
fn empty_grid_yields_header_only() {
    let mut cfg = config(1, OutputFormat::Csv);
    cfg.ebno_db = sim::parse_ebno_grid("").unwrap();
    let points = sim::run_sweep(&cfg).unwrap();
    assert!(points.is_empty());
    assert_eq!(render_csv(&points), format!("{CSV_HEADER}\n"));
}

#[test]
fn json_report_round_trips() {
    let cfg = config(1, OutputFormat::Json);
    let points = sim::run_sweep(&cfg).unwrap();
    let text = sim::render(&cfg, &points).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert_eq!(v["config"]["code"], "rm(4,1)xrm(2,1)");
    let back: Vec<rmprod::SimPoint> = serde_json::from_value(v["points"].clone()).unwrap();
    assert_eq!(back, points);
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = config(1, OutputFormat::Csv);
    cfg.iterations = 0;
    assert!(sim::run_sweep(&cfg).is_err());
    let mut cfg = config(1, OutputFormat::Csv);
    cfg.code = "rm(2,3)".into();
    assert!(sim::run_sweep(&cfg).is_err());
    let mut cfg = config(1, OutputFormat::Csv);
    cfg.ebno_db = vec![f64::NAN];
    assert!(sim::run_sweep(&cfg).is_err());
}
