use std::f64::consts::{FRAC_PI_8, LN_2};

use infotherm_core::sweep::{
    cmd_fig3, cmd_fig4, cmd_sweep, fig4_default_temperatures, tomo_demo, Mode, SamplingConfig, SweepConfig,
    Temperature, ThetaGrid,
};

const TILDE_BETA1: f64 = -0.582_203_108_888_217_9;
const CORRELATION_BETA1: f64 = -1.275_350_289_448_163_2;

fn temps(list: &[&str]) -> Vec<Temperature> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn sampled(seed: u64, resamples: usize) -> SweepConfig {
    SweepConfig {
        theta: ThetaGrid { min: 0.0, max: FRAC_PI_8, steps: 3 },
        temperatures: temps(&["0", "1"]),
        mode: Mode::Sampled,
        sampling: Some(SamplingConfig { n0: 10_000, shots: 2_000, resamples, seed }),
        ..Default::default()
    }
}

fn values(t: &infotherm_core::sweep::Table, col: &str) -> Vec<f64> {
    t.column(col).unwrap().into_iter().map(|v| v.unwrap()).collect()
}

#[test]
fn zero_temperature_sweep() {
    let t = cmd_sweep(&SweepConfig::default()).unwrap();
    assert_eq!(t.rows.len(), 33);
    assert!(values(&t, "go_info_nats").iter().all(|v| v.abs() <= 1e-9));
    assert!(values(&t, "s_irr_nats").iter().all(|&v| v == 0.0));
    assert!(t.rows.iter().all(|r| r.is_zero_temperature));
    assert!(!t.columns.iter().any(|c| c.ends_with("_err")));
    assert_eq!(
        t.columns.join(","),
        "theta_rad,beta_inv,p0,p1,shannon_nats,s_signal_nats,go_info_nats,tilde_info_nats,residual_nats,\
         w_meas,delta_f,s_irr_nats,bound_gap_nats,w_extract"
    );
}

#[test]
fn unit_temperature_sweep() {
    let cfg = SweepConfig { temperatures: temps(&["1"]), ..Default::default() };
    let t = cmd_sweep(&cfg).unwrap();
    for v in values(&t, "tilde_info_nats") {
        assert!((v - TILDE_BETA1).abs() <= 1e-9);
    }
    for v in values(&t, "bound_gap_nats") {
        assert!((v - LN_2).abs() <= 1e-9);
    }
}

#[test]
fn rows_ordered_by_temperature_then_theta() {
    let cfg = SweepConfig {
        theta: ThetaGrid { min: 0.0, max: 0.3, steps: 4 },
        temperatures: temps(&["2", "inf", "0", "0.5"]),
        ..Default::default()
    };
    let t = cmd_sweep(&cfg).unwrap();
    let b: Vec<f64> = values(&t, "beta_inv");
    let th: Vec<f64> = values(&t, "theta_rad");
    for i in 1..b.len() {
        assert!(b[i - 1] < b[i] || (b[i - 1] == b[i] && th[i - 1] < th[i]));
    }
    assert_eq!(t.value(15, "beta_inv"), Some(f64::INFINITY));
    assert_eq!(t.value(15, "delta_f"), None);
    assert!(t.to_csv().lines().last().unwrap().starts_with("0.3,inf,"));
}

#[test]
fn empty_grid_is_rejected() {
    let cfg = SweepConfig { theta: ThetaGrid { min: 0.0, max: 0.1, steps: 0 }, ..Default::default() };
    assert!(cmd_sweep(&cfg).is_err());
    assert!(cmd_fig3(&cfg).is_err());
}

#[test]
fn sampled_mode_has_error_columns_and_is_reproducible() {
    let a = cmd_sweep(&sampled(3, 20)).unwrap();
    let b = cmd_sweep(&sampled(3, 20)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    for col in ["p0", "shannon_nats", "tilde_info_nats", "bound_gap_nats", "w_extract"] {
        assert!(a.column_index(&format!("{col}_err")).is_some(), "{col}");
    }
    assert!(a.column_index("s_irr_nats_err").is_none());
    assert_eq!(a.metadata_value("seed"), Some("3"));
    assert_eq!(a.metadata_value("rng_algorithm"), Some("chacha8-splitmix64-v1"));
    assert_ne!(a.to_csv(), cmd_sweep(&sampled(4, 20)).unwrap().to_csv());
}

#[test]
fn output_independent_of_thread_count() {
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| cmd_sweep(&sampled(9, 16)).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.to_csv(), four.to_csv());
    assert_eq!(one.to_json(), four.to_json());
}

#[test]
fn csv_and_json_agree() {
    let t = cmd_sweep(&sampled(1, 10)).unwrap();
    let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    let csv = t.to_csv();
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (i, line) in lines.enumerate() {
        for (name, field) in header.iter().zip(line.split(',')) {
            let j = &json["rows"][i][*name];
            match field {
                "nan" => assert!(j.is_null()),
                "inf" => assert_eq!(j, "inf"),
                _ => {
                    let a: f64 = field.parse().unwrap();
                    let b = j.as_f64().unwrap();
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "{name}: {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn fig3_columns() {
    let t = cmd_fig3(&SweepConfig::default()).unwrap();
    assert_eq!(t.columns, ["theta_rad", "shannon_nats", "go_info_nats", "residual_nats"]);
    for i in 0..t.rows.len() {
        assert!((t.value(i, "shannon_nats").unwrap() - LN_2).abs() <= 1e-12);
        assert!(t.value(i, "go_info_nats").unwrap().abs() <= 1e-9);
        assert!((t.value(i, "residual_nats").unwrap() + LN_2).abs() <= 1e-9);
    }
    let s = cmd_fig3(&sampled(2, 10)).unwrap();
    assert_eq!(s.columns.len(), 10);
    assert!(s.column_index("go_info_nats_sampled_err").is_some());
    assert!(s.rows.iter().all(|r| r.is_zero_temperature));
}

#[test]
fn fig4_surface() {
    let mut all = fig4_default_temperatures();
    assert_eq!(all.len(), 21);
    assert!(all[0].is_zero());
    assert_eq!(all[20].beta_inv(), 5.0);
    all.push("inf".parse().unwrap());
    let cfg = SweepConfig { temperatures: all, theta: ThetaGrid { steps: 9, ..Default::default() }, ..Default::default() };
    let t = cmd_fig4(&cfg).unwrap();
    assert_eq!(t.rows.len(), 22 * 9);
    for chunk in t.rows.chunks(9) {
        let j = t.column_index("tilde_info_nats").unwrap();
        let v: Vec<f64> = chunk.iter().map(|r| r.cells[j].value().unwrap()).collect();
        let spread = v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-9);
    }
    let corr = values(&t, "correlation_nats");
    let beta_inv = values(&t, "beta_inv");
    for (c, b) in corr.iter().zip(&beta_inv) {
        if *b == 1.0 {
            assert!((c - CORRELATION_BETA1).abs() <= 1e-9);
        }
        if b.is_infinite() {
            assert!((c + 2.0 * LN_2).abs() <= 1e-9);
        }
    }
    assert!(values(&t, "bound_gap_nats").iter().all(|g| (g - LN_2).abs() <= 1e-9));
}

#[test]
fn tomo_demo_reports_both_outcomes() {
    let cfg = SweepConfig {
        theta: ThetaGrid { min: FRAC_PI_8, max: FRAC_PI_8, steps: 1 },
        ..Default::default()
    };
    let text = tomo_demo(&cfg).unwrap();
    assert!(text.contains("outcome 0 (D): p_hat=0.5"));
    assert!(text.contains("rho_hat  = [[0.000000+0.000000i, 0.000000+0.000000i], [0.000000+0.000000i, 1.000000+0.000000i]]"), "{text}");
    let again = tomo_demo(&sampled(5, 2)).unwrap();
    assert_eq!(again, tomo_demo(&sampled(5, 2)).unwrap());
}
