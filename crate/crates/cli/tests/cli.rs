use std::process::{Command, Output};

fn hsosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsosc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<csv::StringRecord> {
    let text = stdout(o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(Result::unwrap).collect()
}

fn header(o: &Output) -> Vec<String> {
    let text = stdout(o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.headers().unwrap().iter().map(str::to_string).collect()
}

fn json(o: &Output) -> Vec<serde_json::Value> {
    serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap().as_array().unwrap().clone()
}

fn col(o: &Output, name: &str) -> usize {
    header(o).iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn fac_first_order_ground_state_row() {
    let o = hsosc(&["select", "--method", "fac", "--orders", "1", "--n", "0", "--g", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][col(&o, "z_chosen")], "2.50000000000e-1");
    assert_eq!(&rows[0][col(&o, "rule")], "smallest-root");
    assert_eq!(&rows[0][col(&o, "status")], "ok");
}

#[test]
fn variational_ratios_in_json() {
    let o = hsosc(&["select", "--method", "var1", "--n", "0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    let ratios: Vec<f64> = rows.iter().map(|r| r["ratio"].as_f64().unwrap()).collect();
    assert!((ratios[0] - 1.00076).abs() < 5e-4 && (ratios[1] - 1.00066).abs() < 5e-4, "{ratios:?}");
    let keys: Vec<Vec<&String>> = rows.iter().map(|r| r.as_object().unwrap().keys().collect()).collect();
    assert_eq!(keys[0], keys[1]);
}

#[test]
fn pms_third_order_ratios() {
    let o = hsosc(&["select", "--method", "pms", "--orders", "3", "--n", "0..5", "--g", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 6);
    let c = col(&o, "ratio");
    for r in &rows {
        let ratio: f64 = r[c].parse().unwrap();
        assert!((0.99..=1.01).contains(&ratio), "{ratio}");
    }
}

#[test]
fn selection_usage_errors() {
    assert_eq!(hsosc(&["select", "--method", "var1", "--orders", "2"]).status.code(), Some(1));
    assert_eq!(hsosc(&["select", "--method", "fac", "--orders", "4"]).status.code(), Some(1));
    assert_eq!(hsosc(&["select", "--method", "newton"]).status.code(), Some(1));
    assert_eq!(hsosc(&["select", "--method", "fac", "--g", "-1"]).status.code(), Some(1));
    assert_eq!(hsosc(&["select", "--method", "fac", "--n", "3..1"]).status.code(), Some(1));
}

#[test]
fn failed_selection_is_flagged_and_strict_exits_nonzero() {
    // the left stationary pair of k3 is gone for n = 2 at g = 0.5
    let args = ["select", "--method", "pms", "--orders", "3", "--n", "2", "--g", "0.5"];
    let lax = hsosc(&args);
    assert_eq!(lax.status.code(), Some(0));
    let rows = csv_rows(&lax);
    assert!(rows[0][col(&lax, "status")].starts_with("error: no stationary point"));
    assert_eq!(&rows[0][col(&lax, "z_chosen")], "");
    let mut strict = args.to_vec();
    strict.push("--strict");
    let o = hsosc(&strict);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(o.stdout, lax.stdout);
}

#[test]
fn exact_pure_quartic_table() {
    let o = hsosc(&["exact", "--g", "0", "--levels", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o), ["n", "g", "energy", "error_estimate", "basis_used", "basis_omega", "converged", "rel_tol"]);
    let expected = [0.42080497, 1.50790124, 2.95879569, 4.62122032, 6.45350993, 8.42845388];
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 6);
    for (r, e) in rows.iter().zip(expected) {
        let v: f64 = r[2].parse().unwrap();
        assert!((v - e).abs() < 1e-8, "{v} vs {e}");
        assert_eq!(&r[6], "true");
    }
}

#[test]
fn exact_near_harmonic_and_tolerance() {
    let o = hsosc(&["exact", "--g", "1e6", "--levels", "2"]);
    for (n, r) in csv_rows(&o).iter().enumerate() {
        let v: f64 = r[2].parse().unwrap();
        let harmonic = (n as f64 + 0.5) * 1000.0;
        assert!((v / harmonic - 1.0).abs() < 1e-3);
    }
    let o = hsosc(&["exact", "--levels", "1", "--tol", "1e-12"]);
    let rows = csv_rows(&o);
    assert_eq!(&rows[0][7], "1.00000000000e-12");
    let est: f64 = rows[0][3].parse().unwrap();
    assert!(est < 1e-12);
    assert_eq!(hsosc(&["exact", "--levels", "0"]).status.code(), Some(1));
    assert_eq!(hsosc(&["exact", "--tol", "0"]).status.code(), Some(1));
}

#[test]
fn exact_non_convergence_exits_two() {
    let o = hsosc(&["exact", "--levels", "60", "--tol", "1e-15"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not converged"));
}

#[test]
fn zsweep_two_steps() {
    let o = hsosc(&["zsweep", "--n", "0", "--g", "0", "--z", "0.05:8:2", "--tags", "k0,k1,k2,k3", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o), ["n", "g", "z", "tag", "value", "exact"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 8);
    for (i, tag) in ["k0", "k1", "k2", "k3"].iter().enumerate() {
        assert_eq!(&rows[2 * i][3], *tag);
        assert_eq!(&rows[2 * i][2], "5.00000000000e-2");
        assert_eq!(&rows[2 * i + 1][2], "8.00000000000e0");
    }
    assert!(rows.iter().all(|r| &r[5] == "4.20804974475e-1"));
}

#[test]
fn zsweep_default_grid_is_increasing() {
    let o = hsosc(&["zsweep", "--n", "2", "--tags", "h1,k3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 800);
    for series in rows.chunks(400) {
        assert!(series.iter().all(|r| r[3] == series[0][3]));
        let z: Vec<f64> = series.iter().map(|r| r[2].parse().unwrap()).collect();
        assert!(z.windows(2).all(|w| w[0] < w[1]));
        assert!(series.iter().all(|r| r[5].is_empty()));
    }
}

#[test]
fn zsweep_usage_errors() {
    assert_eq!(hsosc(&["zsweep", "--z", "1:0:3"]).status.code(), Some(1));
    assert_eq!(hsosc(&["zsweep", "--z", "0.1:1:1"]).status.code(), Some(1));
    assert_eq!(hsosc(&["zsweep", "--tags", "k4"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["zsweep", "--n", "0..3", "--z", "0.1:5:50", "--format", "json"];
    assert_eq!(hsosc(&args).stdout, hsosc(&args).stdout);
    let args = ["spread", "--n", "0..2"];
    assert_eq!(hsosc(&args).stdout, hsosc(&args).stdout);
}

#[test]
fn spreads_shrink_under_resummation() {
    let o = hsosc(&["spread", "--n", "0..5", "--g", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let (k3, h1) = (col(&o, "k3_spread"), col(&o, "h1_spread"));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let (a, b): (f64, f64) = (r[k3].parse().unwrap(), r[h1].parse().unwrap());
        assert!(b < a && b > 0.0);
    }
}

#[test]
fn report_lists_every_criterion() {
    let o = hsosc(&["report"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 13);
    assert!(lines.iter().all(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")));
    assert!(text.contains("1.000757") && text.contains("1.000660"));
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 3 }));
}

#[test]
fn report_detects_corrupted_third_order_term() {
    let o = hsosc(&["report", "--flip-e3-sign", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let rows = json(&o);
    let transcription = rows.iter().find(|r| r["id"] == "9").unwrap();
    assert_eq!(transcription["passed"], false);
}

#[test]
fn help_and_missing_command() {
    assert_eq!(hsosc(&["--help"]).status.code(), Some(0));
    assert_eq!(hsosc(&["--version"]).status.code(), Some(0));
    assert_eq!(hsosc(&[]).status.code(), Some(1));
}
