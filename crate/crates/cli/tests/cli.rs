use std::path::PathBuf;
use std::process::{Command, Output};

fn fsocap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsocap")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    root.to_str().unwrap().to_string()
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("scenario.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn point_prints_value_units_and_method() {
    let out = fsocap(&["capacity", "point", "--config", &config("rln_imdd_k5_xi1.1_s3.json"), "--engine", "high_snr"]);
    assert!(out.status.success());
    let line = stdout(&out);
    let fields: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(fields[1..], ["nats", "high_snr"]);
    let value: f64 = fields[0].parse().unwrap();
    assert!((value - 4.482).abs() < 0.02, "{value}");
}

#[test]
fn point_monte_carlo_is_seed_reproducible() {
    let args = [
        "capacity",
        "point",
        "--config",
        &config("rln_imdd_k5_xi1.1_s3.json"),
        "--engine",
        "monte_carlo",
        "--seed",
        "5",
        "--units",
        "bits",
    ];
    let a = stdout(&fsocap(&args));
    let b = stdout(&fsocap(&args));
    assert_eq!(a, b);
    assert!(a.contains(" bits monte_carlo stderr="), "{a}");
    let nats: f64 = a.split_whitespace().next().unwrap().parse::<f64>().unwrap() * std::f64::consts::LN_2;
    assert!((nats - 4.66).abs() < 0.05, "{nats}");
}

#[test]
fn sweep_writes_sorted_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let status = fsocap(&[
        "capacity",
        "sweep",
        "--config",
        &config("gg_heterodyne_a2.296_b2.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("snr_db,engine,capacity,stderr,units"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 13 * 4);
    let keys: Vec<(f64, String)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    assert_eq!(keys, sorted);
    for r in &rows {
        assert_eq!(r[4], "nats");
        assert_eq!(r[3].is_empty(), r[1] != "monte_carlo");
        assert!(r[2].parse::<f64>().unwrap().is_finite());
    }
}

#[test]
fn every_shipped_config_is_valid() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = fso_capacity_cli::Config::from_path(&path).unwrap();
        cfg.sweep_spec().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        cfg.point_scenario().unwrap();
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn exit_codes_follow_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad_engine = fsocap(&["capacity", "point", "--config", &config("gg_heterodyne_a2.296_b2.json"), "--engine", "nope"]);
    assert_eq!(bad_engine.status.code(), Some(2));

    let cfg = write_config(&dir, r#"{ "turbulence": { "model": "lognormal", "sigma": 1.5 }, "detection": "im_dd", "snr": { "db": 10 } }"#);
    let invalid = fsocap(&["capacity", "point", "--config", &cfg, "--engine", "high_snr"]);
    assert_eq!(invalid.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("turbulence.sigma"));

    let cfg = write_config(&dir, r#"{ "turbulence": { "model": "lognormal", "sigma": 0.35 }, "pointing": { "xi": 1.1, "s": 1.0 }, "detection": "im_dd", "snr": { "db": 10 } }"#);
    let precondition = fsocap(&["capacity", "point", "--config", &cfg, "--engine", "gauss_hermite"]);
    assert_eq!(precondition.status.code(), Some(3));

    let cfg = write_config(&dir, r#"{ "turbulence": { "model": "gamma_gamma", "alpha": 2.0, "beta": 2.0 }, "pointing": { "xi": 6.7 }, "detection": "heterodyne", "snr": { "db": 30 } }"#);
    let pole = fsocap(&["capacity", "point", "--config", &cfg, "--engine", "meijer_expansion"]);
    assert_eq!(pole.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("perturb alpha"));

    let cfg = write_config(&dir, r#"{ "turbulence": { "model": "lognormal", "sigma": 0.35 }, "detection": "im_dd", "snr": { "db": 10 } }"#);
    let overflow = fsocap(&["moments", "--config", &cfg, "--n", "1e6"]);
    assert_eq!(overflow.status.code(), Some(4));
}

#[test]
fn sample_and_moments_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("draws.csv");
    let cfg = config("malaga_imdd_a2.296_b2.json");
    let run = fsocap(&["sample", "--config", &cfg, "--count", "20000", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let draws: Vec<f64> = std::fs::read_to_string(&out).unwrap().lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(draws.len(), 20000);
    assert!(draws.iter().all(|&g| g > 0.0));
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;

    let m = fsocap(&["moments", "--config", &cfg, "--n", "1"]);
    assert!(m.status.success());
    let text = stdout(&m);
    let first = text.lines().next().unwrap();
    let closed: f64 = first.rsplit(' ').next().unwrap().parse().unwrap();
    // 30 dB average SNR: the first moment equals γ̄₂ = 1000.
    assert!((closed - 1000.0).abs() < 1e-6, "{first}");
    assert!((mean - closed).abs() / closed < 0.05, "{mean} vs {closed}");
}
