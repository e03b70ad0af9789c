use std::process::Command;

fn llps() -> Command {
    Command::new(env!("CARGO_BIN_EXE_llps"))
}

fn stdout(args: &[&str]) -> String {
    let out = llps().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn rates_sweep_csv() {
    let csv = stdout(&["rates", "--sir", "-5", "--snr", "-3:0.1:7"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "snr_db,awgn_capacity,r_int_as_noise,r_dpc,q_opt");
    assert_eq!(lines.len(), 102);
    assert!(lines[1].starts_with("-3,"));
    assert!(lines[101].starts_with("7,"));
    for l in &lines[1..] {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 5);
        // capacity dominates both binary-input rates
        assert!(v[1] >= v[2] && v[1] >= v[3], "{l}");
        assert!((0.5..=0.999).contains(&v[4]), "{l}");
    }
}

#[test]
fn optimize_at_target_rate() {
    let out = stdout(&["optimize", "--sir", "-5", "--rate", "0.4696"]);
    let get = |k: &str| -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(&format!("{k} = ")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((get("snr_db") - 0.585).abs() < 0.01);
    assert!((get("r_dpc") - 0.4696).abs() < 1e-4);
}

#[test]
fn sdm_demo_reports_full_agreement() {
    let out = stdout(&["sdm-demo", "--m", "6", "--ell", "3"]);
    assert!(out.contains("oracle agreement: 64/64 syndromes"), "{out}");
}

#[test]
fn fer_is_reproducible_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dpc.cfg");
    std::fs::write(
        &cfg,
        "# small dpc run\nscheme = llps-dpc\nz = 24\nell = 8\nk_info = 272\nsnr_db = 1.0\nmax_frames = 150\nmin_frame_errors = 10\ntiming = off\n",
    )
    .unwrap();
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        stdout(&[
            "fer",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "7",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        std::fs::read_to_string(out).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "3");
    assert_eq!(a, b);
    assert!(a.starts_with("snr_db,frames,frame_errors,bit_errors,fer,ber,elapsed_seconds,seed,config_digest\n"));
    assert!(a.lines().nth(1).unwrap().contains(",7,"));
}

#[test]
fn code_info_for_reference() {
    let out = stdout(&["code-info", "--scheme", "reference"]);
    assert!(out.contains("n = 1152, k = 576, m = 576, rank(H) = 576"), "{out}");
    assert!(out.contains("effective rate = 0.469613"), "{out}");
}

#[test]
fn errors_exit_nonzero() {
    let out = llps().arg("frobnicate").output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = llps().args(["fer", "--bogus-flag"]).output().unwrap();
    assert!(!out.status.success());

    let out = llps().args(["fer", "--set", "q=2"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("q must"));

    let out = llps().args(["fer", "--config", "/nonexistent/x.cfg"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/x.cfg"));
}
