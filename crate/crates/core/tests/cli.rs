use std::process::{Command, Output};

fn nefhilb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefhilb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn weyl_orbit_counts() {
    let out = nefhilb(&["weyl", "orbit", "--start", "E9", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 171);
    assert_eq!(v["counts_by_degree"]["0"], 9);
    assert_eq!(v["counts_by_degree"]["1"], 36);
}

#[test]
fn surface_nef_exit_codes() {
    let ok = nefhilb(&["surface", "nef", "--divisor", "H", "--max-degree", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = r#"{"h":"1","e":["2","0","0","0","0","0","0","0","0"]}"#;
    let out = nefhilb(&["surface", "nef", "--divisor", bad, "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"]["kind"], "not_nef");
    let out = nefhilb(&["surface", "nef", "--divisor", "not a class"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ample_family() {
    for which in ["A1", "A2"] {
        let out = nefhilb(&["surface", "ample-family", "--n", "4", "--which", which]);
        assert_eq!(out.status.code(), Some(0), "{which}");
        assert_eq!(json(&out)["ample"], true);
    }
    assert_eq!(
        nefhilb(&["surface", "ample-family", "--n", "4", "--which", "A3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn walls_and_theorem_write_files() {
    let dir = std::env::temp_dir().join(format!("nefhilb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert.json");
    let out = nefhilb(&[
        "walls",
        "gieseker",
        "--slice",
        "A2",
        "--n",
        "4",
        "--max-degree",
        "2",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["wall"]["center"], "-1");
    assert_eq!(v["wall"]["radius_sq"], "1");

    let rep = dir.join("thm.json");
    let out = nefhilb(&[
        "hilb",
        "check-theorem",
        "--n",
        "3",
        "--max-degree",
        "1",
        "--out",
        rep.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["violations"], 0);
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(
        nefhilb(&["hilb", "check-theorem", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn coverage_is_seeded() {
    let args = [
        "--seed",
        "3",
        "coneconj",
        "cover",
        "--n",
        "3",
        "--samples",
        "5",
        "--max-degree",
        "2",
    ];
    let a = nefhilb(&args);
    let b = nefhilb(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 3);
}

#[test]
fn campaign_exit_codes() {
    let out = nefhilb(&[
        "--threads",
        "2",
        "campaign",
        "run",
        "--n-min",
        "3",
        "--n-max",
        "3",
        "--max-degree",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["certified"], true);
    assert_eq!(
        nefhilb(&["campaign", "run", "--n-min", "2", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nefhilb(&["campaign", "run", "--max-degree", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nefhilb(&["campaign", "run", "--slices", "A1,B7"])
            .status
            .code(),
        Some(2)
    );
}
