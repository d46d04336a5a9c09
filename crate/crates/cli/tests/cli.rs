use std::process::Command;

fn gfl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gfl"))
}

#[test]
fn seq_term_prints_value() {
    let out = gfl()
        .args(["seq", "term", "--a", "1", "--b", "1", "--x0", "0", "--x1", "1", "--n", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "55");
}

#[test]
fn seq_gfl_prints_value() {
    // seeds g_0 = p + 2q = 3, g_1 = q = 1, then 4, 5, 9, 14
    let out = gfl()
        .args(["seq", "gfl", "--p", "1", "--q", "1", "--n", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "14");
}

#[test]
fn verify_emits_schema_stable_json_and_exit_zero() {
    let out = gfl()
        .args(["verify", "prop33", "--p", "-2..2", "--q", "-2..2", "--n", "2..40"])
        .env("GFL_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = v.as_object().unwrap();
    for key in ["command", "ranges", "total_checks", "failures", "errata", "wall_time_ms"] {
        assert!(obj.contains_key(key), "missing key {}", key);
    }
    assert_eq!(obj["total_checks"].as_u64().unwrap(), 25 * 39);
    assert_eq!(obj["failures"].as_array().unwrap().len(), 0);
    assert_eq!(
        obj["command"].as_str().unwrap(),
        "gfl verify prop33 --p -2..2 --q -2..2 --n 2..40"
    );
}

#[test]
fn order_remark41_reports_product_escape_with_exit_one() {
    let out = gfl()
        .args(["order", "remark41", "--gamma1", "-1", "--gamma2", "-1"])
        .output()
        .unwrap();
    // generator products leave the lattice, so the sweep reports failures
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert!(failures[0]["left"]
        .as_str()
        .unwrap()
        .starts_with("0 membership failures"));
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = gfl().arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_round_trip_is_byte_identical() {
    let dir = std::env::temp_dir().join(format!("gfl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let plain = dir.join("plain.bin");
    let frame = dir.join("frame.bin");
    let back = dir.join("back.bin");
    let payload: Vec<u8> = (0..10_000u32).map(|i| (i * 31 % 251) as u8).collect();
    std::fs::write(&plain, &payload).unwrap();

    let enc = gfl()
        .args(["code", "encode", "--in"])
        .arg(&plain)
        .arg("--out")
        .arg(&frame)
        .output()
        .unwrap();
    assert!(enc.status.success(), "stderr: {}", String::from_utf8_lossy(&enc.stderr));

    let dec = gfl()
        .args(["code", "decode", "--in"])
        .arg(&frame)
        .arg("--out")
        .arg(&back)
        .output()
        .unwrap();
    assert!(dec.status.success(), "stderr: {}", String::from_utf8_lossy(&dec.stderr));
    assert_eq!(std::fs::read(&back).unwrap(), payload);

    // decoding with a mismatched configuration is a frame error, exit 2
    let bad = gfl()
        .args(["code", "decode", "--n", "3", "--in"])
        .arg(&frame)
        .arg("--out")
        .arg(&back)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
