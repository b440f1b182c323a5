use hyperperiodic::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hyperperiodic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("hyperperiodic-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn tv_closed_form_bytes() {
    let (code, out, _) = call(&["tv", "--family", "1", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"g\":2,\"n\":10,\"quotient_genus\":0,\"valencies\":[{\"theta\":1,\"lambda\":10},{\"theta\":2,\"lambda\":5},{\"theta\":1,\"lambda\":2}]}\n"
    );
    let (_, text, _) = call(&["--format", "text", "tv", "--family", "F2", "--genus", "2"]);
    assert_eq!(text, "[2,8;1/8+3/8+1/2]@0\n");
    let (_, text, _) = call(&["tv", "--family", "3", "--genus", "2", "--polygon", "--format", "text"]);
    assert_eq!(text, "[2,6;1/6+1/6+2/3]@0\n");
}

#[test]
fn classify_and_power() {
    let (code, out, _) = call(&["classify", "--json", "[2,2; 1/2 ×6]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"family\":\"F1\",\"exponent\":5}\n");
    let (_, out, _) = call(&["classify", "--tv", "[3,3;1/3+2/3x4]"]);
    assert_eq!(out, "null\n");

    let lit = "[3,14;1/14+3/7+1/2]";
    let (code, out, _) = call(&["power", "--tv", lit, "--k", "1", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[3,14;1/14+3/7+1/2]@0\n");
    // JSON input gives the same result
    let (_, json, _) = call(&["tv", "--family", "1", "--genus", "3"]);
    let (_, out, _) = call(&["power", "--tv", json.trim(), "--exponent", "7", "--format", "text"]);
    assert_eq!(out, "[3,2;1/2+1/2+1/2+1/2+1/2+1/2+1/2+1/2]@0\n");
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["classify", "--tv", "[2,3;1/2]"],
        vec!["classify", "--tv", "[2,10;1/10]"],
        vec!["classify", "--tv", "not a tv"],
        vec!["tv", "--family", "7", "--genus", "2"],
        vec!["tv", "--family", "1", "--genus", "1"],
        vec!["power", "--tv", "[2,10;1/10+2/5+1/2]"],
        vec!["frobnicate"],
        vec!["verify", "--family", "1", "--genus", "2", "--extensions", "/nonexistent/rules.json"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 2, "{args:?}: {out} {err}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = call(&["verify", "--family", "3", "--genus", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"needs_extended_rules\":false"));

    let (code, out, _) = call(&["verify", "--family", "1", "--genus", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"verdict\":\"needs-extended-rules\""));
    assert!(out.contains("\"needs_extended_rules\":true"));

    // hypothetical table entries, only to drive the exit status
    let upgrade = temp_file("up.json", r#"{"A4": {"b4": "b5"}}"#);
    let (code, out, _) = call(&["verify", "--family", "1", "--genus", "2", "--extensions", upgrade.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(!out.contains("needs-extended-rules"));

    let wrong = temp_file("wrong.json", r#"{"A4": {"b4": "b1"}}"#);
    let (code, out, _) =
        call(&["--format", "text", "verify", "--family", "1", "--genus", "2", "--extensions", wrong.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("fail") && out.ends_with("FAILED\n"));

    let clash = temp_file("clash.json", r#"{"A2": {"b1": "b1"}}"#);
    let (code, _, err) = call(&["verify", "--family", "1", "--genus", "2", "--extensions", clash.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("contradicts"));
}

#[test]
fn enumerate_and_table() {
    let (code, out, _) = call(&["enumerate", "--family", "3", "--genus", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(
        lines[0],
        "{\"element\":[1,0],\"tv\":{\"g\":2,\"n\":6,\"quotient_genus\":0,\"valencies\":[{\"theta\":1,\"lambda\":6},{\"theta\":1,\"lambda\":6},{\"theta\":2,\"lambda\":3}]}}"
    );
    let involution = lines.iter().find(|l| l.starts_with("{\"element\":[0,1]")).unwrap();
    assert!(involution.contains("\"n\":2"));
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["tv"]["n"].as_u64().unwrap() >= 2);
    }

    let (_, out, _) = call(&["--format", "text", "table", "--genus", "2"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 10 + 8 + 6 + 6);
    assert!(rows.contains(&"f1^5\t[2,2;1/2+1/2+1/2+1/2+1/2+1/2]@0\tf1^5"));
    assert!(rows.contains(&"f2^4\t[2,2;1/2+1/2+1/2+1/2+1/2+1/2]@0\tf1^5"));
    let if3 = rows.iter().find(|r| r.starts_with("I·f3^1\t")).unwrap();
    assert!(if3.ends_with("\tf3^5"), "{if3}");
}

#[test]
fn polygon_from_pairing_file() {
    let torus = temp_file("torus.json", "[[0,2],[1,3]]");
    let path = torus.to_str().unwrap();
    let (code, out, _) = call(&["--format", "text", "polygon", "--pairing", path, "--step", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("m=4 genus=1 step=1 order=4\n"));
    assert!(out.ends_with("[1,4;1/4+1/4+1/2]@0\n"));
    let (_, out, _) = call(&["polygon", "--pairing", path, "--m", "4", "--step", "1", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["tv"]["valencies"].as_array().unwrap().len(), 4);

    let (code, _, _) = call(&["polygon", "--pairing", path, "--step", "2", "--m", "6"]);
    assert_eq!(code, 2);
    let (code, out, _) = call(&["polygon", "--family", "2", "--genus", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"m\":24") && out.contains("\"genus\":3"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["enumerate", "--family", "1", "--genus", "4"],
        vec!["table", "--genus", "3"],
        vec!["verify", "--family", "2", "--genus", "4"],
        vec!["polygon", "--family", "3", "--genus", "5"],
    ] {
        assert_eq!(call(&args), call(&args), "{args:?}");
    }
}
