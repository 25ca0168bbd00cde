use pointline::repro::{self, Status};

#[test]
fn thm_c_flags_the_alexander_table() {
    let r = repro::thm_c().unwrap();
    assert!(r.ok(), "{r}");
    let flagged: Vec<&str> = r.rows.iter().filter(|x| x.status == Status::PaperInconsistent).map(|x| x.item.as_str()).collect();
    assert_eq!(flagged, ["m(alpha_6), order 3", "m(alpha_12), order 3", "deg Delta"]);
    assert_eq!(r.row("chi(U)").unwrap().computed, "36");
    assert_eq!(r.row("deg Delta^2 (stated Delta)").unwrap().computed, "620");
}

#[test]
fn reports_are_deterministic() {
    let a = repro::thm_b().unwrap();
    let b = repro::thm_b().unwrap();
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert_eq!(a.count(Status::Mismatch), 0);
    assert_eq!(a.to_json()["rows"][0]["status"], "MATCH");
}

#[test]
fn unknown_report() {
    assert!(repro::run("thmZ").is_err());
}
