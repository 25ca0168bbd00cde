//! End-to-end acceptance run. Every criterion prints one PASS/FAIL line with
//! its timing; the test fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pointline::arrangement::{gen_c8, gen_hesse, gen_ngon, Arrangement, Selector};
use pointline::exact::parse::parse_univariate;
use pointline::exact::{FieldElement, MultiPoly, NumberField, Var};
use pointline::fixtures;
use pointline::freeness::{freeness_certificate, syzygy_space_dim, CurveSpec, MdrOptions, Verdict};
use pointline::monodromy::{
    alexander_from_table, compare_with_polynomial, degree_identity_check, euler_complement, total_milnor,
    MonodromyTable,
};
use pointline::pencil::{assemble_conic_line, cubic_kernel_dim, cubics_through, degenerate_members};
use pointline::projgeom::ProjLine;
use pointline::repro::Status;
use pointline::rigidity::{matroid_from_lattice, rigidity_check, RigidityVerdict};
use pointline::unexpected::{slp_failures, unexpected_degrees};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn nk(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn repro_json(which: &str) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pointline"))
        .args(["--json", "repro", which])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "repro {which} exited with {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn row_status(report: &Value, item: &str) -> Result<String, String> {
    report["rows"]
        .as_array()
        .and_then(|rows| rows.iter().find(|r| r["item"] == item))
        .and_then(|r| r["status"].as_str())
        .map(str::to_string)
        .ok_or_else(|| format!("row '{item}' missing"))
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t <= limit, "{what} took {t:.2?}, limit {limit:?}");
    Ok(t)
}

fn crit1() -> Result<String, String> {
    let start = Instant::now();
    let rep = repro_json("thmA")?;
    within(start, Duration::from_secs(10), "repro thmA")?;
    ensure!(rep["ok"] == true, "thmA report has mismatches");
    for item in ["lines", "equals printed equations", "H57 n_k", "H57 double count"] {
        ensure!(row_status(&rep, item)? == "MATCH", "thmA row '{item}' is not MATCH");
    }
    let out = gen_hesse().lambda(&Selector::AtLeast(2), &Selector::AtLeast(2)).map_err(|e| e.to_string())?;
    let fixture = fixtures::h57().map_err(|e| e.to_string())?;
    ensure!(out.line_set() == fixture.line_set(), "Lambda(Hesse) differs from the fixture");
    let lat = out.lattice().map_err(|e| e.to_string())?;
    ensure!(lat.nk == nk(&[(2, 252), (3, 108), (4, 72), (8, 21)]), "n_k = {}", lat.nk_string());
    ensure!(lat.pair_count() == 57 * 56 / 2, "double count {}", lat.pair_count());
    Ok(format!("57 lines, {}, 1596 pairs", lat.nk_string()))
}

fn crit2() -> Result<String, String> {
    let start = Instant::now();
    let rep = repro_json("thmB")?;
    within(start, Duration::from_secs(10), "repro thmB")?;
    ensure!(rep["ok"] == true, "thmB report has mismatches");
    let two = Selector::exact_in([2]).map_err(|e| e.to_string())?;
    let out = gen_c8().lambda(&two, &Selector::AtLeast(3)).map_err(|e| e.to_string())?;
    let fixture = fixtures::o33().map_err(|e| e.to_string())?;
    ensure!(out.line_set() == fixture.line_set(), "Lambda(C8) differs from the fixture");
    let lat = out.lattice().map_err(|e| e.to_string())?;
    ensure!(lat.nk == nk(&[(2, 108), (3, 40), (5, 16), (8, 5)]), "n_k = {}", lat.nk_string());
    Ok(format!("33 lines, {}", lat.nk_string()))
}

fn certify(curve: &CurveSpec, tau: u64, expect: (u32, u32), limit: Duration, name: &str) -> Result<String, String> {
    let start = Instant::now();
    let probe = freeness_certificate(curve, tau, MdrOptions { modular_only: true }).map_err(|e| e.to_string())?;
    let t_probe = start.elapsed();
    ensure!(probe.d1 == Some(expect.0), "{name}: modular mdr {:?}", probe.d1);
    let start = Instant::now();
    let cert = freeness_certificate(curve, tau, MdrOptions::default()).map_err(|e| e.to_string())?;
    let witness = cert.witness.as_ref().ok_or(format!("{name}: no exact witness"))?;
    ensure!(witness.verify(curve).map_err(|e| e.to_string())?, "{name}: witness fails the identity");
    let t = within(start, limit, name)?;
    ensure!(cert.exact, "{name}: certificate is not exact");
    ensure!(cert.verdict == Verdict::Free { d1: expect.0, d2: expect.1 }, "{name}: {}", cert.verdict);
    Ok(format!("{name} {} tau {tau} (probe {t_probe:.1?}, exact {t:.1?})", cert.verdict))
}

fn crit3() -> Result<String, String> {
    let cl = fixtures::cl().map_err(|e| e.to_string())?;
    let pts = fixtures::cl_base_points().map_err(|e| e.to_string())?.points;
    let members = degenerate_members(&cubics_through(&pts).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (_, lat) = assemble_conic_line(&members.members, &pts).map_err(|e| e.to_string())?;
    ensure!(lat.tau() == 237, "CL tau {}", lat.tau());
    let mut parts = vec![certify(&CurveSpec::from_file(&cl).map_err(|e| e.to_string())?, 237, (4, 13), Duration::from_secs(30), "CL")?];
    for (arr, tau, exps, limit, name) in [
        (fixtures::o33(), 769, (15, 17), Duration::from_secs(300), "O33"),
        (fixtures::h57(), 2361, (25, 31), Duration::from_secs(45 * 60), "H57"),
    ] {
        let arr = arr.map_err(|e| e.to_string())?;
        let lt = arr.lattice().map_err(|e| e.to_string())?.tau();
        ensure!(lt == tau, "{name} tau {lt}");
        parts.push(certify(&CurveSpec::from_arrangement(&arr).map_err(|e| e.to_string())?, tau, exps, limit, name)?);
    }
    Ok(parts.join("; "))
}

fn crit4() -> Result<String, String> {
    let mut parts = Vec::new();
    for (arr, expect) in [(fixtures::h57(), 65), (fixtures::o33(), 41)] {
        let arr = arr.map_err(|e| e.to_string())?;
        let start = Instant::now();
        let rep = rigidity_check(&arr, &matroid_from_lattice(&arr.lattice().map_err(|e| e.to_string())?))
            .map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(300), "rigidity")?;
        ensure!(rep.kernel_dim == expect, "{} lines: kernel {}", arr.len(), rep.kernel_dim);
        let primes: BTreeSet<u64> = rep.modular.iter().map(|m| m.0).collect();
        ensure!(primes.len() >= 2, "fewer than two modular oracles");
        ensure!(rep.modular.iter().all(|m| m.1 == expect), "modular kernels {:?}", rep.modular);
        ensure!(rep.verdict == RigidityVerdict::FirstOrderRigid, "verdict {}", rep.verdict);
        parts.push(format!("{}: {expect}", arr.len()));
    }
    let g = fixtures::generic5().map_err(|e| e.to_string())?;
    let rep = rigidity_check(&g, &matroid_from_lattice(&g.lattice().map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
    ensure!(rep.verdict == RigidityVerdict::Inconclusive { excess: 2 }, "generic5: {}", rep.verdict);
    parts.push("generic5 inconclusive(2)".into());
    Ok(parts.join(", "))
}

fn crit5() -> Result<String, String> {
    let start = Instant::now();
    let pts = fixtures::cl_base_points().map_err(|e| e.to_string())?.points;
    let dim = cubic_kernel_dim(&pts).map_err(|e| e.to_string())?;
    ensure!(dim == 2, "cubic kernel dimension {dim}");
    let rep = degenerate_members(&cubics_through(&pts).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(rep.members.len() == 6, "{} degenerate members", rep.members.len());
    let (curve, lat) = assemble_conic_line(&rep.members, &pts).map_err(|e| e.to_string())?;
    let printed = CurveSpec::from_file(&fixtures::cl().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(curve.degree() == 18 && curve.f().is_proportional(printed.f()), "product differs from the printed curve");
    ensure!(lat.nk == nk(&[(2, 12), (6, 9)]), "n_k {:?}", lat.nk);
    // ordinary: pairwise distinct tangents at every point
    for p in &lat.points {
        let tangents: BTreeSet<&ProjLine> = p.branches.iter().map(|b| &b.1).collect();
        ensure!(tangents.len() == p.branches.len(), "non-ordinary point {}", p.point);
    }
    ensure!(lat.bezout_points == 147 && lat.bezout_pairs == 147, "Bezout {} vs {}", lat.bezout_points, lat.bezout_pairs);
    within(start, Duration::from_secs(60), "conic-line pipeline")?;
    Ok("kernel 2, 6 members, n_2 = 12, n_6 = 9, Bezout 147 = 147".into())
}

fn crit6() -> Result<String, String> {
    let table = MonodromyTable::new(&fixtures::cl_monof3().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let alex = alexander_from_table(18, 12, &table).map_err(|e| e.to_string())?;
    ensure!(alex.mult(0) == 11, "m(1) = {}", alex.mult(0));
    for q in [3, 6, 9, 12, 15] {
        ensure!(alex.mult(q) == 4, "m(alpha_{q}) = {}", alex.mult(q));
    }
    let stated = parse_univariate("(t^3+1)^4*(t^2+t+1)^2*(t-1)^11", "t").map_err(|e| e.to_string())?;
    let cmp = compare_with_polynomial(&alex, &stated);
    ensure!(cmp.disagreements() == vec![6, 12], "disagreements at {:?}", cmp.disagreements());
    for row in &cmp.rows {
        if [6, 12].contains(&row.q) {
            ensure!(row.reconstructed == 4 && row.stated == 2, "q = {}: {} vs {}", row.q, row.reconstructed, row.stated);
        }
        if [3, 9, 15].contains(&row.q) {
            ensure!(row.agree, "q = {} disagrees", row.q);
        }
    }
    let rep = repro_json("thmC")?;
    for q in [6, 12] {
        let item = format!("m(alpha_{q}), order 3");
        ensure!(row_status(&rep, &item)? == Status::PaperInconsistent.label(), "{item} not flagged");
    }
    let chi = euler_complement(18, total_milnor(&nk(&[(2, 12), (6, 9)])));
    ensure!(chi == 36, "chi = {chi}");
    let d2 = degree_identity_check(18, chi, cmp.stated_degree).deg_delta2;
    ensure!(d2 == 620, "deg Delta^2 = {d2}");
    let h = alexander_from_table(57, 57, &MonodromyTable::zero()).map_err(|e| e.to_string())?;
    ensure!(h.factored_string() == "(t - 1)^56", "H57: {}", h.factored_string());
    Ok(format!("m(1) = 11, q = 6,12 flagged 4 vs 2, chi = 36, deg Delta^2 = {d2}, H57 (t - 1)^56"))
}

fn crit7() -> Result<String, String> {
    let start = Instant::now();
    let rep = repro_json("remark-ngons")?;
    within(start, Duration::from_secs(120), "repro remark-ngons")?;
    ensure!(rep["ok"] == true, "remark report has mismatches");
    ensure!(row_status(&rep, "O61 double count")? == "PAPER-INCONSISTENT", "O61 printed table not flagged");
    ensure!(row_status(&rep, "O49 n_k")? == "MATCH", "O49 table differs");
    let two = Selector::exact_in([2]).map_err(|e| e.to_string())?;
    for (n, count, lines, pairs) in [(10u32, 3usize, 61usize, 1830usize), (12, 4, 49, 1176)] {
        let c = gen_ngon(n).map_err(|e| e.to_string())?;
        let o = c.lambda(&two, &Selector::AtLeast(count)).map_err(|e| e.to_string())?;
        ensure!(o.len() == lines, "C{n}: {} lines", o.len());
        let lat = o.lattice().map_err(|e| e.to_string())?;
        ensure!(lat.pair_count() == pairs && lat.is_double_count_consistent(), "C{n}: {} pairs", lat.pair_count());
        let sym = c.lambda(&two, &Selector::AtLeast(n as usize / 2 - 1)).map_err(|e| e.to_string())?;
        ensure!(sym.len() == 2 * n as usize + 1, "C{n} with symmetry lines: {}", sym.len());
    }
    Ok("61 and 49 lines, O61 printed table flagged (2025 vs 1830), 21 and 25 lines".into())
}

fn crit8() -> Result<String, String> {
    let h = unexpected_degrees(57, 25, 8);
    ensure!(h.degrees == (26..=30).collect(), "H57: {h}");
    let o = unexpected_degrees(33, 15, 8);
    ensure!(o.degrees == BTreeSet::from([16]), "O33: {o}");
    let hs: Vec<u32> = slp_failures(&h).iter().map(|f| f.degree).collect();
    let os: Vec<u32> = slp_failures(&o).iter().map(|f| f.degree).collect();
    ensure!(hs == vec![24, 25, 26, 27, 28] && os == vec![14], "SLP degrees {hs:?} {os:?}");
    ensure!(slp_failures(&h).iter().all(|f| f.range == 2 && f.j == f.degree + 1), "SLP indices");
    Ok("H57 {26..30}, O33 {16}, SLP range 2".into())
}

fn random_element(rng: &mut ChaCha8Rng, f: &std::sync::Arc<NumberField>) -> FieldElement {
    let coeffs: Vec<BigRational> = (0..f.degree())
        .map(|_| BigRational::new(rng.gen_range(-40i64..40).into(), rng.gen_range(1i64..12).into()))
        .collect();
    FieldElement::from_coeffs(f, &coeffs)
}

fn field_axioms() -> Result<usize, String> {
    let labels = ["Q", "Q(e)", "Q(r)", "Q(sqrt3)", "Q(sqrt5)", "Q(zeta16)", "Q(zeta20)", "Q(zeta24)"];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for label in labels {
        let f = NumberField::builtin(label).ok_or(format!("no field {label}"))?;
        for _ in 0..500 {
            let (a, b, c) = (random_element(&mut rng, &f), random_element(&mut rng, &f), random_element(&mut rng, &f));
            ensure!(&(&a + &b) + &c == &a + &(&b + &c), "{label}: addition is not associative");
            ensure!(&(&a * &b) * &c == &a * &(&b * &c), "{label}: multiplication is not associative");
            ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "{label}: distributivity fails");
            ensure!(&a * &b == &b * &a, "{label}: multiplication is not commutative");
            if !a.is_zero() {
                let inv = a.inv().map_err(|e| e.to_string())?;
                ensure!((&a * &inv).is_one(), "{label}: a * a^-1 != 1 for {a}");
            }
        }
    }
    Ok(labels.len())
}

fn euler_relation(name: &str, f: &MultiPoly) -> Result<(), String> {
    let field = f.field();
    let mut lhs = MultiPoly::zero(field);
    for v in [Var::X, Var::Y, Var::Z] {
        let term = MultiPoly::var(field, v).try_mul(&f.partial(v)).map_err(|e| e.to_string())?;
        lhs = lhs.try_add(&term).map_err(|e| e.to_string())?;
    }
    let d = FieldElement::from_int(field, f.degree() as i64);
    ensure!(lhs == f.scale(&d), "{name}: Euler relation fails");
    Ok(())
}

fn generated() -> Result<Vec<Arrangement>, String> {
    let mut out = vec![gen_hesse(), gen_c8()];
    for n in 3..=12 {
        if let Ok(c) = gen_ngon(n) {
            out.push(c);
        }
    }
    let two = Selector::exact_in([2]).map_err(|e| e.to_string())?;
    let derived: Vec<Arrangement> = out
        .iter()
        .filter(|a| a.len() <= 12)
        .map(|a| a.lambda(&two, &Selector::AtLeast(2)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    out.extend(derived.into_iter().filter(|a| !a.is_empty()));
    Ok(out)
}

fn crit9() -> Result<String, String> {
    let start = Instant::now();
    let fields = field_axioms()?;

    let mut curves: Vec<(&str, CurveSpec)> = Vec::new();
    for (name, arr) in [("hesse12", fixtures::hesse12()), ("c8", fixtures::c8()), ("h57", fixtures::h57()), ("o33", fixtures::o33()), ("generic5", fixtures::generic5())] {
        curves.push((name, CurveSpec::from_arrangement(&arr.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?));
    }
    curves.push(("cl", CurveSpec::from_file(&fixtures::cl().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?));
    for (name, c) in &curves {
        euler_relation(name, c.f())?;
    }

    let gens = generated()?;
    for arr in &gens {
        for l in arr.lines() {
            ensure!(&l.dual().dual() == l, "duality is not an involution on {l}");
        }
        let lat = arr.lattice().map_err(|e| e.to_string())?;
        ensure!(lat.is_double_count_consistent(), "{}: double count fails", arr.label());
    }

    // minimal syzygy degree: nothing below d1, something at d1, at two agreeing primes
    let mut checked = 0;
    for (name, d1) in [("o33", 15u32), ("cl", 4), ("generic5", 3)] {
        let curve = &curves.iter().find(|c| c.0 == name).unwrap().1;
        let mut prev = 0;
        for r in 0..=d1 {
            let s = syzygy_space_dim(curve, r).map_err(|e| e.to_string())?;
            ensure!(s.primes_agree() && s.per_prime.len() == 2, "{name} r = {r}: primes disagree {:?}", s.per_prime);
            ensure!((r < d1) == (s.dim == 0), "{name}: dimension {} at r = {r}", s.dim);
            ensure!(s.dim >= prev, "{name}: dimension drops at r = {r}");
            prev = s.dim;
            checked += 1;
        }
    }
    // every emptiness claim in a certificate rests on two distinct primes
    let o33 = &curves.iter().find(|c| c.0 == "o33").unwrap().1;
    let cert = freeness_certificate(o33, 769, MdrOptions { modular_only: true }).map_err(|e| e.to_string())?;
    ensure!(!cert.empty_degrees.is_empty(), "no emptiness claims recorded");
    for (r, [p, q]) in &cert.empty_degrees {
        ensure!(p != q, "degree {r} certified by one prime");
        let s = syzygy_space_dim(o33, *r).map_err(|e| e.to_string())?;
        ensure!(s.per_prime.iter().all(|x| x.1 == 0), "degree {r} claimed empty but {:?}", s.per_prime);
    }
    within(start, Duration::from_secs(600), "property suites")?;
    Ok(format!(
        "{fields} fields x 500 cases, Euler on {} fixtures, {} generated arrangements, {checked} syzygy degrees",
        curves.len(),
        gens.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check); 9] = [
        ("Hesse to 57 lines", crit1),
        ("octagon to 33 lines", crit2),
        ("freeness certificates", crit3),
        ("rigidity", crit4),
        ("conic-line pencil", crit5),
        ("Alexander bookkeeping", crit6),
        ("10- and 12-gons", crit7),
        ("unexpected curves and SLP", crit8),
        ("property suites", crit9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{t:.2?}] {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} [{t:.2?}] {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
