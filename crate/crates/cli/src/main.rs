//! `pointline` command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pointline::arrangement::{format_nk, gen_c8, gen_hesse, gen_ngon, Arrangement, Selector};
use pointline::exact::parse::parse_field_element;
use pointline::exact::{FieldElement, NumberField};
use pointline::fixtures;
use pointline::freeness::{freeness_certificate, CurveSpec, MdrOptions, Verdict};
use pointline::io::{parse_table_csv, ArrangementFile, MapFile, PointsFile};
use pointline::monodromy::{alexander_from_table, compare_with_polynomial, MonodromyTable};
use pointline::pencil::{
    assemble_conic_line, conic_line_lattice_split, cubics_through, degenerate_members, map_evaluate, Component,
    Factorization, MapValue, RationalMap,
};
use pointline::projgeom::ProjPoint;
use pointline::rigidity::{matroid_from_lattice, realization_ideal_text, rigidity_check};
use pointline::unexpected::{slp_failures, unexpected_degrees};
use pointline::{repro, Error, Result};

#[derive(Parser)]
#[command(name = "pointline", version, about = "Exact computations with line and conic-line arrangements")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a built-in arrangement as an arrangement file.
    Gen {
        #[command(subcommand)]
        which: GenWhich,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Apply a point-line operator.
    Op {
        #[command(subcommand)]
        op: OpCmd,
    },
    /// Intersection lattice of an arrangement file.
    Lattice {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Freeness certificate.
    Free {
        #[arg(short, long)]
        input: PathBuf,
        /// Stop after the modular probe.
        #[arg(long)]
        modular_only: bool,
    },
    /// First-order rigidity of a line arrangement.
    Rigid {
        #[arg(short, long)]
        input: PathBuf,
        /// Also write the realization ideal generators here.
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Unexpected curves of the dual point set.
    Unexpected {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Alexander polynomial from an eigenspace table.
    Monodromy {
        #[arg(long)]
        table: PathBuf,
        #[arg(short)]
        d: u32,
        #[arg(short)]
        r: u32,
        /// A stated Alexander polynomial in t to compare against.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Cubic pencil through nine points and its degenerate members.
    Pencil {
        #[arg(long)]
        points: PathBuf,
    },
    /// Evaluate a rational map at a point.
    MapEval {
        /// Point as "a:b:c".
        #[arg(long)]
        point: String,
        /// Map file; defaults to the shipped sextic map.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Field of the point coordinates.
        #[arg(long, default_value = "Q(e)")]
        field: String,
    },
    /// Reproduce a published result.
    Repro {
        #[arg(value_parser = ["thmA", "thmB", "thmC", "remark-ngons", "all"])]
        which: String,
    },
}

#[derive(Subcommand)]
enum GenWhich {
    Hesse,
    C8,
    Ngon {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Lambda {
        /// Multiplicity selector, e.g. "exact:2,3" or "atleast:2".
        #[arg(long)]
        mult: Selector,
        /// Richness selector for the resulting lines.
        #[arg(long)]
        count: Selector,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Text and JSON forms of a command result.
struct Output {
    text: String,
    json: Value,
}

fn read_arrangement(path: &Path) -> Result<Arrangement> {
    ArrangementFile::read(path)?.to_arrangement()
}

fn write_or_print(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => Ok(std::fs::write(p, body)?),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Multiplicity table and τ of a file, with conics handled by the
/// conic-line lattice.
fn file_lattice(file: &ArrangementFile) -> Result<(BTreeMap<usize, usize>, u64)> {
    if file.conics.is_empty() {
        let lat = file.to_arrangement()?.lattice()?;
        return Ok((lat.nk.clone(), lat.tau()));
    }
    let comps: Vec<Component> = file
        .lines
        .iter()
        .cloned()
        .map(Component::Line)
        .chain(file.conic_polys().into_iter().map(Component::Conic))
        .collect();
    let lat = conic_line_lattice_split(&comps, &[])?;
    let tau = lat.tau();
    Ok((lat.nk, tau))
}

fn cmd_gen(which: &GenWhich, output: Option<&Path>) -> Result<Output> {
    let arr = match which {
        GenWhich::Hesse => gen_hesse(),
        GenWhich::C8 => gen_c8(),
        GenWhich::Ngon { n } => gen_ngon(*n)?,
    };
    let body = ArrangementFile::from_arrangement(&arr, "generated").to_canonical_string();
    write_or_print(output, &body)?;
    let text = match output {
        Some(p) => format!("wrote {} lines to {}", arr.len(), p.display()),
        None => String::new(),
    };
    Ok(Output { text, json: json!({ "label": arr.label(), "lines": arr.len() }) })
}

fn cmd_lambda(mult: &Selector, count: &Selector, input: &Path, output: Option<&Path>) -> Result<Output> {
    let arr = read_arrangement(input)?;
    let out = arr.lambda(mult, count)?;
    let source = format!("lambda mult={mult} count={count} of {}", arr.label());
    let body = ArrangementFile::from_arrangement(&out, &source).to_canonical_string();
    if let Some(p) = output {
        std::fs::write(p, &body)?;
    }
    let mut text = if out.is_empty() {
        "empty arrangement: no line passes the selectors".to_string()
    } else {
        format!("{} lines", out.len())
    };
    for w in out.warnings() {
        let _ = write!(text, "\nwarning: {w}");
    }
    if output.is_none() {
        text = format!("{body}{text}");
    }
    let json = json!({ "lines": out.len(), "empty": out.is_empty(), "warnings": out.warnings() });
    Ok(Output { text, json })
}

fn cmd_lattice(input: &Path) -> Result<Output> {
    let file = ArrangementFile::read(input)?;
    let (nk, tau) = file_lattice(&file)?;
    let components = file.lines.len() + file.conics.len();
    let text = format!("components: {components}\n{}\ntau: {tau}", format_nk(&nk));
    let json = json!({ "components": components, "nk": nk, "tau": tau });
    Ok(Output { text, json })
}

fn cmd_free(input: &Path, modular_only: bool) -> Result<Output> {
    let file = ArrangementFile::read(input)?;
    let (_, tau) = file_lattice(&file)?;
    let curve = CurveSpec::from_file(&file)?;
    let cert = freeness_certificate(&curve, tau, MdrOptions { modular_only })?;
    let mut text = format!("degree {}, tau {}\nmdr {}\nverdict {}", cert.d, cert.tau, cert.d1.map_or("none".into(), |r| r.to_string()), cert.verdict);
    match &cert.verdict {
        Verdict::NotFree { reason } | Verdict::Undetermined { reason } => {
            let _ = write!(text, " ({reason})");
        }
        Verdict::Free { .. } => {}
    }
    let _ = write!(text, "\nexact {}", cert.exact);
    if let Some(d) = cert.witness_digest() {
        let _ = write!(text, "\nwitness sha256 {d}");
    }
    let primes: Vec<String> = cert.primes_used.iter().map(u64::to_string).collect();
    let _ = write!(text, "\nprimes {}", primes.join(" "));
    Ok(Output { text, json: cert.to_json() })
}

fn cmd_rigid(input: &Path, ideal: Option<&Path>) -> Result<Output> {
    let arr = read_arrangement(input)?;
    let matroid = matroid_from_lattice(&arr.lattice()?);
    let rep = rigidity_check(&arr, &matroid)?;
    if let Some(p) = ideal {
        std::fs::write(p, realization_ideal_text(&matroid))?;
    }
    let modular: Vec<String> = rep.modular.iter().map(|(p, k)| format!("{k} mod {p}")).collect();
    let text = format!(
        "lines {}\nnon-bases {}\nkernel {} (trivial {})\nmodular {}\nverdict {}",
        rep.n,
        rep.jacobian_rows,
        rep.kernel_dim,
        rep.trivial_dim,
        modular.join(", "),
        rep.verdict
    );
    Ok(Output { text, json: serde_json::to_value(&rep)? })
}

fn cmd_unexpected(input: &Path) -> Result<Output> {
    let arr = read_arrangement(input)?;
    let lat = arr.lattice()?;
    let curve = CurveSpec::from_arrangement(&arr)?;
    let cert = freeness_certificate(&curve, lat.tau(), MdrOptions::default())?;
    let Verdict::Free { d1, .. } = cert.verdict else {
        return Ok(Output {
            text: format!("not free ({}); the criterion does not apply", cert.verdict),
            json: json!({ "free": false }),
        });
    };
    let rep = unexpected_degrees(arr.len() as u32, d1, lat.max_multiplicity() as u32);
    let slp = slp_failures(&rep);
    let mut text = rep.to_string();
    for f in &slp {
        let _ = write!(text, "\n{f}");
    }
    Ok(Output { text, json: json!({ "free": true, "report": rep, "slp": slp }) })
}

fn cmd_monodromy(table: &Path, d: u32, r: u32, delta: Option<&str>) -> Result<Output> {
    let rows = parse_table_csv(&std::fs::read_to_string(table)?)?;
    let alex = alexander_from_table(d, r, &MonodromyTable::new(&rows)?)?;
    let mut text = format!("Delta(t) = {}\ndegree {}", alex.factored_string(), alex.degree());
    let mut json = json!({ "alexander": alex, "factored": alex.factored_string() });
    if let Some(src) = delta {
        let stated = pointline::exact::parse::parse_univariate(src, "t")?;
        let cmp = compare_with_polynomial(&alex, &stated);
        for row in cmp.rows.iter().filter(|x| x.reconstructed > 0 || x.stated > 0) {
            let mark = if row.agree { "agree" } else { "DISAGREE" };
            let _ = write!(text, "\nq {:>3} order {:>3}: table {} stated {} {mark}", row.q, row.order, row.reconstructed, row.stated);
        }
        let _ = write!(text, "\nstated degree {}, table degree {}", cmp.stated_degree, cmp.reconstructed_degree);
        json["comparison"] = serde_json::to_value(&cmp)?;
    }
    Ok(Output { text, json })
}

fn cmd_pencil(points: &Path) -> Result<Output> {
    let pts = PointsFile::read(points)?.points;
    let pencil = cubics_through(&pts)?;
    let rep = degenerate_members(&pencil)?;
    let mut text = format!("F = {}\nG = {}", pencil.basis[0], pencil.basis[1]);
    let mut members = Vec::new();
    for m in &rep.members {
        if let Factorization::Degenerate { line, conic, conic_reducible } = &m.factorization {
            let _ = write!(text, "\n({} : {}) {line} times {conic} = 0", m.params.0, m.params.1);
            members.push(json!({
                "params": [m.params.0.to_string(), m.params.1.to_string()],
                "line": line.to_string(),
                "conic": conic.to_string(),
                "conic_reducible": conic_reducible,
            }));
        }
    }
    for w in &rep.warnings {
        let _ = write!(text, "\nwarning: {w}");
    }
    let mut json = json!({ "basis": [pencil.basis[0].to_string(), pencil.basis[1].to_string()], "members": members });
    if !rep.members.is_empty() && rep.shared_lines.is_empty() {
        let (curve, lat) = assemble_conic_line(&rep.members, &pts)?;
        let _ = write!(
            text,
            "\ncurve degree {}\n{}\ntau {}\nBezout {} = {}",
            curve.degree(),
            format_nk(&lat.nk),
            lat.tau(),
            lat.bezout_points,
            lat.bezout_pairs
        );
        if let Some(ext) = &lat.extension {
            let _ = write!(text, "\npoints over {ext}");
        }
        json["lattice"] = json!({
            "nk": lat.nk,
            "tau": lat.tau(),
            "bezout_points": lat.bezout_points,
            "bezout_pairs": lat.bezout_pairs,
            "extension": lat.extension,
        });
    }
    Ok(Output { text, json })
}

fn parse_point(src: &str, field: &std::sync::Arc<NumberField>) -> Result<ProjPoint> {
    let parts: Vec<&str> = src.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("point '{src}' must have the form a:b:c")));
    }
    let coords: Vec<FieldElement> = parts.iter().map(|p| parse_field_element(p.trim(), field)).collect::<Result<_>>()?;
    ProjPoint::new(coords.try_into().expect("three coordinates"))
}

fn cmd_map_eval(point: &str, map: Option<&Path>, field: &str) -> Result<Output> {
    let file = match map {
        Some(p) => MapFile::read(p)?,
        None => fixtures::cl_map()?,
    };
    let field = NumberField::builtin(field).ok_or_else(|| Error::Parse(format!("unknown field '{field}'")))?;
    let p = parse_point(point, &field)?;
    let value = map_evaluate(&RationalMap::new(file.components)?, &p)?;
    let text = match &value {
        MapValue::Image(img) => format!("{p} -> {img}"),
        MapValue::IndeterminateAt(at) => format!("indeterminate at {at}"),
    };
    Ok(Output { text, json: serde_json::to_value(&value)? })
}

fn cmd_repro(which: &str) -> Result<Output> {
    let names: Vec<&str> = if which == "all" { repro::REPORTS.to_vec() } else { vec![which] };
    let reports = names.iter().map(|n| repro::run(n)).collect::<Result<Vec<_>>>()?;
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(|r| r.to_json()).collect())
    };
    Ok(Output { text, json })
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Gen { which, output } => cmd_gen(which, output.as_deref()),
        Cmd::Op { op: OpCmd::Lambda { mult, count, input, output } } => cmd_lambda(mult, count, input, output.as_deref()),
        Cmd::Lattice { input } => cmd_lattice(input),
        Cmd::Free { input, modular_only } => cmd_free(input, *modular_only),
        Cmd::Rigid { input, ideal } => cmd_rigid(input, ideal.as_deref()),
        Cmd::Unexpected { input } => cmd_unexpected(input),
        Cmd::Monodromy { table, d, r, delta } => cmd_monodromy(table, *d, *r, delta.as_deref()),
        Cmd::Pencil { points } => cmd_pencil(points),
        Cmd::MapEval { point, map, field } => cmd_map_eval(point, map.as_deref(), field),
        Cmd::Repro { which } => cmd_repro(which),
    }
}

/// Input problems are usage errors; everything else failed while computing.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::InvalidSelector(_) | Error::UnsupportedN(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json output"));
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::from(exit_code(&e))
        }
    }
}
