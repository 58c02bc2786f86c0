//! Command-line front end: compute invariants, run the verification
//! identities, scan for vanishing classes, and batch over directories.
//!
//! Structured reports go to stdout as JSON (big integers are decimal
//! strings); a human-readable summary goes to stderr. Exit codes: 0 ok,
//! 1 failed verification check, 2 parse error, 3 inadmissible class.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::codec::{parse_class, parse_file, serialize_diagram, ParsedFile};
use crate::diagram::{gauss_diagram, SurfaceDiagram};
use crate::homology::{
    admissible_subgroup_basis, diagram_class, HomologyClass,
};
use crate::indices::{chord_index, chord_index_via_coloring, parity};
use crate::invariants::{
    group_ring_invariant, regular_invariant, small_state_sum, transcendental_invariant,
    virtual_writhe_polynomial, writhe_polynomial, zero_class_scan, GroupRingElement,
};
use crate::moves::{apply, find_sites, MoveKind, MoveSite, R3Case};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;
pub const EXIT_NOT_ADMISSIBLE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "chord-index",
    about = "Chord-index invariants for knot diagrams on thickened surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute invariants of one diagram file.
    Compute {
        file: PathBuf,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Run the identity and move-invariance checks on one diagram file.
    Verify {
        file: PathBuf,
        /// Class input, `auto` for the diagram class.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List admissible classes with vanishing writhe polynomial, up to a
    /// coordinate bound in the subgroup basis.
    Scan {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: u32,
    },
    /// Compute reports for every file in a directory, in filename order.
    Batch {
        directory: PathBuf,
        #[command(flatten)]
        opts: ComputeOpts,
        /// Process files in parallel (output order is unchanged).
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Args, Clone)]
pub struct ComputeOpts {
    /// Class input: 2g integers, or `auto` for the diagram class. Falls
    /// back to the file's first `class` line, then to the diagram class.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Which invariant to report (default: all).
    #[arg(long, default_value = "all")]
    pub invariant: String,
    /// Also report the normalized positional writhe polynomial.
    #[arg(long)]
    pub normalized: bool,
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Compute { file, opts } => match compute_report(&file, &opts) {
            Ok(report) => {
                emit(&report);
                EXIT_OK
            }
            Err(e) => e.emit(),
        },
        Command::Verify { file, alpha, seed } => match verify_report(&file, alpha.as_deref(), seed)
        {
            Ok((report, all_pass)) => {
                emit(&report);
                if all_pass {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                }
            }
            Err(e) => e.emit(),
        },
        Command::Scan { file, bound } => match scan_report(&file, bound) {
            Ok(report) => {
                emit(&report);
                EXIT_OK
            }
            Err(e) => e.emit(),
        },
        Command::Batch {
            directory,
            opts,
            parallel,
        } => batch(&directory, &opts, parallel),
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn emit(&self) -> i32 {
        let _ = writeln!(std::io::stderr(), "error: {}", self.message);
        println!("{}", json!({ "error": self.message }));
        self.code
    }
}

fn emit(report: &Value) {
    println!("{}", serde_json::to_string_pretty(report).unwrap());
    let _ = writeln!(
        std::io::stderr(),
        "{} ok ({} ms)",
        report["file"].as_str().unwrap_or("-"),
        report["timing_ms"]
    );
}

fn load(path: &Path) -> Result<ParsedFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_PARSE_ERROR,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_file(&text).map_err(|e| CliError {
        code: EXIT_PARSE_ERROR,
        message: format!("{}: {e}", path.display()),
    })
}

/// Class resolution order: --alpha "<ints>", --alpha auto, first `class`
/// line of the file, the diagram class.
fn resolve_alpha(
    parsed: &ParsedFile,
    alpha: Option<&str>,
) -> Result<HomologyClass, CliError> {
    let d = &parsed.diagram;
    match alpha {
        Some("auto") => Ok(diagram_class(d)),
        Some(text) => parse_class(text, d.genus()).map_err(|e| CliError {
            code: EXIT_PARSE_ERROR,
            message: e.to_string(),
        }),
        None => Ok(parsed
            .classes
            .first()
            .cloned()
            .unwrap_or_else(|| diagram_class(d))),
    }
}

fn class_json(c: &HomologyClass) -> Value {
    Value::Array(
        c.coords()
            .iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn group_ring_json(g: &GroupRingElement) -> Value {
    Value::Array(
        g.terms()
            .map(|(class, coeff)| {
                json!({ "class": class_json(class), "coeff": coeff.to_string() })
            })
            .collect(),
    )
}

fn compute_report(path: &Path, opts: &ComputeOpts) -> Result<Value, CliError> {
    let started = Instant::now();
    let parsed = load(path)?;
    let d = &parsed.diagram;
    let alpha = resolve_alpha(&parsed, opts.alpha.as_deref())?;
    let not_admissible = |pairing: String| CliError {
        code: EXIT_NOT_ADMISSIBLE,
        message: format!("alpha . [D] = {pairing}, class is not admissible"),
    };
    let want = |name: &str| opts.invariant == "all" || opts.invariant == name;

    let mut invariants = serde_json::Map::new();
    if want("chord-indices") {
        let mut m = serde_json::Map::new();
        for c in d.crossing_ids() {
            let f = chord_index(d, &alpha, c)
                .map_err(|e| not_admissible(e.to_string()))?;
            m.insert(c.to_string(), Value::String(f.to_string()));
        }
        invariants.insert("chord_indices".into(), Value::Object(m));
    }
    if want("writhe-polynomial") {
        let w = writhe_polynomial(d, &alpha).map_err(|e| not_admissible(e.to_string()))?;
        invariants.insert("writhe_polynomial".into(), Value::String(w.to_string()));
    }
    if want("virtual-writhe-polynomial") {
        let g = gauss_diagram(d);
        invariants.insert(
            "virtual_writhe_polynomial".into(),
            Value::String(virtual_writhe_polynomial(&g, false).to_string()),
        );
        if opts.normalized {
            invariants.insert(
                "virtual_writhe_polynomial_normalized".into(),
                Value::String(virtual_writhe_polynomial(&g, true).to_string()),
            );
        }
    }
    if want("group-ring") {
        invariants.insert(
            "group_ring_invariant".into(),
            group_ring_json(&group_ring_invariant(d)),
        );
    }
    if want("small-state-sum") {
        invariants.insert("small_state_sum".into(), group_ring_json(&small_state_sum(d)));
    }
    if want("regular") {
        let r = regular_invariant(d);
        invariants.insert(
            "regular_invariant".into(),
            Value::Array(
                r.terms()
                    .map(|(class, (x, y))| {
                        json!({
                            "class": class_json(class),
                            "x": x.to_string(),
                            "y": y.to_string(),
                        })
                    })
                    .collect(),
            ),
        );
    }
    if want("transcendental") {
        let f = transcendental_invariant(d, &alpha).map_err(|e| not_admissible(e.to_string()))?;
        invariants.insert(
            "transcendental_invariant".into(),
            Value::Array(
                f.terms()
                    .map(|((k, poly), coeff)| {
                        json!({
                            "k": k.to_string(),
                            "modulus": poly.modulus().to_string(),
                            "poly": poly
                                .terms()
                                .map(|(e, c)| vec![e.to_string(), c.to_string()])
                                .collect::<Vec<_>>(),
                            "coeff": coeff.to_string(),
                        })
                    })
                    .collect(),
            ),
        );
    }

    Ok(json!({
        "file": path.display().to_string(),
        "genus": d.genus(),
        "crossings": d.crossing_count(),
        "writhe": d.writhe(),
        "diagram_class": class_json(&diagram_class(d)),
        "alpha": class_json(&alpha),
        "walk": serialize_diagram(d),
        "invariants": Value::Object(invariants),
        "timing_ms": started.elapsed().as_millis() as u64,
    }))
}

/// The deterministic identity checks behind `verify`.
fn verify_checks(d: &SurfaceDiagram, alpha: &HomologyClass, seed: u64) -> Vec<(String, bool, String)> {
    let mut checks = Vec::new();
    let basis = admissible_subgroup_basis(d);

    // dual-route agreement on alpha and on every basis class
    let mut agree = true;
    let mut detail = String::new();
    let mut classes: Vec<HomologyClass> = vec![alpha.clone(), diagram_class(d)];
    classes.extend(basis.iter().cloned());
    for cls in &classes {
        for c in d.crossing_ids() {
            let a = chord_index(d, cls, c);
            let b = chord_index_via_coloring(d, cls, c);
            if a != b {
                agree = false;
                detail = format!("crossing {c}, class {cls}");
            }
        }
    }
    checks.push(("coloring-homological-agreement".into(), agree, detail));

    // the coloring closes up exactly on admissible classes
    let closure = classes
        .iter()
        .all(|cls| crate::indices::coloring(d, cls).is_ok());
    checks.push((
        "coloring-closure".into(),
        closure,
        String::new(),
    ));

    // additivity over the subgroup basis
    let mut linear = true;
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let sum = a.add(b);
            for c in d.crossing_ids() {
                let lhs = chord_index(d, &sum, c).unwrap();
                let rhs = chord_index(d, a, c).unwrap() + chord_index(d, b, c).unwrap();
                linear &= lhs == rhs;
            }
        }
    }
    checks.push(("index-linearity".into(), linear, String::new()));

    // third-move triples: vector identities, additivity, parity pattern
    let mut identities = true;
    for site in find_sites(d, MoveKind::R3) {
        let MoveSite::R3 { c1, c2, c3, case, .. } = site else {
            unreachable!()
        };
        let right = |c| {
            let pair = d.smooth(c).unwrap();
            crate::homology::class_of_events(&pair.right.events, d.genus()).unwrap()
        };
        let k = diagram_class(d);
        let ok = match case {
            R3Case::Sum => right(c1).add(&right(c2)).add(&right(c3)) == k,
            R3Case::Transfer => right(c1).add(&k) == right(c2).add(&right(c3)),
        };
        identities &= ok;
        let f = |c| chord_index(d, alpha, c).unwrap();
        identities &= f(c3) == f(c1) + f(c2);
        let p = |c| parity(d, alpha, c).unwrap();
        identities &= (p(c1) + p(c2) + p(c3)) % 2 == 0;
    }
    checks.push(("third-move-identities".into(), identities, String::new()));

    // move invariance of every invariant over every discovered site
    let w0 = writhe_polynomial(d, alpha).unwrap();
    let g0 = group_ring_invariant(d);
    let s0 = small_state_sum(d);
    let f0 = transcendental_invariant(d, alpha).unwrap();
    let r0 = regular_invariant(d);
    let mut invariant = true;
    let mut moved_detail = String::new();
    for kind in [
        MoveKind::R1Insert,
        MoveKind::R1Remove,
        MoveKind::R2Insert,
        MoveKind::R2Remove,
        MoveKind::R3,
    ] {
        for site in find_sites(d, kind) {
            let moved = apply(d, &site).unwrap();
            let ok = writhe_polynomial(&moved, alpha).unwrap() == w0
                && group_ring_invariant(&moved) == g0
                && small_state_sum(&moved) == s0
                && transcendental_invariant(&moved, alpha).unwrap() == f0
                && (matches!(kind, MoveKind::R1Insert | MoveKind::R1Remove)
                    || regular_invariant(&moved) == r0);
            if !ok {
                invariant = false;
                moved_detail = format!("{kind:?} at {site:?}");
            }
        }
    }
    checks.push(("move-invariance".into(), invariant, moved_detail));

    let _ = seed; // reserved for future randomized extensions
    checks
}

fn verify_report(
    path: &Path,
    alpha: Option<&str>,
    seed: u64,
) -> Result<(Value, bool), CliError> {
    let started = Instant::now();
    let parsed = load(path)?;
    let alpha = resolve_alpha(&parsed, alpha)?;
    let pairing = alpha
        .intersection(&diagram_class(&parsed.diagram))
        .map_err(|e| CliError {
            code: EXIT_PARSE_ERROR,
            message: e.to_string(),
        })?;
    if !pairing.is_zero() {
        return Err(CliError {
            code: EXIT_NOT_ADMISSIBLE,
            message: format!("alpha . [D] = {pairing}, class is not admissible"),
        });
    }
    let checks = verify_checks(&parsed.diagram, &alpha, seed);
    let all_pass = checks.iter().all(|(_, ok, _)| *ok);
    for (name, ok, detail) in &checks {
        let _ = writeln!(
            std::io::stderr(),
            "{} {}{}",
            if *ok { "PASS" } else { "FAIL" },
            name,
            if detail.is_empty() {
                String::new()
            } else {
                format!(" ({detail})")
            }
        );
    }
    let report = json!({
        "file": path.display().to_string(),
        "alpha": class_json(&alpha),
        "checks": checks
            .iter()
            .map(|(name, ok, detail)| json!({ "name": name, "pass": ok, "detail": detail }))
            .collect::<Vec<_>>(),
        "timing_ms": started.elapsed().as_millis() as u64,
    });
    Ok((report, all_pass))
}

fn scan_report(path: &Path, bound: u32) -> Result<Value, CliError> {
    let started = Instant::now();
    let parsed = load(path)?;
    let hits = zero_class_scan(&parsed.diagram, bound.max(1));
    Ok(json!({
        "file": path.display().to_string(),
        "bound": bound,
        "vanishing_classes": hits.iter().map(class_json).collect::<Vec<_>>(),
        "note": "an empty list rules out witnesses within the bound only; it is not a minimality proof",
        "timing_ms": started.elapsed().as_millis() as u64,
    }))
}

fn batch(directory: &Path, opts: &ComputeOpts, parallel: bool) -> i32 {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(directory) {
        Ok(entries) => entries
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect(),
        Err(e) => {
            return CliError {
                code: EXIT_PARSE_ERROR,
                message: format!("{}: {e}", directory.display()),
            }
            .emit()
        }
    };
    files.sort();
    if files.is_empty() {
        println!("[]");
        return EXIT_OK;
    }
    let reports: Vec<Value> = if parallel {
        files
            .par_iter()
            .map(|f| compute_report(f, opts).unwrap_or_else(|e| {
                json!({ "file": f.display().to_string(), "error": e.message })
            }))
            .collect()
    } else {
        files
            .iter()
            .map(|f| compute_report(f, opts).unwrap_or_else(|e| {
                json!({ "file": f.display().to_string(), "error": e.message })
            }))
            .collect()
    };
    let failed = reports.iter().filter(|r| r.get("error").is_some()).count();
    println!("{}", serde_json::to_string_pretty(&Value::Array(reports)).unwrap());
    if failed == files.len() {
        EXIT_PARSE_ERROR
    } else {
        EXIT_OK
    }
}
