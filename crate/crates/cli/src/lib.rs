//! Command-line front end. [`run`] takes the arguments (without the
//! program name) and returns the exit code together with everything that
//! would go to stdout and stderr, so it can be tested in-process.
//!
//! Exit codes: 0 success or a positive answer, 1 a computed negative
//! answer, 2 bad input, 3 an internal inconsistency in the data.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gkm_core::cohomology::betti_numbers;
use gkm_core::connection::{
    enumerate_unsigned_connections, exists_signed_structure_with_connection, signed_connections,
};
use gkm_core::graph::{
    catalog, catalog_names, isomorphic_strict, isomorphic_up_to_lattice_aut, validate, GkmGraph,
    SignedStructure,
};
use gkm_core::linalg::rat_string;
use gkm_core::localization::{integrate, integrate_oriented};
use gkm_core::moment::{realize, realize_any_signs, xray, xray_equal, Realizability, XRayMode};
use gkm_core::paper_check::{all_passed, format_table, paper_check, table_json};
use gkm_core::parse::{parse_expr, parse_graph, parse_orientation, write_graph, write_orientation, GraphFile};
use gkm_core::strata::orbit_poset;
use gkm_core::GkmError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gkm-lab", version, about = "Exact computations on GKM graphs")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the graph axioms.
    Validate { file: PathBuf },
    /// Euler characteristic, complexity, valence and rank.
    Info { file: PathBuf },
    /// Betti numbers from the graded ranks of the equivariant cohomology.
    Betti { file: PathBuf },
    /// Count connections, or search for a signed structure admitting one.
    Connections {
        file: PathBuf,
        #[arg(long)]
        signed: bool,
        /// Only allow the `+` sign in the unsigned compatibility condition.
        #[arg(long)]
        sigma_plus: bool,
    },
    /// The orbit-type poset of the graph.
    Strata { file: PathBuf },
    /// Graph isomorphism, strict or up to a change of lattice basis.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        lattice_aut: bool,
    },
    /// Momentum realization (positions and edge lengths).
    Realize {
        file: PathBuf,
        /// Search over all sign structures instead of using the file's.
        #[arg(long)]
        any_signs: bool,
    },
    /// X-ray of a realization, optionally compared with a second graph.
    Xray {
        file: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Compare up to translation and scaling.
        #[arg(long)]
        normalized: bool,
    },
    /// Localization integral of a characteristic-class expression.
    Integrate {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        /// Vertex orientation file; needed when the graph is unsigned.
        #[arg(long)]
        orientation: Option<PathBuf>,
    },
    /// List built-in graphs, print one, or write graph files.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        emit: bool,
        /// Output directory for --emit.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Run the acceptance suite.
    PaperCheck,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Report printed with `--json`. Field order is fixed.
#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub results: Value,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

struct Report {
    command: &'static str,
    inputs: Vec<String>,
    results: Value,
    text: String,
    violations: Vec<String>,
    warnings: Vec<String>,
    code: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            results: Value::Null,
            text: String::new(),
            violations: Vec::new(),
            warnings: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn into_run_report(self) -> RunReport {
        let mut h = Sha256::new();
        h.update(self.command.as_bytes());
        for i in &self.inputs {
            h.update([0u8]);
            h.update(i.as_bytes());
        }
        RunReport {
            command: self.command.to_string(),
            input_digest: hex::encode(h.finalize()),
            results: self.results,
            violations: self.violations,
            warnings: self.warnings,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<GkmError> for Failure {
    fn from(e: GkmError) -> Self {
        let code = match e {
            GkmError::NonConstantSum(_) | GkmError::Inconsistent(_) | GkmError::IncompleteConnection(_) => {
                EXIT_INTERNAL
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path, report: &mut Report) -> Run<GraphFile> {
    let text = read(path)?;
    let f = parse_graph(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    report
        .inputs
        .push(write_graph(&f.graph, f.signed.as_ref())?);
    Ok(f)
}

fn need_signed(f: &GraphFile, path: &Path) -> Run<SignedStructure> {
    f.signed.clone().ok_or_else(|| {
        input_error(format!(
            "{}: this command needs `signed edge` lines",
            path.display()
        ))
    })
}

/// File name used by `catalog --emit`: `cp(3)` becomes `cp3.gkm`.
pub fn emit_file_name(name: &str) -> String {
    let stem: String = name.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
    format!("{stem}.gkm")
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("gkm-lab".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(report) => {
            let mut stderr = String::new();
            for w in &report.warnings {
                stderr.push_str(&format!("warning: {w}\n"));
            }
            let code = report.code;
            let stdout = if json {
                let r = report.into_run_report();
                let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome { code, stdout, stderr }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cmd: Command) -> Run<Report> {
    match cmd {
        Command::Validate { file } => cmd_validate(&file),
        Command::Info { file } => cmd_info(&file),
        Command::Betti { file } => cmd_betti(&file),
        Command::Connections {
            file,
            signed,
            sigma_plus,
        } => cmd_connections(&file, signed, sigma_plus),
        Command::Strata { file } => cmd_strata(&file),
        Command::Iso {
            file1,
            file2,
            lattice_aut,
        } => cmd_iso(&file1, &file2, lattice_aut),
        Command::Realize { file, any_signs } => cmd_realize(&file, any_signs),
        Command::Xray {
            file,
            compare,
            normalized,
        } => cmd_xray(&file, compare.as_deref(), normalized),
        Command::Integrate {
            file,
            expr,
            orientation,
        } => cmd_integrate(&file, &expr, orientation.as_deref()),
        Command::Catalog { name, emit, dir } => cmd_catalog(name.as_deref(), emit, &dir),
        Command::PaperCheck => cmd_paper_check(),
    }
}

fn cmd_validate(file: &Path) -> Run<Report> {
    let mut r = Report::new("validate");
    let f = load(file, &mut r)?;
    let v = validate(&f.graph);
    r.violations = v.violations.iter().map(ToString::to_string).collect();
    r.warnings = v.warnings.iter().map(ToString::to_string).collect();
    r.results = json!({ "valid": v.is_valid() });
    if v.is_valid() {
        r.line("valid");
    } else {
        r.code = EXIT_NEGATIVE;
        r.line("invalid");
        for s in r.violations.clone() {
            r.line(format!("  {s}"));
        }
    }
    Ok(r)
}

fn graph_info(g: &GkmGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().len(),
        "euler_characteristic": g.euler_characteristic(),
        "complexity": g.complexity(),
        "valence": g.valence(),
        "rank": g.rank(),
    })
}

fn cmd_info(file: &Path) -> Run<Report> {
    let mut r = Report::new("info");
    let f = load(file, &mut r)?;
    let g = &f.graph;
    let v = validate(g);
    r.violations = v.violations.iter().map(ToString::to_string).collect();
    r.warnings = v.warnings.iter().map(ToString::to_string).collect();
    r.results = graph_info(g);
    r.line(format!("vertices: {}", g.vertex_count()));
    r.line(format!("edges: {}", g.edges().len()));
    r.line(format!("euler characteristic: {}", g.euler_characteristic()));
    r.line(format!("complexity: {}", g.complexity()));
    r.line(format!("valence: {}", g.valence()));
    r.line(format!("rank: {}", g.rank()));
    r.line(format!("signed: {}", f.signed.is_some()));
    Ok(r)
}

fn cmd_betti(file: &Path) -> Run<Report> {
    let mut r = Report::new("betti");
    let f = load(file, &mut r)?;
    let b = betti_numbers(&f.graph)?;
    r.results = json!({ "betti": b });
    let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
    r.line(format!("even Betti numbers: ({})", parts.join(",")));
    Ok(r)
}

fn cmd_connections(file: &Path, signed: bool, sigma_plus: bool) -> Run<Report> {
    let mut r = Report::new("connections");
    r.inputs.push(format!("signed={signed} sigma_plus={sigma_plus}"));
    let f = load(file, &mut r)?;
    let g = &f.graph;
    if !signed {
        let set = enumerate_unsigned_connections(g, sigma_plus);
        let count = set.count();
        r.results = json!({
            "mode": "unsigned",
            "sigma_plus": sigma_plus,
            "count": count.to_string(),
            "first": set.first(),
        });
        r.line(format!("unsigned connections: {count}"));
        if count == 0u32.into() {
            r.code = EXIT_NEGATIVE;
        }
        return Ok(r);
    }
    if let Some(s) = &f.signed {
        let set = signed_connections(g, s);
        let count = set.count();
        r.results = json!({
            "mode": "signed_structure",
            "count": count.to_string(),
            "first": set.first(),
        });
        r.line(format!("connections compatible with the file's signed structure: {count}"));
        if set.is_empty() {
            r.code = EXIT_NEGATIVE;
        }
        return Ok(r);
    }
    let search = exists_signed_structure_with_connection(g);
    r.warnings = search.warnings.iter().map(ToString::to_string).collect();
    match &search.witness {
        Some((s, c)) => {
            r.results = json!({
                "mode": "search",
                "exists": true,
                "nodes_visited": search.nodes_visited,
                "signed_labels": s.labels(),
                "connection": c,
            });
            r.line("a signed structure admits a connection");
            r.text.push_str(&write_graph(g, Some(s))?);
        }
        None => {
            r.results = json!({
                "mode": "search",
                "exists": false,
                "nodes_visited": search.nodes_visited,
            });
            r.line("no signed structure admits a connection");
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn cmd_strata(file: &Path) -> Run<Report> {
    let mut r = Report::new("strata");
    let f = load(file, &mut r)?;
    let g = &f.graph;
    let p = orbit_poset(g)?;
    r.results = p.to_json(g);
    r.line(format!("{} strata", p.len()));
    for (i, el) in p.elements.iter().enumerate() {
        let names: Vec<&str> = el.component.vertices.iter().map(|&v| g.vertex_name(v)).collect();
        let iso = &el.principal_isotropy;
        r.line(format!(
            "  [{i}] vertices {{{}}}, {} edges, isotropy dim {} torsion {:?}{}",
            names.join(","),
            el.component.edges.len(),
            iso.dim_identity_component(),
            iso.torsion_invariants().iter().map(ToString::to_string).collect::<Vec<_>>(),
            if el.isotropy_vertex_independent { "" } else { " (vertex-dependent)" }
        ));
    }
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    r.line(format!("covers: {}", covers.join(" ")));
    Ok(r)
}

fn cmd_iso(file1: &Path, file2: &Path, lattice_aut: bool) -> Run<Report> {
    let mut r = Report::new("iso");
    r.inputs.push(format!("lattice_aut={lattice_aut}"));
    let g1 = load(file1, &mut r)?.graph;
    let g2 = load(file2, &mut r)?.graph;
    let vertex_pairs = |map: &[usize]| -> Vec<String> {
        map.iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", g1.vertex_name(a), g2.vertex_name(b)))
            .collect()
    };
    let found = if lattice_aut {
        isomorphic_up_to_lattice_aut(&g1, &g2).map(|l| {
            let rows: Vec<Vec<String>> = l
                .matrix
                .to_rows()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            (l.iso, Some(rows))
        })
    } else {
        isomorphic_strict(&g1, &g2).map(|i| (i, None))
    };
    match found {
        Some((iso, matrix)) => {
            let pairs = vertex_pairs(&iso.vertex_map);
            r.results = json!({
                "isomorphic": true,
                "vertex_map": pairs,
                "edge_map": iso.edge_map,
                "matrix": matrix,
            });
            r.line("isomorphic");
            r.line(format!("  vertices: {}", pairs.join(" ")));
            if let Some(m) = matrix {
                let rows: Vec<String> = m.iter().map(|row| format!("[{}]", row.join(","))).collect();
                r.line(format!("  matrix: {}", rows.join(" ")));
            }
        }
        None => {
            r.results = json!({ "isomorphic": false });
            r.line("not isomorphic");
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn cmd_realize(file: &Path, any_signs: bool) -> Run<Report> {
    let mut r = Report::new("realize");
    r.inputs.push(format!("any_signs={any_signs}"));
    let f = load(file, &mut r)?;
    let g = &f.graph;
    if any_signs {
        let result = realize_any_signs(g)?;
        match result.found {
            Some((s, m)) => {
                r.results = json!({
                    "feasible": true,
                    "nodes_visited": result.nodes_visited,
                    "signed_labels": s.labels(),
                    "realization": m.to_json(g),
                });
                r.line("feasible for the signed structure:");
                r.text.push_str(&write_graph(g, Some(&s))?);
                describe_realization(&mut r, g, &m);
            }
            None => {
                r.results = json!({ "feasible": false, "nodes_visited": result.nodes_visited });
                r.line("infeasible for every sign structure");
                r.code = EXIT_NEGATIVE;
            }
        }
        return Ok(r);
    }
    let s = need_signed(&f, file)?;
    match realize(g, &s)? {
        Realizability::Feasible(m) => {
            r.results = json!({ "feasible": true, "realization": m.to_json(g) });
            r.line("feasible");
            describe_realization(&mut r, g, &m);
        }
        Realizability::Infeasible(cert) => {
            r.results = json!({ "feasible": false, "certificate": cert.to_json(g) });
            r.line("infeasible");
            r.line(format!("  {}", cert.describe(g)));
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn describe_realization(r: &mut Report, g: &GkmGraph, m: &gkm_core::moment::MomentumRealization) {
    for (v, p) in m.positions.iter().enumerate() {
        let coords: Vec<String> = p.iter().map(rat_string).collect();
        r.line(format!("  {} at ({})", g.vertex_name(v), coords.join(",")));
    }
    for (e, l) in m.lengths.iter().enumerate() {
        let (a, b) = g.edge(e).ends;
        r.line(format!(
            "  edge {e} {}-{} length {}",
            g.vertex_name(a),
            g.vertex_name(b),
            rat_string(l)
        ));
    }
}

fn realized_xray(file: &Path, r: &mut Report) -> Run<Option<(GkmGraph, gkm_core::moment::XRay)>> {
    let f = load(file, r)?;
    let s = need_signed(&f, file)?;
    match realize(&f.graph, &s)? {
        Realizability::Feasible(m) => {
            let x = xray(&f.graph, &s, &m)?;
            Ok(Some((f.graph, x)))
        }
        Realizability::Infeasible(_) => Ok(None),
    }
}

fn cmd_xray(file: &Path, compare: Option<&Path>, normalized: bool) -> Run<Report> {
    let mut r = Report::new("xray");
    r.inputs.push(format!("normalized={normalized}"));
    let Some((g, x)) = realized_xray(file, &mut r)? else {
        r.results = json!({ "feasible": false });
        r.line(format!("{}: no momentum realization", file.display()));
        r.code = EXIT_NEGATIVE;
        return Ok(r);
    };
    let shown = if normalized { x.normalized() } else { x.clone() };
    let Some(other) = compare else {
        r.results = json!({ "xray": shown.to_json(&g) });
        r.line(format!("{} strata", shown.poset.len()));
        for (i, (el, pts)) in shown.poset.elements.iter().zip(&shown.polytopes).enumerate() {
            let names: Vec<&str> = el.component.vertices.iter().map(|&v| g.vertex_name(v)).collect();
            let pts: Vec<String> = pts
                .iter()
                .map(|p| format!("({})", p.iter().map(rat_string).collect::<Vec<_>>().join(",")))
                .collect();
            r.line(format!("  [{i}] {{{}}} -> {}", names.join(","), pts.join(" ")));
        }
        return Ok(r);
    };
    let Some((_, y)) = realized_xray(other, &mut r)? else {
        r.results = json!({ "feasible": false });
        r.line(format!("{}: no momentum realization", other.display()));
        r.code = EXIT_NEGATIVE;
        return Ok(r);
    };
    let mode = if normalized {
        XRayMode::UpToTranslationAndScaling
    } else {
        XRayMode::Exact
    };
    let equal = xray_equal(&x, &y, mode);
    r.results = json!({ "equal": equal, "normalized": normalized });
    r.line(if equal { "x-rays coincide" } else { "x-rays differ" });
    if !equal {
        r.code = EXIT_NEGATIVE;
    }
    Ok(r)
}

fn cmd_integrate(file: &Path, expr: &str, orientation: Option<&Path>) -> Run<Report> {
    let mut r = Report::new("integrate");
    let f = load(file, &mut r)?;
    let g = &f.graph;
    let e = parse_expr(expr, g.valence()).map_err(|err| input_error(format!("--expr: {err}")))?;
    r.inputs.push(e.to_string());
    let value = match orientation {
        Some(path) => {
            let o = parse_orientation(&read(path)?, g)
                .map_err(|err| input_error(format!("{}: {err}", path.display())))?;
            r.inputs.push(write_orientation(g, &o));
            integrate_oriented(g, &o, &e)?
        }
        None => integrate(g, &need_signed(&f, file)?, &e)?,
    };
    let v = rat_string(&value);
    r.results = json!({ "expr": e.to_string(), "value": v, "integral": value.is_integer() });
    if !value.is_integer() {
        r.warnings.push(format!("value {v} is not an integer"));
    }
    r.line(format!("{e} = {v}"));
    Ok(r)
}

fn cmd_catalog(name: Option<&str>, emit: bool, dir: &Path) -> Run<Report> {
    let mut r = Report::new("catalog");
    let names = match name {
        Some(n) => {
            let b = catalog(n)?;
            vec![b.name]
        }
        None => catalog_names(),
    };
    r.inputs.extend(names.iter().cloned());
    if !emit {
        if let Some(n) = name {
            let b = catalog(n)?;
            let text = write_graph(&b.graph, b.signed.as_ref())?;
            r.results = json!({ "name": b.name, "graph": text, "info": graph_info(&b.graph) });
            r.text = text;
        } else {
            r.results = json!({ "names": names });
            for n in &names {
                r.line(n);
            }
        }
        return Ok(r);
    }
    let mut written = Vec::new();
    for n in &names {
        let b = catalog(n)?;
        let path = dir.join(emit_file_name(n));
        let text = write_graph(&b.graph, b.signed.as_ref())?;
        fs::write(&path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        r.line(format!("wrote {}", path.display()));
        written.push(emit_file_name(n));
    }
    r.results = json!({ "written": written });
    Ok(r)
}

fn cmd_paper_check() -> Run<Report> {
    let mut r = Report::new("paper-check");
    let outcomes = paper_check();
    r.results = table_json(&outcomes);
    r.text = format_table(&outcomes);
    r.violations = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("criterion {} ({}) failed: {}", o.id, o.title, o.computed))
        .collect();
    if !all_passed(&outcomes) {
        r.code = EXIT_NEGATIVE;
    }
    Ok(r)
}
