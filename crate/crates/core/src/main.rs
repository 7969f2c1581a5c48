use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use conelab::catalog::{build_id, Base, ConeId};
use conelab::exactla::IntVec;
use conelab::harness::{self, Lab, Report};
use conelab::matrix::{read_matrix, transform_matrix, write_atomic, write_matrix, RowMap, FORMAT_VERSION};
use conelab::polyhedra::DdOptions;
use conelab::spaces::Space;
use conelab::{zeroone, Error};

const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "conelab", version, about = "Exact computations on cones of weighted, partial and quasi semimetrics")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cache directory for ray and facet files (CONELAB_CACHE takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Wall-clock cap per double description run.
    #[arg(long, global = true)]
    limit_seconds: Option<u64>,
    /// Checkpoint file (or directory, for `verify`); resumed when present.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct ConeArgs {
    /// Cone id, e.g. MET, PMET, 01-dWMET.
    #[arg(long)]
    cone: String,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKindArg {
    Sk,
    Ri,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    /// WSYM -> PSYM
    #[value(name = "P")]
    P,
    /// PSYM -> WSYM
    #[value(name = "Pinv")]
    Pinv,
    /// WSYM -> QUASI
    #[value(name = "Q")]
    Q,
    /// PSYM(n) -> PSYM(n+1)
    #[value(name = "lift")]
    Lift,
    /// QUASI -> SYM, q + q^T
    #[value(name = "sym")]
    Sym,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the cone catalog.
    List,
    /// Facets as a matrix file.
    Facets {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extreme rays as a matrix file.
    Rays {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Ray and facet orbits with incidence and adjacency.
    Orbits {
        #[command(flatten)]
        cone: ConeArgs,
    },
    /// Skeleton or ridge graph invariants.
    Graph {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long, value_enum)]
        kind: GraphKindArg,
        #[arg(long)]
        diameter: bool,
        #[arg(long)]
        connectivity: bool,
        /// Print the edge list.
        #[arg(long)]
        edges: bool,
    },
    /// 0,1 points and the extreme ones.
    Zeroone {
        #[command(flatten)]
        cone: ConeArgs,
    },
    /// Exact membership of one vector.
    Member {
        #[command(flatten)]
        cone: ConeArgs,
        /// Entries in coordinate order, comma or space separated.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Apply a coordinate map to every row of a matrix file (`-` for stdin).
    Transform {
        #[arg(long, value_enum)]
        map: MapArg,
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check computed values against the embedded tables and statements.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    table2: bool,
    #[arg(long)]
    orbits: bool,
    #[arg(long)]
    counts: bool,
    #[arg(long)]
    theorems: bool,
    #[arg(long)]
    conjectures: bool,
    /// Restrict `--table2` to one cone, e.g. OCUT or 01-PMET.
    #[arg(long)]
    cone: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Run one named theorem clause.
    #[arg(long)]
    clause: Option<String>,
    /// Include the hours-scale rows.
    #[arg(long)]
    extended: bool,
}

/// An error with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownCone(_) | Error::UnsupportedSize { .. } | Error::SpaceMismatch { .. } => USAGE,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Out = Result<(String, u8), Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let jobs = cli.jobs;
    match conelab::with_threads(jobs, || run(&cli)) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("conelab: {msg}");
            ExitCode::from(code)
        }
    }
}

fn dd_options(cli: &Cli) -> DdOptions {
    DdOptions { time_limit: cli.limit_seconds.map(Duration::from_secs), ..DdOptions::default() }
}

fn lab(cli: &Cli, single: bool) -> Lab {
    let mut lab = Lab::new(dd_options(cli));
    if let Some(p) = &cli.checkpoint {
        if single {
            lab.opts.checkpoint = Some(p.clone());
            if p.exists() {
                lab.opts.resume = Some(p.clone());
            }
        } else {
            lab.checkpoint_dir = Some(p.clone());
        }
    }
    lab
}

fn cone_id(a: &ConeArgs) -> Result<ConeId, Fail> {
    let id = ConeId::parse(&a.cone)?;
    build_id(id, a.n)?;
    Ok(id)
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::List => Ok((list(cli.format), 0)),
        Cmd::Facets { cone, output } => matrix_cmd(cli, cone, Artifact::Facets, output.as_deref()),
        Cmd::Rays { cone, output } => matrix_cmd(cli, cone, Artifact::Rays, output.as_deref()),
        Cmd::Orbits { cone } => orbits(cli, cone),
        Cmd::Graph { cone, kind, diameter, connectivity, edges } => graph(cli, cone, *kind, *diameter, *connectivity, *edges),
        Cmd::Zeroone { cone } => zero_one(cli, cone),
        Cmd::Member { cone, vector } => member(cli, cone, vector),
        Cmd::Transform { map, input, output } => transform(cli, *map, input, output.as_deref()),
        Cmd::Verify(v) => verify(cli, v),
    }
}

// --------------------------------------------------------------------- list

fn list(format: Format) -> String {
    let rows: Vec<Value> = ConeId::all()
        .into_iter()
        .map(|id| {
            let max = if matches!(id.base(), Base::Hyp | Base::Qhyp) { 6 } else { 7 };
            let about = match id {
                ConeId::Base(b) => b.describe().to_string(),
                ConeId::ZeroOne(b) => format!("0,1-subcone of {}", b.id()),
                ConeId::ZeroOneWqmetSym => "q + q^T over 0,1-WQMET".to_string(),
            };
            json!({ "id": id.to_string(), "space": id.space_kind().tag(), "n": [3, max], "about": about })
        })
        .collect();
    if format == Format::Json {
        return format!("{}\n", serde_json::to_string_pretty(&rows).expect("json"));
    }
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{:<14} {:<6} n={}..{}  {}\n",
            r["id"].as_str().unwrap_or(""),
            r["space"].as_str().unwrap_or(""),
            r["n"][0],
            r["n"][1],
            r["about"].as_str().unwrap_or("")
        ));
    }
    out
}

// ------------------------------------------------------------ rays, facets

#[derive(Clone, Copy)]
enum Artifact {
    Rays,
    Facets,
}

impl Artifact {
    fn tag(self) -> &'static str {
        match self {
            Artifact::Rays => "rays",
            Artifact::Facets => "facets",
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    std::env::var_os("CONELAB_CACHE").map(PathBuf::from).or_else(|| cli.cache_dir.clone())
}

fn sha_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, id: ConeId, n: usize, what: Artifact) -> PathBuf {
    let version = env!("CARGO_PKG_VERSION");
    dir.join(format!("{id}_{n}_{}_{version}-{FORMAT_VERSION}.txt", what.tag()))
}

/// A cached file is used only when its sidecar hash matches.
fn cache_read(path: &Path) -> Option<String> {
    let text = std::fs::read_to_string(path).ok()?;
    let sum = std::fs::read_to_string(path.with_extension("sha256")).ok()?;
    (sum.trim() == sha_hex(&text)).then_some(text)
}

fn cache_write(path: &Path, text: &str) -> Result<(), Fail> {
    write_atomic(path, text)?;
    write_atomic(&path.with_extension("sha256"), &format!("{}\n", sha_hex(text)))?;
    Ok(())
}

fn matrix_text(cli: &Cli, a: &ConeArgs, what: Artifact) -> Result<String, Fail> {
    let id = cone_id(a)?;
    let cached = cache_dir(cli).map(|d| cache_path(&d, id, a.n, what));
    if let Some(text) = cached.as_deref().and_then(cache_read) {
        return Ok(text);
    }
    let space = Space::new(id.space_kind(), a.n);
    let text = match what {
        Artifact::Rays => write_matrix(&lab(cli, true).rays_only(id, a.n)?, space)?,
        Artifact::Facets => write_matrix(lab(cli, true).get(id, a.n)?.facets(), space)?,
    };
    if let Some(p) = cached {
        cache_write(&p, &text)?;
    }
    Ok(text)
}

fn json_row(v: &IntVec) -> Value {
    Value::Array(
        v.0.iter()
            .map(|x| match i64::try_from(x) {
                Ok(k) => json!(k),
                Err(_) => json!(x.to_string()),
            })
            .collect(),
    )
}

fn matrix_json(text: &str, extra: Value) -> Result<String, Fail> {
    let (space, rows) = read_matrix(text)?;
    let mut v = json!({
        "space": space.kind.tag(),
        "n": space.n,
        "dim": space.dim(),
        "coords": space.labels(),
        "rows": rows.iter().map(json_row).collect::<Vec<_>>(),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))
}

fn emit(cli: &Cli, text: String, extra: Value, output: Option<&Path>) -> Out {
    let rendered = if cli.format == Format::Json { matrix_json(&text, extra)? } else { text };
    match output {
        Some(p) => {
            write_atomic(p, &rendered)?;
            Ok((String::new(), 0))
        }
        None => Ok((rendered, 0)),
    }
}

fn matrix_cmd(cli: &Cli, a: &ConeArgs, what: Artifact, output: Option<&Path>) -> Out {
    let text = matrix_text(cli, a, what)?;
    let id = cone_id(a)?;
    emit(cli, text, json!({ "cone": id.to_string(), "kind": what.tag() }), output)
}

// ------------------------------------------------------------------ orbits

fn orbits(cli: &Cli, a: &ConeArgs) -> Out {
    let c = lab(cli, true).get(cone_id(a)?, a.n)?;
    let mut sections = Vec::new();
    for (tag, orb, inc, adj) in [
        ("rays", c.ray_orbits()?, &c.desc.ray_facets, c.skeleton()),
        ("facets", c.facet_orbits()?, &c.desc.facet_rays, c.ridge()),
    ] {
        let rows: Vec<Value> = orb
            .orbits
            .iter()
            .map(|o| {
                let k = o.members[0];
                json!({
                    "representative": json_row(&o.representative),
                    "size": o.size,
                    "inc": inc[k].count(),
                    "adj": adj.degree(k),
                })
            })
            .collect();
        sections.push((tag, orb.orbits.iter().map(|o| o.size).sum::<usize>(), orb.group_order, rows));
    }
    if cli.format == Format::Json {
        let mut v = json!({ "cone": c.name(), "n": c.n() });
        for (tag, total, order, rows) in &sections {
            v[*tag] = json!({ "total": total, "group_order": order, "orbits": rows });
        }
        return Ok((format!("{}\n", serde_json::to_string_pretty(&v).expect("json")), 0));
    }
    let mut out = format!("{}\n", c.name());
    for (tag, total, order, rows) in sections {
        out.push_str(&format!("{tag}: {total} in {} orbits (group order {order})\n", rows.len()));
        let prefix = if tag == "rays" { "R" } else { "F" };
        for (k, r) in rows.iter().enumerate() {
            let rep: Vec<String> = r["representative"].as_array().into_iter().flatten().map(ToString::to_string).collect();
            out.push_str(&format!(
                "  {prefix}{:<3} size {:<5} inc {:<5} adj {:<5} ({})\n",
                k + 1,
                r["size"],
                r["inc"],
                r["adj"],
                rep.join(",").replace('"', "")
            ));
        }
    }
    Ok((out, 0))
}

// ------------------------------------------------------------------- graph

fn graph(cli: &Cli, a: &ConeArgs, kind: GraphKindArg, diameter: bool, connectivity: bool, edges: bool) -> Out {
    let c = lab(cli, true).get(cone_id(a)?, a.n)?;
    let (g, tag) = match kind {
        GraphKindArg::Sk => (c.skeleton(), "Sk"),
        GraphKindArg::Ri => (c.ridge(), "Ri"),
    };
    let mut v = json!({
        "graph": format!("{tag}({})", c.name()),
        "vertices": g.len(),
        "edges": g.edge_count(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "complete": g.is_complete(),
    });
    if diameter {
        v["diameter"] = json!(g.diameter()?);
    }
    if connectivity {
        v["edge_connectivity"] = json!(g.edge_connectivity()?);
    }
    if edges {
        v["edge_list"] = json!(g.edges());
    }
    if cli.format == Format::Json {
        return Ok((format!("{}\n", serde_json::to_string_pretty(&v).expect("json")), 0));
    }
    let mut out = format!(
        "{}: {} vertices, {} edges, degree {}..{}{}\n",
        v["graph"].as_str().unwrap_or(""),
        g.len(),
        g.edge_count(),
        g.min_degree(),
        g.max_degree(),
        if g.is_complete() { ", complete" } else { "" }
    );
    if let Some(d) = v.get("diameter") {
        out.push_str(&format!("diameter {d}\n"));
    }
    if let Some(k) = v.get("edge_connectivity") {
        out.push_str(&format!("edge connectivity {k}\n"));
    }
    if edges {
        out.push_str(&g.edge_list());
    }
    Ok((out, 0))
}

// ----------------------------------------------------------------- zeroone

fn zero_one(cli: &Cli, a: &ConeArgs) -> Out {
    let model = build_id(cone_id(a)?, a.n)?;
    let rep = zeroone::enumerate_01(&model)?;
    if cli.format == Format::Json {
        let mut v = serde_json::to_value(&rep).expect("json");
        v["extreme_points"] = json!(rep.extreme_points.iter().map(json_row).collect::<Vec<_>>());
        return Ok((format!("{}\n", serde_json::to_string_pretty(&v).expect("json")), 0));
    }
    let mut out = format!(
        "{}_{}: {} 0,1 points in {} orbits, {} extreme in {} orbits (method {})\n",
        rep.cone,
        rep.n,
        rep.total,
        rep.orbits_total,
        rep.extreme,
        rep.orbits_extreme,
        serde_json::to_value(rep.method).ok().and_then(|m| m.as_str().map(String::from)).unwrap_or_default()
    );
    out.push_str(&write_matrix(&rep.extreme_points, model.space)?);
    Ok((out, 0))
}

// ------------------------------------------------------------------ member

fn parse_vector(text: &str) -> Result<IntVec, Fail> {
    let cells: Result<Vec<i64>, _> =
        text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
    cells.map(|c| IntVec::from_i64s(&c)).map_err(|_| Fail(USAGE, format!("bad vector `{text}`")))
}

fn member(cli: &Cli, a: &ConeArgs, vector: &str) -> Out {
    let model = build_id(cone_id(a)?, a.n)?;
    let v = parse_vector(vector)?;
    let inside = model.contains(&v).map_err(|e| match e {
        Error::LengthMismatch { .. } => Fail(USAGE, format!("{e}; coords are {}", model.space.labels().join(" "))),
        other => Fail::from(other),
    })?;
    let text = if cli.format == Format::Json {
        format!("{}\n", json!({ "cone": model.name(), "vector": json_row(&v), "member": inside }))
    } else {
        format!("{}\n", inside)
    };
    Ok((text, 0))
}

// --------------------------------------------------------------- transform

fn transform(cli: &Cli, map: MapArg, input: &Path, output: Option<&Path>) -> Out {
    let text = if input == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Error::from)?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| Fail(USAGE, format!("{}: {e}", input.display())))?
    };
    let text = transform_matrix(&text, row_map(map))?;
    emit(cli, text, json!({ "map": row_map(map).name() }), output)
}

fn row_map(m: MapArg) -> RowMap {
    match m {
        MapArg::P => RowMap::P,
        MapArg::Pinv => RowMap::Pinv,
        MapArg::Q => RowMap::Q,
        MapArg::Lift => RowMap::Lift,
        MapArg::Sym => RowMap::Sym,
    }
}

// ------------------------------------------------------------------ verify

fn verify(cli: &Cli, v: &VerifyArgs) -> Out {
    let lab = lab(cli, false);
    let any = v.table2 || v.orbits || v.counts || v.theorems || v.conjectures || v.clause.is_some();
    let mut report = Report::default();
    if v.table2 || !any {
        let filter = match (&v.cone, v.n) {
            (Some(c), Some(n)) => Some(format!("{c}_{n}")),
            (Some(c), None) => Some(c.clone()),
            (None, Some(_)) => return Err(Fail(USAGE, "--n needs --cone".into())),
            (None, None) => None,
        };
        if let Some(f) = &filter {
            if !harness::parameter_rows().iter().any(|r| r.matches(f)) {
                return Err(Fail(USAGE, format!("no parameter row matches `{f}`")));
            }
        }
        report.extend(harness::verify_table2(&lab, filter.as_deref(), v.extended));
    }
    if v.counts || !any {
        report.extend(harness::verify_counts(&lab, v.extended));
    }
    if v.orbits || !any {
        report.extend(harness::verify_orbit_tables(&lab));
    }
    if let Some(name) = &v.clause {
        if !harness::theorem_clauses().iter().any(|c| c.name == name) {
            return Err(Fail(USAGE, format!("unknown clause `{name}`")));
        }
        report.extend(harness::verify_clause(&lab, name));
    } else if v.theorems || !any {
        report.extend(harness::verify_theorems(&lab));
    }
    if v.conjectures || !any {
        report.extend(harness::verify_conjectures(&lab));
    }
    let text = if cli.format == Format::Json { format!("{}\n", report.to_json()) } else { report.render_text() };
    Ok((text, report.exit_code() as u8))
}
