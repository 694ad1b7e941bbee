//! Command-line front end.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 invalid
//! input (including usage errors), 3 capability bound exceeded, 4 internal
//! invariant failure.

pub mod format;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use multituran::constructions::{complete_family, hybrid_family, mixed_family, turan_family};
use multituran::criticality::reduce_minmax;
use multituran::friendliness::{embed_4cc, fr_embedding_order, is_h_friendly, uniform_host};
use multituran::graph::symmetric_difference;
use multituran::nesting::{nest, to_multiplicity};
use multituran::rainbow::{find_rainbow, find_rainbow_nested, EmbeddingCertificate, Evidence};
use multituran::rational::parse_fraction;
use multituran::search::{
    census, solve_exact_with, stability_probe, verify_goodness_formula, SearchOptions, SearchReport,
    Verdict,
};
use multituran::{patterns, Error, Multigraph, MultiplicityGraph, Parallelism, Pattern, Vertex};

use format::{parse_cmg, parse_host, parse_pat, write_cmg, write_cmgx, FormatError, Host};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::Capability(_)) => EXIT_CAPABILITY,
            CliError::Core(Error::Internal(_)) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "multituran", version, about = "Rainbow Turán numbers of small multigraphs")]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact extremal number by branch and bound.
    Solve(SolveArgs),
    /// Compare exact values with the conjectured formula.
    VerifyGoodness(SolveArgs),
    /// Exit 0 when the host has no multicolored copy, 1 otherwise.
    VerifyFree(HostPattern),
    /// Print a multicolored copy as a certificate, or report freeness.
    FindRainbow(HostPattern),
    /// Convert an explicit coloring into nested form.
    Nest(NestArgs),
    /// Chromatic data, critical edges and the reduced pattern.
    Critical(PatternOnly),
    /// Write one of the candidate extremal families.
    Construct(ConstructArgs),
    /// Exhaustive friendliness check of a multipartite host.
    Friendly(FriendlyArgs),
    /// Embedding schedule for a 4-vertex pattern into a 4-vertex host.
    #[command(name = "embed-4cc")]
    Embed4cc(Embed4ccArgs),
    /// Embedding schedule for patterns whose reduction has small multiplicities.
    EmbedFr(EmbedFrArgs),
    /// Counts of color-critical graphs by order.
    Census(CensusArgs),
    /// Maximal free graphs near the extremal number and their distances.
    StabilityProbe(StabilityArgs),
    /// Edit distance between two hosts.
    Distance(DistanceArgs),
}

/// Inclusive range written `a` or `a..b`.
#[derive(Debug, Clone, Copy)]
struct Span {
    lo: u64,
    hi: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad number {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    fn values(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Args)]
struct PatternOnly {
    /// Pattern file (`pat` format) or `builtin:NAME` (K4, C5, P3, S3, K2,2,2, 2K3).
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    pattern: String,
    /// Order, or a range `a..b`.
    #[arg(long)]
    n: Span,
    /// Color budget, or a range `a..b`.
    #[arg(long)]
    k: Span,
    /// Search every labeling instead of canonical ones only.
    #[arg(long)]
    no_canonical: bool,
    /// Skip collecting extremal graphs.
    #[arg(long)]
    no_witnesses: bool,
    /// Disable the minimum-degree cut.
    #[arg(long)]
    no_min_degree: bool,
    /// Write a TSV table instead of JSON.
    #[arg(long)]
    tsv: bool,
    /// Add node counts and timings (these vary between runs).
    #[arg(long)]
    stats: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct HostPattern {
    /// Host file, `cmg` or `cmgx`.
    #[arg(long)]
    graph: String,
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct NestArgs {
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "-")]
    out: String,
    /// Write the nested coloring as `cmgx` instead of `cmg`.
    #[arg(long)]
    explicit: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Turan,
    Hybrid,
    Mixed,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<usize>,
    /// Pattern size `h`, for the complete family.
    #[arg(long)]
    h: Option<u64>,
    #[arg(long)]
    m_cut: Option<u32>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct FriendlyArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    k: u32,
    /// Part sizes, e.g. `3,3`; parts take consecutive vertices.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    /// Host file; without it the complete multipartite host is used.
    #[arg(long)]
    graph: Option<String>,
    /// Multiplicity of the complete multipartite host (default `h`).
    #[arg(long)]
    mult: Option<u32>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct Embed4ccArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct EmbedFrArgs {
    /// Host on `r - 1` vertices.
    #[arg(long)]
    skeleton: String,
    #[arg(long)]
    pattern: String,
    /// Multiplicities from the new vertex to each skeleton vertex.
    #[arg(long, value_delimiter = ',')]
    attach: Vec<u32>,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    r: usize,
    /// Largest order (exhaustive), or the sampled order for `r = 5`.
    #[arg(long)]
    s: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tsv: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    /// Slack as a fraction `p/q`.
    #[arg(long, default_value = "0")]
    eta: String,
    /// Replace the pattern by its reduction first.
    #[arg(long)]
    reduce: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Compare labeled graphs instead of minimizing over relabelings.
    #[arg(long)]
    labeled: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

fn read_input(path: &str) -> Result<String> {
    let io = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(PathBuf::from(path)).map_err(io)
    }
}

fn write_output(path: &str, text: &str) -> Result<()> {
    let io = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(io)?;
        out.flush().map_err(io)
    } else {
        std::fs::write(path, text).map_err(io)
    }
}

fn format_err(path: &str) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_string(),
        source,
    }
}

fn load_pattern(spec: &str) -> Result<Pattern> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(patterns::by_name(name)?);
    }
    parse_pat(&read_input(spec)?).map_err(format_err(spec))
}

fn load_host(path: &str) -> Result<Host> {
    parse_host(&read_input(path)?).map_err(format_err(path))
}

fn load_nested(path: &str) -> Result<MultiplicityGraph> {
    parse_cmg(&read_input(path)?).map_err(format_err(path))
}

/// JSON object with `"schema": 1` first.
fn with_schema(body: impl Serialize) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    match serde_json::to_value(body).expect("reports serialize") {
        Value::Object(rest) => map.extend(rest),
        other => {
            map.insert("value".into(), other);
        }
    }
    Value::Object(map)
}

fn emit(path: &str, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json");
    text.push('\n');
    write_output(path, &text)
}

fn certificate_json(cert: &EmbeddingCertificate) -> Value {
    let mut map = Map::new();
    map.insert("result".into(), json!("found"));
    map.insert("phi".into(), json!(cert.phi));
    match &cert.evidence {
        Evidence::EmbeddingOrder { order, prefix_sums } => {
            map.insert("order".into(), json!(order));
            map.insert("prefix_sums".into(), json!(prefix_sums));
        }
        Evidence::ColorAssignment(slots) => {
            map.insert("colors".into(), serde_json::to_value(slots).expect("json"));
        }
    }
    with_schema(Value::Object(map))
}

fn search_options(a: &SolveArgs, threads: usize) -> SearchOptions {
    SearchOptions {
        canonical: !a.no_canonical,
        witnesses: !a.no_witnesses,
        min_degree: !a.no_min_degree,
        parallelism: Parallelism::threads(threads),
    }
}

fn instances(a: &SolveArgs) -> Result<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    for n in a.n.values() {
        for k in a.k.values() {
            let k = u32::try_from(k).map_err(|_| usage("k too large"))?;
            out.push((n as usize, k));
        }
    }
    Ok(out)
}

fn report_json(r: &SearchReport, stats: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("json");
    if stats {
        v["nodes_explored"] = json!(r.nodes_explored);
        v["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
    }
    v
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("json") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn tsv(rows: &[(usize, u32, u64, Option<u64>, String)]) -> String {
    let mut out = String::from("n\tk\tvalue\tformula_value\tverdict\n");
    for (n, k, value, formula, verdict) in rows {
        let f = formula.map_or("-".to_string(), |f| f.to_string());
        out.push_str(&format!("{n}\t{k}\t{value}\t{f}\t{verdict}\n"));
    }
    out
}

fn single_or_list(items: Vec<Value>) -> Value {
    if items.len() == 1 {
        let mut map = Map::new();
        map.insert("schema".into(), json!(1));
        if let Value::Object(rest) = items.into_iter().next().expect("one item") {
            map.extend(rest);
        }
        Value::Object(map)
    } else {
        with_schema(json!({ "reports": items }))
    }
}

fn cmd_solve(a: &SolveArgs, threads: usize) -> Result<i32> {
    let h = load_pattern(&a.pattern)?;
    let opts = search_options(a, threads);
    let mut json_items = Vec::new();
    let mut rows = Vec::new();
    for (n, k) in instances(a)? {
        let r = solve_exact_with(&h, n, k, &opts)?;
        let formula = multituran::search::formula_branch(&h, n, k)?.map(|b| b.1);
        rows.push((n, k, r.value, formula, snake(&r.agrees_with_goodness)));
        json_items.push(report_json(&r, a.stats));
    }
    if a.tsv {
        write_output(&a.out, &tsv(&rows))?;
    } else {
        emit(&a.out, &single_or_list(json_items))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify_goodness(a: &SolveArgs, threads: usize) -> Result<i32> {
    let h = load_pattern(&a.pattern)?;
    let opts = search_options(a, threads);
    let mut json_items = Vec::new();
    let mut rows = Vec::new();
    let mut negative = false;
    for (n, k) in instances(a)? {
        let g = verify_goodness_formula(&h, n, k, &opts)?;
        negative |= g.verdict == Verdict::Deviate || g.degenerate_check == Some(false);
        rows.push((n, k, g.report.value, g.formula_value, snake(&g.verdict)));
        let mut v = serde_json::to_value(&g).expect("json");
        v["report"] = report_json(&g.report, a.stats);
        json_items.push(v);
    }
    if a.tsv {
        write_output(&a.out, &tsv(&rows))?;
    } else {
        emit(&a.out, &single_or_list(json_items))?;
    }
    Ok(if negative { EXIT_NEGATIVE } else { EXIT_OK })
}

fn rainbow(host: &Host, h: &Pattern) -> Result<Option<EmbeddingCertificate>> {
    Ok(match host {
        Host::Nested(g) => find_rainbow_nested(g, h)?,
        Host::Explicit(g) => find_rainbow(g, h),
    })
}

fn cmd_find(a: &HostPattern, verdict: bool) -> Result<i32> {
    let host = load_host(&a.graph)?;
    let h = load_pattern(&a.pattern)?;
    let found = rainbow(&host, &h)?;
    let value = match &found {
        Some(cert) => certificate_json(cert),
        None => with_schema(json!({ "result": "free" })),
    };
    emit(&a.out, &value)?;
    Ok(if verdict && found.is_some() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn cmd_nest(a: &NestArgs) -> Result<i32> {
    let text = match load_host(&a.input)? {
        Host::Explicit(g) if a.explicit => write_cmgx(&nest(&g)),
        Host::Explicit(g) => write_cmg(&to_multiplicity(&g)),
        Host::Nested(g) if a.explicit => write_cmgx(&multituran::nesting::from_multiplicity(&g)),
        Host::Nested(g) => write_cmg(&g),
    };
    write_output(&a.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_critical(a: &PatternOnly) -> Result<i32> {
    let h = load_pattern(&a.pattern)?;
    emit(&a.out, &with_schema(reduce_minmax(&h)?))?;
    Ok(EXIT_OK)
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for the {family} family")))
}

fn cmd_construct(a: &ConstructArgs) -> Result<i32> {
    let g = match a.family {
        Family::Complete => complete_family(a.n, need(a.h, "h", "complete")?)?,
        Family::Turan => turan_family(a.n, need(a.k, "k", "turan")?, need(a.r, "r", "turan")?)?,
        Family::Hybrid => hybrid_family(a.n, need(a.k, "k", "hybrid")?, need(a.r, "r", "hybrid")?)?,
        Family::Mixed => mixed_family(
            a.n,
            need(a.k, "k", "mixed")?,
            need(a.r, "r", "mixed")?,
            need(a.m_cut, "m-cut", "mixed")?,
        )?,
    };
    write_output(&a.out, &write_cmg(&g))?;
    Ok(EXIT_OK)
}

fn cmd_friendly(a: &FriendlyArgs, threads: usize) -> Result<i32> {
    let h = load_pattern(&a.pattern)?;
    let size = *a.parts.first().ok_or_else(|| usage("--parts is required"))?;
    if a.parts.iter().any(|&p| p != size) {
        return Err(usage("parts must have equal sizes"));
    }
    let (host, parts) = match &a.graph {
        Some(path) => {
            let g = load_nested(path)?;
            let mut parts: Vec<Vec<Vertex>> = Vec::new();
            let mut next = 0;
            for &p in &a.parts {
                parts.push((next..next + p).collect());
                next += p;
            }
            (g, parts)
        }
        None => {
            let mult = a.mult.unwrap_or(u32::try_from(h.h()).unwrap_or(u32::MAX));
            uniform_host(a.parts.len(), size, mult, a.k)?
        }
    };
    let report = is_h_friendly(&host, &parts, &h, a.k, Parallelism::threads(threads))?;
    emit(&a.out, &with_schema(&report))?;
    Ok(if report.friendly { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_embed_4cc(a: &Embed4ccArgs) -> Result<i32> {
    let g0 = load_nested(&a.graph)?;
    let h = load_pattern(&a.pattern)?;
    let out = embed_4cc(&g0, &h, a.k)?;
    emit(&a.out, &with_schema(&out))?;
    Ok(match out {
        multituran::friendliness::Embed4cc::Certificate { .. } => EXIT_OK,
        multituran::friendliness::Embed4cc::Exceptional => EXIT_NEGATIVE,
    })
}

fn cmd_embed_fr(a: &EmbedFrArgs) -> Result<i32> {
    let skeleton = load_nested(&a.skeleton)?;
    let h = load_pattern(&a.pattern)?;
    let out = fr_embedding_order(&skeleton, &h, &a.attach, a.k)?;
    emit(&a.out, &with_schema(&out))?;
    Ok(EXIT_OK)
}

fn cmd_census(a: &CensusArgs, threads: usize) -> Result<i32> {
    let rep = census(a.r, a.s, a.samples, a.seed, Parallelism::threads(threads))?;
    if a.tsv {
        let mut out = String::from(
            "s\tgraphs\tcritical\tcritical_unlabeled\tin_Fr\tunique_critical_edge\tunique_partition\tfr_fraction\n",
        );
        for r in &rep.rows {
            let f = r.fr_fraction.map_or("-".to_string(), |f| format!("{f:.6}"));
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{f}\n",
                r.s,
                r.graphs.labeled,
                r.critical.labeled,
                r.critical.unlabeled,
                r.in_fr.labeled,
                r.unique_critical_edge.labeled,
                r.unique_partition.labeled
            ));
        }
        if let Some(s) = &rep.sampled {
            let f = s.fr_fraction.map_or("-".to_string(), |f| format!("{f:.6}"));
            out.push_str(&format!(
                "{}\t{}\t{}\t-\t{}\t{}\t{}\t{f}\n",
                s.s, s.samples, s.critical, s.in_fr, s.unique_critical_edge, s.unique_partition
            ));
        }
        write_output(&a.out, &out)?;
    } else {
        emit(&a.out, &with_schema(&rep))?;
    }
    Ok(EXIT_OK)
}

fn cmd_stability(a: &StabilityArgs, threads: usize) -> Result<i32> {
    let mut h = load_pattern(&a.pattern)?;
    if a.reduce {
        h = reduce_minmax(&h)?
            .reduced
            .ok_or_else(|| Error::Input("pattern is not color-critical".into()))?;
    }
    let eta = parse_fraction(&a.eta).ok_or_else(|| usage(format!("bad fraction {:?}", a.eta)))?;
    let rep = stability_probe(&h, a.n, a.k, eta, Parallelism::threads(threads))?;
    let mut v = with_schema(&rep);
    v["witnesses"]
        .as_array_mut()
        .expect("array")
        .iter_mut()
        .zip(&rep.witnesses)
        .for_each(|(j, w)| j["distance"] = json!(w.distance()));
    emit(&a.out, &v)?;
    Ok(EXIT_OK)
}

fn cmd_distance(a: &DistanceArgs) -> Result<i32> {
    let g1 = load_host(&a.a)?.to_nested();
    let g2 = load_host(&a.b)?.to_nested();
    let d = symmetric_difference(&g1, &g2, !a.labeled)?;
    emit(&a.out, &with_schema(json!({ "distance": d, "upto_iso": !a.labeled, "n": g1.order() })))?;
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let t = cli.threads;
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, t),
        Command::VerifyGoodness(a) => cmd_verify_goodness(a, t),
        Command::VerifyFree(a) => cmd_find(a, true),
        Command::FindRainbow(a) => cmd_find(a, false),
        Command::Nest(a) => cmd_nest(a),
        Command::Critical(a) => cmd_critical(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Friendly(a) => cmd_friendly(a, t),
        Command::Embed4cc(a) => cmd_embed_4cc(a),
        Command::EmbedFr(a) => cmd_embed_fr(a),
        Command::Census(a) => cmd_census(a, t),
        Command::StabilityProbe(a) => cmd_stability(a, t),
        Command::Distance(a) => cmd_distance(a),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            log::debug!("failed: {e:?}");
            eprintln!("multituran: {e}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        let s: Span = "3..5".parse().unwrap();
        assert_eq!(s.values().collect::<Vec<_>>(), vec![3, 4, 5]);
        let s: Span = "4".parse().unwrap();
        assert_eq!(s.values().count(), 1);
        assert!("5..3".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
