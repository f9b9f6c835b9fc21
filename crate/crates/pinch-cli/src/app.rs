//! Argument model and command execution.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pinch::decomposition::{
    balanced_separator, cc_member, is_normal, is_tightly_connected, normalize_td, td_from_elimination, treewidth_exact,
    validate_td,
};
use pinch::embed::is_planar_graph;
use pinch::generators::{self, AnnulusFamily, Convention, ZooFamily};
use pinch::minors::{bidim, find_minor_model, hadwiger, verify_model, MinorModel};
use pinch::params::{self, ParamResult, StarBase};
use pinch::societies::{
    classify_transaction, depth, find_cross, is_rural, min_width_linear_decomposition, reduce_society, Society,
};
use pinch::verify::{self, Outcome, RunOptions};
use pinch::{graph6, Bracket, Budget, Graph, Search, VertexSet};

use crate::envelope::{render, sha256_hex};
use crate::formats::{self, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pinch",
    version,
    about = "Minors, identification parameters, societies and decompositions"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = Budget::default().seed)]
    pub seed: u64,
    /// Search-node cap for budgeted searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Graph text format: input format for reading, output format for
    /// `generate` (which also accepts `json`).
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph from a parametric family.
    Generate(GenerateArgs),
    /// Search for (or check) a minor model of PATTERN in HOST.
    Minor(MinorArgs),
    /// Evaluate a graph parameter or bound function.
    Param(ParamArgs),
    /// Analyse a society (graph plus `omega:` boundary line).
    Society(SocietyArgs),
    /// Tree decompositions, separators and connectivity.
    Decompose(DecomposeArgs),
    /// Run a reproducible verification with certificates.
    VerifyLemma(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// grid, cylinder, gnp, complete, cycle, path, petersen, annulus,
    /// single-cross, long-jump, crosscap, long-jump-grid, alt-jump,
    /// nested-crosses, twisted-crosses, double-jump, alt-double-jump,
    /// klein, jprime, satellite, wall
    pub family: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub k2: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value = "fig3")]
    pub convention: String,
}

#[derive(Debug, Args)]
pub struct MinorArgs {
    #[arg(long)]
    pub host: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    /// Require every branch set to meet this vertex set (`1,2,3`).
    #[arg(long)]
    pub roots: Option<String>,
    /// Revalidate a previously emitted minor-model certificate instead.
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamName {
    Size,
    Psize,
    Idpr,
    Idpl,
    PDeletePlanar,
    Hadwiger,
    Bidim,
    Treewidth,
    GridOrder,
    Star,
    F317,
    F67,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseName {
    Size,
    Psize,
    Idpr,
    Idpl,
}

impl From<BaseName> for StarBase {
    fn from(b: BaseName) -> Self {
        match b {
            BaseName::Size => StarBase::Size,
            BaseName::Psize => StarBase::Psize,
            BaseName::Idpr => StarBase::Idpr,
            BaseName::Idpl => StarBase::Idpl,
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(value_enum)]
    pub name: ParamName,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Vertex set for `bidim` (`1,2,3`).
    #[arg(long)]
    pub x: Option<String>,
    /// Family for `grid-order`: annulus, single-cross, long-jump, crosscap.
    #[arg(long, default_value = "long-jump")]
    pub family: String,
    #[arg(long, default_value = "fig3")]
    pub convention: String,
    #[arg(long, value_enum, default_value = "idpr")]
    pub base: BaseName,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SocietyAction {
    Cross,
    Rural,
    Depth,
    Classify,
    LinearDecomposition,
    Reduce,
}

#[derive(Debug, Args)]
pub struct SocietyArgs {
    #[arg(value_enum)]
    pub action: SocietyAction,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeAction {
    /// Exact treewidth with a decomposition witness (small graphs).
    Treewidth,
    /// Clique-sum closure membership for `base <= k`.
    Closure,
    /// Elimination-order decomposition, normalized.
    Normalize,
    /// Balanced separator of `x` with at most `k` vertices.
    Separator,
    /// `(f67, k)`-tight connectivity.
    Tight,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(value_enum)]
    pub action: DecomposeAction,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "size")]
    pub base: BaseName,
    #[arg(long)]
    pub k: Option<usize>,
    /// Elimination order for `normalize` (`3,1,2,...`); default ascending.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 2.0 / 3.0)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 3.5, 5.3, 5.4, 6.1, 6.3, 6.6, 6.7, P3.1, P3.2, P6.2, O1.1, TW-identity
    pub id: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
}

/// Rendered output plus exit code; `notice` goes to stderr.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub text: String,
    pub notice: Option<String>,
}

struct Ctx {
    seed: u64,
    budget: Budget,
    format: Option<String>,
    hashed: Vec<u8>,
    argv: String,
}

impl Ctx {
    fn read(&mut self, path: &PathBuf) -> anyhow::Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.hashed.extend_from_slice(text.as_bytes());
        Ok(text)
    }

    fn input_format(&self) -> anyhow::Result<Option<Format>> {
        self.format
            .as_deref()
            .map(|f| f.parse::<Format>().map_err(|e| anyhow!(e)))
            .transpose()
    }

    fn graph(&mut self, path: &PathBuf) -> anyhow::Result<Graph> {
        let text = self.read(path)?;
        let fmt = match self.input_format()? {
            Some(f) => f,
            None => formats::detect(path.to_str(), &text),
        };
        formats::parse_graph(&text, fmt).with_context(|| format!("parsing {}", path.display()))
    }

    fn emit(&self, kind: &str, code: u8, payload: serde_json::Value) -> anyhow::Result<Output> {
        Ok(Output {
            code,
            // Input-free commands hash their canonical arguments instead.
            text: render(
                kind,
                &sha256_hex(if self.hashed.is_empty() {
                    self.argv.as_bytes()
                } else {
                    &self.hashed
                }),
                self.seed,
                payload,
            )?,
            notice: None,
        })
    }
}

pub fn execute(cli: Cli) -> anyhow::Result<Output> {
    let mut budget = Budget::default().with_seed(cli.seed);
    if let Some(n) = cli.budget {
        budget.nodes = n;
    }
    let mut ctx = Ctx {
        seed: cli.seed,
        budget,
        format: cli.format,
        hashed: Vec::new(),
        argv: format!("{:?} budget={:?}", cli.command, cli.budget),
    };
    match cli.command {
        Command::Generate(a) => generate(&mut ctx, a),
        Command::Minor(a) => minor(&mut ctx, a),
        Command::Param(a) => param(&mut ctx, a),
        Command::Society(a) => society(&mut ctx, a),
        Command::Decompose(a) => decompose(&mut ctx, a),
        Command::VerifyLemma(a) => verify_lemma(&mut ctx, a),
    }
}

fn need(v: Option<usize>, name: &str) -> anyhow::Result<usize> {
    v.ok_or_else(|| anyhow!("--{name} is required for this family"))
}

fn generate(ctx: &mut Ctx, a: GenerateArgs) -> anyhow::Result<Output> {
    let convention: Convention = a.convention.parse().map_err(|e| anyhow!("{e}"))?;
    let f = a.family.as_str();
    let g = match f {
        "grid" => generators::grid(need(a.n, "n")?, a.m.or(a.n).unwrap_or(1))?.graph,
        "cylinder" => generators::cylindrical_grid(need(a.n, "n")?, need(a.m, "m")?)?.graph,
        "gnp" => generators::gnp(need(a.n, "n")?, a.p.unwrap_or(0.5), ctx.seed)?,
        "complete" => Graph::complete(need(a.n, "n")?),
        "cycle" => Graph::cycle(need(a.n, "n")?),
        "path" => Graph::path(need(a.n, "n")?),
        "petersen" => Graph::petersen(),
        "annulus" | "single-cross" | "long-jump" | "crosscap" => {
            let fam: AnnulusFamily = f.parse().map_err(|e| anyhow!("{e}"))?;
            generators::enhanced_annulus(fam, need(a.k, "k")?, convention)?.graph
        }
        "long-jump-grid" => generators::long_jump_grid(need(a.k, "k")?, need(a.r, "r")?)?.graph,
        "alt-jump" | "nested-crosses" | "twisted-crosses" | "double-jump" | "alt-double-jump" | "klein" => {
            let fam: ZooFamily = f.parse().map_err(|e| anyhow!("{e}"))?;
            generators::grid_zoo(fam, need(a.k, "k")?, a.k2, need(a.r, "r")?)?.graph
        }
        "jprime" => generators::jprime(need(a.k, "k")?)?.graph,
        "satellite" => generators::satellite_long_jump(need(a.k, "k")?)?.graph,
        "wall" => generators::elementary_wall(need(a.k, "k")?, a.m.or(a.k).unwrap_or(1))?.graph,
        other => bail!("unknown family {other:?}"),
    };
    let params =
        json!({"family": f, "k": a.k, "k2": a.k2, "r": a.r, "n": a.n, "m": a.m, "p": a.p, "convention": a.convention});
    ctx.hashed = serde_json::to_vec(&crate::envelope::sorted(params.clone()))?;
    match ctx.format.as_deref() {
        Some("json") => ctx.emit(
            "graph",
            EXIT_OK,
            json!({"graph6": graph6::encode(&g), "n": g.n(), "m": g.m(), "parameters": params}),
        ),
        other => {
            let fmt = other
                .map(str::parse::<Format>)
                .transpose()
                .map_err(|e| anyhow!(e))?
                .unwrap_or(Format::Graph6);
            Ok(Output {
                code: EXIT_OK,
                text: formats::write_graph(&g, fmt),
                notice: None,
            })
        }
    }
}

fn vertex_set(s: &str) -> anyhow::Result<VertexSet> {
    Ok(formats::parse_vertex_list(s)?.into_iter().collect())
}

fn minor(ctx: &mut Ctx, a: MinorArgs) -> anyhow::Result<Output> {
    let host = ctx.graph(&a.host)?;
    let pattern = ctx.graph(&a.pattern)?;
    if let Some(path) = a.check {
        let text = ctx.read(&path)?;
        let v: serde_json::Value = serde_json::from_str(&text).context("certificate is not JSON")?;
        // A certificate without a model certifies nothing.
        let ok = serde_json::from_value::<MinorModel>(v["payload"]["model"].clone())
            .map(|m| verify_model(&host, &pattern, &m))
            .unwrap_or(false);
        let code = if ok { EXIT_OK } else { EXIT_VIOLATED };
        return ctx.emit("minor-model-check", code, json!({"valid": ok}));
    }
    let roots = a.roots.as_deref().map(vertex_set).transpose()?;
    let found = find_minor_model(&host, &pattern, roots.as_ref(), &ctx.budget)?;
    let (status, model, code) = match found {
        Search::Found(m) => ("found", Some(m), EXIT_OK),
        Search::Absent => ("absent", None, EXIT_OK),
        Search::Unknown => ("unknown", None, EXIT_UNKNOWN),
    };
    ctx.emit(
        "minor-model",
        code,
        json!({"status": status, "model": model, "host": graph6::encode(&host), "pattern": graph6::encode(&pattern), "roots": roots}),
    )
}

fn bracket_code(b: &Bracket) -> u8 {
    if b.lo == b.hi {
        EXIT_OK
    } else {
        EXIT_UNKNOWN
    }
}

fn param_payload(name: &str, r: &ParamResult) -> serde_json::Value {
    json!({"parameter": name, "value": r.value, "exact": r.value.value(), "witness": r.witness})
}

fn param(ctx: &mut Ctx, a: ParamArgs) -> anyhow::Result<Output> {
    match a.name {
        ParamName::F317 => {
            let v = params::bound_f317(need(a.k, "k")?, need(a.r, "r")?)?;
            return ctx.emit(
                "value",
                EXIT_OK,
                json!({"parameter": "f317", "k": a.k, "r": a.r, "value": v.to_string()}),
            );
        }
        ParamName::F67 => {
            let q = need(a.q, "q")?;
            return ctx.emit(
                "value",
                EXIT_OK,
                json!({"parameter": "f67", "q": q, "value": params::bound_f67(q)}),
            );
        }
        _ => {}
    }
    let path = a.input.as_ref().ok_or_else(|| anyhow!("--input is required"))?;
    let g = ctx.graph(path)?;
    let b = ctx.budget;
    let (kind, r) = match a.name {
        ParamName::Size => ("value", exact(params::size(&g))),
        ParamName::Psize => ("value", exact(params::psize(&g))),
        ParamName::Idpr => ("partition-witness", params::idpr(&g, &b)?),
        ParamName::Idpl => ("partition-witness", params::idpl(&g, &b)?),
        ParamName::PDeletePlanar => ("partition-witness", params::p_delete_planar(&g, &b)?),
        ParamName::Hadwiger => ("minor-model", measured(hadwiger(&g, &b)?)),
        ParamName::Bidim => {
            let x = vertex_set(a.x.as_deref().ok_or_else(|| anyhow!("--x is required for bidim"))?)?;
            ("minor-model", measured(bidim(&g, &x, &b)?))
        }
        ParamName::Treewidth => ("value", exact(treewidth_exact(&g)?)),
        ParamName::GridOrder => {
            let fam: AnnulusFamily = a.family.parse().map_err(|e| anyhow!("{e}"))?;
            let conv: Convention = a.convention.parse().map_err(|e| anyhow!("{e}"))?;
            ("minor-model", params::param_grid_order(&g, fam, conv, &b)?)
        }
        ParamName::Star => ("tree-decomposition", params::star(&g, a.base.into(), &b)),
        ParamName::F317 | ParamName::F67 => unreachable!("handled above"),
    };
    let name = a
        .name
        .to_possible_value()
        .expect("named variant")
        .get_name()
        .to_string();
    ctx.emit(kind, bracket_code(&r.value), param_payload(&name, &r))
}

fn exact(v: usize) -> ParamResult {
    ParamResult {
        value: Bracket::exact(v),
        witness: None,
    }
}

fn measured(m: pinch::minors::Measured) -> ParamResult {
    ParamResult {
        value: m.bracket,
        witness: Some(params::ParamWitness {
            bidim_model: m.witness,
            ..Default::default()
        }),
    }
}

fn read_society(ctx: &mut Ctx, path: &PathBuf) -> anyhow::Result<Society> {
    let text = ctx.read(path)?;
    let fmt = ctx.input_format()?;
    formats::parse_society(&text, fmt).with_context(|| format!("parsing {}", path.display()))
}

fn society(ctx: &mut Ctx, a: SocietyArgs) -> anyhow::Result<Output> {
    let soc = read_society(ctx, &a.input)?;
    match a.action {
        SocietyAction::Cross => {
            let c = find_cross(&soc);
            ctx.emit("value", EXIT_OK, json!({"cross": c.is_some(), "paths": c}))
        }
        SocietyAction::Rural => {
            let v = is_rural(&soc);
            let code = if v.is_yes() || v.is_no() { EXIT_OK } else { EXIT_UNKNOWN };
            ctx.emit(
                "embedding",
                code,
                json!({"rural": v.answer, "certificate": v.certificate}),
            )
        }
        SocietyAction::Depth => {
            let (d, t) = depth(&soc);
            ctx.emit("value", EXIT_OK, json!({"depth": d, "transaction": t}))
        }
        SocietyAction::Classify => {
            let (d, t) = depth(&soc);
            let class = t.as_ref().map(|t| classify_transaction(&soc, t));
            ctx.emit(
                "value",
                EXIT_OK,
                json!({"depth": d, "transaction": t, "classification": class}),
            )
        }
        SocietyAction::LinearDecomposition => match min_width_linear_decomposition(&soc, &ctx.budget) {
            Search::Found(ld) => {
                let (w, adh) = (ld.width(), ld.adhesion());
                ctx.emit(
                    "linear-decomposition",
                    EXIT_OK,
                    json!({"width": w, "adhesion": adh, "decomposition": ld}),
                )
            }
            Search::Absent => ctx.emit("linear-decomposition", EXIT_OK, json!({"decomposition": null})),
            Search::Unknown => ctx.emit("linear-decomposition", EXIT_UNKNOWN, json!({"decomposition": null})),
        },
        SocietyAction::Reduce => {
            let r = reduce_society(&soc);
            ctx.emit(
                "value",
                EXIT_OK,
                json!({"reduced": formats::write_graph(&r, Format::EdgeList), "omega": soc.omega}),
            )
        }
    }
}

fn base_predicate(base: BaseName, k: usize, budget: &Budget) -> impl Fn(&Graph) -> Option<bool> + '_ {
    move |h: &Graph| match base {
        BaseName::Size => Some(h.n() <= k),
        BaseName::Psize => Some(is_planar_graph(h) || h.n() <= k),
        BaseName::Idpr => params::idpr(h, budget).ok()?.value.value().map(|v| v <= k),
        BaseName::Idpl => params::idpl(h, budget).ok()?.value.value().map(|v| v <= k),
    }
}

fn decompose(ctx: &mut Ctx, a: DecomposeArgs) -> anyhow::Result<Output> {
    let g = ctx.graph(&a.input)?;
    let b = ctx.budget;
    match a.action {
        DecomposeAction::Treewidth => {
            let tw = treewidth_exact(&g)?;
            let pred = base_predicate(BaseName::Size, tw + 1, &b);
            let td = cc_member(&g, &pred, g.n(), &b).found();
            ctx.emit(
                "tree-decomposition",
                EXIT_OK,
                json!({"treewidth": tw, "decomposition": td}),
            )
        }
        DecomposeAction::Closure => {
            let k = need(a.k, "k")?;
            let pred = base_predicate(a.base, k, &b);
            let (status, td, code) = match cc_member(&g, &pred, g.n(), &b) {
                Search::Found(td) => ("member", Some(td), EXIT_OK),
                Search::Absent => ("not-member", None, EXIT_OK),
                Search::Unknown => ("unknown", None, EXIT_UNKNOWN),
            };
            ctx.emit(
                "tree-decomposition",
                code,
                json!({"status": status, "k": k, "decomposition": td}),
            )
        }
        DecomposeAction::Normalize => {
            let order = match &a.order {
                Some(s) => formats::parse_vertex_list(s)?,
                None => g.vertices().collect(),
            };
            let td = td_from_elimination(&g, &order)?;
            let norm = normalize_td(&g, &td)?;
            let (valid, defects) = validate_td(&g, &norm);
            let code = if valid && is_normal(&g, &norm) {
                EXIT_OK
            } else {
                EXIT_VIOLATED
            };
            ctx.emit(
                "tree-decomposition",
                code,
                json!({"input_width": td.width(), "width": norm.width(), "normal": is_normal(&g, &norm), "defects": defects, "decomposition": norm}),
            )
        }
        DecomposeAction::Separator => {
            let x = match &a.x {
                Some(s) => vertex_set(s)?,
                None => g.vertex_set(),
            };
            let k = need(a.k, "k")?;
            let sep = balanced_separator(&g, &x, a.alpha, k)?;
            ctx.emit(
                "separation",
                EXIT_OK,
                json!({"separator": sep, "well_linked": sep.is_none(), "k": k, "alpha": a.alpha}),
            )
        }
        DecomposeAction::Tight => {
            let k = need(a.k, "k")?;
            let (status, code) = match is_tightly_connected(&g, &params::bound_f67, k, &b) {
                Search::Found(true) => ("tight", EXIT_OK),
                Search::Found(false) => ("not-tight", EXIT_OK),
                _ => ("unknown", EXIT_UNKNOWN),
            };
            ctx.emit("value", code, json!({"status": status, "k": k}))
        }
    }
}

fn verify_lemma(ctx: &mut Ctx, a: VerifyArgs) -> anyhow::Result<Output> {
    let opts = RunOptions {
        k: a.k,
        r: a.r,
        samples: a.samples,
        budget: ctx.budget,
    };
    ctx.hashed = format!("{}|{:?}|{:?}|{:?}", a.id, a.k, a.r, a.samples).into_bytes();
    let rep = verify::run(&a.id, &opts)?;
    let (word, code) = match rep.outcome {
        Outcome::Pass => ("PASS", EXIT_OK),
        Outcome::Fail => ("FAIL", EXIT_VIOLATED),
        Outcome::Unknown => ("UNKNOWN", EXIT_UNKNOWN),
    };
    let notice = format!(
        "verify-lemma {}: {word} ({} checks, {} violations, {} undecided, {} certificates)",
        rep.id,
        rep.checked,
        rep.violations.len(),
        rep.undecided,
        rep.certificates.len()
    );
    let mut out = ctx.emit("lemma-report", code, serde_json::to_value(&rep)?)?;
    out.notice = Some(notice);
    Ok(out)
}
