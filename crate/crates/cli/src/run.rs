use std::fmt::Display;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use comblab::cographs::{
    comb_graph, cotree_of, embed_cograph, eval_cotree, find_p4, graph_to_weave_oracle, random_cotree,
    weave_to_graph_oracle, Cotree, Graph,
};
use comblab::combs::{classify_pair, count_combs, enumerate_combs, is_comb, CombClass, Reading};
use comblab::genericity::{generic_chain, BinaryStrings, ChainStep, DensePredicate, FinitePoset};
use comblab::grid::{box_points, GridPoint};
use comblab::patterns::{
    check_graph_pattern, check_grid, check_weave, graph_witness_materialized, realizable, witness, CheckOptions,
    ConsistencyInterface, GridSpec, IndexKey, Report, SetSystem, SetSystemJson, Template, WeaveSpec, Witness,
    WitnessKind,
};
use comblab::transforms::{
    eps_point, epsilon_scale, grid_embed_index, grid_to_weave, pullback, strongify_index, strongify_weave,
};
use comblab::verify::{verify_paper, Mutation, Subject, VerifyConfig};
use comblab::{Error, Exec, Letter, Limits, Node};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{BridgeArg, ClassArg, Cli, Command, Global, WitnessArg};

pub const DEPTH_ENV: &str = "COMBLAB_MAX_DEPTH";

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// Bad flags, unreadable files, malformed input.
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("invalid JSON: {e}"))
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn report_error(e: &CliError) -> ExitCode {
    let (msg, code) = match e {
        CliError::Usage(m) => (m.clone(), 2),
        CliError::Core(err) => {
            let code = match err {
                Error::Resource { .. } => 3,
                Error::Density { .. } => 1,
                _ => 2,
            };
            (err.to_string(), code)
        }
    };
    eprintln!("comblab: {msg}");
    if let CliError::Core(Error::Precondition { report, .. }) = e {
        if let Ok(s) = serde_json::to_string(report) {
            eprintln!("{s}");
        }
    }
    ExitCode::from(code)
}

struct Io<'a> {
    g: &'a Global,
}

impl Io<'_> {
    fn read_input(&self) -> Result<String> {
        match self.g.input.as_deref() {
            Some(p) if p != Path::new("-") => read_file(p),
            _ => {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
                Ok(s)
            }
        }
    }

    fn input_json<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        Ok(serde_json::from_str(&self.read_input()?)?)
    }

    fn input_system<I: IndexKey>(&self) -> Result<ConsistencyInterface<I>>
    where
        <I as FromStr>::Err: Display,
    {
        let json: SetSystemJson = self.input_json()?;
        Ok(SetSystem::from_json(&json)?.into())
    }

    fn write_text(&self, text: &str) -> Result<()> {
        match self.g.output.as_deref() {
            Some(p) if p != Path::new("-") => {
                fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))
            }
            _ => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::Usage(format!("cannot write standard output: {e}")))
            }
        }
    }

    fn emit<T: Serialize + ?Sized>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string(value)?;
        s.push('\n');
        self.write_text(&s)
    }

    fn emit_dot(&self, dot: &str) -> Result<()> {
        self.write_text(dot)
    }

    fn emit_system<I: IndexKey>(&self, ci: &ConsistencyInterface<I>) -> Result<()> {
        let ss = ci
            .as_sets()
            .ok_or_else(|| CliError::Usage("result has no explicit set system".into()))?;
        self.emit(&ss.to_json())
    }

    fn opts(&self) -> CheckOptions {
        CheckOptions {
            cap: self.g.cap,
            max_violations: self.g.max_violations,
            exec: self.exec(),
        }
    }

    fn exec(&self) -> Exec {
        if self.g.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

fn read_file(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
}

fn read_json_file<T: for<'de> Deserialize<'de>>(p: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read_file(p)?)?)
}

fn limits() -> Result<Limits> {
    let l = Limits::default();
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|d| l.with_max_depth(d))
            .map_err(|_| CliError::Usage(format!("{DEPTH_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(l),
    }
}

fn node(s: &str) -> Result<Node> {
    Ok(s.parse::<Node>()?)
}

fn class_of(class: ClassArg, n: comblab::combs::Bound, literal: bool) -> CombClass {
    match class {
        ClassArg::Up => CombClass::up(n),
        ClassArg::Right => CombClass::right(n),
        ClassArg::WideRight => CombClass::wide_right(n, if literal { Reading::Literal } else { Reading::Recursive }),
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn report(io: &Io, what: &str, r: &Report) -> Result<ExitCode> {
    io.emit(r)?;
    if r.ok {
        eprintln!("{what}: ok ({} families checked)", r.checked);
    } else {
        eprintln!(
            "{what}: FAILED ({} violations shown{})",
            r.violations.len(),
            if r.truncated { ", truncated" } else { "" }
        );
    }
    Ok(verdict(r.ok))
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let io = Io { g: &cli.global };
    let limits = limits()?;
    match &cli.command {
        Command::EnumCombs {
            depth,
            class,
            n,
            literal,
            max_size,
        } => {
            let class = class_of(*class, *n, *literal);
            let combs: Vec<Vec<String>> = enumerate_combs(*depth, class, *max_size, &limits)?
                .map(|c| c.iter().map(Node::to_string).collect())
                .collect();
            let count = count_combs(*depth, class, *max_size);
            eprintln!("{count} {class} combs at depth {depth} up to size {max_size}");
            io.emit(&json!({
                "depth": depth,
                "class": class.to_string(),
                "max_size": max_size,
                "count": count as u64,
                "combs": combs,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::IsComb { class, n, literal, nodes } => {
            let class = class_of(*class, *n, *literal);
            let set = nodes.iter().map(|s| node(s)).collect::<Result<Vec<_>>>()?;
            let cert = is_comb(&set, class)?;
            eprintln!("{}: {class}", if cert.is_some() { "member" } else { "not a member" });
            io.emit(&json!({ "class": class.to_string(), "member": cert.is_some(), "certificate": cert }))?;
            Ok(verdict(cert.is_some()))
        }
        Command::ClassifyPair { a, b } => {
            let v = classify_pair(&node(a)?, &node(b)?)?;
            eprintln!("{a} {b}: {v:?}");
            io.emit(&json!({ "verdict": v }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckWeave {
            depth,
            k,
            m,
            n,
            strong,
            literal,
        } => {
            let ci = io.input_system::<Node>()?;
            let mut spec = WeaveSpec::new(*depth, *k, *m, *n, *strong);
            if *literal {
                spec.reading = Reading::Literal;
            }
            let r = check_weave(&ci, &spec, &io.opts(), &limits)?;
            report(&io, "weave", &r)
        }
        Command::CheckGrid { side, k, strong } => {
            let ci = io.input_system::<GridPoint>()?;
            let spec = GridSpec {
                side: *side,
                k: *k,
                strong: *strong,
            };
            let r = check_grid(&ci, &spec, &io.opts(), &limits)?;
            report(&io, "grid", &r)
        }
        Command::CheckGraphPattern { graph } => {
            let g: Graph = read_json_file(graph)?;
            let ci = io.input_system::<usize>()?;
            let r = check_graph_pattern(&ci, &g, &io.opts(), &limits)?;
            report(&io, "graph pattern", &r)
        }
        Command::Realizable => {
            let t: Template = io.input_json()?;
            let witness = realizable(&t)?;
            let conflict = t.conflict().map(|(c, i, subset)| {
                json!({ "must_consist": c, "must_k_inconsist": i, "subset": subset })
            });
            eprintln!("template is {}", if witness.is_some() { "realizable" } else { "not realizable" });
            io.emit(&json!({
                "realizable": witness.is_some(),
                "witness": witness.as_ref().map(SetSystem::to_json),
                "conflict": conflict,
            }))?;
            Ok(verdict(witness.is_some()))
        }
        Command::Witness { kind } => run_witness(&io, kind, &limits),
        Command::Strongify { depth, apply } => {
            if *apply {
                let ci = io.input_system::<Node>()?;
                let out = strongify_weave(&ci, *depth, &limits)?;
                eprintln!("pulled level {} back to level {depth}", 2 * depth);
                io.emit_system(&out)?;
            } else {
                io.emit(&strongify_index(*depth, &limits)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pullback {
            depth,
            depth0,
            map,
            pad,
        } => {
            if depth0 > depth {
                return Err(CliError::Usage(format!("--depth0 {depth0} exceeds --depth {depth}")));
            }
            let ci = io.input_system::<Node>()?;
            let table: Option<Vec<(Node, Node)>> = match map {
                Some(p) => {
                    let raw: Vec<(String, String)> = read_json_file(p)?;
                    Some(
                        raw.iter()
                            .map(|(s, t)| Ok((node(s)?, node(t)?)))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                None => None,
            };
            let letter = Letter::from_code(*pad)
                .ok_or_else(|| CliError::Usage(format!("--pad must be a letter code 0-3, got {pad}")))?;
            let depth = *depth;
            let f = |s: &Node| -> Node {
                match &table {
                    Some(t) => t
                        .iter()
                        .find(|(a, _)| a == s)
                        .map(|(_, b)| b.clone())
                        .unwrap_or_else(|| s.clone()),
                    None => s.padded(depth, letter),
                }
            };
            let out = pullback(&ci, *depth0, f, &limits)?;
            eprintln!("pulled level {depth} back to level {depth0}");
            io.emit_system(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GridEmbed { depth } => {
            io.emit(&grid_embed_index(*depth, &limits)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GridToWeave { depth } => {
            let ci = io.input_system::<GridPoint>()?;
            let out = grid_to_weave(&ci, *depth, &limits)?;
            eprintln!("pulled the {0}×{0} box back to level {depth}", 1usize << (2 * depth));
            io.emit_system(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EpsScale { side, apply } => {
            if *apply {
                let ci = io.input_system::<GridPoint>()?;
                io.emit_system(&epsilon_scale(&ci, *side)?)?;
            } else {
                let map: Vec<(String, _)> = box_points(*side)
                    .into_iter()
                    .map(|p| (p.to_string(), eps_point(p)))
                    .collect();
                io.emit(&json!({ "side": side, "map": map }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cotree { eval, random } => {
            if let Some(n) = random {
                let t = random_cotree(*n, io.g.seed)?;
                return emit_cotree(&io, &t).map(|_| ExitCode::SUCCESS);
            }
            if *eval {
                let t: Cotree = io.input_json()?;
                let g = eval_cotree(&t)?;
                if io.g.dot {
                    io.emit_dot(&g.to_dot())?;
                } else {
                    io.emit(&g)?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let g: Graph = io.input_json()?;
            match cotree_of(&g) {
                Ok(t) => {
                    eprintln!("cograph on {} vertices, cotree height {}", g.n(), t.height());
                    emit_cotree(&io, &t)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(cert) => {
                    eprintln!("not a cograph: induced P4 {:?}", cert.0);
                    io.emit(&json!({ "p4": cert }))?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::FindP4 => {
            let g: Graph = io.input_json()?;
            let cert = find_p4(&g);
            match &cert {
                Some(c) => eprintln!("induced P4 {:?}", c.0),
                None => eprintln!("no induced P4"),
            }
            io.emit(&cert)?;
            Ok(verdict(cert.is_none()))
        }
        Command::CombGraph { depth } => {
            let cg = comb_graph(*depth, &limits)?;
            eprintln!(
                "comb graph at depth {depth}: {} vertices, {} edges",
                cg.graph.n(),
                cg.graph.edge_count()
            );
            if io.g.dot {
                io.emit_dot(&cg.graph.to_dot())?;
            } else {
                io.emit(&cg)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EmbedCograph => {
            let t: Cotree = io.input_json()?;
            let e = embed_cograph(&t)?;
            eprintln!("embedded {} vertices at depth {}", e.map.len(), e.depth);
            io.emit(&e)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bridge { direction } => {
            let out = match direction {
                BridgeArg::GraphToWeave { depth } => {
                    let ci = io.input_system::<usize>()?;
                    let w = graph_to_weave_oracle(&ci, *depth, &io.opts(), &limits)?;
                    eprintln!("comb graph pattern reindexed by level {depth}");
                    io.emit_system(&w)
                }
                BridgeArg::WeaveToGraph { depth, cotree } => {
                    let t: Cotree = read_json_file(cotree)?;
                    let ci = io.input_system::<Node>()?;
                    let p = weave_to_graph_oracle(&ci, *depth, &t, &io.opts(), &limits)?;
                    eprintln!("weave pulled back to {} cograph vertices", p.indices().len());
                    io.emit_system(&p)
                }
            };
            out.map(|_| ExitCode::SUCCESS)
        }
        Command::TriangleFreeDemo { len } => {
            let d = comblab::patterns::triangle_free_demo(*len)?;
            let pairs: Vec<usize> = (0..d.len).collect();
            let p_ok = d.p.k_inconsistent(&pairs, 2)?;
            let q_ok = d.q.consistent(&pairs)?;
            eprintln!(
                "p side 2-inconsistent: {p_ok}; q side consistent: {q_ok}"
            );
            io.emit(&json!({
                "len": d.len,
                "p_graph": d.p_graph,
                "q_graph": d.q_graph,
                "p_2_inconsistent": p_ok,
                "q_consistent": q_ok,
            }))?;
            Ok(verdict(p_ok && q_ok))
        }
        Command::GenericChain {
            start,
            requirements,
            steps,
            horizon,
        } => run_generic_chain(&io, start, requirements, *steps, *horizon),
        Command::VerifyPaper {
            max_depth,
            mutate,
            quick,
        } => {
            let mut cfg = VerifyConfig::new(*max_depth, io.g.seed);
            cfg.exec = io.exec();
            if *quick {
                cfg.wide_samples = 10_000;
                cfg.templates = 200;
                cfg.exhaustive_graph_vertices = 6;
                cfg.random_graphs = 100;
                cfg.random_cotrees = 20;
                cfg.graph_witnesses = 20;
            }
            let subject = Subject {
                mutation: mutate.map(|s| Mutation::seeded(s, (*max_depth).max(1))),
            };
            let r = verify_paper(&cfg, &subject, &limits, |o, secs| {
                let mark = if o.ok { "ok  " } else { "FAIL" };
                eprintln!("{mark} {:<40} {:>9} cases {secs:>8.2}s", o.name, o.cases);
                for ex in &o.examples {
                    eprintln!("       {ex}");
                }
            });
            eprintln!("verify-paper: {}", if r.ok { "all checks passed" } else { "FAILED" });
            io.emit(&r)?;
            Ok(verdict(r.ok))
        }
    }
}

fn emit_cotree(io: &Io, t: &Cotree) -> Result<()> {
    if io.g.dot {
        io.emit_dot(&t.to_dot())
    } else {
        io.emit(t)
    }
}

fn run_witness(io: &Io, kind: &WitnessArg, limits: &Limits) -> Result<ExitCode> {
    match kind {
        WitnessArg::Weave {
            depth,
            k,
            m,
            n,
            genuine_k,
        } => {
            let kind = WitnessKind::Weave {
                depth: *depth,
                k: *k,
                m: *m,
                n: *n,
            };
            let Witness::Weave(ci) = witness(&kind, *genuine_k, limits)? else {
                unreachable!("weave kind builds a weave witness")
            };
            eprintln!("weave witness on level {depth} with {} atoms", atoms(&ci));
            io.emit_system(&ci)?;
        }
        WitnessArg::Grid { side, k, strong } => {
            let kind = WitnessKind::Grid {
                side: *side,
                k: *k,
                strong: *strong,
            };
            let Witness::Grid(ci) = witness(&kind, false, limits)? else {
                unreachable!("grid kind builds a grid witness")
            };
            eprintln!("grid witness on the {side}×{side} box with {} atoms", atoms(&ci));
            io.emit_system(&ci)?;
        }
        WitnessArg::Graph => {
            let g: Graph = io.input_json()?;
            let ss = graph_witness_materialized(&g)?;
            eprintln!("graph witness with {} atoms", ss.universe().len());
            io.emit(&ss.to_json())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn atoms<I: IndexKey>(ci: &ConsistencyInterface<I>) -> usize {
    ci.as_sets().map_or(0, |s| s.universe().len())
}

/// A finite poset with its requirement sets, as read from `--in`.
#[derive(Deserialize)]
struct PosetInput {
    #[serde(flatten)]
    poset: FinitePoset,
    start: String,
    requirements: Vec<NamedSet>,
}

#[derive(Deserialize)]
struct NamedSet {
    name: String,
    members: Vec<String>,
}

#[derive(Serialize)]
struct ChainOutput<'a> {
    requirements: Vec<&'a str>,
    chain: Vec<ChainStep<String>>,
}

fn parse_requirement(spec: &str) -> Result<DensePredicate<String>> {
    let bad = || CliError::Usage(format!("unknown requirement {spec:?}; expected len>=N, len<N or contains:X"));
    if let Some(rest) = spec.strip_prefix("len>=") {
        let n: usize = rest.parse().map_err(|_| bad())?;
        return Ok(DensePredicate::new(spec, move |s: &String| s.len() >= n));
    }
    if let Some(rest) = spec.strip_prefix("len<") {
        let n: usize = rest.parse().map_err(|_| bad())?;
        return Ok(DensePredicate::new(spec, move |s: &String| s.len() < n));
    }
    if let Some(x) = spec.strip_prefix("contains:") {
        if x.is_empty() || x.bytes().any(|c| c != b'0' && c != b'1') {
            return Err(bad());
        }
        let x = x.to_string();
        return Ok(DensePredicate::new(spec, move |s: &String| s.contains(x.as_str())));
    }
    Err(bad())
}

fn run_generic_chain(
    io: &Io,
    start: &str,
    requirements: &[String],
    steps: Option<usize>,
    horizon: usize,
) -> Result<ExitCode> {
    let (names, chain): (Vec<String>, Vec<ChainStep<String>>) = if io.g.input.is_some() {
        let input: PosetInput = io.input_json()?;
        let dense: Vec<DensePredicate<String>> = input
            .requirements
            .iter()
            .map(|r| {
                let members = r.members.clone();
                DensePredicate::new(r.name.clone(), move |e: &String| members.contains(e))
            })
            .collect();
        let names = input.requirements.iter().map(|r| r.name.clone()).collect();
        let steps = steps.unwrap_or(dense.len());
        (names, generic_chain(&input.poset, &dense, input.start, steps, horizon)?)
    } else {
        if start.bytes().any(|c| c != b'0' && c != b'1') {
            return Err(CliError::Usage(format!("--start must be a binary string, got {start:?}")));
        }
        let dense = requirements
            .iter()
            .map(|r| parse_requirement(r))
            .collect::<Result<Vec<_>>>()?;
        let steps = steps.unwrap_or(dense.len());
        (requirements.to_vec(), generic_chain(&BinaryStrings, &dense, start.to_string(), steps, horizon)?)
    };
    eprintln!(
        "chain {} meets {} requirements",
        chain.iter().map(|s| if s.element.is_empty() { "ε" } else { s.element.as_str() }).join(" < "),
        names.len()
    );
    io.emit(&ChainOutput {
        requirements: names.iter().map(String::as_str).collect(),
        chain,
    })?;
    Ok(ExitCode::SUCCESS)
}
