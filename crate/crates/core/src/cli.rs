//! The `twistalg` command line: argument parsing, dispatch and report rendering.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adams::Context;
use crate::adams_ss::{ascii_chart, collapse_and_assemble, e2_page, sphere_model, vanishing_check};
use crate::complex::{roundtrip_a, roundtrip_b, split_to_b, unsplit_to_a, TwistedComplex};
use crate::error::{Error, Result};
use crate::gen::Generator;
use crate::homalg::{ext_all, FreeResolution};
use crate::json::{parse, to_json, Instance};
use crate::linalg::FPModule;
use crate::qfun::{assemble_hom, classes_survive, hocolim_homology, image_is_b, q_build, q_inverse, q_roundtrip};

#[derive(Parser, Debug)]
#[command(name = "twistalg", version, about = "Exact homological algebra for p-local modules with Adams operations")]
pub struct Cli {
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    #[arg(long, global = true)]
    pub generator: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Out::Json)]
    pub out: Out,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `lo:hi` or a width `w` meaning `0:w`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Json,
    Ascii,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate an instance file.
    Check { file: String },
    /// Cohomology of a twisted complex.
    Cohomology { file: String },
    /// Complex over 𝒜 to complex over ℬ.
    Split { file: String },
    /// Complex over ℬ to complex over 𝒜.
    Unsplit { file: String },
    /// Ext^s between two objects; all of s = 0, 1, 2 when `--s` is absent.
    Ext {
        file_m: String,
        file_n: String,
        #[arg(long)]
        s: Option<usize>,
    },
    /// E₂ chart of a pair of complexes.
    E2chart { file_c1: String, file_c2: String },
    /// The Q-construction.
    Q {
        #[command(subcommand)]
        op: QOp,
    },
    /// Hom bookkeeping between two diagram data files.
    Hom {
        #[command(subcommand)]
        op: HomOp,
    },
    /// Seeded random instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        size: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum QOp {
    Build { file: String },
    Invert { file: String },
    Check { file: String },
}

#[derive(Subcommand, Debug)]
pub enum HomOp {
    Assemble { file_d1: String, file_d2: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Bobject,
    Finite,
    ComplexB,
    ComplexA,
    Diagram,
    LadderLiftable,
    LadderObstructed,
    /// The sphere complex, ignores the seed.
    Sphere,
}

/// Output text and exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Cli {
    fn context(&self) -> Result<Context> {
        let d = Context::default();
        Context::new(self.prime.unwrap_or(d.p), self.generator.unwrap_or(d.g))
    }

    fn load(&self, path: &str) -> Result<(Context, Instance)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        let (ctx, inst) = parse(&text)?;
        if (self.prime.is_some() || self.generator.is_some()) && ctx != self.context()? {
            return Err(Error::Precondition(format!("{path}: context differs from --prime/--generator")));
        }
        Ok((ctx, inst))
    }

    fn complex(&self, path: &str) -> Result<(Context, TwistedComplex)> {
        match self.load(path)? {
            (ctx, Instance::Complex(c)) => Ok((ctx, c)),
            (_, other) => Err(Error::Precondition(format!("{path}: expected a complex, found {}", other.kind()))),
        }
    }

    fn window(&self) -> Result<(i64, i64)> {
        let Some(w) = &self.window else { return Ok((0, 12)) };
        let bad = || Error::Parse(format!("bad window {w:?}"));
        match w.split_once(':') {
            Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
            None => Ok((0, w.trim().parse().map_err(|_| bad())?)),
        }
    }
}

pub fn invariants_json(m: &FPModule) -> Value {
    let inv = m.invariants();
    json!({ "rank": inv.free_rank, "torsion": inv.torsion })
}

/// `0`, or a sum like `Z_(3)^2 + Z/9 + Z/3`.
pub fn module_text(m: &FPModule) -> String {
    let inv = m.invariants();
    let p = m.p();
    let mut parts = Vec::new();
    match inv.free_rank {
        0 => {}
        1 => parts.push(format!("Z_({p})")),
        r => parts.push(format!("Z_({p})^{r}")),
    }
    let mut tors = inv.torsion.clone();
    tors.sort_unstable_by(|a, b| b.cmp(a));
    parts.extend(tors.iter().map(|&e| format!("Z/{}", (p as u128).pow(e))));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn render(cli: &Cli, report: Value, ascii: String) -> String {
    match cli.out {
        Out::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        Out::Ascii => ascii,
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((text, ok)) => Outcome { stdout: text, code: if ok { 0 } else { 3 } },
        Err(e) => {
            let report = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            Outcome { stdout: render(cli, report, format!("error: {e}\n")), code: e.exit_code() }
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            Outcome { stdout: e.to_string(), code }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    match &cli.command {
        Command::Check { file } => check(cli, file),
        Command::Cohomology { file } => cohomology(cli, file),
        Command::Split { file } => {
            let (ctx, c) = cli.complex(file)?;
            let TwistedComplex::A(a) = c else {
                return Err(Error::Precondition("split expects a complex over 𝒜".into()));
            };
            let ok = roundtrip_a(&a).is_ok();
            let b = TwistedComplex::B(split_to_b(&a));
            Ok((emit_instance(cli, ctx, &Instance::Complex(b), "split", ok), ok))
        }
        Command::Unsplit { file } => {
            let (ctx, c) = cli.complex(file)?;
            let TwistedComplex::B(b) = c else {
                return Err(Error::Precondition("unsplit expects a complex over ℬ".into()));
            };
            let ok = roundtrip_b(&b).is_ok();
            let a = TwistedComplex::A(unsplit_to_a(&b));
            Ok((emit_instance(cli, ctx, &Instance::Complex(a), "unsplit", ok), ok))
        }
        Command::Ext { file_m, file_n, s } => ext_cmd(cli, file_m, file_n, *s),
        Command::E2chart { file_c1, file_c2 } => e2chart(cli, file_c1, file_c2),
        Command::Q { op } => q_cmd(cli, op),
        Command::Hom { op: HomOp::Assemble { file_d1, file_d2 } } => hom_cmd(cli, file_d1, file_d2),
        Command::Gen { kind, size } => gen_cmd(cli, *kind, *size),
    }
}

fn emit_instance(cli: &Cli, ctx: Context, inst: &Instance, what: &str, ok: bool) -> String {
    let file = to_json(ctx, inst);
    match cli.out {
        Out::Json => file,
        Out::Ascii => format!("{what}: {} (round trip {})\n", inst.kind(), status(ok)),
    }
}

fn check(cli: &Cli, file: &str) -> Result<(String, bool)> {
    let (_, inst) = cli.load(file)?;
    let mut report = json!({ "command": "check", "kind": inst.kind(), "result": "pass" });
    let mut text = format!("{}: pass\n", inst.kind());
    if let Instance::Ladder(l) = &inst {
        let lift = l.lifting()?;
        report["liftable"] = json!(lift.liftable);
        report["routes_agree"] = json!(lift.consistent());
        text.push_str(&format!("liftable: {}\n", lift.liftable));
    }
    Ok((render(cli, report, text), true))
}

fn cohomology(cli: &Cli, file: &str) -> Result<(String, bool)> {
    let (_, c) = cli.complex(file)?;
    let b = c.to_b();
    let levels: Vec<Value> = b
        .cohomology()
        .iter()
        .enumerate()
        .map(|(i, h)| json!({ "degree": i, "invariants": invariants_json(&h.object.module) }))
        .collect();
    let total = c.total_homology();
    let comps: Vec<Value> = total.components.iter().map(|m| invariants_json(&m.module)).collect();
    let report = json!({ "command": "cohomology", "flavor": c.flavor(), "levels": levels, "total": comps });
    let mut text = String::new();
    for (i, h) in b.cohomology().iter().enumerate() {
        text.push_str(&format!("H^{i} = {}\n", module_text(&h.object.module)));
    }
    Ok((render(cli, report, text), true))
}

fn ext_cmd(cli: &Cli, fm: &str, fn_: &str, s: Option<usize>) -> Result<(String, bool)> {
    let bobj = |path: &str| match cli.load(path)? {
        (_, Instance::BObject(b)) => Ok(b),
        (_, other) => Err(Error::Precondition(format!("{path}: expected a bobject, found {}", other.kind()))),
    };
    let (m, n) = (bobj(fm)?, bobj(fn_)?);
    if let Some(s) = s {
        if s > 2 {
            return Err(Error::Precondition(format!("Ext^{s} is identically zero; only s ≤ 2 is computed")));
        }
    }
    let res = FreeResolution::build(&m);
    let groups = ext_all(&m, &n);
    let wanted: Vec<usize> = s.map(|s| vec![s]).unwrap_or_else(|| vec![0, 1, 2]);
    let cells: Vec<Value> =
        wanted.iter().map(|&s| json!({ "s": s, "invariants": invariants_json(groups[s].module()) })).collect();
    let report = json!({ "command": "ext", "resolution_length": res.length(), "groups": cells });
    let text: String = wanted.iter().map(|&s| format!("Ext^{s} = {}\n", module_text(groups[s].module()))).collect();
    Ok((render(cli, report, text), true))
}

fn e2chart(cli: &Cli, f1: &str, f2: &str) -> Result<(String, bool)> {
    let (_, c1) = cli.complex(f1)?;
    let (_, c2) = cli.complex(f2)?;
    let (lo, hi) = cli.window()?;
    let page = e2_page(&c1, &c2, lo, hi)?;
    let van = vanishing_check(&page);
    let cells: Vec<Value> = page
        .cells
        .values()
        .map(|c| json!({ "s": c.s, "t": c.t, "invariants": invariants_json(&c.module) }))
        .collect();
    let mut stems = Vec::new();
    for n in (lo - 2)..=hi {
        let a = collapse_and_assemble(&page, n)?;
        if a.pieces.iter().any(|p| !p.2.is_zero()) {
            stems.push(json!({ "n": n, "status": a.status.as_str(), "collapse": a.collapse_certificate.is_some() }));
        }
    }
    let report = json!({
        "command": "e2chart",
        "window": [lo, hi],
        "cells": cells,
        "vanishing": { "allowed_residues": van.allowed, "holds": van.holds,
                       "violations": van.violations, "line_violations": van.line_violations },
        "stems": stems,
    });
    let mut text = ascii_chart(&page);
    text.push_str(&format!("vanishing pattern: {}\n", status(van.holds)));
    Ok((render(cli, report, text), van.holds))
}

fn q_cmd(cli: &Cli, op: &QOp) -> Result<(String, bool)> {
    match op {
        QOp::Build { file } => match cli.load(file)? {
            (ctx, Instance::Diagram(d)) => {
                let c = Instance::Complex(TwistedComplex::B(q_build(&d)?));
                Ok((emit_instance(cli, ctx, &c, "q build", true), true))
            }
            (_, other) => Err(Error::Precondition(format!("expected diagram data, found {}", other.kind()))),
        },
        QOp::Invert { file } => {
            let (ctx, c) = cli.complex(file)?;
            let d = Instance::Diagram(q_inverse(&c.to_b()));
            Ok((emit_instance(cli, ctx, &d, "q invert", true), true))
        }
        QOp::Check { file } => {
            let d = match cli.load(file)? {
                (_, Instance::Diagram(d)) => d,
                (_, Instance::Complex(c)) => q_inverse(&c.to_b()),
                (_, other) => return Err(Error::Precondition(format!("expected diagram data, found {}", other.kind()))),
            };
            let c = q_build(&d)?;
            let checks = [
                ("d_squared_zero", true),
                ("image_is_b", image_is_b(&d, &c)),
                ("roundtrip", q_roundtrip(&c).is_ok()),
                ("classes_survive", classes_survive(&d)?),
                ("hocolim", hocolim_homology(&d)?.holds),
            ];
            let ok = checks.iter().all(|c| c.1);
            let certs: serde_json::Map<String, Value> =
                checks.iter().map(|(k, v)| (k.to_string(), json!(status(*v)))).collect();
            let report = json!({ "command": "q check", "certificates": certs });
            let text: String = checks.iter().map(|(k, v)| format!("{k}: {}\n", status(*v))).collect();
            Ok((render(cli, report, text), ok))
        }
    }
}

fn hom_cmd(cli: &Cli, f1: &str, f2: &str) -> Result<(String, bool)> {
    let diag = |path: &str| match cli.load(path)? {
        (_, Instance::Diagram(d)) => Ok(d),
        (_, other) => Err(Error::Precondition(format!("{path}: expected diagram data, found {}", other.kind()))),
    };
    let (d1, d2) = (diag(f1)?, diag(f2)?);
    let h = assemble_hom(&d1, &d2)?;
    let report = json!({
        "command": "hom assemble",
        "N": invariants_json(&h.n.module),
        "kernel_part": invariants_json(&h.kernel_part.module),
        "N_prime": invariants_json(&h.n_prime.module),
        "M": invariants_json(&h.m),
        "chain_maps": invariants_json(&h.chain_maps.module),
        "exact": h.exact,
        "M_matches_chain_maps": h.m_matches,
    });
    let text = format!(
        "N = {}\nN' = {}\nM = {}\nchain maps = {}\nexact: {:?}\nM matches: {}\n",
        module_text(&h.n.module),
        module_text(&h.n_prime.module),
        module_text(&h.m),
        module_text(&h.chain_maps.module),
        h.exact,
        h.m_matches
    );
    Ok((render(cli, report, text), h.holds()))
}

fn gen_cmd(cli: &Cli, kind: GenKind, size: u32) -> Result<(String, bool)> {
    let ctx = cli.context()?;
    let mut g = Generator::new(ctx, cli.seed, size);
    let inst = match kind {
        GenKind::Bobject => Instance::BObject(g.bobject()),
        GenKind::Finite => Instance::BObject(g.finite_bobject()),
        GenKind::ComplexB => Instance::Complex(TwistedComplex::B(g.complex_b())),
        GenKind::ComplexA => Instance::Complex(TwistedComplex::A(g.complex_a())),
        GenKind::Diagram => Instance::Diagram(g.diagram()),
        GenKind::LadderLiftable => Instance::Ladder(g.ladder_liftable()),
        GenKind::LadderObstructed => Instance::Ladder(g.ladder_obstructed()),
        GenKind::Sphere => Instance::Complex(sphere_model(ctx)),
    };
    Ok((to_json(ctx, &inst), true))
}
