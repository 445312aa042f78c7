//! `rtt solve | gen | eval`.
//!
//! Reports are `key value` lines on stdout. Node-form instances are solved
//! and evaluated on their activity-on-arc image, so flows index its arcs.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::approx::{ApproxResult, Relaxation};
use crate::duration::Family;
use crate::error::{Error, Result};
use crate::generators::{
    gen_numeric_3dm, gen_parallel_mm, gen_partition, gen_sat_general, gen_sat_splitting, Formula,
    GeneratedInstance,
};
use crate::instance::{Form, Instance};
use crate::io::{self, Certificate};
use crate::lp::{build_lp, write_lp};
use crate::maxflow::flow_value;
use crate::oracle::brute_min_makespan;
use crate::rational::{self, Rational};
use crate::schedule::{evaluate, validate_flow, Flow};
use crate::series_parallel::{allocation_flow, sp_min_makespan, sp_recognize};
use crate::transform::activity_on_arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCOMPATIBLE: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_INFEASIBLE: i32 = 5;
const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "rtt", version, about = "Resource-time tradeoff scheduling with resource reuse")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Bicriteria,
    Kway5,
    Binary4,
    BinaryImproved,
    Sp,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Sat,
    SatSplit,
    Partition,
    #[value(name = "3dm")]
    Numeric3dm,
    Mm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Kway,
    Binary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Defaults to the budget stored in the file.
        #[arg(long)]
        budget: Option<u64>,
        /// Rounding threshold for `bicriteria`, as `p/q`.
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long)]
        emit_flow: Option<PathBuf>,
        /// Write the relaxation in LP format.
        #[arg(long)]
        lp_dump: Option<PathBuf>,
    },
    /// Generate a gadget instance and its certificate.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// 1-in-3SAT formula, e.g. `1,-2,3;-1,2,3`.
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, value_enum, default_value = "binary")]
        family: FamilyArg,
        /// Partition set, e.g. `1,2,3`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        h: Option<u32>,
        /// Instance path; the certificate goes next to it as `*.cert.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schedule induced by a flow file.
    Eval {
        file: PathBuf,
        #[arg(long)]
        flow: PathBuf,
    },
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidDuration(_)
        | Error::InvalidInstance(_)
        | Error::Cyclic(_)
        | Error::InvalidParameter(_) => EXIT_PARSE,
        Error::WrongForm { .. } | Error::IncompatibleFamily(_) | Error::NotSeriesParallel => {
            EXIT_INCOMPATIBLE
        }
        Error::SizeGuard(_) => EXIT_GUARD,
        Error::InfeasibleFlow(_) => EXIT_INFEASIBLE,
        Error::Numerical(_) => EXIT_INTERNAL,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance> {
    let inst = io::instance_from_json(&read(path)?)?;
    if inst.form == Form::NodeJobs {
        Ok(activity_on_arc(&inst)?.0)
    } else {
        Ok(inst)
    }
}

fn certificate_path(out: &Path) -> PathBuf {
    let s = out.to_string_lossy();
    match s.strip_suffix(".json") {
        Some(stem) => PathBuf::from(format!("{stem}.cert.json")),
        None => PathBuf::from(format!("{s}.cert.json")),
    }
}

fn list(s: &Option<String>, flag: &str) -> Result<Vec<u64>> {
    let s = s.as_deref().ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))?;
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("--{flag}: bad number `{x}`"))))
        .collect()
}

struct Report(Vec<(String, String)>);

impl Report {
    fn put(&mut self, k: &str, v: impl ToString) {
        self.0.push((k.to_string(), v.to_string()));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    }
}

fn approx_lines(r: &mut Report, res: &ApproxResult) {
    r.put("makespan", res.makespan());
    r.put("resource_used", res.resource_used);
    r.put("lp_objective", res.lp_objective);
    r.put("lp_flow", res.lp_flow);
    r.put("guarantee_resource", res.guarantee.resource_factor);
    r.put("guarantee_makespan", res.guarantee.makespan_factor);
}

fn solve(inst: &Instance, algo: Algo, budget: u64, alpha: Rational) -> Result<(Report, Flow)> {
    let mut r = Report(Vec::new());
    r.put("algo", format!("{algo:?}").to_lowercase());
    r.put("budget", budget);
    let flow = match algo {
        Algo::Exact => {
            let res = brute_min_makespan(inst, budget)?;
            let arcs: Vec<(usize, usize)> = inst.arcs.iter().map(|a| (a.tail, a.head)).collect();
            r.put("makespan", res.makespan);
            r.put("resource_used", flow_value(inst.source, &arcs, &res.flow));
            r.put("guarantee_makespan", "optimal");
            res.flow
        }
        Algo::Sp => {
            let tree = sp_recognize(inst)?;
            let sol = sp_min_makespan(&tree, budget);
            let flow = allocation_flow(&tree, inst.arcs.len(), &sol.allocation);
            let arcs: Vec<(usize, usize)> = inst.arcs.iter().map(|a| (a.tail, a.head)).collect();
            let used = flow_value(inst.source, &arcs, &flow);
            let check = evaluate(&inst.with_budget(used), &flow)?;
            debug_assert_eq!(check.makespan, sol.makespan);
            r.put("makespan", check.makespan);
            r.put("resource_used", used);
            r.put("guarantee_makespan", "optimal");
            flow
        }
        _ => {
            let needs = match algo {
                Algo::Kway5 => Some(Family::KWay),
                Algo::Binary4 | Algo::BinaryImproved => Some(Family::RecursiveBinary),
                _ => None,
            };
            if let Some(fam) = needs {
                if inst.num_jobs() > 0 && inst.uniform_family() != Some(fam) {
                    return Err(Error::IncompatibleFamily(format!("{algo:?} needs every job to be {fam}")));
                }
            }
            let relax = Relaxation::new(inst, budget)?;
            let res = match algo {
                Algo::Bicriteria => relax.bicriteria(alpha)?,
                Algo::Kway5 => relax.kway_five()?,
                Algo::Binary4 => relax.binary_four()?,
                _ => relax.binary_improved()?,
            };
            if algo == Algo::Bicriteria {
                r.put("alpha", alpha);
            }
            approx_lines(&mut r, &res);
            res.flow
        }
    };
    Ok((r, flow))
}

fn generate(kind: GenKind, cmd: &Command) -> Result<(Instance, Certificate)> {
    let Command::Gen { formula, family, set, a, b, c, n, h, .. } = cmd else { unreachable!() };
    let formula = || {
        formula
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--formula is required".into()))
            .and_then(Formula::parse)
    };
    let family = match family {
        FamilyArg::Kway => Family::KWay,
        FamilyArg::Binary => Family::RecursiveBinary,
    };
    let g: GeneratedInstance = match kind {
        GenKind::Sat => gen_sat_general(&formula()?)?,
        GenKind::SatSplit => gen_sat_splitting(&formula()?, family)?,
        GenKind::Partition => gen_partition(&list(set, "set")?)?,
        GenKind::Numeric3dm => gen_numeric_3dm(&list(a, "a")?, &list(b, "b")?, &list(c, "c")?)?,
        GenKind::Mm => {
            let n = n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))?;
            let h = h.ok_or_else(|| Error::InvalidParameter("--h is required".into()))?;
            let inst = gen_parallel_mm(n, h)?;
            let cert = Certificate {
                budget: inst.budget,
                target: None,
                expected_achievable: None,
                provenance: format!("mm: n={n} h={h}"),
            };
            return Ok((inst, cert));
        }
    };
    let cert = Certificate::from(&g);
    Ok((g.instance, cert))
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    let text = match cmd {
        Command::Solve { file, algo, budget, alpha, emit_flow, lp_dump } => {
            let inst = load(file)?;
            let budget = budget.unwrap_or(inst.budget);
            let alpha = rational::parse(alpha)?;
            if let Some(p) = lp_dump {
                let (expanded, _) = crate::transform::two_tuple_expand(&inst)?;
                write(p, &write_lp(&build_lp(&expanded, budget)?.lp))?;
            }
            let (report, flow) = solve(&inst, *algo, budget, alpha)?;
            if let Some(p) = emit_flow {
                write(p, &io::flow_to_json(&flow))?;
            }
            report.render()
        }
        Command::Gen { kind, out: path, .. } => {
            let (inst, cert) = generate(*kind, cmd)?;
            let mut r = Report(Vec::new());
            r.put("kind", format!("{kind:?}").to_lowercase());
            r.put("vertices", inst.num_vertices());
            r.put("arcs", inst.arcs.len());
            r.put("jobs", inst.num_jobs());
            r.put("budget", cert.budget);
            if let Some(t) = cert.target {
                r.put("target", t);
            }
            if let Some(e) = cert.expected_achievable {
                r.put("expected_achievable", e);
            }
            match path {
                Some(p) => {
                    write(p, &io::instance_to_json(&inst))?;
                    let cp = certificate_path(p);
                    write(&cp, &io::certificate_to_json(&cert))?;
                    r.put("instance", p.display());
                    r.put("certificate", cp.display());
                    r.render()
                }
                None => io::instance_to_json(&inst),
            }
        }
        Command::Eval { file, flow } => {
            let inst = load(file)?;
            let flow = io::flow_from_json(&read(flow)?, inst.arcs.len())?;
            let violations = validate_flow(&inst, &flow);
            if !violations.is_empty() {
                let msg = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n");
                return Err(Error::InfeasibleFlow(msg));
            }
            let s = evaluate(&inst, &flow)?;
            let mut r = Report(Vec::new());
            for (name, t) in inst.vertices.iter().zip(&s.event_time) {
                r.put(&format!("time {name}"), t);
            }
            let arcs: Vec<(usize, usize)> = inst.arcs.iter().map(|a| (a.tail, a.head)).collect();
            r.put("resource_used", flow_value(inst.source, &arcs, &flow));
            r.put("makespan", s.makespan);
            r.render()
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match run_command(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
