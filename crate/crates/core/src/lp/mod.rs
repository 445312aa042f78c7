//! Linear relaxation of the two-tuple instance.
//!
//! A two-tuple arc `{<0,t0>, <r,t1>}` gets the interpolated duration
//! `t0 - (t0 - t1) f / r` for `0 <= f <= r`; single-tuple and dummy arcs keep
//! their constant duration and accept any flow.

mod format;
pub(crate) mod simplex;

pub use format::write_lp;

use crate::duration::DurationFunction;
use crate::error::{Error, Result};
use crate::instance::{Form, Instance};
use crate::rational::{int, Rational};
use crate::transform::{ArcImage, ExpandTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// `min objective · x` subject to the constraints, all variables `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub var_names: Vec<String>,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    fn var(&mut self, name: String) -> usize {
        self.var_names.push(name);
        self.var_names.len() - 1
    }

    fn add(&mut self, name: String, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) {
        self.constraints.push(Constraint { name, coeffs, sense, rhs });
    }

    /// Exact feasibility check; returns the first violated constraint.
    pub fn check(&self, x: &[Rational]) -> Result<()> {
        if let Some(i) = x.iter().position(|v| *v < int(0)) {
            return Err(Error::Numerical(format!("variable {} is negative", self.var_names[i])));
        }
        for c in &self.constraints {
            let lhs: Rational = c.coeffs.iter().map(|(j, a)| *a * x[*j]).sum();
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            };
            if !ok {
                return Err(Error::Numerical(format!(
                    "constraint {} violated: lhs {} vs rhs {}",
                    c.name, lhs, c.rhs
                )));
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().map(|(j, a)| *a * x[*j]).sum()
    }

    /// Solves to exact optimality. Only non-negative objectives are supported.
    pub fn solve(&self) -> Result<(Vec<Rational>, Rational)> {
        let mut sys = simplex::LeSystem {
            num_vars: self.var_names.len(),
            rows: Vec::new(),
            rhs: Vec::new(),
            cost: vec![int(0); self.var_names.len()],
        };
        for (j, a) in &self.objective {
            sys.cost[*j] += *a;
        }
        for c in &self.constraints {
            let neg: Vec<(usize, Rational)> = c.coeffs.iter().map(|(j, a)| (*j, -*a)).collect();
            if matches!(c.sense, Sense::Le | Sense::Eq) {
                sys.rows.push(c.coeffs.clone());
                sys.rhs.push(c.rhs);
            }
            if matches!(c.sense, Sense::Ge | Sense::Eq) {
                sys.rows.push(neg);
                sys.rhs.push(-c.rhs);
            }
        }
        let opt = simplex::solve(&sys)?;
        self.check(&opt.x)?;
        debug_assert_eq!(self.value(&opt.x), opt.objective);
        Ok((opt.x, opt.objective))
    }
}

/// How an arc's flow and a vertex's time are read from the LP variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcVar {
    Own(usize),
    SameAs(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexVar {
    Zero,
    Own(usize),
    /// Chain midpoint folded into its only incoming arc.
    After(usize),
}

/// The relaxation LP together with its variable map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffLp {
    pub lp: LinearProgram,
    arc_var: Vec<ArcVar>,
    vertex_var: Vec<VertexVar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub flow: Vec<Rational>,
    pub event_time: Vec<Rational>,
    pub objective: Rational,
    /// Total flow leaving the source.
    pub source_outflow: Rational,
}

/// Slope data of a relaxed arc: `(t0, drop per unit, cap)`.
fn relaxed_shape(job: &Option<DurationFunction>) -> (Rational, Option<(Rational, u64)>) {
    match job {
        None => (int(0), None),
        Some(DurationFunction::StepList(ts)) if ts.len() == 2 => {
            let r = ts[1].resource;
            (ts[0].time, Some(((ts[0].time - ts[1].time) / int(r as i128), r)))
        }
        Some(f) => (f.base_time(), None),
    }
}

/// Relaxed duration of a two-tuple-form arc at fractional flow `f`.
pub fn relaxed_duration(job: &Option<DurationFunction>, f: Rational) -> Rational {
    match relaxed_shape(job) {
        (t0, None) => t0,
        (t0, Some((slope, cap))) => t0 - slope * f.min(int(cap as i128)),
    }
}

/// Builds the relaxation for a two-tuple instance with budget `budget`.
///
/// Vertices with a single incoming arc and a single dummy outgoing arc are
/// folded away: they carry no decision of their own.
pub fn build_lp(inst: &Instance, budget: u64) -> Result<TradeoffLp> {
    inst.require_form(&[Form::TwoTupleArcJobs])?;
    let n = inst.num_vertices();
    let ins = inst.in_arcs();
    let outs = inst.out_arcs();
    let order = inst.topo_order()?;

    let mut folded = vec![false; n];
    for &w in &order {
        if w == inst.source || w == inst.sink || ins[w].len() != 1 || outs[w].len() != 1 {
            continue;
        }
        let e_in = ins[w][0];
        let e_out = outs[w][0];
        if inst.arcs[e_out].job.is_none() && !folded[inst.arcs[e_in].tail] {
            folded[w] = true;
        }
    }

    let mut lp = LinearProgram { var_names: Vec::new(), objective: Vec::new(), constraints: Vec::new() };
    let mut arc_var = vec![ArcVar::Own(usize::MAX); inst.arcs.len()];
    for (e, a) in inst.arcs.iter().enumerate() {
        if folded[a.tail] {
            arc_var[e] = ArcVar::SameAs(ins[a.tail][0]);
        } else {
            arc_var[e] = ArcVar::Own(lp.var(format!("f{e}")));
        }
    }
    let flow_var = |e: usize| -> usize {
        match arc_var[e] {
            ArcVar::Own(j) => j,
            ArcVar::SameAs(p) => match arc_var[p] {
                ArcVar::Own(j) => j,
                ArcVar::SameAs(_) => unreachable!("fold chains have length one"),
            },
        }
    };
    let mut vertex_var = vec![VertexVar::Zero; n];
    for v in 0..n {
        if v == inst.source {
            continue;
        }
        vertex_var[v] =
            if folded[v] { VertexVar::After(ins[v][0]) } else { VertexVar::Own(lp.var(format!("T{v}"))) };
    }

    for (e, a) in inst.arcs.iter().enumerate() {
        if folded[a.tail] {
            continue;
        }
        let head = if folded[a.head] { inst.arcs[outs[a.head][0]].head } else { a.head };
        let (t0, shape) = relaxed_shape(&a.job);
        let mut coeffs = Vec::new();
        if let VertexVar::Own(j) = vertex_var[head] {
            coeffs.push((j, int(1)));
        }
        if let VertexVar::Own(j) = vertex_var[a.tail] {
            coeffs.push((j, int(-1)));
        }
        if let Some((slope, cap)) = shape {
            if slope != int(0) {
                coeffs.push((flow_var(e), slope));
            }
            lp.add(format!("cap{e}"), vec![(flow_var(e), int(1))], Sense::Le, int(cap as i128));
        }
        lp.add(format!("time{e}"), coeffs, Sense::Ge, t0);
    }

    for v in 0..n {
        if v == inst.source || v == inst.sink || folded[v] {
            continue;
        }
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        for &e in &ins[v] {
            coeffs.push((flow_var(e), int(1)));
        }
        for &e in &outs[v] {
            coeffs.push((flow_var(e), int(-1)));
        }
        lp.add(format!("flow{v}"), merge(coeffs), Sense::Eq, int(0));
    }
    let budget_row: Vec<(usize, Rational)> =
        outs[inst.source].iter().map(|&e| (flow_var(e), int(1))).collect();
    lp.add("budget".into(), merge(budget_row), Sense::Le, int(budget as i128));
    if let VertexVar::Own(j) = vertex_var[inst.sink] {
        lp.objective.push((j, int(1)));
    }
    Ok(TradeoffLp { lp, arc_var, vertex_var })
}

fn merge(mut coeffs: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    coeffs.sort_by_key(|c| c.0);
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (j, a) in coeffs {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += a,
            _ => out.push((j, a)),
        }
    }
    out.retain(|c| c.1 != int(0));
    out
}

/// Solves the relaxation and re-checks every original constraint exactly.
pub fn solve_lp(inst: &Instance, tlp: &TradeoffLp) -> Result<LpSolution> {
    let (x, objective) = tlp.lp.solve()?;
    let flow: Vec<Rational> = tlp
        .arc_var
        .iter()
        .map(|v| match v {
            ArcVar::Own(j) => x[*j],
            ArcVar::SameAs(p) => match tlp.arc_var[*p] {
                ArcVar::Own(j) => x[j],
                ArcVar::SameAs(_) => unreachable!(),
            },
        })
        .collect();
    let mut event_time = vec![int(0); inst.num_vertices()];
    for v in inst.topo_order()? {
        event_time[v] = match tlp.vertex_var[v] {
            VertexVar::Zero => int(0),
            VertexVar::Own(j) => x[j],
            VertexVar::After(e) => {
                let a = &inst.arcs[e];
                event_time[a.tail] + relaxed_duration(&a.job, flow[e])
            }
        };
    }
    let source_outflow =
        inst.arcs.iter().zip(&flow).filter(|(a, _)| a.tail == inst.source).map(|(_, f)| *f).sum();
    let sol = LpSolution { flow, event_time, objective, source_outflow };
    verify(inst, &sol)?;
    Ok(sol)
}

/// Builds and solves in one step.
pub fn relax(inst: &Instance, budget: u64) -> Result<LpSolution> {
    let tlp = build_lp(inst, budget)?;
    solve_lp(inst, &tlp)
}

fn verify(inst: &Instance, sol: &LpSolution) -> Result<()> {
    let bad = |m: String| Err(Error::Numerical(m));
    let mut net = vec![int(0); inst.num_vertices()];
    for (e, a) in inst.arcs.iter().enumerate() {
        let f = sol.flow[e];
        if f < int(0) {
            return bad(format!("arc {e} has negative flow"));
        }
        if let (_, Some((_, cap))) = relaxed_shape(&a.job) {
            if f > int(cap as i128) {
                return bad(format!("arc {e} exceeds its cap"));
            }
        }
        if sol.event_time[a.head] < sol.event_time[a.tail] + relaxed_duration(&a.job, f) {
            return bad(format!("arc {e} finishes after its head event"));
        }
        net[a.head] += f;
        net[a.tail] -= f;
    }
    for (v, x) in net.iter().enumerate() {
        if v != inst.source && v != inst.sink && *x != int(0) {
            return bad(format!("flow not conserved at {}", inst.vertices[v]));
        }
    }
    if sol.event_time[inst.sink] != sol.objective {
        return bad("objective differs from sink time".into());
    }
    Ok(())
}

/// Per original job: total chain flow `r*` and slowest relaxed chain `t*`.
pub fn per_job_summary(
    expanded: &Instance,
    sol: &LpSolution,
    trace: &ExpandTrace,
) -> Vec<Option<(Rational, Rational)>> {
    trace
        .images
        .iter()
        .map(|im| match im {
            ArcImage::Dummy(_) => None,
            ArcImage::Job(job) => {
                let r: Rational = job.chains.iter().map(|c| sol.flow[c.0]).sum();
                let t = job
                    .chains
                    .iter()
                    .map(|c| relaxed_duration(&expanded.arcs[c.0].job, sol.flow[c.0]))
                    .max()
                    .unwrap_or(int(0));
                Some((r, t))
            }
        })
        .collect()
}
