//! Exact solvers for small instances.
//!
//! The main search enumerates, per job arc, which breakpoint it reaches. A
//! choice of breakpoints is realisable iff the minimum flow meeting those
//! breakpoint resources as lower bounds fits in the budget, so the optimum is
//! the best realisable choice. Branch and bound over arcs in topological
//! order, richest breakpoint first, pruned by the longest path with every
//! undecided arc at its fastest time.

use crate::duration::{eval_job, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Form, Instance};
use crate::maxflow::flow_value;
use crate::rational::Rational;
use crate::rounding::min_flow;
use crate::schedule::{evaluate, schedule_with_durations, Flow};

pub const GUARD_ENV: &str = "RTT_SIZE_GUARD";

/// Largest search the oracle accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    /// Job arcs with more than one breakpoint.
    pub max_choice_arcs: usize,
    pub max_budget: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_choice_arcs: 40, max_budget: 64 }
    }
}

impl Guard {
    /// Default guard, overridden by `RTT_SIZE_GUARD=ARCS` or `ARCS,BUDGET`.
    pub fn from_env() -> Result<Guard> {
        match std::env::var(GUARD_ENV) {
            Ok(s) => Guard::parse(&s),
            Err(_) => Ok(Guard::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Guard> {
        let bad = || Error::InvalidParameter(format!("bad {GUARD_ENV} value `{s}`"));
        let mut g = Guard::default();
        let mut it = s.split(',');
        g.max_choice_arcs = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        if let Some(b) = it.next() {
            g.max_budget = b.trim().parse().map_err(|_| bad())?;
        }
        if it.next().is_some() {
            return Err(bad());
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub makespan: Rational,
    pub flow: Flow,
}

struct Search<'a> {
    inst: &'a Instance,
    budget: u64,
    choices: Vec<(usize, Vec<Tuple>)>,
    lower: Vec<u64>,
    durations: Vec<Rational>,
    best: Rational,
    best_lower: Vec<u64>,
}

impl Search<'_> {
    fn longest(&self) -> Rational {
        schedule_with_durations(self.inst, &self.durations).map(|s| s.makespan).unwrap()
    }

    fn feasible(&self) -> Result<bool> {
        let f = min_flow(self.inst, &self.lower)?;
        let arcs: Vec<(usize, usize)> = self.inst.arcs.iter().map(|a| (a.tail, a.head)).collect();
        Ok(flow_value(self.inst.source, &arcs, &f) <= self.budget)
    }

    fn dfs(&mut self, depth: usize) -> Result<()> {
        if depth == self.choices.len() {
            let m = self.longest();
            if m < self.best {
                self.best = m;
                self.best_lower = self.lower.clone();
            }
            return Ok(());
        }
        let (e, levels) = self.choices[depth].clone();
        let saved = self.durations[e];
        let mut known_feasible = false;
        for lv in levels.iter().rev() {
            self.lower[e] = lv.resource;
            self.durations[e] = lv.time;
            if self.longest() >= self.best {
                // slower levels only raise the bound further
                break;
            }
            if lv.resource > 0 && !known_feasible {
                if !self.feasible()? {
                    continue;
                }
                known_feasible = true;
            }
            self.dfs(depth + 1)?;
        }
        self.lower[e] = 0;
        self.durations[e] = saved;
        Ok(())
    }
}

pub fn brute_min_makespan(inst: &Instance, budget: u64) -> Result<OracleResult> {
    brute_min_makespan_with(inst, budget, Guard::from_env()?)
}

pub fn brute_min_makespan_with(inst: &Instance, budget: u64, guard: Guard) -> Result<OracleResult> {
    inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
    let order = inst.topo_order()?;
    let mut rank = vec![0; inst.num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut choices: Vec<(usize, Vec<Tuple>)> = inst
        .arcs
        .iter()
        .enumerate()
        .filter_map(|(e, a)| {
            let bp = a.job.as_ref()?.breakpoints();
            (bp.len() > 1).then_some((e, bp))
        })
        .collect();
    if choices.len() > guard.max_choice_arcs || budget > guard.max_budget {
        return Err(Error::SizeGuard(format!(
            "{} choice arcs and budget {budget} exceed the limit of {} arcs and budget {}",
            choices.len(),
            guard.max_choice_arcs,
            guard.max_budget
        )));
    }
    choices.sort_by_key(|(e, _)| (rank[inst.arcs[*e].tail], *e));
    let mut durations: Vec<Rational> = inst.arcs.iter().map(|a| eval_job(&a.job, 0)).collect();
    for (e, bp) in &choices {
        durations[*e] = bp.last().unwrap().time;
    }
    let zero = vec![0; inst.arcs.len()];
    let base =
        schedule_with_durations(inst, &inst.arcs.iter().map(|a| eval_job(&a.job, 0)).collect::<Vec<_>>())?
            .makespan;
    let mut s =
        Search { inst, budget, choices, lower: zero.clone(), durations, best: base, best_lower: zero };
    s.dfs(0)?;
    let flow = min_flow(inst, &s.best_lower)?;
    let check = evaluate(&inst.with_budget(budget), &flow)?;
    debug_assert!(check.makespan <= s.best);
    Ok(OracleResult { makespan: check.makespan, flow })
}

/// Smallest budget `<= b_max` reaching `target`, or `None`.
pub fn brute_min_resource(inst: &Instance, target: Rational, b_max: u64) -> Result<Option<u64>> {
    let guard = Guard::from_env()?;
    for b in 0..=b_max {
        if brute_min_makespan_with(inst, b, guard)?.makespan <= target {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Literal enumeration of every integral conserved flow within budget.
/// Exponential; refuses more than 16 arcs or a budget above 8.
pub fn enumerate_min_makespan(inst: &Instance, budget: u64) -> Result<OracleResult> {
    inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
    if inst.arcs.len() > 16 || budget > 8 {
        return Err(Error::SizeGuard(format!(
            "{} arcs and budget {budget} exceed 16 arcs and budget 8",
            inst.arcs.len()
        )));
    }
    let order = inst.topo_order()?;
    let outs = inst.out_arcs();
    let mut flow = vec![0u64; inst.arcs.len()];
    let mut best: Option<OracleResult> = None;

    struct Ctx<'a> {
        inst: &'a Instance,
        order: &'a [usize],
        outs: &'a [Vec<usize>],
    }

    fn split(
        ctx: &Ctx,
        pos: usize,
        k: usize,
        left: u64,
        flow: &mut Vec<u64>,
        inflow: &mut Vec<u64>,
        best: &mut Option<OracleResult>,
    ) {
        let v = ctx.order[pos];
        let outs = &ctx.outs[v];
        if k + 1 >= outs.len() {
            if let Some(&e) = outs.get(k) {
                flow[e] = left;
                inflow[ctx.inst.arcs[e].head] += left;
            } else if left > 0 {
                return;
            }
            visit(ctx, pos + 1, flow, inflow, best);
            if let Some(&e) = outs.get(k) {
                inflow[ctx.inst.arcs[e].head] -= left;
                flow[e] = 0;
            }
            return;
        }
        let e = outs[k];
        for x in 0..=left {
            flow[e] = x;
            inflow[ctx.inst.arcs[e].head] += x;
            split(ctx, pos, k + 1, left - x, flow, inflow, best);
            inflow[ctx.inst.arcs[e].head] -= x;
        }
        flow[e] = 0;
    }

    fn visit(
        ctx: &Ctx,
        pos: usize,
        flow: &mut Vec<u64>,
        inflow: &mut Vec<u64>,
        best: &mut Option<OracleResult>,
    ) {
        if pos == ctx.order.len() {
            let m = crate::schedule::evaluate_unchecked(ctx.inst, flow).unwrap().makespan;
            if best.as_ref().is_none_or(|b| m < b.makespan) {
                *best = Some(OracleResult { makespan: m, flow: flow.clone() });
            }
            return;
        }
        let v = ctx.order[pos];
        if v == ctx.inst.sink {
            visit(ctx, pos + 1, flow, inflow, best);
            return;
        }
        let amount = inflow[v];
        split(ctx, pos, 0, amount, flow, inflow, best);
    }

    let ctx = Ctx { inst, order: &order, outs: &outs };
    let mut inflow = vec![0u64; inst.num_vertices()];
    for total in 0..=budget {
        inflow[inst.source] = total;
        visit(&ctx, 0, &mut flow, &mut inflow, &mut best);
    }
    best.ok_or_else(|| Error::InfeasibleFlow("no flow enumerated".into()))
}
