//! LP-rounding approximation drivers.

use crate::duration::{binary_height, Family};
use crate::error::{Error, Result};
use crate::instance::{Form, Instance};
use crate::lp::{per_job_summary, relax, LpSolution};
use crate::maxflow::flow_value;
use crate::rational::{int, ratio, Rational};
use crate::rounding::{alpha_round, canonicalize, check_alpha, min_flow};
use crate::schedule::{evaluate, Flow, Schedule};
use crate::transform::{map_back, two_tuple_expand, ExpandTrace};

/// Declared approximation factors: resources against the LP flow, makespan
/// against the LP objective (bi-criteria) or the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Guarantee {
    pub resource_factor: Rational,
    pub makespan_factor: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApproxResult {
    /// Resource requirement per arc of the input instance (0 on dummies).
    pub allocation: Vec<u64>,
    pub flow: Flow,
    pub schedule: Schedule,
    pub resource_used: u64,
    pub guarantee: Guarantee,
    pub lp_objective: Rational,
    /// Total LP flow out of the source.
    pub lp_flow: Rational,
}

impl ApproxResult {
    pub fn makespan(&self) -> Rational {
        self.schedule.makespan
    }
}

/// Expansion and solved relaxation shared by every driver.
#[derive(Debug, Clone)]
pub struct Relaxation {
    pub instance: Instance,
    pub budget: u64,
    pub expanded: Instance,
    pub trace: ExpandTrace,
    pub solution: LpSolution,
    /// `(r*, t*)` per input arc; `None` on dummies.
    pub summary: Vec<Option<(Rational, Rational)>>,
}

impl Relaxation {
    pub fn new(inst: &Instance, budget: u64) -> Result<Self> {
        inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
        let (expanded, trace) = two_tuple_expand(inst)?;
        let solution = relax(&expanded, budget)?;
        let summary = per_job_summary(&expanded, &solution, &trace);
        Ok(Relaxation { instance: inst.clone(), budget, expanded, trace, solution, summary })
    }

    fn finish(&self, allocation: Vec<u64>, flow: Flow, guarantee: Guarantee) -> Result<ApproxResult> {
        let arcs: Vec<(usize, usize)> = self.instance.arcs.iter().map(|a| (a.tail, a.head)).collect();
        let used = flow_value(self.instance.source, &arcs, &flow);
        let schedule = evaluate(&self.instance.with_budget(used), &flow)?;
        Ok(ApproxResult {
            allocation,
            flow,
            schedule,
            resource_used: used,
            guarantee,
            lp_objective: self.solution.objective,
            lp_flow: self.solution.source_outflow,
        })
    }

    /// Rounded, canonical breakpoint requirement per input arc at threshold `alpha`.
    fn rounded(&self, alpha: Rational) -> Result<(Vec<u64>, Vec<u64>)> {
        let bounds = alpha_round(&self.expanded, &self.solution, alpha)?;
        Ok(canonicalize(&self.trace, &bounds))
    }

    /// Round at `alpha`, route the rounded requirements with a min-flow on
    /// the expanded instance and map the flow back.
    pub fn bicriteria(&self, alpha: Rational) -> Result<ApproxResult> {
        check_alpha(alpha)?;
        let (bounds, req) = self.rounded(alpha)?;
        let flow = min_flow(&self.expanded, &bounds)?;
        let back = map_back(&self.trace, &flow)?;
        self.finish(
            req,
            back.flow,
            Guarantee { resource_factor: int(1) / (int(1) - alpha), makespan_factor: int(1) / alpha },
        )
    }

    fn require_family(&self, fam: Family) -> Result<()> {
        let jobs = self.instance.jobs();
        if jobs.iter().all(|j| j.family() == Some(fam)) {
            Ok(())
        } else {
            Err(Error::IncompatibleFamily(format!("every job must be {fam}")))
        }
    }

    fn r_star(&self, e: usize) -> Rational {
        self.summary[e].map_or(int(0), |s| s.0)
    }

    /// Five-approximation for k-way splitting jobs.
    pub fn kway_five(&self) -> Result<ApproxResult> {
        self.require_family(Family::KWay)?;
        let (_, req) = self.rounded(ratio(1, 2))?;
        let k: Vec<u64> = req.iter().enumerate().map(|(e, &rb)| kway_rule(rb, self.r_star(e))).collect();
        let flow = min_flow(&self.instance, &k)?;
        self.finish(k, flow, Guarantee { resource_factor: int(1), makespan_factor: int(5) })
    }

    /// Four-approximation for recursive binary splitting jobs.
    pub fn binary_four(&self) -> Result<ApproxResult> {
        self.require_family(Family::RecursiveBinary)?;
        let (_, req) = self.rounded(ratio(1, 2))?;
        let mut alloc = Vec::with_capacity(req.len());
        for (e, &rb) in req.iter().enumerate() {
            alloc.push(binary_halving(rb, self.r_star(e))?);
        }
        let flow = min_flow(&self.instance, &alloc)?;
        self.finish(alloc, flow, Guarantee { resource_factor: int(1), makespan_factor: int(4) })
    }

    /// (4/3, 14/5) bi-criteria rounding for recursive binary splitting jobs.
    pub fn binary_improved(&self) -> Result<ApproxResult> {
        self.require_family(Family::RecursiveBinary)?;
        let alloc: Vec<u64> = self
            .instance
            .arcs
            .iter()
            .enumerate()
            .map(|(e, a)| match &a.job {
                Some(crate::duration::DurationFunction::RecursiveBinary(b)) => {
                    let h = binary_height(*b);
                    let r = power_round(self.r_star(e));
                    if h < 1 {
                        0
                    } else {
                        r.min(1u64 << h)
                    }
                }
                _ => 0,
            })
            .collect();
        let flow = min_flow(&self.instance, &alloc)?;
        self.finish(alloc, flow, Guarantee { resource_factor: ratio(4, 3), makespan_factor: ratio(14, 5) })
    }
}

/// Split count from the rounded requirement `rb` and the LP resource `rs`.
pub fn kway_rule(rb: u64, rs: Rational) -> u64 {
    if rb > 3 {
        rb / 2
    } else if rs < int(2) {
        0
    } else {
        2
    }
}

/// Halves a power-of-two requirement that exceeds the LP resource.
pub fn binary_halving(rb: u64, rs: Rational) -> Result<u64> {
    if int(rb as i128) <= rs {
        return Ok(rb);
    }
    if !rb.is_power_of_two() || rb < 2 {
        return Err(Error::InvalidParameter(format!(
            "rounded binary requirement {rb} is not a power of two"
        )));
    }
    Ok(rb / 2)
}

/// `0` below 1; otherwise the nearer of `2^i` and `2^(i+1)` around `r`,
/// splitting at `3 * 2^(i-1)`.
pub fn power_round(r: Rational) -> u64 {
    if r < int(1) {
        return 0;
    }
    let mut p: u64 = 1;
    while int(2 * p as i128) <= r {
        p *= 2;
    }
    if r * int(2) < int(3 * p as i128) {
        p
    } else {
        2 * p
    }
}

pub fn bicriteria_general(inst: &Instance, budget: u64, alpha: Rational) -> Result<ApproxResult> {
    Relaxation::new(inst, budget)?.bicriteria(alpha)
}

pub fn kway_five_approx(inst: &Instance, budget: u64) -> Result<ApproxResult> {
    if inst.uniform_family() != Some(Family::KWay) && inst.num_jobs() > 0 {
        return Err(Error::IncompatibleFamily("every job must be kway".into()));
    }
    Relaxation::new(inst, budget)?.kway_five()
}

pub fn binary_four_approx(inst: &Instance, budget: u64) -> Result<ApproxResult> {
    if inst.uniform_family() != Some(Family::RecursiveBinary) && inst.num_jobs() > 0 {
        return Err(Error::IncompatibleFamily("every job must be binary".into()));
    }
    Relaxation::new(inst, budget)?.binary_four()
}

pub fn binary_improved_bicriteria(inst: &Instance, budget: u64) -> Result<ApproxResult> {
    if inst.uniform_family() != Some(Family::RecursiveBinary) && inst.num_jobs() > 0 {
        return Err(Error::IncompatibleFamily("every job must be binary".into()));
    }
    Relaxation::new(inst, budget)?.binary_improved()
}
