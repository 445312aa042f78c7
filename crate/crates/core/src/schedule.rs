//! Flow validation and earliest-start schedules.

use std::fmt;

use crate::duration::eval_job;
use crate::error::{Error, Result};
use crate::instance::{Form, Instance};
use crate::rational::{int, Rational};

/// Integral resource units per arc, indexed like `Instance::arcs`.
pub type Flow = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    pub event_time: Vec<Rational>,
    pub makespan: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength { expected: usize, found: usize },
    Negative { arc: usize, value: i128 },
    NotIntegral { arc: usize },
    Conservation { vertex: String, inflow: u64, outflow: u64 },
    Budget { outflow: u64, budget: u64 },
    Structure(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, found } => {
                write!(f, "flow has {found} entries, instance has {expected} arcs")
            }
            Violation::Negative { arc, value } => write!(f, "arc {arc}: negative flow {value}"),
            Violation::NotIntegral { arc } => write!(f, "arc {arc}: flow is not integral"),
            Violation::Conservation { vertex, inflow, outflow } => {
                write!(f, "vertex {vertex}: inflow {inflow} != outflow {outflow}")
            }
            Violation::Budget { outflow, budget } => {
                write!(f, "source outflow {outflow} exceeds budget {budget}")
            }
            Violation::Structure(s) => write!(f, "{s}"),
        }
    }
}

/// Every violation of `flow` against `inst`; empty means valid.
pub fn validate_flow(inst: &Instance, flow: &[u64]) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Err(e) = inst.validate() {
        out.push(Violation::Structure(e.to_string()));
        return out;
    }
    if flow.len() != inst.arcs.len() {
        out.push(Violation::WrongLength { expected: inst.arcs.len(), found: flow.len() });
        return out;
    }
    let n = inst.num_vertices();
    let mut inflow = vec![0u64; n];
    let mut outflow = vec![0u64; n];
    for (a, &f) in inst.arcs.iter().zip(flow) {
        outflow[a.tail] += f;
        inflow[a.head] += f;
    }
    for v in 0..n {
        if v != inst.source && v != inst.sink && inflow[v] != outflow[v] {
            out.push(Violation::Conservation {
                vertex: inst.vertices[v].clone(),
                inflow: inflow[v],
                outflow: outflow[v],
            });
        }
    }
    if outflow[inst.source] > inst.budget {
        out.push(Violation::Budget { outflow: outflow[inst.source], budget: inst.budget });
    }
    out
}

/// Earliest-start schedule for per-arc durations.
pub fn schedule_with_durations(inst: &Instance, durations: &[Rational]) -> Result<Schedule> {
    let order = inst.topo_order()?;
    let in_arcs = inst.in_arcs();
    let mut t = vec![int(0); inst.num_vertices()];
    for &v in &order {
        let mut best = int(0);
        for &i in &in_arcs[v] {
            let cand = t[inst.arcs[i].tail] + durations[i];
            if cand > best {
                best = cand;
            }
        }
        t[v] = best;
    }
    let makespan = t[inst.sink];
    Ok(Schedule { event_time: t, makespan })
}

/// Schedule induced by a flow, after checking it is conserved and within budget.
pub fn evaluate(inst: &Instance, flow: &[u64]) -> Result<Schedule> {
    inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
    let v = validate_flow(inst, flow);
    if !v.is_empty() {
        let msg = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
        return Err(Error::InfeasibleFlow(msg));
    }
    evaluate_unchecked(inst, flow)
}

/// Schedule induced by a flow without conservation or budget checks.
pub fn evaluate_unchecked(inst: &Instance, flow: &[u64]) -> Result<Schedule> {
    let d: Vec<Rational> = inst.arcs.iter().zip(flow).map(|(a, &f)| eval_job(&a.job, f)).collect();
    schedule_with_durations(inst, &d)
}

/// Makespan when nobody gets any resource.
pub fn zero_resource_makespan(inst: &Instance) -> Result<Rational> {
    Ok(evaluate_unchecked(inst, &vec![0; inst.arcs.len()])?.makespan)
}
