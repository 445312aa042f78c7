//! α-threshold rounding of relaxed flows and the integral min-flow that follows.

use crate::duration::DurationFunction;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lp::{relaxed_duration, LpSolution};
use crate::maxflow::min_flow_lower_bounds;
use crate::rational::{int, Rational};
use crate::schedule::Flow;
use crate::transform::{chain_requirements, ArcImage, ExpandTrace};

pub fn check_alpha(alpha: Rational) -> Result<()> {
    if alpha <= int(0) || alpha >= int(1) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} is outside (0, 1)")));
    }
    Ok(())
}

/// Per-arc lower bound: the full second-tuple resource when the relaxed
/// duration is strictly below `alpha * t(0)`, else 0.
pub fn alpha_round(inst: &Instance, sol: &LpSolution, alpha: Rational) -> Result<Vec<u64>> {
    check_alpha(alpha)?;
    Ok(inst
        .arcs
        .iter()
        .zip(&sol.flow)
        .map(|(a, &f)| match &a.job {
            Some(DurationFunction::StepList(ts))
                if ts.len() == 2 && relaxed_duration(&a.job, f) < alpha * ts[0].time =>
            {
                ts[1].resource
            }
            _ => 0,
        })
        .collect())
}

/// Drops paid chains that cannot lower their job's duration: only the
/// cheapest breakpoint reaching the rounded duration is kept.
/// Returns the adjusted bounds and the per-original-arc requirement.
pub fn canonicalize(trace: &ExpandTrace, bounds: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut out = bounds.to_vec();
    let mut req = vec![0; trace.images.len()];
    for (e, job) in trace.jobs() {
        let paid: Vec<u64> = job.chains.iter().map(|c| bounds[c.0]).collect();
        let d = job.chain_durations(&paid).into_iter().max().unwrap_or(int(0));
        let m = job.cheapest_index(d);
        for (&(a, _), r) in job.chains.iter().zip(chain_requirements(job, m)) {
            out[a] = r;
        }
        req[e] = job.tuples[m].resource;
    }
    (out, req)
}

/// Integral minimum flow meeting the given per-arc lower bounds.
pub fn min_flow(inst: &Instance, lower: &[u64]) -> Result<Flow> {
    let arcs: Vec<(usize, usize)> = inst.arcs.iter().map(|a| (a.tail, a.head)).collect();
    min_flow_lower_bounds(inst.num_vertices(), inst.source, inst.sink, &arcs, lower)
}

/// Lower bounds on the expanded instance realising per-job requirements
/// given on the original arcs (each must be a breakpoint resource, or is
/// rounded down to one).
pub fn expanded_bounds(trace: &ExpandTrace, expanded_arcs: usize, req: &[u64]) -> Vec<u64> {
    let mut out = vec![0; expanded_arcs];
    for (e, im) in trace.images.iter().enumerate() {
        if let ArcImage::Job(job) = im {
            let m = job.tuples.iter().rposition(|t| t.resource <= req[e]).unwrap_or(0);
            for (&(a, _), r) in job.chains.iter().zip(chain_requirements(job, m)) {
                out[a] = r;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Builder, Form};
    use crate::rational::ratio;

    fn one_arc(flow: Rational) -> (Instance, LpSolution) {
        let mut b = Builder::new();
        b.arc("s", "t", Some(DurationFunction::step_int(&[(0, 4), (2, 0)]).unwrap()));
        let inst = b.finish(Form::TwoTupleArcJobs, "s", "t", 2, None).unwrap();
        let sol = LpSolution {
            flow: vec![flow],
            event_time: vec![int(0), relaxed_duration(&inst.arcs[0].job, flow)],
            objective: relaxed_duration(&inst.arcs[0].job, flow),
            source_outflow: flow,
        };
        (inst, sol)
    }

    #[test]
    fn threshold_cases() {
        let half = ratio(1, 2);
        let (i, s) = one_arc(ratio(19, 10));
        assert_eq!(alpha_round(&i, &s, half).unwrap(), vec![2]);
        let (i, s) = one_arc(ratio(1, 2));
        assert_eq!(alpha_round(&i, &s, half).unwrap(), vec![0]);
        let (i, s) = one_arc(int(0));
        assert_eq!(alpha_round(&i, &s, half).unwrap(), vec![0]);
        // exactly alpha * t(0) rounds up to t(0)
        let (i, s) = one_arc(int(1));
        assert_eq!(alpha_round(&i, &s, half).unwrap(), vec![0]);
        assert!(alpha_round(&i, &s, int(1)).is_err());
    }
}
