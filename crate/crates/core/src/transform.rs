//! Activity-on-arc conversion and two-tuple expansion with its inverse map.

use crate::duration::{DurationFunction, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Builder, Form, Instance};
use crate::rational::{int, Rational};
use crate::schedule::Flow;

/// Where each original node went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AoaTrace {
    /// `node_arc[v]` is the arc `(a_v, b_v)` of node `v`.
    pub node_arc: Vec<usize>,
    /// `edge_arc[i]` is the dummy arc replacing precedence edge `i`.
    pub edge_arc: Vec<usize>,
}

/// Each node `v` becomes an arc `v.in -> v.out`; each edge `(u, v)` becomes a
/// dummy `u.out -> v.in`.
pub fn activity_on_arc(inst: &Instance) -> Result<(Instance, AoaTrace)> {
    inst.require_form(&[Form::NodeJobs])?;
    let mut b = Builder::new();
    let mut node_arc = Vec::with_capacity(inst.num_vertices());
    for (v, name) in inst.vertices.iter().enumerate() {
        let a = b.arc(&format!("{name}.in"), &format!("{name}.out"), inst.node_jobs[v].clone());
        node_arc.push(a);
    }
    let mut edge_arc = Vec::with_capacity(inst.arcs.len());
    for a in &inst.arcs {
        let t = &inst.vertices[a.tail];
        let h = &inst.vertices[a.head];
        edge_arc.push(b.dummy(&format!("{t}.out"), &format!("{h}.in")));
    }
    let source = format!("{}.in", inst.vertices[inst.source]);
    let sink = format!("{}.out", inst.vertices[inst.sink]);
    let out = b.finish(Form::ArcJobs, &source, &sink, inst.budget, inst.target)?;
    Ok((out, AoaTrace { node_arc, edge_arc }))
}

/// Image of one original arc after expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcImage {
    /// Dummy arc copied to this index.
    Dummy(usize),
    /// Job arc expanded into parallel chains.
    Job(ExpandedJob),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedJob {
    /// Breakpoints of the original job.
    pub tuples: Vec<Tuple>,
    /// `(first arc, second arc)` of each chain; chain `i` buys the step from
    /// tuple `i` to tuple `i + 1`.
    pub chains: Vec<(usize, usize)>,
}

impl ExpandedJob {
    /// Resource that makes chain `i` take zero time (None for the last chain).
    pub fn increment(&self, i: usize) -> Option<u64> {
        (i + 1 < self.tuples.len()).then(|| self.tuples[i + 1].resource - self.tuples[i].resource)
    }

    /// Chain durations under the given chain flows.
    pub fn chain_durations(&self, chain_flow: &[u64]) -> Vec<Rational> {
        (0..self.chains.len())
            .map(|i| match self.increment(i) {
                Some(inc) if chain_flow[i] >= inc => int(0),
                _ => self.tuples[i].time,
            })
            .collect()
    }

    /// Index of the cheapest breakpoint whose time is at most `d`.
    pub fn cheapest_index(&self, d: Rational) -> usize {
        self.tuples.iter().position(|t| t.time <= d).unwrap_or(self.tuples.len() - 1)
    }

    /// Resource of the cheapest breakpoint whose time is at most `d`.
    pub fn cheapest_level(&self, d: Rational) -> u64 {
        self.tuples[self.cheapest_index(d)].resource
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandTrace {
    pub images: Vec<ArcImage>,
}

impl ExpandTrace {
    /// Original arc ids that carry jobs, with their expansions.
    pub fn jobs(&self) -> impl Iterator<Item = (usize, &ExpandedJob)> {
        self.images.iter().enumerate().filter_map(|(i, im)| match im {
            ArcImage::Job(j) => Some((i, j)),
            ArcImage::Dummy(_) => None,
        })
    }
}

/// Replaces every job by parallel two-arc chains, each offering one
/// "pay the increment, drop to zero" option.
pub fn two_tuple_expand(inst: &Instance) -> Result<(Instance, ExpandTrace)> {
    inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
    let mut b = Builder::new();
    for v in &inst.vertices {
        b.vertex(v);
    }
    let mut images = Vec::with_capacity(inst.arcs.len());
    for (e, a) in inst.arcs.iter().enumerate() {
        match &a.job {
            None => images.push(ArcImage::Dummy(b.arc_ids(a.tail, a.head, None))),
            Some(job) => {
                let tuples = job.breakpoints();
                if tuples.is_empty() {
                    return Err(Error::InvalidDuration(format!("arc {e} has no tuples")));
                }
                let l = tuples.len();
                let mut chains = Vec::with_capacity(l);
                for i in 0..l {
                    let mid = b.vertex(&format!("j{e}#{i}"));
                    let f = if i + 1 < l {
                        vec![
                            Tuple::new(0, tuples[i].time),
                            Tuple::new(tuples[i + 1].resource - tuples[i].resource, int(0)),
                        ]
                    } else {
                        vec![Tuple::new(0, tuples[i].time)]
                    };
                    let first = b.arc_ids(a.tail, mid, Some(DurationFunction::StepList(f)));
                    let second = b.arc_ids(mid, a.head, None);
                    chains.push((first, second));
                }
                images.push(ArcImage::Job(ExpandedJob { tuples, chains }));
            }
        }
    }
    let out = b.finish(
        Form::TwoTupleArcJobs,
        &inst.vertices[inst.source],
        &inst.vertices[inst.sink],
        inst.budget,
        inst.target,
    )?;
    Ok((out, ExpandTrace { images }))
}

/// Result of mapping an expanded flow back to the original arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapBack {
    /// Total chain flow per original arc (0 for dummies).
    pub resource: Vec<u64>,
    /// Cheapest breakpoint resource reaching `duration`.
    pub requirement: Vec<u64>,
    /// Job duration: the slowest chain.
    pub duration: Vec<Rational>,
    /// Conserved flow on the original instance.
    pub flow: Flow,
}

pub fn map_back(trace: &ExpandTrace, expanded_flow: &[u64]) -> Result<MapBack> {
    let n = trace.images.len();
    let mut out = MapBack {
        resource: vec![0; n],
        requirement: vec![0; n],
        duration: vec![int(0); n],
        flow: vec![0; n],
    };
    for (e, im) in trace.images.iter().enumerate() {
        match im {
            ArcImage::Dummy(i) => {
                out.flow[e] = *expanded_flow
                    .get(*i)
                    .ok_or_else(|| Error::InvalidParameter(format!("no flow for arc {i}")))?;
            }
            ArcImage::Job(job) => {
                let mut cf = Vec::with_capacity(job.chains.len());
                for &(first, _) in &job.chains {
                    cf.push(
                        *expanded_flow
                            .get(first)
                            .ok_or_else(|| Error::InvalidParameter(format!("no flow for arc {first}")))?,
                    );
                }
                let d = job.chain_durations(&cf).into_iter().max().unwrap_or(int(0));
                let total: u64 = cf.iter().sum();
                out.resource[e] = total;
                out.flow[e] = total;
                out.requirement[e] = job.cheapest_level(d);
                out.duration[e] = d;
            }
        }
    }
    Ok(out)
}

/// Chain requirement vector realising breakpoint `m` of a job: chains
/// before `m` get their increment, the rest nothing.
pub fn chain_requirements(job: &ExpandedJob, m: usize) -> Vec<u64> {
    (0..job.chains.len()).map(|i| if i < m { job.increment(i).unwrap_or(0) } else { 0 }).collect()
}

/// Lifts a flow on the original arcs to the expanded instance, filling
/// chains greedily in order and putting any excess on the last chain.
pub fn lift_flow(trace: &ExpandTrace, expanded_arcs: usize, flow: &[u64]) -> Flow {
    let mut out = vec![0; expanded_arcs];
    for (e, im) in trace.images.iter().enumerate() {
        match im {
            ArcImage::Dummy(i) => out[*i] = flow[e],
            ArcImage::Job(job) => {
                let mut left = flow[e];
                for (i, &(a, b)) in job.chains.iter().enumerate() {
                    let take = match job.increment(i) {
                        Some(inc) => left.min(inc),
                        None => left,
                    };
                    left -= take;
                    out[a] = take;
                    out[b] = take;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::evaluate;

    fn single(job: DurationFunction) -> Instance {
        let mut b = Builder::new();
        b.arc("s", "t", Some(job));
        b.finish(Form::ArcJobs, "s", "t", 4, None).unwrap()
    }

    fn three_tuples() -> DurationFunction {
        DurationFunction::step_int(&[(0, 5), (2, 1), (3, 0)]).unwrap()
    }

    #[test]
    fn aoa_counts() {
        let mut b = Builder::new();
        b.node_job("x", Some(DurationFunction::KWay(3)));
        let one = b.finish(Form::NodeJobs, "x", "x", 0, None).unwrap();
        let (out, _) = activity_on_arc(&one).unwrap();
        assert_eq!(out.arcs.len(), 1);

        let mut b = Builder::new();
        for v in ["s", "a", "t"] {
            b.node_job(v, Some(DurationFunction::KWay(1)));
        }
        b.dummy("s", "a");
        b.dummy("a", "t");
        let chain = b.finish(Form::NodeJobs, "s", "t", 0, None).unwrap();
        let (out, tr) = activity_on_arc(&chain).unwrap();
        assert_eq!(out.arcs.iter().filter(|a| a.job.is_some()).count(), 3);
        assert_eq!(out.arcs.iter().filter(|a| a.job.is_none()).count(), 2);
        assert_eq!(tr.node_arc, vec![0, 1, 2]);

        let mut b = Builder::new();
        for v in ["s", "a", "b", "t"] {
            b.node_job(v, Some(DurationFunction::KWay(2)));
        }
        for (u, v) in [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")] {
            b.dummy(u, v);
        }
        let diamond = b.finish(Form::NodeJobs, "s", "t", 0, None).unwrap();
        let (out, _) = activity_on_arc(&diamond).unwrap();
        assert_eq!(out.arcs.iter().filter(|a| a.job.is_some()).count(), 4);
        assert_eq!(out.arcs.iter().filter(|a| a.job.is_none()).count(), 4);
    }

    #[test]
    fn expansion_of_three_tuples() {
        let (out, tr) = two_tuple_expand(&single(three_tuples())).unwrap();
        let ArcImage::Job(job) = &tr.images[0] else { panic!() };
        assert_eq!(job.chains.len(), 3);
        let firsts: Vec<_> = job.chains.iter().map(|c| out.arcs[c.0].job.clone().unwrap()).collect();
        assert_eq!(firsts[0], DurationFunction::step_int(&[(0, 5), (2, 0)]).unwrap());
        assert_eq!(firsts[1], DurationFunction::step_int(&[(0, 1), (1, 0)]).unwrap());
        assert_eq!(firsts[2], DurationFunction::step_int(&[(0, 0)]).unwrap());
        assert!(job.chains.iter().all(|c| out.arcs[c.1].job.is_none()));
    }

    #[test]
    fn expansion_of_binary_job() {
        let (_, tr) = two_tuple_expand(&single(DurationFunction::RecursiveBinary(8))).unwrap();
        let ArcImage::Job(job) = &tr.images[0] else { panic!() };
        assert_eq!(job.chains.len(), 3);
        let rs: Vec<u64> = job.tuples.iter().map(|t| t.resource).collect();
        assert_eq!(rs, vec![0, 2, 4]);
    }

    #[test]
    fn single_tuple_job() {
        let (out, _) = two_tuple_expand(&single(DurationFunction::step_int(&[(0, 4)]).unwrap())).unwrap();
        assert_eq!(out.arcs.len(), 2);
        assert_eq!(out.arcs[0].job, Some(DurationFunction::step_int(&[(0, 4)]).unwrap()));
    }

    #[test]
    fn map_back_examples() {
        let (out, tr) = two_tuple_expand(&single(three_tuples())).unwrap();
        let ArcImage::Job(job) = tr.images[0].clone() else { panic!() };
        let flow_for = |c: [u64; 3]| {
            let mut f = vec![0; out.arcs.len()];
            for (i, &(a, b)) in job.chains.iter().enumerate() {
                f[a] = c[i];
                f[b] = c[i];
            }
            f
        };
        let m = map_back(&tr, &flow_for([0, 0, 0])).unwrap();
        assert_eq!((m.resource[0], m.duration[0]), (0, int(5)));
        let m = map_back(&tr, &flow_for([2, 0, 0])).unwrap();
        assert_eq!((m.resource[0], m.requirement[0], m.duration[0]), (2, 2, int(1)));
        let m = map_back(&tr, &flow_for([2, 1, 0])).unwrap();
        assert_eq!((m.resource[0], m.requirement[0], m.duration[0]), (3, 3, int(0)));
        // paying only the second chain buys nothing
        let m = map_back(&tr, &flow_for([0, 1, 0])).unwrap();
        assert_eq!((m.resource[0], m.requirement[0], m.duration[0]), (1, 0, int(5)));
    }

    #[test]
    fn lift_then_map_back_round_trips() {
        let inst = single(three_tuples());
        let (out, tr) = two_tuple_expand(&inst).unwrap();
        for f in 0..=4u64 {
            let lifted = lift_flow(&tr, out.arcs.len(), &[f]);
            let m = map_back(&tr, &lifted).unwrap();
            assert_eq!(m.resource[0], f);
            assert_eq!(m.duration[0], three_tuples().eval(f));
            assert_eq!(evaluate(&out, &lifted).unwrap().makespan, evaluate(&inst, &[f]).unwrap().makespan);
        }
    }
}
