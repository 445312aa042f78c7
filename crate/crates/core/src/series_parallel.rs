//! Exact pseudo-polynomial DP on series-parallel instances.
//!
//! Resource reuse makes series composition cheap: both halves see the same
//! `λ` units, one after the other. Only parallel composition splits them.

use std::collections::HashMap;

use crate::duration::{eval_job, DurationFunction};
use crate::error::{Error, Result};
use crate::instance::{Form, Instance};
use crate::rational::Rational;
use crate::schedule::Flow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpTree {
    /// One job; `arc` names the instance arc it came from, if any.
    Leaf {
        job: Option<DurationFunction>,
        arc: Option<usize>,
    },
    Series(Box<SpTree>, Box<SpTree>),
    Parallel(Box<SpTree>, Box<SpTree>),
}

impl SpTree {
    pub fn leaf(job: DurationFunction) -> Self {
        SpTree::Leaf { job: Some(job), arc: None }
    }

    pub fn series(a: SpTree, b: SpTree) -> Self {
        SpTree::Series(Box::new(a), Box::new(b))
    }

    pub fn parallel(a: SpTree, b: SpTree) -> Self {
        SpTree::Parallel(Box::new(a), Box::new(b))
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            SpTree::Leaf { .. } => 1,
            SpTree::Series(a, b) | SpTree::Parallel(a, b) => a.num_leaves() + b.num_leaves(),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&SpTree> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a SpTree, out: &mut Vec<&'a SpTree>) {
            match t {
                SpTree::Leaf { .. } => out.push(t),
                SpTree::Series(a, b) | SpTree::Parallel(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Makespans `T(v, λ)` for `λ = 0..=B` at every tree node, mirroring the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    pub values: Vec<Rational>,
    /// Parallel nodes: resource given to the left child at each `λ`.
    pub split: Vec<usize>,
    pub children: Vec<DpTable>,
}

fn table(tree: &SpTree, budget: usize) -> DpTable {
    match tree {
        SpTree::Leaf { job, .. } => DpTable {
            values: (0..=budget).map(|l| eval_job(job, l as u64)).collect(),
            split: Vec::new(),
            children: Vec::new(),
        },
        SpTree::Series(a, b) => {
            let ta = table(a, budget);
            let tb = table(b, budget);
            let values = ta.values.iter().zip(&tb.values).map(|(x, y)| x + y).collect();
            DpTable { values, split: Vec::new(), children: vec![ta, tb] }
        }
        SpTree::Parallel(a, b) => {
            let ta = table(a, budget);
            let tb = table(b, budget);
            let mut values = Vec::with_capacity(budget + 1);
            let mut split = Vec::with_capacity(budget + 1);
            for l in 0..=budget {
                let mut best = (ta.values[0].max(tb.values[l]), 0);
                for i in 1..=l {
                    let v = ta.values[i].max(tb.values[l - i]);
                    if v < best.0 {
                        best = (v, i);
                    }
                }
                values.push(best.0);
                split.push(best.1);
            }
            DpTable { values, split, children: vec![ta, tb] }
        }
    }
}

fn backtrack(tree: &SpTree, t: &DpTable, l: usize, out: &mut Vec<u64>) {
    match tree {
        SpTree::Leaf { .. } => out.push(l as u64),
        SpTree::Series(a, b) => {
            backtrack(a, &t.children[0], l, out);
            backtrack(b, &t.children[1], l, out);
        }
        SpTree::Parallel(a, b) => {
            let i = t.split[l];
            backtrack(a, &t.children[0], i, out);
            backtrack(b, &t.children[1], l - i, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpSolution {
    pub makespan: Rational,
    pub table: DpTable,
    /// Units routed through each leaf, in leaf order.
    pub allocation: Vec<u64>,
}

pub fn sp_min_makespan(tree: &SpTree, budget: u64) -> SpSolution {
    let t = table(tree, budget as usize);
    let mut allocation = Vec::with_capacity(tree.num_leaves());
    backtrack(tree, &t, budget as usize, &mut allocation);
    SpSolution { makespan: t.values[budget as usize], table: t, allocation }
}

/// Smallest `λ <= b_max` reaching `target`, or `None`.
pub fn sp_min_resource(tree: &SpTree, target: Rational, b_max: u64) -> Option<u64> {
    let t = table(tree, b_max as usize);
    t.values.iter().position(|v| *v <= target).map(|l| l as u64)
}

/// Per-arc flow of an allocation on the instance a recognised tree came from.
pub fn allocation_flow(tree: &SpTree, num_arcs: usize, allocation: &[u64]) -> Flow {
    let mut flow = vec![0; num_arcs];
    for (leaf, &x) in tree.leaves().into_iter().zip(allocation) {
        if let SpTree::Leaf { arc: Some(e), .. } = leaf {
            flow[*e] = x;
        }
    }
    flow
}

/// Two-terminal series-parallel reduction. Dummy arcs become constant-zero leaves.
pub fn sp_recognize(inst: &Instance) -> Result<SpTree> {
    inst.require_form(&[Form::ArcJobs, Form::TwoTupleArcJobs])?;
    let mut edges: Vec<Option<(usize, usize, SpTree)>> = inst
        .arcs
        .iter()
        .enumerate()
        .map(|(e, a)| Some((a.tail, a.head, SpTree::Leaf { job: a.job.clone(), arc: Some(e) })))
        .collect();
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..edges.len() {
            let Some((u, v, _)) = &edges[i] else { continue };
            let key = (*u, *v);
            if let Some(&j) = seen.get(&key) {
                let (_, _, b) = edges[i].take().unwrap();
                let (u, v, a) = edges[j].take().unwrap();
                edges[j] = Some((u, v, SpTree::parallel(a, b)));
                changed = true;
            } else {
                seen.insert(key, i);
            }
        }
        let n = inst.num_vertices();
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if let Some((u, v, _)) = e {
                outs[*u].push(i);
                ins[*v].push(i);
            }
        }
        for w in 0..n {
            if w == inst.source || w == inst.sink || ins[w].len() != 1 || outs[w].len() != 1 {
                continue;
            }
            let (i, j) = (ins[w][0], outs[w][0]);
            if edges[i].is_none() || edges[j].is_none() {
                continue;
            }
            let (u, _, a) = edges[i].take().unwrap();
            let (_, v, b) = edges[j].take().unwrap();
            edges[i] = Some((u, v, SpTree::series(a, b)));
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut alive: Vec<(usize, usize, SpTree)> = edges.into_iter().flatten().collect();
    if alive.len() == 1 && alive[0].0 == inst.source && alive[0].1 == inst.sink {
        Ok(alive.pop().unwrap().2)
    } else {
        Err(Error::NotSeriesParallel)
    }
}
