//! 1-in-3SAT gadgets for the splitting families, built as race DAGs.
//!
//! A composite node of order `k` is `P.in -> P.m1..P.mk -> P.out`; `P.out`
//! has fan-in `k`, so the composite takes `k + 2` without resource and
//! `k/2 + 4` with two units.

use std::collections::{HashMap, HashSet};

use super::{Formula, GeneratedInstance};
use crate::duration::Family;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::race::{build_race_instance, CellDag};
use crate::rational::{int, Rational};
use crate::schedule::evaluate;
use crate::transform::activity_on_arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitParams {
    /// Smallest power of two `>= n + 3m`.
    pub k: u64,
    /// `log2 k`, the height of the sink reduction tree.
    pub y: u64,
    pub x: u64,
    pub target: u64,
    pub budget: u64,
}

pub fn splitting_params(n: usize, m: usize) -> Result<SplitParams> {
    let terminals = n + 3 * m;
    if terminals == 0 {
        return Err(Error::InvalidParameter("formula has no variables or clauses".into()));
    }
    let k = (terminals as u64).next_power_of_two();
    let y = k.trailing_zeros() as u64;
    let x = (2 * y + 13).max(8);
    Ok(SplitParams { k, y, x, target: 7 * x + 2 * y + 12, budget: (2 * n + 4 * m) as u64 })
}

#[derive(Default)]
struct Cells {
    dag: CellDag,
    ids: HashMap<String, usize>,
    edges: HashSet<(usize, usize)>,
}

impl Cells {
    fn node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.ids.get(name) {
            return i;
        }
        let i = self.dag.cell(name);
        self.ids.insert(name.to_string(), i);
        i
    }

    fn edge(&mut self, a: &str, b: &str) {
        let (u, v) = (self.node(a), self.node(b));
        if self.edges.insert((u, v)) {
            self.dag.edge(u, v);
        }
    }

    /// Composite `name` of order `k` entered from `from` (if any).
    fn composite(&mut self, name: &str, k: u64, from: Option<&str>) -> String {
        let entry = format!("{name}.in");
        let exit = format!("{name}.out");
        self.node(&entry);
        if let Some(f) = from {
            self.edge(f, &entry);
        }
        for i in 1..=k {
            let mid = format!("{name}.m{i}");
            self.edge(&entry, &mid);
            self.edge(&mid, &exit);
        }
        exit
    }

    /// Chain of `len` unit cells after `from` (or starting fresh); the last
    /// one is named `last`.
    fn chain(&mut self, prefix: &str, len: u64, from: Option<&str>, last: &str) -> String {
        let mut prev = from.map(str::to_string);
        for i in 1..=len {
            let name = if i == len { last.to_string() } else { format!("{prefix}.{i}") };
            self.node(&name);
            if let Some(p) = &prev {
                self.edge(p, &name);
            }
            prev = Some(name);
        }
        prev.unwrap_or_else(|| from.unwrap_or(last).to_string())
    }
}

/// Adds variable gadget `Vi`; returns its terminal `Vi.7`.
fn variable(c: &mut Cells, i: usize, x: u64) -> String {
    let p = |k: &str| format!("V{i}.{k}");
    c.node(&p("1"));
    let o2 = c.composite(&p("2"), 2 * x, Some(&p("1")));
    let o3 = c.composite(&p("3"), 2 * x, Some(&p("1")));
    c.chain(&p("c5"), 4 * x, Some(&o2), &p("5"));
    c.chain(&p("c6"), 4 * x, Some(&o3), &p("6"));
    c.edge(&o2, &p("r2"));
    c.edge(&o3, &p("r3"));
    c.edge(&p("r2"), &p("j"));
    c.edge(&p("r3"), &p("j"));
    let o4 = c.composite(&p("4"), 8 * x, Some(&p("j")));
    let end = c.chain(&p("c7"), x - 1, Some(&o4), &p("c7.end"));
    c.edge(&end, &p("7"));
    c.edge(&p("5"), &p("7"));
    c.edge(&p("6"), &p("7"));
    p("7")
}

/// Variable vertex finishing early when literal `lit` is true (`positive`)
/// or false (`!positive`).
fn lit_vertex(lit: i32, positive: bool) -> String {
    let i = lit.unsigned_abs();
    if (lit > 0) == positive {
        format!("V{i}.5")
    } else {
        format!("V{i}.6")
    }
}

/// Adds clause gadget `Cj`; returns its terminals `Cj.11..13`.
fn clause(c: &mut Cells, j: usize, lits: &[i32; 3], x: u64) -> Vec<String> {
    let p = |k: &str| format!("C{j}.{k}");
    c.node(&p("1"));
    let o2 = c.composite(&p("2"), 8 * x, Some(&p("1")));
    let o3 = c.composite(&p("3"), 8 * x, Some(&p("1")));
    c.edge(&o2, &p("4"));
    c.edge(&o3, &p("4"));
    let [a, b, d] = *lits;
    let wiring = [
        [lit_vertex(a, false), lit_vertex(b, false), lit_vertex(d, true)],
        [lit_vertex(a, false), lit_vertex(b, true), lit_vertex(d, false)],
        [lit_vertex(a, true), lit_vertex(b, false), lit_vertex(d, false)],
    ];
    let mut out = Vec::new();
    for k in 0..3 {
        let node = p(&(5 + k).to_string());
        c.edge(&p("4"), &node);
        for src in &wiring[k] {
            c.edge(src, &node);
        }
        let o = c.composite(&p(&(8 + k).to_string()), 2 * x, Some(&node));
        let term = p(&(11 + k).to_string());
        c.edge(&o, &term);
        let end = c.chain(&p(&format!("w{}", 11 + k)), 7 * x + 11, None, &p(&format!("w{}.end", 11 + k)));
        c.edge(&end, &term);
        out.push(term);
    }
    out
}

/// Pairs terminals level by level until one remains; returns the root.
fn reduction_tree(c: &mut Cells, mut level: Vec<String>) -> String {
    let mut depth = 0;
    while level.len() > 1 {
        let mut next = Vec::new();
        for (i, pair) in level.chunks(2).enumerate() {
            let name = if level.len() <= 2 { "t".to_string() } else { format!("R{depth}.{i}") };
            for s in pair {
                c.edge(s, &name);
            }
            next.push(name);
        }
        level = next;
        depth += 1;
    }
    level.pop().unwrap()
}

pub fn gen_sat_splitting(formula: &Formula, family: Family) -> Result<GeneratedInstance> {
    let f = Formula::new(formula.num_vars, formula.clauses.clone())?;
    let params = splitting_params(f.num_vars, f.clauses.len())?;
    let instance = splitting_instance(&f, family, params.x)?;
    let mut instance = instance;
    instance.budget = params.budget;
    instance.target = Some(int(params.target as i128));
    Ok(GeneratedInstance {
        instance,
        budget: params.budget,
        target: int(params.target as i128),
        provenance: format!(
            "sat-split: family={family} n={} m={} k={} y={} x={}",
            f.num_vars,
            f.clauses.len(),
            params.k,
            params.y,
            params.x
        ),
        expected: None,
    })
}

fn splitting_instance(f: &Formula, family: Family, x: u64) -> Result<Instance> {
    let mut c = Cells::default();
    let mut terminals = Vec::new();
    for i in 1..=f.num_vars {
        terminals.push(variable(&mut c, i, x));
    }
    for (j, cl) in f.clauses.iter().enumerate() {
        terminals.extend(clause(&mut c, j + 1, cl, x));
    }
    reduction_tree(&mut c, terminals);
    build_race_instance(&c.dag, family)
}

/// Units routed along a node path of a node-form instance, lifted to its
/// activity-on-arc form; returns the finish time of every named node.
fn finish_times(inst: &Instance, paths: &[(Vec<String>, u64)]) -> Result<HashMap<String, Rational>> {
    let (arcs, trace) = activity_on_arc(inst)?;
    let index: HashMap<&str, usize> =
        inst.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut flow = vec![0u64; arcs.arcs.len()];
    let mut total = 0;
    for (path, units) in paths {
        total += units;
        for (k, name) in path.iter().enumerate() {
            let v = *index
                .get(name.as_str())
                .ok_or_else(|| Error::InvalidParameter(format!("unknown node {name}")))?;
            flow[trace.node_arc[v]] += units;
            if let Some(next) = path.get(k + 1) {
                let w = index[next.as_str()];
                let e = inst
                    .arcs
                    .iter()
                    .position(|a| a.tail == v && a.head == w)
                    .ok_or_else(|| Error::InvalidParameter(format!("no edge {name} -> {next}")))?;
                flow[trace.edge_arc[e]] += units;
            }
        }
    }
    let s = evaluate(&arcs.with_budget(total), &flow)?;
    Ok(inst
        .vertices
        .iter()
        .enumerate()
        .map(|(v, name)| {
            let a = &arcs.arcs[trace.node_arc[v]];
            (name.clone(), s.event_time[a.head])
        })
        .collect())
}

/// Time from entering a composite node of order `k` to its finish, with
/// `units` resource routed through it.
pub fn composite_duration(k: u64, family: Family, units: u64) -> Result<Rational> {
    let mut c = Cells::default();
    c.node("pre");
    c.composite("P", k, Some("pre"));
    let inst = build_race_instance(&c.dag, family)?;
    let path: Vec<String> = ["pre", "P.in", "P.m1", "P.out"].iter().map(|s| s.to_string()).collect();
    let t = finish_times(&inst, &[(path, units)])?;
    Ok(t["P.out"] - t["pre"])
}

/// Finish times of `V1.5`, `V1.6`, `V1.7` in a lone variable gadget with two
/// units sent down the side chosen by `value`.
pub fn variable_gadget_times(x: u64, family: Family, value: bool) -> Result<[Rational; 3]> {
    let mut c = Cells::default();
    variable(&mut c, 1, x);
    let inst = build_race_instance(&c.dag, family)?;
    let side = if value { "2" } else { "3" };
    let mut path: Vec<String> = vec!["V1.1".into()];
    path.extend([format!("V1.{side}.in"), format!("V1.{side}.m1"), format!("V1.{side}.out")]);
    path.extend([format!("V1.r{side}"), "V1.j".into()]);
    path.extend(["V1.4.in".into(), "V1.4.m1".into(), "V1.4.out".into()]);
    for i in 1..x - 1 {
        path.push(format!("V1.c7.{i}"));
    }
    path.push("V1.c7.end".into());
    path.push("V1.7".into());
    let t = finish_times(&inst, &[(path, 2)])?;
    Ok([t["V1.5"], t["V1.6"], t["V1.7"]])
}

/// Completion of serialized unit writes: writer `i` may start once ready,
/// one write at a time.
pub fn serialized_finish(ready: &[Rational]) -> Rational {
    let mut r = ready.to_vec();
    r.sort();
    let mut done: Option<Rational> = None;
    for t in r {
        let start = match done {
            Some(d) if d > t => d,
            _ => t,
        };
        done = Some(start + int(1));
    }
    done.unwrap_or(int(0))
}

/// Write-queue finish of `C5..C7` per assignment of `(Vi, Vj, Vk)` for the
/// clause `(Vi, Vj, Vk)`, as `(uses a, offset)` with `a = 6x+4`, `b = 5x+6`.
pub type WriteQueueRow = ([bool; 3], [(bool, i128); 3]);

pub const WRITE_QUEUE_TABLE: [WriteQueueRow; 8] = [
    ([true, true, true], [(true, 1), (true, 1), (true, 1)]),
    ([false, true, true], [(true, 0), (true, 0), (true, 2)]),
    ([true, false, true], [(true, 0), (true, 2), (true, 0)]),
    ([true, true, false], [(true, 2), (true, 0), (true, 0)]),
    ([false, false, true], [(false, 2), (true, 1), (true, 1)]),
    ([false, true, false], [(true, 1), (false, 2), (true, 1)]),
    ([true, false, false], [(true, 1), (true, 1), (false, 2)]),
    ([false, false, false], [(true, 0), (true, 0), (true, 0)]),
];
