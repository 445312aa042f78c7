//! 1-in-3SAT gadgets with unit tradeoff arcs `{<0,1>, <1,0>}`.
//!
//! Variable `i`: `S -> Vi.1`, then `Vi.1 -> Vi.2` and `Vi.1 -> Vi.3` (both
//! tradeoff arcs) joining at `Vi.4`, then `Vi.4 -> Vi.5` (tradeoff) and on to
//! `T`. One unit through `Vi.2` leaves `Vi.2` at time 0 (TRUE); through
//! `Vi.3` leaves `Vi.3` at 0 (FALSE).
//!
//! Clause `j`: two tradeoff paths `Cj.1 -> Cj.2 -> Cj.4` and
//! `Cj.1 -> Cj.3 -> Cj.4`, then `Cj.4` feeds `Cj.5..7`, each closed by a
//! tradeoff arc to `Cj.8..10`. `Cj.5..7` also wait on the literal vertices,
//! so exactly one of them starts at 0 iff exactly one literal is true.

use std::collections::HashMap;

use super::{Formula, GeneratedInstance};
use crate::duration::DurationFunction;
use crate::error::Result;
use crate::instance::{Builder, Form, Instance};
use crate::rational::{int, Rational};
use crate::schedule::{evaluate, Flow};

fn unit() -> Option<DurationFunction> {
    Some(DurationFunction::step_int(&[(0, 1), (1, 0)]).unwrap())
}

fn v(i: usize, k: usize) -> String {
    format!("V{i}.{k}")
}

fn c(j: usize, k: usize) -> String {
    format!("C{j}.{k}")
}

/// Vertex that sits at time 0 when literal `lit` is true (`positive`) or
/// false (`!positive`).
fn lit_vertex(lit: i32, positive: bool) -> String {
    let i = lit.unsigned_abs() as usize;
    if (lit > 0) == positive {
        v(i, 2)
    } else {
        v(i, 3)
    }
}

/// Literal vertices feeding `Cj.5`, `Cj.6`, `Cj.7` for clause `[a, b, c]`.
pub fn literal_nodes(clause: &[i32; 3]) -> [[String; 3]; 3] {
    let [a, b, cc] = *clause;
    [
        [lit_vertex(a, false), lit_vertex(b, false), lit_vertex(cc, true)],
        [lit_vertex(a, false), lit_vertex(b, true), lit_vertex(cc, false)],
        [lit_vertex(a, true), lit_vertex(b, false), lit_vertex(cc, false)],
    ]
}

pub fn gen_sat_general(formula: &Formula) -> Result<GeneratedInstance> {
    let f = Formula::new(formula.num_vars, formula.clauses.clone())?;
    let n = f.num_vars;
    let m = f.clauses.len();
    let mut b = Builder::new();
    b.vertex("S");
    if n == 0 && m == 0 {
        b.dummy("S", "T");
        let instance = b.finish(Form::ArcJobs, "S", "T", 0, Some(int(0)))?;
        return Ok(GeneratedInstance {
            instance,
            budget: 0,
            target: int(0),
            provenance: "sat: empty formula".into(),
            expected: Some(true),
        });
    }
    for i in 1..=n {
        b.dummy("S", &v(i, 1));
        b.arc(&v(i, 1), &v(i, 2), unit());
        b.arc(&v(i, 1), &v(i, 3), unit());
        b.dummy(&v(i, 2), &v(i, 4));
        b.dummy(&v(i, 3), &v(i, 4));
        b.arc(&v(i, 4), &v(i, 5), unit());
        b.dummy(&v(i, 5), &v(i, 6));
        b.dummy(&v(i, 6), "T");
    }
    for (j0, clause) in f.clauses.iter().enumerate() {
        let j = j0 + 1;
        b.dummy("S", &c(j, 1));
        b.arc(&c(j, 1), &c(j, 2), unit());
        b.arc(&c(j, 2), &c(j, 4), unit());
        b.arc(&c(j, 1), &c(j, 3), unit());
        b.arc(&c(j, 3), &c(j, 4), unit());
        let lits = literal_nodes(clause);
        for k in 0..3 {
            b.dummy(&c(j, 4), &c(j, 5 + k));
            for src in &lits[k] {
                b.dummy_once(src, &c(j, 5 + k));
            }
            b.arc(&c(j, 5 + k), &c(j, 8 + k), unit());
            b.dummy(&c(j, 8 + k), "T");
        }
    }
    let budget = (n + 2 * m) as u64;
    let instance = b.finish(Form::ArcJobs, "S", "T", budget, Some(int(1)))?;
    let clauses: Vec<String> =
        f.clauses.iter().map(|c| c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")).collect();
    Ok(GeneratedInstance {
        instance,
        budget,
        target: int(1),
        provenance: format!("sat: n={n} m={m} formula={}", clauses.join(";")),
        expected: Some(f.solve().is_some()),
    })
}

fn arc_index(inst: &Instance) -> HashMap<(String, String), usize> {
    inst.arcs
        .iter()
        .enumerate()
        .map(|(e, a)| ((inst.vertices[a.tail].clone(), inst.vertices[a.head].clone()), e))
        .collect()
}

/// The flow encoding `assignment`: one unit per variable down its true side,
/// two units per clause through `Cj.2` and `Cj.3`, then into the two of
/// `Cj.5..7` that cannot start at 0.
pub fn satisfying_flow(formula: &Formula, inst: &Instance, assignment: &[bool]) -> Flow {
    let idx = arc_index(inst);
    let mut flow = vec![0u64; inst.arcs.len()];
    let mut path = |nodes: &[String]| {
        for w in nodes.windows(2) {
            flow[idx[&(w[0].clone(), w[1].clone())]] += 1;
        }
    };
    let s = "S".to_string();
    let t = "T".to_string();
    for i in 1..=formula.num_vars {
        let side = if assignment[i - 1] { 2 } else { 3 };
        path(&[s.clone(), v(i, 1), v(i, side), v(i, 4), v(i, 5), v(i, 6), t.clone()]);
    }
    for (j0, clause) in formula.clauses.iter().enumerate() {
        let j = j0 + 1;
        let lits = literal_nodes(clause);
        let zero = |k: usize| {
            lits[k].iter().all(|name| {
                let var: usize = name[1..name.find('.').unwrap()].parse().unwrap();
                let truth = assignment[var - 1];
                name.ends_with(".2") == truth
            })
        };
        let mut paid: Vec<usize> = (0..3).filter(|&k| !zero(k)).collect();
        paid.truncate(2);
        for k in 0..3 {
            if paid.len() < 2 && !paid.contains(&k) {
                paid.push(k);
            }
        }
        for (mid, k) in [(2, paid[0]), (3, paid[1])] {
            path(&[s.clone(), c(j, 1), c(j, mid), c(j, 4), c(j, 5 + k), c(j, 8 + k), t.clone()]);
        }
    }
    flow
}

/// Event times of `C1.5`, `C1.6`, `C1.7` for the single clause `(1, 2, 3)`
/// under a truth assignment, with the assignment's flow.
pub fn clause_event_times(assignment: [bool; 3]) -> Result<[Rational; 3]> {
    let f = Formula::new(3, vec![[1, 2, 3]])?;
    let g = gen_sat_general(&f)?;
    let flow = satisfying_flow(&f, &g.instance, &assignment);
    let s = evaluate(&g.instance, &flow)?;
    let at = |name: &str| s.event_time[g.instance.vertices.iter().position(|x| x == name).unwrap()];
    Ok([at("C1.5"), at("C1.6"), at("C1.7")])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_formula_sizes() {
        let f = Formula::parse("1,-2,3;-1,2,3").unwrap();
        let g = gen_sat_general(&f).unwrap();
        assert_eq!(g.budget, 7);
        assert_eq!(g.target, int(1));
        assert_eq!(g.expected, Some(true));
        let flow = satisfying_flow(&f, &g.instance, &[true, true, false]);
        assert_eq!(evaluate(&g.instance, &flow).unwrap().makespan, int(1));
    }

    #[test]
    fn empty_formula() {
        let g = gen_sat_general(&Formula::parse("").unwrap()).unwrap();
        assert_eq!((g.budget, g.target), (0, int(0)));
        assert_eq!(g.instance.arcs.len(), 1);
    }

    #[test]
    fn table_row_fft() {
        assert_eq!(clause_event_times([false, false, true]).unwrap(), [int(0), int(1), int(1)]);
    }
}
