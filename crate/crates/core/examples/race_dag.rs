//! A histogram kernel as a race DAG: eight workers write one shared counter.

use rtt::duration::Family;
use rtt::oracle::brute_min_makespan;
use rtt::race::{build_race_instance, CellDag};
use rtt::schedule::zero_resource_makespan;
use rtt::transform::activity_on_arc;

fn main() {
    let mut dag = CellDag::new();
    let counter = dag.cell("counter");
    let report = dag.cell("report");
    for i in 0..8 {
        let w = dag.cell(format!("worker{i}"));
        dag.edge(w, counter);
    }
    dag.edge(counter, report);

    for family in [Family::KWay, Family::RecursiveBinary] {
        let nodes = build_race_instance(&dag, family).unwrap();
        let (arcs, _) = activity_on_arc(&nodes).unwrap();
        println!("{family}: {} vertices, {} arcs", arcs.num_vertices(), arcs.arcs.len());
        println!("  no resource: makespan {}", zero_resource_makespan(&arcs).unwrap());
        for budget in [2, 4] {
            let best = brute_min_makespan(&arcs, budget).unwrap();
            println!("  budget {budget}: makespan {}", best.makespan);
        }
    }
}
