//! The splitting-family roundings on the parallel matrix-multiply DAG.

use rtt::approx::{binary_four_approx, binary_improved_bicriteria, kway_five_approx};
use rtt::duration::Family;
use rtt::generators::gen_parallel_mm;
use rtt::oracle::brute_min_makespan;
use rtt::race::{build_race_instance, CellDag};
use rtt::transform::activity_on_arc;

fn main() {
    let (mm, _) = activity_on_arc(&gen_parallel_mm(8, 1).unwrap()).unwrap();
    for budget in [8, 64, 256] {
        let four = binary_four_approx(&mm, budget).unwrap();
        let improved = binary_improved_bicriteria(&mm, budget).unwrap();
        println!(
            "binary budget {budget}: 4-approx makespan {} ({} units), improved {} ({} units), LP {}",
            four.makespan(),
            four.resource_used,
            improved.makespan(),
            improved.resource_used,
            four.lp_objective
        );
    }

    let mut dag = CellDag::new();
    let sum = dag.cell("sum");
    for i in 0..16 {
        let x = dag.cell(format!("x{i}"));
        dag.edge(x, sum);
    }
    let (reduce, _) = activity_on_arc(&build_race_instance(&dag, Family::KWay).unwrap()).unwrap();
    for budget in [0, 2, 4] {
        let res = kway_five_approx(&reduce, budget).unwrap();
        let best = brute_min_makespan(&reduce, budget).unwrap().makespan;
        println!(
            "kway budget {budget}: makespan {} with {} units, LP {}, OPT {best}",
            res.makespan(),
            res.resource_used,
            res.lp_objective
        );
    }
}
