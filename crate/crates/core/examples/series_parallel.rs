//! Exact dynamic program on a series-parallel tree, and recognition from a graph.

use rtt::rational::int;
use rtt::series_parallel::{sp_min_makespan, sp_min_resource, sp_recognize, SpTree};
use rtt::{Builder, DurationFunction, Form};

fn main() {
    let job = |p: &[(u64, i128)]| DurationFunction::step_int(p).unwrap();
    let tree = SpTree::series(
        SpTree::parallel(SpTree::leaf(job(&[(0, 8), (2, 2)])), SpTree::leaf(job(&[(0, 5), (1, 3)]))),
        SpTree::leaf(job(&[(0, 4), (3, 1)])),
    );
    for budget in 0..=5 {
        let sol = sp_min_makespan(&tree, budget);
        println!("budget {budget}: makespan {} allocation {:?}", sol.makespan, sol.allocation);
    }
    println!("least budget for makespan 5: {:?}", sp_min_resource(&tree, int(5), 10));

    let mut b = Builder::new();
    b.arc("s", "a", Some(job(&[(0, 3), (1, 1)])));
    b.arc("a", "t", Some(job(&[(0, 3), (1, 1)])));
    b.arc("s", "t", Some(job(&[(0, 5), (2, 0)])));
    let inst = b.finish(Form::ArcJobs, "s", "t", 2, None).unwrap();
    let recognised = sp_recognize(&inst).unwrap();
    println!(
        "recognised {} leaves, makespan {}",
        recognised.num_leaves(),
        sp_min_makespan(&recognised, 2).makespan
    );
}
