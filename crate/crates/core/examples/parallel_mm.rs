//! Reducer heights for the parallel matrix-multiply race DAG.

use rtt::duration::reducer_time;
use rtt::generators::gen_parallel_mm;
use rtt::schedule::zero_resource_makespan;
use rtt::transform::activity_on_arc;
use rtt::DurationFunction;

fn main() {
    let n = 8;
    for h in 0..=3 {
        let (inst, _) = activity_on_arc(&gen_parallel_mm(n, h).unwrap()).unwrap();
        let cell = DurationFunction::RecursiveBinary(n);
        println!(
            "n={n} h={h}: budget {}, reducer {}, cell with 2^h units {}, serial makespan {}",
            inst.budget,
            reducer_time(n, h),
            cell.eval(1 << h),
            zero_resource_makespan(&inst).unwrap()
        );
    }
}
