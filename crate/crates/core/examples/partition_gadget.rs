//! Partition as a scheduling instance: makespan B/2 iff the set splits evenly.

use rtt::generators::gen_partition;
use rtt::oracle::brute_min_makespan;

fn main() {
    for set in [&[1, 2, 3][..], &[1, 2], &[2, 3, 5], &[1, 4]] {
        let g = gen_partition(set).unwrap();
        let best = brute_min_makespan(&g.instance, g.budget).unwrap();
        println!("{set:?}: B={} T={} partition={:?} OPT={}", g.budget, g.target, g.expected, best.makespan);
    }
}
