//! Numerical 3-dimensional matching through two bipartite matchers.

use rtt::generators::gen_numeric_3dm;
use rtt::oracle::brute_min_makespan;

fn main() {
    let cases: [(&[u64], &[u64], &[u64]); 3] =
        [(&[2], &[3], &[4]), (&[1, 2], &[2, 1], &[3, 3]), (&[1, 3], &[1, 1], &[1, 1])];
    for (a, b, c) in cases {
        let g = gen_numeric_3dm(a, b, c).unwrap();
        let best = brute_min_makespan(&g.instance, g.budget).unwrap();
        println!(
            "A={a:?} B={b:?} C={c:?}: target {} matching={:?} OPT={} ({})",
            g.target, g.expected, best.makespan, g.provenance
        );
    }
    println!("{:?}", gen_numeric_3dm(&[1, 2], &[1, 2], &[1, 2]).unwrap_err());
}
