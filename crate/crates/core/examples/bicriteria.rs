//! Alpha-rounding at three thresholds on a 1-in-3SAT gadget.

use rtt::approx::Relaxation;
use rtt::generators::{gen_sat_general, Formula};
use rtt::rational::ratio;

fn main() {
    let f = Formula::parse("1,-2,3;-1,2,3").unwrap();
    let g = gen_sat_general(&f).unwrap();
    let relax = Relaxation::new(&g.instance, g.budget).unwrap();
    println!("LP objective {} flow {}", relax.solution.objective, relax.solution.source_outflow);
    for alpha in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
        let res = relax.bicriteria(alpha).unwrap();
        println!(
            "alpha {alpha}: makespan {} with {} units (bounds {} x LP, {} x flow)",
            res.makespan(),
            res.resource_used,
            res.guarantee.makespan_factor,
            res.guarantee.resource_factor
        );
    }
}
