//! The general 1-in-3SAT gadget: the optimum is 1 exactly when the formula is satisfiable.

use rtt::generators::{clause_event_times, gen_sat_general, satisfying_flow, Formula};
use rtt::oracle::brute_min_makespan;
use rtt::schedule::evaluate;

fn main() {
    for text in ["1,-2,3;-1,2,3", "1,1,1"] {
        let f = Formula::parse(text).unwrap();
        let g = gen_sat_general(&f).unwrap();
        let best = brute_min_makespan(&g.instance, g.budget).unwrap();
        println!("{text}: B={} T={} satisfiable={:?} OPT={}", g.budget, g.target, g.expected, best.makespan);
        if let Some(a) = f.solve() {
            let flow = satisfying_flow(&f, &g.instance, &a);
            println!("  assignment {a:?} gives makespan {}", evaluate(&g.instance, &flow).unwrap().makespan);
        }
    }
    for a in [[true, true, true], [false, false, true], [false, false, false]] {
        println!("clause (1,2,3) under {a:?}: C5..C7 at {:?}", clause_event_times(a).unwrap());
    }
}
