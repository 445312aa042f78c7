//! Resource reuse along a path: one unit speeds up both jobs of a chain.

use rtt::oracle::{brute_min_makespan, brute_min_resource};
use rtt::rational::int;
use rtt::{evaluate, Builder, DurationFunction, Form};

fn main() {
    let job = || Some(DurationFunction::step_int(&[(0, 3), (1, 0)]).unwrap());
    let mut b = Builder::new();
    b.arc("s", "a", job());
    b.arc("a", "t", job());
    b.arc("s", "t", Some(DurationFunction::step_int(&[(0, 2), (1, 1)]).unwrap()));
    let inst = b.finish(Form::ArcJobs, "s", "t", 2, None).unwrap();

    for budget in 0..=2 {
        let best = brute_min_makespan(&inst, budget).unwrap();
        println!("budget {budget}: makespan {} flow {:?}", best.makespan, best.flow);
    }
    println!("schedule for [1, 1, 0]: {:?}", evaluate(&inst, &[1, 1, 0]).unwrap().event_time);
    println!("least budget for makespan 1: {:?}", brute_min_resource(&inst, int(1), 4).unwrap());
}
