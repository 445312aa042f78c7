//! Step lists and the two splitting families, evaluated at a few resource levels.

use rtt::duration::{binary_height, kway_cap, reducer_time};
use rtt::DurationFunction;

fn main() {
    let step = DurationFunction::step_int(&[(0, 5), (2, 1)]).unwrap();
    for r in 0..=3 {
        println!("step {{<0,5>,<2,1>}} r={r}: {}", step.eval(r));
    }

    let kway = DurationFunction::KWay(9);
    println!("kway(9) cap {}", kway_cap(9));
    for r in [0, 1, 2, 3, 7] {
        println!("kway(9) r={r}: {}", kway.eval(r));
    }

    let binary = DurationFunction::RecursiveBinary(64);
    println!("binary(64) height {}", binary_height(64));
    for bp in binary.breakpoints() {
        println!("binary(64) breakpoint <{}, {}>", bp.resource, bp.time);
    }

    for h in 0..=4 {
        println!("reducer n=16 h={h}: {}", reducer_time(16, h));
    }
}
