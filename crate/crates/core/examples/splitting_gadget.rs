//! Timings of the splitting-family gadget pieces at x = 21.

use rtt::duration::Family;
use rtt::generators::{
    composite_duration, gen_sat_splitting, serialized_finish, splitting_params, variable_gadget_times,
    Formula,
};
use rtt::rational::int;

fn main() {
    let p = splitting_params(3, 2).unwrap();
    println!("k={} y={} x={} target={} budget={}", p.k, p.y, p.x, p.target, p.budget);
    for family in [Family::KWay, Family::RecursiveBinary] {
        for k in [p.k, 2 * p.x, 8 * p.x] {
            println!(
                "{family} composite order {k}: {} with 2 units, {} without",
                composite_duration(k, family, 2).unwrap(),
                composite_duration(k, family, 0).unwrap()
            );
        }
        for value in [true, false] {
            println!(
                "{family} variable {value}: V5, V6, V7 = {:?}",
                variable_gadget_times(p.x, family, value).unwrap()
            );
        }
    }
    let x = p.x as i128;
    println!(
        "write queue (5x+5, 6x+3, 6x+3) -> {}",
        serialized_finish(&[int(5 * x + 5), int(6 * x + 3), int(6 * x + 3)])
    );

    let f = Formula::parse("1,2,3;-1,2,-3").unwrap();
    let g = gen_sat_splitting(&f, Family::KWay).unwrap();
    println!("{}: {} vertices, {} jobs", g.provenance, g.instance.num_vertices(), g.instance.num_jobs());
}
