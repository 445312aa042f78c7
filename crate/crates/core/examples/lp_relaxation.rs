//! The two-tuple expansion of a three-level job and its LP relaxation.

use rtt::lp::{build_lp, relax, write_lp};
use rtt::transform::two_tuple_expand;
use rtt::{Builder, DurationFunction, Form};

fn main() {
    let mut b = Builder::new();
    b.arc("s", "a", Some(DurationFunction::step_int(&[(0, 6), (1, 3), (3, 1)]).unwrap()));
    b.arc("a", "t", Some(DurationFunction::step_int(&[(0, 4), (2, 0)]).unwrap()));
    let inst = b.finish(Form::ArcJobs, "s", "t", 2, None).unwrap();

    let (expanded, _) = two_tuple_expand(&inst).unwrap();
    println!("expanded: {} vertices, {} arcs", expanded.num_vertices(), expanded.arcs.len());
    let sol = relax(&expanded, 2).unwrap();
    println!("LP objective {} using {} units", sol.objective, sol.source_outflow);
    print!("{}", write_lp(&build_lp(&expanded, 2).unwrap().lp));
}
