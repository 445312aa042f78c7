//! Smallest flow covering per-arc lower bounds, showing reuse along paths.

use rtt::maxflow::{flow_value, min_flow_lower_bounds};

fn main() {
    // s=0, a=1, b=2, t=3
    let arcs = [(0, 1), (1, 3), (0, 2), (2, 3), (1, 2)];
    let lower = [2, 0, 0, 3, 0];
    let flow = min_flow_lower_bounds(4, 0, 3, &arcs, &lower).unwrap();
    println!("lower {lower:?}");
    println!("flow  {flow:?}");
    println!("value {}", flow_value(0, &arcs, &flow));
}
