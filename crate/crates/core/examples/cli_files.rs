//! Instance, flow and certificate files as the command-line tool reads and writes them.

use rtt::generators::gen_partition;
use rtt::io::{certificate_to_json, flow_to_json, instance_from_json, instance_to_json, Certificate};
use rtt::oracle::brute_min_makespan;

fn main() {
    let g = gen_partition(&[1, 1]).unwrap();
    let text = instance_to_json(&g.instance);
    print!("{text}");
    assert_eq!(instance_from_json(&text).unwrap(), g.instance);
    print!("{}", certificate_to_json(&Certificate::from(&g)));
    print!("{}", flow_to_json(&brute_min_makespan(&g.instance, g.budget).unwrap().flow));
}
