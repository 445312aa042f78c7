//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{family_corpus, random_formula, random_sp_tree, rng, sp_instance, step_corpus};
use rtt::approx::Relaxation;
use rtt::duration::{reducer_time, DurationFunction, Family};
use rtt::generators::{
    clause_event_times, composite_duration, gen_numeric_3dm, gen_partition, gen_sat_general, has_partition,
    serialized_finish, splitting_params, variable_gadget_times, WRITE_QUEUE_TABLE,
};
use rtt::instance::Instance;
use rtt::io::instance_to_json;
use rtt::oracle::brute_min_makespan;
use rtt::rational::{ceil_u64, int, ratio, Rational};
use rtt::series_parallel::{sp_min_makespan, SpTree};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn opt(inst: &Instance) -> Rational {
    brute_min_makespan(inst, inst.budget).unwrap().makespan
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{detail}; took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail} in {t:.2?}"))
    }
}

const K: bool = true;
const B: bool = false;

#[rustfmt::skip]
const GOLDEN: [(bool, u64, u64, i128); 50] = [
    (K, 9, 3, 6), (K, 9, 7, 6), (B, 8, 4, 5), (K, 1, 5, 1), (B, 1, 4, 1),
    (B, 3, 2, 3), (K, 64, 8, 16), (K, 64, 64, 16), (B, 64, 32, 8), (B, 64, 64, 8),
    (K, 2, 2, 2), (B, 2, 2, 2), (K, 4, 2, 4), (B, 4, 2, 4), (K, 63, 7, 16),
    (B, 63, 16, 9), (B, 20, 12, 7), (K, 10, 8, 7), (K, 47, 37, 14), (K, 28, 1, 28),
    (K, 56, 26, 15), (K, 31, 5, 12), (B, 8, 1, 8), (K, 8, 6, 6), (K, 29, 1, 29),
    (K, 38, 26, 13), (K, 16, 9, 8), (K, 14, 9, 8), (K, 48, 6, 14), (K, 8, 3, 6),
    (B, 55, 49, 8), (B, 60, 37, 8), (B, 47, 19, 8), (K, 24, 22, 10), (K, 11, 9, 7),
    (B, 64, 43, 8), (B, 37, 4, 13), (K, 54, 10, 15), (B, 20, 15, 7), (B, 6, 5, 5),
    (K, 41, 21, 13), (B, 64, 58, 8), (K, 12, 4, 7), (B, 9, 0, 9), (B, 58, 18, 9),
    (B, 45, 1, 45), (B, 46, 10, 10), (K, 64, 7, 17), (K, 37, 8, 13), (K, 51, 25, 15),
];

fn duration_formulas() -> Outcome {
    let start = Instant::now();
    for &(kway, base, r, want) in &GOLDEN {
        let f = if kway { DurationFunction::KWay(base) } else { DurationFunction::RecursiveBinary(base) };
        let got = f.eval(r);
        if got != int(want) {
            return Err(format!("{f:?} at r={r}: got {got}, want {want}"));
        }
    }
    within(start, Duration::from_secs(1), format!("{} golden values", GOLDEN.len()))
}

fn relaxation_bound() -> Outcome {
    let start = Instant::now();
    let corpus = step_corpus(1, 500);
    for inst in &corpus {
        let r = Relaxation::new(inst, inst.budget).map_err(|e| e.to_string())?;
        let o = opt(inst);
        if r.solution.objective > o {
            return Err(format!("LP {} > OPT {o} on {inst:?}", r.solution.objective));
        }
    }
    within(start, Duration::from_secs(120), format!("{} instances, LP <= OPT", corpus.len()))
}

fn bicriteria_guarantee() -> Outcome {
    let start = Instant::now();
    let corpus = step_corpus(1, 500);
    let mut runs = 0;
    for inst in &corpus {
        let relax = Relaxation::new(inst, inst.budget).map_err(|e| e.to_string())?;
        for alpha in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let res = relax.bicriteria(alpha).map_err(|e| e.to_string())?;
            let cap = ceil_u64(&(res.lp_flow / (int(1) - alpha)));
            if res.resource_used > cap {
                return Err(format!("alpha {alpha}: flow {} > {cap}", res.resource_used));
            }
            if res.makespan() > res.lp_objective / alpha {
                return Err(format!("alpha {alpha}: makespan {} > LP/alpha", res.makespan()));
            }
            runs += 1;
        }
    }
    within(start, Duration::from_secs(120), format!("{runs} runs, 0 violations"))
}

fn family_approximations() -> Outcome {
    let start = Instant::now();
    let kway = family_corpus(2, 300, Family::KWay);
    let binary = family_corpus(3, 300, Family::RecursiveBinary);
    for inst in &kway {
        let res =
            Relaxation::new(inst, inst.budget).and_then(|r| r.kway_five()).map_err(|e| e.to_string())?;
        if res.resource_used > inst.budget || res.makespan() > int(5) * opt(inst) {
            return Err(format!("kway violation on {inst:?}"));
        }
    }
    for inst in &binary {
        let res =
            Relaxation::new(inst, inst.budget).and_then(|r| r.binary_four()).map_err(|e| e.to_string())?;
        if res.resource_used > inst.budget || res.makespan() > int(4) * opt(inst) {
            return Err(format!("binary violation on {inst:?}"));
        }
    }
    within(
        start,
        Duration::from_secs(300),
        format!("{} kway <= 5 OPT, {} binary <= 4 OPT", kway.len(), binary.len()),
    )
}

fn improved_bicriteria() -> Outcome {
    let start = Instant::now();
    let binary = family_corpus(3, 300, Family::RecursiveBinary);
    for inst in &binary {
        let res = Relaxation::new(inst, inst.budget)
            .and_then(|r| r.binary_improved())
            .map_err(|e| e.to_string())?;
        let cap = ceil_u64(&(ratio(4, 3) * res.lp_flow));
        if res.resource_used > cap {
            return Err(format!("flow {} > {cap} on {inst:?}", res.resource_used));
        }
        if res.makespan() > ratio(14, 5) * opt(inst) {
            return Err(format!("makespan {} > 14/5 OPT on {inst:?}", res.makespan()));
        }
    }
    within(start, Duration::from_secs(300), format!("{} instances, 0 violations", binary.len()))
}

fn per_call(tree: &SpTree, budget: u64) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let mut calls = 0u32;
        while start.elapsed() < Duration::from_millis(40) {
            std::hint::black_box(sp_min_makespan(tree, budget));
            calls += 1;
        }
        best = best.min(start.elapsed().as_secs_f64() / calls as f64);
    }
    best
}

fn series_parallel_exactness() -> Outcome {
    use rand::Rng;
    let mut r = rng(6);
    for i in 0..200 {
        let leaves = r.gen_range(1..=8);
        let budget = r.gen_range(0..=5);
        let tree = random_sp_tree(&mut r, leaves, 5);
        let inst = sp_instance(&tree, budget);
        let dp = sp_min_makespan(&tree, budget).makespan;
        let o = opt(&inst);
        if dp != o {
            return Err(format!("instance {i}: DP {dp} != OPT {o}"));
        }
    }
    let tree = random_sp_tree(&mut rng(60), 50, 256);
    let t: Vec<f64> = [64, 128, 256].iter().map(|&b| per_call(&tree, b)).collect();
    let ratios = [t[1] / t[0], t[2] / t[1]];
    let detail = format!("200 instances exact; B-doubling time ratios {:.2}, {:.2}", ratios[0], ratios[1]);
    if ratios.iter().all(|q| (2.5..=6.0).contains(q)) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gadget_certificates() -> Outcome {
    let mut r = rng(7);
    let (mut yes, mut no) = (0, 0);
    for i in 0..20 {
        let f = random_formula(&mut r, 1 + i % 4, 1 + i % 2);
        let g = gen_sat_general(&f).map_err(|e| e.to_string())?;
        let best = opt(&g.instance);
        let ok = match f.solve() {
            Some(_) => {
                yes += 1;
                best == int(1)
            }
            None => {
                no += 1;
                best >= int(2)
            }
        };
        if !ok {
            return Err(format!("formula {:?}: OPT {best}", f.clauses));
        }
    }
    let table: [([bool; 3], [i128; 3]); 8] = [
        ([true, true, true], [1, 1, 1]),
        ([false, true, true], [1, 1, 1]),
        ([true, false, true], [1, 1, 1]),
        ([true, true, false], [1, 1, 1]),
        ([false, false, true], [0, 1, 1]),
        ([false, true, false], [1, 0, 1]),
        ([true, false, false], [1, 1, 0]),
        ([false, false, false], [1, 1, 1]),
    ];
    for (a, want) in table {
        if clause_event_times(a).map_err(|e| e.to_string())? != want.map(int) {
            return Err(format!("clause table row {a:?}"));
        }
    }
    let sets: [&[u64]; 15] = [
        &[1, 1],
        &[1, 2],
        &[1, 2, 3],
        &[2, 2],
        &[1, 1, 1],
        &[3, 3],
        &[1, 4],
        &[2, 3, 5],
        &[1, 1, 2, 2],
        &[1, 2, 4],
        &[3, 1, 1, 2, 1],
        &[2, 2, 2],
        &[5, 1, 1, 1],
        &[4, 4, 2, 2],
        &[1, 3, 3, 5],
    ];
    let mut part_yes = 0;
    for s in sets {
        let g = gen_partition(s).map_err(|e| e.to_string())?;
        let answer = has_partition(s);
        part_yes += answer as usize;
        if (opt(&g.instance) <= g.target) != answer {
            return Err(format!("partition {s:?}"));
        }
    }
    let triples: [(&[u64], &[u64], &[u64]); 4] = [
        (&[2], &[3], &[4]),
        (&[1, 2], &[2, 1], &[3, 3]),
        (&[1, 3], &[1, 1], &[1, 1]),
        (&[1, 1], &[2, 4], &[3, 1]),
    ];
    for (a, b, c) in triples {
        let g = gen_numeric_3dm(a, b, c).map_err(|e| e.to_string())?;
        if (opt(&g.instance) == g.target) != g.expected.unwrap() {
            return Err(format!("3dm {a:?} {b:?} {c:?}"));
        }
    }
    Ok(format!(
        "sat {yes} yes / {no} no, clause table 8/8, partition {part_yes} yes / {} no, 3dm 4 cases",
        sets.len() - part_yes
    ))
}

fn splitting_timings() -> Outcome {
    let p = splitting_params(3, 2).map_err(|e| e.to_string())?;
    let x = p.x;
    if x != 21 {
        return Err(format!("x = {x}"));
    }
    let xi = x as i128;
    let mut checks = 0;
    for fam in [Family::KWay, Family::RecursiveBinary] {
        for k in [p.k, 2 * x, 8 * x] {
            let with = composite_duration(k, fam, 2).map_err(|e| e.to_string())?;
            let without = composite_duration(k, fam, 0).map_err(|e| e.to_string())?;
            if with != int((k / 2 + 4) as i128) || without != int((k + 2) as i128) {
                return Err(format!("{fam} composite {k}: {with} / {without}"));
            }
            checks += 2;
        }
        for value in [true, false] {
            let got = variable_gadget_times(x, fam, value).map_err(|e| e.to_string())?;
            let (early, late) = (int(5 * xi + 5), int(6 * xi + 3));
            let want = if value { [early, late, int(7 * xi + 12)] } else { [late, early, int(7 * xi + 12)] };
            if got != want {
                return Err(format!("{fam} variable {value}: {got:?}"));
            }
            checks += 3;
        }
    }
    let (a, b) = (int(6 * xi + 4), int(5 * xi + 6));
    for (assignment, row) in WRITE_QUEUE_TABLE {
        let side = |v: bool, positive: bool| if v == positive { int(5 * xi + 5) } else { int(6 * xi + 3) };
        let [va, vb, vc] = assignment;
        let writers = [
            [side(va, false), side(vb, false), side(vc, true)],
            [side(va, false), side(vb, true), side(vc, false)],
            [side(va, true), side(vb, false), side(vc, false)],
        ];
        for (w, (uses_a, off)) in writers.iter().zip(row) {
            let want = if uses_a { a } else { b } + int(off);
            if serialized_finish(w) != want {
                return Err(format!("write queue {assignment:?}"));
            }
            checks += 1;
        }
    }
    Ok(format!("x=21, {checks} closed-form values exact"))
}

fn reducer_formula() -> Outcome {
    for n in 1..=1024u64 {
        for h in 0..=10u32 {
            let want = n.div_ceil(1 << h) + h as u64 + 1;
            if reducer_time(n, h) != want {
                return Err(format!("n={n} h={h}"));
            }
        }
    }
    for n in 1..=1u64 << 16 {
        let lg = 63 - n.leading_zeros();
        if reducer_time(n, lg) > 2 * lg as u64 + 3 {
            return Err(format!("log bound fails at n={n}"));
        }
    }
    Ok("1024 x 11 values, log bound to n=65536".into())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let put = |name: &str, inst: &Instance| {
        let p = dir.path().join(name);
        std::fs::write(&p, instance_to_json(inst)).unwrap();
        p.to_string_lossy().into_owned()
    };
    let step = put("step.json", &step_corpus(10, 1)[0]);
    let kway = put("kway.json", &family_corpus(11, 1, Family::KWay)[0]);
    let binary = put("binary.json", &family_corpus(12, 1, Family::RecursiveBinary)[0]);
    let sp = put("sp.json", &sp_instance(&random_sp_tree(&mut rng(13), 6, 3), 3));
    let commands: Vec<Vec<&str>> = vec![
        vec!["solve", &step, "--algo", "bicriteria", "--alpha", "1/3"],
        vec!["solve", &step, "--algo", "exact"],
        vec!["solve", &kway, "--algo", "kway5"],
        vec!["solve", &binary, "--algo", "binary4"],
        vec!["solve", &binary, "--algo", "binary-improved"],
        vec!["solve", &sp, "--algo", "sp"],
        vec!["gen", "sat", "--formula", "1,-2,3;-1,2,3"],
        vec!["gen", "sat-split", "--formula", "1,2,3", "--family", "kway"],
        vec!["gen", "partition", "--set", "1,2,3"],
        vec!["gen", "3dm", "--a", "1,2", "--b", "2,1", "--c", "3,3"],
        vec!["gen", "mm", "--n", "4", "--h", "1"],
    ];
    for args in &commands {
        let runs: Vec<_> =
            (0..3).map(|_| Command::new(env!("CARGO_BIN_EXE_rtt")).args(args).output().unwrap()).collect();
        if runs[0].status.code() != Some(0) {
            return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&runs[0].stderr)));
        }
        if runs.iter().any(|o| o.stdout != runs[0].stdout) {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!("{} commands x 3 runs byte-identical", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("duration formulas", duration_formulas),
        ("relaxation bound", relaxation_bound),
        ("bi-criteria guarantee", bicriteria_guarantee),
        ("5-approx kway and 4-approx binary", family_approximations),
        ("improved bi-criteria", improved_bicriteria),
        ("series-parallel DP", series_parallel_exactness),
        ("gadget certificates", gadget_certificates),
        ("splitting gadget timings", splitting_timings),
        ("reducer formula", reducer_formula),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(d) => println!("criterion {}: PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {d}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
