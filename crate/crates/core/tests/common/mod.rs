#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtt::duration::{DurationFunction, Family, Tuple};
use rtt::generators::Formula;
use rtt::instance::{Builder, Form, Instance};
use rtt::rational::ratio;
use rtt::series_parallel::SpTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_step(rng: &mut ChaCha8Rng, max_tuples: usize, max_resource: u64) -> DurationFunction {
    let n = rng.gen_range(1..=max_tuples.min(max_resource as usize + 1));
    let mut resources = vec![0u64];
    while resources.len() < n {
        let r = rng.gen_range(1..=max_resource);
        if !resources.contains(&r) {
            resources.push(r);
        }
    }
    resources.sort();
    let mut t = ratio(rng.gen_range(1..=20), if rng.gen_bool(0.2) { 2 } else { 1 });
    let mut tuples = Vec::new();
    for r in resources {
        tuples.push(Tuple::new(r, t));
        t *= ratio(rng.gen_range(0..=3), 4);
    }
    DurationFunction::step(tuples).unwrap()
}

/// Random DAG on `2..=max_vertices` vertices with `s` first and `t` last.
/// Every inner vertex gets one arc from an earlier and one to a later vertex.
pub fn random_dag(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_jobs: usize,
    mut job: impl FnMut(&mut ChaCha8Rng) -> DurationFunction,
    budget: u64,
) -> Instance {
    let n = rng.gen_range(2..=max_vertices);
    let name = |v: usize| match v {
        0 => "s".to_string(),
        v if v == n - 1 => "t".to_string(),
        v => format!("v{v}"),
    };
    let mut pairs = Vec::new();
    for v in 1..n - 1 {
        pairs.push((rng.gen_range(0..v), v));
        pairs.push((v, rng.gen_range(v + 1..n)));
    }
    if n == 2 || rng.gen_bool(0.3) {
        pairs.push((0, n - 1));
    }
    let extra = rng.gen_range(0..=max_jobs / 2);
    for _ in 0..extra {
        let u = rng.gen_range(0..n - 1);
        pairs.push((u, rng.gen_range(u + 1..n)));
    }
    let mut b = Builder::new();
    for v in 0..n {
        b.vertex(&name(v));
    }
    let mut jobs = 0;
    for (u, v) in pairs {
        if jobs < max_jobs && rng.gen_bool(0.8) {
            jobs += 1;
            b.arc(&name(u), &name(v), Some(job(rng)));
        } else {
            b.dummy(&name(u), &name(v));
        }
    }
    b.finish(Form::ArcJobs, "s", "t", budget, None).unwrap()
}

/// ArcJobs instances with at most 8 jobs of at most 3 tuples, budget <= 4.
pub fn step_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let budget = r.gen_range(0..=4);
            random_dag(&mut r, 6, 8, |g| random_step(g, 3, 4), budget)
        })
        .collect()
}

/// Single-family instances with at most 6 jobs of base <= 16, budget <= 6.
pub fn family_corpus(seed: u64, count: usize, family: Family) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let budget = r.gen_range(0..=6);
            random_dag(&mut r, 5, 6, |g| family.with_base(g.gen_range(1..=16)), budget)
        })
        .collect()
}

pub fn random_sp_tree(rng: &mut ChaCha8Rng, leaves: usize, max_resource: u64) -> SpTree {
    if leaves <= 1 {
        return SpTree::leaf(random_step(rng, 3, max_resource));
    }
    let left = rng.gen_range(1..leaves);
    let a = random_sp_tree(rng, left, max_resource);
    let b = random_sp_tree(rng, leaves - left, max_resource);
    if rng.gen_bool(0.5) {
        SpTree::series(a, b)
    } else {
        SpTree::parallel(a, b)
    }
}

/// Instance realising `tree` between `s` and `t`, one arc per leaf.
pub fn sp_instance(tree: &SpTree, budget: u64) -> Instance {
    fn build(b: &mut Builder, t: &SpTree, u: &str, v: &str, fresh: &mut usize) {
        match t {
            SpTree::Leaf { job, .. } => {
                b.arc(u, v, job.clone());
            }
            SpTree::Series(x, y) => {
                *fresh += 1;
                let m = format!("m{fresh}");
                build(b, x, u, &m, fresh);
                build(b, y, &m, v, fresh);
            }
            SpTree::Parallel(x, y) => {
                build(b, x, u, v, fresh);
                build(b, y, u, v, fresh);
            }
        }
    }
    let mut b = Builder::new();
    b.vertex("s");
    b.vertex("t");
    build(&mut b, tree, "s", "t", &mut 0);
    b.finish(Form::ArcJobs, "s", "t", budget, None).unwrap()
}

pub fn single_arc(pairs: &[(u64, i128)]) -> Instance {
    let mut b = Builder::new();
    b.arc("s", "t", Some(DurationFunction::step_int(pairs).unwrap()));
    b.finish(Form::ArcJobs, "s", "t", 0, None).unwrap()
}

pub fn random_formula(r: &mut ChaCha8Rng, n: usize, m: usize) -> Formula {
    let clauses = (0..m)
        .map(|_| {
            let mut c = [0i32; 3];
            for l in &mut c {
                let v = r.gen_range(1..=n as i32);
                *l = if r.gen_bool(0.5) { v } else { -v };
            }
            c
        })
        .collect();
    Formula::new(n, clauses).unwrap()
}
