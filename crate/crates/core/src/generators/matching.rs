//! Numerical 3-dimensional matching.
//!
//! Each `a_i` is a job needing `n` units. A matcher then routes one unit from
//! every input to every output; for each output `j` exactly one input fails
//! to pay its `{<0,M>, <1,0>}` arc into `j`, which picks a permutation and
//! delays output `j` by `M` after that input. Two matchers chain `A` to `B`
//! to `C`, so the makespan is `2M + max(a + b + c)` over the chosen triples.

use super::GeneratedInstance;
use crate::duration::DurationFunction;
use crate::error::{Error, Result};
use crate::instance::{Builder, Form};
use crate::rational::int;

fn job(pairs: &[(u64, u64)]) -> Option<DurationFunction> {
    let p: Vec<(u64, i128)> = pairs.iter().map(|&(r, t)| (r, t as i128)).collect();
    Some(DurationFunction::step_int(&p).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Whether permutations `p`, `q` exist with `a[i] + b[p[i]] + c[q[i]]` constant.
pub fn has_numeric_matching(a: &[u64], b: &[u64], c: &[u64]) -> bool {
    let n = a.len();
    if b.len() != n || c.len() != n || n == 0 {
        return false;
    }
    let total: u64 = a.iter().chain(b).chain(c).sum();
    if !total.is_multiple_of(n as u64) {
        return false;
    }
    let t = total / n as u64;
    let perms = permutations(n);
    perms.iter().any(|p| perms.iter().any(|q| (0..n).all(|i| a[i] + b[p[i]] + c[q[i]] == t)))
}

struct Matcher<'a> {
    tag: &'a str,
    n: usize,
    big: u64,
    inf: u64,
}

impl Matcher<'_> {
    fn wire(&self, b: &mut Builder, inputs: &[String], outputs: &[String]) {
        let n = self.n as u64;
        for (i, x) in inputs.iter().enumerate() {
            let y = format!("{}.y{}", self.tag, i + 1);
            for j in 0..self.n {
                let yij = format!("{}.y{}.{}", self.tag, i + 1, j + 1);
                b.arc(x, &yij, job(&[(0, self.inf), (1, 0)]));
                b.dummy(&yij, &y);
                b.arc(&yij, &format!("{}.z{}", self.tag, j + 1), job(&[(0, self.big), (1, 0)]));
            }
            b.arc(&y, &outputs[i], job(&[(0, self.inf), (1, 0)]));
        }
        for (j, out) in outputs.iter().enumerate() {
            let z = format!("{}.z{}", self.tag, j + 1);
            if n == 1 {
                b.dummy(&z, out);
            } else {
                b.arc(&z, out, job(&[(0, self.inf), (n - 1, 0)]));
            }
        }
    }
}

pub fn gen_numeric_3dm(a: &[u64], bs: &[u64], c: &[u64]) -> Result<GeneratedInstance> {
    let n = a.len();
    if n == 0 || bs.len() != n || c.len() != n {
        return Err(Error::InvalidParameter(format!(
            "sets must be non-empty and equal in size, got {}, {}, {}",
            a.len(),
            bs.len(),
            c.len()
        )));
    }
    let total: u64 = a.iter().chain(bs).chain(c).sum();
    if !total.is_multiple_of(n as u64) {
        return Err(Error::InvalidParameter(format!("sum {total} is not divisible by {n}")));
    }
    let t = total / n as u64;
    let max = |v: &[u64]| *v.iter().max().unwrap();
    let big = max(a) + max(bs) + max(c) + 1;
    let matchers = 2 * (n * n) as u64;
    let inf = 1 + total + matchers * big;
    let nn = n as u64;

    let names = |p: &str| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let (av, bv, bpv, cv) = (names("a"), names("b"), names("bp"), names("c"));
    let mut b = Builder::new();
    b.vertex("s");
    for i in 0..n {
        b.arc("s", &av[i], job(&[(0, inf), (nn, a[i])]));
    }
    Matcher { tag: "m1", n, big, inf }.wire(&mut b, &av, &bv);
    for j in 0..n {
        b.arc(&bv[j], &bpv[j], job(&[(0, inf), (nn, bs[j])]));
    }
    Matcher { tag: "m2", n, big, inf }.wire(&mut b, &bpv, &cv);
    for k in 0..n {
        b.arc(&cv[k], "t", job(&[(0, inf), (nn, c[k])]));
    }
    let budget = nn * nn;
    let target = int((2 * big + t) as i128);
    let instance = b.finish(Form::ArcJobs, "s", "t", budget, Some(target))?;
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    Ok(GeneratedInstance {
        instance,
        budget,
        target,
        provenance: format!("3dm: A={} B={} C={} M={big}", list(a), list(bs), list(c)),
        expected: Some(has_numeric_matching(a, bs, c)),
    })
}
