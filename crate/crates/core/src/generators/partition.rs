//! Partition encoded as two interleaved chains of item jobs.
//!
//! Item `i` with size `s` receives its own `s` units through a gate
//! `{<0,M>, <s,0>}` and must hand them back through a funnel of the same
//! shape, so its units serve exactly one of its two jobs: the top job or the
//! bottom job `{<0,s>, <s,0>}`. Top jobs form one chain and bottom jobs the
//! other; the slower chain is the makespan.

use super::GeneratedInstance;
use crate::duration::DurationFunction;
use crate::error::{Error, Result};
use crate::instance::{Builder, Form};
use crate::rational::ratio;

fn job(time: u64, units: u64) -> Option<DurationFunction> {
    Some(DurationFunction::step_int(&[(0, time as i128), (units, 0)]).unwrap())
}

pub fn has_partition(sizes: &[u64]) -> bool {
    let total: u64 = sizes.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &s in sizes {
        let s = s as usize;
        for v in (s..=half).rev() {
            reach[v] = reach[v] || reach[v - s];
        }
    }
    reach[half]
}

pub fn gen_partition(sizes: &[u64]) -> Result<GeneratedInstance> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("empty set".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidParameter("sizes must be positive".into()));
    }
    let total: u64 = sizes.iter().sum();
    let big = total / 2 + 1;
    let v = |i: usize, k: usize| format!("v{i}.{k}");
    let mut b = Builder::new();
    b.vertex("s");
    for (i0, &s) in sizes.iter().enumerate() {
        let i = i0 + 1;
        b.dummy("s", &v(i, 0));
        b.arc(&v(i, 0), &v(i, 1), job(big, s));
        b.dummy(&v(i, 1), &v(i, 2));
        b.dummy(&v(i, 1), &v(i, 3));
        b.arc(&v(i, 2), &v(i, 4), job(s, s));
        b.arc(&v(i, 3), &v(i, 5), job(s, s));
        b.dummy(&v(i, 5), &v(i, 6));
        b.dummy(&v(i, 4), &v(i, 7));
        b.dummy(&v(i, 6), &v(i, 7));
        b.arc(&v(i, 7), "t", job(big, s));
        if i > 1 {
            b.dummy(&v(i - 1, 4), &v(i, 2));
            b.dummy(&v(i - 1, 6), &v(i, 3));
        }
    }
    let target = ratio(total as i128, 2);
    let instance = b.finish(Form::ArcJobs, "s", "t", total, Some(target))?;
    let list: Vec<String> = sizes.iter().map(|x| x.to_string()).collect();
    Ok(GeneratedInstance {
        instance,
        budget: total,
        target,
        provenance: format!("partition: set={} M={big}", list.join(",")),
        expected: Some(has_partition(sizes)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn certificates() {
        let g = gen_partition(&[1, 2, 3]).unwrap();
        assert_eq!((g.budget, g.target, g.expected), (6, int(3), Some(true)));
        let g = gen_partition(&[1, 1]).unwrap();
        assert_eq!((g.budget, g.target, g.expected), (2, int(1), Some(true)));
        let g = gen_partition(&[1, 2]).unwrap();
        assert_eq!((g.target, g.expected), (ratio(3, 2), Some(false)));
        assert!(gen_partition(&[]).is_err());
        assert!(gen_partition(&[0, 1]).is_err());
    }
}
