//! Job duration functions: resource units in, completion time out.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{ceil_div, int, Rational};

/// One breakpoint of a step function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tuple {
    pub resource: u64,
    pub time: Rational,
}

impl Tuple {
    pub fn new(resource: u64, time: Rational) -> Self {
        Tuple { resource, time }
    }
}

/// A non-increasing map from integer resource to duration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DurationFunction {
    StepList(Vec<Tuple>),
    KWay(u64),
    RecursiveBinary(u64),
}

/// Which splitting formula a generated race instance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    KWay,
    RecursiveBinary,
}

impl Family {
    pub fn with_base(self, base: u64) -> DurationFunction {
        match self {
            Family::KWay => DurationFunction::KWay(base),
            Family::RecursiveBinary => DurationFunction::RecursiveBinary(base),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::KWay => f.write_str("kway"),
            Family::RecursiveBinary => f.write_str("binary"),
        }
    }
}

/// Largest useful split count for a k-way reducer: `floor(sqrt(base))`.
pub fn kway_cap(base: u64) -> u64 {
    base.isqrt()
}

/// Largest `k` with `2^k * log2(e) <= base`, i.e. `floor(log2 base - log2 log2 e)`.
/// Returns 0 when no positive height fits.
pub fn binary_height(base: u64) -> u32 {
    let mut k = 0u32;
    while k < 62 && ((1u64 << (k + 1)) as f64) * std::f64::consts::LOG2_E <= base as f64 {
        k += 1;
    }
    k
}

/// Duration of a binary reducer of height `j >= 1`, clamped so it never exceeds
/// the previous level.
fn binary_level_times(base: u64) -> Vec<u64> {
    let kmax = binary_height(base);
    let mut out = vec![base];
    for j in 1..=kmax {
        let t = ceil_div(base, 1u64 << j) + j as u64 + 1;
        let prev = *out.last().unwrap();
        out.push(t.min(prev));
    }
    out
}

/// `ceil(n / 2^h) + h + 1`: time for `n` updates through a height-`h` reducer.
pub fn reducer_time(n: u64, h: u32) -> u64 {
    let d = if h >= 64 { u64::MAX } else { 1u64 << h };
    ceil_div(n, d) + h as u64 + 1
}

impl DurationFunction {
    /// Validated step-list constructor.
    pub fn step(tuples: Vec<Tuple>) -> Result<Self> {
        let f = DurationFunction::StepList(tuples);
        f.validate()?;
        Ok(f)
    }

    /// Convenience constructor from `(resource, integer time)` pairs.
    pub fn step_int(pairs: &[(u64, i128)]) -> Result<Self> {
        Self::step(pairs.iter().map(|&(r, t)| Tuple::new(r, int(t))).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DurationFunction::StepList(ts) => {
                let first = ts.first().ok_or_else(|| Error::InvalidDuration("empty tuple list".into()))?;
                if first.resource != 0 {
                    return Err(Error::InvalidDuration(format!(
                        "first tuple has resource {} (must be 0)",
                        first.resource
                    )));
                }
                for t in ts {
                    if t.time < int(0) {
                        return Err(Error::InvalidDuration(format!("negative time {}", t.time)));
                    }
                }
                for w in ts.windows(2) {
                    if w[1].resource <= w[0].resource {
                        return Err(Error::InvalidDuration(format!(
                            "resources not strictly increasing at {}",
                            w[1].resource
                        )));
                    }
                    if w[1].time > w[0].time {
                        return Err(Error::InvalidDuration(format!(
                            "time increases from {} to {} at resource {}",
                            w[0].time, w[1].time, w[1].resource
                        )));
                    }
                }
                Ok(())
            }
            DurationFunction::KWay(b) | DurationFunction::RecursiveBinary(b) => {
                if *b == 0 {
                    Err(Error::InvalidDuration("base must be at least 1".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Duration when `r` resource units are allocated.
    pub fn eval(&self, r: u64) -> Rational {
        match self {
            DurationFunction::StepList(ts) => {
                let i = ts.partition_point(|t| t.resource <= r);
                ts[i.saturating_sub(1)].time
            }
            DurationFunction::KWay(b) => {
                let cap = kway_cap(*b);
                if r <= 1 || cap < 2 {
                    return int(*b as i128);
                }
                let k = r.min(cap);
                int((ceil_div(*b, k) + k) as i128)
            }
            DurationFunction::RecursiveBinary(b) => {
                let levels = binary_level_times(*b);
                if r < 2 || levels.len() < 2 {
                    return int(*b as i128);
                }
                let j = (63 - r.leading_zeros() as usize).min(levels.len() - 1);
                int(levels[j] as i128)
            }
        }
    }

    /// Duration with no resource.
    pub fn base_time(&self) -> Rational {
        self.eval(0)
    }

    /// Exact breakpoint list; evaluating the result as a step list agrees with
    /// `eval` everywhere.
    pub fn breakpoints(&self) -> Vec<Tuple> {
        match self {
            DurationFunction::StepList(ts) => ts.clone(),
            DurationFunction::KWay(b) => {
                let mut out = vec![Tuple::new(0, int(*b as i128))];
                for k in 2..=kway_cap(*b) {
                    out.push(Tuple::new(k, self.eval(k)));
                }
                out
            }
            DurationFunction::RecursiveBinary(b) => binary_level_times(*b)
                .into_iter()
                .enumerate()
                .map(|(j, t)| {
                    let r = if j == 0 { 0 } else { 1u64 << j };
                    Tuple::new(r, int(t as i128))
                })
                .collect(),
        }
    }

    pub fn to_step_list(&self) -> DurationFunction {
        DurationFunction::StepList(self.breakpoints())
    }

    /// Resource level beyond which more units never help.
    pub fn saturation(&self) -> u64 {
        self.breakpoints().last().map_or(0, |t| t.resource)
    }

    /// Largest breakpoint resource `<= r`.
    pub fn floor_breakpoint(&self, r: u64) -> u64 {
        self.breakpoints().iter().rev().find(|t| t.resource <= r).map_or(0, |t| t.resource)
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            DurationFunction::KWay(_) => Some(Family::KWay),
            DurationFunction::RecursiveBinary(_) => Some(Family::RecursiveBinary),
            DurationFunction::StepList(_) => None,
        }
    }
}

/// Duration of an optional job; `None` is a dummy arc.
pub fn eval_job(job: &Option<DurationFunction>, r: u64) -> Rational {
    job.as_ref().map_or(int(0), |f| f.eval(r))
}
