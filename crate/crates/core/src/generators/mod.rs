//! Instances built from classic hard problems, with known answers where the
//! source instance is small enough to decide directly.

mod matching;
mod mm;
mod partition;
mod sat;
mod splitting;

pub use matching::{gen_numeric_3dm, has_numeric_matching};
pub use mm::gen_parallel_mm;
pub use partition::{gen_partition, has_partition};
pub use sat::{clause_event_times, gen_sat_general, literal_nodes, satisfying_flow};
pub use splitting::{
    composite_duration, gen_sat_splitting, serialized_finish, splitting_params, variable_gadget_times,
    SplitParams, WriteQueueRow, WRITE_QUEUE_TABLE,
};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: Instance,
    pub budget: u64,
    pub target: Rational,
    pub provenance: String,
    /// Whether `target` is reachable within `budget`, when known.
    pub expected: Option<bool>,
}

/// A 1-in-3SAT formula over variables `1..=num_vars`; literal `-v` is the
/// negation of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Formula> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(Error::InvalidParameter(format!("literal {l} out of range")));
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    /// `"1,-2,3;-1,2,3"`: clauses separated by `;`, literals by `,`.
    pub fn parse(s: &str) -> Result<Formula> {
        let mut clauses = Vec::new();
        let mut n = 0usize;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let lits: Vec<i32> = part
                .split(',')
                .map(|x| x.trim().parse::<i32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad clause `{part}`")))?;
            if lits.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "clause `{part}` has {} literals, expected 3",
                    lits.len()
                )));
            }
            for &l in &lits {
                if l == 0 {
                    return Err(Error::InvalidParameter("literal 0".into()));
                }
                n = n.max(l.unsigned_abs() as usize);
            }
            clauses.push([lits[0], lits[1], lits[2]]);
        }
        Formula::new(n, clauses)
    }

    pub fn literal_true(lit: i32, assignment: &[bool]) -> bool {
        let v = assignment[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    /// Every clause has exactly one true literal.
    pub fn one_in_three(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().filter(|&&l| Formula::literal_true(l, assignment)).count() == 1)
    }

    /// First satisfying assignment in binary counting order.
    pub fn solve(&self) -> Option<Vec<bool>> {
        (0u64..1 << self.num_vars)
            .map(|m| (0..self.num_vars).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.one_in_three(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_formula() {
        let f = Formula::parse("1,-2,3;-1,2,3").unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses, vec![[1, -2, 3], [-1, 2, 3]]);
        assert!(f.one_in_three(&[true, true, false]));
        assert!(Formula::parse("1,2").is_err());
        assert!(Formula::parse("1,0,2").is_err());
        assert_eq!(Formula::parse("").unwrap().num_vars, 0);
    }

    #[test]
    fn unsatisfiable_formula() {
        let f = Formula::parse("1,1,1").unwrap();
        assert_eq!(f.solve(), None);
    }
}
