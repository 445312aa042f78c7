//! Race DAG of a parallel matrix multiply: every `Z[i][j]` accumulates the
//! `n` products of row `i`.

use crate::duration::Family;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::race::{build_race_instance, CellDag};

/// `n^2` result cells of in-degree `n`, budget `2^h` units per result cell.
pub fn gen_parallel_mm(n: u64, h: u32) -> Result<Instance> {
    if n == 0 || h >= 63 || (1u64 << h) > n {
        return Err(Error::InvalidParameter(format!("need 1 <= 2^h <= n, got n={n} h={h}")));
    }
    let n = n as usize;
    let mut dag = CellDag::new();
    let x: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|k| dag.cell(format!("X{i}.{k}"))).collect()).collect();
    for (i, row) in x.iter().enumerate() {
        for j in 0..n {
            let z = dag.cell(format!("Z{i}.{j}"));
            for &xk in row {
                dag.edge(xk, z);
            }
        }
    }
    let inst = build_race_instance(&dag, Family::RecursiveBinary)?;
    Ok(inst.with_budget((n * n) as u64 * (1u64 << h)))
}
