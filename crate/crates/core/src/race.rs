//! Race DAGs: memory cells whose work is proportional to their write fan-in.

use crate::duration::Family;
use crate::error::{Error, Result};
use crate::instance::{topo_sort, Builder, Form, Instance};

/// Read/write dependencies between memory locations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellDag {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl CellDag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cell(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn edge(&mut self, from: usize, to: usize) {
        self.edges.push((from, to));
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.names.len()];
        for &(_, v) in &self.edges {
            d[v] += 1;
        }
        d
    }
}

pub const SUPER_SOURCE: &str = "__source";
pub const SUPER_SINK: &str = "__sink";

/// Node-job instance where each cell's zero-resource duration is its in-degree
/// (at least 1). Several sources or sinks get a job-less super source or sink.
pub fn build_race_instance(cells: &CellDag, family: Family) -> Result<Instance> {
    let n = cells.names.len();
    if n == 0 {
        return Err(Error::InvalidInstance("empty cell graph".into()));
    }
    for &(u, v) in &cells.edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInstance("edge endpoint out of range".into()));
        }
        if u == v {
            return Err(Error::Cyclic(cells.names[u].clone()));
        }
    }
    topo_sort(n, cells.edges.iter().copied()).map_err(|v| Error::Cyclic(cells.names[v].clone()))?;

    let indeg = cells.in_degrees();
    let mut outdeg = vec![0usize; n];
    for &(u, _) in &cells.edges {
        outdeg[u] += 1;
    }
    let mut b = Builder::new();
    for (v, name) in cells.names.iter().enumerate() {
        b.node_job(name, Some(family.with_base(indeg[v].max(1) as u64)));
    }
    for &(u, v) in &cells.edges {
        b.dummy(&cells.names[u], &cells.names[v]);
    }
    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0).collect();
    let source = if sources.len() == 1 {
        cells.names[sources[0]].clone()
    } else {
        b.node_job(SUPER_SOURCE, None);
        for &v in &sources {
            b.dummy(SUPER_SOURCE, &cells.names[v]);
        }
        SUPER_SOURCE.to_string()
    };
    let sink = if sinks.len() == 1 {
        cells.names[sinks[0]].clone()
    } else {
        b.node_job(SUPER_SINK, None);
        for &v in &sinks {
            b.dummy(&cells.names[v], SUPER_SINK);
        }
        SUPER_SINK.to_string()
    };
    b.finish(Form::NodeJobs, &source, &sink, 0, None)
}
