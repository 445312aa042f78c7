//! Precedence DAGs carrying jobs on arcs (or nodes, before transformation).

use std::collections::HashMap;
use std::fmt;

use crate::duration::{DurationFunction, Family};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    NodeJobs,
    ArcJobs,
    TwoTupleArcJobs,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::NodeJobs => "node",
            Form::ArcJobs => "arc",
            Form::TwoTupleArcJobs => "two-tuple",
        }
    }

    pub fn from_name(s: &str) -> Option<Form> {
        match s {
            "node" => Some(Form::NodeJobs),
            "arc" => Some(Form::ArcJobs),
            "two-tuple" => Some(Form::TwoTupleArcJobs),
            _ => None,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A directed arc. `job == None` marks a dummy (zero-duration) arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub job: Option<DurationFunction>,
}

/// A scheduling instance.
///
/// In [`Form::NodeJobs`] the arcs are plain precedence edges (always dummy)
/// and `node_jobs[v]` holds the job run at vertex `v`. In the arc forms
/// `node_jobs` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub form: Form,
    pub vertices: Vec<String>,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<Arc>,
    pub node_jobs: Vec<Option<DurationFunction>>,
    pub budget: u64,
    pub target: Option<Rational>,
}

/// Incrementally builds an instance by vertex name.
#[derive(Debug, Clone, Default)]
pub struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<Arc>,
    node_jobs: Vec<Option<DurationFunction>>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, creating the vertex if needed.
    pub fn vertex(&mut self, name: &str) -> usize {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        self.node_jobs.push(None);
        v
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn arc(&mut self, tail: &str, head: &str, job: Option<DurationFunction>) -> usize {
        let t = self.vertex(tail);
        let h = self.vertex(head);
        self.arc_ids(t, h, job)
    }

    pub fn arc_ids(&mut self, tail: usize, head: usize, job: Option<DurationFunction>) -> usize {
        self.arcs.push(Arc { tail, head, job });
        self.arcs.len() - 1
    }

    pub fn dummy(&mut self, tail: &str, head: &str) -> usize {
        self.arc(tail, head, None)
    }

    /// Adds a dummy arc unless the same pair is already connected.
    pub fn dummy_once(&mut self, tail: &str, head: &str) {
        let t = self.vertex(tail);
        let h = self.vertex(head);
        if !self.arcs.iter().any(|a| a.tail == t && a.head == h) {
            self.arc_ids(t, h, None);
        }
    }

    pub fn node_job(&mut self, name: &str, job: Option<DurationFunction>) -> usize {
        let v = self.vertex(name);
        self.node_jobs[v] = job;
        v
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn finish(
        self,
        form: Form,
        source: &str,
        sink: &str,
        budget: u64,
        target: Option<Rational>,
    ) -> Result<Instance> {
        let source = *self
            .index
            .get(source)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown source `{source}`")))?;
        let sink =
            *self.index.get(sink).ok_or_else(|| Error::InvalidInstance(format!("unknown sink `{sink}`")))?;
        let node_jobs = if form == Form::NodeJobs { self.node_jobs } else { Vec::new() };
        let inst =
            Instance { form, vertices: self.names, source, sink, arcs: self.arcs, node_jobs, budget, target };
        inst.validate()?;
        Ok(inst)
    }
}

impl Instance {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_vertices()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(i);
        }
        out
    }

    pub fn in_arcs(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.num_vertices()];
        for (i, a) in self.arcs.iter().enumerate() {
            inn[a.head].push(i);
        }
        inn
    }

    /// Kahn order with smallest vertex id first; errors on a cycle.
    pub fn topo_order(&self) -> Result<Vec<usize>> {
        topo_sort(self.num_vertices(), self.arcs.iter().map(|a| (a.tail, a.head)))
            .map_err(|v| Error::Cyclic(self.vertices[v].clone()))
    }

    /// Structural validation: ids, acyclicity, single source and sink,
    /// every vertex on an s–t path, valid jobs, and form-specific rules.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices();
        if n == 0 {
            return Err(Error::InvalidInstance("no vertices".into()));
        }
        if self.source >= n || self.sink >= n {
            return Err(Error::InvalidInstance("source or sink out of range".into()));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= n || a.head >= n {
                return Err(Error::InvalidInstance(format!("arc {i} has an unknown endpoint")));
            }
            if a.tail == a.head {
                return Err(Error::Cyclic(self.vertices[a.tail].clone()));
            }
            if let Some(job) = &a.job {
                job.validate()?;
                match self.form {
                    Form::NodeJobs => {
                        return Err(Error::InvalidInstance(format!("arc {i} carries a job in node form")))
                    }
                    Form::TwoTupleArcJobs => match job {
                        DurationFunction::StepList(ts) if ts.len() <= 2 => {}
                        _ => {
                            return Err(Error::InvalidInstance(format!(
                                "arc {i} is not a one- or two-tuple step list"
                            )))
                        }
                    },
                    Form::ArcJobs => {}
                }
            }
        }
        if self.form == Form::NodeJobs {
            if self.node_jobs.len() != n {
                return Err(Error::InvalidInstance("node job list length mismatch".into()));
            }
            for job in self.node_jobs.iter().flatten() {
                job.validate()?;
            }
        } else if !self.node_jobs.is_empty() {
            return Err(Error::InvalidInstance("node jobs in an arc-form instance".into()));
        }
        self.topo_order()?;
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for a in &self.arcs {
            outdeg[a.tail] += 1;
            indeg[a.head] += 1;
        }
        for v in 0..n {
            if indeg[v] == 0 && v != self.source {
                return Err(Error::InvalidInstance(format!(
                    "vertex `{}` has no predecessor but is not the source",
                    self.vertices[v]
                )));
            }
            if outdeg[v] == 0 && v != self.sink {
                return Err(Error::InvalidInstance(format!(
                    "vertex `{}` has no successor but is not the sink",
                    self.vertices[v]
                )));
            }
        }
        if indeg[self.source] != 0 {
            return Err(Error::InvalidInstance("source has incoming arcs".into()));
        }
        if outdeg[self.sink] != 0 {
            return Err(Error::InvalidInstance("sink has outgoing arcs".into()));
        }
        if n > 1 && self.source == self.sink {
            return Err(Error::InvalidInstance("source equals sink".into()));
        }
        Ok(())
    }

    pub fn require_form(&self, forms: &[Form]) -> Result<()> {
        if forms.contains(&self.form) {
            Ok(())
        } else {
            Err(Error::WrongForm {
                expected: forms.iter().map(|f| f.name()).collect::<Vec<_>>().join(" or "),
                found: self.form.name().into(),
            })
        }
    }

    /// Jobs of the instance (arc jobs, or node jobs in node form).
    pub fn jobs(&self) -> Vec<&DurationFunction> {
        match self.form {
            Form::NodeJobs => self.node_jobs.iter().flatten().collect(),
            _ => self.arcs.iter().filter_map(|a| a.job.as_ref()).collect(),
        }
    }

    /// Common family when every job is of that family.
    pub fn uniform_family(&self) -> Option<Family> {
        let jobs = self.jobs();
        let first = jobs.first()?.family()?;
        jobs.iter().all(|j| j.family() == Some(first)).then_some(first)
    }

    pub fn with_budget(&self, budget: u64) -> Instance {
        Instance { budget, ..self.clone() }
    }

    pub fn num_jobs(&self) -> usize {
        self.jobs().len()
    }
}

/// Kahn topological sort, smallest ready id first. On a cycle returns a
/// vertex on it.
pub fn topo_sort(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Result<Vec<usize>, usize> {
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (u, v) in edges {
        adj[u].push(v);
        indeg[v] += 1;
    }
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(std::cmp::Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(u)) = ready.pop() {
        order.push(u);
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(std::cmp::Reverse(v));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indeg[v] > 0).unwrap())
    }
}
