//! JSON instance, flow and certificate files.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::duration::{DurationFunction, Tuple};
use crate::error::{Error, Result};
use crate::generators::GeneratedInstance;
use crate::instance::{Arc, Form, Instance};
use crate::rational::{self, Rational};
use crate::schedule::Flow;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum JobFile {
    Dummy,
    Step(Vec<(u64, String)>),
    Kway(u64),
    Binary(u64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArcFile {
    tail: String,
    head: String,
    job: JobFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format_version: u32,
    form: String,
    vertices: Vec<String>,
    source: String,
    sink: String,
    arcs: Vec<ArcFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    node_jobs: Vec<JobFile>,
    budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

/// Budget, target and the known answer for a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub budget: u64,
    #[serde(with = "rational::serde_opt_str")]
    pub target: Option<Rational>,
    pub expected_achievable: Option<bool>,
    pub provenance: String,
}

impl From<&GeneratedInstance> for Certificate {
    fn from(g: &GeneratedInstance) -> Self {
        Certificate {
            budget: g.budget,
            target: Some(g.target),
            expected_achievable: g.expected,
            provenance: g.provenance.clone(),
        }
    }
}

fn job_to_file(job: &Option<DurationFunction>) -> JobFile {
    match job {
        None => JobFile::Dummy,
        Some(DurationFunction::KWay(b)) => JobFile::Kway(*b),
        Some(DurationFunction::RecursiveBinary(b)) => JobFile::Binary(*b),
        Some(DurationFunction::StepList(t)) => {
            JobFile::Step(t.iter().map(|x| (x.resource, x.time.to_string())).collect())
        }
    }
}

fn job_from_file(job: &JobFile) -> Result<Option<DurationFunction>> {
    let f = match job {
        JobFile::Dummy => return Ok(None),
        JobFile::Kway(b) => DurationFunction::KWay(*b),
        JobFile::Binary(b) => DurationFunction::RecursiveBinary(*b),
        JobFile::Step(t) => DurationFunction::StepList(
            t.iter().map(|(r, s)| Ok(Tuple::new(*r, rational::parse(s)?))).collect::<Result<_>>()?,
        ),
    };
    f.validate()?;
    Ok(Some(f))
}

pub fn instance_to_json(inst: &Instance) -> String {
    let name = |v: usize| inst.vertices[v].clone();
    let file = InstanceFile {
        format_version: FORMAT_VERSION,
        form: inst.form.name().to_string(),
        vertices: inst.vertices.clone(),
        source: name(inst.source),
        sink: name(inst.sink),
        arcs: inst
            .arcs
            .iter()
            .map(|a| ArcFile { tail: name(a.tail), head: name(a.head), job: job_to_file(&a.job) })
            .collect(),
        node_jobs: inst.node_jobs.iter().map(job_to_file).collect(),
        budget: inst.budget,
        target: inst.target.map(|t| t.to_string()),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes") + "\n"
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {}", file.format_version)));
    }
    let form =
        Form::from_name(&file.form).ok_or_else(|| Error::Parse(format!("unknown form `{}`", file.form)))?;
    let index: HashMap<&str, usize> =
        file.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if index.len() != file.vertices.len() {
        return Err(Error::Parse("duplicate vertex name".into()));
    }
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown vertex `{s}`")));
    let arcs = file
        .arcs
        .iter()
        .map(|a| Ok(Arc { tail: lookup(&a.tail)?, head: lookup(&a.head)?, job: job_from_file(&a.job)? }))
        .collect::<Result<Vec<_>>>()?;
    let node_jobs = file.node_jobs.iter().map(job_from_file).collect::<Result<Vec<_>>>()?;
    let inst = Instance {
        form,
        vertices: file.vertices.clone(),
        source: lookup(&file.source)?,
        sink: lookup(&file.sink)?,
        arcs,
        node_jobs,
        budget: file.budget,
        target: file.target.as_deref().map(rational::parse).transpose()?,
    };
    inst.validate()?;
    Ok(inst)
}

/// `{"arc index": units}` for every arc.
pub fn flow_to_json(flow: &Flow) -> String {
    let map: BTreeMap<String, u64> = flow.iter().enumerate().map(|(e, &f)| (e.to_string(), f)).collect();
    serde_json::to_string_pretty(&map).expect("flow serializes") + "\n"
}

/// Arcs missing from the map carry no flow.
pub fn flow_from_json(text: &str, num_arcs: usize) -> Result<Flow> {
    let map: BTreeMap<String, serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut flow = vec![0u64; num_arcs];
    for (k, v) in map {
        let e: usize = k.parse().map_err(|_| Error::Parse(format!("bad arc id `{k}`")))?;
        if e >= num_arcs {
            return Err(Error::InfeasibleFlow(format!("arc {e} does not exist")));
        }
        flow[e] = match v.as_u64() {
            Some(x) => x,
            None if v.is_number() => {
                return Err(Error::InfeasibleFlow(format!("arc {e}: {v} is not a non-negative integer")))
            }
            None => return Err(Error::Parse(format!("arc {e}: not a number"))),
        };
    }
    Ok(flow)
}

pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string_pretty(c).expect("certificate serializes") + "\n"
}

pub fn certificate_from_json(text: &str) -> Result<Certificate> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
