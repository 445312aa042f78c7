//! Dinic max flow and minimum flow with lower bounds on a DAG.

use std::collections::VecDeque;

use crate::error::{Error, Result};

const INF: i64 = 1 << 50;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i64,
}

/// Residual network; edges are stored in pairs `(2k, 2k+1)`.
#[derive(Debug, Clone)]
pub struct Dinic {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    pub fn new(n: usize) -> Self {
        Dinic { adj: vec![Vec::new(); n], edges: Vec::new(), level: vec![0; n], iter: vec![0; n] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap });
        self.edges.push(Edge { to: u, cap: 0 });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently pushed along edge `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.edges[id + 1].cap
    }

    fn set(&mut self, id: usize, cap: i64, back: i64) {
        self.edges[id].cap = cap;
        self.edges[id + 1].cap = back;
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    q.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.adj[u].len() {
            let id = self.adj[u][self.iter[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[u] < self.level[to] {
                let d = self.dfs(to, t, f.min(cap));
                if d > 0 {
                    self.edges[id].cap -= d;
                    self.edges[id ^ 1].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Smallest s–t flow meeting every arc's lower bound (no upper bounds).
/// Returns the per-arc flow, integral.
pub fn min_flow_lower_bounds(
    n: usize,
    source: usize,
    sink: usize,
    arcs: &[(usize, usize)],
    lower: &[u64],
) -> Result<Vec<u64>> {
    if arcs.len() != lower.len() {
        return Err(Error::InvalidParameter("lower bound list length mismatch".into()));
    }
    if lower.iter().all(|&l| l == 0) {
        return Ok(vec![0; arcs.len()]);
    }
    let ss = n;
    let tt = n + 1;
    let mut g = Dinic::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut ids = Vec::with_capacity(arcs.len());
    for (&(u, v), &l) in arcs.iter().zip(lower) {
        let l = l as i64;
        ids.push(g.add_edge(u, v, INF - l));
        excess[v] += l;
        excess[u] -= l;
    }
    let back = g.add_edge(sink, source, INF);
    let mut need = 0;
    let mut supers = Vec::new();
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            supers.push(g.add_edge(ss, v, x));
            need += x;
        } else if x < 0 {
            supers.push(g.add_edge(v, tt, -x));
        }
    }
    if g.max_flow(ss, tt) != need {
        return Err(Error::InfeasibleFlow("lower bounds cannot be routed from source to sink".into()));
    }
    for id in supers {
        g.set(id, 0, 0);
    }
    g.set(back, 0, 0);
    g.max_flow(sink, source);
    Ok(ids.iter().zip(lower).map(|(&id, &l)| (g.flow(id) + l as i64) as u64).collect())
}

/// Value of a flow: total leaving `source`.
pub fn flow_value(source: usize, arcs: &[(usize, usize)], flow: &[u64]) -> u64 {
    arcs.iter().zip(flow).filter(|(a, _)| a.0 == source).map(|(_, f)| *f).sum()
}
