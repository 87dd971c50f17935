//! Simple undirected graphs, coset graphs of [`Group`], Cayley graphs of
//! arbitrary finite groups, and normal quotients.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupg::{CosetIndex, GElem, Group};

/// Largest `m` for which `Γ_m` is built.
pub const MAX_GAMMA_M: u32 = 3;

/// Coset graphs with more vertices than this are refused.
pub const MAX_COSET_GRAPH_VERTICES: u64 = 5_000_000;

pub const MAX_CYCLE_LENGTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Duplicate edges collapse; loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Construction(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Validates that the arc lists are loop-free and symmetric.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Graph> {
        let n = adj.len();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(Error::Construction(format!("arc ({u},{v}) out of range")));
                }
                if v == u {
                    return Err(Error::Construction(format!("loop at vertex {u}")));
                }
                if adj[v].binary_search(&u).is_err() {
                    return Err(Error::Construction(format!("arc ({u},{v}) has no reverse")));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|l| l.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|l| l.len() == k)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(&[0]).iter().all(Option::is_some)
    }

    /// Vertices within `radius` of any centre, with the induced subgraph.
    pub fn ball(&self, centers: &[usize], radius: usize) -> Subgraph {
        let dist = self.distances_from(centers);
        let vertices: Vec<usize> = (0..self.n()).filter(|&v| dist[v].is_some_and(|d| d <= radius)).collect();
        self.induced(&vertices)
    }

    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = vertices
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|w| local.get(w).copied()).collect())
            .collect();
        Subgraph { graph: Graph { adj }, vertices }
    }

    /// All cycles of exactly `length` edges passing through every vertex of
    /// `required`. Each cycle is listed once, starting at its anchor (the first
    /// required vertex, or its least vertex when `required` is empty) and
    /// oriented so that the second entry is smaller than the last.
    pub fn cycles_through(&self, required: &[usize], length: usize) -> Result<Vec<Vec<usize>>> {
        if !(3..=MAX_CYCLE_LENGTH).contains(&length) {
            return Err(Error::Parameter(format!("cycle length must lie in 3..={MAX_CYCLE_LENGTH}")));
        }
        if required.len() > 3 {
            return Err(Error::Parameter("at most three required vertices".into()));
        }
        let distinct: BTreeSet<usize> = required.iter().copied().collect();
        if distinct.len() != required.len() {
            return Err(Error::Parameter("required vertices must be distinct".into()));
        }
        if let Some(&bad) = required.iter().find(|&&v| v >= self.n()) {
            return Err(Error::Parameter(format!("vertex {bad} out of range")));
        }
        let anchors: Vec<usize> = match required.first() {
            Some(&a) => vec![a],
            None => (0..self.n()).collect(),
        };
        let mut found = BTreeSet::new();
        let mut on_path = vec![false; self.n()];
        for anchor in anchors {
            let min_vertex = if required.is_empty() { anchor } else { 0 };
            let dist = self.distances_from(&[anchor]);
            let mut path = vec![anchor];
            on_path[anchor] = true;
            self.extend_cycle(&mut path, &mut on_path, &dist, length, min_vertex, required, &mut found);
            on_path[anchor] = false;
        }
        Ok(found.into_iter().collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_cycle(
        &self,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        dist: &[Option<usize>],
        length: usize,
        min_vertex: usize,
        required: &[usize],
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let anchor = path[0];
        let last = *path.last().unwrap_or(&anchor);
        if path.len() == length {
            if self.has_edge(last, anchor) && path[1] < path[length - 1] && required.iter().all(|r| path.contains(r)) {
                found.insert(path.clone());
            }
            return;
        }
        let remaining = length - path.len();
        for &next in &self.adj[last] {
            if on_path[next] || next < min_vertex {
                continue;
            }
            // after stepping to `next`, `remaining` edges must lead back
            if dist[next].is_none_or(|d| d > remaining) {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            self.extend_cycle(path, on_path, dist, length, min_vertex, required, found);
            on_path[next] = false;
            path.pop();
        }
    }

    /// Collapses each block to a vertex. Edges inside a block are dropped and
    /// parallel edges between two blocks are merged.
    pub fn normal_quotient(&self, partition: &Partition) -> Result<Quotient> {
        if partition.len() != self.n() {
            return Err(Error::Parameter(format!(
                "partition covers {} vertices, graph has {}",
                partition.len(),
                self.n()
            )));
        }
        let mut multiplicity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut intra = 0;
        for (u, v) in self.edges() {
            let (bu, bv) = (partition.block_of(u), partition.block_of(v));
            if bu == bv {
                intra += 1;
            } else {
                *multiplicity.entry((bu.min(bv), bu.max(bv))).or_default() += 1;
            }
        }
        let collapsed = multiplicity.values().map(|k| k - 1).sum();
        let edges: Vec<(usize, usize)> = multiplicity.keys().copied().collect();
        Ok(Quotient {
            graph: Graph::from_edges(partition.block_count(), &edges)?,
            collapsed_edges: collapsed,
            intra_block_edges: intra,
        })
    }

    /// `n e` on the first line, then one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let (n, e) = parse_pair(header)?;
        let edges: Vec<(usize, usize)> = lines.map(parse_pair).collect::<Result<_>>()?;
        if edges.len() != e {
            return Err(Error::Parse(format!("header announces {e} edges, found {}", edges.len())));
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.edge_count() != e {
            return Err(Error::Parse("edge list contains duplicate edges".into()));
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

/// An induced subgraph with the original vertex numbers of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

impl Subgraph {
    pub fn local_index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// Parallel edges merged into one.
    pub collapsed_edges: usize,
    pub intra_block_edges: usize,
}

/// A partition of `{0, …, n-1}` into nonempty blocks numbered `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Block ids may be arbitrary; they are renumbered in order of first
    /// appearance.
    pub fn new(block_of: &[usize]) -> Partition {
        let mut renumber = HashMap::new();
        let block_of: Vec<usize> = block_of
            .iter()
            .map(|b| {
                let next = renumber.len();
                *renumber.entry(*b).or_insert(next)
            })
            .collect();
        Partition { blocks: renumber.len(), block_of }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition { block_of: (0..n).collect(), blocks: n }
    }

    pub fn whole(n: usize) -> Partition {
        Partition { block_of: vec![0; n], blocks: usize::from(n > 0) }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    /// One block per line, vertices separated by whitespace.
    pub fn parse(text: &str, n: usize) -> Result<Partition> {
        let mut block_of = vec![usize::MAX; n];
        for (b, line) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?;
                if v >= n {
                    return Err(Error::Parse(format!("vertex {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::Parse(format!("vertex {v} listed twice")));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Parse(format!("vertex {v} is in no block")));
        }
        Ok(Partition::new(&block_of))
    }

    /// Orbits of the group generated by `perms`, each a permutation given by
    /// its image list.
    pub fn from_orbits(n: usize, perms: &[Vec<usize>]) -> Partition {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in perms {
            for (v, &w) in p.iter().enumerate() {
                let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
                if rv != rw {
                    parent[rv.max(rw)] = rv.min(rw);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        Partition::new(&roots)
    }
}

/// The coset graph `Cos(G, H, HSH)` on `Ω = H\G`: `Hg ~ Hsg` for `s ∈ S`.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    group: Arc<Group>,
    connection: Vec<GElem>,
    graph: Graph,
}

impl CosetGraph {
    pub fn new(group: Arc<Group>, connection: &[GElem]) -> Result<CosetGraph> {
        let n = group.coset_count();
        if n > MAX_COSET_GRAPH_VERTICES {
            return Err(Error::Capacity(format!("{n} cosets exceed the limit of {MAX_COSET_GRAPH_VERTICES}")));
        }
        let adj: Vec<Vec<usize>> = (0..n as usize)
            .into_par_iter()
            .map(|i| {
                let g = group.coset_rep(&group.coset_from_number(i));
                connection.iter().map(|s| group.coset_number(&group.canonical_coset(&group.mul(s, &g)))).collect()
            })
            .collect();
        let graph = Graph::from_adjacency(adj)?;
        Ok(CosetGraph { group, connection: connection.to_vec(), graph })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn connection(&self) -> &[GElem] {
        &self.connection
    }

    pub fn label(&self, v: usize) -> CosetIndex {
        self.group.coset_from_number(v)
    }

    pub fn vertex(&self, w: &CosetIndex) -> usize {
        self.group.coset_number(w)
    }

    /// The vertex `Hg`.
    pub fn vertex_of(&self, g: &GElem) -> usize {
        self.vertex(&self.group.canonical_coset(g))
    }

    pub fn descriptor(&self, v: usize) -> String {
        self.group.describe_coset(&self.label(v))
    }

    /// `Hx ↦ Hxg` as an image list.
    pub fn induced_permutation(&self, g: &GElem) -> Vec<usize> {
        (0..self.graph.n())
            .into_par_iter()
            .map(|v| self.vertex(&self.group.coset_act(&self.label(v), g)))
            .collect()
    }

    /// Orbits on vertices of the subgroup generated by `gens`.
    pub fn orbit_partition(&self, gens: &[GElem]) -> Partition {
        let perms: Vec<Vec<usize>> = gens.iter().map(|g| self.induced_permutation(g)).collect();
        Partition::from_orbits(self.graph.n(), &perms)
    }

    /// Partition into `V`-orbits.
    pub fn v_orbits(&self) -> Partition {
        let g = &self.group;
        let mut gens: Vec<GElem> = (0..g.v_group().dim()).map(|i| g.v_gen(i)).collect();
        gens.push(g.z());
        self.orbit_partition(&gens)
    }

    /// JSON object with the descriptor of every vertex and the numbering scheme.
    pub fn labels_json(&self) -> String {
        let labels: Vec<String> = (0..self.graph.n()).map(|v| self.descriptor(v)).collect();
        let doc = serde_json::json!({
            "m": self.group.m(),
            "numbering": self.group.numbering_scheme(),
            "labels": labels,
        });
        serde_json::to_string_pretty(&doc).unwrap_or_default()
    }
}

/// `S = {ab, bv_1, bv_1⁻¹}`.
pub fn gamma_connection(group: &Group) -> Vec<GElem> {
    let v1 = group.v_gen(0);
    vec![
        group.mul(&group.a(), &group.b()),
        group.mul(&group.b(), &v1),
        group.mul(&group.b(), &group.inv(&v1)),
    ]
}

/// The cubic graph `Γ_m`.
pub fn gamma(m: u32) -> Result<CosetGraph> {
    if !(1..=MAX_GAMMA_M).contains(&m) {
        return Err(Error::Capacity(format!("Γ_m is built for 1 <= m <= {MAX_GAMMA_M}, got {m}")));
    }
    let group = Arc::new(Group::new(m)?);
    let s = gamma_connection(&group);
    CosetGraph::new(group, &s)
}

/// `Cay(G, Y)`: `x ~ x'` iff `x x'⁻¹ ∈ Y`. Vertex `i` is `elements[i]`.
pub fn cayley_graph<T, F>(elements: &[T], connection: &[T], mul: F) -> Result<Graph>
where
    T: Eq + Hash + Clone,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Parameter("element list has repeats".into()));
    }
    let identity = elements
        .iter()
        .find(|e| mul(e, e) == **e)
        .ok_or_else(|| Error::Parameter("no identity element".into()))?;
    for y in connection {
        if !index.contains_key(y) {
            return Err(Error::Parameter("connection element is not in the group".into()));
        }
        if y == identity {
            return Err(Error::Parameter("connection set contains the identity".into()));
        }
        if !connection.iter().any(|y2| mul(y, y2) == *identity) {
            return Err(Error::Parameter("connection set is not closed under inverses".into()));
        }
    }
    let mut edges = Vec::with_capacity(elements.len() * connection.len());
    for (i, x) in elements.iter().enumerate() {
        for y in connection {
            let w = mul(y, x);
            let j = *index.get(&w).ok_or_else(|| Error::Parameter("element list is not closed".into()))?;
            edges.push((i.min(j), i.max(j)));
        }
    }
    Graph::from_edges(elements.len(), &edges)
}
