//! Graph automorphism groups by individualization and equitable refinement.
//!
//! The search follows the first path of the refinement tree to a discrete
//! partition, fixing a base `b_0, …, b_(k-1)`. Working upwards from the
//! deepest level, every vertex of the target cell at level `i` that is not
//! yet known to share an orbit with `b_i` is tried; a leaf matching the first
//! one yields an automorphism fixing `b_0, …, b_(i-1)`. The group order is
//! the product of the basic orbit lengths.

use std::collections::VecDeque;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Graphs above this many vertices are refused.
pub const MAX_AUT_VERTICES: usize = 2500;

/// Default limit on search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSearch {
    /// Sorted and free of repeats.
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    /// Length of the orbit of `base[i]` under the stabilizer of the earlier
    /// base points.
    pub orbit_sizes: Vec<usize>,
    pub nodes: u64,
}

impl AutomorphismSearch {
    pub fn order(&self) -> u128 {
        self.orbit_sizes.iter().map(|&s| s as u128).product()
    }
}

/// Ordered partition of the vertex set.
#[derive(Clone, Debug)]
struct Coloring {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Length of the cell starting at each position (meaningful at starts).
    cell_len: Vec<usize>,
    cells: usize,
}

struct Scratch {
    count: Vec<u32>,
    in_queue: Vec<bool>,
    touched: Vec<usize>,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2))
        .wrapping_mul(0x0100_0000_01b3)
}

impl Coloring {
    fn from_colors(colors: &[usize]) -> Coloring {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell_of = vec![0; n];
        let mut cell_len = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
            if p > 0 && colors[v] != colors[lab[p - 1]] {
                start = p;
            }
            if start == p {
                cells += 1;
            }
            cell_of[v] = start;
            cell_len[start] += 1;
        }
        Coloring { lab, pos, cell_of, cell_len, cells }
    }

    fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s += self.cell_len[s];
        }
        out
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First smallest cell with more than one vertex.
    fn target_cell(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let len = self.cell_len[s];
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((s, len));
            }
            s += len;
        }
        best
    }

    fn cell_members(&self, start: usize) -> Vec<usize> {
        let mut m = self.lab[start..start + self.cell_len[start]].to_vec();
        m.sort_unstable();
        m
    }

    /// Moves `v` into a singleton cell at the front of its cell.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let len = self.cell_len[s];
        let p = self.pos[v];
        let u = self.lab[s];
        self.lab.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.cell_len[s] = 1;
        self.cell_len[s + 1] = len - 1;
        for q in s + 1..s + len {
            self.cell_of[self.lab[q]] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Equitable refinement driven by the splitter queue. Returns a hash of
    /// every split performed, in order.
    fn refine(&mut self, g: &Graph, mut queue: VecDeque<usize>, scratch: &mut Scratch, mut trace: u64) -> u64 {
        for &s in &queue {
            scratch.in_queue[s] = true;
        }
        while let Some(w) = queue.pop_front() {
            scratch.in_queue[w] = false;
            if self.is_discrete() {
                break;
            }
            let splitter: Vec<usize> = self.lab[w..w + self.cell_len[w]].to_vec();
            for &x in &splitter {
                for &y in g.neighbors(x) {
                    if scratch.count[y] == 0 {
                        scratch.touched.push(y);
                    }
                    scratch.count[y] += 1;
                }
            }
            let mut cells: Vec<usize> = scratch.touched.iter().map(|&y| self.cell_of[y]).collect();
            cells.sort_unstable();
            cells.dedup();
            trace = mix(trace, w as u64);
            for s in cells {
                let len = self.cell_len[s];
                if len == 1 {
                    continue;
                }
                let mut members: Vec<(u32, usize)> =
                    self.lab[s..s + len].iter().map(|&v| (scratch.count[v], v)).collect();
                if members.iter().all(|&(c, _)| c == members[0].0) {
                    continue;
                }
                members.sort_unstable();
                let mut fragments: Vec<(usize, usize)> = Vec::new();
                for (k, &(c, v)) in members.iter().enumerate() {
                    self.lab[s + k] = v;
                    self.pos[v] = s + k;
                    if k == 0 || c != members[k - 1].0 {
                        fragments.push((s + k, 0));
                        trace = mix(trace, ((s + k) as u64) << 20 | c as u64);
                    }
                    let last = fragments.len() - 1;
                    fragments[last].1 += 1;
                    self.cell_of[v] = fragments[last].0;
                }
                for &(fs, fl) in &fragments {
                    self.cell_len[fs] = fl;
                }
                self.cells += fragments.len() - 1;
                let largest = fragments.iter().enumerate().max_by_key(|&(k, f)| (f.1, usize::MAX - k)).map(|(k, _)| k);
                let was_queued = scratch.in_queue[s];
                for (k, &(fs, _)) in fragments.iter().enumerate() {
                    if scratch.in_queue[fs] {
                        continue;
                    }
                    if was_queued || Some(k) != largest {
                        scratch.in_queue[fs] = true;
                        queue.push_back(fs);
                    }
                }
            }
            for &y in &scratch.touched {
                scratch.count[y] = 0;
            }
            scratch.touched.clear();
        }
        for s in queue {
            scratch.in_queue[s] = false;
        }
        mix(trace, self.cells as u64)
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    scratch: Scratch,
    nodes: u64,
    budget: u64,
    first_nodes: Vec<Coloring>,
    first_targets: Vec<(usize, usize)>,
    first_traces: Vec<u64>,
    first_leaf: Vec<usize>,
}

impl Searcher<'_> {
    fn child(&mut self, node: &Coloring, v: usize) -> Result<(Coloring, u64)> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Capacity(format!("automorphism search exceeded {} nodes", self.budget)));
        }
        let mut c = node.clone();
        let s = c.individualize(v);
        let h = c.refine(self.g, VecDeque::from([s]), &mut self.scratch, mix(0, s as u64));
        Ok((c, h))
    }

    fn leaf_map(&self, leaf: &Coloring) -> Option<Permutation> {
        let n = self.g.n();
        let mut images = vec![0; n];
        for p in 0..n {
            images[self.first_leaf[p]] = leaf.lab[p];
        }
        let ok = (0..n).all(|u| self.g.neighbors(u).iter().all(|&v| self.g.has_edge(images[u], images[v])));
        if ok {
            Permutation::from_images(&images).ok()
        } else {
            None
        }
    }

    fn explore(&mut self, node: &Coloring, level: usize) -> Result<Option<Permutation>> {
        match node.target_cell() {
            None => Ok(if level == self.first_targets.len() { self.leaf_map(node) } else { None }),
            Some(t) => {
                if level >= self.first_targets.len() || t != self.first_targets[level] {
                    return Ok(None);
                }
                for u in node.cell_members(t.0) {
                    let (c, h) = self.child(node, u)?;
                    if h != self.first_traces[level] {
                        continue;
                    }
                    if let Some(p) = self.explore(&c, level + 1)? {
                        return Ok(Some(p));
                    }
                }
                Ok(None)
            }
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union_perm(parent: &mut [usize], p: &Permutation) {
    for v in 0..parent.len() {
        let (a, b) = (find(parent, v), find(parent, p.apply(v)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
}

/// Generators, base and basic orbit lengths of the automorphism group of
/// `g`, optionally restricted to automorphisms preserving `colors`.
pub fn search_automorphisms(g: &Graph, colors: Option<&[usize]>, budget: u64) -> Result<AutomorphismSearch> {
    let n = g.n();
    if n > MAX_AUT_VERTICES {
        return Err(Error::Capacity(format!("{n} vertices exceed the limit of {MAX_AUT_VERTICES}")));
    }
    let uniform = vec![0; n];
    let colors = match colors {
        Some(c) if c.len() != n => return Err(Error::Parameter("one colour per vertex is required".into())),
        Some(c) => c,
        None => &uniform,
    };
    let mut scratch = Scratch { count: vec![0; n], in_queue: vec![false; n], touched: Vec::new() };
    let mut root = Coloring::from_colors(colors);
    root.refine(g, root.starts().into(), &mut scratch, 0);

    let mut s = Searcher {
        g,
        scratch,
        nodes: 1,
        budget,
        first_nodes: Vec::new(),
        first_targets: Vec::new(),
        first_traces: Vec::new(),
        first_leaf: Vec::new(),
    };
    let mut base = Vec::new();
    let mut node = root;
    while let Some(t) = node.target_cell() {
        let b = node.cell_members(t.0)[0];
        let (c, h) = s.child(&node, b)?;
        s.first_nodes.push(node);
        s.first_targets.push(t);
        s.first_traces.push(h);
        base.push(b);
        node = c;
    }
    s.first_leaf = node.lab.clone();

    let k = base.len();
    let mut generators: Vec<Permutation> = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut orbit_sizes = vec![1; k];
    for i in (0..k).rev() {
        let cell = s.first_nodes[i].cell_members(s.first_targets[i].0);
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            let rw = find(&mut parent, w);
            if rw == find(&mut parent, base[i]) || failed.iter().any(|&f| find(&mut parent, f) == rw) {
                continue;
            }
            let node_i = s.first_nodes[i].clone();
            let (c, h) = s.child(&node_i, w)?;
            let found = if h == s.first_traces[i] { s.explore(&c, i + 1)? } else { None };
            match found {
                Some(p) => {
                    union_perm(&mut parent, &p);
                    generators.push(p);
                }
                None => failed.push(w),
            }
        }
        let rb = find(&mut parent, base[i]);
        orbit_sizes[i] = cell.iter().filter(|&&w| find(&mut parent, w) == rb).count();
    }
    generators.sort();
    generators.dedup();
    Ok(AutomorphismSearch { generators, base, orbit_sizes, nodes: s.nodes })
}

/// `Aut(g)` as a permutation group. The order from the search is checked
/// against an independent Schreier–Sims computation on the generators.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    let search = search_automorphisms(g, None, DEFAULT_NODE_BUDGET)?;
    let group = PermGroup::new(g.n(), search.generators.clone())?;
    let order = group.order()?;
    if order != search.order() {
        return Err(Error::Contract(format!(
            "search reports |Aut| = {}, Schreier-Sims on its generators gives {order}",
            search.order()
        )));
    }
    Ok(group)
}

pub fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
    p.degree() == g.n() && g.edges().iter().all(|&(u, v)| g.has_edge(p.apply(u), p.apply(v)))
}
