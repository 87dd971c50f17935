use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::automorphism::is_automorphism;
use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::graphs::{CosetGraph, Graph};
use crate::groupg::{GElem, SemiregularSpectrum};

/// Default limit on the number of elements enumerated.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 10_000_000;

/// Structure of a vertex stabilizer `G_α` inside a group of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerAnalysis {
    pub vertex: usize,
    pub stab_order: u128,
    /// Order of the group `G_α` induces on the neighbours of `α`.
    pub local_action_order: u128,
    /// Order of the kernel of that action (fixing `α` and its neighbours).
    pub kernel_order: u128,
    pub local_transitive: bool,
    pub stab_is_2_group: bool,
    pub kernel_is_2_group: bool,
}

fn check_automorphisms(g: &Graph, gp: &PermGroup) -> Result<()> {
    if gp.degree() != g.n() {
        return Err(Error::Parameter(format!("group of degree {} on a graph with {} vertices", gp.degree(), g.n())));
    }
    if let Some(p) = gp.generators().iter().find(|p| !is_automorphism(g, p)) {
        return Err(Error::Parameter(format!("generator {p} is not an automorphism")));
    }
    Ok(())
}

fn is_power_of_two(x: u128) -> bool {
    x.is_power_of_two()
}

/// Closure of a set of permutations of a small set, as image lists.
fn closure_size(gens: &[Vec<usize>], degree: usize) -> usize {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for s in gens {
            let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

pub fn stabilizer_analysis(g: &Graph, gp: &PermGroup, vertex: usize) -> Result<StabilizerAnalysis> {
    check_automorphisms(g, gp)?;
    if vertex >= g.n() {
        return Err(Error::Parameter(format!("vertex {vertex} out of range")));
    }
    let nbrs = g.neighbors(vertex);
    let mut prefix = vec![vertex];
    prefix.extend_from_slice(nbrs);
    let chain = gp.chain_with_base(&prefix)?;
    let stab_order = chain.stabilizer_order(1);
    let kernel_order = chain.stabilizer_order(1 + nbrs.len());

    // the action on the neighbourhood, computed directly from generators of G_α
    let local_gens: Vec<Vec<usize>> = chain
        .generators_at(1)
        .iter()
        .map(|p| p.restrict(nbrs).ok_or_else(|| Error::Contract("stabilizer does not preserve N(α)".into())))
        .collect::<Result<_>>()?;
    let local_action_order = closure_size(&local_gens, nbrs.len()) as u128;
    if local_action_order * kernel_order != stab_order {
        return Err(Error::Contract(format!(
            "|G_α| = {stab_order} but local action {local_action_order} times kernel {kernel_order} differs"
        )));
    }
    let local_transitive = nbrs.is_empty() || {
        let mut reach = vec![false; nbrs.len()];
        reach[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for s in &local_gens {
                if !reach[s[x]] {
                    reach[s[x]] = true;
                    stack.push(s[x]);
                }
            }
        }
        reach.iter().all(|&r| r)
    };
    Ok(StabilizerAnalysis {
        vertex,
        stab_order,
        local_action_order,
        kernel_order,
        local_transitive,
        stab_is_2_group: is_power_of_two(stab_order),
        kernel_is_2_group: is_power_of_two(kernel_order),
    })
}

/// Orders of all semiregular elements of `gp` (the identity counts, with
/// order 1), found by enumerating the group.
pub fn semiregular_elements(gp: &PermGroup, budget: u128) -> Result<SemiregularSpectrum> {
    let order = gp.order()?;
    if order > budget {
        return Err(Error::Capacity(format!("group of order {order} exceeds the enumeration budget {budget}")));
    }
    let mut spectrum = SemiregularSpectrum::default();
    gp.for_each_element(|p| {
        spectrum.scanned += 1;
        if p.is_semiregular() {
            spectrum.insert(p.order());
        }
    })?;
    Ok(spectrum)
}

/// Counts of elements by cycle type, for reporting.
pub fn cycle_type_census(gp: &PermGroup, budget: u128) -> Result<BTreeMap<Vec<usize>, u64>> {
    let order = gp.order()?;
    if order > budget {
        return Err(Error::Capacity(format!("group of order {order} exceeds the enumeration budget {budget}")));
    }
    let mut census = BTreeMap::new();
    gp.for_each_element(|p| {
        let mut ct = p.cycle_type();
        ct.dedup();
        *census.entry(ct).or_insert(0) += 1;
    })?;
    Ok(census)
}

/// For each neighbour `β` of vertex 0, an element of `gp` mapping 0 to `β`.
/// Together these generate a vertex-transitive subgroup when `gp` is
/// vertex-transitive and the graph is connected.
pub fn find_transitive_generators(g: &Graph, gp: &PermGroup) -> Result<Vec<Permutation>> {
    check_automorphisms(g, gp)?;
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let chain = gp.chain_with_base(&[0])?;
    let mut gens = Vec::new();
    for &beta in g.neighbors(0) {
        let t = chain
            .transversal(0, beta)
            .ok_or_else(|| Error::Unavailable(format!("no element maps vertex 0 to its neighbour {beta}")))?;
        gens.push(t.clone());
    }
    let sub = PermGroup::new(g.n(), gens.clone())?;
    if !sub.is_transitive() {
        return Err(Error::Unavailable("the chosen elements do not act transitively".into()));
    }
    Ok(gens)
}

/// Elements generating a subgroup transitive on arcs: one mapping vertex 0
/// to a neighbour `β_0`, plus generators of `G_0` transitive on `N(0)`.
pub fn find_arc_transitive_generators(g: &Graph, gp: &PermGroup) -> Result<Vec<Permutation>> {
    check_automorphisms(g, gp)?;
    let nbrs = g.neighbors(0);
    let beta0 = *nbrs.first().ok_or_else(|| Error::Unavailable("vertex 0 has no neighbours".into()))?;
    let chain = gp.chain_with_base(&[0, beta0])?;
    let local = stabilizer_analysis(g, gp, 0)?;
    if !local.local_transitive {
        return Err(Error::Unavailable("the vertex stabilizer is not transitive on neighbours".into()));
    }
    let shift = chain
        .transversal(0, beta0)
        .ok_or_else(|| Error::Unavailable("the group is not vertex-transitive".into()))?
        .clone();
    let mut gens = vec![shift];
    gens.extend(chain.generators_at(1));
    let sub = PermGroup::new(g.n(), gens.clone())?;
    if !sub.is_transitive() {
        return Err(Error::Unavailable("the chosen elements do not act transitively".into()));
    }
    Ok(gens)
}

/// The permutation group induced on the vertices of a coset graph by
/// elements of the underlying group, after checking each is an automorphism.
pub fn verify_subgroup_action(cg: &CosetGraph, gens: &[GElem]) -> Result<PermGroup> {
    let g = cg.graph();
    let mut perms = Vec::with_capacity(gens.len());
    for x in gens {
        let p = Permutation::from_images(&cg.induced_permutation(x))?;
        if !is_automorphism(g, &p) {
            return Err(Error::Contract(format!("{x} does not preserve adjacency")));
        }
        perms.push(p);
    }
    PermGroup::new(g.n(), perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permaut::automorphism::automorphism_group;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.extend([(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn prism(k: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..k {
            e.extend([(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]);
        }
        Graph::from_edges(2 * k, &e).unwrap()
    }

    #[test]
    fn petersen_stabilizer() {
        let g = petersen();
        let aut = automorphism_group(&g).unwrap();
        let s = stabilizer_analysis(&g, &aut, 0).unwrap();
        assert_eq!(s.stab_order, 12);
        assert_eq!(s.local_action_order, 6);
        assert_eq!(s.kernel_order, 2);
        assert!(s.local_transitive && !s.stab_is_2_group && s.kernel_is_2_group);
        // Petersen has no semiregular element of order 2 or 4
        let spectrum = semiregular_elements(&aut, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(spectrum.scanned, 120);
        assert_eq!(spectrum.orders.iter().copied().collect::<Vec<_>>(), vec![1, 5]);
        assert!(semiregular_elements(&aut, 100).is_err());
        let census = cycle_type_census(&aut, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(census.values().sum::<u64>(), 120);
    }

    #[test]
    fn prism_is_not_arc_transitive() {
        let g = prism(5);
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order().unwrap(), 20);
        let s = stabilizer_analysis(&g, &aut, 0).unwrap();
        assert_eq!(s.stab_order, 2);
        assert!(!s.local_transitive);
        let gens = find_transitive_generators(&g, &aut).unwrap();
        assert_eq!(gens.len(), 3);
        assert!(matches!(find_arc_transitive_generators(&g, &aut), Err(Error::Unavailable(_))));
        let arc = find_arc_transitive_generators(&petersen(), &automorphism_group(&petersen()).unwrap()).unwrap();
        let sub = PermGroup::new(10, arc).unwrap();
        assert_eq!(stabilizer_analysis(&petersen(), &sub, 0).unwrap().local_action_order, 6);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = prism(4);
        let bad = Permutation::from_cycles(8, &[vec![0, 2]]).unwrap();
        let gp = PermGroup::new(8, vec![bad]).unwrap();
        assert!(stabilizer_analysis(&g, &gp, 0).is_err());
        assert!(stabilizer_analysis(&g, &PermGroup::trivial(3), 0).is_err());
    }
}
