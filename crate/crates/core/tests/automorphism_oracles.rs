//! Independent checks of `|Aut(Γ_m)|`: a plain backtracking count, and at
//! `m = 1` an explicit automorphism outside `G`.

use std::collections::{HashMap, VecDeque};

use semireg::graphs::{gamma, CosetGraph, Graph};
use semireg::groupg::{GElem, Group};
use semireg::permaut::{automorphism_group, is_automorphism, verify_subgroup_action, PermGroup, Permutation};

/// Counts automorphisms fixing vertex 0 by extending partial maps one vertex at a time,
/// always placing the vertex with the most already placed neighbours, and
/// requiring adjacency to placed vertices to be preserved both ways.
fn count_stabilizer(g: &Graph) -> u64 {
    let n = g.n();
    let mut order = vec![0];
    let mut placed = vec![false; n];
    placed[0] = true;
    let mut weight = vec![0usize; n];
    for &u in g.neighbors(0) {
        weight[u] += 1;
    }
    while order.len() < n {
        let next = (0..n).filter(|&v| !placed[v] && weight[v] > 0).max_by_key(|&v| (weight[v], std::cmp::Reverse(v)));
        let v = next.expect("graph must be connected");
        placed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            weight[u] += 1;
        }
    }
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }

    struct State<'a> {
        g: &'a Graph,
        order: Vec<usize>,
        rank: Vec<usize>,
        img: Vec<usize>,
        pre: Vec<usize>,
    }

    fn extend(s: &mut State<'_>, k: usize) -> u64 {
        if k == s.order.len() {
            return 1;
        }
        let v = s.order[k];
        let g = s.g;
        let anchor = *g.neighbors(v).iter().find(|&&u| s.rank[u] < k).expect("placed neighbour");
        let mut total = 0;
        for &c in g.neighbors(s.img[anchor]) {
            if s.pre[c] != usize::MAX {
                continue;
            }
            let forward = g.neighbors(v).iter().filter(|&&u| s.rank[u] < k).all(|&u| g.has_edge(c, s.img[u]));
            let backward = g.neighbors(c).iter().filter(|&&w| s.pre[w] != usize::MAX).all(|&w| g.has_edge(v, s.pre[w]));
            if forward && backward {
                s.img[v] = c;
                s.pre[c] = v;
                total += extend(s, k + 1);
                s.pre[c] = usize::MAX;
            }
        }
        total
    }

    let mut state = State { g, order, rank, img: vec![usize::MAX; n], pre: vec![usize::MAX; n] };
    state.img[0] = 0;
    state.pre[0] = 0;
    extend(&mut state, 1)
}

/// Orbit of vertex 0 under the permutations induced by the generators of `G`.
fn g_orbit_of_zero(cg: &CosetGraph) -> usize {
    let perms: Vec<Vec<usize>> = cg.group().generators().iter().map(|x| cg.induced_permutation(x)).collect();
    let mut seen = vec![false; cg.graph().n()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for p in &perms {
            if !seen[p[v]] {
                seen[p[v]] = true;
                stack.push(p[v]);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Extends generator images to a homomorphism of `G`, checking it is well
/// defined and bijective.
fn extend_to_automorphism(grp: &Group, images: &[GElem]) -> Option<HashMap<GElem, GElem>> {
    let gens = grp.generators();
    let mut phi = HashMap::from([(grp.identity(), grp.identity())]);
    let mut queue = VecDeque::from([grp.identity()]);
    while let Some(x) = queue.pop_front() {
        for (s, t) in gens.iter().zip(images) {
            let y = grp.mul(&x, s);
            let fy = grp.mul(&phi[&x], t);
            match phi.get(&y) {
                Some(prev) if *prev != fy => return None,
                Some(_) => {}
                None => {
                    phi.insert(y.clone(), fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let distinct: std::collections::HashSet<&GElem> = phi.values().collect();
    (phi.len() as u64 == grp.order() && distinct.len() == phi.len()).then_some(phi)
}

fn induced(cg: &CosetGraph, phi: &HashMap<GElem, GElem>) -> Permutation {
    let grp = cg.group();
    let images: Vec<usize> =
        (0..cg.graph().n()).map(|v| cg.vertex_of(&phi[&grp.coset_rep(&cg.label(v))])).collect();
    Permutation::from_images(&images).unwrap()
}

#[test]
fn backtracking_count_matches_search() {
    // G is transitive and acts by automorphisms, so |Aut| = n·|Aut_0|
    for (m, expect) in [(1, 432u64), (2, 3888)] {
        let cg = gamma(m).unwrap();
        let g = cg.graph();
        assert!(cg.group().generators().iter().all(|x| {
            is_automorphism(g, &Permutation::from_images(&cg.induced_permutation(x)).unwrap())
        }));
        assert_eq!(g_orbit_of_zero(&cg), g.n());
        assert_eq!(g.n() as u64 * count_stabilizer(g), expect);
        assert_eq!(automorphism_group(g).unwrap().order().unwrap(), expect as u128);
    }
}

#[test]
fn gamma_1_has_an_automorphism_outside_g() {
    let cg = gamma(1).unwrap();
    let grp = cg.group();
    // a ↦ a^-1, b ↦ b, v1 ↦ v1, v2 ↦ v2^-1
    let images = [grp.inv(&grp.a()), grp.b(), grp.v_gen(0), grp.inv(&grp.v_gen(1))];
    let phi = extend_to_automorphism(grp, &images).expect("the images define an automorphism of G");
    for x in phi.keys().take(40) {
        for y in phi.keys() {
            assert_eq!(phi[&grp.mul(x, y)], grp.mul(&phi[x], &phi[y]));
        }
    }
    // it normalizes H, so it acts on the cosets of H
    let h = grp.h_generator();
    assert_eq!(cg.vertex_of(&phi[&h]), cg.vertex_of(&grp.identity()));
    let c = induced(&cg, &phi);
    assert!(is_automorphism(cg.graph(), &c));
    let g_action = verify_subgroup_action(&cg, &grp.generators()).unwrap();
    assert_eq!(g_action.order().unwrap(), 216);
    assert!(!g_action.contains(&c).unwrap());
    let mut gens = g_action.generators().to_vec();
    gens.push(c.clone());
    assert_eq!(PermGroup::new(cg.graph().n(), gens).unwrap().order().unwrap(), 432);
    // c fixes H and one of its neighbours, but swaps the other two
    let h_vertex = cg.vertex_of(&grp.identity());
    assert_eq!(c.apply(h_vertex), h_vertex);
    let moved: Vec<usize> = cg.graph().neighbors(h_vertex).iter().copied().filter(|&u| c.apply(u) != u).collect();
    assert!(moved.len() == 2 || moved.is_empty());
}

#[test]
fn the_same_map_is_not_an_automorphism_at_m2() {
    let grp = Group::new(2).unwrap();
    let mut images = vec![grp.inv(&grp.a()), grp.b()];
    for i in 0..4 {
        let v = grp.v_gen(i);
        images.push(if i % 2 == 0 { v } else { grp.inv(&v) });
    }
    assert!(extend_to_automorphism(&grp, &images).is_none());
}
