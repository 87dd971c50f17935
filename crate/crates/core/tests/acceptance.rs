//! Acceptance criteria, run in order by a plain `main`. Each prints one
//! `criterion N: PASS|FAIL` line; the process fails if any criterion does.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use semireg::extraspecial::Extraspecial;
use semireg::ff3::{is_irreducible, F3Matrix, F3Poly};
use semireg::graphs::{gamma, Graph, Partition};
use semireg::groupg::Group;
use semireg::numth::{zsigmondy_scan, PpdException};
use semireg::permaut::{
    automorphism_group, find_transitive_generators, is_automorphism, semiregular_elements, stabilizer_analysis,
    verify_subgroup_action, PermGroup, DEFAULT_ELEMENT_BUDGET,
};
use semireg::verify::w_factors;
use semireg::Error;

fn report(id: &str, ok: bool, detail: impl AsRef<str>) {
    println!("criterion {id}: {} ({})", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
}

fn within(t: Duration, secs: u64) -> bool {
    t < Duration::from_secs(secs)
}

/// 3-regular, connected, simple and loop-free, checked from the raw adjacency.
fn simple_cubic_connected(g: &Graph) -> bool {
    let adjacency_ok = (0..g.n()).all(|v| {
        let nb = g.neighbors(v);
        let distinct: BTreeSet<usize> = nb.iter().copied().collect();
        nb.len() == 3 && distinct.len() == 3 && !distinct.contains(&v) && nb.iter().all(|&u| g.neighbors(u).contains(&v))
    });
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    adjacency_ok && seen.iter().all(|&s| s) && g.edge_count() * 2 == 3 * g.n()
}

fn criterion_1_construction_scale() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (m, expect, limit) in [(1u32, 108usize, 1u64), (2, 1944, 5), (3, 314_928, 120)] {
        let t = Instant::now();
        let cg = gamma(m).unwrap();
        let elapsed = t.elapsed();
        let g = cg.graph();
        let good = g.n() == expect && simple_cubic_connected(g) && within(elapsed, limit);
        ok &= good;
        detail.push(format!("m={m}: {} vertices in {:.2?}", g.n(), elapsed));
    }
    report("1", ok, detail.join("; "));
    assert!(ok);
}

fn criterion_2_group_relations() {
    let t = Instant::now();
    let mut ok = true;
    for m in 1..=3 {
        let v = Extraspecial::new(m).unwrap();
        let (a, b) = (v.aut_a(), v.aut_b());
        let ord_a = 1u64 << (m + 1);
        ok &= v.verify_relations(&a) && v.verify_relations(&b);
        ok &= v.aut_order(&a).unwrap() == ord_a && v.aut_order(&b).unwrap() == 2;
        // x ↦ ((x^b)^a)^b is the inverse of a
        ok &= v.compose(&b, &v.compose(&a, &b)) == v.aut_pow(&a, ord_a - 1);

        let g = Group::new(m).unwrap();
        let v1 = g.v_gen(0);
        let words = [
            g.product([&g.a(), &g.b()]),
            g.product([&g.b(), &v1]),
            g.product([&g.b(), &g.inv(&v1)]),
        ];
        ok &= words.iter().all(|w| {
            let sq = g.mul(w, w);
            g.is_identity(&sq) && !g.is_identity(w)
        });
    }
    let elapsed = t.elapsed();
    ok &= within(elapsed, 1);
    report("2", ok, format!("m=1,2,3 in {elapsed:.2?}"));
    assert!(ok);
}

fn criterion_3_for(m: u32, expect: u128, limit: u64) -> (bool, String) {
    let cg = gamma(m).unwrap();
    let t = Instant::now();
    let aut = automorphism_group(cg.graph()).unwrap();
    let order = aut.order().unwrap();
    let elapsed = t.elapsed();
    let g_perms = verify_subgroup_action(&cg, &cg.group().generators());
    let members = g_perms.as_ref().map(|gp| gp.generators().iter().all(|p| aut.contains(p).unwrap())).unwrap_or(false);
    let ok = order == expect && members && within(elapsed, limit);
    (ok, format!("m={m}: |Aut| = {order}, expected {expect}, G-generators in Aut: {members}, {elapsed:.2?}"))
}

fn criterion_3_automorphism_group_m1() {
    let (ok, detail) = criterion_3_for(1, 216, 5);
    report("3 (m=1)", ok, detail);
    assert!(ok, "|Aut(Γ_1)| differs from |G|; see the automorphism oracle tests");
}

fn criterion_3_automorphism_group_m2() {
    let (ok, detail) = criterion_3_for(2, 3888, 120);
    report("3 (m=2)", ok, detail);
    assert!(ok);
}

fn criterion_4_semiregular_bound() {
    let bound: BTreeSet<u64> = [1, 2, 3, 6].into();
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=3 {
        let t = Instant::now();
        let spectrum = Group::new(m).unwrap().max_semiregular_order().unwrap();
        let elapsed = t.elapsed();
        ok &= spectrum.orders.is_subset(&bound) && within(elapsed, 600);
        ok &= spectrum.scanned == Group::new(m).unwrap().order();
        detail.push(format!("m={m}: {:?} in {elapsed:.2?}", spectrum.orders));
        if m == 1 {
            let cg = gamma(1).unwrap();
            let gp = verify_subgroup_action(&cg, &cg.group().generators()).unwrap();
            let by_cycles = semiregular_elements(&gp, DEFAULT_ELEMENT_BUDGET).unwrap();
            ok &= by_cycles.orders == spectrum.orders && by_cycles.scanned == 216;
            detail.push(format!("cycle types at m=1: {:?}", by_cycles.orders));
        }
    }
    report("4", ok, detail.join("; "));
    assert!(ok);
}

fn criterion_5_for(m: u32) -> (bool, String) {
    let cg = gamma(m).unwrap();
    let g = cg.graph();
    let grp = cg.group();
    let (a, b, v1) = (grp.a(), grp.b(), grp.v_gen(0));
    let v1i = grp.inv(&v1);
    let vert = |w: &[&semireg::groupg::GElem]| cg.vertex_of(&grp.product(w.iter().copied()));
    let e = grp.identity();
    let hex = [vert(&[&e]), vert(&[&b, &v1]), vert(&[&v1i]), vert(&[&b]), vert(&[&v1]), vert(&[&b, &v1i])];
    let distinct: BTreeSet<usize> = hex.iter().copied().collect();
    let hexagon = distinct.len() == 6 && (0..6).all(|i| g.has_edge(hex[i], hex[(i + 1) % 6]));
    let hab = vert(&[&a, &b]);
    let none = brute_force_six_cycles(g, &[hex[0], hab, hex[1]]) == 0;
    let aut = automorphism_group(g).unwrap();
    let st = stabilizer_analysis(g, &aut, hex[0]).unwrap();
    let ok = hexagon && none && st.stab_order == 2 && st.stab_is_2_group && !st.local_transitive;
    (
        ok,
        format!(
            "m={m}: hexagon {hexagon}, no 6-cycle through H,Hab,Hbv1 {none}, |A_H| = {}, local action transitive {}",
            st.stab_order, st.local_transitive
        ),
    )
}

/// Counts 6-cycles through all of `req` by enumerating closed walks from `req[0]`.
fn brute_force_six_cycles(g: &Graph, req: &[usize]) -> usize {
    let start = req[0];
    let mut found = BTreeSet::new();
    let mut path = vec![start];
    fn walk(g: &Graph, path: &mut Vec<usize>, req: &[usize], found: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == 6 {
            if g.has_edge(last, path[0]) && req.iter().all(|r| path.contains(r)) {
                let mut key = path.clone();
                key.sort();
                found.insert(key);
            }
            return;
        }
        for &u in g.neighbors(last) {
            if !path.contains(&u) {
                path.push(u);
                walk(g, path, req, found);
                path.pop();
            }
        }
    }
    walk(g, &mut path, req, &mut found);
    found.len()
}

fn criterion_5_local_structure_m1() {
    let (ok, detail) = criterion_5_for(1);
    report("5 (m=1)", ok, detail);
    assert!(ok, "A_H at m=1 is larger than 2; see the automorphism oracle tests");
}

fn criterion_5_local_structure_m2() {
    let (ok, detail) = criterion_5_for(2);
    report("5 (m=2)", ok, detail);
    assert!(ok);
}

/// Rank over F_3 of a list of vectors.
fn rank3(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c]; // 1 and 2 are self-inverse mod 3
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let k = rows[r][c];
                for i in 0..cols {
                    rows[r][i] = (rows[r][i] + 3 * 3 - k * rows[rank][i]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mat_vec(m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    m.iter().map(|row| (row.iter().zip(v).map(|(a, b)| (a * b) as u32).sum::<u32>() % 3) as u8).collect()
}

/// Every nonzero vector generates the whole space under the matrices.
fn irreducible_by_brute_force(gens: &[Vec<Vec<u8>>], n: usize) -> bool {
    let total = 3usize.pow(n as u32);
    (1..total).all(|mut idx| {
        let mut v = vec![0u8; n];
        for x in v.iter_mut() {
            *x = (idx % 3) as u8;
            idx /= 3;
        }
        let mut basis = vec![v.clone()];
        let mut queue = vec![v];
        while let Some(w) = queue.pop() {
            for g in gens {
                let u = mat_vec(g, &w);
                let mut trial = basis.clone();
                trial.push(u.clone());
                if rank3(trial) > basis.len() {
                    basis.push(u.clone());
                    queue.push(u);
                }
            }
        }
        basis.len() == n
    })
}

fn criterion_6_module_theory() {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=3u32 {
        let v = Extraspecial::new(m).unwrap();
        let n = v.dim();
        let a = v.matrix_on_w(&v.aut_a()).unwrap();
        let b = v.matrix_on_w(&v.aut_b()).unwrap();
        let irreducible = is_irreducible(&[a.clone(), b.clone()]).unwrap();
        let oracle = irreducible_by_brute_force(&[a.to_rows(), b.to_rows()], n);
        let target = &F3Poly::monomial(n) + &F3Poly::one();
        // A^n = −I with a cyclic vector forces char poly = minimal poly = T^n + 1
        let neg_identity = a.pow(n as u64) == F3Matrix::identity(n).scaled(semireg::ff3::F3::MINUS_ONE);
        let mut krylov = vec![vec![0u8; n]];
        krylov[0][0] = 1;
        for i in 1..n {
            let next = mat_vec(&a.to_rows(), &krylov[i - 1]);
            krylov.push(next);
        }
        let cyclic = rank3(krylov) == n;
        ok &= irreducible && oracle && a.char_poly() == target && neg_identity && cyclic;
        let mut line = format!("m={m}: irreducible {irreducible} (oracle {oracle}), char poly {}", a.char_poly());
        if m >= 2 {
            let (wp, wm) = w_factors(m);
            let factor_ok = &wp * &wm == target;
            let kp = wp.eval_matrix(&a);
            let km = wm.eval_matrix(&a);
            let (w_plus, w_minus) = (kp.kernel(), km.kernel());
            let dims = w_plus.len() == n / 2 && w_minus.len() == n / 2;
            let swap = w_plus.iter().all(|w| km.apply(&b.apply(w)).is_zero())
                && w_minus.iter().all(|w| kp.apply(&b.apply(w)).is_zero());
            ok &= factor_ok && dims && swap;
            line += &format!(", ({wp})({wm}) {factor_ok}, dims {}+{}, b swaps {swap}", w_plus.len(), w_minus.len());
        }
        detail.push(line);
    }
    let elapsed = t.elapsed();
    ok &= within(elapsed, 5);
    report("6", ok, format!("{}; {elapsed:.2?}", detail.join("; ")));
    assert!(ok);
}

fn criterion_7_quotients() {
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=2u32 {
        let cg = gamma(m).unwrap();
        let g = cg.graph();
        let q = g.normal_quotient(&cg.v_orbits()).unwrap().graph;
        let len = 1usize << (m + 1);
        let is_cycle = q.n() == len && q.edge_count() == len && q.is_regular(2) && q.is_connected();
        let same = g.normal_quotient(&Partition::singletons(g.n())).unwrap().graph == *g;
        ok &= is_cycle && same;
        detail.push(format!("m={m}: quotient has {} vertices, {} edges; singletons identical {same}", q.n(), q.edge_count()));
    }
    report("7", ok, detail.join("; "));
    assert!(ok);
}

fn criterion_8_transitive_generation() {
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=2u32 {
        let cg = gamma(m).unwrap();
        let g = cg.graph();
        let aut = automorphism_group(g).unwrap();
        let gens = find_transitive_generators(g, &aut).unwrap();
        let mut seen = vec![false; g.n()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for p in &gens {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let orbit = seen.iter().filter(|&&s| s).count();
        let autos = gens.iter().all(|p| is_automorphism(g, p));
        ok &= gens.len() <= 3 && orbit == g.n() && autos && PermGroup::new(g.n(), gens.clone()).unwrap().is_transitive();
        detail.push(format!("m={m}: {} generators, orbit {orbit}/{}", gens.len(), g.n()));
    }
    report("8", ok, detail.join("; "));
    assert!(ok);
}

/// `x^f − 1` with every prime shared with some `x^s − 1`, `s < f`, removed.
fn primitive_part(x: u64, f: u32) -> BigUint {
    let xb = BigUint::from(x);
    let mut n = xb.pow(f) - 1u32;
    for s in 1..f {
        let other = xb.pow(s) - 1u32;
        loop {
            let g = n.gcd(&other);
            if g.is_one() || g.is_zero() {
                break;
            }
            n /= g;
        }
    }
    n
}

fn criterion_9_zsigmondy() {
    let t = Instant::now();
    let scan = zsigmondy_scan(2..=100, 1..=20).unwrap();
    let elapsed = t.elapsed();
    let mut expected: BTreeSet<(u64, u32)> = [(2, 6), (2, 1)].into();
    for y in 2..=6 {
        expected.insert(((1u64 << y) - 1, 2));
    }
    let mut exceptions = BTreeSet::new();
    let mut ok = within(elapsed, 30) && scan.len() == 99 * 20;
    for e in &scan {
        let part = primitive_part(e.x, e.f);
        match e.result.prime {
            None => {
                exceptions.insert((e.x, e.f));
                let tag_ok = match e.result.exception {
                    Some(PpdException::Degenerate) => (e.x, e.f) == (2, 1),
                    Some(PpdException::TwoSix) => (e.x, e.f) == (2, 6),
                    Some(PpdException::MersenneF2) => e.f == 2 && (e.x + 1).is_power_of_two(),
                    None => false,
                };
                ok &= tag_ok && part.is_one();
            }
            Some(r) => {
                let rb = BigUint::from(r);
                let divides = (&part % &rb).is_zero();
                // no smaller candidate r' ≡ 1 (mod f) divides the primitive part
                let cap = r.min(1 << 20) as u64;
                let f = e.f as u64;
                let smallest = (1..)
                    .map(|k| k * f + 1)
                    .take_while(|&q| q < cap)
                    .filter(|&q| q > 1)
                    .all(|q| (&part % q).to_u64() != Some(0));
                ok &= divides && smallest && r > e.f as u128 && !part.is_one();
            }
        }
    }
    ok &= exceptions == expected;
    report("9", ok, format!("exceptions {exceptions:?}, scan {elapsed:.2?}"));
    assert!(ok);
}

fn criterion_10_out_of_scope() {
    let refused = matches!(gamma(4), Err(Error::Capacity(_)));
    report(
        "10",
        refused,
        "not reproducible here: the non-constructive existence results, the C(2,6) computation \
         without its presentation, and Γ_m for m ≥ 4; gamma(4) is refused with a capacity error",
    );
    assert!(refused);
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 12] = [
        ("criterion_1_construction_scale", criterion_1_construction_scale),
        ("criterion_2_group_relations", criterion_2_group_relations),
        ("criterion_3_automorphism_group_m1", criterion_3_automorphism_group_m1),
        ("criterion_3_automorphism_group_m2", criterion_3_automorphism_group_m2),
        ("criterion_4_semiregular_bound", criterion_4_semiregular_bound),
        ("criterion_5_local_structure_m1", criterion_5_local_structure_m1),
        ("criterion_5_local_structure_m2", criterion_5_local_structure_m2),
        ("criterion_6_module_theory", criterion_6_module_theory),
        ("criterion_7_quotients", criterion_7_quotients),
        ("criterion_8_transitive_generation", criterion_8_transitive_generation),
        ("criterion_9_zsigmondy", criterion_9_zsigmondy),
        ("criterion_10_out_of_scope", criterion_10_out_of_scope),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        if panic::catch_unwind(run).is_err() {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("all acceptance criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
