//! Property checks on `Γ_m` and the JSON certificate that records them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff3::{is_irreducible, F3Matrix, F3Poly};
use crate::graphs::{gamma, CosetGraph, Graph};
use crate::groupg::{GElem, Group};
use crate::permaut::{automorphism_group, semiregular_elements, stabilizer_analysis, verify_subgroup_action, PermGroup};
use crate::permaut::{StabilizerAnalysis, DEFAULT_ELEMENT_BUDGET};

/// Orders a semiregular element of `G` may have.
pub const SEMIREGULAR_BOUND: [u64; 4] = [1, 2, 3, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    /// Order, valency, connectivity and the defining relations.
    Construction,
    /// The vertex stabilizer in `Aut(Γ)` is a 2-group and `Γ` is not arc-transitive.
    TwoGroupStabilizer,
    /// `Aut(Γ) = G`.
    FullAutomorphismGroup,
    /// Every semiregular element has order 1, 2, 3 or 6.
    Semiregular,
    /// `Q` acts irreducibly on `V/⟨z⟩`.
    QIrreducible,
    /// The 6-cycles and the radius-2 neighbourhood of the edge `{H, Hab}`.
    LocalStructure,
    /// The stabilizer dichotomy for cubic vertex-transitive graphs.
    StabilizerOrders,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Construction,
        LemmaId::TwoGroupStabilizer,
        LemmaId::FullAutomorphismGroup,
        LemmaId::Semiregular,
        LemmaId::QIrreducible,
        LemmaId::LocalStructure,
        LemmaId::StabilizerOrders,
    ];

    pub fn key(self) -> &'static str {
        match self {
            LemmaId::Construction => "1",
            LemmaId::TwoGroupStabilizer => "2",
            LemmaId::FullAutomorphismGroup => "4",
            LemmaId::Semiregular => "semireg",
            LemmaId::QIrreducible => "qirr",
            LemmaId::LocalStructure => "figure1",
            LemmaId::StabilizerOrders => "stab",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.key() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lemma {s:?}; expected one of all, 1, 2, 4, semireg, qirr, figure1, stab")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaResult {
    pub status: Status,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_cubic: bool,
    pub is_connected: bool,
    pub aut_order: Option<u64>,
    pub stab_order: Option<u64>,
    pub semiregular_spectrum: Option<Vec<u64>>,
    pub lemma_results: BTreeMap<String, LemmaResult>,
    pub notes: Vec<String>,
    pub tool_version: String,
    pub vertex_numbering: String,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.lemma_results.values().all(|r| r.status != Status::Fail)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.lemma_results.iter().filter(|(_, r)| r.status == Status::Fail).map(|(k, _)| k.as_str()).collect()
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).unwrap_or_default();
        let mut out = serde_json::to_string_pretty(&value).unwrap_or_default();
        out.push('\n');
        out
    }
}

struct Checks(Vec<(bool, String)>);

impl Checks {
    fn new() -> Checks {
        Checks(Vec::new())
    }

    fn check(&mut self, ok: bool, text: impl Into<String>) {
        self.0.push((ok, text.into()));
    }

    fn into_result(self) -> LemmaResult {
        let status = if self.0.iter().all(|(ok, _)| *ok) { Status::Pass } else { Status::Fail };
        let diagnostics =
            self.0.into_iter().map(|(ok, t)| format!("{}: {t}", if ok { "pass" } else { "FAIL" })).collect();
        LemmaResult { status, diagnostics, reason: None }
    }
}

/// The labelled radius-2 neighbourhood of the edge `{H, Hab}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPicture {
    /// Word label and vertex number.
    pub labels: Vec<(String, usize)>,
    /// Edges between labels, as indices into `labels`.
    pub edges: Vec<(usize, usize)>,
}

/// Runs the checks for one `m`, computing shared data once.
pub struct Verifier {
    cg: CosetGraph,
    aut: OnceLock<Result<PermGroup>>,
    g_action: OnceLock<Result<PermGroup>>,
}

impl Verifier {
    pub fn new(m: u32) -> Result<Verifier> {
        Ok(Verifier { cg: gamma(m)?, aut: OnceLock::new(), g_action: OnceLock::new() })
    }

    pub fn m(&self) -> u32 {
        self.cg.group().m()
    }

    pub fn coset_graph(&self) -> &CosetGraph {
        &self.cg
    }

    fn group(&self) -> &Group {
        self.cg.group()
    }

    fn graph(&self) -> &Graph {
        self.cg.graph()
    }

    /// `Aut(Γ_m)`; a capacity error beyond the search limit.
    pub fn automorphisms(&self) -> Result<&PermGroup> {
        self.aut.get_or_init(|| automorphism_group(self.graph())).as_ref().map_err(Clone::clone)
    }

    /// `G` as a permutation group on the vertices.
    pub fn g_action(&self) -> Result<&PermGroup> {
        self.g_action
            .get_or_init(|| verify_subgroup_action(&self.cg, &self.group().generators()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn vertex(&self, word: &[GElem]) -> usize {
        self.cg.vertex_of(&self.group().product(word))
    }

    pub fn run(&self, id: LemmaId) -> LemmaResult {
        let outcome = match id {
            LemmaId::Construction => self.check_construction(),
            LemmaId::TwoGroupStabilizer => self.check_two_group(),
            LemmaId::FullAutomorphismGroup => self.check_full_group(),
            LemmaId::Semiregular => self.check_semiregular().map(|(c, _)| c),
            LemmaId::QIrreducible => self.check_qirr(),
            LemmaId::LocalStructure => self.check_local_structure(),
            LemmaId::StabilizerOrders => self.check_stabilizer_orders(),
        };
        match outcome {
            Ok(checks) => checks.into_result(),
            Err(Error::Capacity(why)) => {
                LemmaResult { status: Status::Skipped, diagnostics: Vec::new(), reason: Some(format!("capacity: {why}")) }
            }
            Err(e) => LemmaResult { status: Status::Fail, diagnostics: vec![format!("FAIL: {e}")], reason: None },
        }
    }

    pub fn certificate(&self, ids: &[LemmaId]) -> Certificate {
        let mut lemma_results = BTreeMap::new();
        let mut spectrum = None;
        for &id in ids {
            let result = if id == LemmaId::Semiregular {
                match self.check_semiregular() {
                    Ok((checks, s)) => {
                        spectrum = Some(s);
                        checks.into_result()
                    }
                    Err(_) => self.run(id),
                }
            } else {
                self.run(id)
            };
            lemma_results.insert(id.key().to_string(), result);
        }
        let aut_order = self.aut.get().and_then(|r| r.as_ref().ok()).and_then(|a| a.order().ok()).map(|o| o as u64);
        let stab_order = aut_order.map(|o| o / self.graph().n() as u64);
        let g = self.graph();
        Certificate {
            m: self.m(),
            vertex_count: g.n(),
            edge_count: g.edge_count(),
            is_cubic: g.is_cubic(),
            is_connected: g.is_connected(),
            aut_order,
            stab_order,
            semiregular_spectrum: spectrum,
            lemma_results,
            notes: vec![
                "primitive prime divisors: x = 2, f = 1 gives x^f - 1 = 1, which has no prime divisor; \
                 it is reported as a degenerate case rather than as one of the two exceptions"
                    .to_string(),
            ],
            tool_version: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            vertex_numbering: self.group().numbering_scheme(),
        }
    }

    fn check_construction(&self) -> Result<Checks> {
        let grp = self.group();
        let v = grp.v_group();
        let g = self.graph();
        let m = self.m();
        let mut c = Checks::new();
        let expected = (1u64 << (m + 1)) * 3u64.pow((1 << m) + 1);
        c.check(g.n() as u64 == expected, format!("{} vertices, expected 2^(m+1)·3^(2^m+1) = {expected}", g.n()));
        c.check(2 * g.edge_count() == 3 * g.n(), format!("{} edges", g.edge_count()));
        c.check(g.is_cubic(), "every vertex has degree 3");
        c.check(g.is_connected(), "connected");
        let s = crate::graphs::gamma_connection(grp);
        let mut expected_nbrs: Vec<usize> = s.iter().map(|x| self.cg.vertex_of(x)).collect();
        expected_nbrs.sort_unstable();
        let h = self.cg.vertex_of(&grp.identity());
        c.check(g.neighbors(h) == expected_nbrs.as_slice(), "N(H) = {Hab, Hbv1, Hbv1^-1}");
        c.check(s.iter().all(|x| grp.is_identity(&grp.mul(x, x))), "(ab)^2 = (bv1)^2 = (bv1^-1)^2 = 1");
        let (a, b) = (v.aut_a(), v.aut_b());
        c.check(v.verify_relations(&a) && v.verify_relations(&b), "a and b preserve the defining relations of V");
        c.check(v.aut_order(&a)? == 1 << (m + 1), format!("a has order 2^{}", m + 1));
        c.check(v.aut_order(&b)? == 2, "b has order 2");
        let bab = v.compose(&v.compose(&b, &a), &b);
        c.check(bab == v.aut_pow(&a, (1 << (m + 1)) - 1), "bab = a^-1");
        let orbits = self.cg.orbit_partition(&grp.generators());
        c.check(orbits.block_count() == 1, "G is transitive on vertices");
        Ok(c)
    }

    fn check_two_group(&self) -> Result<Checks> {
        let aut = self.automorphisms()?;
        let st = stabilizer_analysis(self.graph(), aut, self.cg.vertex_of(&self.group().identity()))?;
        let index = aut.order()? / self.group().order() as u128;
        let mut c = Checks::new();
        c.check(st.stab_is_2_group, format!("|A_H| = {} is a power of 2", st.stab_order));
        c.check(
            aut.order()? % self.group().order() as u128 == 0 && index.is_power_of_two(),
            format!("|A : G| = {index} is a power of 2"),
        );
        c.check(!st.local_transitive, "A_H is intransitive on N(H), so Γ is not arc-transitive");
        Ok(c)
    }

    fn check_full_group(&self) -> Result<Checks> {
        let aut = self.automorphisms()?;
        let gp = self.g_action()?;
        let mut c = Checks::new();
        c.check(
            gp.generators().iter().all(|p| aut.contains(p).unwrap_or(false)),
            "every generator of G induces an automorphism",
        );
        let order = aut.order()?;
        c.check(
            order == self.group().order() as u128,
            format!("|Aut(Γ)| = {order}, |G| = {}", self.group().order()),
        );
        Ok(c)
    }

    fn check_semiregular(&self) -> Result<(Checks, Vec<u64>)> {
        let symbolic = self.group().max_semiregular_order()?;
        let orders: Vec<u64> = symbolic.orders.iter().copied().collect();
        let mut c = Checks::new();
        c.check(
            orders.iter().all(|o| SEMIREGULAR_BOUND.contains(o)),
            format!("semiregular orders of G: {orders:?} ({} elements scanned)", symbolic.scanned),
        );
        if self.graph().n() <= crate::permaut::MAX_AUT_VERTICES {
            let from_cycles = semiregular_elements(self.g_action()?, DEFAULT_ELEMENT_BUDGET)?;
            c.check(from_cycles.orders == symbolic.orders, "cycle types of G on Ω give the same spectrum");
            let aut = self.automorphisms()?;
            let full = semiregular_elements(aut, DEFAULT_ELEMENT_BUDGET)?;
            let full_orders: Vec<u64> = full.orders.iter().copied().collect();
            c.check(
                full_orders.iter().all(|o| SEMIREGULAR_BOUND.contains(o)),
                format!("semiregular orders of Aut(Γ): {full_orders:?}"),
            );
        }
        Ok((c, orders))
    }

    fn check_qirr(&self) -> Result<Checks> {
        let v = self.group().v_group();
        let m = self.m();
        let n = v.dim();
        let a = v.matrix_on_w(&v.aut_a())?;
        let b = v.matrix_on_w(&v.aut_b())?;
        let mut c = Checks::new();
        c.check(is_irreducible(&[a.clone(), b.clone()])?, "Q acts irreducibly on V/<z>");
        let target = &F3Poly::monomial(n) + &F3Poly::one();
        c.check(a.char_poly() == target, format!("char poly of a is {target}"));
        if m >= 2 {
            let (p_plus, p_minus) = w_factors(m);
            c.check(&p_plus * &p_minus == target, format!("{target} = ({p_plus})({p_minus})"));
            let w_plus = p_plus.eval_matrix(&a).kernel();
            let w_minus = p_minus.eval_matrix(&a).kernel();
            let half = n / 2;
            c.check(
                w_plus.len() == half && w_minus.len() == half,
                format!("dim W+ = {}, dim W- = {}", w_plus.len(), w_minus.len()),
            );
            let in_kernel = |k: &F3Matrix, w: &crate::ff3::F3Vec| k.apply(w).is_zero();
            let kp = p_plus.eval_matrix(&a);
            let km = p_minus.eval_matrix(&a);
            c.check(
                w_plus.iter().all(|w| in_kernel(&km, &b.apply(w))) && w_minus.iter().all(|w| in_kernel(&kp, &b.apply(w))),
                "b swaps W+ and W-",
            );
        }
        Ok(c)
    }

    /// Word labels of the radius-2 neighbourhood of `{H, Hab}` and its 13 edges.
    pub fn local_picture(&self) -> LocalPicture {
        let g = self.group();
        let n = g.v_group().dim();
        let (a, b) = (g.a(), g.b());
        let ai = g.inv(&a);
        let a2 = g.pow(&a, 2);
        let v1 = g.v_gen(0);
        let v1i = g.inv(&v1);
        let vn = g.v_gen(n - 1);
        let vni = g.inv(&vn);
        let words: Vec<(&str, Vec<GElem>)> = vec![
            ("1", vec![]),
            ("ab", vec![a.clone(), b.clone()]),
            ("bv1", vec![b.clone(), v1.clone()]),
            ("bv1^-1", vec![b.clone(), v1i.clone()]),
            ("v1", vec![v1.clone()]),
            ("av1^-1", vec![a.clone(), v1i.clone()]),
            ("v1^-1", vec![v1i.clone()]),
            ("av1", vec![a.clone(), v1.clone()]),
            ("a^-1vn", vec![ai.clone(), vn.clone()]),
            ("a^-1vn^-1", vec![ai.clone(), vni.clone()]),
            ("abvn^-1", vec![a.clone(), b.clone(), vni.clone()]),
            ("a^2bvn", vec![a2.clone(), b.clone(), vn.clone()]),
            ("a^2bvn^-1", vec![a2.clone(), b.clone(), vni.clone()]),
            ("abvn", vec![a.clone(), b.clone(), vn.clone()]),
        ];
        let labels: Vec<(String, usize)> = words.iter().map(|(l, w)| (l.to_string(), self.vertex(w))).collect();
        let edges = vec![
            (0, 1),
            (1, 8),
            (1, 9),
            (8, 10),
            (8, 11),
            (9, 12),
            (9, 13),
            (0, 3),
            (0, 2),
            (3, 4),
            (3, 5),
            (2, 6),
            (2, 7),
        ];
        LocalPicture { labels, edges }
    }

    fn check_local_structure(&self) -> Result<Checks> {
        let g = self.graph();
        let grp = self.group();
        let (b, v1) = (grp.b(), grp.v_gen(0));
        let v1i = grp.inv(&v1);
        let hex = [
            self.vertex(&[]),
            self.vertex(&[b.clone(), v1.clone()]),
            self.vertex(std::slice::from_ref(&v1i)),
            self.vertex(std::slice::from_ref(&b)),
            self.vertex(std::slice::from_ref(&v1)),
            self.vertex(&[b.clone(), v1i.clone()]),
        ];
        let mut c = Checks::new();
        let distinct: BTreeSet<usize> = hex.iter().copied().collect();
        let closed = (0..6).all(|i| g.has_edge(hex[i], hex[(i + 1) % 6]));
        c.check(distinct.len() == 6 && closed, "(H, Hbv1, Hv1^-1, Hb, Hv1, Hbv1^-1) is a 6-cycle");
        let through = g.cycles_through(&[hex[0], hex[1], hex[5]], 6)?;
        let as_set = |cyc: &[usize]| cyc.iter().copied().collect::<BTreeSet<usize>>();
        c.check(
            through.iter().any(|cyc| as_set(cyc) == distinct),
            format!("{} 6-cycle(s) through H, Hbv1, Hbv1^-1, including the one above", through.len()),
        );
        let hab = self.vertex(&[grp.a(), b.clone()]);
        let none = g.cycles_through(&[hex[0], hab, hex[1]], 6)?;
        c.check(none.is_empty(), format!("{} 6-cycle(s) through H, Hab, Hbv1", none.len()));

        let pic = self.local_picture();
        let ball = g.ball(&[hex[0], hab], 2);
        let ids: BTreeSet<usize> = pic.labels.iter().map(|(_, v)| *v).collect();
        c.check(ids.len() == 14, format!("the 14 labels name {} distinct vertices", ids.len()));
        c.check(ball.vertices.iter().copied().collect::<BTreeSet<_>>() == ids, "ball of radius 2 around {H, Hab} is the labelled set");
        let tree_ok = pic.edges.iter().all(|&(i, j)| g.has_edge(pic.labels[i].1, pic.labels[j].1));
        c.check(tree_ok, "all 13 drawn edges are edges of Γ");
        c.check(ball.graph.edge_count() == 13, format!("the ball induces {} edges", ball.graph.edge_count()));
        Ok(c)
    }

    fn check_stabilizer_orders(&self) -> Result<Checks> {
        let aut = self.automorphisms()?;
        let h = self.cg.vertex_of(&self.group().identity());
        let st: StabilizerAnalysis = stabilizer_analysis(self.graph(), aut, h)?;
        let mut c = Checks::new();
        c.check(st.kernel_is_2_group, format!("kernel on N(H) has order {}", st.kernel_order));
        let three_two = st.stab_order.is_multiple_of(3) && (st.stab_order / 3).is_power_of_two();
        c.check(
            st.stab_is_2_group || (st.local_transitive && three_two),
            format!("|A_H| = {}, local action of order {}", st.stab_order, st.local_action_order),
        );
        Ok(c)
    }
}

/// `T^(2^(m-1)) ± T^(2^(m-2)) − 1`.
pub fn w_factors(m: u32) -> (F3Poly, F3Poly) {
    let hi = F3Poly::monomial(1 << (m - 1));
    let lo = F3Poly::monomial(1 << (m - 2));
    let one = F3Poly::one();
    (&(&hi + &lo) - &one, &(&hi - &lo) - &one)
}

/// Runs the selected checks on `Γ_m`.
pub fn run_verification(m: u32, ids: &[LemmaId]) -> Result<Certificate> {
    Ok(Verifier::new(m)?.certificate(ids))
}
