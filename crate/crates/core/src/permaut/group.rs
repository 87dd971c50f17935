use std::collections::VecDeque;
use std::sync::OnceLock;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Limit on stored transversal entries (points × orbit length, both
/// directions) for a stabilizer chain.
pub const MAX_CHAIN_ENTRIES: usize = 60_000_000;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// For each orbit point `β`: `t_β` with `point^t_β = β`, and its inverse.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn build(point: usize, gens: &[&Permutation], degree: usize) -> Level {
        let mut transversal: Vec<Option<(Permutation, Permutation)>> = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[point] = Some((id.clone(), id));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let beta = orbit[k];
            k += 1;
            for s in gens {
                let gamma = s.apply(beta);
                if transversal[gamma].is_none() {
                    let t = transversal[beta].as_ref().map(|(t, _)| t.compose(s)).unwrap_or_else(|| (*s).clone());
                    let ti = t.inverse();
                    transversal[gamma] = Some((t, ti));
                    orbit.push(gamma);
                }
            }
        }
        Level { point, orbit, transversal }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier–Sims. The base starts with `prefix` and is
    /// extended by the least point moved by each new strong generator.
    pub fn build(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Result<StabChain> {
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::Parameter(format!("base point {p} out of range")));
        }
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap_or(0));
            }
        }
        let mut chain = StabChain { degree, base, strong, levels: Vec::new() };
        chain.levels = (0..chain.base.len())
            .map(|i| Level { point: chain.base[i], orbit: vec![chain.base[i]], transversal: Vec::new() })
            .collect();
        let mut i = chain.base.len();
        while i > 0 {
            let level = i - 1;
            chain.rebuild_level(level)?;
            match chain.schreier_residue(level) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == chain.base.len() {
                        let p = residue.first_moved().unwrap_or(0);
                        chain.base.push(p);
                        chain.levels.push(Level { point: p, orbit: vec![p], transversal: Vec::new() });
                    }
                    chain.strong.push(residue);
                    i = j + 1;
                }
            }
        }
        // levels whose generators gained nothing may still hold empty tables
        for l in 0..chain.levels.len() {
            if chain.levels[l].transversal.is_empty() {
                chain.rebuild_level(l)?;
            }
        }
        Ok(chain)
    }

    fn level_gens(&self, level: usize) -> Vec<&Permutation> {
        let prefix = &self.base[..level];
        self.strong.iter().filter(|g| prefix.iter().all(|&b| g.apply(b) == b)).collect()
    }

    fn rebuild_level(&mut self, level: usize) -> Result<()> {
        let gens = self.level_gens(level);
        let built = Level::build(self.base[level], &gens, self.degree);
        if built.orbit.len() * self.degree * 2 > MAX_CHAIN_ENTRIES {
            return Err(Error::Capacity(format!(
                "transversal of length {} on {} points is too large",
                built.orbit.len(),
                self.degree
            )));
        }
        self.levels[level] = built;
        Ok(())
    }

    /// First Schreier generator at `level` that does not sift through the
    /// levels below, with the level where sifting stopped.
    fn schreier_residue(&self, level: usize) -> Option<(Permutation, usize)> {
        let gens = self.level_gens(level);
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let (t_beta, _) = lv.transversal[beta].as_ref()?;
            for s in &gens {
                let gamma = s.apply(beta);
                let (_, t_gamma_inv) = lv.transversal[gamma].as_ref()?;
                let h = t_beta.compose(s).compose(t_gamma_inv);
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift_from(h, level + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let lv = &self.levels[l];
            let beta = h.apply(lv.point);
            match lv.transversal.get(beta).and_then(Option::as_ref) {
                Some((_, t_inv)) => h = h.compose(t_inv),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    /// Residue after sifting and the level where it stopped.
    pub fn sift(&self, h: &Permutation) -> (Permutation, usize) {
        self.sift_from(h.clone(), 0)
    }

    pub fn contains(&self, h: &Permutation) -> bool {
        h.degree() == self.degree && self.sift(h).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Strong generators fixing the first `level` base points.
    pub fn generators_at(&self, level: usize) -> Vec<Permutation> {
        self.level_gens(level).into_iter().cloned().collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels.get(level)?.transversal.get(point)?.as_ref().map(|(t, _)| t)
    }

    /// Order of the pointwise stabilizer of the first `level` base points.
    pub fn stabilizer_order(&self, level: usize) -> u128 {
        self.levels[level.min(self.levels.len())..].iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn order(&self) -> u128 {
        self.stabilizer_order(0)
    }

    /// Visits every element exactly once, as `u_(k-1) ⋯ u_1 u_0` with `u_i`
    /// from the `i`-th transversal.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        self.visit(0, &Permutation::identity(self.degree), &mut f);
    }

    fn visit(&self, level: usize, acc: &Permutation, f: &mut impl FnMut(&Permutation)) {
        if level == self.levels.len() {
            f(acc);
            return;
        }
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            if let Some((t, _)) = &lv.transversal[beta] {
                self.visit(level + 1, &t.compose(acc), f);
            }
        }
    }
}

/// A permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Result<StabChain>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, generators: self.generators.clone(), chain: self.chain.clone() }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Parameter(format!("generator of degree {} in a group of degree {degree}", g.degree())));
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> Result<&StabChain> {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// A fresh chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> Result<StabChain> {
        StabChain::build(self.degree, &self.generators, prefix)
    }

    pub fn order(&self) -> Result<u128> {
        Ok(self.chain()?.order())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::Parameter("degree mismatch".into()));
        }
        Ok(self.chain()?.contains(p))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !done[p] {
                let o = self.orbit(p);
                for &x in &o {
                    done[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn for_each_element(&self, f: impl FnMut(&Permutation)) -> Result<()> {
        self.chain()?.for_each_element(f);
        Ok(())
    }
}
