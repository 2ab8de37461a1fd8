//! Finite Grothendieck sites and their quantaloids of closed relations.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::enriched::Base;
use crate::error::{input, Error, Result};
use crate::lattice::Elt;
use crate::quantaloid::{Quantaloid, QuantaloidData};

use super::FiniteCategory;

pub type Sieve = BTreeSet<usize>;

const MAX_PAIRS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSite {
    pub category: Arc<FiniteCategory>,
    /// Covering sieves per object.
    pub coverage: Vec<BTreeSet<Sieve>>,
}

impl FiniteSite {
    /// Closes each listed family under precomposition, then checks the topology axioms.
    pub fn new(category: Arc<FiniteCategory>, families: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let coverage = Self::close_families(&category, families)?;
        let site = FiniteSite { category, coverage };
        if let Some(problem) = site.topology_violations().into_iter().next() {
            return Err(Error::Topology(problem));
        }
        Ok(site)
    }

    /// The Grothendieck topology generated by the listed families.
    pub fn generated(category: Arc<FiniteCategory>, families: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut coverage = Self::close_families(&category, families)?;
        let n = category.objects().len();
        for c in 0..n {
            coverage[c].insert(category.arrows_into(c).into_iter().collect());
        }
        let all: Vec<Vec<Sieve>> = (0..n).map(|c| all_sieves(&category, c)).collect();
        loop {
            let mut changed = false;
            for c in 0..n {
                let covers: Vec<Sieve> = coverage[c].iter().cloned().collect();
                for s in &covers {
                    for h in category.arrows_into(c) {
                        let pb = pullback(&category, s, h);
                        changed |= coverage[category.arrow(h).src].insert(pb);
                    }
                }
                for r in &all[c] {
                    if coverage[c].contains(r) {
                        continue;
                    }
                    let locally = coverage[c].iter().any(|s| {
                        s.iter().all(|&h| coverage[category.arrow(h).src].contains(&pullback(&category, r, h)))
                    });
                    if locally {
                        coverage[c].insert(r.clone());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(FiniteSite { category, coverage })
    }

    /// Only maximal sieves cover.
    pub fn trivial(category: Arc<FiniteCategory>) -> Self {
        let n = category.objects().len();
        let families = (0..n).map(|c| vec![category.arrows_into(c)]).collect();
        Self::new(category, families).expect("the trivial topology is a topology")
    }

    fn close_families(category: &FiniteCategory, families: Vec<Vec<Vec<usize>>>) -> Result<Vec<BTreeSet<Sieve>>> {
        let n = category.objects().len();
        if families.len() != n {
            return Err(input("coverage must list every object"));
        }
        let mut coverage = vec![BTreeSet::new(); n];
        for (c, fams) in families.into_iter().enumerate() {
            for fam in fams {
                for &h in &fam {
                    if category.arrow(h).dst != c {
                        return Err(input(format!(
                            "arrow {} in a sieve on {} does not end there",
                            category.arrow(h).name,
                            category.objects()[c]
                        )));
                    }
                }
                coverage[c].insert(sieve_generated(category, &fam));
            }
        }
        Ok(coverage)
    }

    pub fn covers(&self, c: usize, s: &Sieve) -> bool {
        self.coverage[c].contains(s)
    }

    /// Maximality, stability and transitivity failures.
    pub fn topology_violations(&self) -> Vec<String> {
        let cat = &self.category;
        let name = |c: usize| cat.objects()[c].clone();
        let mut out = Vec::new();
        for c in 0..cat.objects().len() {
            let max: Sieve = cat.arrows_into(c).into_iter().collect();
            if !self.covers(c, &max) {
                out.push(format!("maximal sieve on {} does not cover", name(c)));
            }
            for s in &self.coverage[c] {
                for h in cat.arrows_into(c) {
                    let d = cat.arrow(h).src;
                    if !self.covers(d, &pullback(cat, s, h)) {
                        out.push(format!("pullback of a cover of {} along {} does not cover {}", name(c), cat.arrow(h).name, name(d)));
                    }
                }
            }
            for r in all_sieves(cat, c) {
                if self.covers(c, &r) {
                    continue;
                }
                let locally = self.coverage[c]
                    .iter()
                    .any(|s| s.iter().all(|&h| self.covers(cat.arrow(h).src, &pullback(cat, &r, h))));
                if locally {
                    out.push(format!("a sieve on {} covers locally but is not covering", name(c)));
                }
            }
        }
        out
    }
}

/// Arrows `k` with `h ∘ k ∈ s`.
pub fn pullback(cat: &FiniteCategory, s: &Sieve, h: usize) -> Sieve {
    cat.arrows_into(cat.arrow(h).src)
        .into_iter()
        .filter(|&k| cat.compose(h, k).map_or(false, |hk| s.contains(&hk)))
        .collect()
}

/// The sieve generated by a family of arrows into one object.
pub fn sieve_generated(cat: &FiniteCategory, fam: &[usize]) -> Sieve {
    let mut s = Sieve::new();
    for &h in fam {
        for k in cat.arrows_into(cat.arrow(h).src) {
            s.insert(cat.compose(h, k).expect("composable"));
        }
    }
    s
}

fn all_sieves(cat: &FiniteCategory, c: usize) -> Vec<Sieve> {
    let into = cat.arrows_into(c);
    let mut found: BTreeSet<Sieve> = BTreeSet::new();
    let mut stack = vec![Sieve::new()];
    found.insert(Sieve::new());
    while let Some(s) = stack.pop() {
        for &h in &into {
            if s.contains(&h) {
                continue;
            }
            let mut fam: Vec<usize> = s.iter().copied().collect();
            fam.push(h);
            let t = sieve_generated(cat, &fam);
            if found.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    found.into_iter().collect()
}

/// `free`-style data for the quantaloid of closed relations between representables.
#[derive(Debug)]
pub struct RelSite {
    pub site: FiniteSite,
    pub quantaloid: Base,
    /// `pairs[c * n + c']`: pairs `(f: d -> c, g: d -> c')`.
    pairs: Vec<Vec<(usize, usize)>>,
    /// Bitmask of each element, per hom.
    masks: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, Elt>>,
}

struct Closure<'a> {
    site: &'a FiniteSite,
    pairs: &'a [(usize, usize)],
    pos: HashMap<(usize, usize), usize>,
}

impl Closure<'_> {
    fn close(&self, mut m: u64) -> u64 {
        let cat = &self.site.category;
        loop {
            let before = m;
            // precomposition
            for (i, &(f, g)) in self.pairs.iter().enumerate() {
                if m >> i & 1 == 0 {
                    continue;
                }
                for k in cat.arrows_into(cat.arrow(f).src) {
                    let j = self.pos[&(cat.compose(f, k).unwrap(), cat.compose(g, k).unwrap())];
                    m |= 1 << j;
                }
            }
            // local membership along a covering sieve
            for (i, &(f, g)) in self.pairs.iter().enumerate() {
                if m >> i & 1 == 1 {
                    continue;
                }
                let d = cat.arrow(f).src;
                let s: Sieve = cat
                    .arrows_into(d)
                    .into_iter()
                    .filter(|&k| {
                        let j = self.pos[&(cat.compose(f, k).unwrap(), cat.compose(g, k).unwrap())];
                        m >> j & 1 == 1
                    })
                    .collect();
                if self.site.covers(d, &s) {
                    m |= 1 << i;
                }
            }
            if m == before {
                return m;
            }
        }
    }
}

impl RelSite {
    pub fn pairs(&self, c: usize, c2: usize) -> &[(usize, usize)] {
        &self.pairs[c * self.n() + c2]
    }

    fn n(&self) -> usize {
        self.site.category.objects().len()
    }

    pub fn mask(&self, c: usize, c2: usize, e: Elt) -> u64 {
        self.masks[c * self.n() + c2][e]
    }

    pub fn element(&self, c: usize, c2: usize, mask: u64) -> Option<Elt> {
        self.index[c * self.n() + c2].get(&mask).copied()
    }

    /// Closes a set of pairs and returns the element of `hom(c, c2)`.
    pub fn closed(&self, c: usize, c2: usize, pairs: &[(usize, usize)]) -> Elt {
        let ps = self.pairs(c, c2);
        let pos: HashMap<_, _> = ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut m = 0u64;
        for p in pairs {
            m |= 1 << pos[p];
        }
        let cl = Closure { site: &self.site, pairs: ps, pos };
        self.element(c, c2, cl.close(m)).expect("closed relations are elements")
    }

    /// The relation with pairs swapped, as an element of `hom(c2, c)`.
    pub fn converse(&self, c: usize, c2: usize, e: Elt) -> Elt {
        let m = self.mask(c, c2, e);
        let ps = self.pairs(c, c2);
        let swapped: Vec<(usize, usize)> = (0..ps.len()).filter(|i| m >> i & 1 == 1).map(|i| (ps[i].1, ps[i].0)).collect();
        self.closed(c2, c, &swapped)
    }

    /// The graph `{(k, u ∘ k)}` of an arrow `u: d -> c`, closed, in `hom(d, c)`.
    pub fn graph(&self, u: usize) -> Elt {
        let cat = &self.site.category;
        let (d, c) = (cat.arrow(u).src, cat.arrow(u).dst);
        let pairs: Vec<(usize, usize)> = cat.arrows_into(d).into_iter().map(|k| (k, cat.compose(u, k).unwrap())).collect();
        self.closed(d, c, &pairs)
    }
}

/// `hom(c, c')` is the lattice of closed relations between `y(c)` and `y(c')`;
/// composition is the closure of relational composition.
pub fn rel_site_quantaloid(site: &FiniteSite) -> Result<RelSite> {
    if let Some(problem) = site.topology_violations().into_iter().next() {
        return Err(Error::Topology(problem));
    }
    let cat = &site.category;
    let n = cat.objects().len();
    let mut pairs = Vec::with_capacity(n * n);
    for c in 0..n {
        for c2 in 0..n {
            let mut ps = Vec::new();
            for f in cat.arrows_into(c) {
                for g in cat.arrows_into(c2) {
                    if cat.arrow(f).src == cat.arrow(g).src {
                        ps.push((f, g));
                    }
                }
            }
            if ps.len() > MAX_PAIRS {
                return Err(Error::Cap { what: "enumerating relations between representables".into(), cap: MAX_PAIRS });
            }
            pairs.push(ps);
        }
    }
    let mut masks = Vec::with_capacity(n * n);
    let mut index = Vec::with_capacity(n * n);
    for c in 0..n {
        for c2 in 0..n {
            let ps = &pairs[c * n + c2];
            let pos: HashMap<_, _> = ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let cl = Closure { site, pairs: ps, pos };
            let start = cl.close(0);
            let mut found: BTreeSet<u64> = [start].into_iter().collect();
            let mut stack = vec![start];
            while let Some(m) = stack.pop() {
                for i in 0..ps.len() {
                    if m >> i & 1 == 0 {
                        let t = cl.close(m | 1 << i);
                        if found.insert(t) {
                            stack.push(t);
                        }
                    }
                }
            }
            // order elements by size, then mask, so bottom comes first
            let mut ms: Vec<u64> = found.into_iter().collect();
            ms.sort_by_key(|&m| (m.count_ones(), m));
            index.push(ms.iter().enumerate().map(|(i, &m)| (m, i)).collect::<HashMap<_, _>>());
            masks.push(ms);
        }
    }
    let mut partial = RelSite {
        site: site.clone(),
        quantaloid: crate::builders::two_quantale(),
        pairs,
        masks,
        index,
    };
    let mut compose = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (nxy, nyz) = (partial.masks[x * n + y].len(), partial.masks[y * n + z].len());
                let mut table = Vec::with_capacity(nyz * nxy);
                for g in 0..nyz {
                    let sm = partial.masks[y * n + z][g];
                    let s: Vec<(usize, usize)> = (0..partial.pairs[y * n + z].len())
                        .filter(|i| sm >> i & 1 == 1)
                        .map(|i| partial.pairs[y * n + z][i])
                        .collect();
                    for f in 0..nxy {
                        let rm = partial.masks[x * n + y][f];
                        let mut out = Vec::new();
                        for i in 0..partial.pairs[x * n + y].len() {
                            if rm >> i & 1 == 0 {
                                continue;
                            }
                            let (a, b) = partial.pairs[x * n + y][i];
                            for &(b2, c) in &s {
                                if b2 == b {
                                    out.push((a, c));
                                }
                            }
                        }
                        table.push(Some(partial.closed(x, z, &out)));
                    }
                }
                compose.push(table);
            }
        }
    }
    let identities = (0..n)
        .map(|c| {
            let diag: Vec<(usize, usize)> = cat.arrows_into(c).into_iter().map(|f| (f, f)).collect();
            partial.closed(c, c, &diag)
        })
        .collect();
    let homs = (0..n * n)
        .map(|i| {
            let ms = &partial.masks[i];
            let ps = &partial.pairs[i];
            let names = ms.iter().map(|&m| relation_name(cat, ps, m)).collect();
            let k = ms.len();
            let mut leq = vec![false; k * k];
            for a in 0..k {
                for b in 0..k {
                    leq[a * k + b] = ms[a] & !ms[b] == 0;
                }
            }
            (names, leq)
        })
        .collect();
    partial.quantaloid = Quantaloid::new(QuantaloidData { objects: cat.objects().to_vec(), homs, compose, identities })?;
    Ok(partial)
}

fn relation_name(cat: &FiniteCategory, ps: &[(usize, usize)], m: u64) -> String {
    let parts: Vec<String> = (0..ps.len())
        .filter(|i| m >> i & 1 == 1)
        .map(|i| format!("{}|{}", cat.arrow(ps[i].0).name, cat.arrow(ps[i].1).name))
        .collect();
    format!("{{{}}}", parts.join(","))
}
