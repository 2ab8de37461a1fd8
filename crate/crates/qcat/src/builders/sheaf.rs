//! Presheaves of sets on finite sites and sheafification through Cauchy completion.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::completion::{cauchy_completion, PresheafObjectResult, DEFAULT_ENUM_CAP};
use crate::enriched::{Presheaf, VCategory};
use crate::error::{input, Error, Result};

use super::site::{rel_site_quantaloid, RelSite};
use super::{FiniteCategory, FiniteSite};

/// A contravariant set-valued functor on a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafOfSets {
    pub category: Arc<FiniteCategory>,
    /// Element names per object.
    pub sets: Vec<Vec<String>>,
    /// `maps[u][x]`: restriction along `u: d -> c` of `x ∈ F(c)`, an index into `F(d)`.
    pub maps: Vec<Vec<usize>>,
}

impl PresheafOfSets {
    /// Builds all restriction maps from the generators' and checks functoriality.
    pub fn from_generators(category: Arc<FiniteCategory>, sets: Vec<Vec<String>>, gens: &[(String, Vec<usize>)]) -> Result<Self> {
        let cat = &category;
        if sets.len() != cat.objects().len() {
            return Err(input("a set is needed for every object"));
        }
        for (name, m) in gens {
            let a = cat.arrow(cat.find_arrow(name)?);
            if m.len() != sets[a.dst].len() || m.iter().any(|&i| i >= sets[a.src].len()) {
                return Err(input(format!("restriction along {name} has the wrong shape")));
            }
        }
        for (name, _) in cat.generators() {
            if !gens.iter().any(|g| &g.0 == name) {
                return Err(input(format!("no restriction given for {name}")));
            }
        }
        let gen_map = |name: &str| &gens.iter().find(|g| g.0 == name).expect("checked").1;
        let mut maps = Vec::with_capacity(cat.arrows().len());
        for a in cat.arrows() {
            // arrow names are `id_X` or generator paths joined with `;`
            let mut cur: Vec<usize> = (0..sets[a.dst].len()).collect();
            if !a.name.starts_with("id_") {
                for g in a.name.split(';').rev() {
                    let m = gen_map(g);
                    cur = cur.iter().map(|&x| m[x]).collect();
                }
            }
            maps.push(cur);
        }
        let f = PresheafOfSets { category, sets, maps };
        if let Some(p) = f.functoriality_violations().into_iter().next() {
            return Err(Error::Invalid(p));
        }
        Ok(f)
    }

    pub fn restrict(&self, u: usize, x: usize) -> usize {
        self.maps[u][x]
    }

    fn functoriality_violations(&self) -> Vec<String> {
        let cat = &self.category;
        let mut out = Vec::new();
        for c in 0..cat.objects().len() {
            let id = cat.identity(c);
            if self.maps[id].iter().enumerate().any(|(i, &j)| i != j) {
                out.push(format!("identity on {} acts nontrivially", cat.objects()[c]));
            }
        }
        for g in 0..cat.arrows().len() {
            for f in 0..cat.arrows().len() {
                if let Some(h) = cat.compose(g, f) {
                    let ok = (0..self.sets[cat.arrow(g).dst].len())
                        .all(|x| self.maps[h][x] == self.maps[f][self.maps[g][x]]);
                    if !ok {
                        out.push(format!("restriction along {} is not the composite", cat.arrow(h).name));
                    }
                }
            }
        }
        out
    }
}

/// Matching families on covering sieves lacking exactly one amalgamation.
pub fn sheaf_violations(site: &FiniteSite, f: &PresheafOfSets) -> Vec<String> {
    let cat = &site.category;
    let mut out = Vec::new();
    for c in 0..cat.objects().len() {
        for s in &site.coverage[c] {
            for fam in matching_families(cat, f, s) {
                let count = (0..f.sets[c].len())
                    .filter(|&x| s.iter().zip(&fam).all(|(&h, &y)| f.restrict(h, x) == y))
                    .count();
                if count != 1 {
                    out.push(format!(
                        "a matching family on {} has {count} amalgamations",
                        cat.objects()[c]
                    ));
                }
            }
        }
    }
    out
}

/// Matching families for a sieve, as values in sieve order.
pub fn matching_families(cat: &FiniteCategory, f: &PresheafOfSets, s: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let arrows: Vec<usize> = s.iter().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(arrows.len());
    fn go(k: usize, arrows: &[usize], cat: &FiniteCategory, f: &PresheafOfSets, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == arrows.len() {
            out.push(cur.clone());
            return;
        }
        let h = arrows[k];
        for y in 0..f.sets[cat.arrow(h).src].len() {
            // compatible with every earlier h' = h ∘ u and h = h' ∘ u
            let ok = (0..k).all(|j| {
                let h2 = arrows[j];
                cat.arrows_into(cat.arrow(h).src)
                    .into_iter()
                    .all(|u| cat.compose(h, u) != Some(h2) || f.restrict(u, y) == cur[j])
                    && cat.arrows_into(cat.arrow(h2).src).into_iter().all(|u| cat.compose(h2, u) != Some(h) || f.restrict(u, cur[j]) == y)
            });
            if ok {
                cur.push(y);
                go(k + 1, arrows, cat, f, cur, out);
                cur.pop();
            }
        }
    }
    go(0, &arrows, cat, f, &mut cur, &mut out);
    out
}

/// `hom(x, y) = converse(hom(y, x))` for every pair.
pub fn is_symmetric(c: &VCategory, rel: &RelSite) -> bool {
    (0..c.len()).all(|x| (0..c.len()).all(|y| c.hom(x, y) == rel.converse(c.extent(x), c.extent(y), c.hom(y, x))))
}

/// Intermediate data of a sheafification.
#[derive(Debug)]
pub struct SheafifyDetails {
    pub rel: RelSite,
    /// Objects `(c, x)` for `x ∈ F(c)`.
    pub category: Arc<VCategory>,
    pub completion: PresheafObjectResult,
    pub sheaf: PresheafOfSets,
    /// `sections[c]`: members of the completion with extent `c`, in sheaf order.
    pub sections: Vec<Vec<usize>>,
    /// `unit[c][x]`: section of `x`.
    pub unit: Vec<Vec<usize>>,
}

/// The associated sheaf.
pub fn sheafify(site: &FiniteSite, f: &PresheafOfSets) -> Result<PresheafOfSets> {
    Ok(sheafify_with_details(site, f)?.sheaf)
}

pub fn sheafify_with_details(site: &FiniteSite, f: &PresheafOfSets) -> Result<SheafifyDetails> {
    if *site.category != *f.category {
        return Err(Error::Endpoint("presheaf lives on another category".into()));
    }
    let rel = rel_site_quantaloid(site)?;
    let cat = &site.category;
    let n = cat.objects().len();
    let mut objects = Vec::new();
    let mut of = Vec::new();
    for c in 0..n {
        for (x, name) in f.sets[c].iter().enumerate() {
            objects.push((format!("{}:{name}", cat.objects()[c]), c));
            of.push((c, x));
        }
    }
    let m = objects.len();
    let mut hom = vec![0; m * m];
    for (i, &(c, x)) in of.iter().enumerate() {
        for (j, &(c2, x2)) in of.iter().enumerate() {
            // pairs (g: d -> c2, h: d -> c) with F(g)(x2) = F(h)(x), in hom(c2, c)
            let pairs: Vec<(usize, usize)> = rel
                .pairs(c2, c)
                .iter()
                .copied()
                .filter(|&(g, h)| f.restrict(g, x2) == f.restrict(h, x))
                .collect();
            hom[i * m + j] = rel.closed(c2, c, &pairs);
        }
    }
    let category = Arc::new(VCategory::new(rel.quantaloid.clone(), objects, hom)?);
    let completion = cauchy_completion(&category, DEFAULT_ENUM_CAP)?;
    let q = rel.quantaloid.clone();
    let mut reps = vec![Vec::new(); n];
    for (i, &(c, _)) in of.iter().enumerate() {
        reps[c].push(completion.classify(&Presheaf::representable(&category, i)).expect("representables are Cauchy"));
    }
    // representable sections first, in element order
    let mut sections: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in 0..n {
        for &r in &reps[c] {
            if !sections[c].contains(&r) {
                sections[c].push(r);
            }
        }
    }
    for (i, p) in completion.members.iter().enumerate() {
        if !sections[p.extent].contains(&i) {
            sections[p.extent].push(i);
        }
    }
    let unit: Vec<Vec<usize>> = (0..n)
        .map(|c| reps[c].iter().map(|r| sections[c].iter().position(|s| s == r).expect("listed")).collect())
        .collect();
    let mut sets = vec![Vec::new(); n];
    for c in 0..n {
        for (k, _) in sections[c].iter().enumerate() {
            let name = match unit[c].iter().position(|&u| u == k) {
                Some(x) => f.sets[c][x].clone(),
                None => format!("{}#{k}", cat.objects()[c]),
            };
            sets[c].push(name);
        }
    }
    let mut maps = Vec::with_capacity(cat.arrows().len());
    for (u, a) in cat.arrows().iter().enumerate() {
        let (d, c) = (a.src, a.dst);
        let gu = rel.graph(u);
        let mut m = Vec::with_capacity(sections[c].len());
        for &s in &sections[c] {
            let p = &completion.members[s];
            let col = (0..category.len()).map(|o| q.compose(d, c, category.extent(o), p.col[o], gu)).collect();
            let r = completion
                .classify(&Presheaf { extent: d, col })
                .ok_or_else(|| Error::Invalid(format!("restriction along {} leaves the completion", a.name)))?;
            m.push(sections[d].iter().position(|&t| t == r).expect("extent matches"));
        }
        maps.push(m);
    }
    let sheaf = PresheafOfSets { category: cat.clone(), sets, maps };
    if let Some(p) = sheaf.functoriality_violations().into_iter().next() {
        return Err(Error::Invalid(p));
    }
    Ok(SheafifyDetails { rel, category, completion, sheaf, sections, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{Presentation, DEFAULT_PATH_CAP};

    fn point_pair() -> FiniteSite {
        let p = Presentation {
            objects: vec!["a".into(), "b".into(), "X".into()],
            arrows: vec![("i".into(), "a".into(), "X".into()), ("j".into(), "b".into(), "X".into())],
            relations: vec![],
        };
        let cat = Arc::new(FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap());
        let (i, j) = (cat.find_arrow("i").unwrap(), cat.find_arrow("j").unwrap());
        let fams = vec![vec![], vec![], vec![vec![i, j]]];
        FiniteSite::generated(cat, fams).unwrap()
    }

    fn sets(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn constant_two_gains_mixed_sections() {
        let site = point_pair();
        let f = PresheafOfSets::from_generators(
            site.category.clone(),
            sets(&[&["0", "1"], &["0", "1"], &["0", "1"]]),
            &[("i".into(), vec![0, 1]), ("j".into(), vec![0, 1])],
        )
        .unwrap();
        assert!(!sheaf_violations(&site, &f).is_empty());
        let d = sheafify_with_details(&site, &f).unwrap();
        assert_eq!(d.sheaf.sets[2].len(), 4);
        assert!(sheaf_violations(&site, &d.sheaf).is_empty());
        assert!(is_symmetric(&d.category, &d.rel));
    }

    #[test]
    fn empty_stalk_gains_one_section() {
        let site = point_pair();
        let f = PresheafOfSets::from_generators(
            site.category.clone(),
            sets(&[&["*"], &["*"], &[]]),
            &[("i".into(), vec![]), ("j".into(), vec![])],
        )
        .unwrap();
        let s = sheafify(&site, &f).unwrap();
        assert_eq!(s.sets.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert!(sheaf_violations(&site, &s).is_empty());
    }

    #[test]
    fn trivial_topology_changes_nothing() {
        let site = point_pair();
        let site = FiniteSite::trivial(site.category.clone());
        let f = PresheafOfSets::from_generators(
            site.category.clone(),
            sets(&[&["p", "q"], &["r"], &["s", "t"]]),
            &[("i".into(), vec![0, 1]), ("j".into(), vec![0, 0])],
        )
        .unwrap();
        assert!(sheaf_violations(&site, &f).is_empty());
        assert_eq!(sheafify(&site, &f).unwrap(), f);
    }

    #[test]
    fn rejects_nonfunctorial_data() {
        let site = point_pair();
        let bad = PresheafOfSets::from_generators(
            site.category.clone(),
            sets(&[&["*"], &["*"], &["x"]]),
            &[("i".into(), vec![1]), ("j".into(), vec![0])],
        );
        assert!(bad.is_err());
    }
}
