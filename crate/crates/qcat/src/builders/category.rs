//! Finite categories presented by generators and relations.
//!
//! Paths are written in diagrammatic order: `["f", "g"]` is `f` followed by
//! `g`, i.e. `g ∘ f`. The empty path is an identity.

use std::collections::HashMap;

use crate::error::{input, Error, Result};

pub const DEFAULT_PATH_CAP: usize = 12;
const PATH_LIMIT: usize = 200_000;

#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub objects: Vec<String>,
    /// `(name, src, dst)` by object name.
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category with a full composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    /// `comp[g * m + f] = g ∘ f` when `dst f = src g`.
    comp: Vec<Option<usize>>,
    ids: Vec<usize>,
    /// Generator name to arrow index.
    generators: Vec<(String, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl FiniteCategory {
    /// Enumerates paths up to `cap` arrows and quotients by the relations.
    /// Fails if some path of length `cap` is not equal to a shorter one.
    pub fn from_presentation(p: &Presentation, cap: usize) -> Result<Self> {
        let obj = |name: &str| {
            p.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| input(format!("unknown object `{name}`")))
        };
        let mut gens: Vec<(String, usize, usize)> = Vec::new();
        for (name, s, d) in &p.arrows {
            if gens.iter().any(|g| &g.0 == name) || name.starts_with("id_") {
                return Err(input(format!("bad or duplicate arrow name `{name}`")));
            }
            gens.push((name.clone(), obj(s)?, obj(d)?));
        }
        let gen = |name: &str| {
            gens.iter()
                .position(|g| g.0 == name)
                .ok_or_else(|| input(format!("unknown arrow `{name}`")))
        };
        let parse = |path: &[String]| -> Result<Vec<usize>> {
            let w: Vec<usize> = path.iter().map(|n| gen(n)).collect::<Result<_>>()?;
            for pair in w.windows(2) {
                if gens[pair[0]].2 != gens[pair[1]].1 {
                    return Err(input(format!("path {path:?} is not composable")));
                }
            }
            Ok(w)
        };
        // relations with endpoints; an empty side takes the other side's endpoints
        let mut rels: Vec<(Vec<usize>, Vec<usize>, usize, usize)> = Vec::new();
        for (l, r) in &p.relations {
            let (wl, wr) = (parse(l)?, parse(r)?);
            let ends = |w: &[usize]| w.first().map(|&f| (gens[f].1, gens[*w.last().unwrap()].2));
            let (s, d) = match (ends(&wl), ends(&wr)) {
                (Some(a), Some(b)) if a == b => a,
                (Some(a), None) | (None, Some(a)) if a.0 == a.1 => a,
                _ => return Err(input(format!("relation {l:?} = {r:?} has mismatched endpoints"))),
            };
            rels.push((wl, wr, s, d));
        }

        // all paths up to the cap, keyed by (start object, word)
        let mut paths: Vec<(usize, Vec<usize>)> = (0..p.objects.len()).map(|o| (o, Vec::new())).collect();
        let mut index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let end = |start: usize, w: &[usize]| w.last().map(|&g| gens[g].2).unwrap_or(start);
        let mut layer: Vec<usize> = (0..paths.len()).collect();
        for _ in 0..cap {
            let mut next = Vec::new();
            for &i in &layer {
                let (s, w) = paths[i].clone();
                let e = end(s, &w);
                for (g, gd) in gens.iter().enumerate() {
                    if gd.1 == e {
                        let mut w2 = w.clone();
                        w2.push(g);
                        let k = (s, w2);
                        index.insert(k.clone(), paths.len());
                        next.push(paths.len());
                        paths.push(k);
                        if paths.len() > PATH_LIMIT {
                            return Err(Error::Cap { what: "enumerating paths of the site category".into(), cap: PATH_LIMIT });
                        }
                    }
                }
            }
            layer = next;
        }

        let mut uf = UnionFind((0..paths.len()).collect());
        loop {
            let mut changed = false;
            for i in 0..paths.len() {
                let (s, w) = paths[i].clone();
                for (l, r, rs, _) in &rels {
                    for (from, to) in [(l, r), (r, l)] {
                        // occurrences of `from` as a subword (the empty word occurs at matching objects)
                        for pos in 0..=w.len() {
                            if pos + from.len() > w.len() {
                                break;
                            }
                            if w[pos..pos + from.len()] != from[..] {
                                continue;
                            }
                            if from.is_empty() {
                                let here = if pos == 0 { s } else { gens[w[pos - 1]].2 };
                                if here != *rs {
                                    continue;
                                }
                            }
                            let mut w2 = w[..pos].to_vec();
                            w2.extend_from_slice(to);
                            w2.extend_from_slice(&w[pos + from.len()..]);
                            let start = if w2.is_empty() { s } else { gens[w2[0]].1 };
                            if let Some(&j) = index.get(&(start, w2)) {
                                changed |= uf.union(i, j);
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // classes represented by a path shorter than the cap
        let mut class_of: HashMap<usize, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for (i, (_, w)) in paths.iter().enumerate() {
            if w.len() < cap {
                let r = uf.find(i);
                class_of.entry(r).or_insert_with(|| {
                    reps.push(i);
                    reps.len() - 1
                });
            }
        }
        for (i, (_, w)) in paths.iter().enumerate() {
            if w.len() == cap && !class_of.contains_key(&uf.find(i)) {
                return Err(Error::Cap {
                    what: format!("closing composites (path {:?} has no shorter equal)", w.iter().map(|&g| &gens[g].0).collect::<Vec<_>>()),
                    cap,
                });
            }
        }
        let arrows: Vec<Arrow> = reps
            .iter()
            .map(|&i| {
                let (s, w) = &paths[i];
                let name = if w.is_empty() {
                    format!("id_{}", p.objects[*s])
                } else {
                    w.iter().map(|&g| gens[g].0.as_str()).collect::<Vec<_>>().join(";")
                };
                Arrow { name, src: *s, dst: end(*s, w) }
            })
            .collect();
        let m = arrows.len();
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if arrows[f].dst != arrows[g].src {
                    continue;
                }
                // fold g's generators onto f one at a time, staying under the cap
                let mut cur = reps[f];
                for &gg in &paths[reps[g]].1 {
                    let (s, w) = &paths[cur];
                    let mut w2 = w.clone();
                    w2.push(gg);
                    let j = index[&(*s, w2)];
                    cur = reps[class_of[&uf.find(j)]];
                }
                comp[g * m + f] = Some(class_of[&uf.find(cur)]);
            }
        }
        let ids = (0..p.objects.len()).map(|o| class_of[&uf.find(o)]).collect();
        let generators = gens
            .iter()
            .map(|(name, s, _)| (name.clone(), class_of[&uf.find(index[&(*s, vec![gen(name).unwrap()])])]))
            .collect();
        Ok(FiniteCategory { objects: p.objects.clone(), arrows, comp, ids, generators })
    }

    /// A category with the given objects and only identity arrows.
    pub fn discrete(objects: &[&str]) -> Self {
        let p = Presentation { objects: objects.iter().map(|s| s.to_string()).collect(), ..Default::default() };
        Self::from_presentation(&p, 1).expect("discrete categories are finite")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| input(format!("unknown object `{name}`")))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn find_arrow(&self, name: &str) -> Result<usize> {
        if let Some(&(_, a)) = self.generators.iter().find(|g| g.0 == name) {
            return Ok(a);
        }
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| input(format!("unknown arrow `{name}`")))
    }

    /// Arrow for a diagrammatic path of generator names; the empty path needs `at`.
    pub fn path(&self, names: &[String], at: Option<usize>) -> Result<usize> {
        let mut cur: Option<usize> = at.map(|o| self.ids[o]);
        for n in names {
            let g = self.find_arrow(n)?;
            cur = Some(match cur {
                None => g,
                Some(f) => self.compose(g, f).ok_or_else(|| input(format!("path {names:?} is not composable")))?,
            });
        }
        cur.ok_or_else(|| input("empty path without an object"))
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn identity(&self, o: usize) -> usize {
        self.ids[o]
    }

    /// `g ∘ f`, if composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.arrows.len() + f]
    }

    /// Arrows `x -> y` in index order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == x && self.arrows[a].dst == y).collect()
    }

    /// Arrows into `c`.
    pub fn arrows_into(&self, c: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].dst == c).collect()
    }

    /// Same arrows and names with endpoints swapped.
    pub fn op(&self) -> FiniteCategory {
        let m = self.arrows.len();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[g * m + f] = self.compose(f, g);
            }
        }
        FiniteCategory {
            objects: self.objects.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src }).collect(),
            comp,
            ids: self.ids.clone(),
            generators: self.generators.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn arrow_category() {
        let p = Presentation { objects: vec![s("0"), s("1")], arrows: vec![(s("f"), s("0"), s("1"))], relations: vec![] };
        let c = FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(c.arrows().len(), 3);
        assert_eq!(c.hom(0, 1).len(), 1);
        assert!(c.hom(1, 0).is_empty());
    }

    #[test]
    fn idempotent_collapses() {
        let p = Presentation {
            objects: vec![s("U")],
            arrows: vec![(s("e"), s("U"), s("U"))],
            relations: vec![(vec![s("e"), s("e")], vec![s("e")])],
        };
        let c = FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(c.arrows().len(), 2);
        let e = c.find_arrow("e").unwrap();
        assert_eq!(c.compose(e, e), Some(e));
    }

    #[test]
    fn involution_to_identity() {
        let p = Presentation {
            objects: vec![s("U")],
            arrows: vec![(s("t"), s("U"), s("U"))],
            relations: vec![(vec![s("t"), s("t")], vec![])],
        };
        let c = FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(c.arrows().len(), 2);
        let t = c.find_arrow("t").unwrap();
        assert_eq!(c.compose(t, t), Some(c.identity(0)));
    }

    #[test]
    fn free_loop_is_not_finite() {
        let p = Presentation { objects: vec![s("U")], arrows: vec![(s("e"), s("U"), s("U"))], relations: vec![] };
        assert!(matches!(FiniteCategory::from_presentation(&p, 5), Err(Error::Cap { .. })));
    }

    #[test]
    fn commuting_square() {
        let p = Presentation {
            objects: vec![s("a"), s("b"), s("c"), s("d")],
            arrows: vec![
                (s("f"), s("a"), s("b")),
                (s("g"), s("b"), s("d")),
                (s("h"), s("a"), s("c")),
                (s("k"), s("c"), s("d")),
            ],
            relations: vec![(vec![s("f"), s("g")], vec![s("h"), s("k")])],
        };
        let c = FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(c.hom(0, 3).len(), 1);
        assert_eq!(c.op().hom(3, 0).len(), 1);
    }
}
