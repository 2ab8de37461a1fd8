//! Free quantaloids on finite categories and the faithful-functor dictionary.
//!
//! In `free_quantaloid(B)` the element with index `mask` of `hom(X, Y)` is the
//! subset of `B(X, Y)` selected by the bits of `mask`, in arrow index order.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::enriched::{Base, VCategory};
use crate::error::{input, Error, Result};
use crate::quantaloid::{Quantaloid, QuantaloidData};

use super::FiniteCategory;

const MAX_HOM_SET: usize = 12;

fn subset_name(c: &FiniteCategory, arrows: &[usize], mask: usize) -> String {
    let parts: Vec<&str> = (0..arrows.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| c.arrow(arrows[i]).name.as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// `hom(X, Y)` is the powerset of `B(X, Y)`; composition is elementwise, units are `{id}`.
pub fn free_quantaloid(b: &FiniteCategory) -> Result<Base> {
    let n = b.objects().len();
    let homsets: Vec<Vec<usize>> = (0..n * n).map(|i| b.hom(i / n, i % n)).collect();
    if let Some(h) = homsets.iter().find(|h| h.len() > MAX_HOM_SET) {
        return Err(Error::Cap { what: "building a powerset hom".into(), cap: h.len().min(MAX_HOM_SET) });
    }
    let mut homs = Vec::with_capacity(n * n);
    for h in &homsets {
        let size = 1usize << h.len();
        let names = (0..size).map(|m| subset_name(b, h, m)).collect();
        let mut leq = vec![false; size * size];
        for s in 0..size {
            for t in 0..size {
                leq[s * size + t] = s & !t == 0;
            }
        }
        homs.push((names, leq));
    }
    let mut compose = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (&homsets[x * n + y], &homsets[y * n + z], &homsets[x * n + z]);
                let mut table = Vec::with_capacity((1 << hyz.len()) * (1 << hxy.len()));
                for g in 0..1usize << hyz.len() {
                    for f in 0..1usize << hxy.len() {
                        let mut out = 0usize;
                        for (i, &ga) in hyz.iter().enumerate() {
                            if g >> i & 1 == 0 {
                                continue;
                            }
                            for (j, &fa) in hxy.iter().enumerate() {
                                if f >> j & 1 == 1 {
                                    let h = b.compose(ga, fa).expect("composable");
                                    let k = hxz.iter().position(|&a| a == h).expect("composite lands in the hom-set");
                                    out |= 1 << k;
                                }
                            }
                        }
                        table.push(Some(out));
                    }
                }
                compose.push(table);
            }
        }
    }
    let identities = (0..n)
        .map(|x| 1usize << homsets[x * n + x].iter().position(|&a| a == b.identity(x)).expect("identity"))
        .collect();
    Quantaloid::new(QuantaloidData { objects: b.objects().to_vec(), homs, compose, identities })
}

/// A faithful functor into `B`, stored as a concrete category: each arrow of
/// the domain is identified with its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulFunctor {
    pub base: Arc<FiniteCategory>,
    /// `(name, F(x))`.
    pub objects: Vec<(String, usize)>,
    /// `(x, y, b)`: an arrow `x -> y` over the `B`-arrow `b`.
    pub arrows: BTreeSet<(usize, usize, usize)>,
}

impl FaithfulFunctor {
    /// Validates typing, identities and closure under composition.
    pub fn new(base: Arc<FiniteCategory>, objects: Vec<(String, usize)>, arrows: BTreeSet<(usize, usize, usize)>) -> Result<Self> {
        let nb = base.objects().len();
        if objects.iter().any(|o| o.1 >= nb) {
            return Err(input("object over an unknown base object"));
        }
        for &(x, y, b) in &arrows {
            if x >= objects.len() || y >= objects.len() {
                return Err(input("arrow between unknown objects"));
            }
            let a = base.arrow(b);
            if a.src != objects[x].1 || a.dst != objects[y].1 {
                return Err(input(format!("arrow over {} has the wrong endpoints", a.name)));
            }
        }
        for (x, o) in objects.iter().enumerate() {
            if !arrows.contains(&(x, x, base.identity(o.1))) {
                return Err(input(format!("missing identity on {}", o.0)));
            }
        }
        for &(x, y, f) in &arrows {
            for &(y2, z, g) in arrows.range((y, 0, 0)..(y + 1, 0, 0)) {
                debug_assert_eq!(y, y2);
                let h = base.compose(g, f).expect("typed");
                if !arrows.contains(&(x, z, h)) {
                    return Err(input(format!(
                        "composite of arrows over {} and {} is missing",
                        base.arrow(f).name,
                        base.arrow(g).name
                    )));
                }
            }
        }
        Ok(FaithfulFunctor { base, objects, arrows })
    }

    /// Arrows `x -> y` of the domain, as `B`-arrows.
    pub fn lifts(&self, x: usize, y: usize) -> Vec<usize> {
        self.arrows.range((x, y, 0)..=(x, y, usize::MAX)).map(|t| t.2).collect()
    }
}

fn mask_of(homset: &[usize], arrows: &[usize]) -> usize {
    arrows
        .iter()
        .map(|a| 1usize << homset.iter().position(|h| h == a).expect("arrow in hom-set"))
        .sum()
}

/// Objects over `F(x)`; `hom(x, y)` is the set of `B`-arrows `F y -> F x` that lift to `y -> x`.
pub fn faithful_to_vcat(f: &FaithfulFunctor, q: &Base) -> Result<Arc<VCategory>> {
    if q.objects() != f.base.objects() {
        return Err(Error::Endpoint("base quantaloid is not the free quantaloid of the functor's base".into()));
    }
    let n = f.objects.len();
    let mut hom = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let homset = f.base.hom(f.objects[y].1, f.objects[x].1);
            hom[x * n + y] = mask_of(&homset, &f.lifts(y, x));
        }
    }
    Ok(Arc::new(VCategory::new(q.clone(), f.objects.clone(), hom)?))
}

/// Inverse of [`faithful_to_vcat`] for categories over `free_quantaloid(base)`.
pub fn vcat_to_faithful(c: &VCategory, base: &Arc<FiniteCategory>) -> Result<FaithfulFunctor> {
    if c.base().objects() != base.objects() {
        return Err(Error::Endpoint("category is not over the free quantaloid of this base".into()));
    }
    let n = c.len();
    let mut arrows = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let homset = base.hom(c.extent(y), c.extent(x));
            let mask = c.hom(x, y);
            for (i, &a) in homset.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    arrows.insert((y, x, a));
                }
            }
        }
    }
    let objects = (0..n).map(|x| (c.name(x).to_string(), c.extent(x))).collect();
    FaithfulFunctor::new(base.clone(), objects, arrows)
}
