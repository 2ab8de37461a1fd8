//! Brute-force oracles shared by the integration tests and the acceptance run.
//! Nothing here calls the library's own enumeration or lifting code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use qcat::builders::{FaithfulFunctor, FiniteCategory, FiniteSite, PresheafOfSets, Presentation, DEFAULT_PATH_CAP};
use qcat::enriched::{Presheaf, VCategory};
use qcat::lattice::Elt;

/// Every column `col[x] ∈ hom(v, ext x)` satisfying the action, for every extent `v`.
pub fn brute_presheaves(a: &VCategory) -> BTreeSet<Presheaf> {
    let q = a.base();
    let n = a.len();
    let mut out = BTreeSet::new();
    for v in 0..q.len() {
        let sizes: Vec<usize> = (0..n).map(|x| q.hom(v, a.extent(x)).len()).collect();
        for col in product(&sizes) {
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    let t = q.compose(v, a.extent(x), a.extent(y), a.hom(y, x), col[x]);
                    q.hom(v, a.extent(y)).leq(t, col[y])
                })
            });
            if ok {
                out.insert(Presheaf { extent: v, col });
            }
        }
    }
    out
}

/// Rows `row[x] ∈ hom(ext x, v)` satisfying the action.
pub fn brute_copresheaves(a: &VCategory, v: usize) -> Vec<Vec<Elt>> {
    let q = a.base();
    let n = a.len();
    let sizes: Vec<usize> = (0..n).map(|x| q.hom(a.extent(x), v).len()).collect();
    product(&sizes)
        .into_iter()
        .filter(|row| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    let t = q.compose(a.extent(y), a.extent(x), v, row[x], a.hom(x, y));
                    q.hom(a.extent(y), v).leq(t, row[y])
                })
            })
        })
        .collect()
}

/// Whether some copresheaf is a right adjoint of `p`: unit and counit checked entry by entry.
pub fn has_right_adjoint(a: &VCategory, p: &Presheaf) -> bool {
    let q = a.base();
    let v = p.extent;
    let n = a.len();
    brute_copresheaves(a, v).into_iter().any(|row| {
        let unit = q.hom(v, v).join_all((0..n).map(|x| q.compose(v, a.extent(x), v, row[x], p.col[x])));
        let counit = (0..n).all(|x| {
            (0..n).all(|y| {
                let t = q.compose(a.extent(y), v, a.extent(x), p.col[x], row[y]);
                q.hom(a.extent(y), a.extent(x)).leq(t, a.hom(x, y))
            })
        });
        q.hom(v, v).leq(q.identity(v), unit) && counit
    })
}

/// Subsets closed downward under `x ≤ y` iff `hom(x, y)` is top, on a category over 2.
pub fn down_set_count(a: &VCategory) -> usize {
    let n = a.len();
    let top = a.base().hom(0, 0).top();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|y| s >> y & 1 == 0 || (0..n).all(|x| a.hom(x, y) != top || s >> x & 1 == 1)))
        .count()
}

pub fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out.into_iter().flat_map(|v| (0..s).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out
}

// ---------------------------------------------------------------- sites

pub fn category(objects: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<FiniteCategory> {
    let p = Presentation {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        arrows: arrows.iter().map(|(a, s, d)| (a.to_string(), s.to_string(), d.to_string())).collect(),
        relations: vec![],
    };
    Arc::new(FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).expect("finite presentation"))
}

pub fn sets(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
}

type Family = BTreeMap<usize, usize>;

/// Compatible families on a sieve, by exhaustive product over its arrows.
fn families(cat: &FiniteCategory, f: &PresheafOfSets, s: &BTreeSet<usize>) -> Vec<Family> {
    let arrows: Vec<usize> = s.iter().copied().collect();
    let sizes: Vec<usize> = arrows.iter().map(|&k| f.sets[cat.arrow(k).src].len()).collect();
    product(&sizes)
        .into_iter()
        .map(|vals| arrows.iter().copied().zip(vals).collect::<Family>())
        .filter(|fam| {
            fam.iter().all(|(&k, &y)| {
                cat.arrows_into(cat.arrow(k).src).into_iter().all(|u| {
                    let ku = cat.compose(k, u).expect("composable");
                    fam[&ku] == f.restrict(u, y)
                })
            })
        })
        .collect()
}

/// Every compatible family on every covering sieve has exactly one amalgamation.
pub fn is_sheaf(site: &FiniteSite, f: &PresheafOfSets) -> bool {
    let cat = &site.category;
    (0..cat.objects().len()).all(|c| {
        site.coverage[c].iter().all(|s| {
            families(cat, f, s).iter().all(|fam| {
                (0..f.sets[c].len()).filter(|&x| fam.iter().all(|(&k, &y)| f.restrict(k, x) == y)).count() == 1
            })
        })
    })
}

/// One plus construction: classes of compatible families on covering sieves,
/// two being equal when they agree on the intersection of their sieves.
/// Returns the new presheaf and the canonical map into it.
pub fn plus(site: &FiniteSite, f: &PresheafOfSets) -> (PresheafOfSets, Vec<Vec<usize>>) {
    let cat = &site.category;
    let n = cat.objects().len();
    let mut classes: Vec<Vec<(BTreeSet<usize>, Family)>> = vec![Vec::new(); n];
    let agree = |a: &(BTreeSet<usize>, Family), b: &(BTreeSet<usize>, Family)| {
        a.0.intersection(&b.0).all(|k| a.1[k] == b.1[k])
    };
    for c in 0..n {
        for s in &site.coverage[c] {
            for fam in families(cat, f, s) {
                let e = (s.clone(), fam);
                if !classes[c].iter().any(|r| agree(r, &e)) {
                    classes[c].push(e);
                }
            }
        }
    }
    let class_of = |c: usize, e: &(BTreeSet<usize>, Family)| classes[c].iter().position(|r| agree(r, e)).expect("covered");
    let mut maps = Vec::new();
    for h in 0..cat.arrows().len() {
        let (d, c) = (cat.arrow(h).src, cat.arrow(h).dst);
        let m = classes[c]
            .iter()
            .map(|(s, fam)| {
                let pulled: Family = cat
                    .arrows_into(d)
                    .into_iter()
                    .filter_map(|k| cat.compose(h, k).filter(|hk| s.contains(hk)).map(|hk| (k, fam[&hk])))
                    .collect();
                class_of(d, &(pulled.keys().copied().collect(), pulled))
            })
            .collect();
        maps.push(m);
    }
    let unit = (0..n)
        .map(|c| {
            let max: BTreeSet<usize> = cat.arrows_into(c).into_iter().collect();
            (0..f.sets[c].len())
                .map(|x| {
                    let fam: Family = max.iter().map(|&k| (k, f.restrict(k, x))).collect();
                    class_of(c, &(max.clone(), fam))
                })
                .collect()
        })
        .collect();
    let sets = (0..n).map(|c| (0..classes[c].len()).map(|i| format!("{}+{i}", cat.objects()[c])).collect()).collect();
    (PresheafOfSets { category: cat.clone(), sets, maps }, unit)
}

/// The associated sheaf as two plus constructions, with the composite unit.
pub fn plus_plus(site: &FiniteSite, f: &PresheafOfSets) -> (PresheafOfSets, Vec<Vec<usize>>) {
    let (f1, u1) = plus(site, f);
    let (f2, u2) = plus(site, &f1);
    let unit = u1.iter().zip(&u2).map(|(a, b)| a.iter().map(|&x| b[x]).collect()).collect();
    (f2, unit)
}

/// Whether a natural bijection `g -> h` exists carrying `unit_g` to `unit_h`.
pub fn isomorphic_under(g: &PresheafOfSets, unit_g: &[Vec<usize>], h: &PresheafOfSets, unit_h: &[Vec<usize>]) -> bool {
    let cat = &g.category;
    let n = cat.objects().len();
    if (0..n).any(|c| g.sets[c].len() != h.sets[c].len()) {
        return false;
    }
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for i in 0..k {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let options: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|c| {
            perms(g.sets[c].len())
                .into_iter()
                .filter(|phi| unit_g[c].iter().zip(&unit_h[c]).all(|(&x, &y)| phi[x] == y))
                .collect()
        })
        .collect();
    fn go(c: usize, cat: &FiniteCategory, g: &PresheafOfSets, h: &PresheafOfSets, opts: &[Vec<Vec<usize>>], cur: &mut Vec<Vec<usize>>) -> bool {
        if c == opts.len() {
            return true;
        }
        for phi in &opts[c] {
            cur.push(phi.clone());
            let natural = cat.arrows().iter().enumerate().all(|(u, a)| {
                let (d, e) = (a.src, a.dst);
                d > c || e > c || (0..g.sets[e].len()).all(|x| cur[d][g.restrict(u, x)] == h.restrict(u, cur[e][x]))
            });
            if natural && go(c + 1, cat, g, h, opts, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, cat, g, h, &options, &mut Vec::new())
}

// ---------------------------------------------------------------- final lifts

/// Sinks `(x_i, b_i: p x_i -> c)` with sources in `sources` and no final lift, as
/// `(c, sink)`. A final lift is an object `z` over `c` receiving every `b_i`
/// such that `g: c -> p y` lifts from `z` exactly when every `g ∘ b_i` lifts from `x_i`.
pub fn sinks_without_final_lift(f: &FaithfulFunctor, sources: &[usize]) -> (usize, Vec<(usize, Vec<(usize, usize)>)>) {
    let b = &f.base;
    let over = |x: usize| f.objects[x].1;
    let lifts = |x: usize, y: usize, a: usize| f.arrows.contains(&(x, y, a));
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in 0..b.objects().len() {
        let legs: Vec<(usize, usize)> =
            sources.iter().flat_map(|&x| b.hom(over(x), c).into_iter().map(move |a| (x, a))).collect();
        assert!(legs.len() <= 16, "too many legs to enumerate sinks");
        for mask in 0u32..1 << legs.len() {
            let sink: Vec<(usize, usize)> = (0..legs.len()).filter(|i| mask >> i & 1 == 1).map(|i| legs[i]).collect();
            checked += 1;
            let ok = (0..f.objects.len()).filter(|&z| over(z) == c).any(|z| {
                sink.iter().all(|&(x, a)| lifts(x, z, a))
                    && (0..f.objects.len()).all(|y| {
                        b.hom(c, over(y)).into_iter().all(|g| {
                            let through = sink.iter().all(|&(x, a)| lifts(x, y, b.compose(g, a).expect("composable")));
                            lifts(z, y, g) == through
                        })
                    })
            });
            if !ok {
                bad.push((c, sink));
            }
        }
    }
    (checked, bad)
}
