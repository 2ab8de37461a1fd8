//! Categories, functors and distributors enriched in a finite quantaloid.
//!
//! Everything is a matrix of base 1-cells:
//!
//! * `VCategory::hom(x, y)` is a 1-cell `ext(y) -> ext(x)`;
//! * a distributor `p: B ⇸ A` has entries `p(a, b): ext(b) -> ext(a)`, acted on
//!   by `A` from the left and by `B` from the right;
//! * a presheaf of extent `V` on `A` is a distributor `⋆_V ⇸ A`, stored as one
//!   column `p(a): V -> ext(a)`.
//!
//! A chain of distributors `(p1, ..., pn)` is read as the composite
//! `p1 ⊙ ... ⊙ pn`, so `p1` is the one whose target is the anchor.

use std::sync::Arc;

use crate::error::{input, Error, Result};
use crate::lattice::Elt;
use crate::quantaloid::Quantaloid;

pub type Base = Arc<Quantaloid>;

pub(crate) fn same_base(a: &Base, b: &Base) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct VCategory {
    base: Base,
    names: Vec<String>,
    extents: Vec<usize>,
    hom: Vec<Elt>,
}

impl PartialEq for VCategory {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.extents == other.extents
            && self.hom == other.hom
            && same_base(&self.base, &other.base)
    }
}

impl Eq for VCategory {}

pub(crate) fn same_cat(a: &Arc<VCategory>, b: &Arc<VCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl VCategory {
    /// Builds a category from `(name, extent)` pairs and a row-major hom matrix.
    /// Only the shape is checked here; see [`validate_category`] for the axioms.
    pub fn new(base: Base, objects: Vec<(String, usize)>, hom: Vec<Elt>) -> Result<Self> {
        let n = objects.len();
        if hom.len() != n * n {
            return Err(input(format!("hom matrix has {} entries for {n} objects", hom.len())));
        }
        let (names, extents): (Vec<String>, Vec<usize>) = objects.into_iter().unzip();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(input(format!("duplicate object `{name}`")));
            }
        }
        if let Some(&e) = extents.iter().find(|&&e| e >= base.len()) {
            return Err(Error::Extent(format!("extent index {e} is not a base object")));
        }
        for x in 0..n {
            for y in 0..n {
                if hom[x * n + y] >= base.hom(extents[y], extents[x]).len() {
                    return Err(Error::UnknownElement {
                        hom: format!("{},{}", names[x], names[y]),
                        elt: hom[x * n + y].to_string(),
                    });
                }
            }
        }
        Ok(VCategory { base, names, extents, hom })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| input(format!("unknown object `{name}`")))
    }

    #[inline]
    pub fn extent(&self, x: usize) -> usize {
        self.extents[x]
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// `hom(x, y): ext(y) -> ext(x)`.
    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> Elt {
        self.hom[x * self.names.len() + y]
    }

    pub fn hom_matrix(&self) -> &[Elt] {
        &self.hom
    }

    pub fn hom_name(&self, x: usize, y: usize) -> &str {
        self.base.hom(self.extents[y], self.extents[x]).name(self.hom(x, y))
    }

    /// The dual category over the dual base.
    pub fn op(&self) -> VCategory {
        let n = self.len();
        let mut hom = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                hom[x * n + y] = self.hom(y, x);
            }
        }
        VCategory { base: self.base.op(), names: self.names.clone(), extents: self.extents.clone(), hom }
    }

    pub(crate) fn with_base(mut self, base: Base) -> Self {
        self.base = base;
        self
    }
}

/// Category axiom violations, each naming its witness objects.
pub fn validate_category(c: &VCategory) -> Vec<String> {
    let q = &c.base;
    let n = c.len();
    let mut out = Vec::new();
    for x in 0..n {
        let ex = c.extent(x);
        if !q.hom(ex, ex).leq(q.identity(ex), c.hom(x, x)) {
            out.push(format!("identity of {} not below hom({0},{0})", c.name(x)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ex, ey, ez) = (c.extent(x), c.extent(y), c.extent(z));
                let comp = q.compose(ez, ey, ex, c.hom(x, y), c.hom(y, z));
                if !q.hom(ez, ex).leq(comp, c.hom(x, z)) {
                    out.push(format!(
                        "hom({x0},{y0}) ∘ hom({y0},{z0}) not below hom({x0},{z0})",
                        x0 = c.name(x),
                        y0 = c.name(y),
                        z0 = c.name(z)
                    ));
                }
            }
        }
    }
    out
}

/// The one-object category `⋆_V`.
pub fn star_category(base: &Base, v: usize) -> Arc<VCategory> {
    Arc::new(VCategory {
        base: base.clone(),
        names: vec!["*".to_string()],
        extents: vec![v],
        hom: vec![base.identity(v)],
    })
}

#[derive(Clone, Debug)]
pub struct VFunctor {
    dom: Arc<VCategory>,
    cod: Arc<VCategory>,
    map: Vec<usize>,
}

impl PartialEq for VFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_cat(&self.dom, &other.dom) && same_cat(&self.cod, &other.cod)
    }
}

impl VFunctor {
    /// Checks extent preservation and `dom.hom(x,y) ≤ cod.hom(fx,fy)`.
    pub fn new(dom: Arc<VCategory>, cod: Arc<VCategory>, map: Vec<usize>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(Error::Endpoint("functor between categories over different bases".into()));
        }
        if map.len() != dom.len() || map.iter().any(|&y| y >= cod.len()) {
            return Err(input("object map does not fit its domain and codomain"));
        }
        for x in 0..dom.len() {
            if dom.extent(x) != cod.extent(map[x]) {
                return Err(Error::Extent(format!(
                    "{} and its image {} have different extents",
                    dom.name(x),
                    cod.name(map[x])
                )));
            }
        }
        let f = VFunctor { dom, cod, map };
        if let Some((x, y)) = f.first_violation() {
            return Err(Error::Invalid(format!(
                "hom({},{}) is not below the hom of the images",
                f.dom.name(x),
                f.dom.name(y)
            )));
        }
        Ok(f)
    }

    fn first_violation(&self) -> Option<(usize, usize)> {
        let q = self.dom.base();
        for x in 0..self.dom.len() {
            for y in 0..self.dom.len() {
                let l = q.hom(self.dom.extent(y), self.dom.extent(x));
                if !l.leq(self.dom.hom(x, y), self.cod.hom(self.map[x], self.map[y])) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn identity(c: &Arc<VCategory>) -> Self {
        VFunctor { dom: c.clone(), cod: c.clone(), map: (0..c.len()).collect() }
    }

    pub fn dom(&self) -> &Arc<VCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<VCategory> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &VFunctor) -> Result<VFunctor> {
        if !same_cat(g.cod(), &self.dom) {
            return Err(Error::Endpoint("functor composite: codomain and domain differ".into()));
        }
        Ok(VFunctor { dom: g.dom.clone(), cod: self.cod.clone(), map: g.map.iter().map(|&x| self.map[x]).collect() })
    }

    pub fn op(&self) -> VFunctor {
        VFunctor { dom: Arc::new(self.dom.op()), cod: Arc::new(self.cod.op()), map: self.map.clone() }
    }

    /// The functor `⋆_V -> cod` picking out `x`.
    pub fn point(cod: &Arc<VCategory>, x: usize) -> VFunctor {
        VFunctor { dom: star_category(cod.base(), cod.extent(x)), cod: cod.clone(), map: vec![x] }
    }
}

/// All functors `dom -> cod`, in lexicographic order of object maps.
pub fn enumerate_functors(dom: &Arc<VCategory>, cod: &Arc<VCategory>, cap: usize) -> Result<Vec<VFunctor>> {
    if !same_base(dom.base(), cod.base()) {
        return Err(Error::Endpoint("functor enumeration across different bases".into()));
    }
    let q = dom.base().clone();
    let n = dom.len();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn go(
        k: usize,
        map: &mut Vec<usize>,
        dom: &Arc<VCategory>,
        cod: &Arc<VCategory>,
        q: &Quantaloid,
        out: &mut Vec<VFunctor>,
        cap: usize,
    ) -> Result<()> {
        let n = dom.len();
        if k == n {
            if out.len() >= cap {
                return Err(Error::Cap { what: "enumerating functors".into(), cap });
            }
            out.push(VFunctor { dom: dom.clone(), cod: cod.clone(), map: map.clone() });
            return Ok(());
        }
        for c in 0..cod.len() {
            if cod.extent(c) != dom.extent(k) {
                continue;
            }
            map[k] = c;
            let ok = (0..=k).all(|j| {
                q.hom(dom.extent(k), dom.extent(j)).leq(dom.hom(j, k), cod.hom(map[j], map[k]))
                    && q.hom(dom.extent(j), dom.extent(k)).leq(dom.hom(k, j), cod.hom(map[k], map[j]))
            });
            if ok {
                go(k + 1, map, dom, cod, q, out, cap)?;
            }
        }
        Ok(())
    }
    go(0, &mut map, dom, cod, &q, &mut out, cap)?;
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct VDistributor {
    src: Arc<VCategory>,
    dst: Arc<VCategory>,
    mat: Vec<Elt>,
}

impl PartialEq for VDistributor {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat && same_cat(&self.src, &other.src) && same_cat(&self.dst, &other.dst)
    }
}

impl VDistributor {
    /// A distributor `src ⇸ dst` with `mat[a * |src| + b] = p(a, b)`. Shape only.
    pub fn new(src: Arc<VCategory>, dst: Arc<VCategory>, mat: Vec<Elt>) -> Result<Self> {
        if !same_base(src.base(), dst.base()) {
            return Err(Error::Endpoint("distributor between categories over different bases".into()));
        }
        if mat.len() != src.len() * dst.len() {
            return Err(input("distributor matrix has the wrong size"));
        }
        let q = src.base();
        for a in 0..dst.len() {
            for b in 0..src.len() {
                if mat[a * src.len() + b] >= q.hom(src.extent(b), dst.extent(a)).len() {
                    return Err(Error::UnknownElement {
                        hom: format!("{},{}", dst.name(a), src.name(b)),
                        elt: mat[a * src.len() + b].to_string(),
                    });
                }
            }
        }
        Ok(VDistributor { src, dst, mat })
    }

    pub(crate) fn raw(src: Arc<VCategory>, dst: Arc<VCategory>, mat: Vec<Elt>) -> Self {
        debug_assert_eq!(mat.len(), src.len() * dst.len());
        VDistributor { src, dst, mat }
    }

    pub fn src(&self) -> &Arc<VCategory> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<VCategory> {
        &self.dst
    }

    pub fn base(&self) -> &Base {
        self.src.base()
    }

    /// `p(a, b): ext(b) -> ext(a)`.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Elt {
        self.mat[a * self.src.len() + b]
    }

    pub fn matrix(&self) -> &[Elt] {
        &self.mat
    }

    pub fn entry_name(&self, a: usize, b: usize) -> &str {
        self.base().hom(self.src.extent(b), self.dst.extent(a)).name(self.get(a, b))
    }

    /// The presheaf `p(-, b)`.
    pub fn column(&self, b: usize) -> Presheaf {
        Presheaf { extent: self.src.extent(b), col: (0..self.dst.len()).map(|a| self.get(a, b)).collect() }
    }

    /// The copresheaf `p(a, -)`.
    pub fn row(&self, a: usize) -> Copresheaf {
        Copresheaf { extent: self.dst.extent(a), row: (0..self.src.len()).map(|b| self.get(a, b)).collect() }
    }

    /// Transpose over the dual base: `A^op ⇸ B^op` with entry `(b, a)` equal to `p(a, b)`.
    pub fn op(&self) -> VDistributor {
        self.transpose_onto(Arc::new(self.dst.op()), Arc::new(self.src.op()))
    }

    /// Transposes the matrix and attaches the given endpoints (new src, new dst).
    pub(crate) fn transpose_onto(&self, src: Arc<VCategory>, dst: Arc<VCategory>) -> VDistributor {
        let (na, nb) = (self.dst.len(), self.src.len());
        let mut mat = vec![0; na * nb];
        for a in 0..na {
            for b in 0..nb {
                mat[b * na + a] = self.get(a, b);
            }
        }
        VDistributor { src, dst, mat }
    }
}

/// Left and right action violations.
pub fn validate_distributor(p: &VDistributor) -> Vec<String> {
    let q = p.base();
    let (a_cat, b_cat) = (p.dst(), p.src());
    let mut out = Vec::new();
    for a in 0..a_cat.len() {
        for b in 0..b_cat.len() {
            let eb = b_cat.extent(b);
            for a2 in 0..a_cat.len() {
                let v = q.compose(eb, a_cat.extent(a), a_cat.extent(a2), a_cat.hom(a2, a), p.get(a, b));
                if !q.hom(eb, a_cat.extent(a2)).leq(v, p.get(a2, b)) {
                    out.push(format!("left action: {}, {}, {}", a_cat.name(a2), a_cat.name(a), b_cat.name(b)));
                }
            }
            for b2 in 0..b_cat.len() {
                let eb2 = b_cat.extent(b2);
                let v = q.compose(eb2, eb, a_cat.extent(a), p.get(a, b), b_cat.hom(b, b2));
                if !q.hom(eb2, a_cat.extent(a)).leq(v, p.get(a, b2)) {
                    out.push(format!("right action: {}, {}, {}", a_cat.name(a), b_cat.name(b), b_cat.name(b2)));
                }
            }
        }
    }
    out
}

/// A presheaf of extent `V`: one column `col[a]: V -> ext(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    pub extent: usize,
    pub col: Vec<Elt>,
}

/// A copresheaf of extent `V`: one row `row[a]: ext(a) -> V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Copresheaf {
    pub extent: usize,
    pub row: Vec<Elt>,
}

impl Presheaf {
    /// The representable `A(-, a)`.
    pub fn representable(c: &VCategory, a: usize) -> Presheaf {
        Presheaf { extent: c.extent(a), col: (0..c.len()).map(|x| c.hom(x, a)).collect() }
    }

    pub fn is_valid_on(&self, c: &VCategory) -> bool {
        self.check_on(c).is_ok()
    }

    pub fn check_on(&self, c: &VCategory) -> Result<()> {
        let q = c.base();
        if self.col.len() != c.len() || self.extent >= q.len() {
            return Err(input("presheaf does not fit its carrier"));
        }
        for a in 0..c.len() {
            if self.col[a] >= q.hom(self.extent, c.extent(a)).len() {
                return Err(input(format!("presheaf entry at {} outside its hom", c.name(a))));
            }
        }
        for a in 0..c.len() {
            for a2 in 0..c.len() {
                let v = q.compose(self.extent, c.extent(a), c.extent(a2), c.hom(a2, a), self.col[a]);
                if !q.hom(self.extent, c.extent(a2)).leq(v, self.col[a2]) {
                    return Err(Error::Invalid(format!(
                        "presheaf violates the action at ({}, {})",
                        c.name(a2),
                        c.name(a)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_distributor(&self, carrier: &Arc<VCategory>) -> VDistributor {
        VDistributor::raw(star_category(carrier.base(), self.extent), carrier.clone(), self.col.clone())
    }

    pub fn names<'a>(&self, c: &'a VCategory) -> Vec<&'a str> {
        let q = c.base();
        (0..c.len()).map(|a| q.hom(self.extent, c.extent(a)).name(self.col[a])).collect()
    }
}

impl Copresheaf {
    pub fn corepresentable(c: &VCategory, a: usize) -> Copresheaf {
        Copresheaf { extent: c.extent(a), row: (0..c.len()).map(|x| c.hom(a, x)).collect() }
    }

    pub fn is_valid_on(&self, c: &VCategory) -> bool {
        let q = c.base();
        if self.row.len() != c.len() {
            return false;
        }
        for a in 0..c.len() {
            for a2 in 0..c.len() {
                let v = q.compose(c.extent(a2), c.extent(a), self.extent, self.row[a], c.hom(a, a2));
                if !q.hom(c.extent(a2), self.extent).leq(v, self.row[a2]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_distributor(&self, carrier: &Arc<VCategory>) -> VDistributor {
        VDistributor::raw(carrier.clone(), star_category(carrier.base(), self.extent), self.row.clone())
    }
}

/// The full subcategory on `objects` (in the given order) and its inclusion.
pub fn full_subcategory(c: &Arc<VCategory>, objects: &[usize]) -> (Arc<VCategory>, VFunctor) {
    let hom = objects.iter().flat_map(|&x| objects.iter().map(move |&y| c.hom(x, y))).collect();
    let sub = Arc::new(VCategory {
        base: c.base.clone(),
        names: objects.iter().map(|&x| c.names[x].clone()).collect(),
        extents: objects.iter().map(|&x| c.extents[x]).collect(),
        hom,
    });
    let inc = VFunctor { dom: sub.clone(), cod: c.clone(), map: objects.to_vec() };
    (sub, inc)
}

/// The hom matrix viewed as a distributor `A ⇸ A`.
pub fn identity_distributor(c: &Arc<VCategory>) -> VDistributor {
    VDistributor::raw(c.clone(), c.clone(), c.hom.clone())
}

/// `p(f, g)`: entry `(a, b)` is `p(f a, g b)`.
pub fn restrict(p: &VDistributor, f: &VFunctor, g: &VFunctor) -> Result<VDistributor> {
    if !same_cat(f.cod(), p.dst()) || !same_cat(g.cod(), p.src()) {
        return Err(Error::Endpoint("restrict: functor codomains must be the distributor's endpoints".into()));
    }
    let (na, nb) = (f.dom().len(), g.dom().len());
    let mut mat = Vec::with_capacity(na * nb);
    for a in 0..na {
        for b in 0..nb {
            mat.push(p.get(f.apply(a), g.apply(b)));
        }
    }
    Ok(VDistributor::raw(g.dom().clone(), f.dom().clone(), mat))
}

/// `B(1, f): A ⇸ B`, entries `B(b, f a)`.
pub fn companion(f: &VFunctor) -> VDistributor {
    restrict(&identity_distributor(f.cod()), &VFunctor::identity(f.cod()), f).expect("endpoints match")
}

/// `B(f, 1): B ⇸ A`, entries `B(f a, b)`.
pub fn conjoint(f: &VFunctor) -> VDistributor {
    restrict(&identity_distributor(f.cod()), f, &VFunctor::identity(f.cod())).expect("endpoints match")
}

/// `(p ⊙ q)(a, c) = ⋁_b p(a, b) ∘ q(b, c)` for `p: B ⇸ A`, `q: C ⇸ B`.
pub fn compose_dist(p: &VDistributor, q: &VDistributor) -> Result<VDistributor> {
    if !same_cat(p.src(), q.dst()) {
        return Err(Error::Endpoint("compose_dist: middle categories differ".into()));
    }
    let base = p.base();
    let (a_cat, b_cat, c_cat) = (p.dst(), p.src(), q.src());
    let mut mat = Vec::with_capacity(a_cat.len() * c_cat.len());
    for a in 0..a_cat.len() {
        for c in 0..c_cat.len() {
            let (ea, ec) = (a_cat.extent(a), c_cat.extent(c));
            let l = base.hom(ec, ea);
            let v = l.join_all((0..b_cat.len()).map(|b| base.compose(ec, b_cat.extent(b), ea, p.get(a, b), q.get(b, c))));
            mat.push(v);
        }
    }
    Ok(VDistributor::raw(q.src().clone(), p.dst().clone(), mat))
}

/// How a lift aggregates over the middle objects. `Join` exists only to build
/// deliberately wrong lifts for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    Meet,
    Join,
}

fn check_chain(chain: &[VDistributor]) -> Result<()> {
    for w in chain.windows(2) {
        if !same_cat(w[1].dst(), w[0].src()) {
            return Err(Error::Endpoint("weight chain: consecutive distributors do not meet".into()));
        }
    }
    Ok(())
}

/// One-step lift `q ◁ p` for `q: B ⇸ A0`, `p: A1 ⇸ A0`, giving `B ⇸ A1`.
pub fn lift_unary(q: &VDistributor, p: &VDistributor, agg: Aggregate) -> Result<VDistributor> {
    if !same_cat(q.dst(), p.dst()) {
        return Err(Error::Endpoint("lift: the distributors have different targets".into()));
    }
    let base = q.base();
    let (a0, a1, b_cat) = (q.dst(), p.src(), q.src());
    let mut mat = Vec::with_capacity(a1.len() * b_cat.len());
    for a in 0..a1.len() {
        for b in 0..b_cat.len() {
            let (ea, eb) = (a1.extent(a), b_cat.extent(b));
            let l = base.hom(eb, ea);
            let parts = (0..a0.len()).map(|x| base.lift(eb, ea, a0.extent(x), q.get(x, b), p.get(x, a)));
            mat.push(match agg {
                Aggregate::Meet => l.meet_all(parts),
                Aggregate::Join => l.join_all(parts),
            });
        }
    }
    Ok(VDistributor::raw(b_cat.clone(), a1.clone(), mat))
}

/// `q ◁ (p1, ..., pn)` by the pointwise formula: the meet, over tuples of
/// middle objects, of the base lift of `q(a0, b)` through
/// `p1(a0, a1) ∘ ... ∘ pn(a_{n-1}, a)`. The empty chain returns `q`.
pub fn lift_dist(q: &VDistributor, chain: &[VDistributor]) -> Result<VDistributor> {
    lift_dist_with(q, chain, Aggregate::Meet)
}

pub fn lift_dist_with(q: &VDistributor, chain: &[VDistributor], agg: Aggregate) -> Result<VDistributor> {
    check_chain(chain)?;
    let Some(first) = chain.first() else { return Ok(q.clone()) };
    if !same_cat(q.dst(), first.dst()) {
        return Err(Error::Endpoint("lift: the weight is not anchored at the target of q".into()));
    }
    if chain.len() == 1 {
        return lift_unary(q, first, agg);
    }
    let base = q.base().clone();
    let far = chain.last().expect("nonempty").src().clone();
    let b_cat = q.src().clone();
    // composites of entries along every tuple, grouped by (a0, far object)
    let mut paths: Vec<(usize, usize, Elt)> = Vec::new();
    for a0 in 0..first.dst().len() {
        let mut frontier: Vec<(usize, Elt)> = vec![(a0, base.identity(first.dst().extent(a0)))];
        let mut cur = first.dst().clone();
        for p in chain {
            let mut next = Vec::new();
            for &(x, acc) in &frontier {
                for y in 0..p.src().len() {
                    let v = base.compose(p.src().extent(y), cur.extent(x), first.dst().extent(a0), acc, p.get(x, y));
                    next.push((y, v));
                }
            }
            frontier = next;
            cur = p.src().clone();
        }
        paths.extend(frontier.into_iter().map(|(a, v)| (a0, a, v)));
    }
    let mut mat = Vec::with_capacity(far.len() * b_cat.len());
    for a in 0..far.len() {
        for b in 0..b_cat.len() {
            let (ea, eb) = (far.extent(a), b_cat.extent(b));
            let l = base.hom(eb, ea);
            let parts = paths
                .iter()
                .filter(|t| t.1 == a)
                .map(|&(a0, _, v)| base.lift(eb, ea, first.dst().extent(a0), q.get(a0, b), v));
            mat.push(match agg {
                Aggregate::Meet => l.meet_all(parts),
                Aggregate::Join => l.join_all(parts),
            });
        }
    }
    Ok(VDistributor::raw(b_cat, far, mat))
}

/// `q ◁ p1 ◁ p2 ...` one step at a time.
pub fn lift_iterated(q: &VDistributor, chain: &[VDistributor]) -> Result<VDistributor> {
    check_chain(chain)?;
    let mut r = q.clone();
    for p in chain {
        r = lift_unary(&r, p, Aggregate::Meet)?;
    }
    Ok(r)
}

/// `(p1, ..., pm) ▷ q`: the largest `r` with `r ⊙ p1 ⊙ ... ⊙ pm ≤ q`, for
/// `q: X ⇸ Z` and `pm` starting at `X`. Computed as a lift over the dual base.
pub fn ext_dist(chain: &[VDistributor], q: &VDistributor) -> Result<VDistributor> {
    check_chain(chain)?;
    let Some(last) = chain.last() else { return Ok(q.clone()) };
    if !same_cat(last.src(), q.src()) {
        return Err(Error::Endpoint("extension: the weight does not start at the source of q".into()));
    }
    let q_op = q.op();
    let chain_op: Vec<VDistributor> = chain.iter().rev().map(VDistributor::op).collect();
    let r_op = lift_dist(&q_op, &chain_op)?;
    // back to the original base: r: Y ⇸ Z with Y the target of p1
    Ok(r_op.transpose_onto(chain[0].dst().clone(), q.dst().clone()))
}

/// A weight: a chain anchored at a category (needed when the chain is empty).
#[derive(Clone, Debug)]
pub struct Weight {
    anchor: Arc<VCategory>,
    chain: Vec<VDistributor>,
}

impl Weight {
    pub fn new(anchor: Arc<VCategory>, chain: Vec<VDistributor>) -> Result<Self> {
        check_chain(&chain)?;
        if let Some(first) = chain.first() {
            if !same_cat(first.dst(), &anchor) {
                return Err(Error::Endpoint("weight chain does not start at its anchor".into()));
            }
        }
        Ok(Weight { anchor, chain })
    }

    pub fn unary(p: VDistributor) -> Self {
        Weight { anchor: p.dst().clone(), chain: vec![p] }
    }

    pub fn empty(anchor: Arc<VCategory>) -> Self {
        Weight { anchor, chain: Vec::new() }
    }

    pub fn anchor(&self) -> &Arc<VCategory> {
        &self.anchor
    }

    pub fn chain(&self) -> &[VDistributor] {
        &self.chain
    }

    /// The category at the far end of the chain.
    pub fn far(&self) -> &Arc<VCategory> {
        self.chain.last().map(|p| p.src()).unwrap_or(&self.anchor)
    }

    /// The composite `p1 ⊙ ... ⊙ pn` (the identity for the empty chain).
    pub fn normalize(&self) -> VDistributor {
        let mut acc = identity_distributor(&self.anchor);
        for p in &self.chain {
            acc = compose_dist(&acc, p).expect("chain checked");
        }
        acc
    }
}

/// All colimit witnesses for each object of the weight's far end.
#[derive(Clone, Debug)]
pub struct ColimitResult {
    pub far: Arc<VCategory>,
    pub cod: Arc<VCategory>,
    pub witnesses: Vec<Vec<usize>>,
}

impl ColimitResult {
    pub fn exists(&self) -> bool {
        self.witnesses.iter().all(|w| !w.is_empty())
    }

    /// Objects of the far end with no witness.
    pub fn missing(&self) -> Vec<usize> {
        (0..self.witnesses.len()).filter(|&a| self.witnesses[a].is_empty()).collect()
    }

    /// The colimit as a functor, choosing the first witness everywhere.
    pub fn functor(&self) -> Option<VFunctor> {
        if !self.exists() {
            return None;
        }
        let map = self.witnesses.iter().map(|w| w[0]).collect();
        Some(VFunctor { dom: self.far.clone(), cod: self.cod.clone(), map })
    }
}

/// Objects `c(a)` with `X(c a, -) = (X(f, 1) ◁ w)(a, -)`.
pub fn weighted_colimit(w: &Weight, f: &VFunctor) -> Result<ColimitResult> {
    if !same_cat(w.anchor(), f.dom()) {
        return Err(Error::Endpoint("colimit: weight is not anchored at the domain of the functor".into()));
    }
    let x_cat = f.cod().clone();
    let target = lift_dist(&conjoint(f), w.chain())?;
    let far = w.far().clone();
    let witnesses = (0..far.len())
        .map(|a| {
            (0..x_cat.len())
                .filter(|&c| {
                    x_cat.extent(c) == far.extent(a) && (0..x_cat.len()).all(|x| x_cat.hom(c, x) == target.get(a, x))
                })
                .collect()
        })
        .collect();
    Ok(ColimitResult { far, cod: x_cat, witnesses })
}

/// Weighted limit of `f: Z -> X` by `(p1, ..., pm)` with `pm` starting at `Z`.
/// Computed as a colimit in the dual instance.
pub fn weighted_limit(chain: &[VDistributor], f: &VFunctor) -> Result<ColimitResult> {
    check_chain(chain)?;
    let Some(last) = chain.last() else {
        return Ok(ColimitResult {
            far: f.dom().clone(),
            cod: f.cod().clone(),
            witnesses: f.map().iter().map(|&x| limit_witnesses_of_point(f.cod(), x)).collect(),
        });
    };
    if !same_cat(last.src(), f.dom()) {
        return Err(Error::Endpoint("limit: weight does not start at the domain of the functor".into()));
    }
    let f_op = f.op();
    let chain_op: Vec<VDistributor> = chain.iter().rev().map(VDistributor::op).collect();
    let w = Weight::new(f_op.dom().clone(), chain_op)?;
    let r = weighted_colimit(&w, &f_op)?;
    Ok(ColimitResult { far: chain[0].dst().clone(), cod: f.cod().clone(), witnesses: r.witnesses })
}

fn limit_witnesses_of_point(x_cat: &Arc<VCategory>, x: usize) -> Vec<usize> {
    (0..x_cat.len())
        .filter(|&c| x_cat.extent(c) == x_cat.extent(x) && (0..x_cat.len()).all(|y| x_cat.hom(y, c) == x_cat.hom(y, x)))
        .collect()
}
