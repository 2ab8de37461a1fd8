//! Finite quantaloids.
//!
//! A 1-cell `X -> Y` is an element of the lattice `hom(X, Y)`; `compose(g, f)`
//! is `g ∘ f` with `f` applied first. Residuation is computed by scanning the
//! relevant hom once per query shape and tabulating the answers.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::lattice::{Elt, FiniteLattice};

/// Unvalidated quantaloid data, laid out like [`Quantaloid`].
#[derive(Clone, Debug)]
pub struct QuantaloidData {
    pub objects: Vec<String>,
    /// `homs[x * n + y]`: element names and full order matrix of `hom(x, y)`.
    pub homs: Vec<(Vec<String>, Vec<bool>)>,
    /// `compose[(x * n + y) * n + z][g * |hom(x,y)| + f]` for `g: y -> z`, `f: x -> y`.
    pub compose: Vec<Vec<Option<Elt>>>,
    pub identities: Vec<Elt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Order,
    Lattice,
    Totality,
    Associativity,
    Unit,
    Monotonicity,
    JoinPreservation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

/// Every axiom violation found; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, detail: String) {
        self.violations.push(Violation { axiom, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{:?}: {}", v.axiom, v.detail)?;
        }
        Ok(())
    }
}

/// A 1-cell of the base together with its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneCell {
    pub src: usize,
    pub dst: usize,
    pub elt: Elt,
}

/// A validated finite quantaloid.
#[derive(Debug)]
pub struct Quantaloid {
    objects: Vec<String>,
    homs: Vec<FiniteLattice>,
    compose: Vec<Vec<Elt>>,
    identities: Vec<Elt>,
    lifts: Vec<OnceLock<Vec<Elt>>>,
    exts: Vec<OnceLock<Vec<Elt>>>,
    op: OnceLock<Arc<Quantaloid>>,
}

impl PartialEq for Quantaloid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.compose == other.compose
            && self.identities == other.identities
    }
}

impl Eq for Quantaloid {}

/// Checks every quantaloid axiom on raw data and reports each failure with a witness.
pub fn validate_quantaloid(data: &QuantaloidData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = data.objects.len();
    if data.homs.len() != n * n || data.compose.len() != n * n * n || data.identities.len() != n {
        report.push(Axiom::Totality, "table sizes do not match the object count".into());
        return report;
    }
    let mut lattices = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (names, leq) = &data.homs[x * n + y];
            let hom = format!("{}->{}", data.objects[x], data.objects[y]);
            if leq.len() != names.len() * names.len() {
                report.push(Axiom::Order, format!("hom {hom}: order matrix has wrong size"));
                lattices.push(None);
                continue;
            }
            match FiniteLattice::from_matrix(names.clone(), leq.clone()) {
                Ok(l) => lattices.push(Some(l)),
                Err(problems) => {
                    for p in problems {
                        let axiom = match p {
                            crate::lattice::OrderViolation::Reflexivity(_)
                            | crate::lattice::OrderViolation::Transitivity(..)
                            | crate::lattice::OrderViolation::Antisymmetry(..)
                            | crate::lattice::OrderViolation::DuplicateName(_) => Axiom::Order,
                            _ => Axiom::Lattice,
                        };
                        report.push(axiom, format!("hom {hom}: {p}"));
                    }
                    lattices.push(None);
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    let homs: Vec<FiniteLattice> = lattices.into_iter().map(|l| l.expect("checked")).collect();
    let size = |x: usize, y: usize| homs[x * n + y].len();
    let ename = |x: usize, y: usize, e: Elt| homs[x * n + y].name(e).to_string();

    // totality and typing
    let mut table = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let raw = &data.compose[(x * n + y) * n + z];
                let mut t = vec![0; size(y, z) * size(x, y)];
                if raw.len() != t.len() {
                    report.push(
                        Axiom::Totality,
                        format!(
                            "composition {}->{}->{} has {} entries, expected {}",
                            data.objects[x], data.objects[y], data.objects[z], raw.len(), t.len()
                        ),
                    );
                    table.push(t);
                    continue;
                }
                for g in 0..size(y, z) {
                    for f in 0..size(x, y) {
                        match raw[g * size(x, y) + f] {
                            Some(h) if h < size(x, z) => t[g * size(x, y) + f] = h,
                            _ => report.push(
                                Axiom::Totality,
                                format!(
                                    "composite {} ∘ {} undefined on {}->{}->{}",
                                    ename(y, z, g),
                                    ename(x, y, f),
                                    data.objects[x],
                                    data.objects[y],
                                    data.objects[z]
                                ),
                            ),
                        }
                    }
                }
                table.push(t);
            }
        }
    }
    for (x, &i) in data.identities.iter().enumerate() {
        if i >= size(x, x) {
            report.push(Axiom::Totality, format!("identity of {} is not in its hom", data.objects[x]));
        }
    }
    if !report.is_valid() {
        return report;
    }
    let comp = |x: usize, y: usize, z: usize, g: Elt, f: Elt| table[(x * n + y) * n + z][g * size(x, y) + f];

    // units
    for x in 0..n {
        for y in 0..n {
            for f in 0..size(x, y) {
                let l = comp(x, y, y, data.identities[y], f);
                if l != f {
                    report.push(
                        Axiom::Unit,
                        format!(
                            "{} ∘ {} = {} != {} in {}->{}",
                            ename(y, y, data.identities[y]),
                            ename(x, y, f),
                            ename(x, y, l),
                            ename(x, y, f),
                            data.objects[x],
                            data.objects[y]
                        ),
                    );
                }
                let r = comp(x, x, y, f, data.identities[x]);
                if r != f {
                    report.push(
                        Axiom::Unit,
                        format!(
                            "{} ∘ {} = {} != {} in {}->{}",
                            ename(x, y, f),
                            ename(x, x, data.identities[x]),
                            ename(x, y, r),
                            ename(x, y, f),
                            data.objects[x],
                            data.objects[y]
                        ),
                    );
                }
            }
        }
    }

    // associativity: h ∘ (g ∘ f) = (h ∘ g) ∘ f
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for h in 0..size(z, w) {
                        for g in 0..size(y, z) {
                            let hg = comp(y, z, w, h, g);
                            for f in 0..size(x, y) {
                                let left = comp(x, z, w, h, comp(x, y, z, g, f));
                                let right = comp(x, y, w, hg, f);
                                if left != right {
                                    report.push(
                                        Axiom::Associativity,
                                        format!(
                                            "({}, {}, {}): {} != {}",
                                            ename(z, w, h),
                                            ename(y, z, g),
                                            ename(x, y, f),
                                            ename(x, w, left),
                                            ename(x, w, right)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // monotonicity and preservation of binary joins and bottom, argument by argument
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lyz = &homs[y * n + z];
                let lxy = &homs[x * n + y];
                let lxz = &homs[x * n + z];
                for g in 0..lyz.len() {
                    if comp(x, y, z, g, lxy.bottom()) != lxz.bottom() {
                        report.push(
                            Axiom::JoinPreservation,
                            format!("{} ∘ ⊥ is not ⊥ on {}->{}->{}", lyz.name(g), data.objects[x], data.objects[y], data.objects[z]),
                        );
                    }
                    for f1 in 0..lxy.len() {
                        for f2 in 0..lxy.len() {
                            let a = comp(x, y, z, g, f1);
                            let b = comp(x, y, z, g, f2);
                            if lxy.leq(f1, f2) && !lxz.leq(a, b) {
                                report.push(
                                    Axiom::Monotonicity,
                                    format!("{} ≤ {} but {} ∘ {} ≰ {} ∘ {}", lxy.name(f1), lxy.name(f2), lyz.name(g), lxy.name(f1), lyz.name(g), lxy.name(f2)),
                                );
                            }
                            if f1 < f2 {
                                let j = comp(x, y, z, g, lxy.join(f1, f2));
                                if j != lxz.join(a, b) {
                                    report.push(
                                        Axiom::JoinPreservation,
                                        format!("{} ∘ ({} ∨ {}) != join of composites", lyz.name(g), lxy.name(f1), lxy.name(f2)),
                                    );
                                }
                            }
                        }
                    }
                }
                for f in 0..lxy.len() {
                    if comp(x, y, z, lyz.bottom(), f) != lxz.bottom() {
                        report.push(
                            Axiom::JoinPreservation,
                            format!("⊥ ∘ {} is not ⊥ on {}->{}->{}", lxy.name(f), data.objects[x], data.objects[y], data.objects[z]),
                        );
                    }
                    for g1 in 0..lyz.len() {
                        for g2 in 0..lyz.len() {
                            let a = comp(x, y, z, g1, f);
                            let b = comp(x, y, z, g2, f);
                            if lyz.leq(g1, g2) && !lxz.leq(a, b) {
                                report.push(
                                    Axiom::Monotonicity,
                                    format!("{} ≤ {} but {} ∘ {} ≰ {} ∘ {}", lyz.name(g1), lyz.name(g2), lyz.name(g1), lxy.name(f), lyz.name(g2), lxy.name(f)),
                                );
                            }
                            if g1 < g2 {
                                let j = comp(x, y, z, lyz.join(g1, g2), f);
                                if j != lxz.join(a, b) {
                                    report.push(
                                        Axiom::JoinPreservation,
                                        format!("({} ∨ {}) ∘ {} != join of composites", lyz.name(g1), lyz.name(g2), lxy.name(f)),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

impl Quantaloid {
    /// Validates raw data and builds the quantaloid.
    pub fn new(data: QuantaloidData) -> Result<Arc<Self>> {
        let report = validate_quantaloid(&data);
        if !report.is_valid() {
            return Err(Error::InvalidQuantaloid(report));
        }
        let homs: Vec<FiniteLattice> = data
            .homs
            .into_iter()
            .map(|(names, leq)| FiniteLattice::from_matrix(names, leq).expect("validated"))
            .collect();
        let compose = data
            .compose
            .into_iter()
            .map(|t| t.into_iter().map(|e| e.expect("validated")).collect())
            .collect();
        Ok(Arc::new(Self::assemble(data.objects, homs, compose, data.identities)))
    }

    fn assemble(objects: Vec<String>, homs: Vec<FiniteLattice>, compose: Vec<Vec<Elt>>, identities: Vec<Elt>) -> Self {
        let n = objects.len();
        Quantaloid {
            objects,
            homs,
            compose,
            identities,
            lifts: (0..n * n * n).map(|_| OnceLock::new()).collect(),
            exts: (0..n * n * n).map(|_| OnceLock::new()).collect(),
            op: OnceLock::new(),
        }
    }

    /// Raw data, e.g. for re-validation or mutation.
    pub fn data(&self) -> QuantaloidData {
        QuantaloidData {
            objects: self.objects.clone(),
            homs: self
                .homs
                .iter()
                .map(|l| {
                    let n = l.len();
                    let mut leq = vec![false; n * n];
                    for a in 0..n {
                        for b in 0..n {
                            leq[a * n + b] = l.leq(a, b);
                        }
                    }
                    (l.names().to_vec(), leq)
                })
                .collect(),
            compose: self.compose.iter().map(|t| t.iter().map(|&e| Some(e)).collect()).collect(),
            identities: self.identities.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn find_object(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| input(format!("unknown base object `{name}`")))
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> &FiniteLattice {
        &self.homs[x * self.objects.len() + y]
    }

    /// `g ∘ f` for `f: x -> y`, `g: y -> z`.
    #[inline]
    pub fn compose(&self, x: usize, y: usize, z: usize, g: Elt, f: Elt) -> Elt {
        let n = self.objects.len();
        self.compose[(x * n + y) * n + z][g * self.homs[x * n + y].len() + f]
    }

    #[inline]
    pub fn identity(&self, x: usize) -> Elt {
        self.identities[x]
    }

    /// Largest `r: x -> y` with `g ∘ r ≤ h`, for `h: x -> z`, `g: y -> z`.
    pub fn lift(&self, x: usize, y: usize, z: usize, h: Elt, g: Elt) -> Elt {
        let n = self.objects.len();
        let table = self.lifts[(x * n + y) * n + z].get_or_init(|| {
            let (lxz, lyz, lxy) = (self.hom(x, z), self.hom(y, z), self.hom(x, y));
            let mut t = Vec::with_capacity(lxz.len() * lyz.len());
            for h in lxz.elements() {
                for g in lyz.elements() {
                    t.push(lxy.join_all(lxy.elements().filter(|&r| lxz.leq(self.compose(x, y, z, g, r), h))));
                }
            }
            t
        });
        table[h * self.hom(y, z).len() + g]
    }

    /// Largest `r: y -> z` with `r ∘ f ≤ h`, for `h: x -> z`, `f: x -> y`.
    pub fn extend(&self, x: usize, y: usize, z: usize, h: Elt, f: Elt) -> Elt {
        let n = self.objects.len();
        let table = self.exts[(x * n + y) * n + z].get_or_init(|| {
            let (lxz, lxy, lyz) = (self.hom(x, z), self.hom(x, y), self.hom(y, z));
            let mut t = Vec::with_capacity(lxz.len() * lxy.len());
            for h in lxz.elements() {
                for f in lxy.elements() {
                    t.push(lyz.join_all(lyz.elements().filter(|&r| lxz.leq(self.compose(x, y, z, r, f), h))));
                }
            }
            t
        });
        table[h * self.hom(x, y).len() + f]
    }

    /// The dual quantaloid, cached; `op(op(Q))` equals `Q`.
    pub fn op(&self) -> Arc<Quantaloid> {
        self.op
            .get_or_init(|| Arc::new(op_quantaloid(self)))
            .clone()
    }

    pub fn cell(&self, src: &str, dst: &str, elt: &str) -> Result<OneCell> {
        let s = self.find_object(src)?;
        let d = self.find_object(dst)?;
        let e = self.hom(s, d).find(elt).ok_or_else(|| Error::UnknownElement {
            hom: format!("{src}->{dst}"),
            elt: elt.to_string(),
        })?;
        Ok(OneCell { src: s, dst: d, elt: e })
    }

    pub fn cell_name(&self, c: OneCell) -> &str {
        self.hom(c.src, c.dst).name(c.elt)
    }

    /// Re-runs every axiom check on this quantaloid.
    pub fn validate(&self) -> ValidationReport {
        validate_quantaloid(&self.data())
    }
}

/// Same objects, `hom_op(X, Y) = hom(Y, X)`, composition reversed.
pub fn op_quantaloid(q: &Quantaloid) -> Quantaloid {
    let n = q.len();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(q.hom(y, x).clone());
        }
    }
    let mut compose = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // g ∈ hom_op(y,z) = hom(z,y), f ∈ hom_op(x,y) = hom(y,x); result f ∘ g in hom(z,x)
                let (ng, nf) = (q.hom(z, y).len(), q.hom(y, x).len());
                let mut t = Vec::with_capacity(ng * nf);
                for g in 0..ng {
                    for f in 0..nf {
                        t.push(q.compose(z, y, x, f, g));
                    }
                }
                compose.push(t);
            }
        }
    }
    Quantaloid::assemble(q.objects.clone(), homs, compose, q.identities.clone())
}

fn check_elts(q: &Quantaloid, x: usize, y: usize, s: &[Elt]) -> Result<()> {
    if x >= q.len() || y >= q.len() {
        return Err(input("object outside the quantaloid"));
    }
    if let Some(&bad) = s.iter().find(|&&e| e >= q.hom(x, y).len()) {
        return Err(input(format!("element index {bad} outside hom {}->{}", q.object_name(x), q.object_name(y))));
    }
    Ok(())
}

/// Least upper bound of `s` in `hom(x, y)`; bottom for the empty set.
pub fn join(q: &Quantaloid, x: usize, y: usize, s: &[Elt]) -> Result<Elt> {
    check_elts(q, x, y, s)?;
    Ok(q.hom(x, y).join_all(s.iter().copied()))
}

/// Greatest lower bound of `s` in `hom(x, y)`; top for the empty set.
pub fn meet(q: &Quantaloid, x: usize, y: usize, s: &[Elt]) -> Result<Elt> {
    check_elts(q, x, y, s)?;
    Ok(q.hom(x, y).meet_all(s.iter().copied()))
}

/// `g ↘ h`: the largest `r: X -> Y` with `g ∘ r ≤ h`, for `h: X -> Z`, `g: Y -> Z`.
pub fn right_lift(q: &Quantaloid, h: OneCell, g: OneCell) -> Result<OneCell> {
    if h.dst != g.dst {
        return Err(Error::Endpoint(format!(
            "right_lift: h ends at {}, g ends at {}",
            q.object_name(h.dst),
            q.object_name(g.dst)
        )));
    }
    check_elts(q, h.src, h.dst, &[h.elt])?;
    check_elts(q, g.src, g.dst, &[g.elt])?;
    Ok(OneCell { src: h.src, dst: g.src, elt: q.lift(h.src, g.src, h.dst, h.elt, g.elt) })
}

/// `f ↗ h`: the largest `r: Y -> Z` with `r ∘ f ≤ h`, for `h: X -> Z`, `f: X -> Y`.
pub fn right_extension(q: &Quantaloid, h: OneCell, f: OneCell) -> Result<OneCell> {
    if h.src != f.src {
        return Err(Error::Endpoint(format!(
            "right_extension: h starts at {}, f starts at {}",
            q.object_name(h.src),
            q.object_name(f.src)
        )));
    }
    check_elts(q, h.src, h.dst, &[h.elt])?;
    check_elts(q, f.src, f.dst, &[f.elt])?;
    Ok(OneCell { src: f.dst, dst: h.dst, elt: q.extend(h.src, f.dst, h.dst, h.elt, f.elt) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain_quantale, two_quantale, ChainLaw};

    #[test]
    fn two_quantale_is_valid() {
        assert!(two_quantale().validate().is_valid());
    }

    #[test]
    fn unit_redeclared_as_bottom_is_reported() {
        let q = two_quantale();
        let mut data = q.data();
        data.identities[0] = q.hom(0, 0).bottom();
        let report = validate_quantaloid(&data);
        assert!(report.has(Axiom::Unit));
    }

    #[test]
    fn broken_join_preservation_is_reported() {
        // constant-top composition on 2 is monotone but sends ⊥ to ⊤
        let q = two_quantale();
        let mut data = q.data();
        let top = q.hom(0, 0).top();
        data.compose[0] = vec![Some(top); 4];
        let report = validate_quantaloid(&data);
        assert!(report.has(Axiom::JoinPreservation));
    }

    #[test]
    fn joins_meets_and_lifts_on_chains() {
        let two = two_quantale();
        let (bot, top) = (two.hom(0, 0).bottom(), two.hom(0, 0).top());
        assert_eq!(join(&two, 0, 0, &[bot, top]).unwrap(), top);
        assert_eq!(meet(&two, 0, 0, &[]).unwrap(), top);
        let c = |e| OneCell { src: 0, dst: 0, elt: e };
        assert_eq!(right_lift(&two, c(bot), c(top)).unwrap().elt, bot);
        for x in [bot, top] {
            assert_eq!(right_lift(&two, c(top), c(x)).unwrap().elt, top);
        }
        let three = chain_quantale(3, ChainLaw::Frame);
        let l = three.hom(0, 0);
        let half = l.lookup("1/2").unwrap();
        assert_eq!(join(&three, 0, 0, &[l.lookup("0").unwrap(), half]).unwrap(), half);
        assert_eq!(right_lift(&three, c(half), c(l.lookup("1").unwrap())).unwrap().elt, half);
        assert!(join(&three, 0, 0, &[7]).is_err());
    }

    #[test]
    fn op_is_an_involution() {
        let q = chain_quantale(4, ChainLaw::Lukasiewicz);
        let back = op_quantaloid(&op_quantaloid(&q));
        assert_eq!(*q, back);
        assert!(q.op().validate().is_valid());
    }
}
