//! Decision procedures for structural predicates, with reports that carry
//! counterexamples.
//!
//! Every quantifier over functors or distributors is discharged by exhaustive
//! enumeration under a cap; running out of budget yields `Inconclusive`,
//! never `Pass`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::completion::{colimit_closure, enumerate_presheaves, presheaf_hom, PresheafObjectResult, WeightClass};
use crate::enriched::{
    compose_dist, conjoint, enumerate_functors, identity_distributor, lift_dist, restrict, same_cat, weighted_colimit,
    Presheaf, VCategory, VDistributor, VFunctor, Weight,
};
use crate::error::{Error, Result};

/// Default bound on enumerated candidates in checks.
pub const DEFAULT_CHECK_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates, then inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A violated equation or inequality at named objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub clause: String,
    pub objects: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new(property: impl Into<String>) -> Self {
        CheckReport { property: property.into(), verdict: Verdict::Pass, clauses: Vec::new(), witnesses: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// Records a clause; a failing clause must come with witnesses.
    pub fn clause(&mut self, name: &str, witnesses: Vec<Witness>) -> &mut Self {
        let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        self.verdict = self.verdict.and(verdict);
        self.clauses.push(Clause { name: name.into(), verdict, note: None });
        self.witnesses.extend(witnesses);
        self
    }

    pub fn inconclusive(&mut self, name: &str, note: impl Into<String>) -> &mut Self {
        self.verdict = self.verdict.and(Verdict::Inconclusive);
        self.clauses.push(Clause { name: name.into(), verdict: Verdict::Inconclusive, note: Some(note.into()) });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        if let Some(c) = self.clauses.last_mut() {
            c.note = Some(note.into());
        }
        self
    }

    /// Folds a sub-report in as one clause.
    pub fn absorb(&mut self, name: &str, sub: CheckReport) -> &mut Self {
        self.verdict = self.verdict.and(sub.verdict);
        let note = sub.clauses.iter().find_map(|c| c.note.clone());
        self.clauses.push(Clause { name: name.into(), verdict: sub.verdict, note });
        self.witnesses.extend(sub.witnesses);
        self
    }

    fn from_cap(property: &str, clause: &str, e: Error) -> Result<CheckReport> {
        if e.is_resource() {
            let mut r = CheckReport::new(property);
            r.inconclusive(clause, e.to_string());
            Ok(r)
        } else {
            Err(e)
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.property, self.verdict)?;
        for c in &self.clauses {
            write!(f, "  {:<40} {}", c.name, c.verdict)?;
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        for w in self.witnesses.iter().take(10) {
            writeln!(f, "  witness [{}] at ({}): expected {}, found {}", w.clause, w.objects.join(", "), w.expected, w.actual)?;
        }
        if self.witnesses.len() > 10 {
            writeln!(f, "  ... {} more witnesses", self.witnesses.len() - 10)?;
        }
        Ok(())
    }
}

/// Entrywise differences between two distributors with the same endpoints.
pub fn matrix_witnesses(clause: &str, expected: &VDistributor, actual: &VDistributor) -> Vec<Witness> {
    let (a_cat, b_cat) = (expected.dst(), expected.src());
    let mut out = Vec::new();
    for a in 0..a_cat.len() {
        for b in 0..b_cat.len() {
            if expected.get(a, b) != actual.get(a, b) {
                out.push(Witness {
                    clause: clause.into(),
                    objects: vec![a_cat.name(a).into(), b_cat.name(b).into()],
                    expected: expected.entry_name(a, b).into(),
                    actual: actual.entry_name(a, b).into(),
                });
            }
        }
    }
    out
}

/// `dom(x, y) = cod(f x, f y)` for all `x, y`.
pub fn is_fully_faithful(f: &VFunctor) -> CheckReport {
    let (d, c) = (f.dom(), f.cod());
    let mut w = Vec::new();
    for x in 0..d.len() {
        for y in 0..d.len() {
            if d.hom(x, y) != c.hom(f.apply(x), f.apply(y)) {
                w.push(Witness {
                    clause: "hom preserved".into(),
                    objects: vec![d.name(x).into(), d.name(y).into()],
                    expected: d.hom_name(x, y).into(),
                    actual: c.hom_name(f.apply(x), f.apply(y)).into(),
                });
            }
        }
    }
    let mut r = CheckReport::new("fully faithful");
    r.clause("hom preserved", w);
    r
}

/// `p ◁ p` is the identity distributor of the source.
pub fn is_dense(p: &VDistributor) -> CheckReport {
    let lifted = lift_dist(p, std::slice::from_ref(p)).expect("a distributor lifts through itself");
    let mut r = CheckReport::new("dense");
    r.clause("self-lift is the identity", matrix_witnesses("self-lift is the identity", &identity_distributor(p.src()), &lifted));
    r
}

/// Density of the conjoint `cod(f, 1)`.
pub fn is_dense_functor(f: &VFunctor) -> CheckReport {
    let mut r = is_dense(&conjoint(f));
    r.property = "dense functor".into();
    r
}

/// Columns at distinct objects of equal extent are distinct. This decides
/// monicity because both functor equality and restriction are computed
/// object by object.
pub fn is_monic(p: &VDistributor) -> CheckReport {
    let src = p.src();
    let mut seen: HashMap<Presheaf, usize> = HashMap::new();
    let mut w = Vec::new();
    for b in 0..src.len() {
        let col = p.column(b);
        if let Some(&b0) = seen.get(&col) {
            w.push(Witness {
                clause: "columns distinct".into(),
                objects: vec![src.name(b0).into(), src.name(b).into()],
                expected: "distinct columns".into(),
                actual: "equal columns".into(),
            });
        } else {
            seen.insert(col, b);
        }
    }
    let mut r = CheckReport::new("monic");
    r.clause("columns distinct", w);
    r
}

/// A computed colimit: weight index, diagram and chosen colimit functor.
#[derive(Clone, Debug)]
pub struct ColimitEntry {
    pub weight: usize,
    pub diagram: VFunctor,
    pub colimit: Option<VFunctor>,
}

/// Colimits in `e` of every functor from each weight's anchor.
pub fn colimit_table(e: &Arc<VCategory>, weights: &[Weight], cap: usize) -> Result<Vec<ColimitEntry>> {
    let mut out = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        for f in enumerate_functors(w.anchor(), e, cap)? {
            let colimit = weighted_colimit(w, &f)?.functor();
            out.push(ColimitEntry { weight: i, diagram: f, colimit });
            if out.len() > cap {
                return Err(Error::Cap { what: "tabulating colimits".into(), cap });
            }
        }
    }
    Ok(out)
}

fn missing_witness(weights: &[Weight], e: &ColimitEntry) -> Witness {
    let f = &e.diagram;
    Witness {
        clause: "colimit exists".into(),
        objects: (0..f.dom().len()).map(|x| format!("{}->{}", f.dom().name(x), f.cod().name(f.apply(x)))).collect(),
        expected: format!("colimit for weight {} of length {}", e.weight, weights[e.weight].chain().len()),
        actual: "no object with the required homs".into(),
    }
}

/// `j(1, c) = j(1, f) ⊙ w` for a colimit `c` of `f` by `w`, with `j: E ⇸ A`.
fn absoluteness_witnesses(j: &VDistributor, w: &Weight, f: &VFunctor, c: &VFunctor) -> Result<Vec<Witness>> {
    let id_a = VFunctor::identity(j.dst());
    let lhs = restrict(j, &id_a, c)?;
    let mut rhs = restrict(j, &id_a, f)?;
    for p in w.chain() {
        rhs = compose_dist(&rhs, p)?;
    }
    Ok(matrix_witnesses("colimit is absolute", &rhs, &lhs))
}

/// Every weight admits colimits of every functor into `E`, and they are `j`-absolute.
pub fn is_atom(j: &VDistributor, weights: &[Weight], cap: usize) -> Result<CheckReport> {
    const P: &str = "atom";
    let table = match colimit_table(j.src(), weights, cap) {
        Ok(t) => t,
        Err(e) => return CheckReport::from_cap(P, "colimit exists", e),
    };
    let mut missing = Vec::new();
    let mut absolute = Vec::new();
    for e in &table {
        match &e.colimit {
            None => missing.push(missing_witness(weights, e)),
            Some(c) => absolute.extend(absoluteness_witnesses(j, &weights[e.weight], &e.diagram, c)?),
        }
    }
    let mut r = CheckReport::new(P);
    r.clause("colimit exists", missing).clause("colimit is absolute", absolute);
    Ok(r)
}

/// `p = p(j, 1) ◁ E(j, 1)` for `p: X ⇸ E` and `j: A -> E`.
pub fn has_rank(p: &VDistributor, j: &VFunctor) -> Result<CheckReport> {
    let restricted = restrict(p, j, &VFunctor::identity(p.src()))?;
    let lifted = lift_dist(&restricted, &[conjoint(j)])?;
    let mut r = CheckReport::new("rank");
    r.clause("recovered from restriction", matrix_witnesses("recovered from restriction", p, &lifted));
    Ok(r)
}

/// Rank of a functor `f: E -> X`, through its conjoint.
pub fn functor_has_rank(f: &VFunctor, j: &VFunctor) -> Result<CheckReport> {
    has_rank(&conjoint(f), j)
}

/// `p(c, 1) = p(f, 1) ◁ w` for `p: X ⇸ E`.
pub fn respects_colimit(p: &VDistributor, w: &Weight, f: &VFunctor, colim: &VFunctor) -> Result<CheckReport> {
    let id_x = VFunctor::identity(p.src());
    let lhs = restrict(p, colim, &id_x)?;
    let rhs = lift_dist(&restrict(p, f, &id_x)?, w.chain())?;
    let mut r = CheckReport::new("respects colimit");
    r.clause("restriction is the lift", matrix_witnesses("restriction is the lift", &rhs, &lhs));
    Ok(r)
}

/// Respect for every tabulated colimit that exists.
pub fn is_exact_on(p: &VDistributor, weights: &[Weight], table: &[ColimitEntry]) -> Result<CheckReport> {
    let mut w = Vec::new();
    for e in table {
        if let Some(c) = &e.colimit {
            w.extend(respects_colimit(p, &weights[e.weight], &e.diagram, c)?.witnesses);
        }
    }
    let mut r = CheckReport::new("exact");
    r.clause("respects every colimit", w);
    Ok(r)
}

pub fn is_exact(p: &VDistributor, weights: &[Weight], cap: usize) -> Result<CheckReport> {
    match colimit_table(p.dst(), weights, cap) {
        Ok(t) => is_exact_on(p, weights, &t),
        Err(e) => CheckReport::from_cap("exact", "respects every colimit", e),
    }
}

/// Fully faithful, dense, and an atom for its own conjoint weight.
pub fn is_well_behaved(j: &VFunctor, cap: usize) -> Result<CheckReport> {
    let c = conjoint(j);
    let mut r = CheckReport::new("well behaved");
    r.absorb("fully faithful", is_fully_faithful(j))
        .absorb("dense", is_dense_functor(j))
        .absorb("atom for the conjoint weight", is_atom(&c, &[Weight::unary(c.clone())], cap)?);
    Ok(r)
}

/// Structural checks on a presheaf object against the class it was built on.
pub fn verify_presheaf_object(r: &PresheafObjectResult, class: &[Presheaf]) -> CheckReport {
    let a = &r.carrier;
    let mut rep = CheckReport::new("presheaf object");
    rep.absorb("projection dense", is_dense(&r.pi)).absorb("projection monic", is_monic(&r.pi));

    let mut w = Vec::new();
    for (i, p) in r.members.iter().enumerate() {
        for (k, q) in r.members.iter().enumerate() {
            let via = lift_dist(&q.to_distributor(a), &[p.to_distributor(a)]).expect("same carrier").get(0, 0);
            if r.psh.hom(i, k) != via {
                let l = a.base().hom(q.extent, p.extent);
                w.push(Witness {
                    clause: "hom is the lift".into(),
                    objects: vec![r.psh.name(i).into(), r.psh.name(k).into()],
                    expected: l.name(via).into(),
                    actual: r.psh.hom_name(i, k).into(),
                });
            }
        }
    }
    rep.clause("hom is the lift", w);

    // every class member is classified by exactly one object, and every object is a member
    let mut w = Vec::new();
    for p in class {
        let hits: Vec<usize> = (0..r.psh.len()).filter(|&x| r.pi.column(x) == *p).collect();
        if hits.len() != 1 || r.classify(p) != hits.first().copied() {
            w.push(Witness {
                clause: "unique classifying object".into(),
                objects: p.names(a).into_iter().map(String::from).collect(),
                expected: "one object".into(),
                actual: format!("{} objects", hits.len()),
            });
        }
    }
    for x in 0..r.psh.len() {
        if !class.contains(&r.pi.column(x)) {
            w.push(Witness {
                clause: "restriction stays in the class".into(),
                objects: vec![r.psh.name(x).into()],
                expected: "a class member".into(),
                actual: "a column outside the class".into(),
            });
        }
    }
    rep.clause("classification bijective", w);

    let reps_in = (0..a.len()).all(|x| class.contains(&Presheaf::representable(a, x)));
    let w = if reps_in == r.yoneda.is_some() {
        Vec::new()
    } else {
        vec![Witness {
            clause: "embedding present iff representables".into(),
            objects: vec![],
            expected: reps_in.to_string(),
            actual: r.yoneda.is_some().to_string(),
        }]
    };
    rep.clause("embedding present iff representables", w);
    if let Some(y) = &r.yoneda {
        rep.absorb("embedding fully faithful", is_fully_faithful(y)).absorb("embedding dense", is_dense_functor(y));
    }
    rep
}

/// Intrinsic characterisation of a cocompletion `j: A -> E` under the
/// weights `Φ` (all anchored over `A`'s base), plus uniqueness of exact
/// extensions of presheaves on `A`.
pub fn verify_cocompletion(j: &VFunctor, phi: &[Weight], cap: usize) -> Result<CheckReport> {
    const P: &str = "cocompletion";
    let (a, e) = (j.dom(), j.cod());
    let table = match colimit_table(e, phi, cap) {
        Ok(t) => t,
        Err(err) => return CheckReport::from_cap(P, "colimits exist", err),
    };
    let mut r = CheckReport::new(P);
    r.clause("colimits exist", table.iter().filter(|t| t.colimit.is_none()).map(|t| missing_witness(phi, t)).collect());

    // saturation, sufficient direction only
    let cj = conjoint(j);
    match colimit_closure(a, &WeightClass::Weights(phi.iter().filter(|w| same_cat(w.anchor(), a)).cloned().collect()), cap) {
        Ok(closure) => {
            let outside: Vec<usize> = (0..e.len()).filter(|&x| !closure.contains(&cj.column(x))).collect();
            if outside.is_empty() {
                r.clause("conjoint columns saturated", vec![]).note("certified via closure rules");
            } else {
                r.inconclusive(
                    "conjoint columns saturated",
                    format!("{} columns not certified via closure rules", outside.len()),
                );
            }
        }
        Err(err) if err.is_resource() => {
            r.inconclusive("conjoint columns saturated", err.to_string());
        }
        Err(err) => return Err(err),
    }

    let presheaves_a = match enumerate_presheaves(a, None, cap) {
        Ok(p) => p,
        Err(err) => return CheckReport::from_cap(P, "lifts are exact", err).map(|mut c| {
            c.clauses.splice(0..0, r.clauses.clone());
            c
        }),
    };
    let mut w = Vec::new();
    let mut lifts = Vec::with_capacity(presheaves_a.len());
    for p in &presheaves_a {
        let l = lift_dist(&p.to_distributor(a), &[cj.clone()])?;
        w.extend(is_exact_on(&l, phi, &table)?.witnesses);
        lifts.push(l.column(0));
    }
    r.clause("lifts are exact", w);
    r.absorb("fully faithful", is_fully_faithful(j)).absorb("dense", is_dense_functor(j));

    // uniqueness of exact extensions
    let presheaves_e = match enumerate_presheaves(e, None, cap) {
        Ok(p) => p,
        Err(err) => {
            r.inconclusive("exact extension unique", err.to_string());
            return Ok(r);
        }
    };
    let mut w = Vec::new();
    let index: HashMap<&Presheaf, usize> = presheaves_a.iter().enumerate().map(|(i, p)| (p, i)).collect();
    for q in &presheaves_e {
        let restricted = Presheaf { extent: q.extent, col: j.map().iter().map(|&x| q.col[x]).collect() };
        let Some(&i) = index.get(&restricted) else { continue };
        if *q == lifts[i] {
            continue;
        }
        if is_exact_on(&q.to_distributor(e), phi, &table)?.passed() {
            w.push(Witness {
                clause: "exact extension unique".into(),
                objects: restricted.names(a).into_iter().map(String::from).collect(),
                expected: format!("({})", lifts[i].names(e).join(",")),
                actual: format!("({})", q.names(e).join(",")),
            });
        }
    }
    r.clause("exact extension unique", w);
    Ok(r)
}

/// `C(ℓ, 1) = E(j, r)` for `ℓ: A -> C`, `r: C -> E`, `j: A -> E`.
pub fn relative_adjunction_check(l: &VFunctor, r: &VFunctor, j: &VFunctor) -> Result<CheckReport> {
    if !same_cat(l.dom(), j.dom()) || !same_cat(l.cod(), r.dom()) || !same_cat(r.cod(), j.cod()) {
        return Err(Error::Endpoint("relative adjunction: functors do not fit".into()));
    }
    let lhs = conjoint(l);
    let rhs = restrict(&identity_distributor(j.cod()), j, r)?;
    let mut rep = CheckReport::new("relative adjunction");
    rep.clause("hom isomorphism", matrix_witnesses("hom isomorphism", &rhs, &lhs));
    Ok(rep)
}

/// Treats `f: C -> E` as a left adjoint: the candidate right adjoint is the
/// colimit of the identity on `C` weighted by `E(f, 1)`, kept only if the
/// adjunction holds.
pub fn left_adjoint_via_extension(f: &VFunctor) -> Option<VFunctor> {
    let c = f.dom();
    let w = Weight::unary(conjoint(f));
    let g = weighted_colimit(&w, &VFunctor::identity(c)).ok()?.functor()?;
    let g = VFunctor::new(f.cod().clone(), c.clone(), g.map().to_vec()).ok()?;
    relative_adjunction_check(f, &g, &VFunctor::identity(c)).ok()?.passed().then_some(g)
}

/// Left adjoint of `r: C -> E`, through the dual base.
pub fn left_adjoint_of(r: &VFunctor) -> Option<VFunctor> {
    let g = left_adjoint_via_extension(&r.op())?;
    VFunctor::new(r.cod().clone(), r.dom().clone(), g.map().to_vec()).ok()
}

/// Hom of two presheaves by the pointwise formula; re-exported for oracles.
pub fn presheaf_hom_elt(a: &VCategory, p: &Presheaf, q: &Presheaf) -> crate::lattice::Elt {
    presheaf_hom(a, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{discrete_category, preorder_category, two_quantale};
    use crate::completion::{cocompletion, presheaf_object, Family};
    use crate::enriched::star_category;

    #[test]
    fn identity_is_ff_and_dense() {
        let a = preorder_category(&two_quantale(), &["a", "b", "c"], &[(0, 1)]);
        let id = VFunctor::identity(&a);
        assert!(is_fully_faithful(&id).passed());
        assert!(is_dense_functor(&id).passed());
        assert!(is_dense(&identity_distributor(&a)).passed());
        assert!(is_well_behaved(&id, 1000).unwrap().passed());
    }

    #[test]
    fn collapse_is_not_ff() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let star = star_category(&two, 0);
        let f = VFunctor::new(a, star, vec![0, 0]).unwrap();
        let r = is_fully_faithful(&f);
        assert!(r.failed());
        assert_eq!(r.witnesses[0].objects, vec!["a", "b"]);
        assert!(is_well_behaved(&f, 1000).unwrap().failed());
    }

    #[test]
    fn constant_into_chain_not_dense() {
        let two = two_quantale();
        let a = preorder_category(&two, &["0", "1"], &[(0, 1)]);
        let bottom = VFunctor::new(a.clone(), a.clone(), vec![0, 0]).unwrap();
        assert!(is_dense_functor(&bottom).failed());
        // the top alone is dense: the bottom is an empty colimit
        let top = VFunctor::new(a.clone(), a.clone(), vec![1, 1]).unwrap();
        assert!(is_dense_functor(&top).passed());
    }

    #[test]
    fn monic_detects_equal_columns() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a"]);
        let e = preorder_category(&two, &["x", "y"], &[(0, 1), (1, 0)]);
        let p = VDistributor::new(e, a, vec![1, 1]).unwrap();
        assert!(is_monic(&p).failed());
    }

    #[test]
    fn boolean_square_verifies() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let phi = WeightClass::Family(Family::All);
        let (r, y) = cocompletion(&a, &phi, 100).unwrap();
        let class = r.members.clone();
        assert!(verify_presheaf_object(&r, &class).passed());
        let ws = phi.elaborate(&a, 100).unwrap();
        let rep = verify_cocompletion(&y, &ws, 10_000).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn identity_with_no_weights_is_a_cocompletion() {
        let a = preorder_category(&two_quantale(), &["a", "b"], &[(0, 1)]);
        let rep = verify_cocompletion(&VFunctor::identity(&a), &[], 1000).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn perturbed_hom_fails() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let all = enumerate_presheaves(&a, None, 100).unwrap();
        let r = presheaf_object(&a, all.clone()).unwrap();
        let mut hom = r.psh.hom_matrix().to_vec();
        let k = hom.iter().position(|&h| h == 1).unwrap();
        hom[k] = 0;
        let objects = (0..r.psh.len()).map(|x| (r.psh.name(x).to_string(), r.psh.extent(x))).collect();
        let bad = r.with_psh(VCategory::new(r.psh.base().clone(), objects, hom).unwrap());
        let rep = verify_presheaf_object(&bad, &all);
        assert!(rep.failed());
        assert!(rep.clauses.iter().any(|c| c.name == "hom is the lift" && c.verdict == Verdict::Fail));
    }

    #[test]
    fn adjoints_of_a_closure_embedding() {
        // down-set lattice of discrete {a, b}; the embedding has a left adjoint only for cocomplete carriers
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let (_, y) = cocompletion(&a, &WeightClass::Family(Family::All), 100).unwrap();
        assert!(left_adjoint_of(&y).is_none());
        let id = VFunctor::identity(&a);
        assert_eq!(left_adjoint_via_extension(&id).unwrap(), id);
        assert!(relative_adjunction_check(&id, &id, &id).unwrap().passed());
    }

    #[test]
    fn top_weight_against_the_full_object() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let top = Presheaf { extent: 0, col: vec![1, 1] };
        let phi = vec![Weight::unary(top.to_distributor(&a))];
        let (small, ys) = cocompletion(&a, &WeightClass::Weights(phi.clone()), 100).unwrap();
        assert_eq!(small.psh.len(), 3);
        assert!(verify_cocompletion(&ys, &phi, 10_000).unwrap().passed());
        let (_, yf) = cocompletion(&a, &WeightClass::Family(Family::All), 100).unwrap();
        let rep = verify_cocompletion(&yf, &phi, 10_000).unwrap();
        assert!(rep.clauses.iter().any(|c| c.name == "exact extension unique" && c.verdict == Verdict::Fail), "{rep}");
    }
}
