//! The lemma catalogue. Each lemma is checked on one prepared instance at a
//! time and reports how many cases it actually exercised.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{random_distributor, random_functor, random_presheaf, rng, Instance, Rng64, SuiteOptions};
use crate::analysis::{
    functor_has_rank, has_rank, is_dense, is_dense_functor, is_fully_faithful, left_adjoint_of, relative_adjunction_check,
    respects_colimit,
};
use crate::completion::{
    cauchy_completion, cocompletion, colimit_closure, enumerate_presheaves, is_left_adjoint_presheaf, presheaf_hom,
    presheaf_object, representables, Family, PresheafObjectResult, WeightClass,
};
use crate::enriched::{
    companion, compose_dist, conjoint, enumerate_functors, ext_dist, full_subcategory, identity_distributor, lift_dist,
    lift_dist_with, lift_iterated, restrict, weighted_colimit, weighted_limit, Copresheaf, Presheaf, VCategory,
    VDistributor, VFunctor, Weight,
};
use crate::error::Result;

/// Presheaf objects are only built when the full enumeration is at most this big.
const PSH_LIMIT: usize = 40;
/// Largest presheaf object whose endofunctors are sampled.
const SMALL_PSH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
    L10,
    L11,
    L12,
    L13,
    L14,
    L15,
    L16,
    L17,
    L18,
}

impl LemmaId {
    pub const ALL: [LemmaId; 18] = {
        use LemmaId::*;
        [L1, L2, L3, L4, L5, L6, L7, L8, L9, L10, L11, L12, L13, L14, L15, L16, L17, L18]
    };

    pub fn statement(self) -> &'static str {
        use LemmaId::*;
        match self {
            L1 => "pointwise chain lift equals the iterated lift",
            L2 => "lifting through a chain equals lifting through its composite",
            L3 => "restriction commutes with lifts",
            L4 => "distributor composition is associative and unital",
            L5 => "presheaf homs are the largest solutions of p r <= q",
            L6 => "a classified distributor is fully faithful iff it is dense",
            L7 => "weights landing in the class have colimits in its presheaf object, computed by pi",
            L8 => "lifts through pi respect pi-absolute colimits",
            L9 => "a colimit is j-absolute iff every lift through j respects it",
            L10 => "cocompletion embeddings are fully faithful",
            L11 => "cocompletion embeddings are dense",
            L12 => "rank: lifts through conjoints have rank, identity rank is density, rank is preservation",
            L13 => "limits of presheaves are pointwise extensions",
            L14 => "a respected limit is preserved by the classifying functor",
            L15 => "a reflector carries colimits of the ambient category to the subcategory",
            L16 => "left-adjoint presheaves: unit test agrees with search; the adjoint computes lifts",
            L17 => "of dense weight, fully faithful diagram, absolute and fully faithful colimit, no three hold without the fourth",
            L18 => "cocompleteness, reflectivity, extension and adjoint criteria agree",
        }
    }

    pub fn note(self) -> Option<&'static str> {
        match self {
            LemmaId::L17 => Some("checked literally; only the directions concluding density or a fully faithful colimit follow from the hom computation"),
            LemmaId::L7 => Some("checked as an implication; absence of the composite from the class says nothing"),
            LemmaId::L18 => Some("the universe is restricted to the free cocompletion itself"),
            _ => None,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Case count and the first failure on one instance.
#[derive(Default)]
pub(super) struct Probe {
    pub checked: usize,
    pub failure: Option<Value>,
}

impl Probe {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }
}

/// Per-instance samples shared by every lemma.
pub(super) struct Prepared {
    pub label: String,
    pub seed: u64,
    pub a: Arc<VCategory>,
    /// Every presheaf, when the enumeration fits the cap.
    pub all: Option<Vec<Presheaf>>,
    pub sample: Vec<Presheaf>,
    /// Distributors `A ⇸ A`, the identity first.
    pub dists: Vec<VDistributor>,
    /// Endofunctors, the identity first.
    pub endos: Vec<VFunctor>,
    pub psh: Option<PresheafObjectResult>,
}

impl Prepared {
    pub fn new(inst: &Instance, opts: &SuiteOptions) -> Self {
        let a = inst.category.clone();
        let mut r = rng(inst.seed ^ 0x5eed);
        let all = enumerate_presheaves(&a, None, opts.cap).ok();
        let sample = match &all {
            Some(all) => {
                let mut s = all.clone();
                s.shuffle(&mut r);
                s.truncate(opts.max_presheaves);
                s
            }
            None => (0..opts.max_presheaves).map(|_| random_presheaf(&a, &mut r)).collect(),
        };
        let mut dists = vec![identity_distributor(&a)];
        for _ in 0..2 {
            let d = random_distributor(&a, &a, &mut r);
            if !dists.contains(&d) {
                dists.push(d);
            }
        }
        let mut endos = vec![VFunctor::identity(&a)];
        for _ in 0..4 {
            if let Some(f) = random_functor(&a, &a, &mut r) {
                if !endos.contains(&f) {
                    endos.push(f);
                }
            }
        }
        let psh = all.as_ref().filter(|m| m.len() <= PSH_LIMIT).and_then(|m| presheaf_object(&a, m.clone()).ok());
        Prepared { label: inst.label.clone(), seed: inst.seed, a, all, sample, dists, endos, psh }
    }

    fn rng(&self, id: LemmaId) -> Rng64 {
        rng(self.seed.wrapping_add(0x51_7cc1_b727_220a_95u64.wrapping_mul(id as u64 + 1)))
    }

    fn cx(&self, detail: Value) -> Value {
        json!({"instance": self.label, "seed": self.seed, "objects": self.a.names(), "detail": detail})
    }

    fn sample_dists(&self, k: usize) -> Vec<VDistributor> {
        self.sample.iter().take(k).map(|p| p.to_distributor(&self.a)).collect()
    }

    /// Distributors `X ⇸ A` used as lift numerators.
    fn numerators(&self) -> Vec<VDistributor> {
        let mut out = self.dists.clone();
        out.extend(self.sample_dists(3));
        out
    }
}

fn names(d: &VDistributor) -> Vec<Vec<String>> {
    (0..d.dst().len()).map(|a| (0..d.src().len()).map(|b| d.entry_name(a, b).to_string()).collect()).collect()
}

fn col_names(a: &VCategory, p: &Presheaf) -> Vec<String> {
    p.names(a).into_iter().map(String::from).collect()
}

fn map_names(f: &VFunctor) -> Vec<String> {
    (0..f.dom().len()).map(|x| format!("{}->{}", f.dom().name(x), f.cod().name(f.apply(x)))).collect()
}

pub(super) fn run(id: LemmaId, p: &Prepared, opts: &SuiteOptions) -> Result<Probe> {
    use LemmaId::*;
    let mut probe = Probe::default();
    match id {
        L1 => chain_lift(p, opts, &mut probe)?,
        L2 => composite_lift(p, &mut probe)?,
        L3 => restriction_of_lift(p, &mut probe)?,
        L4 => composition_laws(p, &mut probe)?,
        L5 => presheaf_homs(p, opts, &mut probe)?,
        L6 => classified_ff_dense(p, &mut probe)?,
        L7 => class_colimits(p, opts, false, &mut probe)?,
        L8 => class_colimits(p, opts, true, &mut probe)?,
        L9 => absolute_iff_respected(p, &mut probe)?,
        L10 => cocompletion_embeddings(p, opts, false, &mut probe)?,
        L11 => cocompletion_embeddings(p, opts, true, &mut probe)?,
        L12 => rank(p, opts, &mut probe)?,
        L13 => presheaf_limits(p, &mut probe)?,
        L14 => respected_limits(p, &mut probe)?,
        L15 => reflective_transport(p, &mut probe)?,
        L16 => left_adjoint_presheaves(p, opts, &mut probe)?,
        L17 => three_of_four(p, &mut probe)?,
        L18 => cocompleteness_criteria(p, opts, &mut probe)?,
    }
    Ok(probe)
}

fn chains(ds: &[VDistributor], max: usize) -> Vec<Vec<VDistributor>> {
    let mut out: Vec<Vec<VDistributor>> = ds.iter().map(|d| vec![d.clone()]).collect();
    let mut last = out.clone();
    for _ in 1..max {
        let mut next = Vec::new();
        for c in &last {
            for d in ds {
                let mut c2 = c.clone();
                c2.push(d.clone());
                next.push(c2);
            }
        }
        out.extend(next.iter().cloned());
        last = next;
    }
    out
}

fn chain_lift(p: &Prepared, opts: &SuiteOptions, probe: &mut Probe) -> Result<()> {
    for q in p.numerators() {
        for chain in chains(&p.dists, 3) {
            let pointwise = lift_dist_with(&q, &chain, opts.aggregate)?;
            let iterated = lift_iterated(&q, &chain)?;
            probe.check(pointwise == iterated, || {
                p.cx(json!({"q": names(&q), "chain": chain.iter().map(names).collect::<Vec<_>>(),
                    "pointwise": names(&pointwise), "iterated": names(&iterated)}))
            });
        }
    }
    Ok(())
}

fn composite_lift(p: &Prepared, probe: &mut Probe) -> Result<()> {
    for q in p.numerators() {
        for chain in chains(&p.dists, 2).into_iter().filter(|c| c.len() == 2) {
            let lhs = lift_dist(&q, &chain)?;
            let rhs = lift_dist(&q, &[compose_dist(&chain[0], &chain[1])?])?;
            probe.check(lhs == rhs, || p.cx(json!({"q": names(&q), "chain": chain.iter().map(names).collect::<Vec<_>>(), "lhs": names(&lhs), "rhs": names(&rhs)})));
        }
    }
    Ok(())
}

fn restriction_of_lift(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let id = VFunctor::identity(&p.a);
    for q in &p.dists {
        for d in &p.dists {
            let lifted = lift_dist(q, std::slice::from_ref(d))?;
            for f in &p.endos {
                for g in &p.endos {
                    let lhs = restrict(&lifted, f, g)?;
                    let rhs = lift_dist(&restrict(q, &id, g)?, &[restrict(d, &id, f)?])?;
                    probe.check(lhs == rhs, || {
                        p.cx(json!({"f": map_names(f), "g": map_names(g), "lhs": names(&lhs), "rhs": names(&rhs)}))
                    });
                }
            }
        }
    }
    Ok(())
}

fn composition_laws(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let mut ds = p.dists.clone();
    ds.extend(p.endos.iter().map(companion));
    ds.extend(p.endos.iter().map(conjoint));
    let id = identity_distributor(&p.a);
    for x in &ds {
        let unital = compose_dist(&id, x)? == *x && compose_dist(x, &id)? == *x;
        probe.check(unital, || p.cx(json!({"unit": names(x)})));
        for y in &ds {
            let xy = compose_dist(x, y)?;
            for z in ds.iter().take(4) {
                let l = compose_dist(&xy, z)?;
                let r = compose_dist(x, &compose_dist(y, z)?)?;
                probe.check(l == r, || p.cx(json!({"left": names(&l), "right": names(&r)})));
            }
        }
    }
    Ok(())
}

/// The join of all `r` with `p ∘ r <= q` pointwise, found by scanning.
fn brute_presheaf_hom(a: &VCategory, p: &Presheaf, q: &Presheaf) -> Option<usize> {
    let base = a.base();
    let l = base.hom(q.extent, p.extent);
    let fits = |r: usize| {
        (0..a.len()).all(|x| base.hom(q.extent, a.extent(x)).leq(base.compose(q.extent, p.extent, a.extent(x), p.col[x], r), q.col[x]))
    };
    let best = l.join_all(l.elements().filter(|&r| fits(r)));
    // the join of solutions must itself be a solution
    fits(best).then_some(best)
}

fn presheaf_homs(p: &Prepared, opts: &SuiteOptions, probe: &mut Probe) -> Result<()> {
    let a = &p.a;
    for x in &p.sample {
        for y in &p.sample {
            let brute = brute_presheaf_hom(a, x, y);
            let lifted = lift_dist_with(&y.to_distributor(a), &[x.to_distributor(a)], opts.aggregate)?.get(0, 0);
            let mut got = vec![Some(presheaf_hom(a, x, y)), Some(lifted)];
            if let Some(r) = &p.psh {
                if let (Some(i), Some(j)) = (r.classify(x), r.classify(y)) {
                    got.push(Some(r.psh.hom(i, j)));
                }
            }
            probe.check(got.iter().all(|g| *g == brute), || {
                p.cx(json!({"p": col_names(a, x), "q": col_names(a, y), "scan": brute, "computed": got}))
            });
        }
    }
    Ok(())
}

fn classified_ff_dense(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let Some(r) = &p.psh else { return Ok(()) };
    let mut ds = p.dists.clone();
    ds.extend(p.endos.iter().map(conjoint));
    ds.extend(p.endos.iter().map(companion));
    for d in &ds {
        let Some(f) = r.classify_distributor(d) else { continue };
        let ff = is_fully_faithful(&f).passed();
        let dense = is_dense(d).passed();
        probe.check(ff == dense, || p.cx(json!({"distributor": names(d), "fully_faithful": ff, "dense": dense})));
    }
    Ok(())
}

/// Presheaf objects for the classes that fit: all, representables, left adjoints.
fn classes(p: &Prepared, opts: &SuiteOptions) -> Result<Vec<(&'static str, PresheafObjectResult)>> {
    let mut out = Vec::new();
    if let Some(r) = &p.psh {
        out.push(("all", r.clone()));
        out.push(("cauchy", cauchy_completion(&p.a, opts.cap)?));
    }
    out.push(("representables", presheaf_object(&p.a, representables(&p.a))?));
    Ok(out)
}

fn class_colimits(p: &Prepared, opts: &SuiteOptions, lifts: bool, probe: &mut Probe) -> Result<()> {
    let a = &p.a;
    let id_a = VFunctor::identity(a);
    let base = a.base();
    for (class, r) in classes(p, opts)? {
        // diagrams `D -> psh` given as distributors `D ⇸ A` with columns in the class
        let mut cases: Vec<(VDistributor, VDistributor)> = Vec::new();
        let mut qs: Vec<VDistributor> = p.dists.clone();
        qs.extend(p.endos.iter().map(companion));
        let weights: Vec<VDistributor> = p.dists.iter().cloned().chain(p.sample_dists(4)).collect();
        for q in &qs {
            for w in &weights {
                cases.push((q.clone(), w.clone()));
            }
        }
        // element weights on single members
        for m in r.members.iter().take(4) {
            let q = m.to_distributor(a);
            for w_ext in 0..base.len() {
                for e in base.hom(w_ext, m.extent).elements() {
                    let star_w = crate::enriched::star_category(base, w_ext);
                    let w = VDistributor::new(star_w, q.src().clone(), vec![e])?;
                    cases.push((q.clone(), w));
                }
            }
        }
        for (q, w) in cases {
            let Some(f) = r.classify_distributor(&q) else { continue };
            let composite = compose_dist(&q, &w)?;
            let expected: Option<Vec<usize>> =
                (0..composite.src().len()).map(|c| r.classify(&composite.column(c))).collect();
            let Some(expected) = expected else { continue };
            let weight = Weight::unary(w.clone());
            let found = weighted_colimit(&weight, &f)?.functor();
            if !lifts {
                let ok = match &found {
                    Some(c) => c.map() == expected.as_slice() && restrict(&r.pi, &id_a, c)? == composite,
                    None => false,
                };
                probe.check(ok, || {
                    p.cx(json!({"class": class, "diagram": map_names(&f), "weight": names(&w),
                        "expected": expected, "found": found.as_ref().map(|c| c.map().to_vec())}))
                });
                continue;
            }
            let Some(c) = found else { continue };
            for s in p.numerators() {
                let t = lift_dist(&s, std::slice::from_ref(&r.pi))?;
                let ok = respects_colimit(&t, &weight, &f, &c)?.passed();
                probe.check(ok, || p.cx(json!({"class": class, "numerator": names(&s), "weight": names(&w)})));
            }
        }
    }
    Ok(())
}

fn absolute_iff_respected(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let Some(all) = p.all.as_ref().filter(|m| m.len() <= PSH_LIMIT) else { return Ok(()) };
    let a = &p.a;
    let id_a = VFunctor::identity(a);
    let mut js = vec![identity_distributor(a)];
    js.extend(p.endos.iter().skip(1).map(conjoint));
    let weights: Vec<VDistributor> = p.dists.iter().cloned().chain(p.sample_dists(3)).collect();
    let all_dists: Vec<VDistributor> = all.iter().map(|s| s.to_distributor(a)).collect();
    for j in &js {
        let lifts: Vec<VDistributor> =
            all_dists.iter().map(|s| lift_dist(s, std::slice::from_ref(j))).collect::<Result<_>>()?;
        for w in &weights {
            let weight = Weight::unary(w.clone());
            for f in &p.endos {
                let Some(c) = weighted_colimit(&weight, f)?.functor() else { continue };
                let absolute = restrict(j, &id_a, &c)? == compose_dist(&restrict(j, &id_a, f)?, w)?;
                let mut respected = true;
                for t in &lifts {
                    if !respects_colimit(t, &weight, f, &c)?.passed() {
                        respected = false;
                        break;
                    }
                }
                probe.check(absolute == respected, || {
                    p.cx(json!({"j": names(j), "weight": names(w), "diagram": map_names(f),
                        "absolute": absolute, "respected": respected}))
                });
            }
        }
    }
    Ok(())
}

fn cocompletion_embeddings(p: &Prepared, opts: &SuiteOptions, dense: bool, probe: &mut Probe) -> Result<()> {
    let mut phis = vec![("empty", WeightClass::empty()), ("representables", WeightClass::Family(Family::Representables))];
    if p.psh.is_some() {
        phis.push(("all", WeightClass::Family(Family::All)));
        phis.push(("cauchy", WeightClass::Family(Family::Cauchy)));
    }
    for (name, phi) in phis {
        let (_, y) = cocompletion(&p.a, &phi, opts.cap)?;
        let rep = if dense { is_dense_functor(&y) } else { is_fully_faithful(&y) };
        probe.check(rep.passed(), || p.cx(json!({"weights": name, "report": rep})));
    }
    Ok(())
}

fn rank(p: &Prepared, opts: &SuiteOptions, probe: &mut Probe) -> Result<()> {
    let a = &p.a;
    let y = p.psh.as_ref().and_then(|r| r.yoneda.clone());
    if let Some(y) = &y {
        let cy = conjoint(y);
        for s in p.numerators() {
            let lifted = lift_dist(&s, std::slice::from_ref(&cy))?;
            let ok = has_rank(&lifted, y)?.passed();
            probe.check(ok, || p.cx(json!({"numerator": names(&s), "lifted": names(&lifted)})));
        }
    }
    let mut js: Vec<VFunctor> = p.endos.clone();
    js.extend(y.clone());
    for j in &js {
        let ranked = has_rank(&identity_distributor(j.cod()), j)?.passed();
        let dense = is_dense_functor(j).passed();
        probe.check(ranked == dense, || p.cx(json!({"j": map_names(j), "rank": ranked, "dense": dense})));
    }
    let (Some(r), Some(y)) = (&p.psh, &y) else { return Ok(()) };
    if r.psh.len() > SMALL_PSH {
        return Ok(());
    }
    let e = &r.psh;
    let weights: Vec<Weight> = r.members.iter().map(|m| Weight::unary(m.to_distributor(a))).collect();
    let table = crate::analysis::colimit_table(e, &weights, opts.cap)?;
    let mut g = p.rng(LemmaId::L12);
    let mut fs = vec![VFunctor::identity(e)];
    fs.extend((0..4).filter_map(|_| random_functor(e, e, &mut g)));
    for f in &fs {
        let ranked = functor_has_rank(f, y)?.passed();
        let mut preserves = true;
        for entry in &table {
            let Some(c) = &entry.colimit else { continue };
            let image = f.after(&entry.diagram)?;
            let res = weighted_colimit(&weights[entry.weight], &image)?;
            if (0..c.dom().len()).any(|x| !res.witnesses[x].contains(&f.apply(c.apply(x)))) {
                preserves = false;
                break;
            }
        }
        probe.check(ranked == preserves, || p.cx(json!({"functor": map_names(f), "rank": ranked, "preserves": preserves})));
    }
    Ok(())
}

fn presheaf_limits(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let Some(r) = &p.psh else { return Ok(()) };
    let a = &p.a;
    let mut weights: Vec<VDistributor> = p.dists.clone();
    weights.extend((0..a.len()).map(|x| Copresheaf::corepresentable(a, x).to_distributor(a)));
    for q in &p.dists {
        let Some(f) = r.classify_distributor(q) else { continue };
        for w in &weights {
            let chain = std::slice::from_ref(w);
            let pointwise = ext_dist(chain, q)?;
            let res = weighted_limit(chain, &f)?;
            for y in 0..pointwise.src().len() {
                let expected = r.classify(&pointwise.column(y));
                let ok = expected.is_some_and(|e| res.witnesses[y].contains(&e));
                probe.check(ok, || {
                    p.cx(json!({"diagram": names(q), "weight": names(w), "at": y,
                        "expected": col_names(a, &pointwise.column(y)), "witnesses": res.witnesses[y]}))
                });
            }
        }
    }
    Ok(())
}

fn respected_limits(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let Some(r) = &p.psh else { return Ok(()) };
    let a = &p.a;
    let id_a = VFunctor::identity(a);
    let mut qs = p.dists.clone();
    qs.extend(p.endos.iter().map(conjoint));
    for f in &p.endos {
        for w in &p.dists {
            let chain = std::slice::from_ref(w);
            let Some(l) = weighted_limit(chain, f)?.functor() else { continue };
            for q in &qs {
                let respects = restrict(q, &id_a, &l)? == ext_dist(chain, &restrict(q, &id_a, f)?)?;
                if !respects {
                    continue;
                }
                let Some(qh) = r.classify_distributor(q) else { continue };
                let res = weighted_limit(chain, &qh.after(f)?)?;
                let ok = (0..l.dom().len()).all(|y| res.witnesses[y].contains(&qh.apply(l.apply(y))));
                probe.check(ok, || p.cx(json!({"q": names(q), "diagram": map_names(f), "weight": names(w)})));
            }
        }
    }
    Ok(())
}

fn reflective_transport(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let a = &p.a;
    let mut g = p.rng(LemmaId::L15);
    for mask in 1..(1usize << a.len()) {
        let objects: Vec<usize> = (0..a.len()).filter(|x| mask >> x & 1 == 1).collect();
        let (sub, inc) = full_subcategory(a, &objects);
        let Some(ell) = left_adjoint_of(&inc) else { continue };
        let mut weights = vec![identity_distributor(&sub)];
        weights.extend((0..2).map(|_| random_distributor(&sub, &sub, &mut g)));
        weights.extend((0..2).map(|_| random_presheaf(&sub, &mut g).to_distributor(&sub)));
        let mut diagrams = vec![VFunctor::identity(&sub)];
        diagrams.extend((0..2).filter_map(|_| random_functor(&sub, &sub, &mut g)));
        for w in &weights {
            let weight = Weight::unary(w.clone());
            for f in &diagrams {
                let Some(c) = weighted_colimit(&weight, &inc.after(f)?)?.functor() else { continue };
                let res = weighted_colimit(&weight, f)?;
                let ok = (0..c.dom().len()).all(|x| res.witnesses[x].contains(&ell.apply(c.apply(x))));
                probe.check(ok, || {
                    p.cx(json!({"subcategory": sub.names(), "weight": names(w), "diagram": map_names(f)}))
                });
            }
        }
    }
    Ok(())
}

/// Every row `ext(x) -> V` by brute force, capped.
fn rows(a: &VCategory, v: usize, cap: usize) -> Option<Vec<Copresheaf>> {
    let base = a.base();
    let sizes: Vec<usize> = (0..a.len()).map(|x| base.hom(a.extent(x), v).len()).collect();
    if sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&n| n <= cap)).is_none() {
        return None;
    }
    let mut out = vec![Vec::new()];
    for &s in &sizes {
        out = out.into_iter().flat_map(|r: Vec<usize>| (0..s).map(move |e| [r.clone(), vec![e]].concat())).collect();
    }
    Some(out.into_iter().map(|row| Copresheaf { extent: v, row }).filter(|c| c.is_valid_on(a)).collect())
}

fn left_adjoint_presheaves(p: &Prepared, opts: &SuiteOptions, probe: &mut Probe) -> Result<()> {
    let a = &p.a;
    let base = a.base();
    for pre in &p.sample {
        let v = pre.extent;
        let Some(candidates) = rows(a, v, opts.cap) else { continue };
        let adjoints: Vec<&Copresheaf> = candidates
            .iter()
            .filter(|r| {
                let unit = base
                    .hom(v, v)
                    .join_all((0..a.len()).map(|x| base.compose(v, a.extent(x), v, r.row[x], pre.col[x])));
                let counit = (0..a.len()).all(|x| {
                    (0..a.len()).all(|z| {
                        base.hom(a.extent(z), a.extent(x))
                            .leq(base.compose(a.extent(z), v, a.extent(x), pre.col[x], r.row[z]), a.hom(x, z))
                    })
                });
                base.hom(v, v).leq(base.identity(v), unit) && counit
            })
            .collect();
        let found = is_left_adjoint_presheaf(a, pre);
        let ok = match &found {
            Some(r) => adjoints.contains(&r),
            None => adjoints.is_empty(),
        };
        probe.check(ok, || {
            p.cx(json!({"presheaf": col_names(a, pre), "unit_test": found.is_some(), "search": adjoints.len()}))
        });
        let Some(r0) = found else { continue };
        let r0 = r0.to_distributor(a);
        let pd = pre.to_distributor(a);
        for q in p.numerators() {
            let lhs = compose_dist(&r0, &q)?;
            let rhs = lift_dist(&q, std::slice::from_ref(&pd))?;
            probe.check(lhs == rhs, || p.cx(json!({"presheaf": col_names(a, pre), "q": names(&q)})));
        }
    }
    Ok(())
}

fn three_of_four(p: &Prepared, probe: &mut Probe) -> Result<()> {
    let mut cases: Vec<(VDistributor, VFunctor)> = Vec::new();
    for f in &p.endos {
        for w in &p.dists {
            cases.push((w.clone(), f.clone()));
        }
    }
    if let Some(y) = p.psh.as_ref().and_then(|r| r.yoneda.clone()) {
        for k in &p.endos {
            for w in &p.dists {
                cases.push((w.clone(), y.after(k)?));
            }
        }
    }
    for (w, f) in cases {
        let Some(c) = weighted_colimit(&Weight::unary(w.clone()), &f)?.functor() else { continue };
        let z = VFunctor::identity(f.dom());
        let cf = conjoint(&f);
        let conds = [
            is_dense(&w).passed(),
            is_fully_faithful(&f).passed(),
            restrict(&cf, &z, &c)? == compose_dist(&restrict(&cf, &z, &f)?, &w)?,
            is_fully_faithful(&c).passed(),
        ];
        let count = conds.iter().filter(|&&b| b).count();
        probe.check(count != 3, || {
            let missing = ["dense weight", "fully faithful diagram", "absolute colimit", "fully faithful colimit"]
                [conds.iter().position(|&b| !b).unwrap_or(0)];
            p.cx(json!({"weight": names(&w), "diagram": map_names(&f), "colimit": map_names(&c), "missing": missing}))
        });
    }
    Ok(())
}

fn cocompleteness_criteria(p: &Prepared, opts: &SuiteOptions, probe: &mut Probe) -> Result<()> {
    if p.psh.is_none() {
        return Ok(());
    }
    let a = &p.a;
    let id_a = VFunctor::identity(a);
    for family in [Family::All, Family::Cauchy] {
        let phi = WeightClass::Family(family);
        let (r, y) = cocompletion(a, &phi, opts.cap)?;
        let weights = phi.elaborate(a, opts.cap)?;
        let table = crate::analysis::colimit_table(a, &weights, opts.cap)?;
        let cocomplete = table.iter().all(|e| e.colimit.is_some());
        let id_psh = VFunctor::identity(&r.psh);
        let reflective = match enumerate_functors(&r.psh, a, opts.cap) {
            Ok(ls) => {
                let mut any = false;
                for l in &ls {
                    if relative_adjunction_check(l, &y, &id_psh)?.passed() {
                        any = true;
                        break;
                    }
                }
                Some(any)
            }
            Err(e) if e.is_resource() => None,
            Err(e) => return Err(e),
        };
        let extension = weighted_colimit(&Weight::unary(conjoint(&y)), &id_a)?.exists();
        let mut closure_weights = true;
        for m in colimit_closure(a, &phi, opts.cap)? {
            if !weighted_colimit(&Weight::unary(m.to_distributor(a)), &id_a)?.exists() {
                closure_weights = false;
                break;
            }
        }
        let adjoint = left_adjoint_of(&y).is_some();
        let all = [Some(cocomplete), reflective, Some(extension), Some(closure_weights), Some(adjoint)];
        let known: Vec<bool> = all.iter().flatten().copied().collect();
        probe.check(known.iter().all(|&b| b == known[0]), || {
            p.cx(json!({"family": format!("{family:?}"),
                "cocomplete, reflective, extension, closure weights, adjoint": all}))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{discrete_category, two_quantale};

    /// The empty weight on a point: dense, with a fully faithful diagram and
    /// a fully faithful colimit, yet the colimit is not absolute.
    #[test]
    fn empty_weight_on_a_point_refutes_three_of_four() {
        let a = discrete_category(&two_quantale(), &["x"]);
        let empty = VDistributor::new(a.clone(), a.clone(), vec![0]).unwrap();
        let id = VFunctor::identity(&a);
        let c = weighted_colimit(&Weight::unary(empty.clone()), &id).unwrap().functor().unwrap();
        assert!(is_dense(&empty).passed());
        assert!(is_fully_faithful(&id).passed());
        assert!(is_fully_faithful(&c).passed());
        let cf = conjoint(&id);
        let absolute = restrict(&cf, &id, &c).unwrap() == compose_dist(&restrict(&cf, &id, &id).unwrap(), &empty).unwrap();
        assert!(!absolute);
    }

    #[test]
    fn rows_scan_finds_corepresentables() {
        let a = discrete_category(&two_quantale(), &["x", "y"]);
        let rows = rows(&a, 0, 100).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.contains(&Copresheaf::corepresentable(&a, 1)));
    }
}
