//! Presheaf enumeration, presheaf objects, colimit closures and completions.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::enriched::{
    compose_dist, identity_distributor, lift_dist, same_cat, Copresheaf, Presheaf, VCategory, VDistributor,
    VFunctor, Weight,
};
use crate::error::{input, Error, Result};
use crate::lattice::Elt;

/// Default bound on enumerated candidates.
pub const DEFAULT_ENUM_CAP: usize = 20_000;
/// Default bound on the size of a colimit closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Named weight families, elaborated against the carrier they are used on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every presheaf, as a unary weight.
    All,
    /// Presheaves with a right adjoint.
    Cauchy,
    Representables,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Family::All),
            "cauchy" | "left_adjoints" => Ok(Family::Cauchy),
            "representables" => Ok(Family::Representables),
            other => Err(input(format!("unknown weight family `{other}`"))),
        }
    }
}

/// A class of colimit weights.
#[derive(Clone, Debug)]
pub enum WeightClass {
    Family(Family),
    Weights(Vec<Weight>),
}

impl WeightClass {
    pub fn empty() -> Self {
        WeightClass::Weights(Vec::new())
    }

    /// The weights themselves; families become unary presheaf weights on `a`.
    pub fn elaborate(&self, a: &Arc<VCategory>, cap: usize) -> Result<Vec<Weight>> {
        match self {
            WeightClass::Weights(ws) => Ok(ws.clone()),
            WeightClass::Family(f) => Ok(family_members(a, *f, cap)?
                .into_iter()
                .map(|p| Weight::unary(p.to_distributor(a)))
                .collect()),
        }
    }
}

/// A class of limit weights: chains `(p1, ..., pm)` with `pm` starting at the
/// domain of the diagram.
#[derive(Clone, Debug)]
pub enum LimitClass {
    Family(Family),
    Chains(Vec<Vec<VDistributor>>),
}

impl LimitClass {
    pub fn empty() -> Self {
        LimitClass::Chains(Vec::new())
    }

    /// The corresponding colimit weights over the dual base.
    pub fn op(&self) -> Result<WeightClass> {
        match self {
            LimitClass::Family(f) => Ok(WeightClass::Family(*f)),
            LimitClass::Chains(chains) => chains
                .iter()
                .map(|c| {
                    let last = c.last().ok_or_else(|| input("empty limit chain"))?;
                    Weight::new(Arc::new(last.src().op()), c.iter().rev().map(VDistributor::op).collect())
                })
                .collect::<Result<Vec<_>>>()
                .map(WeightClass::Weights),
        }
    }
}

/// Presheaf classes that can be elaborated on a carrier.
#[derive(Clone, Debug)]
pub enum PresheafClass {
    All,
    Representables,
    LeftAdjoints,
    Closure(WeightClass),
    Members(Vec<Presheaf>),
}

impl PresheafClass {
    pub fn elaborate(&self, a: &Arc<VCategory>, cap: usize) -> Result<Vec<Presheaf>> {
        match self {
            PresheafClass::All => family_members(a, Family::All, cap),
            PresheafClass::Representables => family_members(a, Family::Representables, cap),
            PresheafClass::LeftAdjoints => family_members(a, Family::Cauchy, cap),
            PresheafClass::Closure(phi) => colimit_closure(a, phi, cap),
            PresheafClass::Members(m) => Ok(m.clone()),
        }
    }
}

fn family_members(a: &Arc<VCategory>, f: Family, cap: usize) -> Result<Vec<Presheaf>> {
    match f {
        Family::All => enumerate_presheaves(a, None, cap),
        Family::Representables => Ok(representables(a)),
        Family::Cauchy => Ok(enumerate_presheaves(a, None, cap)?
            .into_iter()
            .filter(|p| is_left_adjoint_presheaf(a, p).is_some())
            .collect()),
    }
}

/// Representable columns, deduplicated, in object order.
pub fn representables(a: &VCategory) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = Vec::new();
    for x in 0..a.len() {
        let y = Presheaf::representable(a, x);
        if !out.contains(&y) {
            out.push(y);
        }
    }
    out
}

fn sort_presheaves(a: &VCategory, ps: &mut [Presheaf]) {
    let q = a.base();
    ps.sort_by(|p1, p2| {
        let key = |p: &Presheaf| {
            (0..a.len()).map(|x| q.hom(p.extent, a.extent(x)).name(p.col[x]).to_string()).collect::<Vec<_>>()
        };
        p1.extent.cmp(&p2.extent).then_with(|| key(p1).cmp(&key(p2)))
    });
}

/// All presheaves on `a`, optionally of one extent, ordered by extent and
/// then by element names object by object.
pub fn enumerate_presheaves(a: &VCategory, extent: Option<usize>, cap: usize) -> Result<Vec<Presheaf>> {
    let q = a.base();
    let n = a.len();
    let mut out = Vec::new();
    let extents: Vec<usize> = match extent {
        Some(v) if v >= q.len() => return Err(input("extent is not a base object")),
        Some(v) => vec![v],
        None => (0..q.len()).collect(),
    };
    for v in extents {
        let mut col = vec![0; n];
        fn go(k: usize, v: usize, col: &mut Vec<Elt>, a: &VCategory, out: &mut Vec<Presheaf>, cap: usize) -> Result<()> {
            let q = a.base();
            if k == a.len() {
                if out.len() >= cap {
                    return Err(Error::Cap { what: "enumerating presheaves".into(), cap });
                }
                out.push(Presheaf { extent: v, col: col.clone() });
                return Ok(());
            }
            let ek = a.extent(k);
            for e in q.hom(v, ek).elements() {
                col[k] = e;
                let ok = (0..=k).all(|j| {
                    let ej = a.extent(j);
                    q.hom(v, ej).leq(q.compose(v, ek, ej, a.hom(j, k), e), col[j])
                        && q.hom(v, ek).leq(q.compose(v, ej, ek, a.hom(k, j), col[j]), e)
                });
                if ok {
                    go(k + 1, v, col, a, out, cap)?;
                }
            }
            Ok(())
        }
        go(0, v, &mut col, a, &mut out, cap)?;
    }
    sort_presheaves(a, &mut out);
    Ok(out)
}

/// `q ◁ p` for presheaves: the element `ext(q) -> ext(p)`.
pub fn presheaf_hom(a: &VCategory, p: &Presheaf, q: &Presheaf) -> Elt {
    let base = a.base();
    base.hom(q.extent, p.extent)
        .meet_all((0..a.len()).map(|x| base.lift(q.extent, p.extent, a.extent(x), q.col[x], p.col[x])))
}

/// A presheaf category together with its projection and classifying map.
#[derive(Clone, Debug)]
pub struct PresheafObjectResult {
    pub carrier: Arc<VCategory>,
    pub members: Vec<Presheaf>,
    pub psh: Arc<VCategory>,
    /// `pi: psh ⇸ carrier`, `pi(a, p) = p(a)`.
    pub pi: VDistributor,
    pub yoneda: Option<VFunctor>,
    index: HashMap<Presheaf, usize>,
}

impl PresheafObjectResult {
    pub fn classify(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The functor `X -> psh` classifying a distributor `X ⇸ carrier` column by column.
    pub fn classify_distributor(&self, p: &VDistributor) -> Option<VFunctor> {
        if !same_cat(p.dst(), &self.carrier) {
            return None;
        }
        let map = (0..p.src().len()).map(|x| self.classify(&p.column(x))).collect::<Option<Vec<_>>>()?;
        VFunctor::new(p.src().clone(), self.psh.clone(), map).ok()
    }

    /// Replaces the presheaf category, keeping everything else; for mutation tests.
    pub fn with_psh(&self, psh: VCategory) -> Self {
        let psh = Arc::new(psh);
        let pi = VDistributor::new(psh.clone(), self.carrier.clone(), self.pi.matrix().to_vec()).expect("same shape");
        PresheafObjectResult { psh, pi, yoneda: None, ..self.clone() }
    }
}

fn member_name(a: &VCategory, p: &Presheaf, reps: &HashMap<Presheaf, usize>) -> String {
    if let Some(&x) = reps.get(p) {
        return format!("y({})", a.name(x));
    }
    let q = a.base();
    let body = (0..a.len()).map(|x| q.hom(p.extent, a.extent(x)).name(p.col[x])).collect::<Vec<_>>().join(",");
    if q.len() == 1 {
        format!("({body})")
    } else {
        format!("{}:({body})", q.object_name(p.extent))
    }
}

/// The presheaf category on the given members: homs are lifts, `pi` is evaluation.
pub fn presheaf_object(a: &Arc<VCategory>, members: Vec<Presheaf>) -> Result<PresheafObjectResult> {
    let mut seen = HashSet::new();
    let members: Vec<Presheaf> = members.into_iter().filter(|p| seen.insert(p.clone())).collect();
    for p in &members {
        p.check_on(a)?;
    }
    let base = a.base().clone();
    let mut reps = HashMap::new();
    for x in (0..a.len()).rev() {
        reps.insert(Presheaf::representable(a, x), x);
    }
    let m = members.len();
    let objects: Vec<(String, usize)> = members.iter().map(|p| (member_name(a, p, &reps), p.extent)).collect();
    let mut hom = Vec::with_capacity(m * m);
    for p in &members {
        for q in &members {
            hom.push(presheaf_hom(a, p, q));
        }
    }
    let psh = Arc::new(VCategory::new(base, objects, hom)?);
    let mut mat = vec![0; a.len() * m];
    for (j, p) in members.iter().enumerate() {
        for x in 0..a.len() {
            mat[x * m + j] = p.col[x];
        }
    }
    let pi = VDistributor::new(psh.clone(), a.clone(), mat)?;
    let index: HashMap<Presheaf, usize> = members.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let yoneda = (0..a.len())
        .map(|x| index.get(&Presheaf::representable(a, x)).copied())
        .collect::<Option<Vec<_>>>()
        .map(|map| VFunctor::new(a.clone(), psh.clone(), map))
        .transpose()?;
    Ok(PresheafObjectResult { carrier: a.clone(), members, psh, pi, yoneda, index })
}

/// The least class containing the representables and closed under `Φ`-weighted
/// composites `p ⊙ w(-, c)` with `p` columnwise in the class.
pub fn colimit_closure(a: &Arc<VCategory>, phi: &WeightClass, cap: usize) -> Result<Vec<Presheaf>> {
    // every presheaf w is the composite of the representables with w itself
    if let WeightClass::Family(Family::All) = phi {
        return enumerate_presheaves(a, None, cap);
    }
    let weights = phi.elaborate(a, cap)?;
    let base = a.base().clone();
    // composite columns per weight: (index, anchor B, column of extent |c| on B)
    let mut cols: Vec<(usize, Arc<VCategory>, Presheaf)> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        if !crate::enriched::same_base(w.anchor().base(), &base) {
            return Err(Error::Endpoint(format!("weight {i} is over a different base")));
        }
        let comp = w.normalize();
        for c in 0..w.far().len() {
            cols.push((i, w.anchor().clone(), comp.column(c)));
        }
    }
    let mut members = representables(a);
    let mut set: HashSet<Presheaf> = members.iter().cloned().collect();
    let mut by_extent: Vec<Vec<usize>> = vec![Vec::new(); base.len()];
    for (i, p) in members.iter().enumerate() {
        by_extent[p.extent].push(i);
    }
    loop {
        let mut added = Vec::new();
        for (wi, b_cat, wc) in &cols {
            let nb = b_cat.len();
            let mut choice = vec![0usize; nb];
            let mut found: Vec<Presheaf> = Vec::new();
            closure_step(a, b_cat, wc, &members, &by_extent, 0, &mut choice, &mut found);
            for r in found {
                if set.insert(r.clone()) {
                    added.push(r);
                    if set.len() > cap {
                        return Err(Error::Cap { what: format!("closing under weight {wi}"), cap });
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for p in added {
            by_extent[p.extent].push(members.len());
            members.push(p);
        }
    }
    sort_presheaves(a, &mut members);
    Ok(members)
}

#[allow(clippy::too_many_arguments)]
fn closure_step(
    a: &VCategory,
    b_cat: &VCategory,
    wc: &Presheaf,
    members: &[Presheaf],
    by_extent: &[Vec<usize>],
    k: usize,
    choice: &mut Vec<usize>,
    found: &mut Vec<Presheaf>,
) {
    let q = a.base();
    let nb = b_cat.len();
    if k == nb {
        let v = wc.extent;
        let col = (0..a.len())
            .map(|x| {
                let ex = a.extent(x);
                q.hom(v, ex).join_all(
                    (0..nb).map(|b| q.compose(v, b_cat.extent(b), ex, members[choice[b]].col[x], wc.col[b])),
                )
            })
            .collect();
        found.push(Presheaf { extent: v, col });
        return;
    }
    let ek = b_cat.extent(k);
    for &m in &by_extent[ek] {
        choice[k] = m;
        // right action p(x, b) ∘ B(b, b') ≤ p(x, b') among assigned columns
        let ok = (0..=k).all(|j| {
            let ej = b_cat.extent(j);
            (0..a.len()).all(|x| {
                let ex = a.extent(x);
                q.hom(ej, ex).leq(q.compose(ej, ek, ex, members[m].col[x], b_cat.hom(k, j)), members[choice[j]].col[x])
                    && q.hom(ek, ex).leq(q.compose(ek, ej, ex, members[choice[j]].col[x], b_cat.hom(j, k)), members[m].col[x])
            })
        });
        if ok {
            closure_step(a, b_cat, wc, members, by_extent, k + 1, choice, found);
        }
    }
}

/// Presheaf object on the closure, with its Yoneda embedding.
pub fn cocompletion(a: &Arc<VCategory>, phi: &WeightClass, cap: usize) -> Result<(PresheafObjectResult, VFunctor)> {
    let members = colimit_closure(a, phi, cap)?;
    let r = presheaf_object(a, members)?;
    let y = r.yoneda.clone().ok_or_else(|| Error::Invalid("closure lost a representable".into()))?;
    Ok((r, y))
}

/// The largest right adjoint of `p`, if `p` has one. The candidate is
/// `A(1,1) ◁ p`, which always satisfies the counit; only the unit is checked.
pub fn is_left_adjoint_presheaf(a: &Arc<VCategory>, p: &Presheaf) -> Option<Copresheaf> {
    let base = a.base();
    let v = p.extent;
    let q = lift_dist(&identity_distributor(a), &[p.to_distributor(a)]).expect("endpoints match");
    let row: Vec<Elt> = (0..a.len()).map(|x| q.get(0, x)).collect();
    let unit = base.hom(v, v).join_all((0..a.len()).map(|x| base.compose(v, a.extent(x), v, row[x], p.col[x])));
    base.hom(v, v).leq(base.identity(v), unit).then_some(Copresheaf { extent: v, row })
}

/// Presheaf object on the left-adjoint presheaves.
pub fn cauchy_completion(a: &Arc<VCategory>, cap: usize) -> Result<PresheafObjectResult> {
    presheaf_object(a, family_members(a, Family::Cauchy, cap)?)
}

/// A free completion under limits: the dual of a cocompletion.
#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub carrier: Arc<VCategory>,
    pub members: Vec<Copresheaf>,
    pub cat: Arc<VCategory>,
    /// `carrier ⇸ cat`, entry `(q, a) = q(a)`.
    pub projection: VDistributor,
    pub embedding: VFunctor,
}

/// `op(cocompletion(op A, op Ψ))`.
pub fn completion(a: &Arc<VCategory>, psi: &LimitClass, cap: usize) -> Result<CompletionResult> {
    let a_op = Arc::new(a.op());
    let (r, y) = cocompletion(&a_op, &psi.op()?, cap)?;
    let cat = Arc::new(r.psh.op().with_base(a.base().clone()));
    let members = r.members.iter().map(|p| Copresheaf { extent: p.extent, row: p.col.clone() }).collect();
    let projection = r.pi.transpose_onto(a.clone(), cat.clone());
    let embedding = VFunctor::new(a.clone(), cat.clone(), y.map().to_vec())?;
    Ok(CompletionResult { carrier: a.clone(), members, cat, projection, embedding })
}

/// `w` composed into a single distributor and split into columns; convenience for callers.
pub fn weight_columns(w: &Weight) -> Vec<Presheaf> {
    let c = w.normalize();
    (0..c.src().len()).map(|x| c.column(x)).collect()
}

/// Composite of a chain applied to a presheaf-valued distributor, `p ⊙ q1 ⊙ ... ⊙ qn`.
pub fn compose_chain(p: &VDistributor, chain: &[VDistributor]) -> Result<VDistributor> {
    let mut acc = p.clone();
    for q in chain {
        acc = compose_dist(&acc, q)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{discrete_category, preorder_category, two_quantale};

    #[test]
    fn presheaf_counts() {
        let two = two_quantale();
        assert_eq!(enumerate_presheaves(&discrete_category(&two, &["a", "b"]), None, 100).unwrap().len(), 4);
        let chain = preorder_category(&two, &["a", "b", "c"], &[(0, 1), (1, 2)]);
        assert_eq!(enumerate_presheaves(&chain, None, 100).unwrap().len(), 4);
        let star = crate::enriched::star_category(&two, 0);
        assert_eq!(enumerate_presheaves(&star, None, 100).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_cap() {
        let a = discrete_category(&two_quantale(), &["a", "b", "c"]);
        assert!(matches!(enumerate_presheaves(&a, None, 5), Err(Error::Cap { .. })));
    }

    #[test]
    fn closure_of_top_weight_on_discrete_pair() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let top = Presheaf { extent: 0, col: vec![1, 1] };
        let phi = WeightClass::Weights(vec![Weight::unary(top.to_distributor(&a))]);
        let c = colimit_closure(&a, &phi, 100).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.contains(&top));
        assert!(!c.contains(&Presheaf { extent: 0, col: vec![0, 0] }));
        assert_eq!(colimit_closure(&a, &WeightClass::empty(), 100).unwrap().len(), 2);
    }

    #[test]
    fn explicit_presheaf_weights_close_to_everything() {
        let a = preorder_category(&crate::builders::chain_quantale(3, crate::builders::ChainLaw::Frame), &["a", "b"], &[(0, 1)]);
        let all = enumerate_presheaves(&a, None, 1000).unwrap();
        let explicit = WeightClass::Weights(all.iter().map(|p| Weight::unary(p.to_distributor(&a))).collect());
        assert_eq!(colimit_closure(&a, &explicit, 1000).unwrap(), all);
    }

    #[test]
    fn boolean_square() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let (r, y) = cocompletion(&a, &WeightClass::Family(Family::All), 100).unwrap();
        assert_eq!(r.psh.len(), 4);
        assert_eq!(r.psh.name(y.apply(0)), "y(a)");
    }

    #[test]
    fn left_adjoints_on_discrete_pair() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        assert!(is_left_adjoint_presheaf(&a, &Presheaf::representable(&a, 0)).is_some());
        assert!(is_left_adjoint_presheaf(&a, &Presheaf { extent: 0, col: vec![1, 1] }).is_none());
        assert!(is_left_adjoint_presheaf(&a, &Presheaf { extent: 0, col: vec![0, 0] }).is_none());
    }

    #[test]
    fn up_set_completion() {
        let two = two_quantale();
        let a = discrete_category(&two, &["a", "b"]);
        let c = completion(&a, &LimitClass::Family(Family::All), 100).unwrap();
        assert_eq!(c.cat.len(), 4);
        assert!(crate::enriched::validate_category(&c.cat).is_empty());
    }
}
