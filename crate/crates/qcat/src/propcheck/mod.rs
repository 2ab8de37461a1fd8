//! Random instances and the lemma replay suite.
//!
//! Generation is by construction: every recipe yields a validated structure,
//! and everything is a deterministic function of the seed.

mod lemmas;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::Verdict;
use crate::builders::{chain_quantale, free_quantaloid, ChainLaw, FiniteCategory, Presentation, DEFAULT_PATH_CAP};
use crate::enriched::{star_category, Aggregate, Base, VCategory, VDistributor, VFunctor};
use crate::error::{input, Error, Result};
use crate::lattice::Elt;
use crate::quantaloid::{Quantaloid, QuantaloidData};

pub use lemmas::LemmaId;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum BaseRecipe {
    /// Objects are finite sets of size at most `max_set`; homs are all relations.
    Relations { objects: usize, max_set: usize },
    /// The free quantaloid on a random acyclic category.
    Free { objects: usize, arrows: usize },
    Chain { grades: usize, law: Law },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Frame,
    Lukasiewicz,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub base: BaseRecipe,
    pub max_objects: usize,
    pub max_extents: usize,
    pub functors: usize,
    pub distributors: usize,
}

impl InstanceSpec {
    pub fn new(seed: u64, base: BaseRecipe) -> Self {
        InstanceSpec { seed, base, max_objects: 3, max_extents: 3, functors: 4, distributors: 2 }
    }
}

/// The quantaloid of relations between the given finite sets.
pub fn relations_quantaloid(sizes: &[usize]) -> Result<Base> {
    let n = sizes.len();
    if sizes.iter().any(|&s| s == 0 || s > 3) {
        return Err(input("set sizes must lie in 1..=3"));
    }
    let bits = |x: usize, y: usize| sizes[x] * sizes[y];
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let size = 1usize << bits(x, y);
            let names = (0..size).map(|m| relation_name(m, sizes[x], sizes[y])).collect();
            let leq = (0..size * size).map(|i| (i / size) & !(i % size) == 0).collect();
            homs.push((names, leq));
        }
    }
    // bit (i * |Y| + j) of a relation X -> Y relates i ∈ X to j ∈ Y
    let rel = |m: usize, sx: usize, sy: usize, i: usize, j: usize| -> bool { i < sx && j < sy && m >> (i * sy + j) & 1 == 1 };
    let mut compose = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (sx, sy, sz) = (sizes[x], sizes[y], sizes[z]);
                let mut table = Vec::new();
                for g in 0..1usize << bits(y, z) {
                    for f in 0..1usize << bits(x, y) {
                        let mut h = 0;
                        for i in 0..sx {
                            for k in 0..sz {
                                if (0..sy).any(|j| rel(f, sx, sy, i, j) && rel(g, sy, sz, j, k)) {
                                    h |= 1 << (i * sz + k);
                                }
                            }
                        }
                        table.push(Some(h));
                    }
                }
                compose.push(table);
            }
        }
    }
    let identities = (0..n).map(|x| (0..sizes[x]).map(|i| 1usize << (i * sizes[x] + i)).sum()).collect();
    let objects = sizes.iter().enumerate().map(|(i, s)| format!("S{i}_{s}")).collect();
    Quantaloid::new(QuantaloidData { objects, homs, compose, identities })
}

fn relation_name(m: usize, sx: usize, sy: usize) -> String {
    let pairs: Vec<String> =
        (0..sx * sy).filter(|b| m >> b & 1 == 1).map(|b| format!("{}{}", b / sy, b % sy)).collect();
    format!("{{{}}}", pairs.join(","))
}

/// A random acyclic presentation: generators only go from lower to higher objects.
pub fn random_acyclic_category(rng: &mut Rng64, objects: usize, arrows: usize) -> Result<FiniteCategory> {
    let names: Vec<String> = (0..objects).map(|i| format!("o{i}")).collect();
    let mut gens = Vec::new();
    if objects >= 2 {
        for k in 0..arrows {
            let s = rng.gen_range(0..objects - 1);
            let d = rng.gen_range(s + 1..objects);
            gens.push((format!("g{k}"), names[s].clone(), names[d].clone()));
        }
    }
    let p = Presentation { objects: names, arrows: gens, relations: vec![] };
    FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP)
}

pub fn random_quantaloid(spec: &InstanceSpec) -> Result<Base> {
    let mut r = rng(spec.seed);
    match &spec.base {
        BaseRecipe::Relations { objects, max_set } => {
            let sizes: Vec<usize> = (0..(*objects).max(1)).map(|_| r.gen_range(1..=(*max_set).clamp(1, 3))).collect();
            relations_quantaloid(&sizes)
        }
        BaseRecipe::Free { objects, arrows } => {
            let k = r.gen_range(1..=(*objects).max(1));
            let a = r.gen_range(0..=*arrows);
            free_quantaloid(&random_acyclic_category(&mut r, k, a)?)
        }
        BaseRecipe::Chain { grades, law } => {
            let n = r.gen_range(2..=(*grades).max(2));
            Ok(chain_quantale(
                n,
                match law {
                    Law::Frame => ChainLaw::Frame,
                    Law::Lukasiewicz => ChainLaw::Lukasiewicz,
                },
            ))
        }
    }
}

/// Least fixpoint of `hom(x, z) ⊇ hom(x, y) ∘ hom(y, z)` and `hom(x, x) ⊇ 1`.
pub fn repair_homs(q: &Quantaloid, extents: &[usize], hom: &mut [Elt]) {
    let n = extents.len();
    for x in 0..n {
        let e = extents[x];
        hom[x * n + x] = q.hom(e, e).join(hom[x * n + x], q.identity(e));
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (extents[x], extents[y], extents[z]);
                    let c = q.compose(ez, ey, ex, hom[x * n + y], hom[y * n + z]);
                    let j = q.hom(ez, ex).join(hom[x * n + z], c);
                    if j != hom[x * n + z] {
                        hom[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn random_elt(r: &mut Rng64, size: usize) -> Elt {
    // bias towards the bottom so repairs do not saturate everything
    if r.gen_bool(0.4) {
        0
    } else {
        r.gen_range(0..size)
    }
}

/// A random category over `q` with `1..=max_objects` objects.
pub fn random_vcategory(q: &Base, r: &mut Rng64, max_objects: usize, max_extents: usize) -> Arc<VCategory> {
    let n = r.gen_range(1..=max_objects.max(1));
    let mut pool: Vec<usize> = (0..q.len()).collect();
    pool.shuffle(r);
    pool.truncate(max_extents.max(1));
    let extents: Vec<usize> = (0..n).map(|_| pool[r.gen_range(0..pool.len())]).collect();
    let mut hom: Vec<Elt> = (0..n * n)
        .map(|i| {
            let l = q.hom(extents[i % n], extents[i / n]);
            random_elt(r, l.len())
        })
        .collect();
    repair_homs(q, &extents, &mut hom);
    let objects = extents.iter().enumerate().map(|(i, &e)| (format!("x{i}"), e)).collect();
    Arc::new(VCategory::new(q.clone(), objects, hom).expect("repaired homs fit"))
}

/// Least fixpoint of both actions on a random matrix.
pub fn random_distributor(src: &Arc<VCategory>, dst: &Arc<VCategory>, r: &mut Rng64) -> VDistributor {
    let q = src.base().clone();
    let (na, nb) = (dst.len(), src.len());
    let mut mat: Vec<Elt> =
        (0..na * nb).map(|i| random_elt(r, q.hom(src.extent(i % nb), dst.extent(i / nb)).len())).collect();
    loop {
        let mut changed = false;
        for a in 0..na {
            for b in 0..nb {
                let (ea, eb) = (dst.extent(a), src.extent(b));
                let l = q.hom(eb, ea);
                let mut v = mat[a * nb + b];
                for a2 in 0..na {
                    v = l.join(v, q.compose(eb, dst.extent(a2), ea, dst.hom(a, a2), mat[a2 * nb + b]));
                }
                for b2 in 0..nb {
                    v = l.join(v, q.compose(eb, src.extent(b2), ea, mat[a * nb + b2], src.hom(b2, b)));
                }
                if v != mat[a * nb + b] {
                    mat[a * nb + b] = v;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    VDistributor::new(src.clone(), dst.clone(), mat).expect("shape fits")
}

/// A random presheaf of a random extent.
pub fn random_presheaf(a: &Arc<VCategory>, r: &mut Rng64) -> crate::enriched::Presheaf {
    let v = r.gen_range(0..a.base().len());
    random_distributor(&star_category(a.base(), v), a, r).column(0)
}

/// A functor found by depth-first search in random order, if any exists.
pub fn random_functor(dom: &Arc<VCategory>, cod: &Arc<VCategory>, r: &mut Rng64) -> Option<VFunctor> {
    let n = dom.len();
    let orders: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut v: Vec<usize> = (0..cod.len()).collect();
            v.shuffle(r);
            v
        })
        .collect();
    let mut map = vec![0; n];
    fn go(k: usize, map: &mut Vec<usize>, dom: &VCategory, cod: &VCategory, orders: &[Vec<usize>]) -> bool {
        if k == dom.len() {
            return true;
        }
        let q = dom.base();
        for &c in &orders[k] {
            if cod.extent(c) != dom.extent(k) {
                continue;
            }
            map[k] = c;
            let ok = (0..=k).all(|j| {
                q.hom(dom.extent(k), dom.extent(j)).leq(dom.hom(j, k), cod.hom(map[j], map[k]))
                    && q.hom(dom.extent(j), dom.extent(k)).leq(dom.hom(k, j), cod.hom(map[k], map[j]))
            });
            if ok && go(k + 1, map, dom, cod, orders) {
                return true;
            }
        }
        false
    }
    go(0, &mut map, dom, cod, &orders).then(|| VFunctor::new(dom.clone(), cod.clone(), map).expect("search checked"))
}

/// A named category with the seed that derives all its auxiliary data.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub seed: u64,
    pub category: Arc<VCategory>,
}

/// Bases of the default universe: truth values, the Łukasiewicz 3-chain and
/// the free quantaloid on the arrow category.
pub fn default_bases() -> Vec<(String, Base)> {
    let arrow = Presentation {
        objects: vec!["0".into(), "1".into()],
        arrows: vec![("f".into(), "0".into(), "1".into())],
        relations: vec![],
    };
    let arrow = FiniteCategory::from_presentation(&arrow, DEFAULT_PATH_CAP).expect("arrow category");
    vec![
        ("two".into(), crate::builders::two_quantale()),
        ("luk3".into(), chain_quantale(3, ChainLaw::Lukasiewicz)),
        ("free-arrow".into(), free_quantaloid(&arrow).expect("small")),
    ]
}

/// `cases` random categories per base, each with at most `max_objects` objects.
pub fn default_instances(seed: u64, cases: usize, max_objects: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for (bi, (name, base)) in default_bases().into_iter().enumerate() {
        let mut r = rng(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(bi as u64 + 1)));
        for k in 0..cases {
            let s: u64 = r.gen();
            let mut local = rng(s);
            let category = random_vcategory(&base, &mut local, max_objects, 3);
            out.push(Instance { label: format!("{name}#{k}"), seed: s, category });
        }
    }
    out
}

/// Rebuilds one default-universe instance from its label and seed, so a
/// reported counterexample can be re-run on its own.
pub fn replay_instance(label: &str, seed: u64, max_objects: usize) -> Result<Instance> {
    let base_name = label.split('#').next().unwrap_or(label);
    let (_, base) = default_bases()
        .into_iter()
        .find(|(n, _)| n == base_name)
        .ok_or_else(|| input(format!("no default base named `{base_name}`")))?;
    let category = random_vcategory(&base, &mut rng(seed), max_objects, 3);
    Ok(Instance { label: label.to_string(), seed, category })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaResult {
    pub id: LemmaId,
    pub statement: String,
    pub verdict: Verdict,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scoreboard {
    pub instances: usize,
    pub vacuous: bool,
    pub results: Vec<LemmaResult>,
}

impl Scoreboard {
    pub fn verdict(&self) -> Verdict {
        self.results.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
    }

    pub fn get(&self, id: LemmaId) -> Option<&LemmaResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

impl fmt::Display for Scoreboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} instances{}", self.instances, if self.vacuous { " (vacuous)" } else { "" })?;
        for r in &self.results {
            writeln!(f, "{:<4} {:<13} {:>7} checks  {}", r.id.to_string(), r.verdict.to_string(), r.checked, r.statement)?;
            if let Some(c) = &r.counterexample {
                writeln!(f, "     counterexample: {c}")?;
            }
            if let Some(n) = &r.note {
                writeln!(f, "     note: {n}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// The lift under test; `Join` is a deliberate mutation.
    pub aggregate: Aggregate,
    pub cap: usize,
    /// Presheaves sampled per instance.
    pub max_presheaves: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { aggregate: Aggregate::Meet, cap: 20_000, max_presheaves: 12 }
    }
}

/// Runs the chosen lemmas over every instance; the first counterexample per
/// lemma (in instance order) is kept. Instances are checked on separate threads.
pub fn lemma_suite(instances: &[Instance], which: &BTreeSet<LemmaId>, opts: SuiteOptions) -> Scoreboard {
    let ids: Vec<LemmaId> = which.iter().copied().collect();
    let per_instance = per_instance_probes(instances, &ids, &opts);
    let mut results = Vec::new();
    for (k, &id) in ids.iter().enumerate() {
        let mut res = LemmaResult {
            id,
            statement: id.statement().into(),
            verdict: Verdict::Pass,
            checked: 0,
            counterexample: None,
            note: id.note().map(String::from),
        };
        for (inst, probes) in instances.iter().zip(&per_instance) {
            match &probes[k] {
                Ok(probe) => {
                    res.checked += probe.checked;
                    if let Some(c) = &probe.failure {
                        if res.verdict != Verdict::Fail {
                            res.counterexample = Some(c.clone());
                        }
                        res.verdict = Verdict::Fail;
                    }
                }
                Err(e) if e.is_resource() => {
                    res.verdict = res.verdict.and(Verdict::Inconclusive);
                    res.note.get_or_insert_with(|| format!("{}: {e}", inst.label));
                }
                Err(e) => {
                    if res.verdict != Verdict::Fail {
                        res.counterexample = Some(serde_json::json!({"instance": inst.label, "seed": inst.seed, "error": e.to_string()}));
                    }
                    res.verdict = Verdict::Fail;
                }
            }
        }
        results.push(res);
    }
    Scoreboard { instances: instances.len(), vacuous: instances.is_empty(), results }
}

fn per_instance_probes(instances: &[Instance], ids: &[LemmaId], opts: &SuiteOptions) -> Vec<Vec<Result<lemmas::Probe>>> {
    let one = |inst: &Instance| {
        let p = lemmas::Prepared::new(inst, opts);
        ids.iter().map(|&id| lemmas::run(id, &p, opts)).collect::<Vec<_>>()
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(instances.len().max(1));
    let chunk = instances.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            instances.chunks(chunk).map(|c| s.spawn(move || c.iter().map(one).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("lemma worker panicked")).collect()
    })
}

/// Parses `L1,L5`-style lists; `None` selects everything.
pub fn parse_lemma_ids(s: Option<&str>) -> Result<BTreeSet<LemmaId>> {
    match s {
        None => Ok(LemmaId::ALL.iter().copied().collect()),
        Some(s) => s.split(',').map(|t| t.trim().parse::<LemmaId>()).collect(),
    }
}

impl std::str::FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| input(format!("unknown lemma `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_recipe_validates() {
        let spec = InstanceSpec::new(0, BaseRecipe::Relations { objects: 2, max_set: 2 });
        let q = random_quantaloid(&spec).unwrap();
        assert!(q.validate().is_valid());
        assert!(*random_quantaloid(&spec).unwrap() == *q);
    }

    #[test]
    fn relations_on_a_point_is_two() {
        let q = relations_quantaloid(&[1]).unwrap();
        assert_eq!(q.data().compose, crate::builders::two_quantale().data().compose);
    }

    #[test]
    fn repair_is_identity_on_valid_homs() {
        let q = chain_quantale(3, ChainLaw::Frame);
        let mut r = rng(3);
        let c = random_vcategory(&q, &mut r, 3, 1);
        let mut hom = c.hom_matrix().to_vec();
        repair_homs(&q, c.extents(), &mut hom);
        assert_eq!(hom, c.hom_matrix());
    }

    #[test]
    fn generated_structures_are_valid() {
        for (_, base) in default_bases() {
            let mut r = rng(11);
            for _ in 0..20 {
                let a = random_vcategory(&base, &mut r, 3, 3);
                assert!(crate::enriched::validate_category(&a).is_empty());
                let p = random_distributor(&a, &a, &mut r);
                assert!(crate::enriched::validate_distributor(&p).is_empty());
                assert!(random_presheaf(&a, &mut r).is_valid_on(&a));
                if let Some(f) = random_functor(&a, &a, &mut r) {
                    assert_eq!(f.dom().len(), a.len());
                }
            }
        }
    }

    #[test]
    fn instances_are_deterministic() {
        let a = default_instances(5, 3, 3);
        let b = default_instances(5, 3, 3);
        assert_eq!(a.len(), 9);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.category, y.category);
            assert_eq!(x.seed, y.seed);
        }
    }

    #[test]
    fn empty_universe_is_vacuous() {
        let s = lemma_suite(&[], &parse_lemma_ids(None).unwrap(), SuiteOptions::default());
        assert!(s.vacuous);
        assert_eq!(s.verdict(), Verdict::Pass);
    }
}

#[cfg(test)]
mod suite_tests {
    use super::*;

    fn ids(s: &str) -> BTreeSet<LemmaId> {
        parse_lemma_ids(Some(s)).unwrap()
    }

    #[test]
    fn default_universe_passes_except_the_refuted_lemma() {
        let inst = default_instances(0, 8, 3);
        let s = lemma_suite(&inst, &parse_lemma_ids(None).unwrap(), SuiteOptions::default());
        for r in &s.results {
            assert!(r.checked > 0, "{} exercised nothing", r.id);
            if r.id == LemmaId::L17 {
                continue;
            }
            assert_eq!(r.verdict, Verdict::Pass, "{s}");
        }
        let l17 = s.get(LemmaId::L17).unwrap();
        assert_eq!(l17.verdict, Verdict::Fail);
        let missing = l17.counterexample.as_ref().unwrap()["detail"]["missing"].as_str().unwrap().to_string();
        assert!(missing == "fully faithful diagram" || missing == "absolute colimit", "{missing}");
    }

    #[test]
    fn join_mutation_breaks_lift_lemmas() {
        let inst = default_instances(0, 6, 3);
        let opts = SuiteOptions { aggregate: Aggregate::Join, ..SuiteOptions::default() };
        let s = lemma_suite(&inst, &ids("L1,L5"), opts);
        for id in [LemmaId::L1, LemmaId::L5] {
            let r = s.get(id).unwrap();
            assert_eq!(r.verdict, Verdict::Fail, "{s}");
            assert!(r.counterexample.is_some());
        }
    }

    #[test]
    fn counterexamples_replay_in_isolation() {
        let inst = default_instances(0, 6, 3);
        let opts = SuiteOptions { aggregate: Aggregate::Join, ..SuiteOptions::default() };
        let s = lemma_suite(&inst, &ids("L1,L5,L17"), opts);
        for r in &s.results {
            let c = r.counterexample.as_ref().expect("each of these fails");
            let label = c["instance"].as_str().unwrap();
            let seed = c["seed"].as_u64().unwrap();
            let alone = replay_instance(label, seed, 3).unwrap();
            let again = lemma_suite(&[alone], &BTreeSet::from([r.id]), opts);
            assert_eq!(again.results[0].verdict, Verdict::Fail);
            assert_eq!(again.results[0].counterexample.as_ref(), Some(c));
        }
    }

    #[test]
    fn suite_is_seed_deterministic() {
        let run = || lemma_suite(&default_instances(3, 3, 3), &ids("L2,L13,L15"), SuiteOptions::default());
        assert_eq!(run(), run());
    }

    #[test]
    fn lemma_ids_parse() {
        assert_eq!(ids("l1, L18").len(), 2);
        assert!(parse_lemma_ids(Some("L19")).is_err());
    }
}
