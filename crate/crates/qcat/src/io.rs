//! JSON file formats.
//!
//! Structures refer to each other by path (relative to the referring file) or
//! inline. Bases may also be named: `two`, `chainN`, `lukN`, `free:<path>` for
//! the free quantaloid on a presented category, `rel:<path>` for a site.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::builders::{
    chain_quantale, free_quantaloid, rel_site_quantaloid, ChainLaw, FiniteCategory, FiniteSite, Presentation,
    PresheafOfSets, DEFAULT_PATH_CAP,
};
use crate::completion::{Family, WeightClass};
use crate::enriched::{Base, VCategory, VDistributor, VFunctor, Weight};
use crate::error::{input, Error, Result};
use crate::lattice::close_order;
use crate::quantaloid::{Quantaloid, QuantaloidData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaloidFile {
    pub objects: Vec<String>,
    /// Keyed `X->Y`.
    pub homs: BTreeMap<String, HomFile>,
    /// Keyed `X->Y->Z`; entries `[g, f, g∘f]` with `f: X -> Y`, `g: Y -> Z`.
    pub compose: BTreeMap<String, Vec<[String; 3]>>,
    pub identities: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Named(String),
    Dual { dual: Box<BaseRef> },
    Inline(Box<QuantaloidFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub base: BaseRef,
    pub objects: Vec<ObjectEntry>,
    /// Keyed `a,b`; missing entries are bottom off the diagonal and the
    /// identity on it.
    #[serde(default)]
    pub hom: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatRef {
    Path(String),
    Inline(Box<CategoryFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub dom: CatRef,
    pub cod: CatRef,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributorFile {
    pub src: CatRef,
    pub dst: CatRef,
    /// Keyed `a,b` with `a` in `dst` and `b` in `src`; missing entries are bottom.
    #[serde(default)]
    pub entries: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistRef {
    Path(String),
    Inline(Box<DistributorFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightClassFile {
    Family { family: String },
    Weights { weights: Vec<Vec<DistRef>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<[Vec<String>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteFile {
    #[serde(flatten)]
    pub category: PresentationFile,
    /// Covering families by object, each a list of arrow names into it.
    #[serde(default)]
    pub coverage: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafOfSetsFile {
    pub sections: BTreeMap<String, Vec<String>>,
    /// Per generating arrow `u: d -> c`, the image in `F(d)` of each element of `F(c)`.
    #[serde(default)]
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Quantaloid,
    Category,
    Functor,
    Distributor,
    WeightClass,
    Site,
    PresheafOfSets,
}

impl FileKind {
    pub fn detect(v: &Value) -> Option<FileKind> {
        let has = |k: &str| v.get(k).is_some();
        Some(if has("compose") {
            FileKind::Quantaloid
        } else if has("coverage") {
            FileKind::Site
        } else if has("sections") {
            FileKind::PresheafOfSets
        } else if has("map") {
            FileKind::Functor
        } else if has("src") && has("dst") {
            FileKind::Distributor
        } else if has("family") || has("weights") {
            FileKind::WeightClass
        } else if has("base") && has("objects") {
            FileKind::Category
        } else {
            return None;
        })
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn read_as<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn split_key<'a>(key: &'a str, sep: &str, parts: usize) -> Result<Vec<&'a str>> {
    let v: Vec<&str> = key.split(sep).collect();
    if v.len() != parts {
        return Err(input(format!("malformed key `{key}`")));
    }
    Ok(v)
}

/// Splits `a,b` where names may themselves contain commas.
fn split_pair(key: &str, left: &VCategory, right: &VCategory) -> Result<(usize, usize)> {
    let mut found = None;
    for (i, _) in key.match_indices(',') {
        if let (Ok(a), Ok(b)) = (left.find(&key[..i]), right.find(&key[i + 1..])) {
            if found.is_some() {
                return Err(input(format!("ambiguous key `{key}`")));
            }
            found = Some((a, b));
        }
    }
    found.ok_or_else(|| input(format!("key `{key}` does not name two objects")))
}

pub fn quantaloid_data(f: &QuantaloidFile) -> Result<QuantaloidData> {
    let n = f.objects.len();
    let obj = |s: &str| f.objects.iter().position(|o| o == s).ok_or_else(|| input(format!("unknown object `{s}`")));
    let mut homs: Vec<Option<(Vec<String>, Vec<bool>)>> = vec![None; n * n];
    for (key, h) in &f.homs {
        let p = split_key(key, "->", 2)?;
        let (x, y) = (obj(p[0])?, obj(p[1])?);
        let idx = |s: &str| {
            h.elements.iter().position(|e| e == s).ok_or_else(|| Error::UnknownElement { hom: key.clone(), elt: s.into() })
        };
        let pairs = h.leq.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        homs[x * n + y] = Some((h.elements.clone(), close_order(h.elements.len(), &pairs)));
    }
    let homs: Vec<(Vec<String>, Vec<bool>)> = homs
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| input(format!("missing hom {}->{}", f.objects[i / n], f.objects[i % n]))))
        .collect::<Result<_>>()?;
    let elt = |x: usize, y: usize, s: &str| {
        homs[x * n + y].0.iter().position(|e| e == s).ok_or_else(|| Error::UnknownElement {
            hom: format!("{}->{}", f.objects[x], f.objects[y]),
            elt: s.into(),
        })
    };
    let mut compose: Vec<Vec<Option<usize>>> = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                compose.push(vec![None; homs[y * n + z].0.len() * homs[x * n + y].0.len()]);
            }
        }
    }
    for (key, entries) in &f.compose {
        let p = split_key(key, "->", 3)?;
        let (x, y, z) = (obj(p[0])?, obj(p[1])?, obj(p[2])?);
        let nf = homs[x * n + y].0.len();
        for [g, fe, h] in entries {
            let (g, fe, h) = (elt(y, z, g)?, elt(x, y, fe)?, elt(x, z, h)?);
            compose[(x * n + y) * n + z][g * nf + fe] = Some(h);
        }
    }
    let identities = f
        .objects
        .iter()
        .enumerate()
        .map(|(x, o)| {
            let e = f.identities.get(o).ok_or_else(|| input(format!("missing identity on `{o}`")))?;
            elt(x, x, e)
        })
        .collect::<Result<_>>()?;
    Ok(QuantaloidData { objects: f.objects.clone(), homs, compose, identities })
}

pub fn quantaloid_from_file(f: &QuantaloidFile) -> Result<Base> {
    Quantaloid::new(quantaloid_data(f)?)
}

pub fn quantaloid_to_file(q: &Quantaloid) -> QuantaloidFile {
    let n = q.len();
    let o = |x: usize| q.object_name(x).to_string();
    let mut homs = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let l = q.hom(x, y);
            let leq = l.order_pairs().into_iter().map(|(a, b)| [l.name(a).to_string(), l.name(b).to_string()]).collect();
            homs.insert(format!("{}->{}", o(x), o(y)), HomFile { elements: l.names().to_vec(), leq });
            for z in 0..n {
                let mut entries = Vec::new();
                for g in q.hom(y, z).elements() {
                    for f in l.elements() {
                        let h = q.compose(x, y, z, g, f);
                        entries.push([q.hom(y, z).name(g).to_string(), l.name(f).to_string(), q.hom(x, z).name(h).to_string()]);
                    }
                }
                compose.insert(format!("{}->{}->{}", o(x), o(y), o(z)), entries);
            }
        }
    }
    let identities = (0..n).map(|x| (o(x), q.hom(x, x).name(q.identity(x)).to_string())).collect();
    QuantaloidFile { objects: q.objects().to_vec(), homs, compose, identities }
}

/// The dual quantaloid file: `hom(X, Y)` becomes `hom(Y, X)`, composition flips.
pub fn dualize_quantaloid(f: &QuantaloidFile) -> Result<QuantaloidFile> {
    let mut homs = BTreeMap::new();
    for (key, h) in &f.homs {
        let p = split_key(key, "->", 2)?;
        homs.insert(format!("{}->{}", p[1], p[0]), h.clone());
    }
    let mut compose = BTreeMap::new();
    for (key, entries) in &f.compose {
        let p = split_key(key, "->", 3)?;
        let flipped = entries.iter().map(|[g, fe, h]| [fe.clone(), g.clone(), h.clone()]).collect();
        compose.insert(format!("{}->{}->{}", p[2], p[1], p[0]), flipped);
    }
    Ok(QuantaloidFile { objects: f.objects.clone(), homs, compose, identities: f.identities.clone() })
}

pub fn load_presentation(path: &Path) -> Result<Presentation> {
    let f: PresentationFile = read_as(path)?;
    Ok(presentation(&f))
}

fn presentation(f: &PresentationFile) -> Presentation {
    Presentation {
        objects: f.objects.clone(),
        arrows: f.arrows.iter().map(|a| (a.name.clone(), a.src.clone(), a.dst.clone())).collect(),
        relations: f.relations.iter().map(|[l, r]| (l.clone(), r.clone())).collect(),
    }
}

pub fn resolve_base(r: &BaseRef, dir: &Path) -> Result<Base> {
    match r {
        BaseRef::Inline(f) => quantaloid_from_file(f),
        BaseRef::Dual { dual } => Ok(resolve_base(dual, dir)?.op()),
        BaseRef::Named(name) => named_base(name, dir),
    }
}

fn named_base(name: &str, dir: &Path) -> Result<Base> {
    let grade = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()).filter(|&n| n >= 2);
    if name == "two" || name == "2" {
        return Ok(crate::builders::two_quantale());
    }
    if let Some(n) = grade("chain") {
        return Ok(chain_quantale(n, ChainLaw::Frame));
    }
    if let Some(n) = grade("luk") {
        return Ok(chain_quantale(n, ChainLaw::Lukasiewicz));
    }
    if let Some(p) = name.strip_prefix("free:") {
        let cat = FiniteCategory::from_presentation(&load_presentation(&dir.join(p))?, DEFAULT_PATH_CAP)?;
        return free_quantaloid(&cat);
    }
    if let Some(p) = name.strip_prefix("rel:") {
        return Ok(rel_site_quantaloid(&load_site(&dir.join(p))?)?.quantaloid);
    }
    let path = dir.join(name);
    if path.exists() {
        let f: QuantaloidFile = read_as(&path)?;
        return quantaloid_from_file(&f);
    }
    Err(input(format!("unknown base `{name}`")))
}

pub fn load_quantaloid(path: &Path) -> Result<Base> {
    let f: QuantaloidFile = read_as(path)?;
    quantaloid_from_file(&f)
}

pub fn category_from_file(f: &CategoryFile, dir: &Path) -> Result<Arc<VCategory>> {
    let base = resolve_base(&f.base, dir)?;
    let objects = f
        .objects
        .iter()
        .map(|o| {
            let ext = match &o.extent {
                Some(e) => base.find_object(e)?,
                None if base.len() == 1 => 0,
                None => return Err(input(format!("object `{}` needs an extent", o.name))),
            };
            Ok((o.name.clone(), ext))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = objects.len();
    let mut hom: Vec<usize> = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let (ex, ey) = (objects[x].1, objects[y].1);
            if x == y {
                base.identity(ex)
            } else {
                base.hom(ey, ex).bottom()
            }
        })
        .collect();
    // a shell category to resolve keys against
    let names_only = VCategory::new(base.clone(), objects.clone(), hom.clone())
        .or_else(|_| VCategory::new(base.clone(), objects.clone(), vec![0; n * n]))?;
    for (key, e) in &f.hom {
        let (x, y) = split_pair(key, &names_only, &names_only)?;
        let l = base.hom(objects[y].1, objects[x].1);
        hom[x * n + y] = l.find(e).ok_or_else(|| Error::UnknownElement { hom: key.clone(), elt: e.clone() })?;
    }
    Ok(Arc::new(VCategory::new(base, objects, hom)?))
}

pub fn load_category(path: &Path) -> Result<Arc<VCategory>> {
    let f: CategoryFile = read_as(path)?;
    category_from_file(&f, &dir_of(path))
}

pub fn category_to_file(c: &VCategory, base: BaseRef) -> CategoryFile {
    let q = c.base();
    let objects = (0..c.len())
        .map(|x| ObjectEntry { name: c.name(x).into(), extent: Some(q.object_name(c.extent(x)).into()) })
        .collect();
    let mut hom = BTreeMap::new();
    for x in 0..c.len() {
        for y in 0..c.len() {
            hom.insert(format!("{},{}", c.name(x), c.name(y)), c.hom_name(x, y).to_string());
        }
    }
    CategoryFile { base, objects, hom }
}

/// `hom(a, b)` becomes `hom(b, a)` over the dual base.
pub fn dualize_category(f: &CategoryFile) -> CategoryFile {
    let base = match &f.base {
        BaseRef::Dual { dual } => (**dual).clone(),
        other => BaseRef::Dual { dual: Box::new(other.clone()) },
    };
    // keys are swapped by position of the object names
    let names: Vec<&str> = f.objects.iter().map(|o| o.name.as_str()).collect();
    let hom = f
        .hom
        .iter()
        .map(|(k, v)| {
            let swapped = k
                .match_indices(',')
                .find(|(i, _)| names.contains(&&k[..*i]) && names.contains(&&k[i + 1..]))
                .map(|(i, _)| format!("{},{}", &k[i + 1..], &k[..i]))
                .unwrap_or_else(|| k.clone());
            (swapped, v.clone())
        })
        .collect();
    CategoryFile { base, objects: f.objects.clone(), hom }
}

pub fn resolve_category(r: &CatRef, dir: &Path) -> Result<Arc<VCategory>> {
    match r {
        CatRef::Path(p) => load_category(&dir.join(p)),
        CatRef::Inline(f) => category_from_file(f, dir),
    }
}

pub fn functor_from_file(f: &FunctorFile, dir: &Path) -> Result<VFunctor> {
    let dom = resolve_category(&f.dom, dir)?;
    let cod = resolve_category(&f.cod, dir)?;
    let map = (0..dom.len())
        .map(|x| {
            let target = f.map.get(dom.name(x)).ok_or_else(|| input(format!("no image for `{}`", dom.name(x))))?;
            cod.find(target)
        })
        .collect::<Result<Vec<_>>>()?;
    VFunctor::new(dom, cod, map)
}

pub fn load_functor(path: &Path) -> Result<VFunctor> {
    let f: FunctorFile = read_as(path)?;
    functor_from_file(&f, &dir_of(path))
}

pub fn functor_to_file(f: &VFunctor, dom: CatRef, cod: CatRef) -> FunctorFile {
    let map = (0..f.dom().len()).map(|x| (f.dom().name(x).to_string(), f.cod().name(f.apply(x)).to_string())).collect();
    FunctorFile { dom, cod, map }
}

pub fn distributor_from_file(f: &DistributorFile, dir: &Path) -> Result<VDistributor> {
    let src = resolve_category(&f.src, dir)?;
    let dst = resolve_category(&f.dst, dir)?;
    let q = src.base().clone();
    let (na, nb) = (dst.len(), src.len());
    let mut mat: Vec<usize> = (0..na * nb).map(|i| q.hom(src.extent(i % nb), dst.extent(i / nb)).bottom()).collect();
    for (key, e) in &f.entries {
        let (a, b) = split_pair(key, &dst, &src)?;
        mat[a * nb + b] = q
            .hom(src.extent(b), dst.extent(a))
            .find(e)
            .ok_or_else(|| Error::UnknownElement { hom: key.clone(), elt: e.clone() })?;
    }
    let p = VDistributor::new(src, dst, mat)?;
    if let Some(v) = crate::enriched::validate_distributor(&p).into_iter().next() {
        return Err(Error::Invalid(format!("not a distributor: {v}")));
    }
    Ok(p)
}

pub fn load_distributor(path: &Path) -> Result<VDistributor> {
    let f: DistributorFile = read_as(path)?;
    distributor_from_file(&f, &dir_of(path))
}

pub fn distributor_to_file(p: &VDistributor, src: CatRef, dst: CatRef) -> DistributorFile {
    let mut entries = BTreeMap::new();
    for a in 0..p.dst().len() {
        for b in 0..p.src().len() {
            entries.insert(format!("{},{}", p.dst().name(a), p.src().name(b)), p.entry_name(a, b).to_string());
        }
    }
    DistributorFile { src, dst, entries }
}

fn resolve_dist(r: &DistRef, dir: &Path) -> Result<VDistributor> {
    match r {
        DistRef::Path(p) => load_distributor(&dir.join(p)),
        DistRef::Inline(f) => distributor_from_file(f, dir),
    }
}

pub fn weight_class_from_file(f: &WeightClassFile, dir: &Path) -> Result<WeightClass> {
    match f {
        WeightClassFile::Family { family } => Ok(WeightClass::Family(family.parse::<Family>()?)),
        WeightClassFile::Weights { weights } => weights
            .iter()
            .map(|chain| {
                let chain = chain.iter().map(|d| resolve_dist(d, dir)).collect::<Result<Vec<_>>>()?;
                let first = chain.first().ok_or_else(|| input("a weight needs at least one distributor"))?;
                Weight::new(first.dst().clone(), chain)
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightClass::Weights),
    }
}

/// A family name or a path to a weight class file.
pub fn parse_weights(spec: &str, dir: &Path) -> Result<WeightClass> {
    if let Ok(f) = spec.parse::<Family>() {
        return Ok(WeightClass::Family(f));
    }
    let path = dir.join(spec);
    let f: WeightClassFile = read_as(&path)?;
    weight_class_from_file(&f, &dir_of(&path))
}

pub fn site_from_file(f: &SiteFile) -> Result<FiniteSite> {
    let cat = Arc::new(FiniteCategory::from_presentation(&presentation(&f.category), DEFAULT_PATH_CAP)?);
    let n = cat.objects().len();
    let mut families: Vec<Vec<Vec<usize>>> = (0..n).map(|c| vec![cat.arrows_into(c)]).collect();
    for (obj, fams) in &f.coverage {
        let c = cat.find_object(obj)?;
        for fam in fams {
            families[c].push(fam.iter().map(|a| arrow_by_name(&cat, a)).collect::<Result<_>>()?);
        }
    }
    FiniteSite::new(cat, families)
}

fn arrow_by_name(cat: &FiniteCategory, name: &str) -> Result<usize> {
    if let Some(o) = name.strip_prefix("id_") {
        if let Ok(x) = cat.find_object(o) {
            return Ok(cat.identity(x));
        }
    }
    let path: Vec<String> = name.split(';').map(String::from).collect();
    cat.path(&path, None)
}

pub fn load_site(path: &Path) -> Result<FiniteSite> {
    let f: SiteFile = read_as(path)?;
    site_from_file(&f)
}

pub fn presheaf_of_sets_from_file(f: &PresheafOfSetsFile, cat: &Arc<FiniteCategory>) -> Result<PresheafOfSets> {
    for k in f.sections.keys() {
        cat.find_object(k)?;
    }
    let sets: Vec<Vec<String>> = cat.objects().iter().map(|o| f.sections.get(o).cloned().unwrap_or_default()).collect();
    let mut gens = Vec::new();
    for (g, &a) in cat.generators().iter().map(|(g, a)| (g, a)) {
        let arrow = cat.arrow(a);
        let given = f.restrictions.get(g);
        let m = sets[arrow.dst]
            .iter()
            .map(|x| {
                let y = given
                    .and_then(|m| m.get(x))
                    .ok_or_else(|| input(format!("no restriction of `{x}` along `{g}`")))?;
                sets[arrow.src].iter().position(|s| s == y).ok_or_else(|| input(format!("`{y}` is not a section")))
            })
            .collect::<Result<Vec<_>>>()?;
        gens.push((g.clone(), m));
    }
    PresheafOfSets::from_generators(cat.clone(), sets, &gens)
}

pub fn load_presheaf_of_sets(path: &Path, cat: &Arc<FiniteCategory>) -> Result<PresheafOfSets> {
    let f: PresheafOfSetsFile = read_as(path)?;
    presheaf_of_sets_from_file(&f, cat)
}

pub fn presheaf_of_sets_to_file(f: &PresheafOfSets) -> PresheafOfSetsFile {
    let cat = &f.category;
    let sections = cat.objects().iter().cloned().zip(f.sets.iter().cloned()).collect();
    let restrictions = cat
        .generators()
        .iter()
        .map(|(g, a)| {
            let arrow = cat.arrow(*a);
            let m = f.sets[arrow.dst]
                .iter()
                .enumerate()
                .map(|(x, name)| (name.clone(), f.sets[arrow.src][f.restrict(*a, x)].clone()))
                .collect();
            (g.clone(), m)
        })
        .collect();
    PresheafOfSetsFile { sections, restrictions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain_quantale, two_quantale};

    #[test]
    fn quantaloid_round_trip() {
        for q in [two_quantale(), chain_quantale(3, ChainLaw::Lukasiewicz)] {
            let f = quantaloid_to_file(&q);
            assert_eq!(*quantaloid_from_file(&f).unwrap(), *q);
            let d = dualize_quantaloid(&f).unwrap();
            assert_eq!(dualize_quantaloid(&d).unwrap(), f);
            assert_eq!(*quantaloid_from_file(&d).unwrap(), *q.op());
        }
    }

    #[test]
    fn category_keys_with_commas() {
        let two = two_quantale();
        let objects = vec![("(1,0)".to_string(), 0), ("(0,1)".to_string(), 0)];
        let c = VCategory::new(two, objects, vec![1, 0, 0, 1]).unwrap();
        let f = category_to_file(&c, BaseRef::Named("two".into()));
        let back = category_from_file(&f, Path::new(".")).unwrap();
        assert_eq!(*back, c);
        assert_eq!(dualize_category(&dualize_category(&f)), f);
    }

    #[test]
    fn unknown_element_is_reported() {
        let mut f = quantaloid_to_file(&two_quantale());
        f.identities.insert("*".into(), "2".into());
        assert!(matches!(quantaloid_from_file(&f), Err(Error::UnknownElement { .. })));
    }

    #[test]
    fn file_kinds() {
        let q = serde_json::to_value(quantaloid_to_file(&two_quantale())).unwrap();
        assert_eq!(FileKind::detect(&q), Some(FileKind::Quantaloid));
        let w: Value = serde_json::json!({"family": "all"});
        assert_eq!(FileKind::detect(&w), Some(FileKind::WeightClass));
    }
}
