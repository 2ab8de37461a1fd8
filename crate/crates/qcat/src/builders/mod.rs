//! Constructors for standard bases and small instances.

mod category;
mod free;
mod sheaf;
mod site;

use std::sync::Arc;

pub use category::{FiniteCategory, Presentation, DEFAULT_PATH_CAP};
pub use free::{faithful_to_vcat, free_quantaloid, vcat_to_faithful, FaithfulFunctor};
pub use sheaf::{
    is_symmetric, sheaf_violations, sheafify, sheafify_with_details, PresheafOfSets, SheafifyDetails,
};
pub use site::{rel_site_quantaloid, FiniteSite, RelSite};

use crate::enriched::{Base, VCategory};
use crate::quantaloid::{Quantaloid, QuantaloidData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainLaw {
    /// `x ⊗ y = min(x, y)`.
    Frame,
    /// `x ⊗ y = max(0, x + y - 1)`.
    Lukasiewicz,
}

fn grade_name(i: usize, n: usize) -> String {
    let d = n - 1;
    if i == 0 {
        return "0".into();
    }
    if i == d {
        return "1".into();
    }
    let g = gcd(i, d);
    format!("{}/{}", i / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `n`-element chain `0 < 1/(n-1) < ... < 1` as a one-object quantaloid.
pub fn chain_quantale(n: usize, law: ChainLaw) -> Base {
    assert!(n >= 2, "a chain quantale needs at least two grades");
    let names: Vec<String> = (0..n).map(|i| grade_name(i, n)).collect();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in a..n {
            leq[a * n + b] = true;
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for f in 0..n {
            table.push(Some(match law {
                ChainLaw::Frame => g.min(f),
                ChainLaw::Lukasiewicz => (g + f).saturating_sub(n - 1),
            }));
        }
    }
    Quantaloid::new(QuantaloidData {
        objects: vec!["*".into()],
        homs: vec![(names, leq)],
        compose: vec![table],
        identities: vec![n - 1],
    })
    .expect("chain quantales are quantaloids")
}

/// Truth values `{0 < 1}` with conjunction.
pub fn two_quantale() -> Base {
    chain_quantale(2, ChainLaw::Frame)
}

/// A preorder over a one-object base: `hom(x, y)` is top when `x ≤ y` (after
/// reflexive-transitive closure of `pairs`) and bottom otherwise.
pub fn preorder_category(base: &Base, names: &[&str], pairs: &[(usize, usize)]) -> Arc<VCategory> {
    let n = names.len();
    let leq = crate::lattice::close_order(n, pairs);
    let l = base.hom(0, 0);
    let hom = leq.iter().map(|&b| if b { l.top() } else { l.bottom() }).collect();
    let objects = names.iter().map(|s| (s.to_string(), 0)).collect();
    Arc::new(VCategory::new(base.clone(), objects, hom).expect("shape is consistent"))
}

pub fn discrete_category(base: &Base, names: &[&str]) -> Arc<VCategory> {
    preorder_category(base, names, &[])
}
