//! Finite lattices given by an explicit order relation.
//!
//! Joins and meets are found by scanning bounds once at construction and
//! tabulated, so every later query is a table lookup.

use std::collections::HashMap;

use crate::error::{input, Result};

/// Element index inside one lattice.
pub type Elt = usize;

/// A finite lattice presented by names and a reflexive-transitive order.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elt>,
    leq: Vec<bool>,
    join: Vec<Elt>,
    meet: Vec<Elt>,
    bottom: Elt,
    top: Elt,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

/// Problems found while reading an order relation as a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    Reflexivity(String),
    Transitivity(String, String, String),
    Antisymmetry(String, String),
    NoBottom,
    NoTop,
    NoJoin(String, String),
    NoMeet(String, String),
    Empty,
    DuplicateName(String),
}

impl std::fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderViolation::Reflexivity(a) => write!(f, "not reflexive at {a}"),
            OrderViolation::Transitivity(a, b, c) => {
                write!(f, "not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            OrderViolation::Antisymmetry(a, b) => write!(f, "{a} <= {b} <= {a} with {a} != {b}"),
            OrderViolation::NoBottom => write!(f, "no bottom element"),
            OrderViolation::NoTop => write!(f, "no top element"),
            OrderViolation::NoJoin(a, b) => write!(f, "no join of {a} and {b}"),
            OrderViolation::NoMeet(a, b) => write!(f, "no meet of {a} and {b}"),
            OrderViolation::Empty => write!(f, "empty element set"),
            OrderViolation::DuplicateName(a) => write!(f, "duplicate element {a}"),
        }
    }
}

/// Closes a relation given as index pairs reflexively and transitively.
pub fn close_order(n: usize, pairs: &[(Elt, Elt)]) -> Vec<bool> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in pairs {
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    leq
}

impl FiniteLattice {
    /// Builds a lattice from names and a full order matrix (row-major, `leq[a*n+b]`).
    pub fn from_matrix(
        names: Vec<String>,
        leq: Vec<bool>,
    ) -> std::result::Result<Self, Vec<OrderViolation>> {
        let n = names.len();
        let mut problems = Vec::new();
        if n == 0 {
            return Err(vec![OrderViolation::Empty]);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                problems.push(OrderViolation::DuplicateName(name.clone()));
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                problems.push(OrderViolation::Reflexivity(names[a].clone()));
            }
        }
        'trans: for a in 0..n {
            for b in 0..n {
                if !le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if le(b, c) && !le(a, c) {
                        problems.push(OrderViolation::Transitivity(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                        break 'trans;
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if le(a, b) && le(b, a) {
                    problems.push(OrderViolation::Antisymmetry(names[a].clone(), names[b].clone()));
                }
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }

        let below: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| le(a, b)).count()).collect();
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x)));
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t)));
        if bottom.is_none() {
            problems.push(OrderViolation::NoBottom);
        }
        if top.is_none() {
            problems.push(OrderViolation::NoTop);
        }

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let ub = (0..n).filter(|&u| le(a, u) && le(b, u)).min_by_key(|&u| below[u]);
                match ub.filter(|&u| (0..n).all(|v| !(le(a, v) && le(b, v)) || le(u, v))) {
                    Some(u) => {
                        join[a * n + b] = u;
                        join[b * n + a] = u;
                    }
                    None => problems.push(OrderViolation::NoJoin(names[a].clone(), names[b].clone())),
                }
                let lb = (0..n).filter(|&l| le(l, a) && le(l, b)).max_by_key(|&l| below[l]);
                match lb.filter(|&l| (0..n).all(|v| !(le(v, a) && le(v, b)) || le(v, l))) {
                    Some(l) => {
                        meet[a * n + b] = l;
                        meet[b * n + a] = l;
                    }
                    None => problems.push(OrderViolation::NoMeet(names[a].clone(), names[b].clone())),
                }
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }
        Ok(FiniteLattice {
            names,
            index,
            leq,
            join,
            meet,
            bottom: bottom.unwrap_or(0),
            top: top.unwrap_or(0),
        })
    }

    /// Builds a lattice from names and generating pairs, closing the order first.
    pub fn from_pairs(
        names: Vec<String>,
        pairs: &[(Elt, Elt)],
    ) -> std::result::Result<Self, Vec<OrderViolation>> {
        let leq = close_order(names.len(), pairs);
        Self::from_matrix(names, leq)
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain(names: Vec<String>) -> Self {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Self::from_matrix(names, leq).expect("a chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Elt) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Elt> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Elt> {
        self.find(name)
            .ok_or_else(|| input(format!("unknown lattice element `{name}`")))
    }

    #[inline]
    pub fn leq(&self, a: Elt, b: Elt) -> bool {
        self.leq[a * self.names.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elt, b: Elt) -> Elt {
        self.join[a * self.names.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: Elt, b: Elt) -> Elt {
        self.meet[a * self.names.len() + b]
    }

    pub fn bottom(&self) -> Elt {
        self.bottom
    }

    pub fn top(&self) -> Elt {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = Elt>>(&self, it: I) -> Elt {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elt>>(&self, it: I) -> Elt {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<Elt> {
        0..self.names.len()
    }

    /// Generating pairs of the order (the covering relation is enough to reload it).
    pub fn order_pairs(&self) -> Vec<(Elt, Elt)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    let covered = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                    if !covered {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn diamond_joins_and_meets() {
        let l = FiniteLattice::from_pairs(names(&["0", "a", "b", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join_all([]), 0);
        assert_eq!(l.meet_all([]), 3);
        assert_eq!(l.order_pairs().len(), 4);
    }

    #[test]
    fn two_tops_rejected() {
        let err = FiniteLattice::from_pairs(names(&["0", "a", "b"]), &[(0, 1), (0, 2)]).unwrap_err();
        assert!(err.contains(&OrderViolation::NoTop));
        assert!(err.iter().any(|v| matches!(v, OrderViolation::NoJoin(_, _))));
    }

    #[test]
    fn cycle_rejected() {
        let err = FiniteLattice::from_pairs(names(&["a", "b"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err[0], OrderViolation::Antisymmetry(_, _)));
    }

    #[test]
    fn raw_matrix_checks_reflexivity() {
        let err = FiniteLattice::from_matrix(names(&["a"]), vec![false]).unwrap_err();
        assert_eq!(err, vec![OrderViolation::Reflexivity("a".into())]);
    }
}
