//! Finite bounded distributive lattices.
//!
//! A [`DistLattice`] is stored as its order matrix together with precomputed
//! join and meet tables. Elements are dense ids `0..len()`; names are kept only
//! for display and serialization.

mod enumerate;
mod iso;
mod semiring;
mod space;

pub use enumerate::{all_distributive_lattices, downset_lattice, free_distributive_lattice_2};
pub use iso::{find_isomorphism, is_homomorphism, LatticeIso};
pub use semiring::{IdempotentSemiring, RadQuotient};
pub use space::{comp, lower_set_lattice, pt, stone_roundtrip, CoherentSpace, Completion, PointSet};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    /// Builds a lattice from an order predicate, validating every lattice axiom.
    pub fn from_order<F>(names: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotALattice("empty carrier has no bottom".into()));
        }
        check_unique_names(&names)?;
        let mut order = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                order[a * n + b] = leq(a, b);
            }
        }
        Self::from_order_matrix(names, order)
    }

    /// Builds a lattice from its Hasse diagram (pairs `(lower, upper)`).
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotALattice("empty carrier has no bottom".into()));
        }
        check_unique_names(&names)?;
        let mut order = vec![false; n * n];
        for a in 0..n {
            order[a * n + a] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::NotALattice(format!("cover ({a},{b}) out of range")));
            }
            order[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if order[i * n + k] {
                    for j in 0..n {
                        if order[k * n + j] {
                            order[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order_matrix(names, order)
    }

    fn from_order_matrix(names: Vec<String>, order: Vec<bool>) -> Result<Self> {
        let n = names.len();
        let le = |a: usize, b: usize| order[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::NotALattice(format!("order not reflexive at {}", names[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotALattice(format!(
                        "order not antisymmetric at ({}, {})",
                        names[a], names[b]
                    )));
                }
                if le(a, b) {
                    for c in 0..n {
                        if le(b, c) && !le(a, c) {
                            return Err(Error::NotALattice(format!(
                                "order not transitive at ({}, {}, {})",
                                names[a], names[b], names[c]
                            )));
                        }
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lub = (0..n)
                    .filter(|&u| le(a, u) && le(b, u))
                    .find(|&u| (0..n).all(|v| !(le(a, v) && le(b, v)) || le(u, v)))
                    .ok_or_else(|| {
                        Error::NotALattice(format!("no join of {} and {}", names[a], names[b]))
                    })?;
                let glb = (0..n)
                    .filter(|&l| le(l, a) && le(l, b))
                    .find(|&l| (0..n).all(|v| !(le(v, a) && le(v, b)) || le(v, l)))
                    .ok_or_else(|| {
                        Error::NotALattice(format!("no meet of {} and {}", names[a], names[b]))
                    })?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let lattice = DistLattice {
            names,
            leq: order,
            join,
            meet,
            bottom,
            top,
        };
        lattice.check_distributive()?;
        Ok(lattice)
    }

    fn check_distributive(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Err(Error::NotALattice(format!(
                            "distribution law fails at ({}, {}, {})",
                            self.names[x], self.names[y], self.names[z]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The n-element chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_order(names, |a, b| a <= b).expect("chains are distributive")
    }

    /// The Boolean lattice of subsets of a k-element set, elements as bitmasks.
    pub fn boolean(k: usize) -> Self {
        let names = (0..1usize << k).map(mask_name).collect();
        Self::from_order(names, |a, b| a & !b == 0).expect("Boolean lattices are distributive")
    }

    /// Cartesian product with componentwise order.
    pub fn product(&self, other: &DistLattice) -> Self {
        let m = other.len();
        let names = (0..self.len() * m)
            .map(|i| format!("({},{})", self.names[i / m], other.names[i % m]))
            .collect();
        Self::from_order(names, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("products of distributive lattices are distributive")
    }

    /// The principal down-set `↓f` as a lattice in its own right (ids are re-indexed).
    pub fn principal_sublattice(&self, f: usize) -> (DistLattice, Vec<usize>) {
        let members: Vec<usize> = (0..self.len()).filter(|&x| self.leq(x, f)).collect();
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let sub = Self::from_order(names, |a, b| self.leq(members[a], members[b]))
            .expect("intervals of distributive lattices are distributive");
        (sub, members)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The degenerate one-element lattice where bottom equals top.
    pub fn is_trivial(&self) -> bool {
        self.bottom == self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Hasse edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let covers = self.covers();
        (0..self.len())
            .filter(|&x| covers.iter().filter(|&&(_, b)| b == x).count() == 1)
            .collect()
    }

    pub fn down_set(&self, x: usize) -> Vec<bool> {
        (0..self.len()).map(|y| self.leq(y, x)).collect()
    }

    /// Returns a copy with new element names (same ids).
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::NotALattice("rename changes the carrier size".into()));
        }
        check_unique_names(&names)?;
        Ok(DistLattice {
            names,
            ..self.clone()
        })
    }
}

fn check_unique_names(names: &[String]) -> Result<()> {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::NotALattice(format!("duplicate element name {}", w[0])));
        }
    }
    Ok(())
}

pub(crate) fn mask_name(mask: usize) -> String {
    if mask == 0 {
        return "{}".into();
    }
    let parts: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn diamond_from_covers() {
        let l = DistLattice::from_covers(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn rejects_pentagon() {
        // N5: 0 < a < b < 1, 0 < c < 1
        let err = DistLattice::from_covers(names(5), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
            .unwrap_err();
        assert!(matches!(err, Error::NotALattice(ref m) if m.contains("distribution")));
    }

    #[test]
    fn rejects_diamond_m3() {
        let err = DistLattice::from_covers(
            names(5),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice(_)));
    }

    #[test]
    fn rejects_missing_join() {
        // two maximal elements, no top
        let err = DistLattice::from_covers(names(3), &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice(ref m) if m.contains("top")));
    }

    #[test]
    fn rejects_cycle() {
        let err = DistLattice::from_covers(names(2), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice(ref m) if m.contains("antisymmetric")));
    }

    #[test]
    fn trivial_lattice_is_flagged() {
        let l = DistLattice::chain(1);
        assert!(l.is_trivial());
        assert_eq!(l.bottom(), l.top());
        assert!(!DistLattice::chain(2).is_trivial());
    }

    #[test]
    fn boolean_and_product_agree() {
        let b2 = DistLattice::boolean(2);
        let p = DistLattice::chain(2).product(&DistLattice::chain(2));
        assert!(find_isomorphism(&b2, &p).is_some());
        assert_eq!(DistLattice::boolean(3).join_irreducibles().len(), 3);
    }

    #[test]
    fn principal_sublattice_of_chain() {
        let c = DistLattice::chain(4);
        let (sub, members) = c.principal_sublattice(2);
        assert_eq!(sub.len(), 3);
        assert_eq!(members, vec![0, 1, 2]);
    }
}
