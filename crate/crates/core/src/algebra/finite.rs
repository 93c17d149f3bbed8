use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DistLattice, IdempotentSemiring};

/// The algebraic type a finite table lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteKind {
    /// Commutative monoid with absorbing zero (pointed sets).
    MonoidZero,
    /// Commutative ring (abelian groups).
    Ring,
    /// Distributive lattice read as a semiring: `+` is join, `·` is meet.
    Lattice,
}

impl FiniteKind {
    pub fn tag(self) -> &'static str {
        match self {
            FiniteKind::MonoidZero => "monoid_zero",
            FiniteKind::Ring => "ring",
            FiniteKind::Lattice => "lattice",
        }
    }

    pub fn has_addition(self) -> bool {
        !matches!(self, FiniteKind::MonoidZero)
    }
}

/// A finite commutative monoid object given by operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    kind: FiniteKind,
    names: Vec<String>,
    mul: Vec<usize>,
    add: Option<Vec<usize>>,
    zero: usize,
    one: usize,
}

/// A localization `R → R_f`, realized as `R → eR` with `e` the idempotent power of `f`.
#[derive(Clone, Debug)]
pub struct FiniteLocalization {
    pub algebra: FiniteAlgebra,
    /// `map[x]` is the index of `e·x` in `algebra`.
    pub map: Vec<usize>,
    /// Carrier of `algebra` as indices of the source.
    pub embedding: Vec<usize>,
    pub idempotent: usize,
}

impl FiniteAlgebra {
    /// Builds an algebra from closures and validates all axioms of its kind.
    pub fn from_fn<M, A>(
        kind: FiniteKind,
        names: Vec<String>,
        mul: M,
        add: Option<A>,
        zero: usize,
        one: usize,
    ) -> Result<Self>
    where
        M: Fn(usize, usize) -> usize,
        A: Fn(usize, usize) -> usize,
    {
        let n = names.len();
        if n == 0 {
            return Err(Error::axiom("carrier", "empty carrier"));
        }
        if zero >= n || one >= n {
            return Err(Error::axiom("carrier", "0 or 1 outside the carrier"));
        }
        if kind.has_addition() != add.is_some() {
            return Err(Error::axiom(
                "signature",
                format!("{} needs {} addition table", kind.tag(), if add.is_some() { "no" } else { "an" }),
            ));
        }
        let mut mt = vec![0; n * n];
        let mut at = add.as_ref().map(|_| vec![0; n * n]);
        for a in 0..n {
            for b in 0..n {
                let v = mul(a, b);
                if v >= n {
                    return Err(Error::axiom("closure of ·", format!("({}, {})", names[a], names[b])));
                }
                mt[a * n + b] = v;
                if let (Some(f), Some(t)) = (add.as_ref(), at.as_mut()) {
                    let v = f(a, b);
                    if v >= n {
                        return Err(Error::axiom("closure of +", format!("({}, {})", names[a], names[b])));
                    }
                    t[a * n + b] = v;
                }
            }
        }
        let alg = FiniteAlgebra {
            kind,
            names,
            mul: mt,
            add: at,
            zero,
            one,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn from_tables(
        kind: FiniteKind,
        names: Vec<String>,
        mul: &[Vec<usize>],
        add: Option<&[Vec<usize>]>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = names.len();
        let square = |t: &[Vec<usize>]| t.len() == n && t.iter().all(|r| r.len() == n);
        if !square(mul) || add.is_some_and(|t| !square(t)) {
            return Err(Error::axiom("signature", "tables must be square over the carrier"));
        }
        Self::from_fn(kind, names, |a, b| mul[a][b], add.map(|t| move |a: usize, b: usize| t[a][b]), zero, one)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let w = |xs: &[usize]| {
            let parts: Vec<&str> = xs.iter().map(|&x| self.names[x].as_str()).collect();
            format!("({})", parts.join(", "))
        };
        for a in 0..n {
            if self.mul(a, self.one) != a {
                return Err(Error::axiom("unital ·", w(&[a])));
            }
            if self.mul(a, self.zero) != self.zero {
                return Err(Error::axiom("0 absorbs ·", w(&[a])));
            }
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::axiom("commutative ·", w(&[a, b])));
                }
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::axiom("associative ·", w(&[a, b, c])));
                    }
                }
            }
        }
        match self.kind {
            FiniteKind::MonoidZero => Ok(()),
            FiniteKind::Ring => {
                for a in 0..n {
                    if self.add_raw(a, self.zero) != a {
                        return Err(Error::axiom("additive unit", w(&[a])));
                    }
                    if !(0..n).any(|b| self.add_raw(a, b) == self.zero) {
                        return Err(Error::axiom("additive inverse", w(&[a])));
                    }
                    for b in 0..n {
                        if self.add_raw(a, b) != self.add_raw(b, a) {
                            return Err(Error::axiom("commutative +", w(&[a, b])));
                        }
                        for c in 0..n {
                            if self.add_raw(self.add_raw(a, b), c) != self.add_raw(a, self.add_raw(b, c)) {
                                return Err(Error::axiom("associative +", w(&[a, b, c])));
                            }
                            if self.mul(a, self.add_raw(b, c))
                                != self.add_raw(self.mul(a, b), self.mul(a, c))
                            {
                                return Err(Error::axiom("distribution", w(&[a, b, c])));
                            }
                        }
                    }
                }
                Ok(())
            }
            FiniteKind::Lattice => {
                IdempotentSemiring::from_fn(
                    self.names.clone(),
                    |a, b| self.add_raw(a, b),
                    |a, b| self.mul(a, b),
                    self.zero,
                    self.one,
                )?;
                if let Some(a) = (0..n).find(|&a| self.mul(a, a) != a) {
                    return Err(Error::axiom("idempotent ·", w(&[a])));
                }
                Ok(())
            }
        }
    }

    /// `ℤ/n` as a ring; `n = 1` gives the trivial ring.
    pub fn zmod(n: usize) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(
            FiniteKind::Ring,
            names,
            |a, b| a * b % n,
            Some(|a: usize, b: usize| (a + b) % n),
            0,
            1 % n,
        )
        .expect("ℤ/n is a ring")
    }

    /// The multiplicative monoid of `ℤ/n`.
    pub fn zmod_monoid(n: usize) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(FiniteKind::MonoidZero, names, |a, b| a * b % n, None::<fn(usize, usize) -> usize>, 0, 1 % n)
            .expect("ℤ/n is a monoid")
    }

    /// `𝔽₁[x]/(xᵏ = 0)`: elements `1, x, …, x^{k-1}, 0`.
    pub fn truncated_power(k: usize) -> Self {
        assert!(k >= 1, "truncation exponent must be positive");
        if k == 1 {
            return Self::trivial(FiniteKind::MonoidZero);
        }
        let mut names: Vec<String> = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        names.push("0".into());
        let zero = k;
        let mul = |a: usize, b: usize| if a == zero || b == zero || a + b >= k { zero } else { a + b };
        Self::from_fn(FiniteKind::MonoidZero, names, mul, None::<fn(usize, usize) -> usize>, zero, 0)
            .expect("truncated polynomial monoid")
    }

    /// A distributive lattice as an algebra with `+ = ∨` and `· = ∧`.
    pub fn lattice(l: &DistLattice) -> Self {
        Self::from_fn(
            FiniteKind::Lattice,
            l.names().to_vec(),
            |a, b| l.meet(a, b),
            Some(|a: usize, b: usize| l.join(a, b)),
            l.bottom(),
            l.top(),
        )
        .expect("distributive lattices are lattice algebras")
    }

    pub fn trivial(kind: FiniteKind) -> Self {
        let add = kind.has_addition().then_some(|_: usize, _: usize| 0);
        Self::from_fn(kind, vec!["0".into()], |_, _| 0, add, 0, 0).expect("trivial algebra")
    }

    /// Componentwise product of two algebras of the same kind.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::MixedParents);
        }
        let m = other.len();
        let names = (0..self.len() * m)
            .map(|i| format!("({},{})", self.names[i / m], other.names[i % m]))
            .collect();
        let add = self.kind.has_addition().then_some(|a: usize, b: usize| {
            self.add_raw(a / m, b / m) * m + other.add_raw(a % m, b % m)
        });
        Self::from_fn(
            self.kind,
            names,
            |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m),
            add,
            self.zero * m + other.zero,
            self.one * m + other.one,
        )
    }

    /// The same algebra with new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::axiom("carrier", "one name per element"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::axiom("carrier", format!("duplicate name {dup}")));
        }
        Ok(FiniteAlgebra { names, ..self.clone() })
    }

    pub fn kind(&self) -> FiniteKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.zero == self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        self.add.as_ref().expect("kind has addition")[a * self.len() + b]
    }

    /// Addition, when the kind has one.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.add.as_ref().map(|t| t[a * self.len() + b])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// The unique idempotent among the powers `fᵏ`, `k ≥ 1`.
    pub fn idempotent_power(&self, f: usize) -> usize {
        let mut p = f;
        for _ in 0..=2 * self.len() {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, f);
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }

    /// `R_f ≅ eR` where `e` is the idempotent power of `f`.
    pub fn localize(&self, f: usize) -> FiniteLocalization {
        self.localize_at_idempotent(self.idempotent_power(f))
    }

    pub fn localize_at_idempotent(&self, e: usize) -> FiniteLocalization {
        debug_assert!(self.is_idempotent(e));
        let mut carrier: Vec<usize> = (0..self.len()).map(|x| self.mul(e, x)).collect();
        carrier.sort_unstable();
        carrier.dedup();
        let pos = |x: usize| carrier.binary_search(&x).expect("eR is closed");
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        let add = self
            .kind
            .has_addition()
            .then_some(|a: usize, b: usize| pos(self.add_raw(carrier[a], carrier[b])));
        let algebra = FiniteAlgebra::from_fn(
            self.kind,
            names,
            |a, b| pos(self.mul(carrier[a], carrier[b])),
            add,
            pos(self.zero),
            pos(e),
        )
        .expect("eR inherits the axioms of R");
        let map = (0..self.len()).map(|x| pos(self.mul(e, x))).collect();
        FiniteLocalization {
            algebra,
            map,
            embedding: carrier,
            idempotent: e,
        }
    }

    /// True when `map` is a homomorphism of this kind into `dst`.
    pub fn is_hom(&self, dst: &FiniteAlgebra, map: &[usize]) -> bool {
        if map.len() != self.len() || map.iter().any(|&y| y >= dst.len()) {
            return false;
        }
        if map[self.one] != dst.one || map[self.zero] != dst.zero {
            return false;
        }
        (0..self.len()).all(|a| {
            (0..self.len()).all(|b| {
                map[self.mul(a, b)] == dst.mul(map[a], map[b])
                    && match (self.add(a, b), dst.add(map[a], map[b])) {
                        (Some(s), Some(t)) => map[s] == t,
                        (None, None) => true,
                        _ => false,
                    }
            })
        })
    }

    /// All homomorphisms into `dst`, up to `limit` of them.
    pub fn homs(&self, dst: &FiniteAlgebra, limit: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.hom_search(dst, false, &mut |m| {
            if out.len() >= limit {
                return Err(Error::guard("homomorphisms", out.len() + 1, limit));
            }
            out.push(m.to_vec());
            Ok(true)
        })?;
        Ok(out)
    }

    /// Invariants preserved by isomorphisms, used to prune the search.
    fn signature(&self, x: usize) -> (bool, usize, usize, usize) {
        let n = self.len();
        (
            self.mul(x, x) == x,
            (0..n).filter(|&b| self.mul(x, b) == self.zero).count(),
            (0..n).filter(|&b| self.mul(x, b) == x).count(),
            (0..n).filter(|&b| self.add(x, b) == Some(x)).count(),
        )
    }

    /// Backtracking over maps fixing 0 and 1. Each new assignment is checked
    /// against every law it completes; `visit` returns `false` to stop.
    fn hom_search(
        &self,
        dst: &FiniteAlgebra,
        bijective: bool,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<()> {
        if self.kind != dst.kind {
            return Err(Error::MixedParents);
        }
        let n = self.len();
        if bijective && n != dst.len() {
            return Ok(());
        }
        let mut map = vec![usize::MAX; n];
        map[self.zero] = dst.zero;
        if map[self.one] != usize::MAX && map[self.one] != dst.one {
            return Ok(());
        }
        map[self.one] = dst.one;
        let mut used = vec![false; dst.len()];
        used[dst.zero] = true;
        used[dst.one] = true;
        // pairs (a, b) whose product or sum is x
        let mut results: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                results[self.mul(a, b)].push((a, b));
                if let Some(c) = self.add(a, b) {
                    results[c].push((a, b));
                }
            }
        }
        let sig_src: Vec<_> = (0..n).map(|x| self.signature(x)).collect();
        let sig_dst: Vec<_> = (0..dst.len()).map(|y| dst.signature(y)).collect();
        let order: Vec<usize> = (0..n).filter(|&x| x != self.zero && x != self.one).collect();
        let ok = |map: &[usize], x: usize| -> bool {
            let fits = |a: usize, b: usize| {
                let (ia, ib) = (map[a], map[b]);
                if ia == usize::MAX || ib == usize::MAX {
                    return true;
                }
                let p = map[self.mul(a, b)];
                if p != usize::MAX && p != dst.mul(ia, ib) {
                    return false;
                }
                match (self.add(a, b), dst.add(ia, ib)) {
                    (Some(s), Some(t)) => map[s] == usize::MAX || map[s] == t,
                    _ => true,
                }
            };
            (0..n).all(|a| fits(a, x) && fits(x, a)) && results[x].iter().all(|&(a, b)| fits(a, b))
        };
        if !ok(&map, self.zero) || !ok(&map, self.one) {
            return Ok(());
        }
        #[allow(clippy::too_many_arguments)]
        fn go(
            depth: usize,
            order: &[usize],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            bijective: bool,
            cand: &dyn Fn(usize, usize) -> bool,
            ok: &dyn Fn(&[usize], usize) -> bool,
            visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
        ) -> Result<bool> {
            let Some(&x) = order.get(depth) else {
                return visit(map);
            };
            for y in 0..used.len() {
                if bijective && (used[y] || !cand(x, y)) {
                    continue;
                }
                map[x] = y;
                if ok(map, x) {
                    let was = std::mem::replace(&mut used[y], true);
                    let more = go(depth + 1, order, map, used, bijective, cand, ok, visit)?;
                    used[y] = was;
                    if !more {
                        map[x] = usize::MAX;
                        return Ok(false);
                    }
                }
            }
            map[x] = usize::MAX;
            Ok(true)
        }
        let cand = |x: usize, y: usize| sig_src[x] == sig_dst[y];
        go(0, &order, &mut map, &mut used, bijective, &cand, &ok, visit)?;
        Ok(())
    }

    /// An isomorphism onto `other`, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteAlgebra) -> Option<Vec<usize>> {
        let mut found = None;
        self.hom_search(other, true, &mut |m| {
            found = Some(m.to_vec());
            Ok(false)
        })
        .ok()?;
        found
    }

    /// Every isomorphism onto `other`.
    pub fn isomorphisms(&self, other: &FiniteAlgebra, limit: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.hom_search(other, true, &mut |m| {
            if out.len() >= limit {
                return Err(Error::guard("isomorphisms", out.len() + 1, limit));
            }
            out.push(m.to_vec());
            Ok(true)
        })?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_six_localizations() {
        let r = FiniteAlgebra::zmod(6);
        let l2 = r.localize(2);
        assert_eq!(l2.idempotent, 4);
        assert_eq!(l2.algebra.len(), 3);
        assert!(l2.algebra.find_isomorphism(&FiniteAlgebra::zmod(3)).is_some());
        let l3 = r.localize(3);
        assert!(l3.algebra.find_isomorphism(&FiniteAlgebra::zmod(2)).is_some());
        assert!(r.localize(0).algebra.is_trivial());
        assert_eq!(r.localize(5).algebra.len(), 6);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a·a = b, a·b = 0 would break associativity when b·a is set to a
        let names: Vec<String> = ["0", "1", "a", "b"].iter().map(|s| s.to_string()).collect();
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 0],
            vec![0, 3, 0, 2],
        ];
        let err = FiniteAlgebra::from_tables(FiniteKind::MonoidZero, names, &mul, None, 0, 1).unwrap_err();
        assert!(matches!(err, Error::Axiom { ref law, .. } if law.contains("associative")));
    }

    #[test]
    fn truncated_monoid_shape() {
        let r = FiniteAlgebra::truncated_power(3);
        assert_eq!(r.len(), 4);
        let x = r.index_of("x").unwrap();
        assert_eq!(r.mul(x, r.mul(x, x)), r.zero());
        assert!(r.localize(x).algebra.is_trivial());
    }

    #[test]
    fn lattice_localization_is_down_set() {
        let l = DistLattice::boolean(2);
        let a = FiniteAlgebra::lattice(&l);
        let loc = a.localize(1);
        assert_eq!(loc.algebra.len(), 2);
    }

    #[test]
    fn hom_search_matches_brute_force() {
        let algebras = [
            FiniteAlgebra::zmod(4),
            FiniteAlgebra::zmod(6),
            FiniteAlgebra::zmod_monoid(4),
            FiniteAlgebra::zmod_monoid(5),
            FiniteAlgebra::truncated_power(4),
            FiniteAlgebra::zmod_monoid(2).product(&FiniteAlgebra::zmod_monoid(3)).unwrap(),
            FiniteAlgebra::lattice(&DistLattice::boolean(2)),
            FiniteAlgebra::lattice(&DistLattice::chain(4)),
        ];
        for a in &algebras {
            for b in algebras.iter().filter(|b| b.kind() == a.kind()) {
                let n = a.len();
                let mut brute = Vec::new();
                for code in 0..b.len().pow(n as u32) {
                    let map: Vec<usize> = (0..n).map(|i| code / b.len().pow(i as u32) % b.len()).collect();
                    if map[a.zero()] == b.zero() && map[a.one()] == b.one() && a.is_hom(b, &map) {
                        brute.push(map);
                    }
                }
                let mut fast = a.homs(b, usize::MAX).unwrap();
                fast.sort();
                brute.sort();
                assert_eq!(fast, brute);
                let isos: Vec<_> = brute.iter().filter(|m| m.iter().collect::<std::collections::BTreeSet<_>>().len() == b.len() && n == b.len()).cloned().collect();
                let mut found = a.isomorphisms(b, usize::MAX).unwrap();
                found.sort();
                assert_eq!(found, isos);
                assert_eq!(a.find_isomorphism(b).is_some(), !isos.is_empty());
            }
        }
    }

    #[test]
    fn homs_from_z6_to_z3() {
        let homs = FiniteAlgebra::zmod(6).homs(&FiniteAlgebra::zmod(3), 100).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0], vec![0, 1, 2, 0, 1, 2]);
        assert!(FiniteAlgebra::zmod(6).homs(&FiniteAlgebra::zmod(4), 100).unwrap().is_empty());
    }

    #[test]
    fn product_of_rings() {
        let p = FiniteAlgebra::zmod(2).product(&FiniteAlgebra::zmod(3)).unwrap();
        assert!(p.find_isomorphism(&FiniteAlgebra::zmod(6)).is_some());
    }
}
