//! Named test sets of algebras.

use crate::algebra::{FiniteAlgebra, FiniteKind, MonomialAlgebra, WAlgebra};
use crate::lattice::all_distributive_lattices;

#[derive(Clone, Debug)]
pub struct Entry {
    pub label: String,
    pub algebra: WAlgebra,
}

fn entry(label: impl Into<String>, algebra: impl Into<WAlgebra>) -> Entry {
    Entry {
        label: label.into(),
        algebra: algebra.into(),
    }
}

/// `ℤ/n` for `1 ≤ n ≤ max`.
pub fn rings(max: usize) -> Vec<Entry> {
    (1..=max).map(|n| entry(format!("Z/{n}"), FiniteAlgebra::zmod(n))).collect()
}

fn monoid(names: &[&str], mul: impl Fn(usize, usize) -> usize, zero: usize, one: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(
        FiniteKind::MonoidZero,
        names.iter().map(|s| s.to_string()).collect(),
        mul,
        None::<fn(usize, usize) -> usize>,
        zero,
        one,
    )
    .expect("catalog monoid")
}

/// The cyclic group of order `k` with an absorbing zero adjoined.
pub fn group_with_zero(k: usize) -> FiniteAlgebra {
    let mut names: Vec<String> = (0..k).map(|i| if i == 0 { "1".into() } else { format!("g^{i}") }).collect();
    names.push("0".into());
    let mul = |a: usize, b: usize| if a == k || b == k { k } else { (a + b) % k };
    FiniteAlgebra::from_fn(FiniteKind::MonoidZero, names, mul, None::<fn(usize, usize) -> usize>, k, 0)
        .expect("group with zero")
}

/// `{0, 1, a, b, c}` with `a, b, c` idempotent and pairwise orthogonal.
pub fn orthogonal_idempotents() -> FiniteAlgebra {
    monoid(
        &["0", "1", "a", "b", "c"],
        |x, y| match (x, y) {
            (0, _) | (_, 0) => 0,
            (1, z) | (z, 1) => z,
            (p, q) if p == q => p,
            _ => 0,
        },
        0,
        1,
    )
}

/// `𝔽₁[x, y]/(x², xy, y²)`.
pub fn square_zero_plane() -> FiniteAlgebra {
    monoid(&["0", "1", "x", "y"], |a, b| match (a, b) {
        (1, z) | (z, 1) => z,
        _ => 0,
    }, 0, 1)
}

/// The curated monoid test set: every member has at most six elements.
pub fn monoids() -> Vec<Entry> {
    let mut out: Vec<Entry> = (1..=6).map(|n| entry(format!("Z/{n} (mult)"), FiniteAlgebra::zmod_monoid(n))).collect();
    out.extend((2..=5).map(|k| entry(format!("F1[x]/(x^{k})"), FiniteAlgebra::truncated_power(k))));
    out.extend((1..=5).map(|k| entry(format!("C{k} with 0"), group_with_zero(k))));
    let bit = FiniteAlgebra::zmod_monoid(2);
    out.push(entry("{0,1}^2", bit.product(&bit).expect("same kind")));
    out.push(entry("{0,1} x F1[x]/(x^2)", bit.product(&FiniteAlgebra::truncated_power(2)).expect("same kind")));
    out.push(entry("{0,1} x C2 with 0", bit.product(&group_with_zero(2)).expect("same kind")));
    out.push(entry("orthogonal idempotents", orthogonal_idempotents()));
    out.push(entry("F1[x,y]/(x^2,xy,y^2)", square_zero_plane()));
    out.push(entry(
        "chain 0<a<1 (meet)",
        monoid(&["0", "a", "1"], |x, y| x.min(y), 0, 2),
    ));
    out
}

/// `𝔽₁[x₁..x_k]` for `1 ≤ k ≤ max`.
pub fn monomials(max: usize) -> Vec<Entry> {
    (1..=max)
        .map(|k| entry(format!("F1[x1..x{k}]"), MonomialAlgebra::polynomial(k)))
        .collect()
}

/// Lattice algebras for every distributive lattice with at most `max` elements.
pub fn lattices(max: usize) -> Vec<Entry> {
    all_distributive_lattices(max)
        .into_iter()
        .enumerate()
        .map(|(i, l)| entry(format!("L{i} ({} elements)", l.len()), FiniteAlgebra::lattice(&l)))
        .collect()
}

/// Every finite entry: rings up to `max_ring`, the monoid set and lattices up to `max_lattice`.
pub fn finite(max_ring: usize, max_lattice: usize) -> Vec<Entry> {
    let mut out = rings(max_ring);
    out.extend(monoids());
    out.extend(lattices(max_lattice));
    out
}

/// A catalog by name, with an optional size bound after a colon:
/// `rings[:n]`, `monoids`, `monomials[:k]`, `lattices[:n]` or `finite[:n]`.
pub fn named(spec: &str) -> Option<Vec<Entry>> {
    let (name, bound) = match spec.split_once(':') {
        Some((n, b)) => (n, Some(b.parse::<usize>().ok()?)),
        None => (spec, None),
    };
    match name {
        "rings" => Some(rings(bound.unwrap_or(30))),
        "monoids" if bound.is_none() => Some(monoids()),
        "monomials" => Some(monomials(bound.unwrap_or(3))),
        "lattices" => Some(lattices(bound.unwrap_or(6))),
        "finite" => Some(finite(bound.unwrap_or(30), 6)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_sizes() {
        for e in monoids() {
            let n = e.algebra.size().unwrap();
            assert!(n <= 6, "{}", e.label);
            assert!(e.algebra.is_monoid_like(), "{}", e.label);
        }
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattices(6).len(), 1 + 1 + 1 + 2 + 3 + 5);
    }

    #[test]
    fn names() {
        assert_eq!(named("rings:4").unwrap().len(), 4);
        assert_eq!(named("monoids").unwrap().len(), monoids().len());
        assert!(named("rings:x").is_none());
        assert!(named("groups").is_none());
    }
}
