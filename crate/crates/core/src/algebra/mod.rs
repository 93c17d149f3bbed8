//! Commutative monoid objects in three algebraic types.
//!
//! [`WAlgebra`] wraps the two concrete representations: finite operation
//! tables ([`FiniteAlgebra`], covering monoids with zero, rings and lattices)
//! and symbolic exponent-vector monoids ([`MonomialAlgebra`]).

mod congruence;
mod finite;
mod ideal;
mod module;
mod monomial;
mod operator;

pub use congruence::Congruence;
pub use finite::{FiniteAlgebra, FiniteKind, FiniteLocalization};
pub use ideal::Ideal;
pub use module::RModule;
pub use monomial::{Mono, MonomialAlgebra, Relation};
pub use operator::{extend_operator_to_localization, OperatorTerm};

pub(crate) use monomial::UnionFind;

use crate::error::{Error, Result};

/// A commutative monoid object with absorbing 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WAlgebra {
    Finite(FiniteAlgebra),
    Monomial(MonomialAlgebra),
}

/// An element of some [`WAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WElem {
    Fin(usize),
    Mono(Mono),
}

/// A homomorphism between two algebras of the same backend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgHom {
    /// Finite backends: `table[x]` is the image of `x`.
    Table(Vec<usize>),
    /// Monomial backend: exponent substitution `e ↦ M·e`, one row per target coordinate.
    Matrix(Vec<Vec<i32>>),
}

impl From<FiniteAlgebra> for WAlgebra {
    fn from(a: FiniteAlgebra) -> Self {
        WAlgebra::Finite(a)
    }
}

impl From<MonomialAlgebra> for WAlgebra {
    fn from(a: MonomialAlgebra) -> Self {
        WAlgebra::Monomial(a)
    }
}

impl WAlgebra {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            WAlgebra::Finite(f) => f.kind().tag(),
            WAlgebra::Monomial(_) => "monomial",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteAlgebra> {
        match self {
            WAlgebra::Finite(f) => Some(f),
            WAlgebra::Monomial(_) => None,
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialAlgebra> {
        match self {
            WAlgebra::Monomial(m) => Some(m),
            WAlgebra::Finite(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, WAlgebra::Finite(_))
    }

    /// True for monoid-like backends, where the only linear combinations are multiples.
    pub fn is_monoid_like(&self) -> bool {
        match self {
            WAlgebra::Finite(f) => f.kind() == FiniteKind::MonoidZero,
            WAlgebra::Monomial(_) => true,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            WAlgebra::Finite(f) => f.is_trivial(),
            WAlgebra::Monomial(m) => m.is_trivial(),
        }
    }

    /// Number of elements, for finite backends.
    pub fn size(&self) -> Option<usize> {
        self.as_finite().map(|f| f.len())
    }

    pub fn one(&self) -> WElem {
        match self {
            WAlgebra::Finite(f) => WElem::Fin(f.one()),
            WAlgebra::Monomial(m) => WElem::Mono(m.one()),
        }
    }

    pub fn zero(&self) -> WElem {
        match self {
            WAlgebra::Finite(f) => WElem::Fin(f.zero()),
            WAlgebra::Monomial(_) => WElem::Mono(Mono::Zero),
        }
    }

    pub fn contains(&self, x: &WElem) -> bool {
        match (self, x) {
            (WAlgebra::Finite(f), WElem::Fin(i)) => *i < f.len(),
            (WAlgebra::Monomial(m), WElem::Mono(e)) => m.contains(e),
            _ => false,
        }
    }

    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        match (self, a, b) {
            (WAlgebra::Finite(f), WElem::Fin(x), WElem::Fin(y)) => WElem::Fin(f.mul(*x, *y)),
            (WAlgebra::Monomial(m), WElem::Mono(x), WElem::Mono(y)) => WElem::Mono(m.mul(x, y)),
            _ => panic!("element from a different backend"),
        }
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a WElem>) -> WElem {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn is_unit(&self, a: &WElem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: &WElem) -> Option<WElem> {
        match (self, a) {
            (WAlgebra::Finite(f), WElem::Fin(x)) => f.inverse(*x).map(WElem::Fin),
            (WAlgebra::Monomial(m), WElem::Mono(x)) => m.inverse(x).map(WElem::Mono),
            _ => None,
        }
    }

    pub fn name(&self, a: &WElem) -> String {
        match (self, a) {
            (WAlgebra::Finite(f), WElem::Fin(x)) => f.name(*x).to_string(),
            (WAlgebra::Monomial(m), WElem::Mono(x)) => m.format(x),
            _ => "?".to_string(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<WElem> {
        match self {
            WAlgebra::Finite(f) => f
                .index_of(text.trim())
                .map(WElem::Fin)
                .ok_or_else(|| Error::UnknownElement(text.trim().to_string())),
            WAlgebra::Monomial(m) => m.parse(text).map(WElem::Mono),
        }
    }

    /// All elements of a finite algebra.
    pub fn elements(&self) -> Option<Vec<WElem>> {
        self.as_finite().map(|f| (0..f.len()).map(WElem::Fin).collect())
    }

    /// The generator pool: the whole carrier, or monomials up to `degree`.
    pub fn pool(&self, degree: u32) -> Vec<WElem> {
        match self {
            WAlgebra::Finite(f) => (0..f.len()).map(WElem::Fin).collect(),
            WAlgebra::Monomial(m) => m.pool(degree).into_iter().map(WElem::Mono).collect(),
        }
    }

    /// `R → R_f` with its canonical map.
    pub fn localize(&self, f: &WElem) -> (WAlgebra, AlgHom) {
        match (self, f) {
            (WAlgebra::Finite(a), WElem::Fin(x)) => {
                let loc = a.localize(*x);
                (WAlgebra::Finite(loc.algebra), AlgHom::Table(loc.map))
            }
            (WAlgebra::Monomial(a), WElem::Mono(x)) => {
                let target = a.localize(x);
                (WAlgebra::Monomial(target), AlgHom::identity_matrix(a.rank()))
            }
            _ => panic!("element from a different backend"),
        }
    }

    /// Localizes at the product of a family (the composite `R → R_{f₁⋯fₙ}`).
    pub fn localize_all(&self, fs: &[WElem]) -> (WAlgebra, AlgHom) {
        self.localize(&self.product(fs))
    }

    pub fn identity_hom(&self) -> AlgHom {
        match self {
            WAlgebra::Finite(f) => AlgHom::Table((0..f.len()).collect()),
            WAlgebra::Monomial(m) => AlgHom::identity_matrix(m.rank()),
        }
    }

    /// Checks that `h` is a homomorphism from `self` into `target`.
    ///
    /// Monomial matrices are checked on the cone: every basis vector must map
    /// into the target and units must map to units.
    pub fn is_hom(&self, target: &WAlgebra, h: &AlgHom) -> bool {
        match (self, target, h) {
            (WAlgebra::Finite(a), WAlgebra::Finite(b), AlgHom::Table(t)) => a.is_hom(b, t),
            (WAlgebra::Monomial(a), WAlgebra::Monomial(b), AlgHom::Matrix(rows)) => {
                if b.is_trivial() {
                    return true;
                }
                if a.is_trivial() || rows.len() != b.rank() || rows.iter().any(|r| r.len() != a.rank()) {
                    return false;
                }
                (0..a.rank()).all(|i| {
                    let img = h.apply_mono(b, &a.var(i));
                    b.contains(&img) && (!a.inverted()[i] || b.is_unit(&img))
                })
            }
            _ => false,
        }
    }
}

impl AlgHom {
    pub fn identity_matrix(k: usize) -> AlgHom {
        AlgHom::Matrix((0..k).map(|i| (0..k).map(|j| i32::from(i == j)).collect()).collect())
    }

    pub fn apply(&self, target: &WAlgebra, x: &WElem) -> WElem {
        match (self, x) {
            (AlgHom::Table(t), WElem::Fin(i)) => WElem::Fin(t[*i]),
            (AlgHom::Matrix(_), WElem::Mono(m)) => {
                let tm = target.as_monomial().expect("matrix homs land in monomial algebras");
                WElem::Mono(self.apply_mono(tm, m))
            }
            _ => panic!("homomorphism applied to an element of another backend"),
        }
    }

    fn apply_mono(&self, target: &MonomialAlgebra, m: &Mono) -> Mono {
        let AlgHom::Matrix(rows) = self else {
            panic!("table hom applied to a monomial")
        };
        match m {
            Mono::Zero => Mono::Zero,
            Mono::Exp(e) => target.normalize(Mono::Exp(
                rows.iter()
                    .map(|r| r.iter().zip(e).map(|(a, b)| a * b).sum())
                    .collect(),
            )),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgHom) -> AlgHom {
        match (self, other) {
            (AlgHom::Table(f), AlgHom::Table(g)) => AlgHom::Table(f.iter().map(|&x| g[x]).collect()),
            (AlgHom::Matrix(f), AlgHom::Matrix(g)) => {
                let inner = f.first().map_or(0, |r| r.len());
                let rows = g
                    .iter()
                    .map(|gr| {
                        (0..inner)
                            .map(|j| gr.iter().zip(f).map(|(a, fr)| a * fr[j]).sum())
                            .collect()
                    })
                    .collect();
                AlgHom::Matrix(rows)
            }
            _ => panic!("cannot compose homs of different backends"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localize_monomial_at_x() {
        let r = WAlgebra::from(MonomialAlgebra::polynomial(1));
        let x = r.parse("x").unwrap();
        let (rx, h) = r.localize(&x);
        assert!(rx.is_unit(&h.apply(&rx, &x)));
        assert!(r.is_hom(&rx, &h));
        assert_eq!(rx.name(&rx.parse("x^-2").unwrap()), "x^-2");
    }

    #[test]
    fn localize_finite_at_zero_is_trivial() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let (r0, h) = r.localize(&r.zero());
        assert!(r0.is_trivial());
        assert!(r.is_hom(&r0, &h));
    }

    #[test]
    fn composition_of_matrices() {
        let a = AlgHom::Matrix(vec![vec![-1]]);
        assert_eq!(a.then(&a), AlgHom::identity_matrix(1));
    }
}
