use std::sync::Arc;

use super::{FiniteKind, Mono, WAlgebra, WElem};
use crate::error::{Error, Result};

/// A finitely generated ideal of a [`WAlgebra`].
#[derive(Clone, Debug)]
pub struct Ideal {
    parent: Arc<WAlgebra>,
    generators: Vec<WElem>,
}

impl Ideal {
    pub fn new(parent: Arc<WAlgebra>, generators: Vec<WElem>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| !parent.contains(g)) {
            return Err(Error::UnknownElement(format!("{g:?}")));
        }
        Ok(Ideal { parent, generators })
    }

    pub fn parent(&self) -> &Arc<WAlgebra> {
        &self.parent
    }

    pub fn generators(&self) -> &[WElem] {
        &self.generators
    }

    fn check_parent(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::MixedParents)
        }
    }

    /// Generated by the concatenated generator lists.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_parent(other)?;
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ok(Ideal {
            parent: self.parent.clone(),
            generators: g,
        })
    }

    /// Generated by the pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_parent(other)?;
        let g = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| self.parent.mul(a, b)))
            .collect();
        Ok(Ideal {
            parent: self.parent.clone(),
            generators: g,
        })
    }

    pub fn contains(&self, x: &WElem) -> bool {
        self.parent.ideal_contains(&self.generators, x)
    }

    pub fn is_unit(&self) -> bool {
        self.parent.generates_unit(&self.generators)
    }

    /// Same set of elements.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        self.check_parent(other)?;
        Ok(self.generators.iter().all(|g| other.contains(g)) && other.generators.iter().all(|g| self.contains(g)))
    }

    /// The ideal with redundant generators removed.
    pub fn canonical(&self) -> Ideal {
        Ideal {
            parent: self.parent.clone(),
            generators: self.parent.canonical_generators(&self.generators),
        }
    }

    pub fn name(&self) -> String {
        self.parent.ideal_name(&self.generators)
    }
}

impl WAlgebra {
    /// Membership vector of the ideal generated by `gens` (finite backends).
    ///
    /// Monoids: the union of the principal ideals `R·fᵢ` and `{0}`.
    /// Rings and lattices: its closure under addition.
    pub fn ideal_members(&self, gens: &[WElem]) -> Option<Vec<bool>> {
        let f = self.as_finite()?;
        let n = f.len();
        let mut members = vec![false; n];
        members[f.zero()] = true;
        for g in gens {
            let WElem::Fin(g) = g else { return None };
            for r in 0..n {
                members[f.mul(r, *g)] = true;
            }
        }
        if f.kind() != FiniteKind::MonoidZero {
            loop {
                let current: Vec<usize> = (0..n).filter(|&x| members[x]).collect();
                let mut grew = false;
                for &a in &current {
                    for &b in &current {
                        let s = f.add(a, b).expect("kind has addition");
                        if !members[s] {
                            members[s] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        Some(members)
    }

    pub fn ideal_contains(&self, gens: &[WElem], x: &WElem) -> bool {
        match (self, x) {
            (WAlgebra::Finite(_), WElem::Fin(i)) => self.ideal_members(gens).is_some_and(|m| m[*i]),
            (WAlgebra::Monomial(m), WElem::Mono(y)) => {
                m.is_trivial()
                    || *y == Mono::Zero
                    || gens.iter().any(|g| matches!(g, WElem::Mono(gm) if m.divides(gm, y)))
            }
            _ => false,
        }
    }

    /// True when `(gens) = (1)`.
    pub fn generates_unit(&self, gens: &[WElem]) -> bool {
        self.ideal_contains(gens, &self.one())
    }

    /// Minimal generators: a single generator when the ideal is principal.
    pub fn canonical_generators(&self, gens: &[WElem]) -> Vec<WElem> {
        match self {
            WAlgebra::Finite(f) => {
                let target = self.ideal_members(gens).expect("finite ideal");
                if let Some(x) = (0..f.len()).find(|&x| self.ideal_members(&[WElem::Fin(x)]).unwrap() == target) {
                    if x == f.zero() {
                        return Vec::new();
                    }
                    return vec![WElem::Fin(x)];
                }
                let mut chosen: Vec<WElem> = Vec::new();
                let mut current = self.ideal_members(&chosen).unwrap();
                for x in 0..f.len() {
                    if target[x] && !current[x] {
                        chosen.push(WElem::Fin(x));
                        current = self.ideal_members(&chosen).unwrap();
                    }
                }
                let mut i = chosen.len();
                while i > 0 {
                    i -= 1;
                    let mut fewer = chosen.clone();
                    fewer.remove(i);
                    if self.ideal_members(&fewer).unwrap() == target {
                        chosen = fewer;
                    }
                }
                chosen
            }
            WAlgebra::Monomial(m) => {
                if m.is_trivial() {
                    return Vec::new();
                }
                let mut cands: Vec<Vec<i32>> = gens
                    .iter()
                    .filter_map(|g| match g {
                        WElem::Mono(Mono::Exp(e)) => Some(
                            e.iter()
                                .zip(m.inverted())
                                .map(|(&x, &inv)| if inv { 0 } else { x })
                                .collect(),
                        ),
                        _ => None,
                    })
                    .collect();
                cands.sort_by_key(|e| (e.iter().sum::<i32>(), e.iter().rev().copied().collect::<Vec<_>>()));
                cands.dedup();
                let mut out: Vec<Vec<i32>> = Vec::new();
                for c in cands {
                    if !out.iter().any(|o| o.iter().zip(&c).all(|(p, q)| q >= p)) {
                        out.push(c);
                    }
                }
                out.into_iter().map(|e| WElem::Mono(Mono::Exp(e))).collect()
            }
        }
    }

    /// Display name `(g₁,…,gₙ)` over canonical generators; `(0)` for the zero ideal.
    pub fn ideal_name(&self, gens: &[WElem]) -> String {
        let canon = self.canonical_generators(gens);
        if canon.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = canon.iter().map(|g| self.name(g)).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};

    fn z(n: usize) -> Arc<WAlgebra> {
        Arc::new(FiniteAlgebra::zmod(n).into())
    }

    #[test]
    fn z6_two_plus_three_is_unit() {
        let r = z(6);
        let a = Ideal::new(r.clone(), vec![WElem::Fin(2)]).unwrap();
        let b = Ideal::new(r.clone(), vec![WElem::Fin(3)]).unwrap();
        assert!(a.sum(&b).unwrap().is_unit());
        assert!(!a.is_unit());
        assert_eq!(a.product(&b).unwrap().name(), "(0)");
        assert_eq!(Ideal::new(r, vec![WElem::Fin(4)]).unwrap().name(), "(2)");
    }

    #[test]
    fn unit_laws() {
        let r = z(12);
        let a = Ideal::new(r.clone(), vec![WElem::Fin(4), WElem::Fin(6)]).unwrap();
        let one = Ideal::new(r.clone(), vec![WElem::Fin(1)]).unwrap();
        let zero = Ideal::new(r, vec![]).unwrap();
        assert!(a.product(&one).unwrap().same_as(&a).unwrap());
        assert!(a.sum(&zero).unwrap().same_as(&a).unwrap());
        assert_eq!(a.name(), "(2)");
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = Ideal::new(z(6), vec![WElem::Fin(2)]).unwrap();
        let b = Ideal::new(z(4), vec![WElem::Fin(2)]).unwrap();
        assert_eq!(a.sum(&b).unwrap_err(), Error::MixedParents);
    }

    #[test]
    fn monomial_xy_not_unit() {
        let r: Arc<WAlgebra> = Arc::new(MonomialAlgebra::with_vars(&["x", "y"], &[]).unwrap().into());
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        let i = Ideal::new(r.clone(), vec![x.clone()]).unwrap().sum(&Ideal::new(r.clone(), vec![y]).unwrap()).unwrap();
        assert!(!i.is_unit());
        assert_eq!(i.name(), "(x,y)");
        assert!(i.contains(&r.parse("x^2*y").unwrap()));
        assert!(!i.contains(&r.one()));
        let redundant = Ideal::new(r.clone(), vec![x, r.parse("x^2").unwrap()]).unwrap();
        assert_eq!(redundant.name(), "(x)");
    }

    #[test]
    fn monoid_ideal_is_union_of_multiples() {
        let r: Arc<WAlgebra> = Arc::new(FiniteAlgebra::zmod_monoid(6).into());
        let i = Ideal::new(r.clone(), vec![WElem::Fin(2), WElem::Fin(3)]).unwrap();
        assert!(!i.is_unit());
        assert!(!i.contains(&WElem::Fin(1)));
        assert!(i.contains(&WElem::Fin(4)));
    }
}
