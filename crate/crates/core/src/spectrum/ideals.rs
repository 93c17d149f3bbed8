use std::collections::HashMap;

use crate::algebra::{Mono, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::{DistLattice, IdempotentSemiring};
use crate::Limits;

/// Free coordinates beyond which radical monomial ideals are not enumerated.
const MAX_FREE_VARS: usize = 4;

/// The semiring `I(R)` of finitely generated ideals under sum and product.
///
/// Finite backends carry every ideal. Monomial backends carry radical
/// representatives only: up-sets of squarefree supports over the
/// non-inverted variables, with product read as intersection (the radical
/// of `IJ` is `√I ∩ √J`).
#[derive(Clone, Debug)]
pub struct IdealSemiring {
    parent: WAlgebra,
    carrier: Carrier,
    generators: Vec<Vec<WElem>>,
    semiring: IdempotentSemiring,
}

#[derive(Clone, Debug)]
enum Carrier {
    Finite {
        members: Vec<Vec<bool>>,
        index: HashMap<Vec<bool>, usize>,
    },
    Monomial {
        /// Coordinates that are not inverted.
        free: Vec<usize>,
        /// Bit `s` is set when the squarefree monomial on subset `s` of `free` is a member.
        sets: Vec<u64>,
    },
    Trivial,
}

impl IdealSemiring {
    pub fn parent(&self) -> &WAlgebra {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn semiring(&self) -> &IdempotentSemiring {
        &self.semiring
    }

    pub fn name(&self, i: usize) -> &str {
        self.semiring.name(i)
    }

    /// Canonical generators of ideal `i`.
    pub fn generators(&self, i: usize) -> &[WElem] {
        &self.generators[i]
    }

    pub fn zero(&self) -> usize {
        self.semiring.zero()
    }

    pub fn one(&self) -> usize {
        self.semiring.one()
    }

    /// Index of the ideal generated by `gens` (its radical on monomial backends).
    pub fn ideal_of(&self, gens: &[WElem]) -> Result<usize> {
        if let Some(g) = gens.iter().find(|g| !self.parent.contains(g)) {
            return Err(Error::UnknownElement(format!("{g:?}")));
        }
        match &self.carrier {
            Carrier::Trivial => Ok(0),
            Carrier::Finite { index, .. } => {
                let m = self.parent.ideal_members(gens).expect("finite backend");
                Ok(index[&m])
            }
            Carrier::Monomial { free, sets } => {
                let up = upset_of(&self.parent, free, gens);
                Ok(sets.iter().position(|&s| s == up).expect("every radical up-set is enumerated"))
            }
        }
    }

    /// Membership of `x` in ideal `i` (in its radical, on monomial backends).
    pub fn contains(&self, i: usize, x: &WElem) -> bool {
        match (&self.carrier, x) {
            (Carrier::Trivial, _) => true,
            (Carrier::Finite { members, .. }, WElem::Fin(k)) => members[i].get(*k).copied().unwrap_or(false),
            (Carrier::Monomial { free, sets }, WElem::Mono(_)) => {
                let up = upset_of(&self.parent, free, std::slice::from_ref(x));
                up & !sets[i] == 0
            }
            _ => false,
        }
    }
}

/// The up-set of squarefree supports generated by a family of monomials.
fn upset_of(r: &WAlgebra, free: &[usize], gens: &[WElem]) -> u64 {
    let m = r.as_monomial().expect("monomial backend");
    let subsets = 1usize << free.len();
    let mut out = 0u64;
    for g in gens {
        let WElem::Mono(mono @ Mono::Exp(_)) = g else { continue };
        let supp = m.radical_support(mono);
        let mask = free.iter().enumerate().filter(|(_, &c)| supp[c]).fold(0usize, |acc, (b, _)| acc | 1 << b);
        for s in 0..subsets {
            if s & mask == mask {
                out |= 1 << s;
            }
        }
    }
    out
}

/// Builds `I(R)` and validates the semiring axioms.
pub fn ideal_semiring(r: &WAlgebra, limits: &Limits) -> Result<IdealSemiring> {
    if r.is_trivial() {
        let semiring = IdempotentSemiring::from_fn(vec!["(0)".into()], |_, _| 0, |_, _| 0, 0, 0)?;
        return Ok(IdealSemiring {
            parent: r.clone(),
            carrier: Carrier::Trivial,
            generators: vec![Vec::new()],
            semiring,
        });
    }
    match r {
        WAlgebra::Finite(a) => finite_ideals(r, a.len(), limits),
        WAlgebra::Monomial(m) => {
            let free: Vec<usize> = (0..m.rank()).filter(|&i| !m.inverted()[i]).collect();
            if free.len() > MAX_FREE_VARS {
                return Err(Error::guard("free variables for radical ideals", free.len(), MAX_FREE_VARS));
            }
            monomial_ideals(r, free, limits)
        }
    }
}

fn finite_ideals(r: &WAlgebra, n: usize, limits: &Limits) -> Result<IdealSemiring> {
    let mut members: Vec<Vec<bool>> = Vec::new();
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut push = |m: Vec<bool>, members: &mut Vec<Vec<bool>>| -> Result<bool> {
        if index.contains_key(&m) {
            return Ok(false);
        }
        if members.len() >= limits.ideals {
            return Err(Error::guard("ideals", members.len() + 1, limits.ideals));
        }
        index.insert(m.clone(), members.len());
        members.push(m);
        Ok(true)
    };
    for x in 0..n {
        push(r.ideal_members(&[WElem::Fin(x)]).expect("finite"), &mut members)?;
    }
    let mut done = 0;
    while done < members.len() {
        let k = done;
        for j in 0..=k {
            let gens = as_gens(&members[k]).into_iter().chain(as_gens(&members[j])).collect::<Vec<_>>();
            push(r.ideal_members(&gens).expect("finite"), &mut members)?;
        }
        done += 1;
    }
    members.sort_by_key(|m| (m.iter().filter(|&&b| b).count(), m.iter().map(|&b| !b).collect::<Vec<_>>()));
    let index: HashMap<Vec<bool>, usize> = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let gens: Vec<Vec<WElem>> = members.iter().map(|m| r.canonical_generators(&as_gens(m))).collect();
    let names = gens.iter().map(|g| r.ideal_name(g)).collect();
    let at = |m: Vec<bool>| index[&m];
    let semiring = IdempotentSemiring::from_fn(
        names,
        |a, b| at(r.ideal_members(&[gens[a].clone(), gens[b].clone()].concat()).expect("finite")),
        |a, b| {
            let prods: Vec<WElem> = gens[a].iter().flat_map(|x| gens[b].iter().map(move |y| r.mul(x, y))).collect();
            at(r.ideal_members(&prods).expect("finite"))
        },
        at(r.ideal_members(&[]).expect("finite")),
        at(r.ideal_members(&[r.one()]).expect("finite")),
    )?;
    Ok(IdealSemiring {
        parent: r.clone(),
        carrier: Carrier::Finite { members, index },
        generators: gens,
        semiring,
    })
}

fn as_gens(members: &[bool]) -> Vec<WElem> {
    (0..members.len()).filter(|&x| members[x]).map(WElem::Fin).collect()
}

fn monomial_ideals(r: &WAlgebra, free: Vec<usize>, limits: &Limits) -> Result<IdealSemiring> {
    let m = r.as_monomial().expect("monomial backend");
    let subsets = 1usize << free.len();
    let mut sets: Vec<u64> = (0..1u64 << subsets)
        .filter(|&up| {
            (0..subsets).all(|s| up >> s & 1 == 0 || (0..subsets).all(|t| t & s != s || up >> t & 1 == 1))
        })
        .collect();
    if sets.len() > limits.ideals {
        return Err(Error::guard("ideals", sets.len(), limits.ideals));
    }
    sets.sort_by_key(|&s| (s.count_ones(), s));
    let gens: Vec<Vec<WElem>> = sets
        .iter()
        .map(|&up| {
            (0..subsets)
                .filter(|&s| up >> s & 1 == 1 && !(0..subsets).any(|t| t != s && t & s == t && up >> t & 1 == 1))
                .map(|s| {
                    let mut e = vec![0; m.rank()];
                    for (b, &c) in free.iter().enumerate() {
                        if s >> b & 1 == 1 {
                            e[c] = 1;
                        }
                    }
                    WElem::Mono(Mono::Exp(e))
                })
                .collect()
        })
        .collect();
    let names = gens.iter().map(|g| r.ideal_name(g)).collect();
    let at = |up: u64| sets.iter().position(|&s| s == up).expect("closed under ∪ and ∩");
    let semiring = IdempotentSemiring::from_fn(
        names,
        |a, b| at(sets[a] | sets[b]),
        |a, b| at(sets[a] & sets[b]),
        at(0),
        at(sets[sets.len() - 1]),
    )?;
    Ok(IdealSemiring {
        parent: r.clone(),
        carrier: Carrier::Monomial { free, sets },
        generators: gens,
        semiring,
    })
}

/// `rad(I(R))` with the quotient map `ε`.
#[derive(Clone, Debug)]
pub struct RadicalLattice {
    pub ideals: IdealSemiring,
    pub lattice: DistLattice,
    /// `epsilon[i]` is the class of ideal `i`.
    pub epsilon: Vec<usize>,
}

impl RadicalLattice {
    /// Class of the ideal generated by `gens`.
    pub fn class_of(&self, gens: &[WElem]) -> Result<usize> {
        Ok(self.epsilon[self.ideals.ideal_of(gens)?])
    }

    /// `x` lies in the nilradical: `(x)` and `(0)` share a class.
    pub fn is_nilpotent(&self, x: &WElem) -> Result<bool> {
        Ok(self.class_of(std::slice::from_ref(x))? == self.lattice.bottom())
    }
}

pub fn radical_lattice(r: &WAlgebra, limits: &Limits) -> Result<RadicalLattice> {
    let ideals = ideal_semiring(r, limits)?;
    let q = ideals.semiring().rad()?;
    Ok(RadicalLattice {
        ideals,
        lattice: q.lattice,
        epsilon: q.map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};
    use crate::lattice::find_isomorphism;

    fn names(s: &IdealSemiring) -> Vec<String> {
        (0..s.len()).map(|i| s.name(i).to_string()).collect()
    }

    #[test]
    fn z4_ideals_and_radical() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(4));
        let rl = radical_lattice(&r, &Limits::default()).unwrap();
        assert_eq!(names(&rl.ideals), ["(0)", "(2)", "(1)"]);
        assert_eq!(rl.lattice.len(), 2);
        assert!(rl.is_nilpotent(&WElem::Fin(2)).unwrap());
        assert!(!rl.is_nilpotent(&WElem::Fin(3)).unwrap());
    }

    #[test]
    fn z6_radical_is_diamond() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let rl = radical_lattice(&r, &Limits::default()).unwrap();
        assert_eq!(rl.ideals.len(), 4);
        assert!(find_isomorphism(&rl.lattice, &DistLattice::boolean(2)).is_some());
        let mut n: Vec<String> = rl.lattice.names().to_vec();
        n.sort();
        assert_eq!(n, ["(0)", "(1)", "(2)", "(3)"]);
    }

    #[test]
    fn trivial_has_one_ideal() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(1));
        assert_eq!(ideal_semiring(&r, &Limits::default()).unwrap().len(), 1);
    }

    #[test]
    fn monomial_counts_are_dedekind_numbers() {
        for (k, want) in [(1, 3), (2, 6), (3, 20)] {
            let r = WAlgebra::from(MonomialAlgebra::polynomial(k));
            assert_eq!(ideal_semiring(&r, &Limits::default()).unwrap().len(), want, "k = {k}");
        }
        let r = WAlgebra::from(MonomialAlgebra::with_vars(&["x", "y"], &[]).unwrap());
        let s = ideal_semiring(&r, &Limits::default()).unwrap();
        assert_eq!(names(&s), ["(0)", "(x*y)", "(x)", "(y)", "(x,y)", "(1)"]);
    }

    #[test]
    fn monomial_membership_and_lookup() {
        let r = WAlgebra::from(MonomialAlgebra::with_vars(&["x", "y"], &["y"]).unwrap());
        let s = ideal_semiring(&r, &Limits::default()).unwrap();
        assert_eq!(s.len(), 3);
        let i = s.ideal_of(&[r.parse("x^2*y").unwrap()]).unwrap();
        assert_eq!(s.name(i), "(x)");
        assert!(s.contains(i, &r.parse("x").unwrap()));
        assert_eq!(s.ideal_of(&[r.parse("y").unwrap()]).unwrap(), s.one());
    }

    #[test]
    fn monoid_ideals_are_unions() {
        let r = WAlgebra::from(FiniteAlgebra::zmod_monoid(6));
        let s = ideal_semiring(&r, &Limits::default()).unwrap();
        let i = s.ideal_of(&[WElem::Fin(2), WElem::Fin(3)]).unwrap();
        assert_eq!(s.name(i), "(2,3)");
        assert_ne!(i, s.one());
    }
}
