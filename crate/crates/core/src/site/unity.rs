use std::collections::BTreeSet;

use crate::algebra::{FiniteAlgebra, OperatorTerm, WAlgebra, WElem};
use crate::error::{Error, Result};

/// A term `ψ` and exponent `N` with `ψ(f₁ᴺ, …, fₙᴺ) = 1`, if the family is unital.
///
/// On additive backends `ψ` is the lexicographically least coefficient vector
/// (in carrier order) reaching 1. Without addition an ideal is a union of
/// principal ideals, so a witness exists only when some `fᵢ` is a unit and
/// is then `fᵢ⁻¹·(−)ᵢ`.
pub fn partition_of_unity(r: &WAlgebra, family: &[WElem]) -> Result<Option<(OperatorTerm, u32)>> {
    if let Some(x) = family.iter().find(|x| !r.contains(x)) {
        return Err(Error::UnknownElement(format!("{x:?}")));
    }
    let n = family.len();
    let bound = r.size().unwrap_or(1).max(1) as u32;
    for exp in 1..=bound {
        let powered: Vec<WElem> = family.iter().map(|f| power(r, f, exp)).collect();
        let found = match r {
            WAlgebra::Finite(a) if a.kind().has_addition() => {
                let fs: Vec<usize> = powered.iter().map(fin).collect();
                linear_witness(a, &fs).map(|c| OperatorTerm::Linear(c.into_iter().map(WElem::Fin).collect()))
            }
            _ => powered.iter().enumerate().find_map(|(i, f)| {
                r.inverse(f).map(|inv| OperatorTerm::Scaled {
                    arity: n,
                    index: i,
                    multiplier: (inv != r.one()).then_some(inv),
                })
            }),
        };
        if let Some(term) = found {
            return Ok(Some((term, exp)));
        }
    }
    Ok(None)
}

fn fin(x: &WElem) -> usize {
    match x {
        WElem::Fin(i) => *i,
        WElem::Mono(_) => unreachable!("finite backend"),
    }
}

fn power(r: &WAlgebra, f: &WElem, k: u32) -> WElem {
    (0..k).fold(r.one(), |acc, _| r.mul(&acc, f))
}

/// Least `(a₁, …, aₙ)` with `Σ aᵢfᵢ = 1`.
fn linear_witness(r: &FiniteAlgebra, fs: &[usize]) -> Option<Vec<usize>> {
    let n = fs.len();
    let add = |a: usize, b: usize| r.add(a, b).expect("additive backend");
    // suffix[i]: sums reachable with coefficients on positions i..n
    let mut suffix = vec![BTreeSet::from([r.zero()]); n + 1];
    for i in (0..n).rev() {
        let next = suffix[i + 1].clone();
        suffix[i] = (0..r.len())
            .flat_map(|a| next.iter().map(move |&s| (a, s)))
            .map(|(a, s)| add(r.mul(a, fs[i]), s))
            .collect();
    }
    if !suffix[0].contains(&r.one()) {
        return None;
    }
    let mut targets = BTreeSet::from([r.one()]);
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let (a, rest) = (0..r.len()).find_map(|a| {
            let rest: BTreeSet<usize> = suffix[i + 1]
                .iter()
                .copied()
                .filter(|&s| targets.contains(&add(r.mul(a, fs[i]), s)))
                .collect();
            (!rest.is_empty()).then_some((a, rest))
        })?;
        coeffs.push(a);
        targets = rest;
    }
    Some(coeffs)
}

/// Evaluates `ψ(f₁ᴺ, …, fₙᴺ)` and compares with 1.
pub fn verify_partition(r: &WAlgebra, family: &[WElem], term: &OperatorTerm, exp: u32) -> Result<bool> {
    let args: Vec<WElem> = family.iter().map(|f| power(r, f, exp)).collect();
    Ok(term.evaluate(r, &args)? == r.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAlgebra;
    use crate::lattice::DistLattice;

    #[test]
    fn z6_witness_evaluates_to_one() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let fam = [WElem::Fin(2), WElem::Fin(3)];
        let (psi, n) = partition_of_unity(&r, &fam).unwrap().unwrap();
        assert_eq!(n, 1);
        assert_eq!(psi, OperatorTerm::Linear(vec![WElem::Fin(2), WElem::Fin(1)]));
        assert!(verify_partition(&r, &fam, &psi, n).unwrap());
        let textbook = OperatorTerm::Linear(vec![WElem::Fin(2), WElem::Fin(3)]);
        assert!(verify_partition(&r, &fam, &textbook, 1).unwrap());
    }

    #[test]
    fn unit_member_gives_inverse() {
        let r = WAlgebra::from(FiniteAlgebra::zmod_monoid(7));
        let (psi, _) = partition_of_unity(&r, &[WElem::Fin(0), WElem::Fin(3)]).unwrap().unwrap();
        assert_eq!(
            psi,
            OperatorTerm::Scaled {
                arity: 2,
                index: 1,
                multiplier: Some(WElem::Fin(5)),
            }
        );
    }

    #[test]
    fn free_monoid_has_none() {
        let r = WAlgebra::from(MonomialAlgebra::polynomial(2));
        let fam = [r.parse("x1").unwrap(), r.parse("x2").unwrap()];
        assert!(partition_of_unity(&r, &fam).unwrap().is_none());
    }

    #[test]
    fn lattice_join_of_complements() {
        let r = WAlgebra::from(FiniteAlgebra::lattice(&DistLattice::boolean(2)));
        let f = r.as_finite().unwrap();
        let (a, b) = (1, 2);
        assert_eq!(f.add(a, b), Some(f.one()));
        let fam = [WElem::Fin(a), WElem::Fin(b)];
        let (psi, n) = partition_of_unity(&r, &fam).unwrap().unwrap();
        assert!(verify_partition(&r, &fam, &psi, n).unwrap());
        assert!(partition_of_unity(&r, &[WElem::Fin(a)]).unwrap().is_none());
    }
}
