use super::{is_cover, TopologyTag};
use crate::algebra::{AlgHom, WAlgebra, WElem};
use crate::error::Result;
use crate::spectrum::{omega1, spec0};
use crate::Limits;

/// Nontrivial with exactly one closed point in its spectrum.
pub fn is_local_object(a: &WAlgebra, tag: TopologyTag, limits: &Limits) -> Result<bool> {
    if a.is_trivial() {
        return Ok(false);
    }
    Ok(spec0(a, tag, limits)?.space.closed_points().len() == 1)
}

/// For `h: A → B`: a class of `A` whose pullback to `B` is the top class is itself the top class.
///
/// Each open class of `A` is tested through its representative family, so
/// the check is exact over the whole class lattice.
pub fn is_local_morphism(a: &WAlgebra, b: &WAlgebra, h: &AlgHom, tag: TopologyTag, limits: &Limits) -> Result<bool> {
    let classes = omega1(a, tag, limits)?;
    for i in 0..classes.len() {
        let fam = classes.representative(i);
        let pushed: Vec<WElem> = fam.iter().map(|x| h.apply(b, x)).collect();
        if is_cover(b, &pushed, tag, limits)? && !is_cover(a, fam, tag, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;

    #[test]
    fn z4_local_z6_not() {
        let l = Limits::default();
        assert!(is_local_object(&FiniteAlgebra::zmod(4).into(), TopologyTag::Zar, &l).unwrap());
        assert!(!is_local_object(&FiniteAlgebra::zmod(6).into(), TopologyTag::Zar, &l).unwrap());
        assert!(!is_local_object(&FiniteAlgebra::zmod(1).into(), TopologyTag::Zar, &l).unwrap());
    }

    #[test]
    fn identity_and_projection() {
        let l = Limits::default();
        let z6 = WAlgebra::from(FiniteAlgebra::zmod(6));
        assert!(is_local_morphism(&z6, &z6, &z6.identity_hom(), TopologyTag::Zar, &l).unwrap());
        // ℤ/6 → ℤ/3 sends 2 to a unit although 2 is not one
        let z3 = WAlgebra::from(FiniteAlgebra::zmod(3));
        let h = AlgHom::Table(vec![0, 1, 2, 0, 1, 2]);
        assert!(!is_local_morphism(&z6, &z3, &h, TopologyTag::Zar, &l).unwrap());
        // ℤ/4 → ℤ/2 is local
        let z4 = WAlgebra::from(FiniteAlgebra::zmod(4));
        let z2 = WAlgebra::from(FiniteAlgebra::zmod(2));
        assert!(is_local_morphism(&z4, &z2, &AlgHom::Table(vec![0, 1, 0, 1]), TopologyTag::Zar, &l).unwrap());
    }
}
