//! Ideal semirings, open-class lattices and point spectra.

mod ideals;
mod omega;

pub use ideals::{ideal_semiring, radical_lattice, IdealSemiring, RadicalLattice};
pub use omega::{comparison_map, omega1, OpenClassLattice};

use crate::algebra::{AlgHom, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::{comp, find_isomorphism, is_homomorphism, pt, CoherentSpace, DistLattice, LatticeIso};
use crate::site::TopologyTag;
use crate::Limits;

/// The lattice a spectrum is built from: `rad(I(R))` for zar, `Ω₁(R)` otherwise.
#[derive(Clone, Debug)]
pub enum OpenClasses {
    Radical(RadicalLattice),
    Omega(OpenClassLattice),
}

impl OpenClasses {
    pub fn lattice(&self) -> &DistLattice {
        match self {
            OpenClasses::Radical(r) => &r.lattice,
            OpenClasses::Omega(o) => o.lattice(),
        }
    }

    pub fn class_of(&self, family: &[WElem], limits: &Limits) -> Result<usize> {
        match self {
            OpenClasses::Radical(r) => r.class_of(family),
            OpenClasses::Omega(o) => o.class_of(family, limits),
        }
    }

    /// A family of elements whose class is `c`.
    pub fn representative(&self, c: usize) -> Vec<WElem> {
        match self {
            OpenClasses::Radical(r) => {
                let i = r.epsilon.iter().position(|&e| e == c).expect("ε is onto");
                r.ideals.generators(i).to_vec()
            }
            OpenClasses::Omega(o) => o.representative(c).to_vec(),
        }
    }
}

/// `Spec⁰(R)` under a topology, with the data behind each point.
///
/// Opens are indexed like the underlying class lattice and named `D(…)`;
/// points are named by their prime ideals.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub tag: TopologyTag,
    pub parent: WAlgebra,
    pub classes: OpenClasses,
    pub space: CoherentSpace,
    /// `homs[p][c]`: whether point `p` lies in the open of class `c`.
    pub homs: Vec<Vec<bool>>,
    /// Canonical generators of the prime ideal of each point.
    pub primes: Vec<Vec<WElem>>,
}

impl Spectrum {
    pub fn lattice(&self) -> &DistLattice {
        self.classes.lattice()
    }

    /// The open `D(x)`.
    pub fn basic_open(&self, x: &WElem, limits: &Limits) -> Result<usize> {
        self.classes.class_of(std::slice::from_ref(x), limits)
    }

    pub fn open_of_family(&self, family: &[WElem], limits: &Limits) -> Result<usize> {
        self.classes.class_of(family, limits)
    }

    pub fn point_of_prime_name(&self, name: &str) -> Option<usize> {
        self.space.points().iter().position(|p| p == name)
    }
}

/// `Spec⁰(R) = pt(comp(L))` with `L = rad(I(R))` for zar and `L = Ω₁(R)` otherwise.
pub fn spec0(r: &WAlgebra, tag: TopologyTag, limits: &Limits) -> Result<Spectrum> {
    let classes = match tag {
        TopologyTag::Zar => OpenClasses::Radical(radical_lattice(r, limits)?),
        _ => OpenClasses::Omega(omega1(r, tag, limits)?),
    };
    let l = classes.lattice().clone();
    let c = comp(&l, limits.lattice)?;
    if (0..l.len()).any(|a| c.principal[a] != Some(a)) {
        return Err(Error::CheckFailed("comp(L) is not indexed by principal ideals".into()));
    }
    let points = pt(&c.lattice);
    let open_names: Vec<String> = l
        .names()
        .iter()
        .map(|n| if matches!(classes, OpenClasses::Radical(_)) { format!("D{n}") } else { n.clone() })
        .collect();

    // the prime of a point: elements whose basic open misses it
    let probes: Vec<WElem> = match r {
        WAlgebra::Finite(_) => r.elements().expect("finite"),
        WAlgebra::Monomial(m) => (0..m.rank()).filter(|&i| !m.inverted()[i]).map(|i| WElem::Mono(m.var(i))).collect(),
    };
    let probe_class: Vec<usize> = probes
        .iter()
        .map(|x| classes.class_of(std::slice::from_ref(x), limits))
        .collect::<Result<_>>()?;
    let mut primes = Vec::with_capacity(points.homs.len());
    let mut names = Vec::with_capacity(points.homs.len());
    for hom in &points.homs {
        let members: Vec<WElem> = probes
            .iter()
            .zip(&probe_class)
            .filter(|(_, &k)| !hom[k])
            .map(|(x, _)| x.clone())
            .collect();
        let gens = r.canonical_generators(&members);
        names.push(r.ideal_name(&gens));
        primes.push(gens);
    }
    let space = points.space.with_open_names(open_names)?.with_point_names(names)?;
    Ok(Spectrum {
        tag,
        parent: r.clone(),
        classes,
        space,
        homs: points.homs,
        primes,
    })
}

/// The point of `Spec⁰(A)` under `Spec⁰(B) → Spec⁰(A)` induced by `h: A → B`.
///
/// The image of point `q` is the point whose hom is `c ↦ q(class of h(rep c))`.
pub fn pullback_point(a: &Spectrum, b: &Spectrum, h: &AlgHom, q: usize, limits: &Limits) -> Result<usize> {
    let l = a.lattice();
    let hom: Vec<bool> = (0..l.len())
        .map(|c| {
            let pushed: Vec<WElem> = a.classes.representative(c).iter().map(|x| h.apply(&b.parent, x)).collect();
            b.open_of_family(&pushed, limits).map(|k| b.homs[q][k])
        })
        .collect::<Result<_>>()?;
    a.homs
        .iter()
        .position(|p| *p == hom)
        .ok_or_else(|| Error::CheckFailed("pulled-back hom is not a point".into()))
}

/// The isomorphism `Ω₁(R) → rad(I(R))` under zar, `{fᵢ} ↦ class of (fᵢ)`.
#[derive(Clone, Debug)]
pub struct PhiWitness {
    pub omega: OpenClassLattice,
    pub radical: RadicalLattice,
    pub iso: LatticeIso,
}

pub fn phi_correspondence(r: &WAlgebra, limits: &Limits) -> Result<PhiWitness> {
    let omega = omega1(r, TopologyTag::Zar, limits)?;
    let radical = radical_lattice(r, limits)?;
    let map: Vec<usize> = (0..omega.len())
        .map(|i| radical.class_of(omega.representative(i)))
        .collect::<Result<_>>()?;
    let mut hit = vec![false; radical.lattice.len()];
    for (i, &c) in map.iter().enumerate() {
        if std::mem::replace(&mut hit[c], true) {
            return Err(Error::CheckFailed(format!("φ is not injective at {}", omega.lattice().name(i))));
        }
    }
    if let Some(c) = hit.iter().position(|h| !h) {
        return Err(Error::CheckFailed(format!("φ misses {}", radical.lattice.name(c))));
    }
    if !is_homomorphism(omega.lattice(), &radical.lattice, &map) {
        return Err(Error::CheckFailed("φ is not a lattice homomorphism".into()));
    }
    Ok(PhiWitness {
        omega,
        radical,
        iso: LatticeIso { map },
    })
}

/// True when the two spectra have isomorphic open lattices.
pub fn same_shape(a: &Spectrum, b: &Spectrum) -> bool {
    find_isomorphism(a.lattice(), b.lattice()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};

    #[test]
    fn z6_zar_two_discrete_points() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let s = spec0(&r, TopologyTag::Zar, &Limits::default()).unwrap();
        let mut pts = s.space.points().to_vec();
        pts.sort();
        assert_eq!(pts, ["(2)", "(3)"]);
        assert_eq!(s.space.closed_points().len(), 2);
        let d2 = s.basic_open(&WElem::Fin(2), &Limits::default()).unwrap();
        assert_eq!(s.space.opens().name(d2), "D(2)");
        let p3 = s.point_of_prime_name("(3)").unwrap();
        assert!(s.space.contains(p3, d2));
    }

    #[test]
    fn polynomial_points() {
        for k in 1..=3 {
            let r = WAlgebra::from(MonomialAlgebra::polynomial(k));
            let s = spec0(&r, TopologyTag::Zar, &Limits::default()).unwrap();
            assert_eq!(s.space.point_count(), 1 << k);
        }
    }

    #[test]
    fn trivial_is_empty() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(1));
        assert_eq!(spec0(&r, TopologyTag::Zar, &Limits::default()).unwrap().space.point_count(), 0);
    }

    #[test]
    fn phi_on_samples() {
        let l = Limits::default();
        for r in [
            WAlgebra::from(FiniteAlgebra::zmod(6)),
            FiniteAlgebra::zmod(12).into(),
            FiniteAlgebra::zmod(1).into(),
            MonomialAlgebra::polynomial(2).into(),
        ] {
            phi_correspondence(&r, &l).unwrap();
        }
    }

    #[test]
    fn z6_to_z3_image_point() {
        let l = Limits::default();
        let z6 = WAlgebra::from(FiniteAlgebra::zmod(6));
        let z3 = WAlgebra::from(FiniteAlgebra::zmod(3));
        let a = spec0(&z6, TopologyTag::Zar, &l).unwrap();
        let b = spec0(&z3, TopologyTag::Zar, &l).unwrap();
        let h = AlgHom::Table(vec![0, 1, 2, 0, 1, 2]);
        let p = pullback_point(&a, &b, &h, 0, &l).unwrap();
        assert_eq!(a.space.points()[p], "(3)");
    }
}
