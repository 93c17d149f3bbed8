use std::collections::HashMap;

use serde::Serialize;

use super::{find_iso, is_iso, SchemeMorphism, StructureSheaf, WeakScheme};
use crate::algebra::{AlgHom, FiniteAlgebra, Mono, MonomialAlgebra, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::is_homomorphism;
use crate::site::{Equalizer, TopologyTag};
use crate::spectrum::{pullback_point, spec0, Spectrum};
use crate::Limits;

/// `Spec R` with the data that produced it.
#[derive(Clone, Debug)]
pub struct SpecScheme {
    pub scheme: WeakScheme,
    pub spectrum: Spectrum,
    /// For each open, the non-unit pool elements whose basic open lies below
    /// it (plus `1` when those do not reach the open).
    pub families: Vec<Vec<WElem>>,
    /// Finite backends: the distinct idempotents behind each value.
    pub idempotents: Vec<Vec<usize>>,
    /// `η_U: R → 𝒪(U)`.
    pub eta: Vec<AlgHom>,
}

/// `Spec R` under a topology.
///
/// The value on an open `U` is the equalizer of the descent fork for the
/// family of basic opens below `U`; on finite backends `R_f ≅ eR`, on
/// monomial ones the equalizer of the charts `R[supp(fᵢ)⁻¹]` inside the
/// Laurent monoid is their intersection. Restrictions are found by
/// transferring compatible tuples along overlaps and must be unique.
pub fn spec_scheme(r: &WAlgebra, tag: TopologyTag, limits: &Limits) -> Result<SpecScheme> {
    let spectrum = spec0(r, tag, limits)?;
    let l = spectrum.lattice().clone();
    let pool = r.pool(limits.pool_degree);
    let basic: Vec<usize> = pool.iter().map(|x| spectrum.basic_open(x, limits)).collect::<Result<_>>()?;
    let mut families = Vec::with_capacity(l.len());
    for c in 0..l.len() {
        let mut fam: Vec<WElem> = pool
            .iter()
            .zip(&basic)
            .filter(|(x, &b)| l.leq(b, c) && !r.is_unit(x))
            .map(|(x, _)| x.clone())
            .collect();
        if spectrum.open_of_family(&fam, limits)? != c {
            fam.push(r.one());
            if spectrum.open_of_family(&fam, limits)? != c {
                return Err(Error::CheckFailed(format!("{} is not a join of basic opens", l.name(c))));
            }
        }
        families.push(fam);
    }
    let space = spectrum.space.clone();
    let opens = space.opens().clone();
    let mut restrictions = HashMap::new();
    let (values, idempotents, eta, beta) = match r {
        WAlgebra::Finite(a) => {
            let mut eqs = Vec::with_capacity(l.len());
            let mut idems = Vec::with_capacity(l.len());
            for fam in &families {
                let mut es: Vec<usize> = fam.iter().map(|x| a.idempotent_power(fin(x))).collect();
                es.sort_unstable();
                es.dedup();
                eqs.push(Equalizer::of_idempotents(a, &es, limits.equalizer)?);
                idems.push(es);
            }
            for u in 0..l.len() {
                for v in (0..l.len()).filter(|&v| l.leq(v, u)) {
                    let table = eqs[u]
                        .tuples
                        .iter()
                        .map(|t| {
                            let s = transfer(a, &idems[u], t, &idems[v])?;
                            eqs[v]
                                .index_of(&s)
                                .ok_or_else(|| Error::CheckFailed("transferred family is not compatible".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    restrictions.insert((u, v), AlgHom::Table(table));
                }
            }
            let mut beta = Vec::with_capacity(l.len());
            for eq in &eqs {
                let mut row = Vec::with_capacity(eq.len());
                for (i, t) in eq.tuples.iter().enumerate() {
                    let fam: Vec<WElem> = t.iter().map(|&x| WElem::Fin(x)).collect();
                    row.push((WElem::Fin(i), spectrum.open_of_family(&fam, limits)?));
                }
                beta.push(row);
            }
            let eta = eqs.iter().map(|e| AlgHom::Table(e.image.clone())).collect();
            let values = eqs.iter().map(|e| WAlgebra::from(named_by_preimage(a, e))).collect();
            (values, idems, eta, beta)
        }
        WAlgebra::Monomial(m) => {
            let values: Vec<MonomialAlgebra> = families.iter().map(|fam| chart_intersection(m, fam)).collect();
            for u in 0..l.len() {
                for v in (0..l.len()).filter(|&v| l.leq(v, u)) {
                    restrictions.insert((u, v), AlgHom::identity_matrix(m.rank()));
                }
            }
            let mut beta = Vec::with_capacity(l.len());
            for (u, val) in values.iter().enumerate() {
                let mut row = Vec::new();
                for a in val.pool(limits.pool_degree) {
                    let locus = match &a {
                        Mono::Zero => l.bottom(),
                        Mono::Exp(e) => {
                            let shadow = WElem::Mono(Mono::Exp(e.iter().map(|x| x.abs()).collect()));
                            l.meet(u, spectrum.basic_open(&shadow, limits)?)
                        }
                    };
                    row.push((WElem::Mono(a), locus));
                }
                beta.push(row);
            }
            let eta = vec![AlgHom::identity_matrix(m.rank()); l.len()];
            (values.into_iter().map(WAlgebra::from).collect(), Vec::new(), eta, beta)
        }
    };
    let sheaf = StructureSheaf::new(opens, values, restrictions)?;
    let scheme = WeakScheme::new(tag, space, sheaf, beta)?;
    Ok(SpecScheme {
        scheme,
        spectrum,
        families,
        idempotents,
        eta,
    })
}

fn fin(x: &WElem) -> usize {
    match x {
        WElem::Fin(i) => *i,
        WElem::Mono(_) => panic!("monomial element in a finite algebra"),
    }
}

/// `R[S⁻¹]` for `S` the coordinates shared by every nonzero member.
fn chart_intersection(m: &MonomialAlgebra, fam: &[WElem]) -> MonomialAlgebra {
    let supports: Vec<Vec<bool>> = fam
        .iter()
        .filter_map(|x| match x {
            WElem::Mono(f @ Mono::Exp(_)) => Some(m.support(f)),
            _ => None,
        })
        .collect();
    if supports.is_empty() || m.is_trivial() {
        return m.trivialized();
    }
    let inverted = (0..m.rank())
        .map(|i| m.inverted()[i] || supports.iter().all(|s| s[i]))
        .collect();
    MonomialAlgebra::new(m.vars().to_vec(), inverted).expect("same coordinates")
}

/// Names each tuple after its least preimage in `R`, when it has one.
fn named_by_preimage(r: &FiniteAlgebra, eq: &Equalizer) -> FiniteAlgebra {
    let mut names: Vec<String> = eq.algebra.names().to_vec();
    let mut named = vec![false; eq.len()];
    for x in 0..r.len() {
        let t = eq.image[x];
        if !std::mem::replace(&mut named[t], true) {
            names[t] = r.name(x).to_string();
        }
    }
    eq.algebra.renamed(names).unwrap_or_else(|_| eq.algebra.clone())
}

/// The unique tuple over `dst` agreeing with `u` over `src` on every overlap:
/// `sⱼ ∈ dⱼR` with `eᵢsⱼ = dⱼuᵢ`.
fn transfer(r: &FiniteAlgebra, src: &[usize], u: &[usize], dst: &[usize]) -> Result<Vec<usize>> {
    dst.iter()
        .map(|&d| {
            let mut found = None;
            for s in 0..r.len() {
                if r.mul(d, s) == s && src.iter().zip(u).all(|(&e, &ui)| r.mul(e, s) == r.mul(d, ui)) {
                    if found.is_some() {
                        return Err(Error::CheckFailed(format!("restriction to {} is not determined", r.name(d))));
                    }
                    found = Some(s);
                }
            }
            found.ok_or_else(|| Error::CheckFailed(format!("no section over {} restricts correctly", r.name(d))))
        })
        .collect()
}

/// The unit `R → Γ(Spec R)`.
#[derive(Clone, Debug)]
pub struct CounitWitness {
    pub gamma: WAlgebra,
    pub eta: AlgHom,
    pub iso: bool,
}

pub fn counit_check(r: &WAlgebra, tag: TopologyTag, limits: &Limits) -> Result<CounitWitness> {
    let s = spec_scheme(r, tag, limits)?;
    let top = s.scheme.opens().top();
    let gamma = s.scheme.global_sections().clone();
    let eta = s.eta[top].clone();
    let iso = is_iso(r, &gamma, &eta);
    Ok(CounitWitness { gamma, eta, iso })
}

/// `Spec h: Spec B → Spec A` for `h: A → B`.
///
/// Points move by prime pullback, opens by pushing representative families
/// forward, and sections by transferring pushed tuples onto the target's
/// charts (finite) or applying the exponent matrix (monomial).
pub fn spec_morphism(a: &SpecScheme, b: &SpecScheme, h: &AlgHom, limits: &Limits) -> Result<SchemeMorphism> {
    let (ra, rb) = (&a.spectrum.parent, &b.spectrum.parent);
    if !ra.is_hom(rb, h) {
        return Err(Error::CheckFailed("not a homomorphism".into()));
    }
    let points = (0..b.scheme.space.point_count())
        .map(|q| pullback_point(&a.spectrum, &b.spectrum, h, q, limits))
        .collect::<Result<Vec<_>>>()?;
    let preimage = a
        .families
        .iter()
        .map(|fam| {
            let pushed: Vec<WElem> = fam.iter().map(|x| h.apply(rb, x)).collect();
            b.spectrum.open_of_family(&pushed, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    let comorphisms = match (ra, rb, h) {
        (WAlgebra::Finite(_), WAlgebra::Finite(fb), AlgHom::Table(t)) => {
            let mut out = Vec::with_capacity(preimage.len());
            for (c, &v) in preimage.iter().enumerate() {
                let src: Vec<usize> = a.idempotents[c].iter().map(|&e| t[e]).collect();
                let eq_b = Equalizer::of_idempotents(fb, &b.idempotents[v], limits.equalizer)?;
                let eq_a = Equalizer::of_idempotents(ra.as_finite().expect("finite"), &a.idempotents[c], limits.equalizer)?;
                let table = eq_a
                    .tuples
                    .iter()
                    .map(|tup| {
                        let pushed: Vec<usize> = tup.iter().map(|&x| t[x]).collect();
                        let s = transfer(fb, &src, &pushed, &b.idempotents[v])?;
                        eq_b.index_of(&s)
                            .ok_or_else(|| Error::CheckFailed("pushed section is not compatible".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(AlgHom::Table(table));
            }
            out
        }
        (WAlgebra::Monomial(_), WAlgebra::Monomial(_), AlgHom::Matrix(_)) => vec![h.clone(); preimage.len()],
        _ => return Err(Error::MixedParents),
    };
    let f = SchemeMorphism {
        points,
        preimage,
        comorphisms,
    };
    f.check(&b.scheme, &a.scheme)?;
    Ok(f)
}

/// Outcome of comparing a scheme with `Spec Γ`.
#[derive(Clone, Debug, Serialize)]
pub struct AffineReport {
    pub affine: bool,
    pub gamma_size: Option<usize>,
    /// Points of `X` and of `Spec Γ(X)`.
    pub points: (usize, usize),
    /// Opens of `X` and of `Spec Γ(X)`.
    pub opens: (usize, usize),
    pub reason: Option<String>,
}

/// Whether `ε_X: X → Spec Γ(X)` is an isomorphism.
///
/// The open of `Spec Γ` with representative family `{gⱼ}` is sent to
/// `∨ β(top)(gⱼ)`; the map must be a lattice isomorphism and every value
/// of `Spec Γ` must be isomorphic to the value on the corresponding open.
pub fn is_affine(x: &WeakScheme, limits: &Limits) -> Result<AffineReport> {
    let gamma = x.global_sections().clone();
    let s = spec_scheme(&gamma, x.tag, limits)?;
    let (lx, ls) = (x.opens(), s.scheme.opens());
    let mut report = AffineReport {
        affine: false,
        gamma_size: gamma.size(),
        points: (x.space.point_count(), s.scheme.space.point_count()),
        opens: (lx.len(), ls.len()),
        reason: None,
    };
    if lx.len() != ls.len() {
        report.reason = Some("open lattices differ in size".into());
        return Ok(report);
    }
    let top = lx.top();
    let map: Vec<usize> = s
        .families
        .iter()
        .map(|fam| lx.join_all(fam.iter().map(|g| x.beta(top, g))))
        .collect();
    let mut hit = vec![false; lx.len()];
    for &u in &map {
        hit[u] = true;
    }
    if hit.iter().any(|h| !h) || !is_homomorphism(ls, lx, &map) {
        report.reason = Some("β does not carry the opens of Spec Γ onto the opens of X".into());
        return Ok(report);
    }
    if report.points.0 != report.points.1 {
        report.reason = Some("point counts differ".into());
        return Ok(report);
    }
    for (c, &u) in map.iter().enumerate() {
        if find_iso(s.scheme.value(c), x.value(u)).is_none() {
            report.reason = Some(format!("values over {} differ", lx.name(u)));
            return Ok(report);
        }
    }
    report.affine = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn z6_values() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let s = spec_scheme(&r, TopologyTag::Zar, &l()).unwrap();
        s.scheme.check().unwrap();
        let d2 = s.spectrum.basic_open(&WElem::Fin(2), &l()).unwrap();
        let d3 = s.spectrum.basic_open(&WElem::Fin(3), &l()).unwrap();
        let size = |u: usize| s.scheme.value(u).size().unwrap();
        assert_eq!((size(d2), size(d3)), (3, 2));
        assert_eq!(s.scheme.global_sections().size(), Some(6));
        let WAlgebra::Finite(v) = s.scheme.value(d2) else { panic!() };
        assert!(v.find_isomorphism(&FiniteAlgebra::zmod(3)).is_some());
        let mut names = v.names().to_vec();
        names.sort();
        assert_eq!(names, ["0", "1", "2"]);
    }

    #[test]
    fn sierpinski_line() {
        let r = WAlgebra::from(MonomialAlgebra::polynomial(1));
        let s = spec_scheme(&r, TopologyTag::Zar, &l()).unwrap();
        s.scheme.check().unwrap();
        assert_eq!(s.scheme.space.point_count(), 2);
        let dx = s.spectrum.basic_open(&r.parse("x").unwrap(), &l()).unwrap();
        let generic = s.scheme.value(dx).as_monomial().unwrap().clone();
        assert_eq!(generic.inverted(), [true]);
    }

    #[test]
    fn empty_scheme_has_terminal_sections() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(1));
        let s = spec_scheme(&r, TopologyTag::Zar, &l()).unwrap();
        assert_eq!(s.scheme.space.point_count(), 0);
        assert!(s.scheme.global_sections().is_trivial());
    }

    #[test]
    fn counits() {
        for n in [1, 2, 4, 6, 12] {
            let w = counit_check(&FiniteAlgebra::zmod(n).into(), TopologyTag::Zar, &l()).unwrap();
            assert!(w.iso, "ℤ/{n}");
        }
        let w = counit_check(&MonomialAlgebra::polynomial(2).into(), TopologyTag::Zar, &l()).unwrap();
        assert!(w.iso);
    }

    #[test]
    fn stalks_are_local() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(12));
        let s = spec_scheme(&r, TopologyTag::Zar, &l()).unwrap();
        for (p, ok) in s.scheme.stalk_locality(&l()).unwrap() {
            assert!(ok, "{p}");
        }
    }

    #[test]
    fn morphisms() {
        let z6 = WAlgebra::from(FiniteAlgebra::zmod(6));
        let z3 = WAlgebra::from(FiniteAlgebra::zmod(3));
        let a = spec_scheme(&z6, TopologyTag::Zar, &l()).unwrap();
        let b = spec_scheme(&z3, TopologyTag::Zar, &l()).unwrap();
        let f = spec_morphism(&a, &b, &AlgHom::Table(vec![0, 1, 2, 0, 1, 2]), &l()).unwrap();
        assert_eq!(a.scheme.space.points()[f.points[0]], "(3)");
        assert!(f.is_open_immersion(&b.scheme, &a.scheme));
        let id = spec_morphism(&a, &a, &z6.identity_hom(), &l()).unwrap();
        assert!(id.is_open_immersion(&a.scheme, &a.scheme));

        let x = WAlgebra::from(MonomialAlgebra::polynomial(1));
        let xx = WAlgebra::from(MonomialAlgebra::with_vars(&["x"], &["x"]).unwrap());
        let sx = spec_scheme(&x, TopologyTag::Zar, &l()).unwrap();
        let sxx = spec_scheme(&xx, TopologyTag::Zar, &l()).unwrap();
        let g = spec_morphism(&sx, &sxx, &AlgHom::identity_matrix(1), &l()).unwrap();
        assert!(g.is_open_immersion(&sxx.scheme, &sx.scheme));
    }

    #[test]
    fn affine_inputs() {
        for r in [WAlgebra::from(FiniteAlgebra::zmod(6)), MonomialAlgebra::polynomial(1).into()] {
            let s = spec_scheme(&r, TopologyTag::Zar, &l()).unwrap();
            let rep = is_affine(&s.scheme, &l()).unwrap();
            assert!(rep.affine, "{rep:?}");
        }
    }
}
