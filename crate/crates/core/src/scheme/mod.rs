//! Structure sheaves, weak schemes, gluing and affine comparison.

mod affine;
mod fiber;
mod glue;

pub use affine::{counit_check, is_affine, spec_morphism, spec_scheme, AffineReport, CounitWitness, SpecScheme};
pub use fiber::{fiber_product, find_iso, is_iso, FiberProduct};
pub use glue::{glue, glue_along_iso, projective_line, GluedScheme, GluingDatum};

use std::collections::HashMap;

use crate::algebra::{AlgHom, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::{is_homomorphism, CoherentSpace, DistLattice};
use crate::site::{is_local_object, TopologyTag};
use crate::Limits;

/// True when `h₁` and `h₂` agree as maps into `target`.
pub(crate) fn same_map(target: &WAlgebra, h1: &AlgHom, h2: &AlgHom) -> bool {
    target.is_trivial() || h1 == h2
}

/// A sheaf of algebras on a finite lattice of opens, stored extensionally.
#[derive(Clone, Debug)]
pub struct StructureSheaf {
    opens: DistLattice,
    values: Vec<WAlgebra>,
    restrictions: HashMap<(usize, usize), AlgHom>,
}

impl StructureSheaf {
    /// `restrictions[(u, v)]` must be given for every `v ≤ u`.
    pub fn new(opens: DistLattice, values: Vec<WAlgebra>, restrictions: HashMap<(usize, usize), AlgHom>) -> Result<Self> {
        if values.len() != opens.len() {
            return Err(Error::CheckFailed("one value per open".into()));
        }
        for u in 0..opens.len() {
            for v in (0..opens.len()).filter(|&v| opens.leq(v, u)) {
                let h = restrictions
                    .get(&(u, v))
                    .ok_or_else(|| Error::CheckFailed(format!("no restriction {} → {}", opens.name(u), opens.name(v))))?;
                if !values[u].is_hom(&values[v], h) {
                    return Err(Error::CheckFailed(format!(
                        "restriction {} → {} is not a homomorphism",
                        opens.name(u),
                        opens.name(v)
                    )));
                }
            }
        }
        let s = StructureSheaf {
            opens,
            values,
            restrictions,
        };
        s.check_functoriality()?;
        Ok(s)
    }

    pub fn opens(&self) -> &DistLattice {
        &self.opens
    }

    pub fn value(&self, u: usize) -> &WAlgebra {
        &self.values[u]
    }

    pub fn values(&self) -> &[WAlgebra] {
        &self.values
    }

    /// `𝒪(u) → 𝒪(v)`; panics unless `v ≤ u`.
    pub fn restriction(&self, u: usize, v: usize) -> &AlgHom {
        &self.restrictions[&(u, v)]
    }

    fn check_functoriality(&self) -> Result<()> {
        let l = &self.opens;
        let n = l.len();
        for u in 0..n {
            if !same_map(&self.values[u], self.restriction(u, u), &self.values[u].identity_hom()) {
                return Err(Error::CheckFailed(format!("restriction to {} itself is not the identity", l.name(u))));
            }
            for v in (0..n).filter(|&v| l.leq(v, u)) {
                for w in (0..n).filter(|&w| l.leq(w, v)) {
                    let composite = self.restriction(u, v).then(self.restriction(v, w));
                    if !same_map(&self.values[w], &composite, self.restriction(u, w)) {
                        return Err(Error::CheckFailed(format!(
                            "restrictions {} → {} → {} do not compose",
                            l.name(u),
                            l.name(v),
                            l.name(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `𝒪(∅)` is terminal and `𝒪(U ∨ V) → 𝒪(U) ×_{𝒪(U ∧ V)} 𝒪(V)` is an
    /// isomorphism for every pair of opens.
    pub fn check_sheaf_condition(&self) -> Result<()> {
        let l = &self.opens;
        if !self.values[l.bottom()].is_trivial() {
            return Err(Error::CheckFailed("the value on the empty open is not terminal".into()));
        }
        for a in 0..l.len() {
            for b in (a + 1)..l.len() {
                if l.leq(a, b) || l.leq(b, a) {
                    continue;
                }
                let (j, m) = (l.join(a, b), l.meet(a, b));
                let fp = fiber_product(
                    &self.values[a],
                    &self.values[b],
                    &self.values[m],
                    self.restriction(a, m),
                    self.restriction(b, m),
                )?;
                let q = fp.induced(&self.values[j], self.restriction(j, a), self.restriction(j, b))?;
                if !is_iso(&self.values[j], &fp.algebra, &q) {
                    return Err(Error::CheckFailed(format!(
                        "sheaf condition fails for {} = {} ∨ {}",
                        l.name(j),
                        l.name(a),
                        l.name(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A coherent space with a structure sheaf and its support table `β`.
///
/// `β(U)(a)` is the open on which the localization `𝒪(U) → 𝒪(U)_a` takes
/// place: the largest `V ≤ U` to which `a` restricts as a unit. It is stored
/// for the generator pool of each value and computed on demand otherwise.
#[derive(Clone, Debug)]
pub struct WeakScheme {
    pub tag: TopologyTag,
    pub space: CoherentSpace,
    pub sheaf: StructureSheaf,
    pub beta: Vec<Vec<(WElem, usize)>>,
}

impl WeakScheme {
    pub fn new(tag: TopologyTag, space: CoherentSpace, sheaf: StructureSheaf, beta: Vec<Vec<(WElem, usize)>>) -> Result<Self> {
        if space.opens().len() != sheaf.opens().len() || beta.len() != sheaf.opens().len() {
            return Err(Error::CheckFailed("space, sheaf and β disagree on the opens".into()));
        }
        let l = space.opens();
        if (0..l.len()).any(|a| (0..l.len()).any(|b| l.leq(a, b) != sheaf.opens().leq(a, b))) {
            return Err(Error::CheckFailed("space and sheaf order the opens differently".into()));
        }
        Ok(WeakScheme {
            tag,
            space,
            sheaf,
            beta,
        })
    }

    /// Builds `β` from unit loci over each value's generator pool.
    pub fn from_sheaf(tag: TopologyTag, space: CoherentSpace, sheaf: StructureSheaf, limits: &Limits) -> Result<Self> {
        let n = sheaf.opens().len();
        let mut s = WeakScheme::new(tag, space, sheaf, vec![Vec::new(); n])?;
        s.beta = (0..n)
            .map(|u| {
                s.value(u)
                    .pool(limits.pool_degree)
                    .into_iter()
                    .map(|a| {
                        let v = s.unit_locus(u, &a);
                        (a, v)
                    })
                    .collect()
            })
            .collect();
        Ok(s)
    }

    pub fn opens(&self) -> &DistLattice {
        self.space.opens()
    }

    pub fn value(&self, u: usize) -> &WAlgebra {
        self.sheaf.value(u)
    }

    pub fn restriction(&self, u: usize, v: usize) -> &AlgHom {
        self.sheaf.restriction(u, v)
    }

    /// `Γ(X) = 𝒪(top)`.
    pub fn global_sections(&self) -> &WAlgebra {
        self.value(self.opens().top())
    }

    /// The largest `V ≤ u` on which `a ∈ 𝒪(u)` restricts to a unit.
    pub fn unit_locus(&self, u: usize, a: &WElem) -> usize {
        let l = self.opens();
        l.join_all((0..l.len()).filter(|&v| {
            if !l.leq(v, u) {
                return false;
            }
            let target = self.value(v);
            target.is_trivial() || target.is_unit(&self.restriction(u, v).apply(target, a))
        }))
    }

    /// `β(u)(a)`.
    pub fn beta(&self, u: usize, a: &WElem) -> usize {
        self.beta[u]
            .iter()
            .find(|(x, _)| x == a)
            .map_or_else(|| self.unit_locus(u, a), |&(_, v)| v)
    }

    /// Checks the stored `β` against unit loci, and that restricting to
    /// `β(u)(a)` factors through the localization at `a`.
    pub fn check_beta(&self) -> Result<()> {
        let l = self.opens();
        for u in 0..l.len() {
            for (a, v) in &self.beta[u] {
                if !l.leq(*v, u) {
                    return Err(Error::CheckFailed(format!("β({}) leaves {}", l.name(u), l.name(u))));
                }
                let want = self.unit_locus(u, a);
                if want != *v {
                    return Err(Error::CheckFailed(format!(
                        "β({})({}) is {} but the unit locus is {}",
                        l.name(u),
                        self.value(u).name(a),
                        l.name(*v),
                        l.name(want)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Structural checks: the sheaf condition and `β`.
    pub fn check(&self) -> Result<()> {
        self.sheaf.check_sheaf_condition()?;
        self.check_beta()
    }

    /// The stalk at a point: the value on its smallest open neighbourhood.
    pub fn stalk(&self, p: usize) -> &WAlgebra {
        self.value(self.space.minimal_open(p))
    }

    /// Whether each stalk is a local object, by point name.
    pub fn stalk_locality(&self, limits: &Limits) -> Result<Vec<(String, bool)>> {
        (0..self.space.point_count())
            .map(|p| Ok((self.space.points()[p].clone(), is_local_object(self.stalk(p), self.tag, limits)?)))
            .collect()
    }

    /// The open subscheme on `↓u`.
    pub fn restrict(&self, u: usize) -> Result<WeakScheme> {
        let (sub, members) = self.opens().principal_sublattice(u);
        let pts: Vec<usize> = (0..self.space.point_count()).filter(|&p| self.space.contains(p, u)).collect();
        let space = CoherentSpace::new(
            pts.iter().map(|&p| self.space.points()[p].clone()).collect(),
            sub.clone(),
            members.iter().map(|&v| pts.iter().map(|&p| self.space.contains(p, v)).collect()).collect(),
        )?;
        let mut restrictions = HashMap::new();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if sub.leq(j, i) {
                    restrictions.insert((i, j), self.restriction(a, b).clone());
                }
            }
        }
        let sheaf = StructureSheaf::new(sub, members.iter().map(|&v| self.value(v).clone()).collect(), restrictions)?;
        let beta = members.iter().map(|&v| self.beta[v].clone()).collect();
        WeakScheme::new(self.tag, space, sheaf, beta)
    }
}

/// A morphism `X → Y` of weak schemes, in the geometric direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeMorphism {
    /// Image of each point of `X`.
    pub points: Vec<usize>,
    /// Preimage of each open of `Y`.
    pub preimage: Vec<usize>,
    /// `𝒪_Y(V) → 𝒪_X(f⁻¹V)` for each open `V` of `Y`.
    pub comorphisms: Vec<AlgHom>,
}

impl SchemeMorphism {
    /// Continuity, lattice structure of the preimage map, and naturality of
    /// the comorphisms with respect to restriction.
    pub fn check(&self, x: &WeakScheme, y: &WeakScheme) -> Result<()> {
        let (lx, ly) = (x.opens(), y.opens());
        if !is_homomorphism(ly, lx, &self.preimage) {
            return Err(Error::CheckFailed("preimage is not a lattice homomorphism".into()));
        }
        for p in 0..x.space.point_count() {
            for v in 0..ly.len() {
                if x.space.contains(p, self.preimage[v]) != y.space.contains(self.points[p], v) {
                    return Err(Error::CheckFailed(format!(
                        "point {} and open {} break continuity",
                        x.space.points()[p],
                        ly.name(v)
                    )));
                }
            }
        }
        for v in 0..ly.len() {
            let fv = self.preimage[v];
            if !y.value(v).is_hom(x.value(fv), &self.comorphisms[v]) {
                return Err(Error::CheckFailed(format!("comorphism at {} is not a homomorphism", ly.name(v))));
            }
            for w in (0..ly.len()).filter(|&w| ly.leq(w, v)) {
                let fw = self.preimage[w];
                let down = self.comorphisms[v].then(x.restriction(fv, fw));
                let across = y.restriction(v, w).then(&self.comorphisms[w]);
                if !same_map(x.value(fw), &down, &across) {
                    return Err(Error::CheckFailed(format!(
                        "comorphisms at {} and {} do not commute with restriction",
                        ly.name(v),
                        ly.name(w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Injective on points, with open image `V₀` such that every open of `X`
    /// is the preimage of exactly one open below `V₀` and the comorphisms
    /// below `V₀` are isomorphisms.
    pub fn is_open_immersion(&self, x: &WeakScheme, y: &WeakScheme) -> bool {
        let mut seen = vec![false; y.space.point_count()];
        if self.points.iter().any(|&q| std::mem::replace(&mut seen[q], true)) {
            return false;
        }
        let Some(v0) = y.space.open_of_set(&seen) else {
            return false;
        };
        let ly = y.opens();
        let below: Vec<usize> = (0..ly.len()).filter(|&v| ly.leq(v, v0)).collect();
        let mut hit = vec![false; x.opens().len()];
        for &v in &below {
            if std::mem::replace(&mut hit[self.preimage[v]], true) {
                return false;
            }
        }
        hit.iter().all(|&h| h)
            && below
                .iter()
                .all(|&v| is_iso(y.value(v), x.value(self.preimage[v]), &self.comorphisms[v]))
    }

    /// `g ∘ self` for `g: Y → Z`.
    pub fn then(&self, g: &SchemeMorphism) -> SchemeMorphism {
        SchemeMorphism {
            points: self.points.iter().map(|&q| g.points[q]).collect(),
            preimage: g.preimage.iter().map(|&v| self.preimage[v]).collect(),
            comorphisms: g
                .preimage
                .iter()
                .zip(&g.comorphisms)
                .map(|(&v, c)| c.then(&self.comorphisms[v]))
                .collect(),
        }
    }
}
