use std::collections::HashMap;

use crate::algebra::{AlgHom, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::{is_homomorphism, DistLattice};
use crate::site::{is_cover, TopologyTag};
use crate::Limits;

/// Localizations `R → R_f`, computed once per element.
#[derive(Debug, Default)]
pub(crate) struct Charts {
    cache: HashMap<WElem, (WAlgebra, AlgHom)>,
}

impl Charts {
    pub(crate) fn chart(&mut self, r: &WAlgebra, f: &WElem) -> &(WAlgebra, AlgHom) {
        self.cache.entry(f.clone()).or_insert_with(|| r.localize(f))
    }
}

/// `F ≺ G`: for every `f ∈ F` the image of `G` in `R_f` covers `R_f`.
pub(crate) fn precedes(
    r: &WAlgebra,
    charts: &mut Charts,
    f: &[WElem],
    g: &[WElem],
    tag: TopologyTag,
    limits: &Limits,
) -> Result<bool> {
    for x in f {
        let (rx, h) = charts.chart(r, x);
        let pushed: Vec<WElem> = g.iter().map(|y| h.apply(rx, y)).collect();
        if !is_cover(rx, &pushed, tag, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ω₁(R)`: families of localizations modulo mutual `≺`.
///
/// Classes are enumerated from a generator pool (the carrier of a finite
/// algebra, bounded-degree monomials otherwise), so on monomial backends the
/// lattice is relative to the pool.
#[derive(Clone, Debug)]
pub struct OpenClassLattice {
    parent: WAlgebra,
    tag: TopologyTag,
    reps: Vec<Vec<WElem>>,
    lattice: DistLattice,
}

impl OpenClassLattice {
    pub fn parent(&self) -> &WAlgebra {
        &self.parent
    }

    pub fn tag(&self) -> TopologyTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    /// The family that named class `i`.
    pub fn representative(&self, i: usize) -> &[WElem] {
        &self.reps[i]
    }

    /// The class of an arbitrary family.
    pub fn class_of(&self, family: &[WElem], limits: &Limits) -> Result<usize> {
        if let Some(x) = family.iter().find(|x| !self.parent.contains(x)) {
            return Err(Error::UnknownElement(format!("{x:?}")));
        }
        let mut charts = Charts::default();
        for (i, rep) in self.reps.iter().enumerate() {
            if precedes(&self.parent, &mut charts, family, rep, self.tag, limits)?
                && precedes(&self.parent, &mut charts, rep, family, self.tag, limits)?
            {
                return Ok(i);
            }
        }
        Err(Error::PoolTooSmall(format!(
            "family {{{}}} matches no enumerated class",
            family.iter().map(|x| self.parent.name(x)).collect::<Vec<_>>().join(",")
        )))
    }
}

fn normalize(mut fam: Vec<WElem>) -> Vec<WElem> {
    fam.sort();
    fam.dedup();
    fam
}

fn class_name(r: &WAlgebra, fam: &[WElem]) -> String {
    if fam.is_empty() {
        return "D(0)".into();
    }
    format!("D({})", fam.iter().map(|x| r.name(x)).collect::<Vec<_>>().join(","))
}

struct Builder<'a> {
    r: &'a WAlgebra,
    tag: TopologyTag,
    limits: &'a Limits,
    pool: Vec<WElem>,
    charts: Charts,
    reps: Vec<Vec<WElem>>,
    buckets: HashMap<Vec<bool>, Vec<usize>>,
}

impl Builder<'_> {
    fn fingerprint(&mut self, fam: &[WElem]) -> Result<Vec<bool>> {
        let mut fp = Vec::with_capacity(2 * self.pool.len());
        for i in 0..self.pool.len() {
            let single = [self.pool[i].clone()];
            fp.push(precedes(self.r, &mut self.charts, &single, fam, self.tag, self.limits)?);
            fp.push(precedes(self.r, &mut self.charts, fam, &single, self.tag, self.limits)?);
        }
        Ok(fp)
    }

    /// Index of the class of `fam`, adding it when new.
    fn insert(&mut self, fam: Vec<WElem>) -> Result<usize> {
        let fam = normalize(fam);
        let fp = self.fingerprint(&fam)?;
        for &i in self.buckets.get(&fp).map(Vec::as_slice).unwrap_or(&[]) {
            let rep = &self.reps[i];
            if precedes(self.r, &mut self.charts, &fam, rep, self.tag, self.limits)?
                && precedes(self.r, &mut self.charts, rep, &fam, self.tag, self.limits)?
            {
                return Ok(i);
            }
        }
        if self.reps.len() >= self.limits.classes {
            return Err(Error::guard("open classes", self.reps.len() + 1, self.limits.classes));
        }
        let id = self.reps.len();
        self.reps.push(fam);
        self.buckets.entry(fp).or_default().push(id);
        Ok(id)
    }

    fn union(&self, a: usize, b: usize) -> Vec<WElem> {
        [self.reps[a].clone(), self.reps[b].clone()].concat()
    }

    fn product(&self, a: usize, b: usize) -> Vec<WElem> {
        self.reps[a]
            .iter()
            .flat_map(|x| self.reps[b].iter().map(move |y| self.r.mul(x, y)))
            .collect()
    }
}

/// Enumerates `Ω₁(R)` under a topology and checks that it is a distributive lattice.
///
/// Seeds are the empty family, `{1}` and every singleton from the pool; the
/// set of classes is closed under union and pairwise products of
/// representatives. The order is `≺` on representatives, and the closure
/// tables are compared against the resulting joins and meets.
pub fn omega1(r: &WAlgebra, tag: TopologyTag, limits: &Limits) -> Result<OpenClassLattice> {
    let mut b = Builder {
        r,
        tag,
        limits,
        pool: r.pool(limits.pool_degree),
        charts: Charts::default(),
        reps: Vec::new(),
        buckets: HashMap::new(),
    };
    b.insert(Vec::new())?;
    b.insert(vec![r.one()])?;
    for x in b.pool.clone() {
        b.insert(vec![x])?;
    }
    let mut joins: HashMap<(usize, usize), usize> = HashMap::new();
    let mut meets: HashMap<(usize, usize), usize> = HashMap::new();
    let mut k = 0;
    while k < b.reps.len() {
        for j in 0..=k {
            let u = b.insert(b.union(k, j))?;
            let m = b.insert(b.product(k, j))?;
            joins.insert((j, k), u);
            meets.insert((j, k), m);
        }
        k += 1;
    }
    let n = b.reps.len();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = precedes(r, &mut b.charts, &b.reps[x], &b.reps[y], tag, limits)?;
        }
    }
    let names = b.reps.iter().map(|f| class_name(r, f)).collect();
    let lattice = DistLattice::from_order(names, |x, y| leq[x * n + y])?;
    for (&(x, y), &u) in &joins {
        if lattice.join(x, y) != u || lattice.meet(x, y) != meets[&(x, y)] {
            return Err(Error::CheckFailed(format!(
                "union or product of {} and {} disagrees with the class order",
                lattice.name(x),
                lattice.name(y)
            )));
        }
    }
    Ok(OpenClassLattice {
        parent: r.clone(),
        tag,
        reps: b.reps,
        lattice,
    })
}

/// The map `Ω₁(R, from) → Ω₁(R, to)` sending a class to the class of its representative.
///
/// Checked to be a lattice homomorphism; surjectivity is left to the caller.
pub fn comparison_map(from: &OpenClassLattice, to: &OpenClassLattice, limits: &Limits) -> Result<Vec<usize>> {
    if from.parent != to.parent {
        return Err(Error::MixedParents);
    }
    let map = (0..from.len())
        .map(|i| to.class_of(from.representative(i), limits))
        .collect::<Result<Vec<_>>>()?;
    if !is_homomorphism(from.lattice(), to.lattice(), &map) {
        return Err(Error::CheckFailed(format!(
            "Ω₁ comparison {} → {} is not a lattice homomorphism",
            from.tag, to.tag
        )));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};
    use crate::lattice::find_isomorphism;

    #[test]
    fn z6_zar_is_diamond() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let o = omega1(&r, TopologyTag::Zar, &Limits::default()).unwrap();
        assert!(find_isomorphism(o.lattice(), &DistLattice::boolean(2)).is_some());
        assert_eq!(o.lattice().name(o.lattice().bottom()), "D(0)");
        assert_eq!(o.lattice().name(o.lattice().top()), "D(1)");
    }

    #[test]
    fn z6_min_is_larger() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let l = Limits::default();
        let min = omega1(&r, TopologyTag::Min, &l).unwrap();
        let zar = omega1(&r, TopologyTag::Zar, &l).unwrap();
        assert!(min.len() > zar.len());
        let map = comparison_map(&min, &zar, &l).unwrap();
        assert!((0..zar.len()).all(|c| map.contains(&c)));
    }

    #[test]
    fn polynomial_two_vars() {
        let r = WAlgebra::from(MonomialAlgebra::polynomial(2));
        let o = omega1(&r, TopologyTag::Zar, &Limits::default()).unwrap();
        assert_eq!(o.len(), 6);
        let c = o.class_of(&[r.parse("x1^2").unwrap()], &Limits::default()).unwrap();
        assert_eq!(o.lattice().name(c), "D(x1)");
    }

    #[test]
    fn trivial_algebra_has_one_class() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(1));
        assert_eq!(omega1(&r, TopologyTag::Zar, &Limits::default()).unwrap().len(), 1);
    }
}
