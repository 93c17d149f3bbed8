use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{is_homomorphism, DistLattice, LatticeIso};
use crate::error::{Error, Result};

/// A finite coherent space: points, a lattice of opens and the membership relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentSpace {
    points: Vec<String>,
    opens: DistLattice,
    members: Vec<Vec<bool>>,
}

/// The output of [`pt`]: the space plus the hom `L → 𝟏` behind every point.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub space: CoherentSpace,
    /// `homs[p][a]` is `p(a)`.
    pub homs: Vec<Vec<bool>>,
    /// The least element sent to 1 by each point.
    pub generators: Vec<usize>,
}

/// A lattice of lower sets of some lattice `L`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub lattice: DistLattice,
    /// Membership vector over `L` for each element of `lattice`.
    pub sets: Vec<Vec<bool>>,
    /// `principal[a]` is the element `↓a`, when it belongs to the family.
    pub principal: Vec<Option<usize>>,
}

impl CoherentSpace {
    /// Assembles a space and validates every invariant.
    pub fn new(points: Vec<String>, opens: DistLattice, members: Vec<Vec<bool>>) -> Result<Self> {
        let s = CoherentSpace {
            points,
            opens,
            members,
        };
        s.check_invariants()?;
        Ok(s)
    }

    /// Builds the space whose opens are exactly the given point sets.
    ///
    /// The family must contain the empty and the full set and be closed under
    /// union and intersection. Opens are sorted by size, then lexicographically.
    pub fn from_open_sets(points: Vec<String>, sets: Vec<Vec<bool>>) -> Result<Self> {
        let n = points.len();
        let mut uniq: Vec<Vec<bool>> = sets
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if uniq.iter().any(|s| s.len() != n) {
            return Err(Error::CheckFailed("open set has the wrong length".into()));
        }
        uniq.sort_by_key(|s| (s.iter().filter(|&&b| b).count(), s.iter().map(|&b| !b).collect::<Vec<_>>()));
        let names = uniq
            .iter()
            .map(|s| {
                let parts: Vec<&str> = (0..n).filter(|&p| s[p]).map(|p| points[p].as_str()).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let opens = DistLattice::from_order(names, |a, b| subset(&uniq[a], &uniq[b]))?;
        Self::new(points, opens, uniq)
    }

    /// The topology generated by `basics`: closure under finite unions and intersections.
    pub fn generated_by(points: Vec<String>, basics: &[Vec<bool>]) -> Result<Self> {
        let n = points.len();
        let mut family: HashSet<Vec<bool>> = HashSet::new();
        family.insert(vec![false; n]);
        family.insert(vec![true; n]);
        family.extend(basics.iter().cloned());
        loop {
            let current: Vec<Vec<bool>> = family.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let u: Vec<bool> = a.iter().zip(b).map(|(x, y)| *x || *y).collect();
                    let i: Vec<bool> = a.iter().zip(b).map(|(x, y)| *x && *y).collect();
                    grew |= family.insert(u);
                    grew |= family.insert(i);
                }
            }
            if !grew {
                break;
            }
        }
        Self::from_open_sets(points, family.into_iter().collect())
    }

    pub fn check_invariants(&self) -> Result<()> {
        let o = &self.opens;
        let np = self.points.len();
        if self.members.len() != o.len() || self.members.iter().any(|m| m.len() != np) {
            return Err(Error::CheckFailed("membership matrix has the wrong shape".into()));
        }
        for p in 0..np {
            if self.members[o.bottom()][p] {
                return Err(Error::CheckFailed(format!("point {} lies in bottom", self.points[p])));
            }
            if !self.members[o.top()][p] {
                return Err(Error::CheckFailed(format!("point {} misses top", self.points[p])));
            }
        }
        for a in 0..o.len() {
            for b in 0..o.len() {
                for p in 0..np {
                    let (ia, ib) = (self.members[a][p], self.members[b][p]);
                    if self.members[o.join(a, b)][p] != (ia || ib)
                        || self.members[o.meet(a, b)][p] != (ia && ib)
                    {
                        return Err(Error::CheckFailed(format!(
                            "membership of {} does not respect ({}, {})",
                            self.points[p],
                            o.name(a),
                            o.name(b)
                        )));
                    }
                }
                if a < b && self.members[a] == self.members[b] {
                    return Err(Error::CheckFailed(format!(
                        "opens {} and {} are not separated by points",
                        o.name(a),
                        o.name(b)
                    )));
                }
            }
        }
        for p in 0..np {
            for q in p + 1..np {
                if self.specializes(p, q) && self.specializes(q, p) {
                    return Err(Error::CheckFailed(format!(
                        "points {} and {} are topologically indistinguishable",
                        self.points[p], self.points[q]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn opens(&self) -> &DistLattice {
        &self.opens
    }

    pub fn contains(&self, point: usize, open: usize) -> bool {
        self.members[open][point]
    }

    pub fn open_set(&self, open: usize) -> &[bool] {
        &self.members[open]
    }

    pub fn open_of_set(&self, set: &[bool]) -> Option<usize> {
        self.members.iter().position(|m| m.as_slice() == set)
    }

    /// `p ≼ q`: every open containing `p` contains `q`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.members.iter().all(|m| !m[p] || m[q])
    }

    /// Points whose closure `{q | q ≼ p}` is the singleton.
    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| (0..self.points.len()).all(|q| q == p || !self.specializes(q, p)))
            .collect()
    }

    /// The smallest open containing `p`.
    pub fn minimal_open(&self, p: usize) -> usize {
        self.opens
            .meet_all((0..self.opens.len()).filter(|&u| self.members[u][p]))
    }

    /// Hasse edges `(p, q)` of the specialization order, `p ≼ q`, `p ≠ q`.
    pub fn specialization_covers(&self) -> Vec<(usize, usize)> {
        let n = self.points.len();
        let strict = |p: usize, q: usize| p != q && self.specializes(p, q);
        let mut edges = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if strict(p, q) && !(0..n).any(|r| strict(p, r) && strict(r, q)) {
                    edges.push((p, q));
                }
            }
        }
        edges
    }

    pub fn with_point_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.points.len() {
            return Err(Error::CheckFailed("point rename changes the point count".into()));
        }
        Self::new(names, self.opens.clone(), self.members.clone())
    }

    pub fn with_open_names(&self, names: Vec<String>) -> Result<Self> {
        Ok(CoherentSpace {
            points: self.points.clone(),
            opens: self.opens.renamed(names)?,
            members: self.members.clone(),
        })
    }
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !*x || *y)
}

/// Points of `L`: lattice homomorphisms `L → 𝟏`.
///
/// A hom is determined by its filter `p⁻¹(1)`, which in a finite lattice is
/// principal, so candidates are the up-sets `↑m`.
pub fn pt(l: &DistLattice) -> PointSet {
    let n = l.len();
    let mut homs = Vec::new();
    let mut generators = Vec::new();
    for m in 0..n {
        let p: Vec<bool> = (0..n).map(|x| l.leq(m, x)).collect();
        let hom = !p[l.bottom()]
            && p[l.top()]
            && (0..n).all(|x| {
                (0..n).all(|y| p[l.join(x, y)] == (p[x] || p[y]) && p[l.meet(x, y)] == (p[x] && p[y]))
            });
        if hom {
            homs.push(p);
            generators.push(m);
        }
    }
    let points: Vec<String> = generators.iter().map(|&m| l.name(m).to_string()).collect();
    let members = (0..n)
        .map(|a| homs.iter().map(|h| h[a]).collect())
        .collect();
    let space = CoherentSpace::new(points, l.clone(), members)
        .expect("prime filters of a finite distributive lattice separate its elements");
    PointSet {
        space,
        homs,
        generators,
    }
}

/// All non-empty lower sets of `l`, enumerated breadth first.
fn lower_sets(l: &DistLattice, budget: usize) -> Result<Vec<Vec<bool>>> {
    let n = l.len();
    let mut start = vec![false; n];
    start[l.bottom()] = true;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(d) = queue.pop_front() {
        for x in 0..n {
            if d[x] || !(0..n).all(|y| y == x || !l.leq(y, x) || d[y]) {
                continue;
            }
            let mut next = d.clone();
            next[x] = true;
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::guard("lower sets", seen.len(), budget));
                }
                queue.push_back(next);
            }
        }
        out.push(d);
    }
    Ok(out)
}

fn generated_lower_set(l: &DistLattice, gens: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut out = vec![false; l.len()];
    for g in gens {
        for (y, slot) in out.iter_mut().enumerate() {
            if l.leq(y, g) {
                *slot = true;
            }
        }
    }
    out
}

fn completion(l: &DistLattice, sets: Vec<Vec<bool>>, label: impl Fn(&[bool]) -> String) -> Result<Completion> {
    let names = sets.iter().map(|s| label(s)).collect();
    let lattice = DistLattice::from_order(names, |a, b| subset(&sets[a], &sets[b]))?;
    let principal = (0..l.len())
        .map(|a| {
            let d = l.down_set(a);
            sets.iter().position(|s| *s == d)
        })
        .collect();
    Ok(Completion {
        lattice,
        sets,
        principal,
    })
}

fn set_label(l: &DistLattice, s: &[bool]) -> String {
    let maximal: Vec<&str> = (0..l.len())
        .filter(|&x| s[x] && !(0..l.len()).any(|y| y != x && s[y] && l.leq(x, y)))
        .map(|x| l.name(x))
        .collect();
    format!("↓{{{}}}", maximal.join(","))
}

/// The lattice of all non-empty lower sets under union and intersection.
pub fn lower_set_lattice(l: &DistLattice, budget: usize) -> Result<Completion> {
    let mut sets = lower_sets(l, budget)?;
    sets.sort_by_key(|s| (s.iter().filter(|&&b| b).count(), s.iter().map(|&b| !b).collect::<Vec<_>>()));
    completion(l, sets, |s| set_label(l, s))
}

/// `comp(L)`: non-empty lower sets closed under binary joins (the ideals of `L`).
///
/// Join and meet are the lower sets generated by pairwise `s∨t` and `s∧t`.
/// In a finite lattice every such set is principal, so the candidates are the
/// down-sets `↓x`; each is verified rather than assumed.
pub fn comp(l: &DistLattice, budget: usize) -> Result<Completion> {
    if l.len() > budget {
        return Err(Error::guard("comp carrier", l.len(), budget));
    }
    let mut sets = Vec::new();
    for x in 0..l.len() {
        let d = l.down_set(x);
        let lower = (0..l.len()).all(|a| !d[a] || (0..l.len()).all(|b| !l.leq(b, a) || d[b]));
        let closed = (0..l.len()).all(|a| !d[a] || (0..l.len()).all(|b| !d[b] || d[l.join(a, b)]));
        if !lower || !closed {
            return Err(Error::CheckFailed(format!("↓{} is not an ideal", l.name(x))));
        }
        sets.push(d);
    }
    completion(l, sets, |s| set_label(l, s))
}

impl Completion {
    /// Checks the lattice operations against the pairwise generated lower sets.
    ///
    /// Holds for [`comp`]; [`lower_set_lattice`] uses plain union instead.
    pub fn check_generated_operations(&self, l: &DistLattice) -> Result<()> {
        let members = |s: &[bool]| (0..l.len()).filter(|&x| s[x]).collect::<Vec<_>>();
        for a in 0..self.lattice.len() {
            for b in 0..self.lattice.len() {
                let (sa, sb) = (members(&self.sets[a]), members(&self.sets[b]));
                let joins = sa.iter().flat_map(|&s| sb.iter().map(move |&t| l.join(s, t)));
                let meets = sa.iter().flat_map(|&s| sb.iter().map(move |&t| l.meet(s, t)));
                let gj = generated_lower_set(l, joins);
                let gm = generated_lower_set(l, meets);
                let j = &self.sets[self.lattice.join(a, b)];
                let m = &self.sets[self.lattice.meet(a, b)];
                if gj != *j || gm != *m {
                    return Err(Error::CheckFailed(format!(
                        "operations of {} and {} disagree with generated lower sets",
                        self.lattice.name(a),
                        self.lattice.name(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The Stone round trip `L ≅ Ω_c(pt(comp L))`.
///
/// The opens are read off the constructed space as the topology generated by
/// the images `φ(c)`; the returned map sends `a` to the open `φ(↓a)`.
pub fn stone_roundtrip(l: &DistLattice, budget: usize) -> Result<(LatticeIso, CoherentSpace)> {
    let c = comp(l, budget)?;
    let points = pt(&c.lattice);
    let basics: Vec<Vec<bool>> = (0..c.lattice.len())
        .map(|x| points.space.open_set(x).to_vec())
        .collect();
    let space = CoherentSpace::generated_by(points.space.points().to_vec(), &basics)?;
    let mut map = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let idx = c.principal[a]
            .ok_or_else(|| Error::CheckFailed(format!("↓{} missing from comp", l.name(a))))?;
        let open = space
            .open_of_set(points.space.open_set(idx))
            .ok_or_else(|| Error::CheckFailed(format!("φ(↓{}) is not an open", l.name(a))))?;
        map.push(open);
    }
    let mut hit = vec![false; space.opens().len()];
    for (a, &u) in map.iter().enumerate() {
        if hit[u] {
            return Err(Error::CheckFailed(format!("not injective at {}", l.name(a))));
        }
        hit[u] = true;
    }
    if let Some(u) = hit.iter().position(|h| !h) {
        return Err(Error::CheckFailed(format!(
            "not surjective: open {} has no preimage",
            space.opens().name(u)
        )));
    }
    if !is_homomorphism(l, space.opens(), &map) {
        return Err(Error::CheckFailed("comparison map is not a lattice hom".into()));
    }
    Ok((LatticeIso { map }, space))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> DistLattice {
        DistLattice::boolean(2)
    }

    #[test]
    fn pt_examples() {
        assert_eq!(pt(&DistLattice::chain(1)).space.point_count(), 0);
        assert_eq!(pt(&DistLattice::chain(2)).space.point_count(), 1);
        let s = pt(&DistLattice::chain(3)).space;
        assert_eq!(s.point_count(), 2);
        // Sierpiński: exactly one open point
        let singletons = (0..s.opens().len())
            .filter(|&u| s.open_set(u).iter().filter(|&&b| b).count() == 1)
            .count();
        assert_eq!(singletons, 1);
        assert_eq!(s.closed_points().len(), 1);
    }

    #[test]
    fn comp_examples() {
        assert_eq!(comp(&DistLattice::chain(2), 64).unwrap().lattice.len(), 2);
        assert_eq!(comp(&DistLattice::chain(3), 64).unwrap().lattice.len(), 3);
        assert_eq!(lower_set_lattice(&diamond(), 64).unwrap().lattice.len(), 5);
        let c = comp(&diamond(), 64).unwrap();
        c.check_generated_operations(&diamond()).unwrap();
    }

    #[test]
    fn comp_guard() {
        let err = comp(&DistLattice::chain(10), 4).unwrap_err();
        assert!(err.is_size_guard());
        let err = lower_set_lattice(&DistLattice::boolean(4), 10).unwrap_err();
        assert!(err.is_size_guard());
    }

    #[test]
    fn diamond_round_trip_is_discrete() {
        let (iso, space) = stone_roundtrip(&diamond(), 64).unwrap();
        assert_eq!(iso.map.len(), 4);
        assert_eq!(space.point_count(), 2);
        assert_eq!(space.closed_points().len(), 2);
    }

    #[test]
    fn minimal_open_and_specialization() {
        let s = pt(&DistLattice::chain(3)).space;
        let generic = (0..2).find(|&p| !s.closed_points().contains(&p)).unwrap();
        let u = s.minimal_open(generic);
        assert_eq!(s.open_set(u).iter().filter(|&&b| b).count(), 1);
        assert_eq!(s.specialization_covers().len(), 1);
    }
}
