use std::collections::HashMap;

use crate::algebra::{AlgHom, FiniteAlgebra, MonomialAlgebra, WAlgebra};
use crate::error::{Error, Result};

/// `A ×_C B` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub algebra: WAlgebra,
    pub left: AlgHom,
    pub right: AlgHom,
    /// Monomial backend: for each coordinate, the side (`false` = left) and
    /// coordinate whose exponent equals it.
    source: Vec<(bool, usize)>,
}

/// The fiber product of `f: A → C` and `g: B → C`.
///
/// Finite backends: compatible pairs under componentwise operations.
/// Monomial backends: supported when every row of `f` and `g` has at most one
/// entry, equal to ±1, so each coordinate of `C` identifies one coordinate of
/// `A` with one of `B` up to sign. Identifications are solved with a
/// union-find carrying sign parity; each class becomes a coordinate whose
/// range is the intersection of the cones of its members.
pub fn fiber_product(a: &WAlgebra, b: &WAlgebra, c: &WAlgebra, f: &AlgHom, g: &AlgHom) -> Result<FiberProduct> {
    match (a, b, c, f, g) {
        (WAlgebra::Finite(a), WAlgebra::Finite(b), WAlgebra::Finite(_), AlgHom::Table(f), AlgHom::Table(g)) => {
            finite_fiber(a, b, f, g)
        }
        (WAlgebra::Monomial(a), WAlgebra::Monomial(b), WAlgebra::Monomial(c), AlgHom::Matrix(f), AlgHom::Matrix(g)) => {
            monomial_fiber(a, b, c, f, g)
        }
        _ => Err(Error::MixedParents),
    }
}

fn finite_fiber(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &[usize], g: &[usize]) -> Result<FiberProduct> {
    if a.kind() != b.kind() {
        return Err(Error::MixedParents);
    }
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| f[x] == g[y])
        .collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let at = |p: (usize, usize)| index[&p];
    let names = pairs.iter().map(|&(x, y)| format!("({}|{})", a.name(x), b.name(y))).collect();
    let add = a.kind().has_addition().then_some(|p: usize, q: usize| {
        let ((x1, y1), (x2, y2)) = (pairs[p], pairs[q]);
        at((a.add(x1, x2).unwrap(), b.add(y1, y2).unwrap()))
    });
    let algebra = FiniteAlgebra::from_fn(
        a.kind(),
        names,
        |p, q| {
            let ((x1, y1), (x2, y2)) = (pairs[p], pairs[q]);
            at((a.mul(x1, x2), b.mul(y1, y2)))
        },
        add,
        at((a.zero(), b.zero())),
        at((a.one(), b.one())),
    )?;
    Ok(FiberProduct {
        algebra: algebra.into(),
        left: AlgHom::Table(pairs.iter().map(|p| p.0).collect()),
        right: AlgHom::Table(pairs.iter().map(|p| p.1).collect()),
        source: Vec::new(),
    })
}

/// The unique `(coordinate, sign)` of a row, `None` for a zero row.
fn row_entry(row: &[i32]) -> Result<Option<(usize, i32)>> {
    let nz: Vec<(usize, i32)> = row.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
    match nz.as_slice() {
        [] => Ok(None),
        [(i, v)] if v.abs() == 1 => Ok(Some((*i, *v))),
        _ => Err(Error::Unsupported(
            "fiber products of monomial algebras along maps other than signed coordinate identifications".into(),
        )),
    }
}

struct ParityFind {
    parent: Vec<usize>,
    /// value(x) = parity[x] · value(parent[x])
    parity: Vec<i32>,
}

impl ParityFind {
    fn new(n: usize) -> Self {
        ParityFind {
            parent: (0..n).collect(),
            parity: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, i32) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] *= p;
        (root, self.parity[x])
    }

    /// Imposes `value(x) = s · value(y)`; returns false on a sign contradiction.
    fn union(&mut self, x: usize, y: usize, s: i32) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px == s * py;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        // value(rx) = px·value(x) = px·s·py·value(ry)
        self.parity[hi] = px * s * py;
        true
    }
}

fn monomial_fiber(
    a: &MonomialAlgebra,
    b: &MonomialAlgebra,
    c: &MonomialAlgebra,
    f: &[Vec<i32>],
    g: &[Vec<i32>],
) -> Result<FiberProduct> {
    let (ka, kb) = (a.rank(), b.rank());
    if c.is_trivial() {
        return match (a.is_trivial(), b.is_trivial()) {
            (true, _) => Ok(FiberProduct {
                algebra: b.clone().into(),
                left: AlgHom::Matrix(vec![vec![0; kb]; ka]),
                right: AlgHom::identity_matrix(kb),
                source: (0..kb).map(|j| (true, j)).collect(),
            }),
            (_, true) => Ok(FiberProduct {
                algebra: a.clone().into(),
                left: AlgHom::identity_matrix(ka),
                right: AlgHom::Matrix(vec![vec![0; ka]; kb]),
                source: (0..ka).map(|i| (false, i)).collect(),
            }),
            _ => Err(Error::Unsupported(
                "fiber product over the trivial algebra is a disjoint union, which leaves the monomial backend".into(),
            )),
        };
    }
    if a.is_trivial() || b.is_trivial() {
        return Err(Error::CheckFailed("a trivial algebra maps only to trivial algebras".into()));
    }
    let zero = ka + kb;
    let mut uf = ParityFind::new(zero + 1);
    let mut forced = Vec::new();
    for k in 0..c.rank() {
        let fa = row_entry(&f[k])?;
        let gb = row_entry(&g[k])?;
        match (fa, gb) {
            (Some((i, s)), Some((j, t))) => {
                if !uf.union(i, ka + j, s * t) {
                    forced.push(i);
                }
            }
            (Some((i, _)), None) => forced.push(i),
            (None, Some((j, _))) => forced.push(ka + j),
            (None, None) => {}
        }
    }
    for x in forced {
        uf.union(x, zero, 1);
    }
    let inverted = |u: usize| if u < ka { a.inverted()[u] } else { b.inverted()[u - ka] };
    let var = |u: usize| if u < ka { a.vars()[u].clone() } else { b.vars()[u - ka].clone() };
    let zero_root = uf.find(zero).0;
    let mut classes: Vec<(usize, Vec<(usize, i32)>)> = Vec::new();
    for u in 0..zero {
        let (root, p) = uf.find(u);
        if root == zero_root {
            continue;
        }
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push((u, p)),
            None => classes.push((root, vec![(u, p)])),
        }
    }
    // orientation t per class: new coordinate w = t·value(root)
    let mut coords: Vec<(Vec<(usize, i32)>, i32, bool)> = Vec::new();
    for (_, members) in classes {
        let pos = members.iter().any(|&(u, p)| !inverted(u) && p == 1);
        let neg = members.iter().any(|&(u, p)| !inverted(u) && p == -1);
        match (pos, neg) {
            (true, true) => continue,
            (true, false) => coords.push((members, 1, false)),
            (false, true) => coords.push((members, -1, false)),
            (false, false) => {
                let t = members[0].1;
                coords.push((members, t, true));
            }
        }
    }
    let mut names: Vec<String> = Vec::new();
    let mut source = Vec::new();
    for (members, t, _) in &coords {
        let &(u, _) = members.iter().find(|&&(_, p)| p * t == 1).expect("some member has the orientation");
        let mut name = var(u);
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
        source.push(if u < ka { (false, u) } else { (true, u - ka) });
    }
    let n = coords.len();
    let mut left = vec![vec![0; n]; ka];
    let mut right = vec![vec![0; n]; kb];
    for (col, (members, t, _)) in coords.iter().enumerate() {
        for &(u, p) in members {
            if u < ka {
                left[u][col] = p * t;
            } else {
                right[u - ka][col] = p * t;
            }
        }
    }
    let algebra = MonomialAlgebra::new(names, coords.iter().map(|c| c.2).collect())?;
    Ok(FiberProduct {
        algebra: algebra.into(),
        left: AlgHom::Matrix(left),
        right: AlgHom::Matrix(right),
        source,
    })
}

impl FiberProduct {
    /// The map `Z → A ×_C B` induced by `h₁: Z → A` and `h₂: Z → B`.
    pub fn induced(&self, z: &WAlgebra, h1: &AlgHom, h2: &AlgHom) -> Result<AlgHom> {
        let incompatible = || Error::CheckFailed("maps into the factors disagree over the base".into());
        match (&self.algebra, h1, h2) {
            (WAlgebra::Finite(p), AlgHom::Table(t1), AlgHom::Table(t2)) => {
                let (AlgHom::Table(l), AlgHom::Table(r)) = (&self.left, &self.right) else {
                    unreachable!("finite projections are tables")
                };
                let index: HashMap<(usize, usize), usize> = (0..p.len()).map(|i| ((l[i], r[i]), i)).collect();
                let table = t1
                    .iter()
                    .zip(t2)
                    .map(|(&x, &y)| index.get(&(x, y)).copied().ok_or_else(incompatible))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AlgHom::Table(table))
            }
            (WAlgebra::Monomial(p), AlgHom::Matrix(m1), AlgHom::Matrix(m2)) => {
                let kz = z.as_monomial().map_or(0, |m| m.rank());
                if p.is_trivial() {
                    return Ok(AlgHom::Matrix(vec![vec![0; kz]; p.rank()]));
                }
                let rows: Vec<Vec<i32>> =
                    self.source.iter().map(|&(side, i)| if side { m2[i].clone() } else { m1[i].clone() }).collect();
                let q = AlgHom::Matrix(rows);
                if z.as_monomial().is_some_and(|m| !m.is_trivial())
                    && (q.then(&self.left) != *h1 || q.then(&self.right) != *h2)
                {
                    return Err(incompatible());
                }
                Ok(q)
            }
            _ => Err(Error::MixedParents),
        }
    }
}

/// True when `h: src → dst` is an isomorphism.
///
/// Monomial maps must be signed permutation matrices whose transpose is a
/// homomorphism back.
pub fn is_iso(src: &WAlgebra, dst: &WAlgebra, h: &AlgHom) -> bool {
    match (src, dst, h) {
        (WAlgebra::Finite(a), WAlgebra::Finite(b), AlgHom::Table(t)) => {
            if a.len() != b.len() || !a.is_hom(b, t) {
                return false;
            }
            let mut seen = vec![false; b.len()];
            t.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }
        (WAlgebra::Monomial(a), WAlgebra::Monomial(b), AlgHom::Matrix(rows)) => {
            if a.is_trivial() || b.is_trivial() {
                return a.is_trivial() && b.is_trivial();
            }
            let k = a.rank();
            if b.rank() != k || rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return false;
            }
            let signed_perm = rows.iter().all(|r| r.iter().filter(|&&v| v != 0).count() == 1 && r.iter().all(|v| v.abs() <= 1))
                && (0..k).all(|j| rows.iter().filter(|r| r[j] != 0).count() == 1);
            signed_perm && src.is_hom(dst, h) && dst.is_hom(src, &transpose(h))
        }
        _ => false,
    }
}

pub(crate) fn transpose(h: &AlgHom) -> AlgHom {
    match h {
        AlgHom::Matrix(rows) => {
            let cols = rows.first().map_or(0, |r| r.len());
            AlgHom::Matrix((0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect())
        }
        AlgHom::Table(_) => panic!("transpose of a table hom"),
    }
}

/// An isomorphism between two algebras, if one exists.
///
/// Monomial algebras `ℕᵃ × ℤᵇ ∪ {0}` are classified by `(a, b)`; the witness
/// pairs free coordinates and inverted coordinates in order.
pub fn find_iso(src: &WAlgebra, dst: &WAlgebra) -> Option<AlgHom> {
    match (src, dst) {
        (WAlgebra::Finite(a), WAlgebra::Finite(b)) => a.find_isomorphism(b).map(AlgHom::Table),
        (WAlgebra::Monomial(a), WAlgebra::Monomial(b)) => {
            if a.is_trivial() || b.is_trivial() {
                return (a.is_trivial() && b.is_trivial()).then(|| AlgHom::Matrix(vec![vec![0; a.rank()]; b.rank()]));
            }
            let split = |m: &MonomialAlgebra| -> (Vec<usize>, Vec<usize>) {
                (0..m.rank()).partition(|&i| !m.inverted()[i])
            };
            let (af, ai) = split(a);
            let (bf, bi) = split(b);
            if af.len() != bf.len() || ai.len() != bi.len() {
                return None;
            }
            let mut rows = vec![vec![0; a.rank()]; b.rank()];
            for (&i, &j) in af.iter().zip(&bf).chain(ai.iter().zip(&bi)) {
                rows[j][i] = 1;
            }
            Some(AlgHom::Matrix(rows))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_sections() {
        let x = MonomialAlgebra::with_vars(&["x"], &[]).unwrap();
        let y = MonomialAlgebra::with_vars(&["y"], &[]).unwrap();
        let yy = MonomialAlgebra::with_vars(&["y"], &["y"]).unwrap();
        let fp = fiber_product(
            &x.into(),
            &y.into(),
            &yy.into(),
            &AlgHom::Matrix(vec![vec![-1]]),
            &AlgHom::identity_matrix(1),
        )
        .unwrap();
        let m = fp.algebra.as_monomial().unwrap();
        assert_eq!(m.rank(), 0);
        assert!(!m.is_trivial());
    }

    #[test]
    fn chart_over_overlap() {
        let x = MonomialAlgebra::with_vars(&["x"], &[]).unwrap();
        let yy = MonomialAlgebra::with_vars(&["y"], &["y"]).unwrap();
        let fp = fiber_product(
            &x.clone().into(),
            &yy.clone().into(),
            &yy.into(),
            &AlgHom::Matrix(vec![vec![-1]]),
            &AlgHom::identity_matrix(1),
        )
        .unwrap();
        assert!(find_iso(&fp.algebra, &x.into()).is_some());
    }

    #[test]
    fn finite_pullback_of_projections() {
        let z6 = FiniteAlgebra::zmod(6);
        let z2 = FiniteAlgebra::zmod(2);
        let z3 = FiniteAlgebra::zmod(3);
        let one = FiniteAlgebra::zmod(1);
        let fp = fiber_product(
            &z2.into(),
            &z3.into(),
            &one.into(),
            &AlgHom::Table(vec![0, 0]),
            &AlgHom::Table(vec![0, 0, 0]),
        )
        .unwrap();
        let WAlgebra::Finite(p) = &fp.algebra else { panic!() };
        assert!(p.find_isomorphism(&z6).is_some());
    }

    #[test]
    fn iso_checks() {
        let a = WAlgebra::from(MonomialAlgebra::with_vars(&["x", "y"], &["y"]).unwrap());
        let swap = AlgHom::Matrix(vec![vec![1, 0], vec![0, -1]]);
        assert!(is_iso(&a, &a, &swap));
        let bad = AlgHom::Matrix(vec![vec![-1, 0], vec![0, 1]]);
        assert!(!is_iso(&a, &a, &bad));
    }
}
