use std::collections::HashMap;

use super::{fiber_product, is_iso, same_map, spec_scheme, FiberProduct, StructureSheaf, WeakScheme};
use crate::algebra::{AlgHom, MonomialAlgebra, WAlgebra};
use crate::error::{Error, Result};
use crate::lattice::{CoherentSpace, DistLattice};
use crate::site::TopologyTag;
use crate::Limits;

/// An isomorphism between the open subschemes `↓U_X` and `↓U_Y`.
#[derive(Clone, Debug)]
pub struct GluingDatum {
    pub open_x: usize,
    pub open_y: usize,
    /// `(V, φ(V))` for every open `V ≤ U_X`.
    pub opens: Vec<(usize, usize)>,
    /// `𝒪_X(V) → 𝒪_Y(φ(V))`, aligned with `opens`.
    pub values: Vec<AlgHom>,
}

impl GluingDatum {
    fn image(&self, v: usize) -> Option<usize> {
        self.opens.iter().find(|p| p.0 == v).map(|p| p.1)
    }

    fn preimage(&self, w: usize) -> Option<usize> {
        self.opens.iter().find(|p| p.1 == w).map(|p| p.0)
    }

    fn value_map(&self, v: usize) -> &AlgHom {
        let i = self.opens.iter().position(|p| p.0 == v).expect("open below U_X");
        &self.values[i]
    }
}

/// Extends an isomorphism `h: 𝒪_X(U_X) → 𝒪_Y(U_Y)` to a gluing datum.
///
/// Each `V ≤ U_X` is the join of `β(U_X)(a)` over pool elements `a` whose
/// support lies below `V`, and goes to the join of `β(U_Y)(h(a))`. Value
/// isomorphisms descend through the restriction maps: finite backends need
/// the restrictions from `U_X` to be surjective, monomial ones reuse `h`.
pub fn glue_along_iso(
    x: &WeakScheme,
    open_x: usize,
    y: &WeakScheme,
    open_y: usize,
    h: &AlgHom,
    limits: &Limits,
) -> Result<GluingDatum> {
    let (ax, ay) = (x.value(open_x), y.value(open_y));
    if !is_iso(ax, ay, h) {
        return Err(Error::CheckFailed("the chart map is not an isomorphism".into()));
    }
    let (lx, ly) = (x.opens(), y.opens());
    let pool = ax.pool(limits.pool_degree);
    let supports: Vec<usize> = pool.iter().map(|a| x.beta(open_x, a)).collect();
    let pushed: Vec<usize> = pool.iter().map(|a| y.beta(open_y, &h.apply(ay, a))).collect();
    let mut opens = Vec::new();
    for v in (0..lx.len()).filter(|&v| lx.leq(v, open_x)) {
        let below: Vec<usize> = (0..pool.len()).filter(|&i| lx.leq(supports[i], v)).collect();
        if lx.join_all(below.iter().map(|&i| supports[i])) != v {
            return Err(Error::PoolTooSmall(format!("{} is not a join of supports", lx.name(v))));
        }
        opens.push((v, ly.join_all(below.iter().map(|&i| pushed[i]))));
    }
    let targets: Vec<usize> = (0..ly.len()).filter(|&w| ly.leq(w, open_y)).collect();
    let bijective = opens.len() == targets.len() && targets.iter().all(|w| opens.iter().any(|p| p.1 == *w));
    let monotone = opens
        .iter()
        .all(|a| opens.iter().all(|b| lx.leq(a.0, b.0) == ly.leq(a.1, b.1)));
    if !bijective || !monotone {
        return Err(Error::CheckFailed("the chart map does not induce an isomorphism of open lattices".into()));
    }
    let mut values = Vec::with_capacity(opens.len());
    for &(v, w) in &opens {
        let (rx, ry) = (x.restriction(open_x, v), y.restriction(open_y, w));
        let (vx, vy) = (x.value(v), y.value(w));
        let q = match (ax, vx, rx, ry) {
            (WAlgebra::Finite(a), WAlgebra::Finite(b), AlgHom::Table(rx), AlgHom::Table(ry)) => {
                let AlgHom::Table(ht) = h else { return Err(Error::MixedParents) };
                let mut table = vec![None; b.len()];
                for s in 0..a.len() {
                    let img = ry[ht[s]];
                    match table[rx[s]] {
                        None => table[rx[s]] = Some(img),
                        Some(prev) if prev != img => {
                            return Err(Error::CheckFailed(format!("the chart map does not descend to {}", lx.name(v))))
                        }
                        Some(_) => {}
                    }
                }
                let table = table.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                    Error::Unsupported(format!("restriction to {} is not surjective", lx.name(v)))
                })?;
                AlgHom::Table(table)
            }
            (WAlgebra::Monomial(_), WAlgebra::Monomial(_), AlgHom::Matrix(_), AlgHom::Matrix(_)) => {
                let k = ax.as_monomial().map_or(0, MonomialAlgebra::rank);
                if !same_map(vx, rx, &AlgHom::identity_matrix(k)) || !same_map(vy, ry, &AlgHom::identity_matrix(k)) {
                    return Err(Error::Unsupported("monomial charts with non-identity restrictions".into()));
                }
                h.clone()
            }
            _ => return Err(Error::MixedParents),
        };
        if !is_iso(vx, vy, &q) {
            return Err(Error::CheckFailed(format!("the chart map is not an isomorphism over {}", lx.name(v))));
        }
        values.push(q);
    }
    let datum = GluingDatum {
        open_x,
        open_y,
        opens,
        values,
    };
    for &(v, w) in &datum.opens {
        for &(v2, w2) in datum.opens.iter().filter(|p| lx.leq(p.0, v)) {
            let down = x.restriction(v, v2).then(datum.value_map(v2));
            let across = datum.value_map(v).then(y.restriction(w, w2));
            if !same_map(y.value(w2), &down, &across) {
                return Err(Error::CheckFailed(format!(
                    "value maps over {} and {} do not commute with restriction",
                    lx.name(v),
                    lx.name(v2)
                )));
            }
        }
    }
    Ok(datum)
}

/// `X ∪_φ Y` with the embeddings of both charts.
#[derive(Clone, Debug)]
pub struct GluedScheme {
    pub scheme: WeakScheme,
    /// Opens of the glued scheme as pairs `(W_X, W_Y)`.
    pub pairs: Vec<(usize, usize)>,
    /// Image of each open of `X` and of `Y`.
    pub from_x: Vec<usize>,
    pub from_y: Vec<usize>,
    /// Image of each point of `X` and of `Y`.
    pub points_x: Vec<usize>,
    pub points_y: Vec<usize>,
    fibers: Vec<FiberProduct>,
}

/// Glues two weak schemes along a gluing datum.
///
/// Opens are the pairs `(W_X, W_Y)` with `φ(W_X ∧ U_X) = W_Y ∧ U_Y`, ordered
/// componentwise; values are the fiber products
/// `𝒪_X(W_X) ×_{𝒪_Y(W_Y ∧ U_Y)} 𝒪_Y(W_Y)`.
pub fn glue(x: &WeakScheme, y: &WeakScheme, datum: &GluingDatum, limits: &Limits) -> Result<GluedScheme> {
    if x.tag != y.tag {
        return Err(Error::MixedParents);
    }
    let (lx, ly) = (x.opens(), y.opens());
    let (ux, uy) = (datum.open_x, datum.open_y);
    let mut pairs = Vec::new();
    for wx in 0..lx.len() {
        let img = datum.image(lx.meet(wx, ux)).expect("meet lies below U_X");
        for wy in (0..ly.len()).filter(|&wy| ly.meet(wy, uy) == img) {
            pairs.push((wx, wy));
        }
    }
    let names: Vec<String> = pairs.iter().map(|&(a, b)| format!("({}|{})", lx.name(a), ly.name(b))).collect();
    let lattice = DistLattice::from_order(names, |i, j| lx.leq(pairs[i].0, pairs[j].0) && ly.leq(pairs[i].1, pairs[j].1))?;

    // points of Y inside U_Y are identified with points of X inside U_X
    let (sx, sy) = (&x.space, &y.space);
    let mut points: Vec<String> = sx.points().to_vec();
    let points_x: Vec<usize> = (0..sx.point_count()).collect();
    let mut points_y = Vec::with_capacity(sy.point_count());
    for q in 0..sy.point_count() {
        if sy.contains(q, uy) {
            let p = (0..sx.point_count())
                .find(|&p| datum.opens.iter().all(|&(v, w)| sx.contains(p, v) == sy.contains(q, w)))
                .ok_or_else(|| Error::CheckFailed(format!("point {} has no partner", sy.points()[q])))?;
            points_y.push(p);
        } else {
            let mut name = sy.points()[q].clone();
            while points.contains(&name) {
                name.push('\'');
            }
            points.push(name);
            points_y.push(points.len() - 1);
        }
    }
    let mut members = vec![vec![false; points.len()]; pairs.len()];
    for (i, &(wx, wy)) in pairs.iter().enumerate() {
        for p in 0..sx.point_count() {
            members[i][points_x[p]] |= sx.contains(p, wx);
        }
        for q in 0..sy.point_count() {
            members[i][points_y[q]] |= sy.contains(q, wy);
        }
    }
    let space = CoherentSpace::new(points, lattice.clone(), members)?;

    let mut fibers = Vec::with_capacity(pairs.len());
    for &(wx, wy) in &pairs {
        let m = ly.meet(wy, uy);
        let mx = lx.meet(wx, ux);
        let f = x.restriction(wx, mx).then(datum.value_map(mx));
        fibers.push(fiber_product(x.value(wx), y.value(wy), y.value(m), &f, y.restriction(wy, m))?);
    }
    let mut restrictions = HashMap::new();
    for (i, &(ax, ay)) in pairs.iter().enumerate() {
        for (j, &(bx, by)) in pairs.iter().enumerate() {
            if lattice.leq(j, i) {
                let h1 = fibers[i].left.then(x.restriction(ax, bx));
                let h2 = fibers[i].right.then(y.restriction(ay, by));
                restrictions.insert((i, j), fibers[j].induced(&fibers[i].algebra, &h1, &h2)?);
            }
        }
    }
    let values = fibers.iter().map(|f| f.algebra.clone()).collect();
    let sheaf = StructureSheaf::new(lattice, values, restrictions)?;
    let scheme = WeakScheme::from_sheaf(x.tag, space, sheaf, limits)?;
    let at = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("compatible pair");
    let from_x = (0..lx.len())
        .map(|wx| at((wx, datum.image(lx.meet(wx, ux)).expect("below U_X"))))
        .collect();
    let from_y = (0..ly.len())
        .map(|wy| at((datum.preimage(ly.meet(wy, uy)).expect("below U_Y"), wy)))
        .collect();
    Ok(GluedScheme {
        scheme,
        pairs,
        from_x,
        from_y,
        points_x,
        points_y,
        fibers,
    })
}

impl GluedScheme {
    /// The glued scheme is the pushout of the charts along the overlap, and
    /// the overlap is their pullback: each chart embeds as an open subscheme,
    /// the two images cover, and they meet exactly in the image of `U`.
    pub fn check_bicartesian(&self, x: &WeakScheme, y: &WeakScheme, datum: &GluingDatum) -> Result<()> {
        let l = self.scheme.opens();
        let (tx, ty) = (self.from_x[x.opens().top()], self.from_y[y.opens().top()]);
        if l.join(tx, ty) != l.top() {
            return Err(Error::CheckFailed("the charts do not cover".into()));
        }
        let overlap = self.from_x[datum.open_x];
        if overlap != self.from_y[datum.open_y] || l.meet(tx, ty) != overlap {
            return Err(Error::CheckFailed("the charts do not meet in the overlap".into()));
        }
        let space = &self.scheme.space;
        for (chart, from, pts, left) in [(x, &self.from_x, &self.points_x, true), (y, &self.from_y, &self.points_y, false)] {
            for w in 0..chart.opens().len() {
                let g = from[w];
                for p in 0..chart.space.point_count() {
                    if chart.space.contains(p, w) != space.contains(pts[p], g) {
                        return Err(Error::CheckFailed(format!("chart open {} moves points", chart.opens().name(w))));
                    }
                }
                let inside = (0..space.point_count()).filter(|&p| space.contains(p, g)).count();
                let before = (0..chart.space.point_count()).filter(|&p| chart.space.contains(p, w)).count();
                if inside != before {
                    return Err(Error::CheckFailed(format!("chart open {} gains points", chart.opens().name(w))));
                }
                let fp = &self.fibers[g];
                let proj = if left { &fp.left } else { &fp.right };
                if !is_iso(&fp.algebra, chart.value(w), proj) {
                    return Err(Error::CheckFailed(format!(
                        "value over chart open {} changes under gluing",
                        chart.opens().name(w)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `ℙ¹`: `Spec 𝔽₁[x]` and `Spec 𝔽₁[y]` glued along `x ↦ y⁻¹`.
pub fn projective_line(limits: &Limits) -> Result<(GluedScheme, [WeakScheme; 2], GluingDatum)> {
    let rx = WAlgebra::from(MonomialAlgebra::with_vars(&["x"], &[])?);
    let ry = WAlgebra::from(MonomialAlgebra::with_vars(&["y"], &[])?);
    let sx = spec_scheme(&rx, TopologyTag::Zar, limits)?;
    let sy = spec_scheme(&ry, TopologyTag::Zar, limits)?;
    let ux = sx.spectrum.basic_open(&rx.parse("x")?, limits)?;
    let uy = sy.spectrum.basic_open(&ry.parse("y")?, limits)?;
    let datum = glue_along_iso(&sx.scheme, ux, &sy.scheme, uy, &AlgHom::Matrix(vec![vec![-1]]), limits)?;
    let glued = glue(&sx.scheme, &sy.scheme, &datum, limits)?;
    Ok((glued, [sx.scheme, sy.scheme], datum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;
    use crate::scheme::is_affine;

    #[test]
    fn projective_line_shape() {
        let l = Limits::default();
        let (p1, [x, y], datum) = projective_line(&l).unwrap();
        assert_eq!(p1.scheme.space.point_count(), 3);
        let gamma = p1.scheme.global_sections().as_monomial().unwrap().clone();
        assert_eq!(gamma.rank(), 0);
        assert!(!gamma.is_trivial());
        p1.scheme.check().unwrap();
        p1.check_bicartesian(&x, &y, &datum).unwrap();
        assert!(!is_affine(&p1.scheme, &l).unwrap().affine);
        for (p, ok) in p1.scheme.stalk_locality(&l).unwrap() {
            assert!(ok, "{p}");
        }
    }

    #[test]
    fn glue_with_itself_along_everything() {
        let l = Limits::default();
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let s = spec_scheme(&r, TopologyTag::Zar, &l).unwrap().scheme;
        let top = s.opens().top();
        let datum = glue_along_iso(&s, top, &s, top, &s.value(top).identity_hom(), &l).unwrap();
        let g = glue(&s, &s, &datum, &l).unwrap();
        assert_eq!(g.scheme.space.point_count(), 2);
        assert_eq!(g.scheme.opens().len(), 4);
        g.check_bicartesian(&s, &s, &datum).unwrap();
        assert!(is_affine(&g.scheme, &l).unwrap().affine);
    }

    #[test]
    fn disjoint_union_of_finite_spectra() {
        let l = Limits::default();
        let a = spec_scheme(&FiniteAlgebra::zmod(2).into(), TopologyTag::Zar, &l).unwrap().scheme;
        let b = spec_scheme(&FiniteAlgebra::zmod(3).into(), TopologyTag::Zar, &l).unwrap().scheme;
        let (ba, bb) = (a.opens().bottom(), b.opens().bottom());
        let h = AlgHom::Table(vec![0]);
        let datum = glue_along_iso(&a, ba, &b, bb, &h, &l).unwrap();
        let g = glue(&a, &b, &datum, &l).unwrap();
        assert_eq!(g.scheme.space.point_count(), 2);
        assert_eq!(g.scheme.global_sections().size(), Some(6));
        assert!(is_affine(&g.scheme, &l).unwrap().affine);
    }
}
