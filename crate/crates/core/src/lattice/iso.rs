use super::DistLattice;

/// An explicit lattice isomorphism, `map[a]` is the image of element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    pub map: Vec<usize>,
}

impl LatticeIso {
    pub fn inverse(&self) -> LatticeIso {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        LatticeIso { map: inv }
    }
}

/// True when `map` preserves 0, 1, join and meet.
pub fn is_homomorphism(src: &DistLattice, dst: &DistLattice, map: &[usize]) -> bool {
    if map.len() != src.len() || map.iter().any(|&b| b >= dst.len()) {
        return false;
    }
    if map[src.bottom()] != dst.bottom() || map[src.top()] != dst.top() {
        return false;
    }
    (0..src.len()).all(|a| {
        (0..src.len()).all(|b| {
            map[src.join(a, b)] == dst.join(map[a], map[b])
                && map[src.meet(a, b)] == dst.meet(map[a], map[b])
        })
    })
}

fn signature(l: &DistLattice, x: usize) -> (usize, usize, usize, usize) {
    let n = l.len();
    let below = (0..n).filter(|&y| l.leq(y, x)).count();
    let above = (0..n).filter(|&y| l.leq(x, y)).count();
    let covers = l.covers();
    let lower = covers.iter().filter(|&&(_, b)| b == x).count();
    let upper = covers.iter().filter(|&&(a, _)| a == x).count();
    (below, above, lower, upper)
}

/// Order isomorphism search by backtracking with invariant pruning.
///
/// For lattices an order isomorphism is automatically a lattice isomorphism.
pub fn find_isomorphism(a: &DistLattice, b: &DistLattice) -> Option<LatticeIso> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sa: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    let mut ms = sa.clone();
    let mut mt = sb.clone();
    ms.sort();
    mt.sort();
    if ms != mt {
        return None;
    }
    // assign in order of increasing down-set size so constraints bite early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (sa[x].0, x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sa, &sb, &order, 0, &mut map, &mut used) {
        Some(LatticeIso { map })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &DistLattice,
    b: &DistLattice,
    sa: &[(usize, usize, usize, usize)],
    sb: &[(usize, usize, usize, usize)],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.len() {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&z| {
            let fz = map[z];
            a.leq(x, z) == b.leq(y, fz) && a.leq(z, x) == b.leq(fz, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, sa, sb, order, depth + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_vs_boolean() {
        assert!(find_isomorphism(&DistLattice::chain(4), &DistLattice::boolean(2)).is_none());
        let iso = find_isomorphism(&DistLattice::chain(3), &DistLattice::chain(3)).unwrap();
        assert_eq!(iso.map, vec![0, 1, 2]);
    }

    #[test]
    fn iso_is_homomorphism() {
        let b3 = DistLattice::boolean(3);
        let p = DistLattice::boolean(1).product(&DistLattice::boolean(2));
        let iso = find_isomorphism(&b3, &p).unwrap();
        assert!(is_homomorphism(&b3, &p, &iso.map));
        assert!(is_homomorphism(&p, &b3, &iso.inverse().map));
    }
}
