use super::{find_isomorphism, mask_name, DistLattice};

/// The lattice of down-sets of a finite poset given by `leq` on `0..n`.
pub fn downset_lattice(n: usize, leq: impl Fn(usize, usize) -> bool) -> DistLattice {
    assert!(n < 64, "poset too large for bitmask down-sets");
    let below: Vec<u64> = (0..n)
        .map(|x| (0..n).filter(|&y| leq(y, x)).fold(0u64, |m, y| m | 1 << y))
        .collect();
    let mut sets = Vec::new();
    // down-sets are unions of principal down-sets; close {∅} under adding one
    let mut frontier = vec![0u64];
    let mut seen = std::collections::HashSet::new();
    seen.insert(0u64);
    while let Some(d) = frontier.pop() {
        sets.push(d);
        for b in &below {
            let next = d | b;
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    sets.sort_by_key(|&d| (d.count_ones(), d));
    let names = sets.iter().map(|&d| mask_name(d as usize)).collect();
    DistLattice::from_order(names, |a, b| sets[a] & !sets[b] == 0)
        .expect("down-set lattices are distributive")
}

/// Every distributive lattice with at most `max` elements, one per isomorphism class.
///
/// By Birkhoff every finite distributive lattice is `D(P)` for a poset `P`.
/// Posets are grown one maximal element at a time; the new element's strict
/// down-set is any down-set of the current poset. Branches are pruned once
/// `|D(P)|` exceeds `max` (it only grows) and deduplicated by lattice isomorphism.
pub fn all_distributive_lattices(max: usize) -> Vec<DistLattice> {
    let mut found: Vec<DistLattice> = Vec::new();
    if max >= 1 {
        found.push(DistLattice::chain(1));
    }
    // each poset as a list of strict down-set masks
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    while !level.is_empty() {
        let mut next_level: Vec<(Vec<u64>, DistLattice)> = Vec::new();
        for poset in &level {
            let n = poset.len();
            let current = poset_lattice(poset);
            let downsets: Vec<u64> = current
                .names()
                .iter()
                .map(|name| parse_mask(name))
                .collect();
            for &d in &downsets {
                let mut grown = poset.clone();
                grown.push(d);
                debug_assert_eq!(grown.len(), n + 1);
                let l = poset_lattice(&grown);
                if l.len() > max {
                    continue;
                }
                if next_level.iter().any(|(_, m)| find_isomorphism(m, &l).is_some()) {
                    continue;
                }
                next_level.push((grown, l));
            }
        }
        for (_, l) in &next_level {
            found.push(l.clone());
        }
        level = next_level.into_iter().map(|(p, _)| p).collect();
    }
    found.sort_by_key(|l| l.len());
    found
}

fn poset_lattice(strict_below: &[u64]) -> DistLattice {
    let n = strict_below.len();
    downset_lattice(n, |y, x| y == x || strict_below[x] >> y & 1 == 1)
}

fn parse_mask(name: &str) -> u64 {
    name.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| 1u64 << s.parse::<u32>().expect("mask names list indices"))
        .fold(0, |m, b| m | b)
}

/// The free distributive lattice on two generators, with `0` and `1` adjoined.
///
/// Elements are monotone Boolean functions of `(x, y)` encoded as truth tables
/// over the four inputs, closed under pointwise `∧` and `∨`.
pub fn free_distributive_lattice_2() -> DistLattice {
    // bit i of a table is the value at input (x, y) = (i & 1, i >> 1)
    let x: u8 = 0b1010;
    let y: u8 = 0b1100;
    let mut elems = vec![0u8, 0b1111, x, y];
    loop {
        let mut grew = false;
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                for v in [elems[i] & elems[j], elems[i] | elems[j]] {
                    if !elems.contains(&v) {
                        elems.push(v);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let name = |t: u8| match t {
        0 => "0".to_string(),
        0b1111 => "1".to_string(),
        0b1010 => "x".to_string(),
        0b1100 => "y".to_string(),
        0b1000 => "x∧y".to_string(),
        0b1110 => "x∨y".to_string(),
        other => format!("t{other}"),
    };
    let names = elems.iter().map(|&t| name(t)).collect();
    DistLattice::from_order(names, |a, b| elems[a] & !elems[b] == 0)
        .expect("monotone functions form a distributive lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let all = all_distributive_lattices(8);
        let counts: Vec<usize> = (1..=8).map(|k| all.iter().filter(|l| l.len() == k).count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn free_lattice_has_six_elements() {
        let f = free_distributive_lattice_2();
        assert_eq!(f.len(), 6);
        // x∧y, x, y and the adjoined top
        assert_eq!(f.join_irreducibles().len(), 4);
    }

    #[test]
    fn downsets_of_antichain_are_boolean() {
        let l = downset_lattice(3, |a, b| a == b);
        assert!(find_isomorphism(&l, &DistLattice::boolean(3)).is_some());
    }
}
