use super::{Congruence, FiniteAlgebra, FiniteKind};
use crate::error::{Error, Result};

/// A finite module over a finite algebra.
///
/// Pointed sets for monoids, abelian groups for rings, join-semilattices for
/// lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    parent: FiniteAlgebra,
    names: Vec<String>,
    action: Vec<usize>,
    add: Option<Vec<usize>>,
    zero: usize,
}

impl RModule {
    pub fn from_fn<A, P>(
        parent: &FiniteAlgebra,
        names: Vec<String>,
        action: A,
        add: Option<P>,
        zero: usize,
    ) -> Result<Self>
    where
        A: Fn(usize, usize) -> usize,
        P: Fn(usize, usize) -> usize,
    {
        let n = names.len();
        let rn = parent.len();
        if n == 0 || zero >= n {
            return Err(Error::axiom("module carrier", "empty carrier or basepoint out of range"));
        }
        if parent.kind().has_addition() != add.is_some() {
            return Err(Error::axiom("module signature", "addition must match the parent kind"));
        }
        let mut act = vec![0; rn * n];
        for r in 0..rn {
            for m in 0..n {
                let v = action(r, m);
                if v >= n {
                    return Err(Error::axiom("closure of action", format!("({}, {})", parent.name(r), names[m])));
                }
                act[r * n + m] = v;
            }
        }
        let add_table = match add {
            Some(f) => {
                let mut t = vec![0; n * n];
                for a in 0..n {
                    for b in 0..n {
                        let v = f(a, b);
                        if v >= n {
                            return Err(Error::axiom("closure of +", format!("({}, {})", names[a], names[b])));
                        }
                        t[a * n + b] = v;
                    }
                }
                Some(t)
            }
            None => None,
        };
        let m = RModule {
            parent: parent.clone(),
            names,
            action: act,
            add: add_table,
            zero,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn from_tables(
        parent: &FiniteAlgebra,
        names: Vec<String>,
        action: &[Vec<usize>],
        add: Option<&[Vec<usize>]>,
        zero: usize,
    ) -> Result<Self> {
        let n = names.len();
        if action.len() != parent.len() || action.iter().any(|r| r.len() != n) {
            return Err(Error::axiom("module signature", "action table must be |R| × |M|"));
        }
        if add.is_some_and(|t| t.len() != n || t.iter().any(|r| r.len() != n)) {
            return Err(Error::axiom("module signature", "addition table must be square"));
        }
        Self::from_fn(parent, names, |r, m| action[r][m], add.map(|t| move |a: usize, b: usize| t[a][b]), zero)
    }

    fn validate(&self) -> Result<()> {
        let r = &self.parent;
        let n = self.len();
        let w = |s: String| s;
        for m in 0..n {
            if self.act(r.one(), m) != m {
                return Err(Error::axiom("unital action", w(self.names[m].clone())));
            }
            if self.act(r.zero(), m) != self.zero {
                return Err(Error::axiom("0·m = 0", w(self.names[m].clone())));
            }
            for a in 0..r.len() {
                for b in 0..r.len() {
                    if self.act(r.mul(a, b), m) != self.act(a, self.act(b, m)) {
                        return Err(Error::axiom(
                            "associative action",
                            format!("({}, {}, {})", r.name(a), r.name(b), self.names[m]),
                        ));
                    }
                }
            }
        }
        for a in 0..r.len() {
            if self.act(a, self.zero) != self.zero {
                return Err(Error::axiom("r·0 = 0", r.name(a).to_string()));
            }
        }
        if self.add.is_some() {
            let idempotent = r.kind() == FiniteKind::Lattice;
            for x in 0..n {
                if self.add_raw(x, self.zero) != x {
                    return Err(Error::axiom("additive unit", self.names[x].clone()));
                }
                if idempotent && self.add_raw(x, x) != x {
                    return Err(Error::axiom("idempotent +", self.names[x].clone()));
                }
                if !idempotent && !(0..n).any(|y| self.add_raw(x, y) == self.zero) {
                    return Err(Error::axiom("additive inverse", self.names[x].clone()));
                }
                for y in 0..n {
                    if self.add_raw(x, y) != self.add_raw(y, x) {
                        return Err(Error::axiom("commutative +", format!("({}, {})", self.names[x], self.names[y])));
                    }
                    for z in 0..n {
                        if self.add_raw(self.add_raw(x, y), z) != self.add_raw(x, self.add_raw(y, z)) {
                            return Err(Error::axiom(
                                "associative +",
                                format!("({}, {}, {})", self.names[x], self.names[y], self.names[z]),
                            ));
                        }
                    }
                    for a in 0..r.len() {
                        if self.act(a, self.add_raw(x, y)) != self.add_raw(self.act(a, x), self.act(a, y)) {
                            return Err(Error::axiom(
                                "r(m+n) = rm+rn",
                                format!("({}, {}, {})", r.name(a), self.names[x], self.names[y]),
                            ));
                        }
                    }
                }
                for a in 0..r.len() {
                    for b in 0..r.len() {
                        let lhs = self.act(r.add(a, b).unwrap(), x);
                        if lhs != self.add_raw(self.act(a, x), self.act(b, x)) {
                            return Err(Error::axiom(
                                "(r+s)m = rm+sm",
                                format!("({}, {}, {})", r.name(a), r.name(b), self.names[x]),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `R` as a module over itself.
    pub fn regular(r: &FiniteAlgebra) -> Self {
        let add = r.kind().has_addition().then_some(|a: usize, b: usize| r.add(a, b).unwrap());
        Self::from_fn(r, r.names().to_vec(), |a, m| r.mul(a, m), add, r.zero()).expect("R is an R-module")
    }

    pub fn zero_module(r: &FiniteAlgebra) -> Self {
        let add = r.kind().has_addition().then_some(|_: usize, _: usize| 0);
        Self::from_fn(r, vec!["0".into()], |_, _| 0, add, 0).expect("zero module")
    }

    pub fn parent(&self) -> &FiniteAlgebra {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn act(&self, r: usize, m: usize) -> usize {
        self.action[r * self.len() + m]
    }

    pub fn has_addition(&self) -> bool {
        self.add.is_some()
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        self.add.as_ref().expect("module has addition")[a * self.len() + b]
    }

    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.add.as_ref().map(|t| t[a * self.len() + b])
    }

    /// `M_f ≅ eM` over `R_f ≅ eR`; also returns the carrier as indices of `M`.
    pub fn localize(&self, f: usize) -> (RModule, Vec<usize>) {
        let loc = self.parent.localize(f);
        self.localize_at_idempotent(&loc.algebra, &loc.embedding, loc.idempotent)
    }

    pub(crate) fn localize_at_idempotent(
        &self,
        target: &FiniteAlgebra,
        embedding: &[usize],
        e: usize,
    ) -> (RModule, Vec<usize>) {
        let mut carrier: Vec<usize> = (0..self.len()).map(|m| self.act(e, m)).collect();
        carrier.sort_unstable();
        carrier.dedup();
        let pos = |x: usize| carrier.binary_search(&x).expect("eM is closed");
        let names = carrier.iter().map(|&m| self.names[m].clone()).collect();
        let add = self.has_addition().then_some(|a: usize, b: usize| pos(self.add_raw(carrier[a], carrier[b])));
        let m = RModule::from_fn(target, names, |a, x| pos(self.act(embedding[a], carrier[x])), add, pos(self.zero))
            .expect("eM inherits the module axioms");
        (m, carrier)
    }

    /// The quotient by a congruence, classes named by their least element.
    pub fn quotient(&self, c: &Congruence) -> RModule {
        let reps: Vec<usize> = (0..self.len()).filter(|&x| c.label(x) == x).collect();
        let pos = |x: usize| reps.binary_search(&c.label(x)).expect("labels are class minima");
        let names = reps.iter().map(|&x| format!("[{}]", self.names[x])).collect();
        let add = self.has_addition().then_some(|a: usize, b: usize| pos(self.add_raw(reps[a], reps[b])));
        RModule::from_fn(&self.parent, names, |r, x| pos(self.act(r, reps[x])), add, pos(self.zero))
            .expect("congruence quotients are modules")
    }

    /// Module isomorphism onto `other` over the same parent, by backtracking.
    pub fn find_isomorphism(&self, other: &RModule) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.parent != other.parent {
            return None;
        }
        let n = self.len();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.zero] = other.zero;
        used[other.zero] = true;
        let order: Vec<usize> = (0..n).filter(|&x| x != self.zero).collect();
        self.iso_search(other, &order, 0, &mut map, &mut used).then_some(map)
    }

    fn iso_search(
        &self,
        other: &RModule,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let consistent = |map: &[usize]| {
            (0..self.len()).filter(|&x| map[x] != usize::MAX).all(|x| {
                (0..self.parent.len()).all(|r| {
                    let y = map[self.act(r, x)];
                    y == usize::MAX || y == other.act(r, map[x])
                }) && (0..self.len()).filter(|&z| map[z] != usize::MAX).all(|z| match self.add(x, z) {
                    Some(s) => map[s] == usize::MAX || Some(map[s]) == other.add(map[x], map[z]),
                    None => true,
                })
            })
        };
        if !consistent(map) {
            return false;
        }
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..other.len() {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.iso_search(other, order, depth + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_over_z6() {
        let r = FiniteAlgebra::zmod(6);
        let m = RModule::from_fn(&r, vec!["0".into(), "1".into()], |a, x| a * x % 2, Some(|a: usize, b: usize| (a + b) % 2), 0)
            .unwrap();
        assert!(m.localize(2).0.is_zero());
        assert_eq!(m.localize(3).0.len(), 2);
    }

    #[test]
    fn rejects_bad_action() {
        let r = FiniteAlgebra::zmod(2);
        let err = RModule::from_fn(&r, vec!["0".into(), "1".into()], |_, x| x, Some(|a: usize, b: usize| (a + b) % 2), 0)
            .unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }));
    }

    #[test]
    fn regular_module_iso_to_itself() {
        let r = FiniteAlgebra::zmod_monoid(4);
        let m = RModule::regular(&r);
        assert!(m.find_isomorphism(&m).is_some());
        assert!(m.find_isomorphism(&RModule::zero_module(&r)).is_none());
    }
}
