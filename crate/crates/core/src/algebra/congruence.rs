use super::{RModule, UnionFind};
use crate::error::{Error, Result};

/// A module congruence on a finite [`RModule`], stored as canonical class labels.
///
/// `label[m]` is the least element of the class of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    label: Vec<usize>,
}

impl Congruence {
    /// The least congruence containing `pairs`: an equivalence closed under the
    /// action and under translation by the additive operator.
    pub fn generated(m: &RModule, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::generated_above(m, &Congruence::diagonal(m.len()), pairs)
    }

    pub fn diagonal(n: usize) -> Self {
        Congruence {
            label: (0..n).collect(),
        }
    }

    fn generated_above(m: &RModule, base: &Congruence, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = m.len();
        if base.label.len() != n {
            return Err(Error::MixedParents);
        }
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::UnknownElement(format!("pair ({a}, {b})")));
        }
        let mut uf = UnionFind::new(n);
        let mut queue: Vec<(usize, usize)> = pairs.to_vec();
        queue.extend((0..n).map(|x| (x, base.label[x])));
        let rlen = m.parent().len();
        while let Some((a, b)) = queue.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for r in 0..rlen {
                queue.push((m.act(r, a), m.act(r, b)));
            }
            if m.has_addition() {
                for c in 0..n {
                    queue.push((m.add(a, c).unwrap(), m.add(b, c).unwrap()));
                }
            }
        }
        // union keeps the smaller root, so roots are class minima
        let label = (0..n).map(|x| uf.find(x)).collect();
        Ok(Congruence { label })
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn label(&self, x: usize) -> usize {
        self.label[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.label[a] == self.label[b]
    }

    pub fn class_count(&self) -> usize {
        (0..self.label.len()).filter(|&x| self.label[x] == x).count()
    }

    /// Everything in one class.
    pub fn is_total(&self) -> bool {
        self.class_count() <= 1
    }

    /// For a congruence on `R` itself: contains `(1, 0)`.
    pub fn is_unital(&self, regular: &RModule) -> bool {
        let r = regular.parent();
        self.related(r.one(), r.zero())
    }

    pub fn contains(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| self.related(x, other.label[x]))
    }

    /// All generating pairs `(x, label(x))`; rerunning closure on them is idempotent.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&x| self.label[x] != x).map(|x| (x, self.label[x])).collect()
    }

    /// A congruence maximal among the non-unital congruences containing `self`.
    ///
    /// Greedy: try merging each pair in turn and keep the merge when the
    /// result stays non-unital. Any pair rejected once stays rejected since
    /// later congruences are larger, so the result is maximal.
    pub fn maximal_above(&self, regular: &RModule) -> Result<Congruence> {
        if self.is_unital(regular) {
            return Err(Error::UnitalCongruence);
        }
        let n = regular.len();
        let mut current = self.clone();
        for a in 0..n {
            for b in a + 1..n {
                if current.related(a, b) {
                    continue;
                }
                let merged = Congruence::generated_above(regular, &current, &[(a, b)])?;
                if !merged.is_unital(regular) {
                    current = merged;
                }
            }
        }
        Ok(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;

    #[test]
    fn x_to_zero_in_truncation() {
        let r = FiniteAlgebra::truncated_power(3);
        let m = RModule::regular(&r);
        let x = r.index_of("x").unwrap();
        let c = Congruence::generated(&m, &[(x, r.zero())]).unwrap();
        assert_eq!(c.class_count(), 2);
        let q = m.quotient(&c);
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn unital_rejected() {
        let r = FiniteAlgebra::zmod(6);
        let m = RModule::regular(&r);
        let c = Congruence::generated(&m, &[(r.one(), r.zero())]).unwrap();
        assert!(c.is_total());
        assert_eq!(c.maximal_above(&m).unwrap_err(), Error::UnitalCongruence);
    }

    #[test]
    fn closure_is_idempotent() {
        let r = FiniteAlgebra::zmod(12);
        let m = RModule::regular(&r);
        let c = Congruence::generated(&m, &[(4, 0)]).unwrap();
        let again = Congruence::generated(&m, &c.pairs()).unwrap();
        assert_eq!(c, again);
        assert_eq!(c.class_count(), 4);
    }

    #[test]
    fn maximal_congruences_of_z6() {
        let r = FiniteAlgebra::zmod(6);
        let m = RModule::regular(&r);
        let max = Congruence::diagonal(6).maximal_above(&m).unwrap();
        assert!(!max.is_unital(&m));
        // the quotient is a field
        assert!(max.class_count() == 2 || max.class_count() == 3);
    }
}
