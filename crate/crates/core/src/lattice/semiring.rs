use super::DistLattice;
use crate::error::{Error, Result};

/// A finite semiring with idempotent addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSemiring {
    names: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

/// The radical quotient `S → rad(S)`: `map[a]` is the lattice class of `a`.
#[derive(Clone, Debug)]
pub struct RadQuotient {
    pub lattice: DistLattice,
    pub map: Vec<usize>,
}

impl IdempotentSemiring {
    /// Builds and validates a semiring from operation closures.
    pub fn from_fn<A, M>(names: Vec<String>, add: A, mul: M, zero: usize, one: usize) -> Result<Self>
    where
        A: Fn(usize, usize) -> usize,
        M: Fn(usize, usize) -> usize,
    {
        let n = names.len();
        if n == 0 || zero >= n || one >= n {
            return Err(Error::axiom("carrier", "empty carrier or units out of range"));
        }
        let mut at = vec![0; n * n];
        let mut mt = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                at[a * n + b] = add(a, b);
                mt[a * n + b] = mul(a, b);
                if at[a * n + b] >= n || mt[a * n + b] >= n {
                    return Err(Error::axiom(
                        "closure",
                        format!("({}, {})", names[a], names[b]),
                    ));
                }
            }
        }
        let s = IdempotentSemiring {
            names,
            add: at,
            mul: mt,
            zero,
            one,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_tables(
        names: Vec<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = names.len();
        if add.len() != n || mul.len() != n || add.iter().chain(mul).any(|r| r.len() != n) {
            return Err(Error::axiom("closure", "table dimensions do not match the carrier"));
        }
        Self::from_fn(names, |a, b| add[a][b], |a, b| mul[a][b], zero, one)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let w = |xs: &[usize]| {
            let parts: Vec<&str> = xs.iter().map(|&x| self.names[x].as_str()).collect();
            format!("({})", parts.join(", "))
        };
        for a in 0..n {
            if self.add(a, a) != a {
                return Err(Error::axiom("idempotent addition", w(&[a])));
            }
            if self.add(a, self.zero) != a {
                return Err(Error::axiom("additive unit", w(&[a])));
            }
            if self.mul(a, self.one) != a {
                return Err(Error::axiom("multiplicative unit", w(&[a])));
            }
            if self.mul(a, self.zero) != self.zero {
                return Err(Error::axiom("zero absorbs multiplication", w(&[a])));
            }
            if self.add(a, self.one) != self.one {
                return Err(Error::axiom("one absorbs addition", w(&[a])));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::axiom("commutative addition", w(&[a, b])));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::axiom("commutative multiplication", w(&[a, b])));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::axiom("associative addition", w(&[a, b, c])));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::axiom("associative multiplication", w(&[a, b, c])));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::axiom("distribution", w(&[a, b, c])));
                    }
                }
            }
        }
        // with idempotent, commutative, associative addition the derived order
        // is automatically a partial order; check it explicitly anyway
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::axiom("antisymmetric order", w(&[a, b])));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The derived order `a ≤ b ⇔ a + b = b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.add(a, b) == b
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn has_idempotent_mul(&self) -> bool {
        (0..self.len()).all(|a| self.mul(a, a) == a)
    }

    /// Reads the semiring as a lattice (`+` becomes join, `×` meet).
    pub fn to_lattice(&self) -> Result<DistLattice> {
        if let Some(a) = (0..self.len()).find(|&a| self.mul(a, a) != a) {
            return Err(Error::NotALattice(format!(
                "multiplication is not idempotent at {}",
                self.names[a]
            )));
        }
        let l = DistLattice::from_order(self.names.clone(), |a, b| self.leq(a, b))?;
        for a in 0..self.len() {
            for b in 0..self.len() {
                if l.join(a, b) != self.add(a, b) || l.meet(a, b) != self.mul(a, b) {
                    return Err(Error::NotALattice(format!(
                        "operations disagree with the order at ({}, {})",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        Ok(l)
    }

    pub fn from_lattice(l: &DistLattice) -> IdempotentSemiring {
        Self::from_fn(
            l.names().to_vec(),
            |a, b| l.join(a, b),
            |a, b| l.meet(a, b),
            l.bottom(),
            l.top(),
        )
        .expect("distributive lattices are idempotent semirings")
    }

    /// The radical quotient by `a ≡ b ⇔ aᴺ ≤ b and bᴺ ≤ a` with `N = |S|`.
    ///
    /// Powers descend in the order (`a ≤ 1`), so testing the single exponent
    /// `N` is equivalent to searching all `n ≤ N`.
    pub fn rad(&self) -> Result<RadQuotient> {
        let n = self.len();
        let big = n.max(1);
        let powers: Vec<usize> = (0..n).map(|a| self.pow(a, big)).collect();
        let below = |a: usize, b: usize| self.leq(powers[a], b);
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for b in a..n {
                if class[b] == usize::MAX && below(a, b) && below(b, a) {
                    class[b] = id;
                }
            }
        }
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let lattice = DistLattice::from_order(names, |x, y| below(reps[x], reps[y]))?;
        for a in 0..n {
            for b in 0..n {
                if class[self.add(a, b)] != lattice.join(class[a], class[b])
                    || class[self.mul(a, b)] != lattice.meet(class[a], class[b])
                {
                    return Err(Error::CheckFailed(format!(
                        "radical quotient does not respect operations at ({}, {})",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        Ok(RadQuotient {
            lattice,
            map: class,
        })
    }
}
