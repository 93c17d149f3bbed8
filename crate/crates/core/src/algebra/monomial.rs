use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::finite::{FiniteAlgebra, FiniteKind};
use crate::error::{Error, Result};

/// An element of a monomial algebra: `0` or an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mono {
    Zero,
    Exp(Vec<i32>),
}

impl Mono {
    pub fn exponents(&self) -> Option<&[i32]> {
        match self {
            Mono::Zero => None,
            Mono::Exp(e) => Some(e),
        }
    }
}

/// `𝔽₁[x₁..x_k][x_S⁻¹]`: exponent vectors in `ℕ^k` with `ℤ` at the inverted
/// coordinates `S`, plus an adjoined absorbing 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialAlgebra {
    vars: Vec<String>,
    inverted: Vec<bool>,
    trivial: bool,
}

/// A truncation relation `lhs = rhs`; `rhs` may be `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Mono,
    pub rhs: Mono,
}

impl MonomialAlgebra {
    pub fn new(vars: Vec<String>, inverted: Vec<bool>) -> Result<Self> {
        if vars.len() != inverted.len() {
            return Err(Error::axiom("monomial spec", "inverted mask length differs from rank"));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_alphabetic())
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::axiom("monomial spec", format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::axiom("monomial spec", format!("duplicate variable {v}")));
            }
        }
        Ok(MonomialAlgebra {
            vars,
            inverted,
            trivial: false,
        })
    }

    /// `𝔽₁[x₁..x_k]` with variables named `x1..xk` (or `x` when `k = 1`).
    pub fn polynomial(k: usize) -> Self {
        let vars = if k == 1 {
            vec!["x".to_string()]
        } else {
            (1..=k).map(|i| format!("x{i}")).collect()
        };
        Self::new(vars, vec![false; k]).expect("generated names are valid")
    }

    pub fn with_vars(vars: &[&str], inverted: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mask = vars.iter().map(|v| inverted.contains(&v.as_str())).collect();
        Self::new(vars, mask)
    }

    /// The trivial algebra on the same coordinates (`0 = 1`).
    pub fn trivialized(&self) -> Self {
        MonomialAlgebra {
            trivial: true,
            ..self.clone()
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn inverted(&self) -> &[bool] {
        &self.inverted
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn one(&self) -> Mono {
        if self.trivial {
            Mono::Zero
        } else {
            Mono::Exp(vec![0; self.rank()])
        }
    }

    pub fn zero(&self) -> Mono {
        Mono::Zero
    }

    pub fn var(&self, i: usize) -> Mono {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.normalize(Mono::Exp(e))
    }

    pub fn normalize(&self, m: Mono) -> Mono {
        if self.trivial {
            Mono::Zero
        } else {
            m
        }
    }

    /// True when `m` is an element: right length, negatives only where inverted.
    pub fn contains(&self, m: &Mono) -> bool {
        match m {
            Mono::Zero => true,
            Mono::Exp(_) if self.trivial => false,
            Mono::Exp(e) => {
                e.len() == self.rank() && e.iter().zip(&self.inverted).all(|(&x, &inv)| inv || x >= 0)
            }
        }
    }

    pub fn mul(&self, a: &Mono, b: &Mono) -> Mono {
        match (a, b) {
            (Mono::Exp(x), Mono::Exp(y)) if !self.trivial => {
                Mono::Exp(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            _ => Mono::Zero,
        }
    }

    pub fn pow(&self, a: &Mono, k: u32) -> Mono {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_unit(&self, a: &Mono) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: &Mono) -> Option<Mono> {
        if self.trivial {
            return Some(Mono::Zero);
        }
        match a {
            Mono::Zero => None,
            Mono::Exp(e) => {
                let unit = e.iter().zip(&self.inverted).all(|(&x, &inv)| inv || x == 0);
                unit.then(|| Mono::Exp(e.iter().map(|x| -x).collect()))
            }
        }
    }

    /// Coordinates with a nonzero exponent.
    pub fn support(&self, a: &Mono) -> Vec<bool> {
        match a {
            Mono::Zero => vec![true; self.rank()],
            Mono::Exp(e) => e.iter().map(|&x| x != 0).collect(),
        }
    }

    /// `R_f`: inverts the support of `f`; `f = 0` gives the trivial algebra.
    pub fn localize(&self, f: &Mono) -> MonomialAlgebra {
        match f {
            _ if self.trivial => self.clone(),
            Mono::Zero => self.trivialized(),
            Mono::Exp(e) => MonomialAlgebra {
                vars: self.vars.clone(),
                inverted: self.inverted.iter().zip(e).map(|(&inv, &x)| inv || x != 0).collect(),
                trivial: false,
            },
        }
    }

    /// `b ∈ (a)`, i.e. `a` divides `b`.
    pub fn divides(&self, a: &Mono, b: &Mono) -> bool {
        if self.trivial {
            return true;
        }
        match (a, b) {
            (_, Mono::Zero) => true,
            (Mono::Zero, Mono::Exp(_)) => false,
            (Mono::Exp(x), Mono::Exp(y)) => {
                x.iter().zip(y).zip(&self.inverted).all(|((p, q), &inv)| inv || q >= p)
            }
        }
    }

    /// The squarefree radical of `(a)` as a mask over the non-inverted coordinates.
    pub fn radical_support(&self, a: &Mono) -> Vec<bool> {
        self.support(a)
            .into_iter()
            .zip(&self.inverted)
            .map(|(s, &inv)| s && !inv)
            .collect()
    }

    /// Exactness of the descent fork `R → ∏ R_{fᵢ} ⇉ ∏ R_{fᵢfⱼ}`.
    ///
    /// Every localization at a nonzero monomial embeds in the Laurent
    /// monomials, so compatible families are single elements of `∩ R_{fᵢ}`
    /// over the nonzero members. That intersection is `R` exactly when no
    /// non-inverted coordinate lies in every support; members equal to 0
    /// contribute trivial factors.
    pub fn descent_exact(&self, family: &[Mono]) -> bool {
        if self.trivial {
            return true;
        }
        let masks: Vec<Vec<bool>> = family.iter().filter(|f| **f != Mono::Zero).map(|f| self.radical_support(f)).collect();
        !masks.is_empty() && (0..self.rank()).all(|i| masks.iter().any(|m| !m[i]))
    }

    /// Monomials with nonnegative exponents of total degree at most `degree`, plus 0.
    pub fn pool(&self, degree: u32) -> Vec<Mono> {
        if self.trivial {
            return vec![Mono::Zero];
        }
        let k = self.rank();
        let mut out = Vec::new();
        for d in 0..=degree as i32 {
            let mut cur = vec![0i32; k];
            compositions(d, 0, &mut cur, &mut out);
        }
        out.push(Mono::Zero);
        out
    }

    pub fn parse(&self, text: &str) -> Result<Mono> {
        let t = text.trim();
        let bad = |expected: &str| Error::Malformed {
            position: format!("element {t:?}"),
            expected: expected.to_string(),
        };
        if t == "0" {
            return Ok(Mono::Zero);
        }
        let mut e = vec![0i32; self.rank()];
        if t != "1" {
            for factor in t.split('*') {
                let factor = factor.trim();
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => {
                        let p = p.trim().trim_start_matches('(').trim_end_matches(')');
                        (n.trim(), p.parse::<i32>().map_err(|_| bad("an integer exponent"))?)
                    }
                    None => (factor, 1),
                };
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| bad("a variable name, 0 or 1"))?;
                e[i] += power;
            }
        }
        let m = Mono::Exp(e);
        if !self.contains(&m) && !self.trivial {
            return Err(bad("nonnegative exponents at non-inverted variables"));
        }
        Ok(self.normalize(m))
    }

    pub fn format(&self, m: &Mono) -> String {
        format_mono(&self.vars, m)
    }

    /// Converts a truncated presentation into a finite monoid with zero.
    ///
    /// Every variable needs a one-variable relation `xᵢⁿ = 0` or `xᵢⁿ = xᵢᵐ`
    /// (`m < n`) bounding it; the remaining relations are imposed by
    /// congruence closure on the resulting finite box.
    pub fn truncate(&self, relations: &[Relation]) -> Result<FiniteAlgebra> {
        if self.inverted.iter().any(|&b| b) {
            return Err(Error::Unsupported("truncation of a monomial algebra with inverted variables".into()));
        }
        let k = self.rank();
        let mut bound: Vec<Option<(i32, Option<i32>)>> = vec![None; k];
        let mut general = Vec::new();
        for rel in relations {
            if !self.contains(&rel.lhs) || !self.contains(&rel.rhs) {
                return Err(Error::axiom("relation", "relation mentions a non-element"));
            }
            match single_var_rule(&rel.lhs, &rel.rhs).or_else(|| single_var_rule(&rel.rhs, &rel.lhs)) {
                Some((i, n, m)) if bound[i].is_none() => bound[i] = Some((n, m)),
                _ => general.push(rel.clone()),
            }
        }
        let bound: Vec<(i32, Option<i32>)> = bound
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| {
                    Error::Unsupported(format!(
                        "variable {} has no bounding relation, the truncation would be infinite",
                        self.vars[i]
                    ))
                })
            })
            .collect::<Result<_>>()?;

        // box elements: exponent vectors with eᵢ < nᵢ, plus 0 at the end
        let sizes: Vec<usize> = bound.iter().map(|&(n, _)| n as usize).collect();
        let total: usize = sizes.iter().product();
        let zero = total;
        let decode = |mut idx: usize| {
            let mut e = vec![0i32; k];
            for i in 0..k {
                e[i] = (idx % sizes[i]) as i32;
                idx /= sizes[i];
            }
            e
        };
        let encode = |e: &[i32]| -> usize {
            let mut idx = 0usize;
            for i in (0..k).rev() {
                let (n, m) = bound[i];
                let r = if e[i] < n {
                    e[i]
                } else {
                    match m {
                        None => return zero,
                        Some(m) => m + (e[i] - m) % (n - m),
                    }
                };
                idx = idx * sizes[i] + r as usize;
            }
            idx
        };
        let mono_index = |m: &Mono| match m {
            Mono::Zero => zero,
            Mono::Exp(e) => encode(e),
        };
        let box_mul = |a: usize, b: usize| {
            if a == zero || b == zero {
                return zero;
            }
            let (x, y) = (decode(a), decode(b));
            let s: Vec<i32> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            encode(&s)
        };

        let n = total + 1;
        let mut uf = UnionFind::new(n);
        let mut queue: Vec<(usize, usize)> = general.iter().map(|r| (mono_index(&r.lhs), mono_index(&r.rhs))).collect();
        while let Some((a, b)) = queue.pop() {
            if uf.union(a, b) {
                for c in 0..n {
                    queue.push((box_mul(a, c), box_mul(b, c)));
                }
            }
        }
        // canonical order: zero first, then by total degree and exponent vector
        let key = |idx: usize| -> (i32, Vec<i32>) {
            if idx == zero {
                (-1, Vec::new())
            } else {
                let e = decode(idx);
                (e.iter().sum(), e.iter().rev().copied().collect())
            }
        };
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            classes.entry(uf.find(x)).or_default().push(x);
        }
        let mut reps: Vec<(usize, Vec<usize>)> = classes
            .into_values()
            .map(|mut members| {
                members.sort_by_key(|&x| key(x));
                (members[0], members)
            })
            .collect();
        reps.sort_by_key(|(r, _)| key(*r));
        let mut class_of = vec![0; n];
        for (ci, (_, members)) in reps.iter().enumerate() {
            for &x in members {
                class_of[x] = ci;
            }
        }
        let names: Vec<String> = reps
            .iter()
            .map(|&(r, _)| {
                if r == zero {
                    "0".to_string()
                } else {
                    format_mono(&self.vars, &Mono::Exp(decode(r)))
                }
            })
            .collect();
        let one_idx = class_of[encode(&vec![0; k])];
        let zero_idx = class_of[zero];
        let rep_of: Vec<usize> = reps.iter().map(|&(r, _)| r).collect();
        FiniteAlgebra::from_fn(
            FiniteKind::MonoidZero,
            names,
            |a, b| class_of[box_mul(rep_of[a], rep_of[b])],
            None::<fn(usize, usize) -> usize>,
            zero_idx,
            one_idx,
        )
    }
}

fn compositions(remaining: i32, pos: usize, cur: &mut Vec<i32>, out: &mut Vec<Mono>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(Mono::Exp(cur.clone()));
        cur[pos] = 0;
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Mono::Exp(Vec::new()));
        }
        return;
    }
    for first in (0..=remaining).rev() {
        cur[pos] = first;
        compositions(remaining - first, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Recognizes `xᵢⁿ = 0` or `xᵢⁿ = xᵢᵐ` with `m < n`.
fn single_var_rule(lhs: &Mono, rhs: &Mono) -> Option<(usize, i32, Option<i32>)> {
    let e = lhs.exponents()?;
    let nz: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
    if nz.len() != 1 || e[nz[0]] <= 0 {
        return None;
    }
    let i = nz[0];
    match rhs {
        Mono::Zero => Some((i, e[i], None)),
        Mono::Exp(f) => {
            let only_i = f.iter().enumerate().all(|(j, &x)| j == i || x == 0);
            (only_i && f[i] >= 0 && f[i] < e[i]).then_some((i, e[i], Some(f[i])))
        }
    }
}

pub(crate) fn format_mono(vars: &[String], m: &Mono) -> String {
    match m {
        Mono::Zero => "0".into(),
        Mono::Exp(e) => {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], x) })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merges the classes of `a` and `b`; false when already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
