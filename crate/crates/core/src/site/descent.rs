use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::Limits;

/// The equalizer of `Π R_{fᵢ} ⇉ Π R_{fᵢfⱼ}` for a finite algebra.
///
/// With `R_f ≅ eR`, a compatible family is a tuple `uᵢ ∈ eᵢR` with
/// `eⱼuᵢ = eᵢuⱼ` for all `i, j`. The tuples form an algebra of the same kind
/// under componentwise operations.
#[derive(Clone, Debug)]
pub struct Equalizer {
    pub idempotents: Vec<usize>,
    /// Compatible tuples, entries as indices of the source algebra.
    pub tuples: Vec<Vec<usize>>,
    pub algebra: FiniteAlgebra,
    /// `image[x]` is the tuple `(eᵢx)` as an index into `tuples`.
    pub image: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl Equalizer {
    /// Builds the equalizer for a family of idempotents of `r`.
    pub fn of_idempotents(r: &FiniteAlgebra, es: &[usize], limit: usize) -> Result<Self> {
        let carriers: Vec<Vec<usize>> = es
            .iter()
            .map(|&e| {
                let mut c: Vec<usize> = (0..r.len()).map(|x| r.mul(e, x)).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let mut tuples = Vec::new();
        let mut current = Vec::with_capacity(es.len());
        search(r, es, &carriers, &mut current, &mut tuples, limit)?;
        let index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let at = |t: Vec<usize>| index[&t];
        let names = tuples
            .iter()
            .map(|t| format!("({})", t.iter().map(|&x| r.name(x)).collect::<Vec<_>>().join(",")))
            .collect();
        let zip = |a: usize, b: usize, op: &dyn Fn(usize, usize) -> usize| {
            at(tuples[a].iter().zip(&tuples[b]).map(|(&x, &y)| op(x, y)).collect())
        };
        let add = r
            .kind()
            .has_addition()
            .then_some(|a: usize, b: usize| zip(a, b, &|x, y| r.add(x, y).expect("additive kind")));
        let algebra = FiniteAlgebra::from_fn(
            r.kind(),
            names,
            |a, b| zip(a, b, &|x, y| r.mul(x, y)),
            add,
            at(vec![r.zero(); es.len()]),
            at(es.to_vec()),
        )
        .expect("compatible families are closed under the operations");
        let image = (0..r.len()).map(|x| at(es.iter().map(|&e| r.mul(e, x)).collect())).collect();
        Ok(Equalizer {
            idempotents: es.to_vec(),
            tuples,
            algebra,
            image,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

fn search(
    r: &FiniteAlgebra,
    es: &[usize],
    carriers: &[Vec<usize>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    let i = current.len();
    if i == es.len() {
        if out.len() >= limit {
            return Err(Error::guard("equalizer tuples", out.len() + 1, limit));
        }
        out.push(current.clone());
        return Ok(());
    }
    for &u in &carriers[i] {
        if (0..i).all(|j| r.mul(es[j], u) == r.mul(es[i], current[j])) {
            current.push(u);
            search(r, es, carriers, current, out, limit)?;
            current.pop();
        }
    }
    Ok(())
}

/// Equalizer of the descent fork for a family of elements.
pub fn equalizer(r: &FiniteAlgebra, family: &[usize], limits: &Limits) -> Result<Equalizer> {
    let es: Vec<usize> = family.iter().map(|&f| r.idempotent_power(f)).collect();
    Equalizer::of_idempotents(r, &es, limits.equalizer)
}

/// Verdict on `R → Π R_{fᵢ} ⇉ Π R_{fᵢfⱼ}` being an equalizer diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub family: Vec<String>,
    pub source_size: usize,
    pub equalizer_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Two distinct elements with the same restrictions.
    pub collision: Option<(String, String)>,
    /// A compatible family that glues to nothing.
    pub missing: Option<String>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Decides exactness of the descent fork on a finite algebra.
pub fn descent_check(r: &WAlgebra, family: &[WElem], limits: &Limits) -> Result<ExactnessReport> {
    let WAlgebra::Finite(a) = r else {
        return Err(Error::Unsupported(
            "descent on an infinite monomial algebra; supply a finite truncation".into(),
        ));
    };
    let idx: Vec<usize> = family
        .iter()
        .map(|x| match x {
            WElem::Fin(i) if *i < a.len() => Ok(*i),
            other => Err(Error::UnknownElement(format!("{other:?}"))),
        })
        .collect::<Result<_>>()?;
    let eq = equalizer(a, &idx, limits)?;
    let mut first = vec![usize::MAX; eq.len()];
    let mut collision = None;
    for x in 0..a.len() {
        let t = eq.image[x];
        if first[t] == usize::MAX {
            first[t] = x;
        } else if collision.is_none() {
            collision = Some((a.name(first[t]).to_string(), a.name(x).to_string()));
        }
    }
    let missing = first.iter().position(|&x| x == usize::MAX).map(|t| eq.algebra.name(t).to_string());
    Ok(ExactnessReport {
        family: idx.iter().map(|&i| a.name(i).to_string()).collect(),
        source_size: a.len(),
        equalizer_size: eq.len(),
        injective: collision.is_none(),
        surjective: missing.is_none(),
        collision,
        missing,
    })
}
