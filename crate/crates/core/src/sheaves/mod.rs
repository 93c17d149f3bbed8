//! Quasi-coherent module sheaves and the faithfulness sweep.

mod sweep;

pub use sweep::{recipe_module, zar_faithfulness_sweep, SweepReport, SweepViolation};

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, RModule, WAlgebra};
use crate::error::{Error, Result};
use crate::scheme::{spec_scheme, SpecScheme};
use crate::site::TopologyTag;
use crate::Limits;

/// `Shf(M)`: on each open, the equalizer of `∏ M_{eᵢ} ⇉ ∏ M_{eᵢeⱼ}` over the
/// idempotents behind the structure sheaf, with `M_e ≅ eM`.
#[derive(Clone, Debug)]
pub struct ModuleSheaf {
    pub base: SpecScheme,
    pub module: RModule,
    /// Sections on each open, as `R`-modules.
    pub values: Vec<RModule>,
    /// Compatible tuples behind each section, entries in `M`.
    pub tuples: Vec<Vec<Vec<usize>>>,
    restrictions: HashMap<(usize, usize), Vec<usize>>,
}

impl ModuleSheaf {
    pub fn value(&self, u: usize) -> &RModule {
        &self.values[u]
    }

    /// `Shf(M)(u) → Shf(M)(v)` for `v ≤ u`.
    pub fn restriction(&self, u: usize, v: usize) -> &[usize] {
        &self.restrictions[&(u, v)]
    }

    /// The stalk at a point: sections on its smallest open neighbourhood.
    pub fn stalk(&self, p: usize) -> &RModule {
        &self.values[self.base.scheme.space.minimal_open(p)]
    }

    /// Restrictions compose, and restricting to an open itself is the identity.
    pub fn check_functoriality(&self) -> Result<()> {
        let l = self.base.scheme.opens();
        for u in 0..l.len() {
            if self.restriction(u, u).iter().enumerate().any(|(i, &j)| i != j) {
                return Err(Error::CheckFailed(format!("restriction to {} is not the identity", l.name(u))));
            }
            for v in (0..l.len()).filter(|&v| l.leq(v, u)) {
                for w in (0..l.len()).filter(|&w| l.leq(w, v)) {
                    let (uv, vw, uw) = (self.restriction(u, v), self.restriction(v, w), self.restriction(u, w));
                    if uv.iter().zip(uw).any(|(&m, &direct)| vw[m] != direct) {
                        return Err(Error::CheckFailed(format!(
                            "module restrictions {} → {} → {} do not compose",
                            l.name(u),
                            l.name(v),
                            l.name(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn as_finite(base: &SpecScheme) -> Result<&FiniteAlgebra> {
    base.spectrum
        .parent
        .as_finite()
        .ok_or_else(|| Error::Unsupported("module sheaves over untruncated monomial algebras".into()))
}

/// `Shf(M)` over `Spec R` under a topology.
pub fn shf(r: &FiniteAlgebra, m: &RModule, tag: TopologyTag, limits: &Limits) -> Result<ModuleSheaf> {
    let base = spec_scheme(&WAlgebra::from(r.clone()), tag, limits)?;
    shf_over(&base, m, limits)
}

/// `Shf(M)` over an already built `Spec R`.
pub fn shf_over(base: &SpecScheme, m: &RModule, limits: &Limits) -> Result<ModuleSheaf> {
    let r = as_finite(base)?;
    if m.parent() != r {
        return Err(Error::MixedParents);
    }
    let l = base.scheme.opens();
    let mut values = Vec::with_capacity(l.len());
    let mut tuples = Vec::with_capacity(l.len());
    for es in &base.idempotents {
        let ts = module_tuples(m, es, limits.equalizer)?;
        values.push(tuple_module(m, es, &ts)?);
        tuples.push(ts);
    }
    let mut restrictions = HashMap::new();
    for u in 0..l.len() {
        for v in (0..l.len()).filter(|&v| l.leq(v, u)) {
            let at: HashMap<&[usize], usize> = tuples[v].iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
            let table = tuples[u]
                .iter()
                .map(|t| {
                    let s = transfer(m, &base.idempotents[u], t, &base.idempotents[v])?;
                    at.get(s.as_slice())
                        .copied()
                        .ok_or_else(|| Error::CheckFailed("transferred module section is not compatible".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            restrictions.insert((u, v), table);
        }
    }
    let sheaf = ModuleSheaf {
        base: base.clone(),
        module: m.clone(),
        values,
        tuples,
        restrictions,
    };
    sheaf.check_functoriality()?;
    Ok(sheaf)
}

/// Tuples `mᵢ ∈ eᵢM` with `eⱼmᵢ = eᵢmⱼ`.
fn module_tuples(m: &RModule, es: &[usize], limit: usize) -> Result<Vec<Vec<usize>>> {
    let carriers: Vec<Vec<usize>> = es
        .iter()
        .map(|&e| {
            let mut c: Vec<usize> = (0..m.len()).map(|x| m.act(e, x)).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(es.len());
    fn go(
        m: &RModule,
        es: &[usize],
        carriers: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        let i = current.len();
        if i == es.len() {
            if out.len() >= limit {
                return Err(Error::guard("module equalizer tuples", out.len() + 1, limit));
            }
            out.push(current.clone());
            return Ok(());
        }
        for &x in &carriers[i] {
            if (0..i).all(|j| m.act(es[j], x) == m.act(es[i], current[j])) {
                current.push(x);
                go(m, es, carriers, current, out, limit)?;
                current.pop();
            }
        }
        Ok(())
    }
    go(m, es, &carriers, &mut current, &mut out, limit)?;
    Ok(out)
}

/// The tuples as an `R`-module under componentwise operations, each named
/// after its least preimage in `M` when it has one.
fn tuple_module(m: &RModule, es: &[usize], tuples: &[Vec<usize>]) -> Result<RModule> {
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let at = |t: Vec<usize>| index[t.as_slice()];
    let mut names: Vec<Option<String>> = vec![None; tuples.len()];
    for x in 0..m.len() {
        let t = at(es.iter().map(|&e| m.act(e, x)).collect());
        names[t].get_or_insert_with(|| m.names()[x].clone());
    }
    let names: Vec<String> = names
        .into_iter()
        .zip(tuples)
        .map(|(n, t)| n.unwrap_or_else(|| format!("({})", t.iter().map(|&x| m.names()[x].as_str()).collect::<Vec<_>>().join(","))))
        .collect();
    let add = m.has_addition().then_some(|a: usize, b: usize| {
        at(tuples[a].iter().zip(&tuples[b]).map(|(&x, &y)| m.add(x, y).expect("additive module")).collect())
    });
    RModule::from_fn(
        m.parent(),
        names,
        |r, a| at(tuples[a].iter().map(|&x| m.act(r, x)).collect()),
        add,
        at(vec![m.zero(); es.len()]),
    )
}

/// `sⱼ ∈ dⱼM` with `eᵢsⱼ = dⱼmᵢ`, required to be unique.
fn transfer(m: &RModule, src: &[usize], t: &[usize], dst: &[usize]) -> Result<Vec<usize>> {
    dst.iter()
        .map(|&d| {
            let mut found = None;
            for s in 0..m.len() {
                if m.act(d, s) == s && src.iter().zip(t).all(|(&e, &x)| m.act(e, s) == m.act(d, x)) {
                    if found.replace(s).is_some() {
                        return Err(Error::CheckFailed("module restriction is not determined".into()));
                    }
                }
            }
            found.ok_or_else(|| Error::CheckFailed("no module section restricts correctly".into()))
        })
        .collect()
}

/// Whether `Shf(M)` vanishes, with a point whose stalk does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroReport {
    pub zero: bool,
    pub witness: Option<String>,
    pub witness_stalk_size: Option<usize>,
}

pub fn shf_is_zero(r: &FiniteAlgebra, m: &RModule, tag: TopologyTag, limits: &Limits) -> Result<ZeroReport> {
    Ok(zero_report(&shf(r, m, tag, limits)?))
}

pub fn zero_report(s: &ModuleSheaf) -> ZeroReport {
    let space = &s.base.scheme.space;
    match (0..space.point_count()).find(|&p| !s.stalk(p).is_zero()) {
        Some(p) => ZeroReport {
            zero: false,
            witness: Some(space.points()[p].clone()),
            witness_stalk_size: Some(s.stalk(p).len()),
        },
        None => ZeroReport {
            zero: true,
            witness: None,
            witness_stalk_size: None,
        },
    }
}

/// `ℤ/n` as a module over `ℤ/m` for `n | m`.
pub fn cyclic_module(r: &FiniteAlgebra, n: usize) -> Result<RModule> {
    let names = (0..n).map(|i| i.to_string()).collect();
    let value = |x: usize| r.name(x).parse::<usize>().map_err(|_| Error::Unsupported("cyclic modules need ℤ/m".into()));
    let vals = (0..r.len()).map(value).collect::<Result<Vec<_>>>()?;
    RModule::from_fn(r, names, |a, x| vals[a] * x % n, Some(|x: usize, y: usize| (x + y) % n), 0)
}
