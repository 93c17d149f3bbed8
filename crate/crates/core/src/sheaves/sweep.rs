use std::collections::HashMap;

use serde::Serialize;

use super::{shf_over, zero_report};
use crate::algebra::{Congruence, FiniteAlgebra, RModule, WAlgebra, WElem};
use crate::catalog::Entry;
use crate::error::Result;
use crate::scheme::spec_scheme;
use crate::site::{is_cover, subsets, TopologyTag};
use crate::Limits;

/// `M = R/J` with `J` the congruence generated by `{(0, fᵢ)}`.
pub fn recipe_module(r: &FiniteAlgebra, family: &[usize]) -> Result<(Congruence, RModule)> {
    let reg = RModule::regular(r);
    let pairs: Vec<(usize, usize)> = family.iter().map(|&f| (r.zero(), f)).collect();
    let j = Congruence::generated(&reg, &pairs)?;
    let m = reg.quotient(&j);
    Ok((j, m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub algebra: String,
    pub family: Vec<String>,
    pub module_size: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub tag: String,
    pub algebras: usize,
    pub families: usize,
    /// Families whose `J` is unital, so `M = 0`.
    pub excluded: usize,
    /// Nonzero modules checked for a nonzero stalk under zar.
    pub zar_checks: usize,
    /// Tag covers that are not zar covers.
    pub tag_only_covers: usize,
    /// Nonzero `M` with `Shf(M) = 0` under zar.
    pub counterexamples: Vec<SweepViolation>,
    /// Tag-only covers whose recipe module is nonzero and dies on every chart.
    pub violations: Vec<SweepViolation>,
    /// Anything contradicting the predicted dichotomy.
    pub exceptions: Vec<SweepViolation>,
    pub skipped: Vec<String>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.exceptions.is_empty()
    }
}

/// Tests condition (*) `Shf(M) = 0 ⇔ M = 0` against the recipe modules
/// `R/J`, one per family of at most `max_family` elements.
///
/// Under zar every nonzero recipe module must keep a nonzero stalk. Under a
/// larger topology, each cover that is not a zar cover must produce a nonzero
/// `M` whose localizations at the members all vanish; zar covers must give
/// unital `J`.
pub fn zar_faithfulness_sweep(catalog: &[Entry], tag: TopologyTag, max_family: usize, limits: &Limits) -> Result<SweepReport> {
    let mut report = SweepReport {
        tag: tag.to_string(),
        ..SweepReport::default()
    };
    for e in catalog {
        let Some(r) = e.algebra.as_finite() else {
            report.skipped.push(format!("{}: not finite", e.label));
            continue;
        };
        report.algebras += 1;
        sweep_one(&e.label, r, tag, max_family, limits, &mut report)?;
    }
    Ok(report)
}

fn sweep_one(
    label: &str,
    r: &FiniteAlgebra,
    tag: TopologyTag,
    max_family: usize,
    limits: &Limits,
    report: &mut SweepReport,
) -> Result<()> {
    let w = WAlgebra::from(r.clone());
    let base = spec_scheme(&w, TopologyTag::Zar, limits)?;
    let reg = RModule::regular(r);
    let mut covers: HashMap<(Vec<usize>, TopologyTag), bool> = HashMap::new();
    let mut stalks: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut cover = |fam: &[WElem], idems: &[usize], t: TopologyTag| -> Result<bool> {
        if let Some(&c) = covers.get(&(idems.to_vec(), t)) {
            return Ok(c);
        }
        let c = is_cover(&w, fam, t, limits)?;
        covers.insert((idems.to_vec(), t), c);
        Ok(c)
    };
    for fam in subsets(&w.pool(limits.pool_degree), max_family) {
        report.families += 1;
        let idx: Vec<usize> = fam
            .iter()
            .map(|x| match x {
                WElem::Fin(i) => *i,
                WElem::Mono(_) => unreachable!("finite pool"),
            })
            .collect();
        let mut idems: Vec<usize> = idx.iter().map(|&f| r.idempotent_power(f)).collect();
        idems.sort_unstable();
        idems.dedup();
        let zar = cover(&fam, &idems, TopologyTag::Zar)?;
        let (j, m) = recipe_module(r, &idx)?;
        let names: Vec<String> = idx.iter().map(|&f| r.name(f).to_string()).collect();
        let record = |detail: &str| SweepViolation {
            algebra: label.to_string(),
            family: names.clone(),
            module_size: m.len(),
            detail: detail.to_string(),
        };
        let unital = j.is_unital(&reg);
        if zar && !unital {
            report.exceptions.push(record("zar cover with non-unital J"));
            continue;
        }
        if unital {
            report.excluded += 1;
            continue;
        }
        match tag {
            TopologyTag::Zar => {
                report.zar_checks += 1;
                let vanishes = match stalks.get(j.labels()) {
                    Some(&v) => v,
                    None => {
                        let v = zero_report(&shf_over(&base, &m, limits)?).zero;
                        stalks.insert(j.labels().to_vec(), v);
                        v
                    }
                };
                if vanishes {
                    report.counterexamples.push(record("nonzero module with zero sheaf"));
                }
            }
            _ => {
                if zar || !cover(&fam, &idems, tag)? {
                    continue;
                }
                report.tag_only_covers += 1;
                if idx.iter().all(|&f| m.localize(f).0.is_zero()) {
                    report.violations.push(record("M ≠ 0 but every chart localization vanishes"));
                } else {
                    report.exceptions.push(record("some chart localization of M survives"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn zar_holds_on_small_rings() {
        let rep = zar_faithfulness_sweep(&catalog::rings(12), TopologyTag::Zar, 2, &Limits::default()).unwrap();
        assert!(rep.holds(), "{:?}", rep.counterexamples);
        assert!(rep.zar_checks > 0);
    }

    #[test]
    fn tot_on_multiplicative_z6() {
        let cat = vec![Entry {
            label: "Z/6 (mult)".into(),
            algebra: FiniteAlgebra::zmod_monoid(6).into(),
        }];
        let rep = zar_faithfulness_sweep(&cat, TopologyTag::Tot, 2, &Limits::default()).unwrap();
        assert!(rep.holds(), "{:?}", rep.exceptions);
        assert!(rep.violations.iter().any(|v| v.family == ["2", "3"]));
    }
}
