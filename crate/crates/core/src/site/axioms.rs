use serde::Serialize;

use super::{is_cover, TopologyTag};
use crate::algebra::{AlgHom, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::Limits;

/// One counterexample to a site axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    /// `a` identity, `b` supersets, `c` base change, `d` local character.
    pub axiom: char,
    pub algebra: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub tag: String,
    pub algebras: usize,
    pub covers: usize,
    pub checks: usize,
    pub violations: Vec<AxiomViolation>,
    /// Algebras or homs left out, with the reason.
    pub skipped: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks axioms (a) to (d) of a coherent topology on a sample of algebras.
///
/// Families range over subsets of the generator pool of size at most
/// `max_family`. Base change is tested along every localization `R → R_g`
/// with `g` in the pool, along homomorphisms between finite sample members,
/// and for monomial algebras along coordinate permutations and the maps
/// sending one variable to 1. Local character is tested in the form: if
/// `S` covers and `T` pulled back to each member of `S` covers it, then `T`
/// covers.
pub fn topology_axiom_check(
    sample: &[WAlgebra],
    tag: TopologyTag,
    max_family: usize,
    limits: &Limits,
) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        tag: tag.to_string(),
        ..AxiomReport::default()
    };
    for (idx, r) in sample.iter().enumerate() {
        let label = format!("#{idx} {}", r.kind_tag());
        match check_one(r, idx, sample, tag, max_family, limits, &label, &mut report) {
            Ok(()) => report.algebras += 1,
            Err(Error::Unsupported(why)) => report.skipped.push(format!("{label}: {why}")),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn check_one(
    r: &WAlgebra,
    idx: usize,
    sample: &[WAlgebra],
    tag: TopologyTag,
    max_family: usize,
    limits: &Limits,
    label: &str,
    report: &mut AxiomReport,
) -> Result<()> {
    let pool = r.pool(limits.pool_degree);
    let families = subsets(&pool, max_family);
    let show = |fam: &[WElem]| fam.iter().map(|x| r.name(x)).collect::<Vec<_>>().join(",");
    let violate = |axiom: char, detail: String, report: &mut AxiomReport| {
        report.violations.push(AxiomViolation {
            axiom,
            algebra: label.to_string(),
            detail,
        })
    };

    report.checks += 1;
    if !is_cover(r, &[r.one()], tag, limits)? {
        violate('a', "{1} is not a cover".into(), report);
    }

    let mut cover_flags = Vec::with_capacity(families.len());
    for fam in &families {
        cover_flags.push(is_cover(r, fam, tag, limits)?);
    }
    let homs = outgoing_homs(r, idx, sample, &pool, report);

    for (s, fam) in families.iter().enumerate() {
        if !cover_flags[s] {
            continue;
        }
        report.covers += 1;
        for g in pool.iter().filter(|g| !fam.contains(g)) {
            let mut bigger = fam.clone();
            bigger.push(g.clone());
            report.checks += 1;
            if !is_cover(r, &bigger, tag, limits)? {
                violate('b', format!("{{{}}} covers but adding {} breaks it", show(fam), r.name(g)), report);
            }
        }
        for (target, h, name) in &homs {
            let pushed: Vec<WElem> = fam.iter().map(|x| h.apply(target, x)).collect();
            report.checks += 1;
            if !is_cover(target, &pushed, tag, limits)? {
                violate('c', format!("{{{}}} does not pull back along {name}", show(fam)), report);
            }
        }
        let charts: Vec<(WAlgebra, AlgHom)> = fam.iter().map(|f| r.localize(f)).collect();
        for (t, tfam) in families.iter().enumerate() {
            if cover_flags[t] {
                continue;
            }
            let mut locally = true;
            for (rf, h) in &charts {
                let pushed: Vec<WElem> = tfam.iter().map(|x| h.apply(rf, x)).collect();
                if !is_cover(rf, &pushed, tag, limits)? {
                    locally = false;
                    break;
                }
            }
            report.checks += 1;
            if locally {
                violate(
                    'd',
                    format!("{{{}}} covers locally on {{{}}} but not globally", show(tfam), show(fam)),
                    report,
                );
            }
        }
    }
    Ok(())
}

fn outgoing_homs(
    r: &WAlgebra,
    idx: usize,
    sample: &[WAlgebra],
    pool: &[WElem],
    report: &mut AxiomReport,
) -> Vec<(WAlgebra, AlgHom, String)> {
    let mut out: Vec<(WAlgebra, AlgHom, String)> = pool
        .iter()
        .map(|g| {
            let (rg, h) = r.localize(g);
            (rg, h, format!("localization at {}", r.name(g)))
        })
        .collect();
    match r {
        WAlgebra::Finite(a) => {
            for (j, b) in sample.iter().enumerate() {
                let Some(bf) = b.as_finite() else { continue };
                if bf.kind() != a.kind() {
                    continue;
                }
                match a.homs(bf, 256) {
                    Ok(hs) => out.extend(
                        hs.into_iter()
                            .enumerate()
                            .map(|(k, t)| (b.clone(), AlgHom::Table(t), format!("hom {k} into #{j}"))),
                    ),
                    Err(e) if e.is_size_guard() => report.skipped.push(format!("homs #{idx} -> #{j}: {e}")),
                    Err(_) => {}
                }
            }
        }
        WAlgebra::Monomial(m) => {
            let k = m.rank();
            let mut mats = permutations(k)
                .into_iter()
                .map(|p| (0..k).map(|i| (0..k).map(|j| i32::from(p[i] == j)).collect()).collect::<Vec<Vec<i32>>>())
                .collect::<Vec<_>>();
            for z in 0..k {
                mats.push((0..k).map(|i| (0..k).map(|j| i32::from(i == j && i != z)).collect()).collect());
            }
            for (n, rows) in mats.into_iter().enumerate() {
                let h = AlgHom::Matrix(rows);
                if r.is_hom(r, &h) {
                    out.push((r.clone(), h, format!("substitution {n}")));
                }
            }
        }
    }
    out
}

pub(crate) fn subsets(pool: &[WElem], max: usize) -> Vec<Vec<WElem>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<WElem>)> = vec![(0, Vec::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (start, fam) in &frontier {
            for (i, x) in pool.iter().enumerate().skip(*start) {
                let mut f = fam.clone();
                f.push(x.clone());
                out.push(f.clone());
                next.push((i + 1, f));
            }
        }
        frontier = next;
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}
