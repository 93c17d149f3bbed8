//! The twelve acceptance criteria, one verdict line each.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use cohspec::algebra::{FiniteAlgebra, WAlgebra, WElem};
use cohspec::catalog::{self, Entry};
use cohspec::lattice::{all_distributive_lattices, find_isomorphism, stone_roundtrip, IdempotentSemiring};
use cohspec::scheme::{counit_check, glue, glue_along_iso, is_affine, projective_line, spec_scheme, WeakScheme};
use cohspec::sheaves::zar_faithfulness_sweep;
use cohspec::site::{descent_check, is_cover, partition_of_unity, verify_partition};
use cohspec::spectrum::{comparison_map, omega1, radical_lattice, spec0};
use cohspec::{Limits, TopologyTag};

type Verdict = Result<String, String>;

fn lim() -> Limits {
    Limits::default()
}

fn fail_if(failures: Vec<String>, ok: String) -> Verdict {
    match failures.first() {
        None => Ok(ok),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

// Oracles over ℤ/n: ideals as element sets, computed from the arithmetic.

fn ideal_sets(n: usize) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = (0..n).map(|g| (0..n).map(|k| g * k % n).collect()).collect();
    out.sort();
    out.dedup();
    out
}

fn ideal_product(n: usize, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = BTreeSet::from([0]);
    loop {
        let mut next = s.clone();
        for &x in a {
            for &y in b {
                for &z in &s {
                    next.insert((x * y + z) % n);
                }
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

fn primes_of(n: usize) -> Vec<BTreeSet<usize>> {
    ideal_sets(n)
        .into_iter()
        .filter(|p| p.len() < n)
        .filter(|p| (0..n).all(|a| (0..n).all(|b| !p.contains(&(a * b % n)) || p.contains(&a) || p.contains(&b))))
        .collect()
}

fn omega(mut n: usize) -> usize {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            count += 1;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    count + usize::from(n > 1)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn elem(r: &FiniteAlgebra, v: usize) -> WElem {
    WElem::Fin(r.index_of(&v.to_string()).expect("ℤ/n element"))
}

fn families(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for f in &frontier {
            let start = f.last().map_or(0, |&x: &usize| x + 1);
            for x in start..n {
                let mut g = f.clone();
                g.push(x);
                next.push(g);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn c1_stone() -> Verdict {
    let ls = all_distributive_lattices(8);
    let mut failures = Vec::new();
    for (i, l) in ls.iter().enumerate() {
        match stone_roundtrip(l, lim().lattice) {
            Ok((iso, space)) => {
                let opens = space.opens();
                let exact = iso.map.len() == l.len()
                    && (0..l.len()).all(|a| (0..l.len()).all(|b| l.leq(a, b) == opens.leq(iso.map[a], iso.map[b])))
                    && iso.map.iter().collect::<BTreeSet<_>>().len() == opens.len();
                if !exact {
                    failures.push(format!("lattice #{i}: map is not an isomorphism"));
                }
            }
            Err(e) => failures.push(format!("lattice #{i}: {e}")),
        }
    }
    fail_if(failures, format!("{} lattices with at most 8 elements", ls.len()))
}

fn c2_semiring() -> Verdict {
    let ls = all_distributive_lattices(8);
    let mut failures = Vec::new();
    for (i, l) in ls.iter().enumerate() {
        let s = IdempotentSemiring::from_lattice(l);
        let back = match s.to_lattice() {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let n = l.len();
        let same_lattice = back.names() == l.names()
            && (0..n).all(|a| (0..n).all(|b| back.join(a, b) == l.join(a, b) && back.meet(a, b) == l.meet(a, b)));
        let s2 = IdempotentSemiring::from_lattice(&back);
        let same_semiring = s2.zero() == s.zero()
            && s2.one() == s.one()
            && (0..n).all(|a| (0..n).all(|b| s2.add(a, b) == s.add(a, b) && s2.mul(a, b) == s.mul(a, b)));
        if !same_lattice || !same_semiring {
            failures.push(format!("#{i}: round trip is not the identity"));
        }
    }
    fail_if(failures, format!("{} lattices, both composites are the identity", ls.len()))
}

fn c3_radical() -> Verdict {
    let mut failures = Vec::new();
    let size = |n: usize| radical_lattice(&FiniteAlgebra::zmod(n).into(), &lim()).map(|r| r.lattice.len());
    if size(4) != Ok(2) {
        failures.push(format!("rad(I(Z/4)) has {:?} elements, expected 2", size(4)));
    }
    let z6 = radical_lattice(&FiniteAlgebra::zmod(6).into(), &lim()).map_err(|e| e.to_string())?;
    if find_isomorphism(&z6.lattice, &cohspec::DistLattice::boolean(2)).is_none() {
        failures.push("rad(I(Z/6)) is not the diamond".into());
    }
    for n in 1..=30 {
        let r = FiniteAlgebra::zmod(n);
        let rad = radical_lattice(&r.clone().into(), &lim()).map_err(|e| e.to_string())?;
        let ideals = ideal_sets(n);
        let powers: Vec<Vec<BTreeSet<usize>>> = ideals
            .iter()
            .map(|i| {
                let mut ps = vec![i.clone()];
                for _ in 1..=n {
                    ps.push(ideal_product(n, ps.last().unwrap(), i));
                }
                ps
            })
            .collect();
        let reaches = |a: usize, b: usize| powers[a].iter().any(|p| p.is_subset(&ideals[b]));
        let class: Vec<usize> = ideals
            .iter()
            .map(|i| {
                let g = *i.iter().find(|&&g| ideal_sets_gen(n, g) == *i).expect("principal");
                rad.class_of(&[elem(&r, g)])
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for a in 0..ideals.len() {
            for b in 0..ideals.len() {
                let oracle = reaches(a, b) && reaches(b, a);
                if oracle != (class[a] == class[b]) {
                    failures.push(format!("Z/{n}: ideals {:?} and {:?}", ideals[a], ideals[b]));
                }
            }
        }
        let oracle_classes: BTreeSet<usize> = class.iter().copied().collect();
        if oracle_classes.len() != rad.lattice.len() {
            failures.push(format!("Z/{n}: {} classes hit, lattice has {}", oracle_classes.len(), rad.lattice.len()));
        }
    }
    fail_if(failures, "Z/4 gives 2 classes, Z/6 the diamond, partitions agree for n <= 30".into())
}

fn ideal_sets_gen(n: usize, g: usize) -> BTreeSet<usize> {
    (0..n).map(|k| g * k % n).collect()
}

fn c4_points() -> Verdict {
    let mut failures = Vec::new();
    for n in 1..=30 {
        let s = spec0(&FiniteAlgebra::zmod(n).into(), TopologyTag::Zar, &lim()).map_err(|e| e.to_string())?;
        let (pts, primes, w) = (s.space.point_count(), primes_of(n).len(), omega(n));
        if pts != w || primes != w {
            failures.push(format!("Z/{n}: {pts} points, {primes} primes, omega {w}"));
        }
    }
    for k in 1..=4 {
        let s = spec0(&cohspec::MonomialAlgebra::polynomial(k).into(), TopologyTag::Zar, &lim()).map_err(|e| e.to_string())?;
        if s.space.point_count() != 1 << k {
            failures.push(format!("F1[x1..x{k}]: {} points", s.space.point_count()));
        }
    }
    fail_if(failures, "omega(n) points for Z/n, n <= 30; 2^k points for F1[x1..xk], k <= 4".into())
}

fn c5_soundness() -> Verdict {
    let mut failures = Vec::new();
    let mut unital = 0;
    for n in 1..=30 {
        let r = FiniteAlgebra::zmod(n);
        let w = WAlgebra::from(r.clone());
        for fam in families(n, 3) {
            if fam.iter().fold(n, |g, &x| gcd(g, x)) != 1 {
                continue;
            }
            unital += 1;
            let f: Vec<WElem> = fam.iter().map(|&x| elem(&r, x)).collect();
            let exact = descent_check(&w, &f, &lim()).map(|rep| rep.exact());
            let witness = partition_of_unity(&w, &f).and_then(|p| match p {
                Some((t, e)) => verify_partition(&w, &f, &t, e),
                None => Ok(false),
            });
            if exact != Ok(true) || witness != Ok(true) {
                failures.push(format!("Z/{n} {fam:?}: exact {exact:?}, witness {witness:?}"));
            }
        }
    }
    let mut converse = 0;
    for e in catalog::monoids() {
        let r = e.algebra.as_finite().unwrap();
        for fam in families(r.len(), 3) {
            // in a monoid with zero, 1 ∈ ⟨fam⟩ iff some member is a unit or 0 = 1
            if r.zero() == r.one() || fam.iter().any(|&x| r.is_unit(x)) {
                continue;
            }
            converse += 1;
            let f: Vec<WElem> = fam.iter().map(|&x| WElem::Fin(x)).collect();
            let cover = is_cover(&e.algebra, &f, TopologyTag::Zar, &lim());
            let exact = descent_check(&e.algebra, &f, &lim()).map(|rep| rep.exact());
            if cover != Ok(false) && exact != Ok(false) {
                failures.push(format!("{} {fam:?}: cover {cover:?}, exact {exact:?}", e.label));
            }
        }
    }
    fail_if(failures, format!("{unital} unital families exact with witnesses; {converse} non-unital monoid families rejected"))
}

fn counit_catalog() -> Vec<Entry> {
    let mut c = catalog::rings(30);
    c.extend(catalog::monoids());
    c.extend(catalog::monomials(3));
    c
}

fn c6_counit() -> Verdict {
    let cat = counit_catalog();
    let failures = cat
        .iter()
        .filter_map(|e| match counit_check(&e.algebra, TopologyTag::Zar, &lim()) {
            Ok(w) if w.iso => None,
            Ok(_) => Some(format!("{}: counit is not an isomorphism", e.label)),
            Err(err) => Some(format!("{}: {err}", e.label)),
        })
        .collect();
    fail_if(failures, format!("{} algebras", cat.len()))
}

fn c7_gluing() -> Verdict {
    let (p1, [x, y], datum) = projective_line(&lim()).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    if p1.scheme.space.point_count() != 3 {
        failures.push(format!("{} points", p1.scheme.space.point_count()));
    }
    match p1.scheme.global_sections().as_monomial() {
        Some(g) if g.rank() == 0 && !g.is_trivial() => {}
        _ => failures.push("global sections are not {0, 1}".into()),
    }
    match is_affine(&p1.scheme, &lim()) {
        Ok(r) if !r.affine => {}
        other => failures.push(format!("is_affine: {other:?}")),
    }
    if let Err(e) = p1.check_bicartesian(&x, &y, &datum) {
        failures.push(format!("bicartesian: {e}"));
    }
    for (chart, top, emb) in [(&x, x.opens().top(), &p1.from_x), (&y, y.opens().top(), &p1.from_y)] {
        let restricted = p1.scheme.restrict(emb[top]).map_err(|e| e.to_string())?;
        let same = restricted.opens().len() == chart.opens().len()
            && restricted.space.point_count() == chart.space.point_count()
            && cohspec::scheme::find_iso(restricted.global_sections(), chart.global_sections()).is_some();
        if !same {
            failures.push("restriction to a chart is not the chart".into());
        }
    }
    fail_if(failures, "3 points, global sections {0, 1}, not affine, charts recovered".into())
}

fn c8_lattice_gluing() -> Verdict {
    let specs: Vec<WeakScheme> = catalog::lattices(6)
        .iter()
        .map(|e| spec_scheme(&e.algebra, TopologyTag::Zar, &lim()).map(|s| s.scheme))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let lattices: Vec<FiniteAlgebra> = catalog::lattices(6).into_iter().map(|e| e.algebra.as_finite().unwrap().clone()).collect();
    let mut glued = 0;
    let mut failures = Vec::new();
    let mut basic: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, x) in specs.iter().enumerate() {
        let sp = spec0(&lattices[i].clone().into(), TopologyTag::Zar, &lim()).map_err(|e| e.to_string())?;
        for a in 0..lattices[i].len() {
            basic.insert((i, a), sp.basic_open(&WElem::Fin(a), &lim()).map_err(|e| e.to_string())?);
        }
        debug_assert_eq!(x.opens().len(), sp.space.opens().len());
    }
    for (i, x) in specs.iter().enumerate() {
        for (j, y) in specs.iter().enumerate() {
            for a in 0..lattices[i].len() {
                for b in 0..lattices[j].len() {
                    let (u, v) = (basic[&(i, a)], basic[&(j, b)]);
                    let (WAlgebra::Finite(vx), WAlgebra::Finite(vy)) = (x.value(u), y.value(v)) else {
                        return Err("lattice values are finite".into());
                    };
                    if vx.len() != vy.len() {
                        continue;
                    }
                    for h in vx.isomorphisms(vy, lim().equalizer).map_err(|e| e.to_string())? {
                        let h = cohspec::AlgHom::Table(h);
                        glued += 1;
                        let verdict = glue_along_iso(x, u, y, v, &h, &lim())
                            .and_then(|d| glue(x, y, &d, &lim()))
                            .and_then(|g| is_affine(&g.scheme, &lim()));
                        match verdict {
                            Ok(r) if r.affine => {}
                            Ok(r) => failures.push(format!("L{i} at {a}, L{j} at {b}: {:?}", r.reason)),
                            Err(e) => failures.push(format!("L{i} at {a}, L{j} at {b}: {e}")),
                        }
                    }
                }
            }
        }
    }
    fail_if(failures, format!("{glued} gluings of {} lattice spectra along basic opens", specs.len()))
}

fn all_schemes() -> Result<Vec<(String, WeakScheme)>, String> {
    let mut cat = counit_catalog();
    cat.extend(catalog::lattices(6));
    let mut out: Vec<(String, WeakScheme)> = cat
        .iter()
        .map(|e| spec_scheme(&e.algebra, TopologyTag::Zar, &lim()).map(|s| (e.label.clone(), s.scheme)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (p1, _, _) = projective_line(&lim()).map_err(|e| e.to_string())?;
    out.push(("P1".into(), p1.scheme));
    Ok(out)
}

fn c9_locality() -> Verdict {
    let schemes = all_schemes()?;
    let mut stalks = 0;
    let mut failures = Vec::new();
    for (label, s) in &schemes {
        match s.stalk_locality(&lim()) {
            Ok(ps) => {
                stalks += ps.len();
                failures.extend(ps.into_iter().filter(|p| !p.1).map(|p| format!("{label} at {}", p.0)));
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    fail_if(failures, format!("{stalks} stalks over {} schemes", schemes.len()))
}

fn sweep_catalog() -> Vec<Entry> {
    catalog::finite(30, 6)
}

fn c10_sweep() -> Verdict {
    let cat = sweep_catalog();
    let zar = zar_faithfulness_sweep(&cat, TopologyTag::Zar, 2, &lim()).map_err(|e| e.to_string())?;
    let tot = zar_faithfulness_sweep(&cat, TopologyTag::Tot, 2, &lim()).map_err(|e| e.to_string())?;
    let mut failures: Vec<String> = zar.counterexamples.iter().map(|v| format!("zar: {} {:?}", v.algebra, v.family)).collect();
    failures.extend(zar.exceptions.iter().map(|v| format!("zar: {} {:?}: {}", v.algebra, v.family, v.detail)));
    failures.extend(tot.exceptions.iter().map(|v| format!("tot: {} {:?}: {}", v.algebra, v.family, v.detail)));
    if tot.violations.len() != tot.tag_only_covers {
        failures.push(format!("tot: {} tag-only covers but {} violations", tot.tag_only_covers, tot.violations.len()));
    }
    fail_if(
        failures,
        format!(
            "zar: {} nonzero modules keep a stalk; tot: {} tag-only covers, each with M != 0 dying on every chart",
            zar.zar_checks, tot.tag_only_covers
        ),
    )
}

fn c11_comparison() -> Verdict {
    let mut cat = sweep_catalog();
    cat.extend(catalog::monomials(3));
    let mut failures = Vec::new();
    let mut maps = 0;
    let mut unsupported = Vec::new();
    for e in &cat {
        let mut chain = Vec::new();
        for tag in TopologyTag::ALL {
            match omega1(&e.algebra, tag, &lim()) {
                Ok(o) => chain.push(o),
                Err(cohspec::Error::Unsupported(why)) => {
                    unsupported.push(format!("{} under {tag}: {why}", e.label));
                    break;
                }
                Err(err) => {
                    failures.push(format!("{} under {tag}: {err}", e.label));
                    break;
                }
            }
        }
        for w in chain.windows(2) {
            maps += 1;
            match comparison_map(&w[0], &w[1], &lim()) {
                Ok(m) if m.iter().collect::<BTreeSet<_>>().len() == w[1].len() => {}
                Ok(_) => failures.push(format!("{}: {} -> {} not surjective", e.label, w[0].tag(), w[1].tag())),
                Err(err) => failures.push(format!("{}: {err}", e.label)),
            }
        }
    }
    let z6: WAlgebra = FiniteAlgebra::zmod(6).into();
    let (min, zar) = (omega1(&z6, TopologyTag::Min, &lim()), omega1(&z6, TopologyTag::Zar, &lim()));
    match (min, zar) {
        (Ok(a), Ok(b)) if a.len() > b.len() => {}
        (a, b) => failures.push(format!("Z/6: min {:?} vs zar {:?} classes", a.map(|x| x.len()), b.map(|x| x.len()))),
    }
    if !unsupported.is_empty() {
        failures.push(format!("{} comparisons unsupported, e.g. {}", unsupported.len(), unsupported[0]));
    }
    fail_if(failures, format!("{maps} surjective comparison maps over {} algebras; Z/6 min is larger than zar", cat.len()))
}

fn c12_cli() -> Verdict {
    let failures = common::INVOCATIONS
        .iter()
        .filter_map(|(name, args, code)| common::check_golden(name, args, *code).err())
        .collect();
    fail_if(failures, format!("{} invocations match their golden files", common::INVOCATIONS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("Stone duality round trip", c1_stone),
        ("semiring/lattice equivalence", c2_semiring),
        ("radical lattice correctness", c3_radical),
        ("spectrum point counts", c4_points),
        ("Zariski soundness", c5_soundness),
        ("counit isomorphism", c6_counit),
        ("gluing of the projective line", c7_gluing),
        ("lattice gluings are affine", c8_lattice_gluing),
        ("locality of stalks", c9_locality),
        ("faithfulness sweep", c10_sweep),
        ("topology comparison", c11_comparison),
        ("CLI determinism", c12_cli),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.ends_with(&format!(" {f}")) || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("{id} PASS  {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("{id} FAIL  {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
