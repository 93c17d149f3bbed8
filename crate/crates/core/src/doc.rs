//! TOML documents for algebras, modules, lattices, spaces and schemes.
//!
//! Carriers and tables keep the algebra's own element order; every other
//! emitted set is sorted by name, and opens follow the linear extension
//! "fewer points first, then by name".

use std::collections::{BTreeMap, HashMap};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgHom, FiniteAlgebra, FiniteKind, MonomialAlgebra, RModule, Relation, WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::lattice::{CoherentSpace, DistLattice};
use crate::scheme::{glue, glue_along_iso, spec_scheme, GluedScheme, SpecScheme, StructureSheaf, WeakScheme};
use crate::site::TopologyTag;
use crate::Limits;

fn malformed(position: impl Into<String>, expected: impl Into<String>) -> Error {
    Error::Malformed {
        position: position.into(),
        expected: expected.into(),
    }
}

/// Parses TOML, reporting syntax and shape errors as `line:column`.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let position = e.span().map_or_else(
            || "document".to_string(),
            |s| {
                let before = &text[..s.start.min(text.len())];
                let line = before.matches('\n').count() + 1;
                let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                format!("line {line}, column {col}")
            },
        );
        malformed(position, e.message().to_string())
    })
}

/// Any serializable report as a TOML document.
pub fn render<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("documents serialize")
}

/// An algebra presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    /// `monoid_zero`, `ring`, `lattice` or `monomial`.
    pub kind: String,
    /// Shorthand for `ℤ/n` (ring) or its multiplicative monoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverted: Option<Vec<String>>,
    /// `lhs = rhs` truncation relations; the result is a finite monoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial: Option<bool>,
}

/// Indices sorted by name: integers first in numeric order, then the rest.
pub fn name_order(names: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| {
        let n = names[i].parse::<i64>();
        (n.is_err(), n.unwrap_or(0), names[i].clone())
    });
    order
}

fn kind_of(tag: &str) -> Result<FiniteKind> {
    match tag {
        "monoid_zero" => Ok(FiniteKind::MonoidZero),
        "ring" => Ok(FiniteKind::Ring),
        "lattice" => Ok(FiniteKind::Lattice),
        other => Err(malformed(format!("kind = {other:?}"), "monoid_zero, ring, lattice or monomial")),
    }
}

fn required<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| malformed(format!("field {name}"), format!("a value for {name}")))
}

fn table(names: &[String], rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if rows.len() != names.len() {
        return Err(malformed(format!("table {what}"), format!("{} rows", names.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != names.len() {
                return Err(malformed(format!("table {what}, row {}", i + 1), format!("{} entries", names.len())));
            }
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    index.get(x.as_str()).copied().ok_or_else(|| {
                        malformed(format!("table {what}, row {}, column {}", i + 1, j + 1), "an element name")
                    })
                })
                .collect()
        })
        .collect()
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<WAlgebra> {
        if self.kind == "monomial" {
            let vars = self.vars.clone().unwrap_or_default();
            let inv = self.inverted.clone().unwrap_or_default();
            if let Some(v) = inv.iter().find(|v| !vars.contains(v)) {
                return Err(malformed(format!("inverted entry {v:?}"), "one of the declared vars"));
            }
            let mask = vars.iter().map(|v| inv.contains(v)).collect();
            let mut m = MonomialAlgebra::new(vars, mask)?;
            if self.trivial == Some(true) {
                m = m.trivialized();
            }
            return match &self.relations {
                None => Ok(m.into()),
                Some(rels) => {
                    let rels = rels
                        .iter()
                        .map(|r| {
                            let (l, rhs) = r
                                .split_once('=')
                                .ok_or_else(|| malformed(format!("relation {r:?}"), "lhs = rhs"))?;
                            Ok(Relation {
                                lhs: m.parse(l)?,
                                rhs: m.parse(rhs)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(m.truncate(&rels)?.into())
                }
            };
        }
        let kind = kind_of(&self.kind)?;
        if let Some(n) = self.modulus {
            if n == 0 {
                return Err(malformed("modulus", "a positive integer"));
            }
            return match kind {
                FiniteKind::Ring => Ok(FiniteAlgebra::zmod(n).into()),
                FiniteKind::MonoidZero => Ok(FiniteAlgebra::zmod_monoid(n).into()),
                FiniteKind::Lattice => Err(malformed("modulus", "no modulus for lattices")),
            };
        }
        let names = required(&self.elements, "elements")?.clone();
        let at = |field: &Option<String>, name: &str| -> Result<usize> {
            let x = required(field, name)?;
            names
                .iter()
                .position(|n| n == x)
                .ok_or_else(|| malformed(format!("field {name}"), "an element name"))
        };
        let (zero, one) = (at(&self.zero, "zero")?, at(&self.one, "one")?);
        let mul = table(&names, required(&self.mul, "mul")?, "mul")?;
        let add = match (&self.add, kind.has_addition()) {
            (Some(a), true) => Some(table(&names, a, "add")?),
            (None, false) => None,
            (None, true) => return Err(malformed("field add", "an add table for this kind")),
            (Some(_), false) => return Err(malformed("field add", "no add table for monoid_zero")),
        };
        Ok(FiniteAlgebra::from_tables(kind, names, &mul, add.as_deref(), zero, one)?.into())
    }

    pub fn of(a: &WAlgebra) -> Self {
        match a {
            WAlgebra::Finite(f) => {
                let order = name_order(f.names());
                let name = |i: usize| f.name(i).to_string();
                let grid = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
                    order.iter().map(|&a| order.iter().map(|&b| name(op(a, b))).collect()).collect()
                };
                AlgebraDoc {
                    kind: f.kind().tag().to_string(),
                    elements: Some(order.iter().map(|&i| name(i)).collect()),
                    zero: Some(name(f.zero())),
                    one: Some(name(f.one())),
                    mul: Some(grid(&|a, b| f.mul(a, b))),
                    add: f.kind().has_addition().then(|| grid(&|a, b| f.add(a, b).expect("additive"))),
                    ..AlgebraDoc::default()
                }
            }
            WAlgebra::Monomial(m) => AlgebraDoc {
                kind: "monomial".into(),
                vars: Some(m.vars().to_vec()),
                inverted: Some((0..m.rank()).filter(|&i| m.inverted()[i]).map(|i| m.vars()[i].clone()).collect()),
                trivial: m.is_trivial().then_some(true),
                ..AlgebraDoc::default()
            },
        }
    }
}

pub fn load_algebra(text: &str) -> Result<WAlgebra> {
    parse::<AlgebraDoc>(text)?.build()
}

pub fn emit_algebra(a: &WAlgebra) -> String {
    render(&AlgebraDoc::of(a))
}

/// A module over the algebra given alongside it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    /// `act[r][m]`, rows in the parent's element order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    /// Shorthand: `R/J` with `J` generated by these pairs of elements of `R`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<[String; 2]>>,
    /// Shorthand: the zero module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_module: Option<bool>,
}

pub fn load_module(text: &str, parent: &FiniteAlgebra) -> Result<RModule> {
    let d: ModuleDoc = parse(text)?;
    if d.zero_module == Some(true) {
        return Ok(RModule::zero_module(parent));
    }
    if let Some(pairs) = &d.quotient {
        let reg = RModule::regular(parent);
        let idx = |x: &String| parent.index_of(x).ok_or_else(|| Error::UnknownElement(x.clone()));
        let pairs = pairs.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        return Ok(reg.quotient(&crate::algebra::Congruence::generated(&reg, &pairs)?));
    }
    let names = required(&d.elements, "elements")?.clone();
    let zero = names
        .iter()
        .position(|n| Some(n) == d.zero.as_ref())
        .ok_or_else(|| malformed("field zero", "an element name"))?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let act_rows = required(&d.act, "act")?;
    if act_rows.len() != parent.len() || act_rows.iter().any(|r| r.len() != names.len()) {
        return Err(malformed("table act", format!("{} rows of {} entries", parent.len(), names.len())));
    }
    let act = act_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| index.get(x.as_str()).copied().ok_or_else(|| malformed("table act", "an element name")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let add = d.add.as_ref().map(|a| table(&names, a, "add")).transpose()?;
    RModule::from_tables(parent, names, &act, add.as_deref(), zero)
}

pub fn emit_module(m: &RModule) -> String {
    let n = m.len();
    let name = |i: usize| m.names()[i].clone();
    render(&ModuleDoc {
        elements: Some(m.names().to_vec()),
        zero: Some(name(m.zero())),
        act: Some((0..m.parent().len()).map(|r| (0..n).map(|x| name(m.act(r, x))).collect()).collect()),
        add: m
            .has_addition()
            .then(|| (0..n).map(|a| (0..n).map(|b| name(m.add(a, b).expect("additive"))).collect()).collect()),
        ..ModuleDoc::default()
    })
}

/// A finite distributive lattice by its Hasse diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    /// `[a, b]` with `a ⋖ b`.
    pub covers: Vec<[String; 2]>,
    pub bottom: String,
    pub top: String,
}

pub fn load_lattice(text: &str) -> Result<DistLattice> {
    let d: LatticeDoc = parse(text)?;
    let idx = |x: &String| {
        d.elements
            .iter()
            .position(|e| e == x)
            .ok_or_else(|| malformed(format!("element {x:?}"), "a declared element"))
    };
    let covers = d.covers.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
    let l = DistLattice::from_covers(d.elements.clone(), &covers)?;
    if l.bottom() != idx(&d.bottom)? || l.top() != idx(&d.top)? {
        return Err(malformed("bottom/top", "the least and greatest elements"));
    }
    Ok(l)
}

pub fn emit_lattice(l: &DistLattice) -> String {
    let mut covers: Vec<[String; 2]> = l
        .covers()
        .into_iter()
        .map(|(a, b)| [l.name(a).to_string(), l.name(b).to_string()])
        .collect();
    covers.sort();
    let mut elements = l.names().to_vec();
    elements.sort();
    render(&LatticeDoc {
        elements,
        covers,
        bottom: l.name(l.bottom()).to_string(),
        top: l.name(l.top()).to_string(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenDoc {
    pub name: String,
    pub points: Vec<String>,
}

/// A finite space: points, the specialization Hasse edges and the opens.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    /// `[p, q]`: `p` is a specialization of `q`.
    #[serde(default)]
    pub specialization: Vec<[String; 2]>,
    pub opens: Vec<OpenDoc>,
}

/// Opens in the emitted order: fewer points first, then by name.
pub fn canonical_opens(s: &CoherentSpace) -> Vec<usize> {
    let mut order: Vec<usize> = (0..s.opens().len()).collect();
    order.sort_by(|&a, &b| {
        let size = |u: usize| s.open_set(u).iter().filter(|&&x| x).count();
        (size(a), s.opens().name(a)).cmp(&(size(b), s.opens().name(b)))
    });
    order
}

impl SpaceDoc {
    pub fn of(s: &CoherentSpace) -> Self {
        let mut points = s.points().to_vec();
        points.sort();
        let mut specialization: Vec<[String; 2]> = s
            .specialization_covers()
            .into_iter()
            .map(|(p, q)| [s.points()[p].clone(), s.points()[q].clone()])
            .collect();
        specialization.sort();
        let opens = canonical_opens(s)
            .into_iter()
            .map(|u| {
                let mut pts: Vec<String> =
                    (0..s.point_count()).filter(|&p| s.contains(p, u)).map(|p| s.points()[p].clone()).collect();
                pts.sort();
                OpenDoc {
                    name: s.opens().name(u).to_string(),
                    points: pts,
                }
            })
            .collect();
        SpaceDoc {
            points,
            specialization,
            opens,
        }
    }

    /// Opens ordered by inclusion of their point sets.
    pub fn build(&self) -> Result<CoherentSpace> {
        let n = self.points.len();
        let sets = self
            .opens
            .iter()
            .map(|o| {
                let mut set = vec![false; n];
                for p in &o.points {
                    let i = self
                        .points
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| malformed(format!("open {:?}", o.name), format!("declared point, not {p:?}")))?;
                    set[i] = true;
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
        let lattice = DistLattice::from_order(self.opens.iter().map(|o| o.name.clone()).collect(), |a, b| {
            subset(&sets[a], &sets[b])
        })?;
        let space = CoherentSpace::new(self.points.clone(), lattice, sets)?;
        let mut spec: Vec<[String; 2]> = space
            .specialization_covers()
            .into_iter()
            .map(|(p, q)| [space.points()[p].clone(), space.points()[q].clone()])
            .collect();
        spec.sort();
        let mut given = self.specialization.clone();
        given.sort();
        if !given.is_empty() && given != spec {
            return Err(malformed("specialization", "the Hasse edges implied by the opens"));
        }
        Ok(space)
    }
}

pub fn emit_space(s: &CoherentSpace) -> String {
    render(&SpaceDoc::of(s))
}

pub fn load_space(text: &str) -> Result<CoherentSpace> {
    parse::<SpaceDoc>(text)?.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDoc {
    pub open: String,
    pub algebra: AlgebraDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDoc {
    pub from: String,
    pub to: String,
    /// Finite values: image names in the source's element order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<String>>,
    /// Monomial values: exponent matrix, one row per target coordinate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaDoc {
    pub open: String,
    pub element: String,
    pub support: String,
}

/// A weak scheme: space, sheaf values, restrictions and the `β` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    pub topology: String,
    pub space: SpaceDoc,
    pub values: Vec<ValueDoc>,
    /// Only restrictions between distinct opens are listed.
    pub restrictions: Vec<RestrictionDoc>,
    #[serde(default)]
    pub beta: Vec<BetaDoc>,
}

impl SchemeDoc {
    pub fn of(x: &WeakScheme) -> Self {
        let order = canonical_opens(&x.space);
        let l = x.opens();
        let values = order
            .iter()
            .map(|&u| ValueDoc {
                open: l.name(u).to_string(),
                algebra: AlgebraDoc::of(x.value(u)),
            })
            .collect();
        let mut restrictions = Vec::new();
        for &u in &order {
            for &v in order.iter().filter(|&&v| v != u && l.leq(v, u)) {
                let dst = x.value(v);
                let h = x.restriction(u, v);
                let (table, matrix) = match h {
                    AlgHom::Table(t) => {
                        let src = x.value(u).as_finite().expect("finite source");
                        let names = name_order(src.names()).into_iter().map(|i| dst.name(&WElem::Fin(t[i])));
                        (Some(names.collect()), None)
                    }
                    AlgHom::Matrix(m) => (None, Some(m.clone())),
                };
                restrictions.push(RestrictionDoc {
                    from: l.name(u).to_string(),
                    to: l.name(v).to_string(),
                    table,
                    matrix,
                });
            }
        }
        let beta = order
            .iter()
            .flat_map(|&u| {
                let mut rows: Vec<BetaDoc> = x.beta[u]
                    .iter()
                    .map(|(a, v)| BetaDoc {
                        open: l.name(u).to_string(),
                        element: x.value(u).name(a),
                        support: l.name(*v).to_string(),
                    })
                    .collect();
                rows.sort_by(|a, b| a.element.cmp(&b.element));
                rows
            })
            .collect();
        SchemeDoc {
            topology: x.tag.to_string(),
            space: SpaceDoc::of(&x.space),
            values,
            restrictions,
            beta,
        }
    }

    pub fn build(&self) -> Result<WeakScheme> {
        let tag: TopologyTag = self.topology.parse()?;
        let space = self.space.build()?;
        let l = space.opens().clone();
        let open = |name: &str| {
            l.index_of(name)
                .ok_or_else(|| malformed(format!("open {name:?}"), "an open declared in the space block"))
        };
        let mut values: Vec<Option<WAlgebra>> = vec![None; l.len()];
        for v in &self.values {
            values[open(&v.open)?] = Some(v.algebra.build()?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(u, v)| v.ok_or_else(|| malformed(format!("values for {:?}", l.name(u)), "one value per open")))
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions: BTreeMap<(usize, usize), AlgHom> = BTreeMap::new();
        for u in 0..l.len() {
            restrictions.insert((u, u), values[u].identity_hom());
        }
        for r in &self.restrictions {
            let (u, v) = (open(&r.from)?, open(&r.to)?);
            let h = match (&r.table, &r.matrix, &values[v]) {
                (Some(t), None, WAlgebra::Finite(dst)) => AlgHom::Table(
                    t.iter()
                        .map(|y| dst.index_of(y).ok_or_else(|| malformed(format!("restriction {} → {}", r.from, r.to), "an element of the target")))
                        .collect::<Result<_>>()?,
                ),
                (None, Some(m), WAlgebra::Monomial(_)) => AlgHom::Matrix(m.clone()),
                _ => return Err(malformed(format!("restriction {} → {}", r.from, r.to), "a table (finite) or matrix (monomial)")),
            };
            restrictions.insert((u, v), h);
        }
        let sheaf = StructureSheaf::new(l.clone(), values, restrictions.into_iter().collect())?;
        let mut beta = vec![Vec::new(); l.len()];
        for b in &self.beta {
            let u = open(&b.open)?;
            let a = sheaf.value(u).parse(&b.element)?;
            beta[u].push((a, open(&b.support)?));
        }
        WeakScheme::new(tag, space, sheaf, beta)
    }
}

pub fn emit_scheme(x: &WeakScheme) -> String {
    render(&SchemeDoc::of(x))
}

pub fn load_scheme(text: &str) -> Result<WeakScheme> {
    parse::<SchemeDoc>(text)?.build()
}

/// Two charts and an isomorphism between basic opens of their spectra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueDoc {
    pub topology: String,
    pub left: AlgebraDoc,
    pub right: AlgebraDoc,
    pub along: AlongDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlongDoc {
    /// Family of the left algebra whose open is glued.
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// Monomial charts: exponent matrix from the left value to the right one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i32>>>,
    /// Finite charts: `[a, h(a)]` for each element of the left value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<[String; 2]>>,
}

impl GlueDoc {
    /// Glues `Spec left` and `Spec right` along the given basic opens.
    pub fn build(&self, limits: &Limits) -> Result<GluedScheme> {
        let tag: TopologyTag = self.topology.parse()?;
        let (a, b) = (self.left.build()?, self.right.build()?);
        let (x, y) = (spec_scheme(&a, tag, limits)?, spec_scheme(&b, tag, limits)?);
        let open = |s: &SpecScheme, alg: &WAlgebra, names: &[String]| -> Result<usize> {
            let fam = names.iter().map(|n| alg.parse(n)).collect::<Result<Vec<_>>>()?;
            s.spectrum.open_of_family(&fam, limits)
        };
        let (u, v) = (open(&x, &a, &self.along.left)?, open(&y, &b, &self.along.right)?);
        let h = match (&self.along.table, &self.along.matrix, x.scheme.value(u), y.scheme.value(v)) {
            (Some(pairs), None, WAlgebra::Finite(src), WAlgebra::Finite(dst)) => {
                let mut table = vec![None; src.len()];
                for [a, b] in pairs {
                    let i = src.index_of(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
                    table[i] = Some(dst.index_of(b).ok_or_else(|| Error::UnknownElement(b.clone()))?);
                }
                AlgHom::Table(
                    table
                        .into_iter()
                        .collect::<Option<_>>()
                        .ok_or_else(|| malformed("along.table", "an image for every element of the left value"))?,
                )
            }
            (None, Some(m), WAlgebra::Monomial(_), WAlgebra::Monomial(_)) => AlgHom::Matrix(m.clone()),
            _ => return Err(malformed("along", "a table for finite charts or a matrix for monomial ones")),
        };
        let datum = glue_along_iso(&x.scheme, u, &y.scheme, v, &h, limits)?;
        glue(&x.scheme, &y.scheme, &datum, limits)
    }
}

pub fn load_glue(text: &str, limits: &Limits) -> Result<GluedScheme> {
    parse::<GlueDoc>(text)?.build(limits)
}

/// Sorted display names of a list of elements.
pub fn element_names(a: &WAlgebra, xs: &[WElem]) -> Vec<String> {
    let mut out: Vec<String> = xs.iter().map(|x| a.name(x)).collect();
    out.sort();
    out
}

/// Parses a comma-separated element list.
pub fn parse_elements(a: &WAlgebra, list: &str) -> Result<Vec<WElem>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| a.parse(s))
        .collect()
}
