//! Graphviz output: Hasse diagrams, point posets and annotated schemes.

use std::fmt::Write;

use crate::algebra::WAlgebra;
use crate::lattice::{CoherentSpace, DistLattice};
use crate::scheme::WeakScheme;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

fn sorted_edges(mut edges: Vec<(String, String)>) -> Vec<(String, String)> {
    edges.sort();
    edges
}

/// Hasse diagram of a lattice, bottom at the bottom.
pub fn lattice_dot(l: &DistLattice, title: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n", quote(title));
    let mut names = l.names().to_vec();
    names.sort();
    for n in &names {
        writeln!(out, "  {};", quote(n)).unwrap();
    }
    let edges = l.covers().into_iter().map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string())).collect();
    for (a, b) in sorted_edges(edges) {
        writeln!(out, "  {} -> {};", quote(&a), quote(&b)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The specialization poset: an edge `p -> q` when `q` generalizes `p`, so
/// closed points sit at the bottom.
pub fn space_dot(s: &CoherentSpace, title: &str) -> String {
    poset(s, title, |_| None)
}

fn poset(s: &CoherentSpace, title: &str, label: impl Fn(usize) -> Option<String>) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=ellipse];\n", quote(title));
    let mut order: Vec<usize> = (0..s.point_count()).collect();
    order.sort_by(|&a, &b| s.points()[a].cmp(&s.points()[b]));
    for p in order {
        match label(p) {
            Some(l) => writeln!(out, "  {} [label={}];", quote(&s.points()[p]), quote(&l)).unwrap(),
            None => writeln!(out, "  {};", quote(&s.points()[p])).unwrap(),
        }
    }
    let edges = s
        .specialization_covers()
        .into_iter()
        .map(|(p, q)| (s.points()[p].clone(), s.points()[q].clone()))
        .collect();
    for (p, q) in sorted_edges(edges) {
        writeln!(out, "  {} -> {};", quote(&p), quote(&q)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// A short name for an algebra, e.g. `ring, 3 elements` or `F1[x, y±]`.
pub fn describe(a: &WAlgebra) -> String {
    match a {
        WAlgebra::Finite(f) => {
            let n = f.len();
            format!("{}, {n} element{}", f.kind().tag(), if n == 1 { "" } else { "s" })
        }
        WAlgebra::Monomial(m) if m.is_trivial() => "0".into(),
        WAlgebra::Monomial(m) => {
            let vars: Vec<String> = (0..m.rank())
                .map(|i| if m.inverted()[i] { format!("{}±", m.vars()[i]) } else { m.vars()[i].clone() })
                .collect();
            format!("F1[{}]", vars.join(", "))
        }
    }
}

/// The point poset with each point labelled by its stalk.
pub fn scheme_dot(x: &WeakScheme, title: &str) -> String {
    poset(&x.space, title, |p| {
        Some(format!("{}\n{}", x.space.points()[p], describe(x.value(x.space.minimal_open(p)))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};
    use crate::scheme::{projective_line, spec_scheme};
    use crate::site::TopologyTag;
    use crate::Limits;

    #[test]
    fn two_points_no_edges() {
        let s = spec_scheme(&FiniteAlgebra::zmod(6).into(), TopologyTag::Zar, &Limits::default()).unwrap();
        let d = space_dot(&s.scheme.space, "Z/6");
        assert_eq!(d.matches(";\n").count(), 2 + 2);
        assert!(!d.contains("->"));
    }

    #[test]
    fn line_has_one_edge() {
        let s = spec_scheme(&MonomialAlgebra::polynomial(1).into(), TopologyTag::Zar, &Limits::default()).unwrap();
        let d = scheme_dot(&s.scheme, "line");
        assert_eq!(d.matches("->").count(), 1);
        assert!(d.contains("(0)\\nF1[x±]"), "{d}");
    }

    #[test]
    fn projective_line_shape() {
        let (p1, _, _) = projective_line(&Limits::default()).unwrap();
        assert_eq!(scheme_dot(&p1.scheme, "P1").matches("->").count(), 2);
    }

    #[test]
    fn lattice_edges_and_quotes() {
        let l = DistLattice::boolean(2);
        let d = lattice_dot(&l, "say \"hi\"");
        assert!(d.starts_with("digraph \"say \\\"hi\\\"\""));
        assert_eq!(d.matches("->").count(), 4);
    }
}
