//! Coherent Grothendieck topologies on algebras: covers, descent and locality.

mod axioms;
mod descent;
mod local;
mod unity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use axioms::{topology_axiom_check, AxiomReport};
pub(crate) use axioms::subsets;
pub use descent::{descent_check, equalizer, Equalizer, ExactnessReport};
pub use local::{is_local_morphism, is_local_object};
pub use unity::{partition_of_unity, verify_partition};

use crate::algebra::{WAlgebra, WElem};
use crate::error::{Error, Result};
use crate::Limits;

/// Which families of element localizations count as covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyTag {
    /// The ideal generated by the family is the unit ideal.
    Zar,
    /// The descent fork is exact.
    Tot,
    /// The algebra is trivial or some member is a unit.
    Min,
}

impl TopologyTag {
    pub const ALL: [TopologyTag; 3] = [TopologyTag::Min, TopologyTag::Zar, TopologyTag::Tot];

    pub fn as_str(self) -> &'static str {
        match self {
            TopologyTag::Zar => "zar",
            TopologyTag::Tot => "tot",
            TopologyTag::Min => "min",
        }
    }
}

impl fmt::Display for TopologyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TopologyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zar" => Ok(TopologyTag::Zar),
            "tot" => Ok(TopologyTag::Tot),
            "min" => Ok(TopologyTag::Min),
            other => Err(Error::Malformed {
                position: format!("topology {other:?}"),
                expected: "one of zar, tot, min".into(),
            }),
        }
    }
}

/// A finite family `{R_{fᵢ} → R}` tested against a topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFamily {
    pub elements: Vec<WElem>,
    pub tag: TopologyTag,
}

impl CoverFamily {
    pub fn new(elements: Vec<WElem>, tag: TopologyTag) -> Self {
        CoverFamily { elements, tag }
    }

    pub fn is_cover(&self, r: &WAlgebra, limits: &Limits) -> Result<bool> {
        is_cover(r, &self.elements, self.tag, limits)
    }
}

/// The cover predicate of each topology.
///
/// The empty family covers exactly the trivial algebra, under every tag.
pub fn is_cover(r: &WAlgebra, family: &[WElem], tag: TopologyTag, limits: &Limits) -> Result<bool> {
    if let Some(x) = family.iter().find(|x| !r.contains(x)) {
        return Err(Error::UnknownElement(format!("{x:?}")));
    }
    match tag {
        TopologyTag::Zar => Ok(r.generates_unit(family)),
        TopologyTag::Min => Ok(r.is_trivial() || family.iter().any(|f| r.is_unit(f))),
        TopologyTag::Tot => match r {
            WAlgebra::Finite(_) => Ok(descent_check(r, family, limits)?.exact()),
            WAlgebra::Monomial(m) => Ok(m.descent_exact(
                &family
                    .iter()
                    .map(|x| match x {
                        WElem::Mono(f) => Ok(f.clone()),
                        other => Err(Error::UnknownElement(format!("{other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            )),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, MonomialAlgebra};

    #[test]
    fn z6_two_three() {
        let r = WAlgebra::from(FiniteAlgebra::zmod(6));
        let fam = [WElem::Fin(2), WElem::Fin(3)];
        let l = Limits::default();
        assert!(is_cover(&r, &fam, TopologyTag::Zar, &l).unwrap());
        assert!(is_cover(&r, &fam, TopologyTag::Tot, &l).unwrap());
        assert!(!is_cover(&r, &fam, TopologyTag::Min, &l).unwrap());
    }

    #[test]
    fn identity_cover_everywhere() {
        let l = Limits::default();
        for r in [WAlgebra::from(FiniteAlgebra::zmod(4)), FiniteAlgebra::truncated_power(3).into()] {
            for tag in TopologyTag::ALL {
                assert!(is_cover(&r, &[r.one()], tag, &l).unwrap());
            }
        }
    }

    #[test]
    fn empty_family_covers_only_trivial() {
        let l = Limits::default();
        let triv = WAlgebra::from(FiniteAlgebra::zmod(1));
        let z2 = WAlgebra::from(FiniteAlgebra::zmod(2));
        for tag in TopologyTag::ALL {
            assert!(is_cover(&triv, &[], tag, &l).unwrap());
            assert!(!is_cover(&z2, &[], tag, &l).unwrap());
        }
    }

    #[test]
    fn tot_on_the_plane_is_coarser_than_zar() {
        let r = WAlgebra::from(MonomialAlgebra::with_vars(&["x", "y"], &[]).unwrap());
        let l = Limits::default();
        let fam = |s: &[&str]| s.iter().map(|x| r.parse(x).unwrap()).collect::<Vec<_>>();
        assert!(is_cover(&r, &fam(&["x", "y"]), TopologyTag::Tot, &l).unwrap());
        assert!(!is_cover(&r, &fam(&["x", "y"]), TopologyTag::Zar, &l).unwrap());
        assert!(!is_cover(&r, &fam(&["x", "x*y"]), TopologyTag::Tot, &l).unwrap());
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("tot".parse::<TopologyTag>().unwrap(), TopologyTag::Tot);
        assert!("zariski".parse::<TopologyTag>().is_err());
    }
}
