//! Lattice-theoretic spectra of commutative monoid objects.
//!
//! Finite distributive lattices and their Stone duals, prime spectra built
//! from radical ideal semirings, coherent Grothendieck topologies checked by
//! brute-force descent, structure sheaves, gluing of affine pieces and the
//! module-vanishing test for the Zariski topology. Everything is exact and
//! exhaustive at desk scale: finite tables and monomial algebras.

pub mod algebra;
pub mod catalog;
pub mod doc;
pub mod dot;
pub mod error;
pub mod lattice;
pub mod scheme;
pub mod sheaves;
pub mod site;
pub mod spectrum;

pub use algebra::{
    AlgHom, Congruence, FiniteAlgebra, FiniteKind, Ideal, Mono, MonomialAlgebra, OperatorTerm, RModule, WAlgebra,
    WElem,
};
pub use error::{Error, Result};
pub use lattice::{CoherentSpace, DistLattice, IdempotentSemiring, LatticeIso};
pub use scheme::{StructureSheaf, WeakScheme};
pub use site::{CoverFamily, ExactnessReport, TopologyTag};
pub use spectrum::{OpenClassLattice, Spectrum};

/// Size bounds for the exhaustive constructions.
///
/// Every bound is checked before the work it guards; exceeding one yields
/// [`Error::SizeGuard`] naming the bound to raise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Lower sets enumerated by [`lattice::lower_set_lattice`].
    pub lower_sets: usize,
    /// Carrier size accepted by [`lattice::comp`].
    pub lattice: usize,
    /// Elements of an ideal semiring.
    pub ideals: usize,
    /// Classes of an open-class lattice.
    pub classes: usize,
    /// Tuples enumerated in one equalizer.
    pub equalizer: usize,
    /// Maximal degree of monomials in the generator pool.
    pub pool_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lower_sets: 1 << 16,
            lattice: 1 << 12,
            ideals: 1 << 12,
            classes: 1 << 12,
            equalizer: 1 << 20,
            pool_degree: 3,
        }
    }
}
