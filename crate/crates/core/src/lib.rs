//! Lovász–Saks–Schrijver ideals and permanental edge ideals of graphs in two
//! dimensions: exact polynomial arithmetic, a Buchberger oracle, the
//! combinatorial Gröbner basis and primary decomposition read off from the
//! graph, and samplers for the variety of orthogonal representations.

pub mod builders;
pub mod decomp;
pub mod error;
pub mod field;
pub mod gbasis;
pub mod graph;
pub mod groebner;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod suites;
pub mod variety;

pub use builders::PrimeComponent;
pub use decomp::{DecompositionReport, Verdict};
pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use gbasis::{AdmissiblePath, GbElement, GbKind};
pub use graph::{ComponentData, ConnectivityClass, Graph, GraphJson, SpecialPoint, VertexSet};
pub use groebner::{Budget, Ideal, ReducedGB};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{Ring, RingContext};
pub use variety::RepresentationSample;
