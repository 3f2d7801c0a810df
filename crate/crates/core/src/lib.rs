//! Exact-arithmetic engine for local singularity invariants of formal
//! hypersurface sections.
//!
//! Everything reduces to linear algebra in the finite-dimensional jet spaces
//! `A/m^k` of a power series ring `A = K[[x_1..x_n]]`: ideals are carried as
//! echelonized truncations, and lengths, Hilbert-Samuel profiles, Milnor and
//! Tjurina numbers, singular-locus schemes and multiplicity tuples are all
//! read off from colengths of those truncations. On top of the kernel sit
//! finite-level membership predicates for jet-defined classes of
//! hypersurfaces, a randomized witness search over families, semicontinuity
//! probes, and a set of end-to-end worked scenarios.
//!
//! All arithmetic is exact: coefficients live in `Q` or in a prime field
//! `F_p`. There is no floating point anywhere in the engine.

pub mod amac;
pub mod cache;
pub mod error;
pub mod field;
pub mod ideal;
pub mod job;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod profile;
pub mod rng;
pub mod scenario;
pub mod scheme;
pub mod singular;
pub mod tuple;
pub mod witness;

pub use error::Error;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use ideal::IdealTruncation;
pub use monomial::Monomial;
pub use poly::TruncatedPoly;
pub use scheme::SchemePresentation;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
