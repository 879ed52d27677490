//! Exact computational algebra for nodal octic surfaces in projective
//! three-space: polynomial arithmetic over prime fields and the rationals,
//! reduced Gröbner bases with elimination, saturation and Hilbert functions,
//! and the certification pipelines built on top of them.

pub mod curve;
pub mod field;
pub mod formats;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod octic;
pub mod parse;
pub mod poly;
pub mod univariate;
pub mod zerodim;

pub use curve::{curve_report, CurveError, CurveMapSpec, CurveReport};
pub use field::{Field, FieldError, FieldSpec, Fp, Rationals, DEFAULT_PRIME};
pub use formats::{CurveFile, FormatError, IdealFile, TripleFile};
pub use groebner::{Budget, Engine, GbError, GroebnerBasis};
pub use hilbert::{hilbert_function, hilbert_polynomial, HilbertPolynomial, HilbertSeries};
pub use ideal::Ideal;
pub use invariants::{bundle_invariants, degree_nine_obstruction, BundleInvariants, Obstruction};
pub use linalg::minimal_generator_profile;
pub use monomial::{Monomial, MonomialOrder};
pub use octic::{run_pipeline, OcticError, OcticReport, PipelineOptions, SectionTriple};
pub use parse::{parse_polynomial, ParseError};
pub use poly::{random_homogeneous, Polynomial, Ring, RingMismatch, RingRef};
pub use zerodim::{zero_dim_degree, zero_dim_radical_equal, ZeroDimDegree, ZeroDimError};
