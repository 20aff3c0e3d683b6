//! Covering spectra of metric graphs, flat tori and Heisenberg manifolds,
//! with tools for comparing spectra and checking Sunada triples.
//!
//! The numeric core is generic over the scalar type. `f32`, `f64` and the
//! exact [`Rational`] are supported.

pub mod coset;
pub mod cov_spectrum;
pub mod delta_cover;
pub mod error;
pub mod free_group;
pub mod graph;
pub mod heisenberg;
pub mod hnf;
pub mod lab;
pub mod scalar;
pub mod spectrum;
pub mod sunada;
pub mod torus;

pub use cov_spectrum::{
    compute_cov_spectrum, covering_map_f, oracle_cov_spectrum, CoveringSpectrumResult, Decision, MarkedGroupBackend,
    SubgroupChain,
};
pub use delta_cover::{Bounds, GraphBackend, Lift, NormalClosure, Presentation};
pub use error::{Error, Result};
pub use graph::MetricGraph;
pub use heisenberg::{HeisenbergManifold, Regime};
pub use scalar::{LengthValue, Rational, Scalar, SqrtOf, Unit};
pub use spectrum::{hausdorff_distance_zero, AnchorSet, Spectrum};
pub use torus::{Lattice, LatticeBackend};

pub type RationalGraph = MetricGraph<Rational>;
pub type FloatGraph = MetricGraph<f64>;
pub type RationalLattice = Lattice<Rational>;
pub type FloatLattice = Lattice<f64>;
pub type ExactHeisenberg = HeisenbergManifold<Rational>;
pub type FloatHeisenberg = HeisenbergManifold<f64>;
pub type CovSpectrum = Spectrum<LengthValue>;
