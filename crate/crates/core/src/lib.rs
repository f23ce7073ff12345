//! Spectra, energy and energy bounds of digraphs with self-loops.
//!
//! A digraph `D_S` on vertices `0..n` carries arcs between distinct vertices
//! and a loop on each vertex of `S`. Its energy is
//! `E(D_S) = Σ |Re λ_i − σ/n|` over the eigenvalues of the 0/1 adjacency
//! matrix, where `σ = |S|`.
//!
//! ```
//! use loopspec::{Digraph, GraphContext64};
//!
//! let k2_plus = Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap();
//! let ctx = GraphContext64::new(&k2_plus);
//! assert!((ctx.energy().unwrap() - 5f64.sqrt()).abs() < 1e-12);
//! ```
//!
//! The numeric core is generic over [`Real`] (`f32` and `f64`); the `*64`
//! aliases fix `f64`.

pub mod bounds;
pub mod decomposition;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod scalar;
pub mod scc;
pub mod spectral;
pub mod tol;

pub use bounds::{all_bounds, certify, BoundCertificate, BoundId, BoundOptions, BoundsError};
pub use decomposition::{analyze, ComponentAnalysis};
pub use enumerate::{iterate_all, random_digraph, sweep, SweepConfig, SweepReport, Theorem};
pub use graph::{generate, Digraph, Family, GraphError, GraphStats, LoopGraph};
pub use linalg::{CharPoly, LinalgError, Matrix, Spectrum};
pub use scalar::Real;
pub use scc::{prune_non_cycle_arcs, strong_components, SccPartition};
pub use spectral::{energy, EnergyReport, GraphContext, SpectralError};

pub type Spectrum64 = Spectrum<f64>;
pub type Matrix64 = Matrix<f64>;
pub type GraphContext64 = GraphContext<f64>;
pub type EnergyReport64 = EnergyReport<f64>;
pub type ComponentAnalysis64 = ComponentAnalysis<f64>;
pub type RegularEnergySum64 = spectral::RegularEnergySum<f64>;
