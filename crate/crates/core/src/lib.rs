//! High-order discontinuous Galerkin spectral element solver for
//! compressible multicomponent flows where every component is a stiffened
//! gas. The mixture model evolves `(rho, rho v, rho E, Gamma, Pi)`; the EOS
//! parameters `Gamma` and `Pi` are purely transported, which keeps the
//! model independent of the number of components.
//!
//! The discretization collocates interpolation and quadrature at
//! Gauss-Lobatto points, replaces volume fluxes by two-point fluctuations
//! (contact-preserving or entropy-conservative), and couples elements with
//! a nonconservative HLLC solver. Linear scaling limiters keep the nodal
//! values in the admissible set under the supported CFL conditions.

pub mod error;
pub mod fluctuations;
pub mod fv1d;
pub mod harness;
pub mod limiter;
pub mod mesh;
pub mod ops1d;
pub mod riemann;
pub mod solver;
pub mod thermo;
pub mod timestep;

pub use error::{Error, Result};
pub use thermo::{ConservedState, PrimitiveState, Species, SpeciesTable};
