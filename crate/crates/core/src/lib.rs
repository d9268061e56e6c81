//! Biharmonic-algebra function theory and plane-strain reconstruction.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: the commutative algebra 𝔹 and its nilpotent decomposition.
//! - [`holomorphic`]: Taylor polynomials on the unit disk, boundary Fourier
//!   series and the classical Schwarz operator.
//! - [`monogenic`]: monogenic 𝔹-valued functions and their CR / biharmonic
//!   residual probes.
//! - [`schwarz`]: the (1-4) boundary value problem on the disk.
//! - [`elasticity`]: displacement gradients, Airy second derivatives,
//!   stresses and displacements from boundary values of `u_x`, `v_y`.
//! - [`cli`]: config parsing, grid output and the verification battery
//!   behind the `biharm` binary.

pub mod algebra;
pub mod cli;
pub mod dd;
pub mod elasticity;
pub mod error;
pub mod fd;
pub mod grid;
pub mod holomorphic;
pub mod monogenic;
pub mod quadrature;
pub mod schwarz;

pub use algebra::{BElement, NilpotentForm};
pub use elasticity::{LameConstants, V2Formula};
pub use error::{Error, Result};
pub use grid::{FieldGrid, PolarGrid};
pub use holomorphic::{BoundaryFunction, TaylorSeries};
pub use monogenic::{ComponentField, MonogenicFunction};
pub use schwarz::{solve_14, Problem14};
