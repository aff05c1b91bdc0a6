//! Spin-tomographic probability representation of fermion systems.
//!
//! Fermionic modes are mapped onto spin-1/2 slots by the Jordan-Wigner
//! construction. States and operators are then described by functions on
//! projections and directions, with a star-product that reproduces operator
//! multiplication.

pub mod cli;
pub mod config;
pub mod error;
pub mod fermi;
pub mod fermion;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod rotation;
pub mod star;
pub mod tomography;
pub mod verify;

pub use config::{AngleUnit, OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use fermi::{ClosedFormSymbol, FermiOperator, OmegaKind};
pub use fermion::{build_algebra, FermionAlgebra, StateVector, MAX_MODES};
pub use linalg::ComplexMatrix;
pub use operators::NamedOperator;
pub use rotation::{euler_rotation, sphere_quadrature, Direction, EulerAngles, SphereQuadrature};
pub use star::{star, star_kernel, StarProduct};
pub use tomography::{
    dequantizer, quantizer, reconstruct, symbol, tomogram, GridSymbol, ModePoint, OperatorSymbol,
    SpinProjection, Symbol, TomoGrid, Tomogram,
};
