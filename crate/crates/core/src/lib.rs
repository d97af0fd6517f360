//! Exact state sums for two-dimensional pin- theories built from half twist
//! algebras over Q(zeta_8).

pub mod axioms;
pub mod cyclo;
pub mod error;
pub mod linalg;
pub mod pingeo;
mod rational;
pub mod ribbon;
pub mod superalgebra;
pub mod tensor;
pub mod tqft;

pub use axioms::{Axiom, AxiomReport};
pub use cyclo::Cyclo;
pub use error::{Error, Result};
pub use pingeo::{PinSurfacePresentation, RibbonCurve};
pub use ribbon::{LinearBlock, RibbonDiagram};
pub use superalgebra::{AlgebraElement, Family, HalfTwistAlgebra};
pub use tensor::Tensor;
pub use tqft::{Sector, StateSpace, SurfaceSpec};
