//! Numerical and exact tools around vector-valued modular forms, the
//! Kudla-Millson and Borcherds Schwartz forms in the Fock model, theta
//! series over indefinite lattices and regularized theta lifts.

pub mod checks;
pub mod error;
pub mod fock;
pub mod fqm;
pub mod io;
pub mod lift;
pub mod numdiff;
pub mod qseries;
pub mod special;
pub mod theta;

pub use error::{Error, Result};
pub use fqm::{discriminant_group, DiscriminantForm, Gen, Lattice, MetaplecticWord, WeilRep};
pub use lift::{LiftOptions, LiftValue};
pub use qseries::{Coef, FormClass, VVSeries, WeakMaassForm};
pub use theta::{GrassmannPoint, Kernel, ThetaValue};
