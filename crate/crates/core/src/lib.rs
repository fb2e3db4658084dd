//! Open-system density-matrix toolbox: Kraus noise channels, entanglement
//! and coherence measures, Lindblad and collision-model dynamics, and
//! selective measurement protection schemes.
//!
//! Conventions used throughout:
//! * composite bases are ordered lexicographically with subsystem 0 as the
//!   leftmost (slowest) tensor factor;
//! * the excited qubit level is basis index 1 and sigma_minus = |0><1|;
//! * entropy and coherence use log base 2;
//! * unnormalized inputs are rejected, never silently normalized.

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod measures;
pub mod protection;
pub mod qmat;
pub mod states;
pub mod tol;

pub use channels::KrausChannel;
pub use dynamics::{
    CollisionModel, EMOscillatorModel, EmSweep, EsdMeasure, LindbladModel, ScatteringEnvironment,
    TimeFunction, Trajectory,
};
pub use error::{Error, Result};
pub use measures::{ThermalConcurrence, ThermalParams};
pub use num_complex::Complex64;
pub use protection::{ProtectionReport, Scheme, SelectiveOperation, Strengths};
pub use qmat::{ComplexMatrix, SpectrumResult, MAX_TENSOR_DIM};
pub use states::{BellKind, DensityMatrix, MixtureTerm, StateJson};
