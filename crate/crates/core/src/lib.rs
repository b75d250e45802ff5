//! Spectral analysis, simulation and input-to-state stability certificates
//! for a clamped-free string with Kelvin–Voigt damping,
//!
//! ```text
//! y_tt − (α y_x + β y_tx)_x = u,   y(t, 0) = 0,   (α y_x + β y_tx)(t, 1) = d(t).
//! ```
//!
//! The state space is `H = H¹_L(0,1) × L²(0,1)` with the energy inner
//! product. Trajectories are synthesized mode by mode from the closed-form
//! eigenstructure and cross-checked against a finite-difference solver.

pub mod error;
pub mod fd;
pub mod io;
pub mod iss;
pub mod modal;
pub mod quadrature;
pub mod scenario;
pub mod signal;
pub mod spectrum;
pub mod state;

pub use error::{Error, Result};
pub use fd::{simulate_fd, FdConfig};
pub use iss::{certificate, decay_rate, verify_trajectory, IssCertificate, VerificationReport};
pub use modal::{simulate_spectral, SimulationConfig, SolverKind, Trajectory};
pub use signal::{BoundarySignal, DistributedSignal, SpatialProfile};
pub use spectrum::{validate_params, ModeData, ModeIndex, Sign, StringParams};
pub use state::{CoefficientSet, Grid, ModalBasis, StateVector};
