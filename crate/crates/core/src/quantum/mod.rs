//! Minimal state-vector engine: k-qubit registers, the gate set the
//! protocol needs, and computational/Bell-basis measurement with seeded
//! sampling and collapse.

mod gates;
mod measure;
mod state;

pub use measure::{
    BellMeasurement, BellOutcome, MEASUREMENT_NORM_TOLERANCE, PROBABILITY_SUM_TOLERANCE,
};
pub use state::{QubitIndex, StateVector, MAX_QUBITS, NORM_TOLERANCE};
