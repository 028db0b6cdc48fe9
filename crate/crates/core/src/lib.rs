//! Rhombus-tile stabilizer codes: Pauli algebra, lattice constructions,
//! code verification and dephasing dynamics of encoded states.

pub mod code;
pub mod dephasing;
pub mod engine;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod pauli;
pub mod state;

pub use code::{CodeParameters, CodeSpec, LogicalPair};
pub use error::{CodeError, NoiseError, PauliError, StateError};
pub use pauli::{Letter, PauliOperator};
pub use state::{PureState, SparseState};
