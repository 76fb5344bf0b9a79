//! Dart-based graphs with loops, semiedges and parallel edges; their Jacobians
//! computed through integer Smith normal form; regular coverings; and the
//! action of graph automorphisms on the Jacobian.

pub mod covers;
pub mod dartgraph;
pub mod error;
pub mod intlinalg;
pub mod io;
pub mod jacobian;
pub mod random;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
