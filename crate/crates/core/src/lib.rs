//! Exact computations in the SU(2) Witten-Reshetikhin-Turaev TQFT at an even
//! level p: cyclotomic arithmetic, Temperley-Lieb evaluation of colored
//! trivalent networks, recoupling theory, spine bases of V_p(S, k), curve
//! operators, Dehn twists, point-pushing maps, and irreducibility tests for
//! the algebras they generate.

pub mod cyclo;
pub mod error;
pub mod matrix;
pub mod recoupling;
pub mod repalg;
pub mod spine;
pub mod tldiag;
pub mod tqft_ops;

pub use cyclo::{quantum_factorial, quantum_int, CycloContext, CycloNum};
pub use error::{Error, Result};
