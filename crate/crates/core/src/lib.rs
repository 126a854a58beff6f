//! Exact finite models of varieties of Borel subgroups in relative position.
//!
//! Everything is realized for `GL_n` over finite fields: Borels are
//! complete flags, relative positions are permutations, and the varieties
//! `O(w)`, `O̅(s_1, ..., s_r)` and their Deligne–Lusztig cousins are
//! enumerated as point sets over `F_q`.

pub mod dl;
pub mod error;
pub mod flags;
pub mod gf;
pub mod matrix;
pub mod orbits;
pub mod poly;
pub mod verify;
pub mod weyl;

pub use dl::{DLSpec, DLVariety};
pub use error::{Error, Result};
pub use flags::{Flag, FlagSpace, PositionTuple, TupleRecord};
pub use gf::{make_field, FieldCtx, FieldElement};
pub use matrix::Matrix;
pub use poly::CountPoly;
pub use weyl::{CoxeterGroup, TypeA, WeylElement, Word};
