//! Exact classification of directions on double odd-gon translation surfaces.

pub mod error;
pub mod field;
pub mod linalg;
pub mod model;
pub mod expansion;
pub mod survey;
pub mod expr;
pub mod flow;
pub mod witness;

pub use error::{Error, Result};
pub use field::{make_field, ExtContext, ExtElement, Field, FieldElement};
pub use linalg::{Mat2, Scalar, Vec2};
