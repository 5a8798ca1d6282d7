//! Computational workbench for exact structures on module categories of
//! representation-finite algebras over prime fields.

pub mod algebra;
pub mod approx;
pub mod category;
pub mod exact;
pub mod ext;
pub mod linalg;
pub mod relative;

pub use category::Category;
