//! Exact computer algebra for polynomial maps: coefficient fields,
//! sparse polynomial arithmetic, Groebner bases, and the map-level
//! analyses built on top of them.

pub mod analysis;
pub mod conjecture;
pub mod factor;
pub mod field;
pub mod groebner;
pub mod oracle;
pub mod poly;
