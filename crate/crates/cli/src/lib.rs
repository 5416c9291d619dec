//! Text front end for the analysis library: a polynomial expression
//! grammar, the map-file format, and serializable reports.

pub mod mapfile;
pub mod parse;
pub mod report;
