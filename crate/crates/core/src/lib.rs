pub mod cli;
pub mod cyclotomic;
pub mod dualizer;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod selfdual;
pub mod substitution;
