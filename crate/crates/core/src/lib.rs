pub mod arc;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod mather;
pub mod poly;
pub mod toric;
pub mod tower;
