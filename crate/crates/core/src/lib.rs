pub mod census;
pub mod cli;
pub mod cliffordlab;
pub mod complexes;
pub mod files;
pub mod models;
pub mod qlinalg;
pub mod suite;
