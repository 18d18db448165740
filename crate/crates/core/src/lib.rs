//! Exact decision procedures for tiles and arithmetic sets.

pub mod exactlin;
pub mod exec;
pub mod freegrp;
pub mod intpoly;
pub mod rational;
pub mod sweep;
pub mod zarith;
