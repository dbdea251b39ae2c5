//! Semisimple cohomological field theories, the upper-triangular loop-group
//! action on them, and the period/monodromy side of simple elliptic
//! singularities.
//!
//! The crate is organized around one pipeline: bootstrap a genus-0 potential
//! from classical seeds, build the canonical frame and R-matrix of the
//! resulting Frobenius chart, push the trivial theory through the quantized
//! action to reconstruct higher-genus ancestor correlators as exact rational
//! q-series, and test those series against rings of quasi-modular forms.
//! Each stage is usable on its own; see `examples/`.

pub mod bmodel;
pub mod bootstrap;
pub mod fock;
pub mod frobenius;
pub mod mat;
pub mod mpc;
pub mod point;
pub mod qmod;
pub mod report;
pub mod ring;
pub mod series;

pub use ring::{Rat, Ring, QQ};
