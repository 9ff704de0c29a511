//! Decoherence of Fock number states and their superpositions in
//! single-mode Gaussian channels.
//!
//! The purity `μ(t) = Tr ρ²` is computed along independent routes that
//! cross-check each other:
//!
//! * closed forms for number states in thermal channels and for the
//!   `(|0⟩ + e^{iϑ}|1⟩)/√2` superposition in arbitrary Gaussian channels,
//! * a reduced radial integral for number states in squeezed channels,
//! * generic adaptive phase-space quadrature of `|χ|²`,
//! * a truncated Fock-basis Lindblad integration ([`oracle`]).
//!
//! Time is always measured in units of `1/γ` by the purity routines
//! (`gamma_t` arguments). The channel and characteristic-function layers
//! take a physical time together with [`channel::ChannelParams::gamma`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod charfun;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod par;
pub mod purity;
pub mod quadrature;
pub mod specialfn;

pub use channel::{BathSpec, ChannelParams, CovMatrix2};
pub use charfun::{CatPhase, CharFunction};
pub use error::{Error, Result};
pub use oracle::{FockDensity, IntegratorCtrl};
pub use par::Execution;
pub use purity::{Path, PuritySeries};
pub use specialfn::PolyOrder;

pub use num_complex::Complex64;
