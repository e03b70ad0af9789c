//! Linear layered probabilistic shaping.
//!
//! Encodes to shaped codewords of a binary linear code by splitting its
//! parity-check matrix into a syndrome former `H_s` and a wide parity former
//! `H_p`, and choosing the parity bits with a syndrome distribution matcher
//! (SDM) that returns the cheapest member of the coset `{p : p·H_pᵀ = s}`.
//!
//! The crate is `no_std` and needs only `alloc`:
//!
//! - [`gf2`]: packed GF(2) vectors and matrices
//! - [`ldpc`]: QC-LDPC lifting and the `H_s | H_p` layout
//! - [`sdm`]: the syndrome distribution matcher
//! - [`codec`]: systematic, layered and dirty-paper encoders
//! - [`channel`]: the interference channel and its demappers
//! - [`bp`]: sum-product decoding
//! - [`rates`]: achievable-rate integrals
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bp;
pub mod channel;
pub mod codec;
pub mod error;
pub mod gf2;
pub mod ldpc;
pub mod rates;
pub mod sdm;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
