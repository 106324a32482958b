//! Core algorithms for the account-behavior toolkit: text fingerprinting,
//! per-account feature extraction, classifier families and evaluation
//! machinery. The crate is `no_std` (with `alloc`) so the numeric code can
//! be reused outside the batch pipeline.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod compress;
pub mod cv;
pub mod features;
pub mod metrics;
pub mod models;
pub mod rng;
pub mod simhash;
pub mod text;
pub mod timefeat;
