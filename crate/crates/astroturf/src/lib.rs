//! Batch toolkit for election-tweet corpora: ingest and filtering,
//! landscape analytics, troll-list matching, account feature extraction,
//! classifier training and evaluation, plus a seeded synthetic-corpus
//! generator for desk-scale experiments.

pub mod analytics;
pub mod charts;
pub mod config;
pub mod evalrun;
pub mod featurize;
pub mod ingest;
pub mod labels;
pub mod manifest;
pub mod modelio;
pub mod store;
pub mod synth;
pub mod trolls;
pub mod tweet;

pub use astroturf_core as core;
