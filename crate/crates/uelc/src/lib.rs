//! Link community detection through link-node-link random walk dynamics.
//!
//! A community of links is a set of edges densely interrelated relative to
//! the rest of the network; nodes inherit (possibly multiple) memberships
//! from their incident edges. This crate detects such communities by running
//! a random walk whose states are edges, thresholding the walk's l-step
//! probability vector at its global mixing value `1/m`, and recursively
//! subdividing wherever the split raises link density.
//!
//! Module map:
//!
//! - [`graph`]: edge-list ingestion, canonical edge indexing, subgraphs.
//! - [`linkdyn`]: the transition operator over edges and l-step propagation.
//! - [`spectral`]: `lambda_2` of the walk's Markov generator and the step
//!   bound derived from it.
//! - [`partition`]: the recursive link-community detector and node covers.
//! - [`nodecomm`]: the extension to non-overlapping node communities.
//! - [`mod@bench`]: planted-overlap benchmark generation and evaluation metrics
//!   (FVCC, Jaccard overlap index, NMI, cover statistics).
//! - [`cli`]: the `uelc` command-line front end.
//!
//! Every detection entry point is deterministic for a fixed RNG seed; see
//! `examples/` for runnable walkthroughs of each capability.

pub mod bench;
pub mod cli;
pub mod graph;
pub mod linkdyn;
pub mod nodecomm;
pub mod partition;
pub mod spectral;
