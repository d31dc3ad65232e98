//! Completely regular codes with covering radius 1 in Hamming graphs H(n,q).
//!
//! The crate builds codes from explicit constructions, verifies complete
//! regularity with exact integer certificates, analyzes the clique
//! structure of codes in H(3,q), and enumerates all such codes in small
//! spaces as an independent check of the feasibility predicates.

pub mod bits;
pub mod constructions;
pub mod error;
pub mod hamming;
pub mod parameters;
pub mod search;
pub mod stochastic;
pub mod structure;
pub mod verifier;

pub use error::{Error, Result};
pub use hamming::{make_space, Clique, Code, Hyperface, Space, Symbol, Vertex};
pub use verifier::{check_crc, CrcCertificate, CrcFailure, CrcVerdict};
