//! Automorphisms of W: the maps `σ(ε, λ, a, μ)`, inner automorphisms
//! `exp(k ad I_m)`, their normal form, and central lifts.

mod encode;
mod inner;
mod nf;
mod sigma;
mod verify;

pub use encode::{decode_zt, encode_zt, CInftySeq};
pub use inner::{apply_inner, InnerWord};
pub use nf::{
    compose_nf, normalize_word, parse_automorphism, parse_word, AutomorphismNF, Generator,
};
pub use sigma::{apply_sigma, compose_sigma, invert_sigma, SigmaParams};
pub use verify::{
    verify_automorphism, verify_homomorphism, AutomorphismReport, BracketViolation, CentralLift,
    HomomorphismCheck,
};
