//! Test-side oracles that share no code with the engine: the published
//! tables typed in by hand, and a brute-force evaluator over them.

#![allow(dead_code)]

pub mod oracle;
pub mod published;
