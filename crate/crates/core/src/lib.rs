pub mod cli;
pub mod nmatrix;
pub mod proofcheck;
pub mod propositional;
pub mod semantics;
pub mod syntax;
