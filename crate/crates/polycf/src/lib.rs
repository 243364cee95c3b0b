pub mod automata;
pub mod cli;
pub mod diophantine;
pub mod groups;
pub mod linalg;
pub mod stratify;
pub mod vecset;
pub mod witness;
