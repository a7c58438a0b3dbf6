pub mod analysis;
pub mod cli;
pub mod cryptosystem;
pub mod expansion;
pub mod fields;
pub mod grs;
pub mod linalg;
