pub mod arithmetic;
pub mod certify;
pub mod cli;
pub mod entailment;
pub mod gen;
pub mod matrix;
pub mod proofcheck;
pub mod report;
pub mod syntax;
pub mod translate;
