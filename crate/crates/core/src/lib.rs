pub mod chow;
pub mod contact;
pub mod lattice;
pub mod nilpotent;
pub mod report;
pub mod toric;
