pub mod bounds;
pub mod graph;
pub mod hardcore;
pub mod lp;
