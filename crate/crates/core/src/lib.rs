pub mod census;
pub mod cli;
pub mod codec;
pub mod export;
pub mod graph;
pub mod hom;
pub mod homology;
pub mod morse;
pub mod verify;
