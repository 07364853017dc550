//! Equivariant syzygies of Segre embeddings.
//!
//! [`engine`] gives the closed-form answer from marked Young diagrams;
//! [`koszul`] recomputes every number from an explicit Koszul complex.

#![no_std]

extern crate alloc;

pub mod characters;
pub mod engine;
pub mod koszul;
pub mod marked;
pub mod partitions;
pub mod rank;

pub use characters::{
    cauchy_wedge, decompose, kostka, lr_coefficient, pieri_column, pieri_row, schur_pair_character,
    Character, CharacterError, DirectLr, IrrDecomposition, LrSource,
};
pub use engine::{
    classify_weight, multiplication_table, product_nonzero, segre_syzygies, sheaf_syzygies,
    BettiTable, ComponentFate, EngineError, SyzygyComponent,
};
pub use koszul::{
    build_strand, strand_cohomology, verify, BlockScope, CohomologyReport, ComparisonReport,
    OracleError, Strand, StrandSpec,
};
pub use marked::{b_set, enumerate_y, markings_of_weight, MarkedDiagram, MarkedError, WeightPair};
pub use partitions::{enumerate_partitions, schur_dimension, Cell, Partition, PartitionError};
pub use rank::{RankDisagreement, RankMode};
