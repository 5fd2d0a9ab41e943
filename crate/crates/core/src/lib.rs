//! Binary operations on a finite set `S = {0, …, n-1}`.
//!
//! The crate classifies Cayley tables (nondegenerate, semigroup, monoid,
//! group), computes the operations `z1 ^a z2` and `z1 va z2` they induce on
//! the set of all tables, decides compatibility (multi-associativity), and
//! builds the dual `S*_z` of every table: the set of all tables compatible
//! with `z`.
//!
//! For a monoid `z0` with identity `e`, `a ↦ z0 ^a z0` is a bijection from `S`
//! onto the dual of `z0`; for groups the duals partition the set of all group
//! operations, and the group structures on `S` can be counted up to
//! isomorphism. Everything here is finite search, so all of it is checked by
//! exhaustive sweeps in the test suites.

pub mod checklist;
pub mod classify;
pub mod compat;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod explorer;
pub mod io;
pub mod laws;
pub mod perm;
pub mod table;

pub use classify::{
    classify_op, find_identity, inverse_of, is_associative, is_nondegenerate, ClassificationRecord,
};
pub use compat::{
    are_compatible, check_op, dual_set, dual_set_with, hat_op, sandwich_tables, CompatEquation,
    CompatReport, DualConfig, DualMethod, DualSet,
};
pub use duality::{
    all_group_ops, are_isomorphic, automorphisms, conjugate, count_group_structures,
    group_ops_with_identity, iso_classes, partition_group_ops, phi, phi_inverse, sym_fixing,
    verify_group_dual, ClassReport, PartitionReport,
};
pub use enumerate::{count_ops, enumerate_ops, monoids, semigroups, Census, ClassFilter, ScanOptions};
pub use error::{Error, Result};
pub use exec::Exec;
pub use explorer::{
    hat_closure_census, scan_question, ClosureCensus, ExploreOptions, QuestionReport, ScanStatus, Verdict,
};
pub use io::{parse_inline, read_table, write_table, LabelMap};
pub use perm::Permutation;
pub use table::{decode_op, encode_op, make_table, space_size, CayleyTable, Element, OpCode};
