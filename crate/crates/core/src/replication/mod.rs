//! Replication of species states: Wigner's equation count, the failure of
//! linear basis cloning on superpositions, the inner-product obstruction
//! for non-orthogonal pairs, probabilistic cloning with a probe, and
//! periodic copyability under cyclic evolution.

mod cloner;
mod cyclic;
mod probabilistic;
mod wigner;

pub use cloner::{clone_gap, clone_gap_with, make_basis_cloner, BasisCloner, CloneGapReport, RejectedReference};
pub use cyclic::{cyclic_replication_demo, cyclic_replication_demo_with, period_four_qubit_evolution, periodic_unitary, CyclePoint};
pub use probabilistic::{
    aligned_rejected_overlap, build_prob_clone_machine, build_prob_clone_machine_with, duan_guo_bound,
    duan_guo_max_probability, duan_guo_search, nonorthogonal_unitarity_violation, required_rejected_overlap,
    sample_prob_clone, DuanGuoSearch, ProbCloneMachine, SampleReport,
};
pub use wigner::{wigner_count, WignerCount};
