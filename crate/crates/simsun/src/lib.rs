//! Simsun permutations under pattern restrictions: exhaustive enumeration,
//! exact counting against sequence oracles, generating trees with succession
//! rules, and a collection of bijections onto restricted Dyck and Motzkin
//! path families, every one of them invertible and verified at small sizes.

pub mod bijections;
pub mod census;
pub mod error;
pub mod paths;
pub mod pattern;
pub mod perm;
pub mod sequences;
pub mod tree;
pub mod verify;

pub use bijections::{
    adm_to_motzkin, adm_to_perm213, callan, callan_inverse, enumerate_adm, krar, krar_inverse,
    motzkin_to_adm, pad_first_last, pad_last, perm213_to_adm, phi, phi_inverse, psi, psi_inverse,
    psi_recursive, rs213_from_motzkin, rs213_to_motzkin, theta, theta_inverse, unpad_first_last,
    unpad_last, AdmissibleSequence, KrarKind,
};
pub use census::{
    contain_all_six, count_class, enumerate_class, expected_count, reproduce_tables, CountRecord,
    CountReport, Method,
};
pub use error::{Error, Result};
pub use paths::{classify, enumerate_paths, path_stats, LatticePath, PathClass, PathStats, Step};
pub use pattern::{avoids_all, contains, parse_pattern, parse_pattern_set, VincularPattern};
pub use perm::{
    decompose_at_max, delete_smallest, reduce, split_min_components, statistics, Permutation,
    Statistics,
};
pub use sequences::{coeffs_from_quadratic, seq, seq_prefix, QuadraticSchema, SequenceId};
pub use tree::{
    fertility_gaps, is_simsun, label_132, label_213, restriction, tree_level, verify_succession,
    SuccessionReport, TreeId, TreeLabel,
};
