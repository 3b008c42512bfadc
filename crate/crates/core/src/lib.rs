//! Homotopy type of `E_com(G)` for finite groups.
//!
//! The space is modelled by the poset of cosets `gB`, where `B` runs over
//! intersections of maximal abelian subgroups of `G`. This crate builds that
//! poset, its order complex, and classifies the result three ways: an Euler
//! count for height-one posets, free-face collapsing, and integral homology.

pub mod abelian;
pub mod analysis;
pub mod bitset;
pub mod catalog;
pub mod complex;
pub mod error;
pub mod export;
pub mod group;
pub mod homology;
pub mod poset;
pub mod presentation;
pub mod snf;
pub mod todd_coxeter;

pub use abelian::{build_coset_poset, circles_from_euler, is_height1, maximal_abelian_subgroups, CosetPoset};
pub use analysis::{analyze, HomotopyReport, Limits};
pub use complex::{order_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use group::{Coset, FiniteGroup, SubgroupSet};
pub use homology::{classify_homotopy, homology, HomologyResult, Verdict};
pub use poset::{poset_isomorphic, product_poset, Poset};
pub use presentation::{parse_presentation, Presentation};
pub use todd_coxeter::{todd_coxeter, verify_relators};
