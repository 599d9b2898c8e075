//! Baxter monoids `baxt_n` with the Schützenberger involution `#`:
//! canonical forms, twin binary search trees, tropical matrix
//! representations, and identity checking for `(baxt_n, #)`.

pub mod baxter;
pub mod checker;
pub mod conditions;
pub mod error;
pub mod families;
pub mod oracle;
pub mod repr;
pub mod semiring;
pub mod trees;
pub mod words;

pub use baxter::{canonical, equivalent, sharp_word, BaxtElement, BaxtKey};
pub use checker::{check, CheckReport, Condition, Mode, Side, Witness};
pub use error::{Error, Result};
pub use oracle::{brute_force_check, comm_check, eval_substitution, CommPair, OracleVerdict, OracleWitness, Substitution};
pub use semiring::{Semiring, Tropical, UTMatrix};
pub use trees::{p_baxt, p_sylv, p_sylv_sharp, Tree, TwinTrees};
pub use words::{AWord, BaseVar, IVar, IWord, Identity, Letter, Term};
