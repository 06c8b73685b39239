//! Brute-force oracles for the lower-bound machinery.
//!
//! [`umatrix`] builds the weighted matrix U explicitly and checks the Frobenius
//! identities and the two inequalities sandwiching them; [`search`] enumerates
//! every small-alphabet sequence set to find the true minimum of θ_max².

pub mod search;
pub mod umatrix;

pub use search::{
    decode_set, exhaustive_search, exhaustive_search_multi, psk_symbol, search_range, search_space,
    SearchResult, SEARCH_BUDGET,
};
pub use umatrix::{
    af_expansion, build_u, frobenius_pair, lemma3_check, lemma4_check, CheckOutcome, Lemma4Variant,
    WeightedMatrixU,
};
