//! Built-in elements of `O_2`: a permutation unitary `u` in `P_2^4`, a
//! sum-of-words unitary `v` outside `F_2` that is a self-intertwiner of
//! `lambda_u`, and their product `w = v u`.
//!
//! Each summand is stored as printed, `S_{a_1}...S_{a_k} S_{b_1}^*...S_{b_m}^*`,
//! as the pair of strings `(a_1...a_k, b_1...b_m)`. The adjoint factors read
//! left to right are `S_{b_1}^* ... S_{b_m}^* = (S_{b_m} ... S_{b_1})^*`, so the
//! stored beta string is reversed before use. Worked term of `u`:
//!
//! ```text
//! S1 S2 S1 S1 S1* S2* S1* S1*  ->  ("1211", "1211")  ->  S_{1211} S_{1121}^*
//! ```

use crate::element::{Context, Element};
use crate::error::{Error, Result};
use crate::word::{MultiIndex, Word};

/// `(alpha factors, adjoint factors)` exactly as printed.
const U_PRINTED: [(&str, &str); 12] = [
    ("111", "111"),
    ("1211", "1211"),
    ("1221", "2211"),
    ("2111", "1121"),
    ("1212", "2121"),
    ("221", "221"),
    ("112", "112"),
    ("2121", "1212"),
    ("1222", "2212"),
    ("2112", "1122"),
    ("2122", "2122"),
    ("222", "222"),
];

const V_PRINTED: [(&str, &str); 7] = [
    ("122", "11"),
    ("111", "121"),
    ("211", "221"),
    ("22", "112"),
    ("112", "212"),
    ("121", "122"),
    ("212", "222"),
];

pub const NAMES: [&str; 3] = ["u_cp", "v_cp", "w_cp"];

fn letters(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Index pairs `(alpha, beta)` of a printed table, with the adjoint string reversed.
fn pairs(table: &[(&str, &str)]) -> Vec<(MultiIndex, MultiIndex)> {
    table
        .iter()
        .map(|(a, b)| {
            let mut beta = letters(b);
            beta.reverse();
            (
                MultiIndex::new(&letters(a), 2).expect("letters in 1..=2"),
                MultiIndex::new(&beta, 2).expect("letters in 1..=2"),
            )
        })
        .collect()
}

fn ctx() -> Context {
    Context::new(2).expect("n = 2 is valid")
}

fn from_table(table: &[(&str, &str)]) -> Element {
    let words: Vec<Word> = pairs(table)
        .into_iter()
        .map(|(a, b)| Word::new(a, b))
        .collect();
    Element::sum_of_words(ctx(), words.iter())
}

/// The twelve summands of `u` as index pairs.
pub fn u_pairs() -> Vec<(MultiIndex, MultiIndex)> {
    pairs(&U_PRINTED)
}

/// The seven summands of `v` as index pairs.
pub fn v_pairs() -> Vec<(MultiIndex, MultiIndex)> {
    pairs(&V_PRINTED)
}

pub fn u_cp() -> Element {
    from_table(&U_PRINTED)
}

pub fn v_cp() -> Element {
    from_table(&V_PRINTED)
}

/// `w = v u`, computed.
pub fn w_cp() -> Element {
    &v_cp() * &u_cp()
}

pub fn by_name(name: &str) -> Result<Element> {
    match name {
        "u_cp" => Ok(u_cp()),
        "v_cp" => Ok(v_cp()),
        "w_cp" => Ok(w_cp()),
        other => Err(Error::UnknownConstant(other.to_string())),
    }
}
