//! Worked example bands used by tests, the CLI catalog and the census.

use crate::band::{Band, Element};

fn with_identity(labels: &[&str], rows: &[&[&str]]) -> (Vec<Vec<Element>>, Vec<String>) {
    let mut all = vec!["e"];
    all.extend_from_slice(labels);
    let mut table = vec![(0..all.len()).collect::<Vec<_>>()];
    let index = |l: &str| labels.iter().position(|x| *x == l).expect("label in fixture") + 1;
    for (i, row) in rows.iter().enumerate() {
        let mut full = vec![i + 1];
        full.extend(row.iter().map(|l| index(l)));
        table.push(full);
    }
    (table, all.into_iter().map(String::from).collect())
}

pub const BAND_B_LABELS: [&str; 6] = ["x1", "x2", "x3", "y0", "y1", "y2"];

/// Rows of the six-element right hereditary band `B` (identity omitted).
pub const BAND_B_ROWS: [[&str; 6]; 6] = [
    ["x1", "y0", "y1", "y0", "y1", "y1"],
    ["x2", "x2", "y2", "x2", "y2", "y2"],
    ["x3", "x3", "x3", "x3", "x3", "x3"],
    ["y0", "y0", "y1", "y0", "y1", "y1"],
    ["y1", "y1", "y1", "y1", "y1", "y1"],
    ["y2", "y2", "y2", "y2", "y2", "y2"],
];

pub const BAND_B_PRIME_LABELS: [&str; 6] = ["x1", "x2", "x3", "y1", "y2", "y3"];

/// Rows of the table `B′`, kept verbatim. This table is not
/// associative: `(x1 x2) x3 = y1` while `x1 (x2 x3) = y3`.
pub const BAND_B_PRIME_ROWS: [[&str; 6]; 6] = [
    ["x1", "x1", "y1", "y1", "y2", "y3"],
    ["x2", "x2", "y3", "y3", "y3", "y3"],
    ["x3", "x3", "x3", "x3", "x3", "x3"],
    ["y1", "y1", "y1", "y1", "y1", "y1"],
    ["y2", "y2", "y2", "y2", "y2", "y2"],
    ["y3", "y3", "y3", "y3", "y3", "y3"],
];

fn rows_of<'a, const N: usize>(rows: &'a [[&'static str; N]]) -> Vec<&'a [&'static str]> {
    rows.iter().map(|r| r.as_slice()).collect()
}

/// `B` with the identity `e` adjoined at index 0; `x1..y2` are `1..=6`.
pub fn band_b() -> Band {
    let (table, labels) = with_identity(&BAND_B_LABELS, &rows_of(&BAND_B_ROWS));
    Band::new(table, 0, Some(labels)).expect("band B is a left regular band")
}

/// The `B′` table with identity adjoined, unvalidated.
pub fn band_b_prime_table() -> (Vec<Vec<Element>>, Vec<String>) {
    with_identity(&BAND_B_PRIME_LABELS, &rows_of(&BAND_B_PRIME_ROWS))
}

/// Diamond semilattice `{e, a, b, ab}`; `ab` has two incomparable lower
/// covers.
pub fn diamond() -> Band {
    let table = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
    let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
    Band::new(table, 0, Some(labels)).expect("diamond is a semilattice")
}

/// The three-element band `H = {+, -, 0}` with a fresh identity adjoined.
/// Inside `H` the element `0` already acts as a two-sided identity.
pub fn h_band() -> Band {
    let (table, labels) = with_identity(
        &["+", "-", "0"],
        &[&["+", "+", "+"], &["-", "-", "-"], &["+", "-", "0"]],
    );
    Band::new(table, 0, Some(labels)).expect("H is a left regular band")
}

/// Two-element band `{e, a}`.
pub fn two_element() -> Band {
    Band::new(vec![vec![0, 1], vec![1, 1]], 0, Some(vec!["e".into(), "a".into()]))
        .expect("valid")
}
