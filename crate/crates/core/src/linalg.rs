//! Exact null spaces of sparse rational matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse matrix stored by rows; absent entries are zero.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigRational>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given as `(column, value)` entries; repeated columns add up.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigRational)>) {
        let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            *row.entry(c).or_insert_with(BigRational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push(row);
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(&c, v)| v * &x[c]).sum())
            .collect()
    }
}

type IntRow = BTreeMap<usize, BigInt>;

/// Clears denominators and divides out the content; leading entry made positive.
fn integer_row(row: &BTreeMap<usize, BigRational>) -> IntRow {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(&c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    primitive(&mut out);
    out
}

fn primitive(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let neg = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    let g = if neg { -g } else { g };
    if !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// `target := p * target - t * pivot_row`, with `p`, `t` the entries in `col`.
fn eliminate(target: &mut IntRow, pivot_row: &IntRow, col: usize) {
    let Some(t) = target.get(&col).cloned() else {
        return;
    };
    let p = &pivot_row[&col];
    let g = p.gcd(&t);
    let (p, t) = (p / &g, &t / &g);
    for v in target.values_mut() {
        *v *= &p;
    }
    for (&c, v) in pivot_row {
        let e = target.entry(c).or_insert_with(BigInt::zero);
        *e -= &t * v;
    }
    target.retain(|_, v| !v.is_zero());
    primitive(target);
}

/// Reduced row echelon data: pivot column of each surviving row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    rows: Vec<(usize, IntRow)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// One basis vector per free column `f`, with a 1 at `f` and 0 at every
    /// other free column.
    pub fn null_space(&self) -> Vec<Vec<BigRational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (p, row) in &self.rows {
                    if let Some(v) = row.get(&f) {
                        x[*p] = -BigRational::new(v.clone(), row[p].clone());
                    }
                }
                x
            })
            .collect()
    }
}

/// Fraction-free Gauss-Jordan elimination.
///
/// Rows are kept primitive over the integers, so entries stay small; each
/// pivot is cleared from every other row.
pub fn row_reduce(m: &SparseMatrix) -> Echelon {
    let mut pending: Vec<IntRow> = m
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(integer_row)
        .collect();
    let mut done: Vec<(usize, IntRow)> = Vec::new();
    while let Some(mut row) = pending.pop() {
        for (p, prow) in &done {
            eliminate(&mut row, prow, *p);
        }
        let Some((&pivot, _)) = row.iter().next() else {
            continue;
        };
        for (_, other) in done.iter_mut() {
            eliminate(other, &row, pivot);
        }
        done.push((pivot, row));
    }
    done.sort_by_key(|(p, _)| *p);
    Echelon {
        ncols: m.ncols,
        rows: done,
    }
}

/// A basis of `{x : M x = 0}`, normalized at the free columns.
pub fn null_space(m: &SparseMatrix) -> Vec<Vec<BigRational>> {
    row_reduce(m).null_space()
}
