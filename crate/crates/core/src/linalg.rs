//! Exact row reduction over `Q`, with results cleared back to integer rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::vector::IntVec;

type Row = Vec<BigRational>;

fn to_rows(rows: &[IntVec], dim: usize) -> Vec<Row> {
    rows.iter()
        .map(|r| {
            debug_assert_eq!(r.dim(), dim);
            r.coords()
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect()
}

fn clear_row(row: &[BigRational]) -> IntVec {
    crate::vector::RatVec::new(row.to_vec())
        .clear_denominators()
        .primitive()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
#[allow(clippy::needless_range_loop)] // rows i and lead are both borrowed
fn rref(mut rows: Vec<Row>, dim: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..dim {
        let Some(p) = (lead..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][col].recip();
        for x in rows[lead].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != lead && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..dim {
                    let delta = &factor * &rows[lead][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    (rows, pivots)
}

pub fn rank(rows: &[IntVec], dim: usize) -> usize {
    rref(to_rows(rows, dim), dim).1.len()
}

/// Canonical integer basis of the row span: the reduced echelon rows, each
/// scaled to a primitive integer vector. Pivots come out positive.
pub fn span_basis(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let (reduced, _) = rref(to_rows(rows, dim), dim);
    reduced.iter().map(|r| clear_row(r)).collect()
}

/// Integer basis of `{x : r . x = 0 for every row r}`.
pub fn null_space(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let (reduced, pivots) = rref(to_rows(rows, dim), dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v: Row = vec![BigRational::zero(); dim];
        v[free] = BigRational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(clear_row(&v));
    }
    basis
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &[IntVec], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.coords()
                .iter()
                .chain(std::iter::once(rhs))
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    let (reduced, pivots) = rref(std::mem::take(&mut aug), n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n].clone()).collect())
}

/// Component of `v` orthogonal to `span(basis)`, scaled to a primitive
/// integer vector by a positive factor.
pub fn project_out(v: &IntVec, basis: &[IntVec]) -> IntVec {
    if basis.is_empty() || v.is_zero() {
        return v.primitive();
    }
    let gram: Vec<IntVec> = basis
        .iter()
        .map(|b| IntVec::new(basis.iter().map(|c| b.dot(c)).collect()))
        .collect();
    let rhs: Vec<BigInt> = basis.iter().map(|b| b.dot(v)).collect();
    let coeffs = solve(&gram, &rhs).expect("projection basis must be independent");
    let mut out: Row = v
        .coords()
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, bj) in out.iter_mut().zip(b.coords()) {
            *o -= c * BigRational::from_integer(bj.clone());
        }
    }
    clear_row(&out)
}
