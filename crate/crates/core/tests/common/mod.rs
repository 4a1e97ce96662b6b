//! Brute-force oracles shared by the integration and acceptance suites.
//!
//! None of these go through the double description engine: cone membership
//! is decided by Carathéodory enumeration with a private Gaussian solver,
//! invariant factors by gcds of minors, and semistability by searching for
//! invariant monomials.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Solves `M c = p` where the columns of `M` are `cols`. Returns the unique
/// solution when the columns are independent and the system is consistent.
#[allow(clippy::needless_range_loop)]
fn solve_columns(cols: &[&Vec<i64>], p: &[i64]) -> Option<Vec<BigRational>> {
    let d = p.len();
    let m = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|r| {
            cols.iter()
                .map(|c| BigRational::from_integer(c[r].into()))
                .chain(std::iter::once(BigRational::from_integer(p[r].into())))
                .collect()
        })
        .collect();
    let mut row = 0;
    for col in 0..m {
        let piv = (row..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, piv);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..=m {
                    let delta = &f * &a[row][j];
                    a[r][j] -= delta;
                }
            }
        }
        row += 1;
    }
    if (row..d).any(|r| !a[r][m].is_zero()) {
        return None;
    }
    Some((0..m).map(|i| a[i][m].clone()).collect())
}

fn subsets(len: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..len {
        let extended: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max_size)
            .map(|s| {
                let mut t = s.clone();
                t.push(i);
                t
            })
            .collect();
        out.extend(extended);
    }
    out
}

/// Whether `p` is a nonnegative combination of `gens` plus any combination of
/// `lineality`, by Carathéodory: some linearly independent subset of the
/// signed generators must represent `p` with nonnegative coefficients.
pub fn in_conic_hull(gens: &[Vec<i64>], lineality: &[Vec<i64>], p: &[i64]) -> bool {
    if p.iter().all(|&x| x == 0) {
        return true;
    }
    let mut all: Vec<Vec<i64>> = gens.to_vec();
    for l in lineality {
        all.push(l.clone());
        all.push(l.iter().map(|x| -x).collect());
    }
    all.retain(|v| v.iter().any(|&x| x != 0));
    for s in subsets(all.len(), p.len()) {
        if s.is_empty() {
            continue;
        }
        let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &all[i]).collect();
        if let Some(c) = solve_columns(&cols, p) {
            if c.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// All integer points of `[-r, r]^d`.
pub fn grid(d: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    // Laplace expansion along the first row.
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k).into_iter().filter(|s| s.len() == k).collect()
}

/// Gcd of all `i x i` minors.
pub fn determinantal_divisor(m: &[Vec<i64>], i: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in choose(rows, i) {
        for cs in choose(cols, i) {
            let sub: Vec<Vec<i64>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// Invariant factors `D_i / D_{i-1}` for `i` up to the rank.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for i in 1..=rows.min(cols) {
        let d = determinantal_divisor(m, i);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// Searches for an invariant monomial `x^a` (`a >= 0` supported on `support`,
/// `W a = m θ` for some `m >= 1`) with exponents at most `bound`. Finding one
/// certifies that points with this support are `θ`-semistable.
pub fn invariant_monomial(
    weights: &[Vec<i64>],
    support: &[usize],
    theta: &[i64],
    bound: i64,
) -> Option<Vec<i64>> {
    let k = theta.len();
    let mut exps = vec![0i64; support.len()];
    loop {
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == exps.len() {
                return None;
            }
            exps[i] += 1;
            if exps[i] <= bound {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        let total: Vec<i64> = (0..k)
            .map(|r| {
                support
                    .iter()
                    .zip(&exps)
                    .map(|(&c, &e)| weights[c][r] * e)
                    .sum()
            })
            .collect();
        if is_positive_multiple(&total, theta) {
            return Some(exps.clone());
        }
    }
}

fn is_positive_multiple(v: &[i64], theta: &[i64]) -> bool {
    if theta.iter().all(|&t| t == 0) {
        return v.iter().all(|&x| x == 0);
    }
    // v = m θ with m a positive integer.
    let (idx, &t) = theta.iter().enumerate().find(|(_, &t)| t != 0).unwrap();
    if v[idx] % t != 0 {
        return false;
    }
    let m = v[idx] / t;
    m > 0 && v.iter().zip(theta).all(|(&a, &b)| a == m * b)
}

/// Columns of a row-major matrix.
pub fn columns(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| rows.iter().map(|r| r[i]).collect())
        .collect()
}

#[test]
fn oracle_self_checks() {
    assert!(in_conic_hull(&[vec![2, 0], vec![1, 1]], &[], &[4, 2]));
    assert!(!in_conic_hull(&[vec![2, 0], vec![1, 1]], &[], &[1, 2]));
    assert!(in_conic_hull(&[], &[vec![1, 0]], &[-3, 0]));
    assert_eq!(grid(2, 1).len(), 9);
    assert_eq!(det(&[vec![2, 1], vec![0, 1]]), BigInt::from(2));
    assert_eq!(
        invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]),
        vec![BigInt::from(1), BigInt::from(6)]
    );
    assert!(invariant_monomial(&[vec![2, 0], vec![1, 1]], &[0, 1], &[4, 2], 4).is_some());
}
