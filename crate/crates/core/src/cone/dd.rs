//! Double description: from a halfspace description to generators.
//!
//! The cone `{x : a.x >= 0, e.x = 0}` is first restricted to the subspace cut
//! out by the equations, then split into its lineality space and a pointed
//! complement. The pointed part is handled by the incremental method starting
//! from a simplicial cone, with the combinatorial adjacency test.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{null_space, rank, solve, span_basis};
use crate::vector::{IntVec, RatVec};

pub(crate) struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

/// Generators of `{x in Q^dim : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}`.
///
/// Rays are the extreme rays of a pointed complement of the lineality space;
/// they are only determined modulo the lineality space.
pub(crate) fn h_to_v(ineqs: &[IntVec], eqs: &[IntVec], dim: usize) -> Generators {
    let sub: Vec<IntVec> = if eqs.is_empty() {
        (0..dim).map(|i| IntVec::unit(dim, i)).collect()
    } else {
        null_space(eqs, dim)
    };
    let p = sub.len();

    let restricted: Vec<IntVec> = ineqs
        .iter()
        .map(|a| IntVec::new(sub.iter().map(|s| a.dot(s)).collect()))
        .collect();

    let lineality = null_space(&restricted, p)
        .iter()
        .map(|y| lift(y, &sub, dim).primitive())
        .collect();

    // The row space of the restricted system is a complement of its kernel,
    // and the cone is pointed there.
    let row_basis = span_basis(&restricted, p);
    let r = row_basis.len();
    let pointed: Vec<IntVec> = restricted
        .iter()
        .map(|a| IntVec::new(row_basis.iter().map(|u| a.dot(u)).collect()))
        .collect();

    let rays = pointed_extreme_rays(&pointed, r)
        .iter()
        .map(|z| lift(&lift(z, &row_basis, p), &sub, dim).primitive())
        .collect();

    Generators { lineality, rays }
}

fn lift(coeffs: &IntVec, basis: &[IntVec], dim: usize) -> IntVec {
    coeffs
        .coords()
        .iter()
        .zip(basis)
        .fold(IntVec::zeros(dim), |acc, (c, b)| acc.add(&b.scale(c)))
}

struct Ray {
    v: IntVec,
    zeros: FixedBitSet,
}

/// Extreme rays of `{z in Q^r : row.z >= 0}` where the rows have rank `r`.
fn pointed_extreme_rays(rows: &[IntVec], r: usize) -> Vec<IntVec> {
    if r == 0 {
        return Vec::new();
    }
    let m = rows.len();

    let mut basis_idx = Vec::with_capacity(r);
    let mut chosen: Vec<IntVec> = Vec::with_capacity(r);
    for (i, row) in rows.iter().enumerate() {
        if row.is_zero() {
            continue;
        }
        chosen.push(row.clone());
        if rank(&chosen, r) == chosen.len() {
            basis_idx.push(i);
            if chosen.len() == r {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    assert_eq!(
        chosen.len(),
        r,
        "constraint rows must have full column rank"
    );

    // Initial simplicial cone: columns of the inverse of the chosen rows.
    let mut rays: Vec<Ray> = (0..r)
        .map(|j| {
            let rhs: Vec<BigInt> = (0..r)
                .map(|i| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            let x = solve(&chosen, &rhs).expect("chosen rows are independent");
            let v = RatVec::new(x).clear_denominators().primitive();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (i, &row) in basis_idx.iter().enumerate() {
                if i != j {
                    zeros.insert(row);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|ray| row.dot(&ray.v)).collect();
        let (mut pos, mut zero, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for (idx, val) in values.iter().enumerate() {
            if val.is_positive() {
                pos.push(idx);
            } else if val.is_zero() {
                zero.push(idx);
            } else {
                neg.push(idx);
            }
        }
        if neg.is_empty() {
            for &z in &zero {
                rays[z].zeros.insert(i);
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                // Two extreme rays are adjacent only if they share r - 2
                // independent tight constraints.
                if r >= 2 && common.count_ones(..) + 2 < r {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(q, other)| q == p || q == n || !common.is_subset(&other.zeros));
                if !adjacent {
                    continue;
                }
                let v =
                    IntVec::combine(&values[p], &rays[n].v, &(-&values[n]), &rays[p].v).primitive();
                common.insert(i);
                created.push(Ray { v, zeros: common });
            }
        }

        let mut next = Vec::with_capacity(pos.len() + zero.len() + created.len());
        let mut old: Vec<Option<Ray>> = rays.into_iter().map(Some).collect();
        for &p in &pos {
            next.push(old[p].take().unwrap());
        }
        for &z in &zero {
            let mut ray = old[z].take().unwrap();
            ray.zeros.insert(i);
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }

    rays.into_iter().map(|ray| ray.v).collect()
}
