//! GIT data of a torus `T = G_m^k` acting diagonally on affine `n`-space.
//!
//! The action is recorded by a charge matrix whose `i`-th column `w_i` is the
//! character by which `T` scales coordinate `i`. For a character `θ`, a point
//! is `θ`-semistable iff `θ` lies in the cone spanned by the weights of its
//! nonzero coordinates, so the semistable locus is a union of coordinate
//! strata and is recorded by the minimal semistable supports.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::{Cone, Containment};
use crate::linalg;
use crate::snf::invariant_factors;
use crate::vector::IntVec;
use crate::{Error, Result};

/// Default bound on `n` for operations that enumerate all `2^n` supports.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Supports are stored as 64-bit masks.
pub const MAX_COORDINATES: usize = 64;

const CACHE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChargeMatrix {
    rows: Vec<Vec<i64>>,
    columns: Vec<IntVec>,
}

impl ChargeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidChargeMatrix(
                "the torus rank must be at least 1".into(),
            ));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::InvalidChargeMatrix(
                "there must be at least one coordinate".into(),
            ));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidChargeMatrix(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        if n > MAX_COORDINATES {
            return Err(Error::InvalidChargeMatrix(format!(
                "{n} coordinates exceed the supported maximum of {MAX_COORDINATES}"
            )));
        }
        let columns = (0..n)
            .map(|i| IntVec::from_i64s(&rows.iter().map(|r| r[i]).collect::<Vec<_>>()))
            .collect();
        Ok(ChargeMatrix { rows, columns })
    }

    /// Rank `k` of the torus.
    pub fn torus_rank(&self) -> usize {
        self.rows.len()
    }

    /// Number `n` of coordinates.
    pub fn num_coords(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The weight `w_i` of coordinate `i` (0-based).
    pub fn weight(&self, i: usize) -> &IntVec {
        &self.columns[i]
    }

    pub fn weights(&self) -> &[IntVec] {
        &self.columns
    }

    /// Rank of the matrix, i.e. the dimension of a generic orbit.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.columns, self.torus_rank())
    }

    /// Lifts a torus action on projective `(n-1)`-space to affine `n`-space
    /// by appending a row of ones for the scaling torus. A linearization of
    /// `O(d)` twisted by `χ` becomes the character `(χ, d)`, ample iff `d > 0`.
    pub fn lift_projective(&self) -> ChargeMatrix {
        let mut rows = self.rows.clone();
        rows.push(vec![1; self.num_coords()]);
        ChargeMatrix::new(rows).expect("appending a row keeps the matrix well formed")
    }
}

impl fmt::Display for ChargeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// An element `θ` of the character lattice `χ(T) = Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(IntVec);

impl Character {
    pub fn new(v: IntVec) -> Self {
        Character(v)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Character(IntVec::from_i64s(coords))
    }

    pub fn zero(k: usize) -> Self {
        Character(IntVec::zeros(k))
    }

    pub fn as_vec(&self) -> &IntVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// The zero character makes every point semistable.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scaled(&self, m: i64) -> Character {
        Character(self.0.scale(&BigInt::from(m)))
    }

    /// `(self, d)`: the character of the lifted action attached to a
    /// linearization of `O(d)` twisted by `self`.
    pub fn lifted(&self, d: i64) -> Character {
        let mut coords = self.0.coords().to_vec();
        coords.push(BigInt::from(d));
        Character(IntVec::new(coords))
    }
}

impl<const N: usize> From<[i64; N]> for Character {
    fn from(c: [i64; N]) -> Self {
        Character::from_i64s(&c)
    }
}

impl From<IntVec> for Character {
    fn from(v: IntVec) -> Self {
        Character(v)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A subset of the coordinates `{0, ..., n-1}`; displayed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Support(u64);

impl Support {
    pub fn empty() -> Self {
        Support(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_COORDINATES);
        if n == 64 {
            Support(u64::MAX)
        } else {
            Support((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Support(bits)
    }

    /// From 0-based coordinate indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Support(indices.iter().fold(0, |acc, &i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, i: usize) -> Support {
        Support(self.0 & !(1u64 << i))
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl Ord for Support {
    /// Smaller supports first, then lexicographic on the index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// An up-closed family of supports, stored by its minimal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportFamily {
    n: usize,
    minimal: Vec<Support>,
}

impl SupportFamily {
    /// Builds the family generated by `supports`, reduced to an antichain.
    pub fn from_generators(n: usize, mut supports: Vec<Support>) -> Self {
        supports.sort();
        supports.dedup();
        let mut minimal: Vec<Support> = Vec::new();
        for s in supports {
            if !minimal.iter().any(|m| m.is_subset_of(s)) {
                minimal.push(s);
            }
        }
        SupportFamily { n, minimal }
    }

    pub fn minimal_supports(&self) -> &[Support] {
        &self.minimal
    }

    pub fn num_coords(&self) -> usize {
        self.n
    }

    /// True when no support is semistable (the character is not effective).
    pub fn is_empty(&self) -> bool {
        self.minimal.is_empty()
    }

    pub fn contains(&self, s: Support) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(s))
    }

    /// Every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &SupportFamily) -> bool {
        self.minimal.iter().all(|&m| other.contains(m))
    }
}

impl fmt::Display for SupportFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.minimal.iter().map(Support::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Generic stabilizer of a coordinate stratum, as the invariant factors of
/// its character group `Z^k / im(W_S)`: a factor `d > 1` is a `Z/d` and a
/// factor `0` a copy of `G_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stabilizer {
    factors: Vec<BigInt>,
}

impl Stabilizer {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(One::is_one)
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_zero())
    }

    /// Order of the group, or `None` when it is positive-dimensional.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torus = self.factors.iter().filter(|d| d.is_zero()).count();
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| format!("Z/{d}"))
            .collect();
        if torus > 0 {
            parts.insert(
                0,
                if torus == 1 {
                    "Gm".to_string()
                } else {
                    format!("Gm^{torus}")
                },
            );
        }
        if parts.is_empty() {
            f.write_str("trivial")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub support: Support,
    pub stabilizer: Stabilizer,
    /// Codimension in affine space: `n - |support|`.
    pub codim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackCensus {
    pub quotient_dim: usize,
    pub strata: Vec<Stratum>,
}

impl StackCensus {
    /// Strata whose generic stabilizer is not trivial.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| !s.stabilizer.is_trivial())
    }
}

/// A charge matrix together with cached weight cones.
///
/// All queries are pure; the caches are filled lazily and are safe to share
/// between threads.
#[derive(Debug)]
pub struct ToricGit {
    charge: ChargeMatrix,
    cap: usize,
    weight_cones: Vec<OnceLock<Cone>>,
    effective: OnceLock<Cone>,
}

impl ToricGit {
    pub fn new(charge: ChargeMatrix) -> Self {
        Self::with_cap(charge, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(charge: ChargeMatrix, cap: usize) -> Self {
        let n = charge.num_coords();
        let slots = if n <= CACHE_LIMIT { 1usize << n } else { 0 };
        ToricGit {
            charge,
            cap,
            weight_cones: (0..slots).map(|_| OnceLock::new()).collect(),
            effective: OnceLock::new(),
        }
    }

    pub fn charge(&self) -> &ChargeMatrix {
        &self.charge
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn torus_rank(&self) -> usize {
        self.charge.torus_rank()
    }

    pub fn num_coords(&self) -> usize {
        self.charge.num_coords()
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        let n = self.num_coords();
        if n > self.cap {
            Err(Error::SizeCap { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_character(&self, theta: &Character) -> Result<()> {
        if theta.dim() != self.torus_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.torus_rank(),
                found: theta.dim(),
            });
        }
        Ok(())
    }

    fn compute_weight_cone(&self, s: Support) -> Cone {
        let gens: Vec<IntVec> = s.indices().map(|i| self.charge.weight(i).clone()).collect();
        Cone::from_generators(&gens, &[], self.torus_rank()).expect("weights have length k")
    }

    /// `Cone(w_i : i in S)`.
    pub fn weight_cone(&self, s: Support) -> Cow<'_, Cone> {
        match self.weight_cones.get(s.bits() as usize) {
            Some(slot) => Cow::Borrowed(slot.get_or_init(|| self.compute_weight_cone(s))),
            None => Cow::Owned(self.compute_weight_cone(s)),
        }
    }

    /// The cone of characters with a nonempty semistable locus.
    pub fn effective_cone(&self) -> &Cone {
        self.effective.get_or_init(|| {
            Cone::from_generators(self.charge.weights(), &[], self.torus_rank())
                .expect("weights have length k")
        })
    }

    pub fn is_effective(&self, theta: &Character) -> Result<bool> {
        self.check_character(theta)?;
        Ok(self
            .effective_cone()
            .contains_int(theta.as_vec(), Containment::Closed))
    }

    pub(crate) fn require_effective(&self, theta: &Character) -> Result<()> {
        if self.is_effective(theta)? {
            Ok(())
        } else {
            Err(Error::NotEffective(theta.to_string()))
        }
    }

    /// Points with support exactly `S` are `θ`-semistable iff
    /// `θ ∈ Cone(w_i : i ∈ S)`.
    pub fn is_semistable_support(&self, s: Support, theta: &Character) -> Result<bool> {
        self.check_character(theta)?;
        Ok(self
            .weight_cone(s)
            .contains_int(theta.as_vec(), Containment::Closed))
    }

    /// Minimal semistable supports. Empty when `θ` is not effective.
    pub fn semistable_supports(&self, theta: &Character) -> Result<SupportFamily> {
        self.check_cap()?;
        let n = self.num_coords();
        if !self.is_effective(theta)? {
            return Ok(SupportFamily {
                n,
                minimal: Vec::new(),
            });
        }
        let mut minimal: Vec<Support> = Vec::new();
        for size in 0..=n {
            for s in subsets_of_size(n, size) {
                if minimal.iter().any(|m| m.is_subset_of(s)) {
                    continue;
                }
                if self
                    .weight_cone(s)
                    .contains_int(theta.as_vec(), Containment::Closed)
                {
                    minimal.push(s);
                }
            }
        }
        Ok(SupportFamily::from_generators(n, minimal))
    }

    /// `C_V(θ)`: characters whose semistable locus contains that of `θ`.
    pub fn c_cone(&self, theta: &Character) -> Result<Cone> {
        self.require_effective(theta)?;
        let family = self.semistable_supports(theta)?;
        self.c_cone_of_family(&family)
    }

    pub(crate) fn c_cone_of_family(&self, family: &SupportFamily) -> Result<Cone> {
        let mut supports = family.minimal_supports().iter();
        let first = supports
            .next()
            .expect("effective characters have a semistable support");
        let mut acc = self.weight_cone(*first).into_owned();
        for s in supports {
            acc = acc.intersect(&self.weight_cone(*s))?;
        }
        Ok(acc)
    }

    /// Membership of `θ'` in the GIT class `A(θ) = relint C_V(θ)`.
    pub fn a_class_contains(&self, theta: &Character, theta_prime: &Character) -> Result<bool> {
        self.check_character(theta_prime)?;
        Ok(self
            .c_cone(theta)?
            .contains_int(theta_prime.as_vec(), Containment::RelativeInterior))
    }

    /// Same semistable locus. `θ` must be effective; a non-effective `θ'` is
    /// simply never equivalent.
    pub fn git_equivalent(&self, theta: &Character, theta_prime: &Character) -> Result<bool> {
        self.require_effective(theta)?;
        Ok(self.semistable_supports(theta)? == self.semistable_supports(theta_prime)?)
    }

    /// Generic stabilizer of the points with support exactly `S`.
    pub fn generic_stabilizer(&self, s: Support) -> Stabilizer {
        let k = self.torus_rank();
        let sub: Vec<Vec<BigInt>> = (0..k)
            .map(|r| {
                s.indices()
                    .map(|i| self.charge.weight(i).coords()[r].clone())
                    .collect()
            })
            .collect();
        let mut factors = if s.is_empty() {
            Vec::new()
        } else {
            invariant_factors(&sub)
        };
        factors.resize(k, BigInt::zero());
        Stabilizer { factors }
    }

    /// Stabilizers along the generic semistable stratum and the semistable
    /// coordinate hyperplanes.
    pub fn stack_census(&self, theta: &Character) -> Result<StackCensus> {
        self.require_effective(theta)?;
        let family = self.semistable_supports(theta)?;
        let n = self.num_coords();
        let full = Support::full(n);
        let mut supports = vec![full];
        supports.extend(
            (0..n)
                .map(|i| full.without(i))
                .filter(|&s| family.contains(s)),
        );
        let mut strata: Vec<Stratum> = supports
            .into_iter()
            .map(|support| Stratum {
                support,
                stabilizer: self.generic_stabilizer(support),
                codim: n - support.len(),
            })
            .collect();
        strata.sort_by(|a, b| a.codim.cmp(&b.codim).then(a.support.cmp(&b.support)));
        Ok(StackCensus {
            quotient_dim: n - self.charge.rank(),
            strata,
        })
    }
}

/// All subsets of `{0..n}` with `size` elements, in increasing bit order.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Support> {
    let limit: u128 = 1u128 << n;
    let start: u128 = if size == 0 { 0 } else { (1u128 << size) - 1 };
    let mut next = Some(start).filter(|&s| s < limit || (size == 0));
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let s = (((r ^ cur) >> 2) / c) | r;
            (s < limit).then_some(s)
        };
        Some(Support::from_bits(cur as u64))
    })
}
