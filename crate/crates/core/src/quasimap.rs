//! Quasimap degree cones and Hilbert–Mumford weights.
//!
//! A one-parameter subgroup `λ` and a semistable point `x` whose limit
//! `lim_{t→0} λ(t)·x` exists give a quasimap `P^1 → [V/T]`; its degree,
//! as a functional on characters, is `κ ↦ ⟨κ, λ⟩`, which is also the
//! Hilbert–Mumford weight of `(λ, x)` for `κ`. For a torus the limit exists
//! iff `⟨w_i, λ⟩ ≥ 0` on the support of `x`, so the cone `NE(θ)` spanned by
//! these degrees is the hull of the duals of the semistable weight cones.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{Cone, Containment};
use crate::git::{Character, ChargeMatrix, Support, SupportFamily, ToricGit};
use crate::vector::IntVec;
use crate::{Error, Result};

/// An element `λ` of the cocharacter lattice, dual to the characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocharacter(IntVec);

impl Cocharacter {
    pub fn new(v: IntVec) -> Self {
        Cocharacter(v)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Cocharacter(IntVec::from_i64s(coords))
    }

    pub fn as_vec(&self) -> &IntVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl<const N: usize> From<[i64; N]> for Cocharacter {
    fn from(c: [i64; N]) -> Self {
        Cocharacter::from_i64s(&c)
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The quasimap attached to a 1-PS `lambda` and a `theta`-semistable point
/// with the given support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasimapDatum {
    pub lambda: Cocharacter,
    pub support: Support,
    pub theta: Character,
}

impl QuasimapDatum {
    /// Checks that the limit exists and the base point is semistable.
    pub fn validate(&self, git: &ToricGit) -> Result<()> {
        let k = git.torus_rank();
        if self.lambda.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: self.lambda.dim(),
            });
        }
        if self.support.indices().any(|i| i >= git.num_coords()) {
            return Err(Error::InvalidDatum(format!(
                "support {} has coordinates beyond n = {}",
                self.support,
                git.num_coords()
            )));
        }
        if !limit_exists(git.charge(), self.support, &self.lambda) {
            return Err(Error::InvalidDatum(format!(
                "the limit of {} along {} does not exist",
                self.support, self.lambda
            )));
        }
        if !git.is_semistable_support(self.support, &self.theta)? {
            return Err(Error::InvalidDatum(format!(
                "support {} is not {}-semistable",
                self.support, self.theta
            )));
        }
        Ok(())
    }

    /// Degree of the quasimap against the line bundle of `kappa`.
    pub fn degree(&self, kappa: &Character) -> BigInt {
        hm_weight(kappa, &self.lambda)
    }
}

/// `⟨κ, λ⟩`. Panics if the dimensions differ.
pub fn hm_weight(kappa: &Character, lambda: &Cocharacter) -> BigInt {
    assert_eq!(
        kappa.dim(),
        lambda.dim(),
        "character and cocharacter dimensions differ"
    );
    kappa.as_vec().dot(lambda.as_vec())
}

/// `lim_{t→0} λ(t)·x` exists for points with support `S` iff every weight in
/// `S` pairs nonnegatively with `λ`.
pub fn limit_exists(charge: &ChargeMatrix, support: Support, lambda: &Cocharacter) -> bool {
    support
        .indices()
        .all(|i| !charge.weight(i).dot(lambda.as_vec()).is_negative())
}

/// The closed cone `NE(θ)` generated by degrees of 1-PS quasimaps.
pub fn ne_cone(git: &ToricGit, theta: &Character) -> Result<Cone> {
    git.require_effective(theta)?;
    let family = git.semistable_supports(theta)?;
    let duals: Vec<Cone> = family
        .minimal_supports()
        .iter()
        .map(|&s| git.weight_cone(s).dual())
        .collect();
    Cone::hull(&duals)
}

/// Degree of a valid `θ`-quasimap against `θ` itself; always `>= 0`.
pub fn positivity_check(git: &ToricGit, theta: &Character, qm: &QuasimapDatum) -> Result<bool> {
    if &qm.theta != theta {
        return Err(Error::InvalidDatum(format!(
            "datum is a quasimap for {}, not {}",
            qm.theta, theta
        )));
    }
    qm.validate(git)?;
    Ok(!qm.degree(theta).is_negative())
}

/// A `θ`-quasimap of negative `κ`-degree, or `None` when `κ ∈ C_V(θ)`.
///
/// Scans the minimal `θ`-semistable supports for a weight cone missing `κ`;
/// a separating inequality of that cone is a 1-PS whose limit exists on the
/// support and whose pairing with `κ` is negative.
pub fn witness_negative(
    git: &ToricGit,
    theta: &Character,
    kappa: &Character,
) -> Result<Option<QuasimapDatum>> {
    git.require_effective(theta)?;
    git.check_character(kappa)?;
    let family = git.semistable_supports(theta)?;
    Ok(witness_from_family(git, &family, theta, kappa))
}

fn witness_from_family(
    git: &ToricGit,
    family: &SupportFamily,
    theta: &Character,
    kappa: &Character,
) -> Option<QuasimapDatum> {
    for &support in family.minimal_supports() {
        let wc = git.weight_cone(support);
        let separating = wc
            .inequalities()
            .into_iter()
            .find(|f| f.dot(kappa.as_vec()).is_negative());
        if let Some(lambda) = separating {
            return Some(QuasimapDatum {
                lambda: Cocharacter::new(lambda),
                support,
                theta: theta.clone(),
            });
        }
    }
    None
}

/// How the verifier chooses its test characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestSetPolicy {
    /// Number of seeded random characters added to the deterministic set.
    pub random_points: usize,
    pub seed: u64,
    /// Random coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
}

impl Default for TestSetPolicy {
    fn default() -> Self {
        TestSetPolicy {
            random_points: 0,
            seed: 0,
            bound: 6,
        }
    }
}

impl TestSetPolicy {
    pub fn with_random(seed: u64, random_points: usize) -> Self {
        TestSetPolicy {
            random_points,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVerdict {
    pub character: Character,
    /// Same semistable locus as `θ`.
    pub git_equivalent: bool,
    /// In the relative interior of `NE(θ)^∨`.
    pub in_relint_ne_dual: bool,
    pub in_c_cone: bool,
    /// A negative-degree quasimap, for characters outside `C_V(θ)`.
    pub witness: Option<QuasimapDatum>,
    pub witness_valid: bool,
}

impl PointVerdict {
    pub fn passed(&self) -> bool {
        self.git_equivalent == self.in_relint_ne_dual
            && (self.in_c_cone == self.witness.is_none())
            && (self.in_c_cone || self.witness_valid)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub theta: Character,
    pub c_cone: Cone,
    pub ne_cone: Cone,
    pub ne_dual: Cone,
    /// `NE(θ)^∨ = C_V(θ)`.
    pub duality_holds: bool,
    pub points: Vec<PointVerdict>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.duality_holds && self.points.iter().all(PointVerdict::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PointVerdict> {
        self.points.iter().filter(|p| !p.passed())
    }
}

/// Checks `A(θ) = relint(NE(θ)^∨)` for any `θ`, reusing one fan and one
/// deterministic test set across calls.
pub struct KleimanVerifier<'a> {
    git: &'a ToricGit,
    fan: crate::GitFan,
    points: Vec<Character>,
    families: Vec<SupportFamily>,
}

impl<'a> KleimanVerifier<'a> {
    pub fn new(git: &'a ToricGit) -> Result<Self> {
        let fan = git.git_fan()?;
        Self::with_fan(git, fan)
    }

    pub fn with_fan(git: &'a ToricGit, fan: crate::GitFan) -> Result<Self> {
        let points = deterministic_test_set(git, &fan)?;
        let families = points
            .iter()
            .map(|p| git.semistable_supports(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(KleimanVerifier {
            git,
            fan,
            points,
            families,
        })
    }

    pub fn fan(&self) -> &crate::GitFan {
        &self.fan
    }

    pub fn test_points(&self) -> &[Character] {
        &self.points
    }

    pub fn verify(&self, theta: &Character, policy: TestSetPolicy) -> Result<VerificationReport> {
        let git = self.git;
        let c_cone = git.c_cone(theta)?;
        let ne = ne_cone(git, theta)?;
        let ne_dual = ne.dual();
        let duality_holds = ne_dual == c_cone;
        let family = git.semistable_supports(theta)?;

        let mut points = Vec::with_capacity(self.points.len() + policy.random_points);
        for (p, fam) in self.points.iter().zip(&self.families) {
            points.push(self.judge(theta, &family, &c_cone, &ne_dual, p, *fam == family));
        }
        for p in random_characters(git.torus_rank(), policy) {
            let equivalent = git.semistable_supports(&p)? == family;
            points.push(self.judge(theta, &family, &c_cone, &ne_dual, &p, equivalent));
        }

        Ok(VerificationReport {
            theta: theta.clone(),
            c_cone,
            ne_cone: ne,
            ne_dual,
            duality_holds,
            points,
        })
    }

    fn judge(
        &self,
        theta: &Character,
        family: &SupportFamily,
        c_cone: &Cone,
        ne_dual: &Cone,
        p: &Character,
        git_equivalent: bool,
    ) -> PointVerdict {
        let in_c_cone = c_cone.contains_int(p.as_vec(), Containment::Closed);
        let witness = witness_from_family(self.git, family, theta, p);
        let witness_valid = witness
            .as_ref()
            .is_some_and(|w| w.validate(self.git).is_ok() && w.degree(p).is_negative());
        PointVerdict {
            character: p.clone(),
            git_equivalent,
            in_relint_ne_dual: ne_dual.contains_int(p.as_vec(), Containment::RelativeInterior),
            in_c_cone,
            witness,
            witness_valid,
        }
    }
}

/// Builds a verifier and checks a single character.
pub fn verify_kleiman(
    git: &ToricGit,
    theta: &Character,
    policy: TestSetPolicy,
) -> Result<VerificationReport> {
    git.require_effective(theta)?;
    KleimanVerifier::new(git)?.verify(theta, policy)
}

/// Rays and relative-interior points of every fan cone, sums across
/// chamber rays and across adjacent chambers, and points just outside the
/// effective cone. Sorted, without duplicates.
fn deterministic_test_set(git: &ToricGit, fan: &crate::GitFan) -> Result<Vec<Character>> {
    let k = git.torus_rank();
    let mut set = std::collections::BTreeSet::new();
    set.insert(IntVec::zeros(k));
    for fc in fan.all_cones() {
        set.insert(fc.representative.as_vec().clone());
        set.extend(fc.cone.rays().iter().cloned());
    }
    for chamber in &fan.chambers {
        let rays = chamber.cone.rays();
        for (i, a) in rays.iter().enumerate() {
            for b in &rays[i + 1..] {
                set.insert(a.add(b));
            }
        }
    }
    for (i, j) in fan.adjacent_chambers()? {
        let a = fan.chambers[i].representative.as_vec();
        let b = fan.chambers[j].representative.as_vec();
        set.insert(a.add(b));
    }
    let eff = git.effective_cone();
    for f in eff.facets() {
        set.insert(f.neg());
        for r in eff.rays().iter().filter(|r| f.dot(r).is_zero()) {
            set.insert(r.scale(&BigInt::from(2)).add(&f.neg()));
        }
    }
    for e in eff.equations() {
        set.insert(e.clone());
        set.insert(e.neg());
    }
    Ok(set.into_iter().map(Character::new).collect())
}

fn random_characters(k: usize, policy: TestSetPolicy) -> Vec<Character> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(policy.seed);
    (0..policy.random_points)
        .map(|_| {
            let coords: Vec<i64> = (0..k)
                .map(|_| rng.random_range(-policy.bound..=policy.bound))
                .collect();
            Character::from_i64s(&coords)
        })
        .collect()
}
