//! Rational polyhedral cones with both descriptions kept in canonical form.
//!
//! A [`Cone`] stores
//!
//! * a lineality basis: the reduced echelon basis of the largest subspace in
//!   the cone, rows scaled to primitive integers;
//! * rays: primitive extreme rays of the pointed part `C ∩ lin(C)^⊥`, sorted;
//! * facets: primitive inner normals of the facets, taken inside `span(C)`,
//!   sorted;
//! * equations: the reduced echelon basis of `span(C)^⊥`.
//!
//! Each piece depends only on the point set, so two cones are equal exactly
//! when their canonical forms are identical. Duality swaps rays with facets
//! and lineality with equations; no computation is needed.

mod dd;

use num_traits::{Signed, Zero};

use crate::linalg::{project_out, span_basis};
use crate::vector::{IntVec, RatVec};
use crate::{Error, Result};

/// Which part of a cone a membership test asks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// The closed cone, boundary included.
    Closed,
    /// The relative interior: the interior inside the linear span.
    RelativeInterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

impl Cone {
    /// Conic hull of `generators` plus the linear span of `lineality`.
    pub fn new(generators: &[RatVec], lineality: &[RatVec], dim: usize) -> Result<Cone> {
        let gens = generators
            .iter()
            .map(|g| check_dim(g.dim(), dim).map(|_| g.clear_denominators()))
            .collect::<Result<Vec<_>>>()?;
        let lin = lineality
            .iter()
            .map(|l| check_dim(l.dim(), dim).map(|_| l.clear_denominators()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(gens, lin, dim))
    }

    /// Integer-vector form of [`Cone::new`].
    pub fn from_generators(
        generators: &[IntVec],
        lineality: &[IntVec],
        dim: usize,
    ) -> Result<Cone> {
        for v in generators.iter().chain(lineality) {
            check_dim(v.dim(), dim)?;
        }
        Ok(Self::build(generators.to_vec(), lineality.to_vec(), dim))
    }

    /// `{x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}`.
    pub fn from_inequalities(
        inequalities: &[IntVec],
        equations: &[IntVec],
        dim: usize,
    ) -> Result<Cone> {
        Ok(Self::from_generators(inequalities, equations, dim)?.dual())
    }

    pub fn origin(dim: usize) -> Cone {
        Self::build(Vec::new(), Vec::new(), dim)
    }

    pub fn whole_space(dim: usize) -> Cone {
        Self::origin(dim).dual()
    }

    fn build(generators: Vec<IntVec>, lineality: Vec<IntVec>, dim: usize) -> Cone {
        let generators: Vec<IntVec> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive())
            .collect();
        let lineality: Vec<IntVec> = lineality.into_iter().filter(|l| !l.is_zero()).collect();

        // Generators of the dual: its lineality is span(C)^⊥ and its extreme
        // rays are the facet normals.
        let dual = dd::h_to_v(&generators, &lineality, dim);
        let equations = span_basis(&dual.lineality, dim);
        let facets = canonical_rays(&dual.rays, &equations);

        // Regenerate the primal from the facets so the rays are irredundant.
        let primal = dd::h_to_v(&facets, &equations, dim);
        let lineality = span_basis(&primal.lineality, dim);
        let rays = canonical_rays(&primal.rays, &lineality);

        Cone {
            dim,
            lineality,
            rays,
            facets,
            equations,
        }
    }

    /// `{f : f(c) >= 0 for all c in self}`.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_dim(other.dim, self.dim)?;
        let ineqs: Vec<IntVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVec> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Ok(Self::build(ineqs, eqs, self.dim).dual())
    }

    /// Intersection with the halfspace `{x : normal.x >= 0}`.
    pub fn intersect_halfspace(&self, normal: &IntVec) -> Result<Cone> {
        check_dim(normal.dim(), self.dim)?;
        let mut ineqs = self.facets.clone();
        ineqs.push(normal.clone());
        Ok(Self::build(ineqs, self.equations.clone(), self.dim).dual())
    }

    /// Smallest closed convex cone containing every input.
    pub fn hull(cones: &[Cone]) -> Result<Cone> {
        let dim = cones.first().ok_or(Error::EmptyHull)?.dim;
        let mut gens = Vec::new();
        let mut lin = Vec::new();
        for c in cones {
            check_dim(c.dim, dim)?;
            gens.extend(c.rays.iter().cloned());
            lin.extend(c.lineality.iter().cloned());
        }
        Ok(Self::build(gens, lin, dim))
    }

    pub fn contains(&self, v: &RatVec, mode: Containment) -> bool {
        v.dim() == self.dim && self.contains_int(&v.clear_denominators(), mode)
    }

    /// Membership of an integer point. Panics on a dimension mismatch.
    pub fn contains_int(&self, v: &IntVec, mode: Containment) -> bool {
        assert_eq!(v.dim(), self.dim, "point has the wrong dimension");
        if !self.equations.iter().all(|e| e.dot(v).is_zero()) {
            return false;
        }
        match mode {
            Containment::Closed => self.facets.iter().all(|f| !f.dot(v).is_negative()),
            Containment::RelativeInterior => self.facets.iter().all(|f| f.dot(v).is_positive()),
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.dim == other.dim
            && self
                .rays
                .iter()
                .all(|r| other.contains_int(r, Containment::Closed))
            && self.lineality.iter().all(|l| {
                other.contains_int(l, Containment::Closed)
                    && other.contains_int(&l.neg(), Containment::Closed)
            })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.dimension() == 0
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// All halfspace normals: facets, plus both signs of every equation.
    pub fn inequalities(&self) -> Vec<IntVec> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.neg());
        }
        out
    }

    /// A point in the relative interior: the sum of the rays.
    pub fn relint_point(&self) -> IntVec {
        self.rays
            .iter()
            .fold(IntVec::zeros(self.dim), |acc, r| acc.add(r))
    }
}

fn check_dim(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn canonical_rays(rays: &[IntVec], subspace: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = rays
        .iter()
        .map(|r| project_out(r, subspace))
        .filter(|r| !r.is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVec {
        IntVec::from_i64s(c)
    }

    fn cone(gens: &[&[i64]]) -> Cone {
        let gens: Vec<IntVec> = gens.iter().map(|g| v(g)).collect();
        let dim = gens.first().map_or(2, IntVec::dim);
        Cone::from_generators(&gens, &[], dim).unwrap()
    }

    #[test]
    fn empty_hull_is_origin() {
        let c = Cone::new(&[], &[], 2).unwrap();
        assert!(c.rays().is_empty() && c.lineality().is_empty());
        assert_eq!(c.equations().len(), 2);
        assert!(c.is_origin());
    }

    #[test]
    fn two_dim_cone_descriptions() {
        let c = cone(&[&[2, 0], &[1, 1]]);
        assert_eq!(c.rays(), &[v(&[1, 0]), v(&[1, 1])]);
        assert_eq!(c.facets(), &[v(&[0, 1]), v(&[1, -1])]);
        assert!(c.equations().is_empty());
    }

    #[test]
    fn opposite_rays_make_a_line() {
        let c = cone(&[&[1, 0], &[-1, 0]]);
        assert!(c.rays().is_empty());
        assert_eq!(c.lineality(), &[v(&[1, 0])]);
        assert_eq!(c.equations(), &[v(&[0, 1])]);
        let mut ineqs = c.inequalities();
        ineqs.sort();
        assert_eq!(ineqs, vec![v(&[0, -1]), v(&[0, 1])]);
    }

    #[test]
    fn duals() {
        let quadrant = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(quadrant.dual(), quadrant);
        assert_eq!(cone(&[&[2, 0], &[1, 1]]).dual(), cone(&[&[0, 1], &[1, -1]]));
        let whole = Cone::origin(2).dual();
        assert_eq!(whole.lineality_dim(), 2);
        assert_eq!(whole, Cone::whole_space(2));
    }

    #[test]
    fn intersections() {
        let a = cone(&[&[2, 0], &[1, 1]]);
        let q = cone(&[&[2, 0], &[0, 1]]);
        assert_eq!(a.intersect(&q).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(
            cone(&[&[1, 0]]).intersect(&cone(&[&[0, 1]])).unwrap(),
            Cone::origin(2)
        );
        assert!(matches!(
            a.intersect(&Cone::origin(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hulls() {
        let a = cone(&[&[0, 1], &[1, -1]]);
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(Cone::hull(&[a.clone(), q]).unwrap(), a);
        assert_eq!(Cone::hull(std::slice::from_ref(&a)).unwrap(), a);
        let line = Cone::hull(&[cone(&[&[1, 0]]), cone(&[&[-1, 0]])]).unwrap();
        assert_eq!(line.lineality_dim(), 1);
        assert!(matches!(Cone::hull(&[]), Err(Error::EmptyHull)));
    }

    #[test]
    fn membership() {
        let c = cone(&[&[2, 0], &[1, 1]]);
        assert!(c.contains_int(&v(&[4, 2]), Containment::RelativeInterior));
        assert!(!c.contains_int(&v(&[2, 0]), Containment::RelativeInterior));
        assert!(c.contains_int(&v(&[2, 0]), Containment::Closed));
        let ray = cone(&[&[1, 1]]);
        assert!(ray.contains_int(&v(&[3, 3]), Containment::RelativeInterior));
        assert!(!ray.contains_int(&v(&[3, 2]), Containment::Closed));
        assert!(Cone::origin(2).contains_int(&v(&[0, 0]), Containment::RelativeInterior));
    }

    #[test]
    fn equality_is_structural() {
        assert_eq!(cone(&[&[2, 0], &[1, 1]]), cone(&[&[1, 0], &[1, 1]]));
        assert_ne!(cone(&[&[2, 0], &[1, 1]]), cone(&[&[1, 1], &[0, 1]]));
        // Redundant generators disappear.
        assert_eq!(
            cone(&[&[1, 0], &[3, 1], &[1, 1]]),
            cone(&[&[1, 0], &[1, 1]])
        );
    }

    #[test]
    fn rays_are_taken_orthogonal_to_lineality() {
        let half = Cone::from_generators(&[v(&[3, 5])], &[v(&[1, 0])], 2).unwrap();
        assert_eq!(half.rays(), &[v(&[0, 1])]);
        assert_eq!(half.facets(), &[v(&[0, 1])]);
    }
}
