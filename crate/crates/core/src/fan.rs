//! The GIT fan: every distinct cone `C_V(θ)` as `θ` ranges over the
//! effective cone.
//!
//! Chambers are found by slicing the effective cone with every facet
//! hyperplane of every weight cone `Cone(w_S)`; semistability of each support
//! is constant on the open regions, so one interior point per region
//! determines its chamber. Lower-dimensional classes are read off the faces
//! of the chambers.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::cone::{Cone, Containment};
use crate::git::{Character, Support, SupportFamily, ToricGit};
use crate::linalg::project_out;
use crate::vector::IntVec;
use crate::Result;

/// One cone of the fan with the semistable locus of its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCone {
    pub cone: Cone,
    pub supports: SupportFamily,
    /// A character in the relative interior.
    pub representative: Character,
}

#[derive(Clone, Debug)]
pub struct GitFan {
    /// Cones of full dimension inside the span of the effective cone.
    pub chambers: Vec<FanCone>,
    /// Lower-dimensional classes other than the origin, largest first.
    pub walls: Vec<FanCone>,
    /// The class `{0}` of the zero character.
    pub origin: FanCone,
}

impl GitFan {
    /// Chambers, walls and the origin, without repetition.
    pub fn all_cones(&self) -> Vec<&FanCone> {
        let mut out: Vec<&FanCone> = self.chambers.iter().chain(&self.walls).collect();
        if !self.chambers.iter().any(|c| c.cone.is_origin()) {
            out.push(&self.origin);
        }
        out
    }

    /// The listed cone whose relative interior contains `theta`.
    pub fn locate(&self, theta: &Character) -> Option<&FanCone> {
        self.all_cones().into_iter().find(|c| {
            c.cone
                .contains_int(theta.as_vec(), Containment::RelativeInterior)
        })
    }

    /// Pairs of chambers meeting along a common facet.
    pub fn adjacent_chambers(&self) -> Result<Vec<(usize, usize)>> {
        let mut pairs = Vec::new();
        for i in 0..self.chambers.len() {
            for j in i + 1..self.chambers.len() {
                let a = &self.chambers[i].cone;
                let meet = a.intersect(&self.chambers[j].cone)?;
                if meet.dimension() + 1 == a.dimension() {
                    pairs.push((i, j));
                }
            }
        }
        Ok(pairs)
    }
}

impl ToricGit {
    pub fn git_fan(&self) -> Result<GitFan> {
        self.check_cap()?;
        let k = self.torus_rank();
        let n = self.num_coords();
        let eff = self.effective_cone().clone();
        let origin = self.fan_cone(Cone::origin(k), Character::zero(k))?;

        if eff.is_origin() {
            return Ok(GitFan {
                chambers: vec![origin.clone()],
                walls: Vec::new(),
                origin,
            });
        }

        // Wall hyperplanes, normalized inside span(eff) and up to sign.
        let mut normals: BTreeSet<IntVec> = BTreeSet::new();
        for bits in 1..(1u64 << n) {
            let wc = self.weight_cone(Support::from_bits(bits));
            for h in wc.facets().iter().chain(wc.equations()) {
                let h = project_out(h, eff.equations());
                if !h.is_zero() {
                    normals.insert(h.sign_normalized());
                }
            }
        }

        let mut regions = vec![eff.clone()];
        for h in &normals {
            let mut next = Vec::with_capacity(regions.len());
            for region in regions {
                if cuts(&region, h) {
                    next.push(region.intersect_halfspace(h)?);
                    next.push(region.intersect_halfspace(&h.neg())?);
                } else {
                    next.push(region);
                }
            }
            regions = next;
        }

        let mut chambers: Vec<FanCone> = Vec::new();
        for region in &regions {
            let p = region.relint_point();
            if chambers
                .iter()
                .any(|c| c.cone.contains_int(&p, Containment::RelativeInterior))
            {
                continue;
            }
            let theta = Character::new(p);
            let cone = self.c_cone(&theta)?;
            chambers.push(self.fan_cone(cone, theta)?);
        }

        let mut seen_faces: BTreeSet<Vec<IntVec>> = BTreeSet::new();
        let mut walls: Vec<FanCone> = Vec::new();
        for chamber in &chambers {
            for face in proper_faces(&chamber.cone) {
                if face.is_empty() || !seen_faces.insert(face.clone()) {
                    continue;
                }
                let rep = face.iter().fold(IntVec::zeros(k), |acc, r| acc.add(r));
                if walls
                    .iter()
                    .any(|w| w.cone.contains_int(&rep, Containment::RelativeInterior))
                {
                    continue;
                }
                let theta = Character::new(rep);
                let cone = self.c_cone(&theta)?;
                walls.push(self.fan_cone(cone, theta)?);
            }
        }

        chambers.sort_by(|a, b| a.cone.rays().cmp(b.cone.rays()));
        walls.sort_by(|a, b| {
            b.cone
                .dimension()
                .cmp(&a.cone.dimension())
                .then_with(|| a.cone.rays().cmp(b.cone.rays()))
        });
        Ok(GitFan {
            chambers,
            walls,
            origin,
        })
    }

    fn fan_cone(&self, cone: Cone, representative: Character) -> Result<FanCone> {
        let supports = self.semistable_supports(&representative)?;
        Ok(FanCone {
            cone,
            supports,
            representative,
        })
    }
}

/// Whether the hyperplane `h = 0` meets the relative interior of `region`.
fn cuts(region: &Cone, h: &IntVec) -> bool {
    if region.lineality().iter().any(|l| !h.dot(l).is_zero()) {
        return true;
    }
    let (mut pos, mut neg) = (false, false);
    for r in region.rays() {
        let s = h.dot(r);
        pos |= s.is_positive();
        neg |= s.is_negative();
    }
    pos && neg
}

/// Ray sets of the proper faces of a pointed cone (including the apex as
/// the empty set), found by closing the facet incidence sets under
/// intersection.
fn proper_faces(cone: &Cone) -> Vec<Vec<IntVec>> {
    let rays = cone.rays();
    let mut faces: BTreeSet<Vec<usize>> = cone
        .facets()
        .iter()
        .map(|f| {
            (0..rays.len())
                .filter(|&i| f.dot(&rays[i]).is_zero())
                .collect()
        })
        .collect();
    loop {
        let current: Vec<Vec<usize>> = faces.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
                grew |= faces.insert(meet);
            }
        }
        if !grew {
            break;
        }
    }
    faces
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| rays[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::git::ChargeMatrix;

    fn git(rows: Vec<Vec<i64>>) -> ToricGit {
        ToricGit::new(ChargeMatrix::new(rows).unwrap())
    }

    fn cone(gens: &[[i64; 2]]) -> Cone {
        let g: Vec<IntVec> = gens.iter().map(|&g| g.into()).collect();
        Cone::from_generators(&g, &[], 2).unwrap()
    }

    #[test]
    fn football_fan() {
        let fan = git(vec![vec![2, 1, 0], vec![0, 1, 1]]).git_fan().unwrap();
        let chambers: Vec<&Cone> = fan.chambers.iter().map(|c| &c.cone).collect();
        assert_eq!(
            chambers,
            vec![&cone(&[[0, 1], [1, 1]]), &cone(&[[1, 0], [1, 1]])]
        );
        let walls: Vec<&[IntVec]> = fan.walls.iter().map(|w| w.cone.rays()).collect();
        assert_eq!(
            walls,
            vec![
                &[IntVec::from([0, 1])][..],
                &[IntVec::from([1, 0])],
                &[IntVec::from([1, 1])]
            ]
        );
        assert_eq!(fan.all_cones().len(), 6);
        assert_eq!(fan.adjacent_chambers().unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn rank_one_fans() {
        let fan = git(vec![vec![1]]).git_fan().unwrap();
        assert_eq!(fan.chambers.len(), 1);
        assert_eq!(fan.chambers[0].cone.rays(), &[IntVec::from([1])]);
        assert!(fan.walls.is_empty());

        let fan = git(vec![vec![1, 1]]).git_fan().unwrap();
        assert_eq!(fan.chambers.len(), 1);

        let fan = git(vec![vec![1, -1]]).git_fan().unwrap();
        assert_eq!(fan.chambers.len(), 2);
    }

    #[test]
    fn degenerate_effective_cones() {
        let fan = git(vec![vec![0, 0]]).git_fan().unwrap();
        assert_eq!(fan.chambers.len(), 1);
        assert!(fan.chambers[0].cone.is_origin());
        assert_eq!(fan.all_cones().len(), 1);

        // Effective cone is a ray in a plane.
        let fan = git(vec![vec![0, 0], vec![1, 1]]).git_fan().unwrap();
        assert_eq!(fan.chambers.len(), 1);
        assert_eq!(fan.chambers[0].cone.rays(), &[IntVec::from([0, 1])]);
    }

    #[test]
    fn locate_finds_the_class() {
        let fan = git(vec![vec![2, 1, 0], vec![0, 1, 1]]).git_fan().unwrap();
        let c = fan.locate(&Character::from([4, 2])).unwrap();
        assert_eq!(c.cone, cone(&[[2, 0], [1, 1]]));
        assert!(fan.locate(&Character::from([-1, 1])).is_none());
        assert!(fan.locate(&Character::zero(2)).unwrap().cone.is_origin());
    }
}
