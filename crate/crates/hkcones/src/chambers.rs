//! Chamber structures on the big cone: Boucksom-Zariski chambers,
//! stability chambers at rank 2, Mori chambers, and destabilizing numbers
//! along an ample direction.

use crate::cones::{self, cross, Cone2D, ConesError};
use crate::lattice::{normalize_ray, DivisorClass};
use crate::model::HKModel;
use crate::scalar::{rat, QuadScalar};
use crate::walk::{self, Component, WalkError};
use crate::zariski;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChambersError {
    #[error("class is not big")]
    NotBig,
    #[error("class is not ample")]
    NotAmple,
    #[error("class is not pseudo-effective")]
    NotPseudoEffective,
    #[error("declared fan does not cover the requested region")]
    TruncationExceeded,
    #[error(transparent)]
    Cones(ConesError),
}

fn map_walk(e: WalkError) -> ChambersError {
    match e {
        WalkError::RankUnsupported(r) => ChambersError::Cones(ConesError::RankUnsupported(r)),
        WalkError::NotBig | WalkError::NotMovable => ChambersError::NotBig,
        WalkError::TruncationExceeded => ChambersError::TruncationExceeded,
    }
}

fn map_cones(e: ConesError) -> ChambersError {
    ChambersError::Cones(e)
}

// ---------------------------------------------------------------------------
// Boucksom-Zariski chambers

/// Neg and Null data of a big class; the chamber is stable in codimension
/// one exactly when the two sets agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BZChamber {
    pub neg_set: BTreeSet<String>,
    pub null_set: BTreeSet<String>,
    pub stable_codim1: bool,
}

pub fn bz_chamber(model: &HKModel, d: &DivisorClass) -> Result<BZChamber, ChambersError> {
    let z = zariski::decompose(model, d).map_err(|_| ChambersError::NotBig)?;
    let p = &z.positive;
    if !model.square(p).is_positive() || !model.pairing(p, &model.ample).is_positive() {
        return Err(ChambersError::NotBig);
    }
    let neg_set = z.support.clone();
    let null_set: BTreeSet<String> = model
        .exceptionals
        .iter()
        .filter(|e| model.pairing(p, &e.ray).is_zero())
        .map(|e| e.name.clone())
        .collect();
    let stable_codim1 = neg_set == null_set;
    Ok(BZChamber { neg_set, null_set, stable_codim1 })
}

// ---------------------------------------------------------------------------
// Rank-2 sector decomposition

/// One open sector of the big cone between consecutive fan rays, with the
/// constant B+ component set of its interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub cone: Cone2D,
    pub components: Vec<Component>,
    /// Fan wall bounding the sector on the lo / hi side; None at the
    /// effective-cone boundary.
    pub lo_wall: Option<String>,
    pub hi_wall: Option<String>,
}

/// Splits the big cone along the fan into sectors ordered counterclockwise
/// and computes each sector's component set from an interior
/// representative.
pub fn sectors_rank2(model: &HKModel) -> Result<Vec<Sector>, ChambersError> {
    if model.rank() != 2 {
        return Err(ChambersError::Cones(ConesError::RankUnsupported(model.rank())));
    }
    if model.fan.is_empty() && !model.walls.is_empty() {
        return Err(ChambersError::TruncationExceeded);
    }
    let eff = cones::eff_cone_rank2(model).map_err(map_cones)?;
    let mut wall_rays: Vec<(DivisorClass, String)> = model
        .fan_walls()
        .iter()
        .map(|w| (normalize_ray(&w.normal), w.name.clone()))
        .collect();
    wall_rays.sort_by(|a, b| {
        if cross(&a.0, &b.0).is_positive() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut rays: Vec<(DivisorClass, Option<String>)> = Vec::new();
    rays.push((eff.lo.clone(), None));
    for (r, name) in wall_rays {
        rays.push((r, Some(name)));
    }
    rays.push((eff.hi.clone(), None));
    let mut sectors = Vec::new();
    for pair in rays.windows(2) {
        let (lo, lo_wall) = &pair[0];
        let (hi, hi_wall) = &pair[1];
        let cone = Cone2D::new(lo.clone(), hi.clone());
        let rep = cone.interior_point();
        let components = walk::base_loci(model, &rep).map_err(map_walk)?.b_plus;
        sectors.push(Sector { cone, components, lo_wall: lo_wall.clone(), hi_wall: hi_wall.clone() });
    }
    Ok(sectors)
}

// ---------------------------------------------------------------------------
// Stability chambers

/// One convex region of a stability chamber, with flags recording whether
/// its boundary rays belong to the chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub cone: Cone2D,
    pub include_lo: bool,
    pub include_hi: bool,
}

/// A stability chamber: the locus of big classes sharing B+. At rank 2 it
/// is a union of finitely many convex regions (one for every chamber
/// except possibly the outermost, which can pick up both ends of the fan).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityChamber {
    pub name: String,
    pub components: Vec<Component>,
    pub regions: Vec<Region>,
}

fn label_set(cs: &[Component]) -> BTreeSet<&str> {
    cs.iter().map(|c| c.label.as_str()).collect()
}

pub fn stability_chambers_rank2(model: &HKModel) -> Result<Vec<StabilityChamber>, ChambersError> {
    let sectors = sectors_rank2(model)?;
    // Merge adjacent sectors with the same component set into regions.
    struct Raw {
        cone: Cone2D,
        components: Vec<Component>,
        hi_wall: Option<String>,
        include_lo: bool,
        include_hi: bool,
    }
    let mut regions: Vec<Raw> = Vec::new();
    for s in &sectors {
        match regions.last_mut() {
            Some(last) if label_set(&last.components) == label_set(&s.components) => {
                last.cone = Cone2D::new(last.cone.lo.clone(), s.cone.hi.clone());
                last.hi_wall = s.hi_wall.clone();
            }
            _ => regions.push(Raw {
                cone: s.cone.clone(),
                components: s.components.clone(),
                hi_wall: s.hi_wall.clone(),
                include_lo: false,
                include_hi: false,
            }),
        }
    }
    // Attach each interior boundary ray to the adjacent region sharing its
    // B+; when it matches neither, it goes outward (the region with more
    // components), which also realizes the tie rule on the Nef boundary.
    for i in 0..regions.len().saturating_sub(1) {
        let wall_name = regions[i].hi_wall.clone().expect("interior boundary is a fan wall");
        let wall = model.wall(&wall_name).expect("fan wall declared");
        let ray = normalize_ray(&wall.normal);
        let bp = walk::base_loci(model, &ray).map_err(map_walk)?.b_plus;
        let bp_set = label_set(&bp);
        let attach_lo = bp_set == label_set(&regions[i].components);
        let attach_hi = bp_set == label_set(&regions[i + 1].components);
        if attach_lo && !attach_hi {
            regions[i].include_hi = true;
        } else if attach_hi && !attach_lo {
            regions[i + 1].include_lo = true;
        } else if regions[i].components.len() >= regions[i + 1].components.len() {
            regions[i].include_hi = true;
        } else {
            regions[i + 1].include_lo = true;
        }
    }
    // Group regions by component set.
    let mut chambers: Vec<StabilityChamber> = Vec::new();
    for r in regions {
        let region = Region { cone: r.cone, include_lo: r.include_lo, include_hi: r.include_hi };
        match chambers
            .iter_mut()
            .find(|c| label_set(&c.components) == label_set(&r.components))
        {
            Some(c) => c.regions.push(region),
            None => chambers.push(StabilityChamber {
                name: String::new(),
                components: r.components,
                regions: vec![region],
            }),
        }
    }
    // Deterministic presentation: ample chamber first, then by component
    // count and labels.
    chambers.sort_by(|a, b| {
        (a.components.len(), label_set(&a.components).into_iter().collect::<Vec<_>>())
            .cmp(&(b.components.len(), label_set(&b.components).into_iter().collect::<Vec<_>>()))
    });
    for c in chambers.iter_mut() {
        c.name = if c.components.is_empty() {
            "Amp".to_string()
        } else {
            let labels: Vec<&str> = c.components.iter().map(|x| x.label.as_str()).collect();
            format!("SC({})", labels.join(","))
        };
    }
    Ok(chambers)
}

/// Locates the stability chamber whose region contains a big class.
pub fn stability_chamber_of(
    model: &HKModel,
    d: &DivisorClass,
) -> Result<StabilityChamber, ChambersError> {
    let chambers = stability_chambers_rank2(model)?;
    let bp = walk::base_loci(model, d).map_err(map_walk)?.b_plus;
    chambers
        .into_iter()
        .find(|c| label_set(&c.components) == label_set(&bp))
        .ok_or(ChambersError::NotBig)
}

// ---------------------------------------------------------------------------
// Mori chambers

/// A Mori chamber: the face of Mov it projects to, plus the exceptional
/// generators spanning the rest of the chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriChamber {
    pub face_rays: Vec<DivisorClass>,
    pub exceptional_generators: BTreeSet<String>,
}

pub fn mori_chamber(model: &HKModel, d: &DivisorClass) -> Result<MoriChamber, ChambersError> {
    if model.rank() != 2 {
        return Err(ChambersError::Cones(ConesError::RankUnsupported(model.rank())));
    }
    let z = zariski::decompose(model, d).map_err(|_| ChambersError::NotPseudoEffective)?;
    if !z.support.is_empty() {
        // The face is Neg(D)-orthogonal inside Mov; at rank 2 that is the
        // ray of the positive part.
        let face_rays = if z.positive.is_zero() {
            vec![]
        } else {
            vec![normalize_ray(&z.positive)]
        };
        return Ok(MoriChamber { face_rays, exceptional_generators: z.support });
    }
    // Movable class: the face is its fan sector clipped to Mov.
    let mov = cones::mov_cone_rank2(model).map_err(map_cones)?;
    let mut rays: Vec<DivisorClass> = vec![mov.lo.clone()];
    let mut wall_rays: Vec<DivisorClass> = model
        .fan_walls()
        .iter()
        .map(|w| normalize_ray(&w.normal))
        .filter(|r| mov.contains_interior(r))
        .collect();
    wall_rays.sort_by(|a, b| {
        if cross(a, b).is_positive() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    rays.extend(wall_rays);
    rays.push(mov.hi.clone());
    for i in 0..rays.len() {
        let on_ray = cross(&rays[i], d).is_zero();
        if on_ray {
            return Ok(MoriChamber {
                face_rays: vec![rays[i].clone()],
                exceptional_generators: BTreeSet::new(),
            });
        }
        if i + 1 < rays.len()
            && cross(&rays[i], d).is_positive()
            && cross(d, &rays[i + 1]).is_positive()
        {
            return Ok(MoriChamber {
                face_rays: vec![rays[i].clone(), rays[i + 1].clone()],
                exceptional_generators: BTreeSet::new(),
            });
        }
    }
    Err(ChambersError::NotPseudoEffective)
}

// ---------------------------------------------------------------------------
// Destabilizing numbers

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub lambda: QuadScalar,
    pub rational: bool,
    pub walls: Vec<String>,
    pub before: Vec<Component>,
    pub after: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabReport {
    pub jumps: Vec<Jump>,
    /// Where D - lambda A exits the big cone; exact, possibly irrational.
    pub boundary_lambda: Option<QuadScalar>,
}

fn path_class(d: &DivisorClass, a: &DivisorClass, lambda: &QuadScalar) -> DivisorClass {
    d.sub(&a.scale(lambda))
}

/// All lambda >= 0 where B+(D - lambda A) jumps, plus the big-cone exit.
pub fn destabilizing_numbers(
    model: &HKModel,
    d: &DivisorClass,
    a: &DivisorClass,
) -> Result<DestabReport, ChambersError> {
    if model.rank() != 2 {
        return Err(ChambersError::Cones(ConesError::RankUnsupported(model.rank())));
    }
    if !cones::is_ample(model, a) {
        return Err(ChambersError::NotAmple);
    }
    if !cones::membership(model, d).big {
        return Err(ChambersError::NotBig);
    }
    let eff = cones::eff_cone_rank2(model).map_err(map_cones)?;
    // Both Eff constraints are upper bounds on lambda because A is
    // interior; the path stays big for all lambda below the smaller one.
    let exit_lo = cross(&eff.lo, d) / cross(&eff.lo, a);
    let exit_hi = cross(d, &eff.hi) / cross(a, &eff.hi);
    let boundary = if exit_lo.partial_cmp(&exit_hi) == Some(std::cmp::Ordering::Greater) {
        exit_hi
    } else {
        exit_lo
    };
    // Wall-crossing parameters, any sign; negative ones only delimit the
    // segment before the first nonnegative jump.
    let mut events: Vec<(QuadScalar, String)> = Vec::new();
    for w in model.fan_walls() {
        let ray = normalize_ray(&w.normal);
        let den = cross(a, &ray);
        if den.is_zero() {
            continue;
        }
        let lambda = cross(d, &ray) / den;
        if lambda.partial_cmp(&boundary) == Some(std::cmp::Ordering::Less) {
            events.push((lambda, w.name.clone()));
        }
    }
    events.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("comparable event parameters"));
    // Group events sharing a parameter.
    let mut grouped: Vec<(QuadScalar, Vec<String>)> = Vec::new();
    for (lambda, name) in events {
        match grouped.last_mut() {
            Some((l, names)) if *l == lambda => names.push(name),
            _ => grouped.push((lambda, vec![name])),
        }
    }
    let half = QuadScalar::from_rat(rat(1, 2));
    let mut jumps = Vec::new();
    for i in 0..grouped.len() {
        let (lambda, walls) = &grouped[i];
        if lambda.is_negative() {
            continue;
        }
        let prev = if i > 0 {
            grouped[i - 1].0.clone()
        } else {
            lambda.clone() - QuadScalar::one()
        };
        let next = if i + 1 < grouped.len() { grouped[i + 1].0.clone() } else { boundary.clone() };
        let before_lambda = (prev + lambda.clone()) * half.clone();
        let after_lambda = (lambda.clone() + next) * half.clone();
        let before = walk::base_loci(model, &path_class(d, a, &before_lambda))
            .map_err(map_walk)?
            .b_plus;
        let after = walk::base_loci(model, &path_class(d, a, &after_lambda))
            .map_err(map_walk)?
            .b_plus;
        if label_set(&before) != label_set(&after) {
            jumps.push(Jump {
                lambda: lambda.clone(),
                rational: lambda.is_rational(),
                walls: walls.clone(),
                before,
                after,
            });
        }
    }
    Ok(DestabReport { jumps, boundary_lambda: Some(boundary) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;
    use crate::scalar::{rat, rat_int};

    fn dc(coords: &[i64]) -> DivisorClass {
        DivisorClass::from_ints(coords)
    }

    fn chamber_sets(model: &HKModel) -> Vec<Vec<String>> {
        stability_chambers_rank2(model)
            .unwrap()
            .iter()
            .map(|c| c.components.iter().map(|x| x.label.clone()).collect())
            .collect()
    }

    #[test]
    fn bz_chambers_hilb2_s1() {
        let m = builtin("hilb2-s1").unwrap();
        let c = bz_chamber(&m, &dc(&[1, 1])).unwrap();
        assert_eq!(c.neg_set.iter().collect::<Vec<_>>(), vec!["E"]);
        assert_eq!(c.null_set, c.neg_set);
        assert!(c.stable_codim1);
        let c = bz_chamber(&m, &dc(&[1, 0])).unwrap();
        assert!(c.neg_set.is_empty());
        assert_eq!(c.null_set.iter().collect::<Vec<_>>(), vec!["E"]);
        assert!(!c.stable_codim1);
        let c = bz_chamber(&m, &m.ample.clone()).unwrap();
        assert!(c.neg_set.is_empty() && c.null_set.is_empty() && c.stable_codim1);
        assert_eq!(bz_chamber(&m, &dc(&[0, 1])), Err(ChambersError::NotBig));
    }

    #[test]
    fn hilb2_s1_three_chambers() {
        let m = builtin("hilb2-s1").unwrap();
        let sets = chamber_sets(&m);
        assert_eq!(sets, vec![vec![] as Vec<String>, vec!["E".into()], vec!["P2".into()]]);
    }

    #[test]
    fn hilb2_s2_s3_three_chambers() {
        let m = builtin("hilb2-s2").unwrap();
        assert_eq!(
            chamber_sets(&m),
            vec![vec![] as Vec<String>, vec!["E".into()], vec!["i(E)".into()]]
        );
        let m = builtin("hilb2-s3").unwrap();
        assert_eq!(
            chamber_sets(&m),
            vec![vec![] as Vec<String>, vec!["D".into()], vec!["E".into()]]
        );
    }

    #[test]
    fn fano_six_chambers() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let chambers = stability_chambers_rank2(&m).unwrap();
        let sets: Vec<BTreeSet<&str>> =
            chambers.iter().map(|c| label_set(&c.components)).collect();
        let want: Vec<BTreeSet<&str>> = vec![
            BTreeSet::new(),
            ["P"].into_iter().collect(),
            ["Pv"].into_iter().collect(),
            ["P", "S"].into_iter().collect(),
            ["Pv", "S"].into_iter().collect(),
            ["P", "Pv", "S"].into_iter().collect(),
        ];
        assert_eq!(sets, want);
        // The outermost chamber is the non-convex one: two regions.
        assert_eq!(chambers[5].regions.len(), 2);
        for c in &chambers[..5] {
            assert_eq!(c.regions.len(), 1);
        }
    }

    #[test]
    fn fano_non_convexity_witness() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let g1 = dc(&[20, -11]);
        let g2 = dc(&[-2, 11]);
        let triple: BTreeSet<&str> = ["P", "Pv", "S"].into_iter().collect();
        for g in [&g1, &g2] {
            let bp = walk::base_loci(&m, g).unwrap().b_plus;
            assert_eq!(label_set(&bp), triple);
        }
        let sum = g1.add(&g2);
        assert!(cones::is_ample(&m, &sum));
    }

    #[test]
    fn boundary_rays_attach_outward() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let chambers = stability_chambers_rank2(&m).unwrap();
        // SC(P) includes its lo boundary a1 but not its hi boundary a2.
        let sc_p = chambers.iter().find(|c| c.name == "SC(P)").unwrap();
        let region = &sc_p.regions[0];
        assert!(region.include_hi); // a1 sits at the hi end going ccw
        assert!(!region.include_lo);
    }

    #[test]
    fn mori_chambers() {
        let m = builtin("hilb2-s1").unwrap();
        let c = mori_chamber(&m, &dc(&[1, 1])).unwrap();
        assert_eq!(c.face_rays, vec![dc(&[1, 0])]);
        assert_eq!(c.exceptional_generators.iter().collect::<Vec<_>>(), vec!["E"]);
        let c = mori_chamber(&m, &m.ample.clone()).unwrap();
        assert_eq!(c.face_rays, vec![dc(&[3, -2]), dc(&[1, 0])]);
        assert!(c.exceptional_generators.is_empty());
        let f = builtin("fano-cubic-scroll").unwrap();
        let c = mori_chamber(&f, &dc(&[4, -2])).unwrap();
        assert_eq!(c.face_rays, vec![dc(&[17, -9]), dc(&[7, -3])]);
        assert!(c.exceptional_generators.is_empty());
    }

    #[test]
    fn fano_destabilizing_numbers() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let rep = destabilizing_numbers(&m, &dc(&[4, -2]), &dc(&[1, 0])).unwrap();
        let lambdas: Vec<&QuadScalar> = rep.jumps.iter().map(|j| &j.lambda).collect();
        assert_eq!(
            lambdas,
            vec![
                &QuadScalar::from_rat(rat(2, 9)),
                &QuadScalar::from_rat(rat(14, 39))
            ]
        );
        assert!(rep.jumps.iter().all(|j| j.rational));
        assert_eq!(rep.jumps[0].walls, vec!["a2"]);
        assert_eq!(rep.jumps[1].walls, vec!["a3"]);
        // Boundary exit (6 - 2 sqrt 6)/3.
        let want = QuadScalar::new(rat_int(2), rat(-2, 3), 6);
        assert_eq!(rep.boundary_lambda, Some(want));
    }

    #[test]
    fn destab_jump_at_zero() {
        let m = builtin("hilb2-s1").unwrap();
        let rep = destabilizing_numbers(&m, &dc(&[1, 0]), &dc(&[4, -1])).unwrap();
        assert_eq!(rep.jumps.len(), 1);
        assert_eq!(rep.jumps[0].lambda, QuadScalar::zero());
        assert!(rep.jumps[0].before.is_empty());
        assert_eq!(rep.jumps[0].after.len(), 1);
        assert_eq!(rep.jumps[0].after[0].label, "E");
        assert_eq!(rep.boundary_lambda, Some(QuadScalar::from_rat(rat(1, 4))));
    }

    #[test]
    fn destab_on_own_ray_has_no_jumps() {
        let m = builtin("hilb2-s1").unwrap();
        let a = m.ample.clone();
        let rep = destabilizing_numbers(&m, &a, &a).unwrap();
        assert!(rep.jumps.is_empty());
        assert_eq!(rep.boundary_lambda, Some(QuadScalar::one()));
    }

    #[test]
    fn chamber_lookup() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let c = stability_chamber_of(&m, &dc(&[4, -2])).unwrap();
        assert_eq!(c.name, "SC(P)");
    }
}
