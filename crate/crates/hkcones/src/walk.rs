//! Rank-2 wall walker over the declared fan and assembly of the asymptotic
//! base loci B+, B- and B.
//!
//! Crossing a flip wall on the way from a movable class to the nef cone
//! records the wall's center as flipped; the divisorial parts of the loci
//! come straight from the Zariski decomposition (Neg for B-, Null of the
//! positive part for B+). For big classes B = B-.

use crate::cones::{self, cross, Cone2D};
use crate::lattice::{normalize_ray, DivisorClass};
use crate::model::{HKModel, WallData, WallKind};
use crate::zariski;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("operation requires lattice rank 2, model has rank {0}")]
    RankUnsupported(usize),
    #[error("class is not movable")]
    NotMovable,
    #[error("class is not big")]
    NotBig,
    #[error("declared fan does not cover the requested region")]
    TruncationExceeded,
}

/// One irreducible component of a base locus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub label: String,
    pub dim: u32,
    pub divisorial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossedWall {
    pub wall: String,
    pub center_label: String,
    pub center_dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    /// Walls strictly between the input's chamber and Nef, nearest to the
    /// input first.
    pub crossed: Vec<CrossedWall>,
    pub terminal_chamber: Cone2D,
    /// Set when the input ray lies on a wall.
    pub terminal_on_wall: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub b_plus: Vec<Component>,
    pub b_minus: Vec<Component>,
    pub b: Vec<Component>,
    pub stable: bool,
    /// True at rank >= 3, where only divisorial parts and declared-wall
    /// orthogonality are reported.
    pub partial: bool,
}

fn is_big(model: &HKModel, p: &DivisorClass) -> bool {
    model.square(p).is_positive() && model.pairing(p, &model.ample).is_positive()
}

/// Component data for a center label: wall metadata when a wall names the
/// center, otherwise a declared exceptional divisor of dimension 2n-1.
pub fn component_for(model: &HKModel, label: &str) -> Component {
    if let Some(w) = model.walls.iter().find(|w| w.center.label == label) {
        Component {
            label: label.to_string(),
            dim: w.center.dim,
            divisorial: w.kind == WallKind::Divisorial,
        }
    } else {
        Component { label: label.to_string(), dim: model.dim - 1, divisorial: true }
    }
}

/// Walks a movable big class to the nef cone across the declared fan.
pub fn walk_rank2(model: &HKModel, d: &DivisorClass) -> Result<WalkTrace, WalkError> {
    if model.rank() != 2 {
        return Err(WalkError::RankUnsupported(model.rank()));
    }
    if !cones::is_movable(model, d) {
        return Err(WalkError::NotMovable);
    }
    if !is_big(model, d) {
        return Err(WalkError::NotBig);
    }
    if model.fan.is_empty() && !model.walls.is_empty() {
        return Err(WalkError::TruncationExceeded);
    }
    let fan = model.fan_walls();
    let mut crossed: Vec<&WallData> = Vec::new();
    let mut on_wall = None;
    for w in &fan {
        let p = model.pairing(d, &w.curve.dual_divisor);
        if p.is_negative() {
            crossed.push(w);
        } else if p.is_zero() && on_wall.is_none() {
            on_wall = Some(w.name.clone());
        }
    }
    // Order crossed walls nearest-to-d first: sort counterclockwise; for
    // walls clockwise of the ample ray that is already nearest-first, on
    // the other side it is the reverse.
    crossed.sort_by(|a, b| {
        let c = cross(&normalize_ray(&a.normal), &normalize_ray(&b.normal));
        if c.is_positive() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    if let Some(first) = crossed.first() {
        if cross(&normalize_ray(&first.normal), &model.ample).is_negative() {
            crossed.reverse();
        }
    }
    let terminal_chamber = cones::nef_cone_rank2(model).map_err(map_cones)?;
    Ok(WalkTrace {
        crossed: crossed
            .iter()
            .map(|w| CrossedWall {
                wall: w.name.clone(),
                center_label: w.center.label.clone(),
                center_dim: w.center.dim,
            })
            .collect(),
        terminal_chamber,
        terminal_on_wall: on_wall,
    })
}

fn map_cones(e: cones::ConesError) -> WalkError {
    match e {
        cones::ConesError::RankUnsupported(r) => WalkError::RankUnsupported(r),
        _ => WalkError::TruncationExceeded,
    }
}

fn sorted_components(set: BTreeSet<Component>) -> Vec<Component> {
    set.into_iter().collect()
}

/// The full base-locus report for a big class.
pub fn base_loci(model: &HKModel, d: &DivisorClass) -> Result<BaseLocusReport, WalkError> {
    let z = zariski::decompose(model, d).map_err(|_| WalkError::NotBig)?;
    if !z.positive.is_zero() && !is_big(model, &z.positive) {
        return Err(WalkError::NotBig);
    }
    if z.positive.is_zero() {
        return Err(WalkError::NotBig);
    }
    let p = &z.positive;
    let mut b_minus: BTreeSet<Component> = BTreeSet::new();
    let mut b_plus: BTreeSet<Component> = BTreeSet::new();
    for name in &z.support {
        let c = component_for(model, name);
        b_minus.insert(c.clone());
        b_plus.insert(c);
    }
    // Divisorial part of B+ is Null of the positive part.
    for exc in &model.exceptionals {
        if model.pairing(p, &exc.ray).is_zero() {
            b_plus.insert(component_for(model, &exc.name));
        }
    }
    let partial = model.rank() != 2 || (model.fan.is_empty() && !model.walls.is_empty());
    if partial {
        // Declared-wall orthogonality stands in for the walk.
        for w in &model.walls {
            if model.pairing(p, &w.curve.dual_divisor).is_zero() {
                b_plus.insert(component_for(model, &w.center.label));
            }
        }
    } else {
        let trace = walk_rank2(model, p)?;
        for cw in &trace.crossed {
            let c = component_for(model, &cw.center_label);
            b_minus.insert(c.clone());
            b_plus.insert(c);
        }
        if let Some(wname) = &trace.terminal_on_wall {
            let w = model.wall(wname).expect("trace names a declared wall");
            b_plus.insert(component_for(model, &w.center.label));
        }
    }
    let b_minus = sorted_components(b_minus);
    let b_plus = sorted_components(b_plus);
    let stable = b_minus == b_plus;
    Ok(BaseLocusReport { b: b_minus.clone(), b_minus, b_plus, stable, partial })
}

/// True iff B differs from B+, with a witness wall or exceptional.
pub fn is_unstable(model: &HKModel, d: &DivisorClass) -> Result<(bool, Option<String>), WalkError> {
    let rep = base_loci(model, d)?;
    if rep.stable {
        return Ok((false, None));
    }
    let minus: BTreeSet<&str> = rep.b_minus.iter().map(|c| c.label.as_str()).collect();
    let witness = rep
        .b_plus
        .iter()
        .find(|c| !minus.contains(c.label.as_str()))
        .map(|c| {
            // Prefer a wall the class pairs to zero on, then any wall
            // whose center realizes the extra component.
            let matching: Vec<_> =
                model.walls.iter().filter(|w| w.center.label == c.label).collect();
            matching
                .iter()
                .find(|w| model.pairing(d, &w.curve.dual_divisor).is_zero())
                .or_else(|| matching.first())
                .map(|w| w.name.clone())
                .unwrap_or_else(|| c.label.clone())
        });
    Ok((true, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;

    fn dc(coords: &[i64]) -> DivisorClass {
        DivisorClass::from_ints(coords)
    }

    fn labels(cs: &[Component]) -> Vec<&str> {
        cs.iter().map(|c| c.label.as_str()).collect()
    }

    #[test]
    fn fano_single_flop() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let t = walk_rank2(&m, &dc(&[4, -2])).unwrap();
        assert_eq!(t.crossed.len(), 1);
        assert_eq!(t.crossed[0].wall, "a1");
        assert_eq!(t.crossed[0].center_label, "P");
        assert_eq!(t.terminal_on_wall, None);
    }

    #[test]
    fn ample_walks_nowhere() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let t = walk_rank2(&m, &m.ample.clone()).unwrap();
        assert!(t.crossed.is_empty());
        assert_eq!(t.terminal_on_wall, None);
    }

    #[test]
    fn fano_triple_flop_order() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let t = walk_rank2(&m, &dc(&[20, -11])).unwrap();
        let names: Vec<&str> = t.crossed.iter().map(|c| c.wall.as_str()).collect();
        assert_eq!(names, vec!["a3", "a2", "a1"]);
        let centers: Vec<&str> = t.crossed.iter().map(|c| c.center_label.as_str()).collect();
        assert_eq!(centers, vec!["Pv", "S", "P"]);
    }

    #[test]
    fn fano_dual_side_order() {
        // Mirror class on the other side of Nef crosses the dual walls.
        let m = builtin("fano-cubic-scroll").unwrap();
        let t = walk_rank2(&m, &dc(&[-2, 11])).unwrap();
        let names: Vec<&str> = t.crossed.iter().map(|c| c.wall.as_str()).collect();
        assert_eq!(names, vec!["a3v", "a2v", "a1v"]);
    }

    #[test]
    fn non_movable_is_rejected() {
        let m = builtin("hilb2-s1").unwrap();
        assert_eq!(walk_rank2(&m, &dc(&[1, 1])), Err(WalkError::NotMovable));
    }

    #[test]
    fn hilb2_s1_loci_worked_cases() {
        let m = builtin("hilb2-s1").unwrap();
        // H + delta: stable with the exceptional divisor as the only
        // component.
        let r = base_loci(&m, &dc(&[1, 1])).unwrap();
        assert_eq!(labels(&r.b_plus), vec!["E"]);
        assert_eq!(r.b_plus[0].dim, 3);
        assert!(r.b_plus[0].divisorial);
        assert!(r.stable);
        assert_eq!(r.b_minus, r.b_plus);
        // Nef boundary ray 3H - 2delta: the plane appears only in B+.
        let r = base_loci(&m, &dc(&[3, -2])).unwrap();
        assert_eq!(labels(&r.b_plus), vec!["P2"]);
        assert_eq!(r.b_plus[0].dim, 2);
        assert!(!r.b_plus[0].divisorial);
        assert!(r.b_minus.is_empty());
        assert!(!r.stable);
        // Ample: everything empty.
        let r = base_loci(&m, &m.ample.clone()).unwrap();
        assert!(r.b_plus.is_empty() && r.b_minus.is_empty() && r.stable);
    }

    #[test]
    fn fano_alpha1_unstable() {
        let m = builtin("fano-cubic-scroll").unwrap();
        let r = base_loci(&m, &dc(&[7, -3])).unwrap();
        assert_eq!(labels(&r.b_plus), vec!["P"]);
        assert!(r.b_minus.is_empty());
        assert!(!r.stable);
        let (unstable, witness) = is_unstable(&m, &dc(&[7, -3])).unwrap();
        assert!(unstable);
        assert_eq!(witness.as_deref(), Some("a1"));
    }

    #[test]
    fn fano_chamber_interior_stable() {
        // Interior of the second chamber: slope strictly between a2 and a3.
        let m = builtin("fano-cubic-scroll").unwrap();
        let d = dc(&[88, -47]); // between 17/-9 and 71/-39
        let (unstable, _) = is_unstable(&m, &d).unwrap();
        assert!(!unstable);
        let r = base_loci(&m, &d).unwrap();
        let mut want: Vec<&str> = vec!["P", "S"];
        want.sort();
        assert_eq!(labels(&r.b_plus), want);
        assert!(r.b_minus == r.b_plus);
    }

    #[test]
    fn k3n_mixed_dimensions() {
        let m = builtin("k3n-mixed").unwrap();
        let r = base_loci(&m, &DivisorClass::from_ints(&[1, 0, 0])).unwrap();
        assert!(r.partial);
        let mut dims: Vec<u32> = r.b_plus.iter().map(|c| c.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 3, 3]);
        assert!(r.b_plus.iter().any(|c| !c.divisorial && c.dim == 2));
    }

    #[test]
    fn non_big_rejected() {
        let m = builtin("hilb2-s1").unwrap();
        assert_eq!(base_loci(&m, &dc(&[0, 1])), Err(WalkError::NotBig));
        assert_eq!(base_loci(&m, &dc(&[1, -1])), Err(WalkError::NotBig));
    }
}
