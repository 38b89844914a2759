//! Cone memberships (pseudo-effective, big, movable, nef, ample), rank-2
//! cone arithmetic under the BBF form, positive-cone boundary rays, and the
//! Amp_k ladder.
//!
//! Convention: nef, movable and pseudo-effective are closed conditions,
//! ample and big are open. A rank-2 cone is stored as two normalized rays
//! in counterclockwise order in the fixed basis.

use crate::chambers;
use crate::lattice::{normalize_ray, DivisorClass};
use crate::model::HKModel;
use crate::scalar::QuadScalar;
use crate::zariski;
use num::Zero;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConesError {
    #[error("operation requires lattice rank 2, model has rank {0}")]
    RankUnsupported(usize),
    #[error("declared fan does not cover the requested region")]
    TruncationExceeded,
    #[error("empty cone: the constraints exclude the whole positive cone")]
    EmptyCone,
}

/// Oriented 2d determinant of two classes; positive when y is
/// counterclockwise from x.
pub fn cross(x: &DivisorClass, y: &DivisorClass) -> QuadScalar {
    assert_eq!(x.rank(), 2);
    assert_eq!(y.rank(), 2);
    x.coords[0].clone() * y.coords[1].clone() - x.coords[1].clone() * y.coords[0].clone()
}

/// A salient rank-2 cone spanned by two independent rays, stored
/// counterclockwise (cross(lo, hi) > 0) with normalized generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone2D {
    pub lo: DivisorClass,
    pub hi: DivisorClass,
}

impl Cone2D {
    pub fn new(a: DivisorClass, b: DivisorClass) -> Cone2D {
        let a = normalize_ray(&a);
        let b = normalize_ray(&b);
        let c = cross(&a, &b);
        assert!(!c.is_zero(), "cone rays must be independent");
        if c.is_positive() {
            Cone2D { lo: a, hi: b }
        } else {
            Cone2D { lo: b, hi: a }
        }
    }

    pub fn contains(&self, x: &DivisorClass) -> bool {
        !cross(&self.lo, x).is_negative() && !cross(x, &self.hi).is_negative()
    }

    pub fn contains_interior(&self, x: &DivisorClass) -> bool {
        cross(&self.lo, x).is_positive() && cross(x, &self.hi).is_positive()
    }

    /// Ray-level equality (same pair of normalized generators).
    pub fn same_cone(&self, other: &Cone2D) -> bool {
        self.lo.same_ray(&other.lo) && self.hi.same_ray(&other.hi)
    }

    /// A class strictly inside the cone, exact.
    pub fn interior_point(&self) -> DivisorClass {
        self.lo.add(&self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipFlags {
    pub pseudo_effective: bool,
    pub big: bool,
    pub movable: bool,
    pub nef: bool,
    pub ample: bool,
}

/// Which pairing a rank-2 dual cone is taken under. The curve pairing is
/// evaluated through dual divisors, so both kinds reduce to the same BBF
/// computation on the stored classes; the flag records intent in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingKind {
    Bbf,
    Curve,
}

fn in_closed_positive_cone(model: &HKModel, d: &DivisorClass) -> bool {
    !model.square(d).is_negative() && !model.pairing(d, &model.ample).is_negative()
}

fn in_open_positive_cone(model: &HKModel, d: &DivisorClass) -> bool {
    model.square(d).is_positive() && model.pairing(d, &model.ample).is_positive()
}

pub fn is_movable(model: &HKModel, d: &DivisorClass) -> bool {
    in_closed_positive_cone(model, d)
        && model.exceptionals.iter().all(|e| !model.pairing(d, &e.ray).is_negative())
}

pub fn is_nef(model: &HKModel, d: &DivisorClass) -> bool {
    is_movable(model, d)
        && model.walls.iter().all(|w| !model.pairing(d, &w.curve.dual_divisor).is_negative())
}

pub fn is_ample(model: &HKModel, d: &DivisorClass) -> bool {
    in_open_positive_cone(model, d)
        && model.exceptionals.iter().all(|e| model.pairing(d, &e.ray).is_positive())
        && model.walls.iter().all(|w| model.pairing(d, &w.curve.dual_divisor).is_positive())
}

/// All five membership flags for a class.
pub fn membership(model: &HKModel, d: &DivisorClass) -> MembershipFlags {
    let decomposition = zariski::decompose(model, d);
    let (pseudo_effective, big) = match &decomposition {
        Ok(z) => (true, in_open_positive_cone(model, &z.positive)),
        Err(_) => (false, false),
    };
    MembershipFlags {
        pseudo_effective,
        big,
        movable: is_movable(model, d),
        nef: is_nef(model, d),
        ample: is_ample(model, d),
    }
}

fn require_rank2(model: &HKModel) -> Result<(), ConesError> {
    if model.rank() != 2 {
        return Err(ConesError::RankUnsupported(model.rank()));
    }
    Ok(())
}

/// G * r as a coordinate vector; the normal covector of the hyperplane
/// q(., r) = 0.
fn gram_apply(model: &HKModel, r: &DivisorClass) -> Vec<QuadScalar> {
    let gram = model.lattice.gram();
    (0..model.rank())
        .map(|i| {
            let mut acc = QuadScalar::zero();
            for j in 0..model.rank() {
                acc = acc + r.coords[j].clone() * QuadScalar::from_rat(gram[i][j].clone());
            }
            acc
        })
        .collect()
}

/// The ray orthogonal (under q) to r, with the sign chosen so it pairs
/// nonnegatively with the given reference class.
fn orthogonal_ray(model: &HKModel, r: &DivisorClass, toward: &DivisorClass) -> DivisorClass {
    let g = gram_apply(model, r);
    let s = DivisorClass { coords: vec![-g[1].clone(), g[0].clone()] };
    let candidate = if model.pairing(&s, toward).is_negative() { s.neg() } else { s };
    normalize_ray(&candidate)
}

/// The two q = 0 rays bounding the positive cone that contains the ample
/// class, exact (possibly quadratic irrational), counterclockwise.
pub fn positive_cone_boundary_rank2(model: &HKModel) -> Result<Cone2D, ConesError> {
    require_rank2(model)?;
    let gram = model.lattice.gram();
    let (g00, g01, g11) = (&gram[0][0], &gram[0][1], &gram[1][1]);
    let two = crate::scalar::rat_int(2);
    let mut rays = Vec::new();
    if g00.is_zero() {
        // (1, 0) is isotropic; the other isotropic ray solves
        // 2 g01 x + g11 y = 0.
        rays.push(DivisorClass::from_ints(&[1, 0]));
        let other = DivisorClass::from_rats(vec![-g11.clone(), two * g01]);
        rays.push(normalize_ray(&other));
    } else {
        // Isotropic slopes t of (t, 1): g00 t^2 + 2 g01 t + g11 = 0; the
        // discriminant is positive by the (1,1) signature.
        let (t1, t2) = crate::scalar::quad_roots(g00, &(two * g01), g11)
            .expect("leading coefficient nonzero")
            .expect("indefinite form has real isotropic slopes");
        for t in [t1, t2] {
            rays.push(DivisorClass { coords: vec![t, QuadScalar::one()] });
        }
    }
    let oriented: Vec<DivisorClass> = rays
        .iter()
        .map(|r| {
            if model.pairing(r, &model.ample).is_negative() {
                normalize_ray(&r.neg())
            } else {
                normalize_ray(r)
            }
        })
        .collect();
    Ok(Cone2D::new(oriented[0].clone(), oriented[1].clone()))
}

/// Intersects a cone with the halfplane q(., r) >= 0.
fn clip_by(model: &HKModel, cone: Cone2D, r: &DivisorClass) -> Result<Cone2D, ConesError> {
    let s_lo = model.pairing(&cone.lo, r);
    let s_hi = model.pairing(&cone.hi, r);
    if !s_lo.is_negative() && !s_hi.is_negative() {
        return Ok(cone);
    }
    if s_lo.is_negative() && s_hi.is_negative() {
        return Err(ConesError::EmptyCone);
    }
    let inside = if s_lo.is_negative() { &cone.hi } else { &cone.lo };
    let boundary = orthogonal_ray(model, r, inside);
    Ok(if s_lo.is_negative() {
        Cone2D::new(boundary, cone.hi)
    } else {
        Cone2D::new(cone.lo, boundary)
    })
}

/// Mov at rank 2: the positive cone clipped by every declared exceptional.
pub fn mov_cone_rank2(model: &HKModel) -> Result<Cone2D, ConesError> {
    let mut cone = positive_cone_boundary_rank2(model)?;
    for exc in &model.exceptionals {
        cone = clip_by(model, cone, &exc.ray)?;
    }
    Ok(cone)
}

/// Nef at rank 2: Mov further clipped by every declared wall curve.
pub fn nef_cone_rank2(model: &HKModel) -> Result<Cone2D, ConesError> {
    let mut cone = mov_cone_rank2(model)?;
    for wall in &model.walls {
        cone = clip_by(model, cone, &wall.curve.dual_divisor)?;
    }
    Ok(cone)
}

/// Eff closure at rank 2, as the BBF dual of Mov.
pub fn eff_cone_rank2(model: &HKModel) -> Result<Cone2D, ConesError> {
    let mov = mov_cone_rank2(model)?;
    dual_cone_rank2(model, &mov, PairingKind::Bbf)
}

/// The dual cone {x : q(x, c) >= 0 for all c in the cone} at rank 2. Both
/// pairing kinds evaluate through the stored divisor classes, so the
/// computation is shared; see `PairingKind`.
pub fn dual_cone_rank2(
    model: &HKModel,
    cone: &Cone2D,
    _kind: PairingKind,
) -> Result<Cone2D, ConesError> {
    require_rank2(model)?;
    let interior = cone.interior_point();
    let s_lo = orthogonal_ray(model, &cone.lo, &interior);
    let s_hi = orthogonal_ray(model, &cone.hi, &interior);
    Ok(Cone2D::new(s_lo, s_hi))
}

/// Closure of Amp_k: the union of stability chambers whose components all
/// have dimension < k. Equals Nef for k <= n and the Eff closure for
/// k = 2n; in between it is assembled from the rank-2 chamber fan by
/// growing outward from Nef while the component dimensions stay below k.
pub fn amp_k(model: &HKModel, k: u32) -> Result<Cone2D, ConesError> {
    require_rank2(model)?;
    assert!(k >= 1 && k <= model.dim, "k must lie in 1..=dim");
    if k <= model.n() {
        return nef_cone_rank2(model);
    }
    if k == model.dim {
        return eff_cone_rank2(model);
    }
    let sectors = chambers::sectors_rank2(model).map_err(|e| match e {
        chambers::ChambersError::Cones(c) => c,
        _ => ConesError::TruncationExceeded,
    })?;
    let nef = nef_cone_rank2(model)?;
    let nef_idx = sectors
        .iter()
        .position(|s| s.components.is_empty() && s.cone.same_cone(&nef))
        .expect("nef sector present");
    let max_dim = |s: &chambers::Sector| s.components.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut lo_idx = nef_idx;
    while lo_idx > 0 && max_dim(&sectors[lo_idx - 1]) < k {
        lo_idx -= 1;
    }
    let mut hi_idx = nef_idx;
    while hi_idx + 1 < sectors.len() && max_dim(&sectors[hi_idx + 1]) < k {
        hi_idx += 1;
    }
    Ok(Cone2D::new(sectors[lo_idx].cone.lo.clone(), sectors[hi_idx].cone.hi.clone()))
}
