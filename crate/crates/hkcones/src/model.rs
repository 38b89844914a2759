//! Model fixtures: a hyper-Kahler model is a lattice plus declared prime
//! exceptional divisors, wall data and an ample reference class.
//!
//! Which classes are prime exceptional or wall divisors is input data and
//! never computed; completeness of the declared lists is part of the
//! fixture contract. Six built-in fixtures cover Hilb^2 of low-degree K3
//! surfaces, the Fano variety of lines on a cubic fourfold containing a
//! cubic scroll, a two-curve K3 surface, and a rank-3 model with base-locus
//! components of mixed dimension.

use crate::lattice::{normalize_ray, CurveClass, DivisorClass, NSLattice};
use crate::scalar::{format_rat, parse_rat, rat, rat_int, QuadScalar, Rat};
use num::Signed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallKind {
    Flip,
    Divisorial,
    Fibration,
}

/// A declared prime exceptional divisor: primitive ray generator plus the
/// multiplier taking the generator to the actual prime divisor class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalClass {
    pub name: String,
    pub ray: DivisorClass,
    pub prime_multiple: Rat,
}

impl ExceptionalClass {
    /// The class of the prime divisor itself.
    pub fn prime_class(&self) -> DivisorClass {
        self.ray.scale(&QuadScalar::from_rat(self.prime_multiple.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Center {
    pub label: String,
    pub dim: u32,
}

/// A wall: a contractible curve class (through its dual divisor), the wall
/// normal it is orthogonal to, and the center that gets modified when the
/// wall is crossed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallData {
    pub name: String,
    pub normal: DivisorClass,
    pub curve: CurveClass,
    pub center: Center,
    pub kind: WallKind,
}

impl WallData {
    pub fn is_divisorial(&self) -> bool {
        self.kind == WallKind::Divisorial
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKModel {
    pub name: String,
    pub dim: u32,
    pub basis: Vec<String>,
    pub lattice: NSLattice,
    pub ample: DivisorClass,
    pub exceptionals: Vec<ExceptionalClass>,
    pub walls: Vec<WallData>,
    /// Ordered wall names sweeping the big cone from one Mov boundary to
    /// the other; empty when no rank-2 fan is declared.
    pub fan: Vec<String>,
    /// When set, classes beyond the outermost listed wall inherit the
    /// outermost chamber's base-locus components (the declared wall list is
    /// a stabilized truncation of an infinite sequence).
    pub fan_stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, location: &str, code: &str, message: String) {
        self.violations.push(Violation {
            location: location.to_string(),
            code: code.to_string(),
            message,
        });
    }
}

impl HKModel {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Half the complex dimension; the lower bound for component dims.
    pub fn n(&self) -> u32 {
        self.dim / 2
    }

    pub fn wall(&self, name: &str) -> Option<&WallData> {
        self.walls.iter().find(|w| w.name == name)
    }

    pub fn exceptional(&self, name: &str) -> Option<&ExceptionalClass> {
        self.exceptionals.iter().find(|e| e.name == name)
    }

    /// The fan's walls in declared order.
    pub fn fan_walls(&self) -> Vec<&WallData> {
        self.fan.iter().filter_map(|n| self.wall(n)).collect()
    }

    pub fn pairing(&self, x: &DivisorClass, y: &DivisorClass) -> QuadScalar {
        self.lattice.pairing(x, y).expect("classes match lattice rank")
    }

    pub fn square(&self, x: &DivisorClass) -> QuadScalar {
        self.lattice.square(x).expect("class matches lattice rank")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let rank = self.rank();
        if self.dim % 2 != 0 || self.dim < 2 {
            rep.push("dim", "BadDimension", format!("dim {} is not an even integer >= 2", self.dim));
        }
        if self.basis.len() != rank {
            rep.push("basis", "BasisMismatch", "basis names do not match the lattice rank".into());
        }
        if !self.lattice.is_symmetric() {
            rep.push("gram", "SymmetryViolation", "gram matrix is not symmetric".into());
            return rep; // later checks assume a bilinear form
        }
        match self.lattice.signature() {
            Ok((p, n)) => {
                if p != 1 || n != rank - 1 {
                    rep.push(
                        "gram",
                        "SignatureViolation",
                        format!("signature ({p},{n}) differs from (1,{})", rank - 1),
                    );
                }
            }
            Err(e) => rep.push("gram", "SingularForm", e.to_string()),
        }
        if self.ample.rank() != rank {
            rep.push("ample", "RankMismatch", "ample class length differs from rank".into());
            return rep;
        }
        if !self.square(&self.ample).is_positive() {
            rep.push("ample", "AmpleNotPositive", "ample class has non-positive square".into());
        }
        for exc in &self.exceptionals {
            let loc = format!("exceptionals.{}", exc.name);
            if exc.ray.rank() != rank {
                rep.push(&loc, "RankMismatch", "ray length differs from rank".into());
                continue;
            }
            if !self.square(&exc.ray).is_negative() {
                rep.push(&loc, "NonNegativeExceptional", "exceptional ray has square >= 0".into());
            }
            if !exc.prime_multiple.is_positive() {
                rep.push(&loc, "BadPrimeMultiple", "prime multiple must be positive".into());
            }
        }
        for i in 0..self.exceptionals.len() {
            for j in 0..i {
                if self.exceptionals[i].ray.same_ray(&self.exceptionals[j].ray) {
                    rep.push(
                        "exceptionals",
                        "DuplicateRay",
                        format!(
                            "{} and {} span the same ray",
                            self.exceptionals[j].name, self.exceptionals[i].name
                        ),
                    );
                }
            }
        }
        let n = self.n();
        for wall in &self.walls {
            let loc = format!("walls.{}", wall.name);
            if wall.curve.dual_divisor.rank() != rank || wall.normal.rank() != rank {
                rep.push(&loc, "RankMismatch", "wall class length differs from rank".into());
                continue;
            }
            if wall.kind != WallKind::Fibration
                && !self.square(&wall.curve.dual_divisor).is_negative()
            {
                rep.push(&loc, "NonNegativeWall", "wall curve dual has square >= 0".into());
            }
            if !(n <= wall.center.dim && wall.center.dim <= self.dim - 1) {
                rep.push(
                    &loc,
                    "CenterDimOutOfRange",
                    format!("center dim {} outside [{}, {}]", wall.center.dim, n, self.dim - 1),
                );
            }
            if wall.is_divisorial() && self.exceptional(&wall.center.label).is_none() {
                rep.push(
                    &loc,
                    "DanglingDivisorialCenter",
                    format!("divisorial center {:?} names no exceptional", wall.center.label),
                );
            }
            if !self.pairing(&wall.normal, &wall.curve.dual_divisor).is_zero() {
                rep.push(&loc, "NormalNotOrthogonal", "wall normal not orthogonal to curve dual".into());
            }
            if !self.pairing(&self.ample, &wall.curve.dual_divisor).is_positive() {
                rep.push(&loc, "AmpleWallSign", "ample pairs non-positively with wall curve".into());
            }
        }
        for exc in &self.exceptionals {
            if exc.ray.rank() == rank && !self.pairing(&self.ample, &exc.ray).is_positive() {
                rep.push(
                    &format!("exceptionals.{}", exc.name),
                    "AmpleNotMovableSide",
                    "ample pairs non-positively with an exceptional ray".into(),
                );
            }
        }
        for name in &self.fan {
            if self.wall(name).is_none() {
                rep.push("fan", "UnknownWall", format!("fan references unknown wall {name:?}"));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &self.fan {
            if !seen.insert(name) {
                rep.push("fan", "DuplicateWall", format!("wall {name:?} listed twice in the fan"));
            }
        }
        rep
    }

    pub fn from_json(name: &str, text: &str) -> Result<HKModel, ModelError> {
        let doc: FixtureDoc =
            serde_json::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
        doc.into_model(name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FixtureDoc::from_model(self)).expect("fixture serializes")
    }
}

// ---------------------------------------------------------------------------
// JSON layer

/// JSON form of a scalar: rationals as "p/q" strings, irrational values as
/// {"a", "b", "m"} with a display-only "approx" field on output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Rational(String),
    Quadratic {
        a: String,
        b: String,
        m: i64,
        #[serde(skip_serializing_if = "Option::is_none")]
        approx: Option<f64>,
    },
}

impl ScalarRepr {
    pub fn from_scalar(x: &QuadScalar) -> ScalarRepr {
        if x.is_rational() {
            ScalarRepr::Rational(format_rat(x.a()))
        } else {
            ScalarRepr::Quadratic {
                a: format_rat(x.a()),
                b: format_rat(x.b()),
                m: x.m(),
                approx: Some(x.approx_f64()),
            }
        }
    }

    pub fn to_scalar(&self) -> Result<QuadScalar, ModelError> {
        let bad = |e: crate::scalar::ScalarError| ModelError::Parse(e.to_string());
        match self {
            ScalarRepr::Rational(s) => Ok(QuadScalar::from_rat(parse_rat(s).map_err(bad)?)),
            ScalarRepr::Quadratic { a, b, m, .. } => Ok(QuadScalar::new(
                parse_rat(a).map_err(bad)?,
                parse_rat(b).map_err(bad)?,
                *m,
            )),
        }
    }
}

pub fn class_to_repr(class: &DivisorClass) -> Vec<ScalarRepr> {
    class.coords.iter().map(ScalarRepr::from_scalar).collect()
}

pub fn class_from_repr(reprs: &[ScalarRepr]) -> Result<DivisorClass, ModelError> {
    Ok(DivisorClass { coords: reprs.iter().map(|r| r.to_scalar()).collect::<Result<_, _>>()? })
}

#[derive(Debug, Serialize, Deserialize)]
struct ExceptionalDoc {
    name: String,
    ray: Vec<ScalarRepr>,
    prime_multiple: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct WallDoc {
    name: String,
    normal: Vec<ScalarRepr>,
    curve_dual: Vec<ScalarRepr>,
    center: Center,
    kind: WallKind,
}

#[derive(Debug, Serialize, Deserialize)]
struct FixtureDoc {
    dim: u32,
    basis: Vec<String>,
    gram: Vec<Vec<String>>,
    ample: Vec<ScalarRepr>,
    #[serde(default)]
    exceptionals: Vec<ExceptionalDoc>,
    #[serde(default)]
    walls: Vec<WallDoc>,
    #[serde(default)]
    fan: Vec<String>,
    #[serde(default)]
    fan_stabilized: bool,
}

impl FixtureDoc {
    fn from_model(m: &HKModel) -> FixtureDoc {
        FixtureDoc {
            dim: m.dim,
            basis: m.basis.clone(),
            gram: m
                .lattice
                .gram()
                .iter()
                .map(|row| row.iter().map(format_rat).collect())
                .collect(),
            ample: class_to_repr(&m.ample),
            exceptionals: m
                .exceptionals
                .iter()
                .map(|e| ExceptionalDoc {
                    name: e.name.clone(),
                    ray: class_to_repr(&e.ray),
                    prime_multiple: format_rat(&e.prime_multiple),
                })
                .collect(),
            walls: m
                .walls
                .iter()
                .map(|w| WallDoc {
                    name: w.name.clone(),
                    normal: class_to_repr(&w.normal),
                    curve_dual: class_to_repr(&w.curve.dual_divisor),
                    center: w.center.clone(),
                    kind: w.kind,
                })
                .collect(),
            fan: m.fan.clone(),
            fan_stabilized: m.fan_stabilized,
        }
    }

    fn into_model(self, name: &str) -> Result<HKModel, ModelError> {
        let gram: Vec<Vec<Rat>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()
            .map_err(|e| ModelError::Parse(e.to_string()))?;
        let lattice = NSLattice::new_unchecked(gram);
        let ample = class_from_repr(&self.ample)?;
        let exceptionals = self
            .exceptionals
            .iter()
            .map(|e| {
                Ok(ExceptionalClass {
                    name: e.name.clone(),
                    ray: class_from_repr(&e.ray)?,
                    prime_multiple: parse_rat(&e.prime_multiple)
                        .map_err(|err| ModelError::Parse(err.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        let walls = self
            .walls
            .iter()
            .map(|w| {
                Ok(WallData {
                    name: w.name.clone(),
                    normal: class_from_repr(&w.normal)?,
                    curve: CurveClass {
                        dual_divisor: class_from_repr(&w.curve_dual)?,
                        label: w.name.clone(),
                    },
                    center: w.center.clone(),
                    kind: w.kind,
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Ok(HKModel {
            name: name.to_string(),
            dim: self.dim,
            basis: self.basis,
            lattice,
            ample,
            exceptionals,
            walls,
            fan: self.fan,
            fan_stabilized: self.fan_stabilized,
        })
    }
}

// ---------------------------------------------------------------------------
// Built-in fixtures

pub const BUILTIN_NAMES: [&str; 6] = [
    "hilb2-s1",
    "hilb2-s2",
    "hilb2-s3",
    "fano-cubic-scroll",
    "k3-two-curves",
    "k3n-mixed",
];

pub fn builtin(name: &str) -> Result<HKModel, ModelError> {
    match name {
        "hilb2-s1" => Ok(hilb2(1)),
        "hilb2-s2" => Ok(hilb2(2)),
        "hilb2-s3" => Ok(hilb2(3)),
        "fano-cubic-scroll" => Ok(fano_cubic_scroll()),
        "k3-two-curves" => Ok(k3_two_curves()),
        "k3n-mixed" => Ok(k3n_mixed()),
        other => Err(ModelError::UnknownFixture(other.to_string())),
    }
}

fn exceptional(name: &str, ray: &[i64], prime_multiple: Rat) -> ExceptionalClass {
    ExceptionalClass { name: name.into(), ray: DivisorClass::from_ints(ray), prime_multiple }
}

fn wall(
    name: &str,
    normal: &[i64],
    dual: Vec<Rat>,
    center: (&str, u32),
    kind: WallKind,
) -> WallData {
    WallData {
        name: name.into(),
        normal: DivisorClass::from_ints(normal),
        curve: CurveClass { dual_divisor: DivisorClass::from_rats(dual), label: name.into() },
        center: Center { label: center.0.into(), dim: center.1 },
        kind,
    }
}

/// Hilb^2 of a degree-2d K3 of Picard rank one, basis (H, delta), for
/// d = 1, 2, 3. The half-class delta/2 is the exceptional ruling curve of
/// the Hilbert-Chow divisor E = 2*delta; the second wall depends on d.
fn hilb2(d: i64) -> HKModel {
    let name = format!("hilb2-s{d}");
    let lattice = NSLattice::diagonal(&[2 * d, -2]);
    let w_hc = |dim: u32| wall("W_hc", &[1, 0], vec![rat_int(0), rat(1, 2)], ("E", dim), WallKind::Divisorial);
    let (ample, exceptionals, walls, fan) = match d {
        1 => (
            DivisorClass::from_ints(&[2, -1]),
            vec![exceptional("E", &[0, 1], rat_int(2))],
            vec![
                // Curve dual orthogonal to the nef boundary 3H - 2delta;
                // the center is the plane of subschemes on a conic.
                wall("W_plane", &[3, -2], vec![rat_int(1), rat(-3, 2)], ("P2", 2), WallKind::Flip),
                w_hc(3),
            ],
            vec!["W_plane".to_string(), "W_hc".to_string()],
        ),
        2 => (
            DivisorClass::from_ints(&[2, -1]),
            vec![
                exceptional("E", &[0, 1], rat_int(2)),
                // The ray of the involuted Hilbert-Chow divisor; the prime
                // class is taken as twice the primitive generator.
                exceptional("i(E)", &[2, -3], rat_int(2)),
            ],
            vec![
                wall("W_flop", &[3, -4], vec![rat_int(1), rat(-3, 2)], ("i(E)", 3), WallKind::Divisorial),
                w_hc(3),
            ],
            vec!["W_flop".to_string(), "W_hc".to_string()],
        ),
        3 => (
            DivisorClass::from_ints(&[3, -2]),
            vec![
                exceptional("E", &[0, 1], rat_int(2)),
                exceptional("D", &[1, -2], rat_int(1)),
            ],
            vec![
                wall("W_div", &[2, -3], vec![rat(1, 2), rat_int(-1)], ("D", 3), WallKind::Divisorial),
                w_hc(3),
            ],
            vec!["W_div".to_string(), "W_hc".to_string()],
        ),
        _ => unreachable!("only d = 1, 2, 3 are bundled"),
    };
    HKModel {
        name,
        dim: 4,
        basis: vec!["H".into(), "delta".into()],
        lattice,
        ample,
        exceptionals,
        walls,
        fan,
        fan_stabilized: false,
    }
}

/// The Fano variety of lines F on a cubic fourfold containing a cubic
/// scroll, basis (g, tau). No prime exceptional divisors; an infinite flop
/// sequence truncated after three walls on each side of Nef, with the base
/// loci stabilized beyond the truncation.
fn fano_cubic_scroll() -> HKModel {
    let lattice = NSLattice::from_ints(&[&[6, 6], &[6, 2]]);
    let walls = vec![
        wall("a3v", &[-7, 39], vec![rat(-3, 2), rat_int(8)], ("P", 2), WallKind::Flip),
        wall("a2v", &[-1, 9], vec![rat(-1, 2), rat_int(2)], ("S", 2), WallKind::Flip),
        wall("a1v", &[1, 3], vec![rat(-1, 2), rat_int(1)], ("Pv", 2), WallKind::Flip),
        wall("a1", &[7, -3], vec![rat(3, 2), rat_int(-1)], ("P", 2), WallKind::Flip),
        wall("a2", &[17, -9], vec![rat(7, 2), rat_int(-2)], ("S", 2), WallKind::Flip),
        wall("a3", &[71, -39], vec![rat(29, 2), rat_int(-8)], ("Pv", 2), WallKind::Flip),
    ];
    HKModel {
        name: "fano-cubic-scroll".into(),
        dim: 4,
        basis: vec!["g".into(), "tau".into()],
        lattice,
        ample: DivisorClass::from_ints(&[1, 0]),
        exceptionals: vec![],
        walls,
        fan: vec!["a3v".into(), "a2v".into(), "a1v".into(), "a1".into(), "a2".into(), "a3".into()],
        fan_stabilized: true,
    }
}

/// A K3 surface whose Picard lattice is spanned by two (-2)-curves meeting
/// in three points; a synthetic surface fixture exercising the Zariski
/// machinery with two interacting exceptionals.
fn k3_two_curves() -> HKModel {
    let lattice = NSLattice::from_ints(&[&[-2, 3], &[3, -2]]);
    HKModel {
        name: "k3-two-curves".into(),
        dim: 2,
        basis: vec!["C1".into(), "C2".into()],
        lattice,
        ample: DivisorClass::from_ints(&[1, 1]),
        exceptionals: vec![
            exceptional("C1", &[1, 0], rat_int(1)),
            exceptional("C2", &[0, 1], rat_int(1)),
        ],
        walls: vec![
            wall("W_C1", &[3, 2], vec![rat_int(1), rat_int(0)], ("C1", 1), WallKind::Divisorial),
            wall("W_C2", &[2, 3], vec![rat_int(0), rat_int(1)], ("C2", 1), WallKind::Divisorial),
        ],
        fan: vec!["W_C1".into(), "W_C2".into()],
        fan_stabilized: false,
    }
}

/// Rank-3 model of dimension 4 whose augmented base locus along the class
/// orthogonal to all walls has components of different dimensions: two
/// divisorial (dim 3) and one surface (dim 2).
fn k3n_mixed() -> HKModel {
    let lattice = NSLattice::diagonal(&[4, -2, -2]);
    HKModel {
        name: "k3n-mixed".into(),
        dim: 4,
        basis: vec!["A~".into(), "C~".into(), "delta".into()],
        lattice,
        ample: DivisorClass::from_ints(&[2, -1, -1]),
        exceptionals: vec![
            ExceptionalClass {
                name: "E".into(),
                ray: DivisorClass::from_ints(&[0, 0, 1]),
                prime_multiple: rat_int(2),
            },
            ExceptionalClass {
                name: "C_S".into(),
                ray: DivisorClass::from_ints(&[0, 1, 0]),
                prime_multiple: rat_int(1),
            },
        ],
        walls: vec![
            WallData {
                name: "W_E".into(),
                normal: DivisorClass::from_ints(&[1, 0, 0]),
                curve: CurveClass {
                    dual_divisor: DivisorClass::from_rats(vec![rat_int(0), rat_int(0), rat(1, 2)]),
                    label: "W_E".into(),
                },
                center: Center { label: "E".into(), dim: 3 },
                kind: WallKind::Divisorial,
            },
            WallData {
                name: "W_C2".into(),
                normal: DivisorClass::from_ints(&[1, 0, 0]),
                curve: CurveClass {
                    dual_divisor: DivisorClass::from_rats(vec![rat_int(0), rat(1, 2), rat(1, 2)]),
                    label: "W_C2".into(),
                },
                center: Center { label: "C^[2]".into(), dim: 2 },
                kind: WallKind::Flip,
            },
            WallData {
                name: "W_CS".into(),
                normal: DivisorClass::from_ints(&[1, 0, 0]),
                curve: CurveClass {
                    dual_divisor: DivisorClass::from_rats(vec![rat_int(0), rat(1, 2), rat_int(0)]),
                    label: "W_CS".into(),
                },
                center: Center { label: "C_S".into(), dim: 3 },
                kind: WallKind::Divisorial,
            },
        ],
        fan: vec![],
        fan_stabilized: false,
    }
}

/// Normalized primitive generator of a wall's normal ray; convenience for
/// cone assembly and reports.
pub fn wall_normal_ray(wall: &WallData) -> DivisorClass {
    normalize_ray(&wall.normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let rep = m.validate();
            assert!(rep.is_valid(), "{name}: {:?}", rep.violations);
        }
        assert!(matches!(builtin("nope"), Err(ModelError::UnknownFixture(_))));
    }

    #[test]
    fn asymmetric_gram_is_flagged() {
        let mut m = builtin("hilb2-s1").unwrap();
        m.lattice = NSLattice::new_unchecked(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(0), rat_int(-2)],
        ]);
        let rep = m.validate();
        assert!(rep.violations.iter().any(|v| v.code == "SymmetryViolation"));
    }

    #[test]
    fn positive_square_exceptional_is_flagged() {
        let mut m = builtin("hilb2-s1").unwrap();
        m.exceptionals[0].ray = DivisorClass::from_ints(&[1, 0]);
        let rep = m.validate();
        assert!(rep.violations.iter().any(|v| v.code == "NonNegativeExceptional"));
    }

    #[test]
    fn fano_class_table_identities() {
        let m = builtin("fano-cubic-scroll").unwrap();
        for w in &m.walls {
            assert_eq!(m.square(&w.normal), QuadScalar::from_int(60), "{}", w.name);
            assert_eq!(
                m.square(&w.curve.dual_divisor),
                QuadScalar::from_rat(rat(-5, 2)),
                "{}",
                w.name
            );
        }
        // rho_3 = (5/2) rho_1v + (21/2) rho_1.
        let rho3 = &m.wall("a3").unwrap().curve.dual_divisor;
        let rho1v = &m.wall("a1v").unwrap().curve.dual_divisor;
        let rho1 = &m.wall("a1").unwrap().curve.dual_divisor;
        let combo = rho1v
            .scale(&QuadScalar::from_rat(rat(5, 2)))
            .add(&rho1.scale(&QuadScalar::from_rat(rat(21, 2))));
        assert_eq!(&combo, rho3);
    }

    #[test]
    fn ample_pairs_positively_with_every_wall_curve() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            for w in &m.walls {
                assert!(
                    m.pairing(&m.ample, &w.curve.dual_divisor).is_positive(),
                    "{name}/{}",
                    w.name
                );
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let text = m.to_json();
            let back = HKModel::from_json(name, &text).unwrap();
            assert_eq!(m, back, "{name}");
            // Serialization is deterministic.
            assert_eq!(text, back.to_json());
        }
    }

    #[test]
    fn hilb2_s1_fixture_shape() {
        let m = builtin("hilb2-s1").unwrap();
        assert_eq!(m.dim, 4);
        assert_eq!(m.exceptionals.len(), 1);
        let e = &m.exceptionals[0];
        assert_eq!(e.prime_class(), DivisorClass::from_ints(&[0, 2]));
        let w = m.wall("W_hc").unwrap();
        assert_eq!(w.curve.dual_divisor, DivisorClass::from_rats(vec![rat_int(0), rat(1, 2)]));
        assert_eq!(m.square(&w.curve.dual_divisor), QuadScalar::from_rat(rat(-1, 2)));
        let wp = m.wall("W_plane").unwrap();
        assert_eq!(m.square(&wp.curve.dual_divisor), QuadScalar::from_rat(rat(-5, 2)));
    }
}
