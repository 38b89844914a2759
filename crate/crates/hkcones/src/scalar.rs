//! Exact scalars: arbitrary-precision rationals and numbers a + b*sqrt(m)
//! in a real quadratic field Q(sqrt(m)).
//!
//! Every value carries its own radicand m (square-free, m = 1 for plain
//! rationals). Arithmetic between two irrational values is only defined when
//! their radicands agree; nothing in scope ever mixes two radicands, so the
//! binary operators panic on a mismatch while `compare` reports it as an
//! error. All arithmetic is exact, no floating point is consumed anywhere;
//! the f64 approximations below exist for display and cross-checks only.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("degenerate quadratic: leading coefficient is zero")]
    DegenerateQuadratic,
    #[error("incompatible radicals: sqrt({0}) vs sqrt({1})")]
    IncompatibleRadicals(i64, i64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as "p" or "p/q" with q > 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q". The inverse of `format_rat`, but accepts any
/// non-canonical p/q as well.
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Splits n > 0 as s^2 * m with m square-free, returning (s, m).
///
/// Trial division runs up to 10^6; any leftover cofactor beyond that is
/// treated as square-free after a perfect-square check. A cofactor of the
/// shape p^2*q with p > 10^6 would be misclassified, but such a value
/// exceeds 10^18 and no computation in scope produces radicands near that
/// size.
fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut rem = n.clone();
    let mut s = BigInt::one();
    let mut m = BigInt::one();
    let mut d: u64 = 2;
    while d <= 1_000_000 {
        let dd = BigInt::from(d);
        if &dd * &dd > rem {
            break;
        }
        let mut count = 0u32;
        while (&rem % &dd).is_zero() {
            rem /= &dd;
            count += 1;
        }
        if count > 0 {
            s *= dd.pow(count / 2);
            if count % 2 == 1 {
                m *= BigInt::from(d);
            }
        }
        d += 1;
    }
    let root = rem.sqrt();
    if &root * &root == rem {
        s *= root;
    } else {
        m *= rem;
    }
    (s, m)
}

/// An exact element a + b*sqrt(m) of Q(sqrt(m)).
///
/// Canonical form: m is square-free and positive; b = 0 forces m = 1, so
/// rationals have a unique representation and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rat,
    b: Rat,
    m: i64,
}

impl QuadScalar {
    pub fn new(a: Rat, b: Rat, m: i64) -> Self {
        assert!(m >= 1, "radicand must be positive");
        if b.is_zero() {
            return QuadScalar { a, b, m: 1 };
        }
        let (s, mm) = squarefree_part(&BigInt::from(m));
        let b = b * Rat::from_integer(s);
        if mm.is_one() {
            QuadScalar { a: a + b, b: Rat::zero(), m: 1 }
        } else {
            let m = i64::try_from(&mm).expect("radicand fits in i64");
            QuadScalar { a, b, m }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadScalar { a, b: Rat::zero(), m: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// The common radicand for a binary operation, or an error when both
    /// sides are irrational over different fields.
    fn join_m(&self, other: &Self) -> Result<i64, ScalarError> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(1),
            (false, true) => Ok(self.m),
            (true, false) => Ok(other.m),
            (false, false) => {
                if self.m == other.m {
                    Ok(self.m)
                } else {
                    Err(ScalarError::IncompatibleRadicals(self.m, other.m))
                }
            }
        }
    }

    fn join_m_or_panic(&self, other: &Self) -> i64 {
        self.join_m(other).expect("mixed radicands in quadratic arithmetic")
    }

    /// Sign of the real value: -1, 0 or 1, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b*sqrt(m) compete; compare a^2 against b^2*m.
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * rat_int(self.m);
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Exact total order on Q(sqrt(m)), consistent with the real values.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ScalarError> {
        self.join_m(other)?;
        Ok(match (self.clone() - other.clone()).signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.is_rational() {
            return Self::from_rat(self.a.recip());
        }
        // 1/(a + b*sqrt(m)) = (a - b*sqrt(m)) / (a^2 - b^2 m); the norm is
        // nonzero since sqrt(m) is irrational.
        let norm = &self.a * &self.a - &self.b * &self.b * rat_int(self.m);
        QuadScalar::new(&self.a / &norm, -(&self.b / &norm), self.m)
    }

    /// A rational r with |self - r| <= 1/denom, built without floating
    /// point (bisection on the radical). Display plumbing only.
    pub fn approx_rat(&self, denom: i64) -> Rat {
        if self.is_rational() {
            return self.a.clone();
        }
        let sqrt_m = rational_sqrt_approx(self.m, denom.max(2) * 4);
        &self.a + &self.b * sqrt_m
    }

    /// f64 approximation for display fields; never consumed by the exact
    /// algorithms.
    pub fn approx_f64(&self) -> f64 {
        let r = self.approx_rat(1_000_000_000);
        rat_to_f64(&r)
    }

    /// A closed interval of f64s guaranteed to contain the real value.
    pub fn enclosure(&self) -> (f64, f64) {
        let denom: i64 = 1_000_000_000;
        let mid = self.approx_rat(denom);
        let pad = Rat::new(BigInt::from(2), BigInt::from(denom));
        (rat_to_f64(&(&mid - &pad)), rat_to_f64(&(&mid + &pad)))
    }
}

pub fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for display: both parts convert losslessly for every
    // magnitude that occurs in reports.
    big_to_f64(n) / big_to_f64(d)
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Rational lower-biased approximation of sqrt(m) with error < 1/denom,
/// via bisection over rationals with fixed denominator.
fn rational_sqrt_approx(m: i64, denom: i64) -> Rat {
    let target = BigInt::from(m) * BigInt::from(denom) * BigInt::from(denom);
    // Integer sqrt of m*denom^2 sandwiches sqrt(m)*denom within 1.
    let root = target.sqrt();
    Rat::new(root, BigInt::from(denom))
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: QuadScalar) -> QuadScalar {
        let m = self.join_m_or_panic(&rhs);
        QuadScalar::new(self.a + rhs.a, self.b + rhs.b, m)
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        self + (-rhs)
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, m: self.m }
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        let m = self.join_m_or_panic(&rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * rat_int(m);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadScalar::new(a, b, m)
    }
}

impl Div for QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: QuadScalar) -> QuadScalar {
        self * rhs.inverse()
    }
}

impl Mul<Rat> for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: Rat) -> QuadScalar {
        QuadScalar::new(self.a * &rhs, self.b * &rhs, self.m)
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rat(&self.a));
        }
        let radical = if self.b.abs().is_one() {
            format!("sqrt({})", self.m)
        } else {
            format!("{}*sqrt({})", format_rat(&self.b.abs()), self.m)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}", radical)
            } else {
                write!(f, "{}", radical)
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {}", format_rat(&self.a), radical)
        } else {
            write!(f, "{} + {}", format_rat(&self.a), radical)
        }
    }
}

/// Both real roots of a*t^2 + b*t + c, ascending, in canonical QuadScalar
/// form (rational form when the discriminant is a perfect square). Returns
/// None when the discriminant is negative.
pub fn quad_roots(a: &Rat, b: &Rat, c: &Rat) -> Result<Option<(QuadScalar, QuadScalar)>, ScalarError> {
    if a.is_zero() {
        return Err(ScalarError::DegenerateQuadratic);
    }
    let disc = b * b - rat_int(4) * a * c;
    match rat_sign(&disc) {
        -1 => return Ok(None),
        0 => {
            let r = QuadScalar::from_rat(-b / (rat_int(2) * a));
            return Ok(Some((r.clone(), r)));
        }
        _ => {}
    }
    // sqrt(p/q) = sqrt(p*q)/q with p*q = s^2 * m, m square-free.
    let n = disc.numer() * disc.denom();
    let (s, m) = squarefree_part(&n);
    let m = i64::try_from(&m).expect("radicand fits in i64");
    let half = (rat_int(2) * a).recip();
    let mid = -b * &half;
    let coeff = Rat::new(s, disc.denom().clone()) * &half;
    let r1 = QuadScalar::new(mid.clone(), coeff.clone(), m);
    let r2 = QuadScalar::new(mid, -coeff, m);
    Ok(Some(if r1.compare(&r2)? == Ordering::Greater {
        (r2, r1)
    } else {
        (r1, r2)
    }))
}
