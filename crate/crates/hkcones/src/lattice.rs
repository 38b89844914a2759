//! The Neron-Severi lattice with the Beauville-Bogomolov-Fujiki form:
//! pairings, squares, exact signature, and curve classes represented by
//! their dual divisors.

use crate::scalar::{rat_int, QuadScalar, Rat};
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular form: the gram matrix is not invertible")]
    SingularForm,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
}

/// The lattice: a rank and a symmetric gram matrix of exact rationals,
/// entries q(e_i, e_j) in a fixed basis. Signature must be (1, rank-1) for
/// the models in scope; `signature` computes it exactly so fixtures can be
/// validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSLattice {
    rank: usize,
    gram: Vec<Vec<Rat>>,
}

/// A divisor class: coordinates in the fixed basis, possibly irrational
/// (boundary rays of the positive cone live in Q(sqrt(m))).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coords: Vec<QuadScalar>,
}

/// A curve class, stored through the unique rational divisor class with the
/// same pairing behaviour. Half-integral duals are allowed since H_2 only
/// embeds in H^2 with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub dual_divisor: DivisorClass,
    pub label: String,
}

impl DivisorClass {
    pub fn from_rats(coords: Vec<Rat>) -> Self {
        DivisorClass { coords: coords.into_iter().map(QuadScalar::from_rat).collect() }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivisorClass { coords: coords.iter().map(|&c| QuadScalar::from_int(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coords: vec![QuadScalar::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational())
    }

    pub fn scale(&self, t: &QuadScalar) -> Self {
        DivisorClass { coords: self.coords.iter().map(|c| c.clone() * t.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        DivisorClass { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }

    /// True when the two classes span the same ray (positive proportionality).
    pub fn same_ray(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let i = self.coords.iter().position(|c| !c.is_zero()).unwrap();
        if other.coords[i].is_zero() {
            return false;
        }
        let t = other.coords[i].clone() / self.coords[i].clone();
        if !t.is_positive() {
            return false;
        }
        self.scale(&t) == *other
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl NSLattice {
    pub fn new(gram: Vec<Vec<Rat>>) -> Result<Self, LatticeError> {
        let rank = gram.len();
        for row in &gram {
            if row.len() != rank {
                return Err(LatticeError::DimensionMismatch { expected: rank, got: row.len() });
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(NSLattice { rank, gram })
    }

    /// Builds without the symmetry check; `validate` on a model reports the
    /// violation instead of refusing to construct the fixture.
    pub fn new_unchecked(gram: Vec<Vec<Rat>>) -> Self {
        let rank = gram.len();
        NSLattice { rank, gram }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.rank).all(|i| (0..i).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn from_ints(gram: &[&[i64]]) -> Self {
        Self::new(
            gram.iter().map(|row| row.iter().map(|&e| rat_int(e)).collect()).collect(),
        )
        .expect("valid integer gram matrix")
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let rank = entries.len();
        let mut gram = vec![vec![Rat::zero(); rank]; rank];
        for (i, &e) in entries.iter().enumerate() {
            gram[i][i] = rat_int(e);
        }
        NSLattice { rank, gram }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &Vec<Vec<Rat>> {
        &self.gram
    }

    fn check_rank(&self, x: &DivisorClass) -> Result<(), LatticeError> {
        if x.rank() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, got: x.rank() });
        }
        Ok(())
    }

    /// The BBF pairing x^T G y, exact.
    pub fn pairing(&self, x: &DivisorClass, y: &DivisorClass) -> Result<QuadScalar, LatticeError> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let mut acc = QuadScalar::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.gram[i][j].is_zero() {
                    continue;
                }
                let term = x.coords[i].clone() * y.coords[j].clone();
                acc = acc + term * self.gram[i][j].clone();
            }
        }
        Ok(acc)
    }

    pub fn square(&self, x: &DivisorClass) -> Result<QuadScalar, LatticeError> {
        self.pairing(x, x)
    }

    /// Pairing of a divisor with a curve: q(D, dual divisor of the curve).
    pub fn curve_pairing(&self, x: &DivisorClass, c: &CurveClass) -> Result<QuadScalar, LatticeError> {
        self.pairing(x, &c.dual_divisor)
    }

    /// Exact inertia (positives, negatives) of the gram matrix, via
    /// symmetric Gaussian elimination over the rationals.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        let mut a = self.gram.clone();
        let n = self.rank;
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut rows: Vec<usize> = (0..n).collect();
        let mut k = 0;
        while k < rows.len() {
            // Find a nonzero diagonal pivot among the remaining rows.
            let pivot = rows[k..].iter().position(|&i| !a[i][i].is_zero()).map(|p| p + k);
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    // All remaining diagonal entries vanish. If some
                    // off-diagonal entry survives, split the hyperbolic
                    // pair e_i + e_j / e_i - e_j to create pivots.
                    let mut found = None;
                    'outer: for (ki, &i) in rows[k..].iter().enumerate() {
                        for &j in rows[k..].iter() {
                            if i != j && !a[i][j].is_zero() {
                                found = Some((ki + k, i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        None => break,
                        Some((ki, i, j)) => {
                            // Replace row/col i by e_i + e_j; the new
                            // diagonal entry 2 a_ij is nonzero.
                            let n_idx: Vec<usize> = (0..n).collect();
                            for &c in &n_idx {
                                let v = a[j][c].clone();
                                a[i][c] = a[i][c].clone() + v;
                            }
                            for &r in &n_idx {
                                let v = a[r][j].clone();
                                a[r][i] = a[r][i].clone() + v;
                            }
                            ki
                        }
                    }
                }
            };
            rows.swap(k, pivot);
            let p = rows[k];
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in rows[k + 1..].iter() {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in rows[k..].iter() {
                    let v = &f * &a[p][j];
                    a[i][j] = &a[i][j] - v;
                }
            }
            k += 1;
        }
        if pos + neg < n {
            return Err(LatticeError::SingularForm);
        }
        Ok((pos, neg))
    }

    /// The unique rational class x with q(e_i, x) = degrees[i]; solves
    /// G x = degrees exactly.
    pub fn dual_divisor(&self, degrees: &[Rat]) -> Result<DivisorClass, LatticeError> {
        if degrees.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, got: degrees.len() });
        }
        let rhs: Vec<QuadScalar> = degrees.iter().map(|d| QuadScalar::from_rat(d.clone())).collect();
        let sol = self.solve_gram(&rhs)?;
        Ok(DivisorClass { coords: sol })
    }

    /// Solves G x = rhs for a possibly irrational right-hand side; the
    /// matrix stays rational so elimination is plain Gaussian elimination
    /// with rational pivots.
    pub fn solve_gram(&self, rhs: &[QuadScalar]) -> Result<Vec<QuadScalar>, LatticeError> {
        solve_rational_system(&self.gram, rhs).ok_or(LatticeError::SingularForm)
    }
}

/// Gaussian elimination for A x = b with rational A and Q(sqrt(m)) entries
/// in b. Returns None when A is singular.
pub fn solve_rational_system(a: &[Vec<Rat>], b: &[QuadScalar]) -> Option<Vec<QuadScalar>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut mat: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs: Vec<QuadScalar> = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[perm[r]][col].is_zero())?;
        perm.swap(col, pivot);
        let p = perm[col];
        let d = mat[p][col].clone();
        for r in col + 1..n {
            let i = perm[r];
            let f = &mat[i][col] / &d;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = &f * &mat[p][c];
                mat[i][c] = &mat[i][c] - v;
            }
            let delta = rhs[p].clone() * f.clone();
            rhs[i] = rhs[i].clone() - delta;
        }
    }
    let mut x = vec![QuadScalar::zero(); n];
    for col in (0..n).rev() {
        let p = perm[col];
        let mut acc = rhs[p].clone();
        for c in col + 1..n {
            let term = x[c].clone() * mat[p][c].clone();
            acc = acc - term;
        }
        x[col] = acc * mat[p][col].recip_rat();
    }
    Some(x)
}

/// Small helper so elimination can divide a QuadScalar by a rational pivot.
trait RecipRat {
    fn recip_rat(&self) -> QuadScalar;
}

impl RecipRat for Rat {
    fn recip_rat(&self) -> QuadScalar {
        QuadScalar::from_rat(self.recip())
    }
}

/// Primitive integer vector on the same ray when the class is rational
/// (positive rescale only); otherwise rescaled so the first nonzero
/// coordinate has absolute value 1.
pub fn normalize_ray(class: &DivisorClass) -> DivisorClass {
    if class.is_zero() {
        return class.clone();
    }
    if class.is_rational() {
        let rats: Vec<&Rat> = class.coords.iter().map(|c| c.as_rational().unwrap()).collect();
        let mut denom_lcm = num::BigInt::one();
        for r in &rats {
            denom_lcm = num::integer::lcm(denom_lcm, r.denom().clone());
        }
        let ints: Vec<num::BigInt> =
            rats.iter().map(|r| r.numer() * (&denom_lcm / r.denom())).collect();
        let mut g = num::BigInt::zero();
        for v in &ints {
            g = num::integer::gcd(g, v.abs());
        }
        DivisorClass {
            coords: ints.iter().map(|v| QuadScalar::from_rat(Rat::from_integer(v / &g))).collect(),
        }
    } else {
        let first = class.coords.iter().find(|c| !c.is_zero()).unwrap();
        class.scale(&first.abs().inverse())
    }
}

/// Sign of a scalar: -1, 0 or 1.
pub fn sign(x: &QuadScalar) -> i32 {
    x.signum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ht_lattice() -> NSLattice {
        NSLattice::from_ints(&[&[6, 6], &[6, 2]])
    }

    #[test]
    fn ht_pairings() {
        let l = ht_lattice();
        let g = DivisorClass::from_ints(&[1, 0]);
        let tau = DivisorClass::from_ints(&[0, 1]);
        assert_eq!(l.pairing(&g, &tau).unwrap(), QuadScalar::from_int(6));
        assert_eq!(l.square(&g).unwrap(), QuadScalar::from_int(6));
        assert_eq!(l.square(&tau).unwrap(), QuadScalar::from_int(2));
        // alpha_1_dual paired with alpha_1.
        let a1d = DivisorClass::from_ints(&[1, 3]);
        let a1 = DivisorClass::from_ints(&[7, -3]);
        assert_eq!(l.pairing(&a1d, &a1).unwrap(), QuadScalar::from_int(132));
        let zero = DivisorClass::zero(2);
        assert_eq!(l.pairing(&a1d, &zero).unwrap(), QuadScalar::zero());
    }

    #[test]
    fn ht_rho_square() {
        let l = ht_lattice();
        let rho1 = DivisorClass::from_rats(vec![rat(3, 2), rat_int(-1)]);
        assert_eq!(l.square(&rho1).unwrap(), QuadScalar::from_rat(rat(-5, 2)));
    }

    #[test]
    fn signatures() {
        assert_eq!(ht_lattice().signature().unwrap(), (1, 1));
        assert_eq!(NSLattice::diagonal(&[2, -2]).signature().unwrap(), (1, 1));
        assert_eq!(NSLattice::diagonal(&[6, -2, -2]).signature().unwrap(), (1, 2));
        // Hyperbolic plane: zero diagonal, still signature (1,1).
        assert_eq!(NSLattice::from_ints(&[&[0, 1], &[1, 0]]).signature().unwrap(), (1, 1));
        let sing = NSLattice::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(sing.signature(), Err(LatticeError::SingularForm));
    }

    #[test]
    fn dual_divisor_hilb2() {
        // Hilb^2(S_1): degrees (0, -1) for the exceptional ruling curve
        // gives delta/2.
        let l = NSLattice::diagonal(&[2, -2]);
        let d = l.dual_divisor(&[rat_int(0), rat_int(-1)]).unwrap();
        assert_eq!(d, DivisorClass::from_rats(vec![rat_int(0), rat(1, 2)]));
        let delta = DivisorClass::from_ints(&[0, 1]);
        assert_eq!(l.pairing(&d, &delta).unwrap(), QuadScalar::from_int(-1));
        // Zero degrees give the zero class.
        assert!(l.dual_divisor(&[rat_int(0), rat_int(0)]).unwrap().is_zero());
    }

    #[test]
    fn dual_divisor_round_trip() {
        let l = ht_lattice();
        let rho1 = DivisorClass::from_rats(vec![rat(3, 2), rat_int(-1)]);
        let g = DivisorClass::from_ints(&[1, 0]);
        let tau = DivisorClass::from_ints(&[0, 1]);
        let degs = vec![
            l.pairing(&g, &rho1).unwrap().as_rational().unwrap().clone(),
            l.pairing(&tau, &rho1).unwrap().as_rational().unwrap().clone(),
        ];
        assert_eq!(l.dual_divisor(&degs).unwrap(), rho1);
    }

    #[test]
    fn ray_normalization() {
        let c = DivisorClass::from_rats(vec![rat(3, 2), rat_int(-1)]);
        assert_eq!(normalize_ray(&c), DivisorClass::from_ints(&[3, -2]));
        let c = DivisorClass::from_ints(&[-4, 6]);
        assert_eq!(normalize_ray(&c), DivisorClass::from_ints(&[-2, 3]));
        let irr = DivisorClass {
            coords: vec![
                QuadScalar::from_int(-2),
                QuadScalar::new(rat_int(0), rat_int(2), 6),
            ],
        };
        let n = normalize_ray(&irr);
        assert_eq!(n.coords[0], QuadScalar::from_int(-1));
        assert_eq!(n.coords[1], QuadScalar::new(rat_int(0), rat_int(1), 6));
    }

    #[test]
    fn same_ray() {
        let a = DivisorClass::from_ints(&[2, -3]);
        let b = DivisorClass::from_ints(&[4, -6]);
        assert!(a.same_ray(&b));
        assert!(!a.same_ray(&a.neg()));
        assert!(!a.same_ray(&DivisorClass::from_ints(&[2, 3])));
    }
}
