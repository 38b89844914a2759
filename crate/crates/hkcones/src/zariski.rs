//! Divisorial Zariski decomposition D = P(D) + N(D) over the declared
//! exceptional set.
//!
//! `decompose` runs an active-set procedure: starting from the exceptionals
//! that pair negatively with D, it solves the orthogonality system
//! q(D - sum b_j E_j, E_i) = 0 and grows the active set monotonically until
//! no excluded exceptional pairs negatively with the candidate positive
//! part. `brute_force_decompose` enumerates all negative-definite supports
//! instead and serves as an independent oracle for the same answer.

use crate::lattice::{solve_rational_system, DivisorClass, NSLattice};
use crate::model::HKModel;
use crate::scalar::{QuadScalar, Rat};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZariskiError {
    #[error("class is not pseudo-effective for the declared data")]
    NotPseudoEffective,
    #[error("support gram matrix is not negative definite; the fixture likely omits a relevant exceptional")]
    IncompleteExceptionalData,
}

/// The decomposition: P(D), the coefficients b_i of N(D) on the prime
/// classes, and the support. Coefficients are stored only where positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    pub negative_coeffs: BTreeMap<String, QuadScalar>,
    pub support: BTreeSet<String>,
}

impl ZariskiDecomposition {
    pub fn trivial(d: &DivisorClass) -> Self {
        ZariskiDecomposition {
            positive: d.clone(),
            negative_coeffs: BTreeMap::new(),
            support: BTreeSet::new(),
        }
    }

    /// N(D) as a divisor class.
    pub fn negative_part(&self, model: &HKModel) -> DivisorClass {
        let mut acc = DivisorClass::zero(model.rank());
        for (name, coeff) in &self.negative_coeffs {
            let exc = model.exceptional(name).expect("support names declared exceptionals");
            acc = acc.add(&exc.prime_class().scale(coeff));
        }
        acc
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }
}

/// Closed positive cone test for the positive part: nonnegative square and
/// nonnegative pairing with the ample reference (the ample class selects
/// the forward component of {q >= 0}).
fn in_closed_positive_cone(model: &HKModel, p: &DivisorClass) -> bool {
    !model.square(p).is_negative() && !model.pairing(p, &model.ample).is_negative()
}

fn support_gram(model: &HKModel, idx: &[usize]) -> Vec<Vec<Rat>> {
    idx.iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| {
                    model
                        .pairing(
                            &model.exceptionals[i].prime_class(),
                            &model.exceptionals[j].prime_class(),
                        )
                        .as_rational()
                        .expect("prime classes are rational")
                        .clone()
                })
                .collect()
        })
        .collect()
}

fn is_negative_definite(gram: &[Vec<Rat>]) -> bool {
    if gram.is_empty() {
        return true;
    }
    matches!(
        NSLattice::new_unchecked(gram.to_vec()).signature(),
        Ok((0, n)) if n == gram.len()
    )
}

/// Solves the orthogonality system over the active set; None when the
/// support gram is singular.
fn solve_active(
    model: &HKModel,
    d: &DivisorClass,
    idx: &[usize],
) -> Option<(DivisorClass, Vec<QuadScalar>)> {
    let gram = support_gram(model, idx);
    let rhs: Vec<QuadScalar> = idx
        .iter()
        .map(|&i| model.pairing(d, &model.exceptionals[i].prime_class()))
        .collect();
    let coeffs = solve_rational_system(&gram, &rhs)?;
    let mut p = d.clone();
    for (&i, b) in idx.iter().zip(&coeffs) {
        p = p.sub(&model.exceptionals[i].prime_class().scale(b));
    }
    Some((p, coeffs))
}

fn finish(
    model: &HKModel,
    p: DivisorClass,
    idx: &[usize],
    coeffs: &[QuadScalar],
) -> Result<ZariskiDecomposition, ZariskiError> {
    if coeffs.iter().any(|b| b.is_negative()) {
        return Err(ZariskiError::NotPseudoEffective);
    }
    if !in_closed_positive_cone(model, &p) {
        return Err(ZariskiError::NotPseudoEffective);
    }
    let mut negative_coeffs = BTreeMap::new();
    let mut support = BTreeSet::new();
    for (&i, b) in idx.iter().zip(coeffs) {
        if b.is_positive() {
            let name = model.exceptionals[i].name.clone();
            support.insert(name.clone());
            negative_coeffs.insert(name, b.clone());
        }
    }
    Ok(ZariskiDecomposition { positive: p, negative_coeffs, support })
}

/// The divisorial Zariski decomposition of D. Errors:
/// `NotPseudoEffective` when the fixpoint falls outside the closed positive
/// cone or a coefficient stays negative; `IncompleteExceptionalData` when
/// the active support's gram matrix fails negative definiteness.
pub fn decompose(model: &HKModel, d: &DivisorClass) -> Result<ZariskiDecomposition, ZariskiError> {
    // Pseudo-effective classes pair nonnegatively with ample; cheap guard
    // that also rejects anti-effective inputs whose active set would
    // otherwise swallow the whole exceptional lattice.
    if model.pairing(d, &model.ample).is_negative() {
        return Err(ZariskiError::NotPseudoEffective);
    }
    let m = model.exceptionals.len();
    let mut active: Vec<usize> = (0..m)
        .filter(|&i| model.pairing(d, &model.exceptionals[i].ray).is_negative())
        .collect();
    loop {
        if !is_negative_definite(&support_gram(model, &active)) {
            return Err(ZariskiError::IncompleteExceptionalData);
        }
        let (p, _) =
            solve_active(model, d, &active).ok_or(ZariskiError::IncompleteExceptionalData)?;
        let mut grew = false;
        for i in 0..m {
            if !active.contains(&i)
                && model.pairing(&p, &model.exceptionals[i].ray).is_negative()
            {
                active.push(i);
                grew = true;
            }
        }
        if !grew {
            active.sort_unstable();
            // Re-solve with the sorted index order so reported coefficients
            // line up; the solution itself is order-independent.
            let (p, coeffs) =
                solve_active(model, d, &active).ok_or(ZariskiError::IncompleteExceptionalData)?;
            return finish(model, p, &active, &coeffs);
        }
    }
}

/// Independent oracle: enumerate every subset of exceptionals with a
/// negative-definite gram, solve the orthogonality system, and keep the
/// unique candidate satisfying all decomposition invariants.
pub fn brute_force_decompose(
    model: &HKModel,
    d: &DivisorClass,
) -> Result<ZariskiDecomposition, ZariskiError> {
    let m = model.exceptionals.len();
    assert!(m <= 12, "brute force oracle is limited to 12 exceptionals");
    let mut found: Option<ZariskiDecomposition> = None;
    for mask in 0u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        if !is_negative_definite(&support_gram(model, &idx)) {
            continue;
        }
        let Some((p, coeffs)) = solve_active(model, d, &idx) else {
            continue;
        };
        if coeffs.iter().any(|b| b.is_negative()) {
            continue;
        }
        if !in_closed_positive_cone(model, &p) {
            continue;
        }
        if (0..m).any(|i| model.pairing(&p, &model.exceptionals[i].ray).is_negative()) {
            continue;
        }
        let cand = finish(model, p, &idx, &coeffs).expect("invariants already checked");
        match &found {
            None => found = Some(cand),
            Some(prev) => {
                assert_eq!(prev, &cand, "Zariski decomposition must be unique");
            }
        }
    }
    found.ok_or(ZariskiError::NotPseudoEffective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;
    use crate::scalar::{rat, rat_int};

    fn qs(n: i64, d: i64) -> QuadScalar {
        QuadScalar::from_rat(rat(n, d))
    }

    #[test]
    fn hilb2_s1_h_plus_delta() {
        let m = builtin("hilb2-s1").unwrap();
        let z = decompose(&m, &DivisorClass::from_ints(&[1, 1])).unwrap();
        assert_eq!(z.positive, DivisorClass::from_ints(&[1, 0]));
        assert_eq!(z.negative_coeffs.get("E"), Some(&qs(1, 2)));
        assert_eq!(z.negative_part(&m), DivisorClass::from_ints(&[0, 1]));
    }

    #[test]
    fn ample_is_its_own_positive_part() {
        for name in crate::model::BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let z = decompose(&m, &m.ample).unwrap();
            assert_eq!(z, ZariskiDecomposition::trivial(&m.ample), "{name}");
        }
    }

    #[test]
    fn hilb2_s2_worked_case() {
        let m = builtin("hilb2-s2").unwrap();
        let z = decompose(&m, &DivisorClass::from_ints(&[5, -7])).unwrap();
        assert_eq!(z.positive, DivisorClass::from_ints(&[3, -4]));
        assert_eq!(z.negative_part(&m), DivisorClass::from_ints(&[2, -3]));
        assert_eq!(z.support.iter().collect::<Vec<_>>(), vec!["i(E)"]);
        // q(P, i(E) ray) = 0 and q(P, E prime class) >= 0.
        assert!(m.pairing(&z.positive, &DivisorClass::from_ints(&[2, -3])).is_zero());
        assert_eq!(
            m.pairing(&z.positive, &DivisorClass::from_ints(&[0, 2])),
            QuadScalar::from_int(16)
        );
    }

    #[test]
    fn k3_two_curves_worked_case() {
        let m = builtin("k3-two-curves").unwrap();
        let z = decompose(&m, &DivisorClass::from_ints(&[2, 1])).unwrap();
        assert_eq!(
            z.positive,
            DivisorClass::from_rats(vec![rat(3, 2), rat_int(1)])
        );
        assert_eq!(z.negative_coeffs.get("C1"), Some(&qs(1, 2)));
        assert!(z.negative_coeffs.get("C2").is_none());
    }

    #[test]
    fn delta_fully_absorbed() {
        let m = builtin("hilb2-s1").unwrap();
        let z = decompose(&m, &DivisorClass::from_ints(&[0, 1])).unwrap();
        assert!(z.positive.is_zero());
        assert_eq!(z.negative_coeffs.get("E"), Some(&qs(1, 2)));
    }

    #[test]
    fn zero_decomposes_trivially() {
        let m = builtin("hilb2-s1").unwrap();
        let z = brute_force_decompose(&m, &DivisorClass::zero(2)).unwrap();
        assert!(z.positive.is_zero() && z.is_trivial());
    }

    #[test]
    fn non_pseudo_effective_rejected() {
        let m = builtin("hilb2-s1").unwrap();
        assert_eq!(
            decompose(&m, &DivisorClass::from_ints(&[-1, 0])),
            Err(ZariskiError::NotPseudoEffective)
        );
        assert_eq!(
            brute_force_decompose(&m, &DivisorClass::from_ints(&[-1, 0])),
            Err(ZariskiError::NotPseudoEffective)
        );
    }

    #[test]
    fn oracle_matches_on_worked_cases() {
        for (name, class) in [
            ("hilb2-s1", vec![1i64, 1]),
            ("hilb2-s1", vec![0, 1]),
            ("hilb2-s2", vec![5, -7]),
            ("k3-two-curves", vec![2, 1]),
            ("k3n-mixed", vec![2, -1, -2]),
        ] {
            let m = builtin(name).unwrap();
            let d = DivisorClass::from_ints(&class);
            assert_eq!(decompose(&m, &d), brute_force_decompose(&m, &d), "{name} {class:?}");
        }
    }

    #[test]
    fn irrational_input_stays_exact() {
        // D on the pencil H + t*delta with t = -1 + sqrt(6)/10: the active
        // set solves stay inside Q(sqrt(6)).
        let m = builtin("hilb2-s1").unwrap();
        let t = QuadScalar::new(rat_int(1), rat(1, 10), 6);
        let d = DivisorClass {
            coords: vec![QuadScalar::from_int(1), t],
        };
        let z = decompose(&m, &d).unwrap();
        assert_eq!(z, brute_force_decompose(&m, &d).unwrap());
        assert!(m.pairing(&z.positive, &DivisorClass::from_ints(&[0, 1])).is_zero());
    }
}
