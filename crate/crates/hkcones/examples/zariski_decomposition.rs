//! Divisorial Zariski decompositions on the built-in models, with the
//! brute-force oracle cross-check.

use hkcones::lattice::DivisorClass;
use hkcones::model::builtin;
use hkcones::zariski::{brute_force_decompose, decompose};

fn main() {
    let m = builtin("hilb2-s1").unwrap();

    for (desc, coords) in [
        ("H + delta", [1, 1]),
        ("ample 4H - delta", [4, -1]),
        ("delta", [0, 1]),
    ] {
        let d = DivisorClass::from_ints(&coords);
        let z = decompose(&m, &d).unwrap();
        println!("{}: P = {}", desc, z.positive);
        for (name, coeff) in &z.negative_coeffs {
            println!("  N coefficient {} on prime class of {}", coeff, name);
        }
        assert_eq!(z, brute_force_decompose(&m, &d).unwrap());
    }

    // Not pseudo-effective inputs are rejected.
    let bad = DivisorClass::from_ints(&[-1, 0]);
    println!("-H: {:?}", decompose(&m, &bad).unwrap_err());

    // The degree-2 model absorbs a full prime class in one step.
    let m2 = builtin("hilb2-s2").unwrap();
    let d = DivisorClass::from_ints(&[5, -7]);
    let z = decompose(&m2, &d).unwrap();
    println!("hilb2-s2, 5H - 7delta: P = {}, support {:?}", z.positive, z.support);
}
