//! Membership flags for individual classes: pseudo-effective, big,
//! movable, nef, ample.

use hkcones::cones::membership;
use hkcones::lattice::DivisorClass;
use hkcones::model::builtin;

fn main() {
    let m = builtin("hilb2-s1").unwrap();
    for (desc, coords) in [
        ("H", [1i64, 0]),
        ("delta", [0, 1]),
        ("-H", [-1, 0]),
        ("4H - delta", [4, -1]),
        ("3H - 2delta", [3, -2]),
        ("H - delta", [1, -1]),
    ] {
        let d = DivisorClass::from_ints(&coords);
        let f = membership(&m, &d);
        println!(
            "{:12} psef={} big={} movable={} nef={} ample={}",
            desc, f.pseudo_effective, f.big, f.movable, f.nef, f.ample
        );
    }

    // The rank-3 model supports membership too; only the Cone2D table
    // operations are rank-2 specific.
    let m3 = builtin("k3n-mixed").unwrap();
    let a = m3.ample.clone();
    let f = membership(&m3, &a);
    println!("k3n-mixed ample {}: ample={}", a, f.ample);
}
