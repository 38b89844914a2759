//! Stability chamber decompositions of the big cone, including the
//! non-convex outermost chamber of the infinite-flop model.

use hkcones::chambers::{stability_chamber_of, stability_chambers_rank2};
use hkcones::lattice::DivisorClass;
use hkcones::model::builtin;

fn main() {
    for name in ["hilb2-s1", "fano-cubic-scroll"] {
        let m = builtin(name).unwrap();
        println!("{}:", name);
        for c in stability_chambers_rank2(&m).unwrap() {
            let labels: Vec<&str> = c.components.iter().map(|x| x.label.as_str()).collect();
            println!("  {} components {:?}", c.name, labels);
            for r in &c.regions {
                println!(
                    "    region <{}, {}> include_lo={} include_hi={}",
                    r.cone.lo, r.cone.hi, r.include_lo, r.include_hi
                );
            }
        }
        println!();
    }

    // Two classes in the outermost chamber of fano-cubic-scroll whose sum
    // is ample, certifying that the chamber is not convex.
    let m = builtin("fano-cubic-scroll").unwrap();
    let g1 = DivisorClass::from_ints(&[20, -11]);
    let g2 = DivisorClass::from_ints(&[-2, 11]);
    let c1 = stability_chamber_of(&m, &g1).unwrap();
    let c2 = stability_chamber_of(&m, &g2).unwrap();
    let sum = stability_chamber_of(&m, &g1.add(&g2)).unwrap();
    println!("{} is in {}", g1, c1.name);
    println!("{} is in {}", g2, c2.name);
    println!("their sum {} is in {}", g1.add(&g2), sum.name);
}
