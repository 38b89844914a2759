//! Asymptotic base loci via the rank-2 wall walk: traces, B+/B-/B
//! reports, and instability witnesses.

use hkcones::lattice::DivisorClass;
use hkcones::model::builtin;
use hkcones::walk::{base_loci, is_unstable, walk_rank2};

fn main() {
    let m = builtin("fano-cubic-scroll").unwrap();

    let d = DivisorClass::from_ints(&[20, -11]);
    let trace = walk_rank2(&m, &d).unwrap();
    println!("walk of {}:", d);
    for c in &trace.crossed {
        println!("  crossed {} flipping {} (dim {})", c.wall, c.center_label, c.center_dim);
    }
    println!("  terminal chamber <{}, {}>", trace.terminal_chamber.lo, trace.terminal_chamber.hi);

    for coords in [[20i64, -11], [4, -2], [7, -3], [88, -47], [1, 0]] {
        let d = DivisorClass::from_ints(&coords);
        let rep = base_loci(&m, &d).unwrap();
        let labels = |cs: &[hkcones::walk::Component]| {
            cs.iter().map(|c| c.label.clone()).collect::<Vec<_>>()
        };
        println!(
            "{}: B+ {:?}, B- {:?}, stable {}",
            d,
            labels(&rep.b_plus),
            labels(&rep.b_minus),
            rep.stable
        );
    }

    let alpha1 = DivisorClass::from_ints(&[7, -3]);
    let (unstable, witness) = is_unstable(&m, &alpha1).unwrap();
    println!("alpha_1 unstable: {} (witness {:?})", unstable, witness);

    // Rank 3: the report is flagged partial and mixes component
    // dimensions 2 and 3.
    let m3 = builtin("k3n-mixed").unwrap();
    let d3 = DivisorClass::from_ints(&[1, 0, 0]);
    let rep = base_loci(&m3, &d3).unwrap();
    println!("k3n-mixed {}: partial={}", d3, rep.partial);
    for c in &rep.b_plus {
        println!("  component {} dim {} divisorial {}", c.label, c.dim, c.divisorial);
    }
}
