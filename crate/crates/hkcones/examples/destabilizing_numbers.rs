//! Destabilizing numbers: the parameters where B+(D - lambda A) jumps
//! along an ample direction, and the exact big-cone exit.

use hkcones::chambers::destabilizing_numbers;
use hkcones::lattice::DivisorClass;
use hkcones::model::builtin;

fn main() {
    let m = builtin("fano-cubic-scroll").unwrap();
    let d = DivisorClass::from_ints(&[4, -2]);
    let a = DivisorClass::from_ints(&[1, 0]);
    let rep = destabilizing_numbers(&m, &d, &a).unwrap();
    println!("D = {}, A = {}:", d, a);
    for j in &rep.jumps {
        let set = |cs: &[hkcones::walk::Component]| {
            cs.iter().map(|c| c.label.clone()).collect::<Vec<_>>()
        };
        println!(
            "  lambda = {} (rational: {}), walls {:?}, B+ {:?} -> {:?}",
            j.lambda,
            j.rational,
            j.walls,
            set(&j.before),
            set(&j.after)
        );
    }
    // The exit parameter lands on the irrational positive-cone boundary.
    let exit = rep.boundary_lambda.unwrap();
    println!("  exits Big at lambda = {} (~{:.6})", exit, exit.approx_f64());

    // A class on the nef boundary jumps immediately at lambda = 0.
    let m = builtin("hilb2-s1").unwrap();
    let d = DivisorClass::from_ints(&[1, 0]);
    let a = DivisorClass::from_ints(&[4, -1]);
    let rep = destabilizing_numbers(&m, &d, &a).unwrap();
    println!("hilb2-s1, D = H, A = 4H - delta:");
    for j in &rep.jumps {
        println!("  jump at lambda = {}", j.lambda);
    }
    println!("  exits Big at lambda = {}", rep.boundary_lambda.unwrap());
}
