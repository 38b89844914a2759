//! Rank-2 cone tables: Nef, Mov, Eff, the positive-cone boundary, BBF
//! duality, and the Amp_k ladder.

use hkcones::cones::{
    amp_k, dual_cone_rank2, eff_cone_rank2, mov_cone_rank2, nef_cone_rank2,
    positive_cone_boundary_rank2, PairingKind,
};
use hkcones::model::builtin;

fn main() {
    for name in ["hilb2-s1", "hilb2-s2", "hilb2-s3", "fano-cubic-scroll"] {
        let m = builtin(name).unwrap();
        println!("{} (basis {:?})", name, m.basis);
        let pos = positive_cone_boundary_rank2(&m).unwrap();
        println!("  positive cone: <{}, {}>", pos.lo, pos.hi);
        let nef = nef_cone_rank2(&m).unwrap();
        let mov = mov_cone_rank2(&m).unwrap();
        let eff = eff_cone_rank2(&m).unwrap();
        println!("  Nef = <{}, {}>", nef.lo, nef.hi);
        println!("  Mov = <{}, {}>", mov.lo, mov.hi);
        println!("  Eff = <{}, {}>", eff.lo, eff.hi);
        let dual_mov = dual_cone_rank2(&m, &mov, PairingKind::Bbf).unwrap();
        println!(
            "  dual_bbf(Mov) = <{}, {}>  (= Eff: {})",
            dual_mov.lo,
            dual_mov.hi,
            dual_mov.same_cone(&eff)
        );
        println!();
    }

    let m = builtin("hilb2-s1").unwrap();
    println!("Amp_k ladder on hilb2-s1:");
    for k in 1..=m.dim {
        let c = amp_k(&m, k).unwrap();
        println!("  closure Amp_{} = <{}, {}>", k, c.lo, c.hi);
    }
}
