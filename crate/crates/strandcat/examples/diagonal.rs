//! The diagonal action on two disjoint intervals: σ and its inverse, the
//! isomorphism (f2, f1), and τ.

use strandcat::tworep::DiagonalContext;

fn main() {
    for (k1, k2, smax) in [(1, 1, 2), (2, 1, 3)] {
        let ctx = DiagonalContext::intervals(k1, k2, smax);
        let rep = ctx.diagonal_tau_check(smax).unwrap();
        println!("marks ({k1},{k2}), objects up to {smax}: {} checks, ok = {}", rep.checked, rep.ok());
        for (k, v) in &rep.counts {
            println!("  {k}: {v}");
        }
    }
}
