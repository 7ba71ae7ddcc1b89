//! The nil Hecke algebra H_3: products, the differential, traces and the
//! dual basis pairing.

use strandcat::f2core::{BasisToken, F2Sum};
use strandcat::hecke::{self, dual_basis_pairing, is_identity_matrix, trace, Perm, Sign};

fn main() {
    let n = 3;
    let s1 = Perm::simple(n, 1);
    let s2 = Perm::simple(n, 2);
    let w0 = Perm::longest(n);

    println!("T_1 T_2 = {:?}", hecke::mult_basis(&s1, &s2).map(|p| p.encode()));
    println!("T_1 T_1 = {:?}", hecke::mult_basis(&s1, &s1).map(|p| p.encode()));
    println!("d(T_w0) = {}", hecke::d_basis(&w0).encode());

    // the differential squares to zero and satisfies Leibniz
    let x = F2Sum::single(s1.clone());
    let y = F2Sum::single(s2.clone());
    let lhs = hecke::differential(&hecke::mult(&x, &y));
    let rhs = hecke::mult(&hecke::differential(&x), &y).add(&hecke::mult(&x, &hecke::differential(&y)));
    println!("d(T_1 T_2) = {}  (Leibniz: {})", lhs.encode(), lhs == rhs);

    for w in Perm::all(n) {
        let t = trace(Sign::Plus, 2, &F2Sum::single(w.clone()));
        if !t.is_zero() {
            println!("t^+_(3,2)({}) = {}", w.encode(), t.encode());
        }
    }
    for r in 0..=2 {
        let m = dual_basis_pairing(Sign::Plus, r, n - r);
        println!("pairing r={r}: {}x{} identity = {}", m.len(), m.first().map_or(0, |row| row.len()), is_identity_matrix(&m));
    }
}
