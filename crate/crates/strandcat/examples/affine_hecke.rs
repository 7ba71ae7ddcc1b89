//! The extended affine nil Hecke algebra: lengths, c-degree and the
//! positive presentation.

use strandcat::f2core::BasisToken;
use strandcat::hecke::{self, positive_presentation_check, AffinePerm};

fn main() {
    let n = 3;
    let c = AffinePerm::c(n);
    let t1 = AffinePerm::simple(n, 1);
    println!("c = {}  length {}  degree {}", c.encode(), c.length(), c.c_degree());
    let ct = c.compose(&t1);
    println!("c T_1 = {}  (length {})", ct.encode(), ct.length());
    println!("d(c T_1) = {}", hecke::d_basis(&ct).encode());

    let counts: Vec<usize> = (0..=3).map(|d| AffinePerm::positive_of_degree(n, d).len()).collect();
    println!("positive elements of c-degree 0..=3: {counts:?}");

    let rep = positive_presentation_check(n, 3);
    println!(
        "presentation: relations ok = {}, {} chains for {} positive elements, ok = {}",
        rep.failed_relations.is_empty(),
        rep.chains,
        rep.positive_elements,
        rep.ok()
    );
}
