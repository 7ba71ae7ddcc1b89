//! The tensor algebra of the bimodule M_s over H_s modulo κ, against the
//! positive affine nil Hecke algebra.

use strandcat::tworep::theta_check;

fn main() {
    for s in 1..=3 {
        let rep = theta_check(s, 2);
        let dims: Vec<usize> = (0..=2).map(|c| rep.counts.get(&format!("dim_c{c}")).copied().unwrap_or(0)).collect();
        println!("s={s}: dimensions by c-degree {dims:?}, {} checks, ok = {}", rep.checked, rep.ok());
    }
}
