//! The strands algebra A(n) as periodic maps, and the dictionary with the
//! strand category of a marked line.

use strandcat::affinecat::{count_increasing_partial_bijections, StrandsAlgebra, Variant};
use strandcat::f2core::BasisToken;
use strandcat::strands::dictionary_check;

fn main() {
    for n in 1..=4 {
        let a = StrandsAlgebra::new(n);
        println!("dim A({n}) = {} (independent count {})", a.dim(), count_increasing_partial_bijections(n));
    }
    let a = StrandsAlgebra::new(2);
    for x in a.basis.iter().filter(|x| !x.differential().is_zero()) {
        println!("d {} = {}", x.encode(), x.differential().encode());
    }
    for v in [Variant::All, Variant::Plus, Variant::PlusPlus, Variant::Finite, Variant::FinitePlusPlus] {
        let rep = dictionary_check(3, v, 4, 1);
        println!("{v:?}: {} morphisms, {} products compared, ok = {}", rep.morphisms, rep.products, rep.ok());
    }
}
