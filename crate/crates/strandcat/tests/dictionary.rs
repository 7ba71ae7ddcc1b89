//! The strand categories of marked circles and intervals against the
//! periodic categories.

use strandcat::affinecat::Variant;
use strandcat::strands::dictionary_check;

#[test]
fn dictionary_up_to_four_marks() {
    for n in 1..=4 {
        for v in [Variant::All, Variant::Plus, Variant::PlusPlus, Variant::Finite, Variant::FinitePlusPlus] {
            let t = std::time::Instant::now();
            let rep = dictionary_check(n, v, 6, 1);
            eprintln!("n={n} {v:?}: homs {} products {} in {:?}", rep.morphisms, rep.products, t.elapsed());
            assert!(rep.ok(), "n={n} {v:?}: {:?}", &rep.failures[..rep.failures.len().min(5)]);
        }
    }
}
