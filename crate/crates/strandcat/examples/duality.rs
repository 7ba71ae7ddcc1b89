//! Duality between the two ends of a line: the κ̂ matrices and the zigzag
//! identities.

use strandcat::strands::StrandCat;
use strandcat::tworep::DualContext;

fn main() {
    for oriented in [false, true] {
        let ctx = DualContext::line(2, 2, oriented);
        println!("line with two marks, oriented = {oriented}");
        for n in 0..=2 {
            for s in StrandCat::objects(&ctx.m, n..=n) {
                let (rows, cols, mat) = ctx.duality_matrix(&s, n).unwrap();
                let bits: Vec<String> =
                    mat.iter().map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
                println!("  S={s:?} n={n}: {}x{} {bits:?}", rows.len(), cols.len());
            }
        }
        let d = ctx.duality_check(3, 2).unwrap();
        let z = ctx.zigzag_check(2).unwrap();
        println!("  duality ok = {} ({} checks), zigzag ok = {} ({} checks)", d.ok(), d.checked, z.ok(), z.checked);
    }
}
