//! The action of the nil Hecke algebra at a ray end of the torus curve,
//! and the decomposition of the twisted objects.

use strandcat::strands::StrandCat;
use strandcat::tworep::EndContext;

fn main() {
    let spec = r#"{"components":[{"kind":"Line","marks":["1","2","3","4"],"oriented":[["0","9/2"]]}],
        "matching":[[1,3],[2,4]],
        "rayEnds":[{"component":0,"side":"right","role":"outgoing","base":"5","slots":2}]}"#;
    let ctx = EndContext::new(StrandCat::from_json(spec).unwrap(), 0).unwrap();
    for n in 1..=2 {
        let rep = ctx.equivariance_check(2, n, 1, 6).unwrap();
        println!("equivariance n={n}: {} checks, ok = {}", rep.checked, rep.ok());
    }
    let m = ctx.m.clone();
    let rep = ctx.decompose(&m[..1], &m, 1, 1, 8).unwrap();
    println!("decomposition S={m:?}: {} checks, ok = {}, {:?}", rep.checked, rep.ok(), rep.counts);
}
