//! Gluing an outgoing end to an incoming end: two intervals into one, and
//! an interval into a circle.

use strandcat::tworep::{intervals_spec, self_glue_spec, GluedContext};

fn main() {
    let cases = [
        ("two intervals", intervals_spec(2, 2, 2, vec![[2, 3]])),
        ("self-glued circle", self_glue_spec(2, 2, vec![])),
    ];
    for (name, spec) in cases {
        let ctx = GluedContext::from_spec(spec, 2).unwrap();
        println!("{name}: glued curve has {} components and {} points", ctx.zx.z.components.len(), ctx.zx.z.points.len());
        let g = ctx.glue_check(2, 2).unwrap();
        let p = ctx.product_check(2, 2).unwrap();
        println!("  Ξ bijective and compatible with d: {} ({} checks)", g.ok(), g.checked);
        println!("  Ξ compatible with products: {} ({} checks)", p.ok(), p.checked);
        let hom: Vec<usize> = (0..=2).map(|n| g.counts.get(&format!("hom{n}")).copied().unwrap_or(0)).collect();
        println!("  glued Hom sizes by passes through z0: {hom:?}");
    }
}
