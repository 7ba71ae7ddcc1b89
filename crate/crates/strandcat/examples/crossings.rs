//! Intersection counts and the differential on random chord diagrams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strandcat::strands::{random_braid, random_diagram, StrandCat};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..4 {
        let cat = StrandCat::new(random_diagram(&mut rng));
        println!(
            "diagram {k}: {} components, {} points, {} matched pairs",
            cat.z.components.len(),
            cat.z.points.len(),
            cat.z.matching.len()
        );
        for _ in 0..3 {
            let Some(b) = random_braid(&cat, &mut rng, 2.min(cat.z.points.len()), 1, 4) else { continue };
            println!(
                "  {}  i = {:?}  sampled = {:?}  crossings = {}  d has {} terms",
                cat.encode(&b),
                cat.i_vec(&b),
                cat.sampled_intersections(&b),
                cat.crossings(&b).len(),
                cat.differential(&b).len()
            );
        }
    }
}
