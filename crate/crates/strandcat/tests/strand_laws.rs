//! Differential and product laws of strand categories on random chord
//! diagrams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strandcat::f2core::F2Sum;
use strandcat::strands::{pullback, pullback_sum, random_diagram, Braid, StrandCat};

fn sample_objects(cat: &StrandCat, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let n = cat.z.points.len();
    let pts: Vec<usize> = rand::seq::index::sample(rng, n, n.min(5)).into_iter().collect();
    StrandCat::objects(&pts, 1..=2)
}

fn homs(cat: &StrandCat, objs: &[Vec<usize>], w: usize, mu: usize) -> Vec<Braid> {
    let mut v = Vec::new();
    for s in objs {
        for t in objs {
            v.extend(cat.hom(s, t, w, mu));
        }
    }
    v
}

#[test]
fn d_squared_and_leibniz_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let cat = StrandCat::new(random_diagram(&mut rng));
        let objs = sample_objects(&cat, &mut rng);
        let all = homs(&cat, &objs, 2, 3);
        for b in &all {
            let d = cat.differential(b);
            assert!(cat.differential_sum(&d).is_zero(), "d^2 at {}", cat.encode(b));
        }
        for f in &all {
            for g in &all {
                if cat.target(f) != g.source {
                    continue;
                }
                let gf = F2Sum::from_option(cat.product(g, f).unwrap());
                let lhs = cat.differential_sum(&gf);
                let mut rhs = cat.product_sum(&cat.differential(g), &F2Sum::single(f.clone())).unwrap();
                rhs.add_assign(&cat.product_sum(&F2Sum::single(g.clone()), &cat.differential(f)).unwrap());
                assert_eq!(lhs, rhs, "Leibniz at {} . {}", cat.encode(g), cat.encode(f));
                if let Some(d) = cat.degree_defect(g, f).unwrap() {
                    assert!(d.residual_zero);
                    assert!(d.halves.iter().all(|&h| h >= 0));
                    assert_eq!(Some(d.halves), cat.defect_by_formula(g, f).unwrap());
                }
            }
        }
    }
}

#[test]
fn cover_pullback_is_a_differential_functor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let cat = StrandCat::new(random_diagram(&mut rng));
        let cover = StrandCat::new(cat.z.nonsingular_cover());
        let objs = sample_objects(&cat, &mut rng);
        let all = homs(&cat, &objs, 2, 3);
        for b in &all {
            let up = pullback(&cover, &cat, b).unwrap();
            assert_eq!(
                cover.differential_sum(&up),
                pullback_sum(&cover, &cat, &cat.differential(b)).unwrap(),
                "d at {}",
                cat.encode(b)
            );
        }
        for f in &all {
            for g in &all {
                if cat.target(f) != g.source {
                    continue;
                }
                let down = F2Sum::from_option(cat.product(g, f).unwrap());
                let lhs = pullback_sum(&cover, &cat, &down).unwrap();
                let rhs = cover
                    .product_sum(&pullback(&cover, &cat, g).unwrap(), &pullback(&cover, &cat, f).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "product at {} . {}", cat.encode(g), cat.encode(f));
            }
        }
    }
}

#[test]
#[ignore]
fn coverage_stats() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let cat = StrandCat::new(random_diagram(&mut rng));
        let objs = sample_objects(&cat, &mut rng);
        let all = homs(&cat, &objs, 2, 3);
        let dnz = all.iter().filter(|b| !cat.differential(b).is_zero()).count();
        let (mut comp, mut kept) = (0, 0);
        for f in &all {
            for g in &all {
                if cat.target(f) == g.source && cat.compose(g, f).unwrap().is_some() {
                    comp += 1;
                    kept += cat.product(g, f).unwrap().is_some() as usize;
                }
            }
        }
        println!("matched {} pts {} homs {} dnz {} composable {} kept {}", cat.z.matching.len(), cat.z.points.len(), all.len(), dnz, comp, kept);
    }
}
