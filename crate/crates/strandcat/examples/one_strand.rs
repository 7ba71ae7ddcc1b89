//! One-strand algebras of the torus and circle chord diagrams.

use strandcat::strands::StrandCat;

fn main() {
    let torus = StrandCat::from_json(include_str!("../data/torus.json")).unwrap();
    let (p1, p2) = (torus.z.point_of_mark_id(1).unwrap(), torus.z.point_of_mark_id(2).unwrap());
    let seg = |c: &StrandCat, a, b| c.braid(vec![c.z.path(0, a, b)]).unwrap();
    let (alpha_p, beta, alpha) = (seg(&torus, 0, 1), seg(&torus, 1, 2), seg(&torus, 2, 3));
    println!("torus: βα = {:?}", torus.product(&beta, &alpha).unwrap().map(|b| torus.encode(&b)));
    println!("torus: α'β = {:?}", torus.product(&alpha_p, &beta).unwrap().map(|b| torus.encode(&b)));
    println!("torus: βα' = {:?}", torus.product(&beta, &alpha_p).unwrap().map(|b| torus.encode(&b)));
    for (s, t) in [(p1, p1), (p1, p2), (p2, p1), (p2, p2)] {
        let hom: Vec<String> = torus.hom(&[s], &[t], 1, 4).iter().map(|b| torus.encode(b)).collect();
        println!("  Hom({s},{t}) = {hom:?}");
    }

    let circle = StrandCat::from_json(include_str!("../data/circle.json")).unwrap();
    let (q1, q2) = (circle.z.point_of_mark_id(1).unwrap(), circle.z.point_of_mark_id(2).unwrap());
    println!("circle, winding at most 2: Hom sizes by length");
    for (s, t) in [(q1, q1), (q1, q2), (q2, q1), (q2, q2)] {
        let mut by_len = [0usize; 9];
        for b in circle.hom(&[s], &[t], 2, 8) {
            by_len[circle.mu_total(&b)] += 1;
        }
        println!("  Hom({s},{t}): {by_len:?}");
    }
}
