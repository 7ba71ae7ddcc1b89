//! Randomized invariants across the modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strandcat::cli::{parse_braid_token, parse_tsv, tables_to_tsv, Table};
use strandcat::f2core::{bit_row, f2_rank, F2Sum};
use strandcat::hecke::{self, trace, AffinePerm, Perm, Sign};
use strandcat::strands::{random_braid, random_diagram, StrandCat};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

fn perm_pair() -> impl Strategy<Value = (Perm, Perm, Perm)> {
    (1usize..=6).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

/// An affine permutation of `n = 3` as a product of random generators.
fn affine(len: usize) -> impl Strategy<Value = AffinePerm> {
    proptest::collection::vec(0usize..3, 0..=len).prop_map(|letters| {
        letters.into_iter().fold(AffinePerm::identity(3), |acc, l| {
            let g = if l == 0 { AffinePerm::c(3) } else { AffinePerm::simple(3, l) };
            acc.compose(&g)
        })
    })
}

proptest! {
    #[test]
    fn perm_group_laws((a, b, c) in perm_pair()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.length(), a.inverse().length());
        prop_assert!(a.compose(&b).length() <= a.length() + b.length());
    }

    #[test]
    fn nil_hecke_product_is_length_additive((a, b, c) in perm_pair()) {
        match hecke::mult_basis(&a, &b) {
            Some(p) => {
                prop_assert_eq!(p.length(), a.length() + b.length());
                prop_assert_eq!(p, a.compose(&b));
            }
            None => prop_assert!(a.compose(&b).length() < a.length() + b.length()),
        }
        // associativity of the truncated product
        let l = hecke::mult_basis(&a, &b).and_then(|ab| hecke::mult_basis(&ab, &c));
        let r = hecke::mult_basis(&b, &c).and_then(|bc| hecke::mult_basis(&a, &bc));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn nil_hecke_leibniz((a, b, _c) in perm_pair()) {
        let (x, y) = (F2Sum::single(a), F2Sum::single(b));
        let lhs = hecke::differential(&hecke::mult(&x, &y));
        let rhs = hecke::mult(&hecke::differential(&x), &y).add(&hecke::mult(&x, &hecke::differential(&y)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(hecke::differential(&hecke::differential(&x)).is_zero());
    }

    #[test]
    fn affine_leibniz_and_inverse(a in affine(6), b in affine(6)) {
        prop_assert_eq!(a.compose(&a.inverse()), AffinePerm::identity(3));
        prop_assert_eq!(a.compose(&b).c_degree(), a.c_degree() + b.c_degree());
        let (x, y) = (F2Sum::single(a), F2Sum::single(b));
        let lhs = hecke::differential(&hecke::mult(&x, &y));
        let rhs = hecke::mult(&hecke::differential(&x), &y).add(&hecke::mult(&x, &hecke::differential(&y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_transitive(m in 1usize..=5, seed in any::<u64>(), plus in any::<bool>()) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let all = Perm::all(m);
        let w = all[(seed % all.len() as u64) as usize].clone();
        let i = (seed / 7 % (m as u64 + 1)) as usize;
        let j = (seed / 53 % (i as u64 + 1)) as usize;
        let x = F2Sum::single(w);
        prop_assert_eq!(trace(sign, j, &trace(sign, i, &x)), trace(sign, j, &x));
    }

    #[test]
    fn f2_sums_form_a_vector_space(xs in proptest::collection::vec(0u32..20, 0..12), ys in proptest::collection::vec(0u32..20, 0..12)) {
        let x: F2Sum<u32> = xs.iter().fold(F2Sum::zero(), |mut s, &t| { s.toggle(t); s });
        let y: F2Sum<u32> = ys.iter().fold(F2Sum::zero(), |mut s, &t| { s.toggle(t); s });
        prop_assert!(x.add(&x).is_zero());
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&y), x);
    }

    #[test]
    fn rank_is_invariant_under_row_operations(rows in proptest::collection::vec(proptest::collection::vec(0usize..70, 0..6), 1..8), i in 0usize..8, j in 0usize..8) {
        let m: Vec<Vec<u64>> = rows.iter().map(|r| bit_row(70, r.iter().copied())).collect();
        let r0 = f2_rank(m.clone());
        prop_assert!(r0 <= m.len());
        let (i, j) = (i % m.len(), j % m.len());
        if i != j {
            let mut m2 = m.clone();
            let add: Vec<u64> = m2[i].iter().zip(&m2[j]).map(|(a, b)| a ^ b).collect();
            m2[i] = add;
            prop_assert_eq!(f2_rank(m2), r0);
        }
    }

    #[test]
    fn tsv_tables_round_trip(cells in proptest::collection::vec(proptest::collection::vec("[a-z0-9(){}, /+-]{0,12}", 3), 0..10)) {
        let t = Table { name: "t".into(), columns: vec!["a".into(), "b".into(), "c".into()], rows: cells };
        let text = tables_to_tsv(std::slice::from_ref(&t));
        prop_assert_eq!(parse_tsv(&text).unwrap(), vec![t]);
    }

    #[test]
    fn braid_tokens_round_trip(ts in proptest::collection::vec((0usize..4, 1usize..9, 1usize..9, -3i64..4), 0..5)) {
        let parts: Vec<String> = ts.iter().map(|(c, s, e, w)| format!("({c}, {s}, {e}, {w})")).collect();
        let tok = format!("{{{}}}", parts.join(", "));
        prop_assert_eq!(parse_braid_token(&tok).unwrap(), ts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_braids_satisfy_strand_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = StrandCat::new(random_diagram(&mut rng));
        let k = 1 + (seed % 3) as usize;
        if let Some(b) = random_braid(&cat, &mut rng, k.min(cat.z.points.len()), 2, 5) {
            prop_assert_eq!(cat.i_vec(&b), cat.sampled_intersections(&b));
            prop_assert!(cat.differential_sum(&cat.differential(&b)).is_zero());
            let id_s = cat.identity(&b.source);
            let id_t = cat.identity(&cat.target(&b));
            prop_assert_eq!(cat.product(&b, &id_s).unwrap(), Some(b.clone()));
            prop_assert_eq!(cat.product(&id_t, &b).unwrap(), Some(b.clone()));
            // degree is multiplicative whenever the product survives
            if let Some(bb) = cat.product(&b, &b).unwrap_or(None) {
                let d = cat.degree(&b).mul(&cat.degree(&b)).unwrap();
                prop_assert_eq!(cat.degree(&bb), d);
            }
        }
    }
}
