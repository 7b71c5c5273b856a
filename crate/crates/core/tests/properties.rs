use proptest::prelude::*;

use matpw::cli::{InstanceDocument, ResultDocument, Stats};
use matpw::field::{FieldOps, FiniteField};
use matpw::linalg::{kernel, rank_of, subspace_intersection, SubspaceBasis};
use matpw::matroid::{minor, ElementSet, MatroidExt, RankOracle};
use matpw::pathwidth::{decide_pw_le, pathwidth_exact, width_of_order};
use matpw::propcheck::{field_of_order, random_linear};
use matpw::selfreduce::{decompose_full, gadget_oracle, Method};

fn small_matroid() -> impl Strategy<Value = (usize, usize, u64, u64)> {
    (1usize..=4, 2usize..=7, prop::sample::select(vec![2u64, 3]), any::<u64>())
        .prop_map(|(r, n, q, seed)| (r.min(n), n, q, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field_of_order(q).unwrap();
        let (a, b, c) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        match f.inv(&a) {
            Some(i) => prop_assert!(f.is_one(&f.mul(&a, &i))),
            None => prop_assert!(f.is_zero(&a)),
        }
    }

    #[test]
    fn kernel_and_rank((r, n, q, seed) in small_matroid()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let f = m.field();
        let cols = m.matrix().columns().to_vec();
        let k = kernel(f, r, &cols);
        prop_assert_eq!(k.len() + rank_of(f, r, cols.iter().map(Vec::as_slice)), n);
        for x in &k {
            for row in 0..r {
                let mut acc = f.zero();
                for (xi, col) in x.iter().zip(&cols) {
                    acc = f.add(&acc, &f.mul(xi, &col[row]));
                }
                prop_assert!(f.is_zero(&acc));
            }
        }
    }

    #[test]
    fn intersection_dimension((r, n, q, seed) in small_matroid(), split in any::<u64>()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let f = m.field();
        let x = ElementSet::from_bits(split) & m.ground();
        let side = |s: ElementSet| -> Vec<Vec<u16>> { s.iter().map(|i| m.matrix().column(i).to_vec()).collect() };
        let a = SubspaceBasis::span(f, r, &side(x)).unwrap();
        let b = SubspaceBasis::span(f, r, &side(m.ground() - x)).unwrap();
        let meet = subspace_intersection(f, &a, &b).unwrap();
        prop_assert_eq!(meet.rank() + a.sum(f, &b).rank(), a.rank() + b.rank());
        prop_assert_eq!(meet.rank(), m.lambda(x));
    }

    #[test]
    fn contraction_rank((r, n, q, seed) in small_matroid(), c in any::<u64>(), s in any::<u64>()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let contract = ElementSet::from_bits(c) & m.ground();
        let mn = minor(&m, contract, ElementSet::EMPTY).unwrap();
        let x = ElementSet::from_bits(s) & mn.ground();
        let lifted: ElementSet = x.iter().map(|i| mn.base_index(i)).collect();
        prop_assert_eq!(mn.rank(x), m.rank(lifted | contract) - m.rank(contract));
    }

    #[test]
    fn order_widths((r, n, q, seed) in small_matroid(), perm_seed in any::<u64>()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let pd = width_of_order(&m, &order).unwrap();
        prop_assert_eq!(pd.lambdas.len(), n - 1);
        prop_assert_eq!(pd.lambdas.iter().copied().max().unwrap_or(0), pd.width);
        let (pw, best) = pathwidth_exact(&m).unwrap();
        prop_assert!(pw <= pd.width);
        prop_assert_eq!(best.width, pw);
        prop_assert!(decide_pw_le(&m, pw).unwrap());
        prop_assert!(pw == 0 || !decide_pw_le(&m, pw - 1).unwrap());
    }

    #[test]
    fn lambda_is_symmetric_and_submodular((r, n, q, seed) in small_matroid(), a in any::<u64>(), b in any::<u64>()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let (a, b) = (ElementSet::from_bits(a) & m.ground(), ElementSet::from_bits(b) & m.ground());
        prop_assert_eq!(m.lambda(a), m.lambda(m.ground() - a));
        prop_assert!(m.lambda(a | b) + m.lambda(a & b) <= m.lambda(a) + m.lambda(b));
        prop_assert!(m.mu(a, b) >= m.lambda(a));
    }

    #[test]
    fn instance_documents_round_trip(r in 1usize..=4, n in 1usize..=8, q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]), seed in any::<u64>()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let doc = InstanceDocument::from_matroid(&m, vec![format!("seed {seed}")]).unwrap();
        let back = InstanceDocument::parse(&doc.emit()).unwrap();
        prop_assert_eq!(&back, &doc);
        let again = back.to_matroid().unwrap();
        prop_assert_eq!(again.matrix(), m.matrix());
    }

    #[test]
    fn result_documents_round_trip(order in prop::collection::vec(1usize..50, 1..12), stats in prop::option::of((any::<u32>(), any::<u32>(), any::<u16>()))) {
        let lambdas: Vec<usize> = order.iter().skip(1).map(|x| x % 5).collect();
        let doc = ResultDocument {
            width: lambdas.iter().copied().max().unwrap_or(0),
            order,
            lambdas,
            stats: stats.map(|(c, r, ms)| Stats { oracle_calls: c.into(), rank_queries: r.into(), ms: ms.into() }),
        };
        prop_assert_eq!(ResultDocument::parse(&doc.emit()).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn self_reduction_is_optimal((r, n, q, seed) in small_matroid()) {
        let m = random_linear(r, n, q, seed).unwrap();
        let pw = pathwidth_exact(&m).unwrap().0;
        for method in [Method::SelfLinear, Method::SelfAbstract] {
            let d = decompose_full(&m, method, &gadget_oracle()).unwrap();
            prop_assert_eq!(d.decomposition.width, pw);
            let mut seen = d.decomposition.order.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        }
    }
}
