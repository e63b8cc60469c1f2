use bgsplit::bundle::{random_bundle, random_gauge_moves};
use bgsplit::cech::{h0_dim, h0_profile, h1_dim, h1_dim_oracle, safe_h1_window, CechWindow};
use bgsplit::lmatrix::{kernel_basis, mat_det, unimodular_completion};
use bgsplit::splitter::{grothendieck_split, splitting_type, verify_factorization};
use bgsplit::text::{format_bundle, parse_bundle, parse_factorization, serialize_factorization};
use bgsplit::{
    ChartRing, GaussianRational, LaurentMatrix, LaurentPoly, ScalarMatrix, SplittingType,
    VectorBundle,
};
use num_traits::Zero;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        3 => Just(GaussianRational::zero()),
        4 => (-4i64..=4).prop_map(GaussianRational::from_int),
        2 => (-4i64..=4, 1i64..=3).prop_map(|(n, d)| GaussianRational::from_frac(n, d)),
        1 => (-3i64..=3, -3i64..=3).prop_map(|(a, b)| {
            &GaussianRational::from_int(a) + &(&GaussianRational::i() * &GaussianRational::from_int(b))
        }),
    ]
}

fn scalar_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ScalarMatrix> {
    prop::collection::vec(prop::collection::vec(scalar(), cols), rows)
        .prop_map(|r| ScalarMatrix::from_rows(r).unwrap())
}

/// Product of an `r x k` and a `k x c` matrix: rank at most `k`.
fn low_rank_matrix() -> impl Strategy<Value = ScalarMatrix> {
    (1usize..6, 1usize..6, 0usize..4).prop_flat_map(|(r, c, k)| {
        (scalar_matrix(r, k), scalar_matrix(k, c)).prop_map(move |(a, b)| {
            let rows = (0..r)
                .map(|i| {
                    (0..c)
                        .map(|j| {
                            let mut acc = GaussianRational::zero();
                            for t in 0..k {
                                acc += &(&a[(i, t)] * &b[(t, j)]);
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            ScalarMatrix::from_rows(rows).unwrap()
        })
    })
}

/// Textbook elimination over Q(i), independent of the library's kernel code.
fn oracle_rank(m: &ScalarMatrix) -> usize {
    let mut a: Vec<Vec<GaussianRational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..a.len() {
            let f = &a[i][c] / &a[rank][c];
            for j in c..m.cols() {
                let d = &f * &a[rank][j];
                a[i][j] -= &d;
            }
        }
        rank += 1;
    }
    rank
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, -3i64..=3), 0..3).prop_map(|t| LaurentPoly::from_ints(&t))
}

fn laurent_matrix(k: usize) -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(prop::collection::vec(laurent(), k), k)
        .prop_map(|r| LaurentMatrix::from_rows(r).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Leibniz formula.
fn oracle_det(a: &LaurentMatrix) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for p in permutations(a.rows()) {
        let mut term = LaurentPoly::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * &a[(i, j)];
        }
        acc = if sign(&p) { &acc + &term } else { &acc - &term };
    }
    acc
}

/// First column of a product of random shears: unimodular over the z-chart.
fn unimodular_column() -> impl Strategy<Value = Vec<LaurentPoly>> {
    let poly =
        prop::collection::vec((0i64..=2, -3i64..=3), 0..3).prop_map(|t| LaurentPoly::from_ints(&t));
    (2usize..=4)
        .prop_flat_map(move |k| {
            (
                Just(k),
                prop::collection::vec((0..k, 1..k, poly.clone()), 1..6),
                prop::sample::select(vec![1i64, -1, 2, 3]),
            )
        })
        .prop_map(|(k, shears, c)| {
            let mut col = vec![LaurentPoly::zero(); k];
            col[0] = LaurentPoly::constant(GaussianRational::from_int(c));
            for (row, off, f) in shears {
                let src = (row + off) % k;
                col[row] = &col[row] + &(&f * &col[src]);
            }
            col
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_matches_rank_oracle(m in prop_oneof![low_rank_matrix(), (1usize..6, 1usize..6).prop_flat_map(|(r, c)| scalar_matrix(r, c))]) {
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len() + oracle_rank(&m), m.cols());
        prop_assert_eq!(m.rank(), oracle_rank(&m));
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        // Basis vectors are independent.
        if !basis.is_empty() {
            prop_assert_eq!(ScalarMatrix::from_rows(basis.clone()).unwrap().rank(), basis.len());
        }
    }

    #[test]
    fn completion_of_unimodular_columns(col in unimodular_column()) {
        let c = unimodular_completion(&col, ChartRing::ZChart).unwrap();
        let k = col.len();
        prop_assert_eq!(c.matrix.column(0), col.clone());
        prop_assert!(c.matrix.is_in_ring(ChartRing::ZChart));
        prop_assert!(mat_det(&c.matrix).unwrap().is_one());
        prop_assert_eq!(c.inverse.mul(&c.matrix).unwrap(), LaurentMatrix::identity(k));
    }

    #[test]
    fn det_agrees_with_leibniz(a in (1usize..=5).prop_flat_map(laurent_matrix)) {
        prop_assert_eq!(mat_det(&a).unwrap(), oracle_det(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn det_is_multiplicative(a in laurent_matrix(4), b in laurent_matrix(4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(mat_det(&ab).unwrap(), &mat_det(&a).unwrap() * &mat_det(&b).unwrap());
    }

    #[test]
    fn cohomology_of_scrambled_bundles(
        degrees in prop::collection::vec(-4i64..=4, 1..=3),
        g in 0u32..=2,
        seed in any::<u64>(),
    ) {
        let e = random_bundle(&degrees, g, seed);
        let ty = SplittingType::new(degrees.clone());
        prop_assert_eq!(h0_dim(&e).unwrap(), ty.h0());
        prop_assert_eq!(h1_dim(&e).unwrap(), ty.h1());
        // Any window beyond the safe one gives the same answer.
        let wide = CechWindow(safe_h1_window(&e).0 + 3);
        prop_assert_eq!(h1_dim_oracle(&e, wide).unwrap(), ty.h1());
        prop_assert_eq!(e.degree(), ty.degree());
    }

    #[test]
    fn profile_is_gauge_invariant(
        degrees in prop::collection::vec(-3i64..=3, 1..=3),
        seed in any::<u64>(),
    ) {
        let base = VectorBundle::split(&degrees);
        let moved = base.gauge(&random_gauge_moves(degrees.len(), 2, seed)).unwrap();
        prop_assert_eq!(h0_profile(&base, -4, 4).unwrap(), h0_profile(&moved, -4, 4).unwrap());
    }

    #[test]
    fn bundle_and_certificate_text_round_trip(
        degrees in prop::collection::vec(-3i64..=3, 1..=3),
        g in 0u32..=2,
        seed in any::<u64>(),
    ) {
        let e = random_bundle(&degrees, g, seed);
        let back = parse_bundle(&format_bundle(&e)).unwrap();
        prop_assert_eq!(&back, &e);
        let (_, f) = grothendieck_split(&e).unwrap();
        let f2 = parse_factorization(&serialize_factorization(&f)).unwrap();
        prop_assert!(verify_factorization(&back, &f2));
    }

    #[test]
    fn type_arithmetic_on_bundles(
        da in prop::collection::vec(-2i64..=2, 1..=2),
        db in prop::collection::vec(-2i64..=2, 1..=2),
        seed in any::<u64>(),
    ) {
        let a = random_bundle(&da, 1, seed);
        let b = random_bundle(&db, 1, seed.wrapping_add(1));
        let ta = SplittingType::new(da);
        let tb = SplittingType::new(db);
        prop_assert_eq!(splitting_type(&a.tensor(&b)).unwrap(), ta.tensor(&tb));
        prop_assert_eq!(splitting_type(&a.direct_sum(&b)).unwrap(), ta.direct_sum(&tb));
        prop_assert_eq!(splitting_type(&a.dual()).unwrap(), ta.dual());
        prop_assert_eq!(splitting_type(&a.twist(3)).unwrap(), ta.twist(3));
    }
}
