use matslocc::arith::GaussianRational;
use matslocc::compression::{
    asymptotic_profile, build_compression_space, mrk_tensor_pair, mrk_tensor_power, CompressionParams,
};
use matslocc::matspace::{Matrix, MatrixSpace, SizeGuard, Subspace};
use matslocc::rank::{max_rank_randomized, rank_boost, rank_exact, RandomizedConfig};
use matslocc::shrunk::{has_shrunk_subspace, ncrk_bounds, verify_blowup_certificate, verify_shrunk, ShrunkDecision};
use matslocc::slocc::{
    asymptotic_reachability, can_convert, compare_square, fixtures, msrk, rate_bounds, strictly_supermultiplicative,
    vec_support, Amplitude, TripartiteState,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize, data: Vec<i64>) -> Matrix {
    Matrix::from_vec(rows, cols, data.into_iter().map(GaussianRational::from_int).collect()).unwrap()
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-2i64..=2, r * c).prop_map(move |d| int_matrix(r, c, d))
    })
}

fn generators(rows: usize, cols: usize, max_gens: usize) -> impl Strategy<Value = Vec<Matrix>> {
    // Mostly zeros so that spaces have nontrivial kernels and shrunk subspaces.
    let entry = prop_oneof![3 => Just(0i64), 1 => -2i64..=2];
    proptest::collection::vec(
        proptest::collection::vec(entry, rows * cols).prop_map(move |d| int_matrix(rows, cols, d)),
        1..=max_gens,
    )
}

fn space(max: usize) -> impl Strategy<Value = (Vec<Matrix>, MatrixSpace)> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| generators(r, c, 4))
        .prop_map(|g| {
            let s = MatrixSpace::from_generators(&g).unwrap();
            (g, s)
        })
}

fn square_space(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = MatrixSpace> {
    d.prop_flat_map(|d| generators(d, d, 4)).prop_map(|g| MatrixSpace::from_generators(&g).unwrap())
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |d| int_matrix(n, n, d))
        .prop_filter("singular", move |m| rank_exact(m) == n)
}

fn cfg() -> RandomizedConfig {
    RandomizedConfig::default()
}

fn guard() -> SizeGuard {
    SizeGuard::default()
}

/// States whose slices are elementary matrices.
fn pattern_state() -> impl Strategy<Value = TripartiteState> {
    (2usize..=3).prop_flat_map(|d| {
        proptest::sample::subsequence((0..d * d).collect::<Vec<_>>(), 1..=d * d).prop_map(move |cells| {
            let entries: Vec<_> = cells.iter().enumerate().map(|(c, &k)| (k / d, k % d, c, 1)).collect();
            TripartiteState::from_triples([d, d, entries.len()], &entries).unwrap()
        })
    })
}

fn small_state() -> impl Strategy<Value = TripartiteState> {
    (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(da, db, dc)| {
        proptest::collection::vec(prop_oneof![2 => Just(0i64), 1 => -2i64..=2], da * db * dc).prop_filter_map(
            "zero state",
            move |vals| {
                let mut entries = Vec::new();
                for (k, &v) in vals.iter().enumerate() {
                    if v != 0 {
                        entries.push((k / (db * dc), (k / dc) % db, k % dc, v));
                    }
                }
                TripartiteState::from_triples([da, db, dc], &entries).ok()
            },
        )
    })
}

fn nonzero_scalar() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts((a, b), (c, d)))
        .prop_filter("zero", |x| !num_traits::Zero::is_zero(x))
}

fn maximal_triple(max_d: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (3..=max_d)
        .prop_flat_map(|d| (1..d - 1, Just(d)))
        .prop_flat_map(|(p, d)| (Just(p), 1..d - p, Just(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kronecker_rank_is_multiplicative(a in matrix(6), b in matrix(6)) {
        prop_assert_eq!(rank_exact(&a.kronecker(&b)), rank_exact(&a) * rank_exact(&b));
    }

    #[test]
    fn tensor_dim_is_multiplicative((_, s) in space(3), (_, t) in space(3)) {
        let st = s.tensor(&t);
        prop_assert_eq!(st.dim(), s.dim() * t.dim());
        prop_assert_eq!((st.rows(), st.cols()), (s.rows() * t.rows(), s.cols() * t.cols()));
    }

    #[test]
    fn image_and_kernel_follow_the_span((gens, s) in space(4), mix in -3i64..=3) {
        // Another generating set of the same span.
        let mut other = gens.clone();
        let g0 = other[0].clone();
        for g in other.iter_mut().skip(1) {
            *g = g.add(&g0.scale(&GaussianRational::from_int(mix))).unwrap();
        }
        other.push(g0.scale(&GaussianRational::from_int(2)));
        let t = MatrixSpace::from_generators(&other).unwrap();
        prop_assert_eq!(&t, &s);
        prop_assert_eq!(t.image(), s.image());
        prop_assert_eq!(t.kernel(), s.kernel());

        // Directly from the generators: columns span the image, the stacked
        // generators cut out the kernel.
        let cols: Vec<Vec<GaussianRational>> = gens.iter().flat_map(|g| (0..g.cols()).map(|j| g.column(j))).collect();
        prop_assert_eq!(s.image(), Subspace::from_vectors(s.rows(), &cols).unwrap());
        let stacked: Vec<GaussianRational> = gens.iter().flat_map(|g| g.as_slice().to_vec()).collect();
        let stacked = Matrix::from_vec(gens.len() * s.rows(), s.cols(), stacked).unwrap();
        prop_assert_eq!(s.kernel().dim(), s.cols() - rank_exact(&stacked));
        for v in s.kernel().basis() {
            for g in &gens {
                prop_assert!(g.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
            }
        }
    }

    #[test]
    fn equivalent_transform_preserves_max_rank(
        s in square_space(2..=4).prop_filter("need 3x3", |s| s.rows() == 3),
        p in invertible(3),
        q in invertible(3),
    ) {
        let t = s.equivalent_transform(&p, &q).unwrap();
        prop_assert_eq!(t.dim(), s.dim());
        let rs = max_rank_randomized(&s, &cfg()).unwrap();
        let rt = max_rank_randomized(&t, &cfg()).unwrap();
        prop_assert_eq!(rs.rank, rt.rank);
        // The lifted witness maps to an element of the same exact rank.
        let x = rs.witness.lift(&s).unwrap();
        prop_assert_eq!(rank_exact(&p.mul(&x).unwrap().mul(&q).unwrap()), rank_exact(&x));
    }

    #[test]
    fn more_trials_never_report_less((_, s) in space(4), seed in any::<u64>(), t in 1u32..6) {
        let base = cfg().with_seed(seed);
        let few = max_rank_randomized(&s, &RandomizedConfig { trials: t, ..base.clone() }).unwrap();
        let many = max_rank_randomized(&s, &RandomizedConfig { trials: 2 * t, ..base.clone() }).unwrap();
        prop_assert!(few.rank <= many.rank);
        prop_assert!(many.rank <= s.rows().min(s.cols()));
        let parallel = max_rank_randomized(&s, &RandomizedConfig { trials: 2 * t, jobs: 3, ..base }).unwrap();
        prop_assert_eq!(parallel, many);
    }

    #[test]
    fn witnesses_verify_and_lift((_, s) in space(4)) {
        let r = max_rank_randomized(&s, &cfg()).unwrap();
        prop_assert!(r.witness.verify(&s).unwrap());
        let (x, exact) = r.certify(&s).unwrap();
        prop_assert!(s.contains(&x));
        prop_assert_eq!(exact, r.rank);
    }

    #[test]
    fn max_rank_is_supermultiplicative((_, s) in space(3), (_, t) in space(3)) {
        let a = max_rank_randomized(&s, &cfg()).unwrap().rank;
        let b = max_rank_randomized(&t, &cfg()).unwrap().rank;
        prop_assert!(max_rank_randomized(&s.tensor(&t), &cfg()).unwrap().rank >= a * b);
    }

    #[test]
    fn boost_strictly_increases_rank((_, s) in space(4), pick in any::<prop::sample::Index>()) {
        let basis = s.basis_matrices();
        prop_assume!(!basis.is_empty());
        let x = basis[pick.index(basis.len())].clone();
        if let Some(y) = rank_boost(&s, &x).unwrap() {
            prop_assert!(s.contains(&y));
            prop_assert!(rank_exact(&y) > rank_exact(&x));
        }
    }

    #[test]
    fn verified_shrinkage_caps_max_rank(s in square_space(2..=4), mask in 1u32..16) {
        let d = s.rows();
        let u = Subspace::coordinate(d, (0..d).filter(|j| mask >> j & 1 == 1));
        prop_assume!(u.dim() > 0);
        let r = max_rank_randomized(&s, &cfg()).unwrap().rank;
        if let Some(w) = verify_shrunk(&s, &u).unwrap() {
            prop_assert!(r <= d - w.shrinkage());
        }
    }

    #[test]
    fn ncrk_sandwich(s in square_space(2..=4)) {
        let r = max_rank_randomized(&s, &cfg()).unwrap().rank;
        let b = ncrk_bounds(&s, &[], &cfg(), guard()).unwrap();
        prop_assert!(r <= b.upper);
        prop_assert!(b.lower <= 2 * r);
        prop_assert!(b.lower <= b.upper);
    }

    #[test]
    fn no_shrunk_is_certificate_backed(s in square_space(2..=4)) {
        let decision = has_shrunk_subspace(&s, &cfg(), guard()).unwrap();
        match &decision {
            ShrunkDecision::NoShrunk { certificate, .. } => {
                prop_assert!(verify_blowup_certificate(&s, certificate, guard()).unwrap());
            }
            ShrunkDecision::Shrunk { witness: Some(w), failure_bound, .. } => {
                prop_assert!(verify_shrunk(&s, &w.u).unwrap().is_some());
                prop_assert_eq!(failure_bound.to_f64(), Some(0.0));
            }
            ShrunkDecision::Shrunk { .. } => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn no_shrunk_is_stable_under_tensor(s in square_space(2..=3), t in square_space(2..=2)) {
        let ds = has_shrunk_subspace(&s, &cfg(), guard()).unwrap();
        let dt = has_shrunk_subspace(&t, &cfg(), guard()).unwrap();
        prop_assume!(!ds.has_shrunk() && !dt.has_shrunk());
        prop_assert!(!has_shrunk_subspace(&s.tensor(&t), &cfg(), guard()).unwrap().has_shrunk());
    }

    #[test]
    fn power_two_matches_pair((p, q, d) in maximal_triple(8)) {
        let params = CompressionParams::square(p, q, d).unwrap();
        let pair = mrk_tensor_pair(&params, &params).unwrap();
        prop_assert_eq!(mrk_tensor_power(p, q, d, 2).unwrap().to_usize(), Some(pair));
    }

    #[test]
    fn log_ranks_are_superadditive((p, q, d) in maximal_triple(12), m in 1u32..=6, n in 1u32..=6) {
        let c = |k: u32| mrk_tensor_power(p, q, d, k).unwrap().to_f64().unwrap().log2();
        prop_assert!(c(m + n) >= c(m) + c(n) - 1e-9);
    }

    #[test]
    fn finite_roots_stay_below_the_limit((p, q, d) in maximal_triple(30), n in 1u32..=30) {
        let lim = asymptotic_profile(p, q, d).unwrap().mrk_inf;
        let v = mrk_tensor_power(p, q, d, n).unwrap().to_f64().unwrap();
        prop_assert!(v.powf(1.0 / f64::from(n)) <= lim + 1e-9);
        prop_assert!(lim < d as f64);
    }

    #[test]
    fn support_dim_bounds(state in small_state(), seed in any::<u64>()) {
        let [da, db, dc] = state.dims();
        let s = vec_support(&state);
        prop_assert!(s.dim() <= dc && s.dim() <= da * db);
        // Permuting the C basis does not change the span.
        let mut perm: Vec<usize> = (0..dc).collect();
        perm.rotate_left((seed % dc as u64) as usize);
        let moved: Vec<Amplitude> = state
            .amplitudes()
            .iter()
            .map(|a| Amplitude { c: perm[a.c], ..a.clone() })
            .collect();
        prop_assert_eq!(vec_support(&TripartiteState::new([da, db, dc], moved).unwrap()), s);
    }

    #[test]
    fn square_is_at_least_the_square_exactly(state in small_state()) {
        let one = msrk(&state, 1, &cfg(), guard()).unwrap();
        let two = msrk(&state, 2, &cfg(), guard()).unwrap();
        let s1 = vec_support(&state);
        let s2 = s1.tensor_power(2, guard()).unwrap();
        let r1 = one.certify(&s1).unwrap().1;
        let r2 = two.certify(&s2).unwrap().1;
        prop_assert!(r2 >= r1 * r1);
    }

    #[test]
    fn two_condition_test_matches_certified_ranks(state in pattern_state()) {
        let cmp = compare_square(&state, &cfg(), guard(), 1 << 16).unwrap();
        let truth = cmp.strict();
        prop_assume!(truth.is_some());
        prop_assert_eq!(Some(strictly_supermultiplicative(&state, &cfg()).unwrap().holds()), truth);
    }

    #[test]
    fn reachability_matches_rate_upper(state in pattern_state()) {
        let d = state.dims()[0];
        let reach = asymptotic_reachability(&state, &cfg(), guard()).unwrap();
        let rate = rate_bounds(&state, d, Some(1), &cfg(), guard()).unwrap();
        prop_assert_eq!(reach.reachable, (rate.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scaling_changes_nothing(state in small_state(), s in nonzero_scalar()) {
        let scaled = state.scaled(&s);
        prop_assert_eq!(vec_support(&scaled), vec_support(&state));
        let a = can_convert(&state, 1, 2, &cfg(), guard(), true).unwrap();
        let b = can_convert(&scaled, 1, 2, &cfg(), guard(), true).unwrap();
        prop_assert_eq!((a.report.rank, a.certified_rank, a.convertible), (b.report.rank, b.certified_rank, b.convertible));
        if state.dims()[0] == state.dims()[1] && state.dims()[0] >= 2 {
            let ra = rate_bounds(&state, 2, Some(1), &cfg(), guard()).unwrap();
            let rb = rate_bounds(&scaled, 2, Some(1), &cfg(), guard()).unwrap();
            prop_assert_eq!(ra, rb);
        }
    }
}

#[test]
fn power_two_matches_pair_exhaustively() {
    for d in 3..=8 {
        for p in 1..d - 1 {
            for q in 1..d - p {
                let params = CompressionParams::square(p, q, d).unwrap();
                let pair = mrk_tensor_pair(&params, &params).unwrap();
                assert_eq!(mrk_tensor_power(p, q, d, 2).unwrap().to_usize(), Some(pair), "{p} {q} {d}");
            }
        }
    }
}

#[test]
fn two_condition_test_on_fixtures() {
    let states = [
        fixtures::skew(3),
        fixtures::ghz(),
        fixtures::w(),
        fixtures::compression_state(1, 1, 3),
        fixtures::full(2),
        fixtures::product(),
    ];
    for state in &states {
        let cmp = compare_square(state, &cfg(), guard(), 1 << 20).unwrap();
        let truth = cmp.strict().expect("certified intervals decide the fixtures");
        assert_eq!(strictly_supermultiplicative(state, &cfg()).unwrap().holds(), truth, "{state:?}");
    }
}

#[test]
fn compression_spaces_are_shrunk_with_canonical_witness() {
    for (p, q, d) in [(1, 1, 3), (1, 1, 4), (1, 2, 4), (2, 1, 5)] {
        let s = build_compression_space(&CompressionParams::square(p, q, d).unwrap());
        let decision = has_shrunk_subspace(&s, &cfg(), guard()).unwrap();
        let ShrunkDecision::Shrunk { witness: Some(w), .. } = decision else { panic!("({p},{q},{d})") };
        assert!(verify_shrunk(&s, &w.u).unwrap().is_some());
        assert!(max_rank_randomized(&s, &cfg()).unwrap().rank <= d - w.shrinkage());
    }
}
