mod common;

use std::sync::Arc;

use galcoh::cohom::{cohomology, induced_map};
use galcoh::exactlin::{cokernel, kernel_basis, rank, snf, solve_in_lattice, IntMatrix};
use galcoh::gmod::{is_coflasque, is_flasque, FiniteGroup, GammaLattice, LatticeMap};
use galcoh::hyper::{hypercohomology, TwoTermComplex};
use galcoh::picard::{fundamental_group, picard_group};
use galcoh::random::{named_group, random_complex, random_equivariant_map, random_lattice, rng_from_seed};
use galcoh::rootdata::{build_split, product, CartanType, Isogeny};
use galcoh::{Int, Matrix};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::{cokernel_by_minors, cyclic_oracle, load_spec};

fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Int::from).collect()).unwrap())
    })
}

fn group_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["cyclic2", "cyclic3", "cyclic4", "s3"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_decomposition(a in small_matrix(5, 9)) {
        let f = snf(&a);
        prop_assert_eq!(&(&f.u * &a) * &f.v, f.s.clone());
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let d = f.diagonal();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                prop_assert!(i == j || f.s[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn smith_is_transpose_invariant(a in small_matrix(5, 9)) {
        prop_assert_eq!(snf(&a).diagonal(), snf(&a.transpose()).diagonal());
    }

    #[test]
    fn cokernel_matches_determinantal_divisors(a in small_matrix(4, 6)) {
        prop_assert_eq!(cokernel(&a), cokernel_by_minors(&a));
    }

    #[test]
    fn machine_and_big_integers_agree(a in small_matrix(5, 9)) {
        let small: IntMatrix<i64> = a.convert();
        let d: Vec<Int> = snf(&small).diagonal().into_iter().map(Int::from).collect();
        prop_assert_eq!(d, snf(&a).diagonal());
    }

    #[test]
    fn lattice_solutions_are_exact(a in small_matrix(5, 9), x in prop::collection::vec(-5i64..=5, 5), b in prop::collection::vec(-20i64..=20, 5)) {
        let x: Vec<Int> = x.into_iter().take(a.cols()).map(Int::from).collect();
        prop_assume!(x.len() == a.cols());
        let target = a.mul_vec(&x);
        let y = solve_in_lattice(&a, &target);
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul_vec(&y.unwrap()), target);
        let b: Vec<Int> = b.into_iter().take(a.rows()).map(Int::from).collect();
        prop_assume!(b.len() == a.rows());
        if let Some(y) = solve_in_lattice(&a, &b) {
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }

    #[test]
    fn kernels_are_saturated(a in small_matrix(5, 4)) {
        let k = kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank(&a));
        // a saturated sublattice has a torsion-free quotient
        prop_assert!(cokernel(&k).invariant_factors().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cohomology_is_additive(name in group_name(), seed in any::<u64>(), n in 0usize..=2) {
        let g = named_group(name).unwrap();
        let mut rng = rng_from_seed(seed);
        let l1 = random_lattice(&g, 2, &mut rng);
        let l2 = random_lattice(&g, 2, &mut rng);
        let sum = cohomology(&l1.direct_sum(&l2).unwrap(), n).unwrap();
        let parts = cohomology(&l1, n).unwrap().group().direct_sum(cohomology(&l2, n).unwrap().group());
        prop_assert_eq!(sum.group(), &parts);
    }

    #[test]
    fn bar_matches_cyclic_oracle(order in prop::sample::select(vec![2usize, 3, 4, 6]), seed in any::<u64>(), n in 1usize..=2) {
        let g = Arc::new(FiniteGroup::cyclic(order).unwrap());
        let lattice = random_lattice(&g, 4, &mut rng_from_seed(seed));
        prop_assert_eq!(cohomology(&lattice, n).unwrap().group().clone(), cyclic_oracle(&lattice, n));
    }

    #[test]
    fn induced_maps_compose(name in group_name(), seed in any::<u64>(), n in 0usize..=2) {
        let g = named_group(name).unwrap();
        let mut rng = rng_from_seed(seed);
        let a = random_lattice(&g, 2, &mut rng);
        let b = random_lattice(&g, 2, &mut rng);
        let c = random_lattice(&g, 2, &mut rng);
        let phi = random_equivariant_map(&a, &b, 2, &mut rng).unwrap();
        let psi = random_equivariant_map(&b, &c, 2, &mut rng).unwrap();
        let composed = induced_map(&phi.then(&psi).unwrap(), n).unwrap();
        let stepwise = induced_map(&phi, n).unwrap().then(&induced_map(&psi, n).unwrap());
        prop_assert_eq!(composed, stepwise);
        prop_assert!(induced_map(&LatticeMap::identity(&a), n).unwrap().is_identity());
    }

    #[test]
    fn degenerate_complexes(name in group_name(), seed in any::<u64>(), r in 1usize..=2) {
        let g = named_group(name).unwrap();
        let l = random_lattice(&g, 3, &mut rng_from_seed(seed));
        let in_zero = hypercohomology(&TwoTermComplex::concentrated_in_zero(&l).unwrap(), r).unwrap();
        prop_assert_eq!(in_zero.group(), &cohomology(&l, r).unwrap().group().clone());
        let in_one = hypercohomology(&TwoTermComplex::concentrated_in_one(&l).unwrap(), r).unwrap();
        prop_assert_eq!(in_one.group(), &cohomology(&l, r - 1).unwrap().group().clone());
        let iso = hypercohomology(&TwoTermComplex::new(LatticeMap::identity(&l)), r).unwrap();
        prop_assert!(iso.group().is_trivial());
    }

    #[test]
    fn random_complexes_are_reproducible(name in group_name(), seed in any::<u64>()) {
        let g = named_group(name).unwrap();
        let x = random_complex(&g, 3, &mut rng_from_seed(seed)).unwrap();
        let y = random_complex(&g, 3, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(x.map().matrix(), y.map().matrix());
        prop_assert_eq!(x.a().actions(), y.a().actions());
    }

    #[test]
    fn dual_is_an_involution(name in group_name(), seed in any::<u64>()) {
        let g = named_group(name).unwrap();
        let l = random_lattice(&g, 4, &mut rng_from_seed(seed));
        let back = l.dual().dual();
        prop_assert_eq!(back.actions(), l.actions());
    }
}

fn split_types() -> Vec<CartanType> {
    let mut v = Vec::new();
    for n in 1..=5 {
        v.push(CartanType::A(n));
    }
    for n in 2..=4 {
        v.push(CartanType::B(n));
        v.push(CartanType::C(n));
    }
    for n in 3..=6 {
        v.push(CartanType::D(n));
    }
    v.extend([
        CartanType::E6,
        CartanType::E7,
        CartanType::E8,
        CartanType::F4,
        CartanType::G2,
    ]);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_pic_matches_pi1_torsion(t in prop::sample::select(split_types()), adjoint in any::<bool>(), torus in 0usize..=2) {
        let iso = if adjoint { Isogeny::Adjoint } else { Isogeny::SimplyConnected };
        let spec = build_split(t, &iso, torus).unwrap();
        let pic = picard_group(&spec).unwrap().pic;
        let pi1 = fundamental_group(&spec).unwrap().group;
        prop_assert_eq!(pic.invariant_factors(), pi1.invariant_factors());
        prop_assert_eq!(pi1.free_rank(), torus);
        prop_assert_eq!(pic.free_rank(), 0);
    }

    #[test]
    fn pic_is_additive(picks in prop::collection::vec(prop::sample::select(vec![
        "pgl2", "pgl3", "sl3", "sp4", "d4_adjoint", "norm_one_torus", "induced_c2", "gl3", "b2_adjoint",
    ]), 1..=3)) {
        let specs: Vec<_> = picks.iter().map(|n| load_spec(n)).collect();
        let mut expected = galcoh::AbGroup::trivial();
        for s in &specs {
            expected = expected.direct_sum(&picard_group(s).unwrap().pic);
        }
        prop_assert_eq!(picard_group(&product(&specs).unwrap()).unwrap().pic, expected);
    }

    #[test]
    fn permutation_modules_are_flasque_and_coflasque(name in prop::sample::select(vec!["cyclic2", "cyclic4", "s3"]), pick in any::<prop::sample::Index>()) {
        let g = named_group(name).unwrap();
        let subgroups = g.subgroups();
        let h = pick.get(&subgroups);
        let l = GammaLattice::coset_module(&g, h);
        prop_assert!(l.is_permutation_module());
        prop_assert!(is_flasque(&l).unwrap());
        prop_assert!(is_coflasque(&l).unwrap());
    }
}
