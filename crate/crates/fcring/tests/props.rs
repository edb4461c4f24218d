//! Property tests over randomly generated abelian group rings and random
//! subsets of the bundled models.

use proptest::prelude::*;

use fcring::chars::Config;
use fcring::ring::{FusionRing, RawRing};
use fcring::set::PrimarySet;
use fcring::zoo;

/// Mixed-radix abelian group with the given cyclic orders.
#[derive(Debug, Clone)]
struct AbelianGroup {
    orders: Vec<usize>,
    n: usize,
}

impl AbelianGroup {
    fn new(orders: Vec<usize>) -> Self {
        let n = orders.iter().product();
        AbelianGroup { orders, n }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        self.orders
            .iter()
            .map(|&o| {
                let d = x % o;
                x /= o;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[usize]) -> usize {
        let mut x = 0;
        for (i, &o) in self.orders.iter().enumerate().rev() {
            x = x * o + digits[i] % o;
        }
        x
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(&self.orders)
            .map(|((x, y), &o)| (x + y) % o)
            .collect();
        self.index(&sum)
    }

    fn raw_ring(&self) -> RawRing {
        let n = self.n;
        let mut fusion = vec![0i64; n * n * n];
        for a in 0..n {
            for b in 0..n {
                fusion[a * n * n + b * n + self.mul(a, b)] = 1;
            }
        }
        RawRing {
            n,
            fusion,
            labels: None,
            smatrix: None,
            weights: None,
        }
    }

    /// Subgroup generated by a set, by plain group closure.
    fn generated(&self, seed: &[usize]) -> PrimarySet {
        let mut sub = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = self.mul(x, g);
                if !sub.contains(&y) {
                    sub.push(y);
                    frontier.push(y);
                }
            }
        }
        PrimarySet::from_members(sub)
    }
}

fn abelian_groups() -> impl Strategy<Value = AbelianGroup> {
    proptest::collection::vec(2usize..=4, 1..=2)
        .prop_map(AbelianGroup::new)
        .prop_filter("keep the lattice small", |g| g.n <= 16)
}

fn validated(group: &AbelianGroup) -> FusionRing {
    FusionRing::validate(group.raw_ring(), &Config::default()).expect("group rings are valid")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_rings_validate_with_unit_dimensions(group in abelian_groups()) {
        let ring = validated(&group);
        prop_assert!(ring.modular_compatible());
        for p in 0..ring.primary_count() {
            prop_assert!((ring.dim(p) - 1.0).abs() < 1e-10);
        }
        prop_assert!((ring.total_dim_sq() - group.n as f64).abs() < 1e-9);
    }

    #[test]
    fn closure_equals_the_generated_subgroup(
        group in abelian_groups(),
        seed_bits in proptest::collection::vec(any::<bool>(), 16),
    ) {
        let ring = validated(&group);
        let seed: Vec<usize> = (0..group.n).filter(|&p| seed_bits[p]).collect();
        let closed = ring.closure(PrimarySet::from_members(seed.iter().copied()));
        prop_assert_eq!(closed.members(), group.generated(&seed));
    }

    #[test]
    fn class_counts_duality_and_orthogonality(group in abelian_groups()) {
        let ring = validated(&group);
        let lat = ring.enumerate_fcsets().unwrap();
        for i in 0..lat.len() {
            let g = ring.fcset(lat.element(i)).unwrap();
            let parts = ring.classes(&g).unwrap();
            prop_assert_eq!(parts.class_count(), g.len());
            let dual = ring.dual(&g).unwrap();
            let dual_dual = ring.dual(&dual).unwrap();
            prop_assert_eq!(dual_dual.members(), g.members());
            // blocks() cross-checks against classes(dual) internally.
            let blocks = ring.blocks(&g).unwrap();
            prop_assert_eq!(blocks.block_count(), dual.len());
            let ortho = ring.orthogonality_report(&parts);
            prop_assert!(ortho.max_residual() < 1e-8);
            // Extent product constancy for modular-compatible rings.
            let product = ring.subset_extent(&g.members()) * ring.subset_extent(&dual.members());
            prop_assert!((product - ring.total_dim_sq()).abs() < 1e-8 * ring.total_dim_sq());
        }
    }

    #[test]
    fn abelian_group_sets_are_abelian_and_nilpotent(group in abelian_groups()) {
        let ring = validated(&group);
        let lat = ring.enumerate_fcsets().unwrap();
        for i in 0..lat.len() {
            let g = ring.fcset(lat.element(i)).unwrap();
            let parts = ring.classes(&g).unwrap();
            let center = ring.center(&g, &parts).unwrap();
            prop_assert!(ring.is_abelian(&g, &parts, &center).unwrap());
            let (nilpotent, chain) = ring.is_nilpotent(&g).unwrap();
            prop_assert!(nilpotent);
            prop_assert!(chain.len() <= 2);
        }
    }

    #[test]
    fn relabeling_preserves_invariants(group in abelian_groups(), salt in any::<u64>()) {
        let ring = validated(&group);
        let n = group.n;
        // A permutation of 1..n derived from the salt, fixing the vacuum.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = salt | 1;
        for i in (2..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let j = 1 + (state >> 33) as usize % i;
            perm.swap(i, j);
        }
        let mut fusion = vec![0i64; n * n * n];
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    fusion[perm[p] * n * n + perm[q] * n + perm[r]] =
                        i64::from(ring.coefficient(p, q, r));
                }
            }
        }
        let relabeled = FusionRing::validate(
            RawRing { n, fusion, labels: None, smatrix: None, weights: None },
            &Config::default(),
        )
        .unwrap();
        let lat = ring.enumerate_fcsets().unwrap();
        let lat2 = relabeled.enumerate_fcsets().unwrap();
        prop_assert_eq!(lat.len(), lat2.len());
        let mut d1: Vec<i64> = (0..n).map(|p| ring.dim(p).round() as i64).collect();
        let mut d2: Vec<i64> = (0..n).map(|p| relabeled.dim(p).round() as i64).collect();
        d1.sort_unstable();
        d2.sort_unstable();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn closure_is_idempotent_and_monotone_on_bundled_models(
        which in 0usize..9,
        bits in proptest::collection::vec(any::<bool>(), 8),
    ) {
        let name = zoo::BUNDLED_NAMES[which];
        let ring = zoo::bundled_ring(name, &Config::default()).unwrap();
        let n = ring.primary_count();
        let seed = PrimarySet::from_members((0..n).filter(|&p| bits[p]));
        let once = ring.closure(seed);
        let twice = ring.closure(once.members());
        prop_assert_eq!(once.members(), twice.members());
        prop_assert!(seed.is_subset_of(&once.members()));
        // Monotonicity: closing a subset stays inside.
        let smaller = PrimarySet::from_members(seed.iter().skip(1));
        let closed_smaller = ring.closure(smaller);
        prop_assert!(closed_smaller.members().is_subset_of(&once.members()));
    }
}
