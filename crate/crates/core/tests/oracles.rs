use gcoh_core::abelian::{cokernel, exterior_power, FgAbGroup, IntMatrix};
use gcoh_core::groupoid::{enumerate, FiniteSystem};
use gcoh_core::simplicial::SimplicialComplex;
use gcoh_core::solenoid::{solenoid_table, SolenoidInput};
use gcoh_core::torus::TorusEndo;
use gcoh_oracles as oracle;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(m)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

fn torsion_u64(g: &FgAbGroup) -> Vec<u64> {
    g.torsion().iter().map(|d| d.to_u64().unwrap()).collect()
}

#[test]
fn exterior_powers_match_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let k = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, k, k, 4);
        for n in 0..=k {
            let engine = exterior_power(&to_matrix(&m), n).unwrap();
            assert_eq!(engine, to_matrix(&oracle::exterior_power(&m, n)), "Λ^{} of {:?}", n, m);
        }
    }
}

#[test]
fn cokernels_match_minors_and_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let m = random_matrix(&mut rng, rows, cols, 3);
        let g = cokernel(&to_matrix(&m));
        let (free, torsion) = oracle::quotient_by_minors(&oracle::to_big(&m));
        assert_eq!(g.free_rank(), free, "{:?}", m);
        assert_eq!(g.torsion(), torsion.as_slice(), "{:?}", m);

        let modulus: u64 = torsion.iter().map(|d| d.to_u64().unwrap()).product::<u64>().max(2);
        let ks = oracle::divisors(modulus);
        if let Some(counts) = oracle::kill_counts(&m, modulus, &ks, 200_000) {
            for (k, c) in ks.iter().zip(counts) {
                let expected = k.pow(free as u32) * oracle::kill_count_of(&torsion_u64(&g), *k);
                assert_eq!(c, expected, "k = {} on {:?}", k, m);
            }
        }
    }
}

#[test]
fn truncations_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let sigma: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let sys = FiniteSystem::from_map(sigma.clone()).unwrap();
        let (m, w) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let engine: Vec<_> = enumerate(&sys, m, w)
            .elements()
            .iter()
            .map(|g| (g.x, g.m, g.y, g.k, g.l))
            .collect();
        assert_eq!(engine, oracle::groupoid_elements(&sigma, m, w), "σ = {:?}", sigma);
    }
}

#[test]
fn solenoid_second_group_is_direct_limit() {
    for p in [2i64, 3, 5, 7] {
        for q in 2i64..=12 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let table = solenoid_table(&SolenoidInput::new(p, q).unwrap()).unwrap();
            let (order, sizes) = oracle::solenoid_h2_order(p, q, 8);
            assert!(
                sizes.windows(2).skip(3).all(|w| w[0] == w[1]),
                "not stable: {:?}",
                sizes
            );
            let h2 = table.group(2);
            assert_eq!(h2.order(), Some(BigInt::from(order)), "(p, q) = ({}, {})", p, q);
            assert!(h2.torsion().len() <= 1);
        }
    }
}

#[test]
fn circle_coverings_match_closed_form() {
    for d in (-9i64..=9).filter(|d| d.abs() >= 2) {
        let table = TorusEndo::new(IntMatrix::from_rows(&[[d]]))
            .unwrap()
            .groupoid_cohomology()
            .unwrap();
        assert_eq!(table.group(0), FgAbGroup::free(1));
        assert_eq!(table.group(1), FgAbGroup::free(1));
        assert_eq!(table.group(2), FgAbGroup::cyclic((d - 1).abs()));
        assert!(table.brauer_group().is_trivial());
    }
}

#[test]
fn simplicial_cohomology_matches_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let v = rng.gen_range(3..=8);
        let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=8))
            .map(|_| {
                let mut all: Vec<usize> = (0..v).collect();
                all.shuffle(&mut rng);
                all.truncate(rng.gen_range(1..=4));
                all
            })
            .collect();
        let labels: Vec<String> = (0..v).map(|i| i.to_string()).collect();
        let named: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|i| i.to_string()).collect())
            .collect();
        let h = SimplicialComplex::from_simplices(&labels, &named)
            .unwrap()
            .cochain_complex()
            .cohomology_groups()
            .unwrap();
        let betti = oracle::betti(v, &facets);
        assert_eq!(h.iter().map(FgAbGroup::free_rank).collect::<Vec<_>>(), betti);
        for p in [2i64, 3, 5] {
            let t = |n: usize| {
                h.get(n).map_or(0, |g| {
                    g.torsion().iter().filter(|d| (*d % p) == BigInt::from(0)).count()
                })
            };
            let expected: Vec<usize> = (0..betti.len()).map(|n| betti[n] + t(n) + t(n + 1)).collect();
            assert_eq!(oracle::mod_p_dims(v, &facets, p), expected, "p = {} on {:?}", p, facets);
        }
    }
}
