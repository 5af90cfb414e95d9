//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub s: usize,
    pub t: usize,
    pub seed: u64,
    pub wmax: u64,
    pub capmax: u32,
}

/// Draws weights uniformly from `[0, wmax]` and builds bounds that admit a
/// saturating matching by construction:
///
/// * every row gets a capacity target in `[1, capmax]` and every column a
///   target in `[1, capmax]`;
/// * pairs are visited in random order over three rounds, and each visit
///   may lay one unit on the pair as a demand-demand, demand-spare or
///   spare-demand unit, never repeating a kind on the same pair;
/// * unused row capacity becomes spare capacity that no column needs,
///   column capacities shrink to what was used;
/// * half the seeds build the transposed instance and flip it back, so
///   either side can be the larger one.
///
/// The demands are exactly the demand units laid, so the result always
/// passes `validate_instance` and is solvable.
pub fn generate_instance(p: &GenParams) -> Instance {
    assert!(p.s > 0 && p.t > 0, "sizes must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let capmax = p.capmax.max(1);

    let weights: Vec<u64> = (0..p.s * p.t)
        .map(|_| rng.random_range(0..=p.wmax))
        .collect();
    let flip = rng.random_bool(0.5);
    let (rows, cols) = if flip { (p.t, p.s) } else { (p.s, p.t) };

    let target_r: Vec<u32> = (0..rows).map(|_| rng.random_range(1..=capmax)).collect();
    let target_c: Vec<u32> = (0..cols).map(|_| rng.random_range(1..=capmax)).collect();
    let mut used_r = vec![0u32; rows];
    let mut used_c = vec![0u32; cols];
    let mut demand_r = vec![0u32; rows];
    let mut demand_c = vec![0u32; cols];
    let mut kinds = vec![[false; 3]; rows * cols];

    let mut pairs: Vec<usize> = (0..rows * cols).collect();
    for _ in 0..3 {
        pairs.shuffle(&mut rng);
        for &k in &pairs {
            let (i, j) = (k / cols, k % cols);
            if used_r[i] == target_r[i] || used_c[j] == target_c[j] || !rng.random_bool(0.6) {
                continue;
            }
            let open: Vec<usize> = (0..3).filter(|&q| !kinds[k][q]).collect();
            let Some(&kind) = open.get(rng.random_range(0..open.len().max(1))) else {
                continue;
            };
            kinds[k][kind] = true;
            used_r[i] += 1;
            used_c[j] += 1;
            if kind != 2 {
                demand_r[i] += 1;
            }
            if kind != 1 {
                demand_c[j] += 1;
            }
        }
    }
    let cap_r = target_r;
    let cap_c = used_c;

    let inst = Instance::new(
        (0..rows).map(|_| vec![0; cols]).collect(),
        demand_r,
        cap_r,
        demand_c,
        cap_c,
    )
    .expect("generated shapes are consistent");
    let bounds = if flip { inst.transposed() } else { inst };
    Instance::from_flat(
        p.s,
        p.t,
        weights,
        bounds.demand_a().to_vec(),
        bounds.cap_a().to_vec(),
        bounds.demand_b().to_vec(),
        bounds.cap_b().to_vec(),
    )
    .expect("generated shapes are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    fn params(seed: u64) -> GenParams {
        GenParams {
            s: 4,
            t: 3,
            seed,
            wmax: 20,
            capmax: 3,
        }
    }

    #[test]
    fn same_seed_same_instance() {
        assert_eq!(generate_instance(&params(7)), generate_instance(&params(7)));
        assert_ne!(generate_instance(&params(7)), generate_instance(&params(8)));
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..1000 {
            for (s, t) in [(1, 1), (1, 5), (5, 1), (3, 3), (7, 2)] {
                let inst = generate_instance(&GenParams {
                    s,
                    t,
                    seed,
                    wmax: 9,
                    capmax: 4,
                });
                let r = validate_instance(&inst);
                assert!(r.passed(), "seed {seed} {s}x{t}: {r}");
            }
        }
    }

    #[test]
    fn ranges_are_respected() {
        for seed in 0..50 {
            let inst = generate_instance(&GenParams {
                s: 6,
                t: 5,
                seed,
                wmax: 5,
                capmax: 2,
            });
            assert!((0..6).all(|i| inst.row(i).iter().all(|&w| w <= 5)));
            assert!(inst.cap_a().iter().chain(inst.cap_b()).all(|&c| c <= 2));
        }
    }

    #[test]
    fn generated_instances_are_solvable() {
        for seed in 0..300 {
            for (s, t) in [(1, 1), (1, 4), (4, 1), (3, 3), (6, 2)] {
                let inst = generate_instance(&GenParams {
                    s,
                    t,
                    seed,
                    wmax: 9,
                    capmax: 3,
                });
                assert!(
                    crate::solver::solve_mmdc(&inst).is_ok(),
                    "seed {seed} {s}x{t}"
                );
            }
        }
    }
}
