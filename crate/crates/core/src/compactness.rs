//! Finite compactness probes: unsolvable cores and the smallest unsolvable
//! subsystem.
//!
//! For nontrivial solvability every subsystem of a solvable system is
//! solvable, so the unsolvable subsystems are closed upwards and a single
//! deletion pass yields a core that is minimal under single deletions. Weak
//! solvability has no such monotonicity in either direction; the weak-mode
//! searches therefore re-check every deletion and enumerate without pruning,
//! which is exponential in the number of equations.

use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::iter::{ParallelBridge, ParallelIterator};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{presentation_to_system, Presentation};
use crate::solver::solve;
use crate::system::{Equation, Mode, System};

/// Default limit on the number of equations for exact subset enumeration.
pub const DEFAULT_SEARCH_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    pub mode: Mode,
    /// Sorted equation indices into the original system.
    pub core_indices: Vec<usize>,
    pub locally_minimal: bool,
}

impl CoreReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("core report serializes")
    }
}

fn unsolvable(system: &System, indices: &[usize], mode: Mode) -> bool {
    let sub = system.subsystem(indices.iter().copied()).expect("indices in range");
    !solve(&sub, mode).is_solvable()
}

fn compare_equations(a: &Equation, b: &Equation) -> Ordering {
    // Dense lexicographic comparison over variable indices.
    let keys = a.terms().keys().chain(b.terms().keys()).copied().sorted().dedup();
    for j in keys {
        match a.coefficient(j).cmp(&b.coefficient(j)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// The order in which [`minimal_core`] tries deletions: by coefficient row,
/// lexicographically ascending in declared variable order, with equal rows
/// taken in descending index order. The order depends only on the equations
/// themselves, so listing them differently yields the same core.
pub fn deletion_order(system: &System) -> Vec<usize> {
    let eqs = system.equations();
    let mut order: Vec<usize> = (0..eqs.len()).collect();
    order.sort_by(|&i, &j| compare_equations(&eqs[i], &eqs[j]).then(j.cmp(&i)));
    order
}

/// Deletion-based extraction of an unsolvable core, or `None` when the whole
/// system is solvable in `mode`.
pub fn minimal_core(system: &System, mode: Mode) -> Option<CoreReport> {
    let all: Vec<usize> = (0..system.equations().len()).collect();
    if !unsolvable(system, &all, mode) {
        return None;
    }
    let order = deletion_order(system);
    let mut core = all;
    loop {
        let before = core.len();
        for &i in &order {
            if !core.contains(&i) {
                continue;
            }
            let candidate: Vec<usize> = core.iter().copied().filter(|&k| k != i).collect();
            if unsolvable(system, &candidate, mode) {
                core = candidate;
            }
        }
        // One pass suffices when unsolvability is closed upwards.
        if mode == Mode::Nontrivial || core.len() == before {
            break;
        }
    }
    let locally_minimal = core.iter().all(|&i| {
        let rest: Vec<usize> = core.iter().copied().filter(|&k| k != i).collect();
        !unsolvable(system, &rest, mode)
    });
    Some(CoreReport {
        mode,
        core_indices: core,
        locally_minimal,
    })
}

/// Whether `report` describes an unsolvable subsystem all of whose single
/// deletions are solvable.
pub fn verify_core(system: &System, report: &CoreReport) -> bool {
    let core = &report.core_indices;
    unsolvable(system, core, report.mode)
        && core.iter().all(|&i| {
            let rest: Vec<usize> = core.iter().copied().filter(|&k| k != i).collect();
            !unsolvable(system, &rest, report.mode)
        })
}

fn some_subset_unsolvable(system: &System, k: usize, mode: Mode) -> bool {
    (0..system.equations().len())
        .combinations(k)
        .par_bridge()
        .any(|subset| unsolvable(system, &subset, mode))
}

/// Least cardinality of a nonempty unsolvable subsystem, or `None` if there is
/// none. Exact; refuses systems with more than `bound` equations.
pub fn min_unsolvable_size(system: &System, mode: Mode, bound: usize) -> Result<Option<usize>> {
    let m = system.equations().len();
    if m > bound {
        return Err(Error::SearchBoundExceeded { bound, equations: m });
    }
    match mode {
        Mode::Nontrivial => {
            // Subsystems of a solvable system are solvable, and any core bounds the minimum.
            let Some(core) = minimal_core(system, mode) else {
                return Ok(None);
            };
            let upper = core.core_indices.len();
            Ok(Some(
                (1..upper)
                    .find(|&k| some_subset_unsolvable(system, k, mode))
                    .unwrap_or(upper),
            ))
        }
        Mode::Weak => Ok((1..=m).find(|&k| some_subset_unsolvable(system, k, mode))),
    }
}

/// Upper estimate of [`min_unsolvable_size`] for systems too large for exact
/// search: for each size, tests `samples` random subsets and returns the
/// first size at which one of them is unsolvable. Deterministic for a seed.
pub fn sample_unsolvable_size(system: &System, mode: Mode, samples: usize, seed: u64) -> Option<usize> {
    let m = system.equations().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=m).find(|&k| {
        (0..samples).any(|_| {
            let mut subset = sample(&mut rng, m, k).into_vec();
            subset.sort_unstable();
            unsolvable(system, &subset, mode)
        })
    })
}

/// Divisibility chain `xᵢ − p·xᵢ₊₁ = 0` for `0 ≤ i < n` over `x0, …, xn`.
pub fn gen_chain(n: usize, p: impl Into<BigInt>) -> Result<System> {
    let p = p.into();
    if n < 1 {
        return Err(Error::InvalidParameter("chain length must be at least 1".into()));
    }
    if p < BigInt::from(2) {
        return Err(Error::InvalidParameter("chain multiplier must be at least 2".into()));
    }
    let variables = (0..=n).map(|i| format!("x{i}")).collect();
    let equations = (0..n)
        .map(|i| Equation::new([(i, BigInt::from(1)), (i + 1, -p.clone())]))
        .collect();
    Ok(System::new(variables, equations)?.with_name(format!("chain-{n}-{p}")))
}

/// Transcribes each relation of `p` into an equation over the generators.
/// When `p` has a trivial dual the result has no weak solution.
pub fn gen_from_presentation(p: &Presentation) -> System {
    presentation_to_system(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::IntMatrix;
    use crate::solver::solve_nontrivial;
    use crate::system::parse_system;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn core_of_three_equations() {
        let s = parse_system("x + y = 0\nx - y = 0\nx + 3*y = 0").unwrap();
        assert_eq!(deletion_order(&s), vec![1, 0, 2]);
        let core = minimal_core(&s, Mode::Nontrivial).unwrap();
        assert_eq!(core.core_indices, vec![0, 2]);
        assert!(core.locally_minimal);
        assert!(verify_core(&s, &core));
    }

    #[test]
    fn core_is_independent_of_listing_order() {
        let s = parse_system("x + 3*y = 0\nx + y = 0\nx - y = 0").unwrap();
        let core = minimal_core(&s, Mode::Nontrivial).unwrap();
        let picked: Vec<String> = core
            .core_indices
            .iter()
            .map(|&i| s.subsystem([i]).unwrap().to_string())
            .collect();
        assert_eq!(picked, ["vars: x y\nx + 3*y = 0\n", "vars: x y\nx + y = 0\n"]);
    }

    #[test]
    fn core_single_and_none() {
        let s = parse_system("2*x = 0").unwrap();
        assert_eq!(minimal_core(&s, Mode::Nontrivial).unwrap().core_indices, vec![0]);
        let chain = gen_chain(3, 2).unwrap();
        assert!(minimal_core(&chain, Mode::Nontrivial).is_none());
    }

    #[test]
    fn weak_core() {
        let s = parse_system("x + y = 0\nx - y = 0\nz - w = 0").unwrap();
        assert!(minimal_core(&s, Mode::Weak).is_none());
        let s = parse_system("x + y = 0\nx - y = 0\n3*x + y = 0").unwrap();
        let core = minimal_core(&s, Mode::Weak).unwrap();
        assert!(verify_core(&s, &core));
        assert_eq!(core.core_indices.len(), 2);
    }

    #[test]
    fn min_size_examples() {
        let s = parse_system("x + y = 0\nx - y = 0").unwrap();
        assert_eq!(min_unsolvable_size(&s, Mode::Nontrivial, 20).unwrap(), Some(2));
        let s = parse_system("2*x = 0").unwrap();
        assert_eq!(min_unsolvable_size(&s, Mode::Nontrivial, 20).unwrap(), Some(1));
        let chain = gen_chain(5, 3).unwrap();
        assert_eq!(min_unsolvable_size(&chain, Mode::Nontrivial, 20).unwrap(), None);
        assert!(matches!(
            min_unsolvable_size(&chain, Mode::Nontrivial, 4),
            Err(Error::SearchBoundExceeded { bound: 4, equations: 5 })
        ));
    }

    #[test]
    fn weak_min_size_without_pruning() {
        // The whole system is weakly solvable but its first two equations are not.
        let s = parse_system("x + y = 0\nx - y = 0\nz - w = 0").unwrap();
        assert_eq!(min_unsolvable_size(&s, Mode::Weak, 20).unwrap(), Some(2));
        assert_eq!(min_unsolvable_size(&s, Mode::Nontrivial, 20).unwrap(), Some(2));
    }

    #[test]
    fn sampled_estimate_bounds_exact() {
        let s = parse_system("x + y = 0\nx - y = 0\nz - w = 0\nz + w = 0\nu - 2*v = 0").unwrap();
        let exact = min_unsolvable_size(&s, Mode::Nontrivial, 20).unwrap().unwrap();
        let est = sample_unsolvable_size(&s, Mode::Nontrivial, 64, 7).unwrap();
        assert!(est >= exact);
        assert_eq!(sample_unsolvable_size(&s, Mode::Nontrivial, 64, 7), Some(est));
    }

    #[test]
    fn chain_examples() {
        let c = gen_chain(1, 2).unwrap();
        assert_eq!(c.to_string(), "name: chain-1-2\nvars: x0 x1\nx0 - 2*x1 = 0\n");

        let c = gen_chain(3, 2).unwrap();
        assert_eq!(c.equations().len(), 3);
        let w = solve_nontrivial(&c).witness.unwrap();
        assert!(w.assignment["x0"].is_multiple_of(&BigInt::from(8)));

        let c = gen_chain(2, 3).unwrap();
        let values: Vec<BigInt> = [9, 3, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(c.satisfied_by(&values));

        assert!(gen_chain(0, 2).is_err());
        assert!(gen_chain(2, 1).is_err());
    }

    #[test]
    fn from_presentation_examples() {
        let z2 = Presentation::new(1, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let s = gen_from_presentation(&z2);
        assert!(!solve(&s, Mode::Weak).is_solvable());

        let p = Presentation::new(2, IntMatrix::from_i64(2, 2, &[1, 1, 1, -1])).unwrap();
        let s = gen_from_presentation(&p);
        assert!(!solve(&s, Mode::Weak).is_solvable());
        for i in 0..2 {
            assert!(solve_nontrivial(&s.subsystem([i]).unwrap()).is_solvable());
        }
        assert_eq!(min_unsolvable_size(&s, Mode::Nontrivial, 20).unwrap(), Some(2));

        let s = gen_from_presentation(&Presentation::free(2));
        assert!(s.is_empty());
        assert!(solve_nontrivial(&s).is_solvable());
    }

    fn small_system() -> impl Strategy<Value = System> {
        (1usize..=6, 1usize..=4).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), m).prop_map(move |rows| {
                let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                System::from_rows((0..n).map(|i| format!("x{i}")).collect(), &rows).unwrap()
            })
        })
    }

    fn all_cores(s: &System, mode: Mode) -> Vec<Vec<usize>> {
        let m = s.equations().len();
        (1..=m)
            .flat_map(|k| (0..m).combinations(k))
            .filter(|t| {
                unsolvable(s, t, mode)
                    && (0..t.len()).all(|i| {
                        let mut rest = t.clone();
                        rest.remove(i);
                        !unsolvable(s, &rest, mode)
                    })
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn min_size_is_smallest_core(s in small_system()) {
            for mode in [Mode::Nontrivial, Mode::Weak] {
                let cores = all_cores(&s, mode);
                let smallest = cores.iter().map(Vec::len).min();
                prop_assert_eq!(min_unsolvable_size(&s, mode, 20).unwrap(), smallest);
                if let Some(report) = minimal_core(&s, mode) {
                    prop_assert!(report.locally_minimal);
                    prop_assert!(verify_core(&s, &report));
                    prop_assert!(cores.contains(&report.core_indices));
                }
            }
        }

        #[test]
        fn nontrivial_core_exists_iff_unsolvable(s in small_system()) {
            let solvable = solve(&s, Mode::Nontrivial).is_solvable();
            prop_assert_eq!(minimal_core(&s, Mode::Nontrivial).is_none(), solvable);
        }

        #[test]
        fn cores_ignore_listing_order(s in small_system(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let mut order: Vec<usize> = (0..s.equations().len()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let shuffled = System::new(
                s.variables().to_vec(),
                order.iter().map(|&i| s.equations()[i].clone()).collect(),
            ).unwrap();
            let picked = |sys: &System| minimal_core(sys, Mode::Nontrivial).map(|r| {
                let mut eqs: Vec<String> = r.core_indices.iter().map(|&i| sys.equation_to_string(i)).collect();
                eqs.sort();
                eqs
            });
            prop_assert_eq!(picked(&s), picked(&shuffled));
        }
    }
}
