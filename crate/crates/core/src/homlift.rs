//! Homomorphisms that avoid prescribed values.
//!
//! Given a free module `M` with generators `g₀, …, g_{n-1}` and finitely many
//! constraints `(a, z)` with `a ∈ M` nonzero, [`avoid_hom`] builds
//! `ψ : M → R` with `ψ(a) ≠ z` for every constraint. The values `ψ(gₙ)` are
//! fixed one generator at a time. At step `n` only the constraints whose
//! support ends at index `n` are consulted: all their other coordinates are
//! already decided, so each of them forbids at most one value of `ψ(gₙ)`
//! (its top coefficient is nonzero and `R` is a domain). Because `R` is
//! infinite, walking its enumeration always reaches an allowed value.
//!
//! [`nontrivial_solution_via_filtration`] feeds this procedure with the images
//! of the variables in the free quotient of `ℤ^X` by the relation lattice of a
//! system, with every forbidden value equal to zero. The resulting `ψ` is
//! nonzero on every variable, which is a nontrivial solution.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{hnf, lattice_member, snf, IntMatrix};
use crate::json::{self, JsonInt};
use crate::system::{Mode, System, Witness};

/// An infinite integral domain with an enumeration of pairwise distinct
/// elements.
pub trait InfiniteDomain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Never repeats and never ends.
    fn distinct_elements() -> impl Iterator<Item = Self>;
}

/// Enumerated as `0, 1, -1, 2, -2, …`.
impl InfiniteDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn distinct_elements() -> impl Iterator<Item = Self> {
        std::iter::once(BigInt::from(0)).chain((1u64..).flat_map(|k| [BigInt::from(k), -BigInt::from(k)]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint<R = BigInt> {
    pub a: Vec<R>,
    pub z: R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceProblem<R = BigInt> {
    pub free_rank: usize,
    pub constraints: Vec<Constraint<R>>,
}

impl<R: InfiniteDomain> AvoidanceProblem<R> {
    fn validate(&self) -> Result<()> {
        for (i, c) in self.constraints.iter().enumerate() {
            if c.a.len() != self.free_rank {
                return Err(Error::DimensionMismatch {
                    expected: self.free_rank,
                    found: c.a.len(),
                });
            }
            if c.a.iter().all(R::is_zero) {
                return Err(Error::ZeroConstraint { index: i });
            }
        }
        Ok(())
    }

    /// Constraint indices grouped by the largest index in their support, each
    /// group in input order. Group `n` is exactly what step `n` consults.
    pub fn support_buckets(&self) -> Result<Vec<Vec<usize>>> {
        self.validate()?;
        let mut buckets = vec![Vec::new(); self.free_rank];
        for (i, c) in self.constraints.iter().enumerate() {
            let top = c.a.iter().rposition(|x| !x.is_zero()).expect("validated nonzero");
            buckets[top].push(i);
        }
        Ok(buckets)
    }
}

impl AvoidanceProblem<BigInt> {
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ProblemJson = serde_json::from_str(text)?;
        Ok(AvoidanceProblem {
            free_rank: dto.free_rank,
            constraints: dto
                .constraints
                .into_iter()
                .map(|c| Constraint {
                    a: json::unwrap(c.a),
                    z: c.z.0,
                })
                .collect(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = ProblemJson {
            free_rank: self.free_rank,
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintJson {
                    a: json::wrap(&c.a),
                    z: JsonInt(c.z.clone()),
                })
                .collect(),
        };
        serde_json::to_value(dto).expect("problem serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct ConstraintJson {
    a: Vec<JsonInt>,
    z: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct ProblemJson {
    free_rank: usize,
    constraints: Vec<ConstraintJson>,
}

/// Greedy construction of `ψ` over any [`InfiniteDomain`]; see the module docs.
pub fn avoid_hom_in<R: InfiniteDomain>(problem: &AvoidanceProblem<R>) -> Result<Vec<R>> {
    let buckets = problem.support_buckets()?;
    let mut psi: Vec<R> = Vec::with_capacity(problem.free_rank);
    for (n, bucket) in buckets.iter().enumerate() {
        // Constraint α forbids every r with b_nα·r = z_α − ∑_{k<n} b_kα·ψ(g_k).
        let targets: Vec<(&R, R)> = bucket
            .iter()
            .map(|&i| {
                let c = &problem.constraints[i];
                let partial = c.a[..n]
                    .iter()
                    .zip(&psi)
                    .fold(R::zero(), |acc, (b, p)| acc.add(&b.mul(p)));
                (&c.a[n], c.z.sub(&partial))
            })
            .collect();
        let value = R::distinct_elements()
            .find(|r| targets.iter().all(|(b, t)| b.mul(r) != *t))
            .expect("an infinite domain always has an allowed value");
        psi.push(value);
    }
    Ok(psi)
}

/// [`avoid_hom_in`] over the integers.
pub fn avoid_hom(problem: &AvoidanceProblem) -> Result<Vec<BigInt>> {
    avoid_hom_in(problem)
}

/// Checks the stricter filtration hypothesis: each `a_α` lies outside the
/// lattice spanned by the earlier ones, so the constraints come from a
/// strictly increasing chain `M_{α+1} = M_α + ⟨a_α⟩`.
pub fn validate_filtration(problem: &AvoidanceProblem) -> Result<()> {
    problem.validate()?;
    let mut earlier = IntMatrix::zeros(0, problem.free_rank);
    for (i, c) in problem.constraints.iter().enumerate() {
        if lattice_member(&c.a, &earlier)? {
            return Err(Error::FiltrationViolation { index: i });
        }
        earlier = earlier.vstack(&IntMatrix::from_rows(problem.free_rank, [c.a.clone()])?)?;
    }
    Ok(())
}

/// A free basis of `ℤⁿ / L` for a relation lattice `L`, with row `α` of
/// `coords` holding the coordinates of the image of the `α`-th generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeQuotient {
    pub rank: usize,
    pub coords: IntMatrix,
}

/// Computes [`FreeQuotient`] for the row lattice of `relation_rows`.
///
/// With `U·R·V = D`, the automorphism `x ↦ x·V` carries the row lattice of
/// `R` onto that of `D`, so the images of the generators are the rows of `V`
/// and the free part is read off the columns beyond the rank. The free basis
/// is then canonicalized by putting the transposed coordinates in Hermite
/// normal form. Fails with `TorsionFound` when some invariant factor exceeds
/// one and with `ZeroImage` when a generator maps to zero.
pub fn free_quotient_basis(ambient_rank: usize, relation_rows: &IntMatrix) -> Result<FreeQuotient> {
    if relation_rows.cols() != ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: ambient_rank,
            found: relation_rows.cols(),
        });
    }
    let s = snf(relation_rows);
    let r = s.rank();
    if let Some(i) = s.invariant_factors.iter().position(|d| !d.is_one()) {
        // e_i·V⁻¹ maps to the i-th diagonal generator, which has order d_i.
        let v_inv = hnf(&s.v).u;
        return Err(Error::TorsionFound {
            order: s.invariant_factors[i].clone(),
            witness: v_inv.row(i).to_vec(),
        });
    }
    let free_cols: Vec<usize> = (r..ambient_rank).collect();
    let raw = s.v.select_cols(&free_cols);
    let canon = hnf(&raw.transpose());
    let coords = canon.h.transpose();

    let zero: Vec<usize> = (0..ambient_rank).filter(|&i| coords.row_is_zero(i)).collect();
    if !zero.is_empty() {
        return Err(Error::ZeroImage { indices: zero });
    }
    Ok(FreeQuotient {
        rank: ambient_rank - r,
        coords,
    })
}

/// Intermediate data of the filtration pipeline, kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationSolution {
    pub quotient: FreeQuotient,
    pub psi: Vec<BigInt>,
    pub witness: Witness,
}

impl FiltrationSolution {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quotient_rank": self.quotient.rank,
            "images": (0..self.quotient.coords.rows())
                .map(|i| json::wrap(self.quotient.coords.row(i)))
                .collect::<Vec<_>>(),
            "psi": json::wrap(&self.psi),
            "witness": self.witness.to_json(),
        })
    }
}

/// Nontrivial solution of `system` through the free quotient of its relation
/// lattice, with generators filtered in variable order and every forbidden
/// value zero. With `strict`, the images must also form a strictly
/// increasing filtration.
pub fn solve_via_filtration(system: &System, strict: bool) -> Result<FiltrationSolution> {
    let (a, vars) = system.coefficient_matrix();
    let quotient = free_quotient_basis(vars.len(), &a)?;
    let problem = AvoidanceProblem {
        free_rank: quotient.rank,
        constraints: (0..quotient.coords.rows())
            .map(|i| Constraint {
                a: quotient.coords.row(i).to_vec(),
                z: BigInt::from(0),
            })
            .collect(),
    };
    if strict {
        validate_filtration(&problem)?;
    }
    let psi = avoid_hom(&problem)?;
    let values = quotient.coords.mul_vec(&psi)?;
    let witness = Witness::from_values(Mode::Nontrivial, system, &values);
    assert!(witness.verify(system), "filtration witness failed substitution");
    Ok(FiltrationSolution {
        quotient,
        psi,
        witness,
    })
}

pub fn nontrivial_solution_via_filtration(system: &System) -> Result<Witness> {
    solve_via_filtration(system, false).map(|s| s.witness)
}
