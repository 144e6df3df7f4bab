//! Deciding solvability in ℤ.
//!
//! Every integer solution of `A·x = 0` lies in the saturated kernel lattice
//! of `A`. A system is nontrivially solvable exactly when no variable's
//! coordinate vanishes on the whole lattice: if none does, the finitely many
//! hyperplanes `xⱼ = 0` can be avoided by an integer combination of basis
//! vectors, which [`all_nonzero_combination`] constructs explicitly. Weak
//! solvability only needs the kernel lattice to be nonzero.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{kernel_basis, KernelBasis};
use crate::json::JsonInt;
use crate::system::{Mode, System, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solvable,
    Unsolvable,
}

/// Variables whose coordinate is zero on every kernel vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsolvabilityCertificate {
    pub mode: Mode,
    pub dead_variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub mode: Mode,
    pub status: Status,
    pub witness: Option<Witness>,
    pub certificate: Option<UnsolvabilityCertificate>,
}

impl SolveReport {
    fn solvable(witness: Witness) -> Self {
        SolveReport {
            mode: witness.kind,
            status: Status::Solvable,
            witness: Some(witness),
            certificate: None,
        }
    }

    fn unsolvable(mode: Mode, dead_variables: Vec<String>) -> Self {
        SolveReport {
            mode,
            status: Status::Unsolvable,
            witness: None,
            certificate: Some(UnsolvabilityCertificate { mode, dead_variables }),
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.status == Status::Solvable
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = ReportJson {
            status: self.status,
            mode: self.mode,
            witness: self
                .witness
                .as_ref()
                .map(|w| w.assignment.iter().map(|(k, v)| (k.clone(), JsonInt(v.clone()))).collect()),
            dead_variables: self.certificate.as_ref().map(|c| c.dead_variables.clone()),
        };
        serde_json::to_value(dto).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<SolveReport> {
        let dto: ReportJson = serde_json::from_str(text)?;
        let report = match (dto.status, dto.witness, dto.dead_variables) {
            (Status::Solvable, Some(w), None) => SolveReport::solvable(Witness {
                kind: dto.mode,
                assignment: w.into_iter().map(|(k, v)| (k, v.0)).collect(),
            }),
            (Status::Unsolvable, None, Some(dead)) => SolveReport::unsolvable(dto.mode, dead),
            _ => {
                return Err(Error::InvalidParameter(
                    "report must carry a witness when solvable and dead_variables when unsolvable".into(),
                ))
            }
        };
        Ok(report)
    }
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    status: Status,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<indexmap::IndexMap<String, JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dead_variables: Option<Vec<String>>,
}

pub fn solve(system: &System, mode: Mode) -> SolveReport {
    match mode {
        Mode::Nontrivial => solve_nontrivial(system),
        Mode::Weak => solve_weak(system),
    }
}

/// Looks for an assignment with every variable nonzero.
pub fn solve_nontrivial(system: &System) -> SolveReport {
    let n = system.variables().len();
    if system.is_empty() {
        let ones = vec![BigInt::one(); n];
        return SolveReport::solvable(Witness::from_values(Mode::Nontrivial, system, &ones));
    }
    let kernel = kernel_basis(&system.coefficient_matrix().0);
    let appearing = system.appearing();
    let dead: Vec<String> = kernel
        .dead_coordinates()
        .into_iter()
        .filter(|j| appearing.contains(j))
        .map(|j| system.variables()[j].clone())
        .collect();
    if !dead.is_empty() {
        return SolveReport::unsolvable(Mode::Nontrivial, dead);
    }
    let mut values = all_nonzero_combination(&kernel, &appearing)
        .expect("coordinates are in range")
        .expect("no appearing coordinate is dead");
    for (j, x) in values.iter_mut().enumerate() {
        if !appearing.contains(&j) {
            *x = BigInt::one();
        }
    }
    let witness = Witness::from_values(Mode::Nontrivial, system, &values);
    assert!(witness.verify(system), "nontrivial witness failed substitution");
    SolveReport::solvable(witness)
}

/// Looks for an assignment that is not identically zero.
///
/// A kernel vector that is nonzero on an appearing variable is preferred, with
/// declared-but-unused variables set to 0. Unused variables are unconstrained,
/// so when every appearing coordinate is dead they alone make the system
/// weakly solvable (they are set to 1). This keeps weak solvability of a
/// translated presentation equivalent to a nonzero dual.
pub fn solve_weak(system: &System) -> SolveReport {
    let n = system.variables().len();
    if system.is_empty() {
        let ones = vec![BigInt::one(); n];
        return SolveReport::solvable(Witness::from_values(Mode::Weak, system, &ones));
    }
    let kernel = kernel_basis(&system.coefficient_matrix().0);
    let appearing = system.appearing();
    let found = kernel
        .vectors
        .iter()
        .find(|v| appearing.iter().any(|&j| !v[j].is_zero()));
    let values: Vec<BigInt> = match found {
        Some(v) => v
            .iter()
            .enumerate()
            .map(|(j, x)| if appearing.contains(&j) { x.clone() } else { BigInt::zero() })
            .collect(),
        None if appearing.len() < n => (0..n)
            .map(|j| if appearing.contains(&j) { BigInt::zero() } else { BigInt::one() })
            .collect(),
        None => {
            let dead = appearing.iter().map(|&j| system.variables()[j].clone()).collect();
            return SolveReport::unsolvable(Mode::Weak, dead);
        }
    };
    let witness = Witness::from_values(Mode::Weak, system, &values);
    assert!(witness.verify(system), "weak witness failed substitution");
    SolveReport::solvable(witness)
}

/// Finds a lattice vector that is nonzero in every `required` coordinate.
///
/// Starts from the first basis vector. For each required coordinate that is
/// still zero, adds `m·b` where `b` is the first basis vector nonzero there
/// and `m` is the least positive integer that does not zero out a required
/// coordinate fixed earlier. Returns `None` iff some required coordinate is
/// zero on every basis vector.
pub fn all_nonzero_combination(basis: &KernelBasis, required: &BTreeSet<usize>) -> Result<Option<Vec<BigInt>>> {
    let dim = basis.ambient_dim;
    if let Some(&j) = required.iter().find(|&&j| j >= dim) {
        return Err(Error::IndexOutOfRange { index: j, len: dim });
    }
    let mut v = basis
        .vectors
        .first()
        .cloned()
        .unwrap_or_else(|| vec![BigInt::zero(); dim]);

    for &c in required {
        if !v[c].is_zero() {
            continue;
        }
        let Some(b) = basis.vectors.iter().find(|b| !b[c].is_zero()) else {
            return Ok(None);
        };
        // m is forbidden when v[d] + m·b[d] = 0 for an already nonzero required d.
        let forbidden: BTreeSet<BigInt> = required
            .iter()
            .filter(|&&d| !v[d].is_zero() && !b[d].is_zero())
            .filter_map(|&d| {
                let (q, r) = num_integer::Integer::div_rem(&-&v[d], &b[d]);
                r.is_zero().then_some(q)
            })
            .collect();
        let mut m = BigInt::one();
        while forbidden.contains(&m) {
            m += 1;
        }
        for (x, y) in v.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += &m * y;
            }
        }
    }
    Ok(Some(v))
}
