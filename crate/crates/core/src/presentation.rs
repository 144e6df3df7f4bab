//! Finitely presented abelian groups `A = F/K` and their duals.
//!
//! A [`Presentation`] stores `K` by generators, one row per relation,
//! expressed in the free generators of `F`. Translating a presentation into
//! a system (one variable per generator, one equation per relation) turns
//! homomorphisms `A → ℤ` into integer solutions of the system, so the dual
//! `Hom(A, ℤ)` vanishes exactly when the system has no weak solution.
//!
//! `.zpres` text format:
//!
//! ```text
//! gens: 2
//! names: a b        # optional, defaults to e0 e1 ...
//! 2*a - b
//! a + b = 0         # a trailing `= 0` is allowed
//! ```

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{kernel_basis, lattice_member, snf, IntMatrix, KernelBasis};
use crate::json::{self, JsonInt};
use crate::system::{is_ident, strip_comment, write_linear_form, Cursor, System, Warning};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n_generators: usize,
    relations: IntMatrix,
    generator_names: Option<Vec<String>>,
}

impl Presentation {
    /// Builds a presentation, dropping all-zero relation rows.
    pub fn new(n_generators: usize, relations: IntMatrix) -> Result<Self> {
        Ok(Self::new_with_warnings(n_generators, relations)?.0)
    }

    pub fn new_with_warnings(n_generators: usize, relations: IntMatrix) -> Result<(Self, Vec<Warning>)> {
        if relations.cols() != n_generators {
            return Err(Error::DimensionMismatch {
                expected: n_generators,
                found: relations.cols(),
            });
        }
        let mut warnings = Vec::new();
        let keep: Vec<usize> = (0..relations.rows())
            .filter(|&i| {
                let zero = relations.row_is_zero(i);
                if zero {
                    warnings.push(Warning {
                        line: i + 1,
                        message: format!("relation {i} is zero and was dropped"),
                    });
                }
                !zero
            })
            .collect();
        let p = Presentation {
            n_generators,
            relations: relations.select_rows(&keep),
            generator_names: None,
        };
        Ok((p, warnings))
    }

    /// The free group of rank `n`.
    pub fn free(n: usize) -> Self {
        Presentation {
            n_generators: n,
            relations: IntMatrix::zeros(0, n),
            generator_names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_generators {
            return Err(Error::DimensionMismatch {
                expected: self.n_generators,
                found: names.len(),
            });
        }
        self.generator_names = Some(names);
        Ok(self)
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_names(&self) -> Option<&[String]> {
        self.generator_names.as_deref()
    }

    /// Explicit names, or `prefix0, prefix1, …`.
    fn names_or(&self, prefix: &str) -> Vec<String> {
        match &self.generator_names {
            Some(n) => n.clone(),
            None => (0..self.n_generators).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// Generators that already lie in `K`. A presentation is expected to
    /// have none; callers decide whether to warn.
    pub fn generators_in_relations(&self) -> Vec<usize> {
        (0..self.n_generators)
            .filter(|&i| {
                let mut e = vec![BigInt::zero(); self.n_generators];
                e[i] = BigInt::one();
                lattice_member(&e, &self.relations).expect("unit vector has ambient length")
            })
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.n_generators)?;
        let names = self.names_or("e");
        if self.generator_names.is_some() {
            writeln!(f, "names: {}", names.join(" "))?;
        }
        for i in 0..self.relations.rows() {
            let row = self.relations.row(i);
            write_linear_form(
                f,
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (names[j].as_str(), c)),
            )?;
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let (p, warnings) = parse_presentation_with_warnings(text)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(p)
}

pub fn parse_presentation_with_warnings(text: &str) -> Result<(Presentation, Vec<Warning>)> {
    let mut n: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut warnings = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let header_err = |message: String| Error::Syntax {
            line: line_no,
            column: 1,
            message,
        };
        if let Some(rest) = line.strip_prefix("gens:") {
            if n.is_some() {
                return Err(header_err("`gens:` given twice".into()));
            }
            n = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| header_err("`gens:` expects a nonnegative integer".into()))?,
            );
            continue;
        }
        let Some(count) = n else {
            return Err(header_err("expected a `gens: n` header first".into()));
        };
        if let Some(rest) = line.strip_prefix("names:") {
            if names.is_some() || !rows.is_empty() {
                return Err(header_err("`names:` must appear once, before any relation".into()));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.len() != count {
                return Err(header_err(format!("expected {count} names, found {}", list.len())));
            }
            if let Some(bad) = list.iter().find(|v| !is_ident(v)) {
                return Err(header_err(format!("`{bad}` is not a valid generator name")));
            }
            names = Some(list);
            continue;
        }

        let index: HashMap<String, usize> = match &names {
            Some(list) => list.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect(),
            None => (0..count).map(|i| (format!("e{i}"), i)).collect(),
        };
        let mut cur = Cursor::new(line, line_no);
        let terms = cur.linear_form()?;
        if cur.eat('=') {
            match cur.signed_integer() {
                Some(k) if k.is_zero() => {}
                Some(k) => return Err(Error::Nonhomogeneous { line: line_no, rhs: k }),
                None => return Err(cur.error("right-hand side must be 0")),
            }
        }
        if !cur.at_end() {
            return Err(cur.error("unexpected input after relation"));
        }
        let mut row = vec![BigInt::zero(); count];
        for (name, coef, column) in terms {
            let j = *index.get(&name).ok_or_else(|| Error::Syntax {
                line: line_no,
                column,
                message: format!("unknown generator `{name}`"),
            })?;
            row[j] += coef;
        }
        rows.push((line_no, row));
    }

    let count = n.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `gens: n` header".into(),
    })?;
    let mut kept = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        if row.iter().all(Zero::is_zero) {
            warnings.push(Warning {
                line,
                message: "relation reduces to 0 and was dropped".into(),
            });
        } else {
            kept.push(row);
        }
    }
    let mut p = Presentation::new(count, IntMatrix::from_rows(count, kept)?)?;
    p.generator_names = names;
    Ok((p, warnings))
}

/// Structure of `A = F/K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInfo {
    /// Torsion invariant factors, each greater than one.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    /// Rank of `Hom(A, ℤ)`.
    pub dual_rank: usize,
}

impl GroupInfo {
    pub fn has_trivial_dual(&self) -> bool {
        self.dual_rank == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dto {
            invariant_factors: Vec<JsonInt>,
            free_rank: usize,
            dual_rank: usize,
        }
        serde_json::to_value(Dto {
            invariant_factors: json::wrap(&self.invariant_factors),
            free_rank: self.free_rank,
            dual_rank: self.dual_rank,
        })
        .expect("group info serializes")
    }
}

impl fmt::Display for GroupInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} (dual rank {})", parts.join(" + "), self.dual_rank)
    }
}

pub fn analyze(p: &Presentation) -> GroupInfo {
    let s = snf(&p.relations);
    let free_rank = p.n_generators - s.rank();
    GroupInfo {
        invariant_factors: s.invariant_factors.into_iter().filter(|d| !d.is_one()).collect(),
        free_rank,
        dual_rank: free_rank,
    }
}

/// A basis of `Hom(A, ℤ)`: the integer vectors `φ` with `R·φ = 0`, where the
/// rows of `R` are the relations.
pub fn dual_basis(p: &Presentation) -> KernelBasis {
    kernel_basis(&p.relations)
}

/// One variable per generator and one equation `∑ aⱼ·xⱼ = 0` per relation.
/// Unnamed generators become `x0, x1, …`.
pub fn presentation_to_system(p: &Presentation) -> System {
    let rows = p.relations.row_vecs();
    System::from_rows(p.names_or("x"), &rows).expect("relation rows match generator count")
}

pub fn system_to_presentation(s: &System) -> Presentation {
    let (m, vars) = s.coefficient_matrix();
    Presentation {
        n_generators: vars.len(),
        relations: m,
        generator_names: Some(vars),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_weak, Status};
    use crate::system::parse_system;
    use proptest::prelude::*;

    fn pres(n: usize, rows: usize, data: &[i64]) -> Presentation {
        Presentation::new(n, IntMatrix::from_i64(rows, n, data)).unwrap()
    }

    #[test]
    fn analyze_examples() {
        let g = analyze(&pres(1, 1, &[2]));
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!((g.free_rank, g.dual_rank), (0, 0));

        let g = analyze(&pres(2, 1, &[2, 0]));
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!((g.free_rank, g.dual_rank), (1, 1));

        let g = analyze(&Presentation::free(2));
        assert!(g.invariant_factors.is_empty());
        assert_eq!((g.free_rank, g.dual_rank), (2, 2));
        assert_eq!(g.to_string(), "Z^2 (dual rank 2)");
    }

    #[test]
    fn to_system_examples() {
        let s = presentation_to_system(&pres(1, 1, &[2]));
        assert_eq!(s.to_string(), "vars: x0\n2*x0 = 0\n");
        let s = presentation_to_system(&Presentation::free(2));
        assert!(s.is_empty());
        assert_eq!(s.variables(), ["x0", "x1"]);
        let s = presentation_to_system(&pres(2, 1, &[1, -2]));
        assert_eq!(s.to_string(), "vars: x0 x1\nx0 - 2*x1 = 0\n");
    }

    #[test]
    fn from_system_examples() {
        let p = system_to_presentation(&parse_system("2*x = 0").unwrap());
        assert_eq!(p.n_generators(), 1);
        assert_eq!(*p.relations(), IntMatrix::from_i64(1, 1, &[2]));

        let p = system_to_presentation(&parse_system("vars: x y").unwrap());
        assert_eq!(p.n_generators(), 2);
        assert_eq!(p.relations().rows(), 0);

        let p = system_to_presentation(&parse_system("x + y = 0\nx - y = 0").unwrap());
        assert_eq!(*p.relations(), IntMatrix::from_i64(2, 2, &[1, 1, 1, -1]));
        let g = analyze(&p);
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(g.dual_rank, 0);
    }

    #[test]
    fn zero_relations_dropped() {
        let (p, w) = Presentation::new_with_warnings(2, IntMatrix::from_i64(2, 2, &[0, 0, 1, 1])).unwrap();
        assert_eq!(p.relations().rows(), 1);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn generators_lying_in_k() {
        let p = pres(2, 1, &[1, 0]);
        assert_eq!(p.generators_in_relations(), vec![0]);
        assert!(pres(2, 1, &[2, 0]).generators_in_relations().is_empty());
    }

    #[test]
    fn zpres_parse_and_print() {
        let p = parse_presentation("gens: 3\n2*e0 - e1\ne1 - 2*e2 = 0\n").unwrap();
        assert_eq!(*p.relations(), IntMatrix::from_i64(2, 3, &[2, -1, 0, 0, 1, -2]));
        assert_eq!(p.to_string(), "gens: 3\n2*e0 - e1\ne1 - 2*e2\n");
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);

        let p = parse_presentation("gens: 2\nnames: a b\na + 3*b\n").unwrap();
        assert_eq!(p.to_string(), "gens: 2\nnames: a b\na + 3*b\n");
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);

        let (p, w) = parse_presentation_with_warnings("gens: 1\ne0 - e0\n").unwrap();
        assert_eq!(p.relations().rows(), 0);
        assert_eq!(w[0].line, 2);
    }

    #[test]
    fn zpres_errors() {
        assert!(matches!(parse_presentation("2*e0"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_presentation("gens: 1\ne1"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_presentation("gens: 1\ne0 = 3"), Err(Error::Nonhomogeneous { .. })));
        assert!(matches!(parse_presentation("gens: 2\nnames: a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn dual_basis_is_homomorphisms() {
        let p = pres(3, 1, &[2, 0, 0]);
        let d = dual_basis(&p);
        assert_eq!(d.len(), analyze(&p).dual_rank);
        for phi in &d.vectors {
            assert!(p.relations().mul_vec(phi).unwrap().iter().all(Zero::is_zero));
        }
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        // n = 0 is left out: the trivial group has a zero dual, but its system is
        // empty and therefore solvable by convention.
        (1usize..=4, 0usize..=4).prop_flat_map(|(n, r)| {
            proptest::collection::vec(-3i64..=3, n * r).prop_map(move |d| pres(n, r, &d))
        })
    }

    proptest! {
        #[test]
        fn trivial_dual_iff_weakly_unsolvable(p in arb_presentation()) {
            let g = analyze(&p);
            let s = presentation_to_system(&p);
            let weak = solve_weak(&s).status;
            prop_assert_eq!(g.dual_rank == 0, weak == Status::Unsolvable);
            prop_assert_eq!(g.dual_rank, dual_basis(&p).len());
        }

        #[test]
        fn translation_round_trip(p in arb_presentation()) {
            let s = presentation_to_system(&p);
            prop_assert_eq!(presentation_to_system(&system_to_presentation(&s)), s.clone());
            let back = system_to_presentation(&s);
            prop_assert_eq!(back.relations(), p.relations());
            prop_assert_eq!(back.n_generators(), p.n_generators());
        }
    }
}
