//! Homogeneous ℤ-linear equation systems.
//!
//! A [`System`] is a finite list of equations `∑ aⱼ·xⱼ = 0` over an ordered
//! set of named variables. Systems are always kept normalized: terms on the
//! same variable are merged, zero coefficients are removed and equations that
//! collapse to `0 = 0` are dropped. Duplicate equations are kept.
//!
//! The text format (`.zls`) has one equation per line:
//!
//! ```text
//! # optional comment
//! name: chain
//! vars: x0 x1 x2
//! x0 - 2*x1 = 0
//! x1 - 2*x2 = 0
//! ```
//!
//! Without a `vars:` header the variable order is the order of first
//! appearance.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::json::JsonInt;

/// The two solvability notions: every variable nonzero, or not all appearing
/// variables zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nontrivial,
    Weak,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nontrivial => "nontrivial",
            Mode::Weak => "weak",
        })
    }
}

/// One equation `∑ aⱼ·xⱼ = 0`, keyed by variable index. Coefficients are
/// never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Equation {
    terms: BTreeMap<usize, BigInt>,
}

impl Equation {
    /// Merges repeated variables and drops zero coefficients.
    pub fn new<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut merged: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (var, coef) in terms {
            *merged.entry(var).or_default() += coef;
        }
        merged.retain(|_, c| !c.is_zero());
        Equation { terms: merged }
    }

    pub fn terms(&self) -> &BTreeMap<usize, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, var: usize) -> BigInt {
        self.terms.get(&var).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        self.terms.iter().map(|(&v, c)| c * &values[v]).sum()
    }

    /// Multiplies every coefficient by `k`, which must be nonzero.
    pub fn scaled(&self, k: &BigInt) -> Equation {
        assert!(!k.is_zero(), "scaling an equation by zero");
        Equation {
            terms: self.terms.iter().map(|(&v, c)| (v, c * k)).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct System {
    pub name: Option<String>,
    variables: Vec<String>,
    equations: Vec<Equation>,
}

/// A non-fatal remark produced while reading input, such as a dropped `0 = 0`
/// equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl System {
    /// Builds a normalized system. Fails if a variable name repeats or an
    /// equation refers to a variable index outside `variables`.
    pub fn new(variables: Vec<String>, equations: Vec<Equation>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate variable `{v}`")));
            }
        }
        for eq in &equations {
            if let Some((&idx, _)) = eq.terms.last_key_value() {
                if idx >= variables.len() {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        len: variables.len(),
                    });
                }
            }
        }
        let equations = equations
            .into_iter()
            .map(|e| Equation::new(e.terms))
            .filter(|e| !e.is_zero())
            .collect();
        Ok(System {
            name: None,
            variables,
            equations,
        })
    }

    /// Builds a system from integer coefficient rows, one column per variable.
    pub fn from_rows(variables: Vec<String>, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut equations = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != variables.len() {
                return Err(Error::DimensionMismatch {
                    expected: variables.len(),
                    found: row.len(),
                });
            }
            equations.push(Equation::new(row.iter().cloned().enumerate()));
        }
        System::new(variables, equations)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Indices of variables that occur in at least one equation.
    pub fn appearing(&self) -> BTreeSet<usize> {
        self.equations
            .iter()
            .flat_map(|e| e.terms.keys().copied())
            .collect()
    }

    pub fn normalized(&self) -> System {
        let mut s = System::new(self.variables.clone(), self.equations.clone())
            .expect("a valid system stays valid");
        s.name = self.name.clone();
        s
    }

    /// One row per equation, one column per variable in declared order.
    pub fn coefficient_matrix(&self) -> (IntMatrix, Vec<String>) {
        let mut m = IntMatrix::zeros(self.equations.len(), self.variables.len());
        for (i, eq) in self.equations.iter().enumerate() {
            for (&j, c) in &eq.terms {
                m[(i, j)] = c.clone();
            }
        }
        (m, self.variables.clone())
    }

    /// The subsystem formed by the equations at `indices`, over exactly the
    /// variables that appear in them (kept in their original order).
    pub fn subsystem<I>(&self, indices: I) -> Result<System>
    where
        I: IntoIterator<Item = usize>,
    {
        let picked: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&last) = picked.last() {
            if last >= self.equations.len() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    len: self.equations.len(),
                });
            }
        }
        let kept: Vec<&Equation> = picked.iter().map(|&i| &self.equations[i]).collect();
        let used: BTreeSet<usize> = kept.iter().flat_map(|e| e.terms.keys().copied()).collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let variables = used.iter().map(|&j| self.variables[j].clone()).collect();
        let equations = kept
            .into_iter()
            .map(|e| Equation {
                terms: e.terms.iter().map(|(j, c)| (remap[j], c.clone())).collect(),
            })
            .collect();
        Ok(System {
            name: None,
            variables,
            equations,
        })
    }

    /// Equation `index` in `.zls` syntax, e.g. `x - 2*y = 0`.
    pub fn equation_to_string(&self, index: usize) -> String {
        let mut out = String::new();
        let eq = &self.equations[index];
        write_linear_form(&mut out, eq.terms.iter().map(|(&j, c)| (self.variables[j].as_str(), c)))
            .expect("writing to a string");
        out.push_str(" = 0");
        out
    }

    /// Replaces equation `index` by a nonzero multiple of itself.
    pub fn scale_equation(&self, index: usize, k: &BigInt) -> Result<System> {
        if index >= self.equations.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.equations.len(),
            });
        }
        if k.is_zero() {
            return Err(Error::InvalidParameter("scale factor must be nonzero".into()));
        }
        let mut s = self.clone();
        s.equations[index] = s.equations[index].scaled(k);
        Ok(s)
    }

    /// Checks `values` (one per variable, in declared order) against every equation.
    pub fn satisfied_by(&self, values: &[BigInt]) -> bool {
        values.len() == self.variables.len() && self.equations.iter().all(|e| e.evaluate(values).is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SystemJson::from(self)).expect("system serializes")
    }

    pub fn from_json(value: &str) -> Result<System> {
        let dto: SystemJson = serde_json::from_str(value)?;
        dto.try_into()
    }
}

/// Serializes to `.zls`. The output always carries a `vars:` header so that
/// variable order and unused variables survive a round trip.
impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        f.write_str("vars:")?;
        for v in &self.variables {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        for i in 0..self.equations.len() {
            writeln!(f, "{}", self.equation_to_string(i))?;
        }
        Ok(())
    }
}

pub(crate) fn write_linear_form<'a, I>(f: &mut impl fmt::Write, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a str, &'a BigInt)>,
{
    for (k, (name, c)) in terms.into_iter().enumerate() {
        let sep = match (k, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        f.write_str(sep)?;
        let mag = c.abs();
        if mag.is_one() {
            f.write_str(name)?;
        } else {
            write!(f, "{mag}*{name}")?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Parsing

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    pub(crate) fn column(&self) -> usize {
        self.pos + 1
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// Parses `[±] term (± term)*` where a term is `[k*]ident`. Stops before
    /// `=` or at end of input. Returns `(name, coefficient, column)` triples.
    pub(crate) fn linear_form(&mut self) -> Result<Vec<(String, BigInt, usize)>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            if self.eat('-') {
                negative = true;
            } else if !self.eat('+') && !first {
                break;
            }
            self.skip_ws();
            let column = self.column();
            let mut coef = BigInt::one();
            if let Some(k) = self.integer() {
                coef = k;
                if !self.eat('*') {
                    return Err(self.error("expected `*` between coefficient and variable"));
                }
                self.skip_ws();
            }
            let name = self.ident().ok_or_else(|| self.error("expected a variable name"))?;
            if negative {
                coef = -coef;
            }
            terms.push((name, coef, column));
            first = false;
        }
        Ok(terms)
    }

    /// Parses an optionally signed integer.
    pub(crate) fn signed_integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let save = self.pos;
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        match self.integer() {
            Some(k) => Some(if negative { -k } else { k }),
            None => {
                self.pos = save;
                None
            }
        }
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `.zls` text, logging any warnings.
pub fn parse_system(text: &str) -> Result<System> {
    let (system, warnings) = parse_system_with_warnings(text)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(system)
}

/// Parses `.zls` text and returns the warnings instead of logging them.
pub fn parse_system_with_warnings(text: &str) -> Result<(System, Vec<Warning>)> {
    let mut name = None;
    let mut declared: Option<Vec<String>> = None;
    let mut variables: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut equations = Vec::new();
    let mut warnings = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let header_err = |message: &str| Error::Syntax {
            line: line_no,
            column: 1,
            message: message.to_string(),
        };
        if let Some(rest) = line.strip_prefix("vars:") {
            if declared.is_some() || !variables.is_empty() {
                return Err(header_err("`vars:` must appear once, before any equation"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for (k, v) in names.iter().enumerate() {
                if !is_ident(v) {
                    return Err(header_err(&format!("`{v}` is not a valid variable name")));
                }
                if index.insert(v.clone(), k).is_some() {
                    return Err(header_err(&format!("variable `{v}` declared twice")));
                }
            }
            variables = names.clone();
            declared = Some(names);
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
            continue;
        }

        let mut cur = Cursor::new(line, line_no);
        let terms = cur.linear_form()?;
        if !cur.eat('=') {
            return Err(cur.error("expected `=`"));
        }
        let Some(rhs) = cur.signed_integer() else {
            return Err(cur.error("right-hand side must be an integer"));
        };
        if !cur.at_end() {
            return Err(cur.error("unexpected input after right-hand side"));
        }
        if !rhs.is_zero() {
            return Err(Error::Nonhomogeneous { line: line_no, rhs });
        }
        let mut resolved = Vec::with_capacity(terms.len());
        for (var, coef, column) in terms {
            let idx = match index.get(&var) {
                Some(&i) => i,
                None if declared.is_some() => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column,
                        message: format!("variable `{var}` is not declared in `vars:`"),
                    });
                }
                None => {
                    variables.push(var.clone());
                    index.insert(var, variables.len() - 1);
                    variables.len() - 1
                }
            };
            resolved.push((idx, coef));
        }
        let eq = Equation::new(resolved);
        if eq.is_zero() {
            warnings.push(Warning {
                line: line_no,
                message: "equation reduces to 0 = 0 and was dropped".into(),
            });
        } else {
            equations.push(eq);
        }
    }

    let mut system = System::new(variables, equations)?;
    system.name = name;
    Ok((system, warnings))
}

// ---------------------------------------------------------------------------
// Witnesses

/// An integer assignment to the variables of a system, tagged with the
/// solvability notion it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: Mode,
    pub assignment: IndexMap<String, BigInt>,
}

impl Witness {
    pub fn from_values(kind: Mode, system: &System, values: &[BigInt]) -> Self {
        Witness {
            kind,
            assignment: system
                .variables()
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect(),
        }
    }

    /// Values in the system's variable order, if every variable is assigned.
    pub fn values_for(&self, system: &System) -> Option<Vec<BigInt>> {
        system
            .variables()
            .iter()
            .map(|v| self.assignment.get(v).cloned())
            .collect()
    }

    /// Checks the witness by substitution, including its kind's nonzero
    /// requirement. The empty system accepts any full assignment.
    ///
    /// A weak witness must be nonzero somewhere; a nonzero value on a
    /// declared-but-unused variable counts.
    pub fn verify(&self, system: &System) -> bool {
        let Some(values) = self.values_for(system) else {
            return false;
        };
        if !system.satisfied_by(&values) {
            return false;
        }
        if system.is_empty() {
            return true;
        }
        match self.kind {
            Mode::Nontrivial => values.iter().all(|x| !x.is_zero()),
            Mode::Weak => values.iter().any(|x| !x.is_zero()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessJson::from(self)).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Witness> {
        let dto: WitnessJson = serde_json::from_str(text)?;
        Ok(dto.into())
    }
}

// ---------------------------------------------------------------------------
// JSON forms

#[derive(Serialize, Deserialize)]
struct SystemJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    variables: Vec<String>,
    equations: Vec<IndexMap<String, JsonInt>>,
}

impl From<&System> for SystemJson {
    fn from(s: &System) -> Self {
        SystemJson {
            name: s.name.clone(),
            variables: s.variables.clone(),
            equations: s
                .equations
                .iter()
                .map(|e| {
                    e.terms
                        .iter()
                        .map(|(&j, c)| (s.variables[j].clone(), JsonInt(c.clone())))
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<SystemJson> for System {
    type Error = Error;

    fn try_from(dto: SystemJson) -> Result<System> {
        let index: HashMap<&str, usize> = dto.variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut equations = Vec::with_capacity(dto.equations.len());
        for eq in &dto.equations {
            let mut terms = Vec::with_capacity(eq.len());
            for (name, c) in eq {
                let j = *index
                    .get(name.as_str())
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown variable `{name}`")))?;
                terms.push((j, c.0.clone()));
            }
            equations.push(Equation::new(terms));
        }
        let mut s = System::new(dto.variables, equations)?;
        s.name = dto.name;
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    kind: Mode,
    assignment: IndexMap<String, JsonInt>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            kind: w.kind,
            assignment: w.assignment.iter().map(|(k, v)| (k.clone(), JsonInt(v.clone()))).collect(),
        }
    }
}

impl From<WitnessJson> for Witness {
    fn from(dto: WitnessJson) -> Self {
        Witness {
            kind: dto.kind,
            assignment: dto.assignment.into_iter().map(|(k, v)| (k, v.0)).collect(),
        }
    }
}
