use std::fmt;
use std::io::Read;

use homz_core::{
    parse_matrix, parse_presentation_with_warnings, parse_system_with_warnings, presentation_to_system,
    system_to_presentation, IntMatrix, Presentation, System, Warning,
};

use crate::CliError;

/// A parsed input file, in whichever format it was written.
pub enum Input {
    Matrix(IntMatrix),
    System(System),
    Presentation(Presentation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Matrix,
    Zls,
    Zpres,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Matrix => "matrix",
            Format::Zls => "system",
            Format::Zpres => "presentation",
            Format::Json => "JSON",
        })
    }
}

/// Reads `path`, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

/// Guesses the format from the first meaningful line.
pub fn detect(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with('[') {
        Format::Matrix
    } else if first.starts_with('{') {
        Format::Json
    } else if first.starts_with("gens:") {
        Format::Zpres
    } else {
        Format::Zls
    }
}

fn report(path: &str, warnings: Vec<Warning>) {
    for w in warnings {
        log::warn!("{path}: {w}");
    }
}

pub fn load(path: &str) -> Result<Input, CliError> {
    let text = read_source(path)?;
    let located = |e| CliError::Core(path.to_string(), e);
    Ok(match detect(&text) {
        Format::Matrix => Input::Matrix(parse_matrix(&text).map_err(located)?),
        Format::Json => Input::System(System::from_json(&text).map_err(located)?),
        Format::Zpres => {
            let (p, warnings) = parse_presentation_with_warnings(&text).map_err(located)?;
            report(path, warnings);
            Input::Presentation(p)
        }
        Format::Zls => {
            let (s, warnings) = parse_system_with_warnings(&text).map_err(located)?;
            report(path, warnings);
            Input::System(s)
        }
    })
}

impl Input {
    pub fn format(&self) -> Format {
        match self {
            Input::Matrix(_) => Format::Matrix,
            Input::System(_) => Format::Zls,
            Input::Presentation(_) => Format::Zpres,
        }
    }

    /// Matrices become systems over `x0, x1, …`.
    pub fn into_system(self) -> System {
        match self {
            Input::System(s) => s,
            Input::Presentation(p) => presentation_to_system(&p),
            Input::Matrix(m) => {
                let names = (0..m.cols()).map(|i| format!("x{i}")).collect();
                System::from_rows(names, &m.row_vecs()).expect("row lengths match")
            }
        }
    }

    pub fn into_presentation(self) -> Presentation {
        match self {
            Input::Presentation(p) => p,
            Input::System(s) => system_to_presentation(&s),
            Input::Matrix(m) => Presentation::new(m.cols(), m).expect("column count matches"),
        }
    }

    /// The coefficient or relation matrix, with column labels where known.
    pub fn into_matrix(self) -> (IntMatrix, Option<Vec<String>>) {
        match self {
            Input::Matrix(m) => (m, None),
            Input::System(s) => {
                let (m, vars) = s.coefficient_matrix();
                (m, Some(vars))
            }
            Input::Presentation(p) => {
                let names = p.generator_names().map(<[String]>::to_vec);
                (p.relations().clone(), names)
            }
        }
    }
}
