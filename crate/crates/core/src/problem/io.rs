//! JSON and CSV-bundle persistence for [`DiscreteProblem`].
//!
//! A CSV bundle is a directory:
//!
//! ```text
//! x/points.csv      one point per line, comma-separated coordinates
//! x/weights.csv     one reference weight per line
//! x/marginals.csv   one marginal weight per line
//! y/...             same three files for the target space
//! kernel.csv        dense kernel rows (dense kernels)
//! kernel.json       kernel object (radial and gaussian kernels)
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use super::{DiscreteProblem, DiscreteSpace, Kernel, ProblemError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemFormat {
    Json,
    CsvBundle,
}

impl ProblemFormat {
    /// `.json` files are JSON; anything else is read as a CSV bundle directory.
    pub fn infer(path: &Path) -> ProblemFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ProblemFormat::Json,
            _ => ProblemFormat::CsvBundle,
        }
    }
}

pub fn load_problem(path: &Path, format: ProblemFormat) -> Result<DiscreteProblem, ProblemError> {
    match format {
        ProblemFormat::Json => {
            let text = fs::read_to_string(path)?;
            problem_from_json(&text, &path.display().to_string())
        }
        ProblemFormat::CsvBundle => load_bundle(path),
    }
}

pub fn save_problem(problem: &DiscreteProblem, path: &Path, format: ProblemFormat) -> Result<(), ProblemError> {
    match format {
        ProblemFormat::Json => {
            let text = serde_json::to_string_pretty(problem).map_err(|e| ProblemError::Schema(e.to_string()))?;
            fs::write(path, text)?;
            Ok(())
        }
        ProblemFormat::CsvBundle => save_bundle(problem, path),
    }
}

/// Parses and validates a problem from JSON text.
pub fn problem_from_json(text: &str, origin: &str) -> Result<DiscreteProblem, ProblemError> {
    let problem: DiscreteProblem = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => ProblemError::Schema(e.to_string()),
            _ => ProblemError::Parse {
                location: format!("{origin}:{}:{}", e.line(), e.column()),
                message: e.to_string(),
            },
        }
    })?;
    problem.validate()?;
    Ok(problem)
}

fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>, ProblemError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| ProblemError::Parse {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ProblemError::Parse {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut row = Vec::with_capacity(record.len());
        for (field, raw) in record.iter().enumerate() {
            let value: f64 = raw.parse().map_err(|e| ProblemError::Parse {
                location: format!("{}:{line}:field {}", path.display(), field + 1),
                message: format!("{raw:?}: {e}"),
            })?;
            if !value.is_finite() {
                return Err(ProblemError::Parse {
                    location: format!("{}:{line}:field {}", path.display(), field + 1),
                    message: format!("{raw:?}: non-finite values are not allowed in inputs"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn read_column(path: &Path) -> Result<Vec<f64>, ProblemError> {
    read_rows(path)?
        .into_iter()
        .enumerate()
        .map(|(k, row)| match row.as_slice() {
            [x] => Ok(*x),
            _ => Err(ProblemError::Parse {
                location: format!("{}:{}", path.display(), k + 1),
                message: "expected exactly one value per line".into(),
            }),
        })
        .collect()
}

fn require(path: PathBuf) -> Result<PathBuf, ProblemError> {
    if path.exists() {
        Ok(path)
    } else {
        Err(ProblemError::Schema(format!("missing bundle file {}", path.display())))
    }
}

fn load_side(dir: &Path, side: &str) -> Result<(DiscreteSpace, Vec<f64>), ProblemError> {
    let base = dir.join(side);
    let points = read_rows(&require(base.join("points.csv"))?)?;
    let weights = read_column(&require(base.join("weights.csv"))?)?;
    let marginal = read_column(&require(base.join("marginals.csv"))?)?;
    Ok((DiscreteSpace { points, weights }, marginal))
}

fn load_bundle(dir: &Path) -> Result<DiscreteProblem, ProblemError> {
    if !dir.is_dir() {
        return Err(ProblemError::Schema(format!(
            "{} is not a CSV bundle directory",
            dir.display()
        )));
    }
    let (x_space, mu) = load_side(dir, "x")?;
    let (y_space, nu) = load_side(dir, "y")?;
    let csv_kernel = dir.join("kernel.csv");
    let json_kernel = dir.join("kernel.json");
    let kernel = if csv_kernel.exists() {
        Kernel::dense(read_rows(&csv_kernel)?)
    } else if json_kernel.exists() {
        let text = fs::read_to_string(&json_kernel)?;
        serde_json::from_str(&text).map_err(|e| ProblemError::Parse {
            location: format!("{}:{}:{}", json_kernel.display(), e.line(), e.column()),
            message: e.to_string(),
        })?
    } else {
        return Err(ProblemError::Schema(format!(
            "missing kernel.csv or kernel.json in {}",
            dir.display()
        )));
    };
    DiscreteProblem::new(x_space, y_space, mu, nu, kernel)
}

fn write_rows<'a>(path: &Path, rows: impl IntoIterator<Item = &'a [f64]>) -> Result<(), ProblemError> {
    let mut text = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        text.push_str(&line.join(","));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn save_bundle(problem: &DiscreteProblem, dir: &Path) -> Result<(), ProblemError> {
    for (side, space, marginal) in [
        ("x", &problem.x_space, &problem.mu),
        ("y", &problem.y_space, &problem.nu),
    ] {
        let base = dir.join(side);
        fs::create_dir_all(&base)?;
        write_rows(&base.join("points.csv"), space.points.iter().map(Vec::as_slice))?;
        write_rows(&base.join("weights.csv"), space.weights.chunks(1))?;
        write_rows(&base.join("marginals.csv"), marginal.chunks(1))?;
    }
    let _ = fs::remove_file(dir.join("kernel.csv"));
    let _ = fs::remove_file(dir.join("kernel.json"));
    match &problem.kernel {
        Kernel::Dense {
            entries,
            assume_positive: false,
        } => write_rows(&dir.join("kernel.csv"), entries.iter().map(Vec::as_slice)),
        other => {
            let text = serde_json::to_string_pretty(other).map_err(|e| ProblemError::Schema(e.to_string()))?;
            fs::write(dir.join("kernel.json"), text)?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::RadialProfile;

    fn worked_2x2() -> DiscreteProblem {
        DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn json_fixture_parses() {
        let text = r#"{
            "x_space": {"points": [[0.0], [1.0]], "weights": [1.0, 1.0]},
            "y_space": {"points": [[0.0], [1.0]], "weights": [1.0, 1.0]},
            "mu": [0.5, 0.5],
            "nu": [0.5, 0.5],
            "kernel": {"kind": "dense-matrix", "entries": [[1.0, 2.0], [3.0, 4.0]]}
        }"#;
        let p = problem_from_json(text, "fixture").unwrap();
        assert_eq!(p, worked_2x2());
    }

    #[test]
    fn negative_weight_is_schema_error() {
        let text = r#"{
            "x_space": {"points": [[0.0]], "weights": [-1.0]},
            "y_space": {"points": [[0.0]], "weights": [1.0]},
            "mu": [1.0], "nu": [1.0],
            "kernel": {"kind": "dense", "entries": [[1.0]]}
        }"#;
        assert!(matches!(problem_from_json(text, "t"), Err(ProblemError::Schema(_))));
    }

    #[test]
    fn missing_field_is_schema_error_and_syntax_is_parse_error() {
        let missing = r#"{"x_space": {"points": [[0.0]], "weights": [1.0]}}"#;
        assert!(matches!(problem_from_json(missing, "t"), Err(ProblemError::Schema(_))));
        match problem_from_json("{\n  \"mu\": [1.0,,]\n}", "t") {
            Err(ProblemError::Parse { location, .. }) => assert!(location.starts_with("t:2:"), "{location}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn csv_bundle_matches_constructor() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        for side in ["x", "y"] {
            fs::create_dir_all(root.join(side)).unwrap();
            fs::write(root.join(side).join("points.csv"), "0\n1\n").unwrap();
            fs::write(root.join(side).join("weights.csv"), "1\n1\n").unwrap();
            fs::write(root.join(side).join("marginals.csv"), "0.5\n0.5\n").unwrap();
        }
        fs::write(root.join("kernel.csv"), "1,2\n3,4\n").unwrap();
        let p = load_problem(root, ProblemFormat::CsvBundle).unwrap();
        assert_eq!(p, worked_2x2());
    }

    #[test]
    fn csv_parse_error_has_location() {
        let dir = tempfile::tempdir().unwrap();
        let p = worked_2x2();
        save_problem(&p, dir.path(), ProblemFormat::CsvBundle).unwrap();
        fs::write(dir.path().join("kernel.csv"), "1,2\n3,oops\n").unwrap();
        match load_problem(dir.path(), ProblemFormat::CsvBundle) {
            Err(ProblemError::Parse { location, .. }) => assert!(location.ends_with(":2:field 2"), "{location}"),
            other => panic!("{other:?}"),
        }
        fs::write(dir.path().join("kernel.csv"), "1,2\n3,inf\n").unwrap();
        assert!(matches!(
            load_problem(dir.path(), ProblemFormat::CsvBundle),
            Err(ProblemError::Parse { .. })
        ));
    }

    #[test]
    fn parametric_kernel_round_trips_through_bundle() {
        let p = DiscreteProblem::new(
            DiscreteSpace::new(vec![vec![0.0], vec![0.7]], vec![0.5, 0.5]).unwrap(),
            DiscreteSpace::new(vec![vec![0.1], vec![0.3]], vec![0.5, 0.5]).unwrap(),
            vec![0.25, 0.75],
            vec![0.5, 0.5],
            Kernel::Radial {
                profile: RadialProfile::Gaussian { precision: 1.5 },
                cutoff: 0.0,
            },
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        save_problem(&p, dir.path(), ProblemFormat::CsvBundle).unwrap();
        assert_eq!(load_problem(dir.path(), ProblemFormat::CsvBundle).unwrap(), p);
    }

    #[test]
    fn format_inference() {
        assert_eq!(ProblemFormat::infer(Path::new("a/b.json")), ProblemFormat::Json);
        assert_eq!(ProblemFormat::infer(Path::new("a/bundle")), ProblemFormat::CsvBundle);
    }
}
