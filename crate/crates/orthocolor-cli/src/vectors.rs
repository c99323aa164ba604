//! The vector file format: one vector per line, three whitespace-separated
//! rationals (`p/q` or integer), `#` starting a comment.

use orthocolor::graph::VectorConfig;
use orthocolor::numerics::{parse_rational, RationalVector};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorFileError {
    #[error("line {line}: expected three rationals, got {found}")]
    Arity { line: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: zero vector")]
    Zero { line: usize },
    #[error("no vectors in file")]
    EmptyFile,
}

/// Parses the vector file format; labels are the 1-based line numbers.
pub fn parse_vectors(content: &str) -> Result<VectorConfig, VectorFileError> {
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(VectorFileError::Arity {
                line,
                found: parts.len(),
            });
        }
        let mut coords = Vec::with_capacity(3);
        for part in parts {
            coords.push(parse_rational(part).map_err(|e| VectorFileError::Parse {
                line,
                message: e.to_string(),
            })?);
        }
        let v = RationalVector::new(coords[0].clone(), coords[1].clone(), coords[2].clone());
        if v.is_zero() {
            return Err(VectorFileError::Zero { line });
        }
        vectors.push(v);
        labels.push(line.to_string());
    }
    if vectors.is_empty() {
        return Err(VectorFileError::EmptyFile);
    }
    Ok(VectorConfig::with_labels(vectors, labels).expect("validated above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use orthocolor::numerics::ratio;

    #[test]
    fn parses_integer_vectors() {
        let config = parse_vectors("1 0 0\n0 1 0").unwrap();
        assert_eq!(config.len(), 2);
        assert_eq!(config.labels(), &["1".to_string(), "2".to_string()]);
    }

    #[test]
    fn parses_rational_coordinates() {
        let config = parse_vectors("1/3 2/3 2/3").unwrap();
        assert_eq!(config.vectors()[0].x, ratio(1, 3));
    }

    #[test]
    fn reports_arity_errors_with_line_numbers() {
        assert_eq!(
            parse_vectors("1 0").unwrap_err(),
            VectorFileError::Arity { line: 1, found: 2 }
        );
        assert!(matches!(
            parse_vectors("1 0 0\n1 x 0").unwrap_err(),
            VectorFileError::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let config = parse_vectors("# header\n\n1 0 0 # inline\n  # indented\n0 0 1\n").unwrap();
        assert_eq!(config.len(), 2);
        assert_eq!(config.labels(), &["3".to_string(), "5".to_string()]);
    }

    #[test]
    fn rejects_empty_files() {
        assert_eq!(
            parse_vectors("# nothing\n").unwrap_err(),
            VectorFileError::EmptyFile
        );
    }

    #[test]
    fn rejects_zero_vectors() {
        assert_eq!(
            parse_vectors("0 0 0").unwrap_err(),
            VectorFileError::Zero { line: 1 }
        );
    }
}
