//! Text formats: triangle JSON and CSV, and the plain-text term files used
//! for user-supplied sequences.

use crate::binomials::Triangle;
use crate::error::{Error, Result};
use crate::quadfield::Rational;

/// Compact single-line JSON followed by a newline.
pub fn triangle_to_json(triangle: &Triangle) -> String {
    let mut s = serde_json::to_string(triangle).expect("triangles serialize");
    s.push('\n');
    s
}

pub fn triangle_from_json(text: &str) -> Result<Triangle> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

/// One row per line, entries comma-separated; rows are ragged.
pub fn triangle_to_csv(triangle: &Triangle) -> String {
    let mut out = String::new();
    for row in &triangle.rows {
        let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.is_empty())
        .map(|(i, line)| {
            line.split(',')
                .map(|cell| {
                    cell.parse()
                        .map_err(|e: crate::quadfield::ParseRationalError| Error::Parse {
                            line: i + 1,
                            message: e.to_string(),
                        })
                })
                .collect()
        })
        .collect()
}

/// Parse a sequence file: either a JSON array of exact strings, or one exact
/// rational per line with `#` comments and blank lines ignored.
pub fn parse_sequence_file(text: &str) -> Result<Vec<Rational>> {
    if text.trim_start().starts_with('[') {
        let values: Vec<Rational> = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        return Ok(values);
    }
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let value = line
            .parse()
            .map_err(|e: crate::quadfield::ParseRationalError| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "no terms found".into(),
        });
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_file_with_comments() {
        let text = "# naturals\n0\n1\n\n2  # two\n3/1\n-4/6\n";
        let values = parse_sequence_file(text).unwrap();
        let expected: Vec<Rational> = vec![
            Rational::from(0),
            Rational::from(1),
            Rational::from(2),
            Rational::from(3),
            Rational::new(-2, 3).unwrap(),
        ];
        assert_eq!(values, expected);
    }

    #[test]
    fn sequence_file_json_array() {
        let values = parse_sequence_file(r#"["0", "1", "1/2"]"#).unwrap();
        assert_eq!(values[2], Rational::new(1, 2).unwrap());
    }

    #[test]
    fn sequence_file_errors_name_line() {
        let err = parse_sequence_file("0\n1\n# c\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_sequence_file("1\n2/0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_sequence_file("# only comments\n").is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = rows_from_csv("1\n1,1\n1,28/3,1\n").unwrap();
        assert_eq!(rows[2][1], Rational::new(28, 3).unwrap());
        assert!(matches!(
            rows_from_csv("1\n1,x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
