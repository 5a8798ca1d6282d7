//! On-disk description of a bound quiver algebra and the relation parser.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSection,
    pub quiver: QuiverSection,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub bounds: Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSection {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
    /// Arrow names used in relations; defaults to `a`, `b`, `c`, ...
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Largest total dimension searched when enumerating indecomposables.
    #[serde(default = "default_dim")]
    pub dim: usize,
    /// Longest path considered before the quotient is declared infinite-dimensional.
    #[serde(default = "default_path_length")]
    pub path_length: usize,
}

fn default_dim() -> usize {
    6
}

fn default_path_length() -> usize {
    16
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { dim: default_dim(), path_length: default_path_length() }
    }
}

impl AlgebraSpec {
    pub fn from_toml(text: &str) -> Result<Self, AlgebraError> {
        toml::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| {
            AlgebraError::Parse(format!("{} at line {} column {}", e, e.line(), e.column()))
        })
    }

    /// Dispatches on a `.json` extension, TOML otherwise.
    pub fn from_path(path: &std::path::Path) -> Result<Self, AlgebraError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::Parse(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn arrow_names(&self) -> Vec<String> {
        match &self.quiver.names {
            Some(n) => n.clone(),
            None => default_arrow_names(self.quiver.arrows.len()),
        }
    }
}

pub fn default_arrow_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("a{i}")).collect()
    }
}

/// One term `coef * a1 * a2 * ...` of a relation, arrows given by index.
pub type RelationTerm = (i64, Vec<usize>);

/// Parses `"a*b - 2*c*d + e*f"` into signed terms over arrow indices.
pub fn parse_relation(text: &str, names: &[String]) -> Result<Vec<RelationTerm>, AlgebraError> {
    let err = |col: usize, msg: &str| AlgebraError::Relation {
        relation: text.to_string(),
        column: col + 1,
        message: msg.to_string(),
    };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(err(pos, "empty relation"));
            }
            break;
        }
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;
        let mut coef = 1i64;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            coef = text[start..pos].parse().map_err(|_| err(start, "bad coefficient"))?;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
            }
        }
        let mut path = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            if start == pos {
                return Err(err(start, "expected arrow name"));
            }
            let name = &text[start..pos];
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| err(start, &format!("unknown arrow '{name}'")))?;
            path.push(idx);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            } else {
                break;
            }
        }
        terms.push((sign * coef, path));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let t = parse_relation("a*b - 2*c*c + b", &names).unwrap();
        assert_eq!(t, vec![(1, vec![0, 1]), (-2, vec![2, 2]), (1, vec![1])]);
    }

    #[test]
    fn reports_column_of_unknown_arrow() {
        let names = vec!["a".to_string()];
        match parse_relation("a*z", &names) {
            Err(AlgebraError::Relation { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn toml_spec_roundtrip() {
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a*b\"]\n[field]\np = 2\n[quiver]\nvertices = 3\narrows = [[0,1],[1,2]]\n[bounds]\ndim = 4\n",
        )
        .unwrap();
        assert_eq!(spec.quiver.arrows, vec![[0, 1], [1, 2]]);
        assert_eq!(spec.bounds.dim, 4);
        assert_eq!(spec.arrow_names(), vec!["a", "b"]);
        assert!(AlgebraSpec::from_toml("[field\np=2").is_err());
    }
}
