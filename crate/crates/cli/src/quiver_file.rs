//! The quiver file format.
//!
//! A quiver file is a JSON object:
//!
//! ```text
//! {
//!   "vertices": [1, 2, 3],
//!   "arrows": [[1, 2], [2, 3], [3, 1]],
//!   "potential": [{ "coeff": "1", "cycle": [0, 1, 2] }],
//!   "labels": { "1": "P1" }
//! }
//! ```
//!
//! Vertex ids are non-negative integers or strings and fix the coordinate
//! order. Arrows are `[source, target]` pairs of ids. A potential term is an
//! exact rational coefficient `"p/q"` times a cycle of 0-based arrow indices
//! in path order. `potential` and `labels` are optional.
//!
//! The canonical form is the two-space-indented JSON printed by
//! [`QuiverFile::to_canonical_string`]: keys in the order above, empty
//! optional fields omitted, coefficients in lowest terms, trailing newline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wallcross::quiver::{Arrow, PotentialTerm, Quiver};
use wallcross::Rat;

const CONDITION: &str = "quivers must have no vertex loops and no oriented 2-cycles";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(u64),
    Name(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialEntry {
    pub coeff: String,
    pub cycle: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<VertexId>,
    #[serde(default)]
    pub arrows: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub potential: Vec<PotentialEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

/// A parse or validation failure located in the source text.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// One step of a JSON path.
#[derive(Clone, Copy, Debug)]
enum Seg<'a> {
    Key(&'a str),
    Index(usize),
}

pub fn parse_quiver_file(bytes: &[u8]) -> Result<(QuiverFile, Quiver), Diagnostic> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = position(bytes, e.valid_up_to());
        Diagnostic { line, column, message: "quiver file is not valid UTF-8".into() }
    })?;
    let file: QuiverFile = serde_json::from_str(text)
        .map_err(|e| Diagnostic { line: e.line(), column: e.column(), message: strip_position(&e.to_string()) })?;
    let quiver = file.validate(text)?;
    Ok((file, quiver))
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn position(bytes: &[u8], offset: usize) -> (usize, usize) {
    let before = &bytes[..offset.min(bytes.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let start = before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    let column = String::from_utf8_lossy(&before[start..]).chars().count() + 1;
    (line, column)
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver) -> Self {
        let ids: Vec<VertexId> = q
            .vertices()
            .iter()
            .map(|v| v.parse::<u64>().ok().filter(|n| n.to_string() == *v).map_or_else(|| VertexId::Name(v.clone()), VertexId::Int))
            .collect();
        QuiverFile {
            arrows: q.arrows().iter().map(|a| [ids[a.source].clone(), ids[a.target].clone()]).collect(),
            potential: q
                .potential()
                .iter()
                .map(|t| PotentialEntry { coeff: t.coeff.to_string(), cycle: t.cycle.clone() })
                .collect(),
            vertices: ids,
            labels: BTreeMap::new(),
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut canon = self.clone();
        for t in &mut canon.potential {
            if let Ok(c) = Rat::from_str(t.coeff.trim()) {
                t.coeff = c.to_string();
            }
        }
        let mut s = serde_json::to_string_pretty(&canon).expect("quiver files serialize");
        s.push('\n');
        s
    }

    fn validate(&self, text: &str) -> Result<Quiver, Diagnostic> {
        let at = |path: &[Seg], message: String| {
            let (line, column) = locate(text, path).unwrap_or((1, 1));
            Diagnostic { line, column, message }
        };
        if self.vertices.is_empty() {
            return Err(at(&[Seg::Key("vertices")], "quiver has no vertices".into()));
        }
        let mut index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(at(&[Seg::Key("vertices"), Seg::Index(i)], format!("duplicate vertex id {v}")));
            }
            if self.vertices.iter().any(|u| u != v && u.to_string() == v.to_string()) {
                return Err(at(&[Seg::Key("vertices"), Seg::Index(i)], format!("vertex ids {v} and \"{v}\" collide")));
            }
        }
        let mut arrows = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, [s, t]) in self.arrows.iter().enumerate() {
            let lookup = |id: &VertexId, j: usize| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| at(&[Seg::Key("arrows"), Seg::Index(k), Seg::Index(j)], format!("arrow {k} refers to unknown vertex {id}")))
            };
            let (a, b) = (lookup(s, 0)?, lookup(t, 1)?);
            if a == b {
                return Err(at(&[Seg::Key("arrows"), Seg::Index(k)], format!("arrow {k} is a vertex loop at {s}; {CONDITION}")));
            }
            if seen.contains(&(b, a)) {
                return Err(at(
                    &[Seg::Key("arrows"), Seg::Index(k)],
                    format!("arrow {k} closes an oriented 2-cycle between {s} and {t}; {CONDITION}"),
                ));
            }
            seen.insert((a, b));
            arrows.push(Arrow { source: a, target: b });
        }
        let mut potential = Vec::new();
        for (k, entry) in self.potential.iter().enumerate() {
            let path = [Seg::Key("potential"), Seg::Index(k)];
            let coeff = Rat::from_str(entry.coeff.trim()).map_err(|_| {
                at(&[path[0], path[1], Seg::Key("coeff")], format!("coefficient {:?} is not an exact rational p/q", entry.coeff))
            })?;
            potential.push(PotentialTerm { coeff, cycle: entry.cycle.clone() });
        }
        for key in self.labels.keys() {
            if !self.vertices.iter().any(|v| v.to_string() == *key) {
                return Err(at(&[Seg::Key("labels"), Seg::Key(key)], format!("label for unknown vertex {key}")));
            }
        }
        let names = self.vertices.iter().map(|v| v.to_string()).collect();
        Quiver::new(names, arrows, potential).map_err(|e| {
            let path: &[Seg] = if self.potential.is_empty() { &[] } else { &[Seg::Key("potential")] };
            at(path, e.to_string())
        })
    }
}

/// Line and column (1-based, in characters) of the value at `path` in a
/// syntactically valid JSON document.
fn locate(text: &str, path: &[Seg]) -> Option<(usize, usize)> {
    let b = text.as_bytes();
    let mut i = skip_ws(b, 0);
    for seg in path {
        match (seg, b.get(i)?) {
            (Seg::Key(want), b'{') => {
                i = skip_ws(b, i + 1);
                loop {
                    if b.get(i)? == &b'}' {
                        return None;
                    }
                    let end = skip_string(b, i)?;
                    let key: String = serde_json::from_str(&text[i..end]).ok()?;
                    i = skip_ws(b, end);
                    i = skip_ws(b, i + 1); // ':'
                    if key == *want {
                        break;
                    }
                    i = skip_ws(b, skip_value(b, i)?);
                    if b.get(i)? == &b',' {
                        i = skip_ws(b, i + 1);
                    }
                }
            }
            (Seg::Index(want), b'[') => {
                i = skip_ws(b, i + 1);
                for _ in 0..*want {
                    if b.get(i)? == &b']' {
                        return None;
                    }
                    i = skip_ws(b, skip_value(b, i)?);
                    if b.get(i)? == &b',' {
                        i = skip_ws(b, i + 1);
                    }
                }
                if b.get(i)? == &b']' {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(position(b, i))
}

fn skip_ws(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && b[i].is_ascii_whitespace() {
        i += 1;
    }
    i
}

fn skip_string(b: &[u8], i: usize) -> Option<usize> {
    let mut j = i + 1;
    while j < b.len() {
        match b[j] {
            b'\\' => j += 2,
            b'"' => return Some(j + 1),
            _ => j += 1,
        }
    }
    None
}

fn skip_value(b: &[u8], i: usize) -> Option<usize> {
    match b.get(i)? {
        b'"' => skip_string(b, i),
        b'{' | b'[' => {
            let mut depth = 0usize;
            let mut j = i;
            while j < b.len() {
                match b[j] {
                    b'"' => {
                        j = skip_string(b, j)?;
                        continue;
                    }
                    b'{' | b'[' => depth += 1,
                    b'}' | b']' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(j + 1);
                        }
                    }
                    _ => {}
                }
                j += 1;
            }
            None
        }
        _ => {
            let mut j = i;
            while j < b.len() && !matches!(b[j], b',' | b'}' | b']') && !b[j].is_ascii_whitespace() {
                j += 1;
            }
            Some(j)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<(QuiverFile, Quiver), Diagnostic> {
        parse_quiver_file(text.as_bytes())
    }

    #[test]
    fn a2_fixture() {
        let (_, q) = parse(include_str!("../fixtures/a2.json")).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(q.arrows().len(), 1);
    }

    #[test]
    fn k3_fixture() {
        let (_, q) = parse(include_str!("../fixtures/k3.json")).unwrap();
        assert_eq!(q, Quiver::kronecker(3));
    }

    #[test]
    fn triangle_fixture() {
        let (_, q) = parse(include_str!("../fixtures/triangle.json")).unwrap();
        assert_eq!(q, Quiver::triangle_with_potential());
    }

    #[test]
    fn rejects_two_cycle_with_position() {
        let text = "{\n  \"vertices\": [1, 2],\n  \"arrows\": [[1, 2],\n             [2, 1]]\n}\n";
        let e = parse(text).unwrap_err();
        assert!(e.message.contains("oriented 2-cycle"), "{e}");
        assert_eq!((e.line, e.column), (4, 14));
    }

    #[test]
    fn rejects_loop_and_unknown_vertex() {
        let e = parse(r#"{"vertices": [1], "arrows": [[1, 1]]}"#).unwrap_err();
        assert!(e.message.contains("vertex loop"), "{e}");
        assert_eq!((e.line, e.column), (1, 30));
        let e = parse(r#"{"vertices": ["a", "b"], "arrows": [["a", "c"]]}"#).unwrap_err();
        assert!(e.message.contains("unknown vertex c"), "{e}");
        assert_eq!((e.line, e.column), (1, 43));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse("{\n  \"vertices\": [1,\n}").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse(r#"{"vertices": [1], "edges": []}"#).unwrap_err();
        assert!(e.message.contains("unknown field"), "{e}");
    }

    #[test]
    fn bad_potential() {
        let e = parse(r#"{"vertices": [1, 2, 3], "arrows": [[1, 2], [2, 3], [3, 1]], "potential": [{"coeff": "x", "cycle": [0, 1, 2]}]}"#)
            .unwrap_err();
        assert!(e.message.contains("exact rational"), "{e}");
        let e = parse(r#"{"vertices": [1, 2, 3], "arrows": [[1, 2], [2, 3], [3, 1]], "potential": [{"coeff": "1", "cycle": [0, 2, 1]}]}"#)
            .unwrap_err();
        assert!(e.message.contains("not a cycle"), "{e}");
    }

    #[test]
    fn canonical_roundtrip() {
        for text in [
            include_str!("../fixtures/a2.json"),
            include_str!("../fixtures/k2.json"),
            include_str!("../fixtures/k3.json"),
            include_str!("../fixtures/triangle.json"),
        ] {
            let (file, q) = parse(text).unwrap();
            let canon = file.to_canonical_string();
            assert_eq!(canon, text, "fixtures are stored in canonical form");
            let (again, q2) = parse(&canon).unwrap();
            assert_eq!(again.to_canonical_string(), canon);
            assert_eq!(q, q2);
            assert_eq!(QuiverFile::from_quiver(&q).to_canonical_string(), canon);
        }
    }

    #[test]
    fn coefficients_are_normalized() {
        let (file, q) = parse(r#"{"vertices": ["x", "y", "z"], "arrows": [["x", "y"], ["y", "z"], ["z", "x"]], "potential": [{"coeff": "4/2", "cycle": [0, 1, 2]}]}"#).unwrap();
        assert!(file.to_canonical_string().contains("\"coeff\": \"2\""));
        assert_eq!(q.derived_relations()[0].terms[0].0, Rat::from_integer(2.into()));
    }
}
