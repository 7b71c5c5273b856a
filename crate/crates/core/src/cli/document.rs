use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfTable};
use crate::linalg::Matrix;
use crate::matroid::LinearMatroid;
use crate::propcheck::Graph;

/// `field P` or `field P K c0 .. cK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldHeader {
    pub p: u32,
    /// Ascending coefficients of the degree-`K` modulus, `None` for `GF(P)`.
    pub modulus: Option<Vec<u32>>,
}

impl FieldHeader {
    pub fn degree(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn spec(&self) -> Result<FieldSpec> {
        match &self.modulus {
            None => FieldSpec::prime(self.p),
            Some(m) => FieldSpec::prime_power(self.p, m),
        }
    }

    /// The header of a prime field or a single extension of one.
    pub fn of(spec: &FieldSpec) -> Result<FieldHeader> {
        let p = spec.characteristic();
        match spec.depth() {
            0 => Ok(FieldHeader { p, modulus: None }),
            1 => {
                let modulus = spec.modulus(1).coefficients().iter().map(|c| c.coefficients()[0]).collect();
                Ok(FieldHeader { p, modulus: Some(modulus) })
            }
            _ => Err(Error::Usage("instance files hold prime fields or single extensions only".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceBody {
    /// Entries are coefficient lists of length `K` (length one over `GF(P)`).
    Matrix { field: FieldHeader, rows: usize, cols: usize, entries: Vec<Vec<Vec<u32>>> },
    /// Edges are stored 0-based.
    Graph(Graph),
}

/// A parsed instance file. Comments are kept in order and emitted first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub comments: Vec<String>,
    pub body: InstanceBody,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    comments: Vec<String>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let (content, comment) = match raw.find('#') {
                Some(at) => (&raw[..at], Some(raw[at + 1..].trim())),
                None => (raw, None),
            };
            if let Some(c) = comment {
                self.comments.push(c.to_string());
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.last;
        self.next_tokens().ok_or_else(|| parse_err(last + 1, format!("expected {what}")))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| parse_err(line, format!("{what} `{token}` is not a number")))
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<InstanceDocument> {
        let mut lines = Lines { inner: text.lines().enumerate(), comments: Vec::new(), last: 0 };
        let (line, head) = lines.expect("a `field` or `graph` line")?;
        let body = match head[0] {
            "field" => {
                let field = parse_field(line, &head)?;
                let (line, dims) = lines.expect("a `matrix R N` line")?;
                if dims.len() != 3 || dims[0] != "matrix" {
                    return Err(parse_err(line, "expected `matrix R N`"));
                }
                let rows: usize = number(line, dims[1], "row count")?;
                let cols: usize = number(line, dims[2], "column count")?;
                let mut entries = Vec::with_capacity(rows);
                for _ in 0..rows {
                    let (line, row) = lines.expect("a matrix row")?;
                    if row.len() != cols {
                        return Err(parse_err(line, format!("row has {} entries, expected {cols}", row.len())));
                    }
                    entries.push(row.iter().map(|t| parse_entry(line, t, &field)).collect::<Result<_>>()?);
                }
                InstanceBody::Matrix { field, rows, cols, entries }
            }
            "graph" => {
                if head.len() != 3 {
                    return Err(parse_err(line, "expected `graph V M`"));
                }
                let vertices: usize = number(line, head[1], "vertex count")?;
                let m: usize = number(line, head[2], "edge count")?;
                let mut edges = Vec::with_capacity(m);
                for _ in 0..m {
                    let (line, e) = lines.expect("an edge line")?;
                    if e.len() != 2 {
                        return Err(parse_err(line, "expected `u v`"));
                    }
                    let mut ends = [0; 2];
                    for (end, t) in ends.iter_mut().zip(&e) {
                        let v: usize = number(line, t, "vertex")?;
                        if v == 0 || v > vertices {
                            return Err(parse_err(line, format!("vertex {v} outside 1..={vertices}")));
                        }
                        *end = v - 1;
                    }
                    edges.push((ends[0], ends[1]));
                }
                InstanceBody::Graph(Graph { vertices, edges })
            }
            other => return Err(parse_err(line, format!("unknown header `{other}`"))),
        };
        if let Some((line, _)) = lines.next_tokens() {
            return Err(parse_err(line, "unexpected content after the instance"));
        }
        Ok(InstanceDocument { comments: lines.comments, body })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            if c.is_empty() {
                out.push_str("#\n");
            } else {
                let _ = writeln!(out, "# {c}");
            }
        }
        match &self.body {
            InstanceBody::Matrix { field, rows, cols, entries } => {
                let _ = write!(out, "field {}", field.p);
                if let Some(m) = &field.modulus {
                    let _ = write!(out, " {}", m.len() - 1);
                    for c in m {
                        let _ = write!(out, " {c}");
                    }
                }
                let _ = writeln!(out, "\nmatrix {rows} {cols}");
                for row in entries {
                    let cells: Vec<String> =
                        row.iter().map(|e| e.iter().map(u32::to_string).collect::<Vec<_>>().join(":")).collect();
                    let _ = writeln!(out, "{}", cells.join(" "));
                }
            }
            InstanceBody::Graph(g) => {
                let _ = writeln!(out, "graph {} {}", g.vertices, g.edges.len());
                for (u, v) in &g.edges {
                    let _ = writeln!(out, "{} {}", u + 1, v + 1);
                }
            }
        }
        out
    }

    /// The column matroid, or the cycle matroid for graphs.
    pub fn to_matroid(&self) -> Result<LinearMatroid<GfTable>> {
        match &self.body {
            InstanceBody::Graph(g) => g.cycle_matroid(),
            InstanceBody::Matrix { field, rows, cols, entries } => {
                let spec = field.spec()?;
                let table = GfTable::new(spec.clone())?;
                let mut columns = vec![Vec::with_capacity(*rows); *cols];
                for row in entries {
                    for (col, e) in columns.iter_mut().zip(row) {
                        col.push(table.from_element(&spec.element(e.clone())?)?);
                    }
                }
                LinearMatroid::new(table, Matrix::from_columns(*rows, columns)?)
            }
        }
    }

    pub fn from_matroid(m: &LinearMatroid<GfTable>, comments: Vec<String>) -> Result<InstanceDocument> {
        let field = FieldHeader::of(m.field().spec())?;
        let rows = m.matrix().rows();
        let entries = (0..rows)
            .map(|r| m.matrix().row(r).iter().map(|&a| m.field().to_element(a).coefficients().to_vec()).collect())
            .collect();
        Ok(InstanceDocument { comments, body: InstanceBody::Matrix { field, rows, cols: m.matrix().cols(), entries } })
    }
}

fn parse_field(line: usize, head: &[&str]) -> Result<FieldHeader> {
    let p: u32 = match head.get(1) {
        Some(t) => number(line, t, "characteristic")?,
        None => return Err(parse_err(line, "expected `field P`")),
    };
    if !crate::field::is_prime(p.into()) {
        return Err(parse_err(line, format!("{p} is not a prime; give `field P K c0 .. cK` for prime powers")));
    }
    if head.len() == 2 {
        return Ok(FieldHeader { p, modulus: None });
    }
    let k: usize = number(line, head[2], "degree")?;
    if k == 0 || head.len() != k + 4 {
        return Err(parse_err(line, format!("degree {k} needs {} coefficients", k + 1)));
    }
    let modulus: Vec<u32> = head[3..].iter().map(|t| number(line, t, "coefficient")).collect::<Result<_>>()?;
    let header = FieldHeader { p, modulus: Some(modulus) };
    header.spec().map_err(|e| parse_err(line, e.to_string()))?;
    Ok(header)
}

fn parse_entry(line: usize, token: &str, field: &FieldHeader) -> Result<Vec<u32>> {
    let k = field.degree();
    let mut coeffs: Vec<u32> = token.split(':').map(|t| number(line, t, "entry")).collect::<Result<_>>()?;
    if coeffs.len() > k {
        return Err(parse_err(line, format!("entry `{token}` has more than {k} coefficients")));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c >= field.p) {
        return Err(parse_err(line, format!("entry coefficient {c} outside 0..{}", field.p)));
    }
    coeffs.resize(k, 0);
    Ok(coeffs)
}

/// `stats` line of a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub oracle_calls: u64,
    pub rank_queries: u64,
    pub ms: u64,
}

/// A decomposition as printed by `decompose` and `width-of`. `order` is
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultDocument {
    pub width: usize,
    pub order: Vec<usize>,
    pub lambdas: Vec<usize>,
    pub stats: Option<Stats>,
}

impl ResultDocument {
    pub fn emit(&self) -> String {
        let join = |xs: &[usize]| xs.iter().map(|x| format!(" {x}")).collect::<String>();
        let mut out = format!("width {}\norder{}\nlambda{}\n", self.width, join(&self.order), join(&self.lambdas));
        if let Some(s) = self.stats {
            let _ = writeln!(out, "stats oracle_calls={} rank_queries={} ms={}", s.oracle_calls, s.rank_queries, s.ms);
        }
        out
    }

    pub fn parse(text: &str) -> Result<ResultDocument> {
        let mut width = None;
        let mut order = None;
        let mut lambdas = None;
        let mut stats = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&key, rest)) = tokens.split_first() else { continue };
            let numbers = || rest.iter().map(|t| number::<usize>(line, t, key)).collect::<Result<Vec<_>>>();
            match key {
                "width" if rest.len() == 1 => width = Some(number(line, rest[0], "width")?),
                "order" => order = Some(numbers()?),
                "lambda" => lambdas = Some(numbers()?),
                "stats" => stats = Some(parse_stats(line, rest)?),
                _ => return Err(parse_err(line, format!("unexpected `{}`", content.trim()))),
            }
        }
        match (width, order, lambdas) {
            (Some(width), Some(order), Some(lambdas)) => Ok(ResultDocument { width, order, lambdas, stats }),
            _ => Err(parse_err(text.lines().count(), "result needs `width`, `order` and `lambda` lines")),
        }
    }
}

fn parse_stats(line: usize, fields: &[&str]) -> Result<Stats> {
    let mut values = [None; 3];
    for f in fields {
        let (k, v) = f.split_once('=').ok_or_else(|| parse_err(line, format!("bad stats field `{f}`")))?;
        let slot = ["oracle_calls", "rank_queries", "ms"]
            .iter()
            .position(|&n| n == k)
            .ok_or_else(|| parse_err(line, format!("unknown stats field `{k}`")))?;
        values[slot] = Some(number(line, v, k)?);
    }
    match values {
        [Some(oracle_calls), Some(rank_queries), Some(ms)] => Ok(Stats { oracle_calls, rank_queries, ms }),
        _ => Err(parse_err(line, "stats needs oracle_calls, rank_queries and ms")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{MatroidExt, RankOracle};

    #[test]
    fn uniform_over_gf2() {
        let doc = InstanceDocument::parse("field 2\nmatrix 2 3\n1 0 1\n0 1 1\n").unwrap();
        let m = doc.to_matroid().unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.circuits() == vec![m.ground()]);
    }

    #[test]
    fn triangle_graph() {
        let doc = InstanceDocument::parse("graph 3 3\n1 2\n2 3\n1 3\n").unwrap();
        let m = doc.to_matroid().unwrap();
        assert_eq!(m.full_rank(), 2);
        assert!(m.is_circuit(m.ground()));
    }

    #[test]
    fn prime_power_needs_a_modulus() {
        let err = InstanceDocument::parse("field 4\nmatrix 1 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("field 2\nmatrix 2 2\n1 0\n0\n", 4),
            ("field 3\nmatrix 1 2\n1 3\n", 3),
            ("# c\nfield 2\n\nmatrix 1 1\n1\n1 1\n", 6),
            ("graph 2 1\n1 3\n", 2),
            ("field 2 2 1 0 1\nmatrix 1 1\n1\n", 1),
            ("field 2\nmatrix 2 1\n1\n", 4),
        ];
        for (text, line) in cases {
            match InstanceDocument::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn extension_entries() {
        let text = "# GF(4)\nfield 2 2 1 1 1\nmatrix 2 3\n1:0 0:0 1:0\n0:0 1:0 0:1\n";
        let doc = InstanceDocument::parse(text).unwrap();
        assert_eq!(doc.emit(), text);
        let m = doc.to_matroid().unwrap();
        assert_eq!(m.full_rank(), 2);
        let back = InstanceDocument::from_matroid(&m, doc.comments.clone()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn comments_are_collected() {
        let doc = InstanceDocument::parse("graph 2 1 # header\n#\n1 2\n").unwrap();
        assert_eq!(doc.comments, vec!["header".to_string(), String::new()]);
        assert_eq!(InstanceDocument::parse(&doc.emit()).unwrap(), doc);
    }

    #[test]
    fn result_round_trip() {
        let r = ResultDocument {
            width: 1,
            order: vec![2, 1, 3],
            lambdas: vec![1, 1],
            stats: Some(Stats { oracle_calls: 4, rank_queries: 9, ms: 0 }),
        };
        let text = r.emit();
        assert_eq!(text, "width 1\norder 2 1 3\nlambda 1 1\nstats oracle_calls=4 rank_queries=9 ms=0\n");
        assert_eq!(ResultDocument::parse(&text).unwrap(), r);
        let single = ResultDocument { width: 0, order: vec![1], lambdas: vec![], stats: None };
        assert_eq!(single.emit(), "width 0\norder 1\nlambda\n");
        assert_eq!(ResultDocument::parse(&single.emit()).unwrap(), single);
    }
}
