//! Text formats: characteristic-class expressions, graph files and vertex
//! orientation files.
//!
//! Graph format, one item per line, `#` starts a comment:
//!
//! ```text
//! rank 3
//! valence 4          # optional, defaults to the degree of the first vertex
//! vertex a
//! vertex b
//! edge a b (1, 0, 0)
//! signed edge a b (0,-1,0)   # label of the orientation a -> b
//! ```
//!
//! Edge lines must be all `edge` or all `signed edge`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{GkmError, Result};
use crate::graph::{GkmGraph, SignedStructure};
use crate::lattice::Weight;
use crate::localization::{CharClassExpr, Monomial, Orientation, Symbol};

/// A parsed graph file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphFile {
    pub graph: GkmGraph,
    pub signed: Option<SignedStructure>,
}

// ---------------------------------------------------------------------------
// Expressions

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
    valence: u32,
}

impl ExprParser {
    fn error(&self, at: usize, msg: impl Into<String>) -> GkmError {
        GkmError::parse(1, at + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, self.chars[start..self.pos].iter().collect()))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.digits().map(|(_, d)| d.parse().expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let (start, d) = self
            .digits()
            .ok_or_else(|| self.error(at, format!("expected {what}")))?;
        d.parse()
            .map_err(|_| self.error(start, format!("{what} `{d}` is too large")))
    }

    fn expr(&mut self) -> Result<CharClassExpr> {
        let mut out = CharClassExpr::zero();
        let mut negate = self.eat('-');
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut m = Monomial::new();
        let coeff = match self.integer() {
            Some(c) => {
                if !self.eat('*') {
                    return Ok((m, c));
                }
                c
            }
            None => BigInt::one(),
        };
        loop {
            let (s, k) = self.factor()?;
            *m.entry(s).or_insert(0) += k;
            if !self.eat('*') {
                break;
            }
        }
        Ok((m, coeff))
    }

    fn factor(&mut self) -> Result<(Symbol, u32)> {
        self.skip_ws();
        let at = self.pos;
        let rest: String = self.chars[self.pos..].iter().take(2).collect();
        let sym = if rest == "eu" {
            self.pos += 2;
            Symbol::Euler
        } else {
            let kind = match self.chars.get(self.pos) {
                Some('c') => 'c',
                Some('p') => 'p',
                Some(c) => return Err(self.error(at, format!("unexpected `{c}`"))),
                None => return Err(self.error(at, "unexpected end of expression")),
            };
            self.pos += 1;
            if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error(self.pos, "expected symbol index"));
            }
            let i = self.small("symbol index")?;
            let (s, max) = if kind == 'c' {
                (Symbol::Chern(i), 9)
            } else {
                (Symbol::Pontryagin(i), 4)
            };
            if i == 0 || i > max || s.degree(self.valence) > self.valence {
                return Err(self.error(
                    at,
                    format!("symbol {s} out of range for valence {}", self.valence),
                ));
            }
            s
        };
        let k = if self.eat('^') { self.small("exponent")? } else { 1 };
        Ok((sym, k))
    }
}

/// Parses `expr := ['-'] term (('+'|'-') term)*`,
/// `term := integer | [integer '*'] factor ('*' factor)*`,
/// `factor := symbol ['^' integer]` and checks homogeneity.
pub fn parse_expr(text: &str, valence: usize) -> Result<CharClassExpr> {
    let mut p = ExprParser {
        chars: text.chars().collect(),
        pos: 0,
        valence: valence as u32,
    };
    if p.peek().is_none() {
        return Err(p.error(0, "empty expression"));
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(p.pos, format!("unexpected `{c}`")));
    }
    e.degree(valence as u32)?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Graph files

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, col: usize, msg: impl Into<String>) -> GkmError {
        GkmError::parse(self.number, col + 1, msg)
    }

    /// Zero-based column of a slice of this line.
    fn column_of(&self, token: &str) -> usize {
        token.as_ptr() as usize - self.text.as_ptr() as usize
    }
}

fn strip_comment(s: &str) -> &str {
    s.split_once('#').map_or(s, |(a, _)| a)
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "#(),".contains(c))
}

fn parse_label(line: &Line, col: usize, s: &str) -> Result<Weight> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| line.error(col, "expected label `(a,b,...)`"))?;
    let mut entries = Vec::new();
    for part in inner.split(',') {
        let t: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        let v: BigInt = t
            .parse()
            .map_err(|_| line.error(col, format!("bad label entry `{}`", part.trim())))?;
        entries.push(v);
    }
    Ok(Weight::new(entries))
}

struct PendingEdge<'a> {
    line: Line<'a>,
    col: usize,
    ends: (&'a str, &'a str),
    label: Weight,
    signed: bool,
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut rank: Option<(usize, usize)> = None;
    let mut valence: Option<(usize, usize)> = None;
    let mut vertices: Vec<(Line, &str)> = Vec::new();
    let mut edges: Vec<PendingEdge> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            number: i + 1,
            text: raw,
        };
        let body = strip_comment(raw);
        let (head, label) = match body.find('(') {
            Some(k) => (&body[..k], Some((k, &body[k..]))),
            None => (body, None),
        };
        let words: Vec<&str> = head.split_whitespace().collect();
        let Some(&kw) = words.first() else {
            if let Some((k, _)) = label {
                return Err(line.error(k, "label without an edge"));
            }
            continue;
        };
        let kw_col = line.column_of(kw);
        let no_label = |line: &Line| -> Result<()> {
            match label {
                Some((k, _)) => Err(line.error(k, "unexpected label")),
                None => Ok(()),
            }
        };
        match kw {
            "rank" | "valence" => {
                no_label(&line)?;
                if words.len() != 2 {
                    return Err(line.error(kw_col, format!("expected `{kw} N`")));
                }
                let col = line.column_of(words[1]);
                let n: usize = words[1]
                    .parse()
                    .map_err(|_| line.error(col, format!("bad {kw} `{}`", words[1])))?;
                let slot = if kw == "rank" { &mut rank } else { &mut valence };
                if let Some((_, prev)) = slot {
                    return Err(line.error(kw_col, format!("duplicate `{kw}` header (first on line {prev})")));
                }
                if kw == "rank" && n == 0 {
                    return Err(line.error(col, "rank must be positive"));
                }
                *slot = Some((n, line.number));
            }
            "vertex" => {
                no_label(&line)?;
                if words.len() != 2 || !is_name(words[1]) {
                    return Err(line.error(kw_col, "expected `vertex NAME`"));
                }
                let name = words[1];
                if let Some((prev, _)) = vertices.iter().find(|(_, n)| *n == name) {
                    return Err(line.error(
                        line.column_of(name),
                        format!("duplicate vertex `{name}` (first on line {})", prev.number),
                    ));
                }
                vertices.push((line, name));
            }
            "edge" | "signed" => {
                let signed = kw == "signed";
                let rest = &words[1..];
                let rest = if signed {
                    match rest.split_first() {
                        Some((&"edge", r)) => r,
                        _ => return Err(line.error(kw_col, "expected `signed edge`")),
                    }
                } else {
                    rest
                };
                if rest.len() != 2 {
                    return Err(line.error(kw_col, "expected two vertex names"));
                }
                let Some((col, l)) = label else {
                    return Err(line.error(body.trim_end().len(), "missing edge label"));
                };
                let label = parse_label(&line, col, l)?;
                edges.push(PendingEdge {
                    col: line.column_of(rest[0]),
                    ends: (rest[0], rest[1]),
                    label,
                    signed,
                    line,
                });
            }
            other => return Err(line.error(kw_col, format!("unknown keyword `{other}`"))),
        }
    }

    if vertices.is_empty() {
        return Err(GkmError::EmptyGraph);
    }
    let last = text.lines().count().max(1);
    let (rank, _) = rank.ok_or_else(|| GkmError::parse(last, 1, "missing `rank` header"))?;
    if let Some(first) = edges.first() {
        if let Some(bad) = edges.iter().find(|e| e.signed != first.signed) {
            return Err(bad.line.error(
                bad.line.column_of(bad.line.text.trim_start()),
                "mixed signed and unsigned edges",
            ));
        }
    }
    let valence = match valence {
        Some((n, _)) => n,
        None => {
            let v0 = vertices[0].1;
            edges
                .iter()
                .map(|e| (e.ends.0 == v0) as usize + (e.ends.1 == v0) as usize)
                .sum()
        }
    };

    let mut g = GkmGraph::new(rank, valence);
    for (_, name) in &vertices {
        g.add_vertex(*name)?;
    }
    let mut labels = Vec::with_capacity(edges.len());
    for e in &edges {
        if e.label.rank() != rank {
            return Err(e.line.error(
                e.col,
                format!("label {} has {} entries, rank is {rank}", e.label, e.label.rank()),
            ));
        }
        if e.label.is_zero() {
            return Err(e.line.error(e.col, "zero label"));
        }
        let ends = [e.ends.0, e.ends.1].map(|n| {
            g.vertex_id(n)
                .map_err(|_| e.line.error(e.line.column_of(n), format!("unknown vertex `{n}`")))
        });
        let [a, b] = ends;
        g.add_edge(a?, b?, e.label.clone())?;
        labels.push(e.label.clone());
    }
    let signed = match edges.first() {
        Some(e) if e.signed => Some(SignedStructure::from_labels(&g, labels)?),
        _ => None,
    };
    Ok(GraphFile { graph: g, signed })
}

/// Serializes a graph, with signed edges if a signed structure is given.
pub fn write_graph(g: &GkmGraph, signed: Option<&SignedStructure>) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "rank {}", g.rank()).unwrap();
    writeln!(out, "valence {}", g.valence()).unwrap();
    for name in g.vertex_names() {
        if !is_name(name) {
            return Err(GkmError::Unsupported(format!(
                "vertex name `{name}` cannot be written"
            )));
        }
        writeln!(out, "vertex {name}").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (g.vertex_name(e.ends.0), g.vertex_name(e.ends.1));
        match signed {
            Some(s) => writeln!(out, "signed edge {a} {b} {}", s.labels()[i]),
            None => writeln!(out, "edge {a} {b} {}", e.label),
        }
        .unwrap();
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Orientation files

/// Parses lines `NAME +1` / `NAME -1`, one per vertex of `g`.
pub fn parse_orientation(text: &str, g: &GkmGraph) -> Result<Orientation> {
    let mut out: Vec<Option<i8>> = vec![None; g.vertex_count()];
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            number: i + 1,
            text: raw,
        };
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        if words.len() != 2 {
            return Err(line.error(line.column_of(words[0]), "expected `NAME +1` or `NAME -1`"));
        }
        let v = g
            .vertex_id(words[0])
            .map_err(|_| line.error(line.column_of(words[0]), format!("unknown vertex `{}`", words[0])))?;
        let sign = match words[1] {
            "+1" | "1" | "+" => 1,
            "-1" | "-" => -1,
            s => return Err(line.error(line.column_of(words[1]), format!("bad sign `{s}`"))),
        };
        if out[v].replace(sign).is_some() {
            return Err(line.error(line.column_of(words[0]), format!("vertex `{}` listed twice", words[0])));
        }
    }
    out.iter()
        .enumerate()
        .map(|(v, o)| {
            o.ok_or_else(|| {
                GkmError::parse(text.lines().count().max(1), 1, format!("no sign for vertex `{}`", g.vertex_name(v)))
            })
        })
        .collect()
}

/// Serializes an orientation in the format read by [`parse_orientation`].
pub fn write_orientation(g: &GkmGraph, o: &[i8]) -> String {
    let mut out = String::new();
    for (v, s) in o.iter().enumerate() {
        writeln!(out, "{} {}", g.vertex_name(v), if *s > 0 { "+1" } else { "-1" }).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog, catalog_names};

    #[test]
    fn expression_examples() {
        let e = parse_expr("c1^2", 2).unwrap();
        assert_eq!(e.degree(2).unwrap(), 2);
        let e = parse_expr("p1 + 3*c1*c1", 2).unwrap();
        assert_eq!(e.to_string(), "3*c1^2 + p1");
        match parse_expr("c1 + c2", 3) {
            Err(GkmError::NonHomogeneous(msg)) => assert!(msg.contains("[1, 2]"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expression_errors_carry_positions() {
        match parse_expr("c1 + * c2", 3) {
            Err(GkmError::Parse { line: 1, column: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("c4", 3), Err(GkmError::Parse { column: 1, .. })));
        assert!(matches!(parse_expr("p2", 3), Err(GkmError::Parse { .. })));
        assert!(matches!(parse_expr("c0", 3), Err(GkmError::Parse { .. })));
        assert!(matches!(parse_expr("", 3), Err(GkmError::Parse { .. })));
        assert!(matches!(parse_expr("c1 c1", 3), Err(GkmError::Parse { column: 4, .. })));
        assert!(matches!(parse_expr("x1", 3), Err(GkmError::Parse { .. })));
    }

    #[test]
    fn constants_and_signs() {
        let e = parse_expr("-2*eu + 1*eu", 4).unwrap();
        assert_eq!(e.to_string(), "-eu");
        let e = parse_expr("1", 4).unwrap();
        assert_eq!(e, CharClassExpr::constant(BigInt::one()));
        let e = parse_expr("c1 - c1", 4).unwrap();
        assert!(e.is_zero());
        assert_eq!(parse_expr("0", 2).unwrap(), CharClassExpr::zero());
        let big = parse_expr("123456789012345678901234567890*p1", 2).unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567890*p1");
    }

    #[test]
    fn catalog_round_trip() {
        for name in catalog_names() {
            let b = catalog(&name).unwrap();
            let text = write_graph(&b.graph, b.signed.as_ref()).unwrap();
            let f = parse_graph(&text).unwrap();
            assert_eq!(f.graph, b.graph, "{name}");
            assert_eq!(f.signed, b.signed, "{name}");
        }
    }

    #[test]
    fn example8_file() {
        let text = "\
# the complexity-one example
rank 3
valence 4
vertex a
vertex b
vertex c
vertex d
edge a b (1,0,0)
edge a b ( 0 , 1 , 0 )
edge a b (0,0,1)
edge c d (1,0,0)
edge c d (0,1,0)
edge c d (0,0,1)
edge c a (1,-1,-1)
edge d b (1,-1,-1)   # vertical
";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.graph, catalog("example8").unwrap().graph);
        assert!(f.signed.is_none());
    }

    #[test]
    fn graph_errors() {
        let arity = "rank 2\nvertex a\nvertex b\nedge a b (1,0,0)\n";
        match parse_graph(arity) {
            Err(GkmError::Parse { line: 4, message, .. }) => assert!(message.contains("rank is 2")),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_graph("rank 2\n# nothing\n"), Err(GkmError::EmptyGraph));
        assert_eq!(parse_graph("rank 2\n").unwrap_err().to_string(), "empty graph");
        let dup = "rank 1\nvertex a\nvertex a\n";
        assert!(matches!(parse_graph(dup), Err(GkmError::Parse { line: 3, column: 8, .. })));
        let unknown = "rank 1\nvertex a\nvertex b\nedge a z (1)\n";
        match parse_graph(unknown) {
            Err(GkmError::Parse { line: 4, column: 8, message }) => assert!(message.contains("`z`")),
            other => panic!("{other:?}"),
        }
        let mixed = "rank 1\nvertex a\nvertex b\nedge a b (1)\nsigned edge a b (-1)\n";
        match parse_graph(mixed) {
            Err(GkmError::Parse { line: 5, message, .. }) => assert!(message.contains("mixed")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph("rank 1\nrank 2\nvertex a\n"), Err(GkmError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertex a\n"), Err(GkmError::Parse { .. })));
        assert!(matches!(parse_graph("rank 1\nvertex a\nvertex b\nedge a b (x)\n"), Err(GkmError::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("rank 1\nvertex a\nvertex b\nedge a b\n"), Err(GkmError::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("rank 1\nvertex a\nvertex b\nedge a b (0)\n"), Err(GkmError::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("rank 1\nvrtex a\n"), Err(GkmError::Parse { line: 2, column: 1, .. })));
    }

    #[test]
    fn signed_file_keeps_orientation() {
        let text = "rank 1\nvertex a\nvertex b\nsigned edge a b (-1)\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.graph.valence(), 1);
        let s = f.signed.unwrap();
        assert_eq!(s.labels()[0], Weight::from_i64s(&[-1]));
        assert_eq!(f.graph.edge(0).label, Weight::from_i64s(&[1]));
    }

    #[test]
    fn orientation_files() {
        let g = catalog("example8").unwrap().graph;
        let o = parse_orientation("a +1\nb -1\n# c\nc 1\nd -1\n", &g).unwrap();
        assert_eq!(o, vec![1, -1, 1, -1]);
        assert_eq!(parse_orientation(&write_orientation(&g, &o), &g).unwrap(), o);
        assert!(parse_orientation("a +1\n", &g).is_err());
        assert!(parse_orientation("a +1\na -1\nb 1\nc 1\nd 1\n", &g).is_err());
        assert!(parse_orientation("a 2\nb 1\nc 1\nd 1\n", &g).is_err());
    }
}
