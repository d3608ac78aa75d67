//! Graph text format and its JSON mirror.
//!
//! Text: a header line `n r`, then one `u v c` line per edge. `#` starts a
//! comment, blank lines are ignored and unlisted pairs are non-edges. The
//! writer always emits `u < v`, sorted, with no comments; the reader accepts
//! either endpoint order.
//!
//! JSON: `{"n": .., "r": .., "edges": [[u, v, c], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Colour, ColouredGraph, MAX_COLOURS, MAX_VERTICES};
use crate::error::{Error, Result};

pub fn read_graph(text: &str) -> Result<ColouredGraph> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson = serde_json::from_str(text)?;
        return json.to_graph();
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `n r`"))?;
    let [n, r] = parse_fields::<2>(hline, header)?;
    if n > MAX_VERTICES {
        return Err(Error::parse(hline, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    if r == 0 || r > MAX_COLOURS {
        return Err(Error::parse(hline, format!("r = {r} outside 1..={MAX_COLOURS}")));
    }
    let mut g = ColouredGraph::new(n, r)?;
    for (line, l) in lines {
        let [u, v, c] = parse_fields::<3>(line, l)?;
        if c >= r {
            return Err(Error::parse(line, format!("colour {c} >= r = {r}")));
        }
        g.add_edge(u, v, Colour(c as u8)).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(g)
}

fn parse_fields<const K: usize>(line: usize, l: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut it = l.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line, format!("expected {K} integers")))?;
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("not a non-negative integer: {tok:?}")))?;
    }
    if it.next().is_some() {
        return Err(Error::parse(line, format!("expected {K} integers")));
    }
    Ok(out)
}

pub fn write_graph(g: &ColouredGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.r());
    for (u, v, c) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", c.0));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub r: usize,
    pub edges: Vec<[usize; 3]>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<ColouredGraph> {
        let mut g = ColouredGraph::new(self.n, self.r)?;
        for &[u, v, c] in &self.edges {
            if c >= self.r {
                return Err(Error::InvalidGraph(format!("colour {c} >= r = {}", self.r)));
            }
            g.add_edge(u, v, Colour(c as u8))?;
        }
        Ok(g)
    }
}

impl From<&ColouredGraph> for GraphJson {
    fn from(g: &ColouredGraph) -> Self {
        GraphJson {
            n: g.n(),
            r: g.r(),
            edges: g.edges().map(|(u, v, c)| [u, v, c.index()]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_small_triangle() {
        let g = read_graph("3 2\n0 1 0\n1 2 1\n0 2 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.colour(0, 1), Some(Colour::RED));
        assert_eq!(g.colour(1, 2), Some(Colour::BLUE));
        assert_eq!(g.colour(0, 2), Some(Colour::RED));
        assert_eq!(write_graph(&g), "3 2\n0 1 0\n0 2 0\n1 2 1\n");
    }

    #[test]
    fn normalises_comments_and_order() {
        let g = read_graph("# header\n4 2 # four vertices\n\n3 1 1\n0 2 0 # red\n").unwrap();
        assert_eq!(write_graph(&g), "4 2\n0 2 0\n1 3 1\n");
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            ("", "missing header"),
            ("2 2\n0 0 0\n", "self-loop"),
            ("2 2\n0 2 0\n", "out of range"),
            ("2 2\n0 1 2\n", "colour 2"),
            ("3 2\n0 1 0\n1 0 1\n", "given colours"),
            ("3 2\n0 1\n", "expected 3"),
            ("3 2\n0 1 0 4\n", "expected 3"),
            ("3 x\n", "not a non-negative"),
            ("3 0\n", "outside"),
            ("999999999999 2\n", "exceeds"),
            ("3 2\n-1 1 0\n", "not a non-negative"),
        ];
        for (text, needle) in bad {
            let err = read_graph(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} gave {err:?}");
        }
    }

    #[test]
    fn json_mirror() {
        let g = read_graph("3 2\n0 1 0\n1 2 1\n").unwrap();
        let json = serde_json::to_string(&GraphJson::from(&g)).unwrap();
        assert_eq!(json, r#"{"n":3,"r":2,"edges":[[0,1,0],[1,2,1]]}"#);
        assert_eq!(read_graph(&json).unwrap(), g);
        assert!(read_graph(r#"{"n":2,"r":2,"edges":[[0,1,5]]}"#).is_err());
        assert!(read_graph(r#"{"n":100000,"r":2,"edges":[]}"#).is_err());
    }
}
