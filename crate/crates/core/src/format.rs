//! Graph file formats.
//!
//! JSON: `{"n": 3, "arcs": [[0,2],[1,0]], "loops": [0]}` with arcs sorted
//! lexicographically and loops ascending when written.
//!
//! Text: a `n <N>` line, then `a <u> <v>` per arc and `l <v>` per loop.
//! Everything after `#` on a line is ignored.
//!
//! Both readers reject repeated arcs and loops.

use thiserror::Error;

use crate::graph::{Digraph, GraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("empty input")]
    Empty,
}

pub fn to_json(d: &Digraph) -> String {
    serde_json::to_string(d).expect("digraph serialization is infallible")
}

pub fn from_json(input: &str) -> Result<Digraph, FormatError> {
    Ok(serde_json::from_str(input)?)
}

pub fn to_text(d: &Digraph) -> String {
    let mut out = format!("n {}\n", d.order());
    for &(u, v) in d.arcs() {
        out.push_str(&format!("a {u} {v}\n"));
    }
    for &v in d.loops() {
        out.push_str(&format!("l {v}\n"));
    }
    out
}

pub fn from_text(input: &str) -> Result<Digraph, FormatError> {
    let mut n = None;
    let mut arcs = Vec::new();
    let mut loops = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| FormatError::Text { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let tag = tokens.next().expect("non-empty line");
        let nums: Vec<usize> = tokens
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("not a vertex id: {t:?}"))))
            .collect::<Result<_, _>>()?;
        match (tag, nums.as_slice()) {
            ("n", &[count]) => {
                if n.is_some() {
                    return Err(err("order given twice".into()));
                }
                n = Some(count);
            }
            ("a", &[u, v]) => arcs.push((u, v)),
            ("l", &[v]) => loops.push(v),
            _ => return Err(err(format!("unrecognised line {content:?}"))),
        }
    }
    let n = n.ok_or(FormatError::Text { line: 0, message: "missing `n <N>` line".into() })?;
    Ok(Digraph::new_strict(n, &arcs, &loops)?)
}

/// Picks the reader from the first non-whitespace byte: `{` means JSON.
pub fn parse_auto(input: &str) -> Result<Digraph, FormatError> {
    match input.trim_start().as_bytes().first() {
        None => Err(FormatError::Empty),
        Some(b'{') => from_json(input),
        Some(_) => from_text(input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let d = Digraph::new(3, &[(0, 2), (2, 1), (1, 0)], &[0, 2]).unwrap();
        let text = to_text(&d);
        assert_eq!(text, "n 3\na 0 2\na 1 0\na 2 1\nl 0\nl 2\n");
        assert_eq!(from_text(&text).unwrap(), d);
    }

    #[test]
    fn text_comments_and_blank_lines() {
        let d = from_text("# looped 3-cycle\n\nn 3 # order\na 0 2\n  a 2 1\na 1 0\nl 0\nl 2\n").unwrap();
        assert_eq!((d.order(), d.size(), d.loop_count()), (3, 3, 2));
    }

    #[test]
    fn text_rejects_duplicates_and_garbage() {
        assert!(matches!(from_text("n 2\na 0 1\na 0 1\n"), Err(FormatError::Graph(GraphError::DuplicateArc(0, 1)))));
        assert!(matches!(from_text("n 2\nl 1\nl 1\n"), Err(FormatError::Graph(GraphError::DuplicateLoop(1)))));
        assert!(matches!(from_text("n 2\na 1 1\n"), Err(FormatError::Graph(GraphError::SelfPairInArcList(1)))));
        assert!(matches!(from_text("n 2\nx 1\n"), Err(FormatError::Text { line: 2, .. })));
        assert!(matches!(from_text("a 0 1\n"), Err(FormatError::Text { .. })));
        assert!(matches!(from_text("n 2\nn 3\n"), Err(FormatError::Text { line: 2, .. })));
    }

    #[test]
    fn auto_detection() {
        let d = parse_auto("  {\"n\":2,\"arcs\":[[0,1]],\"loops\":[1]}").unwrap();
        assert_eq!(d, Digraph::new(2, &[(0, 1)], &[1]).unwrap());
        assert_eq!(parse_auto("n 2\na 0 1\nl 1\n").unwrap(), d);
        assert!(matches!(parse_auto("   \n"), Err(FormatError::Empty)));
    }

    #[test]
    fn json_canonical_order_is_independent_of_input_order() {
        let d = from_json(r#"{"n":3,"arcs":[[2,1],[0,2],[1,0]],"loops":[2,0]}"#).unwrap();
        assert_eq!(to_json(&d), r#"{"n":3,"arcs":[[0,2],[1,0],[2,1]],"loops":[0,2]}"#);
    }
}
