//! Line-oriented text formats: `cmg` (nested hosts), `cmgx` (explicit
//! colorings) and `pat` (patterns). `#` starts a comment.

use std::collections::BTreeMap;

use multituran::graph::{pairs, MAX_COLORS};
use multituran::{ColoredMultigraph, Multigraph, MultiplicityGraph, Pattern, Vertex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        msg: msg.into(),
    }
}

/// A host file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Host {
    Nested(MultiplicityGraph),
    Explicit(ColoredMultigraph),
}

impl Host {
    pub fn to_nested(&self) -> MultiplicityGraph {
        match self {
            Host::Nested(g) => g.clone(),
            Host::Explicit(g) => multituran::nesting::to_multiplicity(g),
        }
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: std::str::FromStr>(line: usize, word: &str) -> Result<T, FormatError> {
    word.parse()
        .map_err(|_| at(line, format!("expected a nonnegative integer, got {word:?}")))
}

/// Header word, then `n` and the named bound, then body lines.
struct Parsed<'a> {
    n: usize,
    bound: u32,
    body: Vec<(usize, Vec<&'a str>)>,
}

fn parse_frame<'a>(text: &'a str, magic: &str, bound: &str, item: &str) -> Result<Parsed<'a>, FormatError> {
    let mut it = lines(text);
    match it.next() {
        Some((_, w)) if w == [magic, "1"] => {}
        Some((line, w)) => return Err(at(line, format!("expected header `{magic} 1`, got `{}`", w.join(" ")))),
        None => return Err(FormatError::Invalid(format!("empty input, expected `{magic} 1`"))),
    }
    let mut n = None;
    let mut b = None;
    let mut body = Vec::new();
    for (line, w) in it {
        let first = w[0];
        if first == "n" || first == bound {
            if w.len() != 2 {
                return Err(at(line, format!("expected `{first} <int>`")));
            }
            let slot = if first == "n" { &mut n } else { &mut b };
            if slot.is_some() || !body.is_empty() {
                return Err(at(line, format!("`{first}` must appear once, before `{item}` lines")));
            }
            *slot = Some(number::<u64>(line, w[1])?);
        } else if first == item {
            body.push((line, w));
        } else {
            return Err(at(line, format!("unknown directive {first:?}")));
        }
    }
    let n = n.ok_or_else(|| FormatError::Invalid("missing `n` line".into()))?;
    let bound = b.ok_or_else(|| FormatError::Invalid(format!("missing `{bound}` line")))?;
    Ok(Parsed {
        n: usize::try_from(n).map_err(|_| FormatError::Invalid("n too large".into()))?,
        bound: u32::try_from(bound).map_err(|_| FormatError::Invalid(format!("{bound} too large")))?,
        body,
    })
}

fn pair(line: usize, w: &[&str], n: usize, seen: &mut BTreeMap<(Vertex, Vertex), usize>) -> Result<(Vertex, Vertex), FormatError> {
    let u: Vertex = number(line, w[1])?;
    let v: Vertex = number(line, w[2])?;
    if u == v {
        return Err(at(line, "loops are not allowed"));
    }
    if u > v || v >= n {
        return Err(at(line, format!("need 0 <= u < v < {n}, got {u} {v}")));
    }
    if let Some(first) = seen.insert((u, v), line) {
        return Err(at(line, format!("pair {u} {v} already given on line {first}")));
    }
    Ok((u, v))
}

fn weighted_edges(p: &Parsed<'_>, what: &str) -> Result<Vec<(Vertex, Vertex, u32)>, FormatError> {
    let mut seen = BTreeMap::new();
    let mut edges = Vec::new();
    for (line, w) in &p.body {
        if w.len() != 4 {
            return Err(at(*line, "expected `e <u> <v> <m>`"));
        }
        let (u, v) = pair(*line, w, p.n, &mut seen)?;
        let m: u32 = number(*line, w[3])?;
        if m == 0 || m > p.bound {
            return Err(at(*line, format!("multiplicity must lie in 1..={} ({what}), got {m}", p.bound)));
        }
        edges.push((u, v, m));
    }
    Ok(edges)
}

pub fn parse_cmg(text: &str) -> Result<MultiplicityGraph, FormatError> {
    let p = parse_frame(text, "cmg", "k", "e")?;
    let edges = weighted_edges(&p, "k")?;
    MultiplicityGraph::from_edges(p.n, p.bound, &edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_cmg(g: &MultiplicityGraph) -> String {
    let mut out = format!("cmg 1\nn {}\nk {}\n", g.order(), g.k());
    for (u, v, m) in sorted_edges(g) {
        out.push_str(&format!("e {u} {v} {m}\n"));
    }
    out
}

fn sorted_edges(g: &impl Multigraph) -> Vec<(Vertex, Vertex, u32)> {
    let mut e: Vec<_> = pairs(g.order())
        .map(|(u, v)| (u, v, g.multiplicity(u, v)))
        .filter(|e| e.2 > 0)
        .collect();
    e.sort_unstable();
    e
}

pub fn parse_pat(text: &str) -> Result<Pattern, FormatError> {
    let p = parse_frame(text, "pat", "hmax", "e")?;
    let edges = weighted_edges(&p, "hmax")?;
    Pattern::from_edges(p.n, &edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_pat(h: &Pattern) -> String {
    let mut out = format!("pat 1\nn {}\nhmax {}\n", h.m(), h.max_multiplicity());
    for (u, v, m) in sorted_edges(h) {
        out.push_str(&format!("e {u} {v} {m}\n"));
    }
    out
}

pub fn parse_cmgx(text: &str) -> Result<ColoredMultigraph, FormatError> {
    let p = parse_frame(text, "cmgx", "k", "c")?;
    if p.bound > MAX_COLORS {
        return Err(FormatError::Invalid(format!("at most {MAX_COLORS} colors are supported")));
    }
    let mut g = ColoredMultigraph::empty(p.n, p.bound).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let mut seen = BTreeMap::new();
    for (line, w) in &p.body {
        if w.len() < 4 {
            return Err(at(*line, "expected `c <u> <v> <color> ...`"));
        }
        let (u, v) = pair(*line, w, p.n, &mut seen)?;
        for word in &w[3..] {
            let c: u32 = number(*line, word)?;
            if c == 0 || c > p.bound {
                return Err(at(*line, format!("color must lie in 1..={}, got {c}", p.bound)));
            }
            if g.colors_on(u, v) & (1 << (c - 1)) != 0 {
                return Err(at(*line, format!("color {c} repeated")));
            }
            g.insert(c - 1, u, v).map_err(|e| at(*line, e.to_string()))?;
        }
    }
    Ok(g)
}

pub fn write_cmgx(g: &ColoredMultigraph) -> String {
    let mut out = format!("cmgx 1\nn {}\nk {}\n", g.order(), g.k());
    for (u, v) in pairs(g.order()).collect::<std::collections::BTreeSet<_>>() {
        let mask = g.colors_on(u, v);
        if mask == 0 {
            continue;
        }
        let colors: Vec<String> = (1..=g.k()).filter(|c| mask & (1 << (c - 1)) != 0).map(|c| c.to_string()).collect();
        out.push_str(&format!("c {u} {v} {}\n", colors.join(" ")));
    }
    out
}

/// Dispatches on the header line.
pub fn parse_host(text: &str) -> Result<Host, FormatError> {
    let header = lines(text).next().map(|(_, w)| w[0].to_string());
    match header.as_deref() {
        Some("cmgx") => parse_cmgx(text).map(Host::Explicit),
        _ => parse_cmg(text).map(Host::Nested),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmg_round_trip() {
        let text = "# host\ncmg 1\nk 3\nn 4\ne 2 3 1 # tail\ne 0 1 3\n\n";
        let g = parse_cmg(text).unwrap();
        assert_eq!(g.multiplicity(0, 1), 3);
        let canon = write_cmg(&g);
        assert_eq!(canon, "cmg 1\nn 4\nk 3\ne 0 1 3\ne 2 3 1\n");
        assert_eq!(write_cmg(&parse_cmg(&canon).unwrap()), canon);
    }

    #[test]
    fn cmg_errors() {
        for bad in [
            "cmg 2\nn 2\nk 1\n",
            "cmg 1\nn 2\n",
            "cmg 1\nn 3\nk 2\ne 0 1 1\ne 0 1 2\n",
            "cmg 1\nn 3\nk 2\ne 1 1 1\n",
            "cmg 1\nn 3\nk 2\ne 1 0 1\n",
            "cmg 1\nn 3\nk 2\ne 0 1 3\n",
            "cmg 1\nn 3\nk 2\ne 0 1 0\n",
            "cmg 1\nn 3\nk 2\ne 0 1 1\nn 4\n",
            "cmg 1\nn 3\nk 2\nx 0 1\n",
            "cmg 1\nn -3\nk 2\n",
        ] {
            assert!(parse_cmg(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn cmgx_round_trip() {
        let text = "cmgx 1\nn 3\nk 3\nc 1 2 3 1\nc 0 1 2\n";
        let g = parse_cmgx(text).unwrap();
        let canon = write_cmgx(&g);
        assert_eq!(canon, "cmgx 1\nn 3\nk 3\nc 0 1 2\nc 1 2 1 3\n");
        assert_eq!(parse_cmgx(&canon).unwrap(), g);
        assert!(parse_cmgx("cmgx 1\nn 3\nk 3\nc 0 1 2 2\n").is_err());
        assert!(parse_cmgx("cmgx 1\nn 3\nk 3\nc 0 1 4\n").is_err());
        assert!(parse_cmgx("cmgx 1\nn 3\nk 3\nc 0 1\n").is_err());
    }

    #[test]
    fn pat_round_trip() {
        let text = "pat 1\nn 3\nhmax 2\ne 0 1 1\ne 1 2 2\ne 0 2 1\n";
        let h = parse_pat(text).unwrap();
        assert_eq!(h.h(), 4);
        let canon = write_pat(&h);
        assert_eq!(parse_pat(&canon).unwrap(), h);
        assert!(parse_pat("pat 1\nn 3\nhmax 1\ne 0 1 2\n").is_err());
    }

    #[test]
    fn host_dispatch() {
        assert!(matches!(parse_host("cmgx 1\nn 2\nk 1\n").unwrap(), Host::Explicit(_)));
        assert!(matches!(parse_host("cmg 1\nn 2\nk 1\n").unwrap(), Host::Nested(_)));
    }
}
