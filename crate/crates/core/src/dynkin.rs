//! Decorated Dynkin diagrams: node colours, edge multiplicities, arrows,
//! signs and the D(2,1;α) edge labels. Serialises to ASCII, JSON and LaTeX.

use std::fmt::Write as _;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::error::FormatError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Grey,
    Black,
}

impl Color {
    fn glyph(self) -> &'static str {
        match self {
            Color::White => "O",
            Color::Grey => "(x)",
            Color::Black => "@",
        }
    }
}

/// An edge between nodes `i < j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub count: u8,
    pub arrow_towards: Option<usize>,
    pub sign: i8,
    pub b_label: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub nodes: Vec<Color>,
    /// Edges with `count > 0`, sorted by `(i, j)`.
    pub edges: Vec<Edge>,
}

/// Output formats for diagrams, Cartan data and relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Json,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = FormatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            other => Err(FormatError::Unknown(other.to_string())),
        }
    }
}

/// An arrow decision that disagreed between the two endpoints of an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowConflict {
    pub i: usize,
    pub j: usize,
}

fn abs_int(x: &Scalar) -> u8 {
    let v = x
        .to_integer()
        .unwrap_or_else(|| panic!("Cartan entry {x} is not an integer"));
    v.unsigned_abs() as u8
}

impl DynkinDiagram {
    /// Builds the diagram of `cd`; the second component lists edges where
    /// the arrow rule gave different answers from the two endpoints.
    pub fn with_conflicts(cd: &CartanData) -> (Self, Vec<ArrowConflict>) {
        let r = cd.rank();
        let d21 = cd.family.is_d21();
        let nodes: Vec<Color> = (0..r)
            .map(|i| {
                if cd.is_isotropic(i) {
                    Color::Grey
                } else if cd.is_odd(i) {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect();
        let mut edges = Vec::new();
        let mut conflicts = Vec::new();
        for (i, j) in (0..r).tuple_combinations() {
            if d21 {
                if !cd.a[i][j].is_zero() {
                    edges.push(Edge {
                        i,
                        j,
                        count: 1,
                        arrow_towards: None,
                        sign: cd.sgn[i][j],
                        b_label: Some(cd.b_label(i, j)),
                    });
                }
                continue;
            }
            let gi = nodes[i] == Color::Grey;
            let gj = nodes[j] == Color::Grey;
            let count = if gi && gj {
                abs_int(&cd.a[i][j])
            } else {
                abs_int(&cd.a[i][j]).max(abs_int(&cd.a[j][i]))
            };
            if count == 0 {
                continue;
            }
            let mut arrow = None;
            if count > 1 && !(gi && gj) {
                // From a non-grey endpoint p: towards the other end iff −a_pq = 1.
                let rule = |p: usize, q: usize| {
                    if abs_int(&cd.a[p][q]) == 1 {
                        q
                    } else {
                        p
                    }
                };
                let from_i = (!gi).then(|| rule(i, j));
                let from_j = (!gj).then(|| rule(j, i));
                arrow = match (from_i, from_j) {
                    (Some(x), Some(y)) if x != y => {
                        conflicts.push(ArrowConflict { i, j });
                        Some(x)
                    }
                    (Some(x), _) | (None, Some(x)) => Some(x),
                    (None, None) => None,
                };
            }
            edges.push(Edge {
                i,
                j,
                count,
                arrow_towards: arrow,
                sign: cd.sgn[i][j],
                b_label: None,
            });
        }
        (DynkinDiagram { nodes, edges }, conflicts)
    }

    pub fn new(cd: &CartanData) -> Self {
        Self::with_conflicts(cd).0
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&Edge> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().find(|e| e.i == i && e.j == j)
    }

    pub fn count(&self, i: usize, j: usize) -> u8 {
        self.edge(i, j).map_or(0, |e| e.count)
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| {
            if e.i == i {
                Some(e.j)
            } else if e.j == i {
                Some(e.i)
            } else {
                None
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.rank()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v).collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The full sub-diagram on `subset`, renumbered in the order given.
    pub fn induced(&self, subset: &[usize]) -> DynkinDiagram {
        let pos = |v: usize| subset.iter().position(|&x| x == v);
        let nodes = subset.iter().map(|&v| self.nodes[v]).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|e| {
                let (a, b) = (pos(e.i)?, pos(e.j)?);
                let (i, j) = if a < b { (a, b) } else { (b, a) };
                Some(Edge {
                    i,
                    j,
                    count: e.count,
                    arrow_towards: e.arrow_towards.and_then(pos),
                    sign: e.sign,
                    b_label: e.b_label.clone(),
                })
            })
            .collect();
        edges.sort_by_key(|e| (e.i, e.j));
        DynkinDiagram { nodes, edges }
    }

    /// Every `k`-subset of nodes with its full sub-diagram.
    pub fn full_subdiagrams(&self, k: usize) -> Vec<Subdiagram> {
        (0..self.rank())
            .combinations(k)
            .map(|nodes| {
                let diagram = self.induced(&nodes);
                let connected = diagram.is_connected();
                Subdiagram {
                    nodes,
                    diagram,
                    connected,
                }
            })
            .collect()
    }

    /// A node map `pattern → self` preserving colours, multiplicities and
    /// arrows (and signs and labels when `decorated`), if one exists.
    pub fn isomorphism_from(&self, pattern: &DynkinDiagram, decorated: bool) -> Option<Vec<usize>> {
        if pattern.rank() != self.rank() || pattern.edges.len() != self.edges.len() {
            return None;
        }
        let n = self.rank();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(pattern, decorated, 0, &mut map, &mut used)
            .then_some(map)
    }

    fn extend_iso(
        &self,
        pattern: &DynkinDiagram,
        decorated: bool,
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == pattern.rank() {
            return true;
        }
        for v in 0..self.rank() {
            if used[v] || self.nodes[v] != pattern.nodes[k] {
                continue;
            }
            map[k] = v;
            let ok = (0..k).all(|p| {
                let pe = pattern.edge(p, k);
                let se = self.edge(map[p], v);
                match (pe, se) {
                    (None, None) => true,
                    (Some(a), Some(b)) => {
                        a.count == b.count
                            && a.arrow_towards.map(|t| map[t]) == b.arrow_towards
                            && (!decorated || (a.sign == b.sign && a.b_label == b.b_label))
                    }
                    _ => false,
                }
            });
            if ok {
                used[v] = true;
                if self.extend_iso(pattern, decorated, k + 1, map, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        map[k] = usize::MAX;
        false
    }

    /// Serialises in the requested format. `Text` is an alias of `Ascii`.
    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Ascii | Format::Text => self.to_ascii(),
            Format::Json => self.to_json_string(),
            Format::Latex => self.to_latex(),
        }
    }

    fn connector(&self, e: &Edge, left: usize) -> String {
        let body = match e.count {
            1 => "-",
            2 => "=",
            _ => "#",
        };
        match e.arrow_towards {
            Some(t) if t == left => format!("<{body}"),
            Some(_) => format!("{body}>"),
            None => body.repeat(2),
        }
    }

    /// One line with the nodes in index order joined by the edges between
    /// neighbours, then one line per remaining edge, then signs and labels.
    ///
    /// `O` white, `(x)` grey, `@` black; `--` single, `==` double, `##`
    /// triple, with `<`/`>` marking the arrow.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.nodes.iter().enumerate() {
            if k > 0 {
                match self.edge(k - 1, k) {
                    Some(e) => out.push_str(&self.connector(e, k - 1)),
                    None => out.push_str("  "),
                }
            }
            out.push_str(c.glyph());
        }
        out.push('\n');
        for e in self.edges.iter().filter(|e| e.j != e.i + 1) {
            let _ = writeln!(out, "{}{}{}", e.i + 1, self.connector(e, e.i), e.j + 1);
        }
        if !self.edges.is_empty() {
            let signs = self
                .edges
                .iter()
                .map(|e| {
                    let s = match e.sign {
                        1 => "+",
                        -1 => "-",
                        _ => "0",
                    };
                    format!("{}-{}:{s}", e.i + 1, e.j + 1)
                })
                .join(" ");
            let _ = writeln!(out, "sgn {signs}");
        }
        if self.edges.iter().any(|e| e.b_label.is_some()) {
            let labels = self
                .edges
                .iter()
                .filter_map(|e| Some(format!("{}-{}:{}", e.i + 1, e.j + 1, e.b_label.as_ref()?)))
                .join(" ");
            let _ = writeln!(out, "b {labels}");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson::from(self)).expect("diagram serialises")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let raw: DiagramJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_latex(&self) -> String {
        let node = |c: Color| match c {
            Color::White => "\\bigcirc",
            Color::Grey => "\\otimes",
            Color::Black => "\\bullet",
        };
        let conn = |e: &Edge, left: usize| {
            let s = match (e.count, e.arrow_towards) {
                (1, _) => "-",
                (2, None) => "=",
                (2, Some(t)) if t == left => "\\Leftarrow",
                (2, Some(_)) => "\\Rightarrow",
                (_, None) => "\\equiv",
                (_, Some(t)) if t == left => "\\Lleftarrow",
                (_, Some(_)) => "\\Rrightarrow",
            };
            let sign = match e.sign {
                1 => "+",
                -1 => "-",
                _ => "0",
            };
            let over = match &e.b_label {
                Some(b) => latex_scalar(b),
                None => sign.to_string(),
            };
            format!("\\overset{{{over}}}{{{s}}}")
        };
        let mut out = String::new();
        for (k, c) in self.nodes.iter().enumerate() {
            if k > 0 {
                match self.edge(k - 1, k) {
                    Some(e) => {
                        let _ = write!(out, " {} ", conn(e, k - 1));
                    }
                    None => out.push_str(" \\quad "),
                }
            }
            let _ = write!(out, "\\underset{{{}}}{{{}}}", k + 1, node(*c));
        }
        let extra: Vec<String> = self
            .edges
            .iter()
            .filter(|e| e.j != e.i + 1)
            .map(|e| format!("{} {} {}", e.i + 1, conn(e, e.i), e.j + 1))
            .collect();
        if extra.is_empty() {
            format!("${out}$\n")
        } else {
            format!("${out} \\qquad {}$\n", extra.join(",\\ "))
        }
    }
}

/// A full sub-diagram together with the node subset it came from.
#[derive(Clone, Debug)]
pub struct Subdiagram {
    pub nodes: Vec<usize>,
    pub diagram: DynkinDiagram,
    pub connected: bool,
}

/// LaTeX form of a scalar: `a` becomes `\alpha`, products lose their `*`.
pub fn latex_scalar(x: &Scalar) -> String {
    x.to_string().replace('a', "\\alpha{}").replace('*', "")
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    nodes: Vec<Color>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct EdgeJson {
    i: usize,
    j: usize,
    count: u8,
    arrow_towards: Option<usize>,
    sign: i8,
    b_label: Option<Scalar>,
}

// External indices are 1-based, like the generator names e_1..e_r.
impl From<&DynkinDiagram> for DiagramJson {
    fn from(d: &DynkinDiagram) -> Self {
        DiagramJson {
            nodes: d.nodes.clone(),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeJson {
                    i: e.i + 1,
                    j: e.j + 1,
                    count: e.count,
                    arrow_towards: e.arrow_towards.map(|t| t + 1),
                    sign: e.sign,
                    b_label: e.b_label.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<DiagramJson> for DynkinDiagram {
    type Error = FormatError;
    fn try_from(raw: DiagramJson) -> Result<Self, FormatError> {
        let n = raw.nodes.len();
        let mut edges = Vec::new();
        for e in raw.edges {
            let bad = |why: &str| FormatError::Invalid(format!("edge {}-{}: {why}", e.i, e.j));
            if e.i == 0 || e.j == 0 || e.i > n || e.j > n || e.i >= e.j {
                return Err(bad("indices must satisfy 1 <= i < j <= nodes"));
            }
            if !(1..=3).contains(&e.count) {
                return Err(bad("count must be 1, 2 or 3"));
            }
            if let Some(t) = e.arrow_towards {
                if t != e.i && t != e.j {
                    return Err(bad("arrow must point at an endpoint"));
                }
            }
            edges.push(Edge {
                i: e.i - 1,
                j: e.j - 1,
                count: e.count,
                arrow_towards: e.arrow_towards.map(|t| t - 1),
                sign: e.sign,
                b_label: e.b_label,
            });
        }
        edges.sort_by_key(|e| (e.i, e.j));
        Ok(DynkinDiagram {
            nodes: raw.nodes,
            edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Family, RootDatum};

    fn diagrams(f: Family) -> Vec<DynkinDiagram> {
        let d = RootDatum::new(f).unwrap();
        d.simple_systems()
            .iter()
            .map(|pi| DynkinDiagram::new(&CartanData::new(&d, pi)))
            .collect()
    }

    #[test]
    fn lone_grey_node_json() {
        let d = DynkinDiagram {
            nodes: vec![Color::Grey],
            edges: vec![],
        };
        assert_eq!(d.to_json_string(), r#"{"nodes":["grey"],"edges":[]}"#);
    }

    #[test]
    fn sl22_ascii_with_signs() {
        let d = &diagrams(Family::A { m: 1, n: 1 })[0];
        assert_eq!(d.to_ascii(), "O--(x)--O\nsgn 1-2:- 2-3:+\n");
        let o = &diagrams(Family::D { m: 2, n: 1 })[0];
        assert_eq!(o.to_ascii(), "(x)--O  O\n1--3\nsgn 1-2:- 1-3:-\n");
        // Same undecorated shape, different signs.
        assert!(o.isomorphism_from(d, false).is_some());
        assert!(o.isomorphism_from(d, true).is_none());
    }

    #[test]
    fn distinguished_shapes() {
        assert_eq!(
            diagrams(Family::F4)[0].to_ascii().lines().next(),
            Some("(x)--O<=O--O")
        );
        assert_eq!(
            diagrams(Family::G3)[0].to_ascii().lines().next(),
            Some("(x)--O<#O")
        );
        assert_eq!(
            diagrams(Family::B { m: 0, n: 2 })[0]
                .to_ascii()
                .lines()
                .next(),
            Some("O=>@")
        );
        assert_eq!(
            diagrams(Family::C { n: 3 })[0].to_ascii().lines().next(),
            Some("(x)--O<=O")
        );
        assert_eq!(
            diagrams(Family::B { m: 1, n: 1 })[0]
                .to_ascii()
                .lines()
                .next(),
            Some("(x)=>O")
        );
        let d21 = &diagrams(Family::d21_generic())[0];
        assert_eq!(
            d21.to_ascii(),
            "(x)--O  O\n1--3\nsgn 1-2:- 1-3:-\nb 1-2:-1 1-3:-a\n"
        );
    }

    #[test]
    fn d21_all_grey_triangle() {
        let all = diagrams(Family::d21_generic());
        let tri = all
            .iter()
            .find(|d| d.nodes.iter().all(|c| *c == Color::Grey))
            .unwrap();
        let labels: Vec<String> = tri
            .edges
            .iter()
            .map(|e| e.b_label.as_ref().unwrap().to_string())
            .collect();
        assert_eq!(labels, ["1", "a", "-(1+a)"]);
    }

    #[test]
    fn json_round_trip() {
        for f in [
            Family::F4,
            Family::G3,
            Family::d21_generic(),
            Family::A { m: 2, n: 1 },
        ] {
            for d in diagrams(f) {
                let back = DynkinDiagram::from_json(&d.to_json_string()).unwrap();
                assert_eq!(back, d);
            }
        }
        assert!(DynkinDiagram::from_json(r#"{"nodes":["grey"],"edges":[{"i":1,"j":1,"count":1,"arrowTowards":null,"sign":0,"bLabel":null}]}"#).is_err());
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(
            "svg".parse::<Format>(),
            Err(FormatError::Unknown(_))
        ));
    }

    #[test]
    fn three_node_subdiagrams() {
        let d = &diagrams(Family::A { m: 2, n: 0 })[0];
        let subs = d.full_subdiagrams(3);
        assert_eq!(subs.len(), 1);
        assert!(subs[0].connected);
        assert_eq!(subs[0].diagram, *d);
    }

    #[test]
    fn no_arrow_conflicts_in_classified_diagrams() {
        for f in [
            Family::B { m: 1, n: 2 },
            Family::C { n: 4 },
            Family::D { m: 3, n: 2 },
            Family::F4,
            Family::G3,
        ] {
            let d = RootDatum::new(f.clone()).unwrap();
            for pi in d.simple_systems() {
                let (_, conflicts) = DynkinDiagram::with_conflicts(&CartanData::new(&d, &pi));
                assert!(conflicts.is_empty(), "{f}");
            }
        }
    }
}
