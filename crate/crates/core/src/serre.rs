//! Defining relations: standard Serre elements and the fourteen families of
//! higher-order Serre elements attached to full sub-diagrams.

use std::fmt;

use itertools::Itertools;
use serde_json::json;

use crate::cartan::CartanData;
use crate::dynkin::{latex_scalar, Color, DynkinDiagram};
use crate::error::SerreError;
use crate::freelie::{FreeLie, LieExpr, LiePoly, LieTree, Multidegree};
use crate::rootdata::{RootDatum, SimpleSystem};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    E,
    F,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::E => 'e',
            Side::F => 'f',
        }
    }
}

/// Where an element comes from: a standard Serre element or one of the
/// higher-order cases 1 to 14.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Standard,
    Case(u8),
}

impl Provenance {
    pub fn is_higher_order(self) -> bool {
        matches!(self, Provenance::Case(_))
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Standard => f.write_str("standard"),
            Provenance::Case(n) => write!(f, "case-{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerrePolynomial {
    pub side: Side,
    pub expr: LieExpr,
    pub degree: Multidegree,
    pub provenance: Provenance,
    /// Matched nodes (0-based), in the role order of the pattern.
    pub nodes: Vec<usize>,
}

impl SerrePolynomial {
    pub fn height(&self) -> u32 {
        self.degree.iter().sum()
    }

    /// The same element on the other side (`e_i ↔ f_i`).
    pub fn mirror(&self) -> SerrePolynomial {
        SerrePolynomial {
            side: match self.side {
                Side::E => Side::F,
                Side::F => Side::E,
            },
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        render_expr(&self.expr, |t| t.render(self.side.letter()), false)
    }

    pub fn to_latex(&self) -> String {
        render_expr(&self.expr, |t| t.render_latex(self.side.letter()), true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "side": self.side.letter().to_string(),
            "provenance": self.provenance.to_string(),
            "nodes": self.nodes.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "degree": self.degree,
            "terms": self.expr.terms.iter().map(|(c, t)| json!({
                "coeff": c.to_string(),
                "tree": t.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn coefficient_prefix(c: &Scalar, latex: bool) -> (bool, String) {
    let neg = c.signum() < 0 && c.is_rational();
    let mag = if neg { -c.clone() } else { c.clone() };
    let body = if mag.is_one() {
        String::new()
    } else {
        let s = if latex {
            latex_scalar(&mag)
        } else {
            mag.to_string()
        };
        let compound = s.contains(['+', '-', '/']);
        let s = if compound { format!("({s})") } else { s };
        if latex {
            s
        } else {
            format!("{s}*")
        }
    };
    (neg, body)
}

fn render_expr(e: &LieExpr, tree: impl Fn(&LieTree) -> String, latex: bool) -> String {
    let mut out = String::new();
    for (k, (c, t)) in e.terms.iter().enumerate() {
        let (neg, body) = coefficient_prefix(c, latex);
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
        out.push_str(&tree(t));
    }
    out
}

fn g(i: usize) -> LieTree {
    LieTree::gen(i)
}

fn br(x: LieTree, y: LieTree) -> LieTree {
    LieTree::br(x, y)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `(ad e_i)^k (e_j)`.
fn ad_power(i: usize, k: u32, j: usize) -> LieTree {
    (0..k).fold(g(j), |acc, _| br(g(i), acc))
}

/// Standard Serre elements, in the order: pairs `(i, j)` lexicographically,
/// then the squares of isotropic generators.
pub fn standard_serre_elements(cd: &CartanData) -> Result<Vec<SerrePolynomial>, SerreError> {
    let r = cd.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j || (cd.is_isotropic(i) && !cd.a[i][j].is_zero()) {
                continue;
            }
            let a = &cd.a[i][j];
            let exponent = match a.to_integer() {
                Some(v) if v <= 0 => (1 - v) as u32,
                _ => {
                    return Err(SerreError::NonIntegralExponent {
                        i: i + 1,
                        j: j + 1,
                        value: a.to_string(),
                    })
                }
            };
            let t = ad_power(i, exponent, j);
            out.push(SerrePolynomial {
                side: Side::E,
                degree: t.degree(r),
                expr: LieExpr::single(t),
                provenance: Provenance::Standard,
                nodes: vec![i, j],
            });
        }
    }
    for t in (0..r).filter(|&t| cd.is_isotropic(t)) {
        let tree = br(g(t), g(t));
        out.push(SerrePolynomial {
            side: Side::E,
            degree: tree.degree(r),
            expr: LieExpr::single(tree),
            provenance: Provenance::Standard,
            nodes: vec![t],
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// White or grey.
    Cross,
    Is(Color),
}

impl Slot {
    fn admits(self, c: Color) -> bool {
        match self {
            Slot::Cross => c != Color::Black,
            Slot::Is(x) => x == c,
        }
    }
}

const W: Slot = Slot::Is(Color::White);
const G: Slot = Slot::Is(Color::Grey);
const B: Slot = Slot::Is(Color::Black);
const X: Slot = Slot::Cross;

/// A sub-diagram shape: slots in role order and edges between roles, each
/// `(a, b, count, arrow towards role)`. Role pairs not listed are unjoined.
struct Pattern {
    case: u8,
    slots: &'static [Slot],
    edges: &'static [(usize, usize, u8, Option<usize>)],
}

const PATTERNS: &[Pattern] = &[
    // j - t - k
    Pattern {
        case: 1,
        slots: &[X, G, X],
        edges: &[(0, 1, 1, None), (1, 2, 1, None)],
    },
    // j - t ⇒ k
    Pattern {
        case: 2,
        slots: &[X, G, W],
        edges: &[(0, 1, 1, None), (1, 2, 2, Some(2))],
    },
    Pattern {
        case: 3,
        slots: &[X, G, B],
        edges: &[(0, 1, 1, None), (1, 2, 2, Some(2))],
    },
    // j - t ⇐ k
    Pattern {
        case: 4,
        slots: &[G, G, W],
        edges: &[(0, 1, 1, None), (1, 2, 2, Some(1))],
    },
    // i - j - t ⇐ k
    Pattern {
        case: 5,
        slots: &[X, W, G, W],
        edges: &[(0, 1, 1, None), (1, 2, 1, None), (2, 3, 2, Some(2))],
    },
    // i joined to t and s, t = s
    Pattern {
        case: 6,
        slots: &[X, G, G],
        edges: &[(0, 1, 1, None), (0, 2, 1, None), (1, 2, 2, None)],
    },
    // 1 ≡> 2 <= 3 - 4
    Pattern {
        case: 7,
        slots: &[W, G, W, W],
        edges: &[(0, 1, 3, Some(1)), (1, 2, 2, Some(1)), (2, 3, 1, None)],
    },
    // 1 ≡> 2 - 3 <= 4
    Pattern {
        case: 8,
        slots: &[W, G, W, W],
        edges: &[(0, 1, 3, Some(1)), (1, 2, 1, None), (2, 3, 2, Some(2))],
    },
    // k => t = j
    Pattern {
        case: 9,
        slots: &[W, G, G],
        edges: &[(0, 1, 2, Some(1)), (1, 2, 2, None)],
    },
    // grey triangle with multiplicities 1, 2, 3
    Pattern {
        case: 10,
        slots: &[G, G, G],
        edges: &[(0, 1, 1, None), (0, 2, 2, None), (1, 2, 3, None)],
    },
    // 1 - 2 <≡ 3
    Pattern {
        case: 11,
        slots: &[G, G, W],
        edges: &[(0, 1, 1, None), (1, 2, 3, Some(1))],
    },
    // 1 <= 2 <≡ 3
    Pattern {
        case: 12,
        slots: &[B, G, W],
        edges: &[(0, 1, 2, Some(0)), (1, 2, 3, Some(1))],
    },
    // white 1 with grey 2 and 3
    Pattern {
        case: 13,
        slots: &[W, G, G],
        edges: &[(0, 1, 1, None), (0, 2, 2, Some(0)), (1, 2, 3, None)],
    },
];

impl Pattern {
    fn edge(&self, a: usize, b: usize) -> Option<(u8, Option<usize>)> {
        self.edges.iter().find_map(|&(x, y, n, arrow)| {
            ((x, y) == (a, b) || (x, y) == (b, a)).then_some((n, arrow))
        })
    }

    /// Whether `roles[k]` (a diagram node per role) realises the pattern.
    fn matches(&self, diag: &DynkinDiagram, roles: &[usize]) -> bool {
        if !self
            .slots
            .iter()
            .zip(roles)
            .all(|(s, &v)| s.admits(diag.nodes[v]))
        {
            return false;
        }
        (0..roles.len()).tuple_combinations().all(|(a, b)| {
            let want = self.edge(a, b);
            match (diag.edge(roles[a], roles[b]), want) {
                (None, None) => true,
                (Some(e), Some((n, arrow))) => {
                    e.count == n && e.arrow_towards == arrow.map(|k| roles[k])
                }
                _ => false,
            }
        })
    }

    fn element(&self, cd: &CartanData, r: &[usize]) -> Option<Vec<(Scalar, LieTree)>> {
        let one = Scalar::one;
        Some(match self.case {
            1 => {
                let (j, t, k) = (r[0], r[1], r[2]);
                // Outside D(2,1;α) both edges have |b| = d_t, so the sign
                // condition says b_jt + b_tk = 0. The labels of D(2,1;α)
                // never cancel, and the quartic would kill a root there.
                if cd.sgn[j][t] * cd.sgn[t][k] != -1 || !(&cd.b[j][t] + &cd.b[t][k]).is_zero() {
                    return None;
                }
                vec![(one(), br(g(t), br(g(j), br(g(t), g(k)))))]
            }
            2 | 3 | 9 => {
                let (j, t, k) = if self.case == 9 {
                    (r[2], r[1], r[0])
                } else {
                    (r[0], r[1], r[2])
                };
                vec![(one(), br(g(t), br(g(j), br(g(t), g(k)))))]
            }
            4 => {
                let (j, t, k) = (r[0], r[1], r[2]);
                let jt = br(g(j), g(t));
                vec![(one(), br(jt.clone(), br(jt, br(g(t), g(k)))))]
            }
            5 => {
                let (i, j, t, k) = (r[0], r[1], r[2], r[3]);
                let jt = br(g(j), g(t));
                vec![(one(), br(br(g(i), jt.clone()), br(jt, br(g(t), g(k)))))]
            }
            6 => {
                let (i, t, s) = (r[0], r[1], r[2]);
                vec![
                    (one(), br(g(t), br(g(s), g(i)))),
                    (int(-1), br(g(s), br(g(t), g(i)))),
                ]
            }
            7 => {
                let (n1, n2, n3, n4) = (r[0], r[1], r[2], r[3]);
                let e = br(br(g(n1), g(n2)), br(g(n2), g(n3)));
                let tail = br(g(n2), br(g(n3), g(n4)));
                vec![(one(), br(e.clone(), br(e, tail)))]
            }
            8 => {
                let (n1, n2, n3, n4) = (r[0], r[1], r[2], r[3]);
                let (e12, e23, e34) = (br(g(n1), g(n2)), br(g(n2), g(n3)), br(g(n3), g(n4)));
                vec![
                    (one(), br(e12.clone(), br(e23.clone(), e34.clone()))),
                    (int(-1), br(e23, br(e12, e34))),
                ]
            }
            10 => {
                let (i, j, k) = (r[0], r[1], r[2]);
                vec![
                    (int(2), br(g(i), br(g(k), g(j)))),
                    (int(3), br(g(j), br(g(k), g(i)))),
                ]
            }
            11 => {
                let (n1, n2, n3) = (r[0], r[1], r[2]);
                let e12 = br(g(n1), g(n2));
                let inner = br(e12.clone(), br(g(n2), g(n3)));
                vec![(one(), br(e12.clone(), br(e12, inner)))]
            }
            12 => {
                let (n1, n2, n3) = (r[0], r[1], r[2]);
                let e21 = br(g(n2), g(n1));
                vec![
                    (one(), br(e21.clone(), br(g(n3), e21))),
                    (int(-1), br(br(g(n2), g(n3)), br(br(g(n1), g(n1)), g(n2)))),
                ]
            }
            13 => {
                let (n1, n2, n3) = (r[0], r[1], r[2]);
                vec![
                    (one(), br(g(n2), br(g(n3), g(n1)))),
                    (int(-2), br(g(n3), br(g(n2), g(n1)))),
                ]
            }
            _ => unreachable!("case 14 is matched by labels"),
        })
    }
}

/// Matched nodes in role order, with the element's terms.
type Match = (Vec<usize>, Vec<(Scalar, LieTree)>);

/// The D(2,1;α) triangle: three grey nodes joined pairwise. Roles are read
/// from the edge labels `1`, `α`, `−(1+α)` on edges 1–2, 1–3, 2–3.
fn case14(cd: &CartanData, diag: &DynkinDiagram, nodes: &[usize]) -> Vec<Match> {
    if nodes.iter().any(|&v| diag.nodes[v] != Color::Grey) {
        return Vec::new();
    }
    let label = |a: usize, b: usize| diag.edge(a, b).and_then(|e| e.b_label.clone());
    if nodes
        .iter()
        .tuple_combinations()
        .any(|(&a, &b)| label(a, b).is_none())
    {
        return Vec::new();
    }
    let element = |alpha: &Scalar, r: &[usize]| {
        vec![
            (alpha.clone(), br(g(r[0]), br(g(r[1]), g(r[2])))),
            (alpha + &Scalar::one(), br(g(r[1]), br(g(r[0]), g(r[2])))),
        ]
    };
    let alpha = match &cd.family {
        crate::rootdata::Family::D21 { alpha } => alpha.clone(),
        _ => return Vec::new(),
    };
    let target = [Scalar::one(), alpha.clone(), -(&alpha + &Scalar::one())];
    let exact: Vec<_> = nodes
        .iter()
        .copied()
        .permutations(3)
        .filter(|r| {
            [label(r[0], r[1]), label(r[0], r[2]), label(r[1], r[2])]
                .iter()
                .zip(&target)
                .all(|(l, t)| l.as_ref() == Some(t))
        })
        .map(|r| (r.clone(), element(&alpha, &r)))
        .collect();
    if !exact.is_empty() {
        return exact;
    }
    // Labels only proportional to the pattern: read α off the drawn edges.
    let r = nodes.to_vec();
    let (l12, l13) = (label(r[0], r[1]).unwrap(), label(r[0], r[2]).unwrap());
    let a = l13.checked_div(&l12).expect("edge labels are nonzero");
    vec![(r.clone(), element(&a, &r))]
}

/// Higher-order Serre elements of every full sub-diagram matching one of the
/// fourteen patterns, before deduplication.
pub fn higher_order_serre_elements(
    cd: &CartanData,
    diag: &DynkinDiagram,
) -> Result<Vec<SerrePolynomial>, SerreError> {
    let rank = cd.rank();
    let mut out = Vec::new();
    let mut push = |case: u8, roles: Vec<usize>, terms: Vec<(Scalar, LieTree)>| {
        let degree = terms[0].1.degree(rank);
        out.push(SerrePolynomial {
            side: Side::E,
            expr: LieExpr::new(terms),
            degree,
            provenance: Provenance::Case(case),
            nodes: roles,
        });
    };
    for size in [3, 4] {
        for sub in (0..rank).combinations(size) {
            for p in PATTERNS.iter().filter(|p| p.slots.len() == size) {
                for roles in sub.iter().copied().permutations(size) {
                    // Cases 1 and 6 are symmetric in two roles; keep one orientation.
                    let mirrored = match p.case {
                        1 => roles[0] > roles[2],
                        6 => roles[1] > roles[2],
                        _ => false,
                    };
                    if !mirrored && p.matches(diag, &roles) {
                        if let Some(terms) = p.element(cd, &roles) {
                            push(p.case, roles, terms);
                        }
                    }
                }
            }
            if size == 3 {
                for (roles, terms) in case14(cd, diag, &sub) {
                    push(14, roles, terms);
                }
            }
        }
    }
    for s in &out {
        let first = s.expr.terms[0].1.degree(rank);
        if s.expr.terms.iter().any(|(_, t)| t.degree(rank) != first) {
            return Err(SerreError::DiagramConsistency {
                case: s.provenance.to_string(),
                detail: "terms of different multidegree".into(),
            });
        }
    }
    Ok(out)
}

/// Drops elements that are zero or proportional to an earlier element in
/// the free Lie superalgebra.
pub fn deduplicate(
    elements: Vec<SerrePolynomial>,
    free: &FreeLie,
) -> Vec<(SerrePolynomial, LiePoly)> {
    let mut kept: Vec<(SerrePolynomial, LiePoly)> = Vec::new();
    for s in elements {
        let p = free
            .normalize(&s.expr)
            .expect("Serre elements are homogeneous");
        if p.is_zero() || kept.iter().any(|(_, q)| q.is_proportional(&p)) {
            continue;
        }
        kept.push((s, p));
    }
    kept
}

/// The full relation set of `(A, Θ)` for one Borel class.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cartan: CartanData,
    pub diagram: DynkinDiagram,
    pub e_side: Vec<SerrePolynomial>,
    pub f_side: Vec<SerrePolynomial>,
    /// Normal forms of `e_side`, index for index.
    pub normal_forms: Vec<LiePoly>,
}

impl Presentation {
    pub fn new(datum: &RootDatum, pi: &SimpleSystem) -> Result<Self, SerreError> {
        Self::from_cartan(CartanData::new(datum, pi))
    }

    pub fn from_cartan(cartan: CartanData) -> Result<Self, SerreError> {
        let diagram = DynkinDiagram::new(&cartan);
        let free = FreeLie::new(cartan.parities());
        let mut all = standard_serre_elements(&cartan)?;
        all.extend(higher_order_serre_elements(&cartan, &diagram)?);
        let (e_side, normal_forms): (Vec<_>, Vec<_>) = deduplicate(all, &free).into_iter().unzip();
        let f_side = e_side.iter().map(SerrePolynomial::mirror).collect();
        Ok(Presentation {
            cartan,
            diagram,
            e_side,
            f_side,
            normal_forms,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn higher_order(&self) -> impl Iterator<Item = (usize, &SerrePolynomial)> {
        self.e_side
            .iter()
            .enumerate()
            .filter(|(_, s)| s.provenance.is_higher_order())
    }

    /// The same presentation with one e-side element (and its mirror) removed.
    pub fn without(&self, index: usize) -> Presentation {
        let mut p = self.clone();
        p.e_side.remove(index);
        p.f_side.remove(index);
        p.normal_forms.remove(index);
        p
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("quadratic: [h_i,h_j]=0, [h_i,e_j]=a_ij e_j, [h_i,f_j]=-a_ij f_j, [e_i,f_j]=delta_ij h_i\n");
        for side in [&self.e_side, &self.f_side] {
            for s in side {
                let nodes: Vec<String> = s.nodes.iter().map(|i| (i + 1).to_string()).collect();
                out.push_str(&format!(
                    "{} = 0    ({}; nodes {})\n",
                    s.to_text(),
                    s.provenance,
                    nodes.join(",")
                ));
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{aligned}\n");
        out.push_str("&[h_i,h_j]=0,\\quad [h_i,e_j]=a_{ij}e_j,\\quad [h_i,f_j]=-a_{ij}f_j,\\quad [e_i,f_j]=\\delta_{ij}h_i\\\\\n");
        for (e, f) in self.e_side.iter().zip(&self.f_side) {
            out.push_str(&format!(
                "&{}=0,\\quad {}=0 && \\text{{{}}}\\\\\n",
                e.to_latex(),
                f.to_latex(),
                e.provenance
            ));
        }
        out.push_str("\\end{aligned}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "cartan": self.cartan.to_json(),
            "quadratic": "implicit",
            "eSide": self.e_side.iter().map(SerrePolynomial::to_json).collect::<Vec<_>>(),
            "fSide": self.f_side.iter().map(SerrePolynomial::to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn pres(f: Family) -> Presentation {
        let d = RootDatum::new(f).unwrap();
        Presentation::new(&d, &d.distinguished()).unwrap()
    }

    fn rendered(p: &Presentation, higher: bool) -> Vec<String> {
        p.e_side
            .iter()
            .filter(|s| s.provenance.is_higher_order() == higher)
            .map(SerrePolynomial::to_text)
            .collect()
    }

    #[test]
    fn sl21_standard_elements() {
        let p = pres(Family::A { m: 1, n: 0 });
        assert_eq!(rendered(&p, false), vec!["[e1,[e1,e2]]", "[e2,e2]"]);
        assert!(rendered(&p, true).is_empty());
        assert_eq!(p.f_side.len(), 2);
        assert_eq!(p.f_side[0].to_text(), "[f1,[f1,f2]]");
    }

    #[test]
    fn osp12_has_no_serre_elements() {
        assert!(pres(Family::B { m: 0, n: 1 }).e_side.is_empty());
    }

    #[test]
    fn sl22_versus_osp42() {
        let sl = pres(Family::A { m: 1, n: 1 });
        assert_eq!(rendered(&sl, true), vec!["[e2,[e1,[e2,e3]]]"]);
        assert!(sl.to_latex().contains("[e_2,[e_1,[e_2,e_3]]]"));
        let osp = pres(Family::D { m: 2, n: 1 });
        assert!(rendered(&osp, true).is_empty());
    }

    #[test]
    fn unjoined_isotropic_pair() {
        let mut cd = CartanData::new(
            &RootDatum::new(Family::A { m: 1, n: 1 }).unwrap(),
            &RootDatum::new(Family::A { m: 1, n: 1 })
                .unwrap()
                .distinguished(),
        );
        // Two grey nodes with a_12 = 0.
        cd.a = vec![vec![Scalar::zero(); 2]; 2];
        cd.b = cd.a.clone();
        cd.theta = vec![0, 1];
        cd.sgn = vec![vec![0; 2]; 2];
        cd.d.truncate(2);
        let s: Vec<String> = standard_serre_elements(&cd)
            .unwrap()
            .iter()
            .map(SerrePolynomial::to_text)
            .collect();
        assert_eq!(s, vec!["[e1,e2]", "[e2,e1]", "[e1,e1]", "[e2,e2]"]);
        let free = FreeLie::new(vec![true, true]);
        let kept = deduplicate(standard_serre_elements(&cd).unwrap(), &free);
        assert_eq!(kept.len(), 3);
    }

    #[test]
    fn non_integral_exponent_is_an_error() {
        let d = RootDatum::new(Family::A { m: 1, n: 0 }).unwrap();
        let mut cd = CartanData::new(&d, &d.distinguished());
        cd.a[0][1] = Scalar::ratio(-1, 2);
        assert!(matches!(
            standard_serre_elements(&cd),
            Err(SerreError::NonIntegralExponent { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn d21_triangle() {
        let d = RootDatum::new(Family::d21_generic()).unwrap();
        let found: Vec<String> = d
            .simple_systems()
            .iter()
            .flat_map(|pi| {
                let p = Presentation::new(&d, pi).unwrap();
                rendered(&p, true)
            })
            .collect();
        // Classes with a grey centre have opposite signs for α > 0 but
        // labels that never cancel; only the all-grey class has a relation.
        assert_eq!(found, vec!["a*[e1,[e2,e3]] + (1+a)*[e2,[e1,e3]]"]);
    }

    #[test]
    fn distinguished_systems_only_fire_the_first_two_cases() {
        for f in [
            Family::A { m: 2, n: 1 },
            Family::B { m: 1, n: 2 },
            Family::C { n: 3 },
            Family::D { m: 2, n: 2 },
            Family::F4,
            Family::G3,
            Family::d21_generic(),
        ] {
            let p = pres(f.clone());
            for (_, s) in p.higher_order() {
                assert!(
                    matches!(s.provenance, Provenance::Case(1 | 2)),
                    "{f}: {}",
                    s.provenance
                );
            }
        }
    }

    #[test]
    fn mirror_and_homogeneity() {
        let d = RootDatum::new(Family::F4).unwrap();
        for pi in d.simple_systems() {
            let p = Presentation::new(&d, &pi).unwrap();
            let free = FreeLie::new(p.cartan.parities());
            for (e, f) in p.e_side.iter().zip(&p.f_side) {
                assert_eq!((e.side, f.side), (Side::E, Side::F));
                assert_eq!(e.expr, f.expr);
                for (_, t) in &e.expr.terms {
                    assert_eq!(t.degree(4), e.degree);
                    assert_eq!(t.parity(free.parities()), free.degree_parity(&e.degree));
                }
            }
        }
    }
}
