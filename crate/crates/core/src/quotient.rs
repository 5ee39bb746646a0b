//! The positive part of `g(A,Θ)`: the free Lie superalgebra on `e_1..e_r`
//! modulo the ideal generated by the e-side Serre elements, built one height
//! at a time.
//!
//! Height `h` is the span of formal brackets `[x,y]` of basis elements of
//! lower height, subject to super antisymmetry (built into the choice of
//! columns), the super Jacobi identity for every triple of total height `h`,
//! and the relations of height `h`. This is the universal graded extension
//! of the lower levels, so the result is exactly the quotient algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::json;

use crate::error::QuotientError;
use crate::freelie::{free_dimension, FreeLie, LiePoly, LieTree, Multidegree};
use crate::linalg::Echelon;
use crate::scalar::Scalar;
use crate::serre::{Presentation, SerrePolynomial};

/// Sparse vector over quotient basis ids.
pub type Vector = BTreeMap<usize, Scalar>;

fn axpy(acc: &mut Vector, c: &Scalar, v: &Vector) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let t = c * x;
        match acc.get_mut(k) {
            Some(y) => {
                *y += &t;
                if y.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(*k, t);
            }
        }
    }
}

fn koszul(p: bool, q: bool) -> Scalar {
    Scalar::from_int(if p && q { -1 } else { 1 })
}

/// Dimension data of one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDim {
    pub nu: Multidegree,
    pub free: u64,
    pub ideal_rank: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotientReport {
    /// Weights with nonzero free dimension that were examined, by height.
    pub weights: Vec<WeightDim>,
    pub max_height_reached: u32,
    pub closed: bool,
}

impl GradedQuotientReport {
    pub fn positive_dimension(&self) -> usize {
        self.weights.iter().map(|w| w.dim).sum()
    }

    /// `2·dim n⁺ + r`.
    pub fn total_dimension(&self, rank: usize) -> Result<usize, QuotientError> {
        if !self.closed {
            return Err(QuotientError::NotClosed {
                max_height: self.max_height_reached,
            });
        }
        Ok(2 * self.positive_dimension() + rank)
    }

    /// Weights with nonzero quotient dimension.
    pub fn surviving(&self) -> BTreeMap<Multidegree, usize> {
        self.weights
            .iter()
            .filter(|w| w.dim > 0)
            .map(|w| (w.nu.clone(), w.dim))
            .collect()
    }

    pub fn to_json(&self, rank: usize) -> serde_json::Value {
        json!({
            "weights": self.weights.iter().map(|w| json!({
                "nu": w.nu,
                "free": w.free,
                "idealRank": w.ideal_rank,
                "dim": w.dim,
            })).collect::<Vec<_>>(),
            "total": self.total_dimension(rank).ok(),
            "closed": self.closed,
            "maxHeight": self.max_height_reached,
        })
    }
}

#[derive(Clone, Debug)]
struct Elem {
    degree: Multidegree,
    odd: bool,
}

/// The quotient algebra as far as it has been built.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    parities: Vec<bool>,
    relations: Vec<SerrePolynomial>,
    elems: Vec<Elem>,
    by_degree: BTreeMap<Multidegree, Vec<usize>>,
    by_height: Vec<Vec<usize>>,
    table: HashMap<(usize, usize), Vector>,
    height: u32,
    closed: bool,
    weights: Vec<WeightDim>,
}

impl QuotientAlgebra {
    /// Height 1: one basis vector per generator.
    pub fn new(parities: Vec<bool>, relations: Vec<SerrePolynomial>) -> Self {
        let r = parities.len();
        let mut q = QuotientAlgebra {
            parities,
            relations,
            elems: Vec::new(),
            by_degree: BTreeMap::new(),
            by_height: vec![Vec::new(), Vec::new()],
            table: HashMap::new(),
            height: 1,
            closed: r == 0,
            weights: Vec::new(),
        };
        for i in 0..r {
            let mut d = vec![0; r];
            d[i] = 1;
            let id = q.push(d.clone());
            q.weights.push(WeightDim {
                nu: d,
                free: 1,
                ideal_rank: 0,
                dim: 1,
            });
            q.by_height[1].push(id);
        }
        q
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        Self::new(p.cartan.parities(), p.e_side.clone())
    }

    fn push(&mut self, degree: Multidegree) -> usize {
        let id = self.elems.len();
        let odd = degree
            .iter()
            .zip(&self.parities)
            .fold(false, |p, (&k, &o)| p ^ (o && k % 2 == 1));
        self.by_degree.entry(degree.clone()).or_default().push(id);
        self.elems.push(Elem { degree, odd });
        id
    }

    pub fn rank(&self) -> usize {
        self.parities.len()
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self, nu: &[u32]) -> usize {
        self.by_degree.get(nu).map_or(0, Vec::len)
    }

    pub fn report(&self) -> GradedQuotientReport {
        GradedQuotientReport {
            weights: self.weights.clone(),
            max_height_reached: self.height,
            closed: self.closed,
        }
    }

    fn elem_height(&self, a: usize) -> u32 {
        self.elems[a].degree.iter().sum()
    }

    /// `[x_a, x_b]` in the quotient. Brackets above the built height are
    /// zero only once the algebra has closed.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vector {
        let h = self.elem_height(a) + self.elem_height(b);
        assert!(
            h <= self.height || self.closed,
            "bracket of height {h} requested, built up to {}",
            self.height
        );
        self.table.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let mut acc = Vector::new();
        for (a, x) in u {
            for (b, y) in v {
                axpy(&mut acc, &(x * y), &self.bracket_basis(*a, *b));
            }
        }
        acc
    }

    /// Image of a bracket expression.
    pub fn eval_tree(&self, t: &LieTree) -> Vector {
        match t {
            LieTree::Gen(i) => Vector::from([(*i, Scalar::one())]),
            LieTree::Bracket(x, y) => {
                let h = t.degree(self.rank()).iter().sum::<u32>();
                if h > self.height && self.closed {
                    return Vector::new();
                }
                self.bracket(&self.eval_tree(x), &self.eval_tree(y))
            }
        }
    }

    /// Image of an element of the free algebra in normal form.
    pub fn eval_poly(&self, free: &FreeLie, p: &LiePoly) -> Vector {
        let mut acc = Vector::new();
        for (w, c) in p.terms() {
            axpy(&mut acc, c, &self.eval_tree(&free.basis_tree(w)));
        }
        acc
    }

    /// Builds the next height. Returns the dimension data of the new level.
    pub fn step(&mut self) -> Vec<WeightDim> {
        let h = self.height + 1;
        let r = self.rank();
        let prev = self.by_height[h as usize - 1].clone();
        let mut targets = BTreeSet::new();
        for &b in &prev {
            for i in 0..r {
                let mut nu = self.elems[b].degree.clone();
                nu[i] += 1;
                targets.insert(nu);
            }
        }
        let mut level = Vec::new();
        self.by_height.push(Vec::new());
        for nu in targets {
            let free = free_dimension(&self.parities, &nu);
            if free == 0 {
                continue;
            }
            let dim = self.build_weight(&nu);
            level.push(WeightDim {
                nu,
                free,
                ideal_rank: free - dim as u64,
                dim,
            });
        }
        self.height = h;
        if level.iter().all(|w| w.dim == 0) {
            self.closed = true;
        }
        self.weights.extend(level.iter().cloned());
        level
    }

    /// Basis ids of weights below `nu` paired with their complements.
    fn splittings(&self, nu: &[u32]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (d, ids) in &self.by_degree {
            if d.iter().zip(nu).any(|(x, y)| x > y) || d.as_slice() == nu {
                continue;
            }
            let rest: Multidegree = nu.iter().zip(d).map(|(y, x)| y - x).collect();
            if let Some(others) = self.by_degree.get(&rest) {
                for &a in ids {
                    for &b in others {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    fn build_weight(&mut self, nu: &Multidegree) -> usize {
        // Columns: pairs a < b, and a = b for odd a.
        let pairs = self.splittings(nu);
        let mut cols: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(a, b)| a < b || (a == b && self.elems[a].odd))
            .collect();
        cols.sort_unstable();
        let index: HashMap<(usize, usize), usize> =
            cols.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let n = cols.len();
        if n == 0 {
            return 0;
        }
        // A formal bracket [x_a, x_b] at this weight as (column, sign).
        let symbol = |a: usize, b: usize| -> Option<(usize, Scalar)> {
            if a < b || (a == b && self.elems[a].odd) {
                Some((index[&(a, b)], Scalar::one()))
            } else if a == b {
                None
            } else {
                let s = -koszul(self.elems[a].odd, self.elems[b].odd);
                Some((index[&(b, a)], s))
            }
        };
        let add_pair = |row: &mut Vec<Scalar>, c: &Scalar, a: usize, b: usize| {
            if let Some((k, s)) = symbol(a, b) {
                row[k] += &(c * &s);
            }
        };
        // [u, v] for vectors whose heights add up to this level.
        let add_outer = |row: &mut Vec<Scalar>, c: &Scalar, u: &Vector, v: &Vector| {
            for (a, x) in u {
                for (b, y) in v {
                    add_pair(row, &(c * &(x * y)), *a, *b);
                }
            }
        };

        let mut ech = Echelon::new(n);
        for s in &self.relations {
            if &s.degree != nu {
                continue;
            }
            let mut row = vec![Scalar::zero(); n];
            for (c, t) in &s.expr.terms {
                let LieTree::Bracket(x, y) = t else {
                    unreachable!("relations have height at least 2")
                };
                add_outer(&mut row, c, &self.eval_tree(x), &self.eval_tree(y));
            }
            ech.insert(row);
        }
        // Jacobi: [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|}[y,[x,z]] for a ≤ b ≤ c.
        let one = Scalar::one();
        let triples = self.triples(nu);
        for (a, b, c) in triples {
            if ech.is_full() {
                break;
            }
            let (pa, pb) = (self.elems[a].odd, self.elems[b].odd);
            let xa = Vector::from([(a, one.clone())]);
            let xb = Vector::from([(b, one.clone())]);
            let xc = Vector::from([(c, one.clone())]);
            let mut row = vec![Scalar::zero(); n];
            add_outer(&mut row, &one, &xa, &self.bracket_basis(b, c));
            add_outer(&mut row, &-one.clone(), &self.bracket_basis(a, b), &xc);
            add_outer(&mut row, &-koszul(pa, pb), &xb, &self.bracket_basis(a, c));
            ech.insert(row);
        }

        let free_cols = ech.free_columns();
        let base = self.elems.len();
        let new_id: HashMap<usize, usize> = free_cols
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, base + k))
            .collect();
        // Express every column in the new basis.
        let mut value: Vec<Vector> = vec![Vector::new(); n];
        for (&k, &id) in &new_id {
            value[k].insert(id, Scalar::one());
        }
        for (p, row) in ech.rows() {
            let mut v = Vector::new();
            for &k in &free_cols {
                if !row[k].is_zero() {
                    v.insert(new_id[&k], -row[k].clone());
                }
            }
            value[p] = v;
        }
        let mut entries = Vec::new();
        for &(a, b) in &pairs {
            if let Some((k, s)) = symbol(a, b) {
                let mut v = Vector::new();
                axpy(&mut v, &s, &value[k]);
                if !v.is_empty() {
                    entries.push(((a, b), v));
                }
            }
        }
        self.table.extend(entries);
        for _ in &free_cols {
            let id = self.push(nu.clone());
            self.by_height.last_mut().unwrap().push(id);
        }
        free_cols.len()
    }

    /// Triples `a ≤ b ≤ c` of basis ids whose degrees add up to `nu`.
    fn triples(&self, nu: &[u32]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let sub = |x: &[u32], y: &[u32]| -> Option<Multidegree> {
            x.iter()
                .zip(y)
                .map(|(p, q)| p.checked_sub(*q))
                .collect::<Option<Multidegree>>()
                .filter(|d| d.iter().any(|&k| k > 0))
        };
        for (da, ia) in &self.by_degree {
            let Some(rest) = sub(nu, da) else { continue };
            for (db, ib) in &self.by_degree {
                let Some(dc) = sub(&rest, db) else { continue };
                let Some(ic) = self.by_degree.get(&dc) else {
                    continue;
                };
                for &a in ia {
                    for &b in ib.iter().filter(|&&b| b >= a) {
                        for &c in ic.iter().filter(|&&c| c >= b) {
                            out.push((a, b, c));
                        }
                    }
                }
            }
        }
        out
    }

    /// Builds heights until closure or `max_height`.
    pub fn build(&mut self, max_height: u32) -> GradedQuotientReport {
        while !self.closed && self.height < max_height {
            self.step();
        }
        self.report()
    }
}

/// Runs the quotient construction for the e-side of `p`.
pub fn quotient_dimensions(
    p: &Presentation,
    max_height: u32,
) -> (QuotientAlgebra, GradedQuotientReport) {
    let mut q = QuotientAlgebra::from_presentation(p);
    let rep = q.build(max_height);
    (q, rep)
}

/// Dimensions of the ℤ-grading `deg e_d = 1`, `deg e_i = 0` (i ≠ d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGradingReport {
    /// 0-based.
    pub d: usize,
    /// `dims[k] = dim g_k` for `k = 0..=K+1`, where `K` is the top degree.
    pub dims: Vec<usize>,
}

impl ZGradingReport {
    pub fn from_weights(weights: &BTreeMap<Multidegree, usize>, rank: usize, d: usize) -> Self {
        let top = weights.keys().map(|nu| nu[d] as usize).max().unwrap_or(0);
        let mut dims = vec![0; top + 2];
        dims[0] = rank;
        for (nu, &m) in weights {
            let k = nu[d] as usize;
            dims[k] += if k == 0 { 2 * m } else { m };
        }
        ZGradingReport { d, dims }
    }

    /// `dim g_{−k} = dim g_k`; the total counts both sides.
    pub fn total(&self) -> usize {
        self.dims[0] + 2 * self.dims[1..].iter().sum::<usize>()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "d": self.d + 1, "dims": self.dims })
    }
}

pub fn z_grading_report(rep: &GradedQuotientReport, rank: usize, d: usize) -> ZGradingReport {
    ZGradingReport::from_weights(&rep.surviving(), rank, d)
}

/// One entry per (element, i) of the lowering check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityEntry {
    /// Index into the e-side list.
    pub element: usize,
    /// 0-based generator index.
    pub i: usize,
    /// `lower(i, s)` is zero.
    pub zero: bool,
    /// `lower(i, s)` lies in the span of the e-side elements of its weight.
    pub in_span: bool,
    /// `lower(i, s)` lies in the ideal generated by the e-side.
    pub in_ideal: bool,
}

/// Lowers every e-side element by every `f_i`.
///
/// `q` must be the quotient of the same presentation, built to closure or at
/// least to the height of the highest relation minus one.
pub fn check_lowering_stability(p: &Presentation, q: &QuotientAlgebra) -> Vec<StabilityEntry> {
    let free = FreeLie::new(p.cartan.parities());
    let mut out = Vec::new();
    for (k, s) in p.normal_forms.iter().enumerate() {
        for i in 0..p.rank() {
            let (low, _) = free.lower(i, s, &p.cartan.a);
            let zero = low.is_zero();
            let in_span = zero || in_span(&low, &p.normal_forms);
            let in_ideal = zero || q.eval_poly(&free, &low).is_empty();
            out.push(StabilityEntry {
                element: k,
                i,
                zero,
                in_span,
                in_ideal,
            });
        }
    }
    out
}

fn in_span(x: &LiePoly, pool: &[LiePoly]) -> bool {
    let same: Vec<&LiePoly> = pool.iter().filter(|p| p.degree() == x.degree()).collect();
    let mut words: Vec<Vec<u8>> = same
        .iter()
        .chain(std::iter::once(&x))
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    words.sort();
    words.dedup();
    let index: HashMap<Vec<u8>, usize> =
        words.into_iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut ech = Echelon::new(index.len());
    for p in same {
        ech.insert(p.coordinates(&index));
    }
    ech.contains(&x.coordinates(&index))
}

/// Rows spanning the `nu`-component of the ideal generated by `relations`
/// in the free Lie superalgebra, in the coordinates of `free.basis(nu)`.
///
/// Uses `I_ν = span(S_ν) + Σ_i [e_i, I_{ν−α_i}]`. Exponential in the height;
/// meant for small weights.
pub fn ideal_component(free: &FreeLie, relations: &[LiePoly], nu: &[u32]) -> Vec<Vec<Scalar>> {
    let mut memo = HashMap::new();
    ideal_rec(free, relations, nu, &mut memo)
        .iter()
        .map(|p| p.coordinates(&basis_index(free, nu)))
        .collect()
}

fn basis_index(free: &FreeLie, nu: &[u32]) -> HashMap<Vec<u8>, usize> {
    free.basis(nu)
        .into_iter()
        .enumerate()
        .map(|(k, w)| (w, k))
        .collect()
}

fn ideal_rec(
    free: &FreeLie,
    relations: &[LiePoly],
    nu: &[u32],
    memo: &mut HashMap<Multidegree, Vec<LiePoly>>,
) -> Vec<LiePoly> {
    if let Some(v) = memo.get(nu) {
        return v.clone();
    }
    let index = basis_index(free, nu);
    let mut ech = Echelon::new(index.len());
    let mut kept = Vec::new();
    let mut offer = |p: LiePoly, ech: &mut Echelon| {
        if !p.is_zero() && ech.insert(p.coordinates(&index)) {
            kept.push(p);
        }
    };
    for s in relations.iter().filter(|s| s.degree() == nu) {
        offer(s.clone(), &mut ech);
    }
    for i in 0..nu.len() {
        if nu[i] == 0 || nu.iter().sum::<u32>() < 2 {
            continue;
        }
        let mut rest = nu.to_vec();
        rest[i] -= 1;
        for x in ideal_rec(free, relations, &rest, memo) {
            if ech.is_full() {
                break;
            }
            offer(free.bracket(&free.gen(i), &x), &mut ech);
        }
    }
    memo.insert(nu.to_vec(), kept.clone());
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::rootdata::{Family, RootDatum};

    fn distinguished(f: Family) -> Presentation {
        let d = RootDatum::new(f).unwrap();
        Presentation::new(&d, &d.distinguished()).unwrap()
    }

    #[test]
    fn sl21() {
        let (_, rep) = quotient_dimensions(&distinguished(Family::A { m: 1, n: 0 }), 10);
        assert!(rep.closed);
        let surv: Vec<_> = rep.surviving().into_iter().collect();
        assert_eq!(
            surv,
            vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]
        );
        assert_eq!(rep.total_dimension(2).unwrap(), 8);
    }

    #[test]
    fn sl22_keeps_its_centre() {
        let (_, rep) = quotient_dimensions(&distinguished(Family::A { m: 1, n: 1 }), 10);
        assert_eq!(rep.positive_dimension(), 6);
        assert_eq!(rep.total_dimension(3).unwrap(), 15);
    }

    #[test]
    fn free_algebra_without_relations() {
        for p in [vec![false, false], vec![true, false], vec![true, true]] {
            let mut q = QuotientAlgebra::new(p.clone(), Vec::new());
            q.build(6);
            for w in &q.report().weights {
                assert_eq!(w.dim as u64, free_dimension(&p, &w.nu), "{p:?} {:?}", w.nu);
            }
        }
    }

    #[test]
    fn unclosed_total_is_an_error() {
        let mut q = QuotientAlgebra::new(vec![false, false], Vec::new());
        let rep = q.build(3);
        assert!(!rep.closed);
        assert_eq!(
            rep.total_dimension(2),
            Err(QuotientError::NotClosed { max_height: 3 })
        );
    }

    #[test]
    fn ideal_component_examples() {
        let free = FreeLie::new(vec![false, true]);
        let sq = free.normalize_tree(&LieTree::br(LieTree::gen(1), LieTree::gen(1)));
        assert_eq!(rank(&ideal_component(&free, &[sq], &[0, 2]), 1), 1);
        let free = FreeLie::new(vec![false, false]);
        let s = free.normalize_tree(&LieTree::right_nested(&[0, 0, 1]));
        let rows = ideal_component(&free, &[s], &[3, 1]);
        assert_eq!(
            rank(&rows, free.basis(&[3, 1]).len()) as u64,
            free_dimension(&[false, false], &[3, 1])
        );
        assert!(ideal_component(&free, &[], &[2, 2]).is_empty());
    }

    #[test]
    fn engine_agrees_with_free_ideal() {
        for f in [
            Family::A { m: 1, n: 1 },
            Family::B { m: 1, n: 1 },
            Family::G3,
        ] {
            let d = RootDatum::new(f).unwrap();
            for pi in d.simple_systems() {
                let p = Presentation::new(&d, &pi).unwrap();
                let free = FreeLie::new(p.cartan.parities());
                let mut q = QuotientAlgebra::from_presentation(&p);
                q.build(5);
                for w in q.report().weights {
                    let rows = ideal_component(&free, &p.normal_forms, &w.nu);
                    assert_eq!(
                        rank(&rows, w.free as usize) as u64,
                        w.ideal_rank,
                        "{:?}",
                        w.nu
                    );
                }
            }
        }
    }

    #[test]
    fn lowering_a_standard_element_by_a_third_index_vanishes() {
        let p = distinguished(Family::A { m: 2, n: 1 });
        let (q, _) = quotient_dimensions(&p, 20);
        for e in check_lowering_stability(&p, &q) {
            let nodes = &p.e_side[e.element].nodes;
            if !p.e_side[e.element].provenance.is_higher_order() && !nodes.contains(&e.i) {
                assert!(e.zero);
            }
            assert!(e.in_ideal);
        }
    }

    #[test]
    fn sl22_quartic_is_stable() {
        let p = distinguished(Family::A { m: 1, n: 1 });
        let (q, _) = quotient_dimensions(&p, 20);
        let k = p.higher_order().next().unwrap().0;
        for e in check_lowering_stability(&p, &q)
            .into_iter()
            .filter(|e| e.element == k)
        {
            assert!(e.in_ideal, "{e:?}");
        }
        // Sanity: the quartic itself is in the ideal, a generator is not.
        let free = FreeLie::new(p.cartan.parities());
        let quartic = free.normalize(&p.e_side[k].expr).unwrap();
        assert!(q.eval_poly(&free, &quartic).is_empty());
        assert!(!q.eval_poly(&free, &free.gen(0)).is_empty());
    }

    #[test]
    fn z_grading_of_sl21() {
        let (_, rep) = quotient_dimensions(&distinguished(Family::A { m: 1, n: 0 }), 10);
        let z = z_grading_report(&rep, 2, 1);
        assert_eq!(z.dims, vec![4, 2, 0]);
        assert_eq!(z.total(), 8);
    }
}
