//! The free Lie superalgebra on `e_1..e_r`, graded by multidegree.
//!
//! Elements are stored in the super-Lyndon basis: Lyndon words, plus squares
//! `uu` of odd Lyndon words `u`, each standing for its standard bracketing.
//! Normal forms are computed through the embedding into the free associative
//! superalgebra, where `[x,y] = xy − (−1)^{|x||y|} yx`. The expansion of a
//! basis element has its own word as least word, with coefficient 1 (or 2
//! for a square), so any Lie element is peeled apart by repeatedly removing
//! its least word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::FreeLieError;
use crate::scalar::Scalar;

pub type Word = Vec<u8>;
pub type Multidegree = Vec<u32>;
type AssocPoly = BTreeMap<Word, Scalar>;

/// A bracket expression in the generators (0-based leaves).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieTree {
    Gen(usize),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn gen(i: usize) -> Self {
        LieTree::Gen(i)
    }

    pub fn br(x: LieTree, y: LieTree) -> Self {
        LieTree::Bracket(Box::new(x), Box::new(y))
    }

    /// Left-normed `[g_0,[g_1,[…,g_k]]]`.
    pub fn right_nested(gens: &[usize]) -> Self {
        let (last, rest) = gens.split_last().expect("at least one generator");
        rest.iter().rev().fold(LieTree::Gen(*last), |acc, &g| {
            LieTree::br(LieTree::Gen(g), acc)
        })
    }

    pub fn degree(&self, rank: usize) -> Multidegree {
        let mut d = vec![0; rank];
        self.add_leaves(&mut d);
        d
    }

    fn add_leaves(&self, d: &mut Multidegree) {
        match self {
            LieTree::Gen(i) => d[*i] += 1,
            LieTree::Bracket(x, y) => {
                x.add_leaves(d);
                y.add_leaves(d);
            }
        }
    }

    pub fn max_generator(&self) -> usize {
        match self {
            LieTree::Gen(i) => *i,
            LieTree::Bracket(x, y) => x.max_generator().max(y.max_generator()),
        }
    }

    pub fn parity(&self, parities: &[bool]) -> bool {
        match self {
            LieTree::Gen(i) => parities[*i],
            LieTree::Bracket(x, y) => x.parity(parities) ^ y.parity(parities),
        }
    }

    /// Swaps every leaf through `f`.
    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> LieTree {
        match self {
            LieTree::Gen(i) => LieTree::Gen(f(*i)),
            LieTree::Bracket(x, y) => LieTree::br(x.relabel(f), y.relabel(f)),
        }
    }

    /// Bracket notation with the given generator letter, e.g. `[e2,[e1,e3]]`.
    pub fn render(&self, letter: char) -> String {
        match self {
            LieTree::Gen(i) => format!("{letter}{}", i + 1),
            LieTree::Bracket(x, y) => format!("[{},{}]", x.render(letter), y.render(letter)),
        }
    }

    /// LaTeX bracket notation, e.g. `[e_2,[e_1,e_3]]`.
    pub fn render_latex(&self, letter: char) -> String {
        match self {
            LieTree::Gen(i) if *i < 9 => format!("{letter}_{}", i + 1),
            LieTree::Gen(i) => format!("{letter}_{{{}}}", i + 1),
            LieTree::Bracket(x, y) => {
                format!("[{},{}]", x.render_latex(letter), y.render_latex(letter))
            }
        }
    }

    /// Nested JSON arrays, leaves as 1-based integers.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            LieTree::Gen(i) => serde_json::Value::from(i + 1),
            LieTree::Bracket(x, y) => serde_json::Value::Array(vec![x.to_json(), y.to_json()]),
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('e'))
    }
}

/// A formal linear combination of bracket expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieExpr {
    pub terms: Vec<(Scalar, LieTree)>,
}

impl LieExpr {
    pub fn single(t: LieTree) -> Self {
        LieExpr {
            terms: vec![(Scalar::one(), t)],
        }
    }

    pub fn new(terms: Vec<(Scalar, LieTree)>) -> Self {
        LieExpr { terms }
    }
}

/// A homogeneous element of the free Lie superalgebra in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiePoly {
    degree: Multidegree,
    terms: BTreeMap<Word, Scalar>,
}

impl LiePoly {
    pub fn zero(degree: Multidegree) -> Self {
        LiePoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn height(&self) -> u32 {
        self.degree.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(basis word, coefficient)` pairs in increasing word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> LiePoly {
        if c.is_zero() {
            return LiePoly::zero(self.degree.clone());
        }
        LiePoly {
            degree: self.degree.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &LiePoly, c: &Scalar) {
        debug_assert_eq!(self.degree, other.degree);
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            add_term(&mut self.terms, w, &(x * c));
        }
    }

    /// Coordinates in the given basis ordering (words absent from `index`
    /// are ignored, so callers pass a full basis).
    pub fn coordinates(&self, index: &HashMap<Word, usize>) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); index.len()];
        for (w, c) in &self.terms {
            v[index[w]] = c.clone();
        }
        v
    }

    /// Equal up to a nonzero scalar factor.
    pub fn is_proportional(&self, other: &LiePoly) -> bool {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return false;
        }
        let (Some((w, a)), Some((v, b))) = (self.terms.iter().next(), other.terms.iter().next())
        else {
            return self.is_zero() && other.is_zero();
        };
        if w != v {
            return false;
        }
        let ratio = b.checked_div(a).expect("stored coefficients are nonzero");
        self.terms
            .iter()
            .all(|(w, x)| other.terms.get(w) == Some(&(x * &ratio)))
    }

    /// Rescaled so that the coefficient of the least word is 1.
    pub fn projective_normal_form(&self) -> LiePoly {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }
}

fn add_term(map: &mut AssocPoly, w: &[u8], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                map.remove(w);
            }
        }
        None => {
            map.insert(w.to_vec(), c.clone());
        }
    }
}

/// True if `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &w[k..])
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len())
        .find(|&k| is_lyndon(&w[k..]))
        .map(|k| w.split_at(k))
}

/// Free Lie superalgebra on generators of the given parities, with a cache
/// of basis expansions.
pub struct FreeLie {
    parities: Vec<bool>,
    cache: Mutex<HashMap<Word, Arc<AssocPoly>>>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie")
            .field("parities", &self.parities)
            .finish()
    }
}

impl FreeLie {
    pub fn new(parities: Vec<bool>) -> Self {
        FreeLie {
            parities,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &[bool] {
        &self.parities
    }

    pub fn word_parity(&self, w: &[u8]) -> bool {
        w.iter().fold(false, |p, &i| p ^ self.parities[i as usize])
    }

    pub fn degree_parity(&self, d: &[u32]) -> bool {
        d.iter()
            .zip(&self.parities)
            .fold(false, |p, (&k, &odd)| p ^ (odd && k % 2 == 1))
    }

    pub fn word_degree(&self, w: &[u8]) -> Multidegree {
        let mut d = vec![0; self.rank()];
        for &i in w {
            d[i as usize] += 1;
        }
        d
    }

    /// Lyndon words, and squares of odd Lyndon words.
    pub fn is_basis_word(&self, w: &[u8]) -> bool {
        if is_lyndon(w) {
            return true;
        }
        let h = w.len() / 2;
        w.len().is_multiple_of(2)
            && w[..h] == w[h..]
            && is_lyndon(&w[..h])
            && self.word_parity(&w[..h])
    }

    /// The bracketing a basis word stands for.
    pub fn basis_tree(&self, w: &[u8]) -> LieTree {
        if w.len() == 1 {
            return LieTree::Gen(w[0] as usize);
        }
        if !is_lyndon(w) {
            let h = w.len() / 2;
            let u = self.basis_tree(&w[..h]);
            return LieTree::br(u.clone(), u);
        }
        let (u, v) = standard_factorization(w).expect("Lyndon words of length > 1 factor");
        LieTree::br(self.basis_tree(u), self.basis_tree(v))
    }

    pub fn gen(&self, i: usize) -> LiePoly {
        let mut degree = vec![0; self.rank()];
        degree[i] += 1;
        LiePoly {
            degree,
            terms: BTreeMap::from([(vec![i as u8], Scalar::one())]),
        }
    }

    fn check_tree(&self, t: &LieTree) -> Result<(), FreeLieError> {
        let m = t.max_generator();
        if m >= self.rank() {
            return Err(FreeLieError::BadGenerator {
                index: m + 1,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    fn commutator(&self, x: &AssocPoly, px: bool, y: &AssocPoly, py: bool) -> AssocPoly {
        let mut out = AssocPoly::new();
        let sym = px && py;
        for (u, a) in x {
            for (v, b) in y {
                let c = a * b;
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                add_term(&mut out, &uv, &c);
                let mut vu = v.clone();
                vu.extend_from_slice(u);
                if sym {
                    add_term(&mut out, &vu, &c);
                } else {
                    add_term(&mut out, &vu, &-&c);
                }
            }
        }
        out
    }

    fn expand_tree(&self, t: &LieTree) -> AssocPoly {
        match t {
            LieTree::Gen(i) => AssocPoly::from([(vec![*i as u8], Scalar::one())]),
            LieTree::Bracket(x, y) => {
                let ex = self.expand_tree(x);
                let ey = self.expand_tree(y);
                self.commutator(&ex, x.parity(&self.parities), &ey, y.parity(&self.parities))
            }
        }
    }

    fn basis_expansion(&self, w: &[u8]) -> Arc<AssocPoly> {
        if let Some(e) = self.cache.lock().unwrap().get(w) {
            return e.clone();
        }
        let e = Arc::new(self.expand_tree(&self.basis_tree(w)));
        self.cache.lock().unwrap().insert(w.to_vec(), e.clone());
        e
    }

    fn expand(&self, x: &LiePoly) -> AssocPoly {
        let mut out = AssocPoly::new();
        for (w, c) in &x.terms {
            for (v, d) in self.basis_expansion(w).iter() {
                add_term(&mut out, v, &(c * d));
            }
        }
        out
    }

    /// Rewrites an associative Lie element in the basis.
    fn decompose(&self, mut f: AssocPoly, degree: Multidegree) -> LiePoly {
        let mut terms = BTreeMap::new();
        while let Some((w, c)) = f.pop_first() {
            assert!(
                self.is_basis_word(&w),
                "least word {w:?} of a Lie element must be a basis word"
            );
            let e = self.basis_expansion(&w);
            let lead = &e[&w];
            let k = c.checked_div(lead).expect("leading coefficient is nonzero");
            for (v, d) in e.iter() {
                if v != &w {
                    add_term(&mut f, v, &-&(&k * d));
                }
            }
            terms.insert(w, k);
        }
        LiePoly { degree, terms }
    }

    /// Normal form of a homogeneous bracket expression.
    pub fn normalize(&self, e: &LieExpr) -> Result<LiePoly, FreeLieError> {
        let Some((_, first)) = e.terms.first() else {
            return Ok(LiePoly::zero(vec![0; self.rank()]));
        };
        self.check_tree(first)?;
        let degree = first.degree(self.rank());
        let mut acc = AssocPoly::new();
        for (c, t) in &e.terms {
            self.check_tree(t)?;
            let d = t.degree(self.rank());
            if d != degree {
                return Err(FreeLieError::Inhomogeneous {
                    left: degree,
                    right: d,
                });
            }
            for (w, x) in self.expand_tree(t) {
                add_term(&mut acc, &w, &(c * &x));
            }
        }
        Ok(self.decompose(acc, degree))
    }

    pub fn normalize_tree(&self, t: &LieTree) -> LiePoly {
        self.normalize(&LieExpr::single(t.clone()))
            .expect("a single tree is homogeneous")
    }

    pub fn bracket(&self, x: &LiePoly, y: &LiePoly) -> LiePoly {
        let degree: Multidegree = x.degree.iter().zip(&y.degree).map(|(a, b)| a + b).collect();
        if x.is_zero() || y.is_zero() {
            return LiePoly::zero(degree);
        }
        let f = self.commutator(
            &self.expand(x),
            self.degree_parity(&x.degree),
            &self.expand(y),
            self.degree_parity(&y.degree),
        );
        self.decompose(f, degree)
    }

    /// Every basis word of multidegree `d`, in increasing order.
    pub fn basis(&self, d: &[u32]) -> Vec<Word> {
        let n: u32 = d.iter().sum();
        let mut out = Vec::new();
        let mut left = d.to_vec();
        let mut cur = Vec::with_capacity(n as usize);
        self.words_rec(&mut left, &mut cur, n as usize, &mut out);
        out
    }

    fn words_rec(&self, left: &mut Vec<u32>, cur: &mut Word, n: usize, out: &mut Vec<Word>) {
        if cur.len() == n {
            if n > 0 && self.is_basis_word(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..left.len() {
            if left[i] == 0 {
                continue;
            }
            // Every basis word starts with its least letter.
            if let Some(&first) = cur.first() {
                if (i as u8) < first {
                    continue;
                }
            }
            left[i] -= 1;
            cur.push(i as u8);
            self.words_rec(left, cur, n, out);
            cur.pop();
            left[i] += 1;
        }
    }

    /// `ad f_i` applied to `x`: the part in the free algebra, and the Cartan
    /// part as a multiple of `[f_i, e_i]` (nonzero only when `x` is a
    /// multiple of `e_i`), so that `lower(i, e_j) = (0, δ_ij)`.
    ///
    /// Uses `[f_i, e_j] = −(−1)^{p_i} δ_ij h_i` and `[h_i, y] = (Σ_j ν_j a_ij) y`.
    pub fn lower(&self, i: usize, x: &LiePoly, a: &[Vec<Scalar>]) -> (LiePoly, Scalar) {
        let mut degree = x.degree.clone();
        if degree[i] == 0 {
            return (LiePoly::zero(degree), Scalar::zero());
        }
        degree[i] -= 1;
        let mut acc = LiePoly::zero(degree);
        let mut h = Scalar::zero();
        for (w, c) in &x.terms {
            let (p, hc) = self.lower_tree(i, &self.basis_tree(w), a);
            if let Some(p) = p {
                acc.add_scaled(&p, c);
            }
            h += &(&hc * c);
        }
        if self.parities[i] {
            (acc, h)
        } else {
            (acc, -h)
        }
    }

    fn weight_pairing(&self, i: usize, d: &[u32], a: &[Vec<Scalar>]) -> Scalar {
        let mut s = Scalar::zero();
        for (j, &k) in d.iter().enumerate() {
            if k > 0 && !a[i][j].is_zero() {
                s += &(&a[i][j] * &Scalar::from_int(k as i64));
            }
        }
        s
    }

    fn lower_tree(&self, i: usize, t: &LieTree, a: &[Vec<Scalar>]) -> (Option<LiePoly>, Scalar) {
        match t {
            LieTree::Gen(j) => {
                let h = if *j == i {
                    Scalar::from_int(if self.parities[i] { 1 } else { -1 })
                } else {
                    Scalar::zero()
                };
                (None, h)
            }
            LieTree::Bracket(x, y) => {
                let rank = self.rank();
                let (dx, dy) = (x.degree(rank), y.degree(rank));
                let mut d = t.degree(rank);
                if d[i] == 0 {
                    return (None, Scalar::zero());
                }
                d[i] -= 1;
                let mut acc = LiePoly::zero(d);
                let (lx, hx) = self.lower_tree(i, x, a);
                let (ly, hy) = self.lower_tree(i, y, a);
                let px = self.normalize_tree(x);
                let py = self.normalize_tree(y);
                if let Some(lx) = lx {
                    acc.add_scaled(&self.bracket(&lx, &py), &Scalar::one());
                }
                if !hx.is_zero() {
                    acc.add_scaled(&py, &(&hx * &self.weight_pairing(i, &dy, a)));
                }
                let sign = if self.parities[i] && self.degree_parity(&dx) {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                if let Some(ly) = ly {
                    acc.add_scaled(&self.bracket(&px, &ly), &sign);
                }
                if !hy.is_zero() {
                    let c = -(&(&hy * &self.weight_pairing(i, &dx, a)) * &sign);
                    acc.add_scaled(&px, &c);
                }
                (Some(acc), Scalar::zero())
            }
        }
    }
}

fn multinomial(d: &[u32]) -> BigInt {
    let mut num = BigInt::one();
    let mut n = 0u32;
    for &k in d {
        for j in 1..=k {
            n += 1;
            num = num * BigInt::from(n) / BigInt::from(j);
        }
    }
    num
}

/// Dimension of the `d`-component of the free Lie superalgebra on
/// generators with the given parities, from the logarithm of the PBW
/// identity: `Σ_{k|d} ε(d/k,k) dim L_{d/k} / k = multinomial(d)/|d|`, where
/// `ε(λ,k) = (−1)^{k+1}` for odd λ and 1 for even λ.
pub fn free_dimension(parities: &[bool], d: &[u32]) -> u64 {
    let n: u32 = d.iter().sum();
    if n == 0 {
        return 0;
    }
    let g = d.iter().fold(0u32, |g, &x| g.gcd(&x));
    let mut val = BigRational::new(multinomial(d), BigInt::from(n));
    for k in 2..=g {
        if g % k != 0 {
            continue;
        }
        let sub: Vec<u32> = d.iter().map(|x| x / k).collect();
        let odd = sub
            .iter()
            .zip(parities)
            .fold(false, |p, (&x, &o)| p ^ (o && x % 2 == 1));
        let eps = if odd && k % 2 == 0 { -1 } else { 1 };
        let term = BigRational::new(
            BigInt::from(free_dimension(parities, &sub)) * BigInt::from(eps),
            BigInt::from(k),
        );
        val -= term;
    }
    assert!(
        val.is_integer() && !val.is_negative(),
        "free dimension {val} is not a natural number"
    );
    val.to_integer()
        .to_u64()
        .expect("free dimension fits in u64")
}
