//! Root systems of the simple contragredient Lie superalgebras, their simple
//! systems and the odd reflections relating them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::RootDataError;
use crate::linalg::solve_columns;
use crate::scalar::Scalar;

/// One of the families of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// sl(m+1|n+1)
    A {
        m: usize,
        n: usize,
    },
    /// osp(2m+1|2n)
    B {
        m: usize,
        n: usize,
    },
    /// osp(2|2n−2)
    C {
        n: usize,
    },
    /// osp(2m|2n)
    D {
        m: usize,
        n: usize,
    },
    F4,
    G3,
    /// D(2,1;α) with α either the indeterminate or a rational number.
    D21 {
        alpha: Scalar,
    },
}

impl Family {
    pub fn d21_generic() -> Self {
        Family::D21 {
            alpha: Scalar::alpha(),
        }
    }

    pub fn is_type_b(&self) -> bool {
        matches!(self, Family::B { .. })
    }

    pub fn is_d21(&self) -> bool {
        matches!(self, Family::D21 { .. })
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::A { m, n } => m + n + 1,
            Family::B { m, n } | Family::D { m, n } => m + n,
            Family::C { n } => n,
            Family::F4 => 4,
            Family::G3 | Family::D21 { .. } => 3,
        }
    }

    pub fn validate(&self) -> Result<(), RootDataError> {
        let bad = |family, constraint| Err(RootDataError::Parameter { family, constraint });
        match self {
            Family::A { m, n } if m + n == 0 => bad("A(m,n)", "m + n >= 1"),
            Family::B { n, .. } if *n == 0 => bad("B(m,n)", "n >= 1"),
            Family::C { n } if *n < 3 => bad("C(n)", "n > 2"),
            Family::D { m, .. } if *m < 2 => bad("D(m,n)", "m > 1"),
            Family::D { n, .. } if *n == 0 => bad("D(m,n)", "n >= 1"),
            Family::D21 { alpha } => match alpha.as_rational() {
                Some(q) if q.is_zero() || q == -BigRational::one() => {
                    bad("D(2,1;α)", "α∈C\\{0,−1}")
                }
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A { m, n } => write!(f, "A({m},{n})"),
            Family::B { m, n } => write!(f, "B({m},{n})"),
            Family::C { n } => write!(f, "C({n})"),
            Family::D { m, n } => write!(f, "D({m},{n})"),
            Family::F4 => f.write_str("F(4)"),
            Family::G3 => f.write_str("G(3)"),
            Family::D21 { alpha } if alpha == &Scalar::alpha() => f.write_str("D(2,1;a)"),
            Family::D21 { alpha } => write!(f, "D(2,1;{alpha})"),
        }
    }
}

/// Coordinates of a weight in the ε/δ basis of its root datum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Scalar::zero(); dim])
    }

    fn from_ints(xs: &[i64]) -> Self {
        Weight(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
}

/// Root system together with its invariant form, as tabulated for each family.
#[derive(Clone, Debug)]
pub struct RootDatum {
    family: Family,
    symbols: Vec<String>,
    form: Vec<Scalar>,
    even: Vec<Weight>,
    odd: Vec<Weight>,
    parity: HashMap<Weight, bool>,
}

/// An ordered simple system and the indices of its odd roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSystem {
    roots: Vec<Weight>,
    theta: Vec<usize>,
}

/// A positive root with its coefficients in the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Weight,
    pub coeffs: Vec<u32>,
    pub odd: bool,
}

fn pm_pairs(base: &[i64], i: usize, j: usize, with_diff: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (si, sj) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
        if !with_diff && si != sj {
            continue;
        }
        let mut v = base.to_vec();
        v[i] += si;
        v[j] += sj;
        out.push(v);
    }
    out
}

impl RootDatum {
    pub fn new(family: Family) -> Result<Self, RootDataError> {
        family.validate()?;
        let mut even: Vec<Vec<i64>> = Vec::new();
        let mut odd: Vec<Vec<i64>> = Vec::new();
        let (k, l, form): (usize, usize, Vec<Scalar>) = match &family {
            Family::A { m, n } => (m + 1, n + 1, Vec::new()),
            Family::B { m, n } | Family::D { m, n } => (*m, *n, Vec::new()),
            Family::C { n } => (1, n - 1, Vec::new()),
            Family::F4 => (3, 1, [2, 2, 2, -6].map(Scalar::from_int).to_vec()),
            Family::G3 => (3, 1, [1, 1, 1, -2].map(Scalar::from_int).to_vec()),
            Family::D21 { alpha } => (
                2,
                1,
                vec![Scalar::one(), alpha.clone(), -(&Scalar::one() + alpha)],
            ),
        };
        let dim = k + l;
        let form = if form.is_empty() {
            (0..dim)
                .map(|c| Scalar::from_int(if c < k { 1 } else { -1 }))
                .collect()
        } else {
            form
        };
        let zero = vec![0i64; dim];
        let unit = |c: usize, s: i64| {
            let mut v = zero.clone();
            v[c] = s;
            v
        };
        let eps = |i: usize| i;
        let del = |j: usize| k + j;
        let mut half = false;
        match &family {
            Family::A { .. } => {
                for a in 0..k {
                    for b in 0..k {
                        if a != b {
                            let mut v = unit(eps(a), 1);
                            v[eps(b)] = -1;
                            even.push(v);
                        }
                    }
                }
                for a in 0..l {
                    for b in 0..l {
                        if a != b {
                            let mut v = unit(del(a), 1);
                            v[del(b)] = -1;
                            even.push(v);
                        }
                    }
                }
                for a in 0..k {
                    for b in 0..l {
                        let mut v = unit(eps(a), 1);
                        v[del(b)] = -1;
                        odd.push(v.iter().map(|x| -x).collect());
                        odd.push(v);
                    }
                }
            }
            Family::B { .. } | Family::C { .. } | Family::D { .. } => {
                for a in 0..l {
                    for b in a + 1..l {
                        even.extend(pm_pairs(&zero, del(a), del(b), true));
                    }
                    even.push(unit(del(a), 2));
                    even.push(unit(del(a), -2));
                }
                if !matches!(family, Family::C { .. }) {
                    for a in 0..k {
                        for b in a + 1..k {
                            even.extend(pm_pairs(&zero, eps(a), eps(b), true));
                        }
                    }
                }
                if family.is_type_b() {
                    for a in 0..k {
                        even.push(unit(eps(a), 1));
                        even.push(unit(eps(a), -1));
                    }
                    for b in 0..l {
                        odd.push(unit(del(b), 1));
                        odd.push(unit(del(b), -1));
                    }
                }
                for a in 0..k {
                    for b in 0..l {
                        odd.extend(pm_pairs(&zero, eps(a), del(b), true));
                    }
                }
            }
            Family::F4 => {
                // Doubled coordinates; halved below.
                half = true;
                for a in 0..3 {
                    for b in a + 1..3 {
                        even.extend(
                            pm_pairs(&zero, eps(a), eps(b), true)
                                .into_iter()
                                .map(|v| v.iter().map(|x| 2 * x).collect()),
                        );
                    }
                    even.push(unit(eps(a), 2));
                    even.push(unit(eps(a), -2));
                }
                even.push(unit(del(0), 2));
                even.push(unit(del(0), -2));
                for signs in 0..16u32 {
                    odd.push(
                        (0..4)
                            .map(|c| if signs >> c & 1 == 1 { -1 } else { 1 })
                            .collect(),
                    );
                }
            }
            Family::G3 => {
                for a in 0..3 {
                    for b in 0..3 {
                        if a == b {
                            continue;
                        }
                        let mut v = unit(eps(a), 1);
                        v[eps(b)] = -1;
                        even.push(v.clone());
                        for s in [1, -1] {
                            let mut w = v.clone();
                            w[del(0)] = s;
                            odd.push(w);
                        }
                    }
                    let v: Vec<i64> = (0..dim)
                        .map(|c| match c {
                            c if c == a => 2,
                            c if c < 3 => -1,
                            _ => 0,
                        })
                        .collect();
                    even.push(v.iter().map(|x| -x).collect());
                    even.push(v);
                }
                even.push(unit(del(0), 2));
                even.push(unit(del(0), -2));
                odd.push(unit(del(0), 1));
                odd.push(unit(del(0), -1));
            }
            Family::D21 { .. } => {
                for c in 0..3 {
                    even.push(unit(c, 2));
                    even.push(unit(c, -2));
                }
                for signs in 0..8u32 {
                    odd.push(
                        (0..3)
                            .map(|c| if signs >> c & 1 == 1 { -1 } else { 1 })
                            .collect(),
                    );
                }
            }
        }
        let conv = |v: Vec<i64>| {
            let w = Weight::from_ints(&v);
            if half {
                w.scale(&Scalar::ratio(1, 2))
            } else {
                w
            }
        };
        let even: Vec<Weight> = even
            .into_iter()
            .map(conv)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let odd: Vec<Weight> = odd
            .into_iter()
            .map(conv)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut symbols: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
        if matches!(family, Family::F4 | Family::G3 | Family::D21 { .. }) {
            symbols.push("d".to_string());
        } else {
            symbols.extend((1..=l).map(|j| format!("d{j}")));
        }
        let mut parity = HashMap::new();
        for w in &even {
            parity.insert(w.clone(), false);
        }
        for w in &odd {
            parity.insert(w.clone(), true);
        }
        Ok(RootDatum {
            family,
            symbols,
            form,
            even,
            odd,
            parity,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn even_roots(&self) -> &[Weight] {
        &self.even
    }

    pub fn odd_roots(&self) -> &[Weight] {
        &self.odd
    }

    pub fn roots(&self) -> impl Iterator<Item = &Weight> {
        self.even.iter().chain(&self.odd)
    }

    /// Dimension of the algebra: rank plus the number of roots.
    pub fn dimension(&self) -> usize {
        self.rank() + self.even.len() + self.odd.len()
    }

    /// `Some(true)` for odd roots, `Some(false)` for even roots.
    pub fn parity(&self, w: &Weight) -> Option<bool> {
        self.parity.get(w).copied()
    }

    pub fn bilinear(&self, x: &Weight, y: &Weight) -> Scalar {
        let mut acc = Scalar::zero();
        for ((a, b), f) in x.0.iter().zip(&y.0).zip(&self.form) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(&(a * b) * f);
            }
        }
        acc
    }

    /// Builds a weight from `(symbol, coefficient)` terms.
    pub fn weight(&self, terms: &[(&str, Scalar)]) -> Result<Weight, RootDataError> {
        let mut w = Weight::zero(self.symbols.len());
        for (sym, c) in terms {
            let idx = self.symbols.iter().position(|s| s == sym).ok_or_else(|| {
                RootDataError::ForeignSymbol {
                    symbol: sym.to_string(),
                    family: self.family.to_string(),
                }
            })?;
            w.0[idx] += c;
        }
        Ok(w)
    }

    /// Renders a weight as a sum over basis symbols, e.g. `e1-d1` or `1/2*e1+...`.
    pub fn format_weight(&self, w: &Weight) -> String {
        let mut out = String::new();
        for (c, sym) in w.0.iter().zip(&self.symbols) {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.starts_with('(') => (true, rest.to_string()),
                _ => (false, text),
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if body != "1" {
                out.push_str(&body);
                out.push('*');
            }
            out.push_str(sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `{symbol: coefficient}` table with the zero coefficients omitted.
    pub fn weight_json(&self, w: &Weight) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            w.0.iter()
                .zip(&self.symbols)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, s)| (s.clone(), serde_json::Value::String(c.to_string())))
                .collect();
        serde_json::Value::Object(map)
    }

    pub fn distinguished(&self) -> SimpleSystem {
        let k = self.symbols.len() - self.delta_count();
        let dim = self.symbols.len();
        let e = |i: usize| i;
        let d = |j: usize| k + j;
        let vec_of = |terms: &[(usize, i64)]| {
            let mut v = vec![0i64; dim];
            for &(c, x) in terms {
                v[c] += x;
            }
            Weight::from_ints(&v)
        };
        let mut roots = Vec::new();
        match &self.family {
            Family::A { m, n } => {
                for i in 0..*m {
                    roots.push(vec_of(&[(e(i), 1), (e(i + 1), -1)]));
                }
                roots.push(vec_of(&[(e(*m), 1), (d(0), -1)]));
                for j in 0..*n {
                    roots.push(vec_of(&[(d(j), 1), (d(j + 1), -1)]));
                }
            }
            Family::B { m, n } | Family::D { m, n } => {
                for j in 0..n - 1 {
                    roots.push(vec_of(&[(d(j), 1), (d(j + 1), -1)]));
                }
                if *m == 0 {
                    roots.push(vec_of(&[(d(n - 1), 1)]));
                } else {
                    roots.push(vec_of(&[(d(n - 1), 1), (e(0), -1)]));
                    for i in 0..m - 1 {
                        roots.push(vec_of(&[(e(i), 1), (e(i + 1), -1)]));
                    }
                    if self.family.is_type_b() {
                        roots.push(vec_of(&[(e(m - 1), 1)]));
                    } else {
                        roots.push(vec_of(&[(e(m - 2), 1), (e(m - 1), 1)]));
                    }
                }
            }
            Family::C { n } => {
                let l = n - 1;
                roots.push(vec_of(&[(e(0), 1), (d(0), -1)]));
                for j in 0..l - 1 {
                    roots.push(vec_of(&[(d(j), 1), (d(j + 1), -1)]));
                }
                roots.push(vec_of(&[(d(l - 1), 2)]));
            }
            Family::F4 => {
                roots.push(vec_of(&[(0, 1), (1, 1), (2, 1), (3, 1)]).scale(&Scalar::ratio(1, 2)));
                roots.push(vec_of(&[(0, -1)]));
                roots.push(vec_of(&[(0, 1), (1, -1)]));
                roots.push(vec_of(&[(1, 1), (2, -1)]));
            }
            Family::G3 => {
                roots.push(vec_of(&[(3, 1), (0, -1), (2, 1)]));
                roots.push(vec_of(&[(0, 1), (1, -1)]));
                roots.push(vec_of(&[(1, 2), (0, -1), (2, -1)]));
            }
            Family::D21 { .. } => {
                roots.push(vec_of(&[(2, 1), (0, -1), (1, -1)]));
                roots.push(vec_of(&[(0, 2)]));
                roots.push(vec_of(&[(1, 2)]));
            }
        }
        SimpleSystem::new(self, roots).expect("tabulated simple roots are roots")
    }

    fn delta_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.starts_with('d')).count()
    }

    pub fn is_isotropic(&self, w: &Weight) -> bool {
        self.bilinear(w, w).is_zero()
    }

    /// The odd reflection at the isotropic simple root `t` (0-based).
    pub fn odd_reflection(
        &self,
        pi: &SimpleSystem,
        t: usize,
    ) -> Result<SimpleSystem, RootDataError> {
        let at = &pi.roots[t];
        if !self.is_isotropic(at) {
            return Err(RootDataError::NotIsotropic { index: t + 1 });
        }
        let roots = pi
            .roots
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i == t {
                    at.neg()
                } else if self.bilinear(a, at).is_zero() {
                    a.clone()
                } else {
                    a.add(at)
                }
            })
            .collect();
        SimpleSystem::new(self, roots)
    }

    /// Closure of the distinguished system under odd reflections, in
    /// breadth-first order. The distinguished system comes first.
    pub fn simple_systems(&self) -> Vec<SimpleSystem> {
        let start = self.distinguished();
        let mut seen: BTreeSet<Vec<Weight>> = BTreeSet::new();
        seen.insert(start.sorted_roots());
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(pi) = queue.pop_front() {
            for t in 0..pi.len() {
                if !self.is_isotropic(&pi.roots[t]) {
                    continue;
                }
                let next = self
                    .odd_reflection(&pi, t)
                    .expect("odd reflections map roots to roots");
                if seen.insert(next.sorted_roots()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out
    }

    /// Positive roots relative to `pi`, in a deterministic order (by height,
    /// then coefficient vector).
    pub fn positive_roots(&self, pi: &SimpleSystem) -> Result<Vec<PositiveRoot>, RootDataError> {
        let cols: Vec<Vec<Scalar>> = pi.roots.iter().map(|w| w.0.clone()).collect();
        let mut out = Vec::new();
        for root in self.roots() {
            let inconsistent = || RootDataError::Inconsistent {
                root: self.format_weight(root),
            };
            let x = solve_columns(&cols, &root.0).ok_or_else(inconsistent)?;
            let ints: Vec<i64> = x
                .iter()
                .map(|c| c.to_integer().ok_or_else(inconsistent))
                .collect::<Result<_, _>>()?;
            if ints.iter().all(|&c| c >= 0) {
                out.push(PositiveRoot {
                    root: root.clone(),
                    coeffs: ints.iter().map(|&c| c as u32).collect(),
                    odd: self.parity(root) == Some(true),
                });
            } else if !ints.iter().all(|&c| c <= 0) {
                return Err(inconsistent());
            }
        }
        out.sort_by(|a, b| {
            let ha: u32 = a.coeffs.iter().sum();
            let hb: u32 = b.coeffs.iter().sum();
            ha.cmp(&hb).then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        Ok(out)
    }
}

impl SimpleSystem {
    /// Wraps `roots`, deriving the odd index set from the datum.
    pub fn new(datum: &RootDatum, roots: Vec<Weight>) -> Result<Self, RootDataError> {
        let mut theta = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            match datum.parity(r) {
                Some(true) => theta.push(i),
                Some(false) => {}
                None => {
                    return Err(RootDataError::Inconsistent {
                        root: datum.format_weight(r),
                    })
                }
            }
        }
        Ok(SimpleSystem { roots, theta })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    /// 0-based indices of the odd simple roots.
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.theta.contains(&i)
    }

    fn sorted_roots(&self) -> Vec<Weight> {
        let mut v = self.roots.clone();
        v.sort();
        v
    }
}
