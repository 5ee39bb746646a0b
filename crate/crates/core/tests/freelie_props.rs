use proptest::prelude::*;
use superserre::freelie::{free_dimension, FreeLie, LieExpr, LiePoly, LieTree};
use superserre::Scalar;

fn tree(rank: usize, leaves: usize) -> BoxedStrategy<LieTree> {
    if leaves == 1 {
        return (0..rank).prop_map(LieTree::gen).boxed();
    }
    (1..leaves)
        .prop_flat_map(move |k| (tree(rank, k), tree(rank, leaves - k)))
        .prop_map(|(x, y)| LieTree::br(x, y))
        .boxed()
}

fn parities(rank: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), rank)
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

/// Reassembles `p` from its basis trees.
fn reassemble(free: &FreeLie, p: &LiePoly) -> LiePoly {
    let mut acc = LiePoly::zero(p.degree().clone());
    for (w, c) in p.terms() {
        acc.add_scaled(&free.normalize_tree(&free.basis_tree(w)), c);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(p in parities(3), t in (2usize..=5).prop_flat_map(|n| tree(3, n))) {
        let free = FreeLie::new(p);
        let x = free.normalize_tree(&t);
        prop_assert_eq!(reassemble(&free, &x), x);
    }

    #[test]
    fn normalize_is_linear(
        p in parities(3),
        t in (2usize..=5).prop_flat_map(|n| tree(3, n)),
        a in small_scalar(),
        b in small_scalar(),
    ) {
        let free = FreeLie::new(p.clone());
        // A second tree of the same degree: the mirror image of `t`.
        fn flip(t: &LieTree) -> LieTree {
            match t {
                LieTree::Gen(i) => LieTree::gen(*i),
                LieTree::Bracket(x, y) => LieTree::br(flip(y), flip(x)),
            }
        }
        let u = flip(&t);
        let lhs = free
            .normalize(&LieExpr::new(vec![(a.clone(), t.clone()), (b.clone(), u.clone())]))
            .unwrap();
        let mut rhs = free.normalize_tree(&t).scale(&a);
        rhs.add_scaled(&free.normalize_tree(&u), &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn super_antisymmetry(p in parities(3), x in tree(3, 2), y in (1usize..=3).prop_flat_map(|n| tree(3, n))) {
        let free = FreeLie::new(p.clone());
        let s = if x.parity(&p) && y.parity(&p) { 1 } else { -1 };
        let xy = free.normalize_tree(&LieTree::br(x.clone(), y.clone()));
        let yx = free.normalize_tree(&LieTree::br(y, x));
        prop_assert_eq!(xy, yx.scale(&Scalar::from_int(s)));
    }

    #[test]
    fn super_jacobi(
        p in parities(3),
        x in (1usize..=2).prop_flat_map(|n| tree(3, n)),
        y in (1usize..=2).prop_flat_map(|n| tree(3, n)),
        z in (1usize..=2).prop_flat_map(|n| tree(3, n)),
    ) {
        let free = FreeLie::new(p.clone());
        let s = if x.parity(&p) && y.parity(&p) { -1 } else { 1 };
        let br = LieTree::br;
        let e = LieExpr::new(vec![
            (Scalar::one(), br(x.clone(), br(y.clone(), z.clone()))),
            (Scalar::from_int(-1), br(br(x.clone(), y.clone()), z.clone())),
            (Scalar::from_int(-s), br(y, br(x, z))),
        ]);
        prop_assert!(free.normalize(&e).unwrap().is_zero());
    }

    /// Left-normed monomials of a multidegree span a space of the free
    /// dimension.
    #[test]
    fn monomials_span_free_component(p in parities(2), a in 1u32..=3, b in 0u32..=3) {
        use itertools::Itertools;
        let free = FreeLie::new(p.clone());
        let mut letters = vec![0; a as usize];
        letters.extend(std::iter::repeat_n(1, b as usize));
        let n = letters.len();
        let basis = free.basis(&[a, b]);
        let index = basis.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let mut e = superserre::linalg::Echelon::new(basis.len());
        for perm in letters.iter().copied().permutations(n).unique() {
            let x = free.normalize_tree(&LieTree::right_nested(&perm));
            e.insert(x.coordinates(&index));
        }
        prop_assert_eq!(e.rank() as u64, free_dimension(&p, &[a, b]));
    }
}

/// 3×3 supermatrices over ℚ, used as a concrete model of sl(2|1).
#[derive(Clone, Debug, PartialEq)]
struct Mat([[Scalar; 3]; 3]);

impl Mat {
    fn zero() -> Self {
        Mat(Default::default())
    }

    fn unit(a: usize, b: usize) -> Self {
        let mut m = Mat::zero();
        m.0[a][b] = Scalar::one();
        m
    }

    fn mul(&self, o: &Mat) -> Mat {
        let mut m = Mat::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m.0[i][j] += &(&self.0[i][k] * &o.0[k][j]);
                }
            }
        }
        m
    }

    fn axpy(&mut self, c: &Scalar, o: &Mat) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += &(c * &o.0[i][j]);
            }
        }
    }

    fn bracket(&self, o: &Mat, both_odd: bool) -> Mat {
        let mut m = self.mul(o);
        m.axpy(
            &Scalar::from_int(if both_odd { 1 } else { -1 }),
            &o.mul(self),
        );
        m
    }
}

struct Model {
    parities: Vec<bool>,
    a: Vec<Vec<Scalar>>,
    e: Vec<Mat>,
    f: Vec<Mat>,
}

impl Model {
    fn tree(&self, t: &LieTree) -> Mat {
        match t {
            LieTree::Gen(i) => self.e[*i].clone(),
            LieTree::Bracket(x, y) => {
                let odd = x.parity(&self.parities) && y.parity(&self.parities);
                self.tree(x).bracket(&self.tree(y), odd)
            }
        }
    }

    fn poly(&self, free: &FreeLie, p: &LiePoly) -> Mat {
        let mut m = Mat::zero();
        for (w, c) in p.terms() {
            m.axpy(c, &self.tree(&free.basis_tree(w)));
        }
        m
    }
}

fn ints(rows: &[[i64; 2]; 2]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
        .collect()
}

/// sl(2|1) with the distinguished Borel and with both simple roots odd.
fn models() -> Vec<Model> {
    let e = vec![Mat::unit(0, 1), Mat::unit(1, 2)];
    let f = vec![Mat::unit(1, 0), Mat::unit(2, 1)];
    vec![
        Model {
            parities: vec![false, true],
            a: ints(&[[2, -1], [-1, 0]]),
            e: e.clone(),
            f: f.clone(),
        },
        Model {
            parities: vec![true, true],
            a: ints(&[[0, 1], [-1, 0]]),
            e,
            f,
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// `[f_i, x]` in the matrix model equals the image of `lower(i, x)`.
    #[test]
    fn lower_is_a_super_derivation(which in 0usize..2, i in 0usize..2, t in (1usize..=5).prop_flat_map(|n| tree(2, n))) {
        let m = &models()[which];
        let free = FreeLie::new(m.parities.clone());
        let x = free.normalize_tree(&t);
        let (rest, h) = free.lower(i, &x, &m.a);
        let odd = m.parities[i] && t.parity(&m.parities);
        let lhs = m.f[i].bracket(&m.poly(&free, &x), odd);
        let mut rhs = m.poly(&free, &rest);
        rhs.axpy(&h, &m.f[i].bracket(&m.e[i], m.parities[i]));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn model_cartan_matrices() {
    for m in models() {
        for i in 0..2 {
            let h = m.e[i].bracket(&m.f[i], m.parities[i]);
            for j in 0..2 {
                let mut want = Mat::zero();
                want.axpy(&m.a[i][j], &m.e[j]);
                assert_eq!(h.bracket(&m.e[j], false), want);
            }
        }
    }
}
