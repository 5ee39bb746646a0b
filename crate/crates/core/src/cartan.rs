//! Cartan data `(A, Θ)` of a simple system: the Gram matrix `B`, the
//! normalisation `D` and `A = D⁻¹B`, together with the sign matrix.

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::rootdata::{Family, RootDatum, SimpleSystem, Weight};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub family: Family,
    /// Gram matrix `b_ij = (α_i, α_j)`.
    pub b: Vec<Vec<Scalar>>,
    /// Diagonal of `D`.
    pub d: Vec<Scalar>,
    pub a: Vec<Vec<Scalar>>,
    /// 0-based indices of the odd simple roots.
    pub theta: Vec<usize>,
    pub kappa: u32,
    pub lm2: Scalar,
    pub sgn: Vec<Vec<i8>>,
}

/// `l_m²`: the least `|(β,β)|` over non-isotropic roots. For D(2,1;α) only
/// the values that do not involve α take part, computed with α symbolic so
/// that specialising α never changes the normalisation.
fn min_root_length(datum: &RootDatum) -> Scalar {
    let generic;
    let datum = if datum.family().is_d21() {
        generic = RootDatum::new(Family::d21_generic()).expect("generic D(2,1;α)");
        &generic
    } else {
        datum
    };
    datum
        .roots()
        .map(|r| datum.bilinear(r, r))
        .filter_map(|v| v.as_rational())
        .filter(|q| !q.is_zero())
        .map(|q| q.abs())
        .min()
        .map(Scalar::from_rational)
        .expect("every family has a non-isotropic root")
}

impl CartanData {
    pub fn new(datum: &RootDatum, pi: &SimpleSystem) -> Self {
        let r = pi.len();
        let roots: &[Weight] = pi.roots();
        let b: Vec<Vec<Scalar>> = roots
            .iter()
            .map(|x| roots.iter().map(|y| datum.bilinear(x, y)).collect())
            .collect();
        let kappa = if datum.family().is_type_b() { 0 } else { 1 };
        let lm2 = min_root_length(datum);
        let grey_d = &lm2 * &Scalar::ratio(1, 1 << kappa);
        let d: Vec<Scalar> = (0..r)
            .map(|i| {
                if b[i][i].is_zero() {
                    grey_d.clone()
                } else {
                    &b[i][i] * &Scalar::ratio(1, 2)
                }
            })
            .collect();
        let a = (0..r)
            .map(|i| {
                let inv = d[i].inv().expect("d_i is nonzero");
                b[i].iter().map(|x| x * &inv).collect()
            })
            .collect();
        let sgn = b
            .iter()
            .map(|row| row.iter().map(Scalar::signum).collect())
            .collect();
        CartanData {
            family: datum.family().clone(),
            b,
            d,
            a,
            theta: pi.theta().to_vec(),
            kappa,
            lm2,
            sgn,
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn is_isotropic(&self, i: usize) -> bool {
        self.a[i][i].is_zero()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.theta.contains(&i)
    }

    /// Generator parities as booleans (`true` = odd).
    pub fn parities(&self) -> Vec<bool> {
        (0..self.rank()).map(|i| self.is_odd(i)).collect()
    }

    /// Edge labels for D(2,1;α): `b_ij` in units of `l_m²/2^κ`.
    pub fn b_label(&self, i: usize, j: usize) -> Scalar {
        let unit = &self.lm2 * &Scalar::ratio(1, 1 << self.kappa);
        self.b[i][j].checked_div(&unit).expect("l_m is nonzero")
    }

    /// Entries of `A` that violate the integrality conditions on
    /// non-isotropic rows, as `(i, j)` pairs.
    pub fn integrality_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if self.is_isotropic(i) {
                continue;
            }
            for j in 0..self.rank() {
                let ok = if i == j {
                    self.a[i][j] == Scalar::from_int(2)
                } else {
                    self.a[i][j].to_integer().is_some_and(|v| v <= 0)
                };
                if !ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &Vec<Vec<Scalar>>| -> Vec<Vec<String>> {
            m.iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        json!({
            "family": self.family.to_string(),
            "A": mat(&self.a),
            "B": mat(&self.b),
            "D": self.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "theta": self.theta.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "kappa": self.kappa,
            "lm2": self.lm2.to_string(),
            "sgn": self.sgn,
        })
    }

    /// Plain-text rendering: the matrix `A`, then Θ, then sgn.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .a
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            out.push_str(&format!("[ {} ]\n", line.join(" ")));
        }
        let theta: Vec<String> = self.theta.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("theta = {{{}}}\n", theta.join(",")));
        out.push_str(&format!("kappa = {}, lm^2 = {}\n", self.kappa, self.lm2));
        for row in &self.sgn {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>2}")).collect();
            out.push_str(&format!("sgn [ {} ]\n", line.join(" ")));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|row| {
                row.iter()
                    .map(crate::dynkin::latex_scalar)
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        let theta: Vec<String> = self.theta.iter().map(|i| (i + 1).to_string()).collect();
        format!(
            "A = \\begin{{pmatrix}} {} \\end{{pmatrix}}, \\quad \\Theta = \\{{{}\\}}\n",
            rows.join(" \\\\ "),
            theta.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(f: Family) -> CartanData {
        let d = RootDatum::new(f).unwrap();
        CartanData::new(&d, &d.distinguished())
    }

    fn ints(m: &[Vec<Scalar>]) -> Vec<Vec<i64>> {
        m.iter()
            .map(|r| r.iter().map(|x| x.to_integer().unwrap()).collect())
            .collect()
    }

    #[test]
    fn sl21_distinguished() {
        let c = cd(Family::A { m: 1, n: 0 });
        assert_eq!(ints(&c.a), vec![vec![2, -1], vec![-1, 0]]);
        assert_eq!(ints(&c.b), vec![vec![2, -1], vec![-1, 0]]);
        assert_eq!(c.theta, vec![1]);
        assert_eq!(c.sgn[0][1], -1);
        assert_eq!(c.lm2, Scalar::from_int(2));
        assert_eq!(c.kappa, 1);
    }

    #[test]
    fn osp12_is_a_single_black_node() {
        let c = cd(Family::B { m: 0, n: 1 });
        assert_eq!(ints(&c.a), vec![vec![2]]);
        assert_eq!(c.d, vec![Scalar::ratio(-1, 2)]);
        assert_eq!(c.theta, vec![0]);
        assert_eq!(c.kappa, 0);
    }

    #[test]
    fn sl22_versus_osp42_signs() {
        let sl = cd(Family::A { m: 1, n: 1 });
        let osp = cd(Family::D { m: 2, n: 1 });
        assert_eq!((sl.sgn[0][1], sl.sgn[1][2]), (-1, 1));
        // The grey node of osp(4|2) comes first: edges 1-2 and 1-3.
        assert_eq!((osp.sgn[0][1], osp.sgn[0][2]), (-1, -1));
    }

    #[test]
    fn d21_normalisation_ignores_alpha() {
        let c = cd(Family::d21_generic());
        assert_eq!(c.lm2, Scalar::from_int(4));
        assert_eq!(c.b_label(0, 1), Scalar::from_int(-1));
        assert_eq!(c.b_label(0, 2), -Scalar::alpha());
        let special = cd(Family::D21 {
            alpha: Scalar::ratio(-1, 2),
        });
        assert_eq!(special.lm2, Scalar::from_int(4));
    }

    #[test]
    fn integrality_holds_everywhere() {
        for f in [
            Family::A { m: 2, n: 1 },
            Family::B { m: 1, n: 2 },
            Family::C { n: 3 },
            Family::D { m: 2, n: 2 },
            Family::F4,
            Family::G3,
            Family::d21_generic(),
        ] {
            let d = RootDatum::new(f.clone()).unwrap();
            for pi in d.simple_systems() {
                let c = CartanData::new(&d, &pi);
                assert!(c.integrality_violations().is_empty(), "{f}");
            }
        }
    }
}
