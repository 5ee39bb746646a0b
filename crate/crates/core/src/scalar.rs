//! Exact scalars: the rational numbers and the rational-function field ℚ(α).
//!
//! A [`Scalar`] is a quotient of two polynomials in the single indeterminate
//! `α` (rendered as `a`) with arbitrary-precision rational coefficients. The
//! representation is canonical: numerator and denominator are coprime and the
//! denominator is monic, so structural equality is field equality and scalars
//! can be hashed.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;

/// Dense univariate polynomial over ℚ; `coeffs[k]` multiplies `α^k`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The indeterminate `α`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    fn constant_term(&self) -> BigRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        // Horner
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Scales to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let v = match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            };
            out.push(v);
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::from_coeffs(out)
    }
}

/// An element of ℚ(α) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    /// `p/q` as a scalar; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The indeterminate `α` of D(2,1;α).
    pub fn alpha() -> Self {
        Scalar {
            num: Poly::x(),
            den: Poly::one(),
        }
    }

    /// Builds `num/den`, returning an error when `den` is the zero polynomial.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.lead().unwrap().recip();
            return Scalar {
                num: num.scale(&c),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num, den);
        if !g.is_one() {
            n = n.div_rem(&g).0;
            d = d.div_rem(&g).0;
        }
        let c = d.lead().unwrap().recip();
        Scalar {
            num: n.scale(&c),
            den: d.scale(&c),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value does not depend on `α`.
    pub fn is_rational(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.num.constant_term())
    }

    /// The value as a machine integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if !q.is_integer() {
            return None;
        }
        i64::try_from(q.to_integer()).ok()
    }

    /// Sign of the value. For α-dependent values this is the sign for all
    /// sufficiently large real α.
    pub fn signum(&self) -> i8 {
        match self.num.lead() {
            None => 0,
            Some(l) if l.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Substitutes `α := a0` and returns the exact rational value.
    pub fn evaluate_at(&self, a0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(a0);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: a0.to_string() });
        }
        if a0.is_zero() || *a0 == -BigRational::one() {
            return Err(ScalarError::ForbiddenAlpha { at: a0.to_string() });
        }
        Ok(self.num.eval(a0) / d)
    }

    /// Like [`Scalar::evaluate_at`] but keeps the result as a scalar.
    pub fn specialize(&self, a0: &BigRational) -> Result<Scalar, ScalarError> {
        if self.is_rational() {
            return Ok(self.clone());
        }
        self.evaluate_at(a0).map(Scalar::from_rational)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num + &rhs.num,
                den: Poly::one(),
            };
        }
        if self.den == rhs.den {
            return Scalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

// Rendering --------------------------------------------------------------

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `p` with ascending powers, e.g. `1+a`, `-2+1/2*a^2`.
fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let var = match k {
            0 => String::new(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&fmt_rational(&abs));
            out.push('*');
            out.push_str(&var);
        }
    }
    out
}

fn term_count(p: &Poly) -> usize {
    p.coeffs.iter().filter(|c| !c.is_zero()).count()
}

fn lowest_coeff_negative(p: &Poly) -> bool {
    p.coeffs
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = term_count(&self.num) > 1;
        let num = if multi && lowest_coeff_negative(&self.num) {
            format!("-({})", fmt_poly(&-&self.num))
        } else if multi && !self.den.is_one() {
            format!("({})", fmt_poly(&self.num))
        } else {
            fmt_poly(&self.num)
        };
        if self.den.is_one() {
            return f.write_str(&num);
        }
        if term_count(&self.den) > 1 {
            write!(f, "{num}/({})", fmt_poly(&self.den))
        } else {
            write!(f, "{num}/{}", fmt_poly(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

// Parsing ----------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self) -> ScalarError {
        ScalarError::Parse {
            input: self.text.to_string(),
            pos: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = self.text[start..self.pos].parse().map_err(|_| self.err())?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(Scalar::alpha())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.text[start..self.pos].parse().map_err(|_| self.err())?;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(_) if self.text[self.pos..].starts_with('α') => {
                self.pos += 'α'.len_utf8();
                Ok(Scalar::alpha())
            }
            _ => Err(self.err()),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses the grammar produced by `Display`, e.g. `5/6`, `-(1+a)/a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            text: s,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err());
        }
        Ok(v)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Total order used only for deterministic sorting (not a field order).
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        fn key(p: &Poly) -> (usize, &[BigRational]) {
            (p.coeffs.len(), &p.coeffs)
        }
        let (a, b) = (key(&self.den), key(&other.den));
        a.0.cmp(&b.0)
            .then_with(|| a.1.cmp(b.1))
            .then_with(|| self.num.coeffs.len().cmp(&other.num.coeffs.len()))
            .then_with(|| self.num.coeffs.cmp(&other.num.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn rational_addition() {
        assert_eq!(
            &Scalar::ratio(1, 2) + &Scalar::ratio(1, 3),
            Scalar::ratio(5, 6)
        );
        assert_eq!(Scalar::ratio(5, 6).to_string(), "5/6");
    }

    #[test]
    fn cancellation() {
        let a = Scalar::alpha();
        let x = s("(1+a)/a");
        assert_eq!(&a * &x, s("1+a"));
        assert_eq!((&a * &x).to_string(), "1+a");
    }

    #[test]
    fn inverse_of_negated_sum() {
        let x = -s("1+a");
        assert_eq!(x.to_string(), "-(1+a)");
        let inv = x.inv().unwrap();
        assert_eq!(inv, s("-1/(1+a)"));
        assert_eq!(inv.to_string(), "-1/(1+a)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
        assert!("1/(a-a)".parse::<Scalar>().is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(s("-(1+a)").evaluate_at(&q(1, 1)).unwrap(), q(-2, 1));
        assert_eq!(s("a/(1+a)").evaluate_at(&q(2, 1)).unwrap(), q(2, 3));
        assert!(matches!(
            s("1/a").evaluate_at(&q(0, 1)),
            Err(ScalarError::Pole { .. })
        ));
        assert!(matches!(
            s("a").evaluate_at(&q(-1, 1)),
            Err(ScalarError::ForbiddenAlpha { .. })
        ));
        assert!(matches!(
            s("1/(a-2)").evaluate_at(&q(2, 1)),
            Err(ScalarError::Pole { .. })
        ));
    }

    #[test]
    fn rendering_grammar() {
        assert_eq!(s("-(1+a)/a").to_string(), "-(1+a)/a");
        assert_eq!(s("2*a").to_string(), "2*a");
        assert_eq!(s("a^2-1").to_string(), "-(1-a^2)");
        assert_eq!(s("1/2*a").to_string(), "1/2*a");
        assert_eq!(s("-a").to_string(), "-a");
        assert_eq!(s("0").to_string(), "0");
        assert_eq!(s("α").to_string(), "a");
    }

    #[test]
    fn monic_denominator() {
        let x = s("1/(2*a+2)");
        assert!(x.denom().lead().unwrap().is_one());
        assert_eq!(x, s("(1/2)/(1+a)"));
    }

    #[test]
    fn signum_and_integers() {
        assert_eq!(Scalar::from_int(-3).signum(), -1);
        assert_eq!(Scalar::from_int(-3).to_integer(), Some(-3));
        assert_eq!(Scalar::ratio(1, 2).to_integer(), None);
        assert_eq!(s("-2*a").signum(), -1);
        assert_eq!(Scalar::zero().signum(), 0);
        assert_eq!(s("a").to_integer(), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec((-6i64..=6, 1i64..=4), 0..4)
                .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(p, q)| q_(p, q)).collect()))
        }

        fn q_(p: i64, d: i64) -> BigRational {
            BigRational::new(p.into(), d.into())
        }

        fn scalar() -> impl Strategy<Value = Scalar> {
            (poly(), poly())
                .prop_filter_map("zero denominator", |(n, d)| Scalar::from_polys(n, d).ok())
        }

        proptest! {
            #[test]
            fn quotient_times_reciprocal_is_one(p in poly(), q in poly()) {
                prop_assume!(!p.is_zero() && !q.is_zero());
                let x = Scalar::from_polys(p.clone(), q.clone()).unwrap();
                let y = Scalar::from_polys(q, p).unwrap();
                prop_assert!((&x * &y).is_one());
            }

            #[test]
            fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a - &a, Scalar::zero());
            }

            #[test]
            fn canonical_form_is_idempotent(a in scalar()) {
                let again = Scalar::from_polys(a.numer().clone(), a.denom().clone()).unwrap();
                prop_assert_eq!(&again, &a);
                prop_assert!(a.denom().lead().unwrap().is_one());
                prop_assert!(a.numer().gcd(a.denom()).is_one());
            }

            #[test]
            fn render_parse_round_trip(a in scalar()) {
                let back: Scalar = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
