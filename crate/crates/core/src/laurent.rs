//! Exact Laurent polynomials in one variable with big-integer coefficients.
//!
//! The variable is the bracket variable `A`. Values are kept in canonical
//! form: a sorted map from exponent to a nonzero coefficient, so structural
//! equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * A^exp`; the zero polynomial when `coeff` is zero.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The loop value `δ = -A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `other` into `self` in place.
    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `A = e^{iθ}`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c, theta * *e as f64)
            })
            .sum()
    }

    /// Reinterprets `f(A)` as a polynomial in `q = t^{1/4}` via `A = q^-1`.
    pub fn jones_substitute(&self) -> JonesPoly {
        JonesPoly(self.invert_variable())
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{var}^{e}")?;
            }
        }
        Ok(())
    }

    /// `[[exp, "coeff"], ...]` sorted by descending exponent.
    pub fn to_json_terms(&self) -> Vec<(i64, String)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c.to_string())).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "A")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<(i64, String)>::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// A Laurent polynomial in `q = t^{1/4}`, the Jones polynomial with
/// integer exponents. Exponent `e` stands for `t^{e/4}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct JonesPoly(pub LaurentPoly);

impl JonesPoly {
    pub fn q_poly(&self) -> &LaurentPoly {
        &self.0
    }
}

impl fmt::Display for JonesPoly {
    /// Renders in powers of `t`, lowest degree magnitude first (ties put the
    /// negative power first); fractional powers appear as `t^(k/2)` or `t^(k/4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.0.terms().collect();
        terms.sort_by_key(|&(e, _)| (e.abs(), e));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
            } else if e % 4 == 0 {
                write!(f, "{c}*t^{}", e / 4)?;
            } else if e % 2 == 0 {
                write!(f, "{c}*t^({}/2)", e / 2)?;
            } else {
                write!(f, "{c}*t^({e}/4)")?;
            }
        }
        Ok(())
    }
}

impl Serialize for JonesPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Helper for tests and diagnostics: the largest absolute coefficient.
pub fn max_abs_coeff(p: &LaurentPoly) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn monomials() {
        assert!(LaurentPoly::monomial(1, 0).is_one());
        assert!(LaurentPoly::monomial(0, 7).is_zero());
        assert_eq!(LaurentPoly::monomial(-1, 3), p(&[(3, -1)]));
    }

    #[test]
    fn addition_cancels() {
        assert_eq!(&p(&[(2, 1), (0, 1)]) + &p(&[(2, -1)]), LaurentPoly::one());
        let x = p(&[(5, 3), (-1, -2)]);
        assert_eq!(&x + &LaurentPoly::zero(), x);
        let d = LaurentPoly::delta();
        assert!((&d + &(-&d)).is_zero());
        assert!((d.clone() - d).is_empty());
    }

    #[test]
    fn delta_squared_by_hand() {
        // (-A^2 - A^-2)^2 = A^4 + 2 + A^-4
        let d = LaurentPoly::delta();
        let expected = p(&[(4, 1), (0, 2), (-4, 1)]);
        assert_eq!(&d * &d, expected);
        assert_eq!(d.pow(2), expected);
        assert!(d.pow(0).is_one());
        assert_eq!(d.pow(1), d);
    }

    #[test]
    fn multiplication_identities() {
        let x = p(&[(3, 2), (-7, -1)]);
        assert_eq!(&x * &LaurentPoly::one(), x);
        assert!((&p(&[(3, 1)]) * &p(&[(-3, 1)])).is_one());
        assert!((&x * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn delta_terms() {
        let d = LaurentPoly::delta();
        assert_eq!(d.to_json_terms(), vec![(2, "-1".into()), (-2, "-1".into())]);
    }

    #[test]
    fn invert_variable() {
        assert_eq!(p(&[(3, -1)]).invert_variable(), p(&[(-3, -1)]));
        assert_eq!(LaurentPoly::delta().invert_variable(), LaurentPoly::delta());
        assert_eq!(
            p(&[(-4, 1), (-12, 1), (-16, -1)]).invert_variable(),
            p(&[(4, 1), (12, 1), (16, -1)])
        );
    }

    #[test]
    fn eval_on_unit_circle() {
        use std::f64::consts::PI;
        let one = LaurentPoly::one().eval(1.234);
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let d = LaurentPoly::delta().eval(3.0 * PI / 5.0);
        assert!((d - Complex64::new(phi, 0.0)).norm() < 1e-12);
        assert!((d.re - 1.6180339887).abs() < 1e-10);

        let d = LaurentPoly::delta().eval(PI / 4.0);
        assert!(d.norm() < 1e-12);

        let a4 = LaurentPoly::monomial(1, 4).eval(PI / 4.0);
        assert!((a4 - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn jones_substitution() {
        assert!(LaurentPoly::one().jones_substitute().0.is_one());
        let f = p(&[(-4, 1), (-12, 1), (-16, -1)]);
        let v = f.jones_substitute();
        assert_eq!(v.0, p(&[(4, 1), (12, 1), (16, -1)]));
        assert_eq!(v.to_string(), "1*t^1 + 1*t^3 + -1*t^4");
        let v = p(&[(3, -1)]).jones_substitute();
        assert_eq!(v.0, p(&[(-3, -1)]));
        assert_eq!(v.to_string(), "-1*t^(-3/4)");
        assert_eq!(p(&[(2, 5)]).jones_substitute().to_string(), "5*t^(-1/2)");
    }

    #[test]
    fn canonical_text() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::monomial(-1, 3).to_string(), "-1*A^3");
        assert_eq!(
            p(&[(-4, 1), (-12, 1), (-16, -1)]).to_string(),
            "1*A^-4 + 1*A^-12 + -1*A^-16"
        );
        assert_eq!(p(&[(4, 1), (0, 2), (-4, 1)]).to_string(), "1*A^4 + 2 + 1*A^-4");
    }

    #[test]
    fn json_round_trip() {
        let x = p(&[(4, 1), (0, -2), (-4, 7)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[4,"1"],[0,"-2"],[-4,"7"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let bad: Result<LaurentPoly, _> = serde_json::from_str(r#"[[1,"x"]]"#);
        assert!(bad.is_err());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = p(&[(1, 1), (0, 1)]);
        let big = x.pow(100);
        // middle binomial coefficient C(100, 50) exceeds u64
        let c = big.coeff(50);
        assert_eq!(c.to_string(), "100891344545564193334812497256");
        assert!(max_abs_coeff(&big) == c);
    }
}
