//! Integer Laurent polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::ParseError;

/// Sparse integer Laurent polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::monomial(-1, 2) + Self::monomial(-1, -2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `c * A^e`.
    pub fn scale(&self, coeff: i64, exp: i32) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + exp, c * coeff)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitute `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Exact division by a monomial-free polynomial is not needed anywhere;
    /// this divides by `(-A^3)^k` for writhe normalization.
    pub fn times_neg_a3_pow(&self, k: i32) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        self.scale(sign, 3 * k)
    }

    pub fn eval(&self, a: f64) -> f64 {
        self.terms.iter().map(|(&e, &c)| c as f64 * a.powi(e)).sum()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1, 0)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*A^e` terms, exponents descending, e.g. `-1*A^16+1*A^12+1*A^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 && c > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*A^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            // a '-' directly after '^' belongs to the exponent
            while i < bytes.len() && bytes[i - 1] == b'^' {
                i += 1;
                while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                    i += 1;
                }
            }
            let term = &s[start..i];
            let (c, e) = term.split_once("*A^").ok_or_else(|| ParseError::syntax(format!("bad term `{term}`")))?;
            let c: i64 = c
                .trim_start_matches('+')
                .parse()
                .map_err(|_| ParseError::syntax(format!("bad coefficient in `{term}`")))?;
            let e: i32 = e.parse().map_err(|_| ParseError::syntax(format!("bad exponent in `{term}`")))?;
            out.add_term(c, e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared() {
        let d = LaurentPoly::delta();
        let d2 = &d * &d;
        assert_eq!(d2.to_string(), "1*A^4+2*A^0+1*A^-4");
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1*A^0", "-1*A^16+1*A^12+1*A^4", "3*A^-2-5*A^-7"] {
            let p: LaurentPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = LaurentPoly::monomial(2, 3) + LaurentPoly::monomial(-2, 3);
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn writhe_factor() {
        let p = LaurentPoly::one().times_neg_a3_pow(-1);
        assert_eq!(p, LaurentPoly::monomial(-1, -3));
    }
}
