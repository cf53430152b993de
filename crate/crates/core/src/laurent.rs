//! Integer Laurent polynomials in one variable.
//!
//! Alexander polynomials are carried around in the symmetric normalization
//! (invariant under `t -> 1/t`, value 1 at `t = 1`), which is the canonical
//! representative modulo units `±t^k`. Coefficients are arbitrary-precision
//! integers so overflow is impossible by construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial with integer coefficients, stored sparsely as
/// exponent -> nonzero coefficient. The empty map is the zero polynomial,
/// which makes the representation canonical.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * t^e`.
    pub fn monomial(exponent: i64, coefficient: impl Into<BigInt>) -> Self {
        let c: BigInt = coefficient.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        Self { coeffs }
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Exponent range as (min, max); `None` for the zero polynomial.
    pub fn span(&self) -> Option<(i64, i64)> {
        let min = self.coeffs.keys().next()?;
        let max = self.coeffs.keys().next_back()?;
        Some((*min, *max))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Substitutes `t -> t^w`, i.e. maps exponent `e` to `w*e`.
    pub fn compose_power(&self, w: i64) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidInput(
                "compose_power: exponent weight must be nonzero".into(),
            ));
        }
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(w * e, c.clone());
        }
        Ok(out)
    }

    /// Mirrors the exponents: `p(t) -> p(1/t)`.
    pub fn reverse(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(-e, c.clone());
        }
        out
    }

    /// Exact division: returns `q` with `q * den = self`, or an error when
    /// no integer Laurent quotient exists.
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("exact_divide: division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // shift both to ordinary polynomials and do long division by the
        // leading term, requiring coefficient divisibility at every step
        let (den_min, den_max) = den.span().unwrap();
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        let den_lead = den.coefficient(den_max);
        loop {
            if rem.is_zero() {
                break;
            }
            let (rem_min, rem_max) = rem.span().unwrap();
            if rem_max - rem_min < den_max - den_min {
                return Err(Error::Computation(
                    "exact_divide: remainder of lower degree than divisor".into(),
                ));
            }
            let lead = rem.coefficient(rem_max);
            if !(&lead % &den_lead).is_zero() {
                return Err(Error::Computation(
                    "exact_divide: leading coefficient not divisible".into(),
                ));
            }
            let factor = Self::monomial(rem_max - den_max, &lead / &den_lead);
            rem = rem.add(&factor.mul(den).negate());
            quotient = quotient.add(&factor);
        }
        Ok(quotient)
    }

    fn negate(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    /// The unique unit multiple `±t^k * p` that is symmetric under exponent
    /// negation and evaluates to 1 at `t = 1`.
    pub fn symmetrize(&self) -> Result<Self> {
        let one: BigInt = BigInt::one();
        let at_one = self.evaluate_at_one();
        if at_one.abs() != one {
            return Err(Error::InvalidInput(format!(
                "symmetrize: polynomial evaluates to {at_one} at t=1, expected a unit"
            )));
        }
        let (min, max) = self
            .span()
            .expect("unit value at t=1 rules out the zero polynomial");
        if (min + max) % 2 != 0 {
            return Err(Error::InvalidInput(
                "symmetrize: exponent span has no symmetric centre".into(),
            ));
        }
        let shift = -(min + max) / 2;
        let sign = if at_one.is_negative() { -1 } else { 1 };
        let candidate = self.mul(&Self::monomial(shift, sign));
        if candidate != candidate.reverse() {
            return Err(Error::InvalidInput(
                "symmetrize: no symmetric unit multiple exists".into(),
            ));
        }
        Ok(candidate)
    }

    /// True when the polynomial is a unit, i.e. symmetrizes to 1.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.symmetrize()? == Self::one())
    }
}

impl fmt::Display for LaurentPoly {
    /// Exponent-ascending rendering, e.g. `t^-2 - t^-1 + 1 - t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit_coeff = mag.is_one();
            match (e, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = p(&[(1, 1), (0, -1)]); // t - 1
        let b = p(&[(1, 1), (0, 1)]); // t + 1
        assert_eq!(a.mul(&b), p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn mul_identity() {
        let q = p(&[(3, 2), (-1, 5)]);
        assert_eq!(LaurentPoly::one().mul(&q), q);
    }

    #[test]
    fn compose_power_scales_exponents() {
        let trefoil = p(&[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(
            trefoil.compose_power(3).unwrap(),
            p(&[(3, 1), (0, -1), (-3, 1)])
        );
    }

    #[test]
    fn compose_power_zero_rejected() {
        assert!(LaurentPoly::one().compose_power(0).is_err());
    }

    #[test]
    fn exact_divide_simple() {
        let num = p(&[(2, 1), (0, -1)]); // t^2 - 1
        let den = p(&[(1, 1), (0, -1)]); // t - 1
        assert_eq!(num.exact_divide(&den).unwrap(), p(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn exact_divide_torus_quotient() {
        // (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1)) = t^2 - t + 1
        let num = p(&[(6, 1), (0, -1)]).mul(&p(&[(1, 1), (0, -1)]));
        let den = p(&[(2, 1), (0, -1)]).mul(&p(&[(3, 1), (0, -1)]));
        let q = num.exact_divide(&den).unwrap();
        assert_eq!(q, p(&[(2, 1), (1, -1), (0, 1)]));
        assert_eq!(q.mul(&den), num);
    }

    #[test]
    fn exact_divide_non_exact() {
        let num = p(&[(1, 1), (0, 1)]); // t + 1
        let den = p(&[(1, 1), (0, -1)]); // t - 1
        assert!(num.exact_divide(&den).is_err());
    }

    #[test]
    fn symmetrize_shifts_to_centre() {
        // t^2 - t + 1 -> t - 1 + 1/t
        let q = p(&[(2, 1), (1, -1), (0, 1)]);
        let s = q.symmetrize().unwrap();
        assert_eq!(s, p(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(s.evaluate_at_one(), BigInt::one());
        assert_eq!(s, s.reverse());
    }

    #[test]
    fn symmetrize_one_and_units() {
        assert_eq!(LaurentPoly::one().symmetrize().unwrap(), LaurentPoly::one());
        assert_eq!(p(&[(1, -1)]).symmetrize().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn symmetrize_rejects_non_units() {
        assert!(p(&[(1, 1), (0, 1)]).symmetrize().is_err());
        assert!(LaurentPoly::zero().symmetrize().is_err());
    }

    #[test]
    fn triviality() {
        assert!(LaurentPoly::one().is_trivial().unwrap());
        assert!(!p(&[(1, 1), (0, -1), (-1, 1)]).is_trivial().unwrap());
        assert!(p(&[(3, 1)]).is_trivial().unwrap());
    }

    #[test]
    fn display_ascending() {
        let q = p(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
        assert_eq!(q.to_string(), "t^-2 - t^-1 + 1 - t + t^2");
        assert_eq!(p(&[(0, 1)]).to_string(), "1");
        assert_eq!(p(&[(1, -1)]).to_string(), "-t");
        assert_eq!(p(&[(2, 3), (0, -2)]).to_string(), "-2 + 3t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..5, -3i64..4), 0..6)
            .prop_map(|terms| LaurentPoly::from_terms(&terms))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn divide_mul_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn symmetrize_properties(a in arb_poly()) {
            if let Ok(s) = a.symmetrize() {
                prop_assert_eq!(s.evaluate_at_one(), BigInt::one());
                prop_assert_eq!(s.clone(), s.reverse());
            }
        }
    }
}
