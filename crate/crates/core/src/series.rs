//! Dense truncated formal Laurent series over [`Rational`].
//!
//! A series stores the coefficients for exponents `valuation ..= truncation`
//! and says nothing about higher exponents. Every operation computes the
//! largest truncation at which all of its output coefficients are exact, so
//! precision is tracked rather than assumed.
//!
//! Leading zeros are trimmed on construction: a nonzero series always has a
//! nonzero coefficient at its valuation. The zero series is stored as a
//! single `0` at its truncation order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone)]
pub struct TruncatedSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
}

/// One entry of the JSON form of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub degree: i64,
    pub value: Rational,
}

/// First degree where two series disagree, with both values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl TruncatedSeries {
    /// Builds `sum coeffs[i] x^(valuation + i)`, exact through
    /// `valuation + coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector, since the truncation order
    /// would be undefined.
    pub fn new(valuation: i64, coeffs: Vec<Rational>) -> TruncatedSeries {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        let mut s = TruncatedSeries { valuation, coeffs };
        s.trim_leading();
        s
    }

    /// A polynomial (exact in every degree) viewed as a series through `truncation`.
    /// Coefficients above `truncation` are dropped.
    pub fn from_poly(valuation: i64, coeffs: &[Rational], truncation: i64) -> TruncatedSeries {
        if truncation < valuation {
            return TruncatedSeries::zero(truncation);
        }
        let len = (truncation - valuation + 1) as usize;
        let mut v: Vec<Rational> = coeffs.iter().take(len).cloned().collect();
        v.resize(len, Rational::zero());
        TruncatedSeries::new(valuation, v)
    }

    /// Same as [`TruncatedSeries::from_poly`] with integer coefficients starting at degree 0.
    pub fn from_int_poly(coeffs: &[i64], truncation: i64) -> TruncatedSeries {
        let cs: Vec<Rational> = coeffs.iter().map(|&c| Rational::from(c)).collect();
        TruncatedSeries::from_poly(0, &cs, truncation)
    }

    pub fn zero(truncation: i64) -> TruncatedSeries {
        TruncatedSeries { valuation: truncation, coeffs: vec![Rational::zero()] }
    }

    pub fn one(truncation: i64) -> TruncatedSeries {
        TruncatedSeries::constant(Rational::one(), truncation)
    }

    pub fn constant(c: Rational, truncation: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(c, 0, truncation)
    }

    /// `c x^degree`, exact through `truncation`.
    pub fn monomial(c: Rational, degree: i64, truncation: i64) -> TruncatedSeries {
        TruncatedSeries::from_poly(degree, &[c], truncation)
    }

    /// The formal variable `x`.
    pub fn variable(truncation: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(Rational::one(), 1, truncation)
    }

    fn trim_leading(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len() - 1);
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    /// Lowest stored exponent.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent whose coefficient is known exactly.
    pub fn truncation(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Exponent of the first nonzero coefficient; `truncation + 1` for the
    /// zero series, which is the best lower bound the data supports.
    fn effective_valuation(&self) -> i64 {
        if self.is_zero() {
            self.truncation() + 1
        } else {
            self.valuation
        }
    }

    /// Exponent of the first nonzero coefficient, if any.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Coefficient of `x^degree`, or `None` past the truncation order.
    pub fn coeff(&self, degree: i64) -> Option<Rational> {
        self.coeff_ref(degree).map(|c| c.cloned().unwrap_or_else(Rational::zero))
    }

    fn coeff_ref(&self, degree: i64) -> Option<Option<&Rational>> {
        if degree > self.truncation() {
            None
        } else if degree < self.valuation {
            Some(None)
        } else {
            Some(Some(&self.coeffs[(degree - self.valuation) as usize]))
        }
    }

    /// Stored coefficients, starting at [`TruncatedSeries::valuation`].
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(degree, coefficient)` for every stored degree, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let v = self.valuation;
        self.coeffs.iter().enumerate().map(move |(i, c)| (v + i as i64, c))
    }

    /// Only the nonzero terms.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms().filter(|(_, c)| !c.is_zero())
    }

    /// Forgets everything above `truncation`.
    pub fn truncate(&self, truncation: i64) -> TruncatedSeries {
        if truncation >= self.truncation() {
            return self.clone();
        }
        if truncation < self.valuation {
            return TruncatedSeries::zero(truncation);
        }
        let len = (truncation - self.valuation + 1) as usize;
        TruncatedSeries::new(self.valuation, self.coeffs[..len].to_vec())
    }

    /// Replaces one coefficient. Fails past the truncation order.
    pub fn with_coeff(&self, degree: i64, value: Rational) -> Result<TruncatedSeries> {
        let trunc = self.truncation();
        if degree > trunc {
            return Err(Error::Domain(format!(
                "degree {degree} lies past truncation order {trunc}"
            )));
        }
        let lo = self.valuation.min(degree);
        let mut coeffs: Vec<Rational> = (lo..=trunc).map(|k| self.coeff(k).unwrap()).collect();
        coeffs[(degree - lo) as usize] = value;
        Ok(TruncatedSeries::new(lo, coeffs))
    }

    fn zip_with(&self, other: &TruncatedSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> TruncatedSeries {
        let trunc = self.truncation().min(other.truncation());
        let lo = self.valuation.min(other.valuation).min(trunc);
        let zero = Rational::zero();
        let coeffs = (lo..=trunc)
            .map(|k| {
                let a = self.coeff_ref(k).unwrap().unwrap_or(&zero);
                let b = other.coeff_ref(k).unwrap().unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        TruncatedSeries::new(lo, coeffs)
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(self.truncation());
        }
        TruncatedSeries::new(self.valuation, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> TruncatedSeries {
        TruncatedSeries { valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    /// Integer numerators over a common denominator for `len` coefficients
    /// starting at the valuation.
    fn scaled_integers(&self, len: usize) -> (Vec<BigInt>, BigInt) {
        let window = &self.coeffs[..len.min(self.coeffs.len())];
        let den = Rational::common_denominator(window);
        let ints = window
            .iter()
            .map(|c| {
                if c.is_zero() {
                    BigInt::zero()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (ints, den)
    }

    /// Cauchy product.
    ///
    /// The result is exact through `min(a.trunc + b.val, b.trunc + a.val)`
    /// (using the first nonzero exponents). Coefficients are brought to a
    /// common denominator so the convolution runs over integers.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let va = self.effective_valuation();
        let vb = other.effective_valuation();
        let trunc = (self.truncation() + vb).min(other.truncation() + va);
        let val = va + vb;
        if val > trunc {
            return TruncatedSeries::zero(trunc);
        }
        let len = (trunc - val + 1) as usize;
        let (a, da) = self.scaled_integers(len);
        let (b, db) = other.scaled_integers(len);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = acc.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        TruncatedSeries::new(val, coeffs)
    }

    /// Multiplicative inverse.
    ///
    /// For `a = x^v (c + ...)` exact through `T`, the inverse is
    /// `x^-v (1/c + ...)` exact through `T - 2v`.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        if self.is_zero() {
            return Err(Error::NonUnitLeading);
        }
        let v = self.valuation;
        let len = self.coeffs.len();
        let lead_inv = self.coeffs[0].recip().ok_or(Error::NonUnitLeading)?;
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for k in 1..len {
            let mut s = Rational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    s += a * &out[k - i];
                }
            }
            out.push(-(s * &lead_inv));
        }
        Ok(TruncatedSeries::new(-v, out))
    }

    pub fn div(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power by repeated squaring; negative powers go through
    /// [`TruncatedSeries::invert`].
    pub fn pow(&self, k: i64) -> Result<TruncatedSeries> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        if k == 0 {
            let rel = self.truncation() - self.effective_valuation();
            return Ok(TruncatedSeries::one(rel.max(0)));
        }
        let mut result: Option<TruncatedSeries> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(result.expect("k >= 1"))
    }

    /// `self(inner(x))` by Horner's scheme.
    ///
    /// Requires `self` without poles and `inner` with zero constant term. If
    /// `inner` has valuation `v` and truncation `T`, and `self` is exact
    /// through `N`, the result is exact through `min(T, v (N + 1) - 1)`.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        let vi = inner.effective_valuation();
        if vi < 1 {
            return Err(Error::CompositionValuation(vi));
        }
        if self.effective_valuation() < 0 {
            return Err(Error::OuterPole(self.valuation));
        }
        let n_outer = self.truncation();
        let trunc = inner
            .truncation()
            .min(vi.saturating_mul(n_outer + 1) - 1);
        let u = inner.truncate(trunc);
        let mut acc = TruncatedSeries::zero(trunc);
        for k in (0..=n_outer).rev() {
            let c = self.coeff(k).unwrap();
            acc = acc.mul(&u).truncate(trunc);
            if !c.is_zero() {
                acc = acc.add(&TruncatedSeries::constant(c, trunc));
            }
        }
        Ok(acc)
    }

    /// `x d/dx`: multiplies the degree-`n` coefficient by `n`.
    pub fn theta(&self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.valuation,
            self.terms().map(|(n, c)| c * Rational::from(n)).collect(),
        )
    }

    /// Compares on the common exact range and reports the first disagreement.
    pub fn first_mismatch(&self, other: &TruncatedSeries) -> Option<Mismatch> {
        let trunc = self.truncation().min(other.truncation());
        let lo = self.valuation.min(other.valuation);
        (lo..=trunc).find_map(|k| {
            let a = self.coeff(k).unwrap();
            let b = other.coeff(k).unwrap();
            (a != b).then_some(Mismatch { degree: k, lhs: a, rhs: b })
        })
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Evaluates the known part at a floating-point argument.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms().map(|(n, c)| c.to_f64() * x.powi(n as i32)).sum()
    }

    pub fn to_terms(&self) -> Vec<SeriesTerm> {
        self.terms()
            .map(|(degree, value)| SeriesTerm { degree, value: value.clone() })
            .collect()
    }

    /// Inverse of [`TruncatedSeries::to_terms`]. Degrees must be sorted and
    /// contiguous; the last degree becomes the truncation order.
    pub fn from_terms(terms: &[SeriesTerm]) -> Result<TruncatedSeries> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Parse("empty term list".into()))?;
        for (i, t) in terms.iter().enumerate() {
            if t.degree != first.degree + i as i64 {
                return Err(Error::Parse(format!(
                    "degrees must be contiguous, found {} at position {i}",
                    t.degree
                )));
            }
        }
        Ok(TruncatedSeries::new(
            first.degree,
            terms.iter().map(|t| t.value.clone()).collect(),
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_terms()).expect("series terms always serialize")
    }

    pub fn from_json(s: &str) -> Result<TruncatedSeries> {
        let terms: Vec<SeriesTerm> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TruncatedSeries::from_terms(&terms)
    }
}

/// Series are equal when they agree on the overlap of their exact ranges.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(x^{})", self.truncation() + 1)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.nonzero_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
