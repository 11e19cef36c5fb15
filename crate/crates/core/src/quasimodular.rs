//! Free polynomial ring in four weighted generators with the Serre-type
//! derivation.
//!
//! The generators stand for `a = E2*`, `b = E4`, `c = E6` and `d = 1/Delta`,
//! with weights 2, 4, 6 and -12. The derivation acts on them by
//!
//! ```text
//! da = (a^2 - b)/12    db = (ab - c)/3    dc = (ac - b^2)/2    dd = -a d
//! ```
//!
//! and extends to all polynomials by the Leibniz rule. Iterating it on
//! `j = b^3 d` gives polynomials `P_n` of weight `2n` whose values at a CM
//! point are the higher modular derivatives of `j` there.
//!
//! The relation `(b^3 - c^2) d = 1728` is not imposed; polynomials stay in
//! the free ring.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Index of each generator in exponent and value quadruples.
pub const GENERATORS: [char; 4] = ['a', 'b', 'c', 'd'];
pub const GENERATOR_WEIGHTS: [i64; 4] = [2, 4, 6, -12];

/// `a^e[0] b^e[1] c^e[2] d^e[3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QMonomial {
    pub exps: [u32; 4],
}

impl QMonomial {
    pub const ONE: QMonomial = QMonomial { exps: [0; 4] };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> QMonomial {
        QMonomial { exps: [a, b, c, d] }
    }

    pub fn generator(index: usize) -> QMonomial {
        let mut exps = [0; 4];
        exps[index] = 1;
        QMonomial { exps }
    }

    pub fn weight(&self) -> i64 {
        self.exps
            .iter()
            .zip(GENERATOR_WEIGHTS)
            .map(|(&e, w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &QMonomial) -> QMonomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        QMonomial { exps }
    }

    /// Display order: descending in `a`, then ascending in `b`, `c`, `d`.
    fn display_key(&self) -> (Reverse<u32>, u32, u32, u32) {
        (Reverse(self.exps[0]), self.exps[1], self.exps[2], self.exps[3])
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, &e) in GENERATORS.iter().zip(&self.exps) {
            match e {
                0 => {}
                1 => parts.push(g.to_string()),
                _ => parts.push(format!("{g}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct QPolynomial {
    terms: BTreeMap<QMonomial, Rational>,
}

impl QPolynomial {
    pub fn zero() -> QPolynomial {
        QPolynomial::default()
    }

    pub fn constant(c: Rational) -> QPolynomial {
        QPolynomial::term(c, QMonomial::ONE)
    }

    pub fn term(c: Rational, m: QMonomial) -> QPolynomial {
        let mut p = QPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(index: usize) -> QPolynomial {
        QPolynomial::term(Rational::one(), QMonomial::generator(index))
    }

    /// `j = E4^3 / Delta`, i.e. `b^3 d`.
    pub fn j_invariant() -> QPolynomial {
        QPolynomial::term(Rational::one(), QMonomial::new(0, 3, 0, 1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (QMonomial, Rational)>) -> QPolynomial {
        let mut p = QPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: QMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &QMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QPolynomial) -> QPolynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> QPolynomial {
        QPolynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// The common weight of all monomials.
    pub fn weight(&self) -> Result<i64> {
        let mut iter = self.terms.keys();
        let first = iter.next().ok_or(Error::ZeroPolynomial)?.weight();
        if self.terms.keys().all(|m| m.weight() == first) {
            return Ok(first);
        }
        let offending = self
            .sorted_terms()
            .into_iter()
            .map(|(m, _)| format!("{m} (weight {})", m.weight()))
            .collect();
        Err(Error::MixedWeight(offending))
    }

    /// Substitutes exact values for `(a, b, c, d)`.
    pub fn eval(&self, vals: &[Rational; 4]) -> Rational {
        let mut powers: [Vec<Rational>; 4] = Default::default();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Rational::one());
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &vals[i];
                    cache.push(next);
                }
                t *= &cache[e as usize];
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes series for `(a, b, c, d)`; the truncation of the result is
    /// whatever the products support.
    pub fn eval_series(&self, vals: &[TruncatedSeries; 4]) -> Result<TruncatedSeries> {
        let mut powers: [Vec<TruncatedSeries>; 4] = Default::default();
        let mut total: Option<TruncatedSeries> = None;
        for (m, c) in &self.terms {
            let mut t: Option<TruncatedSeries> = None;
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(vals[i].clone());
                }
                while cache.len() < e as usize {
                    let next = cache.last().unwrap().mul(&vals[i]);
                    cache.push(next);
                }
                let p = &cache[e as usize - 1];
                t = Some(match t {
                    None => p.clone(),
                    Some(t) => t.mul(p),
                });
            }
            let t = match t {
                Some(t) => t.scale(c),
                None => {
                    let trunc = vals.iter().map(|v| v.truncation()).min().unwrap();
                    TruncatedSeries::constant(c.clone(), trunc)
                }
            };
            total = Some(match total {
                None => t,
                Some(s) => s.add(&t),
            });
        }
        total.ok_or(Error::ZeroPolynomial)
    }

    fn sorted_terms(&self) -> Vec<(&QMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.display_key());
        v
    }
}

/// Renders as e.g. `-1/6*a*b^2*c*d + 2/3*b*c^2*d + 1/2*b^4*d`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                mag.to_string()
            };
            if *m == QMonomial::ONE {
                write!(f, "{mag_str}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag_str}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Images of the four generators under the derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationRules {
    pub images: [QPolynomial; 4],
}

impl DerivationRules {
    /// Ramanujan's identities with `E2` replaced by its completion.
    pub fn ramanujan() -> DerivationRules {
        let r = |n: i64, d: i64| Rational::new(n, d);
        let m = QMonomial::new;
        DerivationRules {
            images: [
                QPolynomial::from_terms([(m(2, 0, 0, 0), r(1, 12)), (m(0, 1, 0, 0), r(-1, 12))]),
                QPolynomial::from_terms([(m(1, 1, 0, 0), r(1, 3)), (m(0, 0, 1, 0), r(-1, 3))]),
                QPolynomial::from_terms([(m(1, 0, 1, 0), r(1, 2)), (m(0, 2, 0, 0), r(-1, 2))]),
                QPolynomial::from_terms([(m(1, 0, 0, 1), r(-1, 1))]),
            ],
        }
    }

    /// Applies the derivation, extended by the Leibniz rule.
    pub fn derive(&self, p: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (m, c) in &p.terms {
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut rest = m.exps;
                rest[i] -= 1;
                let factor = c * Rational::from(e as i64);
                for (im, ic) in &self.images[i].terms {
                    out.add_term(QMonomial { exps: rest }.mul(im), &factor * ic);
                }
            }
        }
        out
    }

    /// `[P_0, ..., P_n]` with `P_0 = seed` and `P_{k+1} = derive(P_k)`.
    pub fn tower(&self, seed: &QPolynomial, n: usize) -> Vec<QPolynomial> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(seed.clone());
        for k in 0..n {
            let next = self.derive(&out[k]);
            out.push(next);
        }
        out
    }
}

impl Default for DerivationRules {
    fn default() -> Self {
        DerivationRules::ramanujan()
    }
}

/// The derivation with the standard rules.
pub fn serre_derivative(p: &QPolynomial) -> QPolynomial {
    DerivationRules::ramanujan().derive(p)
}

pub fn qpoly_eval(p: &QPolynomial, vals: &[Rational; 4]) -> Rational {
    p.eval(vals)
}

pub fn weight_of(p: &QPolynomial) -> Result<i64> {
    p.weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn derivative_of_j() {
        let dj = serre_derivative(&QPolynomial::j_invariant());
        assert_eq!(dj, QPolynomial::term(r(-1, 1), QMonomial::new(0, 2, 1, 1)));
        assert_eq!(dj.to_string(), "-b^2*c*d");
    }

    #[test]
    fn derivative_of_a() {
        let da = serre_derivative(&QPolynomial::generator(0));
        assert_eq!(da.to_string(), "1/12*a^2 - 1/12*b");
    }

    #[test]
    fn constants_are_killed() {
        assert!(serre_derivative(&QPolynomial::constant(r(5, 3))).is_zero());
    }

    #[test]
    fn second_derivative_renders() {
        let rules = DerivationRules::ramanujan();
        let p2 = rules.tower(&QPolynomial::j_invariant(), 2).pop().unwrap();
        assert_eq!(p2.to_string(), "-1/6*a*b^2*c*d + 2/3*b*c^2*d + 1/2*b^4*d");
    }

    #[test]
    fn evaluation() {
        let j = QPolynomial::j_invariant();
        assert_eq!(j.eval(&[r(0, 1), r(48, 1), r(0, 1), r(1, 64)]), r(1728, 1));
        let dj = serre_derivative(&j);
        assert_eq!(dj.eval(&[r(0, 1), r(0, 1), r(216, 1), r(-1, 27)]), r(0, 1));
        let p = QPolynomial::from_terms([
            (QMonomial::ONE, r(7, 2)),
            (QMonomial::new(1, 2, 0, 0), r(3, 1)),
        ]);
        assert_eq!(p.eval(&Default::default()), r(7, 2));
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&QPolynomial::j_invariant()), Ok(0));
        assert_eq!(weight_of(&serre_derivative(&QPolynomial::j_invariant())), Ok(2));
        let mixed = QPolynomial::generator(0).add(&QPolynomial::generator(1));
        let err = weight_of(&mixed).unwrap_err();
        assert!(err.to_string().starts_with("mixed weight"));
        assert!(err.to_string().contains("a (weight 2)"));
        assert!(err.to_string().contains("b (weight 4)"));
        assert_eq!(weight_of(&QPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn tower_is_homogeneous() {
        let tower = DerivationRules::ramanujan().tower(&QPolynomial::j_invariant(), 30);
        for (n, p) in tower.iter().enumerate() {
            assert_eq!(p.weight(), Ok(2 * n as i64), "P_{n}");
        }
    }

    #[test]
    fn d_degree_is_preserved() {
        let tower = DerivationRules::ramanujan().tower(&QPolynomial::j_invariant(), 12);
        for p in &tower {
            assert!(p.terms().all(|(m, _)| m.exps[3] == 1));
        }
    }
}
