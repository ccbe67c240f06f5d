//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`MultiPoly`] is a map from exponent vectors to nonzero coefficients
//! over an ordered list of variable names. Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

/// Graded lexicographic comparison: total degree first, then lex.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn vars_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn int_constant(vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        Self::constant(vars, BigRational::from_integer(c.into()))
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// The polynomial consisting of the `index`-th variable.
    pub fn var(vars: Vec<String>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, BigRational::one())
    }

    pub fn monomial(vars: Vec<String>, exps: Exponents, c: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { vars, terms }
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, i64)>,
    {
        Self::from_terms(
            vars,
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars()]))
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Common total degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Leading term under lexicographic order (largest exponent vector).
    pub fn lex_leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> MultiPoly {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_int(&self, point: &[BigInt]) -> Result<BigRational> {
        let q: Vec<BigRational> = point
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        self.evaluate(&q)
    }

    /// Composition: replaces variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            // No variables: the polynomial is a constant over the empty list.
            return Ok(self.clone());
        };
        let target = first.vars.clone();
        for im in images {
            first.check_vars(im)?;
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| vec![MultiPoly::one(im.vars.clone()), im.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(out.vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Integer content and primitive part with `content * primitive == self`.
    /// The primitive part has a positive lex-leading coefficient, so the
    /// content carries the sign of `self`. Zero maps to `(0, 0)`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, MultiPoly)> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        if self.is_zero() {
            return Ok((BigInt::zero(), self.clone()));
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
        }
        let (_, lead) = self.lex_leading().expect("nonzero");
        if lead.is_negative() {
            g = -g;
        }
        let inv = BigRational::new(BigInt::one(), g.clone());
        Ok((g, self.scale(&inv)))
    }

    /// Gcd of the integer coefficients (non-negative); zero for zero.
    pub fn integer_content(&self) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(self
            .terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer())))
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    /// Fixes variable `var` to `value`, keeping the variable list.
    pub fn specialize(&self, var: usize, value: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            out.add_term(e2, c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Same terms under a new list of variable names of equal length.
    pub fn rename(&self, vars: Vec<String>) -> MultiPoly {
        assert_eq!(vars.len(), self.vars.len(), "rename arity");
        MultiPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Exact division by a nonzero polynomial; `None` if it does not divide.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() || self.vars != divisor.vars {
            return None;
        }
        let (de, dc) = divisor.lex_leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.vars.clone());
        while let Some((re, rc)) = rem.lex_leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = rc / &dc;
            let t = MultiPoly::monomial(self.vars.clone(), qe, qc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Terms ordered by descending graded lexicographic order.
    pub fn terms_grlex_desc(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }
}

fn format_monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| {
            if k == 1 {
                v.clone()
            } else {
                format!("{v}^{k}")
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Prints in the input grammar: explicit `*`, `^`, and `a/b` rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.vars, e);
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

// Operator forms panic on variable mismatch; use the `try_*` methods when
// the variable lists are not known to agree.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable lists must agree")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable lists must agree")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable lists must agree")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uv() -> Vec<String> {
        vars_of(&["U", "V"])
    }

    fn xyz() -> Vec<String> {
        vars_of(&["X", "Y", "Z"])
    }

    fn p(vars: Vec<String>, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn add_cancels_and_doubles() {
        let a = p(uv(), &[(&[2, 0], 1), (&[0, 2], 1)]);
        let b = p(uv(), &[(&[0, 2], -1)]);
        assert_eq!(&a + &b, p(uv(), &[(&[2, 0], 1)]));
        assert_eq!(&a + &MultiPoly::zero(uv()), a);
        let t = p(uv(), &[(&[1, 1], 2)]);
        assert_eq!(&t + &t, p(uv(), &[(&[1, 1], 4)]));
    }

    #[test]
    fn mismatched_variables_error() {
        let a = MultiPoly::var(uv(), 0);
        let b = MultiPoly::var(xyz(), 0);
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let u = MultiPoly::var(uv(), 0);
        let v = MultiPoly::var(uv(), 1);
        assert_eq!(
            &(&u + &v) * &(&u - &v),
            p(uv(), &[(&[2, 0], 1), (&[0, 2], -1)])
        );
        assert!((&u * &MultiPoly::zero(uv())).is_zero());
        assert_eq!(&u.pow(2) * &v.pow(2), p(uv(), &[(&[2, 2], 1)]));
    }

    #[test]
    fn evaluate_examples() {
        let f = p(xyz(), &[(&[1, 1, 0], 1), (&[0, 0, 2], -1)]);
        assert_eq!(f.evaluate(&[rat(1), rat(1), rat(1)]).unwrap(), rat(0));
        let cubic = p(
            xyz(),
            &[
                (&[3, 0, 0], 1),
                (&[0, 3, 0], 1),
                (&[2, 0, 1], 1),
                (&[0, 2, 1], -2),
            ],
        );
        assert_eq!(cubic.evaluate(&[rat(0), rat(0), rat(1)]).unwrap(), rat(0));
        let g = p(uv(), &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(g.evaluate(&[rat(2), rat(1)]).unwrap(), rat(3));
        assert!(matches!(
            g.evaluate(&[rat(2)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn substitute_examples() {
        let f = p(xyz(), &[(&[1, 1, 0], 1), (&[0, 0, 2], -1)]);
        let h = [
            p(uv(), &[(&[2, 0], 1)]),
            p(uv(), &[(&[0, 2], 1)]),
            p(uv(), &[(&[1, 1], 1)]),
        ];
        assert!(f.substitute(&h).unwrap().is_zero());

        let cubic = p(
            xyz(),
            &[
                (&[3, 0, 0], 1),
                (&[0, 3, 0], 1),
                (&[2, 0, 1], 1),
                (&[0, 2, 1], -2),
            ],
        );
        let h1 = p(uv(), &[(&[2, 1], 2), (&[0, 3], -1)]);
        let h2 = p(uv(), &[(&[3, 0], 2), (&[1, 2], -1)]);
        let h3 = p(uv(), &[(&[0, 3], 1), (&[3, 0], 1)]);
        assert!(cubic.substitute(&[h1, h2, h3]).unwrap().is_zero());

        let id = [
            MultiPoly::var(xyz(), 0),
            MultiPoly::var(xyz(), 1),
            MultiPoly::var(xyz(), 2),
        ];
        assert_eq!(cubic.substitute(&id).unwrap(), cubic);
        assert!(matches!(
            cubic.substitute(&id[..2]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn content_examples() {
        let (c, pp) = p(uv(), &[(&[1, 1], 2)]).content_and_primitive().unwrap();
        assert_eq!((c, pp), (BigInt::from(2), p(uv(), &[(&[1, 1], 1)])));
        // Oracle: gcd of the single coefficient 4.
        let (c, pp) = p(uv(), &[(&[4, 0], 4)]).content_and_primitive().unwrap();
        assert_eq!((c, pp), (BigInt::from(4), p(uv(), &[(&[4, 0], 1)])));
        let g = p(uv(), &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(
            g.content_and_primitive().unwrap(),
            (BigInt::one(), g.clone())
        );
        let (c, pp) = MultiPoly::zero(uv()).content_and_primitive().unwrap();
        assert!(c.is_zero() && pp.is_zero());
        let neg = p(uv(), &[(&[2, 0], -6), (&[0, 2], 4)]);
        let (c, pp) = neg.content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(pp, p(uv(), &[(&[2, 0], 3), (&[0, 2], -2)]));
        assert!(MultiPoly::constant(uv(), ratio(1, 2))
            .content_and_primitive()
            .is_err());
    }

    #[test]
    fn partial_derivative_examples() {
        let f = p(xyz(), &[(&[1, 1, 0], 1), (&[0, 0, 2], -1)]);
        assert_eq!(f.derivative(0), MultiPoly::var(xyz(), 1));
        assert_eq!(f.derivative(2), p(xyz(), &[(&[0, 0, 1], -2)]));
        let cubic = p(
            xyz(),
            &[
                (&[3, 0, 0], 1),
                (&[0, 3, 0], 1),
                (&[2, 0, 1], 1),
                (&[0, 2, 1], -2),
            ],
        );
        // Oracle: term-by-term power rule.
        assert_eq!(
            cubic.derivative(0),
            p(xyz(), &[(&[2, 0, 0], 3), (&[1, 0, 1], 2)])
        );
        assert_eq!(
            cubic.derivative(1),
            p(xyz(), &[(&[0, 2, 0], 3), (&[0, 1, 1], -4)])
        );
        assert_eq!(
            cubic.derivative(2),
            p(xyz(), &[(&[2, 0, 0], 1), (&[0, 2, 0], -2)])
        );
    }

    #[test]
    fn display_uses_input_grammar() {
        let cubic = p(
            xyz(),
            &[
                (&[3, 0, 0], 1),
                (&[0, 3, 0], 1),
                (&[2, 0, 1], 1),
                (&[0, 2, 1], -2),
            ],
        );
        assert_eq!(cubic.to_string(), "X^3 + X^2*Z + Y^3 - 2*Y^2*Z");
        let q = MultiPoly::from_terms(uv(), [(vec![1, 0], ratio(-1, 2)), (vec![0, 0], rat(3))]);
        assert_eq!(q.to_string(), "-1/2*U + 3");
        assert_eq!(MultiPoly::zero(uv()).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let u = MultiPoly::var(uv(), 0);
        let v = MultiPoly::var(uv(), 1);
        let a = &(&u + &v) * &(&u - &v);
        assert_eq!(a.exact_div(&(&u + &v)).unwrap(), &u - &v);
        assert!(a.exact_div(&u).is_none());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -9i64..10), 0..6).prop_map(
            move |ts| {
                let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
                MultiPoly::from_int_terms(names, ts)
            },
        )
    }

    fn arb_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec((-6i64..7, 1i64..4), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| ratio(a, b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }

    proptest! {
        #[test]
        fn substitute_commutes_with_evaluation(
            pp in arb_poly(3),
            h0 in arb_poly(2), h1 in arb_poly(2), h2 in arb_poly(2),
            x in arb_point(2),
        ) {
            let h = [h0, h1, h2];
            let comp = pp.substitute(&h).unwrap();
            let inner: Vec<BigRational> = h.iter().map(|hi| hi.evaluate(&x).unwrap()).collect();
            prop_assert_eq!(comp.evaluate(&x).unwrap(), pp.evaluate(&inner).unwrap());
        }

        #[test]
        fn content_reconstructs(pp in arb_poly(3)) {
            let (c, prim) = pp.content_and_primitive().unwrap();
            prop_assert_eq!(prim.scale_int(&c), pp.clone());
            if !pp.is_zero() {
                prop_assert_eq!(prim.integer_content().unwrap(), BigInt::one());
                prop_assert!(prim.lex_leading().unwrap().1.is_positive());
            }
        }

        #[test]
        fn homogeneous_scaling(
            coeffs in prop::collection::vec(-9i64..10, 5),
            lam in (-5i64..6, 1i64..4), pt in arb_point(2),
        ) {
            // Degree-4 binary form.
            let f = MultiPoly::from_int_terms(uv(), coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u32, 4 - i as u32], c)));
            let l = ratio(lam.0, lam.1);
            let scaled: Vec<BigRational> = pt.iter().map(|x| x * &l).collect();
            prop_assert_eq!(f.evaluate(&scaled).unwrap(), f.evaluate(&pt).unwrap() * num_traits::pow(l, 4));
        }
    }
}
