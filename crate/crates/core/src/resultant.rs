//! Sylvester resultants of binary forms and the Bézout cofactors that
//! witness `g·r + h·s = Res(g, h)`.
//!
//! Degrees in the eliminated variable are the declared total degrees of
//! the forms, so for coprime forms of degrees `d1`, `d2` the resultant is
//! always a nonzero monomial `a · W^(d1·d2)` in the surviving variable `W`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::poly::MultiPoly;
use crate::univariate::UniPoly;

/// One of the two variables of a binary form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BinVar {
    U,
    V,
}

impl BinVar {
    pub fn index(self) -> usize {
        match self {
            BinVar::U => 0,
            BinVar::V => 1,
        }
    }

    pub fn other(self) -> BinVar {
        match self {
            BinVar::U => BinVar::V,
            BinVar::V => BinVar::U,
        }
    }
}

impl fmt::Display for BinVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Cofactors witnessing `Σ cofactor_i · input_i = rhs_constant · W^rhs_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub lhs_cofactors: Vec<MultiPoly>,
    pub inputs: Vec<BinaryForm>,
    pub rhs_constant: BigInt,
    pub rhs_variable: BinVar,
    pub rhs_exponent: u32,
}

impl BezoutCertificate {
    pub fn lhs(&self) -> MultiPoly {
        let vars = self.inputs[0].vars().to_vec();
        self.lhs_cofactors
            .iter()
            .zip(&self.inputs)
            .fold(MultiPoly::zero(vars), |acc, (c, h)| &acc + &(c * h.poly()))
    }

    pub fn rhs(&self) -> MultiPoly {
        let vars = self.inputs[0].vars().to_vec();
        let mut e = vec![0, 0];
        e[self.rhs_variable.index()] = self.rhs_exponent;
        MultiPoly::monomial(
            vars,
            e,
            BigRational::from_integer(self.rhs_constant.clone()),
        )
    }

    /// Exact polynomial identity check, integrality, and `rhs_constant ≠ 0`.
    pub fn verify(&self) -> bool {
        !self.rhs_constant.is_zero()
            && self.lhs_cofactors.len() == self.inputs.len()
            && self.lhs_cofactors.iter().all(|c| c.is_integral())
            && self.lhs() == self.rhs()
    }

    pub fn check(&self) -> Result<()> {
        if self.verify() {
            Ok(())
        } else {
            Err(Error::IdentityFailed(format!(
                "Bezout certificate with rhs {}*{}^{}",
                self.rhs_constant, self.rhs_variable, self.rhs_exponent
            )))
        }
    }
}

/// Coefficient of `E^j` of a form, as a polynomial in the surviving variable.
fn coeff_in(f: &BinaryForm, eliminate: BinVar, j: u32) -> UniPoly {
    let d = f.degree();
    let mut e = [0u32; 2];
    e[eliminate.index()] = j;
    e[eliminate.other().index()] = d - j;
    UniPoly::monomial(f.poly().coeff(&e), (d - j) as usize)
}

fn sylvester(g: &BinaryForm, h: &BinaryForm, eliminate: BinVar) -> Vec<Vec<UniPoly>> {
    let desc = |f: &BinaryForm| -> Vec<UniPoly> {
        (0..=f.degree())
            .rev()
            .map(|j| coeff_in(f, eliminate, j))
            .collect()
    };
    sylvester_from_coeffs(&desc(g), &desc(h))
}

/// Fraction-free (Bareiss) determinant over ℚ[W].
pub(crate) fn determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(BigRational::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(BigRational::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Sylvester matrix of two polynomials given by coefficient lists in
/// descending order of the eliminated variable.
pub(crate) fn sylvester_from_coeffs(a: &[UniPoly], b: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        row[i..i + m + 1].clone_from_slice(a);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        row[i..i + n + 1].clone_from_slice(b);
        rows.push(row);
    }
    rows
}

fn minor(m: &[Vec<UniPoly>], skip_row: usize, skip_col: usize) -> Vec<Vec<UniPoly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Places `p(W)·E^k` into ℚ[U,V].
fn lift(p: &UniPoly, eliminate: BinVar, k: u32, vars: &[String]) -> MultiPoly {
    MultiPoly::from_terms(
        vars.to_vec(),
        p.coeffs().iter().enumerate().map(|(w, c)| {
            let mut e = vec![0, 0];
            e[eliminate.index()] = k;
            e[eliminate.other().index()] = w as u32;
            (e, c.clone())
        }),
    )
}

fn check_inputs(g: &BinaryForm, h: &BinaryForm) -> Result<()> {
    if g.vars() != h.vars() {
        return Err(Error::VariableMismatch {
            left: g.vars().to_vec(),
            right: h.vars().to_vec(),
        });
    }
    if g.degree() == 0 && h.degree() == 0 {
        return Err(Error::BothDegreeZero);
    }
    Ok(())
}

/// `Res_E(g, h)` for the declared degrees, as a polynomial in U, V.
pub fn resultant(g: &BinaryForm, h: &BinaryForm, eliminate: BinVar) -> Result<MultiPoly> {
    check_inputs(g, h)?;
    let det = determinant(sylvester(g, h, eliminate));
    Ok(lift(&det, eliminate, 0, g.vars()))
}

/// Cofactors `r, s` with `g·r + h·s = Res_E(g, h) = a·W^δ`, read off the
/// Sylvester matrix by expanding along its last column after replacing
/// that column with the stack `E^{n-1}g, …, g, E^{m-1}h, …, h`.
pub fn bezout_cofactors(
    g: &BinaryForm,
    h: &BinaryForm,
    eliminate: BinVar,
) -> Result<BezoutCertificate> {
    check_inputs(g, h)?;
    let mat = sylvester(g, h, eliminate);
    let det = determinant(mat.clone());
    if det.is_zero() {
        return Err(Error::NotCoprime);
    }
    let delta = det.degree().expect("nonzero");
    if det.coeffs()[..delta].iter().any(|c| !c.is_zero()) {
        return Err(Error::Precondition(
            "resultant is not a monomial; inputs must be homogeneous".into(),
        ));
    }
    let a = det.coeffs()[delta].clone();
    debug_assert!(a.is_integer());

    let m = g.degree();
    let n = h.degree();
    let size = (m + n) as usize;
    let vars = g.vars().to_vec();
    let mut r = MultiPoly::zero(vars.clone());
    let mut s = MultiPoly::zero(vars.clone());
    for i in 0..size {
        let mut c = determinant(minor(&mat, i, size - 1));
        if (i + size - 1) % 2 == 1 {
            c = -&c;
        }
        if i < n as usize {
            r = &r + &lift(&c, eliminate, n - 1 - i as u32, &vars);
        } else {
            let k = i - n as usize;
            s = &s + &lift(&c, eliminate, m - 1 - k as u32, &vars);
        }
    }
    let cert = BezoutCertificate {
        lhs_cofactors: vec![r, s],
        inputs: vec![g.clone(), h.clone()],
        rhs_constant: a.to_integer(),
        rhs_variable: eliminate.other(),
        rhs_exponent: delta as u32,
    };
    cert.check()?;
    Ok(cert)
}

/// Like [`bezout_cofactors`] but also accepts a zero input or two
/// constants, as long as the pair generates a monomial ideal.
pub fn bezout_pair(g: &BinaryForm, h: &BinaryForm, eliminate: BinVar) -> Result<BezoutCertificate> {
    let vars = g.vars().to_vec();
    let zero = || MultiPoly::zero(vars.clone());
    let one = || MultiPoly::one(vars.clone());
    let constant_cert = |c: &BinaryForm, cofs: Vec<MultiPoly>| -> Result<BezoutCertificate> {
        let value = c
            .poly()
            .as_constant()
            .filter(|_| c.degree() == 0)
            .ok_or(Error::NotCoprime)?;
        if value.is_zero() {
            return Err(Error::NotCoprime);
        }
        Ok(BezoutCertificate {
            lhs_cofactors: cofs,
            inputs: vec![g.clone(), h.clone()],
            rhs_constant: value.to_integer(),
            rhs_variable: eliminate.other(),
            rhs_exponent: 0,
        })
    };
    if g.is_zero() {
        return constant_cert(h, vec![zero(), one()]);
    }
    if h.is_zero() || (g.degree() == 0 && h.degree() == 0) {
        return constant_cert(g, vec![one(), zero()]);
    }
    bezout_cofactors(g, h, eliminate)
}

/// `a` if `p = a·W^k` for the given variable, with `k`.
pub fn as_monomial_in(p: &MultiPoly, var: BinVar) -> Option<(BigInt, u32)> {
    if p.num_terms() != 1 {
        return None;
    }
    let (e, c) = p.terms().next()?;
    if e[var.other().index()] != 0 || !c.is_integer() {
        return None;
    }
    Some((c.to_integer(), e[var.index()]))
}

pub fn is_nonzero_monomial_of_degree(p: &MultiPoly, var: BinVar, degree: u32) -> bool {
    as_monomial_in(p, var)
        .is_some_and(|(a, k)| !a.is_zero() && k == degree && a.abs() >= BigInt::one())
}
