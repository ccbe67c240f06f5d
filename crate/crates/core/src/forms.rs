//! Homogeneous forms: ternary forms in X, Y, Z and binary forms in U, V.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{vars_of, MultiPoly};
use crate::univariate::UniPoly;

pub fn xyz() -> Vec<String> {
    vars_of(&["X", "Y", "Z"])
}

pub fn uv() -> Vec<String> {
    vars_of(&["U", "V"])
}

/// An integral homogeneous form `f ∈ ℤ[X,Y,Z]` of degree `n ≥ 1`, stored
/// with content 1 and a positive lex-leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    poly: MultiPoly,
    degree: u32,
}

impl TernaryForm {
    /// Validates and normalizes. Variables are renamed positionally to X, Y, Z.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: poly.nvars(),
            });
        }
        let poly = poly.rename(xyz());
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = poly.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if degree == 0 {
            return Err(Error::Precondition(
                "form must have degree at least 1".into(),
            ));
        }
        let (_, prim) = poly.content_and_primitive()?;
        Ok(TernaryForm { poly: prim, degree })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        self.poly
            .evaluate_int(&[x.clone(), y.clone(), z.clone()])
            .expect("three coordinates")
            .to_integer()
    }

    pub fn vanishes_at(&self, p: &[BigInt; 3]) -> bool {
        self.eval_int(&p[0], &p[1], &p[2]).is_zero()
    }

    pub fn partial_derivatives(&self) -> [MultiPoly; 3] {
        partial_derivatives(&self.poly)
    }

    /// `f(h1, h2, h3)` as a polynomial in the variables of the images.
    pub fn compose(&self, images: &[MultiPoly; 3]) -> Result<MultiPoly> {
        self.poly.substitute(images)
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn partial_derivatives(f: &MultiPoly) -> [MultiPoly; 3] {
    [f.derivative(0), f.derivative(1), f.derivative(2)]
}

/// A homogeneous element of ℤ[U,V] (or ℚ[U,V]) with a declared degree.
/// The zero form keeps its declared degree for resultant bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    poly: MultiPoly,
    degree: u32,
}

impl BinaryForm {
    /// A nonzero homogeneous form; the degree is read off the terms.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: poly.nvars(),
            });
        }
        let degree = poly.homogeneous_degree().ok_or(if poly.is_zero() {
            Error::ZeroPolynomial
        } else {
            Error::NotHomogeneous
        })?;
        Ok(BinaryForm { poly, degree })
    }

    /// A form with an explicit declared degree (required for zero).
    pub fn with_degree(poly: MultiPoly, degree: u32) -> Result<Self> {
        if poly.nvars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: poly.nvars(),
            });
        }
        if !poly.is_zero() && poly.homogeneous_degree() != Some(degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(BinaryForm { poly, degree })
    }

    pub fn zero(vars: Vec<String>, degree: u32) -> Self {
        BinaryForm {
            poly: MultiPoly::zero(vars),
            degree,
        }
    }

    /// `c · U^i · V^j` with `i + j` the degree.
    pub fn monomial(vars: Vec<String>, c: BigInt, i: u32, j: u32) -> Self {
        BinaryForm {
            poly: MultiPoly::monomial(vars, vec![i, j], BigRational::from_integer(c)),
            degree: i + j,
        }
    }

    /// From integer coefficients of `U^d, U^{d-1}V, …, V^d` (descending in U).
    pub fn from_coeffs_desc(vars: Vec<String>, coeffs: &[i64]) -> Self {
        let d = coeffs.len() as u32 - 1;
        let poly = MultiPoly::from_int_terms(
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (vec![d - k as u32, k as u32], c)),
        );
        BinaryForm { poly, degree: d }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &[String] {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    /// Coefficient of `U^i V^{d-i}`.
    pub fn coeff_u(&self, i: u32) -> BigRational {
        if i > self.degree {
            return BigRational::zero();
        }
        self.poly.coeff(&[i, self.degree - i])
    }

    pub fn eval_int(&self, u: &BigInt, v: &BigInt) -> BigRational {
        self.poly
            .evaluate_int(&[u.clone(), v.clone()])
            .expect("two coordinates")
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm {
            poly: &self.poly * &other.poly,
            degree: self.degree + other.degree,
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> BinaryForm {
        BinaryForm {
            poly: self.poly.scale_int(c),
            degree: self.degree,
        }
    }

    /// Exact division; `None` when `divisor` does not divide.
    pub fn exact_div(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.degree > self.degree {
            return if self.is_zero() {
                Some(BinaryForm::zero(self.vars().to_vec(), 0))
            } else {
                None
            };
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(
                self.vars().to_vec(),
                self.degree - divisor.degree,
            ));
        }
        let q = self.poly.exact_div(&divisor.poly)?;
        Some(BinaryForm {
            poly: q,
            degree: self.degree - divisor.degree,
        })
    }

    /// Largest `k` with `V^k` dividing the (nonzero) form.
    pub fn v_valuation(&self) -> u32 {
        self.poly.terms().map(|(e, _)| e[1]).min().unwrap_or(0)
    }

    /// `F(U, 1)` as a univariate polynomial in U.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new((0..=self.degree).map(|i| self.coeff_u(i)).collect())
    }

    /// Homogenizes `p(U)` to a form of degree `degree ≥ deg p`.
    pub fn homogenize(vars: Vec<String>, p: &UniPoly, degree: u32) -> BinaryForm {
        let poly = MultiPoly::from_terms(
            vars,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32, degree - i as u32], c.clone())),
        );
        BinaryForm { poly, degree }
    }

    /// Primitive integral associate with positive lex-leading coefficient.
    pub fn primitive(&self) -> BinaryForm {
        if self.is_zero() {
            return self.clone();
        }
        let den = BigRational::from_integer(self.poly.denominator_lcm());
        let (_, prim) = self
            .poly
            .scale(&den)
            .content_and_primitive()
            .expect("integral after clearing");
        BinaryForm {
            poly: prim,
            degree: self.degree,
        }
    }

    /// Distinct rational projective roots `(u:v)`, as primitive integer
    /// pairs with `v > 0`, or `(1, 0)` for the point at infinity.
    pub fn rational_roots(&self) -> Vec<(BigInt, BigInt)> {
        if self.is_zero() || self.degree == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.coeff_u(self.degree).is_zero() {
            out.push((BigInt::one(), BigInt::zero()));
        }
        for r in self.dehomogenize().rational_roots() {
            out.push((r.numer().clone(), r.denom().clone()));
        }
        out
    }

    /// Removes every rational linear factor (with multiplicity) and returns
    /// the squarefree primitive remainder, or `None` if nothing is left.
    pub fn strip_rational_linear_factors(&self) -> Option<BinaryForm> {
        if self.is_zero() {
            return None;
        }
        let vars = self.vars().to_vec();
        let mut rest = self.primitive();
        for (u, v) in self.rational_roots() {
            // (u:v) is a root of  v·U − u·V.
            let lin = BinaryForm::from_big_coeffs_desc(vars.clone(), &[v.clone(), -u.clone()]);
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
            }
        }
        if rest.degree == 0 {
            return None;
        }
        // No V factor remains, so dehomogenizing keeps the full degree.
        let sf = rest.dehomogenize().squarefree_part();
        let deg = sf.degree().unwrap_or(0) as u32;
        Some(BinaryForm::homogenize(vars, &sf, deg).primitive())
    }

    pub fn from_big_coeffs_desc(vars: Vec<String>, coeffs: &[BigInt]) -> Self {
        let d = coeffs.len() as u32 - 1;
        let poly = MultiPoly::from_terms(
            vars,
            coeffs.iter().enumerate().map(|(k, c)| {
                (
                    vec![d - k as u32, k as u32],
                    BigRational::from_integer(c.clone()),
                )
            }),
        );
        BinaryForm { poly, degree: d }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Gcd in ℤ[U,V] of two binary forms: primitive, positive lex-leading
/// coefficient. `gcd(p, 0)` is the primitive part of `p`; `gcd(0, 0) = 0`.
pub fn gcd_bivariate(a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    let vars = a.vars().to_vec();
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return BinaryForm::zero(vars, 0),
        (true, false) => return b.primitive(),
        (false, true) => return a.primitive(),
        _ => {}
    }
    let ka = a.v_valuation();
    let kb = b.v_valuation();
    let va = BinaryForm::monomial(vars.clone(), BigInt::one(), 0, ka);
    let vb = BinaryForm::monomial(vars.clone(), BigInt::one(), 0, kb);
    let a1 = a.exact_div(&va).expect("V-power divides");
    let b1 = b.exact_div(&vb).expect("V-power divides");
    // Forms prime to V dehomogenize without losing degree.
    let g = a1.dehomogenize().gcd(&b1.dehomogenize());
    let gdeg = g.degree().unwrap_or(0) as u32;
    let k = ka.min(kb);
    let gform = BinaryForm::homogenize(vars.clone(), &g, gdeg);
    gform
        .mul(&BinaryForm::monomial(vars, BigInt::one(), 0, k))
        .primitive()
}

pub fn gcd_many(forms: &[BinaryForm]) -> BinaryForm {
    let vars = forms.first().map(|f| f.vars().to_vec()).unwrap_or_else(uv);
    forms
        .iter()
        .fold(BinaryForm::zero(vars, 0), |g, f| gcd_bivariate(&g, f))
}

/// How irreducibility of the input form was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityStatus {
    /// No rational linear factor (degree ≤ 3); for conics also nondegenerate.
    Verified,
    /// Degree ≥ 4, accepted on the caller's word.
    Assumed,
}

/// A rational linear factor of `f`, as a primitive integral linear form.
pub fn rational_linear_factor(f: &TernaryForm) -> Option<MultiPoly> {
    let p = f.poly();
    let vars = xyz();
    let lin = |a: BigRational, b: BigRational, c: BigRational| {
        let l = MultiPoly::from_terms(
            vars.clone(),
            [(vec![1, 0, 0], a), (vec![0, 1, 0], b), (vec![0, 0, 1], c)],
        );
        let den = BigRational::from_integer(l.denominator_lcm());
        l.scale(&den).content_and_primitive().expect("integral").1
    };
    let z_line = |x: i64, y: i64| -> UniPoly {
        // f(x, y, z) as a polynomial in z
        let deg = f.degree();
        UniPoly::new(
            (0..=deg)
                .map(|k| {
                    p.terms()
                        .filter(|(e, _)| e[2] == k)
                        .map(|(e, c)| {
                            c * BigRational::from_integer(
                                BigInt::from(x).pow(e[0]) * BigInt::from(y).pow(e[1]),
                            )
                        })
                        .sum()
                })
                .collect(),
        )
    };
    let zero = BigRational::zero;
    let one = BigRational::one;

    // Factors involving Z:  Z − αX − βY.
    let p1 = z_line(1, 0);
    if p1.is_zero() {
        return Some(lin(zero(), one(), zero()));
    }
    let p2 = z_line(0, 1);
    if p2.is_zero() {
        return Some(lin(one(), zero(), zero()));
    }
    for alpha in p1.rational_roots() {
        for beta in p2.rational_roots() {
            let img = [
                MultiPoly::var(vars.clone(), 0),
                MultiPoly::var(vars.clone(), 1),
                MultiPoly::from_terms(
                    vars.clone(),
                    [
                        (vec![1, 0, 0], alpha.clone()),
                        (vec![0, 1, 0], beta.clone()),
                    ],
                ),
            ];
            if p.substitute(&img).expect("arity").is_zero() {
                return Some(lin(-alpha.clone(), -beta.clone(), one()));
            }
        }
    }

    // Factors aX + bY divide every Z-coefficient.
    let deg = f.degree();
    let coeff_forms: Vec<BinaryForm> = (0..=deg)
        .filter_map(|k| {
            let c = MultiPoly::from_terms(
                uv(),
                p.terms()
                    .filter(|(e, _)| e[2] == k)
                    .map(|(e, c)| (vec![e[0], e[1]], c.clone())),
            );
            (!c.is_zero()).then(|| BinaryForm::new(c).expect("homogeneous slice"))
        })
        .collect();
    let g = gcd_many(&coeff_forms);
    if let Some((x0, y0)) = g.rational_roots().into_iter().next() {
        return Some(lin(
            BigRational::from_integer(y0),
            BigRational::from_integer(-x0),
            zero(),
        ));
    }
    None
}

/// Symmetric Gram determinant of a ternary quadratic form (times 8).
pub fn conic_discriminant(f: &TernaryForm) -> BigInt {
    assert_eq!(f.degree(), 2);
    let c = |e: [u32; 3]| f.poly().coeff(&e).to_integer();
    let m = [
        [c([2, 0, 0]) * 2, c([1, 1, 0]), c([1, 0, 1])],
        [c([1, 1, 0]), c([0, 2, 0]) * 2, c([0, 1, 1])],
        [c([1, 0, 1]), c([0, 1, 1]), c([0, 0, 2]) * 2],
    ];
    crate::arith::det3(&m)
}

/// Irreducibility gate: exact for degree ≤ 3, caller-asserted above.
pub fn check_irreducible(f: &TernaryForm, assume: bool) -> Result<IrreducibilityStatus> {
    let n = f.degree();
    if n == 1 {
        return Ok(IrreducibilityStatus::Verified);
    }
    if n >= 4 {
        return if assume {
            Ok(IrreducibilityStatus::Assumed)
        } else {
            Err(Error::IrreducibilityUnchecked(n))
        };
    }
    if let Some(l) = rational_linear_factor(f) {
        return Err(Error::Reducible(l.to_string()));
    }
    if n == 2 && conic_discriminant(f).is_zero() {
        return Err(Error::NotAbsolutelyIrreducible(
            "degenerate conic (product of conjugate lines)".into(),
        ));
    }
    Ok(IrreducibilityStatus::Verified)
}

/// Content of a list of integral polynomials as one integer (non-negative).
pub fn joint_content(polys: &[&MultiPoly]) -> BigInt {
    polys.iter().fold(BigInt::zero(), |g, p| {
        num_integer::Integer::gcd(&g, &p.integer_content().expect("integral"))
    })
}

pub fn is_unit_constant(f: &BinaryForm) -> bool {
    f.degree == 0 && f.poly.as_constant().is_some_and(|c| c.abs().is_one())
}
