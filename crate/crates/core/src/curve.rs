//! Parametrizations of the curve `f = 0` by binary forms: construction for
//! lines and conics, validation of supplied triples, preimages of rational
//! points, and rational singular points with their classification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{complete_basis, gcd_all, kernel_basis};
use crate::error::{Error, Result};
use crate::eval::FastForm;
use crate::forms::{gcd_many, uv, BinaryForm, TernaryForm};
use crate::poly::MultiPoly;
use crate::resultant::{determinant, sylvester_from_coeffs};
use crate::univariate::UniPoly;

pub type IntTriple = [BigInt; 3];

/// Primitive representative with first nonzero coordinate positive.
pub fn canonical_point(p: &IntTriple) -> Option<IntTriple> {
    let g = gcd_all(p.iter());
    if g.is_zero() {
        return None;
    }
    let first = p.iter().find(|x| !x.is_zero()).expect("nonzero");
    let g = if first.is_negative() { -g } else { g };
    Some(std::array::from_fn(|i| &p[i] / &g))
}

pub fn format_point(p: &IntTriple) -> String {
    format!("({}:{}:{})", p[0], p[1], p[2])
}

pub fn triple(x: i64, y: i64, z: i64) -> IntTriple {
    [BigInt::from(x), BigInt::from(y), BigInt::from(z)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Constructed,
    UserSupplied,
}

/// Binary forms `(h1, h2, h3)` of common degree with
/// `f(h1, h2, h3) ≡ 0`, integral, and without a common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFormTriple {
    h: [BinaryForm; 3],
    degree: u32,
    pub provenance: Provenance,
}

impl BinaryFormTriple {
    pub fn forms(&self) -> &[BinaryForm; 3] {
        &self.h
    }

    pub fn polys(&self) -> [MultiPoly; 3] {
        std::array::from_fn(|i| self.h[i].poly().clone())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(h1(u, v), h2(u, v), h3(u, v))`
    pub fn eval(&self, u: &BigInt, v: &BigInt) -> IntTriple {
        std::array::from_fn(|i| self.h[i].eval_int(u, v).to_integer())
    }

    /// Builds without checks other than shape; see [`ingest_parametrization`].
    pub fn from_forms_unchecked(h: [BinaryForm; 3], provenance: Provenance) -> Self {
        let degree = h.iter().map(|f| f.degree()).max().unwrap_or(0);
        BinaryFormTriple {
            h,
            degree,
            provenance,
        }
    }
}

impl fmt::Display for BinaryFormTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h[0], self.h[1], self.h[2])
    }
}

/// What ingestion changed on the way to a normalized triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ingested {
    pub triple: BinaryFormTriple,
    pub removed_content: BigRational,
    pub removed_factor: Option<BinaryForm>,
}

fn reject(code: &'static str, detail: impl Into<String>) -> Error {
    Error::InvalidParametrization {
        code,
        detail: detail.into(),
    }
}

/// Normalizes a candidate parametrization: clears denominators and the
/// joint integer content, divides out a common polynomial factor, fixes the
/// overall sign, and checks `f(h) ≡ 0`.
pub fn ingest_parametrization(
    f: &TernaryForm,
    polys: [MultiPoly; 3],
    provenance: Provenance,
) -> Result<Ingested> {
    let polys: Vec<MultiPoly> = polys
        .into_iter()
        .map(|p| {
            if p.nvars() == 2 {
                Ok(p.rename(uv()))
            } else {
                Err(reject("wrong_arity", "forms must be in U, V"))
            }
        })
        .collect::<Result<_>>()?;
    if polys.iter().all(|p| p.is_zero()) {
        return Err(reject("all_zero", "all three forms vanish"));
    }
    let degrees: Vec<u32> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            p.homogeneous_degree()
                .ok_or_else(|| reject("not_homogeneous", p.to_string()))
        })
        .collect::<Result<_>>()?;
    let degree = degrees[0];
    if degrees.iter().any(|&d| d != degree) {
        return Err(reject("degree_mismatch", format!("degrees {degrees:?}")));
    }
    if degree == 0 {
        return Err(reject("constant_map", "forms are constants"));
    }

    // Clear denominators and the joint content in one scale factor.
    let den = polys
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
    let scaled: Vec<MultiPoly> = polys.iter().map(|p| p.scale_int(&den)).collect();
    let content = scaled.iter().fold(BigInt::zero(), |g, p| {
        g.gcd(&p.integer_content().expect("integral"))
    });
    let mut forms: Vec<BinaryForm> = scaled
        .iter()
        .map(|p| {
            BinaryForm::with_degree(
                p.scale(&BigRational::new(BigInt::one(), content.clone())),
                degree,
            )
            .expect("homogeneous")
        })
        .collect();
    let mut removed_content = BigRational::new(content, den);

    let common = gcd_many(&forms);
    let removed_factor = if common.degree() > 0 {
        forms = forms
            .iter()
            .map(|h| h.exact_div(&common).expect("gcd divides"))
            .collect();
        Some(common)
    } else {
        None
    };
    let degree = forms.iter().map(|h| h.degree()).max().unwrap_or(0);
    if degree == 0 {
        return Err(reject("constant_map", "forms are proportional"));
    }
    let forms: Vec<BinaryForm> = forms
        .into_iter()
        .map(|h| {
            if h.is_zero() {
                BinaryForm::zero(uv(), degree)
            } else {
                h
            }
        })
        .collect();

    // Sign: first nonzero form has positive lex-leading coefficient.
    let lead_negative = forms
        .iter()
        .find(|h| !h.is_zero())
        .and_then(|h| h.poly().lex_leading().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    let forms: Vec<BinaryForm> = if lead_negative {
        removed_content = -removed_content;
        forms
            .iter()
            .map(|h| h.scale_int(&BigInt::from(-1)))
            .collect()
    } else {
        forms
    };

    let h: [BinaryForm; 3] = forms.try_into().expect("three forms");
    let triple = BinaryFormTriple {
        h,
        degree,
        provenance,
    };
    let comp = f.compose(&triple.polys())?;
    if !comp.is_zero() {
        return Err(reject("not_on_curve", format!("f(h1, h2, h3) = {comp}")));
    }
    Ok(Ingested {
        triple,
        removed_content,
        removed_factor,
    })
}

/// Linear forms spanning the solution lattice of `aX + bY + cZ = 0`.
pub fn parametrize_line(f: &TernaryForm) -> Result<BinaryFormTriple> {
    if f.degree() != 1 {
        return Err(Error::Precondition(format!(
            "line expected, got degree {}",
            f.degree()
        )));
    }
    let coeff: [BigInt; 3] = std::array::from_fn(|i| {
        let mut e = vec![0, 0, 0];
        e[i] = 1;
        f.poly().coeff(&e).to_integer()
    });
    let lin =
        |a: &BigInt, b: &BigInt| BinaryForm::from_big_coeffs_desc(uv(), &[a.clone(), b.clone()]);
    // With a unit coefficient, solve for that coordinate directly.
    let forms: [BinaryForm; 3] = if let Some(k) = (0..3).rev().find(|&k| coeff[k].abs().is_one()) {
        let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut out: [BinaryForm; 3] = std::array::from_fn(|_| BinaryForm::zero(uv(), 1));
        out[free[0]] = lin(&BigInt::one(), &BigInt::zero());
        out[free[1]] = lin(&BigInt::zero(), &BigInt::one());
        // x_k = −(c_i x_i + c_j x_j) / c_k with c_k = ±1
        let s = -&coeff[k];
        out[k] = lin(&(&coeff[free[0]] * &s), &(&coeff[free[1]] * &s));
        out
    } else {
        let (a, b) = kernel_basis(&coeff)
            .ok_or_else(|| Error::Precondition("coefficients must be coprime".into()))?;
        std::array::from_fn(|i| lin(&a[i], &b[i]))
    };
    let forms = forms.map(|h| {
        if h.is_zero() {
            BinaryForm::zero(uv(), 1)
        } else {
            h
        }
    });
    let triple = BinaryFormTriple {
        h: forms,
        degree: 1,
        provenance: Provenance::Constructed,
    };
    debug_assert!(f.compose(&triple.polys()).unwrap().is_zero());
    Ok(triple)
}

/// Visits primitive projective representatives of height exactly `h`
/// (last nonzero coordinate positive) in order of `(z, y, x)`.
fn for_each_shell_point(h: i64, mut visit: impl FnMut(i64, i64, i64) -> bool) -> bool {
    for z in 0..=h {
        for y in -h..=h {
            if z == 0 && y < 0 {
                continue;
            }
            let xs: Vec<i64> = if y.abs() == h || z == h {
                (-h..=h).collect()
            } else {
                vec![-h, h]
            };
            for x in xs {
                if z == 0 && y == 0 && x <= 0 {
                    continue;
                }
                if x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                if visit(x, y, z) {
                    return true;
                }
            }
        }
    }
    false
}

/// First primitive solution by height, then by `(z, y, x)` lexicographic;
/// representatives have their last nonzero coordinate positive.
pub fn find_rational_point(f: &TernaryForm, height_bound: u64) -> Result<IntTriple> {
    if f.degree() != 2 {
        return Err(Error::Precondition(format!(
            "conic expected, got degree {}",
            f.degree()
        )));
    }
    let fast = FastForm::new(f);
    let bound = i64::try_from(height_bound).map_err(|_| Error::Overflow("height bound".into()))?;
    let mut found = None;
    for h in 1..=bound {
        if for_each_shell_point(h, |x, y, z| {
            if fast.eval(x, y, z) {
                found = Some(triple(x, y, z));
                true
            } else {
                false
            }
        }) {
            break;
        }
    }
    found.ok_or(Error::NotFound { height_bound })
}

/// Gradient of `f` at an integer point.
pub fn gradient_at(f: &TernaryForm, p: &IntTriple) -> IntTriple {
    let d = f.partial_derivatives();
    std::array::from_fn(|i| d[i].evaluate_int(p).expect("arity").to_integer())
}

const CONIC_RETRIES: usize = 10;

/// Pencil of lines through a rational point `p` of a conic: the second
/// intersection of the line through `p` with direction `Q = U·A + V·B` is
/// `f(Q)·p − L(Q)·Q`, where `L` is the polar form of `p`.
pub fn parametrize_conic(f: &TernaryForm, p: &IntTriple) -> Result<BinaryFormTriple> {
    if f.degree() != 2 {
        return Err(Error::Precondition(format!(
            "conic expected, got degree {}",
            f.degree()
        )));
    }
    let p =
        canonical_point(p).ok_or_else(|| Error::Precondition("point must be nonzero".into()))?;
    if !f.vanishes_at(&p) {
        return Err(Error::NotOnCurve(format_point(&p)));
    }
    let grad = gradient_at(f, &p);
    if grad.iter().all(|g| g.is_zero()) {
        return Err(Error::Precondition(format!(
            "{} is a singular point",
            format_point(&p)
        )));
    }
    let (a0, b0) = complete_basis(&p).expect("primitive point");
    for attempt in 0..CONIC_RETRIES {
        // Deterministic shears of the complement basis.
        let k = BigInt::from(attempt);
        let a: IntTriple = std::array::from_fn(|i| &a0[i] + &k * &b0[i]);
        let b = b0.clone();
        let q: [MultiPoly; 3] = std::array::from_fn(|i| {
            BinaryForm::from_big_coeffs_desc(uv(), &[a[i].clone(), b[i].clone()]).into_poly()
        });
        let f_q = f.compose(&q)?;
        let l_q = q
            .iter()
            .zip(&grad)
            .fold(MultiPoly::zero(uv()), |acc, (qi, gi)| {
                &acc + &qi.scale_int(gi)
            });
        let polys: [MultiPoly; 3] =
            std::array::from_fn(|i| &f_q.scale_int(&p[i]) - &(&l_q * &q[i]));
        if polys.iter().all(|h| h.is_zero()) {
            continue;
        }
        let forms: Vec<BinaryForm> = polys
            .iter()
            .map(|h| {
                if h.is_zero() {
                    BinaryForm::zero(uv(), 2)
                } else {
                    BinaryForm::new(h.clone()).expect("quadratic")
                }
            })
            .collect();
        if gcd_many(&forms).degree() > 0 {
            continue;
        }
        let ingested = ingest_parametrization(f, polys, Provenance::Constructed)?;
        return Ok(ingested.triple);
    }
    Err(Error::DegenerateDirection {
        retries: CONIC_RETRIES,
    })
}

/// Rational preimages of a projective point under a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    /// Primitive `(u, v)` with `v > 0`, or `(1, 0)`.
    pub rational: Vec<(BigInt, BigInt)>,
    /// Squarefree rational-root-free remainder of the cross-form gcd.
    pub leftover: Option<BinaryForm>,
    /// Every `(u:v)` maps to the point (constant map).
    pub everywhere: bool,
}

/// Solves `h_i(U,V)·x_j − h_j(U,V)·x_i = 0` for all pairs via the gcd of
/// the cross forms.
pub fn preimage_of(h: &BinaryFormTriple, point: &IntTriple) -> Preimage {
    let mut cross = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = &h.h[i].poly().scale_int(&point[j]) - &h.h[j].poly().scale_int(&point[i]);
        if !c.is_zero() {
            cross.push(BinaryForm::new(c).expect("homogeneous cross form"));
        }
    }
    if cross.is_empty() {
        return Preimage {
            rational: Vec::new(),
            leftover: None,
            everywhere: true,
        };
    }
    let g = gcd_many(&cross);
    Preimage {
        rational: g.rational_roots(),
        leftover: g.strip_rational_linear_factors(),
        everywhere: false,
    }
}

/// Outcome of the sampled injectivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirationalityCheck {
    pub birational: bool,
    pub samples_checked: usize,
    /// Two distinct parameters with the same image, when found.
    pub witness: Option<((String, String), (String, String))>,
}

/// Coprime `(u, v)` with `v > 0` or `(1, 0)`, by height then `(v, u)`.
pub fn parameter_points() -> impl Iterator<Item = (i64, i64)> {
    (1i64..).flat_map(|h| {
        let mut pts = Vec::new();
        for v in 0..=h {
            for u in -h..=h {
                if u.abs().max(v) != h || (v == 0 && u <= 0) || u.gcd(&v) != 1 {
                    continue;
                }
                pts.push((u, v));
            }
        }
        pts
    })
}

/// Sampled test that `h` is injective on rational parameters away from
/// singular points of `f`. A `false` answer is a proof; `true` is evidence.
pub fn is_birational(f: &TernaryForm, h: &BinaryFormTriple, samples: usize) -> BirationalityCheck {
    let partials = f.partial_derivatives();
    let mut checked = 0;
    for (u, v) in parameter_points().take(samples * 4 + 16) {
        if checked >= samples {
            break;
        }
        let (u, v) = (BigInt::from(u), BigInt::from(v));
        let Some(q) = canonical_point(&h.eval(&u, &v)) else {
            continue;
        };
        let singular = partials
            .iter()
            .all(|d| d.evaluate_int(&q).expect("arity").is_zero());
        if singular {
            continue;
        }
        checked += 1;
        let pre = preimage_of(h, &q);
        if let Some(other) = pre.rational.iter().find(|(a, b)| (a, b) != (&u, &v)) {
            return BirationalityCheck {
                birational: false,
                samples_checked: checked,
                witness: Some((
                    (u.to_string(), v.to_string()),
                    (other.0.to_string(), other.1.to_string()),
                )),
            };
        }
        if pre.everywhere || !pre.rational.contains(&(u.clone(), v.clone())) {
            return BirationalityCheck {
                birational: false,
                samples_checked: checked,
                witness: None,
            };
        }
    }
    BirationalityCheck {
        birational: true,
        samples_checked: checked,
        witness: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Good,
    Bad,
    /// No parametrization available to classify against.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointReport {
    pub point: IntTriple,
    pub preimage: Option<Preimage>,
    /// Operational classification: bad iff no rational preimage under the
    /// (birational) parametrization.
    pub classification: PointClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SingularAnalysis {
    pub points: Vec<SingularPointReport>,
    /// Non-empty when part of the search could not be certified.
    pub unresolved: Vec<String>,
}

impl SingularAnalysis {
    pub fn bad_points(&self) -> Vec<IntTriple> {
        self.points
            .iter()
            .filter(|p| p.classification == PointClass::Bad)
            .map(|p| p.point.clone())
            .collect()
    }
}

/// Coefficients in `y` (ascending) of a polynomial in X, Y, Z after
/// setting `Z = z`, each as a polynomial in `x`.
fn y_coeffs(p: &MultiPoly, z: &BigRational) -> Vec<UniPoly> {
    let dy = p.degree_in(1).unwrap_or(0) as usize;
    let mut cols: Vec<Vec<BigRational>> = vec![Vec::new(); dy + 1];
    for (e, c) in p.terms() {
        let col = &mut cols[e[1] as usize];
        let a = e[0] as usize;
        if col.len() <= a {
            col.resize(a + 1, BigRational::zero());
        }
        col[a] += c * num_traits::pow(z.clone(), e[2] as usize);
    }
    let mut out: Vec<UniPoly> = cols.into_iter().map(UniPoly::new).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `Res_y` with observed degrees; `None` when it is undefined or zero.
fn res_y(a: &[UniPoly], b: &[UniPoly]) -> Option<UniPoly> {
    if a.is_empty() || b.is_empty() || (a.len() == 1 && b.len() == 1) {
        return None;
    }
    let desc = |c: &[UniPoly]| -> Vec<UniPoly> { c.iter().rev().cloned().collect() };
    let r = determinant(sylvester_from_coeffs(&desc(a), &desc(b)));
    (!r.is_zero()).then_some(r)
}

fn eval_coeffs_at(c: &[UniPoly], x: &BigRational) -> UniPoly {
    UniPoly::new(c.iter().map(|p| p.eval(x)).collect())
}

fn rational_point(x: &BigRational, y: &BigRational, z: &BigRational) -> IntTriple {
    let den = x.denom().lcm(y.denom()).lcm(z.denom());
    let scale = |q: &BigRational| (q * BigRational::from_integer(den.clone())).to_integer();
    canonical_point(&[scale(x), scale(y), scale(z)]).expect("nonzero")
}

/// Rational points where `f` and all partials vanish; each is classified
/// against `param` when one is given. Curves of degree ≤ 2 have none.
pub fn singular_points(f: &TernaryForm, param: Option<&BinaryFormTriple>) -> SingularAnalysis {
    let mut analysis = SingularAnalysis::default();
    if f.degree() <= 2 {
        return analysis;
    }
    let d = f.partial_derivatives();
    let system: Vec<&MultiPoly> = std::iter::once(f.poly())
        .chain(d.iter())
        .filter(|p| !p.is_zero())
        .collect();
    let mut found: Vec<IntTriple> = Vec::new();

    // Affine chart Z = 1.
    let one = BigRational::one();
    let coeffs: Vec<Vec<UniPoly>> = system.iter().map(|p| y_coeffs(p, &one)).collect();
    let mut elim = UniPoly::zero();
    for i in 0..coeffs.len() {
        for j in i + 1..coeffs.len() {
            if let Some(r) = res_y(&coeffs[i], &coeffs[j]) {
                elim = elim.gcd(&r);
            }
        }
    }
    if elim.is_zero() {
        analysis
            .unresolved
            .push("chart Z=1: every pairwise resultant vanishes".into());
    } else {
        for x0 in elim.rational_roots() {
            let g = coeffs
                .iter()
                .fold(UniPoly::zero(), |g, c| g.gcd(&eval_coeffs_at(c, &x0)));
            if g.is_zero() {
                analysis
                    .unresolved
                    .push(format!("chart Z=1: whole line X = {x0}·Z is singular"));
                continue;
            }
            for y0 in g.rational_roots() {
                found.push(rational_point(&x0, &y0, &one));
            }
        }
    }

    // Line at infinity Z = 0 with Y = 1.
    let at_inf = system.iter().fold(UniPoly::zero(), |g, p| {
        let xs = p.specialize(2, &BigRational::zero()).specialize(1, &one);
        let deg = xs.degree_in(0).unwrap_or(0) as usize;
        let u = UniPoly::new((0..=deg).map(|k| xs.coeff(&[k as u32, 0, 0])).collect());
        g.gcd(&u)
    });
    if at_inf.is_zero() {
        analysis
            .unresolved
            .push("line Z=0 lies in the singular locus".into());
    } else {
        for x0 in at_inf.rational_roots() {
            found.push(rational_point(&x0, &one, &BigRational::zero()));
        }
    }

    // The point (1:0:0).
    let e1 = triple(1, 0, 0);
    if system
        .iter()
        .all(|p| p.evaluate_int(&e1).expect("arity").is_zero())
    {
        found.push(e1);
    }

    found.sort();
    found.dedup();
    analysis.points = found
        .into_iter()
        .map(|point| match param {
            Some(h) => {
                let pre = preimage_of(h, &point);
                let classification = if pre.rational.is_empty() {
                    PointClass::Bad
                } else {
                    PointClass::Good
                };
                SingularPointReport {
                    point,
                    preimage: Some(pre),
                    classification,
                }
            }
            None => SingularPointReport {
                point,
                preimage: None,
                classification: PointClass::Unclassified,
            },
        })
        .collect();
    analysis
}

/// Primitive image point `h(u, v)/gcd` and the gcd itself.
pub fn primitive_image(
    h: &BinaryFormTriple,
    u: &BigInt,
    v: &BigInt,
) -> Option<(IntTriple, BigInt)> {
    let val = h.eval(u, v);
    let c = gcd_all(val.iter());
    if c.is_zero() {
        return None;
    }
    Some((std::array::from_fn(|i| &val[i] / &c), c))
}

pub fn to_i64_pair(p: &(BigInt, BigInt)) -> Option<(i64, i64)> {
    Some((p.0.to_i64()?, p.1.to_i64()?))
}
