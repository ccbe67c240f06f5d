//! Integer-valued polynomials in the binomial basis, and certification of
//! an externally supplied parametrizing triple against a family.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve::IntTriple;
use crate::error::{Error, Result};
use crate::forms::TernaryForm;
use crate::pipeline::ParamFamily;
use crate::poly::{grlex_cmp, MultiPoly};
use crate::verify::{enumerate_solutions, is_covered, Coverage, EnumerationOptions};

/// `p = Σ c_k · ∏ binom(X_i, k_i)`, coefficients in graded lexicographic
/// order of `k`, zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntValuedCertificate {
    pub poly: MultiPoly,
    pub coefficients: Vec<(Vec<u32>, BigRational)>,
    pub integer_valued: bool,
}

impl IntValuedCertificate {
    pub fn reconstruct(&self) -> MultiPoly {
        let vars = self.poly.vars().to_vec();
        self.coefficients
            .iter()
            .fold(MultiPoly::zero(vars.clone()), |acc, (k, c)| {
                let term = k
                    .iter()
                    .enumerate()
                    .fold(MultiPoly::one(vars.clone()), |t, (i, &ki)| {
                        &t * &binomial_poly(&vars, i, ki)
                    });
                &acc + &term.scale(c)
            })
    }
}

/// `binom(X_i, k) = X_i (X_i − 1) ⋯ (X_i − k + 1) / k!`
pub fn binomial_poly(vars: &[String], i: usize, k: u32) -> MultiPoly {
    let x = MultiPoly::var(vars.to_vec(), i);
    let mut out = MultiPoly::one(vars.to_vec());
    let mut fact = BigInt::one();
    for j in 0..k {
        out = &out * &(&x - &MultiPoly::int_constant(vars.to_vec(), j));
        fact *= j + 1;
    }
    out.scale(&BigRational::new(BigInt::one(), fact))
}

/// Row-major grid `∏ {0, …, deg_i}`.
struct Grid {
    dims: Vec<usize>,
}

impl Grid {
    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn stride(&self, axis: usize) -> usize {
        self.dims[axis + 1..].iter().product()
    }

    fn index_of(&self, flat: usize) -> Vec<u32> {
        let mut rem = flat;
        let mut out = vec![0; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            out[axis] = (rem % self.dims[axis]) as u32;
            rem /= self.dims[axis];
        }
        out
    }
}

fn degree_grid(p: &MultiPoly) -> Grid {
    Grid {
        dims: (0..p.nvars())
            .map(|i| p.degree_in(i).unwrap_or(0) as usize + 1)
            .collect(),
    }
}

/// Values of `p` on its degree grid, row-major.
fn grid_values(p: &MultiPoly, grid: &Grid) -> Vec<BigRational> {
    (0..grid.len())
        .map(|flat| {
            let pt: Vec<BigInt> = grid.index_of(flat).into_iter().map(BigInt::from).collect();
            p.evaluate_int(&pt).expect("arity")
        })
        .collect()
}

/// Binomial-basis coordinates by iterated forward differences at the origin.
pub fn to_binomial_basis(p: &MultiPoly) -> IntValuedCertificate {
    let grid = degree_grid(p);
    let mut a = grid_values(p, &grid);
    for axis in 0..grid.dims.len() {
        let n = grid.dims[axis];
        let stride = grid.stride(axis);
        for flat in 0..a.len() {
            // Each line along `axis` starts where that coordinate is 0.
            if !(flat / stride).is_multiple_of(n) {
                continue;
            }
            for level in 1..n {
                for j in (level..n).rev() {
                    let prev = a[flat + (j - 1) * stride].clone();
                    a[flat + j * stride] -= prev;
                }
            }
        }
    }
    let mut coefficients: Vec<(Vec<u32>, BigRational)> = a
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(flat, c)| (grid.index_of(flat), c))
        .collect();
    coefficients.sort_by(|x, y| grlex_cmp(&x.0, &y.0));
    let integer_valued = coefficients.iter().all(|(_, c)| c.is_integer());
    IntValuedCertificate {
        poly: p.clone(),
        coefficients,
        integer_valued,
    }
}

pub fn is_integer_valued(p: &MultiPoly) -> bool {
    to_binomial_basis(p).integer_valued
}

/// Integrality of `p` on its degree grid, evaluated directly.
pub fn integral_on_grid(p: &MultiPoly) -> bool {
    grid_values(p, &degree_grid(p))
        .iter()
        .all(|v| v.is_integer())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExternalTripleReport {
    /// (i) each `g_i` lies in `Int(ℤ^m)`.
    pub integer_valued: Vec<CheckOutcome>,
    /// (ii) `f(g1, g2, g3) ≡ 0`.
    pub identity: CheckOutcome,
    /// (iii) sampled image inside the family set, and family solutions in
    /// the box inside the sampled image.
    pub image_in_family: CheckOutcome,
    pub family_in_image: CheckOutcome,
    /// Check (iii) is bounded evidence over this parameter domain.
    pub evidence: &'static str,
    pub parameter_bound: i64,
    pub passed: bool,
}

/// Number of parameter tuples sampled in check (iii) at most.
pub const PARAMETER_BUDGET: u64 = 250_000;

fn parameter_bound(m: usize, sample_box: i64) -> i64 {
    let per_axis = (PARAMETER_BUDGET as f64).powf(1.0 / m as f64).floor() as i64;
    sample_box.min(((per_axis - 1) / 2).max(1))
}

fn for_each_tuple(m: usize, bound: i64, mut visit: impl FnMut(&[BigInt])) {
    let mut cur = vec![-bound; m];
    loop {
        let big: Vec<BigInt> = cur.iter().map(|&x| BigInt::from(x)).collect();
        visit(&big);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
        }
    }
}

/// Runs checks (i), (ii) and (iii) on `g` against the family's solution
/// set within `[−sample_box, sample_box]³`.
pub fn certify_external_triple(
    f: &TernaryForm,
    g: &[MultiPoly; 3],
    family: &ParamFamily,
    bad_points: &[IntTriple],
    sample_box: u64,
) -> Result<ExternalTripleReport> {
    let m = g[0].nvars();
    if m == 0 || g.iter().any(|gi| gi.vars() != g[0].vars()) {
        return Err(Error::Precondition("g must share m ≥ 1 variables".into()));
    }
    let integer_valued: Vec<CheckOutcome> = g
        .iter()
        .map(|gi| {
            let cert = to_binomial_basis(gi);
            let bad = cert.coefficients.iter().find(|(_, c)| !c.is_integer());
            CheckOutcome {
                passed: cert.integer_valued,
                detail: match bad {
                    Some((k, c)) => format!("binomial coefficient {c} at {k:?}"),
                    None => format!(
                        "{} binomial coefficients, all integral",
                        cert.coefficients.len()
                    ),
                },
            }
        })
        .collect();
    let comp = f.compose(g)?;
    let identity = CheckOutcome {
        passed: comp.is_zero(),
        detail: if comp.is_zero() {
            "f(g) = 0".into()
        } else {
            format!("f(g) = {comp}")
        },
    };

    let nbox = i64::try_from(sample_box).map_err(|_| Error::Overflow("sample box".into()))?;
    let bound = parameter_bound(m, nbox);
    let h = &family.source;
    let mut image: BTreeSet<IntTriple> = BTreeSet::new();
    let mut outside: Option<String> = None;
    let mut samples = 0u64;
    for_each_tuple(m, bound, |x| {
        samples += 1;
        let vals: Vec<BigRational> = g
            .iter()
            .map(|gi| gi.evaluate_int(x).expect("arity"))
            .collect();
        if vals.iter().any(|v| !v.is_integer()) {
            outside.get_or_insert_with(|| format!("g({x:?}) is not integral"));
            return;
        }
        let p: IntTriple = std::array::from_fn(|i| vals[i].to_integer());
        if outside.is_none()
            && !matches!(is_covered(family, h, bad_points, &p), Coverage::Covered(_))
        {
            outside = Some(format!("g({x:?}) = {p:?} is not in the family set"));
        }
        image.insert(p);
    });
    let image_in_family = CheckOutcome {
        passed: outside.is_none(),
        detail: outside
            .unwrap_or_else(|| format!("{samples} parameter tuples in [-{bound}, {bound}]^{m}")),
    };

    let mut missing = None;
    let mut in_box = 0;
    for s in enumerate_solutions(f, sample_box, EnumerationOptions::default())? {
        let p: IntTriple = s.map(BigInt::from);
        if !matches!(is_covered(family, h, bad_points, &p), Coverage::Covered(_)) {
            continue;
        }
        in_box += 1;
        if missing.is_none() && !image.contains(&p) {
            missing = Some(format!("{s:?} not reached"));
        }
    }
    let family_in_image = CheckOutcome {
        passed: missing.is_none(),
        detail: missing
            .unwrap_or_else(|| format!("all {in_box} family solutions in the box reached")),
    };
    let passed = integer_valued.iter().all(|c| c.passed)
        && identity.passed
        && image_in_family.passed
        && family_in_image.passed;
    Ok(ExternalTripleReport {
        integer_valued,
        identity,
        image_in_family,
        family_in_image,
        evidence: "bounded evidence",
        parameter_bound: bound,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{ingest_parametrization, Provenance};
    use crate::parse::parse_poly;
    use crate::pipeline::residue_decompose;
    use crate::poly::ratio;
    use proptest::prelude::*;

    fn px(s: &str) -> MultiPoly {
        parse_poly(s, &["X"]).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let c = to_binomial_basis(&px("X*(X - 1)/2"));
        assert_eq!(c.coefficients, vec![(vec![2], ratio(1, 1))]);
        assert!(c.integer_valued);
        let c = to_binomial_basis(&px("X/2"));
        assert_eq!(c.coefficients, vec![(vec![1], ratio(1, 2))]);
        assert!(!c.integer_valued);
    }

    #[test]
    fn bivariate_examples() {
        let uv = |s: &str| parse_poly(s, &["U", "V"]).unwrap();
        assert!(is_integer_valued(&uv("(U^2 - U)/2 + V")));
        assert!(!is_integer_valued(&uv("(U^2 + V^2)/2")));
        assert!(is_integer_valued(&uv("3*U^3*V - 7*V^2 + 1")));
        // binom(U, 2)·binom(V, 3) has a single coefficient.
        let c = to_binomial_basis(&uv("(U^2 - U)*(V^3 - 3*V^2 + 2*V)/12"));
        assert_eq!(c.coefficients, vec![(vec![2, 3], ratio(1, 1))]);
    }

    fn example2() -> (TernaryForm, ParamFamily) {
        let f = TernaryForm::new(parse_poly("X*Y - Z^2", &["X", "Y", "Z"]).unwrap()).unwrap();
        let h = ingest_parametrization(
            &f,
            ["U^2", "V^2", "U*V"].map(|s| parse_poly(s, &["U", "V"]).unwrap()),
            Provenance::UserSupplied,
        )
        .unwrap()
        .triple;
        let fam = residue_decompose(&f, &h, 1, None).unwrap();
        (f, fam)
    }

    #[test]
    fn external_triples() {
        let (f, fam) = example2();
        let p = |s: &str| parse_poly(s, &["U", "V", "W"]).unwrap();
        let rep = certify_external_triple(&f, &[p("U^2*W"), p("V^2*W"), p("U*V*W")], &fam, &[], 8)
            .unwrap();
        assert!(rep.passed, "{rep:?}");

        let q = |s: &str| parse_poly(s, &["X", "Y", "Z"]).unwrap();
        let rep = certify_external_triple(&f, &[q("X"), q("Y"), q("Z")], &fam, &[], 4).unwrap();
        assert!(!rep.identity.passed && !rep.passed);

        let rep =
            certify_external_triple(&f, &[p("U^2*W/2"), p("V^2*W*2"), p("U*V*W")], &fam, &[], 4)
                .unwrap();
        assert!(!rep.integer_valued[0].passed && !rep.passed);

        // Misses every point with odd w.
        let rep = certify_external_triple(
            &f,
            &[p("2*U^2*W"), p("2*V^2*W"), p("2*U*V*W")],
            &fam,
            &[],
            4,
        )
        .unwrap();
        assert!(rep.image_in_family.passed && !rep.family_in_image.passed);
    }

    fn rational_poly(m: usize) -> impl Strategy<Value = MultiPoly> {
        let vars: Vec<String> = ["A", "B", "C"][..m].iter().map(|s| s.to_string()).collect();
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..=4, m),
                -12i64..=12,
                1i64..=6,
            ),
            0..6,
        )
        .prop_map(move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(e, _, _)| e.iter().sum::<u32>() <= 4);
            MultiPoly::from_terms(vars.clone(), terms.map(|(e, n, d)| (e, ratio(n, d))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn round_trip_and_grid_theorem(p in (1usize..=3).prop_flat_map(rational_poly)) {
            let cert = to_binomial_basis(&p);
            prop_assert_eq!(cert.reconstruct(), p.clone());
            prop_assert_eq!(cert.integer_valued, integral_on_grid(&p));
        }

        #[test]
        fn closed_under_ring_operations(a in rational_poly(2), b in rational_poly(2)) {
            let fix = |p: &MultiPoly| {
                let c = to_binomial_basis(p);
                // Round every coordinate down to an integer: stays in Int(ℤ²).
                IntValuedCertificate {
                    coefficients: c.coefficients.iter().map(|(k, x)| (k.clone(), BigRational::from_integer(x.floor().to_integer()))).collect(),
                    ..c
                }
                .reconstruct()
            };
            let (a, b) = (fix(&a), fix(&b));
            prop_assert!(is_integer_valued(&a) && is_integer_valued(&b));
            prop_assert!(is_integer_valued(&(&a + &b)));
            prop_assert!(is_integer_valued(&(&a * &b)));
        }
    }
}
