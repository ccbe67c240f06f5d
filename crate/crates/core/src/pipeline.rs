//! Elimination chain, gcd bound and residue decomposition.
//!
//! Given a coprime triple `(h1, h2, h3)` of binary forms, two certificates
//! `Σ φ_i h_i = a₁U^δ₁` and `Σ ψ_i h_i = a₂V^δ₂` show that for coprime
//! `u, v` the gcd of the values `h_i(u, v)` divides `d = lcm(a₁, a₂)`.
//! The integer points of the rational family `w·h_i(u, v)/d` are then the
//! images of finitely many integer triples, one per admissible residue
//! class of `(u, v, w)` mod `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_prime::nt_funcs::factorize64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::lcm;
use crate::curve::BinaryFormTriple;
use crate::error::{Error, Result};
use crate::forms::{gcd_bivariate, gcd_many, BinaryForm, TernaryForm};
use crate::poly::{vars_of, MultiPoly};
use crate::resultant::{as_monomial_in, bezout_pair, BezoutCertificate, BinVar};

/// Above this modulus the residue decomposition is refused by default.
pub const DEFAULT_MAX_MODULUS: u64 = 200;
/// Above this modulus a warning is attached to the result.
pub const WARN_MODULUS: u64 = 30;
/// Largest prime power of `d` whose residues tightening enumerates.
pub const TIGHTEN_LIMIT: u64 = 1 << 22;

fn w_power(vars: &[String], w: BinVar, k: u32) -> BinaryForm {
    let (i, j) = match w {
        BinVar::U => (k, 0),
        BinVar::V => (0, k),
    };
    BinaryForm::monomial(vars.to_vec(), BigInt::one(), i, j)
}

/// Cofactors `φ` and `a ≠ 0`, `δ` with `φ1·h1 + φ2·h2 + φ3·h3 = a·W^δ`,
/// `W` the target variable.
pub fn eliminate_to_monomial(
    h1: &BinaryForm,
    h2: &BinaryForm,
    h3: &BinaryForm,
    target: BinVar,
) -> Result<BezoutCertificate> {
    let inputs = [h1.clone(), h2.clone(), h3.clone()];
    let common = gcd_many(&inputs);
    if common.is_zero() || common.degree() > 0 {
        return Err(Error::NotCoprimeTriple);
    }
    let vars = h1.vars().to_vec();
    let eliminate = target.other();

    // t = gcd(h1, h2);  ρ1·h1 + ρ2·h2 = a·t·W^δ.
    let t = gcd_bivariate(h1, h2);
    let (t, h1p, h2p) = if t.is_zero() {
        let one = BinaryForm::monomial(vars.clone(), BigInt::one(), 0, 0);
        (one, h1.clone(), h2.clone())
    } else {
        (
            t.clone(),
            h1.exact_div(&t).expect("gcd divides"),
            h2.exact_div(&t).expect("gcd divides"),
        )
    };
    let rho = bezout_pair(&h1p, &h2p, eliminate)?;
    let a = rho.rhs_constant.clone();
    let delta = rho.rhs_exponent;

    // P = t·W^δ;  gcd(P, h3) = W^α since any other factor divides h1, h2, h3.
    let p = t.mul(&w_power(&vars, target, delta));
    let g = gcd_bivariate(&p, h3);
    let alpha = match as_monomial_in(g.poly(), target) {
        Some((c, k)) if c.abs().is_one() => k,
        _ => return Err(Error::NotCoprimeTriple),
    };
    let wa = w_power(&vars, target, alpha);
    let pp = p.exact_div(&wa).expect("W^α divides P");
    let h3p = h3.exact_div(&wa).expect("W^α divides h3");

    // r·P + s·h3 = b·W^(ε+α), and a·P = ρ1·h1 + ρ2·h2.
    let second = bezout_pair(&pp, &h3p, eliminate)?;
    let r = &second.lhs_cofactors[0];
    let s = &second.lhs_cofactors[1];
    let mut phi = vec![
        r * &rho.lhs_cofactors[0],
        r * &rho.lhs_cofactors[1],
        s.scale_int(&a),
    ];
    let mut a1 = &a * &second.rhs_constant;
    let exponent = second.rhs_exponent + alpha;

    let content = phi.iter().fold(a1.abs(), |g, c| {
        g.gcd(&c.integer_content().expect("integral cofactor"))
    });
    if content > BigInt::one() {
        let inv = BigRational::new(BigInt::one(), content.clone());
        phi = phi.iter().map(|c| c.scale(&inv)).collect();
        a1 /= &content;
    }

    let cert = BezoutCertificate {
        lhs_cofactors: phi,
        inputs: inputs.to_vec(),
        rhs_constant: a1,
        rhs_variable: target,
        rhs_exponent: exponent,
    };
    cert.check()?;
    Ok(cert)
}

/// `h(u, v) mod d` for the three forms, with coefficients reduced once.
struct ResidueEvaluator {
    d: i128,
    degree: u32,
    /// `coeffs[i][k]` is the coefficient of `U^k V^(n−k)` in `h_i`, mod `d`.
    coeffs: [Vec<i128>; 3],
}

impl ResidueEvaluator {
    fn new(h: &BinaryFormTriple, d: u64) -> Self {
        let dm = BigInt::from(d);
        let degree = h.degree();
        let coeffs = std::array::from_fn(|i| {
            (0..=degree)
                .map(|k| {
                    h.forms()[i]
                        .coeff_u(k)
                        .to_integer()
                        .mod_floor(&dm)
                        .to_i128()
                        .expect("reduced")
                })
                .collect()
        });
        ResidueEvaluator {
            d: d as i128,
            degree,
            coeffs,
        }
    }

    fn eval(&self, u: u64, v: u64) -> [i128; 3] {
        let (u, v) = (u as i128, v as i128);
        let n = self.degree as usize;
        let mut upow = vec![1i128; n + 1];
        let mut vpow = vec![1i128; n + 1];
        for k in 1..=n {
            upow[k] = upow[k - 1] * u % self.d;
            vpow[k] = vpow[k - 1] * v % self.d;
        }
        std::array::from_fn(|i| {
            self.coeffs[i]
                .iter()
                .enumerate()
                .fold(0i128, |acc, (k, c)| {
                    (acc + c * upow[k] % self.d * vpow[n - k]) % self.d
                })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdBoundResult {
    pub cert_u: BezoutCertificate,
    pub cert_v: BezoutCertificate,
    pub d: u64,
    /// Divides `d`; equal to `d` when tightening was skipped.
    pub d_tightened: u64,
    pub tightened: bool,
}

/// Both certificates, `d = lcm(|a₁|, |a₂|)`, and the exhaustive residue
/// tightening of `d`.
pub fn compute_gcd_bound(h: &BinaryFormTriple) -> Result<GcdBoundResult> {
    let [h1, h2, h3] = h.forms();
    let cert_u = eliminate_to_monomial(h1, h2, h3, BinVar::U)?;
    let cert_v = eliminate_to_monomial(h1, h2, h3, BinVar::V)?;
    let d_big = lcm(&cert_u.rhs_constant, &cert_v.rhs_constant);
    let d = d_big
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("d = {d_big}")))?;
    let (d_tightened, tightened) = tighten_checked(h, d);
    Ok(GcdBoundResult {
        cert_u,
        cert_v,
        d,
        d_tightened,
        tightened,
    })
}

/// lcm over residue pairs `(u, v)` mod `d` with `gcd(u, v, d) = 1` of
/// `gcd(h1(u,v), h2(u,v), h3(u,v), d)`, computed one prime power `q ∥ d`
/// at a time over the projective points `(1 : v)` and `(u : 1)`, `p | u`,
/// of `ℤ/q`. Prime powers above [`TIGHTEN_LIMIT`] are kept whole; the flag
/// reports whether every factor was enumerated.
pub fn tighten_checked(h: &BinaryFormTriple, d: u64) -> (u64, bool) {
    let mut out = 1u64;
    let mut complete = true;
    for (p, e) in factorize64(d) {
        let q = p.pow(e as u32);
        if q > TIGHTEN_LIMIT {
            out *= q;
            complete = false;
            continue;
        }
        let ev = ResidueEvaluator::new(h, q);
        let part = |u: u64, v: u64| ev.eval(u, v).iter().fold(q, |g, &x| g.gcd(&(x as u64)));
        let a = (0..q)
            .into_par_iter()
            .map(|v| part(1, v))
            .max()
            .unwrap_or(1);
        let b = (0..q)
            .step_by(p as usize)
            .map(|u| part(u, 1))
            .max()
            .unwrap_or(1);
        out *= a.max(b);
    }
    (out, complete)
}

pub fn tighten(h: &BinaryFormTriple, d: u64) -> u64 {
    tighten_checked(h, d).0
}

/// One integer-coefficient triple of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub offsets: [u64; 3],
    /// `G_i(S, T, R) = (w0 + dR)·h_i(u0 + dS, v0 + dT)/d`.
    pub forms: [MultiPoly; 3],
}

impl FamilyMember {
    pub fn eval(&self, s: &BigInt, t: &BigInt, r: &BigInt) -> [BigInt; 3] {
        let pt = [s.clone(), t.clone(), r.clone()];
        std::array::from_fn(|i| self.forms[i].evaluate_int(&pt).expect("arity").to_integer())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFamily {
    pub modulus: u64,
    /// Sorted by offsets.
    pub triples: Vec<FamilyMember>,
    pub source: BinaryFormTriple,
}

impl ParamFamily {
    /// `k_i = h_i/d`.
    pub fn k(&self) -> [MultiPoly; 3] {
        let inv = BigRational::new(BigInt::one(), BigInt::from(self.modulus));
        std::array::from_fn(|i| self.source.forms()[i].poly().scale(&inv))
    }

    pub fn member(&self, offsets: &[u64; 3]) -> Option<&FamilyMember> {
        self.triples
            .binary_search_by(|m| m.offsets.cmp(offsets))
            .ok()
            .map(|i| &self.triples[i])
    }
}

pub fn str_vars() -> Vec<String> {
    vars_of(&["S", "T", "R"])
}

/// Residue classes `(u0, v0, w0)` mod `d` with `w0·h_i(u0, v0) ≡ 0`,
/// sorted lexicographically.
pub fn admissible_classes(h: &BinaryFormTriple, d: u64) -> Vec<[u64; 3]> {
    let ev = ResidueEvaluator::new(h, d);
    let mut out: Vec<[u64; 3]> = (0..d)
        .into_par_iter()
        .flat_map_iter(|u| {
            let ev = &ev;
            (0..d).flat_map(move |v| {
                let vals = ev.eval(u, v);
                (0..d)
                    .filter(move |&w| vals.iter().all(|&x| (w as i128 * x) % d as i128 == 0))
                    .map(move |w| [u, v, w])
            })
        })
        .collect();
    out.sort();
    out
}

/// Splits the rational family `w·h_i(u, v)/d` into integer triples.
/// `max_modulus` bounds `d`; `None` uses [`DEFAULT_MAX_MODULUS`].
pub fn residue_decompose(
    f: &TernaryForm,
    h: &BinaryFormTriple,
    d: u64,
    max_modulus: Option<u64>,
) -> Result<ParamFamily> {
    if d == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let limit = max_modulus.unwrap_or(DEFAULT_MAX_MODULUS);
    if d > limit {
        return Err(Error::ModulusTooLarge { d, limit });
    }
    let vars = str_vars();
    let dq = BigRational::from_integer(BigInt::from(d));
    let s = MultiPoly::var(vars.clone(), 0);
    let t = MultiPoly::var(vars.clone(), 1);
    let r = MultiPoly::var(vars.clone(), 2);
    let lin = |c: u64, x: &MultiPoly| &MultiPoly::int_constant(vars.clone(), c) + &x.scale(&dq);
    let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));

    let classes = admissible_classes(h, d);
    let mut shifted: std::collections::BTreeMap<(u64, u64), [MultiPoly; 3]> =
        std::collections::BTreeMap::new();
    for c in &classes {
        shifted.entry((c[0], c[1])).or_insert_with(|| {
            let images = [lin(c[0], &s), lin(c[1], &t)];
            h.polys().map(|hi| hi.substitute(&images).expect("binary"))
        });
    }

    let triples = classes
        .par_iter()
        .map(|c| {
            let base = &shifted[&(c[0], c[1])];
            let wf = lin(c[2], &r);
            let forms: [MultiPoly; 3] = std::array::from_fn(|i| (&wf * &base[i]).scale(&inv_d));
            if let Some(bad) = forms.iter().find(|g| !g.is_integral()) {
                return Err(Error::IdentityFailed(format!(
                    "class {c:?}: {bad} is not integral"
                )));
            }
            if !f.compose(&forms)?.is_zero() {
                return Err(Error::IdentityFailed(format!(
                    "class {c:?}: f(G) is not zero"
                )));
            }
            Ok(FamilyMember { offsets: *c, forms })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParamFamily {
        modulus: d,
        triples,
        source: h.clone(),
    })
}

/// Coprime `(u, v)` with `|u|, |v| ≤ bound` whose value gcd does not
/// divide `d`, if any.
pub fn divisor_property_counterexample(
    h: &BinaryFormTriple,
    d: u64,
    bound: i64,
) -> Option<(i64, i64)> {
    let n = h.degree();
    let coeffs: Option<Vec<Vec<i128>>> = h
        .forms()
        .iter()
        .map(|f| {
            (0..=n)
                .map(|k| f.coeff_u(k).to_integer().to_i128())
                .collect()
        })
        .collect();
    let fast = |u: i64, v: i64| -> Option<u128> {
        let coeffs = coeffs.as_ref()?;
        let mut g = 0u128;
        for c in coeffs {
            let mut acc = 0i128;
            for (k, ck) in c.iter().enumerate() {
                let t = ck
                    .checked_mul((u as i128).checked_pow(k as u32)?)?
                    .checked_mul((v as i128).checked_pow(n - k as u32)?)?;
                acc = acc.checked_add(t)?;
            }
            g = g.gcd(&acc.unsigned_abs());
        }
        Some(g)
    };
    let dd = d as u128;
    let db = BigInt::from(d);
    (-bound..=bound).into_par_iter().find_map_first(|u| {
        (-bound..=bound)
            .find(|&v| {
                if u.gcd(&v) != 1 {
                    return false;
                }
                match fast(u, v) {
                    Some(g) => g == 0 || !dd.is_multiple_of(g),
                    None => {
                        let vals = h.eval(&BigInt::from(u), &BigInt::from(v));
                        let g = vals.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                        g.is_zero() || !(&db % &g).is_zero()
                    }
                }
            })
            .map(|v| (u, v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{ingest_parametrization, Provenance};
    use crate::forms::uv;
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn up(s: &str) -> MultiPoly {
        parse_poly(s, &["U", "V"]).unwrap()
    }

    fn bf(s: &str) -> BinaryForm {
        BinaryForm::new(up(s)).unwrap()
    }

    fn tf(s: &str) -> TernaryForm {
        TernaryForm::new(parse_poly(s, &["X", "Y", "Z"]).unwrap()).unwrap()
    }

    fn supplied(f: &TernaryForm, h: [&str; 3]) -> BinaryFormTriple {
        ingest_parametrization(f, h.map(up), Provenance::UserSupplied)
            .unwrap()
            .triple
    }

    fn pyth() -> (TernaryForm, BinaryFormTriple) {
        let f = tf("X^2 + Y^2 - Z^2");
        let h = supplied(&f, ["U^2 - V^2", "2*U*V", "U^2 + V^2"]);
        (f, h)
    }

    fn ex1() -> (TernaryForm, BinaryFormTriple) {
        let f = tf("X^3 + Y^3 + X^2*Z - 2*Y^2*Z");
        let h = supplied(&f, ["V*(2*U^2 - V^2)", "U*(2*U^2 - V^2)", "V^3 + U^3"]);
        (f, h)
    }

    #[test]
    fn elimination_examples() {
        let cert =
            eliminate_to_monomial(&bf("U^2 - V^2"), &bf("2*U*V"), &bf("U^2 + V^2"), BinVar::U)
                .unwrap();
        assert!(cert.verify());
        // Oracle: h1 + h3 = 2U² shows 2 is attainable; the chain must give a divisor of 4.
        assert!((BigInt::from(4) % &cert.rhs_constant).is_zero());
        assert_eq!(cert.rhs_variable, BinVar::U);

        let cert = eliminate_to_monomial(&bf("U^2"), &bf("V^2"), &bf("U*V"), BinVar::U).unwrap();
        assert!(cert.verify());
        assert!(cert.rhs_constant.abs().is_one());

        let err = eliminate_to_monomial(
            &bf("U^2 + U*V"),
            &bf("U*V + V^2"),
            &bf("U^2 - V^2"),
            BinVar::U,
        );
        assert_eq!(err, Err(Error::NotCoprimeTriple));
    }

    #[test]
    fn elimination_with_zero_and_shared_factors() {
        // h1, h2 share U + V; h3 does not.
        let h1 = bf("U^2 + U*V");
        let h2 = bf("U*V + V^2");
        let h3 = bf("U^2 + V^2");
        for target in [BinVar::U, BinVar::V] {
            let cert = eliminate_to_monomial(&h1, &h2, &h3, target).unwrap();
            assert!(cert.verify());
        }
        // Line with a zero coordinate: (U, 0, V).
        let zero = BinaryForm::zero(uv(), 1);
        for target in [BinVar::U, BinVar::V] {
            let cert = eliminate_to_monomial(&bf("U"), &zero, &bf("V"), target).unwrap();
            assert!(cert.verify());
            assert!(cert.rhs_constant.abs().is_one());
        }
        assert_eq!(
            eliminate_to_monomial(&bf("U"), &zero, &zero, BinVar::U),
            Err(Error::NotCoprimeTriple)
        );
    }

    #[test]
    fn gcd_bounds() {
        let (_, h) = pyth();
        let b = compute_gcd_bound(&h).unwrap();
        assert_eq!(b.d_tightened, 2);
        assert_eq!(b.d % 2, 0);
        assert!(b.cert_u.verify() && b.cert_v.verify());

        let f = tf("X*Y - Z^2");
        let b = compute_gcd_bound(&supplied(&f, ["U^2", "V^2", "U*V"])).unwrap();
        assert_eq!((b.d, b.d_tightened), (1, 1));

        let (_, h) = ex1();
        let b = compute_gcd_bound(&h).unwrap();
        assert!(b.cert_u.verify() && b.cert_v.verify());
        assert_eq!(b.d % b.d_tightened, 0);
        assert_eq!(divisor_property_counterexample(&h, b.d_tightened, 50), None);
    }

    #[test]
    fn tightening_matches_brute_force_oracle() {
        // Oracle: lcm of value gcds over coprime (u, v) in a box covering
        // all residues mod d.
        for (_, h) in [pyth(), ex1()] {
            let b = compute_gcd_bound(&h).unwrap();
            let mut acc = BigInt::one();
            let n = 2 * b.d as i64 + 2;
            for u in -n..=n {
                for v in -n..=n {
                    if u.gcd(&v) == 1 {
                        let vals = h.eval(&BigInt::from(u), &BigInt::from(v));
                        acc = acc.lcm(&vals.iter().fold(BigInt::zero(), |g, x| g.gcd(x)));
                    }
                }
            }
            assert_eq!(acc, BigInt::from(b.d_tightened));
        }
    }

    #[test]
    fn residue_examples() {
        let f = tf("X*Y - Z^2");
        let h = supplied(&f, ["U^2", "V^2", "U*V"]);
        let fam = residue_decompose(&f, &h, 1, None).unwrap();
        assert_eq!(fam.triples.len(), 1);
        let m = &fam.triples[0];
        assert_eq!(m.offsets, [0, 0, 0]);
        let p = |s: &str| parse_poly(s, &["S", "T", "R"]).unwrap();
        assert_eq!(m.forms, [p("S^2*R"), p("T^2*R"), p("S*T*R")]);

        let (f, h) = pyth();
        let fam = residue_decompose(&f, &h, 2, None).unwrap();
        let offs: Vec<[u64; 3]> = fam.triples.iter().map(|m| m.offsets).collect();
        assert_eq!(
            offs,
            vec![
                [0, 0, 0],
                [0, 0, 1],
                [0, 1, 0],
                [1, 0, 0],
                [1, 1, 0],
                [1, 1, 1]
            ]
        );
    }

    #[test]
    fn modulus_guardrail() {
        let (f, h) = pyth();
        assert_eq!(
            residue_decompose(&f, &h, 2, Some(1)),
            Err(Error::ModulusTooLarge { d: 2, limit: 1 })
        );
    }

    /// Completeness: every integral `w·h(u,v)/d` for `(u,v,w)` in a box is
    /// reproduced by its class member at the shifted parameters.
    fn check_completeness(f: &TernaryForm, h: &BinaryFormTriple, d: u64, n: i64) {
        let fam = residue_decompose(f, h, d, None).unwrap();
        let di = d as i64;
        for u in -n..=n {
            for v in -n..=n {
                let vals = h.eval(&BigInt::from(u), &BigInt::from(v));
                for w in -n..=n {
                    let scaled: Vec<BigInt> = vals.iter().map(|x| x * w).collect();
                    if scaled.iter().any(|x| !(x % di).is_zero()) {
                        continue;
                    }
                    let target: Vec<BigInt> = scaled.iter().map(|x| x / di).collect();
                    let off = [
                        u.rem_euclid(di) as u64,
                        v.rem_euclid(di) as u64,
                        w.rem_euclid(di) as u64,
                    ];
                    let m = fam.member(&off).expect("class kept");
                    let st = |x: i64, o: u64| BigInt::from((x - o as i64) / di);
                    let got = m.eval(&st(u, off[0]), &st(v, off[1]), &st(w, off[2]));
                    assert_eq!(got.to_vec(), target);
                }
            }
        }
    }

    #[test]
    fn completeness_small_boxes() {
        let (f, h) = pyth();
        check_completeness(&f, &h, 2, 8);
        check_completeness(&f, &h, 4, 6);
        let (f, h) = ex1();
        let b = compute_gcd_bound(&h).unwrap();
        check_completeness(&f, &h, b.d_tightened, 5);
    }

    /// Definition, over all `d²` residue pairs.
    fn naive_tighten(h: &BinaryFormTriple, d: u64) -> u64 {
        let mut acc = 1u64;
        for u in 0..d {
            for v in 0..d {
                if u.gcd(&v).gcd(&d) == 1 {
                    let vals = h.eval(&BigInt::from(u), &BigInt::from(v));
                    let g = vals.iter().fold(BigInt::from(d), |g, x| g.gcd(x));
                    acc = acc.lcm(&g.to_u64().unwrap());
                }
            }
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Family outputs are integral solutions of f = 0.
        #[test]
        fn family_soundness(s in -50i64..=50, t in -50i64..=50, r in -50i64..=50) {
            let (f, h) = pyth();
            let fam = residue_decompose(&f, &h, 2, None).unwrap();
            for m in &fam.triples {
                let p = m.eval(&BigInt::from(s), &BigInt::from(t), &BigInt::from(r));
                prop_assert!(f.vanishes_at(&p));
            }
        }

        /// Random coprime quadratic triples: both certificates verify and
        /// the value gcd divides d_tightened.
        #[test]
        fn random_triples_certify(c in proptest::collection::vec(-4i64..=4, 9)) {
            let forms: Vec<BinaryForm> = c.chunks(3).map(|k| BinaryForm::from_coeffs_desc(uv(), k)).collect();
            prop_assume!(forms.iter().all(|f| !f.is_zero()));
            prop_assume!(gcd_many(&forms).degree() == 0);
            let h = BinaryFormTriple::from_forms_unchecked(forms.try_into().unwrap(), Provenance::UserSupplied);
            let b = compute_gcd_bound(&h).unwrap();
            prop_assert!(b.cert_u.verify() && b.cert_v.verify());
            prop_assert_eq!(b.d % b.d_tightened, 0);
            prop_assert_eq!(divisor_property_counterexample(&h, b.d_tightened, 12), None);
            if b.d <= 60 {
                prop_assert_eq!(b.d_tightened, naive_tighten(&h, b.d));
            }
        }
    }
}
