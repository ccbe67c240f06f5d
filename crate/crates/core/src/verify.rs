//! Brute-force box oracle: all integer solutions of `f = 0` in `[−N, N]³`,
//! each either covered by a family member with an algebraic witness or
//! excluded as a bad point.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{canonical_point, preimage_of, BinaryFormTriple, IntTriple, Preimage};
use crate::error::{Error, Result};
use crate::eval::{horner, FastForm};
use crate::forms::TernaryForm;
use crate::pipeline::ParamFamily;

pub const DEFAULT_EVALUATION_BUDGET: u128 = 1_000_000_000;
/// Total soundness samples, spread over the family members.
pub const DEFAULT_SOUNDNESS_SAMPLES: usize = 2048;
/// Lower bound per member.
pub const MIN_SAMPLES_PER_MEMBER: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Skip x-slabs on which `f(x, Y, Z)` is a nonzero constant.
    pub prune: bool,
    pub budget: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            prune: true,
            budget: DEFAULT_EVALUATION_BUDGET,
        }
    }
}

/// All `(x, y, z) ∈ [−N, N]³` with `f = 0`, sorted lexicographically.
pub fn enumerate_solutions(
    f: &TernaryForm,
    n: u64,
    opts: EnumerationOptions,
) -> Result<Vec<[i64; 3]>> {
    let bound = i64::try_from(n).map_err(|_| Error::Overflow("box bound".into()))?;
    let side = 2 * n as u128 + 1;
    let evaluations = side * side * side;
    if evaluations > opts.budget {
        return Err(Error::BoxTooLarge {
            bound,
            evaluations,
            budget: opts.budget,
        });
    }
    let fast = FastForm::new(f);
    let out = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut slab = Vec::new();
            if opts.prune && fast.slab_is_nonzero_constant(x) {
                return slab;
            }
            for y in -bound..=bound {
                let coeffs = fast.z_slice(x, y);
                for z in -bound..=bound {
                    let zero = match coeffs.as_deref().and_then(|c| horner(c, z)) {
                        Some(v) => v == 0,
                        None => fast.eval_exact(x, y, z).is_zero(),
                    };
                    if zero {
                        slab.push([x, y, z]);
                    }
                }
            }
            slab
        })
        .collect();
    Ok(out)
}

/// How a solution is accounted for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered(Witness),
    /// Projective point classified bad; not expected in the family image.
    ExcludedBad,
    /// Any failure of the coverage argument.
    Anomaly(String),
}

/// `target = G(s, t, r)` for the member with the given offsets, obtained
/// from the parameter `(u, v, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub class_index: usize,
    pub offsets: [u64; 3],
    pub uvw: [String; 3],
    pub str_params: [String; 3],
}

fn to_big(p: &[i64; 3]) -> IntTriple {
    std::array::from_fn(|i| BigInt::from(p[i]))
}

/// Decides coverage of one solution by exact algebra: rational preimage
/// `(u:v)`, scale `w = m·d/c`, class lookup, and reconstruction.
pub fn is_covered(
    family: &ParamFamily,
    h: &BinaryFormTriple,
    bad_points: &[IntTriple],
    target: &IntTriple,
) -> Coverage {
    let pre = canonical_point(target).map(|q| preimage_of(h, &q));
    cover_with(family, h, bad_points, target, pre)
}

fn cover_with(
    family: &ParamFamily,
    h: &BinaryFormTriple,
    bad_points: &[IntTriple],
    target: &IntTriple,
    pre: Option<Preimage>,
) -> Coverage {
    let d = BigInt::from(family.modulus);
    let Some(pre) = pre else {
        // The origin: any class with w0 = 0 at r = 0, e.g. (0, 0, 0).
        return match family.member(&[0, 0, 0]) {
            Some(_) => Coverage::Covered(Witness {
                class_index: family
                    .triples
                    .iter()
                    .position(|m| m.offsets == [0, 0, 0])
                    .unwrap(),
                offsets: [0, 0, 0],
                uvw: ["0".into(), "0".into(), "0".into()],
                str_params: ["0".into(), "0".into(), "0".into()],
            }),
            None => Coverage::Anomaly("class (0, 0, 0) missing from family".into()),
        };
    };
    let q = canonical_point(target).expect("nonzero");
    if pre.everywhere {
        return Coverage::Anomaly(format!("parametrization is constant at {q:?}"));
    }
    let Some((u, v)) = pre.rational.first().cloned() else {
        return if bad_points.contains(&q) {
            Coverage::ExcludedBad
        } else {
            Coverage::Anomaly("no rational preimage and point not classified bad".into())
        };
    };
    let val = h.eval(&u, &v);
    let c = val.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() {
        return Coverage::Anomaly(format!("h vanishes at ({u}, {v})"));
    }
    let p: IntTriple = std::array::from_fn(|i| &val[i] / &c);
    let k = p.iter().position(|x| !x.is_zero()).expect("nonzero");
    let (m, rem) = target[k].div_rem(&p[k]);
    if !rem.is_zero() || (0..3).any(|i| target[i] != &m * &p[i]) {
        return Coverage::Anomaly(format!("target not an integer multiple of h({u}, {v})/{c}"));
    }
    let (w, rem) = (&m * &d).div_rem(&c);
    if !rem.is_zero() {
        return Coverage::Anomaly(format!("value gcd {c} does not divide {}", m * &d));
    }
    let params = [u, v, w];
    let offsets: [u64; 3] =
        std::array::from_fn(|i| params[i].mod_floor(&d).to_u64().expect("reduced"));
    let Some(class_index) = family.triples.iter().position(|mm| mm.offsets == offsets) else {
        return Coverage::Anomaly(format!("class {offsets:?} missing from family"));
    };
    let stw: [BigInt; 3] = std::array::from_fn(|i| (&params[i] - BigInt::from(offsets[i])) / &d);
    let got = family.triples[class_index].eval(&stw[0], &stw[1], &stw[2]);
    if &got != target {
        return Coverage::Anomaly(format!("reconstruction gave {got:?}"));
    }
    Coverage::Covered(Witness {
        class_index,
        offsets,
        uvw: params.map(|x| x.to_string()),
        str_params: stw.map(|x| x.to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UncoveredSolution {
    pub point: [i64; 3],
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub box_bound: u64,
    pub solutions_found: usize,
    pub covered: usize,
    pub bad_excluded: usize,
    pub uncovered_non_bad: Vec<UncoveredSolution>,
    /// Sampled family outputs that are not solutions of `f = 0`.
    pub spurious: Vec<[String; 3]>,
    pub soundness_samples: usize,
    pub wall_time_ms: u128,
    pub success: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub enumeration: EnumerationOptions,
    pub soundness_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            enumeration: EnumerationOptions::default(),
            soundness_samples: DEFAULT_SOUNDNESS_SAMPLES,
            seed: 0,
        }
    }
}

/// Enumerates the box, decides coverage of every solution, and samples
/// family outputs for soundness.
pub fn verify_box(
    f: &TernaryForm,
    h: &BinaryFormTriple,
    family: &ParamFamily,
    bad_points: &[IntTriple],
    n: u64,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let solutions = enumerate_solutions(f, n, opts.enumeration)?;

    // Multiples share a projective point; cache preimages per point.
    let cache: Mutex<HashMap<IntTriple, Preimage>> = Mutex::new(HashMap::new());
    let outcomes: Vec<Coverage> = solutions
        .par_iter()
        .map(|s| {
            let target = to_big(s);
            let pre = canonical_point(&target).map(|q| {
                if let Some(p) = cache.lock().unwrap().get(&q) {
                    return p.clone();
                }
                let p = preimage_of(h, &q);
                cache.lock().unwrap().insert(q, p.clone());
                p
            });
            cover_with(family, h, bad_points, &target, pre)
        })
        .collect();

    let mut covered = 0;
    let mut bad_excluded = 0;
    let mut uncovered_non_bad = Vec::new();
    for (s, c) in solutions.iter().zip(outcomes) {
        match c {
            Coverage::Covered(_) => covered += 1,
            Coverage::ExcludedBad => bad_excluded += 1,
            Coverage::Anomaly(reason) => {
                uncovered_non_bad.push(UncoveredSolution { point: *s, reason })
            }
        }
    }

    let (spurious, soundness_samples) = sample_soundness(f, family, n, opts);
    let success = uncovered_non_bad.is_empty() && spurious.is_empty();
    Ok(VerificationReport {
        box_bound: n,
        solutions_found: solutions.len(),
        covered,
        bad_excluded,
        uncovered_non_bad,
        spurious,
        soundness_samples,
        wall_time_ms: start.elapsed().as_millis(),
        success,
    })
}

/// Seeded samples of `G(s, t, r)` with parameters small enough to land
/// near the box; every output must be an integral solution.
fn sample_soundness(
    f: &TernaryForm,
    family: &ParamFamily,
    n: u64,
    opts: VerifyOptions,
) -> (Vec<[String; 3]>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let range = (n as f64).cbrt().ceil() as i64 + 1;
    let mut spurious = Vec::new();
    let mut count = 0;
    let per_member =
        (opts.soundness_samples / family.triples.len().max(1)).max(MIN_SAMPLES_PER_MEMBER);
    for m in &family.triples {
        for _ in 0..per_member {
            let p: [BigInt; 3] =
                std::array::from_fn(|_| BigInt::from(rng.gen_range(-range..=range)));
            let out = m.eval(&p[0], &p[1], &p[2]);
            count += 1;
            if !f.vanishes_at(&out) {
                spurious.push(out.map(|x| x.to_string()));
            }
        }
    }
    (spurious, count)
}

/// Largest absolute coordinate.
pub fn height(p: &IntTriple) -> BigInt {
    p.iter().map(|x| x.abs()).max().unwrap_or_default()
}
