//! Machine-integer evaluation of a ternary form for box scans, with
//! checked arithmetic and an exact fallback on overflow.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::forms::TernaryForm;

#[derive(Clone, Debug)]
pub struct FastForm {
    form: TernaryForm,
    /// Terms grouped by Z exponent: `by_z[k]` lists `(coeff, a, b)` of `X^a Y^b Z^k`.
    by_z: Vec<Vec<(i128, u32, u32)>>,
    /// Terms grouped by X exponent, for slab pruning: `(coeff, b, k)`.
    by_x: Vec<Vec<(i128, u32, u32)>>,
    exact_only: bool,
}

fn ipow(x: i64, k: u32) -> Option<i128> {
    (x as i128).checked_pow(k)
}

impl FastForm {
    pub fn new(form: &TernaryForm) -> Self {
        let n = form.degree() as usize;
        let mut by_z = vec![Vec::new(); n + 1];
        let mut by_x = vec![Vec::new(); n + 1];
        let mut exact_only = false;
        for (e, c) in form.poly().terms() {
            match c.numer().to_i128() {
                Some(ci) => {
                    by_z[e[2] as usize].push((ci, e[0], e[1]));
                    by_x[e[0] as usize].push((ci, e[1], e[2]));
                }
                None => exact_only = true,
            }
        }
        FastForm {
            form: form.clone(),
            by_z,
            by_x,
            exact_only,
        }
    }

    pub fn form(&self) -> &TernaryForm {
        &self.form
    }

    /// Coefficients (ascending in Z) of `f(x, y, Z)`, if they fit in i128.
    pub fn z_slice(&self, x: i64, y: i64) -> Option<Vec<i128>> {
        if self.exact_only {
            return None;
        }
        self.by_z
            .iter()
            .map(|terms| {
                terms.iter().try_fold(0i128, |acc, &(c, a, b)| {
                    acc.checked_add(c.checked_mul(ipow(x, a)?)?.checked_mul(ipow(y, b)?)?)
                })
            })
            .collect()
    }

    /// Whether `f(x, Y, Z)` is a nonzero constant, so the slab has no zeros.
    pub fn slab_is_nonzero_constant(&self, x: i64) -> bool {
        if self.exact_only {
            return false;
        }
        let mut constant = 0i128;
        let mut others = std::collections::BTreeMap::<(u32, u32), i128>::new();
        for (a, terms) in self.by_x.iter().enumerate() {
            for &(c, b, k) in terms {
                let Some(v) = ipow(x, a as u32).and_then(|p| p.checked_mul(c)) else {
                    return false;
                };
                if b == 0 && k == 0 {
                    constant = match constant.checked_add(v) {
                        Some(s) => s,
                        None => return false,
                    };
                } else {
                    let e = others.entry((b, k)).or_insert(0);
                    *e = match e.checked_add(v) {
                        Some(s) => s,
                        None => return false,
                    };
                }
            }
        }
        constant != 0 && others.values().all(|&v| v == 0)
    }

    pub fn eval(&self, x: i64, y: i64, z: i64) -> bool {
        match self.z_slice(x, y).and_then(|s| horner(&s, z)) {
            Some(v) => v == 0,
            None => self.eval_exact(x, y, z).is_zero(),
        }
    }

    pub fn eval_exact(&self, x: i64, y: i64, z: i64) -> BigInt {
        self.form
            .eval_int(&BigInt::from(x), &BigInt::from(y), &BigInt::from(z))
    }
}

pub fn horner(coeffs: &[i128], z: i64) -> Option<i128> {
    coeffs
        .iter()
        .rev()
        .try_fold(0i128, |acc, &c| acc.checked_mul(z as i128)?.checked_add(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ff(s: &str) -> FastForm {
        FastForm::new(&TernaryForm::new(parse_poly(s, &["X", "Y", "Z"]).unwrap()).unwrap())
    }

    #[test]
    fn agrees_with_exact() {
        let f = ff("X^3 + Y^3 + X^2*Z - 2*Y^2*Z");
        for x in -4..=4 {
            for y in -4..=4 {
                for z in -4..=4 {
                    assert_eq!(f.eval(x, y, z), f.eval_exact(x, y, z).is_zero());
                }
            }
        }
    }

    #[test]
    fn overflow_falls_back() {
        let f = ff("X^9 - Y^9");
        let big = 4_000_000_000i64;
        assert!(f.eval(big, big, 1));
        assert!(!f.eval(big, big - 1, 1));
    }

    #[test]
    fn slab_pruning() {
        assert!(ff("X^2 + 0*Y").slab_is_nonzero_constant(3));
        assert!(!ff("X^2 + Y^2 - Z^2").slab_is_nonzero_constant(3));
        assert!(!ff("X^2").slab_is_nonzero_constant(0));
    }
}
