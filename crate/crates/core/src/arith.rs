//! Integer helpers: gcd/lcm, divisor enumeration, and unimodular completion
//! of primitive integer vectors.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// All positive divisors of `n` (`n != 0`), ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero(), "divisors of zero");
    let m: BigUint = n.magnitude().clone();
    if m.is_one() {
        return vec![BigInt::one()];
    }
    let factors = num_prime::nt_funcs::factorize(m);
    let mut divs = vec![BigInt::one()];
    for (p, k) in factors {
        let p = BigInt::from_biguint(Sign::Plus, p);
        let mut next = Vec::with_capacity(divs.len() * (k + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=k {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub type Mat3 = [[BigInt; 3]; 3];

fn identity3() -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    })
}

/// Column-reduces the row vector `r` to `(g, 0, 0)`, `g = ±gcd(r)`, and
/// returns the unimodular matrix `C` with `r · C = (g, 0, 0)`.
pub fn column_reduce(r: &[BigInt; 3]) -> ([BigInt; 3], Mat3) {
    let mut r = r.clone();
    let mut c = identity3();
    // Move a nonzero entry to the front so the Euclid loop terminates there.
    if r[0].is_zero() {
        if let Some(j) = (1..3).find(|&j| !r[j].is_zero()) {
            r.swap(0, j);
            for row in c.iter_mut() {
                row.swap(0, j);
            }
        }
    }
    for j in 1..3 {
        while !r[j].is_zero() {
            let q = r[0].div_floor(&r[j]);
            r[0] = &r[0] - &q * &r[j];
            for row in c.iter_mut() {
                row[0] = &row[0] - &q * &row[j];
            }
            r.swap(0, j);
            for row in c.iter_mut() {
                row.swap(0, j);
            }
        }
    }
    (r, c)
}

pub fn det3(m: &Mat3) -> BigInt {
    let minor = |i: usize, j: usize, k: usize, l: usize| &m[i][k] * &m[j][l] - &m[i][l] * &m[j][k];
    &m[0][0] * minor(1, 2, 1, 2) - &m[0][1] * minor(1, 2, 0, 2) + &m[0][2] * minor(1, 2, 0, 1)
}

/// Inverse of a unimodular integer matrix via the adjugate.
pub fn inverse_unimodular(m: &Mat3) -> Option<Mat3> {
    let det = det3(m);
    if det.abs() != BigInt::one() {
        return None;
    }
    let cof = |i: usize, j: usize| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let v = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]
            - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
        if (i + j).is_multiple_of(2) {
            v
        } else {
            -v
        }
    };
    // inverse[i][j] = cof(j, i) / det
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| cof(j, i) * &det)
    }))
}

/// Completes a primitive vector `p` to a basis `{p, a, b}` of ℤ³.
pub fn complete_basis(p: &[BigInt; 3]) -> Option<([BigInt; 3], [BigInt; 3])> {
    let (r, c) = column_reduce(p);
    if r[0].abs() != BigInt::one() {
        return None;
    }
    let inv = inverse_unimodular(&c)?;
    // p · C = (±1, 0, 0), so p is ± the first row of C⁻¹.
    Some((inv[1].clone(), inv[2].clone()))
}

/// A basis of the rank-2 lattice `{x ∈ ℤ³ : a·x = 0}` for primitive `a`.
pub fn kernel_basis(a: &[BigInt; 3]) -> Option<([BigInt; 3], [BigInt; 3])> {
    let (r, c) = column_reduce(a);
    if r[0].abs() != BigInt::one() {
        return None;
    }
    let col = |j: usize| -> [BigInt; 3] { std::array::from_fn(|i| c[i][j].clone()) };
    Some((col(1), col(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64, c: i64) -> [BigInt; 3] {
        [BigInt::from(a), BigInt::from(b), BigInt::from(c)]
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors(&BigInt::from(-12))
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::from(1)), vec![BigInt::one()]);
        assert_eq!(divisors(&BigInt::from(97)).len(), 2);
    }

    #[test]
    fn completion_is_unimodular() {
        for p in [
            v(1, 0, 0),
            v(-1, 0, 1),
            v(3, 4, 5),
            v(0, 0, 1),
            v(6, 10, 15),
            v(0, 2, -3),
        ] {
            let (a, b) = complete_basis(&p).unwrap();
            let m: Mat3 = [p.clone(), a, b];
            assert_eq!(det3(&m).abs(), BigInt::one(), "{p:?}");
        }
        assert!(complete_basis(&v(2, 4, 6)).is_none());
    }

    #[test]
    fn kernel_is_orthogonal_and_saturated() {
        for a in [v(1, 1, 1), v(2, 3, 5), v(1, -1, 0), v(0, 0, 1)] {
            let (k1, k2) = kernel_basis(&a).unwrap();
            let dot = |x: &[BigInt; 3]| x.iter().zip(&a).map(|(p, q)| p * q).sum::<BigInt>();
            assert!(dot(&k1).is_zero() && dot(&k2).is_zero());
            // Saturated: together with a vector pairing to 1 they form a basis.
            let m: Mat3 = [a.clone(), k1, k2];
            assert_eq!(det3(&m).abs(), a.iter().map(|x| x * x).sum::<BigInt>());
        }
    }
}
