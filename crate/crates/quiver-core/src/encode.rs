//! Window encoding of a quiver as a list of positive integers: entry `i` is
//! `prod_k p_k^h(Q(i, i+k))` with `p_k` the k-th prime and `h` the zig-zag
//! bijection from the integers onto the naturals.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::Quiver;

/// Largest prime index the decoder will try before giving up.
pub const MAX_PRIME_INDEX: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("MalformedCode: entry {0} is zero")]
    Zero(usize),
    #[error("MalformedCode: entry {0} has a prime factor beyond the decoder range")]
    OutOfRange(usize),
}

/// `h(t) = 2t` for `t >= 0`, `-2t - 1` otherwise.
pub fn h(t: &BigInt) -> BigUint {
    let two = BigInt::from(2);
    let v = if t.sign() == Sign::Minus { -(t * &two) - 1 } else { t * &two };
    v.to_biguint().expect("h is nonnegative")
}

pub fn h_inv(e: &BigUint) -> BigInt {
    let e = BigInt::from(e.clone());
    if (&e % 2u32).is_zero() {
        e / 2
    } else {
        -(e + BigInt::one()) / 2
    }
}

/// The first `count` primes.
pub fn primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6.
    let n = count.max(6) as f64;
    let bound = (n * (n.ln() + n.ln().ln())) as usize + 1;
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::with_capacity(count);
    for p in 2..=bound {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        if out.len() == count {
            break;
        }
        for m in (p * p..=bound).step_by(p) {
            composite[m] = true;
        }
    }
    out
}

/// Entries `L(Q)(1), ..., L(Q)(n)`.
///
/// Panics if an exponent exceeds `u32`, i.e. some `|Q(i, j)|` is above 2^31.
pub fn lf_encode(q: &Quiver, n: u64) -> Vec<BigUint> {
    let max_gap = q.arrows().filter(|(i, _, _)| *i <= n).map(|(i, j, _)| j - i).max().unwrap_or(0);
    let ps = primes(max_gap as usize);
    let mut out = vec![BigUint::one(); n as usize];
    for (i, j, m) in q.arrows() {
        if i > n {
            continue;
        }
        let e = h(m).to_u32().expect("arrow count too large to encode");
        out[(i - 1) as usize] *= BigUint::from(ps[(j - i - 1) as usize]).pow(e);
    }
    out
}

/// Inverse of [`lf_encode`] on its window: the result holds exactly the
/// pairs `(i, j)`, `i < j`, with `i <= prefix.len()`.
pub fn lf_decode(prefix: &[BigUint]) -> Result<Quiver, DecodeError> {
    let mut q = Quiver::new();
    let mut ps: Vec<u64> = Vec::new();
    for (idx, code) in prefix.iter().enumerate() {
        let i = idx as u64 + 1;
        if code.is_zero() {
            return Err(DecodeError::Zero(i as usize));
        }
        let mut rest = code.clone();
        let mut k = 0usize;
        while !rest.is_one() {
            if k == ps.len() {
                if ps.len() >= MAX_PRIME_INDEX {
                    return Err(DecodeError::OutOfRange(i as usize));
                }
                ps = primes((ps.len() * 2).clamp(64, MAX_PRIME_INDEX));
            }
            let p = BigUint::from(ps[k]);
            let mut e = 0u64;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            if e > 0 {
                q.set(i, i + k as u64 + 1, h_inv(&BigUint::from(e)));
            }
            k += 1;
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range_set;
    use proptest::prelude::*;

    #[test]
    fn first_primes() {
        assert_eq!(primes(10), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes(1000).last(), Some(&7919));
    }

    #[test]
    fn small_codes() {
        let big = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        assert_eq!(lf_encode(&Quiver::new(), 3), big(&[1, 1, 1]));
        assert_eq!(lf_encode(&Quiver::from_arrows([(1, 2, 1)]), 2), big(&[4, 1]));
        assert_eq!(lf_encode(&Quiver::from_arrows([(2, 1, 1)]), 1), big(&[2]));
        // Q(1,3) = -2: p_2^3 = 27.
        assert_eq!(lf_encode(&Quiver::from_arrows([(1, 3, -2)]), 1), big(&[27]));
    }

    #[test]
    fn zero_entry_is_rejected() {
        assert_eq!(lf_decode(&[BigUint::one(), BigUint::zero()]), Err(DecodeError::Zero(2)));
    }

    #[test]
    fn huge_prime_factor_is_rejected() {
        // 2^61 - 1 is prime and far beyond the decoder's prime range.
        let p = BigUint::from((1u64 << 61) - 1);
        assert_eq!(lf_decode(&[p]), Err(DecodeError::OutOfRange(1)));
    }

    #[test]
    fn h_is_a_bijection_on_a_range() {
        let mut seen = std::collections::BTreeSet::new();
        for t in -1000i64..=1000 {
            let e = h(&BigInt::from(t));
            assert_eq!(h_inv(&e), BigInt::from(t));
            assert!(seen.insert(e));
        }
        let expected: std::collections::BTreeSet<BigUint> = (0u32..=2000).map(BigUint::from).collect();
        assert_eq!(seen, expected);
    }

    proptest! {
        #[test]
        fn round_trip(t in proptest::collection::vec((1u64..=14, 1u64..=14, -5i64..=5), 0..20), n in 1u64..=12) {
            let q = Quiver::from_arrows(t.into_iter().filter(|(i, j, _)| i != j));
            let back = lf_decode(&lf_encode(&q, n)).unwrap();
            prop_assert_eq!(back, q.overfill(&range_set(1, n)));
        }
    }
}
