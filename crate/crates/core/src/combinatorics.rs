//! Exact factorials and the factorial quotients the closed forms are built from.
//!
//! Closed-form sums in this crate are written over deliberately generous index
//! ranges; terms whose denominator contains the factorial of a negative integer
//! are dropped here through the convention `1/(-k)! = 0`, not by tightening the
//! loops at each call site.

use num::{BigInt, BigRational, One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1/n!`, with `1/n! = 0` for negative `n`.
pub fn inv_factorial(n: i64) -> BigRational {
    if n < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u64))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: C(n, i+1) = C(n, i) (n - i) / (i + 1)
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `Π num! / Π den!`, or `None` when any denominator argument is negative.
///
/// Numerator arguments must be nonnegative.
pub fn factorial_quotient(num: &[i64], den: &[i64]) -> Option<BigRational> {
    if den.iter().any(|&d| d < 0) {
        return None;
    }
    let top = num.iter().fold(BigInt::one(), |acc, &n| {
        assert!(n >= 0, "factorial of negative numerator argument {n}");
        acc * factorial(n as u64)
    });
    let bottom = den
        .iter()
        .fold(BigInt::one(), |acc, &d| acc * factorial(d as u64));
    Some(BigRational::new(top, bottom))
}
