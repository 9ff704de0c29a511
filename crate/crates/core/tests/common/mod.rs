//! Exact-arithmetic references shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut b = BigInt::one();
    for j in 0..k {
        b = b * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    b
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `Lₙ(x) = Σ_k C(n,k) (-x)^k / k!` in exact arithmetic.
pub fn laguerre_exact(n: u32, x: f64) -> f64 {
    let x = rational(x);
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for k in 0..=n {
        let term = &power * BigRational::new(binomial(n, k), factorial(k));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x;
    }
    sum.to_f64().expect("representable")
}

/// `Pₙ(x) = 2⁻ⁿ Σ_k C(n,k)² (x-1)^{n-k} (x+1)^k` in exact arithmetic.
pub fn legendre_exact(n: u32, x: f64) -> f64 {
    let x = rational(x);
    let one = BigRational::one();
    let (lo, hi) = (&x - &one, &x + &one);
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let c = binomial(n, k);
        let mut term = BigRational::from_integer(&c * &c);
        for _ in 0..n - k {
            term *= &lo;
        }
        for _ in 0..k {
            term *= &hi;
        }
        sum += term;
    }
    (sum / BigRational::from_integer(BigInt::from(2).pow(n)))
        .to_f64()
        .expect("representable")
}

/// Agreement within `tol`, relative once the reference exceeds 1 in size.
pub fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}
