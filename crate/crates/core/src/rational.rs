//! Arbitrary-precision rational scalars. No floating point anywhere.

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Fraction `num/den`, normalized.
pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// `m!` as a big integer.
pub fn factorial(m: u32) -> Int {
    let mut acc = Int::from(1);
    for i in 2..=m as i64 {
        acc *= Int::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}
