//! Arbitrary-precision counts, exact rationals, and memoized triangles of
//! binomial coefficients and Stirling numbers of the second kind.
//!
//! The memo tables grow lazily and monotonically behind an `RwLock`: lookups
//! take a read lock, growth takes the write lock, and previously returned
//! values (always clones) are never invalidated.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count. Nonnegativity is enforced by the
/// representation; there is no silent overflow at any magnitude.
pub type Count = BigUint;

/// Exact rational, stored in lowest terms with positive denominator.
/// Equality is canonical-form equality.
pub type Rational = BigRational;

/// Shorthand for building a `Count` from a machine integer.
pub fn count(value: u64) -> Count {
    Count::from(value)
}

/// `base^exp` as a `Count`, with the empty-product convention `0^0 = 1`.
pub fn power(base: u32, exp: u32) -> Count {
    Count::from(base).pow(exp)
}

/// Shorthand for building a `Rational` from machine integers.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Triangular table of Stirling numbers of the second kind, satisfying
/// `entry(n, s) = s·entry(n-1, s) + entry(n-1, s-1)` with `entry(0, 0) = 1`.
#[derive(Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<Count>>,
}

impl StirlingTable {
    pub fn new() -> Self {
        Self {
            rows: vec![vec![Count::one()]],
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the triangle to cover row `n`. Existing rows are untouched.
    pub fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let m = self.rows.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(Count::zero());
            for s in 1..m {
                row.push(&prev[s] * s + &prev[s - 1]);
            }
            row.push(Count::one());
            self.rows.push(row);
        }
    }

    /// `{n brace s}`: partitions of an n-set into s nonempty blocks.
    /// Zero when `s > n`.
    pub fn entry(&mut self, n: usize, s: usize) -> Count {
        if s > n {
            return Count::zero();
        }
        self.ensure(n);
        self.rows[n][s].clone()
    }
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

static STIRLING: LazyLock<RwLock<StirlingTable>> =
    LazyLock::new(|| RwLock::new(StirlingTable::new()));

static PASCAL: LazyLock<RwLock<Vec<Vec<Count>>>> =
    LazyLock::new(|| RwLock::new(vec![vec![Count::one()]]));

static FACTORIAL: LazyLock<RwLock<Vec<Count>>> =
    LazyLock::new(|| RwLock::new(vec![Count::one()]));

/// Binomial coefficient `C(n, s)`, zero when `s < 0` or `s > n` so that
/// out-of-range summation terms vanish.
pub fn binomial(n: u32, s: i64) -> Count {
    if s < 0 || s > n as i64 {
        return Count::zero();
    }
    let (n, s) = (n as usize, s as usize);
    {
        let table = PASCAL.read().unwrap();
        if let Some(row) = table.get(n) {
            return row[s].clone();
        }
    }
    let mut table = PASCAL.write().unwrap();
    while table.len() <= n {
        let prev = table.last().unwrap();
        let m = table.len();
        let mut row = Vec::with_capacity(m + 1);
        row.push(Count::one());
        for i in 1..m {
            row.push(&prev[i - 1] + &prev[i]);
        }
        row.push(Count::one());
        table.push(row);
    }
    table[n][s].clone()
}

/// Stirling number of the second kind `{n brace s}`.
pub fn stirling2(n: u32, s: u32) -> Count {
    STIRLING.write().unwrap().entry(n as usize, s as usize)
}

/// `n!`.
pub fn factorial(n: u32) -> Count {
    let n = n as usize;
    {
        let table = FACTORIAL.read().unwrap();
        if let Some(value) = table.get(n) {
            return value.clone();
        }
    }
    let mut table = FACTORIAL.write().unwrap();
    while table.len() <= n {
        let next = table.last().unwrap() * table.len();
        table.push(next);
    }
    table[n].clone()
}

/// Renders a rational as `p/q` in lowest terms, or plain `p` when the
/// denominator is 1.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: {n brace s} = surjections(n, s) / s!, counting
    // surjections by exhausting all s^n assignments.
    fn stirling2_oracle(n: u32, s: u32) -> u64 {
        if n == 0 {
            return if s == 0 { 1 } else { 0 };
        }
        if s == 0 {
            return 0;
        }
        let mut surjections = 0u64;
        let total = (s as u64).pow(n);
        for code in 0..total {
            let mut c = code;
            let mut used = vec![false; s as usize];
            for _ in 0..n {
                used[(c % s as u64) as usize] = true;
                c /= s as u64;
            }
            if used.iter().all(|&b| b) {
                surjections += 1;
            }
        }
        let fact: u64 = (1..=s as u64).product();
        assert_eq!(surjections % fact, 0);
        surjections / fact
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), count(10));
        assert_eq!(binomial(7, 0), count(1));
        assert_eq!(binomial(4, 5), count(0));
        assert_eq!(binomial(4, -1), count(0));
    }

    #[test]
    fn binomial_pascal_identity() {
        for n in 1..=30u32 {
            for s in 1..=n {
                assert_eq!(
                    binomial(n, s as i64),
                    binomial(n - 1, s as i64 - 1) + binomial(n - 1, s as i64)
                );
            }
        }
    }

    #[test]
    fn binomial_row_sums_are_powers_of_two() {
        for n in 0..=30u32 {
            let sum: Count = (0..=n).map(|s| binomial(n, s as i64)).sum();
            assert_eq!(sum, power(2, n));
        }
    }

    #[test]
    fn stirling2_matches_brute_force_enumeration() {
        // Oracle values: stirling2_oracle(3,2) = 3, stirling2_oracle(4,2) = 7.
        assert_eq!(stirling2(0, 0), count(1));
        assert_eq!(stirling2(3, 2), count(3));
        assert_eq!(stirling2(4, 2), count(7));
        for n in 0..=7u32 {
            for s in 0..=n {
                assert_eq!(stirling2(n, s), count(stirling2_oracle(n, s)), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn stirling2_zero_above_diagonal() {
        assert_eq!(stirling2(2, 5), count(0));
        assert_eq!(stirling2(1, 0), count(0));
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), count(1));
        assert_eq!(factorial(5), count(120));
        assert_eq!(factorial(10), count(3_628_800));
    }

    #[test]
    fn power_empty_product_convention() {
        assert_eq!(power(0, 0), count(1));
        assert_eq!(power(0, 3), count(0));
        assert_eq!(power(3, 4), count(81));
    }

    #[test]
    fn operations_are_pure() {
        assert_eq!(binomial(20, 9), binomial(20, 9));
        assert_eq!(stirling2(9, 4), stirling2(9, 4));
        assert_eq!(factorial(12), factorial(12));
    }

    #[test]
    fn tables_survive_concurrent_readers() {
        let handles: Vec<_> = (0..8u32)
            .map(|t| {
                std::thread::spawn(move || {
                    for n in 0..=25u32 {
                        let s = (n + t) % (n + 1);
                        assert_eq!(binomial(n, s as i64), binomial(n, (n - s) as i64));
                        let _ = stirling2(n, s);
                        let _ = factorial(n);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn rational_rendering() {
        use num_bigint::BigInt;
        let half = Rational::new(BigInt::from(13), BigInt::from(26));
        assert_eq!(render_rational(&half), "1/2");
        let three = Rational::new(BigInt::from(6), BigInt::from(2));
        assert_eq!(render_rational(&three), "3");
        let neg = Rational::new(BigInt::from(3), BigInt::from(-6));
        assert_eq!(render_rational(&neg), "-1/2");
    }
}
