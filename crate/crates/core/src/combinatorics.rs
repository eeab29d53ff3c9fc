//! Stirling numbers of both kinds, exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// `S(n, k)` and `|s(n, k)|` for all `0 <= k <= n <= bound`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    bound: usize,
    second: Vec<Vec<BigInt>>,
    first: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(bound: usize) -> Self {
        let mut second = vec![vec![BigInt::zero(); bound + 1]; bound + 1];
        let mut first = second.clone();
        second[0][0] = BigInt::one();
        first[0][0] = BigInt::one();
        for n in 1..=bound {
            for k in 1..=n {
                second[n][k] = BigInt::from(k) * &second[n - 1][k] + &second[n - 1][k - 1];
                first[n][k] = BigInt::from(n - 1) * &first[n - 1][k] + &first[n - 1][k - 1];
            }
        }
        StirlingTable {
            bound,
            second,
            first,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.bound {
            return Err(domain(format!(
                "Stirling index {n} exceeds table bound {}",
                self.bound
            )));
        }
        Ok(())
    }

    /// Stirling number of the second kind; zero when `k > n`.
    pub fn second_kind(&self, n: usize, k: usize) -> Result<BigInt> {
        self.check(n)?;
        Ok(if k > n {
            BigInt::zero()
        } else {
            self.second[n][k].clone()
        })
    }

    /// Unsigned Stirling number of the first kind; zero when `k > n`.
    pub fn first_kind_unsigned(&self, n: usize, k: usize) -> Result<BigInt> {
        self.check(n)?;
        Ok(if k > n {
            BigInt::zero()
        } else {
            self.first[n][k].clone()
        })
    }
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    StirlingTable::new(n)
        .second_kind(n, k)
        .expect("table built to n")
}

pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    StirlingTable::new(n)
        .first_kind_unsigned(n, k)
        .expect("table built to n")
}

/// `|s(n+1, 2)| = n! (1 + 1/2 + ... + 1/n)`, for `n >= 1`.
pub fn harmonic_firstkind(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(domain("harmonic_firstkind is defined for n >= 1"));
    }
    Ok(stirling1_unsigned(n + 1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{factorial, from_bigint, ratio, Rational};

    /// Number of set partitions of `{0..n}` into exactly `k` blocks, by
    /// enumerating restricted growth strings.
    fn partitions_brute_force(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, max: usize, k: usize) -> u64 {
            if i == n {
                return u64::from(max == k);
            }
            let mut total = 0;
            for b in 0..=max.min(k.saturating_sub(1)) {
                let next = if b == max { max + 1 } else { max };
                if next <= k {
                    total += go(i + 1, n, next, k);
                }
            }
            total
        }
        if n == 0 {
            return u64::from(k == 0);
        }
        go(0, n, 0, k)
    }

    #[test]
    fn second_kind_matches_enumeration() {
        let t = StirlingTable::new(8);
        for n in 0..=8 {
            for k in 0..=n + 2 {
                assert_eq!(
                    t.second_kind(n, k).unwrap(),
                    BigInt::from(partitions_brute_force(n, k)),
                    "S({n},{k})"
                );
            }
        }
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(2, 4), BigInt::from(0));
    }

    #[test]
    fn harmonic_values() {
        let got: Vec<BigInt> = (1..=5).map(|n| harmonic_firstkind(n).unwrap()).collect();
        let want: Vec<BigInt> = [1, 3, 11, 50, 274]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(got, want);
        for n in 1..=8u64 {
            let h: Rational = (1..=n as i64).map(|i| ratio(1, i)).sum();
            assert_eq!(
                from_bigint(harmonic_firstkind(n as usize).unwrap()),
                from_bigint(factorial(n)) * h
            );
        }
        assert!(harmonic_firstkind(0).is_err());
    }

    #[test]
    fn out_of_table_is_domain_error() {
        let t = StirlingTable::new(4);
        assert!(t.second_kind(5, 2).is_err());
        assert!(t.first_kind_unsigned(5, 2).is_err());
    }
}
