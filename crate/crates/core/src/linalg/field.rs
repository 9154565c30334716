use crate::error::{domain, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_PRIME: u32 = 1 << 31;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if p >= MAX_PRIME || !is_prime(p) {
        return Err(domain(format!("{p} is not a prime below 2^31")));
    }
    Ok(())
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(p: u32, mut base: u32, mut exp: u64) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse by Fermat. Panics on zero.
pub fn inv(p: u32, a: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse mod {p}");
    pow(p, a, p as u64 - 2)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// An element of GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    p: u32,
    value: u32,
}

impl FpScalar {
    pub fn new(p: u32, value: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(FpScalar {
            p,
            value: reduce_i64(p, value),
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "scalars from different fields");
    }

    pub fn add(self, other: Self) -> Self {
        self.same_field(&other);
        FpScalar {
            p: self.p,
            value: add(self.p, self.value, other.value),
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.same_field(&other);
        FpScalar {
            p: self.p,
            value: sub(self.p, self.value, other.value),
        }
    }

    pub fn mul(self, other: Self) -> Self {
        self.same_field(&other);
        FpScalar {
            p: self.p,
            value: mul(self.p, self.value, other.value),
        }
    }

    pub fn neg(self) -> Self {
        FpScalar {
            p: self.p,
            value: neg(self.p, self.value),
        }
    }

    /// `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            p: self.p,
            value: inv(self.p, self.value),
        })
    }
}

impl std::fmt::Display for FpScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(check_prime(2_147_483_647).is_ok());
        assert!(check_prime(1).is_err());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 101, 65_537] {
            for a in 1..p.min(200) {
                assert_eq!(mul(p, a, inv(p, a)), 1);
            }
        }
        let x = FpScalar::new(7, -3).unwrap();
        assert_eq!(x.value(), 4);
        assert_eq!(x.mul(x.inv().unwrap()).value(), 1);
        assert!(FpScalar::new(7, 14).unwrap().inv().is_none());
        assert!(FpScalar::new(9, 1).is_err());
    }
}
