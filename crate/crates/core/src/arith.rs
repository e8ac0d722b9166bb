//! Word-sized modular arithmetic: 128-bit-intermediate multiplication,
//! Montgomery form for the hot exponentiation loops, and deterministic
//! Miller-Rabin primality for `u64`.

/// Moduli are capped below 2^62 so every product fits a 128-bit intermediate.
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b; // safe: a, b < m < 2^62
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` mod `m` for gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inv_mod of non-unit");
    t.rem_euclid(m as i128) as u64
}

/// Montgomery representation for an odd modulus below 2^62.
///
/// Used where the same modulus is reused across millions of multiplications
/// (quadratic-character sums); one REDC replaces a 128/64 division.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    n: u64,
    neg_inv: u64, // -n^{-1} mod 2^64
    r1: u64,      // 2^64 mod n
    r2: u64,      // 2^128 mod n
}

impl Montgomery {
    pub fn new(n: u64) -> Self {
        assert!(n & 1 == 1 && n > 1 && n < MAX_MODULUS);
        // Newton iteration doubles the number of correct low bits each step.
        let mut inv = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r1 = (u64::MAX % n) + 1;
        let r2 = ((r1 as u128 * r1 as u128) % n as u128) as u64;
        Montgomery {
            n,
            neg_inv: inv.wrapping_neg(),
            r1,
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let full = t + m as u128 * self.n as u128;
        let r = (full >> 64) as u64;
        if r >= self.n {
            r - self.n
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.r1
    }

    /// `base` and the result are in Montgomery form.
    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn primality_larger() {
        assert!(is_prime(18_489_743));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001)); // 101 * 9901
        assert!(is_prime((1 << 61) - 1)); // Mersenne
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn montgomery_agrees_with_plain() {
        let m = Montgomery::new(1_000_003);
        for a in [0u64, 1, 2, 999_999, 123_456] {
            for b in [0u64, 1, 17, 1_000_002] {
                let am = m.to_mont(a);
                let bm = m.to_mont(b);
                assert_eq!(m.from_mont(m.mul(am, bm)), mul_mod(a, b, 1_000_003));
            }
            let am = m.to_mont(a);
            assert_eq!(m.from_mont(m.pow(am, 65537)), pow_mod(a, 65537, 1_000_003));
        }
    }

    #[test]
    fn inverse() {
        for a in [1u64, 2, 3, 5, 100, 65537] {
            let inv = inv_mod(a, 1_000_003);
            assert_eq!(mul_mod(a, inv, 1_000_003), 1);
        }
    }
}
