//! Univariate polynomial arithmetic and complete factorization over prime
//! fields F_p.
//!
//! Factorization runs the classical pipeline: squarefree decomposition,
//! then distinct-degree factorization, then randomized equal-degree
//! splitting (Cantor-Zassenhaus). The random stream is seeded from the
//! input polynomial so repeated runs produce identical output.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{add_mod, inv_mod, is_prime, mul_mod, sub_mod, MAX_MODULUS};
use crate::error::{Error, Result};

/// A polynomial over F_p, coefficients stored constant term first.
///
/// Canonical form: every coefficient lies in `[0, p)` and there are no
/// trailing zero coefficients (the zero polynomial has an empty list).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    /// Builds a polynomial, validating the modulus and normalizing the
    /// coefficient list.
    pub fn new(p: u64, coeffs: &[u64]) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let mut coeffs: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PolyModP { p, coeffs })
    }

    /// Reduces signed integer coefficients mod p.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let reduced: Vec<u64> = coeffs
            .iter()
            .map(|&c| (c.rem_euclid(p as i64)) as u64)
            .collect();
        PolyModP::new(p, &reduced)
    }

    fn raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn zero(p: u64) -> Result<Self> {
        PolyModP::new(p, &[])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    fn x(p: u64) -> Self {
        PolyModP {
            p,
            coeffs: vec![0, 1],
        }
    }

    fn constant(p: u64, c: u64) -> Self {
        PolyModP::raw(p, vec![c % p])
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn add(&self, rhs: &PolyModP) -> PolyModP {
        assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = add_mod(a, b, self.p);
        }
        PolyModP::raw(self.p, out)
    }

    pub fn sub(&self, rhs: &PolyModP) -> PolyModP {
        assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = sub_mod(a, b, self.p);
        }
        PolyModP::raw(self.p, out)
    }

    pub fn mul(&self, rhs: &PolyModP) -> PolyModP {
        assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return PolyModP::raw(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        PolyModP::raw(self.p, out)
    }

    pub fn scale(&self, c: u64) -> PolyModP {
        let c = c % self.p;
        PolyModP::raw(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, div: &PolyModP) -> (PolyModP, PolyModP) {
        assert_eq!(self.p, div.p);
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        if self.coeffs.len() < div.coeffs.len() {
            return (PolyModP::raw(self.p, vec![]), self.clone());
        }
        let p = self.p;
        let lead_inv = inv_mod(*div.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        let qn = rem.len() - dd;
        let mut quot = vec![0u64; qn];
        for i in (0..qn).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, dc, p), p);
            }
        }
        (PolyModP::raw(p, quot), PolyModP::raw(p, rem))
    }

    pub fn rem(&self, div: &PolyModP) -> PolyModP {
        self.div_rem(div).1
    }

    pub fn monic(&self) -> PolyModP {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.p)),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &PolyModP) -> PolyModP {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyModP {
        if self.coeffs.len() <= 1 {
            return PolyModP::raw(self.p, vec![]);
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| mul_mod((i as u64 + 1) % self.p, c, self.p))
            .collect();
        PolyModP::raw(self.p, out)
    }

    /// self^exp mod f for a word-sized exponent.
    pub fn pow_mod(&self, mut exp: u64, f: &PolyModP) -> PolyModP {
        let mut acc = PolyModP::constant(self.p, 1);
        let mut base = self.rem(f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(f);
            }
            base = base.mul(&base).rem(f);
            exp >>= 1;
        }
        acc
    }

    /// self^exp mod f for an arbitrary-precision exponent (equal-degree
    /// splitting needs (p^d - 1)/2, which can exceed a machine word).
    fn pow_mod_big(&self, exp: &BigUint, f: &PolyModP) -> PolyModP {
        let mut acc = PolyModP::constant(self.p, 1);
        let mut base = self.rem(f);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(f);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(f);
            }
        }
        acc
    }

    /// Inverse p-th power: over F_p, (sum a_k x^k)^p has coefficient a_k at
    /// index k*p, so the root keeps every p-th coefficient.
    fn pth_root(&self) -> PolyModP {
        let out = self
            .coeffs
            .iter()
            .step_by(self.p as usize)
            .copied()
            .collect();
        PolyModP::raw(self.p, out)
    }
}

fn derive_seed(p: u64, coeffs: &[u64]) -> u64 {
    let mut s = 0x9E37_79B9_7F4A_7C15u64 ^ p;
    for &c in coeffs {
        s = (s.rotate_left(25) ^ c).wrapping_mul(0xA24B_AED4_963E_E407);
    }
    s
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> PolyModP {
    loop {
        let coeffs: Vec<u64> = (0..=max_deg).map(|_| rng.gen_range(0..p)).collect();
        let cand = PolyModP::raw(p, coeffs);
        if cand.degree().is_some_and(|d| d >= 1) {
            return cand;
        }
    }
}

/// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i and every g_i squarefree.
fn squarefree_parts(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.p;
    let mut out: Vec<(PolyModP, u32)> = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p)
        for (g, m) in squarefree_parts(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().is_some_and(|d| d > 0) {
            out.push((fac, i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().is_some_and(|d| d > 0) {
        for (g, m) in squarefree_parts(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree split of a monic squarefree polynomial: pairs
/// (d, product of all irreducible factors of degree d), d ascending.
fn distinct_degree_parts(f: &PolyModP) -> Vec<(usize, PolyModP)> {
    let p = f.p;
    let x = PolyModP::x(p);
    let mut out = Vec::new();
    let mut rem = f.clone();
    let mut frob = x.pow_mod(p, &rem); // x^(p^d) mod rem, currently d = 1
    let mut d = 1usize;
    while rem.degree().is_some_and(|n| n >= 2 * d) {
        if d > 1 {
            frob = frob.pow_mod(p, &rem);
        }
        let g = rem.gcd(&frob.sub(&x));
        if g.degree().is_some_and(|dg| dg > 0) {
            out.push((d, g.clone()));
            rem = rem.div_rem(&g).0;
            frob = frob.rem(&rem);
        }
        d += 1;
    }
    if rem.degree().is_some_and(|n| n > 0) {
        out.push((rem.degree().unwrap(), rem));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f monic squarefree with all
/// irreducible factors of degree d.
fn equal_degree_split(f: &PolyModP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    let p = f.p;
    if f.degree() == Some(d) {
        return vec![f.clone()];
    }
    let n = f.degree().unwrap();
    loop {
        let a = random_poly(rng, p, n - 1);
        let g = f.gcd(&a);
        let split = if g.degree().is_some_and(|dg| dg > 0 && dg < n) {
            Some(g)
        } else if p == 2 {
            // Trace map over F_{2^d}: a + a^2 + ... + a^(2^(d-1)).
            let mut trace = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                trace = trace.add(&cur);
            }
            let g = f.gcd(&trace);
            g.degree()
                .filter(|&dg| dg > 0 && dg < n)
                .map(|_| g)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod_big(&e, f);
            let g = f.gcd(&b.sub(&PolyModP::constant(p, 1)));
            g.degree()
                .filter(|&dg| dg > 0 && dg < n)
                .map(|_| g)
        };
        if let Some(g) = split {
            let rest = f.div_rem(&g).0;
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&rest, d, rng));
            return out;
        }
    }
}

/// Complete factorization over F_p.
///
/// Returns monic irreducible factors with multiplicities, sorted by
/// (degree, coefficient list); the product over factor^multiplicity equals
/// the monic part of the input.
pub fn factor_mod_p(f: &PolyModP) -> Result<Vec<(PolyModP, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Err(Error::Domain(
            "cannot factor a constant polynomial".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(f.p, &f.coeffs));
    let monic = f.monic();
    let mut factors: Vec<(PolyModP, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(&monic) {
        for (d, prod) in distinct_degree_parts(&part) {
            for irr in equal_degree_split(&prod, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.coeffs.len(), &a.0.coeffs).cmp(&(b.0.coeffs.len(), &b.0.coeffs))
    });
    Ok(factors)
}

/// Rabin irreducibility test; agrees with `factor_mod_p` by construction of
/// the Frobenius fixed-field criteria.
pub fn is_irreducible(f: &PolyModP) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = match f.degree() {
        Some(0) | None => {
            return Err(Error::Domain(
                "irreducibility is only defined for degree >= 1".into(),
            ))
        }
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let p = f.p;
    let monic = f.monic();
    let x = PolyModP::x(p);
    // x^(p^i) mod f for i = 1..n
    let mut frob_powers = Vec::with_capacity(n);
    let mut cur = x.pow_mod(p, &monic);
    frob_powers.push(cur.clone());
    for _ in 1..n {
        cur = cur.pow_mod(p, &monic);
        frob_powers.push(cur.clone());
    }
    if frob_powers[n - 1] != x.rem(&monic) {
        return Ok(false);
    }
    let mut m = n;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while q * q <= m {
        if m % q == 0 {
            prime_divisors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divisors.push(m);
    }
    for q in prime_divisors {
        let h = frob_powers[n / q - 1].sub(&x);
        if monic.gcd(&h).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
