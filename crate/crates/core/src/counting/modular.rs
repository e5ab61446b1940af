//! Montgomery arithmetic modulo 62-bit primes and Chinese remaindering.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Arithmetic modulo an odd prime `p < 2^62`; values are kept in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62));
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_big(&self, x: &BigUint) -> u64 {
        self.to_mont((x % self.p).to_u64().expect("residue fits"))
    }

    /// Determinant of the square matrix stored row-major in `a` (destroyed).
    pub fn determinant(&self, a: &mut [u64], size: usize) -> u64 {
        let mut det = self.one();
        for col in 0..size {
            let Some(pivot_row) = (col..size).find(|&r| a[r * size + col] != 0) else {
                return 0;
            };
            if pivot_row != col {
                for j in col..size {
                    a.swap(pivot_row * size + j, col * size + j);
                }
                det = self.sub(0, det);
            }
            let pivot = a[col * size + col];
            det = self.mul(det, pivot);
            let inv = self.inv(pivot);
            for r in col + 1..size {
                let lead = a[r * size + col];
                if lead == 0 {
                    continue;
                }
                let factor = self.mul(lead, inv);
                for j in col + 1..size {
                    let v = self.mul(factor, a[col * size + j]);
                    a[r * size + j] = self.sub(a[r * size + j], v);
                }
            }
        }
        det
    }

    /// Coefficients (Montgomery form) of the unique polynomial of degree
    /// `< values.len()` taking `values[i]` at `x = i + 1`.
    pub fn interpolate_at_consecutive(&self, values: &[u64]) -> Vec<u64> {
        let len = values.len();
        if len == 0 {
            return Vec::new();
        }
        let inverses: Vec<u64> = (0..len as u64).map(|k| if k == 0 { 0 } else { self.inv(self.to_mont(k)) }).collect();
        let mut a = values.to_vec();
        for k in 1..len {
            for i in (k..len).rev() {
                a[i] = self.mul(self.sub(a[i], a[i - 1]), inverses[k]);
            }
        }
        let mut poly = vec![0u64; len];
        poly[0] = a[len - 1];
        let mut degree = 0;
        for i in (0..len - 1).rev() {
            let node = self.to_mont(i as u64 + 1);
            // poly <- poly * (x - node) + a[i]
            for j in (0..=degree + 1).rev() {
                let shifted = if j > 0 { poly[j - 1] } else { 0 };
                let scaled = if j <= degree { self.mul(poly[j], node) } else { 0 };
                poly[j] = self.sub(shifted, scaled);
            }
            degree += 1;
            poly[0] = self.add(poly[0], a[i]);
        }
        poly
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `count` largest primes below 2^62, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut cache = PRIMES.lock().expect("prime cache poisoned");
    let mut candidate = cache.last().map_or((1u64 << 62) - 1, |&p| p - 2);
    while cache.len() < count {
        if is_prime(candidate) {
            cache.push(candidate);
        }
        candidate -= 2;
    }
    cache[..count].to_vec()
}

/// Primes whose product exceeds `2 * bound`, enough for a symmetric CRT lift
/// of any integer with absolute value at most `bound`.
pub fn primes_for_bound(bound: &BigUint) -> Vec<u64> {
    let target = bound * 2u32 + 1u32;
    let mut count = 1;
    loop {
        let primes = large_primes(count);
        let product = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
        if product > target {
            return primes;
        }
        count += 1;
    }
}

/// Combines standard-form residues into the integer of least absolute value.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut value = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let current = (&value % p).to_u64().expect("residue fits");
        let m_mod = (&modulus % p).to_u64().expect("residue fits");
        let diff = (r + p - current) % p;
        let t = mul_mod(diff, pow_mod(m_mod, p - 2, p), p);
        value += &modulus * t;
        modulus *= p;
    }
    let half = &modulus >> 1;
    if value > half {
        BigInt::from(value) - BigInt::from(modulus)
    } else {
        BigInt::from(value)
    }
}
