//! Arithmetic in GF(p) and in the cubic extension GF(p³) = GF(p)[x]/(f).
//!
//! Extension elements are coefficient triples `[c0, c1, c2]` standing for
//! `c0 + c1·x + c2·x²`. Candidate polynomials and elements are enumerated in
//! lexicographic order of `(c2, c1, c0)`, i.e. by the integer
//! `c0 + c1·p + c2·p²`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::primes::{is_prime, prime_divisors};

/// Largest prime for which an extension is built unless overridden.
pub const DEFAULT_PRIME_CEILING: u64 = 1000;

pub type Element = [u64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(SidonError::precondition(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
}

/// GF(p³) presented by a monic irreducible cubic, together with a generator
/// of its multiplicative group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicExtension {
    pub base: PrimeField,
    /// `[a0, a1, a2]` for `x³ + a2·x² + a1·x + a0`.
    pub modulus_poly: [u64; 3],
    pub generator: Element,
}

/// Finds the smallest monic irreducible cubic and the smallest primitive
/// element over GF(p), for `p` up to [`DEFAULT_PRIME_CEILING`].
pub fn build_extension(p: u64) -> Result<CubicExtension> {
    build_extension_with_ceiling(p, DEFAULT_PRIME_CEILING)
}

pub fn build_extension_with_ceiling(p: u64, ceiling: u64) -> Result<CubicExtension> {
    let base = PrimeField::new(p)?;
    if p > ceiling {
        return Err(SidonError::resource(format!("prime {p} exceeds ceiling {ceiling}")));
    }
    let modulus_poly = (0..p * p * p)
        .map(|t| coefficients(t, p))
        .find(|&poly| cubic_is_irreducible(base, poly))
        .expect("an irreducible cubic exists over every prime field");
    let mut ext = CubicExtension { base, modulus_poly, generator: [0, 0, 0] };
    let order = p * p * p - 1;
    let cofactors: Vec<u64> = prime_divisors(order).into_iter().map(|r| order / r).collect();
    ext.generator = (1..p * p * p)
        .map(|t| coefficients(t, p))
        .find(|&g| cofactors.iter().all(|&e| ext.pow(g, e) != ext.one()))
        .expect("the multiplicative group of a finite field is cyclic");
    Ok(ext)
}

fn coefficients(t: u64, p: u64) -> [u64; 3] {
    [t % p, (t / p) % p, t / (p * p)]
}

/// A cubic is irreducible over a field iff it has no root there.
pub fn cubic_is_irreducible(f: PrimeField, [a0, a1, a2]: [u64; 3]) -> bool {
    (0..f.modulus()).all(|r| {
        let v = f.add(f.mul(f.add(f.mul(f.add(r, a2), r), a1), r), a0);
        v != 0
    })
}

impl CubicExtension {
    pub fn p(&self) -> u64 {
        self.base.modulus()
    }

    pub fn one(&self) -> Element {
        [1, 0, 0]
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        let p = self.p();
        // schoolbook product, degree <= 4; coefficients stay below 3p² < 2^64
        let mut c = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] += a[i] * b[j];
            }
        }
        for v in c.iter_mut() {
            *v %= p;
        }
        // x³ ≡ -(a2 x² + a1 x + a0)
        let [m0, m1, m2] = self.modulus_poly;
        for deg in (3..5).rev() {
            let top = c[deg];
            if top == 0 {
                continue;
            }
            c[deg] = 0;
            c[deg - 1] = (c[deg - 1] + (p - m2) * top) % p;
            c[deg - 2] = (c[deg - 2] + (p - m1) * top) % p;
            c[deg - 3] = (c[deg - 3] + (p - m0) * top) % p;
        }
        [c[0], c[1], c[2]]
    }

    pub fn pow(&self, mut base: Element, mut exp: u64) -> Element {
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

    /// Multiplicative order of a nonzero element, by divisor descent.
    pub fn order(&self, g: Element) -> u64 {
        let mut order = self.p().pow(3) - 1;
        for r in prime_divisors(order) {
            while order % r == 0 && self.pow(g, order / r) == self.one() {
                order /= r;
            }
        }
        order
    }
}
