//! Parvaresh–Vardy style condenser over `GF(2^s)`.
//!
//! The input is packed into a polynomial `f` of degree `< n′`; the seed is a
//! field element `y`. With `f_0 = f` and `f_{i+1} = f_i^h mod E`, the output
//! is `y ‖ f_0(y) ‖ … ‖ f_{m−1}(y)`.

use crate::codes::Field;
use crate::error::{Error, Result};

/// Polynomials over a field, coefficients low to high, no trailing zeros.
pub(crate) struct PolyRing<'a> {
    pub f: &'a Field,
}

impl PolyRing<'_> {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.f.add(out[i + j], self.f.mul(x, y));
            }
        }
        Self::trim(out)
    }

    /// Remainder of `a` modulo nonzero `m`.
    pub fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = Self::trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = self.f.inv(m[dm]).expect("modulus is nonzero");
        while r.len() > dm {
            let top = r.len() - 1;
            let c = self.f.mul(r[top], lead_inv);
            for j in 0..=dm {
                let idx = top - dm + j;
                r[idx] = self.f.sub(r[idx], self.f.mul(c, m[j]));
            }
            r = Self::trim(r);
        }
        r
    }

    pub fn mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        self.rem(&self.mul(a, b), m)
    }

    /// `a^e mod m` by square-and-multiply.
    pub fn powmod(&self, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&[1], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (mut a, mut b) = (Self::trim(a.to_vec()), Self::trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, a: &[u32], y: u32) -> u32 {
        a.iter()
            .rev()
            .fold(0, |acc, &c| self.f.add(self.f.mul(acc, y), c))
    }

    /// Ben-Or test: monic `m` of degree `n` is irreducible iff
    /// `gcd(m, Y^{Q^i} − Y) = 1` for `1 ≤ i ≤ n/2`, `Q` the field order.
    pub fn is_irreducible(&self, m: &[u32]) -> bool {
        let n = m.len().saturating_sub(1);
        if n == 0 {
            return false;
        }
        let q = self.f.order() as u64;
        let y = vec![0, 1];
        let mut power = self.rem(&y, m);
        for _ in 0..n / 2 {
            power = self.powmod(&power, q, m);
            let mut diff = power.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = self.f.sub(diff[1], 1);
            let g = self.gcd(m, &Self::trim(diff));
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Smallest monic irreducible of degree `n`, ordering candidates by
    /// their lower coefficients read as a base-`Q` integer.
    pub fn smallest_irreducible(&self, n: usize) -> Result<Vec<u32>> {
        let q = self.f.order() as u128;
        let total = q.saturating_pow(n as u32);
        let mut idx: u128 = 0;
        while idx < total {
            let mut c = Vec::with_capacity(n + 1);
            let mut rest = idx;
            for _ in 0..n {
                c.push((rest % q) as u32);
                rest /= q;
            }
            c.push(1);
            if self.is_irreducible(&c) {
                return Ok(c);
            }
            idx += 1;
        }
        Err(Error::invalid(format!("no irreducible of degree {n}")))
    }
}

/// Evaluates the condenser on packed coefficients of `x`.
pub(crate) fn condense(
    field: &Field,
    x: u64,
    y: u32,
    coeffs: usize,
    blocks: usize,
    h: u64,
    modulus: &[u32],
) -> u64 {
    let s = field.degree();
    let ring = PolyRing { f: field };
    let mask = (1u64 << s) - 1;
    let f: Vec<u32> = (0..coeffs)
        .map(|i| ((x >> (i as u32 * s)) & mask) as u32)
        .collect();
    let mut fi = ring.rem(&f, modulus);
    let mut out = y as u64;
    let mut shift = s;
    for i in 0..blocks {
        if i > 0 {
            fi = ring.powmod(&fi, h, modulus);
        }
        out |= (ring.eval(&fi, y) as u64) << shift;
        shift += s;
    }
    out
}
