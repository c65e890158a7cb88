//! Finite fields `GF(p^s)`.
//!
//! Elements are integers in `[0, q)`; for `s > 1` the base-`p` digits of an
//! element are the coefficients of a polynomial modulo a fixed monic
//! irreducible of degree `s` (lowest digit = constant term). Multiplication
//! uses exp/log tables built from a primitive element.

use crate::error::{ensure, Error, Result};

/// Irreducible moduli for `GF(2^s)`, `s = 2..=16`, as bit masks including
/// the leading term.
pub const BINARY_MODULI: [u32; 15] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003,
    0x1100B,
];

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    s: u32,
    q: u32,
    /// Modulus coefficients, low to high, monic, length `s + 1` (empty for
    /// prime fields).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}
impl Eq for Field {}

/// `(p, s)` with `q = p^s`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut s = 0;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p as u32, s))
}

impl Field {
    /// `GF(q)`; `q` must be a prime power no larger than [`MAX_ORDER`].
    pub fn new(q: u64) -> Result<Self> {
        ensure(q <= MAX_ORDER, || {
            format!("field order {q} exceeds {MAX_ORDER}")
        })?;
        let (p, s) =
            prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let modulus = if s == 1 {
            Vec::new()
        } else if p == 2 {
            let mask = BINARY_MODULI[s as usize - 2];
            (0..=s).map(|i| mask >> i & 1).collect()
        } else {
            smallest_irreducible(p, s)
        };
        let mut f = Field {
            p,
            s,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        f.build_tables();
        Ok(f)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    /// Modulus coefficients, low to high; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.s == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.s {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.s {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = self.log[a as usize] + self.log[b as usize];
        let n = self.q - 1;
        self.exp[(if l >= n { l - n } else { l }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Schoolbook product of two elements as polynomials, before reduction.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p;
        let s = self.s as usize;
        let da = digits(a, p, s);
        let db = digits(b, p, s);
        let mut prod = vec![0u32; 2 * s];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        poly_rem(&mut prod, &self.modulus, p);
        undigits(&prod[..s], p)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let generator = (1..self.q)
            .find(|&g| {
                let (mut x, mut order) = (g, 1usize);
                while x != 1 {
                    x = self.mul_slow(x, g);
                    order += 1;
                }
                order == q - 1
            })
            .expect("every finite field has a primitive element");
        self.exp = vec![0; q - 1];
        self.log = vec![0; q];
        let mut x = 1u32;
        for k in 0..q - 1 {
            self.exp[k] = x;
            self.log[x as usize] = k as u32;
            x = self.mul_slow(x, generator);
        }
    }
}

fn digits(mut a: u32, p: u32, s: usize) -> Vec<u32> {
    (0..s)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Reduces `a` (coefficients low to high) modulo the monic `m`, in place.
fn poly_rem(a: &mut [u32], m: &[u32], p: u32) {
    let dm = m.len() - 1;
    for i in (dm..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dm {
            let sub = (c * m[j]) % p;
            a[i - dm + j] = (a[i - dm + j] + p - sub) % p;
        }
    }
}

/// Smallest monic irreducible of degree `s` over `GF(p)`, ordering
/// candidates by their lower coefficients read as a base-`p` integer.
fn smallest_irreducible(p: u32, s: u32) -> Vec<u32> {
    let s = s as usize;
    let count = (p as u64).pow(s as u32);
    (0..count)
        .map(|low| {
            let mut c = digits(low as u32, p, s);
            c.push(1);
            c
        })
        .find(|c| c[0] != 0 && !has_factor(c, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Whether monic `f` has a monic factor of degree `1..=deg/2`.
fn has_factor(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        for low in 0..(p as u64).pow(k as u32) {
            let mut g = digits(low as u32, p, k);
            g.push(1);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r[..k].iter().all(|&x| x == 0) {
                return true;
            }
        }
    }
    false
}

/// q-ary entropy `h_q(x) = x log_q(q−1) − x log_q x − (1−x) log_q(1−x)`.
pub fn q_ary_entropy(x: f64, q: u64) -> f64 {
    let q = q as f64;
    let lg = |v: f64| if v <= 0.0 { 0.0 } else { v.ln() / q.ln() };
    x * lg(q - 1.0) - x * lg(x) - (1.0 - x) * lg(1.0 - x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Binary moduli are irreducible: no factor of degree ≤ s/2.
    #[test]
    fn binary_moduli_are_irreducible() {
        for (i, &mask) in BINARY_MODULI.iter().enumerate() {
            let s = i + 2;
            let f: Vec<u32> = (0..=s).map(|k| mask >> k & 1).collect();
            assert_eq!(f[s], 1);
            assert!(!has_factor(&f, 2), "s={s}");
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = Field::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.pow(a, q as u64), a, "Fermat q={q} a={a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_up_to_256() {
        for q in 2..=256u64 {
            if prime_power(q).is_none() {
                assert!(Field::new(q).is_err());
                continue;
            }
            let f = Field::new(q).unwrap();
            for a in 0..q as u32 {
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn large_binary_field() {
        let f = Field::new(1 << 16).unwrap();
        assert_eq!(f.mul(0x8000, 2), 0x100B);
        assert!(Field::new(1 << 17).is_err());
    }

    #[test]
    fn entropy_properties() {
        for q in [2u64, 3, 5, 16] {
            let top = 1.0 - 1.0 / q as f64;
            assert!((q_ary_entropy(top, q) - 1.0).abs() < 1e-12);
            let mut prev = 0.0;
            for i in 1..100 {
                let x = top * i as f64 / 100.0;
                let h = q_ary_entropy(x, q);
                assert!(h > prev);
                prev = h;
            }
        }
        assert_eq!(q_ary_entropy(0.0, 2), 0.0);
    }
}
