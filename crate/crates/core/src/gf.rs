//! GF(q) arithmetic for q = p^r up to 2^16, via log/antilog tables.
//!
//! Field elements are integers 0..q-1. For prime q the value is the residue;
//! for prime powers the base-p digits are the coefficients of a polynomial
//! over GF(p), constant term first. Multiplication uses discrete logs with
//! respect to x modulo a primitive polynomial chosen deterministically (the
//! first primitive one in base-p-encoding order), so tables are reproducible;
//! the chosen polynomial is reported alongside any result that depends on it.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FieldTable {
    q: u32,
    p: u32,
    r: u32,
    /// Coefficients of the modulus polynomial, constant term first, length r+1.
    /// Empty for prime fields (no extension needed).
    poly: Vec<u16>,
    /// antilog[k] = x^k for k in 0..q-1, doubled so products index without mod.
    antilog: Vec<u16>,
    /// log[a] for a in 1..q; log[0] is unused.
    log: Vec<u16>,
}

/// Factor q as p^r with p prime, or fail.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut m = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            p = d;
            while m.is_multiple_of(d) {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // q itself is prime.
        return Some((q, 1));
    }
    if m != 1 {
        return None; // second prime factor
    }
    let mut r = 0u32;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        r += 1;
    }
    (acc == q).then_some((p, r))
}

impl FieldTable {
    pub fn new(q: u32) -> Result<FieldTable> {
        if q > 1 << 16 {
            return Err(Error::Capacity {
                what: "field size",
                needed: q as u128,
                cap: 1 << 16,
            });
        }
        let (p, r) = prime_power(q as u64)
            .ok_or_else(|| Error::parse(format!("{q} is not a prime power")))?;
        let p = p as u32;
        if r == 1 {
            Self::prime_field(q)
        } else {
            Self::extension_field(q, p, r)
        }
    }

    fn prime_field(p: u32) -> Result<FieldTable> {
        // Smallest primitive root mod p.
        let g = (1..p)
            .find(|&g| multiplicative_order(g as u64, p as u64) == (p - 1) as u64)
            .ok_or_else(|| Error::parse(format!("no primitive root mod {p}")))?;
        let mut antilog = Vec::with_capacity(2 * (p as usize - 1));
        let mut log = vec![0u16; p as usize];
        let mut acc = 1u64;
        for k in 0..(p - 1) {
            antilog.push(acc as u16);
            log[acc as usize] = k as u16;
            acc = acc * g as u64 % p as u64;
        }
        antilog.extend_from_within(..);
        let table = FieldTable {
            q: p,
            p,
            r: 1,
            poly: Vec::new(),
            antilog,
            log,
        };
        table.self_check()?;
        Ok(table)
    }

    fn extension_field(q: u32, p: u32, r: u32) -> Result<FieldTable> {
        // Scan monic degree-r polynomials in base-p-encoding order of their
        // lower coefficients and take the first whose root x is primitive.
        // Primitivity implies irreducibility, so no separate test is needed:
        // if the quotient ring had zero divisors, powers of x could not run
        // through q-1 distinct invertible values.
        for enc in 0..q {
            let mut poly: Vec<u16> = Vec::with_capacity(r as usize + 1);
            let mut m = enc;
            for _ in 0..r {
                poly.push((m % p) as u16);
                m /= p;
            }
            poly.push(1); // monic
            if let Some(table) = Self::try_modulus(q, p, r, &poly) {
                table.self_check()?;
                return Ok(table);
            }
        }
        Err(Error::parse(format!("no primitive polynomial found for GF({q})")))
    }

    /// Build tables for x modulo `poly` if x has multiplicative order q-1.
    fn try_modulus(q: u32, p: u32, r: u32, poly: &[u16]) -> Option<FieldTable> {
        let mut antilog = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![0u16; q as usize];
        let mut seen = vec![false; q as usize];
        // current = x^k as digit vector, constant term first.
        let mut current = vec![0u16; r as usize];
        current[0] = 1;
        for k in 0..(q - 1) {
            let enc = encode(&current, p);
            if enc == 0 || seen[enc as usize] {
                return None; // hit zero or a repeat early: not primitive
            }
            seen[enc as usize] = true;
            antilog.push(enc as u16);
            log[enc as usize] = k as u16;
            current = mul_by_x(&current, poly, p, r);
        }
        if encode(&current, p) != 1 {
            return None; // x^(q-1) != 1
        }
        antilog.extend_from_within(..);
        Some(FieldTable {
            q,
            p,
            r,
            poly: poly.to_vec(),
            antilog,
            log,
        })
    }

    /// Verify inverses for every nonzero element, and distributivity
    /// exhaustively for small fields.
    fn self_check(&self) -> Result<()> {
        for a in 1..self.q as u16 {
            let inv = self.inv(a)?;
            if self.mul(a, inv) != 1 {
                return Err(Error::hypothesis(format!(
                    "field table for GF({}) broken: {a} * {inv} != 1",
                    self.q
                )));
            }
        }
        if self.q <= 64 {
            for a in 0..self.q as u16 {
                for b in 0..self.q as u16 {
                    for c in 0..self.q as u16 {
                        let lhs = self.mul(a, self.add(b, c));
                        let rhs = self.add(self.mul(a, b), self.mul(a, c));
                        if lhs != rhs {
                            return Err(Error::hypothesis(format!(
                                "distributivity fails in GF({}) at ({a},{b},{c})",
                                self.q
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    /// Human-readable modulus polynomial, e.g. `x^2 + x + 2` for GF(9).
    pub fn modulus_string(&self) -> String {
        if self.r == 1 {
            return format!("prime field ({})", self.q);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.poly.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.r == 1 {
            ((a as u32 + b as u32) % self.p) as u16
        } else {
            // Digit-wise addition base p, no carries.
            let (mut a, mut b) = (a as u32, b as u32);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..self.r {
                out += (a % self.p + b % self.p) % self.p * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out as u16
        }
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.r == 1 {
            ((self.p - a as u32) % self.p) as u16
        } else {
            let mut a = a as u32;
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..self.r {
                out += (self.p - a % self.p) % self.p * place;
                a /= self.p;
                place *= self.p;
            }
            out as u16
        }
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        // The antilog table is doubled, so the sum of two logs indexes directly.
        self.antilog[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::mismatch("inverse of zero field element"));
        }
        let k = self.log[a as usize] as usize;
        Ok(self.antilog[(self.q as usize - 1 - k) % (self.q as usize - 1)])
    }
}

fn encode(digits: &[u16], p: u32) -> u32 {
    digits
        .iter()
        .rev()
        .fold(0u32, |acc, &d| acc * p + d as u32)
}

/// Multiply a polynomial (degree < r) by x modulo `poly`.
fn mul_by_x(digits: &[u16], poly: &[u16], p: u32, r: u32) -> Vec<u16> {
    let r = r as usize;
    let carry = digits[r - 1] as u32;
    let mut out = vec![0u16; r];
    out[1..r].copy_from_slice(&digits[..r - 1]);
    if carry != 0 {
        // x^r = -(poly[0] + poly[1] x + ... + poly[r-1] x^(r-1))
        for i in 0..r {
            let sub = carry * poly[i] as u32 % p;
            out[i] = ((out[i] as u32 + p - sub) % p) as u16;
        }
    }
    out
}

fn multiplicative_order(g: u64, p: u64) -> u64 {
    let mut acc = g % p;
    let mut k = 1;
    while acc != 1 {
        acc = acc * g % p;
        k += 1;
    }
    k
}
