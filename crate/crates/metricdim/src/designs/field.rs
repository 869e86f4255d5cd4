//! Finite fields GF(q) for prime powers q <= 64.
//!
//! Elements are encoded as integers `0..q`, read base-p as coefficient
//! vectors of polynomial residues modulo a fixed monic irreducible. Addition
//! and multiplication tables are precomputed; at these sizes that is cheaper
//! than any cleverness.

use super::DesignError;

/// A field GF(p^m), q = p^m <= 64.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients `c_0..c_{m-1}` of the monic modulus `x^m + Σ c_i x^i`.
    modulus: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

pub const FIELD_ORDER_LIMIT: u32 = 64;

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut value: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for d in out.iter_mut() {
        *d = value % p;
        value /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Polynomial product modulo the monic `modulus` (degree m), over GF(p).
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len();
    let mut prod = vec![0u32; 2 * m];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce: x^m = -modulus tail.
    for deg in (m..2 * m).rev() {
        let coeff = prod[deg];
        if coeff == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &ci) in modulus.iter().enumerate() {
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + coeff * (p - ci) % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Monic polynomial of degree `deg` from an integer code: the code's base-p
/// digits are the coefficients `c_0..c_{deg-1}`, plus an implicit leading 1.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut poly = digits(code, p, deg);
    poly.push(1);
    poly
}

/// Irreducibility over GF(p) by trial division against every monic divisor
/// of degree 1..=deg/2. Fine at these sizes.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let divisor = monic_from_code(code, d as u32, p);
            if poly_divides(&divisor, poly, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let mut rem: Vec<u32> = poly.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().expect("nonempty");
        if lead != 0 {
            // divisor is monic, so subtracting lead·divisor·x^shift clears
            // the leading coefficient exactly.
            let shift = rem.len() - 1 - dd;
            for (i, &c) in divisor.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + lead * (p - c) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl FiniteField {
    /// Builds GF(q). The modulus is the irreducible with the least integer
    /// code (base-p coefficient encoding, constant term least significant),
    /// so field representations are reproducible.
    pub fn new(q: u32) -> Result<FiniteField, DesignError> {
        if q > FIELD_ORDER_LIMIT {
            return Err(DesignError::FieldOrderTooLarge { q });
        }
        let (p, m) = prime_power(q).ok_or(DesignError::NotPrimePower { q })?;
        let modulus = if m == 1 {
            vec![0]
        } else {
            (0..q)
                .map(|code| monic_from_code(code, m, p))
                .find(|poly| is_irreducible(poly, p))
                .map(|poly| poly[..m as usize].to_vec())
                .expect("an irreducible of every degree exists over GF(p)")
        };

        let modulus_full: Vec<u32> = modulus.clone();
        let mut add_table = vec![0u32; (q * q) as usize];
        let mut mul_table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = digits(a, p, m);
            for b in 0..q {
                let db = digits(b, p, m);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add_table[(a * q + b) as usize] = undigits(&sum, p);
                let prod = if m == 1 {
                    vec![(da[0] * db[0]) % p]
                } else {
                    poly_mul_mod(&da, &db, &modulus_full, p)
                };
                mul_table[(a * q + b) as usize] = undigits(&prod, p);
            }
        }
        let mut inv_table = vec![0u32; q as usize];
        for a in 1..q {
            let inv = (1..q)
                .find(|&b| mul_table[(a * q + b) as usize] == 1)
                .expect("every nonzero element of a field is invertible");
            inv_table[a as usize] = inv;
        }
        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            add_table,
            mul_table,
            inv_table,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus_coefficients(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add_table[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        let da = digits(a, self.p, self.m);
        let neg: Vec<u32> = da.iter().map(|&c| (self.p - c) % self.p).collect();
        undigits(&neg, self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[(a * self.q + b) as usize]
    }

    /// Multiplicative inverse; `None` for 0.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv_table[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// The set of nonzero squares, used by the quadratic character.
    pub fn nonzero_squares(&self) -> Vec<bool> {
        let mut sq = vec![false; self.q as usize];
        for a in 1..self.q {
            sq[self.mul(a, a) as usize] = true;
        }
        sq
    }
}
