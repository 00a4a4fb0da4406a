//! Exact arithmetic in GF(p^h).
//!
//! Elements are canonically enumerated: an element is the coefficient vector
//! (c0, .., c_{h-1}) of a polynomial of degree < h (c0 = constant term), and
//! the enumeration order is lexicographic on that vector with c0 compared
//! first. The index of an element is its rank in this order, so 0 has index
//! 0 and 1 has index p^(h-1). This order is part of the plane's canonical
//! indexing contract and must not change.
//!
//! Multiplication uses log/antilog tables for q <= 2^16 and direct
//! polynomial reduction above (the GF(q^3) towers behind Singer cycles are
//! the only consumers of the slow path).

use thiserror::Error;

/// Largest supported field order. The Singer cycle for q = 121 needs
/// GF(121^3) ~ 1.77e6, which is the intended ceiling.
pub const MAX_ORDER: u64 = 2_100_000;

const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("modulus is not monic of the requested degree")]
    DegreeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("field order is not the square of the subfield order")]
    NotASquareOrder,
    #[error("field order {0} exceeds the supported ceiling")]
    OrderTooLarge(u64),
}

/// A field element, identified by its index in the canonical enumeration of
/// its field. `Fe` does not carry a field reference; all operations go
/// through the owning [`Field`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
}

/// GF(p^h) with a fixed monic irreducible modulus over GF(p).
#[derive(Clone)]
pub struct Field {
    p: u64,
    h: u32,
    q: u64,
    modulus: Vec<u64>,
    place: Vec<u64>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GF({}^{} = {}, modulus {:?})",
            self.p, self.h, self.q, self.modulus
        )
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over GF(p), used for modulus validation and the
// slow multiplication path. Coefficients ascending, no trailing zeros.
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    ptrim(&mut out);
    out
}

fn prem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert!(*m.last().unwrap() == 1, "divisor must be monic");
    let mut r = a.to_vec();
    while r.len() >= m.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - m.len();
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let sub = lead * mj % p;
                let idx = shift + j;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        ptrim(&mut r);
        if r.len() < m.len() {
            break;
        }
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        // Make b monic before taking a remainder.
        let inv = mod_inverse(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = prem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) works.
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// x^(p^k) mod f, by k successive p-th powers.
fn frobenius_power(f: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut cur = vec![0, 1]; // x
    cur = prem(&cur, f, p);
    for _ in 0..k {
        cur = ppowmod(&cur, p, f, p);
    }
    cur
}

fn ppowmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(&pmul(&acc, &b, p), f, p);
        }
        b = prem(&pmul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Rabin's criterion: f (monic, degree h) is irreducible over GF(p) iff
/// x^(p^h) = x mod f and gcd(x^(p^(h/r)) - x, f) = 1 for each prime r | h.
fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let h = (f.len() - 1) as u32;
    if h == 0 {
        return false;
    }
    if h == 1 {
        return true;
    }
    let xq = frobenius_power(f, p, h);
    let x = prem(&[0, 1], f, p);
    let mut diff: Vec<u64> = vec![0; xq.len().max(x.len())];
    for (i, &c) in xq.iter().enumerate() {
        diff[i] = c;
    }
    for (i, &c) in x.iter().enumerate() {
        diff[i] = (diff[i] + p - c) % p;
    }
    ptrim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for r in prime_factors(h as u64) {
        let sub = frobenius_power(f, p, h / r as u32);
        let mut d: Vec<u64> = vec![0; sub.len().max(2)];
        for (i, &c) in sub.iter().enumerate() {
            d[i] = c;
        }
        d[1] = (d[1] + p - 1) % p;
        ptrim(&mut d);
        let g = pgcd(f, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree h over GF(p),
/// comparing coefficient vectors (c0, .., c_{h-1}) with c0 first.
fn default_modulus(p: u64, h: u32) -> Vec<u64> {
    if h == 1 {
        return vec![0, 1];
    }
    let total = (p as u128).pow(h);
    let mut digits = vec![0u64; h as usize];
    for _ in 0..total {
        let mut f: Vec<u64> = digits.clone();
        f.push(1);
        if poly_irreducible(&f, p) {
            return f;
        }
        // increment (c0,..,c_{h-1}) in lex order: last digit fastest
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl Field {
    /// Build GF(p^h). When `modulus` is None, the lexicographically smallest
    /// monic irreducible of degree h over GF(p) is chosen (constant term
    /// first), which makes construction deterministic.
    pub fn new(p: u64, h: u32, modulus: Option<Vec<u64>>) -> Result<Field, GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NonPrime(p));
        }
        if h == 0 {
            return Err(GaloisError::DegreeMismatch);
        }
        let q = (p as u128).pow(h);
        if q > MAX_ORDER as u128 {
            return Err(GaloisError::OrderTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let q = q as u64;
        let modulus = match modulus {
            Some(m) => {
                let mut m = m;
                for c in &mut m {
                    *c %= p;
                }
                if m.len() != h as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(GaloisError::DegreeMismatch);
                }
                if !poly_irreducible(&m, p) {
                    return Err(GaloisError::ReducibleModulus);
                }
                m
            }
            None => default_modulus(p, h),
        };
        let mut place = vec![1u64; h as usize];
        for i in (0..h as usize - 1).rev() {
            place[i] = place[i + 1] * p;
        }
        let mut field = Field {
            p,
            h,
            q,
            modulus,
            place,
            log: Vec::new(),
            exp: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(self.place[0] as u32)
    }

    /// Element with coefficient vector `coeffs` (constant term first,
    /// residues taken mod p; at most h entries).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        debug_assert!(coeffs.len() <= self.h as usize);
        let mut idx = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            idx += (c % self.p) * self.place[i];
        }
        Fe(idx as u32)
    }

    /// Image of the residue class `c mod p` under the prime subfield.
    pub fn from_prime(&self, c: u64) -> Fe {
        Fe(((c % self.p) * self.place[0]) as u32)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut rest = a.0 as u64;
        let mut out = vec![0u64; self.h as usize];
        for i in 0..self.h as usize {
            out[i] = rest / self.place[i];
            rest %= self.place[i];
        }
        out
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let (mut ra, mut rb) = (a.0 as u64, b.0 as u64);
        let mut idx = 0u64;
        for &pl in &self.place {
            let (da, db) = (ra / pl, rb / pl);
            ra %= pl;
            rb %= pl;
            idx += (da + db) % self.p * pl;
        }
        Fe(idx as u32)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let mut ra = a.0 as u64;
        let mut idx = 0u64;
        for &pl in &self.place {
            let da = ra / pl;
            ra %= pl;
            idx += (self.p - da) % self.p * pl;
        }
        Fe(idx as u32)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if !self.log.is_empty() {
            let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
            return Fe(self.exp[s as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let h = self.h as usize;
        let mut prod = vec![0u64; 2 * h - 1];
        for i in 0..h {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..h {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % self.p;
            }
        }
        // reduce, using x^h = -(m0 + m1 x + .. + m_{h-1} x^{h-1})
        for i in (h..2 * h - 1).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for j in 0..h {
                    let sub = c * self.modulus[j] % self.p;
                    prod[i - h + j] = (prod[i - h + j] + self.p - sub) % self.p;
                }
            }
        }
        self.from_coeffs(&prod[..h])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GaloisError> {
        if a.0 == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        if !self.log.is_empty() {
            let l = self.log[a.0 as usize] as u64;
            return Ok(Fe(self.exp[(self.q - 1 - l) as usize]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { Fe(0) };
        }
        if !self.log.is_empty() {
            let l = self.log[a.0 as usize] as u128 * e as u128 % (self.q - 1) as u128;
            return Fe(self.exp[l as usize]);
        }
        let mut acc = self.one();
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^(p^k), the k-th Frobenius power.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        if a.0 == 0 || self.q == 2 {
            return a;
        }
        // q-1 is coprime to p, so p^k mod (q-1) is a nonzero valid exponent
        let e = mod_pow(self.p, k as u64, self.q - 1);
        self.pow(a, e)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        debug_assert!(a.0 != 0);
        let mut ord = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// First element in canonical enumeration order with multiplicative
    /// order q-1.
    pub fn primitive_element(&self) -> Fe {
        for i in 1..self.q {
            let a = Fe(i as u32);
            if self.order(a) == self.q - 1 {
                return a;
            }
        }
        unreachable!("GF(q)* is cyclic")
    }

    fn build_tables(&mut self) {
        let g = {
            // primitive element via the slow path (tables are not built yet)
            let mut found = None;
            for i in 1..self.q {
                let a = Fe(i as u32);
                let mut ord_ok = true;
                for r in prime_factors(self.q - 1) {
                    if self.pow(a, (self.q - 1) / r) == self.one() {
                        ord_ok = false;
                        break;
                    }
                }
                if ord_ok {
                    found = Some(a);
                    break;
                }
            }
            found.expect("GF(q)* is cyclic")
        };
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = self.one();
        for k in 0..n {
            exp[k] = cur.0;
            exp[k + n] = cur.0;
            log[cur.0 as usize] = k as u32;
            cur = self.mul_slow(cur, g);
        }
        debug_assert_eq!(cur, self.one());
        self.exp = exp;
        self.log = log;
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u32).map(Fe)
    }

    /// GF(q) for a prime power q, with the default modulus.
    pub fn from_order(q: u64) -> Result<Field, GaloisError> {
        if q < 2 {
            return Err(GaloisError::NonPrime(q));
        }
        let p = prime_factors(q);
        if p.len() != 1 {
            return Err(GaloisError::NonPrime(q));
        }
        let p = p[0];
        let mut h = 0u32;
        let mut rest = q;
        while rest > 1 {
            rest /= p;
            h += 1;
        }
        if p.pow(h) != q {
            return Err(GaloisError::NonPrime(q));
        }
        Field::new(p, h, None)
    }
}

/// Injective homomorphism GF(r) -> GF(r^2), tabulated on all r elements.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    pub image: Vec<Fe>,
}

/// Embedding of `sub` (order r) into `field` (order r^2): the generator of
/// `sub` is sent to the smallest root of `sub`'s modulus in `field`.
pub fn subfield_embedding(field: &Field, sub: &Field) -> Result<SubfieldEmbedding, GaloisError> {
    if field.p != sub.p || field.h != 2 * sub.h {
        return Err(GaloisError::NotASquareOrder);
    }
    let root = field
        .elements()
        .find(|&rho| {
            let mut acc = Fe(0);
            let mut pw = field.one();
            for &c in &sub.modulus {
                acc = field.add(acc, field.mul(field.from_prime(c), pw));
                pw = field.mul(pw, rho);
            }
            acc == Fe(0)
        })
        .expect("the modulus of a subfield splits in the extension");
    let mut image = Vec::with_capacity(sub.q as usize);
    for a in sub.elements() {
        let coeffs = sub.coeffs(a);
        let mut acc = Fe(0);
        let mut pw = field.one();
        for &c in &coeffs {
            acc = field.add(acc, field.mul(field.from_prime(c), pw));
            pw = field.mul(pw, root);
        }
        image.push(acc);
    }
    Ok(SubfieldEmbedding { image })
}

// ---------------------------------------------------------------------------
// Cubic extension GF(q^3) over GF(q), for Singer cycles. Elements are coeff
// triples over the base field (constant term first).
// ---------------------------------------------------------------------------

/// An element of a cubic extension: c0 + c1 t + c2 t^2 over the base field.
pub type Xe = [Fe; 3];

/// GF(q^3) as GF(q)[t]/(t^3 + m2 t^2 + m1 t + m0).
pub struct CubicExt<'a> {
    base: &'a Field,
    /// constant-first coefficients of the monic modulus; modulus[3] = 1
    modulus: [Fe; 4],
}

impl<'a> CubicExt<'a> {
    /// Extension over the lexicographically smallest monic irreducible cubic
    /// (a cubic over a field is irreducible iff it has no roots).
    pub fn new(base: &'a Field) -> CubicExt<'a> {
        let q = base.q();
        for c0 in 0..q as u32 {
            for c1 in 0..q as u32 {
                for c2 in 0..q as u32 {
                    let m = [Fe(c0), Fe(c1), Fe(c2), base.one()];
                    let has_root = base.elements().any(|x| {
                        // Horner: ((x + m2) x + m1) x + m0
                        let mut acc = base.add(x, m[2]);
                        acc = base.add(base.mul(acc, x), m[1]);
                        acc = base.add(base.mul(acc, x), m[0]);
                        acc == Fe(0)
                    });
                    if !has_root {
                        return CubicExt { base, modulus: m };
                    }
                }
            }
        }
        unreachable!("irreducible cubics exist over every finite field")
    }

    pub fn base(&self) -> &Field {
        self.base
    }

    pub fn order(&self) -> u64 {
        let q = self.base.q();
        q * q * q
    }

    pub fn zero(&self) -> Xe {
        [Fe(0); 3]
    }

    pub fn one(&self) -> Xe {
        [self.base.one(), Fe(0), Fe(0)]
    }

    pub fn is_zero(&self, a: &Xe) -> bool {
        a.iter().all(|c| c.0 == 0)
    }

    pub fn add(&self, a: &Xe, b: &Xe) -> Xe {
        [
            self.base.add(a[0], b[0]),
            self.base.add(a[1], b[1]),
            self.base.add(a[2], b[2]),
        ]
    }

    pub fn mul(&self, a: &Xe, b: &Xe) -> Xe {
        let f = self.base;
        let mut prod = [Fe(0); 5];
        for i in 0..3 {
            if a[i].0 == 0 {
                continue;
            }
            for j in 0..3 {
                prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
            }
        }
        // reduce with t^3 = -(m0 + m1 t + m2 t^2)
        for i in (3..5).rev() {
            let c = prod[i];
            if c.0 != 0 {
                prod[i] = Fe(0);
                for j in 0..3 {
                    prod[i - 3 + j] = f.sub(prod[i - 3 + j], f.mul(c, self.modulus[j]));
                }
            }
        }
        [prod[0], prod[1], prod[2]]
    }

    pub fn pow(&self, a: &Xe, mut e: u64) -> Xe {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// First element in lexicographic coefficient order with multiplicative
    /// order q^3 - 1.
    pub fn primitive_element(&self) -> Xe {
        let n = self.order() - 1;
        let factors = prime_factors(n);
        let q = self.base.q() as u32;
        for i0 in 0..q {
            for i1 in 0..q {
                for i2 in 0..q {
                    let a = [Fe(i0), Fe(i1), Fe(i2)];
                    if self.is_zero(&a) {
                        continue;
                    }
                    if factors.iter().all(|&r| self.pow(&a, n / r) != self.one()) {
                        return a;
                    }
                }
            }
        }
        unreachable!("GF(q^3)* is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn gf4_default_modulus_is_the_unique_quadratic() {
        let f = Field::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]); // x^2 + x + 1
    }

    #[test]
    fn gf4_x_squared_is_x_plus_one() {
        let f = Field::new(2, 2, None).unwrap();
        let x = f.from_coeffs(&[0, 1]);
        let x1 = f.from_coeffs(&[1, 1]);
        assert_eq!(f.mul(x, x), x1);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            Field::new(2, 2, Some(vec![1, 0, 1])).unwrap_err(),
            GaloisError::ReducibleModulus
        );
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(
            Field::new(6, 1, None).unwrap_err(),
            GaloisError::NonPrime(6)
        );
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert_eq!(
            Field::new(3, 2, Some(vec![1, 1])).unwrap_err(),
            GaloisError::DegreeMismatch
        );
        // not monic
        assert_eq!(
            Field::new(3, 2, Some(vec![1, 0, 2])).unwrap_err(),
            GaloisError::DegreeMismatch
        );
        assert_eq!(
            Field::new(5, 0, None).unwrap_err(),
            GaloisError::DegreeMismatch
        );
    }

    #[test]
    fn gf7_inverse_of_three_is_five() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(f.inv(Fe(3)).unwrap(), Fe(5));
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        assert_eq!(f.inv(Fe(0)).unwrap_err(), GaloisError::DivisionByZero);
    }

    #[test]
    fn primitive_elements() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.primitive_element(), f2.one());

        let f7 = Field::new(7, 1, None).unwrap();
        let g = f7.primitive_element();
        assert_eq!(g, Fe(3));
        // oracle: list the powers of 3 mod 7
        let mut seen = std::collections::BTreeSet::new();
        let mut cur = f7.one();
        for _ in 0..6 {
            cur = f7.mul(cur, g);
            seen.insert(cur);
        }
        assert_eq!(seen.len(), 6);

        // GF(4): x (index 1) generates the order-3 group
        let f4 = Field::new(2, 2, None).unwrap();
        let g4 = f4.primitive_element();
        assert_eq!(g4, f4.from_coeffs(&[0, 1]));
        assert_eq!(f4.order(g4), 3);
    }

    #[test]
    fn primitive_element_order_is_q_minus_one_everywhere() {
        for &(p, h) in &[
            (2, 1),
            (2, 2),
            (3, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (2, 4),
            (5, 2),
            (3, 3),
        ] {
            let f = Field::new(p, h, None).unwrap();
            assert_eq!(f.order(f.primitive_element()), f.q() - 1, "GF({}^{})", p, h);
        }
    }

    fn axiom_check(f: &Field, triples: &[(Fe, Fe, Fe)]) {
        for &(a, b, c) in triples {
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), Fe(0));
            assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a.0 != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.mul(a, Fe(0)), Fe(0));
        }
    }

    #[test]
    fn field_axioms_all_orders_up_to_128() {
        let orders: &[(u64, u32)] = &[
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (13, 1),
            (2, 4),
            (17, 1),
            (19, 1),
            (23, 1),
            (5, 2),
            (3, 3),
            (29, 1),
            (31, 1),
            (2, 5),
            (37, 1),
            (41, 1),
            (43, 1),
            (47, 1),
            (7, 2),
            (53, 1),
            (59, 1),
            (61, 1),
            (2, 6),
            (67, 1),
            (71, 1),
            (73, 1),
            (79, 1),
            (3, 4),
            (83, 1),
            (89, 1),
            (97, 1),
            (101, 1),
            (103, 1),
            (107, 1),
            (109, 1),
            (113, 1),
            (11, 2),
            (5, 3),
            (127, 1),
            (2, 7),
        ];
        let mut rng = SplitMix64::new(1);
        for &(p, h) in orders {
            let f = Field::new(p, h, None).unwrap();
            let q = f.q();
            if q <= 16 {
                let all: Vec<Fe> = f.elements().collect();
                let mut triples = Vec::new();
                for &a in &all {
                    for &b in &all {
                        for &c in &all {
                            triples.push((a, b, c));
                        }
                    }
                }
                axiom_check(&f, &triples);
            } else {
                let triples: Vec<(Fe, Fe, Fe)> = (0..10_000)
                    .map(|_| {
                        (
                            Fe(rng.below(q) as u32),
                            Fe(rng.below(q) as u32),
                            Fe(rng.below(q) as u32),
                        )
                    })
                    .collect();
                axiom_check(&f, &triples);
            }
        }
    }

    #[test]
    fn coeff_roundtrip_and_enumeration_order() {
        let f = Field::new(3, 2, None).unwrap();
        // lexicographic on (c0, c1) with c0 first: index = 3*c0 + c1
        assert_eq!(f.from_coeffs(&[0, 0]), Fe(0));
        assert_eq!(f.from_coeffs(&[0, 1]), Fe(1));
        assert_eq!(f.from_coeffs(&[1, 0]), Fe(3));
        assert_eq!(f.one(), Fe(3));
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        }
    }

    #[test]
    fn gf9_contains_gf3_with_two_mapping_to_minus_one() {
        let f9 = Field::new(3, 2, None).unwrap();
        let f3 = Field::new(3, 1, None).unwrap();
        let emb = subfield_embedding(&f9, &f3).unwrap();
        assert_eq!(emb.image[0], Fe(0));
        assert_eq!(emb.image[1], f9.one());
        assert_eq!(emb.image[2], f9.neg(f9.one()));
        // exhaustive homomorphism check on all 9 pairs
        for a in f3.elements() {
            for b in f3.elements() {
                assert_eq!(
                    emb.image[f3.mul(a, b).0 as usize],
                    f9.mul(emb.image[a.0 as usize], emb.image[b.0 as usize])
                );
                assert_eq!(
                    emb.image[f3.add(a, b).0 as usize],
                    f9.add(emb.image[a.0 as usize], emb.image[b.0 as usize])
                );
            }
        }
    }

    #[test]
    fn gf4_contains_gf2() {
        let f4 = Field::new(2, 2, None).unwrap();
        let f2 = Field::new(2, 1, None).unwrap();
        let emb = subfield_embedding(&f4, &f2).unwrap();
        assert_eq!(emb.image, vec![Fe(0), f4.one()]);
    }

    #[test]
    fn embedding_requires_square_order() {
        let f8 = Field::new(2, 3, None).unwrap();
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(
            subfield_embedding(&f8, &f2).unwrap_err(),
            GaloisError::NotASquareOrder
        );
    }

    #[test]
    fn embedding_is_injective_and_multiplicative_gf16_gf4() {
        let f16 = Field::new(2, 4, None).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let emb = subfield_embedding(&f16, &f4).unwrap();
        let set: std::collections::BTreeSet<Fe> = emb.image.iter().copied().collect();
        assert_eq!(set.len(), 4);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(
                    emb.image[f4.mul(a, b).0 as usize],
                    f16.mul(emb.image[a.0 as usize], emb.image[b.0 as usize])
                );
            }
        }
    }

    #[test]
    fn cubic_extension_has_primitive_element() {
        for &(p, h) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let base = Field::new(p, h, None).unwrap();
            let ext = CubicExt::new(&base);
            let g = ext.primitive_element();
            let n = ext.order() - 1;
            assert_eq!(ext.pow(&g, n), ext.one());
            for r in prime_factors(n) {
                assert_ne!(ext.pow(&g, n / r), ext.one());
            }
        }
    }

    #[test]
    fn slow_path_matches_tables() {
        // GF(121) has tables; recompute a few products the slow way
        let f = Field::new(11, 2, None).unwrap();
        let mut rng = SplitMix64::new(9);
        for _ in 0..500 {
            let a = Fe(rng.below(121) as u32);
            let b = Fe(rng.below(121) as u32);
            assert_eq!(f.mul(a, b), f.mul_slow(a, b));
        }
    }
}
