//! Exact arithmetic in GF(p^e) for orders up to a configured cap.
//!
//! Elements are encoded as integers 0..q-1: the encoding is the base-p digit
//! expansion of the residue polynomial (low degree first), so 0 is the
//! additive identity and 1 the multiplicative identity. The modulus is the
//! lexicographically smallest monic irreducible polynomial of degree e over
//! GF(p), coefficients compared low-degree-first, which makes encodings
//! reproducible across runs without external tables.
//!
//! Multiplication and inversion run on exp/log tables built at construction;
//! for small orders full add/mul tables are also built so the enumeration
//! engine can index them directly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order `make_field` accepts by default.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

/// Orders up to this limit get dense q*q add and mul tables.
const TABLE_LIMIT: u64 = 1024;

/// An element of some GF(q), encoded as an integer in [0, q).
///
/// The owning field is carried by context; mixing encodings across fields is
/// a caller error that the arithmetic cannot detect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn raw(v: u16) -> FieldElement {
        FieldElement(v)
    }
}

/// Shared handle to an immutable field description.
pub type Field = Arc<FieldSpec>;

/// A concrete GF(p^e) with all arithmetic tables precomputed.
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, coefficients low degree first, length e+1.
    modulus: Vec<u16>,
    /// Powers of a fixed generator, length 2(q-1) to absorb index sums.
    exp: Vec<u16>,
    /// Discrete logs; log[0] is a sentinel and never read.
    log: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Construct GF(p^e) with the default order cap.
pub fn make_field(p: u32, e: u32) -> Result<Field> {
    make_field_capped(p, e, DEFAULT_ORDER_CAP)
}

/// Construct GF(p^e) with an explicit order cap (clamped to 2^16 so u16
/// encodings stay valid).
pub fn make_field_capped(p: u32, e: u32, cap: u64) -> Result<Field> {
    let cap = cap.min(DEFAULT_ORDER_CAP);
    if !is_prime(p as u64) {
        return Err(Error::NonPrimeCharacteristic(p as u64));
    }
    if e < 1 {
        return Err(Error::DomainViolation("extension degree must be >= 1".into()));
    }
    let mut q: u64 = 1;
    for _ in 0..e {
        q *= p as u64;
        if q > cap {
            return Err(Error::OrderExceedsCap { p: p as u64, e, cap });
        }
    }
    Ok(Arc::new(FieldSpec::build(p, e, q as u32)))
}

/// Construct GF(q), factoring q as p^e. Errors if q is not a prime power.
pub fn field_from_order(q: u64) -> Result<Field> {
    if q < 2 {
        return Err(Error::DomainViolation(format!("{q} is not a prime power")));
    }
    let mut n = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        p = n;
        n = 1;
    }
    if n != 1 {
        return Err(Error::DomainViolation(format!("{q} is not a prime power")));
    }
    let mut e = 0u32;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        e += 1;
    }
    make_field(p as u32, e)
}

impl FieldSpec {
    fn build(p: u32, e: u32, q: u32) -> FieldSpec {
        let modulus = smallest_irreducible(p, e);
        let ctx = PolyCtx { p, e, modulus: &modulus };

        // exp/log over a generator of the multiplicative group.
        let g = ctx.find_generator(q);
        let qm1 = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * qm1.max(1)];
        let mut log = vec![0u16; q as usize];
        let mut acc: u16 = 1;
        for i in 0..qm1 {
            exp[i] = acc;
            log[acc as usize] = i as u16;
            acc = ctx.mul_enc(acc, g);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
        for i in qm1..2 * qm1 {
            exp[i] = exp[i - qm1];
        }
        if qm1 == 0 {
            // q = 1 never happens (p prime, e >= 1), placate the empty case anyway
            exp = vec![1, 1];
        }

        let mut neg_t = vec![0u16; q as usize];
        for a in 0..q as u16 {
            neg_t[a as usize] = ctx.neg_enc(a);
        }
        let mut inv_t = vec![0u16; q as usize];
        for a in 1..q as usize {
            inv_t[a] = exp[qm1 - log[a] as usize];
        }

        let (add_t, mul_t) = if (q as u64) <= TABLE_LIMIT {
            let n = q as usize;
            let mut add_t = vec![0u16; n * n];
            let mut mul_t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    add_t[a * n + b] = ctx.add_enc(a as u16, b as u16);
                    mul_t[a * n + b] = ctx.mul_enc(a as u16, b as u16);
                }
            }
            (add_t, mul_t)
        } else {
            (Vec::new(), Vec::new())
        };

        FieldSpec { p, e, q, modulus, exp, log, neg_t, inv_t, add_t, mul_t }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field order q = p^e.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, length e+1, monic.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Validated element constructor from an integer encoding.
    pub fn element(&self, v: u64) -> Result<FieldElement> {
        if v < self.q as u64 {
            Ok(FieldElement(v as u16))
        } else {
            Err(Error::DomainViolation(format!(
                "encoding {v} out of range for field of order {}",
                self.q
            )))
        }
    }

    /// All q elements in encoding order 0, 1, ..., q-1.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q as u16).map(FieldElement).collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.add_t.is_empty() {
            FieldElement(self.add_t[a.0 as usize * self.q as usize + b.0 as usize])
        } else {
            FieldElement(digit_add(a.0, b.0, self.p, self.e))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_t[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.mul_t.is_empty() {
            return FieldElement(self.mul_t[a.0 as usize * self.q as usize + b.0 as usize]);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    /// Multiplicative inverse; the only fallible arithmetic op.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv_t[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k for nonnegative k. Conventions: pow(a, 0) = 1 for every a,
    /// including a = 0, so monomial evaluation treats x^0 as the constant 1.
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let qm1 = (self.q - 1) as u64;
        let k = k % qm1;
        let idx = (self.log[a.0 as usize] as u64 * k) % qm1;
        FieldElement(self.exp[idx as usize])
    }

    /// The Frobenius endomorphism a -> a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Scale so the first nonzero entry becomes 1. Returns the pivot index,
    /// or None when every entry is zero.
    pub fn normalize(&self, coords: &mut [FieldElement]) -> Option<usize> {
        let pivot = coords.iter().position(|c| !c.is_zero())?;
        if coords[pivot] != FieldElement::ONE {
            let s = self.inv(coords[pivot]).expect("pivot is nonzero");
            for c in coords.iter_mut() {
                *c = self.mul(*c, s);
            }
        }
        Some(pivot)
    }

    /// Dense add table (q*q, row-major), present when q <= 1024.
    pub(crate) fn add_table(&self) -> &[u16] {
        &self.add_t
    }

    pub(crate) fn has_dense_tables(&self) -> bool {
        !self.add_t.is_empty()
    }
}

/// Digitwise base-p addition of two encodings.
fn digit_add(a: u16, b: u16, p: u32, e: u32) -> u16 {
    let (mut a, mut b) = (a as u32, b as u32);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..e {
        let s = (a % p + b % p) % p;
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out as u16
}

/// Polynomial arithmetic on encodings, used only during table construction.
struct PolyCtx<'a> {
    p: u32,
    e: u32,
    modulus: &'a [u16],
}

impl PolyCtx<'_> {
    fn digits(&self, enc: u16) -> Vec<u32> {
        let mut v = enc as u32;
        let mut out = vec![0u32; self.e as usize];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u16 {
        let mut out = 0u32;
        for &d in digits.iter().rev() {
            out = out * self.p + d;
        }
        out as u16
    }

    fn add_enc(&self, a: u16, b: u16) -> u16 {
        digit_add(a, b, self.p, self.e)
    }

    fn neg_enc(&self, a: u16) -> u16 {
        let da = self.digits(a);
        let out: Vec<u32> = da.iter().map(|&d| (self.p - d) % self.p).collect();
        self.encode(&out)
    }

    fn mul_enc(&self, a: u16, b: u16) -> u16 {
        let da = self.digits(a);
        let db = self.digits(b);
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        // reduce modulo the monic modulus: t^e = -(low part)
        for i in (e..2 * e).rev() {
            let c = prod[i] % self.p as u64;
            if c != 0 {
                prod[i] = 0;
                for j in 0..e {
                    let m = self.modulus[j] as u64;
                    if m != 0 {
                        // t^i = t^{i-e} * t^e = t^{i-e} * (-modulus_low)
                        prod[i - e + j] += c * (self.p as u64 - m);
                    }
                }
            } else {
                prod[i] = 0;
            }
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&x| (x % self.p as u64) as u32).collect();
        self.encode(&digits)
    }

    fn pow_enc(&self, a: u16, mut k: u64) -> u16 {
        let mut base = a;
        let mut out: u16 = 1;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul_enc(out, base);
            }
            base = self.mul_enc(base, base);
            k >>= 1;
        }
        out
    }

    fn find_generator(&self, q: u32) -> u16 {
        if q == 2 {
            return 1;
        }
        let qm1 = (q - 1) as u64;
        let primes = prime_factors(qm1);
        'cand: for g in 2..q {
            for &r in &primes {
                if self.pow_enc(g as u16, qm1 / r) == 1 {
                    continue 'cand;
                }
            }
            return g as u16;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree e
/// over GF(p), comparing coefficient tuples low-degree-first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u16> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for val in 0..total {
        // val encodes (c_0, ..., c_{e-1}) with c_0 as the most significant
        // comparison digit, so ascending val is ascending lex order.
        let mut coeffs = vec![0u16; e + 1];
        let mut v = val;
        for i in (0..e).rev() {
            coeffs[i] = (v % p as u64) as u16;
            v /= p as u64;
        }
        coeffs[e] = 1;
        if poly_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)");
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_irreducible(f: &[u16], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for val in 0..count {
            let mut g = vec![0u16; d + 1];
            let mut v = val;
            for c in g.iter_mut().take(d) {
                *c = (v % p as u64) as u16;
                v /= p as u64;
            }
            g[d] = 1;
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// True when g (monic) divides f exactly over GF(p).
fn poly_rem_is_zero(f: &[u16], g: &[u16], p: u32) -> bool {
    let p = p as i64;
    let mut r: Vec<i64> = f.iter().map(|&c| c as i64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for i in 0..=dg {
                let idx = shift + i;
                r[idx] = ((r[idx] - lead * g[i] as i64) % p + p) % p;
            }
        }
        r.pop();
        while r.len() > dg && *r.last().unwrap() % p == 0 {
            // keep popping only the guaranteed-zero leading slot
            break;
        }
    }
    r.iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn fe(v: u16) -> FieldElement {
        FieldElement::raw(v)
    }

    #[test]
    fn gf4_modulus_is_t2_plus_t_plus_1() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
    }

    #[test]
    fn gf9_modulus_is_t2_plus_1() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf8_modulus_is_first_irreducible_in_low_degree_first_order() {
        // candidates (c0,c1,c2): (1,0,1) -> 1 + t^2 + t^3 is the first hit
        let f = make_field(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn prime_field_uses_identity_reduction() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        for a in 0..3u16 {
            for b in 0..3u16 {
                assert_eq!(f.add(fe(a), fe(b)).value(), (a + b) % 3);
                assert_eq!(f.mul(fe(a), fe(b)).value(), (a * b) % 3);
            }
        }
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert_eq!(make_field(1, 1).unwrap_err(), Error::NonPrimeCharacteristic(1));
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(make_field(2, 17).unwrap_err(), Error::OrderExceedsCap { .. }));
        assert!(make_field(2, 16).is_ok());
    }

    #[test]
    fn gf4_omega_arithmetic() {
        let f = make_field(2, 2).unwrap();
        let omega = fe(2); // class of t
        let omega1 = fe(3); // t + 1
        assert_eq!(f.mul(omega, omega1), FieldElement::ONE);
        assert_eq!(f.pow(omega, 3), FieldElement::ONE);
        assert_eq!(f.pow(omega, 2), omega1); // t^2 = t + 1
    }

    #[test]
    fn gf5_inverse() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
        assert_eq!(f.inv(fe(0)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn elements_enumeration() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.elements(), vec![fe(0), fe(1)]);

        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.elements().len(), 4);

        let f9 = make_field(3, 2).unwrap();
        let units = f9.elements().iter().filter(|a| f9.inv(**a).is_ok()).count();
        assert_eq!(units, 8);
    }

    #[test]
    fn pow_conventions() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 0), FieldElement::ONE);
            assert_eq!(f.pow(a, 1), a);
        }
        assert_eq!(f.pow(fe(0), 5), FieldElement::ZERO);
    }

    fn axiom_fields() -> Vec<Field> {
        [(2u32, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)]
            .iter()
            .map(|&(p, e)| make_field(p, e).unwrap())
            .collect()
    }

    #[test]
    fn field_axioms_exhaustive_pairs() {
        for f in axiom_fields() {
            let els = f.elements();
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn field_axioms_triples() {
        for f in axiom_fields() {
            let els = f.elements();
            let q = els.len();
            let check = |a: FieldElement, b: FieldElement, c: FieldElement| {
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            };
            if q <= 16 {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            check(a, b, c);
                        }
                    }
                }
            } else {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0DE);
                for _ in 0..100_000 {
                    let a = els[rng.gen_range(0..q)];
                    let b = els[rng.gen_range(0..q)];
                    let c = els[rng.gen_range(0..q)];
                    check(a, b, c);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in axiom_fields() {
            let els = f.elements();
            for &a in &els {
                for &b in &els {
                    assert_eq!(
                        f.frobenius(f.add(a, b)),
                        f.add(f.frobenius(a), f.frobenius(b))
                    );
                }
            }
        }
    }

    #[test]
    fn norm_lands_in_subfield_for_square_orders() {
        for q in [4u32, 9, 16, 25] {
            let f = field_from_order(q as u64).unwrap();
            let r = (q as f64).sqrt() as u64; // q is a perfect square here
            for a in f.elements() {
                let n = f.pow(a, r + 1);
                // fixed by the subfield's Frobenius x -> x^r
                assert_eq!(f.pow(n, r), n, "norm of {:?} not in GF({r}) inside GF({q})", a);
            }
        }
    }

    #[test]
    fn large_field_without_dense_tables() {
        let f = make_field(2, 11).unwrap(); // q = 2048 > table limit
        assert!(!f.has_dense_tables());
        let els = f.elements();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20_000 {
            let a = els[rng.gen_range(0..els.len())];
            let b = els[rng.gen_range(0..els.len())];
            let c = els[rng.gen_range(0..els.len())];
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn field_from_order_factors_prime_powers() {
        let f = field_from_order(27).unwrap();
        assert_eq!((f.p(), f.e()), (3, 3));
        assert!(field_from_order(12).is_err());
        assert!(field_from_order(1).is_err());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = make_field(3, 3).unwrap();
        let b = make_field(3, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn normalize_scales_first_nonzero_to_one() {
        let f = make_field(5, 1).unwrap();
        let mut v = [fe(0), fe(3), fe(4)];
        let pivot = f.normalize(&mut v).unwrap();
        assert_eq!(pivot, 1);
        assert_eq!(v[1], FieldElement::ONE);
        assert_eq!(v[2], fe(3)); // 4 * inv(3) = 4 * 2 = 8 = 3
        let mut z = [fe(0), fe(0)];
        assert_eq!(f.normalize(&mut z), None);
    }
}
