//! Exact arithmetic in GF(p^k) and primitive roots of unity.
//!
//! A [`Field`] is a cheap-to-clone handle onto precomputed exp/log tables.
//! Elements are [`Elem`] values holding the polynomial-basis encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`
//! modulo the field's defining polynomial; the residues `c_i` are recovered
//! with [`Field::coeffs`].
//!
//! Codes over GF(q) need a primitive n-th root of unity, which lives in
//! GF(q^d) with d the order of q mod n. [`Tower`] holds both levels and the
//! embedding between them; [`RootOfUnity`] pins one such root.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::zn;

/// Default bound on the number of field elements.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// A field element in polynomial-basis encoding, meaningful only together
/// with the [`Field`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    order: u32,
    /// Monic defining polynomial, ascending, length k + 1. Empty when k = 1.
    modulus: Vec<u32>,
    generator: Elem,
    /// exp[i] = g^i for i in [0, 2(q-1)), doubled so products need no reduction.
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
}

/// The finite field GF(p^k).
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl Field {
    /// Builds GF(p^k) with the default size bound.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Field::with_bound(p, k, DEFAULT_FIELD_BOUND)
    }

    /// Builds GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = zn::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, k)
    }

    /// Builds GF(p^k), refusing fields with more than `bound` elements.
    ///
    /// The modulus is the lexicographically smallest monic irreducible of
    /// degree k (coefficients compared from the constant term up) and the
    /// generator is the smallest element of full order under the same order.
    pub fn with_bound(p: u64, k: u32, bound: u64) -> Result<Field> {
        if !zn::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > bound as u128 || size > u32::MAX as u128 {
            return Err(Error::SizeBound { size, bound });
        }
        let p = p as u32;
        let order = size as u32;
        let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k) };
        let slow = SlowArith { p, k, modulus: &modulus };

        let group = (order - 1) as u64;
        let cofactors: Vec<u64> = zn::prime_factors(group).into_iter().map(|r| group / r).collect();
        let generator = (1..order as u64)
            .map(|rank| lex_element(p, k, rank))
            .find(|&g| cofactors.iter().all(|&e| slow.pow(g, e) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * (order as usize - 1).max(1)];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order as usize - 1).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        let half = order as usize - 1;
        for i in half..exp.len() {
            exp[i] = exp[i - half];
        }
        Ok(Field(Arc::new(FieldInner { p, k, order, modulus, generator: Elem(generator), exp, log })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements q = p^k.
    pub fn order(&self) -> u64 {
        self.0.order as u64
    }

    /// Monic defining polynomial over GF(p), ascending; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    /// The prime-subfield element congruent to `v` mod p.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Builds an element from its polynomial-basis residues.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let p = self.0.p;
        assert!(coeffs.len() <= self.0.k as usize, "too many coefficients");
        Elem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p))
    }

    /// Polynomial-basis residues c_0..c_{k-1}, each in [0, p).
    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.k)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Whether `x` is a valid encoding for this field.
    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let i = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Elem(self.0.exp[i as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let m = self.0.order - 1;
        let l = self.0.log[a.0 as usize];
        Some(Elem(self.0.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let m = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Elem(self.0.exp[((l * (e % m)) % m) as usize])
    }

    /// Power with a signed exponent; panics on a negative power of zero.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Elem {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            let ai = self.inv(a).expect("negative power of zero");
            self.pow(ai, e.unsigned_abs())
        }
    }

    /// g^i for the canonical generator g.
    pub fn exp(&self, i: u64) -> Elem {
        let m = (self.0.order - 1) as u64;
        Elem(self.0.exp[(i % m) as usize])
    }

    /// Discrete log to the canonical generator; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)?;
        let m = self.order() - 1;
        Some(m / zn::gcd(l, m))
    }

    /// Balanced signed residue for prime-subfield elements, `None` otherwise.
    pub fn balanced(&self, a: Elem) -> Option<i64> {
        let p = self.0.p as i64;
        let v = a.0 as i64;
        if v >= p {
            return None;
        }
        Some(if v > p / 2 { v - p } else { v })
    }
}

/// Schoolbook arithmetic on encodings, used only while tables are built.
struct SlowArith<'a> {
    p: u32,
    k: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut x: u32) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let d = (x % self.p) as u64;
                x /= self.p;
                d
            })
            .collect()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let off = deg - k + i;
                prod[off] = (prod[off] + (p - c) * m as u64) % p;
            }
        }
        prod[..k].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// The element whose coefficient vector has the given rank in lexicographic
/// order with the constant term most significant.
fn lex_element(p: u32, k: u32, rank: u64) -> u32 {
    let p64 = p as u64;
    let mut r = rank;
    let mut coeffs = vec![0u32; k as usize];
    for slot in coeffs.iter_mut().rev() {
        *slot = (r % p64) as u32;
        r /= p64;
    }
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Lexicographically smallest monic irreducible polynomial of degree k over GF(p).
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for rank in 0..total {
        let enc = lex_element(p, k, rank);
        let mut f: Vec<u64> = (0..k).map(|i| ((enc / p.pow(i)) % p) as u64).collect();
        f.push(1);
        if f[0] != 0 && fp_poly::is_irreducible(&f, p as u64) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

/// Minimal dense polynomial arithmetic over GF(p) for the irreducibility test.
mod fp_poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        crate::zn::mod_pow(a, p - 2, p)
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * li % p;
            for (i, &mc) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - c * mc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: f of degree k is irreducible iff gcd(f, X^{p^i} - X) = 1 for i <= k/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        let x = vec![0, 1];
        let mut power = rem(&x, f, p);
        for _ in 0..k / 2 {
            let mut acc = vec![1u64];
            let mut base = power.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            power = acc;
            let mut diff = power.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Least d >= 1 with q^d = 1 mod n.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u64> {
    if n == 0 || zn::gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let q = q % n;
    let mut x = q;
    let mut d = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        d += 1;
    }
    Ok(d)
}

/// The two-level tower GF(q) inside GF(q^d).
#[derive(Clone)]
pub struct Tower {
    base: Field,
    ext: Field,
    degree: u32,
    embed: Arc<Vec<Elem>>,
    project: Arc<HashMap<Elem, Elem>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} < {:?})", self.base, self.ext)
    }
}

impl Tower {
    /// Builds GF(q^degree) over `base`, subject to `bound` on its size.
    pub fn new(base: &Field, degree: u32, bound: u64) -> Result<Tower> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let ext = if degree == 1 {
            base.clone()
        } else {
            Field::with_bound(base.characteristic(), base.degree() * degree, bound)?
        };
        let embed: Vec<Elem> = if degree == 1 {
            base.elements().collect()
        } else if base.degree() == 1 {
            // the prime subfield of ext is spanned by the constants
            base.elements().collect()
        } else {
            let modulus = base.modulus();
            let root = ext
                .elements()
                .find(|&a| {
                    let v = modulus
                        .iter()
                        .rev()
                        .fold(Elem::ZERO, |acc, &c| ext.add(ext.mul(acc, a), ext.from_int(c as i64)));
                    v.is_zero()
                })
                .expect("the base modulus splits in the extension");
            base.elements()
                .map(|x| {
                    base.coeffs(x)
                        .iter()
                        .rev()
                        .fold(Elem::ZERO, |acc, &c| ext.add(ext.mul(acc, root), ext.from_int(c as i64)))
                })
                .collect()
        };
        let project = embed.iter().enumerate().map(|(i, &e)| (e, Elem(i as u32))).collect();
        Ok(Tower { base: base.clone(), ext, degree, embed: Arc::new(embed), project: Arc::new(project) })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// The relative degree d.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.0 as usize]
    }

    /// The base-field preimage of `x`, if it lies in GF(q).
    pub fn project(&self, x: Elem) -> Option<Elem> {
        self.project.get(&x).copied()
    }

    /// x^q = x, the Frobenius test for membership in GF(q).
    pub fn in_base_field(&self, x: Elem) -> bool {
        self.ext.pow(x, self.base.order()) == x
    }
}

/// A pinning condition theta^exponent = value, with value read in the prime subfield.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaPin {
    pub exponent: u64,
    pub value: i64,
}

impl FromStr for ThetaPin {
    type Err = Error;

    fn from_str(s: &str) -> Result<ThetaPin> {
        let bad = || Error::BadPin(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix("theta^").or_else(|| compact.strip_prefix("θ^")).ok_or_else(bad)?;
        let (e, v) = rest.split_once('=').ok_or_else(bad)?;
        Ok(ThetaPin {
            exponent: e.parse().map_err(|_| bad())?, value: v.replace('−', "-").parse().map_err(|_| bad())?
        })
    }
}

impl fmt::Display for ThetaPin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta^{}={}", self.exponent, self.value)
    }
}

/// A primitive n-th root of unity theta in GF(q^d).
#[derive(Debug, Clone)]
pub struct RootOfUnity {
    tower: Tower,
    theta: Elem,
    n: u64,
    pin: Option<ThetaPin>,
}

impl RootOfUnity {
    /// theta = g^((q^d - 1)/n) for the canonical generator g of GF(q^d), or
    /// the first primitive root theta0^j (j ascending, coprime to n)
    /// satisfying `pin`.
    pub fn new(base: &Field, n: u64, pin: Option<ThetaPin>) -> Result<RootOfUnity> {
        RootOfUnity::with_bound(base, n, pin, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(base: &Field, n: u64, pin: Option<ThetaPin>, bound: u64) -> Result<RootOfUnity> {
        let q = base.order();
        let d = multiplicative_order(q, n)?;
        let tower = Tower::new(base, d as u32, bound)?;
        let ext = tower.ext();
        let theta0 = ext.exp((ext.order() - 1) / n);
        let theta = match pin {
            None => theta0,
            Some(pin) => {
                let target = tower.embed(base.from_int(pin.value));
                (1..=n)
                    .filter(|&j| zn::gcd(j, n) == 1)
                    .map(|j| ext.pow(theta0, j))
                    .find(|&c| ext.pow(c, pin.exponent) == target)
                    .ok_or(Error::PinUnsatisfiable { n, exponent: pin.exponent, value: pin.value })?
            }
        };
        debug_assert_eq!(ext.element_order(theta), Some(n));
        Ok(RootOfUnity { tower, theta, n, pin })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn base(&self) -> &Field {
        self.tower.base()
    }

    pub fn ext(&self) -> &Field {
        self.tower.ext()
    }

    pub fn theta(&self) -> Elem {
        self.theta
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The relative degree d of GF(q^d) over GF(q).
    pub fn degree(&self) -> u32 {
        self.tower.degree()
    }

    pub fn q(&self) -> u64 {
        self.tower.base().order()
    }

    pub fn pin(&self) -> Option<ThetaPin> {
        self.pin
    }

    /// theta^i for any integer i, in GF(q^d).
    pub fn power(&self, i: i64) -> Elem {
        let e = i.rem_euclid(self.n as i64) as u64;
        self.ext().pow(self.theta, e)
    }

    /// theta^i projected to GF(q); `None` when theta^i is not in the base field.
    pub fn power_in_base(&self, i: i64) -> Option<Elem> {
        self.tower.project(self.power(i))
    }
}
