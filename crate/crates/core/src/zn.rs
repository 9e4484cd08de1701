//! Arithmetic in Z_n, 2-adic valuations, q-cyclotomic cosets and the
//! q-permutation group acting on them.

use std::fmt;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Least positive inverse of `a` mod `n` (1 when n = 1).
pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
}

/// Representative of `i` in [0, n).
pub fn normalize(i: i64, n: u64) -> u64 {
    i.rem_euclid(n as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// (p, k) with q = p^k, or `None` when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// A 2-adic valuation, with nu2(0) = infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn nu2(m: i64) -> Valuation {
    if m == 0 {
        Valuation::Infinite
    } else {
        Valuation::Finite(m.trailing_zeros())
    }
}

/// The permutation i -> s(i + t) of Z_n, valid when gcd(s, n) = 1 and qt = t mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QPermutation {
    s: u64,
    t: u64,
    n: u64,
    q: u64,
}

impl QPermutation {
    /// Validates (s, t); negative inputs are reduced into [0, n).
    pub fn new(s: i64, t: i64, n: u64, q: u64) -> Result<QPermutation> {
        if n == 0 {
            return Err(Error::InvalidPermutation("n must be positive".into()));
        }
        let s = normalize(s, n);
        let t = normalize(t, n);
        if gcd(s, n) != 1 {
            return Err(Error::NotUnit { s, n });
        }
        if (q as u128 * t as u128 % n as u128) as u64 != t {
            return Err(Error::NotQTranslation { q, t, n });
        }
        // s = 0 is a unit only for n = 1, where it acts like 1
        let s = if n == 1 { 1 } else { s };
        Ok(QPermutation { s, t, n, q })
    }

    pub fn identity(n: u64, q: u64) -> QPermutation {
        QPermutation { s: 1 % n.max(2), t: 0, n, q }
    }

    /// The q-translation tau_t.
    pub fn translation(t: i64, n: u64, q: u64) -> Result<QPermutation> {
        QPermutation::new(1, t, n, q)
    }

    /// The multiplier mu_s.
    pub fn multiplier(s: i64, n: u64, q: u64) -> Result<QPermutation> {
        QPermutation::new(s, 0, n, q)
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Least positive representative of s^{-1} mod n.
    pub fn s_inverse(&self) -> u64 {
        mod_inv(self.s, self.n).expect("s is a unit")
    }

    pub fn apply(&self, i: u64) -> u64 {
        let n = self.n as u128;
        ((self.s as u128 * ((i as u128 % n) + self.t as u128)) % n) as u64
    }

    /// Image of a residue set, sorted.
    pub fn apply_set(&self, set: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = set.iter().map(|&i| self.apply(i)).collect();
        out.sort_unstable();
        out
    }

    /// `self` after `first`: rho_{s',t'} rho_{s,t} = rho_{s's, t + s^{-1} t'}.
    pub fn compose(&self, first: &QPermutation) -> Result<QPermutation> {
        if self.n != first.n || self.q != first.q {
            return Err(Error::Mismatch);
        }
        let n = self.n as u128;
        let s = (self.s as u128 * first.s as u128 % n) as i64;
        let t = ((first.t as u128 + first.s_inverse() as u128 * self.t as u128) % n) as i64;
        QPermutation::new(s, t, self.n, self.q)
    }

    /// rho_{s,t}^{-1} = rho_{s^{-1}, -st}.
    pub fn inverse(&self) -> QPermutation {
        let n = self.n as u128;
        let st = (self.s as u128 * self.t as u128 % n) as u64;
        let t = (self.n - st) % self.n;
        QPermutation::new(self.s_inverse() as i64, t as i64, self.n, self.q)
            .expect("the inverse of a q-permutation is a q-permutation")
    }
}

impl fmt::Display for QPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho_{{{},{}}} on Z_{}", self.s, self.t, self.n)
    }
}

/// Every valid q-translation t in [0, n), ascending.
pub fn q_translations(q: u64, n: u64) -> Vec<u64> {
    (0..n).filter(|&t| (q as u128 * t as u128 % n as u128) as u64 == t).collect()
}

/// Units of Z_n in [1, n), ascending (just [1] when n = 1).
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&s| gcd(s, n) == 1).collect()
}

/// Every element of G_{q,n}, ordered by t then s.
pub fn q_permutations(q: u64, n: u64) -> Vec<QPermutation> {
    let us = units(n);
    q_translations(q, n)
        .into_iter()
        .flat_map(|t| {
            us.iter().map(move |&s| QPermutation::new(s as i64, t as i64, n, q).expect("valid by construction"))
        })
        .collect()
}

/// The q-cyclotomic cosets of Z_n, each sorted, listed by minimum element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    n: u64,
    q: u64,
    cosets: Vec<Vec<u64>>,
    index: Vec<usize>,
}

impl CosetPartition {
    pub fn new(q: u64, n: u64) -> Result<CosetPartition> {
        if n == 0 || gcd(q, n) != 1 {
            return Err(Error::NotCoprime { q, n });
        }
        let qm = q % n;
        let mut index = vec![usize::MAX; n as usize];
        let mut cosets = Vec::new();
        for start in 0..n {
            if index[start as usize] != usize::MAX {
                continue;
            }
            let id = cosets.len();
            let mut coset = Vec::new();
            let mut i = start;
            loop {
                index[i as usize] = id;
                coset.push(i);
                i = (i as u128 * qm as u128 % n as u128) as u64;
                if i == start {
                    break;
                }
            }
            coset.sort_unstable();
            cosets.push(coset);
        }
        Ok(CosetPartition { n, q, cosets, index })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset(&self, id: usize) -> &[u64] {
        &self.cosets[id]
    }

    /// Id of the coset containing residue `i`.
    pub fn coset_of(&self, i: u64) -> usize {
        self.index[(i % self.n) as usize]
    }

    /// Whether a residue set is a union of cosets.
    pub fn is_invariant(&self, set: &[u64]) -> bool {
        let mut member = vec![false; self.n as usize];
        for &i in set {
            member[(i % self.n) as usize] = true;
        }
        let qm = self.q % self.n;
        (0..self.n).all(|i| !member[i as usize] || member[(i as u128 * qm as u128 % self.n as u128) as usize])
    }

    /// Splits an invariant set into coset ids, ascending.
    pub fn decompose(&self, set: &[u64]) -> Result<Vec<usize>> {
        if !self.is_invariant(set) {
            return Err(Error::NotInvariant { q: self.q, n: self.n });
        }
        let mut ids: Vec<usize> = set.iter().map(|&i| self.coset_of(i)).collect();
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    /// Union of the given cosets, sorted.
    pub fn union(&self, ids: &[usize]) -> Vec<u64> {
        let mut out: Vec<u64> = ids.iter().flat_map(|&id| self.cosets[id].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// The coset rho(Q); images of cosets are cosets because rho commutes with mu_q.
    pub fn image(&self, rho: &QPermutation, id: usize) -> usize {
        self.coset_of(rho.apply(self.cosets[id][0]))
    }

    fn check(&self, rho: &QPermutation) -> Result<()> {
        if rho.n() != self.n || rho.q() != self.q {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    /// The rho-orbits on Z_n/mu_q. Each orbit starts at its smallest coset id
    /// and follows rho; orbits are ordered by that start.
    pub fn orbits(&self, rho: &QPermutation) -> Result<Vec<Vec<usize>>> {
        self.check(rho)?;
        let mut seen = vec![false; self.len()];
        let mut orbits = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut id = start;
            while !seen[id] {
                seen[id] = true;
                orbit.push(id);
                id = self.image(rho, id);
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Whether rho maps coset `id` onto itself, by comparing image sets.
    pub fn fixed_by_direct(&self, rho: &QPermutation, id: usize) -> Result<bool> {
        self.check(rho)?;
        Ok(rho.apply_set(&self.cosets[id]) == self.cosets[id])
    }

    /// Whether rho fixes coset `id`, via the criterion that (q^j - s)k = st mod n
    /// for some k in Q and j in [0, |Q|).
    pub fn fixed_by_criterion(&self, rho: &QPermutation, id: usize) -> Result<bool> {
        self.check(rho)?;
        let n = self.n as u128;
        let q = (self.q % self.n) as u128;
        let s = rho.s() as u128;
        let st = s * rho.t() as u128 % n;
        let coset = &self.cosets[id];
        let mut qj = 1 % n;
        for _ in 0..coset.len() {
            let factor = (qj + n - s % n) % n;
            if coset.iter().any(|&k| factor * k as u128 % n == st) {
                return Ok(true);
            }
            qj = qj * q % n;
        }
        Ok(false)
    }

    /// Whether rho fixes coset `id`. Both tests are run and must agree.
    pub fn fixed_by(&self, rho: &QPermutation, id: usize) -> Result<bool> {
        let direct = self.fixed_by_direct(rho, id)?;
        debug_assert_eq!(direct, self.fixed_by_criterion(rho, id)?);
        Ok(direct)
    }
}
