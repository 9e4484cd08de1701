//! Type-I duadic splittings Z_n = P + rho(P) with P a union of q-cosets.
//!
//! Existence is decided by 2-adic valuations: splittings of Z_n exist iff
//! 0 < nu2(n) < 2 nu2(q - 1), and then the q-translation tau_t with
//! t = 2^u n' (n' the odd part of n) gives one for any admissible u.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zn::{self, nu2, CosetPartition, QPermutation, Valuation};

/// Default cap on [`enumerate_splittings`] output.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 16;

/// Outcome of the valuation test for (q, n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub q: u64,
    pub n: u64,
    /// nu2(n); finite because n > 0.
    pub nu2_n: u32,
    /// nu2(q - 1); `None` stands for infinity (q = 1 never occurs for fields).
    pub nu2_q_minus_1: Option<u32>,
    pub witness: Option<Witness>,
}

impl Existence {
    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

/// The translation tau_t, t = 2^u n', chosen when splittings exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: u32,
    pub t: u64,
}

fn check_coprime(q: u64, n: u64) -> Result<()> {
    if n == 0 || zn::gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    Ok(())
}

/// Admissible range max{0, nu2(n) - nu2(q-1)} <= u < min{nu2(n), nu2(q-1)}.
fn u_range(nu2_n: u32, nu2_q1: u32) -> std::ops::Range<u32> {
    nu2_n.saturating_sub(nu2_q1)..nu2_n.min(nu2_q1)
}

fn valuations(q: u64, n: u64) -> (u32, Valuation) {
    let nu2_n = nu2(n as i64).finite().expect("n > 0");
    (nu2_n, nu2(q as i64 - 1))
}

/// Whether Type-I duadic splittings of Z_n exist: 0 < nu2(n) < 2 nu2(q-1).
pub fn exists_splitting(q: u64, n: u64) -> Result<Existence> {
    check_coprime(q, n)?;
    let (nu2_n, nu2_q1) = valuations(q, n);
    let witness = choose_u(q, n).ok().map(|u| Witness { u, t: translation_for(n, u) });
    Ok(Existence { q, n, nu2_n, nu2_q_minus_1: nu2_q1.finite(), witness })
}

/// The smallest admissible u.
pub fn choose_u(q: u64, n: u64) -> Result<u32> {
    check_coprime(q, n)?;
    let (nu2_n, nu2_q1) = valuations(q, n);
    let Valuation::Finite(w) = nu2_q1 else {
        return Err(Error::NoSplitting { q, n });
    };
    if nu2_n == 0 || nu2_n >= 2 * w {
        return Err(Error::NoSplitting { q, n });
    }
    Ok(u_range(nu2_n, w).start)
}

/// Whether `u` lies in the admissible range for (q, n).
pub fn u_admissible(q: u64, n: u64, u: u32) -> Result<bool> {
    check_coprime(q, n)?;
    let (nu2_n, nu2_q1) = valuations(q, n);
    Ok(match nu2_q1 {
        Valuation::Finite(w) => nu2_n > 0 && nu2_n < 2 * w && u_range(nu2_n, w).contains(&u),
        Valuation::Infinite => false,
    })
}

/// t = 2^u n' where n' is the odd part of n.
pub fn translation_for(n: u64, u: u32) -> u64 {
    let odd = n >> n.trailing_zeros();
    (odd << u) % n
}

/// Whether splittings given by rho exist, by the valuation criterion on the
/// 2-part of n: nu2(q^j - s) > nu2(t) for every j >= 0, with s and t reduced
/// mod 2^nu2(n).
pub fn splitting_given_by(rho: &QPermutation) -> bool {
    let n = rho.n();
    let v = n.trailing_zeros();
    if v == 0 {
        return false;
    }
    let two_v = 1u64 << v;
    let t = rho.t() % two_v;
    if t == 0 {
        return false;
    }
    let e = t.trailing_zeros();
    // nu2(q^j - s) > e only depends on q^j mod 2^{e+1}, periodic in j
    let m = 1u64 << (e + 1);
    let q = rho.q() % m;
    let s = rho.s() % m;
    let mut qj = 1 % m;
    loop {
        if !(qj + m - s).is_multiple_of(m) {
            return false;
        }
        qj = qj * q % m;
        if qj == 1 % m {
            return true;
        }
    }
}

/// Whether every rho-orbit on Z_n/mu_q has even length.
pub fn orbits_all_even(rho: &QPermutation, cp: &CosetPartition) -> Result<bool> {
    Ok(cp.orbits(rho)?.iter().all(|o| o.len() % 2 == 0))
}

/// A partition Z_n = P + rho(P) with P a union of q-cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub q: u64,
    pub n: u64,
    pub rho: QPermutation,
    /// P, sorted.
    pub support: Vec<u64>,
    /// For each rho-orbit on the cosets, the coset ids placed into P.
    pub orbit_choices: Vec<Vec<usize>>,
}

impl Splitting {
    /// rho(P), sorted.
    pub fn image(&self) -> Vec<u64> {
        self.rho.apply_set(&self.support)
    }

    /// Checks invariance, disjointness and coverage directly.
    pub fn is_valid(&self) -> bool {
        let Ok(cp) = CosetPartition::new(self.q, self.n) else {
            return false;
        };
        if !cp.is_invariant(&self.support) || 2 * self.support.len() as u64 != self.n {
            return false;
        }
        let mut seen = vec![0u8; self.n as usize];
        for &i in self.support.iter().chain(self.image().iter()) {
            seen[i as usize] += 1;
        }
        seen.iter().all(|&c| c == 1)
    }
}

fn resolve_rho(q: u64, n: u64, rho: Option<QPermutation>) -> Result<QPermutation> {
    match rho {
        Some(r) if r.n() != n || r.q() != q => Err(Error::Mismatch),
        Some(r) => Ok(r),
        None => {
            let existence = exists_splitting(q, n)?;
            let w = existence.witness.ok_or(Error::NoSplitting { q, n })?;
            QPermutation::translation(w.t as i64, n, q)
        }
    }
}

/// Builds P by taking the cosets at odd positions (first, third, ...) of every
/// rho-orbit, each orbit starting at its smallest coset. Without `rho` the
/// translation tau_{2^u n'} for the smallest admissible u is used.
pub fn build_splitting(q: u64, n: u64, rho: Option<QPermutation>) -> Result<Splitting> {
    let rho = resolve_rho(q, n, rho)?;
    let cp = CosetPartition::new(q, n)?;
    let orbits = cp.orbits(&rho)?;
    if orbits.iter().any(|o| o.len() % 2 == 1) {
        return Err(Error::NoSplitting { q, n });
    }
    let orbit_choices: Vec<Vec<usize>> = orbits.iter().map(|o| o.iter().step_by(2).copied().collect()).collect();
    let ids: Vec<usize> = orbit_choices.iter().flatten().copied().collect();
    let splitting = Splitting { q, n, rho, support: cp.union(&ids), orbit_choices };
    debug_assert!(splitting.is_valid());
    Ok(splitting)
}

/// Selections S of positions in a cycle of length `len` with S + (S + 1) the whole cycle.
fn cycle_selections(len: usize) -> Vec<Vec<usize>> {
    [true, false]
        .into_iter()
        .filter_map(|first| {
            let mut member = vec![first; len];
            for i in 1..len {
                member[i] = !member[i - 1];
            }
            // position 0 is covered by rho(position len-1) or is in S, not both
            (member[0] != member[len - 1]).then(|| (0..len).filter(|&i| member[i]).collect())
        })
        .collect()
}

/// Every splitting given by rho, in a deterministic order whose first element
/// is [`build_splitting`]'s, truncated to `cap` items.
#[derive(Debug, Clone)]
pub struct SplittingIter {
    q: u64,
    n: u64,
    rho: QPermutation,
    cp: CosetPartition,
    orbits: Vec<Vec<usize>>,
    /// Valid position selections for each orbit.
    choices: Vec<Vec<Vec<usize>>>,
    odometer: Vec<usize>,
    remaining: usize,
    done: bool,
}

impl SplittingIter {
    /// Number of splittings before truncation.
    pub fn total(&self) -> u128 {
        if self.done && self.choices.is_empty() {
            return 0;
        }
        self.choices.iter().map(|c| c.len() as u128).product()
    }
}

impl Iterator for SplittingIter {
    type Item = Splitting;

    fn next(&mut self) -> Option<Splitting> {
        if self.done || self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let orbit_choices: Vec<Vec<usize>> = self
            .orbits
            .iter()
            .zip(&self.choices)
            .zip(&self.odometer)
            .map(|((orbit, sels), &k)| sels[k].iter().map(|&pos| orbit[pos]).collect())
            .collect();
        let ids: Vec<usize> = orbit_choices.iter().flatten().copied().collect();
        let item = Splitting { q: self.q, n: self.n, rho: self.rho, support: self.cp.union(&ids), orbit_choices };

        // last orbit varies fastest
        let mut i = self.odometer.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.odometer[i] += 1;
            if self.odometer[i] < self.choices[i].len() {
                break;
            }
            self.odometer[i] = 0;
        }
        Some(item)
    }
}

/// All splittings given by rho; empty when rho has an odd orbit.
pub fn enumerate_splittings(q: u64, n: u64, rho: QPermutation) -> Result<SplittingIter> {
    enumerate_splittings_capped(q, n, rho, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_splittings_capped(q: u64, n: u64, rho: QPermutation, cap: usize) -> Result<SplittingIter> {
    let rho = resolve_rho(q, n, Some(rho))?;
    let cp = CosetPartition::new(q, n)?;
    let orbits = cp.orbits(&rho)?;
    let choices: Vec<Vec<Vec<usize>>> = orbits.iter().map(|o| cycle_selections(o.len())).collect();
    let done = choices.iter().any(Vec::is_empty);
    let iter = SplittingIter {
        q,
        n,
        rho,
        cp,
        odometer: vec![0; orbits.len()],
        orbits,
        choices: if done { Vec::new() } else { choices },
        remaining: cap,
        done,
    };
    if iter.total() > cap as u128 {
        log::warn!("{} splittings for {rho}; listing the first {cap}", iter.total());
    }
    Ok(iter)
}
