//! Brute-force verifiers.
//!
//! Everything here is recomputed from scratch: cosets and invariant sets are
//! bitmasks, duals come from Gaussian elimination over GF(q), and weight
//! distributions from plain enumeration of message vectors. Only field
//! arithmetic and the inputs under test are shared with the rest of the crate.

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{CodeDescriptor, CyclicCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, RootOfUnity};
use crate::splitting;
use crate::zn::QPermutation;

/// Largest n accepted by the splitting search by default.
pub const DEFAULT_SEARCH_MAX_N: u64 = 24;

/// Default bound on q^k for the enumeration oracles.
pub const DEFAULT_ORACLE_ENUM_BOUND: u128 = 1 << 20;

/// Hard limit for bitmask representations of subsets of Z_n.
const MASK_BITS: u64 = 63;

/// Largest number of cosets whose subsets are searched exhaustively.
const MAX_SEARCH_COSETS: usize = 24;

/// Largest length accepted by the row-reduction oracle.
const MAX_MATRIX_N: u64 = 512;

/// Outcome of one oracle on one instance; passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub claim: String,
    pub instance: String,
    pub instances_checked: u64,
    pub failures: Vec<String>,
}

impl OracleReport {
    fn new(claim: &str, instance: String) -> OracleReport {
        OracleReport { claim: claim.to_string(), instance, instances_checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn code_instance(code: &CyclicCode) -> String {
    format!("q={} n={} P={:?}", code.q(), code.n(), code.support())
}

// ---------------------------------------------------------------------------
// linear algebra over GF(q)

/// Reduced row echelon form with zero rows dropped.
pub fn row_reduce(field: &Field, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let c = row[col];
            if r != rank && !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// A basis of {x : r . x = 0 for every row r}, read off the reduced form.
pub fn null_space(field: &Field, rows: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
    let rref = row_reduce(field, rows);
    let pivots: Vec<usize> = rref.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Elem::ZERO; width];
            v[free] = Elem::ONE;
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

fn cyclic_rows(field: &Field, code: &CyclicCode) -> Vec<Vec<Elem>> {
    let n = code.n() as usize;
    let g = code.gen_poly().coeffs();
    (0..(n + 1).saturating_sub(g.len()))
        .map(|shift| {
            let mut row = vec![field.zero(); n];
            row[shift..shift + g.len()].copy_from_slice(g);
            row
        })
        .collect()
}

/// Null space of the generator matrix of `code`, compared with C_{-(Z_n \ P)}.
pub fn oracle_dual_basis(code: &CyclicCode) -> Result<OracleReport> {
    let n = code.n();
    if n > MAX_MATRIX_N {
        return Err(Error::TooLarge { what: "row reduction length", size: n as u128, bound: MAX_MATRIX_N as u128 });
    }
    let field = code.field();
    let mut report = OracleReport::new("dual_basis", code_instance(code));
    let gen = cyclic_rows(field, code);
    let kernel = null_space(field, &gen, n as usize);

    let neg_complement: Vec<u64> = {
        let member: Vec<bool> = (0..n).map(|i| code.support().contains(&i)).collect();
        let mut v: Vec<u64> = (0..n).filter(|&i| !member[i as usize]).map(|i| (n - i) % n).collect();
        v.sort_unstable();
        v
    };
    let expected = CyclicCode::from_support(&neg_complement, code.root())?;
    let expected_rows = cyclic_rows(field, &expected);
    report.instances_checked = 1;
    if row_reduce(field, &kernel) != row_reduce(field, &expected_rows) {
        report.failures.push(format!(
            "null space has dimension {}, C_{{-P'}} with P'={:?} has dimension {}",
            kernel.len(),
            neg_complement,
            expected.dimension()
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// subsets of Z_n as bitmasks

fn mask_cosets(q: u64, n: u64) -> Vec<u64> {
    let mut seen = 0u64;
    let mut cosets = Vec::new();
    for i in 0..n {
        if seen >> i & 1 == 1 {
            continue;
        }
        let mut mask = 0u64;
        let mut j = i;
        while mask >> j & 1 == 0 {
            mask |= 1 << j;
            j = j * q % n;
        }
        seen |= mask;
        cosets.push(mask);
    }
    cosets
}

fn mask_image(mask: u64, s: u64, t: u64, n: u64) -> u64 {
    (0..n).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << (s * ((i + t) % n) % n))
}

fn euclid(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brute_perms(q: u64, n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in (0..n).filter(|&t| q % n * t % n == t) {
        for s in (1..=n).map(|s| s % n).filter(|&s| euclid(s, n) == 1) {
            out.push((s, t));
        }
    }
    out
}

/// All unions of q-cosets of size n/2, in increasing mask order of the coset choice.
fn half_invariant_sets(q: u64, n: u64) -> Result<Vec<u64>> {
    let cosets = mask_cosets(q, n);
    if cosets.len() > MAX_SEARCH_COSETS {
        return Err(Error::TooLarge {
            what: "invariant subset search",
            size: 1u128 << cosets.len(),
            bound: 1u128 << MAX_SEARCH_COSETS,
        });
    }
    Ok((0u64..1 << cosets.len())
        .map(|choice| {
            cosets.iter().enumerate().filter(|(c, _)| choice >> c & 1 == 1).fold(0u64, |acc, (_, &m)| acc | m)
        })
        .filter(|m| 2 * m.count_ones() as u64 == n)
        .collect())
}

fn check_search_args(q: u64, n: u64, max_n: u64) -> Result<()> {
    if n == 0 || euclid(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let limit = max_n.min(MASK_BITS);
    if n > limit {
        return Err(Error::TooLarge { what: "splitting search length", size: n as u128, bound: limit as u128 });
    }
    Ok(())
}

/// Number of q-invariant P with Z_n = P + rho_{s,t}(P), by exhaustion.
pub fn brute_force_splittings(q: u64, n: u64, s: u64, t: u64) -> Result<u64> {
    check_search_args(q, n, MASK_BITS)?;
    let full = (1u64 << n) - 1;
    Ok(half_invariant_sets(q, n)?.into_iter().filter(|&p| mask_image(p, s, t, n) == full & !p).count() as u64)
}

/// Searches every q-invariant P and every q-permutation for a splitting and
/// compares with the valuation criterion, with the translations tau_{2^u n'},
/// and with the constructed splitting.
pub fn oracle_splitting_search(q: u64, n: u64) -> Result<OracleReport> {
    oracle_splitting_search_bounded(q, n, DEFAULT_SEARCH_MAX_N)
}

pub fn oracle_splitting_search_bounded(q: u64, n: u64, max_n: u64) -> Result<OracleReport> {
    check_search_args(q, n, max_n)?;
    let mut report = OracleReport::new("splitting_search", format!("q={q} n={n}"));
    let full = (1u64 << n) - 1;
    let sets = half_invariant_sets(q, n)?;
    let perms = brute_perms(q, n);
    report.instances_checked = (sets.len() * perms.len()).max(1) as u64;

    let splits = |s: u64, t: u64| sets.iter().any(|&p| mask_image(p, s, t, n) == full & !p);
    let found = perms.iter().any(|&(s, t)| splits(s, t));

    // tau_{2^u n'} for every u with qt = t
    let odd = n >> n.trailing_zeros();
    let tau_found =
        (0..=n.trailing_zeros()).map(|u| (odd << u) % n).filter(|&t| q % n * t % n == t).any(|t| splits(1, t));

    let existence = splitting::exists_splitting(q, n)?;
    if existence.exists() != found {
        report
            .failures
            .push(format!("{{\"q\":{q},\"n\":{n},\"criterion\":{},\"brute_force\":{found}}}", existence.exists()));
    }
    if tau_found != found {
        report.failures.push(format!("{{\"q\":{q},\"n\":{n},\"translations\":{tau_found},\"brute_force\":{found}}}"));
    }
    if let Some(w) = existence.witness {
        if !splits(1, w.t) {
            report.failures.push(format!("{{\"q\":{q},\"n\":{n},\"witness_t\":{},\"splits\":false}}", w.t));
        }
        let built = splitting::build_splitting(q, n, None)?;
        let p = built.support.iter().fold(0u64, |acc, &i| acc | 1 << i);
        let invariant = mask_cosets(q, n).iter().all(|&c| p & c == 0 || p & c == c);
        if !invariant || mask_image(p, 1, w.t, n) != full & !p {
            report.failures.push(format!("{{\"q\":{q},\"n\":{n},\"built\":{:?}}}", built.support));
        }
    }
    Ok(report)
}

/// Runs [`oracle_splitting_search_bounded`] on every coprime (q, n), n <= max_n,
/// in parallel; reports come back ordered by q, then n.
pub fn oracle_splitting_grid(qs: &[u64], max_n: u64) -> Result<Vec<OracleReport>> {
    let points: Vec<(u64, u64)> = qs
        .iter()
        .flat_map(|&q| (1..=max_n).map(move |n| (q, n)))
        .filter(|&(q, n)| check_search_args(q, n, max_n).is_ok())
        .collect();
    points.into_par_iter().map(|(q, n)| oracle_splitting_search_bounded(q, n, max_n)).collect()
}

// ---------------------------------------------------------------------------
// orbits

/// Lengths of the rho-orbits on Z_n/mu_q, computed on coset bitmasks; orbits
/// are listed by their smallest element.
pub fn oracle_orbit_lengths(rho: &QPermutation) -> Result<Vec<usize>> {
    let (q, n) = (rho.q(), rho.n());
    if n > MASK_BITS {
        return Err(Error::TooLarge { what: "orbit computation length", size: n as u128, bound: MASK_BITS as u128 });
    }
    let cosets = mask_cosets(q, n);
    let mut visited = vec![false; cosets.len()];
    let mut lengths = Vec::new();
    for start in 0..cosets.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = cosets[start];
        loop {
            let id = cosets.iter().position(|&c| c == cur).expect("cosets map to cosets");
            if visited[id] {
                break;
            }
            visited[id] = true;
            len += 1;
            cur = mask_image(cur, rho.s(), rho.t(), n);
        }
        lengths.push(len);
    }
    Ok(lengths)
}

/// Even orbit lengths versus the valuation test for splittings given by rho.
pub fn oracle_orbit_parity(rho: &QPermutation) -> Result<OracleReport> {
    let lengths = oracle_orbit_lengths(rho)?;
    let mut report = OracleReport::new("orbit_parity", format!("q={} n={} rho={rho}", rho.q(), rho.n()));
    report.instances_checked = lengths.len() as u64;
    let all_even = lengths.iter().all(|l| l % 2 == 0);
    let given_by = splitting::splitting_given_by(rho);
    if all_even != given_by {
        report.failures.push(format!("{{\"orbit_lengths\":{lengths:?},\"splitting_given_by\":{given_by}}}"));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// enumeration

fn enumerate_span(field: &Field, basis: &[Vec<Elem>], width: usize) -> Vec<u64> {
    let elems: Vec<Elem> = field.elements().collect();
    let q = elems.len();
    let mut dist = vec![0u64; width + 1];
    let mut digits = vec![0usize; basis.len()];
    loop {
        let mut word = vec![Elem::ZERO; width];
        for (row, &d) in basis.iter().zip(&digits) {
            let c = elems[d];
            if !c.is_zero() {
                for (w, &r) in word.iter_mut().zip(row) {
                    *w = field.add(*w, field.mul(c, r));
                }
            }
        }
        dist[word.iter().filter(|x| !x.is_zero()).count()] += 1;
        let mut i = 0;
        loop {
            if i == digits.len() {
                return dist;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Weight distribution of a code spanned by `basis`, enumerating every
/// combination of basis rows.
pub fn brute_force_weights(field: &Field, basis: &[Vec<Elem>], width: usize, bound: u128) -> Result<Vec<u64>> {
    let size = (field.order() as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { what: "oracle enumeration", size, bound });
    }
    Ok(enumerate_span(field, basis, width))
}

/// Enumerates C and its dual (taken as the null space of the generator matrix)
/// and compares distributions; the constructive enumeration of C is checked too.
pub fn oracle_weight_equality(code: &CyclicCode, bound: u128) -> Result<OracleReport> {
    let field = code.field();
    let n = code.n() as usize;
    if n as u64 > MAX_MATRIX_N {
        return Err(Error::TooLarge { what: "row reduction length", size: n as u128, bound: MAX_MATRIX_N as u128 });
    }
    let gen = row_reduce(field, &cyclic_rows(field, code));
    let dual = null_space(field, &gen, n);
    let mut report = OracleReport::new("weight_equality", code_instance(code));
    let a = brute_force_weights(field, &gen, n, bound)?;
    let b = brute_force_weights(field, &dual, n, bound)?;
    report.instances_checked = a.iter().chain(&b).sum();
    if a != b {
        report.failures.push(format!("{{\"code\":{a:?},\"dual\":{b:?}}}"));
    }
    let fast = code.weight_distribution(bound)?;
    if fast != a {
        report.failures.push(format!("{{\"oracle\":{a:?},\"enumerator\":{fast:?}}}"));
    }
    Ok(report)
}

/// Checks that phi_{s,t} (a_i to position i s^{-1}, scaled by theta^{-ti}) maps
/// every word of C_P into `target`, given by a spanning set, and preserves weight.
pub fn oracle_isometry(code: &CyclicCode, s: u64, t: u64, target: &[Vec<Elem>], bound: u128) -> Result<OracleReport> {
    let field = code.field();
    let root = code.root();
    let n = code.n();
    let s_inv = (1..n.max(2)).find(|&x| x * s % n == 1 % n).unwrap_or(0);
    let gen = row_reduce(field, &cyclic_rows(field, code));
    let size = (field.order() as u128).checked_pow(gen.len() as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { what: "oracle enumeration", size, bound });
    }
    let mut report = OracleReport::new("isometry", format!("{} s={s} t={t}", code_instance(code)));
    let target_rank = row_reduce(field, target).len();
    let elems: Vec<Elem> = field.elements().collect();
    let mut digits = vec![0usize; gen.len()];
    loop {
        let mut word = vec![Elem::ZERO; n as usize];
        for (row, &d) in gen.iter().zip(&digits) {
            for (w, &r) in word.iter_mut().zip(row) {
                *w = field.add(*w, field.mul(elems[d], r));
            }
        }
        report.instances_checked += 1;
        match apply_isometry(root, &word, s_inv, t) {
            Some(image) => {
                let weight = |w: &[Elem]| w.iter().filter(|x| !x.is_zero()).count();
                let mut extended = target.to_vec();
                extended.push(image.clone());
                if weight(&image) != weight(&word) || row_reduce(field, &extended).len() != target_rank {
                    report.failures.push(format!("{{\"word\":{:?}}}", word.iter().map(|x| x.0).collect::<Vec<_>>()));
                }
            }
            None => report.failures.push("image leaves the base field".to_string()),
        }
        if report.failures.len() > 8 {
            break;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(report);
            }
            digits[i] += 1;
            if digits[i] < elems.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
    Ok(report)
}

fn apply_isometry(root: &RootOfUnity, word: &[Elem], s_inv: u64, t: u64) -> Option<Vec<Elem>> {
    let n = root.n();
    let tower = root.tower();
    let ext = root.ext();
    let mut out = vec![Elem::ZERO; n as usize];
    for (i, &a) in word.iter().enumerate() {
        let i = i as u64;
        let scale = root.power(-((t * i % n) as i64));
        out[(i * s_inv % n) as usize] = tower.project(ext.mul(tower.embed(a), scale))?;
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// descriptors

/// Runs every applicable oracle against a descriptor. Errors mean the
/// descriptor does not describe a code (for instance P is not invariant).
pub fn verify_descriptor(desc: &CodeDescriptor, bound: u128) -> Result<Vec<OracleReport>> {
    let code = desc.rebuild()?;
    let field = code.field().clone();
    let mut reports = Vec::new();

    let mut consistency = OracleReport::new("descriptor", code_instance(&code));
    consistency.instances_checked = 1;
    if desc.check_poly != code.check_poly().to_ints() {
        consistency.failures.push(format!("check_poly {:?} != {:?}", desc.check_poly, code.check_poly().to_ints()));
    }
    if desc.gen_poly != code.gen_poly().to_ints() {
        consistency.failures.push(format!("gen_poly {:?} != {:?}", desc.gen_poly, code.gen_poly().to_ints()));
    }
    let dual_rows = null_space(&field, &cyclic_rows(&field, &code), code.n() as usize);
    if let Some(dual_check) = &desc.dual_check_poly {
        let dual = code.dual();
        if dual_check != &dual.check_poly().to_ints() {
            consistency.failures.push(format!("dual_check_poly {:?} != {:?}", dual_check, dual.check_poly().to_ints()));
        }
    }
    reports.push(consistency);
    reports.push(oracle_dual_basis(&code)?);

    let n = code.n();
    if let Some(cert) = desc.certificate {
        let mut partition =
            OracleReport::new("certificate_partition", format!("{} s={} t={}", code_instance(&code), cert.s, cert.t));
        partition.instances_checked = 1;
        match QPermutation::new(cert.s as i64, cert.t as i64, n, code.q()) {
            Ok(rho) => {
                let image = rho.apply_set(code.support());
                let disjoint = image.iter().all(|i| !code.support().contains(i));
                if !disjoint || 2 * code.support().len() as u64 != n {
                    partition.failures.push(format!("rho(P) = {image:?} is not the complement"));
                }
                reports.push(partition);
                reports.push(oracle_orbit_parity(&rho)?);
                let neg_s = (n - cert.s % n) % n;
                reports.push(oracle_isometry(&code, neg_s, cert.t, &dual_rows, bound)?);
                reports.push(oracle_weight_equality(&code, bound)?);
            }
            Err(e) => {
                partition.failures.push(e.to_string());
                reports.push(partition);
            }
        }
    }
    if n <= DEFAULT_SEARCH_MAX_N {
        reports.push(oracle_splitting_search(code.q(), n)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn root(q: u64, n: u64, pin: Option<&str>) -> RootOfUnity {
        RootOfUnity::new(&Field::of_order(q).unwrap(), n, pin.map(|p| p.parse().unwrap())).unwrap()
    }

    #[test]
    fn null_space_of_identity_is_empty() {
        let f = Field::new(5, 1).unwrap();
        let id: Vec<Vec<Elem>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect()).collect();
        assert!(null_space(&f, &id, 3).is_empty());
        assert_eq!(null_space(&f, &[], 3).len(), 3);
    }

    #[test]
    fn dual_basis_examples() {
        let r = root(5, 8, Some("theta^2=2"));
        for p in [vec![], vec![0u64, 1, 4, 5], (0..8).collect()] {
            let code = CyclicCode::from_support(&p, &r).unwrap();
            assert!(oracle_dual_basis(&code).unwrap().passed(), "{p:?}");
        }
        let code = CyclicCode::from_support(&[0, 1, 3, 7, 9], &root(3, 10, None)).unwrap();
        assert!(oracle_dual_basis(&code).unwrap().passed());
    }

    #[test]
    fn splitting_search_examples() {
        let r = oracle_splitting_search(3, 8).unwrap();
        assert!(r.passed());
        assert_eq!(brute_force_splittings(3, 8, 1, 4).unwrap(), 0);
        assert!(oracle_splitting_search(5, 8).unwrap().passed());
        assert!(oracle_splitting_search(7, 4).unwrap().passed());
        assert!(!splitting::exists_splitting(7, 4).unwrap().exists());
        assert_eq!(
            oracle_splitting_search(5, 26).unwrap_err(),
            Error::TooLarge { what: "splitting search length", size: 26, bound: 24 }
        );
        assert_eq!(oracle_splitting_search(4, 8).unwrap_err(), Error::NotCoprime { q: 4, n: 8 });
    }

    #[test]
    fn orbit_parity_examples() {
        let tau2 = QPermutation::translation(2, 8, 5).unwrap();
        assert_eq!(oracle_orbit_lengths(&tau2).unwrap(), vec![4, 2]);
        assert!(oracle_orbit_parity(&tau2).unwrap().passed());

        let tau5 = QPermutation::translation(5, 10, 3).unwrap();
        assert_eq!(oracle_orbit_lengths(&tau5).unwrap(), vec![2, 2]);

        let rho = QPermutation::new(1, 4, 8, 3).unwrap();
        assert!(oracle_orbit_lengths(&rho).unwrap().iter().any(|l| l % 2 == 1));
        assert!(oracle_orbit_parity(&rho).unwrap().passed());
    }

    #[test]
    fn weight_equality_examples() {
        let cases = [
            (5u64, 6u64, vec![0u64, 1, 5], Some("theta^3=-1")),
            (5, 8, vec![0, 1, 4, 5], Some("theta^2=2")),
            (3, 10, vec![0, 1, 3, 7, 9], None),
        ];
        for (q, n, p, pin) in cases {
            let code = CyclicCode::from_support(&p, &root(q, n, pin)).unwrap();
            let r = oracle_weight_equality(&code, DEFAULT_ORACLE_ENUM_BOUND).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.instances_checked, 2 * q.pow(n as u32 / 2));
        }
    }

    #[test]
    fn report_json() {
        let r = oracle_splitting_search(5, 8).unwrap();
        let line = r.to_json_line();
        assert!(line.starts_with(r#"{"claim":"splitting_search","instance":"q=5 n=8","#));
        assert!(line.ends_with(r#""failures":[]}"#));
    }
}
