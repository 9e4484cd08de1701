//! Cyclic codes C_P over GF(q), their duals and isometric images.
//!
//! The support P is the identity of a code; the check polynomial f_P and the
//! generator polynomial f_{Z_n \ P} are derived from it and a fixed
//! [`RootOfUnity`].

mod descriptor;
mod mds;
mod weights;

pub use descriptor::{CertificateJson, CodeDescriptor};
pub use mds::{grs_codeword, grs_preimage, mds_construct, mds_support};
pub use weights::{weight_distribution_with, DEFAULT_ENUMERATION_BOUND, PROGRESS_THRESHOLD};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, RootOfUnity};
use crate::poly::{self, checked_qperm, defining_polynomial, negate_set, Poly};
use crate::zn::{self, CosetPartition, QPermutation};

/// A length-n word over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword(pub Vec<Elem>);

impl Codeword {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_poly(&self, field: &Field) -> Poly {
        Poly::new(field, self.0.clone())
    }
}

/// The cyclic code with check polynomial f_P.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    support: Vec<u64>,
    check_poly: Poly,
    gen_poly: Poly,
    root: RootOfUnity,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support && self.check_poly == other.check_poly
    }
}

impl CyclicCode {
    /// Builds C_P; residues are reduced mod n and deduplicated.
    pub fn from_support(support: &[u64], root: &RootOfUnity) -> Result<CyclicCode> {
        let n = root.n();
        let mut support: Vec<u64> = support.iter().map(|&i| i % n).collect();
        support.sort_unstable();
        support.dedup();
        let complement = complement(&support, n);
        let check_poly = defining_polynomial(&support, root)?;
        let gen_poly = defining_polynomial(&complement, root)?;
        debug_assert_eq!(check_poly.mul(&gen_poly)?, Poly::x_n_minus_one(root.base(), n));
        Ok(CyclicCode { support, check_poly, gen_poly, root: root.clone() })
    }

    pub fn q(&self) -> u64 {
        self.root.q()
    }

    pub fn n(&self) -> u64 {
        self.root.n()
    }

    pub fn field(&self) -> &Field {
        self.root.base()
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    /// P, sorted.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    /// Z_n \ P, sorted.
    pub fn complement(&self) -> Vec<u64> {
        complement(&self.support, self.n())
    }

    /// f_P.
    pub fn check_poly(&self) -> &Poly {
        &self.check_poly
    }

    /// f_{Z_n \ P}.
    pub fn gen_poly(&self) -> &Poly {
        &self.gen_poly
    }

    pub fn dimension(&self) -> usize {
        self.support.len()
    }

    /// The dual code, C_{-(Z_n \ P)}.
    pub fn dual(&self) -> CyclicCode {
        let support = negate_set(&self.complement(), self.n());
        CyclicCode::from_support(&support, &self.root).expect("-P-bar is q-invariant")
    }

    /// phi_{s,t}(C_P) = C_{rho_{s,t}(P)}.
    pub fn isometry_image(&self, s: i64, t: i64) -> Result<CyclicCode> {
        let rho = checked_qperm(s, t, &self.root)?;
        let image = CyclicCode::from_support(&rho.apply_set(&self.support), &self.root)?;
        debug_assert_eq!(&poly::image_defining_polynomial(&self.check_poly, s, t, &self.root)?, image.check_poly());
        Ok(image)
    }

    /// Encodes message m as m(X) g(X) mod X^n - 1.
    pub fn encode(&self, message: &[Elem]) -> Result<Codeword> {
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch { expected: self.dimension(), got: message.len() });
        }
        let m = Poly::new(self.field(), message.to_vec());
        let word = m.mul(&self.gen_poly)?.reduce_cyclic(self.n());
        Ok(Codeword(word.to_vec(self.n() as usize)))
    }

    /// Membership: g(X) divides w(X) in GF(q)[X].
    pub fn contains(&self, word: &Codeword) -> bool {
        word.len() == self.n() as usize && word.as_poly(self.field()).rem(&self.gen_poly).is_ok_and(|r| r.is_zero())
    }

    /// Generator matrix rows X^i g(X), i < k.
    pub fn generator_rows(&self) -> Vec<Vec<Elem>> {
        let n = self.n() as usize;
        let g = self.gen_poly.to_vec(n);
        (0..self.dimension())
            .map(|i| {
                let mut row = vec![Elem::ZERO; n];
                for (j, &c) in g.iter().enumerate() {
                    row[(i + j) % n] = c;
                }
                row
            })
            .collect()
    }

    /// Exact weight distribution A_0..A_n, refusing more than `bound` codewords.
    pub fn weight_distribution(&self, bound: u128) -> Result<Vec<u64>> {
        weights::weight_distribution(self, bound)
    }

    /// Least nonzero weight; `None` for the zero code.
    pub fn min_distance(&self, bound: u128) -> Result<Option<usize>> {
        let dist = self.weight_distribution(bound)?;
        Ok(dist.iter().enumerate().skip(1).find(|(_, &a)| a > 0).map(|(i, _)| i))
    }

    /// Searches (s, t) in G_{q,n}, ascending t then s, for a partition
    /// Z_n = P + rho_{s,t}(P). `Ok(None)` when C_P is not iso-self-dual.
    pub fn certify_iso_self_dual(&self) -> Result<Option<IsoSelfDualCertificate>> {
        let n = self.n();
        if 2 * self.dimension() as u64 != n {
            return Err(Error::DimensionMismatch { dimension: self.dimension(), n });
        }
        let complement = self.complement();
        let found = zn::q_permutations(self.q(), n).into_iter().find(|rho| rho.apply_set(&self.support) == complement);
        Ok(found.map(|rho| IsoSelfDualCertificate::from_parts(self, rho.s(), rho.t())))
    }

    /// The certificate for a known (s, t), if the partition criterion holds.
    pub fn certificate_for(&self, s: i64, t: i64) -> Result<Option<IsoSelfDualCertificate>> {
        let rho = checked_qperm(s, t, &self.root)?;
        Ok((rho.apply_set(&self.support) == self.complement())
            .then(|| IsoSelfDualCertificate::from_parts(self, rho.s(), rho.t())))
    }
}

/// phi_{s,t} on words: a_i moves to position i s^{-1} mod n, scaled by theta^{-ti}.
pub fn isometry_apply_word(word: &Codeword, s: i64, t: i64, root: &RootOfUnity) -> Result<Codeword> {
    let rho = checked_qperm(s, t, root)?;
    if word.len() != root.n() as usize {
        return Err(Error::LengthMismatch { expected: root.n() as usize, got: word.len() });
    }
    Ok(Codeword(poly::isometry_apply(&word.0, &rho, root)))
}

/// Euclidean inner product over GF(q).
pub fn inner_product(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Evidence that C_P is iso-self-dual: rho_{s,t}(P) = Z_n \ P, hence
/// phi_{-s,t}(C_P) is the dual of C_P.
#[derive(Debug, Clone)]
pub struct IsoSelfDualCertificate {
    pub s: u64,
    pub t: u64,
    /// Check polynomial of the dual, f_{-(Z_n \ P)}.
    pub dual_check_poly: Poly,
}

impl IsoSelfDualCertificate {
    fn from_parts(code: &CyclicCode, s: u64, t: u64) -> IsoSelfDualCertificate {
        IsoSelfDualCertificate { s, t, dual_check_poly: code.dual().check_poly().clone() }
    }

    /// The isometry parameters (-s, t) mapping C_P onto its dual.
    pub fn dual_isometry(&self, n: u64) -> (i64, i64) {
        (zn::normalize(-(self.s as i64), n) as i64, self.t as i64)
    }

    /// Re-checks the partition, the dual polynomial, and orthogonality of
    /// phi_{-s,t}(C_P) against C_P on generator rows.
    pub fn validate(&self, code: &CyclicCode) -> bool {
        let n = code.n();
        let Ok(rho) = QPermutation::new(self.s as i64, self.t as i64, n, code.q()) else {
            return false;
        };
        if rho.apply_set(code.support()) != code.complement() {
            return false;
        }
        if &self.dual_check_poly != code.dual().check_poly() {
            return false;
        }
        let (s, t) = self.dual_isometry(n);
        let rows = code.generator_rows();
        let images: Vec<Codeword> = match rows
            .iter()
            .map(|r| isometry_apply_word(&Codeword(r.clone()), s, t, code.root()))
            .collect::<Result<_>>()
        {
            Ok(v) => v,
            Err(_) => return false,
        };
        rows.iter().all(|r| images.iter().all(|img| inner_product(code.field(), r, &img.0).is_zero()))
    }
}

/// Z_n \ set, sorted.
pub fn complement(set: &[u64], n: u64) -> Vec<u64> {
    let mut member = vec![false; n as usize];
    for &i in set {
        member[(i % n) as usize] = true;
    }
    (0..n).filter(|&i| !member[i as usize]).collect()
}

/// Whether `set` is closed under multiplication by q mod n.
pub fn is_q_invariant(set: &[u64], q: u64, n: u64) -> bool {
    CosetPartition::new(q, n).is_ok_and(|cp| cp.is_invariant(set))
}
