//! Iso-self-dual cyclic codes over finite fields.
//!
//! A cyclic code of length n over GF(q) (with gcd(q, n) = 1) is identified by
//! a subset P of Z_n closed under multiplication by q: the code C_P has check
//! polynomial f_P(X) = prod_{i in P} (X - theta^i) for a primitive n-th root of
//! unity theta. C_P is mapped onto its Euclidean dual by a weight-preserving
//! automorphism of GF(q)[X]/(X^n - 1) exactly when Z_n = P + rho(P) is a
//! partition for some permutation rho(i) = s(i + t) with qt = t mod n.
//!
//! - [`gf`]: GF(p^k) arithmetic and roots of unity.
//! - [`poly`]: polynomials, the coset factorization of X^n - 1 and its transforms.
//! - [`zn`]: Z_n, 2-adic valuations, cyclotomic cosets and q-permutations.
//! - [`splitting`]: existence tests and constructions of the partitions.
//! - [`codes`]: cyclic codes, duals, isometries, certificates, weights and the MDS family.
//! - [`oracle`]: brute-force cross-checks for all of the above.
//!
//! ```
//! use isocyclic::codes::CyclicCode;
//! use isocyclic::gf::{Field, RootOfUnity};
//! use isocyclic::splitting::build_splitting;
//!
//! let root = RootOfUnity::new(&Field::new(5, 1)?, 8, Some("theta^2=2".parse()?))?;
//! let s = build_splitting(5, 8, None)?;
//! assert_eq!(s.support, [0, 1, 4, 5]);
//! let code = CyclicCode::from_support(&s.support, &root)?;
//! let cert = code.certify_iso_self_dual()?.unwrap();
//! assert_eq!((cert.s, cert.t), (1, 2));
//! assert_eq!(code.check_poly().balanced().to_string(), "X^4 + 2X^2 + 2");
//! # Ok::<(), isocyclic::Error>(())
//! ```

pub mod codes;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod poly;
pub mod splitting;
pub mod zn;

pub use error::{Error, Result};
