//! The iso-self-dual MDS family of length q + 1 for q = 1 mod 4, and its
//! description as the GF(q)-restriction of a generalized Reed-Solomon code.

use super::{CyclicCode, IsoSelfDualCertificate};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, RootOfUnity, ThetaPin};
use crate::poly::Poly;
use crate::zn;

/// P = {-(n-2)/4, ..., (n-2)/4} in Z_n with n = q + 1, normalized to [0, n).
pub fn mds_support(q: u64) -> Result<Vec<u64>> {
    if q % 4 != 1 {
        return Err(Error::BadResidue(q));
    }
    let n = q + 1;
    let ell = ((n - 2) / 4) as i64;
    let mut p: Vec<u64> = (-ell..=ell).map(|i| zn::normalize(i, n)).collect();
    p.sort_unstable();
    Ok(p)
}

/// The [q+1, (q+1)/2, (q+3)/2] code with its certificate (s, t) = (1, (q+1)/2).
pub fn mds_construct(q: u64, pin: Option<ThetaPin>) -> Result<(CyclicCode, IsoSelfDualCertificate)> {
    let support = mds_support(q)?;
    let field = Field::of_order(q)?;
    let n = q + 1;
    let root = RootOfUnity::new(&field, n, pin)?;
    let code = CyclicCode::from_support(&support, &root)?;
    let cert = code.certificate_for(1, (n / 2) as i64)?.expect("tau_{n/2} splits the MDS support");
    Ok((code, cert))
}

fn ell(root: &RootOfUnity) -> Result<i64> {
    let n = root.n();
    if root.q() % 4 != 1 || n != root.q() + 1 {
        return Err(Error::BadResidue(root.q()));
    }
    Ok(((n - 2) / 4) as i64)
}

/// (a(1), theta^l a(theta^{-1}), ..., theta^{(n-1)l} a(theta^{-(n-1)})) over
/// GF(q^2), l = (n-2)/4, for deg a < n/2.
pub fn grs_codeword(a: &Poly, root: &RootOfUnity) -> Result<Vec<Elem>> {
    let ell = ell(root)?;
    let n = root.n();
    let half = (n / 2) as usize;
    if a.field() != root.ext() {
        return Err(Error::FieldMismatch);
    }
    if let Some(d) = a.degree().filter(|&d| d >= half) {
        return Err(Error::DegreeTooHigh { degree: d, bound: half });
    }
    let ext = root.ext();
    Ok((0..n as i64).map(|i| ext.mul(root.power(i * ell), a.eval(root.power(-i)))).collect())
}

/// Recovers a with deg a < n/2 from a word over GF(q^2) by interpolating the
/// first n/2 coordinates; `None` when the remaining coordinates disagree.
pub fn grs_preimage(word: &[Elem], root: &RootOfUnity) -> Result<Option<Poly>> {
    let ell = ell(root)?;
    let n = root.n() as usize;
    if word.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: word.len() });
    }
    let ext = root.ext();
    let half = n / 2;
    // a(x_i) = theta^{-i l} w_i at x_i = theta^{-i}
    let points: Vec<(Elem, Elem)> =
        (0..half as i64).map(|i| (root.power(-i), ext.mul(root.power(-i * ell), word[i as usize]))).collect();
    let mut a = Poly::zero(ext);
    for (j, &(xj, yj)) in points.iter().enumerate() {
        let mut basis = Poly::one(ext);
        let mut denom = Elem::ONE;
        for (m, &(xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            basis = basis.mul(&Poly::new(ext, vec![ext.neg(xm), Elem::ONE]))?;
            denom = ext.mul(denom, ext.sub(xj, xm));
        }
        a = a.add(&basis.scale(ext.div(yj, denom)?))?;
    }
    Ok((grs_codeword(&a, root)? == word).then_some(a))
}
