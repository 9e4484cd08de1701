//! Dense univariate polynomials over a [`Field`], the coset factorization of
//! X^n - 1, and the transforms relating defining polynomials of P and its
//! images under q-permutations.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, RootOfUnity};
use crate::zn::{self, CosetPartition, QPermutation};

/// A polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_csv())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Integer coefficients read in the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![Elem::ONE])
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    /// X^n - 1.
    pub fn x_n_minus_one(field: &Field, n: u64) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n as usize + 1];
        coeffs[0] = field.neg(Elem::ONE);
        coeffs[n as usize] = field.add(coeffs[n as usize], Elem::ONE);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient vector padded with zeros to length `len`.
    pub fn to_vec(&self, len: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Elem::ZERO);
        v
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(f, (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(f, (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Reduction modulo X^n - 1 by folding exponents.
    pub fn reduce_cyclic(&self, n: u64) -> Poly {
        let f = &self.field;
        let n = n as usize;
        let mut out = vec![Elem::ZERO; n.min(self.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = f.add(out[i % n], c);
        }
        Poly::new(f, out)
    }

    /// Image of every coefficient under a field map.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Elem) -> Elem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// (-1)^deg a(-X). Requires a monic input.
    pub fn alternating(&self) -> Result<Poly> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let f = &self.field;
        let d = self.coeffs.len() - 1;
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, &c)| if (d - i) % 2 == 1 { f.neg(c) } else { c }).collect();
        Ok(Poly::new(f, coeffs))
    }

    /// a_0^{-1} X^deg a(1/X). Requires a monic input with nonzero constant term.
    pub fn monic_reciprocal(&self) -> Result<Poly> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let a0 = self.coeffs[0];
        let a0_inv = self.field.inv(a0).ok_or(Error::ZeroConstantTerm)?;
        let reversed: Vec<Elem> = self.coeffs.iter().rev().copied().collect();
        Ok(Poly::new(&self.field, reversed).scale(a0_inv))
    }

    /// Comma-separated ascending coefficient encodings, e.g. "2,0,2,0,1".
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses the comma-separated format; values are field encodings in [0, q).
    pub fn parse_csv(field: &Field, text: &str) -> Result<Poly> {
        let coeffs = text
            .split(',')
            .map(|tok| {
                let v: u64 = tok.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
                if v >= field.order() {
                    return Err(Error::Parse(format!("coefficient {v} outside [0, {})", field.order())));
                }
                Ok(Elem(v as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// Coefficient encodings as plain integers (the JSON form).
    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// Printer with signed residues in [-(p-1)/2, (p-1)/2].
    pub fn balanced(&self) -> Balanced<'_> {
        Balanced(self)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, balanced: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let signed = if balanced { field.balanced(c) } else { None };
            let (negative, body) = match signed {
                Some(v) if v < 0 => (true, (-v).to_string()),
                Some(v) => (false, v.to_string()),
                None => (false, elem_text(field, c)),
            };
            let body = if deg > 0 && body == "1" { String::new() } else { body };
            let mono = match deg {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{deg}"),
            };
            let term = if body.is_empty() && mono.is_empty() { "1".to_string() } else { format!("{body}{mono}") };
            match (first, negative) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Prime-field elements print as integers; others as "(c0+c1a+...)" in the basis element a.
fn elem_text(field: &Field, c: Elem) -> String {
    if field.degree() == 1 {
        return c.0.to_string();
    }
    let parts: Vec<String> = field
        .coeffs(c)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| match i {
            0 => d.to_string(),
            1 if d == 1 => "a".to_string(),
            1 => format!("{d}a"),
            _ if d == 1 => format!("a^{i}"),
            _ => format!("{d}a^{i}"),
        })
        .collect();
    if parts.len() == 1 && field.coeffs(c)[0] != 0 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("+"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, false)
    }
}

/// See [`Poly::balanced`].
pub struct Balanced<'a>(&'a Poly);

impl fmt::Display for Balanced<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(f, true)
    }
}

/// f_Q(X) = prod_{i in Q} (X - theta^i), expanded in GF(q^d) and projected to GF(q).
pub fn coset_polynomial(coset: &[u64], root: &RootOfUnity) -> Result<Poly> {
    let ext = root.ext();
    let mut acc = vec![Elem::ONE];
    for &i in coset {
        let r = ext.neg(root.power(i as i64));
        let mut next = vec![Elem::ZERO; acc.len() + 1];
        for (j, &c) in acc.iter().enumerate() {
            next[j + 1] = ext.add(next[j + 1], c);
            next[j] = ext.add(next[j], ext.mul(c, r));
        }
        acc = next;
    }
    let tower = root.tower();
    let coeffs = acc
        .into_iter()
        .enumerate()
        .map(|(degree, c)| {
            if !tower.in_base_field(c) {
                return Err(Error::CoefficientNotInBaseField { degree });
            }
            Ok(tower.project(c).expect("Frobenius-fixed elements lie in the base field"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(root.base(), coeffs))
}

/// f_P(X), the product of the coset polynomials of the cosets making up P.
pub fn defining_polynomial(support: &[u64], root: &RootOfUnity) -> Result<Poly> {
    let cp = CosetPartition::new(root.q(), root.n())?;
    let ids = cp.decompose(support)?;
    ids.iter().try_fold(Poly::one(root.base()), |acc, &id| acc.mul(&coset_polynomial(cp.coset(id), root)?))
}

/// The q-permutation for (s, t) on Z_n, reported as `InvalidPermutation` when not valid.
pub(crate) fn checked_qperm(s: i64, t: i64, root: &RootOfUnity) -> Result<QPermutation> {
    QPermutation::new(s, t, root.n(), root.q()).map_err(|e| Error::InvalidPermutation(e.to_string()))
}

/// a(theta^{-t} X^{s^{-1}}) mod X^n - 1, with s^{-1} the least positive inverse.
///
/// Coefficient a_i moves to X^{i s^{-1} mod n} scaled by theta^{-ti}, which is
/// in GF(q) because qt = t mod n.
pub fn isometry_substitute(a: &Poly, s: i64, t: i64, root: &RootOfUnity) -> Result<Poly> {
    let rho = checked_qperm(s, t, root)?;
    if a.field() != root.base() {
        return Err(Error::FieldMismatch);
    }
    let n = root.n();
    let coeffs = a.reduce_cyclic(n).to_vec(n as usize);
    Ok(Poly::new(root.base(), isometry_apply(&coeffs, &rho, root)))
}

/// The monomial action of phi_{s,t} on a length-n coefficient vector.
pub(crate) fn isometry_apply(word: &[Elem], rho: &QPermutation, root: &RootOfUnity) -> Vec<Elem> {
    let n = root.n();
    let base = root.base();
    let s_inv = rho.s_inverse();
    let scale = root.power_in_base(-(rho.t() as i64)).expect("theta^t lies in GF(q) for a q-translation t");
    let mut out = vec![Elem::ZERO; n as usize];
    let mut factor = Elem::ONE;
    for (i, &c) in word.iter().enumerate() {
        let pos = (i as u128 * s_inv as u128 % n as u128) as usize;
        out[pos] = base.mul(c, factor);
        factor = base.mul(factor, scale);
    }
    out
}

/// f_{rho_{s,t}(P)} = gcd(f_P(theta^{-t} X^{s^{-1}}), X^n - 1).
pub fn image_defining_polynomial(check: &Poly, s: i64, t: i64, root: &RootOfUnity) -> Result<Poly> {
    let substituted = isometry_substitute(check, s, t, root)?;
    substituted.gcd(&Poly::x_n_minus_one(root.base(), root.n()))
}

/// The full factorization of X^n - 1 as coset polynomials, in coset order.
pub fn coset_factors(root: &RootOfUnity) -> Result<Vec<(Vec<u64>, Poly)>> {
    let cp = CosetPartition::new(root.q(), root.n())?;
    cp.cosets().iter().map(|c| Ok((c.clone(), coset_polynomial(c, root)?))).collect()
}

/// Pairs each factor with its alternating polynomial, as (index, index).
///
/// Only meaningful when nu2(n) = 1, where tau_{n/2} pairs coset Q with Q + n/2
/// and f_{Q + n/2} is the alternating polynomial of f_Q. Returns `None` if
/// some factor's alternating polynomial is not among the factors.
pub fn alternating_pairs(factors: &[Poly]) -> Result<Option<Vec<(usize, usize)>>> {
    let mut used = vec![false; factors.len()];
    let mut pairs = Vec::new();
    for i in 0..factors.len() {
        if used[i] {
            continue;
        }
        let alt = factors[i].alternating()?;
        let Some(j) = (0..factors.len()).find(|&j| !used[j] && j != i && factors[j] == alt) else {
            return Ok(None);
        };
        used[i] = true;
        used[j] = true;
        pairs.push((i, j));
    }
    Ok(Some(pairs))
}

/// Residues of -P mod n, sorted.
pub fn negate_set(set: &[u64], n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = set.iter().map(|&i| zn::normalize(-(i as i64), n)).collect();
    out.sort_unstable();
    out
}
