//! JSON code descriptors:
//! `{"q":5,"n":8,"P":[0,1,4,5],"check_poly":[2,0,2,0,1],"gen_poly":[...],"certificate":{"s":1,"t":2}}`.
//! Coefficients are ascending field encodings in [0, q); residues are in [0, n).

use serde::{Deserialize, Serialize};

use super::{CyclicCode, IsoSelfDualCertificate};
use crate::error::{Error, Result};
use crate::gf::{Field, RootOfUnity, ThetaPin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub s: u64,
    pub t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: u64,
    pub n: u64,
    #[serde(rename = "P")]
    pub support: Vec<u64>,
    pub check_poly: Vec<u32>,
    pub gen_poly: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    /// f_{-(Z_n \ P)}, the dual's check polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_check_poly: Option<Vec<u32>>,
    /// The theta pin used, when theta is not the canonical root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pin_theta: Option<String>,
}

impl CodeDescriptor {
    pub fn new(code: &CyclicCode, cert: Option<&IsoSelfDualCertificate>) -> CodeDescriptor {
        CodeDescriptor {
            q: code.q(),
            n: code.n(),
            support: code.support().to_vec(),
            check_poly: code.check_poly().to_ints(),
            gen_poly: code.gen_poly().to_ints(),
            certificate: cert.map(|c| CertificateJson { s: c.s, t: c.t }),
            dual_check_poly: cert.map(|c| c.dual_check_poly.to_ints()),
            pin_theta: code.root().pin().map(|p| p.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<CodeDescriptor> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn pin(&self) -> Result<Option<ThetaPin>> {
        self.pin_theta.as_deref().map(str::parse).transpose()
    }

    /// The root of unity the descriptor was built with.
    pub fn root(&self) -> Result<RootOfUnity> {
        let field = Field::of_order(self.q)?;
        RootOfUnity::new(&field, self.n, self.pin()?)
    }

    /// Rebuilds the code from q, n, P and the pin; polynomials are not trusted.
    pub fn rebuild(&self) -> Result<CyclicCode> {
        if let Some(&bad) = self.support.iter().find(|&&i| i >= self.n) {
            return Err(Error::Parse(format!("residue {bad} outside [0, {})", self.n)));
        }
        CyclicCode::from_support(&self.support, &self.root()?)
    }
}
