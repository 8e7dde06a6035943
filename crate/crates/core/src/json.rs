//! JSON file formats.
//!
//! ```text
//! matrix       {"n": 2, "re": [[..], [..]], "im": [[..], [..]]}   "im" optional
//! group        {"p": 2.0, "generators": [matrix, ..], "includes_inverses": false}
//! norm spec    {"kind": "hilbert", "a": matrix}
//!              {"kind": "max", "bs": [matrix, ..]}
//!              {"kind": "pushforward", "g": matrix, "inner": spec}
//! certificate  {"lower": matrix, "upper": matrix}
//! ```

use serde::{Deserialize, Serialize};

use crate::action::GroupPresentation;
use crate::error::{Error, Result};
use crate::linalg::{CVector, ComplexMatrix, Exponent, HermitianMatrix, InvertibleMatrix, C64};
use crate::manifold::PPoint;
use crate::norms::{ClosenessCertificate, NormSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let (re, im) = m.to_rows();
        let real = im.iter().flatten().all(|&x| x == 0.0);
        Self {
            n: m.n(),
            re,
            im: (!real).then_some(im),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.re.len() != self.n {
            return Err(Error::Input(format!("matrix declares n = {} but has {} rows", self.n, self.re.len())));
        }
        ComplexMatrix::from_rows(&self.re, self.im.as_deref())
    }

    pub fn to_ppoint(&self, p: Exponent) -> Result<PPoint> {
        PPoint::new(HermitianMatrix::new(self.to_matrix()?)?, p)
    }
}

/// A complex vector as parallel real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl VectorJson {
    pub fn from_vector(v: &CVector) -> Self {
        Self {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_vector(&self) -> CVector {
        CVector::from_iterator(self.re.len(), self.re.iter().zip(&self.im).map(|(&r, &i)| C64::new(r, i)))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub p: f64,
    pub generators: Vec<MatrixJson>,
    #[serde(default)]
    pub includes_inverses: bool,
}

impl GroupJson {
    pub fn from_group(g: &GroupPresentation) -> Self {
        Self {
            p: g.p().get(),
            generators: g.generators().iter().map(|h| MatrixJson::from_matrix(h.matrix())).collect(),
            includes_inverses: g.includes_inverses(),
        }
    }

    pub fn to_group(&self) -> Result<GroupPresentation> {
        let gens = self.generators.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>>>()?;
        GroupPresentation::new(gens, Exponent::new(self.p)?, self.includes_inverses)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormSpecJson {
    Hilbert { a: MatrixJson },
    Max { bs: Vec<MatrixJson> },
    Pushforward { g: MatrixJson, inner: Box<NormSpecJson> },
}

impl NormSpecJson {
    pub fn from_spec(spec: &NormSpec) -> Self {
        match spec {
            NormSpec::Hilbert(a) => NormSpecJson::Hilbert {
                a: MatrixJson::from_matrix(a.matrix().as_complex()),
            },
            NormSpec::Max(bs) => NormSpecJson::Max {
                bs: bs.iter().map(|b| MatrixJson::from_matrix(b.matrix().as_complex())).collect(),
            },
            NormSpec::Pushforward { g, inner } => NormSpecJson::Pushforward {
                g: MatrixJson::from_matrix(g.matrix()),
                inner: Box::new(Self::from_spec(inner)),
            },
        }
    }

    /// Builds and validates the spec; forms carry exponent `p`.
    pub fn to_spec(&self, p: Exponent) -> Result<NormSpec> {
        let spec = match self {
            NormSpecJson::Hilbert { a } => NormSpec::Hilbert(a.to_ppoint(p)?),
            NormSpecJson::Max { bs } => NormSpec::Max(bs.iter().map(|b| b.to_ppoint(p)).collect::<Result<_>>()?),
            NormSpecJson::Pushforward { g, inner } => NormSpec::Pushforward {
                g: InvertibleMatrix::new(g.to_matrix()?)?,
                inner: Box::new(inner.to_spec(p)?),
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub lower: MatrixJson,
    pub upper: MatrixJson,
}

impl CertificateJson {
    pub fn from_certificate(c: &ClosenessCertificate) -> Self {
        Self {
            lower: MatrixJson::from_matrix(c.lower.matrix().as_complex()),
            upper: MatrixJson::from_matrix(c.upper.matrix().as_complex()),
        }
    }

    /// Parses the two bounds; they are checked against a spec by
    /// [`ClosenessCertificate::verify`].
    pub fn to_bounds(&self, p: Exponent) -> Result<(PPoint, PPoint)> {
        Ok((self.lower.to_ppoint(p)?, self.upper.to_ppoint(p)?))
    }
}

/// Reads and deserialises a JSON file, mapping failures to [`Error::Input`].
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}
