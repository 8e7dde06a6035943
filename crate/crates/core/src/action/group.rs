use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Exponent, InvertibleMatrix};

/// Generators of a matrix group acting on positive matrices by
/// `g·a = (g⁻¹)* a g⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    generators: Vec<InvertibleMatrix>,
    p: Exponent,
    /// Whether `generators` is already closed under inversion. When false the
    /// inverses are added as extra letters for word enumeration.
    includes_inverses: bool,
}

impl GroupPresentation {
    pub fn new(generators: Vec<ComplexMatrix>, p: Exponent, includes_inverses: bool) -> Result<Self> {
        let generators = generators
            .into_iter()
            .map(InvertibleMatrix::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_invertibles(generators, p, includes_inverses)
    }

    pub fn from_invertibles(generators: Vec<InvertibleMatrix>, p: Exponent, includes_inverses: bool) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Parameter("a group presentation needs at least one generator".into()))?;
        let n = first.n();
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: g.n(),
            });
        }
        Ok(Self {
            generators,
            p,
            includes_inverses,
        })
    }

    pub fn n(&self) -> usize {
        self.generators[0].n()
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn includes_inverses(&self) -> bool {
        self.includes_inverses
    }

    pub fn generators(&self) -> &[InvertibleMatrix] {
        &self.generators
    }

    /// Generators followed by their inverses unless the list is already
    /// closed under inversion.
    pub fn letters(&self) -> Vec<InvertibleMatrix> {
        let mut out = self.generators.clone();
        if !self.includes_inverses {
            out.extend(self.generators.iter().map(InvertibleMatrix::inverted));
        }
        out
    }

    /// The presentation of `f⁻¹ H f`.
    pub fn conjugated(&self, f: &InvertibleMatrix) -> Self {
        let finv = f.inverted();
        Self {
            generators: self.generators.iter().map(|h| finv.conjugate(h)).collect(),
            p: self.p,
            includes_inverses: self.includes_inverses,
        }
    }

    /// Largest `‖g*g − I‖∞` over the generators.
    pub fn unitarity_defect(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| g.matrix().unitarity_defect())
            .fold(0.0, f64::max)
    }

    pub fn with_exponent(&self, p: Exponent) -> Self {
        Self { p, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_and_conjugation() {
        let p = Exponent::new(2.0).unwrap();
        let h = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.5, 0.0]]).unwrap();
        let g = GroupPresentation::new(vec![h.clone()], p, false).unwrap();
        assert_eq!(g.letters().len(), 2);
        assert_eq!(GroupPresentation::new(vec![h], p, true).unwrap().letters().len(), 1);

        let s = InvertibleMatrix::new(ComplexMatrix::from_real_diagonal(&[2.0, 1.0]).unwrap()).unwrap();
        // s⁻¹ h s = swap.
        let c = g.conjugated(&s);
        let swap = ComplexMatrix::permutation(&[1, 0]).unwrap();
        assert!((c.generators()[0].matrix() - &swap).max_abs() < 1e-15);
        assert!(c.unitarity_defect() < 1e-15);

        assert!(GroupPresentation::new(vec![], p, false).is_err());
        let singular = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(GroupPresentation::new(vec![singular], p, false), Err(Error::Singular { .. })));
    }
}
