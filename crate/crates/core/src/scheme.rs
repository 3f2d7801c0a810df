//! Presentations of subschemes of `Spec(A)` through the closed point: an
//! ambient variable count plus a finite generator list. Sections, singular
//! loci and ambient schemes are all carried this way.

use crate::error::Error;
use crate::field::Field;
use crate::poly::TruncatedPoly;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePresentation<F: Field> {
    field: F,
    n: u32,
    gens: Vec<TruncatedPoly<F>>,
    label: String,
}

impl<F: Field> SchemePresentation<F> {
    /// A presentation by exact polynomial generators, each vanishing at the
    /// origin.
    pub fn new(
        field: F,
        n: u32,
        gens: Vec<TruncatedPoly<F>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        for g in &gens {
            if g.n() != n {
                return Err(Error::AmbientMismatch(g.n(), n));
            }
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if !g.is_exact() {
                return Err(Error::Usage(
                    "scheme generators must be exact polynomials".into(),
                ));
            }
            if !field.is_zero(&g.constant_term()) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        Ok(Self::from_parts(field, n, gens, label))
    }

    /// Internal constructor for computed loci; skips the origin check because
    /// a degree-0 minor list can legitimately contain a unit (the empty
    /// scheme).
    pub(crate) fn from_parts(
        field: F,
        n: u32,
        gens: Vec<TruncatedPoly<F>>,
        label: impl Into<String>,
    ) -> Self {
        let mut dedup: Vec<TruncatedPoly<F>> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if !dedup.contains(&g) {
                dedup.push(g);
            }
        }
        SchemePresentation {
            field,
            n,
            gens: dedup,
            label: label.into(),
        }
    }

    /// The full ambient ring (no generators).
    pub fn ambient(field: F, n: u32, label: impl Into<String>) -> Self {
        Self::from_parts(field, n, Vec::new(), label)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gens(&self) -> &[TruncatedPoly<F>] {
        &self.gens
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Presentation with one extra generator appended (e.g. a section).
    pub fn with_extra(&self, extra: TruncatedPoly<F>, label: impl Into<String>) -> Result<Self> {
        if extra.n() != self.n {
            return Err(Error::AmbientMismatch(extra.n(), self.n));
        }
        let mut gens = self.gens.clone();
        gens.push(extra);
        Ok(Self::from_parts(self.field.clone(), self.n, gens, label))
    }

    pub fn render_gens(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.render(names)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn rejects_nonvanishing_generator() {
        let q = Rationals;
        let one = TruncatedPoly::one(q, 2);
        assert!(matches!(
            SchemePresentation::new(q, 2, vec![one], "bad"),
            Err(Error::NonzeroConstantTerm)
        ));
    }

    #[test]
    fn dedups_and_drops_zero() {
        let q = Rationals;
        let x = TruncatedPoly::variable(q, 2, 0);
        let z = TruncatedPoly::zero(q, 2);
        let s =
            SchemePresentation::new(q, 2, vec![x.clone(), x.clone(), z], "line").unwrap();
        assert_eq!(s.gens().len(), 1);
    }
}
