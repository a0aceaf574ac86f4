use serde::{Deserialize, Serialize};

use crate::exactnum::{quad_from_json_parts, IntRepr, Matrix, QuadScalar};

use super::{verify_matrix, Provenance, Symmetry, SymmetryError, VerificationReport};

/// The JSON form of a symmetry over `Q` or `Q(√d)`.
///
/// Entries are `[a, b, c]` for `(a + b√d)/c` with `d = field`, or `[a, b, c, d]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(default)]
    pub field: u64,
    #[serde(default = "custom_kind")]
    pub provenance: String,
    pub matrix: Vec<Vec<Entry>>,
}

fn custom_kind() -> String {
    "custom".into()
}

/// One matrix entry: built from a scalar, or read from JSON and resolved against the fixture's field.
#[derive(Clone, Debug)]
pub struct Entry(EntryRepr);

#[derive(Clone, Debug)]
enum EntryRepr {
    Value(QuadScalar),
    Raw(Vec<IntRepr>),
}

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            EntryRepr::Value(q) => q.serialize(s),
            EntryRepr::Raw(_) => Err(serde::ser::Error::custom("unresolved entry")),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Entry(EntryRepr::Raw(Vec::deserialize(d)?)))
    }
}

impl Fixture {
    pub fn from_symmetry(name: Option<&str>, s: &Symmetry<QuadScalar>) -> Self {
        Fixture {
            name: name.map(str::to_string),
            n: s.dim(),
            field: s.field(),
            provenance: s.provenance().kind().to_string(),
            matrix: s.matrix().to_rows().into_iter().map(|r| r.into_iter().map(|q| Entry(EntryRepr::Value(q))).collect()).collect(),
        }
    }

    /// The `n² × n²` matrix with every entry resolved in the declared field.
    pub fn matrix(&self) -> Result<Matrix<QuadScalar>, SymmetryError> {
        let nn = self.n * self.n;
        if self.matrix.len() != nn || self.matrix.iter().any(|r| r.len() != nn) {
            return Err(SymmetryError::Shape(format!("fixture matrix must be {nn}×{nn} for n = {}", self.n)));
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match &e.0 {
                        EntryRepr::Value(q) => Ok(q.clone()),
                        EntryRepr::Raw(parts) => quad_from_json_parts(parts.clone(), self.field).map_err(SymmetryError::Shape),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(rows)?;
        let d = m.field()?;
        if self.field != 0 && d != 0 && d != self.field {
            return Err(crate::exactnum::NumError::FieldMismatch(self.field, d).into());
        }
        Ok(m)
    }

    pub fn verify(&self) -> Result<VerificationReport, SymmetryError> {
        Ok(verify_matrix(self.n, &self.matrix()?))
    }

    pub fn to_symmetry(&self) -> Result<Symmetry<QuadScalar>, SymmetryError> {
        Symmetry::new(self.n, self.matrix()?, Provenance::Custom)
    }
}
