//! Finitely supported probability measures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{validate_weights, OrderedPositiveVector};
use crate::spd::SpdMatrix;

/// Types that can serve as measure atoms (anything with a dimension that
/// must agree across the support).
pub trait HasDim {
    fn dim(&self) -> usize;
}

impl HasDim for SpdMatrix {
    fn dim(&self) -> usize {
        SpdMatrix::dim(self)
    }
}

impl HasDim for OrderedPositiveVector {
    fn dim(&self) -> usize {
        OrderedPositiveVector::dim(self)
    }
}

/// Finitely supported probability measure: atoms with positive weights
/// summing to 1 (within 1e-12).
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteMeasure<T> {
    weights: Vec<f64>,
    atoms: Vec<T>,
}

impl<T: HasDim> DiscreteMeasure<T> {
    pub fn new(atoms: Vec<T>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if atoms.len() != weights.len() {
            return Err(Error::DimensionMismatch(atoms.len(), weights.len()));
        }
        validate_weights(&weights)?;
        let dim = atoms[0].dim();
        for a in &atoms {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch(dim, a.dim()));
            }
        }
        Ok(DiscreteMeasure { weights, atoms })
    }

    /// Uniform measure `(1/m) sum_j delta_{A_j}`.
    pub fn uniform(atoms: Vec<T>) -> Result<Self> {
        let m = atoms.len();
        if m == 0 {
            return Err(Error::EmptyMeasure);
        }
        // Make the weights sum to 1 exactly under sequential summation.
        let w = 1.0 / m as f64;
        let mut weights = vec![w; m];
        let head: f64 = weights[..m - 1].iter().sum();
        weights[m - 1] = 1.0 - head;
        DiscreteMeasure::new(atoms, weights)
    }

    pub fn point_mass(atom: T) -> Self {
        DiscreteMeasure {
            weights: vec![1.0],
            atoms: vec![atom],
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_dim(&self) -> usize {
        self.atoms[0].dim()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &T)> {
        self.weights.iter().copied().zip(self.atoms.iter())
    }

    /// Push-forward `f_* mu`: maps atoms, keeps weights.
    pub fn map<U: HasDim>(&self, f: impl FnMut(&T) -> U) -> DiscreteMeasure<U> {
        DiscreteMeasure {
            weights: self.weights.clone(),
            atoms: self.atoms.iter().map(f).collect(),
        }
    }

    /// Fallible push-forward, for atom maps that can fail.
    pub fn try_map<U: HasDim>(
        &self,
        mut f: impl FnMut(&T) -> Result<U>,
    ) -> Result<DiscreteMeasure<U>> {
        let atoms: Result<Vec<U>> = self.atoms.iter().map(&mut f).collect();
        Ok(DiscreteMeasure {
            weights: self.weights.clone(),
            atoms: atoms?,
        })
    }
}

/// JSON exchange form `{"weights": [...], "atoms": [...]}`.
#[derive(Deserialize)]
struct MeasureJson<T> {
    weights: Vec<f64>,
    atoms: Vec<T>,
}

impl<'de, T: HasDim + Deserialize<'de>> Deserialize<'de> for DiscreteMeasure<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MeasureJson::<T>::deserialize(deserializer)?;
        DiscreteMeasure::new(raw.atoms, raw.weights).map_err(serde::de::Error::custom)
    }
}
