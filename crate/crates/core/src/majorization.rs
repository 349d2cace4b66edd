//! Ordered positive vectors, (weak) log-majorization and additive
//! majorization predicates, and componentwise weighted geometric means
//! on the positive orthant.
//!
//! All log-majorization comparisons run in the log domain so that prefix
//! products over many terms cannot overflow. The majorization theorems
//! tested downstream hold exactly; tolerances only absorb floating-point
//! error, with the mixed absolute/relative form `tol * (1 + |reference|)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for majorization predicates.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Vector in the positive orthant sorted decreasingly; the carrier of
/// eigenvalue and symplectic-eigenvalue maps.
///
/// The constructor sorts, so any positive vector is accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedPositiveVector {
    values: Vec<f64>,
}

impl OrderedPositiveVector {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        for &v in &values {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::NotPositiveVector(v));
            }
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("non-finite entry"));
        Ok(OrderedPositiveVector { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Componentwise natural log (a decreasing real vector).
    pub fn log(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.ln()).collect()
    }

    /// Componentwise power; the constructor re-sorts (needed for p < 0).
    pub fn powf(&self, p: f64) -> OrderedPositiveVector {
        OrderedPositiveVector::new(self.values.iter().map(|v| v.powf(p)).collect())
            .expect("powers of positive entries stay positive")
    }

    /// Scaling by a positive factor.
    pub fn scale(&self, s: f64) -> OrderedPositiveVector {
        assert!(s > 0.0, "scaling factor must be positive");
        OrderedPositiveVector {
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn product(&self) -> f64 {
        self.values.iter().product()
    }

    fn check_dim(&self, other: &OrderedPositiveVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Diagonal-embedding Riemannian distance `||log a - log b||_2`.
    pub fn log_l2_distance(&self, other: &OrderedPositiveVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.ln() - b.ln()).powi(2))
            .sum::<f64>()
            .sqrt())
    }

    /// Thompson distance on the orthant: `max_i |log a_i - log b_i|`.
    pub fn log_linf_distance(&self, other: &OrderedPositiveVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((a.ln() - b.ln()).abs())))
    }
}

/// Structured verdict of a majorization predicate. The boolean is the
/// contract; the margins let callers report near-violations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MajorizationCheck {
    /// Whether the predicate holds within tolerance.
    pub holds: bool,
    /// Worst raw prefix slack `sum_b(k) - sum_a(k)` over the prefixes the
    /// predicate constrains (log domain for log-majorization, linear for
    /// additive). `+inf` when there is no constrained prefix.
    pub worst_prefix_margin: f64,
    /// `|sum_a(n) - sum_b(n)|`, the total-sum equality gap. Only the strong
    /// predicates require it to be small.
    pub total_gap: f64,
    /// 1-based index of the first failing condition (`n` marks the total
    /// equality for strong predicates).
    pub failing_index: Option<usize>,
}

fn prefix_check(
    sums_a: &[f64],
    sums_b: &[f64],
    rel_tol: f64,
    prefixes_end: usize,
    require_total_equality: bool,
) -> MajorizationCheck {
    let n = sums_a.len();
    let mut holds = true;
    let mut worst = f64::INFINITY;
    let mut failing_index = None;
    for k in 0..prefixes_end {
        let slack = sums_b[k] - sums_a[k];
        worst = worst.min(slack);
        if slack < -rel_tol * (1.0 + sums_b[k].abs()) && failing_index.is_none() {
            holds = false;
            failing_index = Some(k + 1);
        }
    }
    let total_gap = (sums_a[n - 1] - sums_b[n - 1]).abs();
    if require_total_equality
        && total_gap > rel_tol * (1.0 + sums_b[n - 1].abs())
        && failing_index.is_none()
    {
        holds = false;
        failing_index = Some(n);
    }
    MajorizationCheck {
        holds,
        worst_prefix_margin: worst,
        total_gap,
        failing_index,
    }
}

fn log_prefix_sums(v: &OrderedPositiveVector) -> Vec<f64> {
    v.values()
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x.ln();
            Some(*acc)
        })
        .collect()
}

/// Log-majorization `a <_log b`: prefix products of `a` bounded by those of
/// `b` for `k < n`, total products equal. Comparisons are made on prefix
/// sums of logs with tolerance `rel_tol * (1 + |sum_b|)`.
pub fn log_majorizes(
    a: &OrderedPositiveVector,
    b: &OrderedPositiveVector,
    rel_tol: f64,
) -> Result<MajorizationCheck> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let sa = log_prefix_sums(a);
    let sb = log_prefix_sums(b);
    Ok(prefix_check(&sa, &sb, rel_tol, a.dim() - 1, true))
}

/// Weak log-majorization: prefix inequalities for every `k <= n`, no
/// total-product equality. Useful as a diagnostic when the determinant
/// equality is the failing part of a strong check.
pub fn weak_log_majorizes(
    a: &OrderedPositiveVector,
    b: &OrderedPositiveVector,
    rel_tol: f64,
) -> Result<MajorizationCheck> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let sa = log_prefix_sums(a);
    let sb = log_prefix_sums(b);
    Ok(prefix_check(&sa, &sb, rel_tol, a.dim(), false))
}

/// Additive majorization `a < b` for decreasingly sorted real vectors:
/// prefix sums bounded for `k < n`, totals equal within `tol` (absolute).
pub fn additive_majorizes(a: &[f64], b: &[f64], tol: f64) -> Result<MajorizationCheck> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let n = a.len();
    let prefix = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .scan(0.0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let sa = prefix(a);
    let sb = prefix(b);
    let mut holds = true;
    let mut worst = f64::INFINITY;
    let mut failing_index = None;
    for k in 0..n - 1 {
        let slack = sb[k] - sa[k];
        worst = worst.min(slack);
        if slack < -tol && failing_index.is_none() {
            holds = false;
            failing_index = Some(k + 1);
        }
    }
    let total_gap = (sa[n - 1] - sb[n - 1]).abs();
    if total_gap > tol && failing_index.is_none() {
        holds = false;
        failing_index = Some(n);
    }
    Ok(MajorizationCheck {
        holds,
        worst_prefix_margin: worst,
        total_gap,
        failing_index,
    })
}

pub(crate) fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    for &w in weights {
        if w <= 0.0 || !w.is_finite() {
            return Err(Error::BadWeights(w));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::BadWeights(sum - 1.0));
    }
    Ok(())
}

pub(crate) fn vector_geometric_mean_unchecked(
    vectors: &[OrderedPositiveVector],
    weights: &[f64],
) -> OrderedPositiveVector {
    if vectors.len() == 1 {
        return vectors[0].clone();
    }
    let dim = vectors[0].dim();
    let mut log_mean = vec![0.0; dim];
    for (v, &w) in vectors.iter().zip(weights) {
        for (acc, x) in log_mean.iter_mut().zip(v.values()) {
            *acc += w * x.ln();
        }
    }
    OrderedPositiveVector::new(log_mean.into_iter().map(f64::exp).collect())
        .expect("exponentials are positive")
}

/// Componentwise weighted geometric mean `exp(sum_j w_j log v_j)` of raw
/// positive vectors; this is the Cartan barycenter restricted to the
/// positive orthant. The mean is taken on the components as given and the
/// result is re-sorted decreasingly (the constructor's invariant) when the
/// weighted mean breaks ordering. Weights must be positive and sum to 1
/// within 1e-12.
pub fn vector_geometric_mean(
    vectors: &[&[f64]],
    weights: &[f64],
) -> Result<OrderedPositiveVector> {
    validate_weights(weights)?;
    if vectors.len() != weights.len() {
        return Err(Error::DimensionMismatch(vectors.len(), weights.len()));
    }
    let dim = vectors[0].len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(dim, v.len()));
        }
        for &x in v.iter() {
            if x <= 0.0 || !x.is_finite() {
                return Err(Error::NotPositiveVector(x));
            }
        }
    }
    if vectors.len() == 1 {
        return OrderedPositiveVector::new(vectors[0].to_vec());
    }
    let mut log_mean = vec![0.0; dim];
    for (v, &w) in vectors.iter().zip(weights) {
        for (acc, x) in log_mean.iter_mut().zip(v.iter()) {
            *acc += w * x.ln();
        }
    }
    OrderedPositiveVector::new(log_mean.into_iter().map(f64::exp).collect())
}

/// JSON exchange form `{"data": [reals]}`; sorted on read by construction.
#[derive(Serialize, Deserialize)]
struct VectorJson {
    data: Vec<f64>,
}

impl Serialize for OrderedPositiveVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson {
            data: self.values.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrderedPositiveVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = VectorJson::deserialize(deserializer)?;
        OrderedPositiveVector::new(raw.data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opv(v: &[f64]) -> OrderedPositiveVector {
        OrderedPositiveVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constructor_sorts_and_rejects_nonpositive() {
        assert_eq!(opv(&[1.0, 5.0, 2.0]).values(), &[5.0, 2.0, 1.0]);
        assert!(OrderedPositiveVector::new(vec![1.0, 0.0]).is_err());
        assert!(OrderedPositiveVector::new(vec![1.0, -2.0]).is_err());
        assert!(OrderedPositiveVector::new(vec![]).is_err());
    }

    #[test]
    fn log_majorization_examples() {
        // (4,1) <_log (8,0.5): 4 <= 8 and 4 = 4.
        let a = opv(&[4.0, 1.0]);
        let b = opv(&[8.0, 0.5]);
        assert!(log_majorizes(&a, &b, DEFAULT_REL_TOL).unwrap().holds);
        // Reflexivity.
        assert!(log_majorizes(&a, &a, DEFAULT_REL_TOL).unwrap().holds);
        // Reversed prefix fails.
        let check = log_majorizes(&b, &a, DEFAULT_REL_TOL).unwrap();
        assert!(!check.holds);
        assert_eq!(check.failing_index, Some(1));
    }

    #[test]
    fn log_majorization_total_equality_enforced() {
        let a = opv(&[4.0, 1.0]);
        let b = opv(&[8.0, 1.0]);
        let check = log_majorizes(&a, &b, DEFAULT_REL_TOL).unwrap();
        assert!(!check.holds);
        assert_eq!(check.failing_index, Some(2));
        assert!(check.total_gap > 0.5);
    }

    #[test]
    fn weak_log_majorization_examples() {
        assert!(weak_log_majorizes(&opv(&[4.0, 1.0]), &opv(&[8.0, 1.0]), DEFAULT_REL_TOL)
            .unwrap()
            .holds);
        assert!(weak_log_majorizes(&opv(&[4.0, 1.0]), &opv(&[8.0, 0.5]), DEFAULT_REL_TOL)
            .unwrap()
            .holds);
        assert!(!weak_log_majorizes(&opv(&[9.0, 1.0]), &opv(&[8.0, 2.0]), DEFAULT_REL_TOL)
            .unwrap()
            .holds);
    }

    #[test]
    fn additive_majorization_examples() {
        // lambda(X+Y) = (1,1) against lambda(X) + lambda(Y) = (2,0).
        assert!(additive_majorizes(&[1.0, 1.0], &[2.0, 0.0], 1e-12).unwrap().holds);
        assert!(additive_majorizes(&[1.5, 0.5], &[1.5, 0.5], 1e-12).unwrap().holds);
        let check = additive_majorizes(&[3.0, 0.0], &[2.0, 1.0], 1e-12).unwrap();
        assert!(!check.holds);
        assert_eq!(check.failing_index, Some(1));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = opv(&[1.0, 2.0]);
        let b = opv(&[1.0, 2.0, 3.0]);
        assert!(log_majorizes(&a, &b, 1e-9).is_err());
        assert!(a.log_l2_distance(&b).is_err());
    }

    #[test]
    fn geometric_mean_examples() {
        // Componentwise on the raw vectors, so (4,1) and (1,4) average to
        // (2,2).
        let mean = vector_geometric_mean(&[&[4.0, 1.0], &[1.0, 4.0]], &[0.5, 0.5]).unwrap();
        assert!((mean.get(0) - 2.0).abs() < 1e-14);
        assert!((mean.get(1) - 2.0).abs() < 1e-14);

        let single = vector_geometric_mean(&[&[3.0, 2.0, 1.0]], &[1.0]).unwrap();
        assert_eq!(single.values(), &[3.0, 2.0, 1.0]);

        // {(8,2),(2,8),(4,4)} uniform: componentwise (8*2*4)^(1/3) = 4.
        let mean = vector_geometric_mean(
            &[&[8.0, 2.0], &[2.0, 8.0], &[4.0, 4.0]],
            &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        )
        .unwrap();
        assert!((mean.get(0) - 4.0).abs() < 1e-13);
        assert!((mean.get(1) - 4.0).abs() < 1e-13);

        // An unsorted weighted mean gets re-sorted by the constructor.
        let mean = vector_geometric_mean(&[&[1.0, 8.0], &[1.0, 2.0]], &[0.5, 0.5]).unwrap();
        assert!((mean.get(0) - 4.0).abs() < 1e-14);
        assert!((mean.get(1) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn geometric_mean_monotone() {
        let m_lo = vector_geometric_mean(&[&[4.0, 1.0], &[2.0, 2.0]], &[0.4, 0.6]).unwrap();
        let m_hi = vector_geometric_mean(&[&[5.0, 1.5], &[2.5, 2.0]], &[0.4, 0.6]).unwrap();
        for (a, b) in m_lo.values().iter().zip(m_hi.values()) {
            assert!(a <= b);
        }
    }

    #[test]
    fn geometric_mean_rejects_bad_inputs() {
        let vs: [&[f64]; 2] = [&[1.0], &[2.0]];
        assert!(vector_geometric_mean(&vs, &[0.5, 0.6]).is_err());
        assert!(vector_geometric_mean(&vs, &[1.2, -0.2]).is_err());
        assert!(vector_geometric_mean(&[&[1.0], &[-2.0]], &[0.5, 0.5]).is_err());
        assert!(vector_geometric_mean(&[&[1.0], &[2.0, 3.0]], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn distances_on_orthant() {
        let a = opv(&[std::f64::consts::E, 1.0]);
        let b = opv(&[1.0, 1.0]);
        assert!((a.log_l2_distance(&b).unwrap() - 1.0).abs() < 1e-14);
        assert!((a.log_linf_distance(&b).unwrap() - 1.0).abs() < 1e-14);
    }
}
