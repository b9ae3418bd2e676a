//! Small statistics helpers for experiment tables.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::Result;
use crate::metrics::pearson;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: Option<f64>,
    /// Two-sided p-value of the t test for zero correlation.
    pub p_value: Option<f64>,
    pub n: usize,
}

pub fn correlation_test(x: &[f64], y: &[f64]) -> Result<Correlation> {
    let r = pearson(x, y)?;
    let n = x.len();
    Ok(Correlation {
        r,
        p_value: r.and_then(|r| pearson_p_value(r, n)),
        n,
    })
}

pub fn pearson_p_value(r: f64, n: usize) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let df = (n - 2) as f64;
    if r.abs() >= 1.0 {
        return Some(0.0);
    }
    let t = r * (df / (1.0 - r * r)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).ok()?;
    Some(2.0 * (1.0 - dist.cdf(t.abs())))
}

pub fn mean(x: &[f64]) -> Option<f64> {
    if x.is_empty() {
        None
    } else {
        Some(x.iter().sum::<f64>() / x.len() as f64)
    }
}

/// Standard error of the mean (sample standard deviation / √n).
pub fn standard_error(x: &[f64]) -> Option<f64> {
    let m = mean(x)?;
    if x.len() < 2 {
        return None;
    }
    let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() - 1) as f64;
    Some((var / x.len() as f64).sqrt())
}

/// Fraction of adjacent pairs where the sequence strictly decreases.
pub fn decrease_rate(x: &[f64]) -> Option<f64> {
    if x.len() < 2 {
        return None;
    }
    let down = x.windows(2).filter(|w| w[1] < w[0]).count();
    Some(down as f64 / (x.len() - 1) as f64)
}
