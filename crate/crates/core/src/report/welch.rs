use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::stats::GroupStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Significance {
    #[serde(rename = "n.s.")]
    NotSignificant,
    #[serde(rename = "p<0.05")]
    P05,
    #[serde(rename = "p<0.01")]
    P01,
    #[serde(rename = "p<0.001")]
    P001,
}

impl Significance {
    pub fn as_str(self) -> &'static str {
        match self {
            Significance::NotSignificant => "n.s.",
            Significance::P05 => "p<0.05",
            Significance::P01 => "p<0.01",
            Significance::P001 => "p<0.001",
        }
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WelchResult {
    pub t: f64,
    pub df: f64,
    pub significance: Significance,
}

/// Two-sided Student t critical values at alpha 0.05, 0.01, 0.001.
const CRITICAL: &[(f64, [f64; 3])] = &[
    (1.0, [12.706, 63.657, 636.619]),
    (2.0, [4.303, 9.925, 31.599]),
    (3.0, [3.182, 5.841, 12.924]),
    (4.0, [2.776, 4.604, 8.610]),
    (5.0, [2.571, 4.032, 6.869]),
    (6.0, [2.447, 3.707, 5.959]),
    (7.0, [2.365, 3.499, 5.408]),
    (8.0, [2.306, 3.355, 5.041]),
    (9.0, [2.262, 3.250, 4.781]),
    (10.0, [2.228, 3.169, 4.587]),
    (11.0, [2.201, 3.106, 4.437]),
    (12.0, [2.179, 3.055, 4.318]),
    (13.0, [2.160, 3.012, 4.221]),
    (14.0, [2.145, 2.977, 4.140]),
    (15.0, [2.131, 2.947, 4.073]),
    (16.0, [2.120, 2.921, 4.015]),
    (17.0, [2.110, 2.898, 3.965]),
    (18.0, [2.101, 2.878, 3.922]),
    (19.0, [2.093, 2.861, 3.883]),
    (20.0, [2.086, 2.845, 3.850]),
    (21.0, [2.080, 2.831, 3.819]),
    (22.0, [2.074, 2.819, 3.792]),
    (23.0, [2.069, 2.807, 3.768]),
    (24.0, [2.064, 2.797, 3.745]),
    (25.0, [2.060, 2.787, 3.725]),
    (26.0, [2.056, 2.779, 3.707]),
    (27.0, [2.052, 2.771, 3.690]),
    (28.0, [2.048, 2.763, 3.674]),
    (29.0, [2.045, 2.756, 3.659]),
    (30.0, [2.042, 2.750, 3.646]),
    (40.0, [2.021, 2.704, 3.551]),
    (60.0, [2.000, 2.660, 3.460]),
    (120.0, [1.980, 2.617, 3.373]),
    (f64::INFINITY, [1.960, 2.576, 3.291]),
];

/// Critical values for the largest tabulated df not above `df`.
fn critical_row(df: f64) -> [f64; 3] {
    CRITICAL
        .iter()
        .rev()
        .find(|(d, _)| *d <= df)
        .map(|(_, row)| *row)
        .unwrap_or(CRITICAL[0].1)
}

pub fn significance(t: f64, df: f64) -> Significance {
    let [c05, c01, c001] = critical_row(df);
    let t = t.abs();
    if t > c001 {
        Significance::P001
    } else if t > c01 {
        Significance::P01
    } else if t > c05 {
        Significance::P05
    } else {
        Significance::NotSignificant
    }
}

/// Welch's unequal-variance t-test from summary statistics.
pub fn welch_t(a: &GroupStats, b: &GroupStats) -> Result<WelchResult> {
    if a.n < 2 || b.n < 2 {
        return Err(Error::Contract("Welch's t-test needs n >= 2 in both samples"));
    }
    let va = a.std * a.std / a.n as f64;
    let vb = b.std * b.std / b.n as f64;
    let se2 = va + vb;
    if se2 == 0.0 {
        return Err(Error::UndefinedStatistic);
    }
    let t = (a.mean - b.mean) / se2.sqrt();
    let df = se2 * se2 / (va * va / (a.n - 1) as f64 + vb * vb / (b.n - 1) as f64);
    Ok(WelchResult {
        t,
        df,
        significance: significance(t, df),
    })
}
