//! Exact-rational checks of the counting inequalities behind the size
//! bound of the construction.

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("counting checks need omega >= 4, got {0}")]
    OmegaTooSmall(usize),
}

fn ratio_str<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RCheck {
    pub r: i64,
    #[serde(serialize_with = "ratio_str")]
    pub lhs: Rational64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingCheck {
    pub t: u32,
    pub omega: usize,
    #[serde(serialize_with = "ratio_str")]
    pub xi: Rational64,
    pub case_bound: i64,
    pub holds: bool,
    pub tight: bool,
    pub r_checks: Vec<RCheck>,
}

impl CountingCheck {
    pub fn all_hold(&self) -> bool {
        self.holds && self.r_checks.iter().all(|c| c.holds)
    }
}

/// `(w - 2)(w(t + 1) + 1) / (w - 1)`.
pub fn xi(omega: usize, t: u32) -> Rational64 {
    let w = omega as i64;
    Rational64::new(w - 2, w - 1) * Rational64::from_integer(w * (t as i64 + 1) + 1)
}

/// Lower bound that `xi(omega, t)` must meet.
pub fn case_bound(omega: usize, t: u32) -> i64 {
    let w = omega as i64;
    let t = t as i64;
    match t {
        0 => w - 1,
        1 => 2 * w - 2,
        2 => 3 * w - 4,
        _ => w * (t + 1) - 2 * t + 1,
    }
}

/// `(w - 2) / (w - 1) * r >= r - 1` for `r` in `2..=w-1`.
pub fn r_checks(omega: usize) -> Vec<RCheck> {
    let w = omega as i64;
    (2..w)
        .map(|r| {
            let lhs = Rational64::new(w - 2, w - 1) * Rational64::from_integer(r);
            RCheck { r, lhs, rhs: r - 1, holds: lhs >= Rational64::from_integer(r - 1) }
        })
        .collect()
}

pub fn counting_checks(omega: usize, t_max: u32) -> Result<Vec<CountingCheck>, CountingError> {
    if omega < 4 {
        return Err(CountingError::OmegaTooSmall(omega));
    }
    let rs = r_checks(omega);
    Ok((0..=t_max)
        .map(|t| {
            let xi = xi(omega, t);
            let bound = Rational64::from_integer(case_bound(omega, t));
            CountingCheck {
                t,
                omega,
                xi,
                case_bound: case_bound(omega, t),
                holds: xi >= bound,
                tight: xi == bound,
                r_checks: rs.clone(),
            }
        })
        .collect())
}
