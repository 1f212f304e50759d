//! Gas model parameters: viscosity law and relaxation collision number.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Viscosity law `mu = coefficient * Kn * T_eq^exponent` in
/// non-dimensional variables.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ViscosityLaw {
    pub coefficient: f64,
    pub exponent: f64,
}

impl ViscosityLaw {
    /// `mu = Kn * T_eq`, the law used for the shock tube tests.
    pub fn linear() -> Self {
        Self {
            coefficient: 1.0,
            exponent: 1.0,
        }
    }

    /// `mu = (5/8) sqrt(pi/2) Kn T_eq^0.72`, the nitrogen fit.
    pub fn nitrogen() -> Self {
        Self {
            coefficient: 0.625 * (std::f64::consts::PI / 2.0).sqrt(),
            exponent: 0.72,
        }
    }

    pub fn evaluate(&self, knudsen: f64, t_eq: f64) -> f64 {
        self.coefficient * knudsen * t_eq.powf(self.exponent)
    }
}

/// Relaxation collision number model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum CollisionNumber {
    Constant {
        value: f64,
    },
    /// `Z = a (1 + b T_int / T_tr)`, the temperature-dependent nitrogen fit.
    TemperatureRatio {
        a: f64,
        b: f64,
    },
}

impl CollisionNumber {
    pub fn nitrogen() -> Self {
        Self::TemperatureRatio { a: 1.45, b: 0.75 }
    }

    pub fn evaluate(&self, t_tr: f64, t_int: f64) -> f64 {
        match *self {
            Self::Constant { value } => value,
            Self::TemperatureRatio { a, b } => a * (1.0 + b * t_int / t_tr),
        }
    }
}

/// Full description of the gas and its collision model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GasModel {
    /// Gas constant; 1 in the non-dimensional setting.
    pub r: f64,
    /// Internal degrees of freedom (2 for a diatomic gas).
    pub delta: f64,
    pub prandtl: f64,
    pub knudsen: f64,
    pub viscosity: ViscosityLaw,
    pub collision_number: CollisionNumber,
}

impl GasModel {
    pub fn validate(&self) -> Result<()> {
        if self.r <= 0.0 || self.delta <= 0.0 || self.prandtl <= 0.0 || self.knudsen <= 0.0 {
            return Err(Error::Config(format!(
                "gas parameters must be positive: R = {}, delta = {}, Pr = {}, Kn = {}",
                self.r, self.delta, self.prandtl, self.knudsen
            )));
        }
        match self.collision_number {
            CollisionNumber::Constant { value } if value < 1.0 => Err(Error::Config(format!(
                "collision number Z = {value} must be at least 1"
            ))),
            _ => Ok(()),
        }
    }

    /// Relaxation time `epsilon = mu / (Pr p)` with `p = rho R T_eq`.
    pub fn relaxation_time(&self, rho: f64, t_eq: f64) -> f64 {
        let mu = self.viscosity.evaluate(self.knudsen, t_eq);
        mu / (self.prandtl * rho * self.r * t_eq)
    }

    pub fn t_eq(&self, t_tr: f64, t_int: f64) -> f64 {
        (3.0 * t_tr + self.delta * t_int) / (3.0 + self.delta)
    }
}
