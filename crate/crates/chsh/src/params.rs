//! Parsers for angle and family arguments.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// An angle given as a plain number or as a rational multiple of pi:
/// `0.3`, `pi/6`, `3pi/8`, `3*pi/8`, `π/6`, `-pi/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim().replace('π', "pi").replace(' ', "");
        if let Ok(x) = text.parse::<f64>() {
            return if x.is_finite() { Ok(Self(x)) } else { Err(format!("angle `{s}` is not finite")) };
        }
        let bad = || format!("cannot parse angle `{s}` (try 0.5, pi/6 or 3pi/8)");
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
            None => (text.as_str(), 1.0),
        };
        let coeff = num.strip_suffix("pi").ok_or_else(bad)?;
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let k = match coeff {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        let value = k * PI / den;
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(bad())
        }
    }
}

/// State families accepted by `make`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gamma,
    Omega,
    Lambda,
    Phi,
    Vw,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "gamma" | "γ" => Ok(Self::Gamma),
            "omega" | "ω" => Ok(Self::Omega),
            "lambda" | "λ" => Ok(Self::Lambda),
            "phi" | "φ" => Ok(Self::Phi),
            "vw" => Ok(Self::Vw),
            _ => Err(format!("unknown family `{s}` (expected gamma, omega, lambda, phi or vw)")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gamma => "gamma",
            Self::Omega => "omega",
            Self::Lambda => "lambda",
            Self::Phi => "phi",
            Self::Vw => "vw",
        })
    }
}
