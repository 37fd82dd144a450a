use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constants file shipped with the crate.
pub const BUNDLED: &str = include_str!("../../data/constants.txt");

/// SI values used by the audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub speed_of_light: f64,
    pub boltzmann: f64,
    pub vacuum_permittivity: f64,
    pub electron_mass: f64,
    pub elementary_charge: f64,
    pub standard_gravity: f64,
    /// First comment line of the file, naming the source.
    pub source: String,
}

const KEYS: [&str; 7] = [
    "hbar",
    "speed_of_light",
    "boltzmann",
    "vacuum_permittivity",
    "electron_mass",
    "elementary_charge",
    "standard_gravity",
];

impl PhysicalConstants {
    /// The bundled CODATA 2018 set.
    pub fn codata2018() -> Self {
        Self::parse(BUNDLED).expect("bundled constants file is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Constants(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines. `#` starts a comment; every key must
    /// appear exactly once and every value must be positive.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut source = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b, Some(c)),
                None => (raw, None),
            };
            let body = body.trim();
            if body.is_empty() {
                if source.is_empty() {
                    if let Some(c) = comment.map(str::trim).filter(|c| c.starts_with("Source:")) {
                        source = c.trim_start_matches("Source:").trim().to_string();
                    }
                }
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| Error::Constants(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Constants(format!("line {}: unknown key {key:?}", lineno + 1)));
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|e| Error::Constants(format!("line {}: {key}: {e}", lineno + 1)))?;
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Constants(format!("line {}: {key} must be positive", lineno + 1)));
            }
            if values.insert(key, value).is_some() {
                return Err(Error::Constants(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        let get = |k: &str| {
            values
                .get(k)
                .copied()
                .ok_or_else(|| Error::Constants(format!("missing key {k:?}")))
        };
        Ok(Self {
            hbar: get("hbar")?,
            speed_of_light: get("speed_of_light")?,
            boltzmann: get("boltzmann")?,
            vacuum_permittivity: get("vacuum_permittivity")?,
            electron_mass: get("electron_mass")?,
            elementary_charge: get("elementary_charge")?,
            standard_gravity: get("standard_gravity")?,
            source,
        })
    }

    /// Fine-structure constant `e²/(4πε₀ħc)`.
    pub fn fine_structure(&self) -> f64 {
        let e = self.elementary_charge;
        e * e / (4.0 * std::f64::consts::PI * self.vacuum_permittivity * self.hbar * self.speed_of_light)
    }

    /// Joules per keV.
    pub fn joule_per_kev(&self) -> f64 {
        1e3 * self.elementary_charge
    }
}
