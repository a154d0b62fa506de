//! CODATA 2018 values in SI units.

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity (C²/(N·m²)).
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Vacuum permeability (N/A²), fixed by `MU0 * EPS0 * C² = 1`.
pub const MU0: f64 = 1.0 / (EPS0 * C * C);

/// Unified atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// The same constants as a value, for code that wants to carry them around
/// or check them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
    pub eps0: f64,
    pub mu0: f64,
    pub amu: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: C,
        hbar: HBAR,
        eps0: EPS0,
        mu0: MU0,
        amu: AMU,
    };

    /// Relative deviation of `mu0 * eps0 * c²` from one.
    pub fn vacuum_identity_error(&self) -> f64 {
        (self.mu0 * self.eps0 * self.c * self.c - 1.0).abs()
    }

    pub fn is_consistent(&self) -> bool {
        [self.c, self.hbar, self.eps0, self.mu0, self.amu]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
            && self.vacuum_identity_error() < 1e-12
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_is_consistent() {
        let k = PhysicalConstants::default();
        assert!(k.is_consistent());
        assert!(k.vacuum_identity_error() < 1e-12);
    }

    #[test]
    fn mu0_matches_codata_value() {
        // CODATA 2018 quotes 1.256 637 062 12e-6.
        assert!((MU0 / 1.256_637_062_12e-6 - 1.0).abs() < 1e-9);
    }
}
