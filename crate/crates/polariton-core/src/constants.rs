//! CODATA-2018 physical constants, compiled in at full precision so that
//! derived quantities are bit-reproducible across platforms.

/// Elementary charge, C (exact in the 2019 SI).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Bohr radius, m (CODATA 2018: 5.291 772 109 03(80) x 10^-11).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// Vacuum electric permittivity, F/m (CODATA 2018: 8.854 187 8128(13) x 10^-12).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Reduced Planck constant, J s (h/2pi with h exact in the 2019 SI).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
