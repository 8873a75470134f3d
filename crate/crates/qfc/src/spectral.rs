//! Wavelength, frequency and spectral-width bookkeeping for
//! difference-frequency chains.
//!
//! All wavelengths are vacuum wavelengths. The canonical internal unit is
//! frequency (energy conservation is additive there); wavelengths are views
//! onto it.

use thiserror::Error;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("wavelength must be positive and finite, got {0} nm")]
    InvalidWavelength(f64),
    #[error("frequency must be positive and finite, got {0} THz")]
    InvalidFrequency(f64),
    #[error(
        "non-positive output frequency: input {input_nm} nm is not shorter than pump {pump_nm} nm"
    )]
    NonPositiveOutputFrequency { input_nm: f64, pump_nm: f64 },
    #[error("spectral width must be non-negative and finite, got {0}")]
    InvalidWidth(f64),
    #[error("width conversion requires a carrier wavelength")]
    MissingCarrier,
}

/// A vacuum wavelength in nanometers. Always positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Wavelength {
    nm: f64,
}

impl Wavelength {
    pub fn from_nm(nm: f64) -> Result<Self, SpectralError> {
        if !nm.is_finite() || nm <= 0.0 {
            return Err(SpectralError::InvalidWavelength(nm));
        }
        Ok(Self { nm })
    }

    pub fn from_um(um: f64) -> Result<Self, SpectralError> {
        Self::from_nm(um * 1e3)
    }

    pub fn from_frequency_thz(thz: f64) -> Result<Self, SpectralError> {
        if !thz.is_finite() || thz <= 0.0 {
            return Err(SpectralError::InvalidFrequency(thz));
        }
        // nu[THz] * lambda[nm] = c[m/s] * 1e-3
        Ok(Self {
            nm: SPEED_OF_LIGHT_M_PER_S * 1e-3 / thz,
        })
    }

    pub fn nm(&self) -> f64 {
        self.nm
    }

    pub fn um(&self) -> f64 {
        self.nm * 1e-3
    }

    pub fn meters(&self) -> f64 {
        self.nm * 1e-9
    }

    /// Frequency view of this wavelength, THz.
    pub fn frequency_thz(&self) -> f64 {
        SPEED_OF_LIGHT_M_PER_S * 1e-3 / self.nm
    }

    /// Wavenumber 1/λ in cm⁻¹.
    pub fn wavenumber_per_cm(&self) -> f64 {
        1e7 / self.nm
    }
}

impl std::fmt::Display for Wavelength {
    /// Human-readable form, reported to 0.01 nm; full precision is kept
    /// internally.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.2} nm", self.nm)
    }
}

/// Difference-frequency output: 1/λ_out = 1/λ_in − 1/λ_pump.
///
/// Fails when the input is not above the pump in frequency (the output
/// frequency would be non-positive).
pub fn dfg_output(input: Wavelength, pump: Wavelength) -> Result<Wavelength, SpectralError> {
    let f_out = input.frequency_thz() - pump.frequency_thz();
    if f_out <= 0.0 {
        return Err(SpectralError::NonPositiveOutputFrequency {
            input_nm: input.nm(),
            pump_nm: pump.nm(),
        });
    }
    Wavelength::from_frequency_thz(f_out)
}

/// Spectral separation |1/a − 1/b| in cm⁻¹.
pub fn spectral_gap_wavenumbers(a: Wavelength, b: Wavelength) -> f64 {
    (a.wavenumber_per_cm() - b.wavenumber_per_cm()).abs()
}

/// How a spectral width is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthRepr {
    /// Δλ in nanometers at a carrier wavelength.
    WavelengthNm,
    /// Δν in gigahertz.
    FrequencyGhz,
}

/// A spectral width (FWHM or bandwidth), expressed either as Δλ (nm) or
/// Δν (GHz). Conversion between the two needs a carrier wavelength and is
/// involutive at fixed carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralWidth {
    value: f64,
    repr: WidthRepr,
    carrier: Option<Wavelength>,
}

impl SpectralWidth {
    /// Width in GHz with no carrier attached.
    pub fn from_ghz(ghz: f64) -> Result<Self, SpectralError> {
        Self::build(ghz, WidthRepr::FrequencyGhz, None)
    }

    pub fn from_ghz_at(ghz: f64, carrier: Wavelength) -> Result<Self, SpectralError> {
        Self::build(ghz, WidthRepr::FrequencyGhz, Some(carrier))
    }

    pub fn from_nm_at(nm: f64, carrier: Wavelength) -> Result<Self, SpectralError> {
        Self::build(nm, WidthRepr::WavelengthNm, Some(carrier))
    }

    fn build(
        value: f64,
        repr: WidthRepr,
        carrier: Option<Wavelength>,
    ) -> Result<Self, SpectralError> {
        if !value.is_finite() || value < 0.0 {
            return Err(SpectralError::InvalidWidth(value));
        }
        Ok(Self {
            value,
            repr,
            carrier,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn repr(&self) -> WidthRepr {
        self.repr
    }

    pub fn carrier(&self) -> Option<Wavelength> {
        self.carrier
    }

    /// The width in GHz, converting from Δλ if necessary.
    pub fn ghz(&self) -> Result<f64, SpectralError> {
        match self.repr {
            WidthRepr::FrequencyGhz => Ok(self.value),
            WidthRepr::WavelengthNm => Ok(width_convert(self, WidthRepr::FrequencyGhz)?.value),
        }
    }
}

/// Convert a width between Δλ (nm) and Δν (GHz) at its carrier via
/// Δν = c·Δλ/λ². Requires a carrier; the round trip is the identity to
/// well below 1 ppm.
pub fn width_convert(
    w: &SpectralWidth,
    target: WidthRepr,
) -> Result<SpectralWidth, SpectralError> {
    if w.repr == target {
        return Ok(*w);
    }
    let carrier = w.carrier.ok_or(SpectralError::MissingCarrier)?;
    let lam_nm = carrier.nm();
    // Numerically: Δν[GHz] = c[m/s]·Δλ[nm]/λ[nm]², and the inverse.
    let value = match target {
        WidthRepr::FrequencyGhz => SPEED_OF_LIGHT_M_PER_S * w.value / (lam_nm * lam_nm),
        WidthRepr::WavelengthNm => w.value * lam_nm * lam_nm / SPEED_OF_LIGHT_M_PER_S,
    };
    SpectralWidth::build(value, target, Some(carrier))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn nm(v: f64) -> Wavelength {
        Wavelength::from_nm(v).unwrap()
    }

    #[test]
    fn wavelength_rejects_invalid_values() {
        assert!(Wavelength::from_nm(0.0).is_err());
        assert!(Wavelength::from_nm(-5.0).is_err());
        assert!(Wavelength::from_nm(f64::NAN).is_err());
        assert!(Wavelength::from_nm(f64::INFINITY).is_err());
    }

    #[test]
    fn dfg_chain_hits_intermediate_and_target() {
        let input = nm(737.1);
        let pump = nm(2812.6);
        let mid = dfg_output(input, pump).unwrap();
        // 1/(1/737.1 - 1/2812.6) = 998.876155143 nm
        assert_relative_eq!(mid.nm(), 998.876155143, epsilon = 1e-6);
        assert!((mid.nm() - 998.9).abs() < 0.05);

        let target = dfg_output(mid, pump).unwrap();
        // 1/(1/998.876155143 - 1/2812.6) = 1548.98943515 nm
        assert_relative_eq!(target.nm(), 1548.98943515, epsilon = 1e-6);
        assert!((target.nm() - 1549.0).abs() < 0.05);
    }

    #[test]
    fn dfg_with_pump_at_twice_the_wavelength_is_identity_in_frequency_halves() {
        // 1/λ − 1/(2λ) = 1/(2λ)
        let lam = nm(800.0);
        let out = dfg_output(lam, nm(1600.0)).unwrap();
        assert_relative_eq!(out.nm(), 1600.0, epsilon = 1e-9);
    }

    #[test]
    fn dfg_rejects_input_not_above_pump() {
        let err = dfg_output(nm(2812.6), nm(737.1)).unwrap_err();
        assert!(matches!(
            err,
            SpectralError::NonPositiveOutputFrequency { .. }
        ));
        assert!(dfg_output(nm(1000.0), nm(1000.0)).is_err());
    }

    #[test]
    fn spectral_gap_matches_pump_to_target_separation() {
        // |1/1549nm − 1/2812.6nm| = 2900.348781 cm⁻¹
        let gap = spectral_gap_wavenumbers(nm(1549.0), nm(2812.6));
        assert_relative_eq!(gap, 2900.348781, epsilon = 1e-4);
        assert!((gap - 2900.0).abs() < 1.0);
    }

    #[test]
    fn spectral_gap_degenerate_and_symmetric() {
        assert_eq!(spectral_gap_wavenumbers(nm(1549.0), nm(1549.0)), 0.0);
        let a = nm(650.0);
        let b = nm(998.9);
        assert_eq!(
            spectral_gap_wavenumbers(a, b),
            spectral_gap_wavenumbers(b, a)
        );
    }

    #[test]
    fn width_conversion_reference_values() {
        // c·Δλ/λ² evaluated with c = 299 792 458 m/s:
        // 25 GHz at 1549 nm -> 0.2000885059 nm
        let w = SpectralWidth::from_ghz_at(25.0, nm(1549.0)).unwrap();
        let as_nm = width_convert(&w, WidthRepr::WavelengthNm).unwrap();
        assert_relative_eq!(as_nm.value(), 0.2000885059, epsilon = 1e-8);
        // 77 GHz at 737.12 nm -> 0.1395553249 nm
        let w = SpectralWidth::from_ghz_at(77.0, nm(737.12)).unwrap();
        let as_nm = width_convert(&w, WidthRepr::WavelengthNm).unwrap();
        assert_relative_eq!(as_nm.value(), 0.1395553249, epsilon = 1e-8);
    }

    #[test]
    fn zero_width_converts_to_zero() {
        let w = SpectralWidth::from_ghz_at(0.0, nm(1234.5)).unwrap();
        let as_nm = width_convert(&w, WidthRepr::WavelengthNm).unwrap();
        assert_eq!(as_nm.value(), 0.0);
    }

    #[test]
    fn width_conversion_without_carrier_fails() {
        let w = SpectralWidth::from_ghz(25.0).unwrap();
        assert_eq!(
            width_convert(&w, WidthRepr::WavelengthNm).unwrap_err(),
            SpectralError::MissingCarrier
        );
        // Same-representation conversion needs no carrier.
        assert!(width_convert(&w, WidthRepr::FrequencyGhz).is_ok());
    }

    proptest! {
        #[test]
        fn dfg_output_is_monotone_in_input(
            input_nm in 400.0..1200.0f64,
            delta in 1e-3..50.0f64,
        ) {
            let pump = nm(2812.6);
            let a = dfg_output(nm(input_nm), pump).unwrap();
            let b = dfg_output(nm(input_nm + delta), pump).unwrap();
            prop_assert!(b.nm() > a.nm());
        }

        #[test]
        fn dfg_composes_additively_in_frequency(
            input_nm in 400.0..900.0f64,
            pump_nm in 1900.0..4000.0f64,
        ) {
            let input = nm(input_nm);
            let pump = nm(pump_nm);
            let once = dfg_output(input, pump).unwrap();
            prop_assume!(once.frequency_thz() > pump.frequency_thz());
            let twice = dfg_output(once, pump).unwrap();
            let combined = input.frequency_thz() - 2.0 * pump.frequency_thz();
            prop_assert!((twice.frequency_thz() - combined).abs() / combined.abs() < 1e-6);
        }

        #[test]
        fn width_round_trip_is_identity(
            carrier_nm in 400.0..3000.0f64,
            // widths up to 1% of the carrier frequency
            frac in 0.0..0.01f64,
        ) {
            let carrier = nm(carrier_nm);
            let ghz = frac * carrier.frequency_thz() * 1e3;
            let w = SpectralWidth::from_ghz_at(ghz, carrier).unwrap();
            let there = width_convert(&w, WidthRepr::WavelengthNm).unwrap();
            let back = width_convert(&there, WidthRepr::FrequencyGhz).unwrap();
            if ghz > 0.0 {
                prop_assert!((back.value() - ghz).abs() / ghz < 1e-6);
            } else {
                prop_assert_eq!(back.value(), 0.0);
            }
        }
    }
}
