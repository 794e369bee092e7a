//! Physical parameters and the scalar kernel functions shared by the exact
//! and finite-basis pipelines.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParamsError {
    #[error("electron mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("speed of light must be positive, got {0}")]
    NonPositiveSpeedOfLight(f64),
    #[error("nuclear charge must be non-negative, got {0}")]
    NegativeCharge(f64),
    #[error("operation requires Z < 2c (subcritical charge), got Z = {z}, 2c = {limit}")]
    SupercriticalCharge { z: f64, limit: f64 },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum KernelError {
    #[error("evaluation at a branch point omega = +/- mc^2 (omega = {0})")]
    BranchPoint(Complex64),
    #[error("momentum cutoff must be positive, got {0}")]
    NonPositiveCutoff(f64),
    #[error("singular denominator: the energy contour crosses an eigenvalue")]
    SingularDenominator,
}

/// Electron mass, speed of light, and nuclear charge in atomic units.
///
/// `m > 0` and `c > 0` always hold; `Z >= 0` is allowed at construction, but
/// vacuum-polarization operations additionally require `Z < 2c` so that the
/// bound state stays at strictly positive energy and the imaginary-axis
/// contour is valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    m: f64,
    c: f64,
    z: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, c: f64, z: f64) -> Result<Self, ParamsError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(ParamsError::NonPositiveMass(m));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(ParamsError::NonPositiveSpeedOfLight(c));
        }
        if !(z >= 0.0) || !z.is_finite() {
            return Err(ParamsError::NegativeCharge(z));
        }
        Ok(Self { m, c, z })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Rest energy m c^2.
    pub fn mc2(&self) -> f64 {
        self.m * self.c * self.c
    }

    /// Dimensionless coupling Z / (2c).
    pub fn z_over_2c(&self) -> f64 {
        self.z / (2.0 * self.c)
    }

    /// Reduced Compton wavelength 1/(mc), the length scale of the
    /// vacuum-polarization density.
    pub fn compton_length(&self) -> f64 {
        1.0 / (self.m * self.c)
    }

    pub fn is_subcritical(&self) -> bool {
        self.z < 2.0 * self.c
    }

    /// Guard used by every vacuum-polarization operation.
    pub fn require_subcritical(&self) -> Result<(), ParamsError> {
        if self.is_subcritical() {
            Ok(())
        } else {
            Err(ParamsError::SupercriticalCharge {
                z: self.z,
                limit: 2.0 * self.c,
            })
        }
    }
}

/// UV momentum cutoff; `Infinite` substitutes the analytic limit of the
/// cutoff function rather than evaluating a huge arctangent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    Infinite,
    Finite(f64),
}

impl Cutoff {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Cutoff::Infinite)
    }
}

/// Free-particle dispersion eps_p = sqrt(p^2 c^2 + m^2 c^4).
pub fn dispersion(params: &PhysicalParams, p: f64) -> f64 {
    (p * p * params.c * params.c + params.mc2() * params.mc2()).sqrt()
}

/// g(omega) = sqrt((mc^2 + omega) / (mc^2 - omega)), principal branch.
///
/// On the imaginary axis it is a pure phase with g(iu) g(-iu) = 1.
pub fn g_factor(params: &PhysicalParams, omega: Complex64) -> Result<Complex64, KernelError> {
    let mc2 = params.mc2();
    let den = Complex64::new(mc2, 0.0) - omega;
    if den.norm() == 0.0 || (Complex64::new(mc2, 0.0) + omega).norm() == 0.0 {
        return Err(KernelError::BranchPoint(omega));
    }
    Ok(((Complex64::new(mc2, 0.0) + omega) / den).sqrt())
}

/// Cutoff function xi(Lambda, omega) = (2/pi) arctan(c Lambda / sqrt(m^2c^4 - omega^2)).
///
/// Tends to 1 as Lambda -> infinity; the `Cutoff::Infinite` case returns 1
/// exactly.
pub fn xi_cutoff(
    params: &PhysicalParams,
    cutoff: Cutoff,
    omega: Complex64,
) -> Result<Complex64, KernelError> {
    let lambda = match cutoff {
        Cutoff::Infinite => return Ok(Complex64::new(1.0, 0.0)),
        Cutoff::Finite(l) => {
            if !(l > 0.0) {
                return Err(KernelError::NonPositiveCutoff(l));
            }
            l
        }
    };
    let mc2 = params.mc2();
    let gap = Complex64::new(mc2 * mc2, 0.0) - omega * omega;
    if gap.norm() == 0.0 {
        return Err(KernelError::BranchPoint(omega));
    }
    let arg = Complex64::new(params.c * lambda, 0.0) / gap.sqrt();
    Ok(arg.atan() * (2.0 / std::f64::consts::PI))
}

/// sqrt(m^2 c^4 + u^2) / c, the exponential decay rate of position-space
/// kernels evaluated on the imaginary-energy axis omega = iu.
pub fn kappa_iu(params: &PhysicalParams, u: f64) -> f64 {
    let mc2 = params.mc2();
    (mc2 * mc2 + u * u).sqrt() / params.c
}

/// Dyson resummation factors z1, z2 at omega = iu:
/// z1 = (1 - Z g(iu) xi / 2c)^-1 and z2 = (1 + Z g(-iu) xi / 2c)^-1.
///
/// Both reduce to 1 at Z = 0. For Z < 2c the denominators stay away from
/// zero on the whole imaginary axis.
pub fn z_factors(
    params: &PhysicalParams,
    cutoff: Cutoff,
    u: f64,
) -> Result<(Complex64, Complex64), KernelError> {
    let omega = Complex64::new(0.0, u);
    let xi = xi_cutoff(params, cutoff, omega)?;
    let coupling = params.z_over_2c();
    let one = Complex64::new(1.0, 0.0);
    let d1 = one - g_factor(params, omega)? * xi * coupling;
    let d2 = one + g_factor(params, -omega)? * xi * coupling;
    if d1.norm() < 1e-300 || d2.norm() < 1e-300 {
        return Err(KernelError::SingularDenominator);
    }
    Ok((d1.inv(), d2.inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p111() -> PhysicalParams {
        PhysicalParams::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn construction_guards() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, -0.5).is_err());
        // Z >= 2c is constructible; density operations reject it separately.
        let p = PhysicalParams::new(1.0, 1.0, 3.0).unwrap();
        assert!(p.require_subcritical().is_err());
    }

    #[test]
    fn dispersion_values() {
        let p = p111();
        assert_eq!(dispersion(&p, 0.0), 1.0);
        assert_abs_diff_eq!(dispersion(&p, 3.0_f64.sqrt()), 2.0, epsilon = 1e-15);
        let heavy = PhysicalParams::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(dispersion(&heavy, 0.0), 4.0);
    }

    #[test]
    fn dispersion_even_and_bounded_below() {
        let p = p111();
        for &q in &[0.0, 0.3, 1.7, 12.0, 400.0] {
            assert_eq!(dispersion(&p, q), dispersion(&p, -q));
            assert!(dispersion(&p, q) >= p.mc2());
        }
        assert!(dispersion(&p, 1e-8) > p.mc2());
    }

    #[test]
    fn g_factor_symmetric_point() {
        let p = p111();
        let g0 = g_factor(&p, Complex64::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(g0.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g0.im, 0.0, epsilon = 1e-15);
        let heavy = PhysicalParams::new(1.0, 2.0, 0.0).unwrap();
        let g0 = g_factor(&heavy, Complex64::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(g0.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn g_factor_reciprocal_identity_on_axis() {
        // g(iu) g(-iu) = 1 on a log-spaced grid of u.
        let p = p111();
        let mut u = 1e-6;
        while u < 1e6 {
            for s in [-1.0, 1.0] {
                let w = Complex64::new(0.0, s * u);
                let prod = g_factor(&p, w).unwrap() * g_factor(&p, -w).unwrap();
                assert!((prod - Complex64::new(1.0, 0.0)).norm() < 1e-12, "u = {u}");
            }
            u *= 10.0;
        }
    }

    #[test]
    fn g_factor_pole_rejected() {
        let p = p111();
        assert!(g_factor(&p, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn xi_limits() {
        let p = p111();
        let zero = Complex64::new(0.0, 0.0);
        let big = xi_cutoff(&p, Cutoff::Finite(1e12), zero).unwrap();
        assert!((big.re - 1.0).abs() < 1e-9 && big.im.abs() < 1e-15);
        let unit = xi_cutoff(&p, Cutoff::Finite(1.0), zero).unwrap();
        assert_abs_diff_eq!(unit.re, 0.5, epsilon = 1e-15);
        let tiny = xi_cutoff(&p, Cutoff::Finite(1e-300), zero).unwrap();
        assert!(tiny.norm() < 1e-290);
        assert_eq!(
            xi_cutoff(&p, Cutoff::Infinite, zero).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn xi_in_unit_interval_and_monotone_in_cutoff() {
        let p = p111();
        for &u in &[0.0, 0.5, 3.0, 100.0] {
            let omega = Complex64::new(0.0, u);
            let mut prev = 0.0;
            for &l in &[0.1, 1.0, 10.0, 1e3, 1e6] {
                let xi = xi_cutoff(&p, Cutoff::Finite(l), omega).unwrap();
                assert!(xi.im.abs() < 1e-14);
                assert!(xi.re > 0.0 && xi.re < 1.0);
                assert!(xi.re > prev);
                prev = xi.re;
            }
        }
    }

    #[test]
    fn z_factors_free_case() {
        let p = PhysicalParams::new(1.0, 1.0, 0.0).unwrap();
        for &u in &[0.0, 1.0, -4.5] {
            let (z1, z2) = z_factors(&p, Cutoff::Infinite, u).unwrap();
            assert!((z1 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert!((z2 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn z_factors_hand_value() {
        // Z = 1, c = 1, u = 0, infinite cutoff: g(0) = 1, xi = 1,
        // so z1 = (1 - 1/2)^-1 = 2 and z2 = (1 + 1/2)^-1 = 2/3.
        let p = p111();
        let (z1, z2) = z_factors(&p, Cutoff::Infinite, 0.0).unwrap();
        assert_abs_diff_eq!(z1.re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z1.im, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z2.re, 2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn z_factors_tend_to_one_at_large_u_finite_cutoff() {
        // With a finite cutoff xi -> 0 as |u| grows, so both factors -> 1
        // with |z - 1| decaying.
        let p = p111();
        let cutoff = Cutoff::Finite(10.0);
        let mut prev1 = f64::INFINITY;
        let mut prev2 = f64::INFINITY;
        for &u in &[1e2, 1e3, 1e4, 1e5] {
            for s in [-1.0, 1.0] {
                let (z1, z2) = z_factors(&p, cutoff, s * u).unwrap();
                assert!(z1.is_finite() && z2.is_finite());
            }
            let (z1, z2) = z_factors(&p, cutoff, u).unwrap();
            let d1 = (z1 - Complex64::new(1.0, 0.0)).norm();
            let d2 = (z2 - Complex64::new(1.0, 0.0)).norm();
            assert!(d1 < prev1 && d2 < prev2);
            prev1 = d1;
            prev2 = d2;
        }
        assert!(prev1 < 1e-3 && prev2 < 1e-3);
    }
}
