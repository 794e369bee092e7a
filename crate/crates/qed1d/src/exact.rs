//! Exact (infinite-dimensional) objects of the model: the bound state, the
//! momentum-space free and interacting Green functions, the closed-form
//! solution of the Dyson equation, and delta-potential matrix elements.

use crate::matrix::Mat2;
use crate::params::{
    dispersion, g_factor, xi_cutoff, Cutoff, KernelError, ParamsError, PhysicalParams,
};
use crate::quadrature::{
    integrate_real_line, DecayHint, QuadSpec, Quadrature, QuadratureError,
};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("no bound state exists at Z = 0")]
    NoBoundState,
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("green function pole: omega^2 = eps_p^2 at p = {0}")]
    ResolventPole(f64),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("matrix elements require both states in the same representation")]
    MixedRepresentation,
}

impl<T: std::fmt::Debug> From<QuadratureError<T>> for ExactError {
    fn from(e: QuadratureError<T>) -> Self {
        ExactError::Quadrature(format!("{e:?}"))
    }
}

/// Side of the origin for one-sided limits of discontinuous spinors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// The single bound state of the delta-potential Dirac Hamiltonian.
///
/// Energy mc^2 (1 - (Z/2c)^2) / (1 + (Z/2c)^2), inverse decay length
/// kappa_b = mZ / (1 + (Z/2c)^2), amplitude A_b = sqrt(kappa_b / (1 + (Z/2c)^2)).
#[derive(Debug, Clone, Copy)]
pub struct BoundState {
    energy: f64,
    kappa: f64,
    amplitude: f64,
    /// small-to-large component ratio Z/(2c)
    lambda: f64,
}

impl BoundState {
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Inverse decay length of the eigenfunction.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Two-component eigenfunction at x != 0. The upper (large) component is
    /// even and continuous; the lower (small) component is odd with a jump
    /// at the origin. At exactly x = 0 the 0+ limit is returned; use
    /// `wavefunction_one_sided` for both limits.
    pub fn wavefunction(&self, x: f64) -> [Complex64; 2] {
        if x == 0.0 {
            return self.wavefunction_one_sided(Side::Plus);
        }
        let envelope = self.amplitude * (-self.kappa * x.abs()).exp();
        [
            Complex64::new(envelope, 0.0),
            Complex64::new(0.0, x.signum() * self.lambda * envelope),
        ]
    }

    pub fn wavefunction_one_sided(&self, side: Side) -> [Complex64; 2] {
        let sign = match side {
            Side::Minus => -1.0,
            Side::Plus => 1.0,
        };
        [
            Complex64::new(self.amplitude, 0.0),
            Complex64::new(0.0, sign * self.lambda * self.amplitude),
        ]
    }

    /// Bound-state density matrix psi(x) psi(x)^dagger at x != 0.
    pub fn density_matrix(&self, x: f64) -> Mat2 {
        let psi = self.wavefunction(x);
        outer(psi)
    }

    /// Density matrix contracted with delta(x): the large component is
    /// continuous, the small-component diagonal takes its (equal) one-sided
    /// value, and the odd off-diagonals average to zero.
    pub fn density_matrix_at_zero(&self) -> Mat2 {
        let a2 = self.amplitude * self.amplitude;
        Mat2::diag(
            Complex64::new(a2, 0.0),
            Complex64::new(self.lambda * self.lambda * a2, 0.0),
        )
    }
}

fn outer(psi: [Complex64; 2]) -> Mat2 {
    Mat2::new(
        psi[0] * psi[0].conj(),
        psi[0] * psi[1].conj(),
        psi[1] * psi[0].conj(),
        psi[1] * psi[1].conj(),
    )
}

/// Bound state of the Hamiltonian; requires Z > 0.
pub fn bound_state(params: &PhysicalParams) -> Result<BoundState, ExactError> {
    if params.z() == 0.0 {
        return Err(ExactError::NoBoundState);
    }
    let lambda = params.z_over_2c();
    let denom = 1.0 + lambda * lambda;
    let kappa = params.m() * params.z() / denom;
    Ok(BoundState {
        energy: params.mc2() * (1.0 - lambda * lambda) / denom,
        kappa,
        amplitude: (kappa / denom).sqrt(),
        lambda,
    })
}

/// Bound-state energy through the relativistic virial theorem,
/// mc^2 * integral of psi^dagger sigma_3 psi, evaluated by quadrature.
pub fn virial_energy(params: &PhysicalParams, spec: &QuadSpec) -> Result<f64, ExactError> {
    let bs = bound_state(params)?;
    let q: Quadrature<f64> = integrate_real_line(
        |x| {
            let psi = bs.wavefunction(x);
            psi[0].norm_sqr() - psi[1].norm_sqr()
        },
        spec,
        DecayHint::Exponential,
    )?;
    Ok(params.mc2() * q.value)
}

/// Free Green function integrated over one momentum argument:
/// (omega^2 - eps_p^2)^-1 [[mc^2 + omega, cp], [cp, -mc^2 + omega]].
pub fn gbar0(
    params: &PhysicalParams,
    p: f64,
    omega: Complex64,
) -> Result<Mat2, ExactError> {
    let eps = dispersion(params, p);
    let den = omega * omega - Complex64::new(eps * eps, 0.0);
    if den.norm() == 0.0 {
        return Err(ExactError::ResolventPole(p));
    }
    let mc2 = Complex64::new(params.mc2(), 0.0);
    let cp = Complex64::new(params.c() * p, 0.0);
    Ok(Mat2::new(mc2 + omega, cp, cp, -mc2 + omega).scale_c(den.inv()))
}

/// Free Green function integrated over both momenta on the symmetric
/// interval [-Lambda, Lambda]:
/// (pi xi(Lambda, omega) / c) diag(-g(omega), g(-omega)).
///
/// The off-diagonal entries vanish exactly; an asymmetric cutoff would make
/// them finite (see the appendix module).
pub fn gbarbar0(
    params: &PhysicalParams,
    cutoff: Cutoff,
    omega: Complex64,
) -> Result<Mat2, ExactError> {
    let xi = xi_cutoff(params, cutoff, omega)?;
    let gp = g_factor(params, omega)?;
    let gm = g_factor(params, -omega)?;
    let scale = xi * (std::f64::consts::PI / params.c());
    Ok(Mat2::diag(-gp * scale, gm * scale))
}

/// Per-frequency cache for the interacting Green-function kernel: the
/// doubly integrated free Green function and the Dyson resummation factors.
#[derive(Debug, Clone)]
pub struct GreenEval {
    omega: Complex64,
    cutoff: Cutoff,
    gbarbar: Mat2,
    z1: Complex64,
    z2: Complex64,
}

impl GreenEval {
    pub fn new(
        params: &PhysicalParams,
        omega: Complex64,
        cutoff: Cutoff,
    ) -> Result<Self, ExactError> {
        let gbarbar = gbarbar0(params, cutoff, omega)?;
        let xi = xi_cutoff(params, cutoff, omega)?;
        let coupling = params.z_over_2c();
        let one = Complex64::new(1.0, 0.0);
        let d1 = one - g_factor(params, omega)? * xi * coupling;
        let d2 = one + g_factor(params, -omega)? * xi * coupling;
        if d1.norm() < 1e-300 || d2.norm() < 1e-300 {
            return Err(ExactError::Kernel(KernelError::SingularDenominator));
        }
        Ok(Self {
            omega,
            cutoff,
            gbarbar,
            z1: d1.inv(),
            z2: d2.inv(),
        })
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn gbarbar(&self) -> &Mat2 {
        &self.gbarbar
    }

    pub fn z1(&self) -> Complex64 {
        self.z1
    }

    pub fn z2(&self) -> Complex64 {
        self.z2
    }

    /// Kernel of the Green-function variation with the overall momentum
    /// delta stripped:
    /// -(Z/2pi) [z1 A1 + z2 A2] / ((omega^2 - eps_p^2)(omega^2 - eps_p'^2)).
    pub fn delta_green(
        &self,
        params: &PhysicalParams,
        p: f64,
        p_prime: f64,
    ) -> Result<Mat2, ExactError> {
        let omega = self.omega;
        let mc2 = Complex64::new(params.mc2(), 0.0);
        let cp = Complex64::new(params.c() * p, 0.0);
        let cpp = Complex64::new(params.c() * p_prime, 0.0);
        let eps_p = dispersion(params, p);
        let eps_pp = dispersion(params, p_prime);
        let d1 = omega * omega - Complex64::new(eps_p * eps_p, 0.0);
        let d2 = omega * omega - Complex64::new(eps_pp * eps_pp, 0.0);
        if d1.norm() == 0.0 {
            return Err(ExactError::ResolventPole(p));
        }
        if d2.norm() == 0.0 {
            return Err(ExactError::ResolventPole(p_prime));
        }

        let plus = mc2 + omega;
        let minus = -mc2 + omega;
        let a1 = Mat2::new(plus * plus, cpp * plus, cp * plus, cp * cpp);
        let a2 = Mat2::new(cp * cpp, cp * minus, cpp * minus, minus * minus);
        let prefactor = -params.z() / (2.0 * std::f64::consts::PI);
        Ok((a1.scale_c(self.z1) + a2.scale_c(self.z2))
            .scale_c((d1 * d2).inv())
            .scale(prefactor))
    }
}

/// Green-function variation Delta G_Z(p, p'; omega) for a single evaluation
/// point. Batch evaluations should construct a `GreenEval` once per omega.
pub fn delta_green(
    params: &PhysicalParams,
    p: f64,
    p_prime: f64,
    omega: Complex64,
    cutoff: Cutoff,
) -> Result<Mat2, ExactError> {
    GreenEval::new(params, omega, cutoff)?.delta_green(params, p, p_prime)
}

/// One-sided limits of a two-component state at the origin.
#[derive(Debug, Clone, Copy)]
pub struct OneSidedValues {
    pub minus: [Complex64; 2],
    pub plus: [Complex64; 2],
}

impl OneSidedValues {
    pub fn continuous(value: [Complex64; 2]) -> Self {
        Self {
            minus: value,
            plus: value,
        }
    }

    /// Average of the two one-sided limits.
    pub fn averaged(&self) -> [Complex64; 2] {
        [
            (self.minus[0] + self.plus[0]) * 0.5,
            (self.minus[1] + self.plus[1]) * 0.5,
        ]
    }
}

type SpinorFourier = Arc<dyn Fn(f64) -> [Complex64; 2] + Send + Sync>;

/// A state presented for matrix elements of the Hamiltonian: momentum-space
/// data plus explicit one-sided values at the origin. One-sided limits are
/// never inferred from samples.
#[derive(Clone)]
pub enum StateRepr {
    /// Continuum Fourier transform psi_hat(p) with its origin limits.
    Continuum {
        fourier: SpinorFourier,
        at_zero: OneSidedValues,
    },
    /// Finite plane-wave expansion on a box of length `box_len`: coefficient
    /// c_n multiplies e^{i k_n x} / sqrt(L) in each component.
    PlaneWave {
        box_len: f64,
        momenta: Vec<f64>,
        coeffs: Vec<[Complex64; 2]>,
    },
}

impl StateRepr {
    /// Exact bound state as a continuum representation.
    pub fn from_bound_state(params: &PhysicalParams) -> Result<Self, ExactError> {
        let bs = bound_state(params)?;
        let kappa = bs.kappa();
        let amp = bs.amplitude();
        let lambda = params.z_over_2c();
        let norm = (2.0 / std::f64::consts::PI).sqrt();
        let fourier: SpinorFourier = Arc::new(move |p: f64| {
            let den = kappa * kappa + p * p;
            [
                Complex64::new(norm * amp * kappa / den, 0.0),
                Complex64::new(norm * amp * lambda * p / den, 0.0),
            ]
        });
        Ok(StateRepr::Continuum {
            fourier,
            at_zero: OneSidedValues {
                minus: bs.wavefunction_one_sided(Side::Minus),
                plus: bs.wavefunction_one_sided(Side::Plus),
            },
        })
    }

    /// A single plane-wave basis spinor: large (`upper = true`) or small
    /// component carrying e^{i k x} / sqrt(L).
    pub fn plane_wave(box_len: f64, k: f64, upper: bool) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        StateRepr::PlaneWave {
            box_len,
            momenta: vec![k],
            coeffs: vec![if upper { [one, zero] } else { [zero, one] }],
        }
    }

    fn averaged_at_zero(&self) -> [Complex64; 2] {
        match self {
            StateRepr::Continuum { at_zero, .. } => at_zero.averaged(),
            StateRepr::PlaneWave {
                box_len, coeffs, ..
            } => {
                let mut sum = [Complex64::new(0.0, 0.0); 2];
                for c in coeffs {
                    sum[0] += c[0];
                    sum[1] += c[1];
                }
                let scale = 1.0 / box_len.sqrt();
                [sum[0] * scale, sum[1] * scale]
            }
        }
    }
}

/// Matrix element of the delta-potential Dirac Hamiltonian,
/// `<phi | D_0 psi> - Z phibar(0)^dagger psibar(0)`, where the bar denotes
/// the average of the one-sided limits at the origin.
///
/// Defined on continuous states (plane waves) as well as on domain states
/// with a jump.
pub fn matrix_element(
    params: &PhysicalParams,
    phi: &StateRepr,
    psi: &StateRepr,
    spec: &QuadSpec,
) -> Result<Complex64, ExactError> {
    let kinetic = match (phi, psi) {
        (
            StateRepr::Continuum {
                fourier: f_phi, ..
            },
            StateRepr::Continuum {
                fourier: f_psi, ..
            },
        ) => {
            let c = params.c();
            let mc2 = params.mc2();
            let q: Quadrature<Complex64> = integrate_real_line(
                |k: f64| {
                    let a = f_phi(k);
                    let b = f_psi(k);
                    let ck = Complex64::new(c * k, 0.0);
                    ck * (a[0].conj() * b[1] + a[1].conj() * b[0])
                        + mc2 * (a[0].conj() * b[0] - a[1].conj() * b[1])
                },
                spec,
                DecayHint::Algebraic,
            )?;
            q.value
        }
        (
            StateRepr::PlaneWave {
                box_len: l1,
                momenta: k1,
                coeffs: c1,
            },
            StateRepr::PlaneWave {
                box_len: l2,
                momenta: k2,
                coeffs: c2,
            },
        ) => {
            if (l1 - l2).abs() > 0.0 {
                return Err(ExactError::MixedRepresentation);
            }
            let mc2 = params.mc2();
            let mut acc = Complex64::new(0.0, 0.0);
            for (ka, ca) in k1.iter().zip(c1) {
                for (kb, cb) in k2.iter().zip(c2) {
                    if (ka - kb).abs() > 1e-12 {
                        continue; // plane waves with distinct momenta are orthogonal
                    }
                    let ck = Complex64::new(params.c() * kb, 0.0);
                    acc += ck * (ca[0].conj() * cb[1] + ca[1].conj() * cb[0])
                        + mc2 * (ca[0].conj() * cb[0] - ca[1].conj() * cb[1]);
                }
            }
            acc
        }
        _ => return Err(ExactError::MixedRepresentation),
    };

    let phi0 = phi.averaged_at_zero();
    let psi0 = psi.averaged_at_zero();
    let potential = (phi0[0].conj() * psi0[0] + phi0[1].conj() * psi0[1]) * params.z();
    Ok(kinetic - potential)
}
