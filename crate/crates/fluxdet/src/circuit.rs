//! Circuit parameters and the double-well potential.
//!
//! An rf-SQUID — a superconducting loop closed by a Josephson junction —
//! confines its total loop flux `x` (in units of the flux quantum) in the
//! potential
//!
//! ```text
//! U(x) = U0·[ −β_L·cos(2πx) + 2π²·(x − x_e)² ]
//! ```
//!
//! where `U0` is the magnetic energy scale (kelvin), `β_L` the dimensionless
//! loop inductance, and `x_e` the externally applied flux bias. For β_L
//! above ~1 and bias near half a flux quantum the cosine carves two wells
//! into the parabola; the two wells correspond to opposite directions of the
//! circulating current, and their bound levels form the qudit.
//!
//! Level indices follow Rust convention (0-based) everywhere in this crate's
//! API; textual outputs (CSV headers, labels) use the 1-based labels
//! conventional for the device ("level 7", `rho_77`).

use crate::error::{FluxdetError, Result};
use crate::units;
use std::f64::consts::{PI, TAU};

/// Upper edge of the β_L window quoted as the double-well operating rule;
/// see [`CircuitParams::is_double_well`].
pub const BETA_DOUBLE_WELL_MAX: f64 = 2.48;

/// Dimensionless SQUID parameters — the single source of truth for the
/// potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    /// Magnetic energy scale `U0 = (Φ₀/2π)²/(k_B L)`, in K.
    pub u0: f64,
    /// Dimensionless loop inductance `β_L = 2π L I_c/Φ₀`.
    pub beta_l: f64,
    /// Effective mass `M = k_B Φ₀² C/ħ²`, in K⁻¹.
    pub mass: f64,
    /// External flux bias in units of Φ₀.
    pub x_e: f64,
}

/// Physical circuit elements of the SQUID loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalCircuit {
    /// Loop inductance, H.
    pub inductance: f64,
    /// Junction (shunt) capacitance, F.
    pub capacitance: f64,
    /// Junction critical current, A.
    pub critical_current: f64,
}

impl PhysicalCircuit {
    /// Validated constructor: all elements strictly positive.
    pub fn new(inductance: f64, capacitance: f64, critical_current: f64) -> Result<Self> {
        for (name, v) in [
            ("inductance", inductance),
            ("capacitance", capacitance),
            ("critical_current", critical_current),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(FluxdetError::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            inductance,
            capacitance,
            critical_current,
        })
    }

    /// Josephson energy `E_J = Φ₀ I_c / 2π`, expressed in kelvin.
    pub fn josephson_energy_k(&self) -> f64 {
        units::FLUX_QUANTUM_WB * self.critical_current / (TAU * units::KB_J_PER_K)
    }
}

/// Map physical circuit elements to the dimensionless parameters:
/// `U0 = (Φ₀/2π)²/(k_B L)`, `M = k_B Φ₀² C/ħ²`, `β_L = 2π L I_c/Φ₀`.
pub fn from_physical(circuit: &PhysicalCircuit, x_e: f64) -> CircuitParams {
    let phi0 = units::FLUX_QUANTUM_WB;
    let u0 = (phi0 / TAU).powi(2) / (units::KB_J_PER_K * circuit.inductance);
    let mass = units::KB_J_PER_K * phi0 * phi0 * circuit.capacitance / units::HBAR_J_S.powi(2);
    let beta_l = TAU * circuit.inductance * circuit.critical_current / phi0;
    CircuitParams {
        u0,
        beta_l,
        mass,
        x_e,
    }
}

/// Invert [`from_physical`]: recover the circuit elements that produce the
/// given dimensionless parameters.
pub fn to_physical(p: &CircuitParams) -> Result<PhysicalCircuit> {
    p.validate()?;
    let phi0 = units::FLUX_QUANTUM_WB;
    let inductance = (phi0 / TAU).powi(2) / (units::KB_J_PER_K * p.u0);
    let capacitance = p.mass * units::HBAR_J_S.powi(2) / (units::KB_J_PER_K * phi0 * phi0);
    let critical_current = p.beta_l * phi0 / (TAU * inductance);
    PhysicalCircuit::new(inductance, capacitance, critical_current)
}

impl CircuitParams {
    /// Validated constructor; see field docs for meanings and units.
    pub fn new(u0: f64, beta_l: f64, mass: f64, x_e: f64) -> Result<Self> {
        let p = Self {
            u0,
            beta_l,
            mass,
            x_e,
        };
        p.validate()?;
        Ok(p)
    }

    /// The device of the reference working point: `U0 = 32.68 K`,
    /// `β_L = 1.28`, `M = 955 K⁻¹`, biased at `x_e = 0.5087`.
    pub fn reference_device() -> Self {
        Self {
            u0: 32.68,
            beta_l: 1.28,
            mass: 955.0,
            x_e: 0.5087,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("u0", self.u0), ("beta_l", self.beta_l), ("mass", self.mass)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(FluxdetError::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !self.x_e.is_finite() {
            return Err(FluxdetError::InvalidParameter(format!(
                "x_e must be finite, got {}",
                self.x_e
            )));
        }
        Ok(())
    }

    /// Rule-of-thumb operating window: the device biased near half a flux
    /// quantum presents a usable double well for `1/π < β_L < 2.48`.
    ///
    /// This is the quoted engineering criterion, not an exact statement
    /// about the potential for arbitrary bias — [`classify_wells`] performs
    /// the exact classification and can disagree outside the biased regime
    /// (e.g. `β_L = 3, x_e = 0.5` has two genuine minima).
    pub fn is_double_well(&self) -> bool {
        self.beta_l > 1.0 / PI && self.beta_l < BETA_DOUBLE_WELL_MAX
    }

    /// Potential energy `U(x)`, in K.
    #[inline]
    pub fn potential(&self, x: f64) -> f64 {
        self.u0 * (-self.beta_l * (TAU * x).cos() + 2.0 * PI * PI * (x - self.x_e).powi(2))
    }

    /// First derivative `dU/dx`, in K per unit flux.
    #[inline]
    pub fn potential_deriv(&self, x: f64) -> f64 {
        self.u0 * (TAU * self.beta_l * (TAU * x).sin() + 4.0 * PI * PI * (x - self.x_e))
    }

    /// Second derivative `d²U/dx²`, in K per unit flux squared.
    #[inline]
    pub fn potential_second_deriv(&self, x: f64) -> f64 {
        self.u0 * 4.0 * PI * PI * (1.0 + self.beta_l * (TAU * x).cos())
    }
}

/// Sign of the shielding current circulating in the loop for a state whose
/// mean flux is `mean_x`: `I_s ∝ −sin(2π·mean_x)`.
///
/// For flux in the principal cell: negative below half a flux quantum,
/// positive above it, zero at exactly one half. Returns −1.0, 0.0 or +1.0;
/// values within 10⁻¹² of the sign change count as zero.
pub fn shielding_current_sign(mean_x: f64) -> f64 {
    let s = -(TAU * mean_x).sin();
    if s.abs() < 1e-12 {
        0.0
    } else {
        s.signum()
    }
}

/// A critical point of the potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    /// Position, units of Φ₀.
    pub x: f64,
    /// Potential energy there, K.
    pub energy: f64,
    /// Curvature `d²U/dx²` there, K per unit flux squared.
    pub curvature: f64,
}

impl StationaryPoint {
    /// Harmonic level spacing `√(U″/M)` of a well of this curvature, in K.
    /// Meaningful for minima (positive curvature).
    pub fn harmonic_spacing(&self, mass: f64) -> f64 {
        (self.curvature.max(0.0) / mass).sqrt()
    }
}

/// Complete classification of the potential's critical points.
#[derive(Debug, Clone, PartialEq)]
pub struct WellStructure {
    /// Local minima, ascending in `x`.
    pub minima: Vec<StationaryPoint>,
    /// Local maxima strictly between the outermost minima, ascending in `x`.
    pub maxima: Vec<StationaryPoint>,
}

impl WellStructure {
    pub fn is_single(&self) -> bool {
        self.minima.len() == 1
    }

    pub fn is_double(&self) -> bool {
        self.minima.len() == 2
    }

    /// The barrier between the two wells of a double-well structure: the
    /// (unique) maximum separating the two minima.
    pub fn barrier(&self) -> Option<&StationaryPoint> {
        if !self.is_double() {
            return None;
        }
        let (lo, hi) = (self.minima[0].x, self.minima[1].x);
        self.maxima.iter().find(|m| m.x > lo && m.x < hi)
    }

    /// Deeper of the two wells (double-well case), or the sole minimum.
    pub fn deepest(&self) -> &StationaryPoint {
        self.minima
            .iter()
            .min_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap())
            .expect("WellStructure never constructed with zero minima")
    }
}

/// Relative tolerance on `|dU/dx|` at a reported critical point, in units of
/// `U0` per unit flux.
const ROOT_DERIV_TOL: f64 = 1e-12;

/// Classify the potential's wells by bracketed root-finding on `dU/dx`.
///
/// All critical points satisfy `|x − x_e| ≤ β_L/2π` (beyond that the
/// parabola's pull exceeds the cosine's maximal opposition), so that window
/// is scanned densely for sign changes of `dU/dx`, each bracketed root is
/// bisected to `|dU/dx| < 10⁻¹²·U0`, and the curvature sorts minima from
/// maxima. Bisection rather than a derivative-based update because `d²U/dx²`
/// changes sign inside brackets when β_L is near the shallow-well threshold.
pub fn classify_wells(p: &CircuitParams) -> Result<WellStructure> {
    p.validate()?;
    let half_window = p.beta_l / TAU + 1e-3;
    let (lo, hi) = (p.x_e - half_window, p.x_e + half_window);

    // Dense enough that consecutive samples cannot straddle a full cosine
    // oscillation: the derivative changes sign at most once per half period
    // of sin(2πx) plus once more for the linear term, and 4096 samples put
    // ~1600 samples per unit x even at β_L = 2π.
    let n_scan = 4096;
    let step = (hi - lo) / n_scan as f64;

    let mut roots: Vec<f64> = Vec::new();
    let mut xa = lo;
    let mut fa = p.potential_deriv(xa);
    for i in 1..=n_scan {
        let xb = lo + step * i as f64;
        let fb = p.potential_deriv(xb);
        if fa == 0.0 {
            roots.push(xa);
        } else if fa * fb < 0.0 {
            roots.push(bisect_deriv(p, xa, xb, fa));
        }
        xa = xb;
        fa = fb;
    }
    if fa == 0.0 {
        roots.push(xa);
    }
    // Deduplicate near-coincident roots (a sample landing exactly on a root
    // can report it twice).
    roots.dedup_by(|b, a| (*b - *a).abs() < 1e-9);

    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for x in roots {
        let curvature = p.potential_second_deriv(x);
        let sp = StationaryPoint {
            x,
            energy: p.potential(x),
            curvature,
        };
        if curvature > 0.0 {
            minima.push(sp);
        } else if curvature < 0.0 {
            maxima.push(sp);
        } else {
            // Degenerate saddle (measure-zero in parameter space): classify
            // by comparing against immediate neighbors.
            let h = 1e-6;
            if p.potential(x - h) > sp.energy && p.potential(x + h) > sp.energy {
                minima.push(sp);
            }
        }
    }
    if minima.is_empty() {
        // Cannot happen for a confining potential, but guard against a scan
        // pathology rather than return a lying answer.
        return Err(FluxdetError::Convergence(
            "well classification found no minima in the critical window".into(),
        ));
    }
    let (first, last) = (minima[0].x, minima[minima.len() - 1].x);
    maxima.retain(|m| m.x > first && m.x < last);
    Ok(WellStructure { minima, maxima })
}

/// Bisection on `dU/dx` over a sign-change bracket.
fn bisect_deriv(p: &CircuitParams, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    let tol = ROOT_DERIV_TOL * p.u0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = p.potential_deriv(mid);
        if fm.abs() < tol && (b - a) < 1e-12 {
            return mid;
        }
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}
