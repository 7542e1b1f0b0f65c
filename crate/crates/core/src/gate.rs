//! The local and two-mode Gaussian gate set.
//!
//! All gates are described by their Heisenberg action `U r U⁻¹` on the
//! quadratures `r = (x₁..xₙ, p₁..pₙ)`:
//!
//! | gate                  | action                                         |
//! |-----------------------|------------------------------------------------|
//! | `PhaseZ(j, η)`        | `p_j → p_j − η x_j`                            |
//! | `PhaseX(j, η)`        | `x_j → x_j + η p_j`                            |
//! | `Fourier(j)`          | `x_j → p_j`, `p_j → −x_j`                      |
//! | `FourierSquared(j)`   | `x_j → −x_j`, `p_j → −p_j`                     |
//! | `Scale(j, λ)`         | `x_j → λ x_j`, `p_j → p_j / λ`                 |
//! | `ControlledZ(a, b, Ω)`| `p_a → p_a − Ω x_b`, `p_b → p_b − Ω x_a`       |
//! | `PauliX(j, s)`        | `x_j → x_j − s` (no linear part)               |
//! | `PauliZ(j, t)`        | `p_j → p_j − t` (no linear part)               |
//!
//! `Scale(j, λ)` is the squeezer `S(r) = exp[ir(xp + px)/2]` with `λ = e^{r}`.
//! Under nullifier transport it multiplies the weights of every edge incident
//! to `j` by `λ`, so the familiar "multiply by `e^{−r}`" form of the rule
//! describes `S(−r) = S(r)⁻¹`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::Vertex;
use crate::scalar::{is_positive, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("gate mode {mode} out of range 1..={n}")]
    ModeOutOfRange { mode: Vertex, n: usize },
    #[error("controlled-Z needs two distinct modes, got {0} twice")]
    SameModes(Vertex),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Scalar),
    #[error("local Gaussian composite at {0} must be expanded against a graph first")]
    UnexpandedLocalGaussian(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaussianGate {
    PhaseZ { mode: Vertex, eta: Scalar },
    PhaseX { mode: Vertex, eta: Scalar },
    Fourier { mode: Vertex },
    FourierSquared { mode: Vertex },
    Scale { mode: Vertex, lambda: Scalar },
    ControlledZ { a: Vertex, b: Vertex, strength: Scalar },
    PauliX { mode: Vertex, s: Scalar },
    PauliZ { mode: Vertex, t: Scalar },
    /// `P_X,a(−δ) ∏_{b∈N_a} P_b(Ω_ab² δ)`; needs the graph to resolve `N_a`.
    LocalGaussian { pivot: Vertex, delta: Scalar },
}

impl GaussianGate {
    /// Modes the gate touches.
    pub fn modes(&self) -> Vec<Vertex> {
        match *self {
            Self::ControlledZ { a, b, .. } => vec![a, b],
            Self::PhaseZ { mode, .. }
            | Self::PhaseX { mode, .. }
            | Self::Fourier { mode }
            | Self::FourierSquared { mode }
            | Self::Scale { mode, .. }
            | Self::PauliX { mode, .. }
            | Self::PauliZ { mode, .. } => vec![mode],
            Self::LocalGaussian { pivot, .. } => vec![pivot],
        }
    }

    /// Checks mode ranges and parameter constraints for an `n`-mode system.
    pub fn validate(&self, n: usize) -> Result<(), GateError> {
        for mode in self.modes() {
            if mode == 0 || mode > n {
                return Err(GateError::ModeOutOfRange { mode, n });
            }
        }
        match self {
            Self::ControlledZ { a, b, .. } if a == b => Err(GateError::SameModes(*a)),
            Self::Scale { lambda, .. } if !is_positive(lambda) => {
                Err(GateError::NonPositiveScale(lambda.clone()))
            }
            _ => Ok(()),
        }
    }

    /// True when the gate acts as the identity on every Pauli element.
    pub fn is_trivial(&self) -> bool {
        match self {
            Self::PhaseZ { eta, .. } | Self::PhaseX { eta, .. } => eta.is_zero(),
            Self::Scale { lambda, .. } => lambda == &Scalar::from_integer(1.into()),
            Self::ControlledZ { strength, .. } => strength.is_zero(),
            Self::PauliX { s, .. } => s.is_zero(),
            Self::PauliZ { t, .. } => t.is_zero(),
            Self::LocalGaussian { delta, .. } => delta.is_zero(),
            Self::Fourier { .. } | Self::FourierSquared { .. } => false,
        }
    }
}

impl fmt::Display for GaussianGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PhaseZ { mode, eta } => write!(f, "P{mode}({eta})"),
            Self::PhaseX { mode, eta } => write!(f, "PX{mode}({eta})"),
            Self::Fourier { mode } => write!(f, "F{mode}"),
            Self::FourierSquared { mode } => write!(f, "F2{mode}"),
            Self::Scale { mode, lambda } => write!(f, "S{mode}({lambda})"),
            Self::ControlledZ { a, b, strength } => write!(f, "CZ{a},{b}({strength})"),
            Self::PauliX { mode, s } => write!(f, "X{mode}({s})"),
            Self::PauliZ { mode, t } => write!(f, "Z{mode}({t})"),
            Self::LocalGaussian { pivot, delta } => write!(f, "ULG{pivot}({delta})"),
        }
    }
}
