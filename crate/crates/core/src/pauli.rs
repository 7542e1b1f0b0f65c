//! Continuous-variable Pauli group with exact phase tracking.
//!
//! An element is stored as `e^{iφ} ∏ⱼ Zⱼ(tⱼ) ∏ⱼ Xⱼ(sⱼ)` where
//! `X(s) = exp(−isp)` and `Z(t) = exp(itx)`. Reordering uses
//! `X(s) Z(t) = e^{−ist} Z(t) X(s)`. The phase exponent `φ` is kept as an
//! exact rational with no reduction modulo 2π.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::gate::{GateError, GaussianGate};
use crate::graph::{GraphError, Vertex, WeightedGraph};
use crate::rules::{apply_lg_rule, RuleError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("mode count mismatch: {0} vs {1}")]
    ModeMismatch(usize, usize),
    #[error("nullifier is not in graph-normal form (p-part must be a unit vector)")]
    NotGraphNormalForm,
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    s: Vec<Scalar>,
    t: Vec<Scalar>,
    phase: Scalar,
}

impl PauliElement {
    pub fn identity(n: usize) -> Self {
        Self {
            s: vec![Scalar::zero(); n],
            t: vec![Scalar::zero(); n],
            phase: Scalar::zero(),
        }
    }

    /// Builds `e^{iφ} ∏ Z(t) ∏ X(s)` directly from its normal-form data.
    pub fn from_parts(s: Vec<Scalar>, t: Vec<Scalar>, phase: Scalar) -> Self {
        assert_eq!(s.len(), t.len(), "s and t lengths differ");
        Self { s, t, phase }
    }

    /// `X_mode(s)` on `n` modes.
    pub fn x(n: usize, mode: Vertex, s: Scalar) -> Self {
        let mut p = Self::identity(n);
        p.s[mode - 1] = s;
        p
    }

    /// `Z_mode(t)` on `n` modes.
    pub fn z(n: usize, mode: Vertex, t: Scalar) -> Self {
        let mut p = Self::identity(n);
        p.t[mode - 1] = t;
        p
    }

    /// The scalar `e^{iφ}`.
    pub fn phase_factor(n: usize, phase: Scalar) -> Self {
        Self {
            phase,
            ..Self::identity(n)
        }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[Scalar] {
        &self.s
    }

    pub fn t(&self) -> &[Scalar] {
        &self.t
    }

    pub fn phase(&self) -> &Scalar {
        &self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.phase.is_zero() && self.s.iter().chain(&self.t).all(Zero::is_zero)
    }

    /// Normal-form product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::ModeMismatch(self.n(), other.n()));
        }
        // Z(t1) X(s1) Z(t2) X(s2): moving X(s1) past Z(t2) costs e^{-i s1 t2} per mode.
        let mut phase = &self.phase + &other.phase;
        for (s1, t2) in self.s.iter().zip(&other.t) {
            if !s1.is_zero() && !t2.is_zero() {
                phase -= s1 * t2;
            }
        }
        Ok(Self {
            s: self.s.iter().zip(&other.s).map(|(a, b)| a + b).collect(),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
            phase,
        })
    }

    /// Two-sided inverse: `(Z(t) X(s))⁻¹ = X(−s) Z(−t) = e^{−ist} Z(−t) X(−s)`.
    pub fn inverse(&self) -> Self {
        let mut phase = -&self.phase;
        for (s, t) in self.s.iter().zip(&self.t) {
            phase -= s * t;
        }
        Self {
            s: self.s.iter().map(|x| -x).collect(),
            t: self.t.iter().map(|x| -x).collect(),
            phase,
        }
    }

    /// `U P U⁻¹` for a single gate. `LocalGaussian` must be expanded first;
    /// see [`conjugate_in_graph`].
    pub fn conjugate(&self, gate: &GaussianGate) -> Result<Self, PauliError> {
        gate.validate(self.n())?;
        if let GaussianGate::LocalGaussian { pivot, .. } = gate {
            return Err(GateError::UnexpandedLocalGaussian(*pivot).into());
        }
        let n = self.n();
        let mut out = Self::phase_factor(n, self.phase.clone());
        for (j, t) in self.t.iter().enumerate() {
            if !t.is_zero() {
                out = out.mul(&z_image(gate, n, j + 1, t))?;
            }
        }
        for (j, s) in self.s.iter().enumerate() {
            if !s.is_zero() {
                out = out.mul(&x_image(gate, n, j + 1, s))?;
            }
        }
        Ok(out)
    }

    /// Conjugates by each gate in order: the first gate acts first.
    pub fn conjugate_all<'a, I>(&self, gates: I) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = &'a GaussianGate>,
    {
        gates.into_iter().try_fold(self.clone(), |p, g| p.conjugate(g))
    }
}

/// Image of `Z_mode(t)` under conjugation by `gate`.
fn z_image(gate: &GaussianGate, n: usize, mode: Vertex, t: &Scalar) -> PauliElement {
    use GaussianGate::*;
    let z = |m, t: Scalar| PauliElement::z(n, m, t);
    let x = |m, s: Scalar| PauliElement::x(n, m, s);
    match gate {
        PhaseX { mode: m, eta } if *m == mode => {
            // Z(t) -> e^{-i t^2 η/2} X(-tη) Z(t)
            let prefactor = PauliElement::phase_factor(n, -(t * t * eta) / Scalar::from_integer(2.into()));
            prefactor
                .mul(&x(mode, -(t * eta)))
                .and_then(|p| p.mul(&z(mode, t.clone())))
                .expect("same mode count")
        }
        Fourier { mode: m } if *m == mode => x(mode, -t),
        FourierSquared { mode: m } if *m == mode => z(mode, -t),
        Scale { mode: m, lambda } if *m == mode => z(mode, t * lambda),
        PauliX { mode: m, s } if *m == mode => {
            // X(s) Z(t) X(-s) = e^{-ist} Z(t)
            PauliElement::phase_factor(n, -(s * t)).mul(&z(mode, t.clone())).expect("same mode count")
        }
        _ => z(mode, t.clone()),
    }
}

/// Image of `X_mode(s)` under conjugation by `gate`.
fn x_image(gate: &GaussianGate, n: usize, mode: Vertex, s: &Scalar) -> PauliElement {
    use GaussianGate::*;
    let z = |m, t: Scalar| PauliElement::z(n, m, t);
    let x = |m, s: Scalar| PauliElement::x(n, m, s);
    match gate {
        PhaseZ { mode: m, eta } if *m == mode => {
            // X(s) -> e^{-i s^2 η/2} Z(sη) X(s)
            let prefactor = PauliElement::phase_factor(n, -(s * s * eta) / Scalar::from_integer(2.into()));
            prefactor
                .mul(&z(mode, s * eta))
                .and_then(|p| p.mul(&x(mode, s.clone())))
                .expect("same mode count")
        }
        Fourier { mode: m } if *m == mode => z(mode, s.clone()),
        FourierSquared { mode: m } if *m == mode => x(mode, -s),
        Scale { mode: m, lambda } if *m == mode => x(mode, s / lambda),
        ControlledZ { a, b, strength } if *a == mode || *b == mode => {
            let other = if *a == mode { *b } else { *a };
            x(mode, s.clone()).mul(&z(other, strength * s)).expect("same mode count")
        }
        PauliZ { mode: m, t } if *m == mode => {
            // Z(t) X(s) Z(-t) = e^{ist} X(s)
            PauliElement::phase_factor(n, s * t).mul(&x(mode, s.clone())).expect("same mode count")
        }
        _ => x(mode, s.clone()),
    }
}

/// Conjugation by a gate that may be a `LocalGaussian` composite, which is
/// expanded against `graph`.
pub fn conjugate_in_graph(
    graph: &WeightedGraph,
    gate: &GaussianGate,
    p: &PauliElement,
) -> Result<PauliElement, PauliError> {
    match gate {
        GaussianGate::LocalGaussian { pivot, delta } => {
            let gates = expand_lg(graph, *pivot, delta)?;
            p.conjugate_all(&gates)
        }
        _ => p.conjugate(gate),
    }
}

/// Expands the local Gaussian composite at `a` into
/// `[PX_a(−δ), P_b(Ω_ab² δ) for b ∈ N_a]`, neighbors ascending.
pub fn expand_lg(graph: &WeightedGraph, a: Vertex, delta: &Scalar) -> Result<Vec<GaussianGate>, GraphError> {
    let neighbors = graph.neighborhood(a)?;
    let mut gates = Vec::with_capacity(neighbors.len() + 1);
    gates.push(GaussianGate::PhaseX { mode: a, eta: -delta });
    for b in neighbors {
        let w = graph.weight(a, b);
        gates.push(GaussianGate::PhaseZ { mode: b, eta: w * w * delta });
    }
    Ok(gates)
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut parts = Vec::new();
        if !self.phase.is_zero() {
            parts.push(format!("exp(i {})", self.phase));
        }
        for (j, t) in self.t.iter().enumerate() {
            if !t.is_zero() {
                parts.push(format!("Z{}({t})", j + 1));
            }
        }
        for (j, s) in self.s.iter().enumerate() {
            if !s.is_zero() {
                parts.push(format!("X{}({s})", j + 1));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliElement[{self}]")
    }
}

/// Real linear form `Σ cx_j x_j + Σ cp_j p_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullifier {
    pub cx: Vec<Scalar>,
    pub cp: Vec<Scalar>,
}

impl Nullifier {
    pub fn n(&self) -> usize {
        self.cx.len()
    }

    /// The vertex `a` when the p-part is the unit vector `e_a`.
    pub fn graph_vertex(&self) -> Option<Vertex> {
        let mut found = None;
        for (j, c) in self.cp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || found.is_some() {
                return None;
            }
            found = Some(j + 1);
        }
        found
    }
}

impl fmt::Display for Nullifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let quads = self.cp.iter().enumerate().map(|(j, c)| ('p', j, c));
        for (q, j, c) in quads.chain(self.cx.iter().enumerate().map(|(j, c)| ('x', j, c))) {
            if !c.is_zero() {
                terms.push(format!("{c}*{q}{}", j + 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Nullifier `g_a = p_a − Σ_b Ω_ab x_b` of vertex `a`.
pub fn stabilizer_generator(graph: &WeightedGraph, a: Vertex) -> Result<Nullifier, GraphError> {
    graph.check_vertex(a)?;
    let n = graph.n();
    let mut cp = vec![Scalar::zero(); n];
    cp[a - 1] = Scalar::one();
    Ok(Nullifier {
        cx: graph.row(a).iter().map(|w| -w).collect(),
        cp,
    })
}

/// The stabilizer `exp(−iξ f)` as a normal-form Pauli element.
///
/// For a graph nullifier this is `X_a(ξ) ∏_b Z_b(Ω_ab ξ)` with zero phase.
pub fn nullifier_to_pauli(f: &Nullifier, xi: &Scalar) -> Result<PauliElement, PauliError> {
    if f.graph_vertex().is_none() {
        return Err(PauliError::NotGraphNormalForm);
    }
    // exp(i(t·x − s·p)) = e^{−i s·t/2} Z(t) X(s)
    let s: Vec<Scalar> = f.cp.iter().map(|c| c * xi).collect();
    let t: Vec<Scalar> = f.cx.iter().map(|c| -(c * xi)).collect();
    let st: Scalar = s.iter().zip(&t).map(|(a, b)| a * b).sum();
    Ok(PauliElement::from_parts(s, t, -st / Scalar::from_integer(2.into())))
}

/// `G_a(ξ)` for vertex `a` of `graph`.
pub fn stabilizer(graph: &WeightedGraph, a: Vertex, xi: &Scalar) -> Result<PauliElement, PauliError> {
    nullifier_to_pauli(&stabilizer_generator(graph, a)?, xi)
}

/// Per-vertex record of one stabilizer transport.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTransport {
    pub vertex: Vertex,
    /// `U G_v(ξ) U⁻¹`.
    pub conjugated: PauliElement,
    /// Conjugated element times the pivot correction (equal to `conjugated`
    /// for the pivot itself).
    pub corrected: PauliElement,
    /// `G'_v(ξ)` of the rule-transformed graph.
    pub expected: PauliElement,
}

impl VertexTransport {
    pub fn matches(&self) -> bool {
        self.corrected == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportReport {
    pub pivot: Vertex,
    pub vertices: Vec<VertexTransport>,
}

impl TransportReport {
    pub fn ok(&self) -> bool {
        self.vertices.iter().all(VertexTransport::matches)
    }

    pub fn first_mismatch(&self) -> Option<&VertexTransport> {
        self.vertices.iter().find(|v| !v.matches())
    }

    /// The pivot generator is invariant under the composite it defines.
    pub fn pivot_invariant(&self) -> bool {
        self.vertices
            .iter()
            .find(|v| v.vertex == self.pivot)
            .is_some_and(|v| v.conjugated == v.expected)
    }
}

/// Replays the stabilizer transport of the local Gaussian composite at `a`.
///
/// Each generator `G_v(ξ)` is conjugated gate by gate through the expanded
/// composite. For `v ≠ a` the result is multiplied on the right by the pivot
/// generator `G_a(−Ω_av δ ξ)`, which the composite leaves unchanged. The
/// product must equal `G'_v(ξ)` of the rewritten graph, phase included.
pub fn verify_stabilizer_transport(
    graph: &WeightedGraph,
    a: Vertex,
    delta: &Scalar,
    xi: &Scalar,
) -> Result<TransportReport, PauliError> {
    let gates = expand_lg(graph, a, delta)?;
    let rewritten = apply_lg_rule(graph, a, delta)?;
    let mut vertices = Vec::with_capacity(graph.n());
    for v in 1..=graph.n() {
        let conjugated = stabilizer(graph, v, xi)?.conjugate_all(&gates)?;
        let corrected = if v == a {
            conjugated.clone()
        } else {
            let shift = -(graph.weight(a, v) * delta * xi);
            conjugated.mul(&stabilizer(&rewritten, a, &shift)?)?
        };
        vertices.push(VertexTransport {
            vertex: v,
            conjugated,
            corrected,
            expected: stabilizer(&rewritten, v, xi)?,
        });
    }
    Ok(TransportReport { pivot: a, vertices })
}
