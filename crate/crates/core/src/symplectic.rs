//! Symplectic-matrix oracle.
//!
//! Gates act on the quadrature vector `r = (x₁..xₙ, p₁..pₙ)` through
//! `U rᵢ U⁻¹ = Σⱼ Sᵢⱼ rⱼ`. A nullifier with coefficient row `c` maps to
//! `c S`, so a gate sequence applied first-to-last transports a nullifier
//! matrix as `N S₁ S₂ ⋯ S_k`. The graph is then read back by exact row
//! reduction of the p-block. None of this goes through the Pauli tables or
//! the graph rules, so agreement between the three is a real check.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::gate::{GateError, GaussianGate};
use crate::graph::{Vertex, WeightedGraph};
use crate::matrix::RatMatrix;
use crate::pauli::Nullifier;
use crate::rules::{RuleError, RuleOp};
use crate::scalar::Scalar;

/// Why a transported nullifier set is not the nullifier set of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotGraphForm {
    #[error("p-block is singular")]
    SingularPBlock,
    #[error("recovered adjacency is asymmetric at ({0}, {1})")]
    Asymmetric(Vertex, Vertex),
    #[error("recovered adjacency has nonzero diagonal {1} at vertex {0}")]
    NonzeroDiagonal(Vertex, Scalar),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("nullifier rows are linearly dependent (rank {rank} < {n})")]
    DependentRows { rank: usize, n: usize },
    #[error("not graph form: {0}")]
    NotGraphForm(#[from] NotGraphForm),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("expected a {expected}-column matrix, got {got}")]
    Shape { expected: usize, got: usize },
}

/// The standard form `J = [[0, I], [−I, 0]]`.
pub fn symplectic_form(n: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Scalar::one();
        j[(n + i, i)] = -Scalar::one();
    }
    j
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    n: usize,
    m: RatMatrix,
}

impl SymplecticMatrix {
    pub fn identity(n: usize) -> Self {
        Self { n, m: RatMatrix::identity(2 * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    /// `mᵀ J m = J`, exactly.
    pub fn is_symplectic(&self) -> bool {
        let j = symplectic_form(self.n);
        &(&self.m.transpose() * &j) * &self.m == j
    }

    /// Composition in application order: `self` acts first.
    pub fn then(&self, next: &Self) -> Self {
        assert_eq!(self.n, next.n, "mode count mismatch");
        Self { n: self.n, m: &self.m * &next.m }
    }

    /// Image of the translation `exp(i(t·x − s·p))`: returns `(s', t')`.
    pub fn act_on_translation(&self, s: &[Scalar], t: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let n = self.n;
        // Coefficient row of t·x − s·p, pushed through S.
        let mut row = RatMatrix::zeros(1, 2 * n);
        for j in 0..n {
            row[(0, j)] = t[j].clone();
            row[(0, n + j)] = -&s[j];
        }
        let out = &row * &self.m;
        let t2 = (0..n).map(|j| out[(0, j)].clone()).collect();
        let s2 = (0..n).map(|j| -&out[(0, n + j)]).collect();
        (s2, t2)
    }
}

/// Symplectic matrix of a single gate on `n` modes.
pub fn gate_symplectic(gate: &GaussianGate, n: usize) -> Result<SymplecticMatrix, GateError> {
    gate.validate(n)?;
    let mut m = RatMatrix::identity(2 * n);
    let xi = |mode: Vertex| mode - 1;
    let pi = |mode: Vertex| n + mode - 1;
    match gate {
        GaussianGate::PhaseZ { mode, eta } => {
            m[(pi(*mode), xi(*mode))] = -eta;
        }
        GaussianGate::PhaseX { mode, eta } => {
            m[(xi(*mode), pi(*mode))] = eta.clone();
        }
        GaussianGate::Fourier { mode } => {
            let (x, p) = (xi(*mode), pi(*mode));
            m[(x, x)] = Scalar::zero();
            m[(p, p)] = Scalar::zero();
            m[(x, p)] = Scalar::one();
            m[(p, x)] = -Scalar::one();
        }
        GaussianGate::FourierSquared { mode } => {
            m[(xi(*mode), xi(*mode))] = -Scalar::one();
            m[(pi(*mode), pi(*mode))] = -Scalar::one();
        }
        GaussianGate::Scale { mode, lambda } => {
            m[(xi(*mode), xi(*mode))] = lambda.clone();
            m[(pi(*mode), pi(*mode))] = lambda.recip();
        }
        GaussianGate::ControlledZ { a, b, strength } => {
            m[(pi(*a), xi(*b))] = -strength;
            m[(pi(*b), xi(*a))] = -strength;
        }
        // Displacements have no linear part.
        GaussianGate::PauliX { .. } | GaussianGate::PauliZ { .. } => {}
        GaussianGate::LocalGaussian { pivot, .. } => {
            return Err(GateError::UnexpandedLocalGaussian(*pivot));
        }
    }
    Ok(SymplecticMatrix { n, m })
}

/// Product of the gate matrices in application order.
pub fn sequence_symplectic(gates: &[GaussianGate], n: usize) -> Result<SymplecticMatrix, GateError> {
    gates
        .iter()
        .try_fold(SymplecticMatrix::identity(n), |acc, g| Ok(acc.then(&gate_symplectic(g, n)?)))
}

/// `n × 2n` matrix whose rows are nullifier coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullifierMatrix {
    n: usize,
    rows: RatMatrix,
}

impl NullifierMatrix {
    pub fn from_matrix(rows: RatMatrix) -> Result<Self, OracleError> {
        let n = rows.rows();
        if rows.cols() != 2 * n {
            return Err(OracleError::Shape { expected: 2 * n, got: rows.cols() });
        }
        Ok(Self { n, rows })
    }

    pub fn from_nullifiers(nullifiers: &[Nullifier]) -> Result<Self, OracleError> {
        let rows = nullifiers
            .iter()
            .map(|f| f.cx.iter().chain(&f.cp).cloned().collect())
            .collect();
        Self::from_matrix(RatMatrix::from_rows(rows))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.rows
    }

    pub fn nullifier(&self, v: Vertex) -> Nullifier {
        let row = self.rows.row(v - 1);
        Nullifier {
            cx: row[..self.n].to_vec(),
            cp: row[self.n..].to_vec(),
        }
    }

    /// Rows pairwise commute: `N J Nᵀ = 0`.
    pub fn is_isotropic(&self) -> bool {
        let j = symplectic_form(self.n);
        let c = &(&self.rows * &j) * &self.rows.transpose();
        (0..self.n).all(|i| (0..self.n).all(|k| c[(i, k)].is_zero()))
    }
}

/// Rows `[−A | I]` for adjacency `A`.
pub fn graph_nullifier_matrix(graph: &WeightedGraph) -> NullifierMatrix {
    let n = graph.n();
    let mut rows = RatMatrix::zeros(n, 2 * n);
    for a in 1..=n {
        for b in 1..=n {
            rows[(a - 1, b - 1)] = -graph.weight(a, b);
        }
        rows[(a - 1, n + a - 1)] = Scalar::one();
    }
    NullifierMatrix { n, rows }
}

/// Conjugates every nullifier by the gate sequence, first gate first.
pub fn transport(nm: &NullifierMatrix, gates: &[GaussianGate]) -> Result<NullifierMatrix, GateError> {
    let mut rows = nm.rows.clone();
    for gate in gates {
        rows = &rows * gate_symplectic(gate, nm.n)?.matrix();
    }
    Ok(NullifierMatrix { n: nm.n, rows })
}

/// Reads a graph back from a nullifier matrix `[M_x | M_p]` as
/// `A = −M_p⁻¹ M_x`.
pub fn recover_graph(nm: &NullifierMatrix) -> Result<WeightedGraph, OracleError> {
    let n = nm.n;
    let rank = nm.rows.rank();
    if rank < n {
        return Err(OracleError::DependentRows { rank, n });
    }
    let mx = nm.rows.column_block(0, n);
    let mp = nm.rows.column_block(n, n);
    let mp_inv = mp.inverse().ok_or(NotGraphForm::SingularPBlock)?;
    let a = (&mp_inv * &mx).neg();
    for u in 0..n {
        if !a[(u, u)].is_zero() {
            return Err(NotGraphForm::NonzeroDiagonal(u + 1, a[(u, u)].clone()).into());
        }
        for v in u + 1..n {
            if a[(u, v)] != a[(v, u)] {
                return Err(NotGraphForm::Asymmetric(u + 1, v + 1).into());
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    Ok(WeightedGraph::from_matrix(&rows).expect("checked symmetric with zero diagonal"))
}

/// Applies `op` through the oracle: expand to gates, transport the graph's
/// nullifiers, recover the graph.
pub fn oracle_apply(graph: &WeightedGraph, op: &RuleOp) -> Result<WeightedGraph, OracleError> {
    let gates = op.gates(graph)?;
    let moved = transport(&graph_nullifier_matrix(graph), &gates)?;
    recover_graph(&moved)
}
