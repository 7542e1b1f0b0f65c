//! Step-by-step verification of an op script.
//!
//! Every op is applied twice: once by the graph rule and once through the
//! symplectic oracle. LG ops are additionally replayed at the level of Pauli
//! stabilizers. A script passes only if every step agrees exactly.

use std::fmt::{self, Write as _};

use crate::graph::WeightedGraph;
use crate::pauli::{verify_stabilizer_transport, PauliError, TransportReport};
use crate::rules::{RuleError, RuleOp};
use crate::scalar::{int, Scalar};
use crate::symplectic::{oracle_apply, OracleError};
use crate::GaussianGate;

/// A graph rule implementation, pluggable so the checker can be tested
/// against a broken one.
pub trait RuleEngine: Sync {
    fn apply(&self, graph: &WeightedGraph, op: &RuleOp) -> Result<WeightedGraph, RuleError>;
}

/// The rules from [`crate::rules`].
pub struct StandardRules;

impl RuleEngine for StandardRules {
    fn apply(&self, graph: &WeightedGraph, op: &RuleOp) -> Result<WeightedGraph, RuleError> {
        op.apply(graph)
    }
}

#[derive(Debug, Clone)]
pub enum StepOutcome {
    Agree,
    Mismatch { rule: WeightedGraph, oracle: WeightedGraph },
    OracleFailed(OracleError),
    TransportMismatch(TransportReport),
    RuleFailed(RuleError),
    PauliFailed(PauliError),
}

#[derive(Debug, Clone)]
pub struct StepCheck {
    pub index: usize,
    pub op: RuleOp,
    pub before: WeightedGraph,
    pub after: Option<WeightedGraph>,
    pub transport: Option<TransportReport>,
    pub outcome: StepOutcome,
}

impl StepCheck {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, StepOutcome::Agree)
    }
}

/// Which exponential of the squeezing parameter the scale rule multiplies by,
/// determined by running the oracle on a probe graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleConvention {
    /// Factor `c = e^{r}` in the gate's action `x → c x`.
    pub x_factor: Scalar,
    /// Observed ratio of new to old incident weight.
    pub weight_multiplier: Scalar,
}

impl ScaleConvention {
    /// Transports the single-edge graph through `S(r)` with `e^{r} = 2`.
    pub fn probe() -> Result<Self, OracleError> {
        let x_factor = int(2);
        let probe = WeightedGraph::from_edges(2, [(1, 2, int(1))]).expect("valid probe");
        let gate = GaussianGate::Scale { mode: 1, lambda: x_factor.clone() };
        let moved = crate::symplectic::transport(&crate::symplectic::graph_nullifier_matrix(&probe), &[gate])?;
        let out = crate::symplectic::recover_graph(&moved)?;
        Ok(Self { weight_multiplier: out.weight(1, 2) / probe.weight(1, 2), x_factor })
    }

    /// True when incident weights pick up `e^{r}`.
    pub fn lambda_is_exp_r(&self) -> bool {
        self.weight_multiplier == self.x_factor
    }

    pub fn lambda_is_exp_minus_r(&self) -> bool {
        self.weight_multiplier == self.x_factor.recip()
    }
}

impl fmt::Display for ScaleConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let resolved = if self.lambda_is_exp_r() {
            "e^{r}"
        } else if self.lambda_is_exp_minus_r() {
            "e^{-r}"
        } else {
            "undetermined"
        };
        writeln!(
            f,
            "scale convention: gate S(r) acts as x -> e^{{r}} x, p -> e^{{-r}} p; probe with e^{{r}} = {} multiplied the incident weight by {}",
            self.x_factor, self.weight_multiplier
        )?;
        writeln!(f, "scale convention: rule parameter lambda = {resolved} for gate S(r)")?;
        if self.lambda_is_exp_r() {
            writeln!(
                f,
                "scale convention: the rule statement 'multiply by e^{{-r}}' describes S(-r) = S(r)^-1, not S(r)"
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub steps: Vec<StepCheck>,
    pub scale_convention: Option<ScaleConvention>,
    pub result: Option<WeightedGraph>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(StepCheck::passed) && self.result.is_some()
    }

    pub fn first_failure(&self) -> Option<&StepCheck> {
        self.steps.iter().find(|s| !s.passed())
    }

    /// Human-readable report. With `pauli_level`, every transported
    /// stabilizer is listed.
    pub fn render(&self, pauli_level: bool) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let status = if step.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(out, "step {} `{}`: {status}", step.index + 1, step.op);
            match &step.outcome {
                StepOutcome::Agree => {}
                StepOutcome::Mismatch { rule, oracle } => {
                    let _ = writeln!(out, "  rule result:\n{}", indent(&rule.serialize()));
                    let _ = writeln!(out, "  oracle result:\n{}", indent(&oracle.serialize()));
                }
                StepOutcome::OracleFailed(e) => {
                    let _ = writeln!(out, "  oracle: {e}");
                }
                StepOutcome::RuleFailed(e) => {
                    let _ = writeln!(out, "  rule: {e}");
                }
                StepOutcome::PauliFailed(e) => {
                    let _ = writeln!(out, "  pauli: {e}");
                }
                StepOutcome::TransportMismatch(report) => {
                    if let Some(v) = report.first_mismatch() {
                        let _ = writeln!(
                            out,
                            "  stabilizer transport mismatch at vertex {}:\n    transported: {}\n    expected:    {}",
                            v.vertex, v.corrected, v.expected
                        );
                    }
                }
            }
            if pauli_level {
                if let Some(report) = &step.transport {
                    for v in &report.vertices {
                        let _ = writeln!(out, "  G{} -> {}  (expected {})", v.vertex, v.corrected, v.expected);
                    }
                }
            }
        }
        if let Some(conv) = &self.scale_convention {
            out.push_str(&conv.to_string());
        }
        let _ = writeln!(out, "{}", if self.passed() { "verify: PASS" } else { "verify: FAIL" });
        out
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}

pub fn verify_script(graph: &WeightedGraph, ops: &[RuleOp], xi: &Scalar) -> VerifyReport {
    verify_script_with(graph, ops, xi, &StandardRules)
}

/// Runs every op through `rules` and through the oracle, stopping at the
/// first disagreement.
pub fn verify_script_with(graph: &WeightedGraph, ops: &[RuleOp], xi: &Scalar, rules: &dyn RuleEngine) -> VerifyReport {
    let mut steps = Vec::with_capacity(ops.len());
    let mut current = graph.clone();
    let mut completed = true;
    for (index, op) in ops.iter().enumerate() {
        let mut transport = None;
        let (outcome, after) = match (rules.apply(&current, op), oracle_apply(&current, op)) {
            (Err(e), _) => (StepOutcome::RuleFailed(e), None),
            (Ok(_), Err(e)) => (StepOutcome::OracleFailed(e), None),
            (Ok(rule), Ok(oracle)) if rule != oracle => (StepOutcome::Mismatch { rule, oracle }, None),
            (Ok(rule), Ok(_)) => match op {
                RuleOp::Lg { pivot, delta } => match verify_stabilizer_transport(&current, *pivot, delta, xi) {
                    Ok(report) if report.ok() => {
                        transport = Some(report);
                        (StepOutcome::Agree, Some(rule))
                    }
                    Ok(report) => {
                        transport = Some(report.clone());
                        (StepOutcome::TransportMismatch(report), None)
                    }
                    Err(e) => (StepOutcome::PauliFailed(e), None),
                },
                _ => (StepOutcome::Agree, Some(rule)),
            },
        };
        let next = after.clone();
        steps.push(StepCheck { index, op: op.clone(), before: current.clone(), after, transport, outcome });
        match next {
            Some(g) => current = g,
            None => {
                completed = false;
                break;
            }
        }
    }
    let scale_convention = ops
        .iter()
        .any(|op| matches!(op, RuleOp::Scale { .. }))
        .then(ScaleConvention::probe)
        .and_then(Result::ok);
    VerifyReport { steps, scale_convention, result: completed.then_some(current) }
}
