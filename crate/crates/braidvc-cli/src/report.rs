//! Line-oriented and machine-readable renderings of solver and pipeline
//! results.

use braidvc_core::branch::CoverResult;
use braidvc_core::npred::{LedgerStage, ReductionArtifact};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RuleRow {
    pub rule: String,
    pub claimed: Vec<u32>,
    pub nodes: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub command: String,
    pub budget: u32,
    pub feasible: bool,
    /// Vertex ids (or point indices for hit-slabs) of the witness.
    pub witness: Option<Vec<u32>>,
    pub nodes_explored: u64,
    pub dominance_violations: u64,
    pub rules: Vec<RuleRow>,
}

impl SolveReport {
    pub fn from_result(command: &str, budget: u32, res: &CoverResult) -> SolveReport {
        SolveReport {
            command: command.to_string(),
            budget,
            feasible: res.feasible,
            witness: res.cover.as_ref().map(|c| c.iter().copied().collect()),
            nodes_explored: res.nodes_explored,
            dominance_violations: res.dominance_violations,
            rules: res
                .rule_histogram
                .iter()
                .map(|(&(rule, claimed), &nodes)| RuleRow {
                    rule: rule.to_string(),
                    claimed: claimed.to_vec(),
                    nodes,
                })
                .collect(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!(
                    "{}: {} (budget {})\n",
                    self.command,
                    if self.feasible {
                        "feasible"
                    } else {
                        "infeasible"
                    },
                    self.budget
                ));
                if let Some(w) = &self.witness {
                    out.push_str(&format!(
                        "witness ({}): {}\n",
                        w.len(),
                        w.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    ));
                }
                out.push_str(&format!("nodes explored: {}\n", self.nodes_explored));
                out.push_str(&format!(
                    "dominance violations: {}\n",
                    self.dominance_violations
                ));
                if !self.rules.is_empty() {
                    out.push_str("rule histogram:\n");
                    for r in &self.rules {
                        out.push_str(&format!(
                            "  {:<22} {:<18} {}\n",
                            r.rule,
                            format!("{:?}", r.claimed),
                            r.nodes
                        ));
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LedgerStageRow {
    pub stage: String,
    pub vertices_added: i64,
    pub budget_delta: u64,
    pub j: u32,
    pub jtilde: u32,
    pub w: u32,
    pub wtilde: u32,
    pub wc: u32,
    pub note: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input_vertices: u32,
    pub output_vertices: u32,
    pub offset: u64,
    pub budget: Option<u32>,
    pub k_prime: Option<u64>,
    pub stages: Vec<LedgerStageRow>,
    pub breakpoints: Vec<u32>,
}

impl ReduceReport {
    pub fn from_artifact(input_n: u32, budget: Option<u32>, art: &ReductionArtifact) -> Self {
        ReduceReport {
            input_vertices: input_n,
            output_vertices: art.graph.slots(),
            offset: art.offset,
            budget,
            k_prime: budget.map(|k| 2 * k as u64 + art.offset),
            stages: art.stages.iter().map(stage_row).collect(),
            breakpoints: art.breakpoints.iter().map(|b| b.vertex).collect(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!(
                    "reduce: {} -> {} vertices\n",
                    self.input_vertices, self.output_vertices
                ));
                for s in &self.stages {
                    out.push_str(&format!(
                        "  stage {:<16} vertices {:+6}  budget +{:<4} {}\n",
                        s.stage, s.vertices_added, s.budget_delta, s.note
                    ));
                }
                out.push_str(&format!("offset: {}\n", self.offset));
                if let (Some(k), Some(kp)) = (self.budget, self.k_prime) {
                    out.push_str(&format!("k' = 2*{} + {} = {}\n", k, self.offset, kp));
                }
                out
            }
        }
    }
}

fn stage_row(s: &LedgerStage) -> LedgerStageRow {
    LedgerStageRow {
        stage: s.name.to_string(),
        vertices_added: s.vertices_added,
        budget_delta: s.budget_delta,
        j: s.counts.j,
        jtilde: s.counts.jt,
        w: s.counts.w,
        wtilde: s.counts.wt,
        wc: s.counts.wc,
        note: s.note.clone(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BenchRow {
    pub trial: u32,
    pub n: u32,
    pub edges: u64,
    pub k: u32,
    pub nodes: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub fitted_base: Option<f64>,
    pub warning: Option<String>,
}

impl BenchReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Text => {
                let mut out = format!("bench (seed {}):\n", self.seed);
                out.push_str(&format!(
                    "{:>6} {:>4} {:>6} {:>4} {:>10}\n",
                    "trial", "n", "m", "k", "nodes"
                ));
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:>6} {:>4} {:>6} {:>4} {:>10}\n",
                        r.trial, r.n, r.edges, r.k, r.nodes
                    ));
                }
                match self.fitted_base {
                    Some(b) => out.push_str(&format!("fitted node-growth base: {:.4}\n", b)),
                    None => out.push_str("fitted node-growth base: n/a (too few points)\n"),
                }
                if let Some(w) = &self.warning {
                    out.push_str(&format!("warning: {}\n", w));
                }
                out
            }
        }
    }
}
