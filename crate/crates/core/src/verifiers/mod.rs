//! Exhaustive and randomized checks of the small lemmas, tiny Ramsey
//! computations, tightness audits of the constructions and the probe of the
//! open single-colour question.
//!
//! Exhaustive scans use fast bitmask kernels; every stored witness is
//! re-checked against a plain graph predicate when a report is loaded.

mod audit;
mod blowup;
mod enumerate;
mod lemmas;
mod probe;
mod ramsey;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, GraphJson};
use crate::solvers::{bowtie_at, max_mixed_tiling, SolveOptions};

pub use audit::{audit_grid, audit_tightness, lemma_bound, AuditRow, Objective};
pub use blowup::{verify_k7_blowup, verify_k7_blowup_adversarial, verify_k7_blowup_random, AdversarialConfig};
pub use enumerate::{enumerate_colourings, with_workers, Scan, Skeleton, Visit, EXHAUSTIVE_LIMIT, MAX_WITNESSES};
pub use lemmas::{
    verify_bowtie_lemmas, verify_bowtie_through_vertex, verify_claim_k7, verify_fact_k6, verify_lemma_k8, verify_mono_triangle, verify_second_bowtie,
    verify_sharpness_k7,
};
pub use probe::{check_cell, probe_question, read_probe_csv, write_probe_csv, ProbeGrid, ProbeRecord, PROBE_MIN_N};
pub use ramsey::{compute_ramsey, compute_special_ramsey, RamseyResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// Every two-coloured `K_6` has two monochromatic triangles.
    FactK6,
    /// Every two-coloured `K_n` (`n` = 5 or 6) has a monochromatic triangle;
    /// false for `n = 5`.
    MonoTriangle,
    /// Every two-coloured `K_7` has two monochromatic triangles sharing at
    /// most one vertex.
    ClaimK7,
    /// Every two-coloured `K_8` has two disjoint monochromatic triangles.
    LemmaK8,
    /// The same statement on `K_7`, which fails.
    SharpnessK7,
    /// In a `K_6` with disjoint monochromatic triangles of different colours
    /// every vertex lies in a bowtie.
    BowtieThroughVertex,
    /// A `K_7` with a bowtie has bowties on two vertex sets.
    SecondBowtie,
    /// Every two-coloured `K_7(2)` has three disjoint monochromatic
    /// triangles.
    K7Blowup,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::FactK6,
        Lemma::MonoTriangle,
        Lemma::ClaimK7,
        Lemma::LemmaK8,
        Lemma::SharpnessK7,
        Lemma::BowtieThroughVertex,
        Lemma::SecondBowtie,
        Lemma::K7Blowup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::FactK6 => "fact-k6",
            Lemma::MonoTriangle => "mono-triangle",
            Lemma::ClaimK7 => "claim-k7",
            Lemma::LemmaK8 => "lemma-k8",
            Lemma::SharpnessK7 => "sharpness-k7",
            Lemma::BowtieThroughVertex => "bowtie-through-vertex",
            Lemma::SecondBowtie => "second-bowtie",
            Lemma::K7Blowup => "k7x2",
        }
    }

    /// Whether `g` satisfies the hypothesis and violates the conclusion,
    /// decided from the graph alone.
    pub fn violated_by(self, g: &ColouredGraph) -> bool {
        let complete = |n: usize| g.n() == n && g.r() == 2 && g.is_complete();
        let tris = g.mono_triangles();
        let shared = |a: usize, b: usize| (tris[a].vertex_set() & tris[b].vertex_set()).len();
        let pairs = || (0..tris.len()).flat_map(|a| (a + 1..tris.len()).map(move |b| (a, b)));
        match self {
            Lemma::FactK6 => complete(6) && tris.len() < 2,
            Lemma::MonoTriangle => (complete(5) || complete(6)) && tris.is_empty(),
            Lemma::ClaimK7 => complete(7) && !pairs().any(|(a, b)| shared(a, b) <= 1),
            Lemma::LemmaK8 => complete(8) && !pairs().any(|(a, b)| shared(a, b) == 0),
            Lemma::SharpnessK7 => complete(7) && !pairs().any(|(a, b)| shared(a, b) == 0),
            Lemma::BowtieThroughVertex => {
                let qualifies = pairs().any(|(a, b)| shared(a, b) == 0 && tris[a].colour != tris[b].colour);
                complete(6) && qualifies && (0..6).any(|v| bowtie_at(g, v, g.vertices()).is_none())
            }
            Lemma::SecondBowtie => {
                let mut sets: Vec<_> = pairs()
                    .filter(|&(a, b)| shared(a, b) == 1 && tris[a].colour != tris[b].colour)
                    .map(|(a, b)| tris[a].vertex_set() | tris[b].vertex_set())
                    .collect();
                sets.sort();
                sets.dedup();
                complete(7) && sets.len() == 1
            }
            Lemma::K7Blowup => {
                let skeleton = Skeleton::k7x2();
                g.n() == 14
                    && g.edge_count() == 84
                    && skeleton.code(g).is_some()
                    && max_mixed_tiling(g, &SolveOptions::default()).optimum < 3
            }
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Exhaustive,
    Randomized,
    Adversarial,
}

/// A violating colouring: its code over the lemma's skeleton and the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "wide")]
    pub code: u128,
    pub graph: GraphJson,
}

impl Witness {
    pub fn new(skeleton: &Skeleton, code: u128) -> Self {
        Witness {
            code,
            graph: GraphJson::from(&skeleton.graph(code, 2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub mode: Mode,
    /// Colourings in the full universe.
    #[serde(with = "wide")]
    pub universe_size: u128,
    /// Each checked colouring stands for this many (colour-swap halving).
    pub reduction_factor: u64,
    pub checked: u64,
    /// Checked colourings meeting the lemma's hypothesis.
    pub qualifying: u64,
    pub violation_count: u64,
    pub violations: Vec<Witness>,
    pub extractor_runs: u64,
    pub extractor_failures: u64,
    pub extractor_witnesses: Vec<Witness>,
    /// Named auxiliary counts (filter tallies, sample mixes, search floors).
    pub counters: BTreeMap<String, u64>,
    /// Wall time; excluded from determinism comparisons.
    pub elapsed_ms: u64,
}

impl LemmaReport {
    pub(crate) fn from_scan(lemma: Lemma, skeleton: &Skeleton, scan: Scan, reduction_factor: u64) -> Self {
        LemmaReport {
            lemma,
            mode: Mode::Exhaustive,
            universe_size: skeleton.universe(2).unwrap_or(u128::MAX),
            reduction_factor,
            checked: scan.checked,
            qualifying: scan.qualifying,
            violation_count: scan.violations,
            violations: scan.witnesses.iter().map(|&c| Witness::new(skeleton, c)).collect(),
            extractor_runs: scan.extractor_runs,
            extractor_failures: scan.extractor_failures,
            extractor_witnesses: scan.extractor_witnesses.iter().map(|&c| Witness::new(skeleton, c)).collect(),
            counters: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    /// Exhaustive reports cover their whole universe.
    pub fn is_complete(&self) -> bool {
        self.mode != Mode::Exhaustive || self.checked as u128 * self.reduction_factor as u128 == self.universe_size
    }

    pub fn holds(&self) -> bool {
        self.violation_count == 0 && self.extractor_failures == 0
    }

    /// The report with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn normalized(&self) -> Self {
        LemmaReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    /// Confirms every stored violation is genuine.
    pub fn recheck(&self) -> Result<()> {
        for (i, w) in self.violations.iter().enumerate() {
            let g = w.graph.to_graph()?;
            if !self.lemma.violated_by(&g) {
                return Err(Error::InvalidGraph(format!(
                    "stored witness {i} does not violate {}",
                    self.lemma
                )));
            }
        }
        if self.violations.len() as u64 > self.violation_count {
            return Err(Error::InvalidGraph("more witnesses than violations".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a report and rechecks its witnesses.
    pub fn from_json(text: &str) -> Result<Self> {
        let report: LemmaReport = serde_json::from_str(text)?;
        report.recheck()?;
        Ok(report)
    }
}

/// `u128` as a JSON number when it fits in `u64`, as a decimal string
/// otherwise; both forms are accepted on input.
mod wide {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(*v) {
            Ok(small) => s.serialize_u64(small),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Wide {
        Num(u64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        match Wide::deserialize(d)? {
            Wide::Num(v) => Ok(v.into()),
            Wide::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

pub(crate) fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, u64)> {
    let start = std::time::Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_millis() as u64))
}
