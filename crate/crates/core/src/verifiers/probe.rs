//! Counterexample search for the conjectured single-colour tiling formulas
//! on `n >= 25` vertices. The probe can refute the formulas, never confirm
//! them: random hosts and perturbations are heuristic coverage, not uniform
//! samples.

use std::io::{Read, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::random::{perturb, random_min_degree};
use crate::constructions::{bound_report, build, ConstructionParams, Variant};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, MAX_VERTICES};
use crate::solvers::{max_single_colour_tiling, SolveOptions};

use super::enumerate::with_workers;

/// Smallest order the formulas are stated for.
pub const PROBE_MIN_N: usize = 25;

const PROBE_VARIANTS: [Variant; 3] = [Variant::ExBes1, Variant::ExBes2, Variant::ExBes3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeGrid {
    pub n_min: usize,
    pub n_max: usize,
    /// Restricts each row to `δ >= delta_min`; by default every `δ` from
    /// `⌈4n/5⌉` to `n-1` is probed.
    pub delta_min: Option<usize>,
    /// Search-node budget per exact solve.
    pub budget: u64,
}

impl ProbeGrid {
    pub fn new(n_min: usize, n_max: usize) -> Self {
        ProbeGrid {
            n_min,
            n_max,
            delta_min: None,
            budget: 2_000_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min < PROBE_MIN_N || self.n_min > self.n_max || self.n_max > MAX_VERTICES {
            return Err(Error::Inadmissible(format!(
                "probe needs {PROBE_MIN_N} <= n_min <= n_max <= {MAX_VERTICES}, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if let Some(d) = self.delta_min {
            for n in self.n_min..=self.n_max {
                check_cell(n, d)?;
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> Result<Vec<(usize, usize)>> {
        self.validate()?;
        Ok((self.n_min..=self.n_max)
            .flat_map(|n| (self.delta_min.unwrap_or((4 * n).div_ceil(5))..n).map(move |d| (n, d)))
            .collect())
    }
}

/// Rejects `δ < 4n/5` and `δ >= n`.
pub fn check_cell(n: usize, delta: usize) -> Result<()> {
    if 5 * delta < 4 * n || delta >= n {
        return Err(Error::Inadmissible(format!(
            "probe cells need 4n/5 <= delta <= n-1, got n={n}, delta={delta}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub n: usize,
    /// Actual minimum degree of the probed graph.
    pub delta: usize,
    /// Construction name, `random#i` or `perturb(<construction>)#i`.
    pub source: String,
    pub optimum: usize,
    pub c1: Option<i64>,
    pub c2: Option<i64>,
    pub c3: Option<i64>,
    #[serde(rename = "below")]
    pub below_formula: bool,
    pub proved: bool,
}

impl ProbeRecord {
    /// Largest applicable formula value.
    pub fn formula(&self) -> Option<i64> {
        [self.c1, self.c2, self.c3].into_iter().flatten().max()
    }

    fn expected_below(&self) -> bool {
        self.proved && self.formula().is_some_and(|f| (self.optimum as i64) < f)
    }
}

fn record(g: &ColouredGraph, source: String, budget: u64) -> Result<ProbeRecord> {
    let n = g.n();
    let delta = g.min_degree();
    let b = bound_report(n, delta)?;
    let res = max_single_colour_tiling(g, &SolveOptions::with_budget(budget));
    res.tiling.verify_triangles(g, true)?;
    let mut rec = ProbeRecord {
        n,
        delta,
        source,
        optimum: res.optimum,
        c1: b.c1,
        c2: b.c2,
        c3: b.c3,
        below_formula: false,
        proved: res.proved_optimal,
    };
    rec.below_formula = rec.expected_below();
    Ok(rec)
}

/// For each grid cell: every admissible extremal construction, then
/// `samples` random hosts of minimum degree at least `δ`, then `samples`
/// constructions with one to four edges recoloured. Cell `i` draws from
/// stream `i` of `seed`.
pub fn probe_question(grid: &ProbeGrid, samples: usize, seed: u64, workers: usize) -> Result<Vec<ProbeRecord>> {
    let cells = grid.cells()?;
    let per_cell = with_workers(workers, || {
        cells
            .par_iter()
            .enumerate()
            .map(|(i, &(n, delta))| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let bases: Vec<_> = PROBE_VARIANTS
                    .iter()
                    .filter_map(|&variant| {
                        build(&ConstructionParams {
                            variant,
                            n,
                            delta,
                            extra: vec![],
                        })
                        .ok()
                    })
                    .collect();
                let mut out = Vec::with_capacity(bases.len() + 2 * samples);
                for c in &bases {
                    out.push(record(&c.graph, c.params.variant.to_string(), grid.budget)?);
                }
                for s in 0..samples {
                    let g = random_min_degree(n, delta, 2, &mut rng)?;
                    out.push(record(&g, format!("random#{s}"), grid.budget)?);
                }
                if !bases.is_empty() {
                    for s in 0..samples {
                        let base = &bases[s % bases.len()];
                        let g = perturb(&base.graph, 1 + s % 4, &mut rng);
                        out.push(record(&g, format!("perturb({})#{s}", base.params.variant), grid.budget)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(per_cell.into_iter().flatten().collect())
}

pub fn write_probe_csv<W: Write>(records: &[ProbeRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses probe CSV, rejecting rows whose `below` flag disagrees with the
/// optimum and formula columns.
pub fn read_probe_csv<R: Read>(input: R) -> Result<Vec<ProbeRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rd.deserialize().enumerate() {
        let rec: ProbeRecord = row?;
        if rec.below_formula != rec.expected_below() {
            return Err(Error::parse(i + 2, "below flag disagrees with optimum and formulas"));
        }
        out.push(rec);
    }
    Ok(out)
}
