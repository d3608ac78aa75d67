//! Minimum-degree sweeps over one construction family: exact optima, the
//! constructive tilers that apply, and the closed-form bounds, one row per
//! `δ`.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::{bound_report, build, ConstructionParams, Variant};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Tiling};
use crate::proof::{bes_large, bes_small, moon_large, moon_small};
use crate::solvers::{max_mixed_tiling, max_single_colour_tiling, SolveOptions};

/// Line appended to a sweep CSV cut short by an unproved solve.
pub const TRUNCATED_MARKER: &str = "# TRUNCATED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    MoonSmall,
    MoonLarge,
    BesSmall,
    BesLarge,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::MoonSmall, Algorithm::MoonLarge, Algorithm::BesSmall, Algorithm::BesLarge];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MoonSmall => "moon-small",
            Algorithm::MoonLarge => "moon-large",
            Algorithm::BesSmall => "bes-small",
            Algorithm::BesLarge => "bes-large",
        }
    }

    /// Whether `(n, δ)` lies in the range the algorithm's guarantee covers.
    pub fn applies(self, n: usize, delta: usize) -> bool {
        match self {
            Algorithm::MoonSmall | Algorithm::BesSmall => 4 * n <= 5 * delta && 6 * delta <= 5 * n,
            Algorithm::MoonLarge => 8 * delta >= 7 * n && delta < n,
            Algorithm::BesLarge => 66 * delta >= 65 * n && delta < n,
        }
    }

    /// Closed-form number of triangles the algorithm guarantees.
    pub fn guarantee(self, n: usize, delta: usize) -> i64 {
        let (n, d) = (n as i64, delta as i64);
        match self {
            Algorithm::MoonSmall => 5 * d - 4 * n,
            Algorithm::MoonLarge => (2 * d - n).div_euclid(3),
            Algorithm::BesSmall => -(4 * n - 5 * d).div_euclid(2),
            Algorithm::BesLarge => (d + 1).div_euclid(5),
        }
    }

    /// Whether the output is restricted to one colour.
    pub fn single_colour(self) -> bool {
        matches!(self, Algorithm::BesSmall | Algorithm::BesLarge)
    }

    pub fn run(self, g: &ColouredGraph) -> Result<Tiling> {
        match self {
            Algorithm::MoonSmall => moon_small(g),
            Algorithm::MoonLarge => moon_large(g),
            Algorithm::BesSmall => bes_small(g),
            Algorithm::BesLarge => bes_large(g),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub variant: Variant,
    pub n: usize,
    pub deltas: Vec<usize>,
    #[serde(default)]
    pub extra: Vec<usize>,
    /// Search-node budget per exact solve.
    pub budget: u64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub source: String,
    pub n: usize,
    pub delta: usize,
    pub mixed_optimum: usize,
    pub mixed_proved: bool,
    pub single_optimum: usize,
    pub single_proved: bool,
    pub moon_small: Option<usize>,
    pub moon_large: Option<usize>,
    pub bes_small: Option<usize>,
    pub bes_large: Option<usize>,
    pub extremal_min: i64,
    pub moon_bound: i64,
    pub bes_bound: Option<i64>,
    pub c1: Option<i64>,
    pub c2: Option<i64>,
    pub c3: Option<i64>,
}

impl SweepRow {
    pub fn algorithm(&self, alg: Algorithm) -> Option<usize> {
        match alg {
            Algorithm::MoonSmall => self.moon_small,
            Algorithm::MoonLarge => self.moon_large,
            Algorithm::BesSmall => self.bes_small,
            Algorithm::BesLarge => self.bes_large,
        }
    }

    pub fn proved(&self) -> bool {
        self.mixed_proved && self.single_proved
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// The sweep stopped after a row whose solve hit the budget.
    pub truncated: bool,
}

/// Builds the construction at every `δ` in turn. A row whose exact solve is
/// not proved is kept and ends the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    let opts = SolveOptions {
        budget: cfg.budget,
        workers: cfg.workers.max(1),
    };
    let mut out = SweepOutput::default();
    for &delta in &cfg.deltas {
        let c = build(&ConstructionParams {
            variant: cfg.variant,
            n: cfg.n,
            delta,
            extra: cfg.extra.clone(),
        })?;
        let row = sweep_row(&c.graph, cfg.variant.name(), delta, &opts)?;
        let done = !row.proved();
        out.rows.push(row);
        if done {
            out.truncated = true;
            break;
        }
    }
    Ok(out)
}

/// One sweep row for `g`, labelled with `source` and the nominal `δ`.
pub fn sweep_row(g: &ColouredGraph, source: &str, delta: usize, opts: &SolveOptions) -> Result<SweepRow> {
    let n = g.n();
    let b = bound_report(n, delta)?;
    let mixed = max_mixed_tiling(g, opts);
    let single = max_single_colour_tiling(g, opts);
    let mut sizes = [None; 4];
    for (slot, alg) in sizes.iter_mut().zip(Algorithm::ALL) {
        if alg.applies(n, delta) && g.min_degree() >= delta {
            let t = alg.run(g)?;
            t.verify_triangles(g, alg.single_colour())?;
            *slot = Some(t.size());
        }
    }
    Ok(SweepRow {
        source: source.to_string(),
        n,
        delta,
        mixed_optimum: mixed.optimum,
        mixed_proved: mixed.proved_optimal,
        single_optimum: single.optimum,
        single_proved: single.proved_optimal,
        moon_small: sizes[0],
        moon_large: sizes[1],
        bes_small: sizes[2],
        bes_large: sizes[3],
        extremal_min: b.extremal_min,
        moon_bound: b.moon_bound,
        bes_bound: b.bes_bound,
        c1: b.c1,
        c2: b.c2,
        c3: b.c3,
    })
}

pub fn write_sweep_csv<W: Write>(out: &SweepOutput, mut w: W) -> Result<()> {
    {
        let mut cw = csv::Writer::from_writer(&mut w);
        for r in &out.rows {
            cw.serialize(r)?;
        }
        cw.flush()?;
    }
    if out.truncated {
        writeln!(w, "{TRUNCATED_MARKER}")?;
    }
    Ok(())
}

/// Reads a sweep CSV written by [`write_sweep_csv`]. The truncation marker
/// may only appear as the last line.
pub fn read_sweep_csv<R: Read>(input: R) -> Result<SweepOutput> {
    let mut body = String::new();
    let mut truncated = false;
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        if truncated {
            return Err(Error::parse(i + 1, "data after truncation marker"));
        }
        if line.trim_end() == TRUNCATED_MARKER {
            truncated = true;
        } else {
            body.push_str(&line);
            body.push('\n');
        }
    }
    let rows = csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<SweepRow>, _>>()?;
    Ok(SweepOutput { rows, truncated })
}
