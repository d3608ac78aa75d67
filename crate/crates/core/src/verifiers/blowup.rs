//! Sampling and hill-climbing checks on two-coloured `K_7(2)`, whose `2^84`
//! colourings cannot be enumerated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::proof::extract_three_disjoint_k7x2;

use super::enumerate::{with_workers, Scan, Skeleton, Visit};
use super::{timed, Lemma, LemmaReport, Mode};

const SAMPLE_CHUNK: u64 = 4096;
const EDGE_MASK: u128 = (1 << 84) - 1;
/// Biased samples colour each edge red with one of these probabilities.
const BIASES: [f64; 3] = [0.1, 0.25, 0.4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversarialConfig {
    pub restarts: u64,
    /// Moves per restart.
    pub max_steps: u64,
    /// Consecutive non-improving moves allowed before a restart ends.
    pub plateau: u64,
}

impl Default for AdversarialConfig {
    fn default() -> Self {
        AdversarialConfig {
            restarts: 1_000,
            max_steps: 10_000,
            plateau: 50,
        }
    }
}

struct BlowupTable {
    masks: Vec<u128>,
    verts: Vec<u16>,
}

impl BlowupTable {
    fn new() -> Self {
        let sk = Skeleton::k7x2();
        let idx = |u, v| sk.index_of(u, v);
        let mut masks = Vec::new();
        let mut verts = Vec::new();
        for a in 0..14 {
            for b in a + 1..14 {
                for c in b + 1..14 {
                    if let (Some(x), Some(y), Some(z)) = (idx(a, b), idx(a, c), idx(b, c)) {
                        masks.push((1u128 << x) | (1 << y) | (1 << z));
                        verts.push((1u16 << a) | (1 << b) | (1 << c));
                    }
                }
            }
        }
        BlowupTable { masks, verts }
    }

    fn mono(&self, code: u128, out: &mut Vec<u16>) {
        out.clear();
        for (&m, &v) in self.masks.iter().zip(&self.verts) {
            let hit = code & m;
            if hit == 0 || hit == m {
                out.push(v);
            }
        }
    }

    /// `(min(packing, 3), monochromatic triangle count)`.
    fn objective(&self, code: u128, buf: &mut Vec<u16>) -> (usize, usize) {
        self.mono(code, buf);
        (packing_capped(buf, 0, 3), buf.len())
    }
}

/// Largest number of pairwise disjoint sets in `tris` avoiding `used`,
/// capped at `cap`.
fn packing_capped(tris: &[u16], used: u16, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    let mut best = 0;
    for (i, &t) in tris.iter().enumerate() {
        if t & used == 0 {
            best = best.max(1 + packing_capped(&tris[i + 1..], used | t, cap - 1));
            if best == cap {
                break;
            }
        }
    }
    best
}

fn extractor_ok(sk: &Skeleton, code: u128) -> bool {
    let g = sk.graph(code, 2);
    extract_three_disjoint_k7x2(&g).is_ok_and(|ts| {
        ts.iter().all(|t| t.verify(&g).is_ok())
            && (ts[0].vertex_set() | ts[1].vertex_set() | ts[2].vertex_set()).len() == 9
    })
}

fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn report(mode: Mode, scan: Scan, sk: &Skeleton) -> LemmaReport {
    let mut r = LemmaReport::from_scan(Lemma::K7Blowup, sk, scan, 1);
    r.mode = mode;
    r
}

/// `samples` uniform colourings plus `samples / 4` biased ones; each is
/// checked for three disjoint monochromatic triangles and fed to the
/// extractor. Chunk `c` draws from stream `c` of the seed, so the result does
/// not depend on `workers`.
pub fn verify_k7_blowup_random(samples: u64, seed: u64, workers: usize) -> Result<LemmaReport> {
    let table = BlowupTable::new();
    let sk = Skeleton::k7x2();
    let biased = samples / 4;
    let total = samples + biased;
    let chunks = total.div_ceil(SAMPLE_CHUNK);
    let (scans, ms) = timed(|| {
        with_workers(workers, || {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = chunk_rng(seed, c);
                    let mut buf = Vec::with_capacity(280);
                    let mut scan = Scan::default();
                    for i in c * SAMPLE_CHUNK..((c + 1) * SAMPLE_CHUNK).min(total) {
                        let code = if i < samples {
                            rng.gen::<u128>() & EDGE_MASK
                        } else {
                            let p = BIASES[(i % BIASES.len() as u64) as usize];
                            (0..84).fold(0u128, |acc, e| acc | (rng.gen_bool(p) as u128) << e)
                        };
                        table.mono(code, &mut buf);
                        let mut v = Visit::check(packing_capped(&buf, 0, 3) < 3);
                        v.extractor = Some(extractor_ok(&sk, code));
                        scan.record(code, v);
                    }
                    scan
                })
                .collect::<Vec<_>>()
        })
    })?;
    let mut scan = Scan::default();
    for s in scans {
        scan.merge(s);
    }
    let mut r = report(Mode::Randomized, scan, &sk);
    r.counters.insert("uniform_samples".into(), samples);
    r.counters.insert("biased_samples".into(), biased);
    r.elapsed_ms = ms;
    Ok(r)
}

/// Steepest descent over single-edge recolourings, minimising
/// `(min(packing, 3), monochromatic triangles)` from random starts. Every
/// accepted state is checked; the extractor runs on each local minimum.
pub fn verify_k7_blowup_adversarial(cfg: AdversarialConfig, seed: u64, workers: usize) -> Result<LemmaReport> {
    let table = BlowupTable::new();
    let sk = Skeleton::k7x2();
    struct Run {
        scan: Scan,
        floor: usize,
        min_mono: usize,
        steps: u64,
    }
    let (runs, ms) = timed(|| {
        with_workers(workers, || {
            (0..cfg.restarts)
                .into_par_iter()
                .map(|restart| {
                    let mut rng = chunk_rng(seed, restart);
                    let mut buf = Vec::with_capacity(280);
                    let mut code = rng.gen::<u128>() & EDGE_MASK;
                    let mut cur = table.objective(code, &mut buf);
                    let mut scan = Scan::default();
                    let (mut steps, mut flat) = (0, 0);
                    while steps < cfg.max_steps && flat < cfg.plateau {
                        let mut best = (usize::MAX, usize::MAX);
                        let mut choice = 0u128;
                        let mut ties = 0u32;
                        for e in 0..84 {
                            let next = code ^ (1 << e);
                            let obj = table.objective(next, &mut buf);
                            if obj < best {
                                (best, choice, ties) = (obj, next, 1);
                            } else if obj == best {
                                ties += 1;
                                if rng.gen_range(0..ties) == 0 {
                                    choice = next;
                                }
                            }
                        }
                        if best > cur {
                            break;
                        }
                        flat = if best == cur { flat + 1 } else { 0 };
                        (code, cur) = (choice, best);
                        steps += 1;
                        if cur.0 < 3 {
                            scan.record(code, Visit::check(true));
                        }
                    }
                    let mut v = Visit::check(cur.0 < 3);
                    v.extractor = Some(extractor_ok(&sk, code));
                    scan.record(code, v);
                    Run {
                        scan,
                        floor: cur.0,
                        min_mono: cur.1,
                        steps,
                    }
                })
                .collect::<Vec<_>>()
        })
    })?;
    let mut scan = Scan::default();
    let (mut floor, mut min_mono, mut steps) = (usize::MAX, usize::MAX, 0);
    for run in runs {
        floor = floor.min(run.floor);
        min_mono = min_mono.min(run.min_mono);
        steps += run.steps;
        scan.merge(run.scan);
    }
    let mut r = report(Mode::Adversarial, scan, &sk);
    r.counters.insert("restarts".into(), cfg.restarts);
    r.counters.insert("moves".into(), steps);
    r.counters.insert("packing_floor".into(), floor as u64);
    r.counters.insert("min_mono_triangles".into(), min_mono as u64);
    r.elapsed_ms = ms;
    Ok(r)
}

/// Randomized and adversarial reports together.
pub fn verify_k7_blowup(
    samples: u64,
    cfg: AdversarialConfig,
    seed: u64,
    workers: usize,
) -> Result<(LemmaReport, LemmaReport)> {
    Ok((
        verify_k7_blowup_random(samples, seed, workers)?,
        verify_k7_blowup_adversarial(cfg, seed, workers)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::Witness;

    #[test]
    fn table_and_packing() {
        let t = BlowupTable::new();
        assert_eq!(t.masks.len(), 280);
        let mut buf = Vec::new();
        assert_eq!(t.objective(0, &mut buf), (3, 280));
        assert_eq!(packing_capped(&buf, 0, 5), 4);
        let w = Witness::new(&Skeleton::k7x2(), 0);
        assert!(!Lemma::K7Blowup.violated_by(&w.graph.to_graph().unwrap()));
    }

    #[test]
    fn small_campaign_is_clean_and_worker_independent() {
        let a = verify_k7_blowup_random(3000, 9, 1).unwrap();
        let b = verify_k7_blowup_random(3000, 9, 2).unwrap();
        assert_eq!(a.normalized(), b.normalized());
        assert!(a.holds());
        assert_eq!(a.checked, 3750);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["universe_size"], "19342813113834066795298816");
        assert_eq!(serde_json::from_value::<LemmaReport>(v).unwrap(), a);
        let cfg = AdversarialConfig {
            restarts: 8,
            max_steps: 500,
            plateau: 20,
        };
        let adv = verify_k7_blowup_adversarial(cfg, 9, 1).unwrap();
        assert!(adv.holds());
        assert_eq!(adv.counters["packing_floor"], 3);
        assert_eq!(adv.normalized(), verify_k7_blowup_adversarial(cfg, 9, 2).unwrap().normalized());
    }
}
