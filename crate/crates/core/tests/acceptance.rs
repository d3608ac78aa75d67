//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 12 re-runs
//! every other suite under a different worker count and compares
//! fingerprints.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use monotile::constructions::random::{random_complete, random_min_degree};
use monotile::constructions::{bound_report, build, ConstructionParams, Variant};
use monotile::graph::{Colour, ColouredGraph, Tiling};
use monotile::proof::{bes_large, bes_small, moon_large, moon_small};
use monotile::solvers::{max_mixed_tiling, SolveOptions};
use monotile::verifiers::{
    audit_grid, audit_tightness, compute_ramsey, compute_special_ramsey, verify_bowtie_lemmas, verify_claim_k7,
    verify_fact_k6, verify_k7_blowup_adversarial, verify_k7_blowup_random, verify_lemma_k8, verify_mono_triangle,
    verify_sharpness_k7, with_workers, AdversarialConfig, LemmaReport, Mode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FACT_K6_LIMIT: Duration = Duration::from_secs(1);
const CLAIM_K7_LIMIT: Duration = Duration::from_secs(60);
const LEMMA_K8_LIMIT: Duration = Duration::from_secs(3600);
const LEMMA_K8_WORKERS: usize = 4;
const LEMMA_K8_EXTRACTOR_SAMPLES: u64 = 100_000;
const AUDIT_LIMIT: Duration = Duration::from_secs(600);
const GUARANTEE_GRAPHS: u64 = 100;
const K66_COLOURINGS: u64 = 50;
const BLOWUP_SAMPLES: u64 = 1_000_000;
const BLOWUP_RESTARTS: u64 = 1_000;
const SEED: u64 = 2024;
/// The second worker count used by the determinism criterion.
const ALT_WORKERS: usize = 3;

/// A suite's result reduced to what must not depend on the worker count.
type Fingerprint = String;

struct Outcome {
    fingerprint: Fingerprint,
    detail: String,
}

type Suite = fn(usize) -> Result<Outcome, String>;

fn fingerprint(reports: &[&LemmaReport]) -> Fingerprint {
    reports
        .iter()
        .map(|r| serde_json::to_string(&r.normalized()).expect("report serializes"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed_ms: u64, what: &str) -> Result<(), String> {
    ensure(Duration::from_millis(elapsed_ms) < limit, || {
        format!("{what} took {elapsed_ms} ms, limit {} ms", limit.as_millis())
    })
}

fn exhaustive_clean(r: &LemmaReport, checked: u64, factor: u64) -> Result<(), String> {
    ensure(r.mode == Mode::Exhaustive && r.is_complete(), || format!("{} incomplete", r.lemma))?;
    ensure(r.checked == checked && r.reduction_factor == factor, || {
        format!("{} checked {} x{}", r.lemma, r.checked, r.reduction_factor)
    })?;
    ensure(r.holds(), || format!("{}: {} violations", r.lemma, r.violation_count))
}

// Independent oracles over plain vertex triples.

fn triples(g: &ColouredGraph) -> Vec<([usize; 3], Colour)> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let (Some(x), Some(y), Some(z)) = (g.colour(a, b), g.colour(a, c), g.colour(b, c)) {
                    if x == y && y == z {
                        out.push(([a, b, c], x));
                    }
                }
            }
        }
    }
    out
}

fn check_tiling(g: &ColouredGraph, t: &Tiling, single_colour: bool) -> Result<(), String> {
    let mut used = vec![false; g.n()];
    let mut colours = Vec::new();
    for k in &t.cliques {
        let v = &k.vertices;
        ensure(v.len() == 3, || format!("clique of size {}", v.len()))?;
        let c = g.colour(v[0], v[1]);
        ensure(c.is_some() && c == g.colour(v[0], v[2]) && c == g.colour(v[1], v[2]), || {
            format!("{v:?} is not a monochromatic triangle")
        })?;
        for &x in v {
            ensure(!std::mem::replace(&mut used[x], true), || format!("vertex {x} reused"))?;
        }
        colours.push(c);
    }
    colours.dedup();
    ensure(!single_colour || colours.len() <= 1, || "mixed colours in a single-colour tiling".into())
}

fn is_badly_coloured_k5(g: &ColouredGraph) -> bool {
    g.n() == 5
        && g.is_complete()
        && triples(g).is_empty()
        && (0..5).all(|v| g.colour_neighbours(v, Colour::RED).len() == 2)
}

// Suites, parameterized by worker count.

fn fact_k6(w: usize) -> Result<Outcome, String> {
    let r = verify_fact_k6(w).map_err(|e| e.to_string())?;
    exhaustive_clean(&r, 1 << 15, 1)?;
    within(FACT_K6_LIMIT, r.elapsed_ms, "fact-k6")?;
    let weak = verify_mono_triangle(6, w).map_err(|e| e.to_string())?;
    exhaustive_clean(&weak, 1 << 15, 1)?;
    Ok(Outcome {
        fingerprint: fingerprint(&[&r, &weak]),
        detail: format!("32768 colourings, 0 violations, {} ms", r.elapsed_ms),
    })
}

fn claim_k7(w: usize) -> Result<Outcome, String> {
    let r = verify_claim_k7(w).map_err(|e| e.to_string())?;
    exhaustive_clean(&r, 1 << 21, 1)?;
    if w == 1 {
        within(CLAIM_K7_LIMIT, r.elapsed_ms, "claim-k7")?;
    }
    Ok(Outcome {
        fingerprint: fingerprint(&[&r]),
        detail: format!("2^21 colourings, 0 violations, {} ms on {w} worker(s)", r.elapsed_ms),
    })
}

fn lemma_k8(w: usize) -> Result<Outcome, String> {
    let r = verify_lemma_k8(w, LEMMA_K8_EXTRACTOR_SAMPLES).map_err(|e| e.to_string())?;
    exhaustive_clean(&r, 1 << 27, 2)?;
    within(LEMMA_K8_LIMIT, r.elapsed_ms, "lemma-k8")?;
    ensure(r.extractor_runs >= LEMMA_K8_EXTRACTOR_SAMPLES && r.extractor_failures == 0, || {
        format!("extractor {}/{} failed", r.extractor_failures, r.extractor_runs)
    })?;
    Ok(Outcome {
        fingerprint: fingerprint(&[&r]),
        detail: format!(
            "2^27 colourings (x2), 0 violations, extractor ok on {} samples, {} ms on {w} workers",
            r.extractor_runs, r.elapsed_ms
        ),
    })
}

fn sharpness(w: usize) -> Result<Outcome, String> {
    let r = verify_sharpness_k7(w).map_err(|e| e.to_string())?;
    ensure(r.is_complete() && r.violation_count > 0 && !r.violations.is_empty(), || {
        "no colouring of K7 without two disjoint monochromatic triangles".into()
    })?;
    let back = LemmaReport::from_json(&r.to_json().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    for wit in &back.violations {
        let g = wit.graph.to_graph().map_err(|e| e.to_string())?;
        let tris = triples(&g);
        let disjoint = tris.iter().enumerate().any(|(i, (a, _))| {
            tris[i + 1..].iter().any(|(b, _)| a.iter().all(|x| !b.contains(x)))
        });
        ensure(g.n() == 7 && g.is_complete() && !disjoint, || format!("witness {} is not genuine", wit.code))?;
    }
    Ok(Outcome {
        fingerprint: fingerprint(&[&r]),
        detail: format!("{} violating colourings, {} witnesses re-verified", r.violation_count, back.violations.len()),
    })
}

fn bowties(w: usize) -> Result<Outcome, String> {
    let (a, b) = verify_bowtie_lemmas(w).map_err(|e| e.to_string())?;
    for r in [&a, &b] {
        exhaustive_clean(r, r.checked, 1)?;
        ensure(r.qualifying > 0 && r.extractor_runs == r.qualifying && r.extractor_failures == 0, || {
            format!("{}: extractor {}/{} on {} qualifying", r.lemma, r.extractor_failures, r.extractor_runs, r.qualifying)
        })?;
    }
    Ok(Outcome {
        fingerprint: fingerprint(&[&a, &b]),
        detail: format!(
            "K6: {} of {} qualify, K7: {} of {} qualify; 0 violations, extractors ok",
            a.qualifying, a.checked, b.qualifying, b.checked
        ),
    })
}

fn ramsey(w: usize) -> Result<Outcome, String> {
    let (r, s) = with_workers(w, || (compute_ramsey(3, 2, 8), compute_special_ramsey(3, 2, 8)))
        .map_err(|e| e.to_string())?;
    let (r, s) = (r.map_err(|e| e.to_string())?, s.map_err(|e| e.to_string())?);
    ensure(r.value == Some(6), || format!("R(3,3) computed as {:?}", r.value))?;
    let wit = r.witness.as_ref().ok_or("no witness")?.to_graph().map_err(|e| e.to_string())?;
    ensure(is_badly_coloured_k5(&wit), || "witness is not a badly coloured K5".into())?;
    ensure(s.value == Some(4), || format!("special value {:?}", s.value))?;
    let wit = s.witness.as_ref().ok_or("no special witness")?.to_graph().map_err(|e| e.to_string())?;
    ensure(
        wit.n() == 3
            && wit.colour(0, 1) == Some(Colour::BLUE)
            && wit.colour(0, 2) == Some(Colour::BLUE)
            && wit.colour(1, 2) == Some(Colour::RED),
        || "special witness is not the apex-blue triangle".into(),
    )?;
    ensure(s.scanned.last() == Some(&(4, 64, 8)), || format!("special K4 scan {:?}", s.scanned.last()))?;
    Ok(Outcome {
        fingerprint: serde_json::to_string(&(&r, &s)).expect("serializes"),
        detail: "R = 6 (badly coloured K5 witness), SR = 4 (apex-blue K3 witness)".into(),
    })
}

const PINNED_AUDIT: [usize; 7] = [2, 5, 6, 1, 3, 4, 2];

fn audit(w: usize) -> Result<Outcome, String> {
    let start = Instant::now();
    let opts = SolveOptions {
        workers: w.max(1),
        ..SolveOptions::default()
    };
    let rows = audit_tightness(&audit_grid()[..7], &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (row, &want) in rows.iter().zip(&PINNED_AUDIT) {
        ensure(row.optimum == want && row.proved_optimal && row.passes(), || {
            format!("{} ({}, {}): optimum {} proved {}, want {want}", row.construction, row.n, row.delta, row.optimum, row.proved_optimal)
        })?;
    }
    ensure(elapsed < AUDIT_LIMIT, || format!("audit took {elapsed:?}"))?;
    let fp: Vec<_> = rows.iter().map(|r| (r.optimum, r.proved_optimal)).collect();
    Ok(Outcome {
        fingerprint: format!("{fp:?}"),
        detail: format!("7 instances exact and proved, {:.1} s", elapsed.as_secs_f64()),
    })
}

/// Random host for the guarantee suite with minimum degree in
/// `lo(n)..=hi(n)`, retried on fresh streams until the degree lands there.
fn host(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> Result<ColouredGraph, String> {
    for _ in 0..50 {
        let delta = rng.gen_range(lo..=hi);
        let g = random_min_degree(n, delta, 2, rng).map_err(|e| e.to_string())?;
        if (lo..=hi).contains(&g.min_degree()) {
            return Ok(g);
        }
    }
    Err(format!("no host with n={n}, {lo} <= delta <= {hi}"))
}

struct Regime {
    name: &'static str,
    single_colour: bool,
    run: fn(&ColouredGraph) -> monotile::Result<Tiling>,
    orders: std::ops::RangeInclusive<usize>,
    /// Admissible minimum degrees for `n`, as `(lo, hi)`.
    window: fn(usize) -> (usize, usize),
    bound: fn(i64, i64) -> i64,
}

const REGIMES: [Regime; 4] = [
    Regime {
        name: "moon-large",
        single_colour: false,
        run: moon_large,
        orders: 16..=48,
        window: |n| ((7 * n).div_ceil(8), n - 1),
        bound: |n, d| (2 * d - n).div_euclid(3),
    },
    Regime {
        name: "moon-small",
        single_colour: false,
        run: moon_small,
        orders: 10..=60,
        window: |n| ((4 * n).div_ceil(5), 5 * n / 6),
        bound: |n, d| 5 * d - 4 * n,
    },
    Regime {
        name: "bes-small",
        single_colour: true,
        run: bes_small,
        orders: 10..=60,
        window: |n| ((4 * n).div_ceil(5), 5 * n / 6),
        bound: |n, d| -(4 * n - 5 * d).div_euclid(2),
    },
    Regime {
        name: "bes-large",
        single_colour: true,
        run: bes_large,
        orders: 66..=132,
        window: |n| ((65 * n).div_ceil(66), n - 1),
        bound: |_, d| (d + 1).div_euclid(5),
    },
];

fn guarantees(w: usize) -> Result<Outcome, String> {
    let mut fp = Vec::new();
    let mut detail = Vec::new();
    for (i, reg) in REGIMES.iter().enumerate() {
        let sizes = with_workers(w, || {
            (0..GUARANTEE_GRAPHS)
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
                    rng.set_stream((i as u64) << 32 | k);
                    let (n, lo, hi) = loop {
                        let n = rng.gen_range(reg.orders.clone());
                        let (lo, hi) = (reg.window)(n);
                        if lo <= hi {
                            break (n, lo, hi);
                        }
                    };
                    let g = host(&mut rng, n, lo, hi)?;
                    let t = (reg.run)(&g).map_err(|e| format!("{} on n={n}: {e}", reg.name))?;
                    check_tiling(&g, &t, reg.single_colour)?;
                    let want = (reg.bound)(n as i64, g.min_degree() as i64);
                    ensure(t.size() as i64 >= want, || {
                        format!("{} on n={n}, delta={}: {} < {want}", reg.name, g.min_degree(), t.size())
                    })?;
                    Ok(t.size())
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .map_err(|e| e.to_string())??;
        detail.push(format!("{} {}/{}", reg.name, sizes.len(), GUARANTEE_GRAPHS));
        fp.push(sizes);
    }
    Ok(Outcome {
        fingerprint: format!("{fp:?}"),
        detail: format!("{}; all re-verified, 0 anomalies", detail.join(", ")),
    })
}

fn k66(w: usize) -> Result<Outcome, String> {
    let sizes = with_workers(w, || {
        (0..K66_COLOURINGS)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(SEED + s);
                let g = random_complete(66, 2, &mut rng).map_err(|e| e.to_string())?;
                let t = bes_large(&g).map_err(|e| format!("seed {s}: {e}"))?;
                check_tiling(&g, &t, true)?;
                ensure(t.size() >= 13, || format!("seed {s}: {} triangles", t.size()))?;
                Ok(t.size())
            })
            .collect::<Result<Vec<_>, String>>()
    })
    .map_err(|e| e.to_string())??;
    Ok(Outcome {
        fingerprint: format!("{sizes:?}"),
        detail: format!(
            "{} colourings, min {} same-colour triangles",
            sizes.len(),
            sizes.iter().min().copied().unwrap_or(0)
        ),
    })
}

fn blowup(w: usize) -> Result<Outcome, String> {
    let rnd = verify_k7_blowup_random(BLOWUP_SAMPLES, SEED, w).map_err(|e| e.to_string())?;
    let cfg = AdversarialConfig {
        restarts: BLOWUP_RESTARTS,
        ..AdversarialConfig::default()
    };
    let adv = verify_k7_blowup_adversarial(cfg, SEED, w).map_err(|e| e.to_string())?;
    for r in [&rnd, &adv] {
        ensure(r.holds(), || {
            format!("{:?}: {} violations, {} extractor failures", r.mode, r.violation_count, r.extractor_failures)
        })?;
    }
    ensure(rnd.counters["uniform_samples"] >= BLOWUP_SAMPLES && rnd.extractor_runs == rnd.checked, || {
        "extractor skipped samples".into()
    })?;
    ensure(adv.counters["restarts"] == BLOWUP_RESTARTS && adv.counters["packing_floor"] >= 3, || {
        format!("adversarial floor {}", adv.counters["packing_floor"])
    })?;
    Ok(Outcome {
        fingerprint: fingerprint(&[&rnd, &adv]),
        detail: format!(
            "{} samples ({} biased) and {} restarts ({} moves): 0 violations, floor {}, extractor ok",
            rnd.checked, rnd.counters["biased_samples"], BLOWUP_RESTARTS, adv.counters["moves"], adv.counters["packing_floor"]
        ),
    })
}

/// Closed band `5n/6 <= δ <= 7n/8`: the open band is empty at `n = 24`.
const BAND: [(usize, usize, i64); 7] = [(24, 20, 4), (24, 21, 6), (36, 30, 6), (36, 31, 8), (48, 40, 8), (48, 41, 10), (48, 42, 12)];

fn medium_band(w: usize) -> Result<Outcome, String> {
    let opts = SolveOptions {
        workers: w.max(1),
        ..SolveOptions::default()
    };
    let mut fp = Vec::new();
    for &(n, d, want) in &BAND {
        let (ni, di) = (n as i64, d as i64);
        let eq1 = (5 * di - 4 * ni).min((4 * di - 3 * ni).div_euclid(2)).min((2 * di - ni).div_euclid(3));
        ensure(eq1 == want, || format!("formula at ({n}, {d}) is {eq1}, pinned {want}"))?;
        let report = bound_report(n, d).map_err(|e| e.to_string())?;
        ensure(report.extremal_min == want, || format!("bound_report at ({n}, {d}): {}", report.extremal_min))?;
        let c = build(&ConstructionParams {
            variant: Variant::ExTriangle,
            n,
            delta: d,
            extra: vec![],
        })
        .map_err(|e| e.to_string())?;
        let res = max_mixed_tiling(&c.graph, &opts);
        check_tiling(&c.graph, &res.tiling, false)?;
        ensure(res.proved_optimal && res.optimum as i64 == want, || {
            format!("ex-triangle({n}, {d}): optimum {} proved {}, want {want}", res.optimum, res.proved_optimal)
        })?;
        fp.push((res.optimum, res.proved_optimal));
    }
    Ok(Outcome {
        fingerprint: format!("{fp:?}"),
        detail: "7 instances on n in {24, 36, 48} equal the piecewise minimum".into(),
    })
}

struct Criterion {
    id: usize,
    name: &'static str,
    suite: Suite,
    /// Worker count of the reference run.
    workers: usize,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "fact-k6 exhaustive", suite: fact_k6, workers: 1 },
    Criterion { id: 2, name: "claim-k7 exhaustive", suite: claim_k7, workers: 1 },
    Criterion { id: 3, name: "lemma-k8 exhaustive", suite: lemma_k8, workers: LEMMA_K8_WORKERS },
    Criterion { id: 4, name: "K7 sharpness witness", suite: sharpness, workers: 1 },
    Criterion { id: 5, name: "bowtie lemmas exhaustive", suite: bowties, workers: 1 },
    Criterion { id: 6, name: "Ramsey and special Ramsey numbers", suite: ramsey, workers: 1 },
    Criterion { id: 7, name: "tightness audit", suite: audit, workers: 1 },
    Criterion { id: 8, name: "algorithm guarantees", suite: guarantees, workers: 1 },
    Criterion { id: 9, name: "bes-large on K66", suite: k66, workers: 1 },
    Criterion { id: 10, name: "K7(2) campaign", suite: blowup, workers: 1 },
    Criterion { id: 11, name: "medium-band mixed optima", suite: medium_band, workers: 1 },
];

fn run(suite: Suite, workers: usize) -> Result<Outcome, String> {
    catch_unwind(AssertUnwindSafe(|| suite(workers))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn report(id: usize, name: &str, res: &Result<String, String>, elapsed: Duration) -> bool {
    let (tag, text) = match res {
        Ok(d) => ("PASS", d),
        Err(e) => ("FAIL", e),
    };
    println!("criterion {id:>2} {tag} {name}: {text} [{:.1} s]", elapsed.as_secs_f64());
    res.is_ok()
}

fn main() -> ExitCode {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |id: usize| filter.is_empty() || filter.contains(&id);
    let mut all = true;
    let mut reference = Vec::new();
    for c in CRITERIA.iter().filter(|c| wanted(c.id)) {
        let start = Instant::now();
        let res = run(c.suite, c.workers);
        let shown = res.as_ref().map(|o| o.detail.clone()).map_err(Clone::clone);
        all &= report(c.id, c.name, &shown, start.elapsed());
        reference.push((c, res.ok().map(|o| o.fingerprint)));
    }
    if wanted(12) {
        let start = Instant::now();
        let mut failures = Vec::new();
        for (c, fp) in &reference {
            let alt = if c.workers == ALT_WORKERS { 1 } else { ALT_WORKERS };
            match (fp, run(c.suite, alt)) {
                (None, _) => failures.push(format!("{} has no reference run", c.id)),
                (Some(_), Err(e)) => failures.push(format!("{} with {alt} workers: {e}", c.id)),
                (Some(a), Ok(b)) if *a != b.fingerprint => failures.push(format!("{} differs with {alt} workers", c.id)),
                _ => {}
            }
        }
        let res = if failures.is_empty() {
            Ok(format!("{} suites identical across worker counts", reference.len()))
        } else {
            Err(failures.join("; "))
        };
        all &= report(12, "determinism", &res, start.elapsed());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
