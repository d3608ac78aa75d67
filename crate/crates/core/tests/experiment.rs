use monotile::constructions::Variant;
use monotile::experiment::{read_sweep_csv, run_sweep, write_sweep_csv, Algorithm, SweepConfig};

fn sweep(variant: Variant, n: usize, deltas: std::ops::Range<usize>) -> SweepConfig {
    SweepConfig {
        variant,
        n,
        deltas: deltas.collect(),
        extra: vec![],
        budget: 50_000_000,
        workers: 1,
    }
}

#[test]
fn ex_triangle_sweep_is_monotone_and_meets_guarantees() {
    let out = run_sweep(&sweep(Variant::ExTriangle, 30, 24..30)).unwrap();
    assert!(!out.truncated);
    assert_eq!(out.rows.len(), 6);
    for w in out.rows.windows(2) {
        assert!(w[0].mixed_optimum <= w[1].mixed_optimum, "{w:?}");
    }
    for row in &out.rows {
        assert!(row.proved());
        assert_eq!(row.mixed_optimum as i64, row.extremal_min, "{row:?}");
        for alg in Algorithm::ALL {
            if let Some(size) = row.algorithm(alg) {
                assert!(size as i64 >= alg.guarantee(row.n, row.delta), "{alg} {row:?}");
                let cap = if alg.single_colour() { row.single_optimum } else { row.mixed_optimum };
                assert!(size <= cap);
            }
        }
    }
    let small: Vec<_> = out.rows.iter().filter_map(|r| r.moon_small).collect();
    assert_eq!(small.len(), 2);
    assert!(small[1] >= 5);

    let mut buf = Vec::new();
    write_sweep_csv(&out, &mut buf).unwrap();
    assert_eq!(read_sweep_csv(buf.as_slice()).unwrap(), out);
}

#[test]
fn sweep_rejects_inadmissible_delta() {
    assert!(run_sweep(&sweep(Variant::ExTriangleAlt, 24, 20..22)).is_err());
}
