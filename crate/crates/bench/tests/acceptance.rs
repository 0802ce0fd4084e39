//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs as a plain binary (`harness = false`).

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kregret::bounds::{ces_upper_bound, muf_lower_bound_scale, muf_upper_bound};
use kregret::datagen::{gen_anticorrelated, gen_circle_lowerbound};
use kregret::partition::{default_inc, find_breakpoints};
use kregret::selector::{compute_t, maxdom, minvar, minvar_with, rf_minvar, MinVarConfig};
use kregret::utility::{
    eval, regret_ratio, sample_muf, FamilyEvaluator, FamilyKind, FamilySpec, UtilityFunction,
};
use kregret::{normalize, scale_dimension, Dataset64};
use kregret_bench::{run_experiment, strip_timing, write_csv, ExperimentConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute slack on theorem-backed inequalities.
const BOUND_EPS: f64 = 1e-12;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const COMPUTERS: [[f64; 2]; 6] = [
    [2.3, 80.0],
    [1.7, 90.0],
    [2.8, 50.0],
    [2.1, 55.0],
    [2.1, 50.0],
    [3.0, 55.0],
];

fn worked_example() -> Outcome {
    let ds = Dataset64::from_rows(&COMPUTERS).unwrap();
    let f3 = UtilityFunction::muf(vec![0.5, 0.5]).unwrap();
    let f4 = UtilityFunction::muf(vec![0.99, 0.01]).unwrap();
    let subset = [0, 2, 4];
    let u = eval(&f3, ds.point(0)).unwrap();
    let r3 = regret_ratio(&ds, &subset, &f3).unwrap();
    let r4 = regret_ratio(&ds, &subset, &f4).unwrap();
    let ok = (u - 13.56).abs() < 5e-3 && r3.abs() < 5e-3 && (r4 - 0.0680).abs() < 5e-3;
    Outcome::new(
        ok,
        format!("f3(p1) = {u:.4}, ratio(f3) = {r3:.4}, ratio(f4) = {r4:.4}"),
    )
}

/// Runs minvar and rf-minvar on 20 seeded anti-correlated datasets for every
/// (d, k) and checks each empirical maximum regret ratio against `bound`.
fn bound_matrix(
    families: &[FamilySpec],
    bound: impl Fn(&FamilySpec, usize, usize) -> f64,
) -> Outcome {
    let mut runs = 0;
    let mut violations = Vec::new();
    let mut tightest = f64::INFINITY;
    for seed in 0..20u64 {
        for d in [2usize, 3, 4] {
            let ds = normalize(&gen_anticorrelated::<f64>(1000, d, seed).unwrap());
            let inc = default_inc(ds.len());
            for spec in families {
                let fam = spec.sample::<f64>(d, 1000 + seed).unwrap();
                let ev = FamilyEvaluator::new(&ds, &fam).unwrap();
                for k in [10usize, 20, 34] {
                    let b = bound(spec, k, d);
                    let sets = [
                        ("minvar", minvar(&ds, k, inc).unwrap()),
                        ("rf-minvar", rf_minvar(&ds, k, inc, 11, seed).unwrap()),
                    ];
                    for (name, set) in sets {
                        let rr = ev.report(set.ids()).unwrap().max_ratio;
                        runs += 1;
                        tightest = tightest.min(b - rr);
                        if rr > b + BOUND_EPS {
                            violations.push(format!(
                                "{name} seed={seed} d={d} k={k} b={:?}: {rr:.5} > {b:.5}",
                                spec.ces_b
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut detail = format!(
        "{}/{runs} runs within bound, smallest slack {tightest:.4}",
        runs - violations.len()
    );
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first violation: {first}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn muf_bound_compliance() -> Outcome {
    bound_matrix(&[FamilySpec::new(FamilyKind::Muf, 10_000)], |_, k, d| {
        muf_upper_bound(k, d).unwrap()
    })
}

fn ces_bound_compliance() -> Outcome {
    let families: Vec<FamilySpec> = [0.1, 0.5, 0.9]
        .iter()
        .map(|&b| FamilySpec::new(FamilyKind::Ces, 10_000).with_b(b))
        .collect();
    bound_matrix(&families, |spec, k, d| {
        ces_upper_bound(k, d, spec.ces_b.unwrap()).unwrap()
    })
}

fn bound_values() -> Outcome {
    let checks: [(&str, f64, f64); 6] = [
        ("muf(3,2)", muf_upper_bound(3, 2).unwrap(), 1.5f64.ln()),
        (
            "muf(20,2)",
            muf_upper_bound(20, 2).unwrap(),
            (20.0f64 / 19.0).ln(),
        ),
        (
            "ces(3,2,0.1)",
            ces_upper_bound(3, 2, 0.1).unwrap(),
            1.0 / 3.0,
        ),
        (
            "ces(3,2,0.9)",
            ces_upper_bound(3, 2, 0.9).unwrap(),
            1.0 / 3.0,
        ),
        ("ces(20,2,0.1)", ces_upper_bound(20, 2, 0.1).unwrap(), 0.05),
        ("ces(20,2,0.9)", ces_upper_bound(20, 2, 0.9).unwrap(), 0.05),
    ];
    let worst = checks
        .iter()
        .map(|(_, got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let bad: Vec<&str> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).abs() > 1e-12)
        .map(|(name, _, _)| *name)
        .collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} values, max deviation {worst:.1e}{}",
            checks.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!(", off: {bad:?}")
            }
        ),
    )
}

fn lower_bound_exhibition() -> Outcome {
    let ds = gen_circle_lowerbound::<f64>(10_000).unwrap();
    let grid = 10_000;
    let fam: Vec<UtilityFunction<f64>> = (0..grid)
        .map(|i| {
            let theta = FRAC_PI_2 * i as f64 / (grid - 1) as f64;
            UtilityFunction::cobb_douglas(1.0, vec![theta.cos(), theta.sin()]).unwrap()
        })
        .collect();
    let ev = FamilyEvaluator::new(&ds, &fam).unwrap();
    let raw = MinVarConfig {
        allow_raw: true,
        ..Default::default()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [4usize, 6, 8, 10] {
        let a = ev
            .report(minvar_with(&ds, k, &raw).unwrap().ids())
            .unwrap()
            .max_ratio;
        let b = ev.report(maxdom(&ds, k).unwrap().ids()).unwrap().max_ratio;
        let best = a.min(b);
        let floor = 0.5 * muf_lower_bound_scale::<f64>(k);
        ok &= best >= floor;
        parts.push(format!("k={k}: {best:.5} >= {floor:.5}"));
    }
    Outcome::new(ok, parts.join(", "))
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    for case in 0..30u64 {
        let n = 6 + (case as usize % 9);
        let d = 2 + (case as usize % 2);
        let k = d + (case as usize / 2) % (5 - d);
        let raw = if case % 2 == 0 {
            gen_anticorrelated::<f64>(n, d, case).unwrap()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(case);
            let coords = (0..n * d).map(|_| rng.random_range(0.01..1.0)).collect();
            Dataset64::from_flat(d, coords).unwrap()
        };
        let ds = normalize(&raw);
        let mut rng = ChaCha8Rng::seed_from_u64(500 + case);
        let fam: Vec<UtilityFunction<f64>> = (0..200).map(|_| sample_muf(d, &mut rng)).collect();
        let ev = FamilyEvaluator::new(&ds, &fam).unwrap();
        let mut optimum = f64::INFINITY;
        combinations(n, k, |ids| {
            optimum = optimum.min(ev.report(ids).unwrap().max_ratio);
        });
        let mv = ev
            .report(minvar(&ds, k, 1).unwrap().ids())
            .unwrap()
            .max_ratio;
        let bound = muf_upper_bound::<f64>(k, d).unwrap();
        if !(optimum <= mv + BOUND_EPS && mv <= bound + BOUND_EPS) {
            failures.push(format!("case {case} (n={n} d={d} k={k}): opt {optimum:.5}, minvar {mv:.5}, bound {bound:.5}"));
        }
    }
    let detail = match failures.first() {
        None => "30/30 instances: optimum <= minvar <= ln(1+1/t)".to_string(),
        Some(f) => format!("{} failures; first: {f}", failures.len()),
    };
    Outcome::new(failures.is_empty(), detail)
}

fn argmax_point(ds: &Dataset64, f: &UtilityFunction<f64>) -> usize {
    (0..ds.len())
        .map(|id| (id, f.log_utility(ds.point(id)).unwrap()))
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
        .0
}

fn scale_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.random_range(5..60);
        let d = rng.random_range(2..6);
        let coords = (0..n * d).map(|_| rng.random_range(0.05..10.0)).collect();
        let ds = Dataset64::from_flat(d, coords).unwrap();
        let f: UtilityFunction<f64> = sample_muf(d, &mut rng);
        let size = rng.random_range(1..=n);
        let ids = rand::seq::index::sample(&mut rng, n, size).into_vec();
        let mut scaled = ds.clone();
        for j in 0..d {
            scaled = scale_dimension(&scaled, j, rng.random_range(0.01..100.0)).unwrap();
        }
        let before = regret_ratio(&ds, &ids, &f).unwrap();
        let after = regret_ratio(&scaled, &ids, &f).unwrap();
        let rel = (before - after).abs() / before.abs().max(1e-3);
        worst = worst.max(rel);
        if argmax_point(&ds, &f) != argmax_point(&scaled, &f) || rel > 1e-9 {
            failures += 1;
        }
    }
    Outcome::new(
        failures == 0,
        format!(
            "{}/1000 triples invariant, worst relative change {worst:.1e}",
            1000 - failures
        ),
    )
}

fn partition_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = Vec::new();
    for call in 0..1000 {
        let n: usize = rng.random_range(1..400);
        let t: usize = rng.random_range(1..30);
        let inc = rng.random_range(1..6);
        let levels: Option<u32> = rng.random_bool(0.3).then(|| rng.random_range(1..6));
        let coords: Vec<f64> = (0..n * 2)
            .map(|_| match levels {
                Some(l) => 1.0 + rng.random_range(0..l) as f64,
                None => rng.random_range(0.01..5.0),
            })
            .collect();
        let ds = normalize(&Dataset64::from_flat(2, coords).unwrap());
        let dim = call % 2;
        let set = find_breakpoints(&ds, t, dim, inc).unwrap();
        let cap = (ds.dim_max()[dim] - 1.0) / t as f64;
        let per = n.div_ceil(t);

        let mut seen = vec![false; n];
        set.order().iter().for_each(|&id| seen[id] = true);
        let mut ok = set.order().len() == n && seen.iter().all(|&s| s) && set.t() == t;
        let mut next = 0;
        for iv in &set.intervals {
            ok &= iv.start == next && iv.end >= iv.start;
            next = iv.end;
            ok &= iv.len() <= per + set.delta_used;
            if !iv.is_empty() {
                let lo = ds.coord(set.order()[iv.start], dim);
                let hi = ds.coord(set.order()[iv.end - 1], dim);
                ok &= hi - lo <= cap;
            }
        }
        ok &= next == n;
        if !ok {
            failures.push(format!("call {call}: n={n} t={t} inc={inc}"));
        }
    }
    let detail = match failures.first() {
        None => {
            "1000/1000 calls: full coverage, width <= cap, count <= ceil(n/t) + delta".to_string()
        }
        Some(f) => format!("{} failures; first: {f}", failures.len()),
    };
    Outcome::new(failures.is_empty(), detail)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn time_minvar(ds: &Dataset64, k: usize) -> f64 {
    let inc = default_inc(ds.len());
    let started = Instant::now();
    let set = minvar(ds, k, inc).unwrap();
    let secs = started.elapsed().as_secs_f64();
    assert_eq!(set.len(), k);
    secs
}

fn performance() -> Outcome {
    let big = normalize(&gen_anticorrelated::<f64>(1_000_000, 3, 1).unwrap());
    let half = normalize(&gen_anticorrelated::<f64>(500_000, 3, 1).unwrap());
    // One untimed warm-up per size, then interleaved trials so that drift in
    // machine load affects both sizes alike.
    time_minvar(&big, 20);
    time_minvar(&half, 20);
    let (mut big_times, mut half_times) = (Vec::new(), Vec::new());
    for _ in 0..5 {
        big_times.push(time_minvar(&big, 20));
        half_times.push(time_minvar(&half, 20));
    }
    let slowest = big_times.iter().cloned().fold(0.0, f64::max);
    let ratio = median(big_times.clone()) / median(half_times.clone());
    Outcome::new(
        slowest <= 10.0 && ratio <= 2.6,
        format!(
            "n=1e6: median {:.3} s (slowest {slowest:.3} s), n=5e5: median {:.3} s, doubling ratio {ratio:.2}",
            median(big_times),
            median(half_times)
        ),
    )
}

fn determinism() -> Outcome {
    let configs = [
        "dataset = anticorrelated\nn = 3000\nd = 3\nalgorithms = minvar, rf-minvar, maxdom, random, minvar-equiwidth, minvar-minwidth\nk = 10..16:2\nnum_functions = 2000\nseed = 11\n",
        "dataset = anticorrelated\nn = 2000\nd = 4\nalgorithms = minvar, rf-minvar, random\nk = 10, 20\nfamily = ces\nnum_functions = 2000\nseed = 5\n",
        "dataset = circle\nm = 2000\nalgorithms = minvar, maxdom\nk = 4..10:2\nfamily = cobb-douglas\nnum_functions = 1000\nseed = 2\n",
    ];
    let render = |text: &str| {
        let cfg = ExperimentConfig::from_text(text).unwrap();
        let rows = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        (rows.len(), strip_timing(&String::from_utf8(buf).unwrap()))
    };
    let mut rows = 0;
    let mut identical = true;
    for text in configs {
        let (n, a) = render(text);
        let (_, b) = render(text);
        rows += n;
        identical &= a == b;
    }
    Outcome::new(
        identical,
        format!(
            "{} configs, {rows} rows, byte-identical without timing columns: {identical}",
            configs.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "worked example",
            limit: Some(Duration::from_secs(1)),
            run: worked_example,
        },
        Criterion {
            id: 2,
            name: "MUF bound compliance",
            limit: Some(Duration::from_secs(60)),
            run: muf_bound_compliance,
        },
        Criterion {
            id: 3,
            name: "CES bound compliance",
            limit: Some(Duration::from_secs(90)),
            run: ces_bound_compliance,
        },
        Criterion {
            id: 4,
            name: "bound values",
            limit: None,
            run: bound_values,
        },
        Criterion {
            id: 5,
            name: "lower-bound exhibition",
            limit: Some(Duration::from_secs(120)),
            run: lower_bound_exhibition,
        },
        Criterion {
            id: 6,
            name: "oracle equivalence",
            limit: Some(Duration::from_secs(60)),
            run: oracle_equivalence,
        },
        Criterion {
            id: 7,
            name: "scale invariance",
            limit: Some(Duration::from_secs(10)),
            run: scale_invariance,
        },
        Criterion {
            id: 8,
            name: "partition invariants",
            limit: None,
            run: partition_invariants,
        },
        Criterion {
            id: 9,
            name: "performance sanity",
            limit: None,
            run: performance,
        },
        Criterion {
            id: 10,
            name: "determinism",
            limit: None,
            run: determinism,
        },
    ];
    // Sanity check on the grid parameter used throughout.
    assert_eq!(compute_t(20, 3).unwrap(), 4);
    assert!((PI * PI / 128.0 - muf_lower_bound_scale::<f64>(1)).abs() < 1e-15);

    let mut failed = 0;
    for c in &criteria {
        let started = Instant::now();
        let outcome = (c.run)();
        let elapsed = started.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let passed = outcome.passed && in_time;
        if !passed {
            failed += 1;
        }
        let limit = c
            .limit
            .map(|l| format!(", limit {} s", l.as_secs()))
            .unwrap_or_default();
        println!(
            "{} [{:>2}] {}: {} ({:.2} s{limit}{})",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            outcome.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time limit" },
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
