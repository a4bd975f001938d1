//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wzd_core::graphcore::{self, ClassKind, Graph};
use wzd_core::numtheory::{euler_phi, is_prime};
use wzd_core::oracle::{self, Status, VerifyOptions};
use wzd_core::spectra::{self, ExactSpectrum, FloatSpectrum, SpectrumMultiset, WeightedHostGraph};

const NUMERIC_TOL: f64 = 1e-8;
const INTEGRALITY_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

fn composites(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| !is_prime(n)).collect()
}

fn spectrum(entries: &[(u64, usize)]) -> ExactSpectrum {
    ExactSpectrum::from_entries(entries.iter().copied())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn numeric_eigenvalues(g: &Graph) -> Vec<f64> {
    oracle::symmetric_eigenvalues(&oracle::laplacian_matrix(g).to_f64_rows())
        .expect("Jacobi converges")
}

/// Full oracle check of one modulus against an expected spectrum.
fn check_instance(
    n: u64,
    expected: &ExactSpectrum,
    order: usize,
    edges: usize,
) -> Result<(), String> {
    let closed = spectra::wzd_spectrum_closed_form(n).map_err(|e| e.to_string())?;
    ensure(closed == *expected, || {
        format!("n={n}: closed form {closed:?}")
    })?;
    ensure(closed.order() == order, || {
        format!("n={n}: order {}", closed.order())
    })?;
    ensure(closed.trace() == 2 * edges as u128, || {
        format!("n={n}: trace {} != 2*{edges}", closed.trace())
    })?;
    let report =
        oracle::verify_spectrum(n, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.edge_count == edges, || {
        format!("n={n}: explicit edges {}", report.edge_count)
    })?;
    ensure(report.status == Status::Pass, || format!("n={n}: {report}"))?;
    ensure(report.checks.charpoly_match == Some(true), || {
        format!("n={n}: charpoly not checked")
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let partition = graphcore::divisor_classes(18).map_err(|e| e.to_string())?;
    let classes: Vec<(u64, ClassKind, usize)> = partition
        .classes
        .iter()
        .map(|c| (c.divisor, c.kind, c.size))
        .collect();
    ensure(
        classes
            == vec![
                (2, ClassKind::Empty, 6),
                (3, ClassKind::Complete, 2),
                (6, ClassKind::Complete, 2),
                (9, ClassKind::Complete, 1),
            ],
        || format!("classes {classes:?}"),
    )?;
    check_instance(18, &spectrum(&[(0, 1), (5, 5), (11, 5)]), 11, 40)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "classes 2:K̄_6 3:K_2 6:K_2 9:K_1, spectrum {{0:1,5:5,11:5}}, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    check_instance(
        30,
        &spectrum(&[(0, 1), (13, 7), (17, 3), (19, 1), (21, 9)]),
        21,
        175,
    )?;
    Ok("spectrum {0:1,13:7,17:3,19:1,21:9}, order 21, 175 edges".into())
}

fn criterion_3() -> Outcome {
    check_instance(12, &spectrum(&[(0, 1), (5, 1), (7, 5)]), 7, 20)?;
    Ok("spectrum {0:1,5:1,7:5}, order 7, 20 edges".into())
}

fn criterion_4() -> Outcome {
    let ns = [4u64, 8, 9, 16, 25, 27, 36, 72, 100];
    for n in ns {
        let v = n - euler_phi(n).unwrap() - 1;
        let g = graphcore::build_bruteforce_wzd(n).map_err(|e| e.to_string())?;
        ensure(g.order() as u64 == v && g.is_complete(), || {
            format!("n={n}: not K_{v}")
        })?;
        let s = spectra::wzd_spectrum_closed_form(n).map_err(|e| e.to_string())?;
        ensure(s == spectrum(&[(0, 1), (v, v as usize - 1)]), || {
            format!("n={n}: {s:?}")
        })?;
        let numeric = numeric_eigenvalues(&g);
        ensure(
            s.expand()
                .iter()
                .zip(&numeric)
                .all(|(&e, x)| (e as f64 - x).abs() < NUMERIC_TOL * v as f64),
            || format!("n={n}: numeric mismatch"),
        )?;
    }
    let s36 = spectra::wzd_spectrum_closed_form(36).unwrap();
    ensure(s36 == spectrum(&[(0, 1), (23, 22)]), || {
        format!("n=36: {s36:?}")
    })?;
    Ok(format!(
        "{} moduli complete, n=36 -> {{0:1,23:22}}",
        ns.len()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let ns = composites(4, 300);
    let bad: Vec<u64> = ns
        .par_iter()
        .copied()
        .filter(|&n| {
            graphcore::build_bruteforce_wzd(n).unwrap()
                != graphcore::build_structural_wzd(n).unwrap()
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(bad.is_empty(), || {
        format!("constructions differ for {bad:?}")
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} composites identical, {elapsed:.2?}", ns.len()))
}

fn criterion_6() -> Outcome {
    let ns = composites(4, 500);
    let failures: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| {
            let g = graphcore::build_bruteforce_wzd(n).unwrap();
            let numeric = numeric_eigenvalues(&g);
            let (integral, rounded) = oracle::integrality_check(&numeric, INTEGRALITY_TOL).unwrap();
            let closed = spectra::wzd_spectrum_closed_form(n).unwrap();
            let expected: Vec<i64> = closed.expand().into_iter().map(|v| v as i64).collect();
            (!integral || rounded != expected).then(|| format!("n={n}"))
        })
        .collect();
    ensure(failures.is_empty(), || format!("failures: {failures:?}"))?;
    Ok(format!(
        "{} composites integral and equal to the closed form",
        ns.len()
    ))
}

fn random_graph(rng: &mut ChaCha8Rng, k: usize) -> Graph {
    let p: f64 = rng.gen_range(0.0..=1.0);
    let edges: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(None, (0..k as u64).collect(), edges).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let cases = 200;
    let mut worst = 0.0f64;
    for case in 0..cases {
        let k = rng.gen_range(1..=6);
        let host_graph = random_graph(&mut rng, k);
        let components: Vec<Graph> = (0..k)
            .map(|_| {
                let order = rng.gen_range(1..=5);
                random_graph(&mut rng, order)
            })
            .collect();
        let host = WeightedHostGraph::new(
            (0..k as u64).collect(),
            components.iter().map(|c| c.order() as u64).collect(),
            host_graph.edges(),
        )
        .unwrap();
        let component_spectra: Vec<SpectrumMultiset> = components
            .iter()
            .map(|c| SpectrumMultiset::Float(FloatSpectrum::from_values(numeric_eigenvalues(c))))
            .collect();
        let joined =
            spectra::join_spectrum(&host, &component_spectra).map_err(|e| e.to_string())?;
        let assembled = graphcore::generalized_join(&host_graph, &components).unwrap();
        let direct = numeric_eigenvalues(&assembled);
        let claimed = joined.sorted_values();
        ensure(claimed.len() == direct.len(), || {
            format!("case {case}: order mismatch")
        })?;
        let dev = claimed
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        ensure(dev < NUMERIC_TOL, || {
            format!("case {case}: deviation {dev:e}")
        })?;
        worst = worst.max(dev);
    }
    Ok(format!("{cases} random joins, max deviation {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let ns = composites(4, 300);
    let bad: Vec<u64> = ns
        .par_iter()
        .copied()
        .filter(|&n| {
            let zd = graphcore::build_zero_divisor_graph(n).unwrap();
            let wzd = graphcore::build_bruteforce_wzd(n).unwrap();
            !graphcore::is_spanning_subgraph(&zd, &wzd)
        })
        .collect();
    ensure(bad.is_empty(), || format!("not spanning for {bad:?}"))?;
    Ok(format!("{} composites", ns.len()))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let ns = composites(4, 200);
    let bad: Vec<u64> = ns
        .par_iter()
        .copied()
        .filter(|&n| {
            let g = graphcore::build_bruteforce_wzd(n).unwrap();
            let poly =
                oracle::char_poly_exact(&oracle::laplacian_matrix(&g), oracle::DEFAULT_MAX_ORDER)
                    .unwrap();
            let closed = SpectrumMultiset::Exact(spectra::wzd_spectrum_closed_form(n).unwrap());
            !oracle::poly_matches_spectrum(&poly, &closed).unwrap()
        })
        .collect();
    ensure(bad.is_empty(), || {
        format!("polynomial mismatch for {bad:?}")
    })?;
    Ok(format!("{} composites, {:.2?}", ns.len(), start.elapsed()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 n=18 golden case", criterion_1),
        ("2 n=30 (pqr)", criterion_2),
        ("3 n=12 (p^k q)", criterion_3),
        ("4 completeness branch", criterion_4),
        ("5 construction equivalence [4,300]", criterion_5),
        ("6 integrality sweep [4,500]", criterion_6),
        ("7 generic join, 200 random cases", criterion_7),
        ("8 spanning subgraph [4,300]", criterion_8),
        ("9 exact characteristic polynomial [4,200]", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
