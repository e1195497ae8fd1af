//! Searches for the test fixtures: four-line configurations over Q and a
//! cubic surface over F_7 with all 27 lines in the chart.
//!
//! `cargo run --release --example fixture_search -- lines|split|cubic|cubic-real [seed]`

use std::time::Instant;

use a1deg::cancel::CancelToken;
use a1deg::enumerative::{cubic_lines_count, four_lines_algebra, solution_lines, LineIn3Space};
use a1deg::error::Error;
use a1deg::poly::{Monomial, Polynomial, Ring};
use a1deg::scalar::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vec(rng: &mut ChaCha8Rng, bound: i64) -> [i64; 4] {
    [0; 4].map(|_| rng.gen_range(-bound..=bound))
}

fn lines_json(lines: &[LineIn3Space]) -> String {
    let rows: Vec<String> = lines.iter().map(|l| format!("  {}", l.to_json())).collect();
    format!("[\n{}\n]", rows.join(",\n"))
}

fn search_lines(seed: u64, want_split: bool) {
    let f = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0.. {
        let lines: Vec<LineIn3Space> = if want_split {
            // two skew chart lines M1, M2; each L_i joins a point of M1 to a point of M2
            let m1 = ([1, 0, 1, 0], [0, 1, 0, 1]);
            let m2 = ([2, -1, 1, 0], [1, 3, 0, 1]);
            (0..4)
                .map(|_| {
                    let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                    let (c, d) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                    let p: [i64; 4] = std::array::from_fn(|k| a * m1.0[k] + b * m1.1[k]);
                    let q: [i64; 4] = std::array::from_fn(|k| c * m2.0[k] + d * m2.1[k]);
                    LineIn3Space::from_i64(f, p, q)
                })
                .collect::<Result<_, _>>()
                .unwrap_or_default()
        } else {
            (0..4)
                .map(|_| {
                    LineIn3Space::from_i64(f, random_vec(&mut rng, 3), random_vec(&mut rng, 3))
                })
                .collect::<Result<_, _>>()
                .unwrap_or_default()
        };
        if lines.len() != 4 || four_lines_algebra(&lines, &CancelToken::new()).is_err() {
            continue;
        }
        match (solution_lines(&lines), want_split) {
            (Ok(sols), true) => {
                eprintln!(
                    "attempt {attempt}: split, solutions {:?}",
                    sols.iter().map(LineIn3Space::to_json).collect::<Vec<_>>()
                );
                println!("{}", lines_json(&lines));
                return;
            }
            (Err(Error::IrrationalSolution), false) => {
                eprintln!("attempt {attempt}: quotient dim 2, irrational solutions");
                println!("{}", lines_json(&lines));
                return;
            }
            _ => continue,
        }
    }
}

fn search_cubic(seed: u64, field: Field) {
    let ring = Ring::new(field, &["x0", "x1", "x2", "x3"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut monomials = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                monomials.push(Monomial::new(vec![a, b, c, 3 - a - b - c]));
            }
        }
    }
    for attempt in 0.. {
        let f = Polynomial::from_terms(
            &ring,
            monomials
                .iter()
                .map(|m| (m.clone(), field.from_i64(rng.gen_range(-3..=3)))),
        );
        let start = Instant::now();
        match cubic_lines_count(&f) {
            Ok(ss) => {
                eprintln!("attempt {attempt}: {} in {:?}", ss.gw, start.elapsed());
                println!("{f}");
                return;
            }
            Err(e) => eprintln!("attempt {attempt}: {e} ({:?})", start.elapsed()),
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    match args.get(1).map(String::as_str) {
        Some("lines") => search_lines(seed, false),
        Some("split") => search_lines(seed, true),
        Some("cubic") => search_cubic(seed, Field::prime(7).unwrap()),
        Some("cubic-real") => search_cubic(seed, Field::Reals),
        _ => eprintln!("usage: fixture_search lines|split|cubic|cubic-real [seed]"),
    }
}
