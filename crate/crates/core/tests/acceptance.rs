//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use apaver_core::lattice::{orbit_dimension, windows};
use apaver_core::oracle::{
    check_dimensions, fixed_point_counts, gamma_realizable, verify_partition, verify_retractions, verify_uniqueness,
};
use apaver_core::paving::{cell, filtration_order, triangle_vertices, Stage};
use apaver_core::springer::{dimension_terms, poincare, working_precision, CellCase, Invariants};
use apaver_core::{make_gamma, Budget, Error, PrimeField, Strategy, Vertex};

const GRID: [(u32, u32); 6] = [(0, 0), (1, 1), (1, 2), (2, 2), (0, 2), (1, 3)];
const FIELDS: [u32; 2] = [2, 3];

struct Outcome {
    passed: bool,
    summary: String,
}

fn field(q: u32) -> PrimeField {
    PrimeField::new(q).expect("supported field")
}

/// Brute counts for every realizable grid point, shared by criteria 1 and 8.
struct SpringerSweep {
    verified: Vec<(u32, u32, u32, Vec<(Vertex, u64)>)>,
    vacuous: Vec<(u32, u32, u32)>,
    problems: Vec<String>,
    elapsed: Duration,
}

fn springer_sweep() -> SpringerSweep {
    let start = Instant::now();
    let mut sweep = SpringerSweep {
        verified: vec![],
        vacuous: vec![],
        problems: vec![],
        elapsed: Duration::ZERO,
    };
    for (m, n) in GRID {
        for q in FIELDS {
            let inv = Invariants::new(m, n).unwrap();
            match make_gamma(m, n, field(q), working_precision(4, inv)) {
                Ok(g) => match fixed_point_counts(4, &g, Strategy::Parallel, Budget::from_env()) {
                    Ok(counts) => sweep.verified.push((m, n, q, counts)),
                    Err(e) => sweep.problems.push(format!("(m,n,q)=({m},{n},{q}): {e}")),
                },
                Err(Error::ValuationMismatch { .. }) if !gamma_realizable(m, n, q) => sweep.vacuous.push((m, n, q)),
                Err(e) => sweep.problems.push(format!("(m,n,q)=({m},{n},{q}): γ not built: {e}")),
            }
        }
    }
    sweep.elapsed = start.elapsed();
    sweep
}

fn criterion_1(sweep: &SpringerSweep) -> Outcome {
    let mut problems = sweep.problems.clone();
    let mut cells = 0;
    for (m, n, q, counts) in &sweep.verified {
        let inv = Invariants::new(*m, *n).unwrap();
        let dim = |v: Vertex| dimension_terms(v, inv).1.iter().sum::<i32>() as i64;
        cells += counts.len();
        for (v, count, d) in check_dimensions(counts, *q, dim) {
            problems.push(format!("(m,n,q)=({m},{n},{q}) at {v}: {count} fixed points vs q^{d}"));
        }
    }
    if sweep.elapsed > Duration::from_secs(300) {
        problems.push(format!("sweep took {:?}", sweep.elapsed));
    }
    let vacuous: Vec<String> = sweep.vacuous.iter().map(|(m, n, q)| format!("({m},{n}) over F_{q}")).collect();
    Outcome {
        passed: problems.is_empty(),
        summary: if problems.is_empty() {
            format!(
                "cell-count law exact on {} cells of Δ4 for {} (m,n,q) grid points in {:.1?}; no γ exists for {} (exhaustive residue search), so the law holds vacuously there",
                cells,
                sweep.verified.len(),
                sweep.elapsed,
                vacuous.join(", ")
            )
        } else {
            problems.join("; ")
        },
    }
}

fn criterion_2() -> Outcome {
    let bad: Vec<String> = triangle_vertices(5)
        .into_iter()
        .filter(|&v| cell(v, 0).map(|c| c.windows != windows(v, 0)).unwrap_or(true))
        .map(|v| v.to_string())
        .collect();
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() {
            format!("level-0 cells equal the I-orbit windows at all {} vertices of Δ5", triangle_vertices(5).len())
        } else {
            format!("windows differ at {}", bad.join(", "))
        },
    }
}

fn criterion_3() -> Outcome {
    let mut points = 0u64;
    let mut problems = vec![];
    for q in FIELDS {
        for a in 0..=2 {
            for v in triangle_vertices(4) {
                match verify_uniqueness(v, a, field(q), Budget::from_env()) {
                    Ok(r) if r.passed() => points += (q as u64).pow(orbit_dimension(v, a) as u32),
                    Ok(r) => problems.push(r.to_string()),
                    Err(e) => problems.push(format!("{v} a={a} q={q}: {e}")),
                }
            }
        }
    }
    Outcome {
        passed: problems.is_empty(),
        summary: if problems.is_empty() {
            format!("{points} orbit points over Δ4, a<=2, q in {{2,3}}: counts q^dim, distinct tuples, distinct lattices")
        } else {
            problems.join("; ")
        },
    }
}

/// Criteria 4 and 5 share one sweep over the retractions.
fn criteria_4_and_5() -> (Outcome, Outcome) {
    let mut partition_problems = vec![];
    let mut line_problems = vec![];
    let mut moved = 0u64;
    let mut rings_checked = 0;
    for q in FIELDS {
        for a in 0..=2 {
            match verify_partition(4, a, field(q), Budget::from_env()) {
                Ok(r) if r.passed() => rings_checked += r.checks.len(),
                Ok(r) => partition_problems.push(r.to_string()),
                Err(e) => partition_problems.push(format!("partition a={a} q={q}: {e}")),
            }
            match verify_retractions(4, a, field(q), Budget::from_env()) {
                Ok(r) => {
                    moved += r.checks[0].expected.parse::<u64>().unwrap_or(0);
                    for c in r.failures() {
                        let msg = format!("a={a} q={q} {}: {}", c.name, c.actual);
                        if c.name.starts_with("edge line") {
                            line_problems.push(msg);
                        } else {
                            partition_problems.push(msg);
                        }
                    }
                }
                Err(e) => partition_problems.push(format!("retractions a={a} q={q}: {e}")),
            }
        }
    }
    if moved == 0 {
        line_problems.push("no point moved; the sweep is vacuous".into());
    }
    let c4 = Outcome {
        passed: partition_problems.is_empty(),
        summary: if partition_problems.is_empty() {
            format!(
                "S and T rings <= 4, a<=2, q in {{2,3}}: totals and lattice sets match ({rings_checked} checks); {moved} retractions pass pattern membership"
            )
        } else {
            partition_problems.join("; ")
        },
    };
    let c5 = Outcome {
        passed: line_problems.is_empty(),
        summary: if line_problems.is_empty() {
            format!("{moved} retractions keep t-2s (type 1 sources) or s-2t (type 7 sources)")
        } else {
            line_problems.join("; ")
        },
    };
    (c4, c5)
}

fn criterion_6() -> Outcome {
    let ring: Vec<_> = filtration_order(9, 4).into_iter().filter(|e| e.triangle == 9).collect();
    let stage = |s: Stage| ring.iter().filter(|e| e.stage == s).collect::<Vec<_>>();
    let (one, two, three) = (stage(Stage::I), stage(Stage::II), stage(Stage::III));
    let monotone = |xs: &[&apaver_core::FiltrationEntry]| xs.windows(2).all(|w| w[0].sort_key <= w[1].sort_key);
    let contiguous = ring.iter().map(|e| e.stage).collect::<Vec<_>>().windows(2).all(|w| w[0] <= w[1]);
    let keys_ok = one.iter().all(|e| e.sort_key == orbit_dimension(e.vertex, 0))
        && two.iter().all(|e| e.sort_key == orbit_dimension(e.vertex, 4))
        && three.iter().all(|e| e.sort_key == orbit_dimension(e.vertex, 0));
    let corners: Vec<Vertex> = three.iter().map(|e| e.vertex).collect();
    let corners_ok = [Vertex::new(9, 0), Vertex::new(0, 9), Vertex::new(-9, -9)]
        .iter()
        .all(|c| corners.contains(c));
    let interleaved = two.iter().any(|e| e.vertex.s < 0) && two.iter().any(|e| e.vertex.t < 0) && {
        let sides: Vec<bool> = two.iter().map(|e| e.vertex.s < 0).collect();
        sides.windows(2).any(|w| w[0] != w[1])
    };
    let passed = one.len() == 8
        && two.len() == 16
        && three.len() == 3
        && contiguous
        && keys_ok
        && corners_ok
        && interleaved
        && monotone(&one)
        && monotone(&two)
        && monotone(&three);
    let ranks = |xs: &[&apaver_core::FiltrationEntry]| {
        let r: Vec<usize> = xs.iter().map(|e| e.rank - ring[0].rank + 1).collect();
        format!("{}-{}", r.first().unwrap_or(&0), r.last().unwrap_or(&0))
    };
    Outcome {
        passed,
        summary: format!(
            "ring 9 at a=4: stage (i) {} vertices ranks {}, stage (ii) {} interleaved ranks {}, corners {} ranks {}; dimensions weakly increasing: {}",
            one.len(),
            ranks(&one),
            two.len(),
            ranks(&two),
            three.len(),
            ranks(&three),
            monotone(&one) && monotone(&two) && monotone(&three)
        ),
    }
}

/// Every single-term ±1 mutant of the twelve formulas at `(m,n)=(1,2)`, q=2,
/// with the mutants that leave every count at `Δ_big_n` unchanged.
fn surviving_mutants(big_n: i32) -> apaver_core::Result<(usize, Vec<(CellCase, usize, i32)>)> {
    let inv = Invariants::new(1, 2).unwrap();
    let g = make_gamma(1, 2, field(2), working_precision(big_n, inv))?;
    let counts = fixed_point_counts(big_n, &g, Strategy::Parallel, Budget::from_env())?;
    let exact = |v: Vertex| dimension_terms(v, inv).1.iter().sum::<i32>() as i64;
    if !check_dimensions(&counts, 2, exact).is_empty() {
        return Err(Error::NotApplicable("unperturbed formulas already fail".into()));
    }
    // Arity of each formula, read off a vertex of that case in a large triangle.
    let arity = |case: CellCase| {
        triangle_vertices(8)
            .into_iter()
            .find(|&v| CellCase::of(v, inv.level()) == case)
            .map_or(0, |v| dimension_terms(v, inv).1.len())
    };
    let mut mutants = 0;
    let mut survivors = vec![];
    for case in CellCase::TWELVE {
        for term in 0..arity(case) {
            for delta in [-1, 1] {
                mutants += 1;
                let mutated = |v: Vertex| {
                    let (c, mut terms) = dimension_terms(v, inv);
                    if c == case {
                        terms[term] += delta;
                    }
                    terms.iter().sum::<i32>() as i64
                };
                if check_dimensions(&counts, 2, mutated).is_empty() {
                    survivors.push((case, term, delta));
                }
            }
        }
    }
    Ok((mutants, survivors))
}

fn criterion_7() -> Outcome {
    let (mutants, survivors) = match surviving_mutants(3) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                passed: false,
                summary: e.to_string(),
            }
        }
    };
    if survivors.is_empty() {
        return Outcome {
            passed: true,
            summary: format!("all {mutants} single-term ±1 mutants of the twelve formulas are caught at (m,n)=(1,2), q=2, N=3"),
        };
    }
    let a = Invariants::new(1, 2).unwrap().level();
    let listed: Vec<String> = survivors
        .iter()
        .map(|(c, k, d)| {
            let present = triangle_vertices(3).into_iter().any(|v| CellCase::of(v, a) == *c);
            format!("{c} term {k} {d:+}{}", if present { "" } else { " (case absent from Δ3)" })
        })
        .collect();
    let at_four = match surviving_mutants(4) {
        Ok((_, s)) if s.is_empty() => "all caught at N=4".to_string(),
        Ok((_, s)) => format!("{} still survive at N=4", s.len()),
        Err(e) => format!("N=4 diagnostic failed: {e}"),
    };
    Outcome {
        passed: false,
        summary: format!(
            "{} of {mutants} mutants survive at (m,n)=(1,2), q=2, N=3: {}; {at_four}",
            survivors.len(),
            listed.join(", ")
        ),
    }
}

fn criterion_8(sweep: &SpringerSweep) -> Outcome {
    let mut problems = sweep.problems.clone();
    for (m, n, q, counts) in &sweep.verified {
        let total: u128 = counts.iter().map(|&(_, c)| c as u128).sum();
        let p = poincare(4, Invariants::new(*m, *n).unwrap());
        if p.eval(*q as u64) != total {
            problems.push(format!("(m,n,q)=({m},{n},{q}): P(q)={} vs {total}", p.eval(*q as u64)));
        }
    }
    Outcome {
        passed: problems.is_empty(),
        summary: if problems.is_empty() {
            format!(
                "P_Δ4(q) equals the brute total at all {} realizable grid points ({} vacuous)",
                sweep.verified.len(),
                sweep.vacuous.len()
            )
        } else {
            problems.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let sweep = springer_sweep();
    let (c4, c5) = criteria_4_and_5();
    let outcomes = [
        ("1", criterion_1(&sweep)),
        ("2", criterion_2()),
        ("3", criterion_3()),
        ("4", c4),
        ("5", c5),
        ("6", criterion_6()),
        ("7", criterion_7()),
        ("8", criterion_8(&sweep)),
    ];
    let mut all = true;
    for (id, o) in &outcomes {
        all &= o.passed;
        println!("{} criterion {id}: {}", if o.passed { "PASS" } else { "FAIL" }, o.summary);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
