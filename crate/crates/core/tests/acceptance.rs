//! Acceptance suite: one PASS/FAIL line per criterion, with a time budget
//! each. Exits nonzero if any criterion fails.

mod common;

use std::fmt::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use fis_core::analysis::{
    bounded_accessibility, bounded_emptiness, finiteness_evidence, structural_check, Finiteness,
    SearchBounds,
};
use fis_core::fis::{enumerate_language, recognize, Fis};
use fis_core::grid::{v_compose, Grid};
use fis_core::pcp::{
    build_s, build_s1, corner_transition, s1_witness, solve_pcp, witness_from_solution, PcpInstance,
    PcpSolution, MARKER,
};
use fis_core::tiles::{fis_to_tiles, tiles_to_fis, ts_recognize};

/// What a criterion produced: its verdict, a one-line summary, and a full log
/// that must be identical across runs.
struct Outcome {
    passed: bool,
    summary: String,
    log: String,
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn inst(x: &[&str], y: &[&str]) -> PcpInstance {
    PcpInstance::from_words(x, y).unwrap()
}

fn bounds(r: usize, c: usize) -> SearchBounds {
    SearchBounds::new(r, c).unwrap()
}

fn text(g: &Grid) -> String {
    g.to_text().trim_end().replace('\n', " / ")
}

fn figure_run() -> Outcome {
    let f = f1();
    let w = grid(&["a b b", "c a b", "c c a"]);
    let Some(sc) = recognize(&f, &w).unwrap() else {
        return Outcome {
            passed: false,
            summary: "diagonal grid rejected".into(),
            log: String::new(),
        };
    };
    let drawing = sc.render();
    let lines: Vec<&str> = drawing.lines().collect();
    let passed = sc.check(&f).is_ok()
        && lines[0] == " 1 1 1"
        && lines[1] == "AaBbBbB"
        && lines[2] == " 2 1 1";
    Outcome {
        passed,
        summary: format!("row 1 reads {:?} under {:?}, over {:?}", lines[1], lines[0], lines[2]),
        log: drawing,
    }
}

fn figure_language() -> Outcome {
    let f = f1();
    let engine = enumerate_language(&f, 3, 3).unwrap();
    let oracle = brute_language(&f, 3, 3);
    let expected = vec![
        grid(&["a"]),
        grid(&["a b", "c a"]),
        grid(&["a b b", "c a b", "c c a"]),
    ];
    let replayed = engine
        .iter()
        .all(|w| recognize(&f, w).unwrap().is_some_and(|sc| sc.check(&f).is_ok()));
    let log: String = engine.iter().map(|g| format!("{}\n", text(g))).collect();
    Outcome {
        passed: engine == oracle && engine == expected && replayed,
        summary: format!(
            "engine {} grids, brute force {} grids over {} candidates",
            engine.len(),
            oracle.len(),
            all_grids_upto(&f.alphabet, 3, 3).len()
        ),
        log,
    }
}

const SOLVABLE: [(&[&str], &[&str], usize, usize); 2] =
    [(&["a"], &["a"], 3, 1), (&["ab", "b"], &["a", "bb"], 4, 3)];

fn soundness() -> Outcome {
    let mut passed = true;
    let mut log = String::new();
    let mut shapes = Vec::new();
    for (x, y, rows, cols) in SOLVABLE {
        let p = inst(x, y);
        let sol = solve_pcp(&p, 4).expect("solvable");
        let w = witness_from_solution(&p, &sol).unwrap();
        let s = build_s(&p);
        let accepted = recognize(&s, &w).unwrap().is_some();
        let first = bounded_emptiness(&s, bounds(6, 6)).unwrap();
        let ok = accepted
            && (w.rows(), w.cols()) == (rows, cols)
            && first.as_ref().is_some_and(|f| f.grid == w && f.scenario.check(&s).is_ok());
        passed &= ok;
        shapes.push(format!("{}x{}", w.rows(), w.cols()));
        let _ = writeln!(log, "{x:?}/{y:?} solution {sol} witness {} first {}", text(&w),
            first.map_or("none".into(), |f| text(&f.grid)));
    }
    Outcome {
        passed,
        summary: format!("canonical first witnesses {}", shapes.join(", ")),
        log,
    }
}

const COMPLETENESS: [(&[&str], &[&str]); 5] = [
    (&["a"], &["a"]),
    (&["ab", "b"], &["a", "bb"]),
    (&["a", "b"], &["a", "b"]),
    (&["a", "ab"], &["aa", "b"]),
    (&["ab"], &["ba"]),
];

fn completeness() -> Outcome {
    let mut passed = true;
    let mut log = String::new();
    let mut counts = Vec::new();
    for (x, y) in COMPLETENESS {
        let p = inst(x, y);
        let s = build_s(&p);
        let start = Instant::now();
        let grids = enumerate_language(&s, 6, 6).unwrap();
        let mut failures = 0;
        for w in &grids {
            let sc = recognize(&s, w).unwrap().expect("enumerated grids are accepted");
            let report = structural_check(&p, &sc).unwrap();
            if !report.passed {
                failures += 1;
                let _ = writeln!(log, "FAILED on {}:\n{}", text(w), report.to_text());
            }
            let _ = writeln!(log, "{} k={} east={}", text(w), report.top_indices.len(),
                report.east_border.join(" "));
        }
        let in_budget = start.elapsed() < Duration::from_secs(300);
        passed &= failures == 0 && in_budget;
        counts.push(format!("{}", grids.len()));
    }
    Outcome {
        passed,
        summary: format!("accepted grids per instance {} all pass every check", counts.join("/")),
        log,
    }
}

fn negative_control() -> Outcome {
    let p = inst(&["ab"], &["ba"]);
    let search = bounded_emptiness(&build_s(&p), bounds(6, 8)).unwrap();
    let solver = solve_pcp(&p, 6);
    Outcome {
        passed: search.is_none() && solver.is_none(),
        summary: format!(
            "search up to 6x8: {}, solver up to k=6: {}",
            if search.is_none() { "empty" } else { "found" },
            if solver.is_none() { "none" } else { "found" }
        ),
        log: format!("{:?} {:?}\n", search.map(|w| text(&w.grid)), solver.map(|s| s.to_string())),
    }
}

fn accessibility() -> Outcome {
    let p = inst(&["a"], &["a"]);
    let sol = PcpSolution::new(&p, vec![1]).unwrap();
    let expected = s1_witness(&p, &sol).unwrap();
    let s1 = build_s1(&p);
    let found = bounded_accessibility(&s1, &corner_transition(), bounds(5, 3)).unwrap();
    let corner_used_once = found.as_ref().is_some_and(|w| {
        let last = w.scenario.cells.len() - 1;
        w.scenario.check(&s1).is_ok()
            && w.scenario.cells.iter().enumerate().all(|(k, t)| (*t == corner_transition()) == (k == last))
    });
    let q = inst(&["ab"], &["ba"]);
    let none = bounded_accessibility(&build_s1(&q), &corner_transition(), bounds(6, 9)).unwrap();
    Outcome {
        passed: found.as_ref().is_some_and(|w| w.grid == expected) && corner_used_once && none.is_none(),
        summary: format!(
            "solvable: {}, unsolvable up to 6x9: {}",
            found.as_ref().map_or("none".into(), |w| format!("{}x{}", w.grid.rows(), w.grid.cols())),
            if none.is_none() { "none" } else { "found" }
        ),
        log: format!(
            "{}\n{:?}\n",
            found.map_or("none".into(), |w| w.scenario.render()),
            none.map(|w| text(&w.grid))
        ),
    }
}

fn pumping() -> Outcome {
    let mut passed = true;
    let mut log = String::new();
    for (x, y, _, _) in SOLVABLE {
        let p = inst(x, y);
        let s = build_s(&p);
        let w = bounded_emptiness(&s, bounds(6, 6)).unwrap().expect("solvable").grid;
        let row = Grid::filled(1, w.cols(), letter(MARKER)).unwrap();
        let pumped = v_compose(&w, &row).unwrap();
        let pumped_ok = recognize(&s, &pumped).unwrap().is_some();
        let evidence_ok = matches!(
            finiteness_evidence(&s, bounds(6, 6)).unwrap(),
            Finiteness::Pumped { pumped: ref g, pumped_run: Some(_), .. } if *g == pumped
        );
        let sol = solve_pcp(&p, 4).unwrap();
        let doubled = sol.doubled();
        let w2 = witness_from_solution(&p, &doubled).unwrap();
        let doubled_ok = recognize(&s, &w2).unwrap().is_some();
        passed &= pumped_ok && evidence_ok && doubled_ok;
        let _ = writeln!(log, "{} | {} | {} {pumped_ok} {evidence_ok} {doubled_ok}", text(&w), text(&pumped), text(&w2));
    }
    Outcome {
        passed,
        summary: "pumped and doubled-solution witnesses accepted for both instances".into(),
        log,
    }
}

/// Compares the FIS with its tile system on every grid up to 3×3.
fn fis_matches_tiles(f: &Fis) -> Result<usize, String> {
    let ts = fis_to_tiles(f);
    let compiled = f.compile().map_err(|e| e.to_string())?;
    let grids = all_grids_upto(&f.alphabet, 3, 3);
    let mut accepted = 0;
    for w in &grids {
        let a = compiled.accepts(w).unwrap();
        if a != ts_recognize(&ts, w).unwrap() {
            return Err(format!("disagree on {}", text(w)));
        }
        accepted += a as usize;
    }
    for w in all_grids_upto(&f.alphabet, 2, 2) {
        if ts_recognize(&ts, &w).unwrap() != naive_ts_recognize(&ts, &w) {
            return Err(format!("tile search disagrees with preimage enumeration on {}", text(&w)));
        }
    }
    Ok(accepted)
}

fn equivalence() -> Outcome {
    let mut log = String::new();
    let mut failures = Vec::new();
    let mut systems = vec![("figure".to_string(), f1())];
    systems.extend((0..200).map(|seed| (format!("fis seed {seed}"), random_fis(&mut rng(seed)))));
    let mut fis_checked = 0;
    let mut fis_nonempty = 0;
    for (name, f) in &systems {
        match fis_matches_tiles(f) {
            Ok(n) => {
                fis_checked += 1;
                fis_nonempty += (n > 0) as usize;
                let _ = writeln!(log, "{name}: {n} accepted");
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let mut tiles_checked = 0;
    let mut tiles_nonempty = 0;
    for seed in 0..100u64 {
        let ts = random_tile_system(&mut rng(1000 + seed));
        let f = tiles_to_fis(&ts);
        let compiled = f.compile().unwrap();
        let mut accepted = 0;
        let mut ok = true;
        for w in all_grids_upto(&ts.target, 3, 3) {
            let a = ts_recognize(&ts, &w).unwrap();
            if a != compiled.accepts(&w).unwrap() {
                failures.push(format!("tiles seed {seed}: disagree on {}", text(&w)));
                ok = false;
                break;
            }
            if w.rows() <= 2 && w.cols() <= 2 && a != naive_ts_recognize(&ts, &w) {
                failures.push(format!("tiles seed {seed}: naive disagrees on {}", text(&w)));
                ok = false;
                break;
            }
            accepted += a as usize;
        }
        tiles_checked += ok as usize;
        tiles_nonempty += (accepted > 0) as usize;
        let _ = writeln!(log, "tiles seed {seed}: |delta|={} {accepted} accepted", ts.local.delta.len());
    }
    for e in &failures {
        let _ = writeln!(log, "{e}");
    }
    Outcome {
        passed: failures.is_empty() && fis_checked == systems.len() && tiles_checked == 100,
        summary: format!(
            "{fis_checked}/{} FISs ({fis_nonempty} nonempty) and {tiles_checked}/100 tile systems ({tiles_nonempty} nonempty) agree on all grids up to 3x3{}",
            systems.len(),
            failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
        log,
    }
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, title: "figure parsing", budget: Duration::from_secs(1), run: figure_run },
    Criterion { id: 2, title: "figure language up to 3x3", budget: Duration::from_secs(30), run: figure_language },
    Criterion { id: 3, title: "reduction soundness", budget: Duration::from_secs(60), run: soundness },
    Criterion { id: 4, title: "reduction completeness up to 6x6", budget: Duration::from_secs(5 * 60 * 5), run: completeness },
    Criterion { id: 5, title: "negative control", budget: Duration::from_secs(5 * 60), run: negative_control },
    Criterion { id: 6, title: "corner accessibility", budget: Duration::from_secs(5 * 60), run: accessibility },
    Criterion { id: 7, title: "pumping", budget: Duration::from_secs(5 * 60), run: pumping },
    Criterion { id: 8, title: "FIS and tile system equivalence", budget: Duration::from_secs(10 * 60), run: equivalence },
];

fn main() -> ExitCode {
    let mut all_passed = true;
    let mut logs = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let out = (c.run)();
        let elapsed = start.elapsed();
        let passed = out.passed && elapsed <= c.budget;
        all_passed &= passed;
        println!(
            "criterion {} ({}): {} in {:.2}s (budget {}s): {}",
            c.id,
            c.title,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            out.summary
        );
        logs.push(out.log);
    }

    let start = Instant::now();
    let differing: Vec<u8> = CRITERIA
        .iter()
        .zip(&logs)
        .filter(|(c, log)| (c.run)().log != **log)
        .map(|(c, _)| c.id)
        .collect();
    let passed = differing.is_empty();
    all_passed &= passed;
    println!(
        "criterion 9 (determinism): {} in {:.2}s: {}",
        if passed { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        if passed {
            format!("criteria 1-8 rerun with byte-identical logs ({} bytes)", logs.iter().map(String::len).sum::<usize>())
        } else {
            format!("logs differ for criteria {differing:?}")
        }
    );
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
