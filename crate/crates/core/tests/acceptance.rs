//! Acceptance gate. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process fails if any
//! criterion does.
//!
//! `ADHP_FULL_SWEEP=1` (or `-- --full`) adds the full (5,4) enumeration.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use adhp::oracle::{for_each_instance, EnumerationCap};
use adhp::{
    count_labeled_copies, find_adhp, find_adhp_exhaustive, is_exceptional, random_hypertournament, validate_adp,
    AntidirectedPath, ExceptionalKind, Hypertournament, Outcome, SearchBudget, SearchOutcome,
};
use rayon::prelude::*;

use common::{binomial, check_path, labeled_copy_indices, roles};

// time limits, one per criterion
const LIMIT_PRECEDENCE: Duration = Duration::from_secs(5);
const LIMIT_H4: Duration = Duration::from_secs(1);
const LIMIT_TOURNAMENT_EXCEPTIONS: Duration = Duration::from_secs(10);
const LIMIT_ENUM_3_2: Duration = Duration::from_secs(1);
const LIMIT_ENUM_4_2: Duration = Duration::from_secs(1);
const LIMIT_ENUM_4_3: Duration = Duration::from_secs(30);
const LIMIT_ENUM_5_2: Duration = Duration::from_secs(30);
const LIMIT_SAMPLE_7_2: Duration = Duration::from_secs(120);
const LIMIT_SAMPLES: Duration = Duration::from_secs(300);
const LIMIT_SYMMETRY: Duration = Duration::from_secs(60);
const LIMIT_SCALE: Duration = Duration::from_secs(10);

const SAMPLES: u64 = 10_000;
const SYMMETRY_SAMPLES: u64 = 1_000;
const FULL_5_4: u128 = 7_962_624;

type Verdict = Result<String, String>;

/// Paths collected for the parity check, as (vertex count, start, end)
/// with `true` meaning starting.
#[derive(Default)]
struct Parity(Vec<(usize, bool, bool)>);

impl Parity {
    fn add(&mut self, steps: &[bool]) {
        let (a, b) = roles(steps);
        self.0.push((steps.len() + 1, a, b));
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let t = Instant::now();
    let v = f()?;
    let took = t.elapsed();
    if took > limit {
        return Err(format!("{v}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{v}; {took:.2?}"))
}

fn oracle_has_path(h: &Hypertournament) -> Result<Option<AntidirectedPath>, String> {
    match find_adhp_exhaustive(h, SearchBudget::unlimited()).outcome {
        SearchOutcome::Found(p) => Ok(Some(p)),
        SearchOutcome::NoPathExists => Ok(None),
        SearchOutcome::BudgetExhausted => Err("unlimited search ran out of budget".into()),
    }
}

/// Constructor outcome checked against the independent validator.
fn constructed(h: &Hypertournament) -> Result<Option<Vec<bool>>, String> {
    match find_adhp(h).map_err(|e| e.to_string())? {
        Outcome::Path { path, .. } => check_path(h, &path).map(Some),
        Outcome::Exceptional(_) => Ok(None),
        Outcome::ProofGap(d) => Err(format!("proof gap at {}: {}", d.branch, d.precondition)),
    }
}

fn precedence_identity() -> Verdict {
    let signatures = [(6, 3), (7, 4), (8, 5), (9, 8)];
    let mut pairs = 0u64;
    for seed in 0..100u64 {
        let (n, k) = signatures[seed as usize % signatures.len()];
        let h = random_hypertournament(n, k, seed).map_err(|e| e.to_string())?;
        let expected = binomial(n as u64 - 2, k as u64 - 2);
        for x in h.vertices() {
            for y in h.vertices().filter(|&y| y > x) {
                let xy = h.arcs_preceding(x, y).unwrap().len() as u64;
                let yx = h.arcs_preceding(y, x).unwrap().len() as u64;
                if xy + yx != expected {
                    return Err(format!("seed {seed} ({n},{k}) pair {x},{y}: {xy}+{yx} != {expected}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("100 instances, {pairs} pairs"))
}

fn h4_has_no_path() -> Verdict {
    let r = find_adhp_exhaustive(&ExceptionalKind::H4.canonical(), SearchBudget::unlimited());
    match r.outcome {
        SearchOutcome::NoPathExists => Ok(format!("search exhausted after {} nodes", r.nodes)),
        other => Err(format!("{other:?}")),
    }
}

fn tournament_exceptions() -> Verdict {
    let mut nodes = Vec::new();
    for kind in [ExceptionalKind::T3c, ExceptionalKind::T5c, ExceptionalKind::T7c] {
        let r = find_adhp_exhaustive(&kind.canonical(), SearchBudget::unlimited());
        if r.outcome != SearchOutcome::NoPathExists {
            return Err(format!("{kind}: {:?}", r.outcome));
        }
        nodes.push(format!("{kind} {}", r.nodes));
    }
    Ok(format!("nodes: {}", nodes.join(", ")))
}

/// Every instance of the signature: oracle failures, constructor agreement
/// and constructed paths for the parity check.
struct Sweep {
    failures: BTreeSet<u64>,
    exceptional: BTreeSet<u64>,
    total: u64,
    steps: Vec<Vec<bool>>,
}

/// Index, oracle found no path, exceptional, constructor step directions.
type Visited = (u64, bool, bool, Option<Vec<bool>>);

fn sweep(n: usize, k: usize) -> Result<Sweep, String> {
    let mut instances = Vec::new();
    for_each_instance(n, k, EnumerationCap::Unlimited, |i, h| instances.push((i as u64, h.clone())))
        .map_err(|e| e.to_string())?;
    let results: Vec<Result<Visited, String>> = instances
        .par_iter()
        .map(|(i, h)| {
            let oracle = oracle_has_path(h)?;
            if let Some(p) = &oracle {
                check_path(h, p).map_err(|e| format!("instance {i}: oracle path invalid: {e}"))?;
            }
            let built = constructed(h).map_err(|e| format!("instance {i}: {e}"))?;
            if built.is_some() != oracle.is_some() {
                return Err(format!("instance {i}: constructor and oracle disagree"));
            }
            Ok((*i, oracle.is_none(), is_exceptional(h).is_some(), built))
        })
        .collect();
    let mut s = Sweep { failures: BTreeSet::new(), exceptional: BTreeSet::new(), total: 0, steps: Vec::new() };
    for r in results {
        let (i, fails, exc, built) = r?;
        s.total += 1;
        if fails {
            s.failures.insert(i);
        }
        if exc {
            s.exceptional.insert(i);
        }
        s.steps.extend(built);
    }
    Ok(s)
}

fn enumerate_3_2(parity: &mut Parity) -> Verdict {
    let s = sweep(3, 2)?;
    let copies = labeled_copy_indices(ExceptionalKind::T3c);
    s.steps.iter().for_each(|st| parity.add(st));
    if s.total != 8 || s.failures.len() != 2 || s.failures != s.exceptional || s.failures != copies {
        return Err(format!("total {}, failures {:?}, copies {copies:?}", s.total, s.failures));
    }
    Ok("8 instances, 2 failures, both T3c".into())
}

fn enumerate_4_2(parity: &mut Parity) -> Verdict {
    let s = sweep(4, 2)?;
    s.steps.iter().for_each(|st| parity.add(st));
    if s.total != 64 || !s.failures.is_empty() || s.steps.len() != 64 {
        return Err(format!("total {}, failures {:?}", s.total, s.failures));
    }
    Ok("64 instances, all with validated paths".into())
}

fn enumerate_with_exception(n: usize, k: usize, kind: ExceptionalKind, parity: &mut Parity) -> Verdict {
    let s = sweep(n, k)?;
    s.steps.iter().for_each(|st| parity.add(st));
    let copies = labeled_copy_indices(kind);
    let library_count = count_labeled_copies(kind, false);
    if s.failures != copies || s.failures != s.exceptional || copies.len() as u64 != library_count {
        return Err(format!(
            "failures {} vs scanned copies {} vs library count {library_count}",
            s.failures.len(),
            copies.len()
        ));
    }
    Ok(format!("{} instances, failure set = {} labeled {kind} copies", s.total, copies.len()))
}

fn sample_7_2(parity: &mut Parity) -> Verdict {
    let results: Vec<Result<Option<Vec<bool>>, String>> = (0..SAMPLES)
        .into_par_iter()
        .map(|seed| {
            let h = random_hypertournament(7, 2, seed).map_err(|e| e.to_string())?;
            if is_exceptional(&h).is_some_and(|w| w.kind == ExceptionalKind::T7c) {
                return Ok(None);
            }
            let oracle = oracle_has_path(&h)?.ok_or(format!("seed {seed}: oracle found no path"))?;
            check_path(&h, &oracle).map_err(|e| format!("seed {seed}: {e}"))?;
            constructed(&h)?.ok_or(format!("seed {seed}: constructor reported an exception")).map(Some)
        })
        .collect();
    let mut exceptional = 0;
    for r in results {
        match r? {
            Some(st) => parity.add(&st),
            None => exceptional += 1,
        }
    }
    Ok(format!("{SAMPLES} tournaments, T7c copies: {exceptional}, the rest solved by both methods"))
}

fn sample_signature(n: usize, k: usize, parity: &mut Parity) -> Result<(), String> {
    let results: Vec<Result<Vec<bool>, String>> = (0..SAMPLES)
        .into_par_iter()
        .map(|seed| {
            let h = random_hypertournament(n, k, seed).map_err(|e| e.to_string())?;
            constructed(&h)
                .map_err(|e| format!("({n},{k}) seed {seed}: {e}"))?
                .ok_or(format!("({n},{k}) seed {seed}: reported exceptional"))
        })
        .collect();
    for r in results {
        parity.add(&r?);
    }
    Ok(())
}

fn samples(parity: &mut Parity, full: bool) -> Verdict {
    for (n, k) in [(5, 4), (6, 3), (9, 3), (10, 8)] {
        sample_signature(n, k, parity)?;
    }
    let mut note = format!("{SAMPLES} instances each at (5,4), (6,3), (9,3), (10,8)");
    if full {
        let gaps = std::sync::atomic::AtomicU64::new(0);
        let mut batch = Vec::with_capacity(1 << 16);
        let flush = |batch: &mut Vec<Hypertournament>| {
            let bad = batch.par_iter().filter(|h| !matches!(constructed(h), Ok(Some(_)))).count() as u64;
            gaps.fetch_add(bad, std::sync::atomic::Ordering::Relaxed);
            batch.clear();
        };
        let total = for_each_instance(5, 4, EnumerationCap::Unlimited, |_, h| {
            batch.push(h.clone());
            if batch.len() == batch.capacity() {
                flush(&mut batch);
            }
        })
        .map_err(|e| e.to_string())?;
        flush(&mut batch);
        let bad = gaps.into_inner();
        if total != FULL_5_4 || bad != 0 {
            return Err(format!("full (5,4): {bad} of {total} not solved"));
        }
        note.push_str(&format!(", plus all {total} of (5,4)"));
    }
    Ok(note)
}

fn parity_law(parity: &Parity) -> Verdict {
    let bad = parity.0.iter().filter(|&&(t, a, b)| (a == b) != (t % 2 == 1)).count();
    if bad > 0 || parity.0.is_empty() {
        return Err(format!("{bad} of {} paths break the law", parity.0.len()));
    }
    Ok(format!("{} paths, zero violations", parity.0.len()))
}

fn symmetry() -> Verdict {
    let signatures = [(3, 2), (4, 3), (5, 2), (5, 4), (6, 3), (6, 5), (7, 2), (7, 4), (8, 3), (9, 8)];
    let results: Vec<Result<bool, String>> = (0..SYMMETRY_SAMPLES)
        .into_par_iter()
        .map(|seed| {
            let (n, k) = signatures[seed as usize % signatures.len()];
            let h = random_hypertournament(n, k, seed).map_err(|e| e.to_string())?;
            let r = h.reverse();
            let forward = constructed(&h)?;
            let backward = constructed(&r)?;
            if forward.is_some() != backward.is_some() {
                return Err(format!("({n},{k}) seed {seed}: H and reverse(H) disagree"));
            }
            Ok(forward.is_some())
        })
        .collect();
    let mut solved = 0;
    for r in results {
        solved += u32::from(r?);
    }
    Ok(format!("{SYMMETRY_SAMPLES} instances, {solved} solved both ways, the rest exceptional both ways"))
}

fn scale() -> Verdict {
    let mut notes = Vec::new();
    for (n, k, seed) in [(100, 3, 2024u64), (50, 49, 2024)] {
        let h = random_hypertournament(n, k, seed).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let outcome = find_adhp(&h).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        let Outcome::Path { path, .. } = outcome else {
            return Err(format!("({n},{k}): {outcome:?}"));
        };
        check_path(&h, &path)?;
        validate_adp(&h, path.vertices(), path.arcs()).map_err(|e| e.to_string())?;
        if took > LIMIT_SCALE {
            return Err(format!("({n},{k}) took {took:.2?}"));
        }
        notes.push(format!("({n},{k}) in {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn main() {
    let full = std::env::var("ADHP_FULL_SWEEP").is_ok_and(|v| v == "1") || std::env::args().any(|a| a == "--full");
    let mut parity = Parity::default();
    let mut report: Vec<(&str, Verdict)> = Vec::new();
    let mut run = |name: &'static str, v: Verdict| {
        let line = match &v {
            Ok(note) => format!("PASS  {name}: {note}"),
            Err(why) => format!("FAIL  {name}: {why}"),
        };
        println!("{line}");
        report.push((name, v));
    };

    run("01 precedence identity", timed(LIMIT_PRECEDENCE, precedence_identity));
    run("02 H4 has no path", timed(LIMIT_H4, h4_has_no_path));
    run("03 rotational tournaments have no path", timed(LIMIT_TOURNAMENT_EXCEPTIONS, tournament_exceptions));
    run("04 enumeration (3,2)", timed(LIMIT_ENUM_3_2, || enumerate_3_2(&mut parity)));
    run("05 enumeration (4,2)", timed(LIMIT_ENUM_4_2, || enumerate_4_2(&mut parity)));
    run(
        "06 enumeration (4,3)",
        timed(LIMIT_ENUM_4_3, || enumerate_with_exception(4, 3, ExceptionalKind::H4, &mut parity)),
    );
    run(
        "07 enumeration (5,2)",
        timed(LIMIT_ENUM_5_2, || enumerate_with_exception(5, 2, ExceptionalKind::T5c, &mut parity)),
    );
    run("08 sampling (7,2)", timed(LIMIT_SAMPLE_7_2, || sample_7_2(&mut parity)));
    let limit = if full { Duration::MAX } else { LIMIT_SAMPLES };
    run("09 sampling beyond the exceptions", timed(limit, || samples(&mut parity, full)));
    run("10 parity law", parity_law(&parity));
    run("11 reversal symmetry", timed(LIMIT_SYMMETRY, symmetry));
    run("12 scale", scale());

    let failed = report.iter().filter(|(_, v)| v.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", report.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
