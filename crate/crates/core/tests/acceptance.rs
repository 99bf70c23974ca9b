//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line and then asserts.
//!
//! Run with `cargo test -p cowrithe --test acceptance -- --nocapture --test-threads=1`
//! to see the report.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use common::*;
use cowrithe::moves::bigon_incoherent;
use cowrithe::torus::move_conforms;
use cowrithe::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, failures: &[String], elapsed: Duration, budget: Option<Duration>) {
    let mut failures = failures.to_vec();
    if let Some(b) = budget {
        if elapsed > b {
            failures.push(format!("took {elapsed:?}, budget {b:?}"));
        }
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{status} criterion {id}: {title} ({:.2?})", elapsed);
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

#[test]
fn criterion_1_closed_form_cowrithe() {
    let t = Instant::now();
    let over = [4, 21, 64, 150, 300, 539, 896];
    let under = [3, 16, 50, 120, 245, 448, 756];
    let mut bad = Vec::new();
    for n in 2..=8usize {
        let k = n - 2;
        let xo = cowrithe(&torus_diagram(n + 1, n).unwrap());
        let xu = cowrithe(&torus_diagram(n, n + 1).unwrap());
        let fo = cowrithe_closed_form(n as i64, TorusSide::Over).unwrap();
        let fu = cowrithe_closed_form(n as i64, TorusSide::Under).unwrap();
        if !(xo == over[k] && fo == over[k] && xu == under[k] && fu == under[k]) {
            bad.push(format!(
                "n={n}: diagram ({xo}, {xu}), formula ({fo}, {fu}), table ({}, {})",
                over[k], under[k]
            ));
        }
    }
    report(
        1,
        "cowrithe of D(n+1,n), D(n,n+1) equals the closed forms, n=2..8",
        &bad,
        t.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_2_spot_values() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let x52 = cowrithe(&torus_diagram(5, 2).unwrap());
    let x25 = cowrithe(&torus_diagram(2, 5).unwrap());
    if (x52, x25) != (12, 10) {
        bad.push(format!("x(D(5,2)) = {x52}, x(D(2,5)) = {x25}"));
    }
    // independent evaluation straight from the braid words
    let o = (
        braid_cowrithe(5, &torus_letters(5, 2)),
        braid_cowrithe(2, &torus_letters(2, 5)),
    );
    if o != (12, 10) {
        bad.push(format!("reference computation gave {o:?}"));
    }
    report(
        2,
        "x(D(5,2)) = 12 and x(D(2,5)) = 10",
        &bad,
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_3_writhe() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=8usize {
        let wo = writhe(&torus_diagram(n + 1, n).unwrap());
        let wu = writhe(&torus_diagram(n, n + 1).unwrap());
        let n2 = (n * n) as i64;
        if wo != n2 || wu != n2 - 1 {
            bad.push(format!("n={n}: writhes {wo}, {wu}"));
        }
    }
    report(
        3,
        "w(D(n+1,n)) = n^2 and w(D(n,n+1)) = n^2 - 1, n=2..8",
        &bad,
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_4_deformation() {
    let mut bad = Vec::new();
    let mut n6 = Duration::ZERO;
    for (n, riii) in [(2usize, 1usize), (3, 5), (4, 14), (5, 30), (6, 55)] {
        let t = Instant::now();
        let trace = match deform_sequence(n) {
            Ok(t) => t,
            Err(e) => {
                bad.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let r = match verify_trace(&trace) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("n={n}: verification failed: {e}"));
                continue;
            }
        };
        if n == 6 {
            n6 = t.elapsed();
        }
        if (r.riii_count, r.ri_count, r.rii_count) != (riii, 1, 0) {
            bad.push(format!(
                "n={n}: counts RIII {} RI {} RII {}",
                r.riii_count, r.ri_count, r.rii_count
            ));
        }
        for (i, s) in trace.steps.iter().enumerate() {
            let dx = r.cowrithe_deltas[i];
            if s.mv.kind() == MoveKind::R3 && dx != -1 {
                bad.push(format!("n={n}: RIII step {i} has cowrithe delta {dx}"));
            }
        }
        if !r.all_positive {
            bad.push(format!("n={n}: a negative crossing appeared"));
        }
        if !r.final_matches_target
            || !is_isomorphic(&replay_final(&trace), &torus_diagram(n, n + 1).unwrap())
        {
            bad.push(format!("n={n}: final diagram is not D({n},{})", n + 1));
        }
        let bounds = move_lower_bounds(
            &torus_diagram(n + 1, n).unwrap(),
            &torus_diagram(n, n + 1).unwrap(),
        );
        if (bounds.rii_riii_lower as usize, bounds.ri_lower as usize)
            != (r.riii_count + r.rii_count, r.ri_count)
        {
            bad.push(format!(
                "n={n}: move counts differ from the lower bounds {bounds:?}"
            ));
        }
    }
    report(
        4,
        "deform_sequence(n) verifies with 1,5,14,30,55 RIII + 1 RI, all RIII dx=-1, positive, ends at D(n,n+1)",
        &bad,
        n6,
        Some(Duration::from_secs(10)),
    );
}

fn replay_final(trace: &MoveTrace) -> Diagram {
    let mut d = Diagram::from_pd(&trace.start).unwrap();
    for s in &trace.steps {
        d = apply_move(&d, &s.mv).unwrap();
        assert_eq!(euler(&d), 2);
    }
    d
}

#[test]
fn criterion_5_minimality_at_n2() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let d32 = torus_diagram(3, 2).unwrap();
    let d23 = torus_diagram(2, 3).unwrap();
    let bounds = move_lower_bounds(&d32, &d23);
    if (bounds.ri_lower, bounds.rii_riii_lower) != (1, 1) {
        bad.push(format!("lower bounds {bounds:?}"));
    }
    let limits = SearchLimits {
        max_crossings: 6,
        max_depth: 4,
        ..SearchLimits::default()
    };
    match bfs_min_moves(&d32, &d23, &limits) {
        Ok(r) => match &r.outcome {
            SearchOutcome::Found(trace) => {
                if trace.len() != 2 {
                    bad.push(format!("found length {}", trace.len()));
                }
                if let Err(e) = verify_trace(trace) {
                    bad.push(format!("found trace does not verify: {e}"));
                }
                let pruned = bfs_min_moves(
                    &d32,
                    &d23,
                    &SearchLimits {
                        prune: true,
                        ..limits.clone()
                    },
                )
                .unwrap();
                if pruned.length() != Some(trace.len()) {
                    bad.push(format!("pruned search found {:?}", pruned.length()));
                }
                println!(
                    "    explored {} states, frontier peak {}",
                    r.explored_states, r.frontier_peak
                );
            }
            SearchOutcome::NotFoundWithinLimits => bad.push("not found".into()),
        },
        Err(e) => bad.push(e.to_string()),
    }
    report(
        5,
        "BFS D(3,2) -> D(2,3) within 6 crossings, depth 4 finds length 2 = 1 + 1",
        &bad,
        t.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_6_move_rules() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut bad = Vec::new();
    let mut diagrams = HashMap::new();
    while diagrams.len() < 200 {
        let (p, w) = random_knot_word(&mut rng, 10);
        let d = knot(p, &w);
        diagrams.entry(canonical_form(&d).code).or_insert(d);
    }
    let mut counts = [0usize; 5];
    let mut incoherent_seen = [0usize; 2];
    let mut pool: Vec<_> = diagrams.into_iter().collect();
    pool.sort_by(|a, b| a.0.cmp(&b.0));
    for (code, d) in &pool {
        let (w0, x0) = (writhe(d), cowrithe(d));
        for m in enumerate_moves(d, &MoveKind::ALL) {
            let e = match apply_move(d, &m) {
                Ok(e) => e,
                Err(err) => {
                    bad.push(format!("{code}: {m} failed: {err}"));
                    continue;
                }
            };
            if euler(&e) != 2 {
                bad.push(format!("{code}: {m} broke the Euler count"));
            }
            let (dw, dx) = (writhe(&e) - w0, cowrithe(&e) - x0);
            let v = d.crossing_count();
            let ok = match m {
                Move::R1Create { sign, .. } => dx == 0 && dw == sign.value(),
                Move::R1Delete { face } => dx == 0 && dw == -d.signs()[face.crossing].value(),
                Move::R2Delete { face } => {
                    let par = bigon_edges_parallel(d, &d.face_walk(face));
                    incoherent_seen[par as usize] += 1;
                    dw == 0 && dx == par as i64 && bigon_incoherent(d, face).unwrap() == par
                }
                Move::R2Create { .. } => {
                    // the created bigon is the one whose deletion gives back d
                    let undo = e.faces().into_iter().find(|f| {
                        let mut cs: Vec<_> = f.crossings().collect();
                        cs.sort();
                        f.degree() == 2
                            && cs == [v, v + 1]
                            && apply_move(
                                &e,
                                &Move::R2Delete {
                                    face: f.boundary[0],
                                },
                            )
                            .is_ok_and(|b| b == *d)
                    });
                    match undo {
                        Some(f) => {
                            let par = bigon_edges_parallel(&e, &f.boundary);
                            dw == 0 && dx == -(par as i64)
                        }
                        None => false,
                    }
                }
                Move::R3 { .. } => dw == 0 && dx.abs() == 1 && e.crossing_count() == v,
            };
            counts[m.kind() as usize] += 1;
            if !ok {
                bad.push(format!("{code}: {m} gave dw={dw}, dx={dx}"));
            } else if !move_conforms(d, &m, &e).unwrap() {
                bad.push(format!(
                    "{code}: {m} passes the reference check but not the library's"
                ));
            }
        }
    }
    println!(
        "    {} diagrams; moves R1+ {} R1- {} R2+ {} R2- {} R3 {}; RII deletions coherent {} incoherent {}",
        pool.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4],
        incoherent_seen[0],
        incoherent_seen[1]
    );
    if counts.contains(&0) || incoherent_seen.contains(&0) {
        bad.push("some move class was never exercised".into());
    }
    report(
        6,
        "move deltas on 200 random braid closures: RI dx=0, RII per coherence, RIII dx=+-1",
        &bad,
        t.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_7_per_crossing_contributions() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=6i64 {
        let nu = n as usize;
        let over = torus_diagram(nu + 1, nu).unwrap();
        let under = torus_diagram(nu, nu + 1).unwrap();
        for k in 1..=n {
            let got = interleave_count(&over, (k - 1) as usize).unwrap();
            let want = 2 * k * (n - 1) - 2 * (k - 1) * (k - 1);
            let oracle =
                braid_interleave_count(nu + 1, &torus_letters(nu + 1, nu), (k - 1) as usize);
            if got != want || oracle != want {
                bad.push(format!(
                    "D({},{n}) first b_{k}: {got} (reference {oracle}), expected {want}",
                    n + 1
                ));
            }
        }
        for k in 1..n {
            let got = interleave_count(&under, (k - 1) as usize).unwrap();
            let want = 2 * (k * n - 1) - 2 * (k * k - 1);
            if got != want {
                bad.push(format!(
                    "D({n},{}) first b_{k}: {got}, expected {want}",
                    n + 1
                ));
            }
        }
        for d in [&over, &under] {
            let cd = chord_diagram(d);
            let doubled: i64 = (0..d.crossing_count())
                .map(|c| cd.interleave_count(c).unwrap())
                .sum();
            if doubled != 2 * cd.cowrithe() {
                bad.push(format!(
                    "n={n}: per-crossing sum {doubled} != 2x = {}",
                    2 * cd.cowrithe()
                ));
            }
        }
    }
    report(
        7,
        "first b_k contributes 2k(n-1)-2(k-1)^2 / 2(kn-1)-2(k^2-1); doubled sum is 2x",
        &bad,
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_8_structure() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut bad = Vec::new();
    let mut pool: Vec<Diagram> = Vec::new();
    for (p, q) in [
        (2, 3),
        (3, 2),
        (2, 5),
        (5, 2),
        (3, 4),
        (4, 3),
        (4, 5),
        (5, 4),
        (6, 7),
    ] {
        pool.push(torus_diagram(p, q).unwrap());
    }
    for _ in 0..60 {
        let (p, w) = random_knot_word(&mut rng, 12);
        pool.push(knot(p, &w));
    }
    // Euler after every construction and along every deformation trace
    for d in &pool {
        if euler(d) != 2 || d.euler_characteristic() != 2 {
            bad.push(format!(
                "construction with {} crossings fails V-E+F=2",
                d.crossing_count()
            ));
        }
    }
    for n in 2..=6 {
        replay_final(&deform_sequence(n).unwrap());
    }
    let mut by_code: HashMap<String, (usize, i64, i64)> = HashMap::new();
    for d in &pool {
        let code = canonical_form(d);
        let v = d.crossing_count();
        for trial in 0..100 {
            let mut perm: Vec<usize> = (0..v).collect();
            perm.shuffle(&mut rng);
            let mut e = d.relabel(&perm).unwrap();
            if trial % 2 == 1 {
                e = e.reversed();
            }
            if canonical_form(&e) != code {
                bad.push(format!("relabeling changed the canonical code of {code}"));
                break;
            }
        }
        let key = (v, writhe(d), cowrithe(d));
        if let Some(prev) = by_code.insert(code.code.clone(), key) {
            if prev != key {
                bad.push(format!(
                    "{code} collides across different invariants {prev:?} / {key:?}"
                ));
            }
        }
    }
    report(
        8,
        "Euler formula holds everywhere; 100 relabelings per diagram never change canonical codes",
        &bad,
        t.elapsed(),
        None,
    );
}
