//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always show up in `cargo test` output.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pg_cycles::certificate::Certificate;
use pg_cycles::collineations::{map_flag_to_flag, Flag, SigmaStabilizer};
use pg_cycles::geometry::{count_lines, count_points, SpanItem};
use pg_cycles::plane::{anchored_path, plane_cycle, PlaneFrame};
use pg_cycles::space::sigma_anchored_cycle;
use pg_cycles::verifier::{
    brute_force_cycle_count, verify_cycle, verify_path, verify_sigma_properties,
};
use pg_cycles::{GeometryContext, Point, Subspace};
use pgc::{cmd_embed, cmd_sweep};

type Outcome = Result<String, String>;
/// Name, whether it gates the run, and the check.
type Criterion = (&'static str, bool, fn() -> Outcome);

fn pg(n: usize, q: u64) -> GeometryContext {
    GeometryContext::from_order(n, q).expect("valid geometry")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pancyclicity() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (n, q, lengths) in [(3, 2, 13), (3, 3, 38), (4, 2, 29)] {
        let s = cmd_sweep(n, q, 0).map_err(|e| e.to_string())?;
        ensure(s.total == lengths, || {
            format!("PG({n},{q}): {} lengths, expected {lengths}", s.total)
        })?;
        for r in &s.results {
            ensure(r.status == "verified", || {
                format!("PG({n},{q}) k={}: {} {:?}", r.k, r.status, r.detail)
            })?;
        }
        parts.push(format!("PG({n},{q}) {}/{}", s.verified, s.total));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} in {elapsed:.2?}", parts.join(", ")))
}

fn pancyclicity_stretch() -> Outcome {
    let start = Instant::now();
    for (n, q) in [(3, 4), (4, 3)] {
        let s = cmd_sweep(n, q, 0).map_err(|e| e.to_string())?;
        ensure(s.all_verified(), || {
            format!("PG({n},{q}): {}/{} verified", s.verified, s.total)
        })?;
    }
    Ok(format!("PG(3,4) and PG(4,3) in {:.2?}", start.elapsed()))
}

fn plane_base() -> Outcome {
    let mut total = 0;
    for q in 2..=5u64 {
        let g = pg(2, q);
        let max = (q * q + q + 1) as usize;
        for k in 3..=max {
            let c = plane_cycle(&g, k, 0).map_err(|e| format!("q={q} k={k}: {e}"))?;
            let r = verify_cycle(&g, &c);
            ensure(r.valid && c.len() == k, || format!("q={q} k={k}: {r}"))?;
            if k == max {
                let lines: HashSet<&Subspace> = c.edge_lines.iter().collect();
                ensure(
                    lines.len() == max && max as u128 == count_lines(2, q),
                    || format!("q={q}: Hamiltonian cycle uses {} lines", lines.len()),
                )?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} cycles for q = 2..5"))
}

fn anchored_paths() -> Outcome {
    let mut total = 0;
    for q in 2..=5u64 {
        let g = pg(2, q);
        let f = PlaneFrame::standard(&g).map_err(|e| e.to_string())?;
        let inf = f.line_at_infinity();
        for k in 3..=(q * q + 2) as usize {
            let p = anchored_path(&f, k, 0).map_err(|e| format!("q={q} k={k}: {e}"))?;
            let r = verify_path(&g, &p);
            ensure(r.valid && p.len() == k, || format!("q={q} k={k}: {r}"))?;
            let on: Vec<usize> = (0..k)
                .filter(|&i| g.incident(&p.vertices[i], inf))
                .collect();
            ensure(on == vec![0, k - 1], || {
                format!("q={q} k={k}: vertices on ℓ∞ at {on:?}")
            })?;
            ensure(!p.edge_lines.contains(inf), || {
                format!("q={q} k={k}: ℓ∞ is an edge")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} anchored paths for q = 2..5"))
}

fn anchored_cycles() -> Outcome {
    let mut total = 0;
    for (n, q) in [(3, 2u64), (3, 3)] {
        let g = pg(n, q);
        let h = g.canonical_hyperplane();
        for k in 3..=(q.pow(n as u32) + 2) as usize {
            let c = sigma_anchored_cycle(&g, &h, k, 0)
                .map_err(|e| format!("PG({n},{q}) k={k}: {e}"))?;
            let mut r = verify_cycle(&g, &c);
            r.absorb(verify_sigma_properties(&g, &c, &h, (2, 1)));
            ensure(r.valid && c.len() == k, || {
                format!("PG({n},{q}) k={k}: {r}")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} cycles with anchor counts (2,1)"))
}

fn random_hyperplane(g: &GeometryContext, rng: &mut ChaCha8Rng) -> Subspace {
    let points = g.enumerate_points().unwrap();
    let mut chosen: Vec<Point> = Vec::new();
    while chosen.len() < g.n() {
        let p = points.choose(rng).unwrap().clone();
        let mut trial = chosen.clone();
        trial.push(p);
        let items: Vec<SpanItem> = trial.iter().map(SpanItem::from).collect();
        if g.span(&items).unwrap().rank() == trial.len() {
            chosen = trial;
        }
    }
    let items: Vec<SpanItem> = chosen.iter().map(SpanItem::from).collect();
    g.span(&items).unwrap()
}

fn random_flag(g: &GeometryContext, h: &Subspace, rng: &mut ChaCha8Rng) -> Flag {
    let in_h = g.points_on(h);
    let a = in_h.choose(rng).unwrap();
    let b = loop {
        let b = in_h.choose(rng).unwrap();
        if b != a {
            break b;
        }
    };
    let line = g.line_through(a, b).unwrap();
    let on: Vec<Point> = g.points_on(&line);
    let picked: Vec<&Point> = on.choose_multiple(rng, 2).collect();
    Flag::new(line, picked[0].clone(), picked[1].clone())
}

fn flag_alignment() -> Outcome {
    for q in [2u64, 3] {
        let g = pg(3, q);
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        for trial in 0..100 {
            let h = random_hyperplane(&g, &mut rng);
            let (src, dst) = (random_flag(&g, &h, &mut rng), random_flag(&g, &h, &mut rng));
            let tau = map_flag_to_flag(&g, &h, &src, &dst)
                .map_err(|e| format!("PG(3,{q}) #{trial}: {e}"))?;
            let ok = tau.apply(&g, &h).unwrap() == h
                && tau.apply(&g, &src.line).unwrap() == dst.line
                && tau.apply(&g, &src.first).unwrap() == dst.first
                && tau.apply(&g, &src.second).unwrap() == dst.second;
            ensure(ok, || {
                format!("PG(3,{q}) trial {trial}: postcondition violated")
            })?;
        }
    }
    Ok("200 flag pairs, 0 failures".into())
}

/// (Σ, Π, point) configurations in PG(3,q): Σ a line, Π a plane through it,
/// the point in Π \ Σ.
fn orbit_configs(
    g: &GeometryContext,
    sample: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Vec<(Subspace, Subspace, Point)> {
    let points = g.enumerate_points().unwrap();
    if let Some(count) = sample {
        return (0..count)
            .map(|_| {
                let a = points.choose(rng).unwrap();
                let b = loop {
                    let b = points.choose(rng).unwrap();
                    if b != a {
                        break b;
                    }
                };
                let sigma = g.line_through(a, b).unwrap();
                let pi = g
                    .hyperplane_pencil(&sigma)
                    .unwrap()
                    .members
                    .choose(rng)
                    .unwrap()
                    .clone();
                let off: Vec<Point> = g
                    .points_on(&pi)
                    .into_iter()
                    .filter(|p| !g.incident(p, &sigma))
                    .collect();
                (sigma, pi, off.choose(rng).unwrap().clone())
            })
            .collect();
    }
    let mut lines = HashSet::new();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            lines.insert(g.line_through(a, b).unwrap());
        }
    }
    let mut lines: Vec<Subspace> = lines.into_iter().collect();
    lines.sort();
    let mut out = Vec::new();
    for sigma in lines {
        for pi in g.hyperplane_pencil(&sigma).unwrap().members {
            for p in g.points_on(&pi) {
                if !g.incident(&p, &sigma) {
                    out.push((sigma.clone(), pi.clone(), p));
                }
            }
        }
    }
    out
}

fn orbit_bound() -> Outcome {
    let mut summary = Vec::new();
    for q in 2..=5u64 {
        let g = pg(3, q);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + q);
        let configs = orbit_configs(&g, if q <= 3 { None } else { Some(50) }, &mut rng);
        let mut smallest = usize::MAX;
        for (sigma, pi, p) in &configs {
            let group = SigmaStabilizer::new(&g, sigma, pi).map_err(|e| e.to_string())?;
            let orbit = group.orbit(&g, p).map_err(|e| e.to_string())?;
            ensure(
                orbit
                    .iter()
                    .all(|x| g.incident(x, pi) && !g.incident(x, sigma)),
                || format!("q={q}: orbit leaves Π \\ Σ"),
            )?;
            ensure(orbit.len() + 1 >= q as usize, || {
                format!("q={q}: orbit of size {}", orbit.len())
            })?;
            smallest = smallest.min(orbit.len());
        }
        summary.push(format!(
            "q={q}: {} configs, min orbit {smallest}",
            configs.len()
        ));
    }
    Ok(summary.join("; "))
}

fn counting() -> Outcome {
    for n in 2..=4 {
        for q in [2u64, 3] {
            let g = pg(n, q);
            let points = g.enumerate_points().unwrap();
            let mut lines = HashSet::new();
            for (i, a) in points.iter().enumerate() {
                for b in &points[i + 1..] {
                    lines.insert(g.line_through(a, b).unwrap());
                }
            }
            ensure(points.len() as u128 == count_points(n, q), || {
                format!("PG({n},{q}) points")
            })?;
            ensure(lines.len() as u128 == count_lines(n, q), || {
                format!("PG({n},{q}) lines")
            })?;
        }
    }
    Ok("points and lines match enumeration for n = 2..4, q = 2, 3".into())
}

fn brute_force_oracle() -> Outcome {
    let count = brute_force_cycle_count(&pg(2, 2), 3).map_err(|e| e.to_string())?;
    ensure(count == 28, || format!("PG(2,2) k=3 count {count}"))?;
    Ok("PG(2,2), k = 3: 28".into())
}

/// One random corruption of a valid certificate.
fn mutate(g: &GeometryContext, cert: &mut Certificate, rng: &mut ChaCha8Rng) -> &'static str {
    let k = cert.vertices.len();
    match rng.gen_range(0..3) {
        0 => {
            let i = rng.gen_range(0..k);
            let points = g.enumerate_points().unwrap();
            loop {
                let p = points.choose(rng).unwrap().to_ints();
                if p != cert.vertices[i] {
                    cert.vertices[i] = p;
                    return "perturb vertex";
                }
            }
        }
        1 => {
            let j = rng.gen_range(0..k);
            let points = g.enumerate_points().unwrap();
            loop {
                let a = points.choose(rng).unwrap();
                let b = points.choose(rng).unwrap();
                if a == b {
                    continue;
                }
                let line = g.line_through(a, b).unwrap().to_ints();
                if line != cert.edges[j].line {
                    cert.edges[j].line = line;
                    return "swap line";
                }
            }
        }
        _ => {
            let j = rng.gen_range(0..k);
            cert.edges.remove(j);
            "drop edge"
        }
    }
}

fn mutation_fuzzing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut caught = 0;
    let mut total = 0;
    for (n, q) in [(2, 3u64), (3, 2), (3, 3)] {
        let g = pg(n, q);
        let max = count_points(n, q) as usize;
        for _ in 0..100 {
            let k = rng.gen_range(3..=max);
            let mut cert = cmd_embed(n, q, k, 0, false).map_err(|e| e.to_string())?;
            let kind = mutate(&g, &mut cert, &mut rng);
            total += 1;
            match cert.verify() {
                Ok(r) if r.valid => return Err(format!("PG({n},{q}) k={k}: {kind} not detected")),
                _ => caught += 1,
            }
        }
    }
    ensure(caught == total, || format!("{caught}/{total}"))?;
    Ok(format!("{caught}/{total} mutations detected"))
}

fn determinism() -> Outcome {
    for (n, q, k) in [(3, 2, 15), (3, 3, 27), (2, 5, 29), (4, 2, 20)] {
        let a = cmd_embed(n, q, k, 3, false)
            .map_err(|e| e.to_string())?
            .to_json();
        let b = cmd_embed(n, q, k, 3, false)
            .map_err(|e| e.to_string())?
            .to_json();
        ensure(a == b, || format!("PG({n},{q}) k={k}: outputs differ"))?;
    }
    Ok("4 configurations byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "pancyclicity sweeps PG(3,2), PG(3,3), PG(4,2)",
            true,
            pancyclicity,
        ),
        (
            "pancyclicity stretch PG(3,4), PG(4,3)",
            false,
            pancyclicity_stretch,
        ),
        ("plane cycles of every length, q = 2..5", true, plane_base),
        (
            "anchored paths with two ends on the line at infinity",
            true,
            anchored_paths,
        ),
        (
            "hyperplane-anchored cycles with counts (2,1)",
            true,
            anchored_cycles,
        ),
        ("flag alignment inside a hyperplane", true, flag_alignment),
        ("stabilizer orbits of size at least q-1", true, orbit_bound),
        ("point and line counts", true, counting),
        ("brute-force oracle and mutation fuzzing", true, || {
            let a = brute_force_oracle()?;
            let b = mutation_fuzzing()?;
            Ok(format!("{a}; {b}"))
        }),
        ("deterministic certificates", true, determinism),
    ];
    let mut failed = 0;
    for (name, gating, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let tag = match (&outcome, gating) {
            (Ok(_), _) => "PASS",
            (Err(_), true) => "FAIL",
            (Err(_), false) => "FAIL (non-gating)",
        };
        let detail = match &outcome {
            Ok(s) | Err(s) => s,
        };
        println!("{tag} {name}: {detail} [{:.2?}]", start.elapsed());
        if outcome.is_err() && gating {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
