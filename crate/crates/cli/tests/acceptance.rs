//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use asso_core::cambrian::{
    fiber, fiber_bounds, kappa, kappa_bar, spine_preposet, OrderedPartition, Permutation,
};
use asso_core::geometry::{facet_halfspace, fh_statistics, vertex_point};
use asso_core::minkowski::{
    facet_support_mismatches, minkowski_report, mobius_y, closed_form_y, support_values, WeightReading,
};
use asso_core::polygon::{above_set, below_set, flip};
use asso_core::spine::spine_of;
use asso_core::verify::{
    check_barycenter, check_flip_edges, check_homomorphisms, check_meet_join, check_orbits, check_orientation,
    check_singleton_conditions, check_statistics, check_structure, check_surjection, face_formula_report,
};
use asso_core::{Diagonal, LabelSet, Signature};

type Verdict = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn dg(a: usize, b: usize) -> Diagonal {
    Diagonal::new(a, b).unwrap()
}

fn set(labels: &[usize]) -> LabelSet {
    labels.iter().copied().collect()
}

/// Runs `check` on every signature with `n` in `lo..=hi`, stopping at the first failure.
fn sweep(lo: usize, hi: usize, check: impl Fn(&Signature) -> Verdict) -> Result<usize, String> {
    let mut count = 0;
    for n in lo..=hi {
        for s in Signature::all(n) {
            check(&s).map_err(|e| format!("{}: {e}", s.word()))?;
            count += 1;
        }
    }
    Ok(count)
}

fn worked_example() -> Verdict {
    let s: Signature = "duududud".parse().unwrap();
    let sigma: Permutation = "4,6,2,1,7,5,8,3".parse().unwrap();
    let t = kappa(&s, &sigma);
    let x = vertex_point(&s, &t).coords;
    ensure(x == [7, 8, -6, 1, 7, 10, 8, 1], || format!("x(T) = {x:?}"))?;
    let sp = spine_of(&s, t.as_dissection());
    let arc = sp
        .arcs()
        .iter()
        .find(|a| {
            let mut ends = [sp.nodes()[a.from].labels.min(), sp.nodes()[a.to].labels.min()];
            ends.sort();
            ends == [Some(3), Some(6)]
        })
        .ok_or("no 3-6 arc")?;
    let (t2, _) = flip(&s, &t, arc.diagonal).map_err(|e| e.to_string())?;
    let y = vertex_point(&s, &t2).coords;
    ensure(y == [7, 8, 0, 1, 7, 4, 8, 1], || format!("flipped x = {y:?}"))?;
    let h = facet_halfspace(&s, dg(2, 8)).unwrap();
    ensure(h.support == set(&[1, 2, 4, 6]) && h.rhs == 10, || format!("facet (2,8): {h}"))?;
    let h = facet_halfspace(&s, dg(3, 9)).unwrap();
    ensure(h.rhs == 21, || format!("facet (3,9): {h}"))?;
    ensure(h.is_tight(&x) && h.is_tight(&y), || "(3,9) not tight on both vertices".into())?;
    let f = fiber(&s, &t);
    let (lo, hi) = fiber_bounds(&s, &t);
    ensure(f.len() == 35, || format!("fiber size {}", f.len()))?;
    ensure(lo == "3,4,2,1,7,6,8,5".parse().unwrap(), || format!("fiber min {lo:?}"))?;
    ensure(hi == "7,8,3,2,5,4,6,1".parse().unwrap(), || format!("fiber max {hi:?}"))?;
    ensure(above_set(&s, dg(2, 7)) == set(&[3, 5]), || "Abo(2,7)".into())?;
    ensure(below_set(&s, dg(2, 8)) == set(&[1, 2, 4, 6]), || "Bel(2,8)".into())?;
    Ok("decagon vertex, flip, facets, fiber and side sets".into())
}

fn structural() -> Verdict {
    let count = sweep(0, 6, |s| {
        check_structure(s)?;
        check_flip_edges(s)
    })?;
    Ok(format!("{count} signatures, n <= 6"))
}

fn lattice() -> Verdict {
    let count = sweep(0, 4, |s| {
        check_orientation(s)?;
        check_meet_join(s)
    })?;
    sweep(0, 3, check_homomorphisms)?;
    let mut pairs = 0;
    let mut mismatched = 0;
    let mut witness = None;
    for n in 0..=4 {
        for s in Signature::all(n) {
            let r = face_formula_report(&s);
            pairs += r.pairs;
            mismatched += (r.meet_mismatches + r.join_mismatches > 0) as usize;
            if witness.is_none() {
                if let Some((a, b, formula, lattice)) = r.witness {
                    witness = Some(format!("{}: {a} ^ {b} gives {formula}, lattice meet {lattice}", s.word()));
                }
            }
        }
    }
    let base = format!("orientation, extremes, lattice oracle and homomorphisms hold on {count} signatures");
    match witness {
        None => Ok(format!("{base}; common-diagonal formula exact on {pairs} pairs")),
        Some(w) => Err(format!(
            "{base}; common-diagonal meet/join formula disagrees with the closure oracle on {mismatched} signatures ({w})"
        )),
    }
}

fn cambrian() -> Verdict {
    let count = sweep(0, 4, |s| {
        check_surjection(s)?;
        check_singleton_conditions(s)
    })?;
    let s: Signature = "duududud".parse().unwrap();
    let rho = OrderedPartition::parse(8, "{3,4,6,8}|{1,2,5,7}").unwrap();
    let ext: Vec<String> = spine_preposet(&spine_of(&s, &kappa_bar(&s, &rho)))
        .linear_extensions()
        .iter()
        .map(|r| r.to_string())
        .collect();
    let mut expected = vec![
        "{1,2,3,4,5,6,7,8}",
        "{3,4,5,6,7,8}|{1,2}",
        "{1,2,3,4,6,8}|{5,7}",
        "{3,4,6,8}|{1,2,5,7}",
        "{3,4,6,8}|{1,2}|{5,7}",
        "{3,4,6,8}|{5,7}|{1,2}",
    ];
    expected.sort();
    let mut got = ext.clone();
    got.sort();
    ensure(got == expected, || format!("extensions {ext:?}"))?;
    Ok(format!("{count} signatures; 6 extensions of the example cone"))
}

fn invariance() -> Verdict {
    let count = sweep(0, 6, |s| {
        check_barycenter(s)?;
        check_statistics(s)
    })?;
    sweep(0, 4, check_orbits)?;
    let h = fh_statistics(&Signature::loday(3)).h;
    ensure(h == [1, 6, 6, 1], || format!("h at n = 3: {h:?}"))?;
    Ok(format!("{count} signatures, orbit identity n <= 4"))
}

fn minkowski() -> Verdict {
    sweep(0, 5, |s| {
        let z = support_values(s);
        ensure(mobius_y(&z).zeta() == z, || "round trip".into())?;
        Ok(String::new())
    })?;
    sweep(0, 6, |s| {
        let bad = facet_support_mismatches(s, &support_values(s));
        ensure(bad.is_empty(), || format!("z(Bel) at {bad:?}"))?;
        Ok(String::new())
    })?;
    for n in 0..=5 {
        let s = Signature::loday(n);
        let y = mobius_y(&support_values(&s));
        for (i, v) in y.entries() {
            let interval = i.len() == i.max().unwrap() + 1 - i.min().unwrap();
            ensure(v == interval as i64, || format!("Loday n = {n}: y{i} = {v}"))?;
            let p = closed_form_y(&s, i, WeightReading::Above);
            ensure(p == v, || format!("Loday n = {n}: closed form y{i} = {p}, Möbius {v}"))?;
        }
    }
    let witness: Signature = "ud".parse().unwrap();
    let r = minkowski_report(&witness);
    let flagged = r
        .closed_form_y_divergences
        .iter()
        .find(|d| d.set == set(&[1]))
        .ok_or("witness divergence not reported")?;
    ensure(flagged.formula == 3 && flagged.geometric == 1, || format!("{flagged:?}"))?;
    Ok(format!(
        "round trip n <= 5, facet supports n <= 6, Loday gate n <= 5, witness ud flagged (y{{1}}: closed form {}, Möbius {})",
        flagged.formula, flagged.geometric
    ))
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_asso");
    let cases: &[&[&str]] = &[
        &["vertices", "-s", "duududud"],
        &["facets", "-s", "duududud"],
        &["flipgraph", "-s", "udud"],
        &["kappa", "-s", "duududud", "--perm", "4,6,2,1,7,5,8,3"],
        &["kappa-bar", "-s", "duududud", "--partition", "{3,4,6,8}|{1,2,5,7}"],
        &["fiber", "-s", "duududud", "--perm", "4,6,2,1,7,5,8,3"],
        &["fiber", "-s", "ddd", "--triangulation", "0-3,1-3"],
        &["canopy", "-s", "duududud", "--perm", "4,6,2,1,7,5,8,3"],
        &["extremes", "-s", "duududud"],
        &["meet", "-s", "uddud", "--left", "0-3,0-4,0-5,0-6", "--right", "1-2,2-4,2-5,2-6"],
        &["join", "-s", "uddud", "--left", "0-3,0-4,0-5,0-6", "--right", "1-2,2-4,2-5,2-6"],
        &["minkowski", "-s", "udduud", "--diagnostics"],
        &["barycenter", "-s", "duududud"],
        &["barycenter", "-s", "udud", "--orbit", "0-3,0-4,0-5"],
        &["hvector", "-s", "ududud"],
        &["verify", "-s", "uddd", "--level", "full"],
        &["verify", "-s", "uddud", "-f", "json"],
    ];
    let cores = std::thread::available_parallelism().map_or(8, |n| n.get()).max(8).to_string();
    for case in cases {
        let mut outputs = Vec::new();
        for threads in ["1", cores.as_str(), cores.as_str()] {
            let out = Command::new(bin)
                .args(*case)
                .args(["--threads", threads])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!("{case:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
            })?;
            outputs.push(out.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{case:?} output varies"))?;
    }
    Ok(format!("{} subcommand invocations byte-identical at 1 and {cores} threads", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 7] = [
        ("worked example", worked_example, Duration::from_secs(10)),
        ("structural suite", structural, Duration::from_secs(300)),
        ("lattice suite", lattice, Duration::from_secs(120)),
        ("cambrian suite", cambrian, Duration::from_secs(120)),
        ("invariance suite", invariance, Duration::from_secs(300)),
        ("minkowski suite", minkowski, Duration::from_secs(120)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        let (status, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += verdict.is_err() as usize;
        println!("criterion {} {name}: {status} [{elapsed:.2?}] {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
