//! End-to-end acceptance run: one PASS/FAIL line per criterion, with timing.
//! Exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tncluster_core::affine::{
    check_a_infinity, check_dual_period, family_spec, segment_image, t_system_translation, AffineTag, ModuleLabel,
};
use tncluster_core::lattice::alpha_w;
use tncluster_core::multiseg::{Multisegment, Segment};
use tncluster_core::qcluster::{mutate_l, ClearLabels, QuantumSeed, Vertex};
use tncluster_core::quiver::{
    first_mutation_defects, gls_window, initial_quiver, label_shift_defects, labeled_diff, seed_from_quiver,
    seed_schedule, sigma_minus, sigma_plus, truncated_quiver, verify_periodicity, verify_periodicity_n,
    verify_reversing, KrWeightRule, Window,
};
use tncluster_core::tnring::{c_a_identity, omega_n, ClassTN};
use tncluster_core::word::{
    a_val, beta_by_reflection, beta_closed, coord, coord_inv, is_reduced_prefix, jp, longest_interval, perm_of_prefix,
    root, Coord,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: tncluster_core::Error) -> String {
    e.to_string()
}

fn reduced_word() -> Check {
    for p in 1..=a_val(20) as u32 {
        ensure(is_reduced_prefix(p), || format!("prefix {} is not reduced", p))?;
        let (a, b) = beta_closed(p);
        ensure(beta_by_reflection(p) == root(a, b), || format!("root at p={} differs from the closed form", p))?;
    }
    Ok(format!("p ≤ {}", a_val(20)))
}

fn coordinates() -> Check {
    let check = |p: u32, c: Coord| {
        ensure(coord(p) == c && coord_inv(c) == p, || format!("p={} ↔ ({}, {})", p, c.ell, c.m))?;
        ensure(jp(p) == (c.ell - c.m + 1).div_euclid(2), || format!("j_p at p={}", p))
    };
    for p in 1..=100_000u32 {
        check(p, coord(p))?;
    }
    let mut n = 0;
    for s in 2..=450 {
        for ell in 1..s {
            let c = Coord::new(ell, s - ell);
            check(coord_inv(c), c)?;
            n += 1;
        }
    }
    Ok(format!("10^5 positions, {} coordinates", n))
}

fn longest_elements() -> Check {
    for u in 1..=10 {
        let (lo, hi) = longest_interval(u);
        ensure(perm_of_prefix(a_val(u) as u32).is_reversal_of(lo, hi), || {
            format!("u={}: not the reversal of [{}, {}]", u, lo, hi)
        })?;
    }
    Ok("k = 1..10".into())
}

fn seed_compatibility() -> Check {
    let q = initial_quiver(Window::triangle(12)).map_err(err)?;
    let seed = seed_from_quiver(&q, false).map_err(err)?;
    let vs: Vec<Vertex> = seed.vertices.iter().copied().collect();
    for &i in &vs {
        for &j in &vs {
            ensure(seed.l.get(i, j) == -seed.l.get(j, i), || format!("L not skew at ({}, {})", i, j))?;
        }
    }
    let cols = seed.interior_columns();
    ensure(!cols.is_empty(), || "no interior columns".into())?;
    ensure(seed.compatible(2, &cols).map_err(err)?, || "Σ λ_ik b_kj ≠ 2δ_ij".into())?;
    Ok(format!("{} vertices, {} interior columns", vs.len(), cols.len()))
}

fn report(r: tncluster_core::quiver::Report) -> Result<(), String> {
    for (name, bad) in &r.checks {
        ensure(bad.is_empty(), || format!("{}: {} mismatches, first {:?}", name, bad.len(), bad[0]))?;
    }
    Ok(())
}

fn quiver_identities() -> Check {
    let cap = 14;
    let gls = gls_window(cap);
    let init = initial_quiver(Window::triangle(cap)).map_err(err)?;
    let d = labeled_diff(&gls, &init, 2);
    ensure(d.is_empty(), || format!("closed form differs from the product quiver: {:?}", d[0]))?;
    report(verify_reversing(cap, 4).map_err(err)?)?;
    report(verify_periodicity(cap, 4).map_err(err)?)?;
    Ok(format!("cap {}", cap))
}

fn truncated_periodicity() -> Check {
    for n in 3..=5 {
        report(verify_periodicity_n(n, 10, 3).map_err(err)?).map_err(|e| format!("N={}: {}", n, e))?;
    }
    Ok("N = 3, 4, 5".into())
}

fn label_mutation() -> Check {
    let q = initial_quiver(Window::triangle(10)).map_err(err)?;
    let seed = seed_from_quiver(&q, false).map_err(err)?;
    let mut count = 0;
    for &p in &seed.vertices {
        if coord(p).sum() > 8 {
            continue;
        }
        let (mk, mk2) = seed.mutation_degrees(p).map_err(err)?;
        ensure(mk.is_integer() && mk2.is_integer(), || format!("p={}: m_k, m'_k not integral", p))?;
        let bad = first_mutation_defects(&seed, p).map_err(err)?;
        ensure(bad.is_empty(), || bad.join("; "))?;
        count += 1;
    }
    let cap = 16;
    let base = initial_quiver(Window::triangle(cap)).map_err(err)?;
    let mut big = seed_from_quiver(&base, false).map_err(err)?;
    big.track_vars = false;
    for (sign, sched) in [(1, sigma_plus(&base)), (-1, sigma_minus(&base))] {
        let mut s = big.clone();
        for r in 1..=2 {
            s = seed_schedule(&s, &sched, &KrWeightRule).map_err(err)?;
            let among: BTreeSet<Vertex> = base.trusted(2 * r + 2);
            let bad = label_shift_defects(&s, sign * r, &among);
            ensure(bad.is_empty(), || format!("shift {:+}: labels wrong at {:?}", sign * r, bad))?;
        }
    }
    Ok(format!("{} first mutations, shifts ±1, ±2", count))
}

fn check_quasi_commuting(s: &QuantumSeed) -> Result<(), String> {
    for &i in &s.vertices {
        for &j in &s.vertices {
            let xy = s.vars[&i].mul(&s.vars[&j], &s.torus);
            let yx = s.vars[&j].mul(&s.vars[&i], &s.torus);
            ensure(xy == yx.shift(2 * s.l.get(i, j)), || {
                format!("x_{} x_{} does not match λ = {}", i, j, s.l.get(i, j))
            })?;
        }
    }
    Ok(())
}

fn quantum_laurent() -> Check {
    let q = truncated_quiver(3, 6).map_err(err)?;
    let seed = seed_from_quiver(&q, true).map_err(err)?;
    let ex = seed.exchangeable();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut steps = 0;
    for run in 0..100 {
        let len = rng.gen_range(1..=8);
        let mut s = seed.clone();
        for _ in 0..len {
            let k = ex[rng.gen_range(0..ex.len())];
            let (next, _) = s.mutate(k, &ClearLabels).map_err(|e| format!("run {}: {}", run, e))?;
            let want = mutate_l(&s.l, &s.b, k, &s.vertices);
            ensure(next.l == want, || format!("run {}: L after μ_{} differs from μ_k(L)", run, k))?;
            let (back, _) = next.mutate(k, &ClearLabels).map_err(err)?;
            ensure(back.b == s.b && back.l == s.l && back.vars == s.vars, || format!("run {}: μ_{}² ≠ id", run, k))?;
            s = next;
            steps += 1;
        }
        for (v, x) in &s.vars {
            ensure(x.is_positive(), || format!("run {}: x_{} = {} has a negative coefficient", run, v, x))?;
        }
        check_quasi_commuting(&s).map_err(|e| format!("run {}: {}", run, e))?;
    }
    Ok(format!("100 schedules, {} mutations", steps))
}

fn t_system() -> Check {
    let mut failed = Vec::new();
    let mut total = 0;
    for t in [1, 2] {
        let cases = t_system_translation(t, 5, 8).map_err(err)?;
        total += cases.len();
        let bad: Vec<_> = cases.iter().filter(|c| !c.agrees).collect();
        if let Some(c) = bad.first() {
            failed.push(format!(
                "t={}: {}/{} vertices disagree\n       first at (ℓ,m)=({},{}) k={}: mutation gives quotient {} ⊗ {}, \
                 relation expects {} ⊗ {}",
                t,
                bad.len(),
                cases.len(),
                c.ell,
                c.m,
                c.k,
                c.translated.quot[0],
                c.translated.quot[1],
                c.expected.quot[0],
                c.expected.quot[1],
            ));
        }
    }
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} exchange relations, t = 1, 2", total))
}

fn families() -> Check {
    let reps = [
        (AffineTag::A1, vec![2, 3, 5]),
        (AffineTag::A2, vec![3, 4, 6]),
        (AffineTag::B1, vec![2, 3, 4]),
        (AffineTag::C1, vec![3, 4, 5]),
        (AffineTag::D1, vec![4, 5, 6]),
        (AffineTag::D2, vec![4, 5, 6]),
        (AffineTag::D3, vec![4]),
    ];
    let mut n_specs = 0;
    for (tag, ranks) in reps {
        for n in ranks {
            let s = family_spec(tag, n).map_err(err)?;
            let a = check_a_infinity(&s, 8).map_err(err)?;
            ensure(a.pass, || format!("{} rank {}: {:?}", tag, n, a.detail))?;
            let d = check_dual_period(&s, 8).map_err(err)?;
            ensure(d.pass, || format!("{} rank {}: {:?}", tag, n, d.detail))?;
            for a in -8..=8 {
                let seg = Segment { a, b: a + s.big_n - 1 };
                let img = segment_image(&s, seg).map_err(err)?;
                ensure(img == ModuleLabel::Unit, || format!("{} rank {}: [{}, {}] ↦ {}", tag, n, seg.a, seg.b, img))?;
            }
            n_specs += 1;
        }
    }
    Ok(format!("{} families × ranks", n_specs))
}

fn tn_combinatorics() -> Check {
    let mut rng = StdRng::seed_from_u64(0x7a);
    for i in 0..1000 {
        let n = rng.gen_range(2..=6);
        let pairs: Vec<(i64, i64)> = (0..rng.gen_range(0..6))
            .map(|_| {
                let a = rng.gen_range(-10..10);
                (a, a + rng.gen_range(0..=n))
            })
            .collect();
        let ms = Multisegment::from_pairs(&pairs).map_err(err)?;
        let longest = ms.segments().iter().map(|s| s.len()).max().unwrap_or(0);
        let c = omega_n(&ms, n).map_err(err)?;
        let ok = match &c {
            ClassTN::Zero => longest > n,
            ClassTN::Simple { ms: kept, .. } => {
                let full = ms.segments().iter().filter(|s| s.len() == n).count();
                longest <= n && kept.len() + full == ms.len() && kept.segments().iter().all(|s| s.len() < n)
            }
        };
        ensure(ok, || format!("sample {}: {:?} with N={} classified as {}", i, pairs, n, c))?;
    }
    for n in [2, 3, 5] {
        for j in -6..=6 {
            for a in -8..=8 {
                let (l, r) = c_a_identity(a, &alpha_w(j), n).map_err(err)?;
                ensure(l == r, || format!("N={} a={} β=α_{}: {} ≠ {}", n, a, j, l, r))?;
            }
        }
    }
    Ok("10^3 multisegments; c_a identity for N = 2, 3, 5".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("reduced word", Duration::from_secs(1), reduced_word),
        ("coordinates", Duration::from_secs(1), coordinates),
        ("longest elements", Duration::from_secs(1), longest_elements),
        ("seed compatibility", Duration::from_secs(5), seed_compatibility),
        ("quiver identities", Duration::from_secs(10), quiver_identities),
        ("truncated periodicity", Duration::from_secs(10), truncated_periodicity),
        ("label mutation", Duration::from_secs(30), label_mutation),
        ("quantum Laurent + positivity", Duration::from_secs(60), quantum_laurent),
        ("T-system translation", Duration::from_secs(5), t_system),
        ("Γ^J and periodicity of families", Duration::from_secs(5), families),
        ("T_N combinatorics", Duration::from_secs(5), tn_combinatorics),
    ];
    let mut failures = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if res.is_err() {
            failures += 1;
        }
        let slow = if took > budget { format!(" (over {:?} budget)", budget) } else { String::new() };
        println!("{} {:>2}. {} [{:.3}s{}] {}", tag, i + 1, name, took.as_secs_f64(), slow, detail);
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
