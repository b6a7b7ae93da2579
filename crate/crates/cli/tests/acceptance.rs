//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fs;
use std::ops::Index;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use holed_torus::charts::{
    lambda_of_punctured_torus, region_height, EigenSplit, ExtReal, FNChartPoint, SlitChartPoint,
};
use holed_torus::extremal::{
    annulus_from_core_length, annulus_quantities, lambda_triple_slit, slit_torus_extremal_length, CurveClass,
    RefinementPlan,
};
use holed_torus::fuchsian::{enumerate_classes, fn_to_rep, Letter, Representation, Word};
use holed_torus::regions::{
    corner_certificate, critical_lengths, sigma_membership, strip_report, Critical, MARGIN_TOL,
};
use holed_torus::{Complex64, Error, Execution, FixtureKind, SurfaceDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("took {elapsed:.2?}, limit {limit} s")
    })
}

// ---------------------------------------------------------------------------
// independent 2x2 arithmetic

type M = [[f64; 2]; 2];

fn mul(p: M, q: M) -> M {
    [
        [
            p[0][0] * q[0][0] + p[0][1] * q[1][0],
            p[0][0] * q[0][1] + p[0][1] * q[1][1],
        ],
        [
            p[1][0] * q[0][0] + p[1][1] * q[1][0],
            p[1][0] * q[0][1] + p[1][1] * q[1][1],
        ],
    ]
}

fn inv(m: M) -> M {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

fn tr(m: M) -> f64 {
    m[0][0] + m[1][1]
}

fn arr(m: &impl Index<(usize, usize), Output = f64>) -> M {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

fn generators(rep: &Representation) -> (M, M) {
    (arr(rep.a()), arr(rep.b()))
}

fn word_len_by_hand(a: M, b: M, w: &Word) -> f64 {
    let m = w.letters().iter().fold([[1.0, 0.0], [0.0, 1.0]], |acc, l| {
        mul(
            acc,
            match l {
                Letter::U => a,
                Letter::UInv => inv(a),
                Letter::V => b,
                Letter::VInv => inv(b),
            },
        )
    });
    let t = tr(m).abs();
    if t <= 2.0 + 1e-9 {
        0.0
    } else {
        2.0 * (t / 2.0).acosh()
    }
}

fn random_fn(rng: &mut ChaCha8Rng) -> FNChartPoint {
    FNChartPoint::new(
        rng.random_range(0.1..8.0),
        rng.random_range(0.0..8.0),
        rng.random_range(-4.0..4.0),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------

fn c1_lambda_region() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let tau = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(0.1..3.0));
        let t = lambda_of_punctured_torus(tau).map_err(|e| e.to_string())?;
        worst = worst.max(t.region_gap().abs());
    }
    ensure(worst < 1e-9, || format!("punctured-torus gap {worst:e}"))?;
    let mut worst_h = 0.0f64;
    let (u, v) = (
        [1.0, -1.0, 0.0].map(|c: f64| c / 2f64.sqrt()),
        [1.0, 1.0, -2.0].map(|c: f64| c / 6f64.sqrt()),
    );
    for _ in 0..10_000 {
        let (p, q) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let zeta = [0, 1, 2].map(|i| p * u[i] + q * v[i]);
        let t = region_height(zeta).map_err(|e| e.to_string())?;
        let x = EigenSplit { zeta, t }.reconstruct();
        let q = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 2.0 * (x[0] * x[1] + x[1] * x[2] + x[2] * x[0]);
        worst_h = worst_h.max((q + 4.0).abs());
    }
    ensure(worst_h < 1e-9, || format!("region_height gap {worst_h:e}"))?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("max |Q+4| {worst:.1e} (tau), {worst_h:.1e} (height)"))
}

fn c2_annulus() -> Check {
    let start = Instant::now();
    for k in 0..1000 {
        let m = 10f64.powf(-3.0 + 6.0 * k as f64 / 999.0);
        let (lambda, l) = annulus_quantities(m).map_err(|e| e.to_string())?;
        ensure(lambda * PI == l, || format!("lambda*pi != l at m = {m}"))?;
    }
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let l = 0.1 * 100f64.powf(k as f64 / 999.0);
        let back = annulus_from_core_length(l)
            .map_err(|e| e.to_string())?
            .hyperbolic_length();
        worst = worst.max((back - l).abs());
    }
    ensure(worst < 1e-12, || format!("round trip error {worst:e}"))?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("identity exact on 1000 moduli, round trip {worst:.1e}"))
}

fn c3_trace_identity() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = random_fn(&mut rng);
        let (a, b) = generators(&fn_to_rep(p).map_err(|e| e.to_string())?);
        let comm = tr(mul(mul(a, b), mul(inv(a), inv(b))));
        let (x, y, z) = (tr(a), tr(b), tr(mul(a, b)));
        let err = (comm - (x * x + y * y + z * z - x * y * z - 2.0)).abs();
        worst = worst.max(err);
    }
    ensure(worst < 1e-9, || format!("max error {worst:e}"))?;
    within(start.elapsed(), 5.0)?;
    Ok(format!("max error {worst:.1e}"))
}

fn c4_fn_contract() -> Check {
    let mut worst = 0.0f64;
    let mut worst_cusp = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            for k in 0..5 {
                let l = 0.1 + 7.9 * i as f64 / 9.0;
                let lp = 8.0 * j as f64 / 9.0;
                let theta = -4.0 + 2.0 * k as f64;
                let rep = fn_to_rep(FNChartPoint::new(l, lp, theta).unwrap()).map_err(|e| e.to_string())?;
                let lu = rep.geodesic_length(&Word::u()).map_err(|e| e.to_string())?;
                let lc = rep.geodesic_length(&Word::commutator()).map_err(|e| e.to_string())?;
                worst = worst.max((lu - l).abs()).max((lc - lp).abs());
                if j == 0 {
                    let (a, b) = generators(&rep);
                    worst_cusp = worst_cusp.max((tr(mul(mul(a, b), mul(inv(a), inv(b)))) + 2.0).abs());
                }
            }
        }
    }
    ensure(worst < 1e-9, || format!("length error {worst:e}"))?;
    ensure(worst_cusp < 1e-10, || format!("cusp trace error {worst_cusp:e}"))?;
    Ok(format!(
        "max length error {worst:.1e}, cusp trace error {worst_cusp:.1e}"
    ))
}

fn c5_enumeration() -> Check {
    let start = Instant::now();
    // brute force over all strings: freely and cyclically reduced, keyed by
    // the set of cyclic rotations of the string and of its inverse
    let letters = ['u', 'U', 'v', 'V'];
    let inverse = |c: char| {
        if c.is_lowercase() {
            c.to_ascii_uppercase()
        } else {
            c.to_ascii_lowercase()
        }
    };
    let mut counts = BTreeMap::new();
    for n in 1..=8usize {
        let mut keys = BTreeSet::new();
        for code in 0..4usize.pow(n as u32) {
            let s: Vec<char> = (0..n).map(|i| letters[(code >> (2 * i)) & 3]).collect();
            let reduced = (0..n).all(|i| s[(i + 1) % n] != inverse(s[i]));
            if !reduced {
                continue;
            }
            let rev: Vec<char> = s.iter().rev().map(|&c| inverse(c)).collect();
            let mut rots: Vec<String> = Vec::new();
            for base in [&s, &rev] {
                for r in 0..n {
                    rots.push(base[r..].iter().chain(&base[..r]).collect());
                }
            }
            rots.sort();
            keys.insert(rots);
        }
        counts.insert(n, keys.len());
    }
    let classes = enumerate_classes(8).map_err(|e| e.to_string())?;
    let mut got = BTreeMap::new();
    for w in &classes {
        *got.entry(w.len()).or_insert(0usize) += 1;
    }
    ensure(got == counts, || format!("library {got:?} vs brute force {counts:?}"))?;
    within(start.elapsed(), 10.0)?;
    Ok(format!("counts {:?}", counts.values().collect::<Vec<_>>()))
}

fn c6_dehn_twist() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let classes = enumerate_classes(5).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_fn(&mut rng);
        let twisted = fn_to_rep(FNChartPoint {
            theta: p.theta + p.l,
            ..p
        })
        .map_err(|e| e.to_string())?;
        let base = fn_to_rep(p).map_err(|e| e.to_string())?;
        for w in &classes {
            let lhs = twisted.geodesic_length(w).map_err(|e| e.to_string())?;
            let rhs = base.geodesic_length(&w.twist_substitute()).map_err(|e| e.to_string())?;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    ensure(worst < 1e-8, || format!("max error {worst:e}"))?;
    Ok(format!("{} classes x 100 points, max error {worst:.1e}", classes.len()))
}

fn c7_solver_anchors() -> Check {
    let start = Instant::now();
    let plan = RefinementPlan {
        grid_n: 256,
        levels: 2,
        rel_tol: 5e-3,
    };
    let taus = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(1.0, 1.0),
    ];
    let mut cases = Vec::new();
    for tau in taus {
        for s in [0.0, 0.25, 0.5] {
            cases.push((tau, s, CurveClass::A));
        }
        cases.push((tau, 0.0, CurveClass::B));
        cases.push((tau, 0.0, CurveClass::ABInv));
    }
    let mut worst = 0.0f64;
    for (tau, s, class) in cases {
        let p = SlitChartPoint::new(tau, s).unwrap();
        let e = slit_torus_extremal_length(p, class, &plan).map_err(|e| format!("{tau} {s} {class:?}: {e}"))?;
        ensure(e.relative_change() < 5e-3, || {
            format!("{tau} {s} {class:?}: change {}", e.relative_change())
        })?;
        let exact = class.flat_value(tau);
        let rel = (e.estimate - exact).abs() / exact;
        ensure(rel < 1e-2, || format!("{tau} {s} {class:?}: {} vs {exact}", e.estimate))?;
        worst = worst.max(rel);
    }
    within(start.elapsed(), 120.0)?;
    Ok(format!("15 anchors at grid 256/512, max relative error {worst:.1e}"))
}

fn c8_region_consistency() -> Check {
    let plan = RefinementPlan::default();
    let mut gaps = Vec::new();
    for s in [0.1, 0.3, 0.5] {
        let t = lambda_triple_slit(
            SlitChartPoint::new(Complex64::new(0.0, 1.0), s).unwrap(),
            &plan,
            Execution::Parallel,
        )
        .map_err(|e| e.to_string())?;
        ensure(t.region_gap <= 3.0 * t.error_indicator, || {
            format!("s = {s}: Q+4 = {} > 3 * {}", t.region_gap, t.error_indicator)
        })?;
        gaps.push(t.region_gap);
    }
    ensure(gaps[0].abs() < gaps[1].abs() && gaps[1].abs() < gaps[2].abs(), || {
        format!("Q+4 does not shrink toward s = 0: {gaps:?}")
    })?;
    Ok(format!(
        "Q+4 = {:.4} / {:.4} / {:.4} at s = 0.1 / 0.3 / 0.5",
        gaps[0], gaps[1], gaps[2]
    ))
}

fn c9_critical_lengths() -> Check {
    let err = |e: Error| e.to_string();
    let f = critical_lengths(&SurfaceDescriptor::Fn {
        l: PI,
        lp: 1.0,
        theta: 0.0,
    })
    .map_err(err)?;
    ensure(
        f.lambda_a == Critical::Available(1.0) && f.lambda_inf == Critical::Available(1.0),
        || format!("FN: {f:?}"),
    )?;
    let s = critical_lengths(&SurfaceDescriptor::Slit {
        tau: [0.0, 1.0],
        s: 0.5,
    })
    .map_err(err)?;
    ensure(s.lambda_c == Critical::Available(1.0), || format!("slit: {s:?}"))?;
    let torus = SurfaceDescriptor::Fixture {
        kind: FixtureKind::MarkedTorus,
        tau: [0.2, 1.3],
    };
    let t = critical_lengths(&torus).map_err(err)?;
    let strips = strip_report(&torus).map_err(err)?;
    let la = strips
        .iter()
        .find(|e| e.quantity == "lambda_a")
        .ok_or("no lambda_a strip")?;
    ensure(
        t.lambda_a == Critical::Available(0.0) && la.strip.height == ExtReal::Infinite,
        || format!("torus: {t:?} {la:?}"),
    )?;
    for kind in [FixtureKind::TwicePuncturedMeet, FixtureKind::TwicePuncturedNotMeet] {
        let tau0 = [0.3, 0.8];
        let c = critical_lengths(&SurfaceDescriptor::Fixture { kind, tau: tau0 }).map_err(err)?;
        ensure(c.lambda_c == Critical::Available(1.0 / tau0[1]), || {
            format!("fixture: {c:?}")
        })?;
    }
    Ok("FN, slit, marked torus and twice-punctured fixtures exact".into())
}

fn c10_corner() -> Check {
    let mut checked = 0;
    for i in 0..5 {
        for j in 0..5 {
            let y0 = FNChartPoint::new(0.5 + 0.8 * i as f64, 0.5 + 0.8 * j as f64, 0.3).unwrap();
            let r = corner_certificate(y0, 1e-3, 6, Execution::Sequential).map_err(|e| e.to_string())?;
            let (lm, lpm) = (&r.probe_results[0], &r.probe_results[2]);
            ensure(lm.status.is_out() && lm.witness == Some(Word::u()), || {
                format!("{y0:?}: l-probe {lm:?}")
            })?;
            // decreasing l' shortens the commutator below its reference length
            ensure(
                lpm.status.is_out() && lpm.target == Word::commutator() && lpm.target_margin < -MARGIN_TOL,
                || format!("{y0:?}: l'-probe {lpm:?}"),
            )?;
            ensure(r.l_exit && r.lp_exit && r.independent, || format!("{y0:?}: {r:?}"))?;
            checked += 1;
        }
    }
    let punctured = FNChartPoint::new(1.0, 0.0, 0.0).unwrap();
    let rejected = corner_certificate(punctured, 1e-3, 6, Execution::Sequential);
    ensure(matches!(rejected, Err(Error::Unsupported(_))), || {
        format!("l' = 0 accepted: {rejected:?}")
    })?;
    Ok(format!("{checked} base points certified; l' = 0 rejected"))
}

fn c11_sigma_and_determinism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let all = enumerate_classes(6).map_err(|e| e.to_string())?;
    let (mut outs, mut ins) = (0, 0);
    for k in 0..1000 {
        let y0 = random_fn(&mut rng);
        let x = match k % 3 {
            0 => y0,
            1 => random_fn(&mut rng),
            _ => FNChartPoint::new(
                y0.l + rng.random_range(-0.05..0.3),
                y0.lp + rng.random_range(0.0..0.3),
                y0.theta + rng.random_range(-0.05..0.05),
            )
            .unwrap(),
        };
        let n = rng.random_range(2..=6);
        let v = sigma_membership(x, y0, n, Execution::Sequential).map_err(|e| e.to_string())?;
        if k % 3 == 0 {
            ensure(!v.status.is_out() && v.min_margin == 0.0, || {
                format!("not reflexive at {y0:?}")
            })?;
        }
        // witness minimality against an independent spectrum
        let classes: Vec<&Word> = all.iter().filter(|w| w.len() <= n).collect();
        let (ax, bx) = generators(&fn_to_rep(x).unwrap());
        let (ay, by) = generators(&fn_to_rep(y0).unwrap());
        let margins: Vec<f64> = classes
            .iter()
            .map(|w| word_len_by_hand(ax, bx, w) - word_len_by_hand(ay, by, w))
            .collect();
        let slack = 1e-8;
        match &v.witness {
            Some(w) => {
                let pos = classes.iter().position(|c| *c == w).ok_or("witness not enumerated")?;
                ensure(margins[pos] < -MARGIN_TOL + slack, || {
                    format!("witness {w} margin {}", margins[pos])
                })?;
                ensure(margins[..pos].iter().all(|&m| m >= -MARGIN_TOL - slack), || {
                    format!("shorter violation before witness {w} at {x:?} / {y0:?}")
                })?;
                outs += 1;
            }
            None => {
                ensure(margins.iter().all(|&m| m >= -MARGIN_TOL - slack), || {
                    format!("missed violation at {x:?}")
                })?;
                ins += 1;
            }
        }
        // truncation monotonicity
        if n < 6 {
            let longer = sigma_membership(x, y0, n + 1, Execution::Sequential).map_err(|e| e.to_string())?;
            if v.status.is_out() {
                ensure(longer.status.is_out() && longer.witness == v.witness, || {
                    format!("out at {n}, not at {}", n + 1)
                })?;
            }
            if !longer.status.is_out() {
                ensure(!v.status.is_out(), || format!("in at {}, out at {n}", n + 1))?;
            }
        }
    }
    let runs = cli_determinism()?;
    Ok(format!(
        "1000 instances ({ins} in, {outs} out); {runs} CLI commands byte-identical across runs"
    ))
}

fn cli_determinism() -> Result<usize, String> {
    let bin = env!("CARGO_BIN_EXE_holed-torus");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let put = |name: &str, body: &str| fs::write(dir.path().join(name), body).map_err(|e| e.to_string());
    put("y0.json", r#"{"chart":"fn","l":2.0,"lp":1.0,"theta":0.0}"#)?;
    put("x.json", r#"{"chart":"fn","l":2.2,"lp":1.1,"theta":0.1}"#)?;
    put("lam.json", r#"{"chart":"lambda","x":[1,1,2]}"#)?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["chart", "--input", "lam.json"],
        vec!["spectrum", "--input", "y0.json", "--max-word-len", "6"],
        vec!["sigma", "--input", "x.json", "--y0", "y0.json"],
        vec!["scan", "--y0", "y0.json", "--ranges", "1.5:2.5:9", "0.5:1.5:9"],
        vec!["critical", "--y0", "y0.json"],
        vec!["corner", "--y0", "y0.json"],
        vec!["modulus", "--tau", "0.2,1.1", "--s", "0.4", "--class", "all"],
    ];
    for (k, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = format!("out_{k}_{rep}");
            let status = Command::new(bin)
                .current_dir(dir.path())
                .args(args)
                .args(["--out", &out])
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.success(), || format!("{args:?} exited with {status}"))?;
            outputs.push(fs::read(dir.path().join(&out)).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} differs between runs"))?;
    }
    Ok(commands.len())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 lambda-region suite", c1_lambda_region),
        ("2 annulus identity", c2_annulus),
        ("3 trace identity", c3_trace_identity),
        ("4 fenchel-nielsen contract", c4_fn_contract),
        ("5 word enumeration", c5_enumeration),
        ("6 dehn-twist equivariance", c6_dehn_twist),
        ("7 solver anchors", c7_solver_anchors),
        ("8 region consistency of numerical lambda", c8_region_consistency),
        ("9 critical lengths", c9_critical_lengths),
        ("10 corner certificate", c10_corner),
        ("11 sigma suite and cli determinism", c11_sigma_and_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({secs:.2} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2} s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
