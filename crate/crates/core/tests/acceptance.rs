//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process exits
//! nonzero if any of them fails. Reference values come from oracles written here,
//! independent of the contour code path.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use wrightfn::cli::bench_records;
use wrightfn::dequad::{integrate_compact, semiinfinite_level_sums, QuadratureConfig};
use wrightfn::series::wright_series_default;
use wrightfn::special::{erfc_w, hyp0f2_w, mwright};
use wrightfn::wright::{arc_integrand, wright};

const W1: f64 = 2.404825557695773;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn w(a: f64, b: f64, z: f64) -> f64 {
    match wright(a, b, z, &QuadratureConfig::default()) {
        Ok(v) if v.converged => v.value,
        _ => f64::NAN,
    }
}

/// Max of residuals where NaN wins, so a failed evaluation can never pass.
fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter()
        .fold(0.0, |m: f64, r| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) })
}

// --- oracles -------------------------------------------------------------

/// erfc on the 81-point grid of [-4, 4] from one cumulative midpoint pass of the
/// Gaussian density over 10⁶ panels.
fn erfc_oracle_table() -> Vec<(f64, f64)> {
    const PANELS: usize = 1_000_000;
    let h = 8.0 / PANELS as f64;
    let per_tenth = PANELS / 80;
    let density = |t: f64| 2.0 / PI.sqrt() * (-t * t).exp();
    // erf(x) on x = 0, 0.1, ..., 4 by integrating outward from 0
    let mut erf = vec![0.0];
    let mut acc = 0.0;
    let mut comp = 0.0;
    for i in 0..PANELS / 2 {
        let term = density((i as f64 + 0.5) * h) * h;
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        if (i + 1) % per_tenth == 0 {
            erf.push(acc);
        }
    }
    (0..=80)
        .map(|k| {
            let x = -4.0 + 0.1 * k as f64;
            let j = (k as i64 - 40).unsigned_abs() as usize;
            let e = if k >= 40 { erf[j] } else { -erf[j] };
            (x, 1.0 - e)
        })
        .collect()
}

/// Ai by its Maclaurin series: `Ai(x) = c1 f(x) - c2 g(x)`.
fn airy_oracle(x: f64) -> f64 {
    let c1 = 0.355028053887817239;
    let c2 = 0.258819403792806798;
    let x3 = x * x * x;
    let (mut f, mut tf) = (0.0, 1.0);
    let (mut g, mut tg) = (0.0, x);
    for k in 0..60 {
        f += tf;
        g += tg;
        let k = k as f64;
        tf *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    }
    c1 * f - c2 * g
}

/// `₀F₂(-; β₁, β₂; y)` by direct summation.
fn hyp0f2_oracle(b1: f64, b2: f64, y: f64) -> f64 {
    let (mut s, mut t) = (0.0, 1.0);
    for k in 0..80 {
        s += t;
        let k = k as f64;
        t *= y / ((k + 1.0) * (b1 + k) * (b2 + k));
    }
    s
}

// --- criteria ------------------------------------------------------------

const GRID_A: [f64; 8] = [-0.9, -0.5, -1.0 / 3.0, 0.0, 1.0 / 3.0, 0.5, 1.0, 2.0];
const GRID_B: [f64; 6] = [-1.5, -0.5, 0.5, 1.0, 1.5, 3.0];

fn grid_z() -> impl Iterator<Item = f64> {
    (0..25).map(|i| -3.0 + 0.25 * i as f64)
}

fn oracle_grid() -> Outcome {
    let start = Instant::now();
    let (mut compared, mut refused) = (0, 0);
    let mut res = Vec::new();
    for a in GRID_A {
        for b in GRID_B {
            for z in grid_z() {
                match wright_series_default(a, b, z) {
                    Ok(s) => {
                        compared += 1;
                        res.push((w(a, b, z) - s.value).abs() / s.value.abs().max(1.0));
                    }
                    Err(_) => refused += 1,
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let m = worst(res);
    outcome(
        m <= 1e-8 && compared >= 1000 && secs < 60.0,
        format!("{compared} points compared ({refused} outside the series' reliable region), worst rel {m:.2e}, {secs:.2} s"),
    )
}

fn erfc_identity() -> Outcome {
    let m = worst(erfc_oracle_table().into_iter().map(|(x, e)| (erfc_w(x).unwrap_or(f64::NAN) - e).abs()));
    outcome(m <= 1e-9, format!("81 points on [-4,4], worst abs {m:.2e}"))
}

fn bessel_zero() -> Outcome {
    let v = w(1.0, 1.0, -W1 * W1 / 4.0);
    outcome(v.abs() <= 1e-8, format!("|W(1,1|-w1²/4)| = {:.2e}", v.abs()))
}

fn trig_identity() -> Outcome {
    let m = worst([1.0f64, 2.5, PI * PI, 15.0].map(|x| {
        let want = (2.0 * x.sqrt()).sin() / (PI * x).sqrt();
        (w(1.0, 1.5, -x) - want).abs()
    }));
    outcome(m <= 1e-8, format!("W(1,3/2|-x) vs sin(2√x)/√(πx), worst abs {m:.2e}"))
}

fn residue_exactness() -> Outcome {
    let lin = worst([-10.0f64, -1.0, 0.0, 1.0, 10.0].map(|z| {
        (w(-1.0, 2.0, z) - (1.0 + z)).abs() / (1.0 + z).abs().max(1.0)
    }));
    let ones = (1..=3).all(|n| [-10.0, -1.0, 0.0, 1.0, 10.0].iter().all(|&z| w(-(n as f64), 1.0, z) == 1.0));
    outcome(
        lin <= 2.0 * f64::EPSILON && ones,
        format!("W(-1,2|z) worst rel {lin:.2e}, W(-n,1|z) == 1 exactly: {ones}"),
    )
}

fn airy_identity() -> Outcome {
    let s = 3f64.powf(1.0 / 3.0);
    let m = worst((0..13).map(|i| {
        let z = 0.25 * i as f64;
        (mwright(1.0 / 3.0, z).unwrap_or(f64::NAN) - s * s * airy_oracle(z / s)).abs()
    }));
    outcome(m <= 1e-7, format!("13 points on [0,3], worst abs {m:.2e}"))
}

fn recurrence_and_derivative() -> Outcome {
    let h = 1e-5;
    let (mut rec, mut der) = (Vec::new(), Vec::new());
    for a in GRID_A.into_iter().filter(|&a| a > -0.5) {
        for b in GRID_B {
            for z in grid_z() {
                let lhs = w(a, b - 1.0, z);
                let t1 = (b - 1.0) * w(a, b, z);
                let shifted = w(a, a + b, z);
                let t2 = a * z * shifted;
                let scale = 1f64.max(lhs.abs()).max(t1.abs()).max(t2.abs());
                rec.push((lhs - t1 - t2).abs() / scale);
                let fd = (w(a, b, z + h) - w(a, b, z - h)) / (2.0 * h);
                der.push((fd - shifted).abs() / shifted.abs().max(1.0));
            }
        }
    }
    let n = rec.len();
    let (r, d) = (worst(rec), worst(der));
    outcome(
        r <= 1e-8 && d <= 1e-5,
        format!("{n} points with a > -1/2, recurrence worst {r:.2e}, derivative worst {d:.2e}"),
    )
}

fn hyp0f2_identity() -> Outcome {
    let m = worst((0..17).map(|i| {
        let x = -4.0 + 0.5 * i as f64;
        (hyp0f2_w(x).unwrap_or(f64::NAN) - hyp0f2_oracle(0.5, 1.0, x / 4.0)).abs()
    }));
    outcome(m <= 1e-8, format!("17 points on [-4,4], worst abs {m:.2e}"))
}

fn de_convergence() -> Outcome {
    let sums = match semiinfinite_level_sums(|x| (-x).exp(), 0.0, &QuadratureConfig::default()) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let floor = 100.0 * f64::EPSILON;
    let errs: Vec<f64> = sums.iter().map(|s| (s.value - 1.0).abs()).collect();
    let mut ok = errs.iter().any(|&e| e <= floor);
    for pair in errs.windows(2) {
        if pair[0] > floor && !(pair[1] * 10.0 <= pair[0]) {
            ok = false;
        }
    }
    let shown: Vec<String> = errs.iter().take_while(|&&e| e > floor).map(|e| format!("{e:.1e}")).collect();
    outcome(ok, format!("level errors above 100 eps: [{}]", shown.join(", ")))
}

fn performance() -> Outcome {
    match bench_records() {
        Ok(records) => {
            let slowest = records.iter().map(|r| r.microseconds).fold(0.0, f64::max);
            outcome(
                records.len() == 6 && slowest <= 10_000.0,
                format!("six rows, slowest median {slowest:.1} µs"),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn branch_continuity() -> Outcome {
    let v = [1.0 - 1e-9, 1.0, 1.0 + 1e-9].map(|b| w(-0.5, b, 1.0));
    let m = worst([(v[0] - v[1]).abs(), (v[1] - v[2]).abs(), (v[0] - v[2]).abs()]);
    outcome(m <= 1e-6, format!("W(-1/2, 1∓1e-9 | 1), worst pairwise {m:.2e}"))
}

fn mwright_ode() -> Outcome {
    let h = 1e-5;
    let m = |z: f64| mwright(0.5, z).unwrap_or(f64::NAN);
    let r = worst((0..=14).map(|i| {
        let z = 0.2 + 0.2 * i as f64;
        ((m(z + h) - m(z - h)) / (2.0 * h) + 0.5 * z * m(z)).abs()
    }));
    outcome(r <= 1e-5, format!("M' + (z/2)M on [0.2,3], worst {r:.2e}"))
}

fn arc_evenness() -> Outcome {
    let cfg = QuadratureConfig::default();
    let r = worst([(0.5, 1.0, 2.0, 1.0), (1.0, 1.5, -3.0, 1.5), (-0.5, 1.5, 1.0, 1.0)].map(
        |(a, b, z, eps)| {
            let f = |phi: f64| arc_integrand(a, b, z, eps, phi).unwrap_or(f64::NAN);
            let full = integrate_compact(f, -PI, PI, &cfg).map_or(f64::NAN, |r| r.value);
            let half = integrate_compact(f, 0.0, PI, &cfg).map_or(f64::NAN, |r| r.value);
            (full - 2.0 * half).abs() / full.abs().max(1.0)
        },
    ));
    outcome(r <= 1e-10, format!("[-π,π] vs 2×[0,π], worst rel {r:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("1 oracle-equivalence grid", oracle_grid),
        ("2 erfc identity", erfc_identity),
        ("3 Bessel zero", bessel_zero),
        ("4 trigonometric identity", trig_identity),
        ("5 residue polynomial exactness", residue_exactness),
        ("6 Airy identity", airy_identity),
        ("7 recurrence and derivative", recurrence_and_derivative),
        ("8 0F2 equivalence", hyp0f2_identity),
        ("9 DE convergence", de_convergence),
        ("10 performance", performance),
        ("11 branch continuity", branch_continuity),
        ("- M-Wright ODE", mwright_ode),
        ("- arc evenness", arc_evenness),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.ok {
            failed += 1;
        }
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
