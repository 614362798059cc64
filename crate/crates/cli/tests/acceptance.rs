//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails the
//! test target if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use sixbox_core::analysis::{approximation_report, gaussian_tiny_chance};
use sixbox_core::{
    binomial_log_likelihood, generate, laplace_rule, log_bayes_factor, posterior_from_summary,
    sequence_log_likelihood, BoxModel, Color, LogPosterior, SequenceSummary,
};
use sixbox_service::{router, SessionStore};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    }};
}

fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn check_rel(label: &str, got: &[f64], want: &[f64], tol: f64) -> Outcome {
    ensure!(
        got.len() == want.len(),
        "{label}: {} values, expected {}",
        got.len(),
        want.len()
    );
    for (k, (&g, &w)) in got.iter().zip(want).enumerate() {
        if w == 0.0 {
            ensure!(g == 0.0, "{label}[{k}] = {g:e}, expected exactly 0");
        } else {
            ensure!(
                rel_err(g, w) <= tol,
                "{label}[{k}] = {g:e}, expected {w:e} (rel tol {tol:e})"
            );
        }
    }
    Ok(())
}

fn model() -> BoxModel {
    BoxModel::default()
}

fn uniform() -> LogPosterior {
    LogPosterior::uniform(model())
}

fn summary(n: u64, x: u64) -> SequenceSummary {
    SequenceSummary::new(n, x).expect("valid summary")
}

fn likelihood_row(n: u64, x: u64, boxes: std::ops::Range<usize>, binomial: bool) -> Vec<f64> {
    boxes
        .map(|i| {
            let lp = if binomial {
                binomial_log_likelihood(&model(), i, summary(n, x))
            } else {
                sequence_log_likelihood(&model(), i, summary(n, x))
            };
            lp.expect("box in range").prob()
        })
        .collect()
}

fn oracle_n16() -> Outcome {
    let prior = uniform();
    let mut fastest = Duration::MAX;
    let mut result = None;
    for _ in 0..20 {
        let start = Instant::now();
        let post = posterior_from_summary(&prior, summary(16, 0)).map_err(|e| e.to_string())?;
        let pred = post.predictive_white();
        fastest = fastest.min(start.elapsed());
        result = Some((post, pred));
    }
    let (post, pred) = result.unwrap();
    check_rel(
        "posterior",
        &post.probabilities(),
        &[
            9.723559e-01,
            2.736939e-02,
            2.743123e-04,
            4.176237e-07,
            6.372432e-12,
            0.0,
        ],
        1e-6,
    )?;
    ensure!(
        (pred - 0.005583852).abs() <= 1e-8,
        "predictive {pred}, expected 0.005583852"
    );
    ensure!(fastest < Duration::from_millis(1), "took {fastest:?}");
    Ok(())
}

fn oracle_n17() -> Outcome {
    let post = posterior_from_summary(&uniform(), summary(17, 1)).map_err(|e| e.to_string())?;
    check_rel(
        "posterior",
        &post.probabilities(),
        &[
            0.0,
            9.803047e-01,
            1.965040e-02,
            4.487479e-05,
            9.129799e-10,
            0.0,
        ],
        1e-6,
    )?;
    let pred = post.predictive_white();
    ensure!(
        (pred - 0.203948).abs() <= 1e-6,
        "predictive {pred}, expected 0.203948"
    );
    let bin = likelihood_row(17, 1, 1..5, true);
    let seq = likelihood_row(17, 1, 1..5, false);
    check_rel(
        "binomial",
        &bin,
        &[9.570149e-02, 1.918355e-03, 4.380867e-06, 8.912896e-11],
        1e-6,
    )?;
    check_rel(
        "sequence",
        &seq,
        &[5.629500e-03, 1.128444e-04, 2.576980e-07, 5.242880e-12],
        1e-6,
    )?;
    for (b, s) in bin.iter().zip(&seq) {
        ensure!(rel_err(b / s, 17.0) <= 1e-10, "row ratio {}", b / s);
    }
    Ok(())
}

fn round_sig2(v: f64) -> f64 {
    let scale = 10f64.powi(v.log10().floor() as i32 - 1);
    (v / scale).round() * scale
}

fn oracle_n100_x18() -> Outcome {
    let post = posterior_from_summary(&uniform(), summary(100, 18)).map_err(|e| e.to_string())?;
    check_rel(
        "posterior",
        &post.probabilities(),
        &[
            0.0,
            9.999851e-01,
            1.491273e-05,
            8.011548e-17,
            2.938692e-39,
            0.0,
        ],
        1e-6,
    )?;
    check_rel(
        "sequence",
        &likelihood_row(100, 18, 1..5, false),
        &[2.964277e-21, 4.420612e-26, 2.374881e-37, 8.711229e-60],
        1e-6,
    )?;
    for (j, printed) in [(2, 6.7e4), (3, 1.2e16), (4, 3.4e38)] {
        let odds = log_bayes_factor(&model(), 1, j, summary(100, 18))
            .map_err(|e| e.to_string())?
            .exp();
        let shown = round_sig2(odds);
        ensure!(
            rel_err(shown, printed) <= 0.01,
            "B1:B{j} = {odds:e} shows as {shown:e}, printed {printed:e}"
        );
        let half_unit = 0.05 * 10f64.powi(printed.log10().floor() as i32);
        ensure!(
            (odds - printed).abs() <= half_unit,
            "B1:B{j} = {odds:e} does not round to {printed:e}"
        );
    }
    Ok(())
}

fn oracle_100_blacks() -> Outcome {
    let s = summary(100, 0);
    let post = posterior_from_summary(&uniform(), s).map_err(|e| e.to_string())?;
    let p = post.probabilities();
    check_rel(
        "posterior[1..]",
        &p[1..],
        &[2.037036e-10, 6.533186e-23, 1.606938e-40, 1.267651e-70, 0.0],
        1e-5,
    )?;
    ensure!(
        (1.0 - p[0] - 2.037036e-10).abs() < 1e-15,
        "posterior[0] = {}",
        p[0]
    );
    let pred = post.predictive_white();
    ensure!(
        rel_err(pred, 4e-11) <= 0.02,
        "predictive {pred:e}, expected 4e-11 within 2%"
    );
    ensure!(
        (pred - 4.07e-11).abs() < 0.005e-11,
        "predictive {pred:e} does not read 4.07e-11"
    );
    let laplace = laplace_rule(s);
    ensure!(laplace == 1.0 / 102.0, "misused Laplace {laplace}");
    Ok(())
}

fn oracle_gaussian() -> Outcome {
    for (v, want) in [(1.479427401471, 1.34e-13), (-0.762658301757, 2.98e-13)] {
        let got = gaussian_tiny_chance(v, 12).map_err(|e| e.to_string())?;
        ensure!(
            rel_err(got, want) <= 0.01,
            "v = {v}: {got:e}, expected {want:e}"
        );
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let model = model();
    let prior = uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut shuffles = 0;
    for k in 0..200u64 {
        let index = (k % model.boxes() as u64) as usize;
        let len = rng.random_range(0..=1000usize);
        let seq = generate(&model, index, len, 1000 + k).map_err(|e| e.to_string())?;
        let batch = posterior_from_summary(&prior, seq.summary()).map_err(|e| e.to_string())?;
        let batch_p = batch.probabilities();

        let mut post = prior.clone();
        let mut excluded = vec![false; model.boxes()];
        let (mut black, mut white) = (false, false);
        for (step, &c) in seq.draws().iter().enumerate() {
            post = post.observe(c).map_err(|e| e.to_string())?;
            match c {
                Color::Black => black = true,
                Color::White => white = true,
            }
            for (i, ex) in excluded.iter_mut().enumerate() {
                if *ex {
                    ensure!(post.is_excluded(i), "seq {k} step {step}: box {i} revived");
                }
                *ex = post.is_excluded(i);
            }
            if black && white {
                let pred = post.predictive();
                ensure!(
                    pred.strictly_above(0.2) && pred.strictly_below(0.8),
                    "seq {k} step {step}: predictive {} outside (0.2, 0.8)",
                    pred.value
                );
            }
        }

        for p in [&post, &batch] {
            let err = p.normalization_error();
            ensure!(err <= 1e-12, "seq {k}: normalization error {err:e}");
        }
        for (i, (a, b)) in post.probabilities().iter().zip(&batch_p).enumerate() {
            ensure!(
                (a - b).abs() <= 1e-9,
                "seq {k} box {i}: fold {a:e} vs batch {b:e}"
            );
        }

        if shuffles < 50 {
            let mut draws = seq.draws().to_vec();
            draws.shuffle(&mut rng);
            let shuffled = prior.observe_all(&draws).map_err(|e| e.to_string())?;
            for (i, (a, b)) in shuffled.probabilities().iter().zip(&batch_p).enumerate() {
                ensure!(
                    (a - b).abs() <= 1e-9,
                    "seq {k} shuffled, box {i}: {a:e} vs {b:e}"
                );
            }
            shuffles += 1;
        }

        let s = seq.summary();
        let ln_c: f64 = (1..=s.whites())
            .map(|j| ((s.n() - s.whites() + j) as f64 / j as f64).ln())
            .sum();
        for i in 0..model.boxes() {
            let bin = binomial_log_likelihood(&model, i, s).map_err(|e| e.to_string())?;
            let sq = sequence_log_likelihood(&model, i, s).map_err(|e| e.to_string())?;
            if sq.is_impossible() {
                ensure!(
                    bin.is_impossible(),
                    "seq {k} box {i}: binomial possible, sequence not"
                );
                continue;
            }
            let dev = (bin.ln() - sq.ln() - ln_c).exp_m1().abs();
            ensure!(
                dev <= 1e-10,
                "seq {k} box {i}: binomial/sequence off C(n,x) by {dev:e}"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "suite took {elapsed:?}");
    Ok(())
}

fn approximation_convergence() -> Outcome {
    let report = approximation_report(&model(), 100).map_err(|e| e.to_string())?;
    let dev = |n: usize| report.rows[n].boxes[1].deviation().abs();
    ensure!(dev(100) < 1e-9, "deviation at n=100 is {:e}", dev(100));
    for n in 11..=100 {
        ensure!(
            dev(n) < dev(n - 1),
            "deviation rises at n={n}: {:e} after {:e}",
            dev(n),
            dev(n - 1)
        );
    }
    Ok(())
}

fn sixbox(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sixbox"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "sixbox {} failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path_str(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn figure_shape() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for seed in [20160715u64, 1, 2, 3, 4] {
        let file = dir.path().join(format!("b1_{seed}.txt"));
        let out = dir.path().join(format!("out_{seed}"));
        let (file_s, out_s) = (path_str(&file), path_str(&out));
        sixbox(&[
            "generate",
            "--box",
            "1",
            "-n",
            "1000",
            "--seed",
            &seed.to_string(),
            "--out",
            &file_s,
        ])?;
        sixbox(&["analyze", &file_s, "--out-dir", &out_s, "--format", "json"])?;
        let text =
            std::fs::read_to_string(out.join("summary_full.json")).map_err(|e| e.to_string())?;
        let state: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;

        ensure!(state["n"] == 1000, "seed {seed}: n = {}", state["n"]);
        ensure!(state["mode"] == 1, "seed {seed}: mode B{}", state["mode"]);
        let value = state["predictive_white"]
            .as_f64()
            .ok_or("missing predictive")?;
        let log10_excess = state["log10_predictive_excess"]
            .as_f64()
            .ok_or_else(|| format!("seed {seed}: predictive not above 1/5"))?;
        ensure!(
            (0.2..0.201).contains(&value),
            "seed {seed}: predictive {value}"
        );
        ensure!(log10_excess < -3.0, "seed {seed}: excess 1e{log10_excess}");
    }
    Ok(())
}

async fn call(
    app: &Router,
    method: Method,
    path: &str,
    body: Option<Value>,
) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(path);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (
        status,
        serde_json::from_slice(&bytes).unwrap_or(Value::Null),
    )
}

async fn service_end_to_end() -> Outcome {
    let app = router(Arc::new(SessionStore::new(model())), None);

    let (status, created) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({"mode": "chosen-secret", "box": 1})),
    )
    .await;
    ensure!(status == StatusCode::CREATED, "create returned {status}");
    let id = created["id"].as_str().ok_or("no id")?.to_string();
    for color in std::iter::repeat_n("B", 16).chain(["W"]) {
        let path = format!("/sessions/{id}/observe");
        let (status, _) = call(&app, Method::POST, &path, Some(json!({"color": color}))).await;
        ensure!(status == StatusCode::OK, "observe returned {status}");
    }
    let (_, state) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
    let pred = state["predictiveWhite"]
        .as_f64()
        .ok_or("no predictiveWhite")?;
    ensure!((pred - 0.203948).abs() <= 1e-6, "predictive {pred}");
    ensure!(
        state.get("secretBox").is_none(),
        "secret visible before reveal"
    );
    let (_, revealed) = call(&app, Method::POST, &format!("/sessions/{id}/reveal"), None).await;
    ensure!(
        revealed["secretBox"] == 1,
        "revealed {}",
        revealed["secretBox"]
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for script in 0..100 {
        let (_, created) = call(
            &app,
            Method::POST,
            "/sessions",
            Some(json!({"mode": "no-secret"})),
        )
        .await;
        let id = created["id"].as_str().ok_or("no id")?.to_string();
        let mut history: Vec<Color> = Vec::new();
        for _ in 0..rng.random_range(1..=40) {
            if rng.random_bool(0.3) {
                let (status, _) =
                    call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
                let want = if history.pop().is_some() {
                    StatusCode::OK
                } else {
                    StatusCode::CONFLICT
                };
                ensure!(
                    status == want,
                    "script {script}: undo returned {status}, expected {want}"
                );
            } else {
                let color = if rng.random_bool(0.4) {
                    Color::White
                } else {
                    Color::Black
                };
                let path = format!("/sessions/{id}/observe");
                let body = json!({"color": color.letter().to_string()});
                let (status, _) = call(&app, Method::POST, &path, Some(body)).await;
                ensure!(
                    status == StatusCode::OK,
                    "script {script}: observe returned {status}"
                );
                history.push(color);
            }
        }
        let (_, state) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
        let reference = uniform().observe_all(&history).map_err(|e| e.to_string())?;
        let served: Vec<f64> = state["posterior"]
            .as_array()
            .ok_or("no posterior")?
            .iter()
            .map(|v| v.as_f64().unwrap_or(f64::NAN))
            .collect();
        ensure!(
            served.len() == model().boxes(),
            "script {script}: {} posterior entries",
            served.len()
        );
        for (i, (&got, want)) in served.iter().zip(reference.probabilities()).enumerate() {
            let ok = if want < 1e-300 {
                got <= 1e-300
            } else {
                rel_err(got, want) <= 1e-12
            };
            ensure!(
                ok,
                "script {script} box {i}: served {got:e}, reference {want:e}"
            );
        }
        ensure!(
            state["historyLength"] == history.len(),
            "script {script}: history length"
        );
        let pred = state["predictiveWhite"]
            .as_f64()
            .ok_or("no predictiveWhite")?;
        let want = reference.predictive_white();
        ensure!(
            rel_err(pred, want) <= 1e-12 || pred == want,
            "script {script}: predictive {pred} vs {want}"
        );
    }
    Ok(())
}

fn main() {
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    let criteria: Vec<Criterion> = vec![
        ("oracle n=16, x=0", Box::new(oracle_n16)),
        ("oracle n=17, x=1", Box::new(oracle_n17)),
        ("oracle n=100, x=18", Box::new(oracle_n100_x18)),
        ("oracle 100 blacks", Box::new(oracle_100_blacks)),
        ("oracle gaussian tiny chance", Box::new(oracle_gaussian)),
        ("property suite", Box::new(property_suite)),
        (
            "approximation convergence",
            Box::new(approximation_convergence),
        ),
        ("figure shape, 1000 draws from B1", Box::new(figure_shape)),
        (
            "service end to end",
            Box::new(move || runtime.block_on(service_end_to_end())),
        ),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
