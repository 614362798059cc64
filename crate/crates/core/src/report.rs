//! CSV and JSON renderings of analysis results.
//!
//! CSV tables have a header row and write numbers in scientific notation
//! with ten significant digits; exact zeros are written as `0`, excluded
//! log values as `-inf`, absent values as `NA`. Quantities that may leave
//! `f64` range (odds, tiny probabilities) are formatted from their logs.
//! JSON output mirrors the same records.

use std::str::FromStr;

use serde_json::{json, Value};

use crate::analysis::{
    ApproximationReport, FinalState, LikelihoodAnatomy, OddsTable, TrajectoryPoint,
};
use crate::logprob::LogProb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown output format {other:?} (expected csv or json)"
            )),
        }
    }
}

pub trait Report {
    fn csv(&self) -> String;
    fn json(&self) -> Value;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Scientific notation with ten significant digits.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.is_nan() {
        "NA".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.9e}")
    }
}

/// Formats `exp(ln)` without passing through `f64`, so `1e-400` or `1e+900`
/// print correctly.
pub fn fmt_ln(ln: f64) -> String {
    if ln == f64::NEG_INFINITY {
        return "0".into();
    }
    if ln == f64::INFINITY {
        return "inf".into();
    }
    let v = ln.exp();
    if v.is_normal() {
        return fmt_num(v);
    }
    let l10 = ln / std::f64::consts::LN_10;
    let mut exp = l10.floor();
    let mut mant = 10f64.powf(l10 - exp);
    if format!("{mant:.9}").starts_with("10") {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{mant:.9}e{exp}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_num)
}

fn log10_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-inf".into(), |x| format!("{x:.9}"))
}

fn jnum(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn jlog10(w: LogProb) -> Value {
    if w.is_impossible() {
        Value::Null
    } else {
        jnum(w.log10())
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

fn log10_excess(ln_excess: f64) -> Option<f64> {
    (ln_excess > f64::NEG_INFINITY).then(|| ln_excess / std::f64::consts::LN_10)
}

impl Report for [TrajectoryPoint] {
    fn csv(&self) -> String {
        let boxes = self.first().map_or(0, |p| p.belief.model().boxes());
        let mut header = vec![
            "step".to_string(),
            "observed".into(),
            "n".into(),
            "x".into(),
        ];
        header.extend((0..boxes).map(|i| format!("p_B{i}")));
        header.extend((0..boxes).map(|i| format!("log10_p_B{i}")));
        header.extend(
            [
                "predictive_white",
                "log10_predictive_excess",
                "frequency_white",
                "misused_laplace_white",
            ]
            .map(String::from),
        );
        let mut rows = vec![header];
        for p in self {
            let mut r = vec![
                p.step.to_string(),
                p.observed.code().to_string(),
                p.summary.n().to_string(),
                p.summary.whites().to_string(),
            ];
            r.extend(p.posterior().into_iter().map(fmt_num));
            r.extend(p.log10_posterior().into_iter().map(log10_cell));
            r.push(fmt_num(p.predictive.value));
            r.push(log10_cell(log10_excess(p.predictive.ln_excess)));
            r.push(opt(p.frequency_white));
            r.push(fmt_num(p.laplace_white));
            rows.push(r);
        }
        csv_string(rows)
    }

    fn json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|p| {
                    json!({
                        "step": p.step,
                        "observed": p.observed.code(),
                        "n": p.summary.n(),
                        "x": p.summary.whites(),
                        "posterior": p.posterior().into_iter().map(jnum).collect::<Vec<_>>(),
                        "log10_posterior": p.belief.log_weights().iter().map(|w| jlog10(*w)).collect::<Vec<_>>(),
                        "predictive_white": jnum(p.predictive.value),
                        "log10_predictive_excess": log10_excess(p.predictive.ln_excess).map_or(Value::Null, jnum),
                        "frequency_white": p.frequency_white.map_or(Value::Null, jnum),
                        "misused_laplace_white": jnum(p.laplace_white),
                    })
                })
                .collect(),
        )
    }
}

impl Report for Vec<TrajectoryPoint> {
    fn csv(&self) -> String {
        self.as_slice().csv()
    }

    fn json(&self) -> Value {
        self.as_slice().json()
    }
}

impl Report for LikelihoodAnatomy {
    fn csv(&self) -> String {
        let mut rows = vec![[
            "box",
            "propensity",
            "posterior",
            "binomial_likelihood",
            "sequence_likelihood",
        ]
        .map(String::from)
        .to_vec()];
        for r in &self.rows {
            rows.push(vec![
                r.box_index.to_string(),
                fmt_num(r.propensity),
                fmt_ln(r.posterior.ln()),
                fmt_ln(r.binomial.ln()),
                fmt_ln(r.sequence.ln()),
            ]);
        }
        csv_string(rows)
    }

    fn json(&self) -> Value {
        json!({
            "n": self.summary.n(),
            "x": self.summary.whites(),
            "boxes": self.rows.iter().map(|r| json!({
                "box": r.box_index,
                "propensity": jnum(r.propensity),
                "posterior": jnum(r.posterior.prob()),
                "binomial_likelihood": jnum(r.binomial.prob()),
                "sequence_likelihood": jnum(r.sequence.prob()),
                "log10_sequence_likelihood": jlog10(r.sequence),
            })).collect::<Vec<_>>(),
        })
    }
}

fn odds_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_ln)
}

impl Report for OddsTable {
    fn csv(&self) -> String {
        let k = self.boxes();
        let mut header = vec!["box".to_string()];
        header.extend((0..k).map(|j| format!("vs_B{j}")));
        let mut rows = vec![header];
        for i in 0..k {
            let mut r = vec![i.to_string()];
            r.extend(self.ln_odds[i].iter().map(|v| odds_cell(*v)));
            rows.push(r);
        }
        csv_string(rows)
    }

    fn json(&self) -> Value {
        json!({
            "n": self.summary.n(),
            "x": self.summary.whites(),
            "odds": self.ln_odds.iter().map(|row| row.iter().map(|v| odds_cell(*v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl Report for ApproximationReport {
    fn csv(&self) -> String {
        let k = self.model.last();
        let mut header = vec!["n".to_string()];
        for i in 0..k {
            header.extend([
                format!("exact_B{i}"),
                format!("approx_B{i}"),
                format!("ratio_B{i}"),
            ]);
        }
        header.extend(
            ["exact_predictive", "approx_predictive", "ratio_predictive"].map(String::from),
        );
        let mut rows = vec![header];
        for row in &self.rows {
            let mut r = vec![row.n.to_string()];
            for c in row.boxes.iter().chain(std::iter::once(&row.predictive)) {
                r.extend([
                    fmt_ln(c.ln_exact),
                    fmt_ln(c.ln_approx),
                    format!("{:.15}", c.ratio()),
                ]);
            }
            rows.push(r);
        }
        csv_string(rows)
    }

    fn json(&self) -> Value {
        let cell = |c: &crate::analysis::ApproxCell| {
            json!({
                "exact": jnum(c.exact()),
                "approx": jnum(c.approx()),
                "ratio": jnum(c.ratio()),
                "deviation": jnum(c.deviation()),
            })
        };
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.n,
                        "boxes": row.boxes.iter().map(cell).collect::<Vec<_>>(),
                        "predictive": cell(&row.predictive),
                    })
                })
                .collect(),
        )
    }
}

impl Report for FinalState {
    /// Long layout: `quantity,box,vs_box,value`.
    fn csv(&self) -> String {
        let mut rows = vec![["quantity", "box", "vs_box", "value"]
            .map(String::from)
            .to_vec()];
        let mut push =
            |q: &str, i: String, j: String, v: String| rows.push(vec![q.into(), i, j, v]);
        push(
            "n",
            String::new(),
            String::new(),
            self.summary.n().to_string(),
        );
        push(
            "x",
            String::new(),
            String::new(),
            self.summary.whites().to_string(),
        );
        for (i, w) in self.belief.log_weights().iter().enumerate() {
            push("posterior", i.to_string(), String::new(), fmt_ln(w.ln()));
        }
        push("mode", String::new(), String::new(), self.mode.to_string());
        push(
            "predictive_white",
            String::new(),
            String::new(),
            fmt_num(self.predictive.value),
        );
        push(
            "predictive_excess",
            String::new(),
            String::new(),
            fmt_ln(self.predictive.ln_excess),
        );
        push(
            "frequency_white",
            String::new(),
            String::new(),
            opt(self.frequency_white),
        );
        push(
            "misused_laplace_white",
            String::new(),
            String::new(),
            fmt_num(self.laplace_white),
        );
        for (i, row) in self.odds.ln_odds.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                push("odds", i.to_string(), j.to_string(), odds_cell(*v));
            }
        }
        csv_string(rows)
    }

    fn json(&self) -> Value {
        json!({
            "n": self.summary.n(),
            "x": self.summary.whites(),
            "posterior": self.posterior().into_iter().map(jnum).collect::<Vec<_>>(),
            "log10_posterior": self.belief.log_weights().iter().map(|w| jlog10(*w)).collect::<Vec<_>>(),
            "mode": self.mode,
            "predictive_white": jnum(self.predictive.value),
            "log10_predictive_excess": log10_excess(self.predictive.ln_excess).map_or(Value::Null, jnum),
            "frequency_white": self.frequency_white.map_or(Value::Null, jnum),
            "misused_laplace_white": jnum(self.laplace_white),
            "odds": self.odds.json()["odds"].clone(),
        })
    }
}
