//! Subcommand bodies. Each returns the text meant for standard output, so
//! they can be exercised without spawning the binary.

use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use serde_json::json;

use sixbox_core::analysis::{
    anatomy, approximation_report, final_state, gaussian_tiny_chance, odds_table, trajectory,
};
use sixbox_core::report::fmt_num;
use sixbox_core::{
    generate as generate_sequence, read_sequence, split_runs, write_sequence, Format,
    ObservationSequence, Report, SequenceSummary,
};
use sixbox_service::SessionStore;

use crate::config::Config;

pub fn generate(cfg: &Config, index: usize, n: usize, out: &Path) -> Result<String> {
    let seq = generate_sequence(&cfg.model, index, n, cfg.seed)?;
    write_sequence(&seq, out)?;
    Ok(String::new())
}

struct Segment<'a> {
    label: String,
    first_step: usize,
    seq: &'a ObservationSequence,
}

/// Trajectory and final-state files for the whole sequence and for each run.
pub fn analyze(cfg: &Config, input: &Path, out_dir: &Path) -> Result<String> {
    let seq = read_sequence(input)?;
    if seq.is_empty() {
        // a header-only file is valid but has nothing to analyze
        anyhow::bail!("{}: file contains no draws", input.display());
    }
    let prior = cfg.prior.build(cfg.model)?;
    let runs = split_runs(&seq, cfg.run_length)?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;

    let width = runs.len().to_string().len().max(3);
    let mut segments = vec![Segment {
        label: "full".into(),
        first_step: 1,
        seq: &seq,
    }];
    for (k, run) in runs.runs().iter().enumerate() {
        segments.push(Segment {
            label: format!("run_{:0width$}", k + 1),
            first_step: runs.start_of(k) + 1,
            seq: run,
        });
    }

    let ext = cfg.format.extension();
    let mut overview = Vec::new();
    for seg in &segments {
        let points = trajectory(seg.seq, &prior)?;
        let state = final_state(seg.seq, &prior)?;
        write(
            out_dir.join(format!("trajectory_{}.{ext}", seg.label)),
            points.render(cfg.format),
        )?;
        write(
            out_dir.join(format!("summary_{}.{ext}", seg.label)),
            state.render(cfg.format),
        )?;
        overview.push((seg, state));
    }

    Ok(match cfg.format {
        Format::Csv => {
            let mut s = String::from("segment,first_step,draws,whites,mode,predictive_white\n");
            for (seg, st) in &overview {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    seg.label,
                    seg.first_step,
                    st.summary.n(),
                    st.summary.whites(),
                    st.mode,
                    fmt_num(st.predictive.value)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = overview
                .iter()
                .map(|(seg, st)| {
                    json!({
                        "segment": seg.label,
                        "first_step": seg.first_step,
                        "draws": st.summary.n(),
                        "whites": st.summary.whites(),
                        "mode": st.mode,
                        "predictive_white": st.predictive.value,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
    })
}

fn write(path: PathBuf, contents: String) -> Result<()> {
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn anatomy_table(cfg: &Config, n: u64, x: u64) -> Result<String> {
    let summary = SequenceSummary::new(n, x)?;
    Ok(anatomy(summary, &cfg.model).render(cfg.format))
}

pub fn odds(cfg: &Config, n: u64, x: u64) -> Result<String> {
    let summary = SequenceSummary::new(n, x)?;
    Ok(odds_table(summary, &cfg.model).render(cfg.format))
}

pub fn approx(cfg: &Config, max_n: u64) -> Result<String> {
    Ok(approximation_report(&cfg.model, max_n)?.render(cfg.format))
}

pub fn gaussian(cfg: &Config, value: f64, decimals: u32) -> Result<String> {
    let p = gaussian_tiny_chance(value, decimals)?;
    Ok(match cfg.format {
        Format::Csv => format!(
            "value,decimals,probability\n{value},{decimals},{}\n",
            fmt_num(p)
        ),
        Format::Json => {
            serde_json::to_string_pretty(
                &json!({"value": value, "decimals": decimals, "probability": p}),
            )? + "\n"
        }
    })
}

pub fn serve(
    cfg: &Config,
    host: IpAddr,
    port: u16,
    static_dir: Option<PathBuf>,
    journal: Option<PathBuf>,
) -> Result<()> {
    let store = match journal {
        Some(path) => SessionStore::with_journal(cfg.model, &path)?,
        None => SessionStore::new(cfg.model),
    };
    let addr = SocketAddr::new(host, port);
    tokio::runtime::Runtime::new()?
        .block_on(sixbox_service::serve(addr, Arc::new(store), static_dir))
        .with_context(|| format!("serving on {addr}"))
}
