//! File emission: trajectory/diagnostics CSV and summary JSON.
//!
//! Every floating-point value is printed with 17 significant digits
//! (`{:.16e}`), which round-trips `f64` bit-exactly through parsing;
//! absent values (e.g. energy outside the distance window) appear as
//! `NaN`. Identical runs therefore produce byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use flock_dynamics::Trajectory;

use crate::exec::RunSummary;

/// Column order of a trajectory CSV.
pub const TRAJECTORY_HEADER: &str = "t,agent_id,pos_x,pos_y,vel_x,vel_y,acc_x,acc_y";
/// Column order of a diagnostics CSV.
pub const DIAGNOSTICS_HEADER: &str =
    "t,energy,dispersion,mean_vel_x,mean_vel_y,min_sq_dist,max_sq_dist,avg_distance";
/// Column order of the four-law comparison CSV.
pub const COMPARISON_HEADER: &str = "t,proposed,model1,model2,model3,sqrt_d0,sqrt_d1";

/// Formats one value with 17 significant digits (bit-exact round trip).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A failure to parse an emitted CSV back.
#[derive(Debug, thiserror::Error)]
#[error("line {line_no}: {message}")]
pub struct ParseError {
    /// 1-based line number (line 1 is the header).
    pub line_no: usize,
    /// What was wrong.
    pub message: String,
}

fn parse_fields<const N: usize>(line_no: usize, line: &str) -> Result<[f64; N], ParseError> {
    let mut out = [0.0; N];
    let mut fields = line.split(',');
    for (i, slot) in out.iter_mut().enumerate() {
        let raw = fields.next().ok_or_else(|| ParseError {
            line_no,
            message: format!("expected {N} fields, found {i}"),
        })?;
        *slot = raw.parse::<f64>().map_err(|_| ParseError {
            line_no,
            message: format!("field {} is not a number: `{raw}`", i + 1),
        })?;
    }
    if fields.next().is_some() {
        return Err(ParseError {
            line_no,
            message: format!("more than {N} fields"),
        });
    }
    Ok(out)
}

fn check_header(text: &str, expected: &str) -> Result<(), ParseError> {
    match text.lines().next() {
        Some(h) if h == expected => Ok(()),
        other => Err(ParseError {
            line_no: 1,
            message: format!("expected header `{expected}`, found `{}`", other.unwrap_or("")),
        }),
    }
}

/// One parsed trajectory row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    /// Time stamp.
    pub t: f64,
    /// Agent index within the flock.
    pub agent_id: usize,
    /// Position components.
    pub pos: [f64; 2],
    /// Velocity components.
    pub vel: [f64; 2],
    /// Commanded acceleration components.
    pub acc: [f64; 2],
}

/// Writes a trajectory CSV: one row per (step, agent).
///
/// # Errors
///
/// Propagates any I/O failure.
pub fn write_trajectory_csv(path: &Path, trajectory: &Trajectory) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for step in &trajectory.steps {
        let t = fmt_f64(step.state.time);
        for (id, (agent, acc)) in step.state.agents.iter().zip(&step.controls).enumerate() {
            writeln!(
                w,
                "{t},{id},{},{},{},{},{},{}",
                fmt_f64(agent.position.x()),
                fmt_f64(agent.position.y()),
                fmt_f64(agent.velocity.x()),
                fmt_f64(agent.velocity.y()),
                fmt_f64(acc.x()),
                fmt_f64(acc.y()),
            )?;
        }
    }
    w.flush()
}

/// Parses a trajectory CSV produced by [`write_trajectory_csv`].
///
/// # Errors
///
/// Returns the first malformed line.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<TrajectoryRow>, ParseError> {
    check_header(text, TRAJECTORY_HEADER)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let f: [f64; 8] = parse_fields(i + 1, line)?;
        rows.push(TrajectoryRow {
            t: f[0],
            agent_id: f[1] as usize,
            pos: [f[2], f[3]],
            vel: [f[4], f[5]],
            acc: [f[6], f[7]],
        });
    }
    Ok(rows)
}

/// One parsed diagnostics row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    /// Time stamp.
    pub t: f64,
    /// Energy (`NaN` outside the distance window).
    pub energy: f64,
    /// Velocity-dispersion scalar.
    pub dispersion: f64,
    /// Mean velocity components.
    pub mean_vel: [f64; 2],
    /// Smallest pairwise squared distance.
    pub min_sq_dist: f64,
    /// Largest pairwise squared distance.
    pub max_sq_dist: f64,
    /// Mean pairwise Euclidean distance.
    pub avg_distance: f64,
}

/// Writes a diagnostics CSV: one row per step.
///
/// # Errors
///
/// Propagates any I/O failure.
pub fn write_diagnostics_csv(path: &Path, trajectory: &Trajectory) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{DIAGNOSTICS_HEADER}")?;
    for r in trajectory.records() {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(r.time),
            fmt_f64(r.energy),
            fmt_f64(r.dispersion),
            fmt_f64(r.mean_velocity.x()),
            fmt_f64(r.mean_velocity.y()),
            fmt_f64(r.min_sq_dist),
            fmt_f64(r.max_sq_dist),
            fmt_f64(r.avg_distance),
        )?;
    }
    w.flush()
}

/// Parses a diagnostics CSV produced by [`write_diagnostics_csv`].
///
/// # Errors
///
/// Returns the first malformed line.
pub fn parse_diagnostics_csv(text: &str) -> Result<Vec<DiagnosticsRow>, ParseError> {
    check_header(text, DIAGNOSTICS_HEADER)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let f: [f64; 8] = parse_fields(i + 1, line)?;
        rows.push(DiagnosticsRow {
            t: f[0],
            energy: f[1],
            dispersion: f[2],
            mean_vel: [f[3], f[4]],
            min_sq_dist: f[5],
            max_sq_dist: f[6],
            avg_distance: f[7],
        });
    }
    Ok(rows)
}

/// Writes the four-law average-distance comparison.
///
/// `series` holds the per-law average-distance samples in law order
/// (proposed, model1, model2, model3); rows extend to the longest series
/// and absent samples (runs halted early) are written as `NaN`. The last
/// two columns carry the window edges `sqrt(d0)`, `sqrt(d1)` for
/// plotting.
///
/// # Errors
///
/// Propagates any I/O failure.
pub fn write_comparison_csv(
    path: &Path,
    dt: f64,
    series: &[Vec<f64>; 4],
    sqrt_d0: f64,
    sqrt_d1: f64,
) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{COMPARISON_HEADER}")?;
    let rows = series.iter().map(Vec::len).max().unwrap_or(0);
    let (lo, hi) = (fmt_f64(sqrt_d0), fmt_f64(sqrt_d1));
    for i in 0..rows {
        write!(w, "{}", fmt_f64(i as f64 * dt))?;
        for s in series {
            let v = s.get(i).copied().unwrap_or(f64::NAN);
            write!(w, ",{}", fmt_f64(v))?;
        }
        writeln!(w, ",{lo},{hi}")?;
    }
    w.flush()
}

/// Writes one run summary as pretty-printed JSON.
///
/// # Errors
///
/// Propagates any I/O failure.
pub fn write_summary_json(path: &Path, summary: &RunSummary) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    std::fs::write(path, text)
}

/// Writes the four comparison summaries as one pretty-printed JSON array.
///
/// # Errors
///
/// Propagates any I/O failure.
pub fn write_compare_summary_json(path: &Path, summaries: &[RunSummary]) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(summaries).expect("summaries serialize");
    text.push('\n');
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digit_format_round_trips_exactly() {
        let values = [
            0.0,
            -0.0,
            1.0,
            0.1,
            -2.9873353291575357,
            1.0246950765959598e-300,
            f64::MIN_POSITIVE,
            f64::MAX,
            std::f64::consts::PI,
        ];
        for v in values {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> `{s}` -> {back}");
        }
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert!(fmt_f64(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn malformed_rows_are_located() {
        let text = format!("{TRAJECTORY_HEADER}\n1.0,0,0,0,0,0,0\n");
        let err = parse_trajectory_csv(&text).unwrap_err();
        assert_eq!(err.line_no, 2);
        let text = format!("{TRAJECTORY_HEADER}\n1.0,0,0,0,0,0,0,0,9\n");
        assert!(parse_trajectory_csv(&text).is_err());
        let err = parse_diagnostics_csv("wrong,header\n").unwrap_err();
        assert_eq!(err.line_no, 1);
    }
}
