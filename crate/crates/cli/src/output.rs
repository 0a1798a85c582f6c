use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// A row type with a fixed column order.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Fixed formatting with 10 significant digits, trailing zeros trimmed;
/// scientific notation outside `[1e-5, 1e10)`.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..10).contains(&exp) {
        let s = format!("{v:.9e}");
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (9 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    trim_zeros(&s).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Progress goes to stdout behind `# ` unless it would corrupt JSON on stdout.
pub fn progress(cfg: &RunConfig, msg: &str) {
    if cfg.out.is_some() || cfg.format == Format::Csv {
        println!("# {msg}");
    }
}

pub fn write_rows<R: Row>(cfg: &RunConfig, rows: &[R]) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
            emit(cfg.format, rows, file).map_err(|e| CliError::Io(path.display().to_string(), e))
        }
        None => emit(cfg.format, rows, io::stdout().lock()).map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

fn emit<R: Row, W: Write>(format: Format, rows: &[R], mut out: W) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(R::HEADER)?;
            for row in rows {
                w.write_record(row.fields())?;
            }
            w.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
            out.flush()
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub family: &'static str,
    pub n: usize,
    pub x: f64,
    pub d_n: f64,
    pub d_exact: f64,
    pub lower_band: f64,
    pub solver_iters: usize,
    pub feasibility_residual: f64,
    pub oracle_lower_bound: f64,
}

impl Row for CurveRow {
    const HEADER: &'static [&'static str] = &[
        "family",
        "n",
        "x",
        "d_n",
        "d_exact",
        "lower_band",
        "solver_iters",
        "feasibility_residual",
        "oracle_lower_bound",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.to_string(),
            self.n.to_string(),
            fmt_real(self.x),
            fmt_real(self.d_n),
            fmt_real(self.d_exact),
            fmt_real(self.lower_band),
            self.solver_iters.to_string(),
            fmt_real(self.feasibility_residual),
            fmt_real(self.oracle_lower_bound),
        ]
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub family: &'static str,
    pub n: usize,
    pub gamma_n: f64,
    pub gamma_prime_n: f64,
    pub gh_upper_bound: f64,
}

impl Row for BoundsRow {
    const HEADER: &'static [&'static str] = &["family", "n", "gamma_n", "gamma_prime_n", "gh_upper_bound"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.to_string(),
            self.n.to_string(),
            fmt_real(self.gamma_n),
            fmt_real(self.gamma_prime_n),
            fmt_real(self.gh_upper_bound),
        ]
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct FuzzyRow {
    pub n: usize,
    pub theta: f64,
    pub d_n: f64,
    pub d_round: f64,
    pub gamma_sphere: f64,
    pub quant_error_ratio: f64,
}

impl Row for FuzzyRow {
    const HEADER: &'static [&'static str] = &["n", "theta", "d_n", "d_round", "gamma_sphere", "quant_error_ratio"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_real(self.theta),
            fmt_real(self.d_n),
            fmt_real(self.d_round),
            fmt_real(self.gamma_sphere),
            fmt_real(self.quant_error_ratio),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(fmt_real(std::f64::consts::PI), "3.141592654");
        assert_eq!(fmt_real(2.0), "2");
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-1.27324), "-1.27324");
        assert_eq!(fmt_real(0.000123456789012), "0.000123456789");
        assert_eq!(fmt_real(1.5e-7), "1.5e-7");
        assert_eq!(fmt_real(123456.7890123), "123456.789");
        assert_eq!(fmt_real(9.9999999999), "10");
    }

    #[test]
    fn formatted_values_parse_back_to_ten_digits() {
        for v in [0.4948079185, 1e-12, 7.123456789e12, -0.93417, 2.0 / 3.0] {
            let back: f64 = fmt_real(v).parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-9, "{v}");
        }
    }
}
