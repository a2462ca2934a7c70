//! Result documents and their JSON, CSV and plain-text renderings.
//!
//! Rationals are always written as `p/q` strings (or `p` for integers).

use std::fmt::Write as _;

use clap::ValueEnum;
use riordan::morphisms::{Failure, HomomorphismReport, MorphismId};
use riordan::{Coefficient, KRiordanArray, Series, TriangularMatrix};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Series {
        trunc: usize,
        coefficients: Vec<String>,
    },
    Matrix {
        trunc: usize,
        size: usize,
        rows: Vec<Vec<String>>,
    },
    Array {
        trunc: usize,
        k: usize,
        g: Vec<String>,
        multipliers: Vec<Vec<String>>,
    },
    Report {
        trunc: usize,
        map: MorphismId,
        trials: usize,
        seed: u64,
        verified: bool,
        failures: Vec<Failure>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorDocument<'a> {
    pub kind: &'static str,
    pub code: i32,
    pub message: &'a str,
}

fn strings(cs: &[Coefficient]) -> Vec<String> {
    cs.iter().map(ToString::to_string).collect()
}

impl Document {
    pub fn series(s: &Series) -> Self {
        Document::Series { trunc: s.truncation(), coefficients: strings(s.coeffs()) }
    }

    pub fn matrix(m: &TriangularMatrix, trunc: usize) -> Self {
        Document::Matrix { trunc, size: m.size(), rows: m.rows().iter().map(|r| strings(r)).collect() }
    }

    pub fn array(d: &KRiordanArray) -> Self {
        Document::Array {
            trunc: d.truncation(),
            k: d.arity(),
            g: strings(d.g().coeffs()),
            multipliers: d.multipliers().iter().map(|m| strings(m.coeffs())).collect(),
        }
    }

    pub fn report(r: HomomorphismReport) -> Self {
        Document::Report {
            trunc: r.truncation,
            map: r.map,
            trials: r.trials,
            seed: r.seed,
            verified: r.verified(),
            failures: r.failures,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Pretty => self.pretty(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let mut row = |fields: Vec<String>| w.write_record(&fields).expect("in-memory write");
        match self {
            Document::Series { coefficients, .. } => {
                row(vec!["n".into(), "coefficient".into()]);
                for (n, c) in coefficients.iter().enumerate() {
                    row(vec![n.to_string(), c.clone()]);
                }
            }
            Document::Matrix { size, rows, .. } => {
                let mut header = vec!["n\\k".to_string()];
                header.extend((0..*size).map(|k| k.to_string()));
                row(header);
                for (n, entries) in rows.iter().enumerate() {
                    let mut fields = vec![n.to_string()];
                    fields.extend(entries.iter().cloned());
                    row(fields);
                }
            }
            Document::Array { trunc, g, multipliers, .. } => {
                let mut header = vec!["component".to_string()];
                header.extend((0..=*trunc).map(|n| n.to_string()));
                row(header);
                let mut fields = vec!["g".to_string()];
                fields.extend(g.iter().cloned());
                row(fields);
                for (i, m) in multipliers.iter().enumerate() {
                    let mut fields = vec![format!("m{}", i + 1)];
                    fields.extend(m.iter().cloned());
                    row(fields);
                }
            }
            Document::Report { trunc, map, trials, seed, verified, failures } => {
                row(["map", "trials", "trunc", "seed", "failures", "verified"].map(String::from).to_vec());
                row(vec![
                    map.to_string(),
                    trials.to_string(),
                    trunc.to_string(),
                    seed.to_string(),
                    failures.len().to_string(),
                    verified.to_string(),
                ]);
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        match self {
            Document::Series { trunc, coefficients } => {
                let s = parse_series(coefficients);
                writeln!(out, "{s} + O(z^{})", trunc + 1).unwrap();
            }
            Document::Matrix { rows, .. } => {
                let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
                for r in rows {
                    let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                    writeln!(out, "{}", line.join(" ")).unwrap();
                }
            }
            Document::Array { trunc, k, g, multipliers } => {
                let name = match k {
                    1 => "Riordan array".to_string(),
                    2 => "Double Riordan array".to_string(),
                    _ => format!("{k}-Riordan array"),
                };
                writeln!(out, "{name}, truncated at z^{trunc}").unwrap();
                writeln!(out, "g  = {}", parse_series(g)).unwrap();
                for (i, m) in multipliers.iter().enumerate() {
                    writeln!(out, "m{} = {}", i + 1, parse_series(m)).unwrap();
                }
            }
            Document::Report { trunc, map, trials, seed, verified, failures } => {
                let status = if *verified { "verified" } else { "FAILED" };
                writeln!(out, "{map}: {status} ({trials} trials, trunc {trunc}, seed {seed})").unwrap();
                for f in failures {
                    let at = f
                        .location
                        .as_ref()
                        .map(|l| format!(" at {}[z^{}]", l.component, l.index))
                        .unwrap_or_default();
                    writeln!(out, "  trial {}: {}{at}: {}", f.trial, f.check, f.detail).unwrap();
                }
            }
        }
        out
    }
}

fn parse_series(coefficients: &[String]) -> Series {
    Series::new(coefficients.iter().map(|c| c.parse().expect("rendered rational")).collect())
}
