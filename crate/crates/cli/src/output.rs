//! CSV and JSON writers. Reals are written with 17 significant digits so a
//! re-parse reproduces every value bit for bit.

use std::fmt::Write as _;

use qhm_core::Complex64;
use serde::Serialize;

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal CSV table with a mandatory header row.
pub struct Csv {
    columns: usize,
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { columns: header.len(), text }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn complex_cells(z: Complex64) -> [String; 2] {
    [real(z.re), real(z.im)]
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output values serialize");
    s.push('\n');
    s
}

/// Fixed metadata identifying the producer; carries no timestamps.
#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
}

impl RunInfo {
    pub fn new(seed: u64) -> Self {
        Self { tool: "qhm", version: env!("CARGO_PKG_VERSION"), seed }
    }
}

/// One pass/fail line of a verification.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.to_string(), value, bound, pass: value <= bound }
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Self { name: name.to_string(), value: if ok { 0.0 } else { 1.0 }, bound: 0.0, pass: ok }
    }

    pub fn line(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} {}: {:.3e} (bound {:.1e})", if self.pass { "PASS" } else { "FAIL" }, self.name, self.value, self.bound);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip_bitwise() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, std::f64::consts::TAU, f64::MIN_POSITIVE, -0.0, 1e308] {
            let back: f64 = real(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut csv = Csv::new(&["t", "re_x"]);
        csv.row(&[real(0.0), real(1.5)]);
        assert_eq!(csv.finish(), "t,re_x\n0.0000000000000000e0,1.5000000000000000e0\n");
    }
}
