//! Serializable command reports.

use serde::{Serialize, Serializer};

/// Float emitted with 15 significant digits in machine output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let rounded: f64 = format!("{:.14e}", self.0)
            .parse()
            .expect("formatted float parses");
        s.serialize_f64(rounded)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Source {
    pub kind: &'static str,
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcurrenceReport {
    pub command: &'static str,
    pub source: Source,
    pub layout: Vec<usize>,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Num>,
    pub total_variance: Num,
    pub v_min: Num,
    pub v_max: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservableMean {
    pub party: usize,
    pub index: usize,
    pub mean: Num,
    pub variance: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub command: &'static str,
    pub source: Source,
    pub layout: Vec<usize>,
    pub shots: usize,
    pub seed: u64,
    pub bias_corrected: bool,
    pub estimate: Num,
    pub std_error: Option<Num>,
    pub at_boundary: bool,
    pub total_variance: Num,
    pub v_min: Num,
    pub v_max: Num,
    pub exact: Num,
    pub observables: Vec<ObservableMean>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservableSkew {
    pub party: usize,
    pub index: usize,
    pub skew: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewReport {
    pub command: &'static str,
    pub source: Source,
    pub layout: Vec<usize>,
    pub observables: Vec<ObservableSkew>,
    pub total: Num,
    pub heuristic_bound: Num,
    pub heuristic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub shots: usize,
    pub median_abs_error: Num,
    pub mean_std_error: Option<Num>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub family: String,
    pub layout: Vec<usize>,
    pub seeds: u64,
    pub base_seed: u64,
    pub bias_corrected: bool,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Comma-delimited table with a header line.
    pub fn to_table(&self) -> String {
        let mut out = String::from("shots,median_abs_error,mean_std_error\n");
        for r in &self.rows {
            let se = r
                .mean_std_error
                .map_or_else(|| "NA".to_string(), |n| format!("{:.6e}", n.0));
            out.push_str(&format!(
                "{},{:.6e},{}\n",
                r.shots, r.median_abs_error.0, se
            ));
        }
        out
    }
}
