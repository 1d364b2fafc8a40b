//! Resource-scaling tables: synthesize a circuit family across a range
//! of field sizes and emit CSV rows plus depth first-differences at
//! doublings of n.

use crate::circuit::ResourceReport;
use crate::field::{FieldError, FieldSpec};
use crate::synth::inv::itoh_tsuji_circuit;
use crate::synth::mul::mastrovito_mul;
use crate::synth::UncomputeMode;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EstimateKind {
    Mul,
    Inv,
}

impl EstimateKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimateKind::Mul => "mul",
            EstimateKind::Inv => "inv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "mul" => Some(EstimateKind::Mul),
            "inv" => Some(EstimateKind::Inv),
            _ => None,
        }
    }
}

pub struct EstimateRow {
    pub kind: EstimateKind,
    pub n: usize,
    pub report: ResourceReport,
}

/// Synthesizes each (kind, n) combination and measures it.
pub fn estimate(
    kinds: &[EstimateKind],
    ns: &[usize],
    mode: UncomputeMode,
) -> Result<Vec<EstimateRow>, FieldError> {
    let mut rows = Vec::new();
    for &kind in kinds {
        for &n in ns {
            let field = FieldSpec::with_default_modulus(n)?;
            let report = match kind {
                EstimateKind::Mul => mastrovito_mul(&field, mode).report(),
                EstimateKind::Inv => itoh_tsuji_circuit(&field, mode).0.report(),
            };
            rows.push(EstimateRow { kind, n, report });
        }
    }
    Ok(rows)
}

/// CSV table: the standard report rows, then for every doubling pair
/// present in the data a `depth-diff` row recording the first
/// difference of depth.
pub fn render_csv(rows: &[EstimateRow]) -> String {
    let mut out = String::new();
    out.push_str(ResourceReport::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.report.csv_row(r.kind.name(), r.n));
        out.push('\n');
    }
    for r in rows {
        if let Some(prev) = rows
            .iter()
            .find(|p| p.kind == r.kind && p.n * 2 == r.n)
        {
            out.push_str(&format!(
                "depth-diff-{},{},{},,,,,,,\n",
                r.kind.name(),
                r.n,
                r.report.depth as i64 - prev.report.depth as i64
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_contains_rows_and_differences() {
        let rows = estimate(
            &[EstimateKind::Mul],
            &[4, 8, 16],
            UncomputeMode::Garbage,
        )
        .unwrap();
        let csv = render_csv(&rows);
        assert!(csv.starts_with(ResourceReport::CSV_HEADER));
        assert_eq!(csv.lines().count(), 1 + 3 + 2);
        assert!(csv.contains("mul,8,"));
        assert!(csv.contains("depth-diff-mul,16,"));
    }

    #[test]
    fn estimate_is_deterministic() {
        let a = render_csv(&estimate(&[EstimateKind::Inv], &[8, 16], UncomputeMode::Garbage).unwrap());
        let b = render_csv(&estimate(&[EstimateKind::Inv], &[8, 16], UncomputeMode::Garbage).unwrap());
        assert_eq!(a, b);
    }
}
