//! Grid drivers behind the command-line tool: parameter sweeps, figure
//! datasets, the gate self-check and deterministic CSV/JSON serialization.

mod commands;
mod config;
pub mod format;
mod gate_check;
mod table;

pub use commands::{
    cmd_fig3, cmd_fig4, cmd_sweep, fig4_default_temperatures, point_seed, tomo_demo, Quantity, SWEEP_QUANTITIES,
};
pub use config::{Mode, SamplingConfig, SignalSpec, SweepConfig, Temperature, ThetaGrid};
pub use gate_check::{gate_check, Check, GateReport};
pub use table::{Cell, Row, RowError, Table};

use crate::linalg::ComplexMatrix;

/// `[[a, b], [c, d]]` with entries `re±imi` at six decimals, for human-readable reports.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let fixed = |x: f64| {
        let s = format!("{x:.6}");
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    };
    let rows: Vec<String> = m
        .rows()
        .into_iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    let im = fixed(z.im);
                    let im = if im.starts_with('-') { im } else { format!("+{im}") };
                    format!("{}{im}i", fixed(z.re))
                })
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
