//! `vbslab bench`: wall-clock comparison of the closed-form end-pair route
//! against full-state construction plus brute-force reduction, per chain
//! length. The entropy columns are deterministic; the timings are not.

use std::time::Instant;

use serde_json::json;

use vbslab_core::linalg::{von_neumann_entropy, SubsystemSpec};
use vbslab_core::reduced::{brute_force_reduce, rho_end_pair};
use vbslab_core::state::ground_state_projection;

use crate::config::{OutputFormat, RunConfig};
use crate::format::{fmt_sig, rounded};
use crate::Rendered;

pub fn run(lo: usize, hi: usize, cfg: &RunConfig) -> Result<Rendered, String> {
    if lo == 0 {
        return Err("bench needs n >= 1".into());
    }
    if hi > cfg.n_max {
        return Err(format!("bench range up to {hi} exceeds n-max {}", cfg.n_max));
    }

    struct Row {
        n: usize,
        closed_ms: f64,
        brute_ms: f64,
        entropy_closed: f64,
        entropy_brute: f64,
    }

    let mut rows = Vec::new();
    for n in lo..=hi {
        let t0 = Instant::now();
        let closed = rho_end_pair(n).map_err(|e| e.to_string())?;
        let entropy_closed =
            von_neumann_entropy(&closed.spectrum().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let closed_ms = t0.elapsed().as_secs_f64() * 1e3;

        let t1 = Instant::now();
        let g = ground_state_projection(n).map_err(|e| e.to_string())?;
        let oracle = brute_force_reduce(&g, &SubsystemSpec::new([0, n + 1]))
            .map_err(|e| e.to_string())?;
        let entropy_brute =
            von_neumann_entropy(&oracle.spectrum().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let brute_ms = t1.elapsed().as_secs_f64() * 1e3;

        rows.push(Row {
            n,
            closed_ms,
            brute_ms,
            entropy_closed,
            entropy_brute,
        });
    }

    match cfg.format {
        OutputFormat::Csv => {
            let mut out =
                String::from("n,closed_form_ms,brute_force_ms,entropy_closed,entropy_brute\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{:.4},{:.4},{},{}\n",
                    r.n,
                    r.closed_ms,
                    r.brute_ms,
                    fmt_sig(r.entropy_closed),
                    fmt_sig(r.entropy_brute)
                ));
            }
            Ok(Rendered::Csv(out))
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .into_iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "closed_form_ms": r.closed_ms,
                        "brute_force_ms": r.brute_ms,
                        "entropy_closed": rounded(r.entropy_closed),
                        "entropy_brute": rounded(r.entropy_brute),
                    })
                })
                .collect();
            Ok(Rendered::Json(json!({
                "command": "bench",
                "rows": rows,
            })))
        }
    }
}
