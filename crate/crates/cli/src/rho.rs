//! `vbslab rho` and `vbslab spectrum`: print a closed-form reduced density
//! matrix (entrywise, real and imaginary parts) with its spectrum and
//! entropy, or the spectrum alone.

use clap::ValueEnum;
use serde_json::json;

use vbslab_core::linalg::{von_neumann_entropy, DensityMatrix};
use vbslab_core::reduced::{
    rho_block_closed, rho_boundary_bulk, rho_end_pair, rho_one_site, rho_single_boundary,
    rho_two_bulk,
};

use crate::config::{OutputFormat, RunConfig, TABLE_PARAM_CAP};
use crate::format::{fmt_sig, matrix_csv_rows, matrix_json, rounded};
use crate::Rendered;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhoKind {
    OneSite,
    EndPair,
    Block,
    TwoBulk,
    BoundaryBulk,
    SingleBoundary,
}

impl RhoKind {
    fn name(self) -> &'static str {
        match self {
            RhoKind::OneSite => "one-site",
            RhoKind::EndPair => "end-pair",
            RhoKind::Block => "block",
            RhoKind::TwoBulk => "two-bulk",
            RhoKind::BoundaryBulk => "boundary-bulk",
            RhoKind::SingleBoundary => "single-boundary",
        }
    }
}

/// Builds the requested operator, enforcing the parameter caps.
pub fn build(which: RhoKind, param: usize, cfg: &RunConfig) -> Result<DensityMatrix, String> {
    match which {
        RhoKind::OneSite => Ok(rho_one_site()),
        RhoKind::SingleBoundary => Ok(rho_single_boundary()),
        RhoKind::EndPair => {
            if param == 0 || param > TABLE_PARAM_CAP {
                return Err(format!("end-pair needs 1 <= L <= {TABLE_PARAM_CAP}"));
            }
            rho_end_pair(param).map_err(|e| e.to_string())
        }
        RhoKind::Block => {
            if param == 0 || param > cfg.l_max {
                return Err(format!("block needs 1 <= L <= l-max = {}", cfg.l_max));
            }
            rho_block_closed(param).map_err(|e| e.to_string())
        }
        RhoKind::TwoBulk => {
            if param > TABLE_PARAM_CAP {
                return Err(format!("two-bulk needs M <= {TABLE_PARAM_CAP}"));
            }
            Ok(rho_two_bulk(param))
        }
        RhoKind::BoundaryBulk => {
            if param > TABLE_PARAM_CAP {
                return Err(format!("boundary-bulk needs M <= {TABLE_PARAM_CAP}"));
            }
            Ok(rho_boundary_bulk(param))
        }
    }
}

pub fn run(
    which: RhoKind,
    param: usize,
    cfg: &RunConfig,
    include_matrix: bool,
) -> Result<Rendered, String> {
    let rho = build(which, param, cfg)?;
    let spectrum = rho.spectrum().map_err(|e| e.to_string())?;
    let entropy = von_neumann_entropy(&spectrum).map_err(|e| e.to_string())?;
    let command = if include_matrix { "rho" } else { "spectrum" };
    // Display under the same clamp convention the functionals use:
    // eigenvalues in [-1e-10, 0) are round-off zeros.
    let shown: Vec<f64> = spectrum
        .values()
        .iter()
        .map(|&v| if (-1e-10..0.0).contains(&v) { 0.0 } else { v })
        .collect();

    match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&format!("command,{command}\n"));
            out.push_str(&format!("which,{}\n", which.name()));
            out.push_str(&format!("parameter,{param}\n"));
            let dims: Vec<String> = rho.dims().iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("dims,{}\n", dims.join(" ")));
            if include_matrix {
                matrix_csv_rows(rho.matrix(), &mut out);
            }
            out.push_str("eig");
            for v in &shown {
                out.push(',');
                out.push_str(&fmt_sig(*v));
            }
            out.push('\n');
            out.push_str(&format!("entropy_bits,{}\n", fmt_sig(entropy)));
            Ok(Rendered::Csv(out))
        }
        OutputFormat::Json => {
            let mut doc = json!({
                "command": command,
                "which": which.name(),
                "parameter": param,
                "dims": rho.dims(),
                "spectrum": shown.iter().map(|v| rounded(*v)).collect::<Vec<_>>(),
                "entropy_bits": rounded(entropy),
            });
            if include_matrix {
                doc["matrix"] = matrix_json(rho.matrix());
            }
            Ok(Rendered::Json(doc))
        }
    }
}
