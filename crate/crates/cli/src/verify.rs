//! `vbslab verify`: the full invariant suite, bounded by the configured
//! caps. Each check reports its measured deviation against its tolerance;
//! any failure makes the command exit nonzero.
//!
//! Structural identities (route equivalence, oracle agreement, projector
//! algebra) carry pinned tolerances; oracle cross-checks of entropies and
//! correlators use the configured `--tol`.

use serde_json::json;

use vbslab_core::linalg::{
    hermitian_spectrum, kron, von_neumann_entropy, ComplexMatrix, SubsystemSpec, C64,
};
use vbslab_core::measures::{
    concurrence, entropy_block, entropy_boundary_bulk, entropy_boundary_bulk_closed_form,
    entropy_two_bulk, entropy_two_bulk_closed_form, ppt_test, spin_correlator,
};
use vbslab_core::reduced::{
    brute_force_reduce, decay_factor, rho_block_closed, rho_boundary_bulk, rho_end_pair,
    rho_one_site, rho_single_boundary, rho_two_bulk,
};
use vbslab_core::state::{
    boundary_projector_end, boundary_projector_start, ground_state_pauli,
    ground_state_projection, hamiltonian, max_abs_diff_up_to_phase, pauli, singlet,
};

use crate::config::{OutputFormat, RunConfig};
use crate::format::rounded;
use crate::Rendered;

pub struct CheckResult {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn check(name: &'static str, deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name,
        deviation,
        tolerance,
        passed: deviation <= tolerance,
    }
}

pub fn run_checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(check("swap-identity", swap_identity_deviation(), 1e-12));
    out.push(check(
        "route-equivalence",
        route_equivalence_deviation(cfg.n_max),
        1e-12,
    ));
    if cfg.n_max >= 2 {
        out.push(check(
            "block-invariance",
            block_invariance_deviation(cfg.n_max, cfg.l_max),
            1e-12,
        ));
    }
    out.push(check(
        "one-site-oracle",
        one_site_oracle_deviation(cfg.n_max),
        1e-12,
    ));
    out.push(check(
        "end-pair-oracle",
        end_pair_oracle_deviation(cfg.n_max),
        1e-12,
    ));
    if cfg.n_max >= 2 {
        out.push(check(
            "two-bulk-oracle",
            two_bulk_oracle_deviation(cfg.n_max),
            1e-12,
        ));
    }
    out.push(check(
        "boundary-bulk-oracle",
        boundary_bulk_oracle_deviation(cfg.n_max),
        1e-12,
    ));
    out.push(check(
        "single-boundary-oracle",
        single_boundary_oracle_deviation(cfg.n_max),
        1e-12,
    ));

    out.push(check(
        "block-entropy-table",
        block_entropy_table_deviation(),
        1e-5,
    ));
    out.push(check("entropy-sign-guard", sign_guard_deviation(), 1e-12));
    out.push(check(
        "pair-entropy-closed-forms",
        pair_entropy_closed_form_deviation(),
        1e-12,
    ));
    out.push(check(
        "pair-entropy-oracle",
        pair_entropy_oracle_deviation(cfg.n_max),
        cfg.tolerance,
    ));
    out.push(check(
        "concurrence-closed-forms",
        concurrence_deviation(),
        1e-12,
    ));
    out.push(check("ppt-verdicts", ppt_deviation(), 1e-10));

    if cfg.n_max >= 2 {
        let (residual, gap_shortfall) = hamiltonian_deviations(cfg.n_max);
        out.push(check("hamiltonian-eigenvalue", residual, 1e-10));
        out.push(check("hamiltonian-gap", gap_shortfall, 0.0));
    }
    out.push(check(
        "boundary-projectors",
        projector_idempotency_deviation(),
        1e-12,
    ));
    if cfg.n_max >= 4 {
        out.push(check(
            "correlator-decay",
            correlator_deviation(cfg.n_max),
            cfg.tolerance,
        ));
    }

    out
}

pub fn render(checks: &[CheckResult], cfg: &RunConfig) -> (Rendered, bool) {
    let passed = checks.iter().all(|c| c.passed);
    match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::from("check,deviation,tolerance,status\n");
            for c in checks {
                out.push_str(&format!(
                    "{},{:.6e},{:.6e},{}\n",
                    c.name,
                    c.deviation,
                    c.tolerance,
                    if c.passed { "pass" } else { "fail" }
                ));
            }
            out.push_str(&format!(
                "overall,,,{}\n",
                if passed { "pass" } else { "fail" }
            ));
            (Rendered::Csv(out), passed)
        }
        OutputFormat::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "deviation": rounded(c.deviation),
                        "tolerance": rounded(c.tolerance),
                        "status": if c.passed { "pass" } else { "fail" },
                    })
                })
                .collect();
            (
                Rendered::Json(json!({
                    "command": "verify",
                    "n_max": cfg.n_max,
                    "l_max": cfg.l_max,
                    "tolerance": rounded(cfg.tolerance),
                    "checks": rows,
                    "passed": passed,
                })),
                passed,
            )
        }
    }
}

fn swap_identity_deviation() -> f64 {
    let s = singlet().amplitudes().to_vec();
    let mut lhs = vec![C64::ZERO; 16];
    for (i, v) in vbslab_core::linalg::kron_vec(&s, &s).into_iter().enumerate() {
        lhs[i] = v;
    }
    let mut chi = vec![C64::ZERO; 16];
    for a in 0..2 {
        for b in 0..2 {
            for bb in 0..2 {
                for c in 0..2 {
                    chi[((a * 2 + b) * 2 + bb) * 2 + c] = s[b * 2 + bb] * s[a * 2 + c];
                }
            }
        }
    }
    let mut rhs = vec![C64::ZERO; 16];
    for alpha in 0..4usize {
        let sign = if alpha % 2 == 0 { -0.5 } else { 0.5 };
        let op = kron(
            &kron(&ComplexMatrix::identity(4), &pauli(alpha).unwrap().conjugate()),
            &pauli(alpha).unwrap(),
        );
        for (r, t) in rhs.iter_mut().zip(op.mul_vec(&chi)) {
            *r += C64::new(sign, 0.0) * t;
        }
    }
    lhs.iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

fn route_equivalence_deviation(n_max: usize) -> f64 {
    let mut dev = 0.0f64;
    for n in 1..=n_max.min(6) {
        let a = ground_state_projection(n).unwrap();
        let b = ground_state_pauli(n).unwrap();
        dev = dev.max(max_abs_diff_up_to_phase(&a, &b));
    }
    dev
}

fn block_invariance_deviation(n_max: usize, l_max: usize) -> f64 {
    let mut dev = 0.0f64;
    for n in 2..=n_max.min(7) {
        let g = ground_state_projection(n).unwrap();
        for l in 1..=n.min(5).min(l_max) {
            let closed = rho_block_closed(l).unwrap();
            for k in 1..=(n - l + 1) {
                let oracle = brute_force_reduce(&g, &SubsystemSpec::new(k..k + l)).unwrap();
                dev = dev.max(oracle.matrix().max_abs_diff(closed.matrix()));
            }
        }
    }
    dev
}

fn one_site_oracle_deviation(n_max: usize) -> f64 {
    let target = rho_one_site();
    let mut dev = 0.0f64;
    for n in 1..=n_max.min(6) {
        let g = ground_state_projection(n).unwrap();
        for k in 1..=n {
            let oracle = brute_force_reduce(&g, &SubsystemSpec::new([k])).unwrap();
            dev = dev.max(oracle.matrix().max_abs_diff(target.matrix()));
        }
    }
    dev
}

fn end_pair_oracle_deviation(n_max: usize) -> f64 {
    let mut dev = 0.0f64;
    for n in 1..=n_max.min(6) {
        let g = ground_state_projection(n).unwrap();
        let oracle = brute_force_reduce(&g, &SubsystemSpec::new([0, n + 1])).unwrap();
        dev = dev.max(oracle.matrix().max_abs_diff(rho_end_pair(n).unwrap().matrix()));
    }
    dev
}

fn two_bulk_oracle_deviation(n_max: usize) -> f64 {
    let n = n_max.min(7);
    let g = ground_state_projection(n).unwrap();
    let mut dev = 0.0f64;
    for m in 0..=(n - 2).min(4) {
        let closed = rho_two_bulk(m);
        for k in 1..=(n - m - 1) {
            let oracle = brute_force_reduce(&g, &SubsystemSpec::new([k, k + m + 1])).unwrap();
            dev = dev.max(oracle.matrix().max_abs_diff(closed.matrix()));
        }
    }
    dev
}

fn boundary_bulk_oracle_deviation(n_max: usize) -> f64 {
    let n = n_max.min(7);
    let g = ground_state_projection(n).unwrap();
    let mut dev = 0.0f64;
    for m in 0..=(n - 1).min(5) {
        let oracle = brute_force_reduce(&g, &SubsystemSpec::new([0, m + 1])).unwrap();
        dev = dev.max(oracle.matrix().max_abs_diff(rho_boundary_bulk(m).matrix()));
    }
    dev
}

fn single_boundary_oracle_deviation(n_max: usize) -> f64 {
    let target = rho_single_boundary();
    let mut dev = 0.0f64;
    for n in 1..=n_max.min(6) {
        let g = ground_state_projection(n).unwrap();
        for site in [0, n + 1] {
            let oracle = brute_force_reduce(&g, &SubsystemSpec::new([site])).unwrap();
            dev = dev.max(oracle.matrix().max_abs_diff(target.matrix()));
            let s = von_neumann_entropy(&oracle.spectrum().unwrap()).unwrap();
            dev = dev.max((s - 1.0).abs());
        }
    }
    dev
}

/// Six-digit reference table for S_L. The L = 4 entry is known to carry a
/// misprinted digit (the spectrum forces 1.99967282...), so this check
/// fails by ~1.7e-5 by design; it is kept at its stated tolerance rather
/// than loosened.
fn block_entropy_table_deviation() -> f64 {
    let table = [1.58496, 1.97494, 1.99695, 1.99969, 1.99996];
    let mut dev = 0.0f64;
    for (i, &expected) in table.iter().enumerate() {
        dev = dev.max((entropy_block(i + 1) - expected).abs());
    }
    let s6 = entropy_block(6);
    dev = dev.max((2.0 - 1e-4 - s6).max(0.0));
    dev = dev.max((s6 - 2.0).max(0.0));
    dev
}

fn sign_guard_deviation() -> f64 {
    let spectral = (entropy_block(1) - 3f64.log2()).abs();
    let p = decay_factor(1);
    let wrong = 2.0 + 0.75 * (1.0 - p) * (1.0 - p).log2();
    let wrong_dev = (wrong - (2.0 + (4.0f64 / 3.0).log2())).abs();
    spectral.max(wrong_dev)
}

fn pair_entropy_closed_form_deviation() -> f64 {
    let mut dev = 0.0f64;
    for m in 0..=8 {
        dev = dev.max((entropy_two_bulk(m) - entropy_two_bulk_closed_form(m)).abs());
        dev = dev.max((entropy_boundary_bulk(m) - entropy_boundary_bulk_closed_form(m)).abs());
    }
    dev
}

fn pair_entropy_oracle_deviation(n_max: usize) -> f64 {
    let n = n_max.min(7);
    let g = ground_state_projection(n).unwrap();
    let mut dev = 0.0f64;
    let m_cap = (n.saturating_sub(2)).min(4);
    for m in 0..=m_cap {
        let oracle = brute_force_reduce(&g, &SubsystemSpec::new([1, m + 2])).unwrap();
        let s = von_neumann_entropy(&oracle.spectrum().unwrap()).unwrap();
        dev = dev.max((entropy_two_bulk(m) - s).abs());

        let oracle = brute_force_reduce(&g, &SubsystemSpec::new([0, m + 1])).unwrap();
        let s = von_neumann_entropy(&oracle.spectrum().unwrap()).unwrap();
        dev = dev.max((entropy_boundary_bulk(m) - s).abs());
    }
    dev
}

fn concurrence_deviation() -> f64 {
    let mut dev = 0.0f64;
    for l in 1..=8usize {
        let expected = 1.0 - 9f64.powi(-(l as i32));
        dev = dev.max((concurrence(&rho_end_pair(l).unwrap()) - expected).abs());
    }
    for m in 0..=8usize {
        let p2 = 9f64.powi(-(m as i32));
        dev = dev.max((concurrence(&rho_two_bulk(m)) - (1.0 - p2 / 6.0)).abs());
        dev = dev.max((concurrence(&rho_boundary_bulk(m)) - (1.0 - 0.4 * p2)).abs());
    }
    dev
}

fn ppt_deviation() -> f64 {
    let mut dev = 0.0f64;

    let s = singlet();
    let rho = vbslab_core::linalg::DensityMatrix::new(
        ComplexMatrix::outer(s.amplitudes(), s.amplitudes()),
        vec![2, 2],
    )
    .unwrap();
    let v = ppt_test(&rho, 1).unwrap();
    if !v.is_entangled() {
        dev = dev.max(1.0);
    }
    dev = dev.max((v.min_pt_eigenvalue + 0.5).abs());

    if !ppt_test(&rho_boundary_bulk(0), 0).unwrap().is_entangled() {
        dev = dev.max(1.0);
    }
    for m in 1..=5 {
        if ppt_test(&rho_boundary_bulk(m), 0).unwrap().is_entangled() {
            dev = dev.max(1.0);
        }
    }
    for n in 1..=6 {
        if ppt_test(&rho_end_pair(n).unwrap(), 0).unwrap().is_entangled() {
            dev = dev.max(1.0);
        }
    }
    dev
}

fn hamiltonian_deviations(n_max: usize) -> (f64, f64) {
    let mut max_residual = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for n in 2..=n_max.min(5) {
        let h = hamiltonian(n).unwrap();
        let g = ground_state_projection(n).unwrap();
        let expected = -2.0 * (n as f64 - 1.0) / 3.0;
        let hv = h.mul_vec(g.amplitudes());
        let residual: f64 = hv
            .iter()
            .zip(g.amplitudes())
            .map(|(a, b)| (a - C64::new(expected, 0.0) * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(residual);

        let spectrum = hermitian_spectrum(&h).unwrap();
        let vals = spectrum.values();
        let ground = vals[vals.len() - 1];
        let first_excited = vals[vals.len() - 2];
        max_residual = max_residual.max((ground - expected).abs());
        min_gap = min_gap.min(first_excited - ground);
    }
    (max_residual, (0.1 - min_gap).max(0.0))
}

fn projector_idempotency_deviation() -> f64 {
    let mut dev = 0.0f64;
    for pi in [boundary_projector_start(), boundary_projector_end()] {
        dev = dev.max(pi.matmul(&pi).max_abs_diff(&pi));
    }
    dev
}

fn correlator_deviation(n_max: usize) -> f64 {
    let n = n_max.min(7);
    let g = ground_state_projection(n).unwrap();
    let mut dev = 0.0f64;
    for d in 1..=(n - 3).min(4) {
        let expected = 4.0 * (-1.0f64 / 3.0).powi(d as i32);
        let c = spin_correlator(&g, 2, 2 + d).unwrap();
        dev = dev.max((c - expected).abs());
    }
    dev
}
