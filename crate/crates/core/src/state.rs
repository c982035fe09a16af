//! The AKLT chain and its valence-bond-solid ground state.
//!
//! The chain holds N spin-1 sites in the bulk and one spin-1/2 at each end,
//! laid out left to right as sites 0, 1, ..., N, N+1 with factor dimensions
//! [2, 3, ..., 3, 2].
//!
//! The spin-1 computational basis is the alpha basis: the images under the
//! symmetric projector of the two-qubit states
//! |alpha> = (-1)^(1+alpha) (I (x) sigma_alpha^*) |psi->, alpha = 1, 2, 3.
//! In this basis the spin-1 operators take the adjoint form
//! (S^a)_bc = -i eps_abc. The S^z eigenbasis is available through
//! [`sz_change_of_basis`].
//!
//! The ground state is built by two independent routes: projecting a chain
//! of singlets onto the symmetric subspace at every bulk pair
//! ([`ground_state_projection`]), and summing Pauli strings against the
//! boundary singlet ([`ground_state_pauli`]). The two must agree up to a
//! global phase, which the test suites check entrywise.

use crate::error::{Error, Result};
use crate::linalg::{factor_strides, kron, kron_vec, ComplexMatrix, C64};

/// Hard memory guard on the number of bulk sites for full-state
/// construction (state dimension 4 * 3^10 = 236 196 at the cap).
pub const MAX_BULK_SITES: usize = 10;

/// Dense Hamiltonian cap: 4 * 3^6 = 2916 rows is the largest matrix worth
/// materializing here.
pub const MAX_HAMILTONIAN_SITES: usize = 6;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Site layout of an open chain: qubit, N qutrits, qubit.
///
/// `n_bulk = 0` is the degenerate two-qubit layout used for the singlet,
/// |phi+>, and the alpha states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteLayout {
    n_bulk: usize,
}

impl SiteLayout {
    pub fn new(n_bulk: usize) -> Self {
        Self { n_bulk }
    }

    pub fn n_bulk(&self) -> usize {
        self.n_bulk
    }

    /// Number of tensor factors, boundaries included.
    pub fn n_sites(&self) -> usize {
        self.n_bulk + 2
    }

    /// Factor dimensions [2, 3, ..., 3, 2], left to right.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![3usize; self.n_bulk + 2];
        d[0] = 2;
        d[self.n_bulk + 1] = 2;
        d
    }

    pub fn site_dim(&self, site: usize) -> usize {
        if site == 0 || site == self.n_bulk + 1 {
            2
        } else {
            3
        }
    }

    /// Total Hilbert-space dimension 4 * 3^N.
    pub fn total_dim(&self) -> usize {
        4 * 3usize.pow(self.n_bulk as u32)
    }

    pub fn is_bulk(&self, site: usize) -> bool {
        (1..=self.n_bulk).contains(&site)
    }
}

/// Pure state of the full chain, unit norm, leftmost site most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: SiteLayout,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes after checking length and unit norm (1e-12).
    pub fn new(layout: SiteLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has length {}, layout needs {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Normalizes the amplitudes first; errors on (near-)zero vectors.
    pub fn normalized(layout: SiteLayout, mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm < 1e-14 {
            return Err(Error::NotNormalized { norm });
        }
        let inv = 1.0 / norm;
        for a in &mut amplitudes {
            *a *= inv;
        }
        Self::new(layout, amplitudes)
    }

    pub fn layout(&self) -> SiteLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amplitudes)
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.layout, other.layout, "layout mismatch in inner product");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies a square operator to one site; the operator dimension must
    /// match the site dimension. Returns raw (possibly unnormalized)
    /// amplitudes.
    pub fn apply_site_operator(&self, site: usize, op: &ComplexMatrix) -> Result<Vec<C64>> {
        apply_site_operator_raw(&self.amplitudes, &self.layout.dims(), site, op)
    }
}

/// Applies a square single-site operator to raw amplitudes over `dims`.
pub(crate) fn apply_site_operator_raw(
    amps: &[C64],
    dims: &[usize],
    site: usize,
    op: &ComplexMatrix,
) -> Result<Vec<C64>> {
    if site >= dims.len() {
        return Err(Error::IndexOutOfRange {
            what: "site",
            index: site,
            max: dims.len() - 1,
        });
    }
    let d = dims[site];
    if op.rows() != d || op.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, site {} has dimension {}",
            op.rows(),
            op.cols(),
            site,
            d
        )));
    }
    let strides = factor_strides(dims);
    Ok(apply_group_operator(amps, strides[site], d, d, op))
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Applies `op` (m_out x m_in) to the index group of size `m_in` at stride
/// `stride`, replacing it by an index of size `m_out`.
fn apply_group_operator(
    amps: &[C64],
    stride: usize,
    m_in: usize,
    m_out: usize,
    op: &ComplexMatrix,
) -> Vec<C64> {
    let outer = amps.len() / (m_in * stride);
    let mut out = vec![C64::ZERO; outer * m_out * stride];
    for l in 0..outer {
        for r in 0..stride {
            for mo in 0..m_out {
                let mut sum = C64::ZERO;
                for mi in 0..m_in {
                    let v = op.get(mo, mi);
                    if v != C64::ZERO {
                        sum += v * amps[(l * m_in + mi) * stride + r];
                    }
                }
                out[(l * m_out + mo) * stride + r] = sum;
            }
        }
    }
    out
}

/// Pauli matrix sigma_alpha; alpha = 0 is the identity and sigma_3 is
/// diagonal with entries (1, -1) in the basis |up>, |down>.
pub fn pauli(alpha: usize) -> Result<ComplexMatrix> {
    if alpha > 3 {
        return Err(Error::IndexOutOfRange {
            what: "Pauli index",
            index: alpha,
            max: 3,
        });
    }
    let t = pauli_table();
    Ok(ComplexMatrix::from_row_major(2, 2, t[alpha].to_vec()))
}

/// The four Pauli matrices as flat 2x2 arrays, indexed [alpha][i * 2 + j].
pub(crate) fn pauli_table() -> [[C64; 4]; 4] {
    let o = C64::ZERO;
    let l = C64::ONE;
    let i = C64::I;
    [
        [l, o, o, l],
        [o, l, l, o],
        [o, -i, i, o],
        [l, o, o, -l],
    ]
}

/// Singlet |psi-> = (|ud> - |du>)/sqrt(2) on the two-qubit layout.
pub fn singlet() -> StateVector {
    let s = FRAC_1_SQRT_2;
    StateVector::new(
        SiteLayout::new(0),
        vec![C64::ZERO, C64::new(s, 0.0), C64::new(-s, 0.0), C64::ZERO],
    )
    .expect("singlet is normalized")
}

/// |phi+> = (|uu> + |dd>)/sqrt(2); satisfies (U (x) U*)|phi+> = |phi+> for
/// every unitary U.
pub fn phi_plus() -> StateVector {
    let s = FRAC_1_SQRT_2;
    StateVector::new(
        SiteLayout::new(0),
        vec![C64::new(s, 0.0), C64::ZERO, C64::ZERO, C64::new(s, 0.0)],
    )
    .expect("phi+ is normalized")
}

/// |alpha> = (-1)^(1+alpha) (I (x) sigma_alpha^*) |psi->.
///
/// alpha = 0 is -|psi->; alpha = 1, 2, 3 span the symmetric (spin-1)
/// subspace with the phases fixed by the formula.
pub fn alpha_state(alpha: usize) -> Result<StateVector> {
    let sigma_conj = pauli(alpha)?.conjugate();
    let sign = if alpha.is_multiple_of(2) { -1.0 } else { 1.0 };
    let base = singlet();
    let amps = base.apply_site_operator(1, &sigma_conj)?;
    let amps = amps.into_iter().map(|z| z * sign).collect();
    StateVector::new(SiteLayout::new(0), amps)
}

/// 3x4 map from a two-qubit pair onto its spin-1 subspace; the rows are
/// <alpha| for alpha = 1, 2, 3, so P P^dag = I_3.
pub fn symmetric_projector() -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(3, 4);
    for a in 1..=3 {
        let v = alpha_state(a).expect("alpha in range");
        for c in 0..4 {
            p.set(a - 1, c, v.amplitudes()[c].conj());
        }
    }
    p
}

/// Product of Pauli matrices sigma_(alpha_L) ... sigma_(alpha_1), applied
/// right to left so index 0 of `alphas` acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliString {
    alphas: Vec<usize>,
}

impl PauliString {
    pub fn new(alphas: Vec<usize>) -> Result<Self> {
        for &a in &alphas {
            if a > 3 {
                return Err(Error::IndexOutOfRange {
                    what: "Pauli index",
                    index: a,
                    max: 3,
                });
            }
        }
        Ok(Self { alphas })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[usize] {
        &self.alphas
    }

    /// The 2x2 unitary sigma_(alpha_L) ... sigma_(alpha_1).
    pub fn product(&self) -> ComplexMatrix {
        let t = pauli_table();
        let mut w = [C64::ONE, C64::ZERO, C64::ZERO, C64::ONE];
        for &a in &self.alphas {
            w = mat2_mul(&t[a], &w);
        }
        ComplexMatrix::from_row_major(2, 2, w.to_vec())
    }
}

#[inline]
pub(crate) fn mat2_mul(a: &[C64; 4], b: &[C64; 4]) -> [C64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// Ground state by the projection route: N + 1 singlets laid on 2N + 2
/// qubits, the symmetric projector applied at every bulk pair, then
/// normalized.
pub fn ground_state_projection(n: usize) -> Result<StateVector> {
    check_bulk_sites(n)?;
    let singlet_amps = singlet().amplitudes().to_vec();

    // Qubit order: 0, 1, 1bar, 2, 2bar, ..., N, Nbar, N+1; singlets sit on
    // adjacent position pairs.
    let mut amps = singlet_amps.clone();
    for _ in 0..n {
        amps = kron_vec(&amps, &singlet_amps);
    }
    let mut dims = vec![2usize; 2 * n + 2];

    // Project pairs right to left so earlier positions keep their strides.
    let p = symmetric_projector();
    for k in (1..=n).rev() {
        let pos = 2 * k - 1; // qubits (k, kbar)
        let stride: usize = dims[pos + 2..].iter().product();
        amps = apply_group_operator(&amps, stride, 4, 3, &p);
        dims.splice(pos..pos + 2, [3usize]);
    }

    StateVector::normalized(SiteLayout::new(n), amps)
}

/// Ground state by the Pauli-string route: the 3^N-term sum over bulk
/// strings, each term a bulk basis vector paired with
/// (I (x) sigma_(alpha_N) ... sigma_(alpha_1)) |psi-> on the boundary
/// qubits.
pub fn ground_state_pauli(n: usize) -> Result<StateVector> {
    check_bulk_sites(n)?;
    let t = pauli_table();
    let n_strings = 3usize.pow(n as u32);
    let total = 4 * n_strings;
    let mut amps = vec![C64::ZERO; total];
    let scale = C64::new((n_strings as f64).sqrt().recip(), 0.0);
    let s = FRAC_1_SQRT_2;

    for string in 0..n_strings {
        // Base-3 digits of `string`, most significant digit = site 1. The
        // least significant digit is alpha_N, which sits leftmost in
        // V = sigma_(alpha_N) ... sigma_(alpha_1), so digits are consumed
        // LSB-first with right multiplication.
        let mut v = [C64::ONE, C64::ZERO, C64::ZERO, C64::ONE];
        let mut rem = string;
        for _ in 0..n {
            let alpha = rem % 3 + 1;
            rem /= 3;
            v = mat2_mul(&v, &t[alpha]);
        }
        // w[b0, b1] of (I (x) V)|psi->: column 1 of V for b0 = up, minus
        // column 0 for b0 = down, each over sqrt(2).
        let w = [
            C64::new(s, 0.0) * v[1],
            C64::new(s, 0.0) * v[3],
            C64::new(-s, 0.0) * v[0],
            C64::new(-s, 0.0) * v[2],
        ];
        for b0 in 0..2 {
            for b1 in 0..2 {
                amps[b0 * (2 * n_strings) + string * 2 + b1] = scale * w[b0 * 2 + b1];
            }
        }
    }

    StateVector::new(SiteLayout::new(n), amps)
}

fn check_bulk_sites(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "bulk sites",
            index: 0,
            max: MAX_BULK_SITES,
        });
    }
    if n > MAX_BULK_SITES {
        return Err(Error::CapExceeded {
            what: "bulk sites",
            requested: n,
            cap: MAX_BULK_SITES,
        });
    }
    Ok(())
}

/// Spin-1 operator S^a in the alpha basis: (S^a)_bc = -i eps_abc,
/// a, b, c in {1, 2, 3}.
pub fn spin1_operator(a: usize) -> Result<ComplexMatrix> {
    if !(1..=3).contains(&a) {
        return Err(Error::IndexOutOfRange {
            what: "spin-1 component",
            index: a,
            max: 3,
        });
    }
    let mut m = ComplexMatrix::zeros(3, 3);
    for b in 1..=3usize {
        for c in 1..=3usize {
            let e = levi_civita(a, b, c);
            if e != 0.0 {
                m.set(b - 1, c - 1, C64::new(0.0, -e));
            }
        }
    }
    Ok(m)
}

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Unitary change of basis from the alpha basis to the S^z eigenbasis
/// {|+1>, |0>, |-1>}: rows are <+1| = (1, -i, 0)/sqrt(2), <0| = (0, 0, 1),
/// <-1| = (1, i, 0)/sqrt(2), so U S^3 U^dag = diag(1, 0, -1).
pub fn sz_change_of_basis() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_row_major(
        3,
        3,
        vec![
            C64::new(s, 0.0),
            C64::new(0.0, -s),
            C64::ZERO,
            C64::ZERO,
            C64::ZERO,
            C64::ONE,
            C64::new(s, 0.0),
            C64::new(0.0, s),
            C64::ZERO,
        ],
    )
}

/// Boundary projector (2/3)(1 + s . S) on (qubit, spin-1), the left end of
/// the chain. Projects onto the combined spin-3/2 subspace.
pub fn boundary_projector_start() -> ComplexMatrix {
    boundary_projector(true)
}

/// Same projector with factor order (spin-1, qubit), the right end.
pub fn boundary_projector_end() -> ComplexMatrix {
    boundary_projector(false)
}

fn boundary_projector(qubit_first: bool) -> ComplexMatrix {
    let half = C64::new(0.5, 0.0);
    let mut dot = ComplexMatrix::zeros(6, 6);
    for a in 1..=3 {
        let s_half = pauli(a).expect("in range").scale(half);
        let s_one = spin1_operator(a).expect("in range");
        let term = if qubit_first {
            kron(&s_half, &s_one)
        } else {
            kron(&s_one, &s_half)
        };
        dot = dot.add(&term);
    }
    ComplexMatrix::identity(6)
        .add(&dot)
        .scale(C64::new(2.0 / 3.0, 0.0))
}

/// Two-site bulk bond S_k . S_(k+1) + (1/3)(S_k . S_(k+1))^2, a 9x9 matrix.
/// Equals 2 P_(spin 2) - 2/3, so it annihilates the ground state after the
/// -2/3 shift.
pub fn bulk_bond_operator() -> ComplexMatrix {
    let mut ss = ComplexMatrix::zeros(9, 9);
    for a in 1..=3 {
        let s = spin1_operator(a).expect("in range");
        ss = ss.add(&kron(&s, &s));
    }
    ss.add(&ss.matmul(&ss).scale(C64::new(1.0 / 3.0, 0.0)))
}

/// Dense AKLT Hamiltonian on [`SiteLayout`]`(n)`: the bulk bond terms plus
/// the two boundary projectors.
pub fn hamiltonian(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "bulk sites",
            index: 0,
            max: MAX_HAMILTONIAN_SITES,
        });
    }
    if n > MAX_HAMILTONIAN_SITES {
        return Err(Error::CapExceeded {
            what: "dense Hamiltonian bulk sites",
            requested: n,
            cap: MAX_HAMILTONIAN_SITES,
        });
    }
    let layout = SiteLayout::new(n);
    let dim = layout.total_dim();
    let mut h = ComplexMatrix::zeros(dim, dim);

    let bond = bulk_bond_operator();
    for k in 1..=n.saturating_sub(1) {
        // Bond acts on bulk sites (k, k+1).
        let left = 2 * 3usize.pow((k - 1) as u32);
        let right = dim / (left * 9);
        embed_add(&mut h, &bond, left, right);
    }

    let start = boundary_projector_start();
    embed_add(&mut h, &start, 1, dim / 6);
    let end = boundary_projector_end();
    embed_add(&mut h, &end, dim / 6, 1);

    Ok(h)
}

/// Adds I_left (x) op (x) I_right into `acc` without materializing the
/// Kronecker factors.
fn embed_add(acc: &mut ComplexMatrix, op: &ComplexMatrix, left: usize, right: usize) {
    let d = op.rows();
    for l in 0..left {
        for a in 0..d {
            for b in 0..d {
                let v = op.get(a, b);
                if v == C64::ZERO {
                    continue;
                }
                for r in 0..right {
                    let row = (l * d + a) * right + r;
                    let col = (l * d + b) * right + r;
                    let cur = acc.get(row, col);
                    acc.set(row, col, cur + v);
                }
            }
        }
    }
}

/// Global phase that best maps `b` onto `a`, taken at the largest
/// amplitude of `b`.
pub fn phase_alignment(a: &StateVector, b: &StateVector) -> C64 {
    let (mut best, mut best_mag) = (0usize, 0.0f64);
    for (i, z) in b.amplitudes().iter().enumerate() {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return C64::ONE;
    }
    let ratio = a.amplitudes()[best] * b.amplitudes()[best].conj();
    let m = ratio.norm();
    if m == 0.0 {
        C64::ONE
    } else {
        ratio / m
    }
}

/// Largest entrywise |a - phase * b| after aligning the global phase.
pub fn max_abs_diff_up_to_phase(a: &StateVector, b: &StateVector) -> f64 {
    assert_eq!(a.layout(), b.layout(), "layout mismatch");
    let phase = phase_alignment(a, b);
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_rejects_out_of_range() {
        assert!(pauli(4).is_err());
    }

    #[test]
    fn pauli_identity_and_z_action() {
        assert_eq!(pauli(0).unwrap(), ComplexMatrix::identity(2));
        let z = pauli(3).unwrap();
        let up = vec![C64::ONE, C64::ZERO];
        assert_eq!(z.mul_vec(&up), up);
    }

    #[test]
    fn pauli_algebra() {
        // sigma_a sigma_b = delta_ab I + i eps_abc sigma_c.
        for a in 1..=3usize {
            for b in 1..=3usize {
                let lhs = pauli(a).unwrap().matmul(&pauli(b).unwrap());
                let mut rhs = if a == b {
                    ComplexMatrix::identity(2)
                } else {
                    ComplexMatrix::zeros(2, 2)
                };
                for cc in 1..=3usize {
                    let e = levi_civita(a, b, cc);
                    if e != 0.0 {
                        rhs = rhs.add(&pauli(cc).unwrap().scale(c(0.0, e)));
                    }
                }
                assert!(lhs.max_abs_diff(&rhs) < 1e-15, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn singlet_is_normalized() {
        assert_abs_diff_eq!(singlet().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sigma3_on_first_qubit_symmetrizes_singlet() {
        // (sigma_3 (x) I)|psi-> = (|ud> + |du>)/sqrt(2).
        let out = kron(&pauli(3).unwrap(), &ComplexMatrix::identity(2))
            .mul_vec(singlet().amplitudes());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)];
        for (a, b) in out.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn sigma1_kron_sigma1_fixes_phi_plus() {
        let op = kron(&pauli(1).unwrap(), &pauli(1).unwrap());
        let out = op.mul_vec(phi_plus().amplitudes());
        for (a, b) in out.iter().zip(phi_plus().amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn sigma2_on_first_qubit_maps_singlet_to_i_phi_plus() {
        let lhs = singlet()
            .apply_site_operator(0, &pauli(2).unwrap())
            .unwrap();
        let rhs: Vec<C64> = phi_plus().amplitudes().iter().map(|z| C64::I * z).collect();
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).norm() <= 1e-15);
        }
    }

    #[test]
    fn phi_plus_invariant_under_u_kron_u_conj() {
        // 50 Haar-ish unitaries from QR of random complex matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi = phi_plus();
        for _ in 0..50 {
            let g = DMatrix::<C64>::from_fn(2, 2, |_, _| {
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let q = g.qr().q();
            let u = ComplexMatrix::from_fn(2, 2, |i, j| q[(i, j)]);
            let applied = kron(&u, &u.conjugate()).mul_vec(phi.amplitudes());
            let diff: f64 = applied
                .iter()
                .zip(phi.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "diff = {diff}");
        }
    }

    #[test]
    fn alpha_zero_is_minus_singlet() {
        let a0 = alpha_state(0).unwrap();
        for (x, y) in a0.amplitudes().iter().zip(singlet().amplitudes()) {
            assert!((x + y).norm() < 1e-15);
        }
    }

    #[test]
    fn alpha_states_are_orthonormal() {
        for a in 0..4 {
            for b in 0..4 {
                let ip = alpha_state(a).unwrap().inner(&alpha_state(b).unwrap());
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!(
                    (ip - c(expected, 0.0)).norm() < 1e-15,
                    "<{a}|{b}> = {ip}"
                );
            }
        }
    }

    #[test]
    fn singlet_projector_annihilates_triplet_alphas() {
        let s = singlet();
        let proj = ComplexMatrix::outer(s.amplitudes(), s.amplitudes());
        for a in 1..=3 {
            let v = proj.mul_vec(alpha_state(a).unwrap().amplitudes());
            assert!(v.iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn symmetric_projector_kills_singlet_and_maps_alphas_to_basis() {
        let p = symmetric_projector();
        let zero = p.mul_vec(singlet().amplitudes());
        assert!(zero.iter().all(|z| z.norm() < 1e-15));
        for a in 1..=3usize {
            let img = p.mul_vec(alpha_state(a).unwrap().amplitudes());
            for (i, z) in img.iter().enumerate() {
                let expected = if i == a - 1 { 1.0 } else { 0.0 };
                assert!((z - c(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn projector_completeness() {
        // P^dag P = I_4 - |psi-><psi-| and P P^dag = I_3.
        let p = symmetric_projector();
        let s = singlet();
        let expected = ComplexMatrix::identity(4)
            .sub(&ComplexMatrix::outer(s.amplitudes(), s.amplitudes()));
        assert!(p.adjoint().matmul(&p).max_abs_diff(&expected) < 1e-15);
        assert!(p.matmul(&p.adjoint()).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn entanglement_swap_identity() {
        // |psi->_AB |psi->_BbarC as an exact 16-component identity with the
        // four qubits ordered (A, B, Bbar, C).
        let s = singlet().amplitudes().to_vec();
        let lhs = kron_vec(&s, &s);

        // |psi->_BBbar |psi->_AC in the same ordering.
        let mut chi = vec![C64::ZERO; 16];
        for a in 0..2 {
            for b in 0..2 {
                for bb in 0..2 {
                    for cc in 0..2 {
                        chi[((a * 2 + b) * 2 + bb) * 2 + cc] = s[b * 2 + bb] * s[a * 2 + cc];
                    }
                }
            }
        }

        let mut rhs = vec![C64::ZERO; 16];
        for alpha in 0..4usize {
            let sign = if alpha % 2 == 0 { -1.0 } else { 1.0 };
            let op = kron(
                &kron(&ComplexMatrix::identity(4), &pauli(alpha).unwrap().conjugate()),
                &pauli(alpha).unwrap(),
            );
            let term = op.mul_vec(&chi);
            for (r, t) in rhs.iter_mut().zip(term) {
                *r += c(0.5 * sign, 0.0) * t;
            }
        }

        for (l, r) in lhs.iter().zip(&rhs) {
            assert!((l - r).norm() < 1e-15);
        }
    }

    #[test]
    fn pauli_string_product_order() {
        // alphas = [1, 3] must give sigma_3 sigma_1, not sigma_1 sigma_3.
        let p = PauliString::new(vec![1, 3]).unwrap().product();
        let expected = pauli(3).unwrap().matmul(&pauli(1).unwrap());
        assert!(p.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pauli_string_is_unitary_with_unit_determinant_modulus() {
        let p = PauliString::new(vec![2, 1, 3, 2, 1]).unwrap().product();
        assert!(p.adjoint().matmul(&p).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
        let det = p.get(0, 0) * p.get(1, 1) - p.get(0, 1) * p.get(1, 0);
        assert_abs_diff_eq!(det.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn pauli_string_rejects_bad_index() {
        assert!(PauliString::new(vec![1, 4]).is_err());
    }

    #[test]
    fn spin1_operators_satisfy_su2_algebra() {
        for a in 1..=3usize {
            for b in 1..=3usize {
                let sa = spin1_operator(a).unwrap();
                let sb = spin1_operator(b).unwrap();
                let comm = sa.matmul(&sb).sub(&sb.matmul(&sa));
                let mut rhs = ComplexMatrix::zeros(3, 3);
                for cc in 1..=3usize {
                    let e = levi_civita(a, b, cc);
                    if e != 0.0 {
                        rhs = rhs.add(&spin1_operator(cc).unwrap().scale(c(0.0, e)));
                    }
                }
                assert!(comm.max_abs_diff(&rhs) < 1e-15);
            }
        }
    }

    #[test]
    fn spin1_operators_match_projected_pair_operators() {
        // P ((sigma_a (x) I + I (x) sigma_a)/2) P^dag must reproduce S^a.
        let p = symmetric_projector();
        let i2 = ComplexMatrix::identity(2);
        for a in 1..=3usize {
            let sp = pauli(a).unwrap();
            let pair = kron(&sp, &i2).add(&kron(&i2, &sp)).scale(c(0.5, 0.0));
            let projected = p.matmul(&pair).matmul(&p.adjoint());
            assert!(
                projected.max_abs_diff(&spin1_operator(a).unwrap()) < 1e-14,
                "component {a}"
            );
        }
    }

    #[test]
    fn casimir_of_spin1_is_two() {
        let mut total = ComplexMatrix::zeros(3, 3);
        for a in 1..=3 {
            let s = spin1_operator(a).unwrap();
            total = total.add(&s.matmul(&s));
        }
        assert!(total.max_abs_diff(&ComplexMatrix::identity(3).scale(c(2.0, 0.0))) < 1e-14);
    }

    #[test]
    fn sz_basis_diagonalizes_s3() {
        let u = sz_change_of_basis();
        assert!(u.matmul(&u.adjoint()).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let s3 = spin1_operator(3).unwrap();
        let diag = u.matmul(&s3).matmul(&u.adjoint());
        let expected = ComplexMatrix::from_real(3, 3, &[1.0, 0., 0., 0., 0., 0., 0., 0., -1.0]);
        assert!(diag.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn boundary_terms_are_projectors() {
        for pi in [boundary_projector_start(), boundary_projector_end()] {
            assert!(pi.matmul(&pi).max_abs_diff(&pi) < 1e-13);
            assert!(pi.is_hermitian(1e-13));
            // Rank 4 = dimension of the spin-3/2 subspace.
            assert_abs_diff_eq!(pi.trace().re, 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pauli_route_n1_matches_term_by_term_assembly() {
        // 3^(-1/2) sum_a e_a (x) (I (x) sigma_a)|psi->, written out with
        // public primitives only.
        let mut expected = vec![C64::ZERO; 12];
        let scale = c(3f64.sqrt().recip(), 0.0);
        for a in 1..=3usize {
            let w = kron(&ComplexMatrix::identity(2), &pauli(a).unwrap())
                .mul_vec(singlet().amplitudes());
            // Layout [2, 3, 2]: qubit 0, bulk digit a-1, qubit 1.
            for b0 in 0..2 {
                for b1 in 0..2 {
                    expected[b0 * 6 + (a - 1) * 2 + b1] = scale * w[b0 * 2 + b1];
                }
            }
        }
        let built = ground_state_pauli(1).unwrap();
        for (x, y) in built.amplitudes().iter().zip(&expected) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn ground_state_routes_agree_small_chains() {
        for n in 1..=4 {
            let a = ground_state_projection(n).unwrap();
            let b = ground_state_pauli(n).unwrap();
            let diff = max_abs_diff_up_to_phase(&a, &b);
            assert!(diff < 1e-12, "n = {n}: diff = {diff}");
        }
    }

    #[test]
    fn ground_state_n1_annihilated_by_boundary_projectors() {
        let g = ground_state_projection(1).unwrap();
        let dim = g.layout().total_dim();

        let mut pi_start = ComplexMatrix::zeros(dim, dim);
        embed_add(&mut pi_start, &boundary_projector_start(), 1, 2);
        let mut pi_end = ComplexMatrix::zeros(dim, dim);
        embed_add(&mut pi_end, &boundary_projector_end(), 2, 1);

        for op in [pi_start, pi_end] {
            let v = op.mul_vec(g.amplitudes());
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm < 1e-13, "residual {norm}");
        }
    }

    #[test]
    fn every_term_annihilates_ground_state_after_bulk_shift() {
        // Each bond term equals -2/3 on the ground state; each boundary
        // projector gives zero.
        let n = 3usize;
        let g = ground_state_projection(n).unwrap();
        let dim = g.layout().total_dim();
        let residual_norm = |op: &ComplexMatrix, shift: f64| -> f64 {
            op.mul_vec(g.amplitudes())
                .iter()
                .zip(g.amplitudes())
                .map(|(a, b)| (a - c(shift, 0.0) * b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        };

        let bond = bulk_bond_operator();
        for k in 1..n {
            let left = 2 * 3usize.pow((k - 1) as u32);
            let mut embedded = ComplexMatrix::zeros(dim, dim);
            embed_add(&mut embedded, &bond, left, dim / (left * 9));
            assert!(residual_norm(&embedded, -2.0 / 3.0) < 1e-13, "bond {k}");
        }

        let mut start = ComplexMatrix::zeros(dim, dim);
        embed_add(&mut start, &boundary_projector_start(), 1, dim / 6);
        assert!(residual_norm(&start, 0.0) < 1e-13);
        let mut end = ComplexMatrix::zeros(dim, dim);
        embed_add(&mut end, &boundary_projector_end(), dim / 6, 1);
        assert!(residual_norm(&end, 0.0) < 1e-13);
    }

    #[test]
    fn hamiltonian_eigenvalue_on_ground_state() {
        for n in 2..=4usize {
            let h = hamiltonian(n).unwrap();
            let g = ground_state_projection(n).unwrap();
            let hv = h.mul_vec(g.amplitudes());
            let expected = -2.0 * (n as f64 - 1.0) / 3.0;
            let residual: f64 = hv
                .iter()
                .zip(g.amplitudes())
                .map(|(a, b)| (a - c(expected, 0.0) * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(residual < 1e-10, "n = {n}: residual = {residual}");
        }
    }

    #[test]
    fn hamiltonian_caps() {
        assert!(hamiltonian(0).is_err());
        assert!(hamiltonian(MAX_HAMILTONIAN_SITES + 1).is_err());
    }

    #[test]
    fn state_construction_caps() {
        assert!(ground_state_projection(0).is_err());
        assert!(ground_state_pauli(MAX_BULK_SITES + 1).is_err());
    }

    #[test]
    fn layout_dimensions() {
        let l = SiteLayout::new(3);
        assert_eq!(l.dims(), vec![2, 3, 3, 3, 2]);
        assert_eq!(l.total_dim(), 108);
        assert!(l.is_bulk(1) && l.is_bulk(3) && !l.is_bulk(0) && !l.is_bulk(4));
    }

    #[test]
    fn state_vector_rejects_unnormalized() {
        let amps = vec![C64::ONE; 4];
        assert!(StateVector::new(SiteLayout::new(0), amps).is_err());
    }

    #[test]
    fn phase_alignment_recovers_global_phase() {
        let g = ground_state_projection(2).unwrap();
        let phase = c(0.6, 0.8); // modulus 1
        let rotated = StateVector::new(
            g.layout(),
            g.amplitudes().iter().map(|z| z * phase).collect(),
        )
        .unwrap();
        assert!(max_abs_diff_up_to_phase(&g, &rotated) < 1e-14);
    }
}
