//! Closed-form reduced density matrices of the VBS ground state, and the
//! brute-force partial-trace oracle they are validated against.
//!
//! Every operator here approaches the maximally mixed state of its
//! dimension at the rate set by the decay factor p(n) = (-1/3)^n. A block
//! of L bulk spins reduces to an operator that depends on L only, never on
//! the block position or the chain length; the test suites sweep both to
//! confirm it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    kron, reduce_pure_state, ComplexMatrix, DensityMatrix, Spectrum, SubsystemSpec, C64,
};
use crate::state::{mat2_mul, pauli_table, singlet, StateVector};

/// Largest block length served by the explicit 9^L dyad sum.
pub const MAX_CLOSED_BLOCK: usize = 6;

/// Largest kept dimension the brute-force oracle will produce (3^6).
pub const MAX_ORACLE_KEPT_DIM: usize = 729;

/// The decay factor p(n) = (-1/3)^n that governs correlation decay and the
/// approach of every reduction to the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFactor {
    n: usize,
    value: f64,
}

impl DecayFactor {
    pub fn new(n: usize) -> Self {
        let magnitude = 3f64.powi(n as i32).recip();
        let value = if n.is_multiple_of(2) { magnitude } else { -magnitude };
        Self { n, value }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }
}

/// p(n) = (-1/3)^n.
pub fn decay_factor(n: usize) -> f64 {
    DecayFactor::new(n).value()
}

fn real_scale(m: &ComplexMatrix, x: f64) -> ComplexMatrix {
    m.scale(C64::new(x, 0.0))
}

fn singlet_projector() -> ComplexMatrix {
    let s = singlet();
    ComplexMatrix::outer(s.amplitudes(), s.amplitudes())
}

/// Single bulk spin: the maximally mixed spin-1 state I/3, independent of
/// the site and of the chain length.
pub fn rho_one_site() -> DensityMatrix {
    DensityMatrix::new(real_scale(&ComplexMatrix::identity(3), 1.0 / 3.0), vec![3])
        .expect("I/3 is a density matrix")
}

/// Both boundary qubits of a chain with L bulk spins:
/// (1 - p(L))/4 * I + p(L) |psi-><psi-|.
pub fn rho_end_pair(l: usize) -> Result<DensityMatrix> {
    if l == 0 {
        return Err(Error::IndexOutOfRange {
            what: "end-pair block length",
            index: 0,
            max: usize::MAX,
        });
    }
    let p = decay_factor(l);
    let m = real_scale(&ComplexMatrix::identity(4), (1.0 - p) / 4.0)
        .add(&real_scale(&singlet_projector(), p));
    DensityMatrix::new(m, vec![2, 2])
}

/// Spectrum of [`rho_end_pair`]: (1 - p)/4 three times and (1 + 3p)/4 once.
pub fn end_pair_spectrum(l: usize) -> Spectrum {
    let p = decay_factor(l);
    Spectrum::from_values(vec![
        (1.0 - p) / 4.0,
        (1.0 - p) / 4.0,
        (1.0 - p) / 4.0,
        (1.0 + 3.0 * p) / 4.0,
    ])
}

/// Contiguous block of L bulk spins, from the explicit dyad sum: the
/// coefficient of |alpha><alpha'| is Tr(V'^dag V) / (2 * 3^L) with
/// V = sigma_(alpha_L) ... sigma_(alpha_1).
///
/// The sum has 9^L terms, so L is capped at [`MAX_CLOSED_BLOCK`]; beyond
/// that the spectrum side is served by [`rho_end_pair`], which shares its
/// nonzero spectrum.
pub fn rho_block_closed(l: usize) -> Result<DensityMatrix> {
    if l == 0 {
        return Err(Error::IndexOutOfRange {
            what: "block length",
            index: 0,
            max: MAX_CLOSED_BLOCK,
        });
    }
    if l > MAX_CLOSED_BLOCK {
        return Err(Error::CapExceeded {
            what: "closed-form block length",
            requested: l,
            cap: MAX_CLOSED_BLOCK,
        });
    }

    let dim = 3usize.pow(l as u32);
    let t = pauli_table();

    // V for every bulk multi-index; the most significant base-3 digit is
    // alpha_1, consumed LSB-first so alpha_L lands leftmost in the product.
    let products: Vec<[C64; 4]> = (0..dim)
        .map(|idx| {
            let mut v = [C64::ONE, C64::ZERO, C64::ZERO, C64::ONE];
            let mut rem = idx;
            for _ in 0..l {
                let alpha = rem % 3 + 1;
                rem /= 3;
                v = mat2_mul(&v, &t[alpha]);
            }
            v
        })
        .collect();

    let norm = 0.5 / dim as f64;
    let rows: Vec<Vec<C64>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let vi = &products[i];
            (0..dim)
                .map(|j| {
                    let vj = &products[j];
                    // Tr(V_j^dag V_i) is the Frobenius inner product.
                    let tr: C64 = (0..4).map(|k| vj[k].conj() * vi[k]).sum();
                    tr * norm
                })
                .collect()
        })
        .collect();

    let data: Vec<C64> = rows.into_iter().flatten().collect();
    DensityMatrix::new(ComplexMatrix::from_row_major(dim, dim, data), vec![3; l])
}

/// The nearest-neighbor two-spin operator rho_2 = rho_2(M = 0), written as
/// its dyad sum over the spin-1 basis.
fn rho_two_bulk_nearest() -> ComplexMatrix {
    let unit = |a: usize, b: usize| {
        let mut e = ComplexMatrix::zeros(3, 3);
        e.set(a, b, C64::ONE);
        e
    };
    let mut sum = ComplexMatrix::zeros(9, 9);
    for a in 0..3 {
        for b in 0..3 {
            sum = sum.add(&kron(&unit(a, b), &unit(a, b)));
            if a != b {
                sum = sum.add(&kron(&unit(a, a), &unit(b, b)));
                sum = sum.sub(&kron(&unit(a, b), &unit(b, a)));
            }
        }
    }
    real_scale(&sum, 1.0 / 9.0)
}

/// Two bulk spins separated by M sites:
/// (1 - p(M))/9 * I + p(M) rho_2, with rho_2 the nearest-neighbor operator.
pub fn rho_two_bulk(m: usize) -> DensityMatrix {
    let p = decay_factor(m);
    let mat = real_scale(&ComplexMatrix::identity(9), (1.0 - p) / 9.0)
        .add(&real_scale(&rho_two_bulk_nearest(), p));
    DensityMatrix::new(mat, vec![3, 3]).expect("closed form is a density matrix")
}

/// Spectrum of [`rho_two_bulk`]: (1-p)/9 five times, (1+p)/9 three times,
/// (1+2p)/9 once.
pub fn two_bulk_spectrum(m: usize) -> Spectrum {
    let p = decay_factor(m);
    let mut v = vec![(1.0 - p) / 9.0; 5];
    v.extend_from_slice(&[(1.0 + p) / 9.0; 3]);
    v.push((1.0 + 2.0 * p) / 9.0);
    Spectrum::from_values(v)
}

/// Boundary qubit together with the bulk spin at site M + 1, ordered
/// (qubit, spin-1): I/6 plus p(M)/6 times a fixed traceless coupling,
/// assembled dyad by dyad.
pub fn rho_boundary_bulk(m: usize) -> DensityMatrix {
    let p = decay_factor(m);

    let spin_unit = |a: usize, b: usize| {
        let mut e = ComplexMatrix::zeros(3, 3);
        e.set(a - 1, b - 1, C64::ONE);
        e
    };
    let qubit = |entries: [(usize, usize, C64); 2]| {
        let mut e = ComplexMatrix::zeros(2, 2);
        for (i, j, v) in entries {
            e.set(i, j, v);
        }
        e
    };

    let i = C64::I;
    let one = C64::ONE;
    // (qubit operator, spin dyad) pairs of the coupling term.
    let terms: [(ComplexMatrix, ComplexMatrix); 6] = [
        (qubit([(0, 0, i), (1, 1, -i)]), spin_unit(1, 2)),
        (qubit([(1, 1, i), (0, 0, -i)]), spin_unit(2, 1)),
        (qubit([(1, 0, one), (0, 1, -one)]), spin_unit(1, 3)),
        (qubit([(0, 1, one), (1, 0, -one)]), spin_unit(3, 1)),
        (qubit([(0, 1, i), (1, 0, i)]), spin_unit(2, 3)),
        (qubit([(0, 1, -i), (1, 0, -i)]), spin_unit(3, 2)),
    ];

    let mut coupling = ComplexMatrix::zeros(6, 6);
    for (q, s) in &terms {
        coupling = coupling.add(&kron(q, s));
    }

    let mat = real_scale(&ComplexMatrix::identity(6), 1.0 / 6.0)
        .add(&real_scale(&coupling, p / 6.0));
    DensityMatrix::new(mat, vec![2, 3]).expect("closed form is a density matrix")
}

/// Spectrum of [`rho_boundary_bulk`]: (1-p)/6 four times, (1+2p)/6 twice.
pub fn boundary_bulk_spectrum(m: usize) -> Spectrum {
    let p = decay_factor(m);
    let mut v = vec![(1.0 - p) / 6.0; 4];
    v.extend_from_slice(&[(1.0 + 2.0 * p) / 6.0; 2]);
    Spectrum::from_values(v)
}

/// A single boundary qubit: exactly I/2 for every chain length.
pub fn rho_single_boundary() -> DensityMatrix {
    DensityMatrix::new(real_scale(&ComplexMatrix::identity(2), 0.5), vec![2])
        .expect("I/2 is a density matrix")
}

/// Brute-force reduction of a pure chain state onto the kept sites, by
/// direct index summation; the full density matrix of the chain is never
/// materialized.
pub fn brute_force_reduce(state: &StateVector, keep: &SubsystemSpec) -> Result<DensityMatrix> {
    let dims = state.layout().dims();
    keep.validate(dims.len())?;
    let kept_dim: usize = keep.indices().iter().map(|&i| dims[i]).product();
    if kept_dim > MAX_ORACLE_KEPT_DIM {
        return Err(Error::CapExceeded {
            what: "oracle kept dimension",
            requested: kept_dim,
            cap: MAX_ORACLE_KEPT_DIM,
        });
    }
    reduce_pure_state(state.amplitudes(), &dims, keep)
}
