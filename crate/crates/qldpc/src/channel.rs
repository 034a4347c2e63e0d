//! Depolarizing channel in binary symplectic form and syndrome computation.

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Binary symplectic representation of a Pauli error on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliError {
    pub e_x: BitVec,
    pub e_z: BitVec,
}

/// Measured syndrome: `sigma_x = H_Z e_x^T`, `sigma_z = H_X e_z^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    pub sigma_x: BitVec,
    pub sigma_z: BitVec,
}

/// Samples i.i.d. depolarizing noise: each qubit suffers X, Y, or Z with
/// probability `p/3` each, identity otherwise. Y sets both bit planes.
pub fn sample_depolarizing(n: usize, p: f64, rng: &mut impl Rng) -> Result<PauliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut e_x = BitVec::zeros(n);
    let mut e_z = BitVec::zeros(n);
    for i in 0..n {
        let u: f64 = rng.random();
        if u < p {
            // Subdivide the error mass evenly across X, Y, Z.
            if u < p / 3.0 {
                e_x.set(i, true);
            } else if u < 2.0 * p / 3.0 {
                e_x.set(i, true);
                e_z.set(i, true);
            } else {
                e_z.set(i, true);
            }
        }
    }
    Ok(PauliError { e_x, e_z })
}

/// Computes the syndrome of `err` under `code`.
pub fn syndrome(code: &CssCode, err: &PauliError) -> Result<Syndrome> {
    Ok(Syndrome {
        sigma_x: code.h_z().mul_vec(&err.e_x)?,
        sigma_z: code.h_x().mul_vec(&err.e_z)?,
    })
}

/// Deterministic per-trial RNG stream derived from the master seed so that
/// parallel and serial sweeps see identical noise.
pub fn trial_rng(master_seed: u64, point_index: usize, trial_index: u64) -> ChaCha8Rng {
    let mut state = master_seed
        ^ (point_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ trial_index.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    // splitmix64 finalizer to decorrelate nearby indices
    state = (state ^ (state >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    state = (state ^ (state >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    state ^= state >> 31;
    ChaCha8Rng::seed_from_u64(state)
}
