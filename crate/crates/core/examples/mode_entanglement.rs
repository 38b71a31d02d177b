//! Entanglement between groups of modes after mapping occupation numbers
//! to qubits.

use slater::fock::Space;
use slater::linalg::c64;
use slater::modes::{fock_to_qubits, mode_bipartition_entropy};
use slater::pure::PureState;

fn main() -> slater::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // Modes: 0 = φ↑, 1 = φ↓, 2 = χ↑, 3 = χ↓; one electron pair per orbital.
    let psi = PureState::from_entries(Space::fermions(2, 4), &[(vec![0, 1], c64(h, 0.0)), (vec![2, 3], c64(h, 0.0))])?;
    let q = fock_to_qubits(&psi)?;
    for (i, z) in q.amplitudes().iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
        println!("|{i:04b}⟩: {:.6}", z.re);
    }
    for cut in [&[0usize, 1][..], &[0, 2], &[0]] {
        println!("S({cut:?}) = {:.6} bits", mode_bipartition_entropy(&q, cut)?);
    }
    Ok(())
}
