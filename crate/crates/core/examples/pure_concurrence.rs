//! Concurrence of two electrons in two orbitals, before and after an
//! exchange interaction swaps their spins.

use slater::fock::Space;
use slater::linalg::c64;
use slater::pure::{concurrence_pure, eof_from_concurrence, PureState};

fn main() -> slater::Result<()> {
    let space = Space::fermions(2, 4);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // Modes: 0 = φ↑, 1 = χ↑, 2 = φ↓, 3 = χ↓.
    let before = PureState::from_entries(space, &[(vec![0, 2], c64(1.0, 0.0))])?;
    let after = PureState::from_entries(space, &[(vec![0, 3], c64(h, 0.0)), (vec![1, 2], c64(-h, 0.0))])?;
    for (name, psi) in [("before", &before), ("after", &after)] {
        let c = concurrence_pure(psi)?;
        println!("{name:>6}: C = {c:.6}, entanglement of formation = {:.6}", eof_from_concurrence(c)?);
    }
    Ok(())
}
