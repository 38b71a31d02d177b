//! Slater witnesses: the optimal example, an edge-state decomposition and
//! a witness built from the edge part.

use slater::fock::Space;
use slater::linalg::{c64, Statistics, Tolerances};
use slater::mixed::DensityMatrix;
use slater::pure::PureState;
use slater::witness::{
    edge_state_decompose, maximally_correlated_state, optimal_witness_example, witness_from_edge, witness_optimize,
    witness_value, SearchConfig,
};

fn main() -> slater::Result<()> {
    let tol = Tolerances::default();
    let cfg = SearchConfig::default();

    let w = optimal_witness_example(2, 2, Statistics::Fermion)?;
    let mc = maximally_correlated_state(2, Statistics::Fermion)?;
    println!("Tr(W P_mc) = {:.6}", w.expectation(&mc)?);
    println!("smallest value on 1000 determinants: {:.6}", w.battery(1000, 0)?.min);
    let opt = witness_optimize(&w, &cfg, &tol)?;
    println!("optimal: {} (tangent states span {} dimensions)", opt.optimal, opt.tangent_span);

    let det = PureState::from_entries(Space::fermions(2, 4), &[(vec![0, 2], c64(1.0, 0.0))])?;
    let rho = DensityMatrix::mixture(&[(0.5, det), (0.5, mc)])?;
    let dec = edge_state_decompose(&rho, 2, &cfg, &tol)?;
    println!("edge weight p = {:.6}, {} vectors subtracted", dec.p, dec.log.len());
    if let Some(delta) = &dec.edge {
        let wd = witness_from_edge(delta, 2, None, &cfg, &tol)?;
        let v = witness_value(&wd, delta)?;
        println!("Tr(W δ) = {:.6}, detected: {}", v.value, v.detected);
    }
    Ok(())
}
