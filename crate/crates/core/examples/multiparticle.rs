//! Rank-one tests for three and four fermions by projecting out one
//! particle at a time.

use slater::fock::Space;
use slater::linalg::{c64, Tolerances};
use slater::pure::{multiparticle_rank_one, Certificate, ProbeConfig, PureState};

fn report(name: &str, psi: &PureState) -> slater::Result<()> {
    let v = multiparticle_rank_one(psi, &ProbeConfig::default(), &Tolerances::default())?;
    print!("{name}: {:?}", v.claim);
    if let Certificate::Probes { violations, probes_tried } = &v.certificate {
        print!(" ({} of {probes_tried} probes violate)", violations.len());
        if let Some(chain) = violations.first() {
            let probe: Vec<f64> = chain.probes[0].iter().map(|z| z.re).collect();
            print!(", first probe {probe:?}");
        }
    }
    println!();
    Ok(())
}

fn main() -> slater::Result<()> {
    let three = PureState::from_entries(Space::fermions(3, 6), &[(vec![0, 1, 2], c64(0.6, 0.0)), (vec![2, 4, 5], c64(0.8, 0.0))])?;
    report("x f0 f1 f2 + y f2 f4 f5", &three)?;

    let four = PureState::from_entries(
        Space::fermions(4, 8),
        &[(vec![0, 1, 2, 3], c64(0.6, 0.0)), (vec![0, 1, 4, 5], c64(0.48, 0.0)), (vec![2, 3, 4, 5], c64(0.64, 0.0))],
    )?;
    report("four fermions", &four)?;

    let det = PureState::from_entries(Space::fermions(3, 6), &[(vec![1, 3, 5], c64(1.0, 0.0))])?;
    report("single determinant", &det)?;
    Ok(())
}
