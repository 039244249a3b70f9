//! Residuals of the product identity over a random grid and of the six
//! kernel decompositions at a small argument.

use num_complex::Complex64;
use pfq_integrals::identities::{lemma1_grid, DEFAULT_SEED};
use pfq_integrals::{lemma1_residual, theorem_residual, IdentityCase, IdentityId, IntegrandSpec, Kernel, PFqParams, TruncationPolicy};

fn main() -> Result<(), pfq_integrals::Error> {
    let c = |v: f64| Complex64::new(v, 0.0);
    let mut worst = 0.0f64;
    let grid = lemma1_grid(500, DEFAULT_SEED);
    for &(alpha, beta, gamma, n, j) in &grid {
        worst = worst.max(lemma1_residual(c(alpha), c(beta), c(gamma), n, j)?);
    }
    println!("product identity: {} cases, largest residual {worst:.2e}", grid.len());

    let policy = TruncationPolicy::default();
    let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 1.0, 0.25, 1.0, PFqParams::real(&[0.5], &[1.5])?)?;
    for id in IdentityId::THEOREMS {
        let case = IdentityCase { id, spec: spec.clone(), x: c(0.5), n: 0, j: 0 };
        println!("{id}: residual {:.2e}", theorem_residual(&case, &policy)?);
    }
    Ok(())
}
