//! Exact Egorov property: the operator built for a generator word conjugates
//! every frequency operator to the operator of the transported frequency,
//! with no asymptotic error term at rational Planck constant.

use qtorus::algebra::TorusElement;
use qtorus::intertwiner::rho_word;
use qtorus::numerics::{adjoint, fro_norm};
use qtorus::planck::PlanckData;
use qtorus::schrodinger::{weyl_quantize, RepContext};
use qtorus::symplectic::random_word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let planck = PlanckData::new(1, 7, 3).unwrap();
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut worst_label = 0.0f64;
    for k in 0..20 {
        let word = random_word(1, 4, &mut rng);
        let r = rho_word(&ctx, &word).unwrap();
        if k < 3 {
            println!(
                "word #{k}: |word| = {}, group element {:?}, egorov residual {:.3e}",
                word.items().len(),
                word.to_matrix().matrix().as_slice().unwrap(),
                r.egorov_residual()
            );
        }
        worst_label = worst_label.max(r.egorov_residual());
    }
    println!("worst frequency-transport residual over 20 words: {worst_label:.3e}");
    assert!(worst_label <= 1e-10);

    // The same statement at the level of full symbols: conjugating a
    // quantized series pulls the series back along the group element.
    let mut worst_symbol = 0.0f64;
    for _ in 0..10 {
        let word = random_word(1, 3, &mut rng);
        let b = word.to_matrix();
        let u = rho_word(&ctx, &word).unwrap();
        let f = TorusElement::random(planck.clone(), 8, 2 * planck.modulus(), &mut rng);
        let lhs = adjoint(u.op())
            .dot(&weyl_quantize(&ctx, &f).unwrap())
            .dot(u.op());
        let rhs = weyl_quantize(&ctx, &f.g_action(&b.inverse()).unwrap()).unwrap();
        worst_symbol = worst_symbol.max(fro_norm(&(lhs - rhs)));
    }
    println!("worst symbol-transport residual over 10 series: {worst_symbol:.3e}");
    assert!(worst_symbol <= 1e-9);

    println!("quantum dynamics tracks the classical map exactly");
}
