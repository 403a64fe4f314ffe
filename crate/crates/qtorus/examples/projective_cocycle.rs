//! The intertwiners form a projective representation: composing the
//! operators for two group elements agrees with the operator for their
//! product only up to a unit scalar, and that scalar is in general not 1.

use ndarray::array;
use num_complex::Complex64;
use qtorus::intertwiner::{cocycle_scalar, rho_fourier, rho_gl, rho_word};
use qtorus::planck::PlanckData;
use qtorus::schrodinger::RepContext;
use qtorus::symplectic::{random_word, GeneratorWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let planck = PlanckData::new(1, 4, 1).unwrap();
    let ctx = RepContext::canonical(planck);
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    let mut farthest = 0.0f64;
    for k in 0..12 {
        let w1 = random_word(1, 3, &mut rng);
        let w2 = random_word(1, 3, &mut rng);
        let mut items = w1.items().to_vec();
        items.extend_from_slice(w2.items());
        let w12 = GeneratorWord::new(1, items).unwrap();

        let c = cocycle_scalar(
            rho_word(&ctx, &w1).unwrap().op(),
            rho_word(&ctx, &w2).unwrap().op(),
            rho_word(&ctx, &w12).unwrap().op(),
        )
        .unwrap();
        assert!((c.norm() - 1.0).abs() <= 1e-10, "cocycle not unimodular: {c}");
        if k < 4 {
            println!("pair #{k}: cocycle {:+.6} {:+.6}i (|c| = {:.12})", c.re, c.im, c.norm());
        }
        farthest = farthest.max((c - Complex64::new(1.0, 0.0)).norm());
    }
    println!("most nontrivial cocycle distance from 1: {farthest:.3}");
    assert!(farthest > 0.1, "every sampled cocycle was trivial");

    // One pinned relation that is exactly scalar-free: the transform squares
    // to the parity permutation, with cocycle 1.
    let f = rho_fourier(&ctx, &array![[1]]).unwrap();
    let parity = rho_gl(&ctx, &array![[-1]]).unwrap().to_matrix();
    let c = cocycle_scalar(&f, &f, &parity).unwrap();
    println!("transform squared against parity: cocycle {:+.12} {:+.12}i", c.re, c.im);
    assert!((c - Complex64::new(1.0, 0.0)).norm() <= 1e-12);

    println!("the representation is genuinely projective, with unimodular defects");
}
