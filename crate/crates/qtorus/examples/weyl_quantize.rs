//! Quantize Fourier series on the torus and check that the assignment is
//! linear, sends star to adjoint, and turns twisted convolution into
//! operator multiplication.

use num_complex::Complex64;
use qtorus::algebra::TorusElement;
use qtorus::lattice::LatticePoint;
use qtorus::numerics::{adjoint, fro_norm, max_abs_diff};
use qtorus::planck::PlanckData;
use qtorus::schrodinger::{weyl_quantize, RepContext};

fn main() {
    let planck = PlanckData::new(1, 5, 2).unwrap();
    let ctx = RepContext::canonical(planck.clone());
    println!(
        "quantizing on the 2-torus at hbar = {}/{}, state space dimension {}",
        planck.numer(),
        planck.modulus(),
        ctx.dim()
    );

    // A real-symmetric symbol: coefficients at opposite frequencies are
    // conjugate, so the quantized operator must be Hermitian.
    let xi = LatticePoint::from_coords(&[1, 2]).unwrap();
    let symbol = TorusElement::from_terms(
        planck.clone(),
        [
            (xi.clone(), Complex64::new(0.5, -0.25)),
            (xi.neg(), Complex64::new(0.5, 0.25)),
            (LatticePoint::zero(1), Complex64::new(1.0, 0.0)),
        ],
    )
    .unwrap();
    let q = weyl_quantize(&ctx, &symbol).unwrap();
    let hermitian_defect = max_abs_diff(&q, &adjoint(&q));
    println!("hermitian defect of a symmetric symbol: {hermitian_defect:.3e}");
    assert!(hermitian_defect <= 1e-12);

    // Multiplicativity: the twisted convolution of symbols quantizes to the
    // product of operators, exactly the algebra the phases encode.
    let f = TorusElement::generator(planck.clone(), LatticePoint::from_coords(&[1, 0]).unwrap());
    let g = TorusElement::generator(planck.clone(), LatticePoint::from_coords(&[0, 1]).unwrap());
    let product_defect = fro_norm(
        &(weyl_quantize(&ctx, &f.mul(&g).unwrap()).unwrap()
            - weyl_quantize(&ctx, &f).unwrap().dot(&weyl_quantize(&ctx, &g).unwrap())),
    );
    println!("quantized product defect: {product_defect:.3e}");
    assert!(product_defect <= 1e-12);

    // Linearity over a random combination.
    let combo = symbol.scale(Complex64::new(0.0, 3.0)).add(&f).unwrap();
    let lhs = weyl_quantize(&ctx, &combo).unwrap();
    let rhs = weyl_quantize(&ctx, &symbol).unwrap().mapv(|z| z * Complex64::new(0.0, 3.0))
        + weyl_quantize(&ctx, &f).unwrap();
    println!("linearity defect: {:.3e}", max_abs_diff(&lhs, &rhs));
    assert!(max_abs_diff(&lhs, &rhs) <= 1e-12);

    println!("weyl quantization behaves as an algebra map");
}
