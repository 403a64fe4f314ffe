//! The defining commutation relation: reordering two frequency operators
//! costs the exact phase exp(2 pi i hbar omega(eta, xi)), for every pair of
//! frequencies and every arithmetic point sampled here.

use qtorus::algebra::commutation_phase;
use qtorus::lattice::LatticePoint;
use qtorus::planck::PlanckData;
use qtorus::schrodinger::{pi_basis, RepContext};

fn main() {
    for (modulus, numer) in [(2i64, 1i64), (3, 1), (5, 3), (8, 5)] {
        let planck = PlanckData::new(1, modulus, numer).unwrap();
        let ctx = RepContext::canonical(planck.clone());
        let mut worst = 0.0f64;
        for a in -modulus..=modulus {
            for b in -modulus..=modulus {
                for c in -modulus..=modulus {
                    for d in -modulus..=modulus {
                        let xi = LatticePoint::from_coords(&[a, b]).unwrap();
                        let eta = LatticePoint::from_coords(&[c, d]).unwrap();
                        let z = commutation_phase(&planck, &xi, &eta).unwrap();
                        let lhs =
                            pi_basis(&ctx, &xi).unwrap().mul(&pi_basis(&ctx, &eta).unwrap());
                        let rhs = pi_basis(&ctx, &eta)
                            .unwrap()
                            .mul(&pi_basis(&ctx, &xi).unwrap())
                            .scale(z);
                        worst = worst.max(lhs.fro_diff(&rhs));
                    }
                }
            }
        }
        println!(
            "hbar = {numer}/{modulus}: worst reordering residual over all \
             frequencies in [-{modulus}, {modulus}]^2 is {worst:.3e}"
        );
        assert!(worst <= 1e-12);
    }

    // One concrete pair, showing the phase itself.
    let planck = PlanckData::new(1, 3, 1).unwrap();
    let xi = LatticePoint::from_coords(&[1, 0]).unwrap();
    let eta = LatticePoint::from_coords(&[0, 1]).unwrap();
    let z = commutation_phase(&planck, &xi, &eta).unwrap();
    println!(
        "at hbar = 1/3 the shift and multiplication operators reorder at \
         phase {:.6} + {:.6}i (a primitive cube root of unity)",
        z.re, z.im
    );
}
