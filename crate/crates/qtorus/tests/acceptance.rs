//! End-to-end certification over the full arithmetic grid: one test per
//! published acceptance criterion, each printing a PASS line with the worst
//! observed residual.
//!
//! Grid: n = 1 with N in {2,3,4,5,7,8} and every numerator coprime to N,
//! n = 2 with N in {2,3,5} and numerator in {1, N-1}.

use ndarray::array;
use num_complex::Complex64;
use qtorus::algebra::{commutation_phase, TorusElement};
use qtorus::intertwiner::{
    cocycle_scalar, rho_fourier, rho_gl, rho_solve, rho_word, IntertwinerError,
};
use qtorus::lattice::{char_action, Character, LatticePoint};
use qtorus::numerics::{adjoint, fro_norm, trace, unitary_deviation};
use qtorus::planck::PlanckData;
use qtorus::schrodinger::{character_map, commutant_dim, pi_basis, weyl_quantize, RepContext};
use qtorus::symplectic::{random_word, SpElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn grid() -> Vec<PlanckData> {
    let mut points = Vec::new();
    for modulus in [2i64, 3, 4, 5, 7, 8] {
        for numer in 1..modulus {
            if num_integer::gcd(numer, modulus) == 1 {
                points.push(PlanckData::new(1, modulus, numer).unwrap());
            }
        }
    }
    for modulus in [2i64, 3, 5] {
        let mut numers = vec![1, modulus - 1];
        numers.dedup();
        for numer in numers {
            points.push(PlanckData::new(2, modulus, numer).unwrap());
        }
    }
    assert_eq!(points.len(), 24);
    points
}

fn frequency_box(n: usize, bound: i64) -> Vec<LatticePoint> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(2 * n as u32);
    (0..total)
        .map(|flat| {
            let mut rem = flat;
            let coords: Vec<i64> = (0..2 * n)
                .map(|_| {
                    let c = (rem % side) as i64 - bound;
                    rem /= side;
                    c
                })
                .collect();
            LatticePoint::from_coords(&coords).unwrap()
        })
        .collect()
}

#[test]
fn criterion_01_commutation_relation() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let n = planck.n();
        let modulus = planck.modulus();
        if n == 1 {
            let box_ops: Vec<_> = frequency_box(1, modulus)
                .into_iter()
                .map(|xi| (pi_basis(&ctx, &xi).unwrap(), xi))
                .collect();
            for (op_xi, xi) in &box_ops {
                for (op_eta, eta) in &box_ops {
                    let z = commutation_phase(&planck, xi, eta).unwrap();
                    let diff = op_xi.mul(op_eta).fro_diff(&op_eta.mul(op_xi).scale(z));
                    worst = worst.max(diff);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(100);
            for _ in 0..500 {
                let xi = LatticePoint::random(n, modulus, &mut rng);
                let eta = LatticePoint::random(n, modulus, &mut rng);
                let z = commutation_phase(&planck, &xi, &eta).unwrap();
                let lhs = pi_basis(&ctx, &xi).unwrap().mul(&pi_basis(&ctx, &eta).unwrap());
                let rhs = pi_basis(&ctx, &eta)
                    .unwrap()
                    .mul(&pi_basis(&ctx, &xi).unwrap())
                    .scale(z);
                worst = worst.max(lhs.fro_diff(&rhs));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(worst <= 1e-12, "worst commutation residual {worst}");
    assert!(elapsed <= 10.0, "commutation sweep took {elapsed:.1}s");
    println!("criterion-01 PASS commutation worst={worst:.3e} elapsed={elapsed:.2}s");
}

#[test]
fn criterion_02_egorov_for_generator_words() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for _ in 0..50 {
            let word = random_word(planck.n(), 4, &mut rng);
            let r = rho_word(&ctx, &word).unwrap();
            worst = worst.max(r.egorov_residual());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(worst <= 1e-10, "worst egorov residual {worst}");
    assert!(elapsed <= 15.0, "egorov sweep took {elapsed:.1}s");
    println!("criterion-02 PASS egorov-words worst={worst:.3e} elapsed={elapsed:.2}s");
}

#[test]
fn criterion_03_solver_matches_formulas_up_to_phase() {
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(300);
        for k in 0..20u64 {
            let word = random_word(planck.n(), 3, &mut rng);
            let uf = rho_word(&ctx, &word).unwrap();
            let us = rho_solve(&ctx, &word.to_matrix(), 300 + k).unwrap();
            let t = trace(&adjoint(uf.op()).dot(us.op()));
            let c = if t.norm() > 0.0 { t / t.norm() } else { Complex64::new(1.0, 0.0) };
            let aligned = uf.op().mapv(|z| z * c);
            worst = worst.max(fro_norm(&(us.op() - &aligned)));
        }
    }
    assert!(worst <= 1e-8, "worst solver/formula gap {worst}");
    println!("criterion-03 PASS solver-formula worst={worst:.3e}");
}

#[test]
fn criterion_04_canonical_character_is_trivial() {
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let chi = character_map(&ctx).unwrap();
        assert!(
            chi.is_trivial(),
            "canonical character nontrivial at ({}, {}, {})",
            planck.n(),
            planck.modulus(),
            planck.numer()
        );
    }
    println!("criterion-04 PASS character-trivial");
}

#[test]
fn criterion_05_traces_vanish_off_the_scalar_sublattice() {
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let modulus = planck.modulus();
        for xi in frequency_box(planck.n(), modulus) {
            if xi.divisible_by(modulus) {
                continue;
            }
            worst = worst.max(pi_basis(&ctx, &xi).unwrap().trace().norm());
        }
    }
    assert!(worst <= 1e-12, "worst off-lattice trace {worst}");
    println!("criterion-05 PASS trace-vanishing worst={worst:.3e}");
}

#[test]
fn criterion_06_commutant_is_scalar() {
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        assert_eq!(ctx.dim() as i64, planck.modulus().pow(planck.n() as u32));
        let est = commutant_dim(&ctx, 5, 600).unwrap();
        assert_eq!(
            est,
            1,
            "commutant estimate {est} at ({}, {}, {})",
            planck.n(),
            planck.modulus(),
            planck.numer()
        );
    }
    println!("criterion-06 PASS commutant-scalar");
}

#[test]
fn criterion_07_unitarity_and_star() {
    let mut worst_pi = 0.0f64;
    let mut worst_rho = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let n = planck.n();
        let modulus = planck.modulus();
        let eye = qtorus::schrodinger::PiOp::identity(planck.dim());

        let frequencies: Vec<LatticePoint> = if n == 1 {
            frequency_box(1, modulus)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(700);
            (0..300).map(|_| LatticePoint::random(n, modulus, &mut rng)).collect()
        };
        for xi in &frequencies {
            let op = pi_basis(&ctx, xi).unwrap();
            worst_pi = worst_pi.max(op.mul(&op.adjoint()).fro_diff(&eye));
            worst_pi = worst_pi.max(op.adjoint().fro_diff(&pi_basis(&ctx, &xi.neg()).unwrap()));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(701);
        for k in 0..20u64 {
            let word = random_word(n, 4, &mut rng);
            let r = rho_word(&ctx, &word).unwrap();
            worst_rho = worst_rho.max(unitary_deviation(r.op()));
            if k < 3 {
                let s = rho_solve(&ctx, &word.to_matrix(), 700 + k).unwrap();
                worst_rho = worst_rho.max(unitary_deviation(s.op()));
            }
        }
    }
    assert!(worst_pi <= 1e-12, "worst pi unitarity/star defect {worst_pi}");
    assert!(worst_rho <= 1e-10, "worst rho unitarity defect {worst_rho}");
    println!("criterion-07 PASS unitarity pi={worst_pi:.3e} rho={worst_rho:.3e}");
}

#[test]
fn criterion_08_projective_cocycle_is_a_unit_scalar() {
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let n = planck.n();
        let mut rng = ChaCha8Rng::seed_from_u64(800);
        for _ in 0..30 {
            let w1 = random_word(n, 3, &mut rng);
            let w2 = random_word(n, 3, &mut rng);
            let mut items = w1.items().to_vec();
            items.extend_from_slice(w2.items());
            let w12 = qtorus::symplectic::GeneratorWord::new(n, items).unwrap();
            let c = cocycle_scalar(
                rho_word(&ctx, &w1).unwrap().op(),
                rho_word(&ctx, &w2).unwrap().op(),
                rho_word(&ctx, &w12).unwrap().op(),
            )
            .unwrap();
            worst = worst.max((c.norm() - 1.0).abs());
        }

        if n == 1 {
            let f = rho_fourier(&ctx, &array![[1]]).unwrap();
            let parity = rho_gl(&ctx, &array![[-1]]).unwrap().to_matrix();
            let sq = f.dot(&f);
            let diff = fro_norm(&(&sq - &parity));
            assert!(diff <= 1e-12, "transform square misses parity by {diff}");
            let c = cocycle_scalar(&f, &f, &parity).unwrap();
            assert!(
                (c - Complex64::new(1.0, 0.0)).norm() <= 1e-12,
                "parity cocycle {c} is not 1"
            );
        }
    }
    assert!(worst <= 1e-10, "worst cocycle unimodularity defect {worst}");
    println!("criterion-08 PASS cocycle worst={worst:.3e}");
}

#[test]
fn criterion_09_intertwiner_exists_exactly_on_the_fixed_locus() {
    let quarter = SpElement::validate(array![[0, -1], [1, 0]]).unwrap();
    for modulus in [3i64, 5] {
        let planck = PlanckData::new(1, modulus, 1).unwrap();

        let twist = Character::new(vec![
            num_rational::Ratio::new(1, 3 * modulus),
            num_rational::Ratio::new(0, 1),
        ])
        .unwrap();
        let twisted = RepContext::twisted(planck.clone(), twist).unwrap();
        for seed in 0..5u64 {
            match rho_solve(&twisted, &quarter, seed) {
                Err(IntertwinerError::NoIntertwiner { .. }) => {}
                other => panic!("expected collapse at N={modulus} seed {seed}, got {other:?}"),
            }
        }

        let canonical = RepContext::canonical(planck.clone());
        let r = rho_solve(&canonical, &quarter, 900).unwrap();
        assert!(r.egorov_residual() <= 1e-10);

        let mut rng = ChaCha8Rng::seed_from_u64(901);
        for _ in 0..100 {
            let b = random_word(1, 4, &mut rng).to_matrix();
            let chi = Character::random(1, 2 * modulus * modulus, &mut rng);
            let ctx = RepContext::twisted(planck.clone(), chi).unwrap();
            let lhs = character_map(&ctx.conjugated(&b).unwrap()).unwrap();
            let rhs = char_action(&b, &character_map(&ctx).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "character map not equivariant at N={modulus}");
        }
    }
    println!("criterion-09 PASS uniqueness locus");
}

#[test]
fn criterion_10_egorov_for_quantized_fourier_series() {
    let mut worst = 0.0f64;
    for planck in grid() {
        let ctx = RepContext::canonical(planck.clone());
        let n = planck.n();
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        for _ in 0..10 {
            let word = random_word(n, 3, &mut rng);
            let b = word.to_matrix();
            let u = rho_word(&ctx, &word).unwrap();
            for _ in 0..20 {
                let support = rng.gen_range(1..=12);
                let f =
                    TorusElement::random(planck.clone(), support, 2 * planck.modulus(), &mut rng);
                let lhs = adjoint(u.op())
                    .dot(&weyl_quantize(&ctx, &f).unwrap())
                    .dot(u.op());
                let rhs = weyl_quantize(&ctx, &f.g_action(&b.inverse()).unwrap()).unwrap();
                worst = worst.max(fro_norm(&(lhs - rhs)));
            }
        }
    }
    assert!(worst <= 1e-9, "worst function-level egorov residual {worst}");
    println!("criterion-10 PASS function-egorov worst={worst:.3e}");
}

#[test]
fn criterion_11_cli_verify_passes_everywhere() {
    for planck in grid() {
        let start = Instant::now();
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_qtorus"))
            .args([
                "--n",
                &planck.n().to_string(),
                "--N",
                &planck.modulus().to_string(),
                "--M",
                &planck.numer().to_string(),
                "verify",
                "--suite",
                "all",
            ])
            .output()
            .expect("binary runs");
        let elapsed = start.elapsed().as_secs_f64();
        assert!(
            output.status.success(),
            "verify failed at ({}, {}, {}): {}",
            planck.n(),
            planck.modulus(),
            planck.numer(),
            String::from_utf8_lossy(&output.stderr)
        );
        assert!(
            elapsed <= 60.0,
            "verify took {elapsed:.1}s at ({}, {}, {})",
            planck.n(),
            planck.modulus(),
            planck.numer()
        );
    }
    println!("criterion-11 PASS cli-verify");
}

// The sampled Egorov residual used throughout draws the two dual basis
// frequencies plus twenty seeded ones; this pins that the residual is not an
// artifact of the fixed sample by rechecking one word on a fresh sweep.
#[test]
fn egorov_sample_is_representative() {
    let planck = PlanckData::new(1, 5, 2).unwrap();
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let word = random_word(1, 4, &mut rng);
    let r = rho_word(&ctx, &word).unwrap();
    let b = word.to_matrix();
    let uinv = qtorus::numerics::inverse(r.op()).unwrap();
    let mut worst = 0.0f64;
    for xi in frequency_box(1, 10) {
        let lhs = r.op().dot(&pi_basis(&ctx, &xi).unwrap().to_matrix()).dot(&uinv);
        let rhs = pi_basis(&ctx, &b.apply(&xi).unwrap()).unwrap().to_matrix();
        worst = worst.max(fro_norm(&(lhs - rhs)));
    }
    assert!(worst <= 1e-10, "exhaustive egorov residual {worst}");
}
