//! Self-certification suites: every identity the library claims is rechecked
//! numerically at the configured (n, N, M) point, with one report line per
//! check and pinned tolerances.
//!
//! Four suites partition the checks: `algebra` exercises the symbol algebra,
//! `rep` the standard representation, `rho` the symplectic intertwiners, and
//! `uniqueness` the fixed-point characterization. Sampling is deterministic
//! in the configured seed, so reports are reproducible byte for byte.
//!
//! Setting the environment variable `QTORUS_FAULT` flips one phase inside
//! the commutation check; a run must then fail and name that check. This
//! keeps the harness honest: a pipeline that cannot fail certifies nothing.

use crate::algebra::{commutation_phase, struct_phase, TorusElement};
use crate::intertwiner::{
    cocycle, egorov_residual, phase_normalize, rho_gl, rho_item, rho_solve, rho_word,
    IntertwinerError, RhoResult,
};
use crate::lattice::{char_action, Character, LatticePoint};
use crate::numerics::{adjoint, fro_norm, max_abs_diff, trace, unitary_deviation};
use crate::planck::PlanckData;
use crate::schrodinger::{
    character_map, commutant_dim, inner_product, pi_basis, weyl_quantize, RepContext,
};
use crate::symplectic::{random_word, GeneratorItem, GeneratorWord};
use ndarray::Array2;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const TOL_EXACT: f64 = 0.0;
pub const TOL_ALGEBRA: f64 = 1e-12;
pub const TOL_EGOROV: f64 = 1e-10;
pub const TOL_SOLVER: f64 = 1e-8;
pub const TOL_FUNCTION_EGOROV: f64 = 1e-9;

/// One verified identity: its worst observed residual against the pinned
/// tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, residual: f64, tolerance: f64, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: residual <= tolerance,
            residual,
            tolerance,
            detail,
        }
    }
}

/// Aggregated result of one suite at one arithmetic point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub modulus: i64,
    #[serde(rename = "M")]
    pub numer: i64,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Rep,
    Rho,
    Uniqueness,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Suite::All),
            "algebra" => Ok(Suite::Algebra),
            "rep" => Ok(Suite::Rep),
            "rho" => Ok(Suite::Rho),
            "uniqueness" => Ok(Suite::Uniqueness),
            other => Err(format!(
                "unknown suite '{other}' (expected all, algebra, rep, rho, or uniqueness)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Rep => "rep",
            Suite::Rho => "rho",
            Suite::Uniqueness => "uniqueness",
        };
        write!(f, "{s}")
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs the requested suite at the given point. The `All` suite concatenates
/// the four specific suites in a fixed order.
pub fn run_suite(planck: &PlanckData, suite: Suite, seed: u64) -> SuiteReport {
    let fault = std::env::var_os("QTORUS_FAULT").is_some();
    let checks = match suite {
        Suite::Algebra => checks_algebra(planck, seed),
        Suite::Rep => checks_rep(planck, seed, fault),
        Suite::Rho => checks_rho(planck, seed),
        Suite::Uniqueness => checks_uniqueness(planck, seed),
        Suite::All => {
            let mut all = checks_algebra(planck, seed);
            all.extend(checks_rep(planck, seed, fault));
            all.extend(checks_rho(planck, seed));
            all.extend(checks_uniqueness(planck, seed));
            all
        }
    };
    SuiteReport {
        suite: suite.to_string(),
        n: planck.n(),
        modulus: planck.modulus(),
        numer: planck.numer(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn checks_algebra(planck: &PlanckData, seed: u64) -> Vec<CheckReport> {
    vec![
        check_struct_phase_cocycle(planck, seed),
        check_commutation_reordering(planck, seed),
        check_star_antihomomorphism(planck, seed),
        check_relabeling_automorphism(planck, seed),
    ]
}

fn checks_rep(planck: &PlanckData, seed: u64, fault: bool) -> Vec<CheckReport> {
    vec![
        check_operator_commutation(planck, seed, fault),
        check_pi_multiplicativity(planck, seed),
        check_pi_star_unitarity(planck, seed),
        check_trace_vanishing(planck),
        check_character_trivial_canonical(planck),
        check_character_twist_power(planck, seed),
        check_commutant_scalar(planck, seed),
        check_inner_product_invariance(planck, seed),
    ]
}

fn checks_rho(planck: &PlanckData, seed: u64) -> Vec<CheckReport> {
    vec![
        check_egorov_generators(planck, seed),
        check_egorov_words(planck, seed),
        check_rho_unitarity(planck, seed),
        check_solver_formula_agreement(planck, seed),
        check_cocycle_scalar_unimodular(planck, seed),
        check_fourier_squared_parity(planck),
        check_function_egorov(planck, seed),
    ]
}

fn checks_uniqueness(planck: &PlanckData, seed: u64) -> Vec<CheckReport> {
    vec![
        check_solver_succeeds_canonical(planck, seed),
        check_no_intertwiner_off_fixed_point(planck, seed),
        check_character_equivariance(planck, seed),
    ]
}

fn check_struct_phase_cocycle(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 1);
    let n = planck.n();
    let bound = 3 * planck.modulus();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let xi = LatticePoint::random(n, bound, &mut rng);
        let eta = LatticePoint::random(n, bound, &mut rng);
        let zeta = LatticePoint::random(n, bound, &mut rng);
        let lhs = struct_phase(planck, &xi, &eta).unwrap()
            * struct_phase(planck, &xi.add(&eta).unwrap(), &zeta).unwrap();
        let rhs = struct_phase(planck, &eta, &zeta).unwrap()
            * struct_phase(planck, &xi, &eta.add(&zeta).unwrap()).unwrap();
        worst = worst.max((lhs - rhs).norm());
        worst = worst.max((lhs.norm() - 1.0).abs());
    }
    CheckReport::new(
        "struct-phase-cocycle",
        worst,
        TOL_ALGEBRA,
        "associativity of the structure phase on 200 random triples".into(),
    )
}

fn check_commutation_reordering(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 2);
    let n = planck.n();
    let bound = 2 * planck.modulus();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let xi = LatticePoint::random(n, bound, &mut rng);
        let eta = LatticePoint::random(n, bound, &mut rng);
        let f = TorusElement::generator(planck.clone(), xi.clone());
        let g = TorusElement::generator(planck.clone(), eta.clone());
        let z = commutation_phase(planck, &xi, &eta).unwrap();
        let diff = f
            .mul(&g)
            .unwrap()
            .max_coeff_diff(&g.mul(&f).unwrap().scale(z))
            .unwrap();
        worst = worst.max(diff);
    }
    CheckReport::new(
        "commutation-reordering",
        worst,
        TOL_ALGEBRA,
        "generator reordering phase on 100 random pairs".into(),
    )
}

fn check_star_antihomomorphism(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = TorusElement::random(planck.clone(), 4, 2 * planck.modulus(), &mut rng);
        let g = TorusElement::random(planck.clone(), 4, 2 * planck.modulus(), &mut rng);
        let lhs = f.mul(&g).unwrap().star();
        let rhs = g.star().mul(&f.star()).unwrap();
        worst = worst.max(lhs.max_coeff_diff(&rhs).unwrap());
    }
    CheckReport::new(
        "star-antihomomorphism",
        worst,
        TOL_ALGEBRA,
        "(fg)* = g*f* on 50 random element pairs".into(),
    )
}

fn check_relabeling_automorphism(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 4);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let b = random_word(n, 4, &mut rng).to_matrix();
        let f = TorusElement::random(planck.clone(), 3, planck.modulus(), &mut rng);
        let g = TorusElement::random(planck.clone(), 3, planck.modulus(), &mut rng);
        let lhs = f.mul(&g).unwrap().g_action(&b).unwrap();
        let rhs = f
            .g_action(&b)
            .unwrap()
            .mul(&g.g_action(&b).unwrap())
            .unwrap();
        worst = worst.max(lhs.max_coeff_diff(&rhs).unwrap());
    }
    CheckReport::new(
        "symplectic-relabeling-automorphism",
        worst,
        TOL_ALGEBRA,
        "frequency relabeling preserves products on 50 samples".into(),
    )
}

fn check_operator_commutation(planck: &PlanckData, seed: u64, fault: bool) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let n = planck.n();
    let modulus = planck.modulus();
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    let mut first = true;

    let eval = |xi: &LatticePoint, eta: &LatticePoint, worst: &mut f64, first: &mut bool| {
        let mut lhs = pi_basis(&ctx, xi).unwrap().mul(&pi_basis(&ctx, eta).unwrap());
        if fault && *first {
            lhs = lhs.scale(Complex64::new(-1.0, 0.0));
            *first = false;
        }
        let z = commutation_phase(planck, xi, eta).unwrap();
        let rhs = pi_basis(&ctx, eta)
            .unwrap()
            .mul(&pi_basis(&ctx, xi).unwrap())
            .scale(z);
        *worst = worst.max(lhs.fro_diff(&rhs));
    };

    if n == 1 {
        let side: Vec<LatticePoint> = (-modulus..=modulus)
            .flat_map(|a| {
                (-modulus..=modulus).map(move |b| LatticePoint::from_coords(&[a, b]).unwrap())
            })
            .collect();
        for xi in &side {
            for eta in &side {
                eval(xi, eta, &mut worst, &mut first);
                pairs += 1;
            }
        }
    } else {
        let mut rng = rng_for(seed, 5);
        for _ in 0..500 {
            let xi = LatticePoint::random(n, modulus, &mut rng);
            let eta = LatticePoint::random(n, modulus, &mut rng);
            eval(&xi, &eta, &mut worst, &mut first);
            pairs += 1;
        }
    }
    CheckReport::new(
        "operator-commutation",
        worst,
        TOL_ALGEBRA,
        format!("operator reordering phase on {pairs} frequency pairs"),
    )
}

fn check_pi_multiplicativity(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 6);
    let n = planck.n();
    let bound = 2 * planck.modulus();
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let xi = LatticePoint::random(n, bound, &mut rng);
        let eta = LatticePoint::random(n, bound, &mut rng);
        let lhs = pi_basis(&ctx, &xi).unwrap().mul(&pi_basis(&ctx, &eta).unwrap());
        let z = struct_phase(planck, &xi, &eta).unwrap();
        let rhs = pi_basis(&ctx, &xi.add(&eta).unwrap()).unwrap().scale(z);
        worst = worst.max(lhs.fro_diff(&rhs));
    }
    CheckReport::new(
        "pi-multiplicativity",
        worst,
        TOL_ALGEBRA,
        "products follow the structure phase on 300 random pairs".into(),
    )
}

fn check_pi_star_unitarity(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let n = planck.n();
    let modulus = planck.modulus();
    let eye = crate::schrodinger::PiOp::identity(planck.dim());
    let mut worst = 0.0f64;
    let mut count = 0usize;

    let eval = |xi: &LatticePoint, worst: &mut f64| {
        let op = pi_basis(&ctx, xi).unwrap();
        *worst = worst.max(op.adjoint().fro_diff(&pi_basis(&ctx, &xi.neg()).unwrap()));
        *worst = worst.max(op.mul(&op.adjoint()).fro_diff(&eye));
    };

    if n == 1 {
        for a in -modulus..=modulus {
            for b in -modulus..=modulus {
                eval(&LatticePoint::from_coords(&[a, b]).unwrap(), &mut worst);
                count += 1;
            }
        }
    } else {
        let mut rng = rng_for(seed, 7);
        for _ in 0..300 {
            eval(&LatticePoint::random(n, modulus, &mut rng), &mut worst);
            count += 1;
        }
    }
    CheckReport::new(
        "pi-star-unitarity",
        worst,
        TOL_ALGEBRA,
        format!("adjoint negates frequency and inverts, {count} frequencies"),
    )
}

fn check_trace_vanishing(planck: &PlanckData) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let n = planck.n();
    let modulus = planck.modulus();
    let side = 2 * modulus + 1;
    let total = (side as usize).pow(2 * n as u32);
    let dim = planck.dim() as f64;
    let mut worst = 0.0f64;
    for flat in 0..total {
        let mut rem = flat;
        let coords: Vec<i64> = (0..2 * n)
            .map(|_| {
                let c = (rem % side as usize) as i64 - modulus;
                rem /= side as usize;
                c
            })
            .collect();
        let xi = LatticePoint::from_coords(&coords).unwrap();
        let tr = pi_basis(&ctx, &xi).unwrap().trace();
        if xi.divisible_by(modulus) {
            worst = worst.max((tr - Complex64::new(dim, 0.0)).norm());
        } else {
            worst = worst.max(tr.norm());
        }
    }
    CheckReport::new(
        "trace-vanishing",
        worst,
        TOL_ALGEBRA,
        format!("traces vanish off the scalar sublattice, {total} frequencies"),
    )
}

fn check_character_trivial_canonical(planck: &PlanckData) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let residual = match character_map(&ctx) {
        Ok(chi) if chi.is_trivial() => 0.0,
        _ => 1.0,
    };
    CheckReport::new(
        "character-trivial-canonical",
        residual,
        TOL_EXACT,
        "central character of the untwisted model is exactly trivial".into(),
    )
}

fn check_character_twist_power(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 8);
    let n = planck.n();
    let modulus = planck.modulus();
    let mut mismatches = 0usize;
    for _ in 0..20 {
        let twist = Character::random(n, 2 * modulus * modulus, &mut rng);
        let ctx = RepContext::twisted(planck.clone(), twist.clone()).unwrap();
        match character_map(&ctx) {
            Ok(chi) if chi == twist.power(modulus) => {}
            _ => mismatches += 1,
        }
    }
    CheckReport::new(
        "character-twist-power",
        mismatches as f64,
        TOL_EXACT,
        "central character is the twist raised to N, 20 random twists".into(),
    )
}

fn check_commutant_scalar(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let est = commutant_dim(&ctx, 5, seed).unwrap();
    CheckReport::new(
        "commutant-scalar",
        (est as f64) - 1.0,
        TOL_EXACT,
        format!(
            "averaged commutant estimate {est} on 5 trials at dimension {}",
            planck.dim()
        ),
    )
}

fn check_inner_product_invariance(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 9);
    let dim = planck.dim();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let xi = LatticePoint::random(planck.n(), 2 * planck.modulus(), &mut rng);
        let op = pi_basis(&ctx, &xi).unwrap();
        let f = crate::numerics::CVector::from_shape_fn(dim, |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let g = crate::numerics::CVector::from_shape_fn(dim, |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let lhs = inner_product(&op.apply_vec(&f), &op.apply_vec(&g)).unwrap();
        let rhs = inner_product(&f, &g).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    CheckReport::new(
        "inner-product-invariance",
        worst,
        TOL_ALGEBRA,
        "generators preserve the normalized inner product, 50 samples".into(),
    )
}

fn check_egorov_generators(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 10);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..15 {
        let word = random_word(n, 1, &mut rng);
        let item = &word.items()[0];
        let u = rho_item(&ctx, item).unwrap();
        worst = worst.max(egorov_residual(&ctx, &u, &item.to_sp()).unwrap());
    }
    CheckReport::new(
        "egorov-generators",
        worst,
        TOL_EGOROV,
        "single-generator conjugation on 15 random generators".into(),
    )
}

fn check_egorov_words(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 11);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let word = random_word(n, 4, &mut rng);
        let r = rho_word(&ctx, &word).unwrap();
        worst = worst.max(r.egorov_residual());
    }
    CheckReport::new(
        "egorov-words",
        worst,
        TOL_EGOROV,
        "word operators conjugate labels forward, 50 random words".into(),
    )
}

fn check_rho_unitarity(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 12);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let word = random_word(n, 4, &mut rng);
        let r = rho_word(&ctx, &word).unwrap();
        worst = worst.max(unitary_deviation(r.op()));
    }
    CheckReport::new(
        "rho-unitarity",
        worst,
        TOL_EGOROV,
        "word operators are unitary, 30 random words".into(),
    )
}

fn check_solver_formula_agreement(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 13);
    let n = planck.n();
    let dim = planck.dim();
    let mut worst = 0.0f64;
    for k in 0..20u64 {
        let word = random_word(n, 3, &mut rng);
        let uf = match rho_word(&ctx, &word) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let us = match rho_solve(&ctx, &word.to_matrix(), seed.wrapping_add(1000 + k)) {
            Ok(r) => r,
            Err(_) => {
                worst = worst.max(1.0);
                continue;
            }
        };
        let t = trace(&adjoint(uf.op()).dot(us.op()));
        let c = if t.norm() > 0.0 {
            t / t.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let aligned = uf.op().mapv(|z| z * c);
        worst = worst.max(fro_norm(&(us.op() - &aligned)));
    }
    CheckReport::new(
        "solver-formula-agreement",
        worst,
        TOL_SOLVER,
        format!("averaging matches formulas up to phase, 20 words, dim {dim}"),
    )
}

fn check_cocycle_scalar_unimodular(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 14);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let w1 = random_word(n, 3, &mut rng);
        let w2 = random_word(n, 3, &mut rng);
        let mut items = w1.items().to_vec();
        items.extend_from_slice(w2.items());
        let w12 = GeneratorWord::new(n, items).unwrap();
        let (r1, r2, r12) = (
            rho_word(&ctx, &w1).unwrap(),
            rho_word(&ctx, &w2).unwrap(),
            rho_word(&ctx, &w12).unwrap(),
        );
        match cocycle(&r1, &r2, &r12) {
            Ok(z) => worst = worst.max((z.norm() - 1.0).abs()),
            Err(IntertwinerError::NotScalar { residual }) => worst = worst.max(residual),
            Err(_) => worst = worst.max(1.0),
        }
    }
    CheckReport::new(
        "cocycle-scalar-unimodular",
        worst,
        TOL_EGOROV,
        "pair defects are unit scalars, 30 word pairs".into(),
    )
}

fn check_fourier_squared_parity(planck: &PlanckData) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let n = planck.n();
    let eye: Array2<i64> = Array2::eye(n);
    let f = crate::intertwiner::rho_fourier(&ctx, &eye).unwrap();
    let minus_eye = eye.mapv(|v| -v);
    let parity = rho_gl(&ctx, &minus_eye).unwrap().to_matrix();
    let residual = max_abs_diff(&f.dot(&f), &parity);
    CheckReport::new(
        "fourier-squared-parity",
        residual,
        TOL_ALGEBRA,
        "the transform squares to the parity permutation".into(),
    )
}

fn check_function_egorov(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 15);
    let n = planck.n();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let word = random_word(n, 3, &mut rng);
        let b = word.to_matrix();
        let u = rho_word(&ctx, &word).unwrap();
        for _ in 0..20 {
            let support = rng.gen_range(1..=12);
            let f = TorusElement::random(planck.clone(), support, 2 * planck.modulus(), &mut rng);
            let lhs = adjoint(u.op())
                .dot(&weyl_quantize(&ctx, &f).unwrap())
                .dot(u.op());
            let rhs = weyl_quantize(&ctx, &f.g_action(&b.inverse()).unwrap()).unwrap();
            worst = worst.max(fro_norm(&(lhs - rhs)));
        }
    }
    CheckReport::new(
        "function-egorov",
        worst,
        TOL_FUNCTION_EGOROV,
        "conjugation pulls back quantized series, 10 words x 20 series".into(),
    )
}

fn check_solver_succeeds_canonical(planck: &PlanckData, seed: u64) -> CheckReport {
    let ctx = RepContext::canonical(planck.clone());
    let mut rng = rng_for(seed, 16);
    let n = planck.n();
    let mut worst = 0.0f64;
    for k in 0..5u64 {
        let b = random_word(n, 4, &mut rng).to_matrix();
        match rho_solve(&ctx, &b, seed.wrapping_add(2000 + k)) {
            Ok(r) => worst = worst.max(r.egorov_residual()),
            Err(_) => worst = worst.max(1.0),
        }
    }
    CheckReport::new(
        "solver-succeeds-canonical",
        worst,
        TOL_EGOROV,
        "averaging finds an intertwiner for 5 random group elements".into(),
    )
}

/// The twist with angle 1/(3N) on the first position coordinate; its N-th
/// power has angle 1/3 there, which the standard quarter-rotation block does
/// not fix.
fn off_fixed_point_twist(planck: &PlanckData) -> Character {
    let n = planck.n();
    let mut angles = vec![Ratio::new(0, 1); 2 * n];
    angles[0] = Ratio::new(1, 3 * planck.modulus());
    Character::new(angles).unwrap()
}

fn check_no_intertwiner_off_fixed_point(planck: &PlanckData, seed: u64) -> CheckReport {
    let n = planck.n();
    let eye: Array2<i64> = Array2::eye(n);
    let b = GeneratorItem::fourier(eye).unwrap().to_sp();
    let twist = off_fixed_point_twist(planck);
    let twisted = RepContext::twisted(planck.clone(), twist).unwrap();

    let collapse: f64 = match rho_solve(&twisted, &b, seed) {
        Err(IntertwinerError::NoIntertwiner { .. }) => 0.0,
        _ => 1.0,
    };
    let canonical = RepContext::canonical(planck.clone());
    let succeed = match rho_solve(&canonical, &b, seed) {
        Ok(r) => r.egorov_residual(),
        Err(_) => 1.0,
    };
    CheckReport::new(
        "no-intertwiner-off-fixed-point",
        collapse.max(succeed),
        TOL_EGOROV,
        "a moved twist collapses the averaging; the untwisted model does not".into(),
    )
}

fn check_character_equivariance(planck: &PlanckData, seed: u64) -> CheckReport {
    let mut rng = rng_for(seed, 17);
    let n = planck.n();
    let modulus = planck.modulus();
    let mut mismatches = 0usize;
    for _ in 0..100 {
        let b = random_word(n, 4, &mut rng).to_matrix();
        let twist = Character::random(n, 2 * modulus * modulus, &mut rng);
        let ctx = RepContext::twisted(planck.clone(), twist).unwrap();
        let lhs = character_map(&ctx.conjugated(&b).unwrap());
        let rhs = character_map(&ctx).map(|chi| char_action(&b, &chi).unwrap());
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => mismatches += 1,
        }
    }
    CheckReport::new(
        "character-equivariance",
        mismatches as f64,
        TOL_EXACT,
        "central characters pull back exactly, 100 seeded pairs".into(),
    )
}

/// Sanity harness shared by the identity-based CLI paths: a phase-normalized
/// result whose residual is re-derived rather than trusted.
pub fn recertify(ctx: &RepContext, r: &RhoResult, b: &crate::symplectic::SpElement) -> f64 {
    let normalized = phase_normalize(r.op().clone());
    egorov_residual(ctx, &normalized, b).unwrap_or(f64::INFINITY)
}
