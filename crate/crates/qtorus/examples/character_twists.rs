//! Twisted models and their invariant: each character twist chi yields a
//! model whose central character is chi^N, two models are equivalent exactly
//! when those agree, and an intertwiner for a group element exists exactly
//! when the element fixes chi^N.

use ndarray::array;
use num_rational::Ratio;
use qtorus::intertwiner::{rho_solve, IntertwinerError};
use qtorus::lattice::{char_action, Character};
use qtorus::planck::PlanckData;
use qtorus::schrodinger::{character_map, RepContext};
use qtorus::symplectic::SpElement;

fn main() {
    let planck = PlanckData::new(1, 3, 1).unwrap();
    let quarter = SpElement::validate(array![[0, -1], [1, 0]]).unwrap();

    // The central character of a twisted model is the twist raised to N.
    let twist = Character::new(vec![Ratio::new(1, 9), Ratio::new(5, 18)]).unwrap();
    let ctx = RepContext::twisted(planck.clone(), twist.clone()).unwrap();
    let central = character_map(&ctx).unwrap();
    let show = |chi: &Character| {
        chi.angles().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
    };
    println!("twist angles ({})", show(&twist));
    println!("central character angles ({}) (= twist^3)", show(&central));
    assert_eq!(central, twist.power(3));

    // Conjugating the model transports the central character by pullback.
    let conjugated = character_map(&ctx.conjugated(&quarter).unwrap()).unwrap();
    assert_eq!(conjugated, char_action(&quarter, &central).unwrap());
    println!("conjugation by the quarter rotation pulls the character back exactly");

    // Twist 1/9 on the position coordinate: its cube 1/3 is moved by the
    // rotation, so no intertwiner can exist and the averaging collapses.
    let moved = Character::new(vec![Ratio::new(1, 9), Ratio::new(0, 1)]).unwrap();
    let moved_ctx = RepContext::twisted(planck.clone(), moved).unwrap();
    match rho_solve(&moved_ctx, &quarter, 0) {
        Err(IntertwinerError::NoIntertwiner { attempts }) => {
            println!("moved twist: averaging collapsed for {attempts} seeds, as it must");
        }
        other => panic!("expected collapse, got {other:?}"),
    }

    // Twist 1/3: the twist itself moves under the rotation, but its cube is
    // the trivial character, which every element fixes. The intertwiner
    // exists; only chi^N matters.
    let benign = Character::new(vec![Ratio::new(1, 3), Ratio::new(1, 3)]).unwrap();
    assert_ne!(char_action(&quarter, &benign).unwrap(), benign);
    let benign_ctx = RepContext::twisted(planck.clone(), benign).unwrap();
    let r = rho_solve(&benign_ctx, &quarter, 0).unwrap();
    println!(
        "twist with trivial cube: intertwiner found, egorov residual {:.3e}",
        r.egorov_residual()
    );
    assert!(r.egorov_residual() <= 1e-10);

    // And the untwisted model, where everything is fixed.
    let canonical = RepContext::canonical(planck);
    assert!(character_map(&canonical).unwrap().is_trivial());
    let rc = rho_solve(&canonical, &quarter, 0).unwrap();
    println!(
        "canonical model: trivial character, intertwiner residual {:.3e}",
        rc.egorov_residual()
    );
}
