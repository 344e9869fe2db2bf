//! Translations of R^{1|1}: axioms, left-invariant fields, action.
use superkit::geometry::{Morphism, RationalPoint};
use superkit::groups::{pair_context, GroupLaw};
use superkit::script::{parse_field, parse_poly};
use superkit::{Context, Var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Context::new(["t"], ["theta"])?;
    let pair = pair_context(&g)?;
    let mu = ["t + t' + theta*theta'", "theta + theta'"].iter().map(|s| parse_poly(s, &pair)).collect::<Result<_, _>>()?;
    let inv = ["-t", "-theta"].iter().map(|s| parse_poly(s, &g)).collect::<Result<_, _>>()?;
    let law = GroupLaw::new(Morphism::new(&pair, &g, mu)?, RationalPoint::from_ints(&[0]), Some(Morphism::new(&g, &g, inv)?))?;

    println!("{}", law.check_axioms()?);
    let dt = law.basis_vector(Var::Even(0))?;
    let dth = law.basis_vector(Var::Odd(0))?;
    let v_dt = law.left_invariant_field(&dt)?;
    let v_dth = law.left_invariant_field(&dth)?;
    println!("d/dt      -> {v_dt}");
    println!("d/dtheta  -> {v_dth}");
    println!("[V, V]    = {}", v_dth.bracket(&v_dth)?);
    println!("d/dtheta left invariant: {}", law.is_left_invariant(&parse_field("d/dtheta", &g)?)?);

    // The law acting on itself.
    println!("action of d/dtheta: {}", law.infinitesimal_action(law.mu(), &dth)?);
    Ok(())
}
