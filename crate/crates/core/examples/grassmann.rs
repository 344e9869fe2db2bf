//! Supercommutative polynomial arithmetic and derivatives.
use superkit::script::parse_poly;
use superkit::{Context, SuperPoly, Var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Context::new(["t"], ["theta1", "theta2"])?;
    let a = parse_poly("theta2*theta1", &ctx)?;
    println!("theta2*theta1 = {a}");

    let f = parse_poly("(t + theta1*theta2)^2", &ctx)?;
    println!("(t + theta1*theta2)^2 = {f}");
    println!("body {}  soul {}", f.body(), f.soul());

    let th1 = SuperPoly::named(&ctx, "theta1")?;
    println!("theta1^2 = {}", th1.pow(2));
    println!("d/dtheta1 (theta1*theta2) = {}", parse_poly("theta1*theta2", &ctx)?.partial(Var::Odd(0))?);
    println!("d/dtheta2 (theta1*theta2) = {}", parse_poly("theta1*theta2", &ctx)?.partial(Var::Odd(1))?);

    let u = parse_poly("2 + theta1*theta2", &ctx)?;
    println!("(2 + theta1*theta2)^-1 = {}", u.inverse()?);
    Ok(())
}
