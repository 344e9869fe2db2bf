//! Pullback along t -> t + theta1*theta2 and its Jacobian.
use superkit::geometry::{classify_at, differential_at, Morphism, RationalPoint};
use superkit::script::parse_poly;
use superkit::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Context::new(["t"], ["theta1", "theta2"])?;
    let images = ["t + theta1*theta2", "theta1", "theta2"].iter().map(|s| parse_poly(s, &ctx)).collect::<Result<_, _>>()?;
    let alpha = Morphism::new(&ctx, &ctx, images)?;

    for f in ["t", "t^2", "t^3", "t^2*theta1 + t"] {
        println!("alpha*({f}) = {}", alpha.pullback(&parse_poly(f, &ctx)?)?);
    }
    for t0 in [0, 1, -2] {
        let m = RationalPoint::from_ints(&[t0]);
        println!("J at t={t0}: {}  {}", differential_at(&alpha, &m)?.render_rows(), classify_at(&alpha, &m)?);
    }
    Ok(())
}
