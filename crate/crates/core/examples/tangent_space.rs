//! Tangent space of x*xi + y*eta = 0 at (1, 1).
use superkit::geometry::{PointedVariety, RationalPoint};
use superkit::script::parse_poly;
use superkit::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Context::new(["x", "y"], ["xi", "eta"])?;
    let v = PointedVariety::new(&ctx, vec![parse_poly("x*xi + y*eta", &ctx)?], RationalPoint::from_ints(&[1, 1]))?;
    println!("by differentials:\n{}", v.tangent_space()?);
    println!("by the quotient m/m^2:\n{}", v.tangent_space_by_quotient()?);

    let sphere = Context::new(["x1", "x2", "x3"], ["xi1", "xi2", "xi3"])?;
    let g = parse_poly("x1^2 + x2^2 + x3^2 + xi1*xi2 - 1", &sphere)?;
    let w = PointedVariety::new(&sphere, vec![g], RationalPoint::from_ints(&[0, 0, 1]))?;
    println!("quadric at the pole:\n{}", w.tangent_space()?);
    Ok(())
}
