//! Supertrace, Berezinian, inverse and the elementary factorization.
use superkit::matrix::srank;
use superkit::script::parse_poly;
use superkit::{Context, SuperDim, SuperMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Context::new(Vec::<String>::new(), ["theta1", "theta2"])?;
    let entries = ["2", "theta1", "theta2", "1"].iter().map(|s| parse_poly(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
    let d = SuperDim::new(1, 1);
    let m = SuperMatrix::from_entries(&ctx, d, d, entries)?;

    println!("M = {}", m.render_rows());
    println!("str M = {}", m.supertrace()?);
    println!("Ber M = {}", m.berezinian()?);
    println!("Ber via T1 = {}", m.berezinian_via_t1()?);
    println!("M^-1 = {}", m.invert()?.render_rows());
    println!("srank M = {}", srank(&m)?);

    let f = m.elementary_decomposition()?;
    println!("upper {}", f.upper.render_rows());
    println!("diagonal {}", f.diagonal.render_rows());
    println!("lower {}", f.lower.render_rows());
    Ok(())
}
