//! Lie superalgebras of GL, SL and OSp through dual numbers.
use superkit::groups::{commutator_bracket, lie_algebra, MatrixGroupSpec};
use superkit::script::parse_poly;
use superkit::{Context, SuperDim, SuperMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, spec) in [
        ("gl(1|1)", MatrixGroupSpec::gl(SuperDim::new(1, 1))),
        ("sl(1|1)", MatrixGroupSpec::sl(SuperDim::new(1, 1))),
        ("sl(2|2)", MatrixGroupSpec::sl(SuperDim::new(2, 2))),
        ("osp(1|2)", MatrixGroupSpec::standard_osp(1, 2)?),
    ] {
        println!("{name}\n{}\n", lie_algebra(&spec)?);
    }

    // The group commutator of I + e x and I + e' y recovers [x, y].
    let ctx = Context::new(Vec::<String>::new(), ["e1", "e2", "e3", "e4", "a", "b"])?;
    let d = SuperDim::new(1, 1);
    let lit = |v: [&str; 4]| -> Result<SuperMatrix, Box<dyn std::error::Error>> {
        let entries = v.iter().map(|s| parse_poly(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
        Ok(SuperMatrix::from_entries(&ctx, d, d, entries)?)
    };
    let x = lit(["1", "a", "0", "2"])?;
    let y = lit(["0", "0", "b", "1"])?;
    println!("commutator {}", commutator_bracket(&x, &y)?.render_rows());
    println!("xy - yx    {}", x.superbracket(&y)?.render_rows());
    Ok(())
}
