//! Frobenius-style integrability of distributions.
use superkit::geometry::Distribution;
use superkit::script::parse_field;
use superkit::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: [(&[&str], &[&str], &[&str]); 3] = [
        (&["t1", "t2"], &["theta1", "theta2"], &["d/dt1", "d/dtheta1"]),
        (&["t"], &["theta1"], &["d/dt", "theta1*d/dt + d/dtheta1"]),
        (&["t1", "t2"], &["theta1"], &["d/dtheta1 + theta1*d/dt2"]),
    ];
    for (even, odd, fields) in cases {
        let ctx = Context::new(even.to_vec(), odd.to_vec())?;
        let fs = fields.iter().map(|f| parse_field(f, &ctx)).collect::<Result<Vec<_>, _>>()?;
        println!("span{{{}}}: {}", fields.join(", "), Distribution::new(fs)?.involutive()?);
    }
    Ok(())
}
