//! Running a session script and exporting values.
use superkit::script::{run, RunOptions};

const SCRIPT: &str = "\
context g even=[t] odd=[theta]
group r on g mu=[t + t' + theta*theta', theta + theta'] unit=(0)
livf d/dtheta
matrix m dims 1|1 -> 1|1 rows [[2, theta], [theta, 1]]
ber m
export m
";

fn main() {
    let report = run(SCRIPT, &RunOptions::default());
    print!("{}", report.output);
    for e in &report.errors {
        eprintln!("{e}");
    }
    print!("{}", report.exports_json());
}
