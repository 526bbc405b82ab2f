//! Supervised discretization of a numeric column, then the same base as
//! interval-coded CSV.

use featcheck::discretize::mdl_cuts;
use featcheck::{apply_schemes, compute_scheme, read_csv_str, write_csv, DiscretizationMethod};

const SURFACES: &str = "\
surface,density,label
120,0.21,failure
180,0.25,failure
260,0.22,failure
310,0.41,failure
2200,0.38,success
2600,0.44,success
3100,0.35,success
5400,0.52,success
";

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    println!("separable: {:?}", mdl_cuts(&[1.0, 2.0, 3.0, 10.0, 11.0, 12.0], &["A", "A", "A", "B", "B", "B"])?);

    let base = read_csv_str(SURFACES, "label")?;
    let mut schemes = Vec::new();
    for feature in ["surface", "density"] {
        let scheme = compute_scheme(&base, feature, DiscretizationMethod::Mdl)?;
        println!("{feature}: cuts {:?} -> {}", scheme.cuts(), scheme.tokens().join(" "));
        schemes.push(scheme);
    }
    let width = compute_scheme(&base, "surface", DiscretizationMethod::EqualWidth { bins: 3 })?;
    println!("surface, 3 equal-width bins: {}", width.tokens().join(" "));

    let mut out = Vec::new();
    write_csv(&apply_schemes(&base, &schemes)?, &mut out)?;
    print!("{}", String::from_utf8(out)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
