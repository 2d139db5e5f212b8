//! Counts of a Dwork quartic surface over F_25 and F_625 against its quotient
//! by G, and the congruence between them modulo q^m.

use dworklab::dwork::{count_dwork, count_quotient, smooth_parameters, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;
use dworklab::zeta::{congruence_check, CountSeries};

fn main() -> dworklab::Result<()> {
    let f = Field::new(5, 2)?;
    let cfg = CountConfig::default();
    let lambda = smooth_parameters(3, &f)?[1];
    let params = DworkParams::new(3, lambda, &f)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for m in 1..=2 {
        x.push(count_dwork(&params, m, &cfg)?);
        y.push(count_quotient(&params, m, &cfg)?);
    }
    let report = congruence_check(&CountSeries::new(25, x, "X")?, &CountSeries::new(25, y, "X/G")?)?;
    println!("lambda = {:?}", f.coeffs(lambda));
    for row in &report.rows {
        println!("m = {}: #X = {}, #X/G = {}, residues mod {} = {} / {}", row.m, row.n_a, row.n_b, row.modulus, row.residue_a, row.residue_b);
    }
    println!("congruent: {}", report.pass);
    Ok(())
}
