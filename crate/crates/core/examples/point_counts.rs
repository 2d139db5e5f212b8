//! Counting points of Dwork cubics over F_7 and F_49 with each strategy.

use dworklab::dwork::{count_dwork, dwork_poly, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::{count_points, projective_size, tally_points, CountConfig, Strategy};

fn main() -> dworklab::Result<()> {
    let f = Field::new(7, 1)?;
    println!("#P^2(F_7) = {}", projective_size(2, 7));
    for lambda in f.elements() {
        let params = DworkParams::new(2, lambda, &f)?;
        let poly = dwork_poly(&params);
        let enumerate = CountConfig { strategy: Strategy::Enumerate, ..CountConfig::default() };
        let fibered = CountConfig { strategy: Strategy::Fibered, ..CountConfig::default() };
        let a = count_points(&poly, &f, &enumerate)?;
        let b = count_points(&poly, &f, &fibered)?;
        assert_eq!(a, b);
        let tally = tally_points(&poly, &f, &CountConfig::sequential())?;
        let over_49 = count_dwork(&params, 2, &CountConfig::default())?;
        println!("lambda = {}: #X(F_7) = {a}, nonzero values = {}, #X(F_49) = {over_49}", lambda.index(), tally.nonzero);
    }
    Ok(())
}
