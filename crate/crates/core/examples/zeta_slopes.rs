//! Zeta functions and Newton polygons of the smooth Dwork cubics over F_7.

use dworklab::dwork::{count_dwork, smooth_parameters, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;
use dworklab::zeta::{elliptic_zeta, newton_polygon, unit_root_count, zeta_series, CountSeries};

fn main() -> dworklab::Result<()> {
    let f = Field::new(7, 1)?;
    let cfg = CountConfig::default();
    for lambda in smooth_parameters(2, &f)? {
        let params = DworkParams::new(2, lambda, &f)?;
        let counts: Vec<u64> = (1..=3).map(|m| count_dwork(&params, m, &cfg)).collect::<Result<_, _>>()?;
        let e = elliptic_zeta(counts[0], 7)?;
        let np = newton_polygon(&e.coeffs(), 7)?;
        let z = zeta_series(&CountSeries::new(7, counts.clone(), "X")?)?;
        println!(
            "lambda = {}: counts {counts:?}, predicted {:?}, a = {}, slopes {np}, unit roots {}, Z(T) = {:?}",
            lambda.index(),
            e.predict_series(3),
            e.a,
            unit_root_count(&np),
            z.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
