//! Twisted forms of a Dwork cubic over F_7: coefficients, counts and the
//! Frobenius-fixed-point cross-check over F_343.

use dworklab::dwork::{group_elements, oracle, twist_coefficients, twisted_count, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;

fn main() -> dworklab::Result<()> {
    let f = Field::new(7, 1)?;
    let params = DworkParams::new(2, f.from_int(3), &f)?;
    let cfg = CountConfig::default();
    let points = oracle::splitting_points(&params, 1, &cfg)?;
    println!("#X(F_343) = {}", points.points.len());
    for g in group_elements(2) {
        let form = twist_coefficients(&g, &params, 1)?;
        let count = twisted_count(&g, &params, 1, &cfg)?;
        let fixed = oracle::count_twisted_fixed(&points, &g);
        println!("g = {:?}: {} -> {count} points, fixed points {fixed}", g.exps(), serde_json::to_string(&form).unwrap());
        assert_eq!(count, fixed);
    }
    Ok(())
}
