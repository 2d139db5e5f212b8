//! Smooth members of the Dwork family, cross-checked against a singular-point search.

use dworklab::dwork::{is_smooth, oracle, smooth_parameters, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;

fn main() -> dworklab::Result<()> {
    for (p, k, n) in [(7, 1, 2), (13, 1, 2), (5, 1, 3), (5, 2, 3)] {
        let f = Field::new(p, k)?;
        let smooth = smooth_parameters(n, &f)?;
        println!("n = {n}, q = {}: {} smooth parameters", f.q(), smooth.len());
        for lambda in f.elements() {
            let params = DworkParams::new(n, lambda, &f)?;
            if let Some((ext, x)) = oracle::singular_point(&params, &CountConfig::default())? {
                assert!(!is_smooth(&params));
                let coords: Vec<_> = x.coords(&ext).iter().map(|&c| ext.coeffs(c)).collect();
                println!("  lambda = {:?} is singular at {coords:?} over F_{}", f.coeffs(lambda), ext.q());
            }
        }
    }
    Ok(())
}
