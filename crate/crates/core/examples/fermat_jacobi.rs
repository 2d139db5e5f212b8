//! Fermat hypersurfaces counted by Jacobi sums and by enumeration.

use dworklab::dwork::{count_dwork, count_fermat_jacobi, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;

fn main() -> dworklab::Result<()> {
    for (p, k, n) in [(7, 1, 2), (13, 1, 2), (5, 2, 3), (13, 1, 3), (11, 1, 4)] {
        let f = Field::new(p, k)?;
        let jacobi = count_fermat_jacobi(n, &f)?;
        let direct = count_dwork(&DworkParams::new(n, f.zero(), &f)?, 1, &CountConfig::default())?;
        println!("n = {n}, q = {}: Jacobi sums {jacobi}, enumeration {direct}", f.q());
        assert_eq!(jacobi, direct);
    }
    Ok(())
}
