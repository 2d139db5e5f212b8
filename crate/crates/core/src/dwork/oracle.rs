//! Brute-force cross-checks: they share no code with the fast paths beyond
//! field arithmetic and point enumeration.

use std::collections::BTreeSet;

use super::group::{act_raw, group_elements, GroupElement};
use super::DworkParams;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::hypersurface::{collect_points, eval, frobenius_map, CountConfig, ProjPoint, Strategy};

/// A point of `P^n` over the smallest extension containing `mu_(n+1)` where
/// `f` and all partials vanish, if any. Singular points of a Dwork member have
/// all coordinates in `mu_(n+1)` up to scaling, so this extension suffices.
pub fn singular_point(params: &DworkParams, cfg: &CountConfig) -> Result<Option<(Field, ProjPoint)>> {
    let base = params.field();
    let d = params.degree() as u64;
    let q = base.q() as u64;
    let j = (1..=d as u32).find(|&j| (q.pow(j) - 1) % d == 0).expect("order of q mod d is at most d");
    let ext = params.extension(j)?;
    let field = ext.field().clone();
    let f = ext.poly();
    let partials = (0..=params.n()).map(|i| f.derivative(i, &field)).collect::<Result<Vec<_>>>()?;
    let cfg = CountConfig { strategy: Strategy::Enumerate, ..cfg.clone() };
    for x in collect_points(&f, &field, &cfg)? {
        let mut singular = true;
        for g in &partials {
            if !eval(g, &x, &field)?.is_zero() {
                singular = false;
                break;
            }
        }
        if singular {
            return Ok(Some((field, x)));
        }
    }
    Ok(None)
}

/// `X_lambda(F_(Q^(n+1)))` with `Q = q^m`, together with that field and the
/// image of the designated root of unity of `F_Q`.
pub struct SplittingPoints {
    pub field: Field,
    pub zeta: FieldElement,
    pub points: Vec<ProjPoint>,
    /// `Q`-Frobenius as a power of `p`.
    pub frobenius_power: u64,
}

pub fn splitting_points(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<SplittingPoints> {
    let ext = params.extension(m)?;
    let zeta_small = ext.zeta()?;
    let small = ext.field();
    let big = Field::new(small.p() as u64, small.k() * params.degree())?;
    let embedding = Embedding::new(small, &big)?;
    let lambda = embedding.apply(ext.lambda());
    let big_params = DworkParams::new(params.n(), lambda, &big)?;
    let cfg = CountConfig { strategy: Strategy::Enumerate, ..cfg.clone() };
    let points = collect_points(&super::dwork_poly(&big_params), &big, &cfg)?;
    Ok(SplittingPoints {
        zeta: embedding.apply(zeta_small),
        frobenius_power: small.k() as u64,
        field: big,
        points,
    })
}

/// `#{x in X_lambda(F_(Q^(n+1))) : Frob_Q(x) = g x}`, which equals the
/// number of `F_Q`-points of the twist by `g`.
pub fn twisted_fixed_points(g: &GroupElement, params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<u64> {
    if g.n() != params.n() {
        return Err(Error::DimensionMismatch { expected: params.n() + 1, got: g.exps().len() });
    }
    let sp = splitting_points(params, m, cfg)?;
    Ok(count_twisted_fixed(&sp, g))
}

pub fn count_twisted_fixed(sp: &SplittingPoints, g: &GroupElement) -> u64 {
    sp.points
        .iter()
        .filter(|x| frobenius_map(x, sp.frobenius_power, &sp.field) == act_raw(g, x.raw(), sp.zeta.index(), &sp.field))
        .count() as u64
}

/// Number of `G`-orbits in `X_lambda(F_(Q^(n+1)))` mapped to themselves by
/// `Frob_Q`, i.e. `#(X_lambda / G)(F_Q)`.
pub fn count_quotient_oracle(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<u64> {
    let sp = splitting_points(params, m, cfg)?;
    let group = group_elements(params.n());
    let orbit_min = |x: &ProjPoint| -> ProjPoint {
        group.iter().map(|g| act_raw(g, x.raw(), sp.zeta.index(), &sp.field)).min().expect("group is nonempty")
    };
    let mut seen = BTreeSet::new();
    let mut stable = 0;
    for x in &sp.points {
        let rep = orbit_min(x);
        if !seen.insert(rep.clone()) {
            continue;
        }
        let image = orbit_min(&frobenius_map(x, sp.frobenius_power, &sp.field));
        if image == rep {
            stable += 1;
        }
    }
    Ok(stable)
}
