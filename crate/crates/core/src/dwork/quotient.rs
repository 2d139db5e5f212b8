use rayon::prelude::*;

use super::group::{group_elements, group_order, GroupElement};
use super::twist::{TieBreak, TwistBuilder, TwistRoute};
use super::{DworkParams, Extension};
use crate::error::{Error, Result};
use crate::hypersurface::{count_points, CountConfig, FiberTable, Strategy};

/// Counts twisted forms of one `X_lambda` over `F_(q^m)`, sharing the fiber
/// table between group elements.
pub struct TwistedCounter {
    ext: Extension,
    table: Option<FiberTable>,
    cfg: CountConfig,
    builder: TwistBuilder,
}

impl TwistedCounter {
    pub fn new(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<Self> {
        let ext = params.extension(m)?;
        ext.require_split()?;
        cfg.check_cap(params.n(), ext.field().q() as u64)?;
        let table = match cfg.strategy {
            Strategy::Enumerate => None,
            _ if cfg.fold_symmetry => None,
            _ => FiberTable::new(ext.field(), params.degree()),
        };
        let builder = TwistBuilder::new(&ext, TwistRoute::Auto, TieBreak::MinimalDlog)?;
        Ok(TwistedCounter { ext, table, cfg: cfg.clone(), builder })
    }

    pub fn with_route(mut self, route: TwistRoute, tie: TieBreak) -> Result<Self> {
        self.builder = TwistBuilder::new(&self.ext, route, tie)?;
        Ok(self)
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    /// `#X_lambda^g(F_(q^m))`.
    pub fn count(&self, g: &GroupElement) -> Result<u64> {
        let form = self.builder.form(g)?;
        match &self.table {
            Some(table) => table.count(&form.shape(self.ext.lambda()), &self.cfg),
            None => count_points(&form.poly(self.ext.lambda())?, self.ext.field(), &self.cfg),
        }
    }
}

pub fn twisted_count(g: &GroupElement, params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<u64> {
    TwistedCounter::new(params, m, cfg)?.count(g)
}

/// `(g, #X_lambda^g(F_(q^m)))` for every `g` in `G`.
pub fn twisted_counts(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<Vec<(GroupElement, u64)>> {
    let counter = TwistedCounter::new(params, m, cfg)?;
    let group = group_elements(params.n());
    let run = |g: &GroupElement| counter.count(g).map(|c| (g.clone(), c));
    if cfg.sequential {
        group.iter().map(run).collect()
    } else {
        group.par_iter().map(run).collect()
    }
}

/// `(1/|G|) * sum` of the twisted counts, refusing a non-integral average.
pub fn burnside_reduce(counts: &[u64], order: u64) -> Result<u64> {
    let sum: u128 = counts.iter().map(|&c| c as u128).sum();
    if order == 0 || sum % order as u128 != 0 {
        return Err(Error::NonIntegralBurnside { sum, order });
    }
    Ok((sum / order as u128) as u64)
}

/// `#(X_lambda / G)(F_(q^m))`, assuming `n + 1` divides `q^m - 1`.
pub fn count_quotient(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<u64> {
    let counts: Vec<u64> = twisted_counts(params, m, cfg)?.into_iter().map(|(_, c)| c).collect();
    burnside_reduce(&counts, group_order(params.n()))
}
