use std::ops::{Add, AddAssign, RangeInclusive};

use rayon::prelude::*;

use super::{eval_raw, HomogeneousPoly, ProjPoint};
use crate::error::{Error, Result};
use crate::field::Field;

/// Largest `q^2` for which a fiber root-count table is built.
const FIBER_MAX_ENTRIES: u64 = 1 << 26;
/// Largest `q` for which a power table is built.
const POW_TABLE_MAX_Q: u32 = 1 << 24;

/// `#P^n(F_q) = (q^(n+1) - 1) / (q - 1)`.
pub fn projective_size(n: usize, q: u64) -> u128 {
    (0..=n as u32).map(|i| (q as u128).pow(i)).sum()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Fibered counting for Dwork-shaped polynomials, enumeration otherwise.
    #[default]
    Auto,
    /// Evaluate the polynomial at every point of `P^n`.
    Enumerate,
    /// Sum root counts of the last variable over `P^(n-1)`.
    Fibered,
}

#[derive(Clone, Debug)]
pub struct CountConfig {
    pub chunk_size: u64,
    /// Refuse to count in `P^n(F_q)` when `#P^n(F_q)` exceeds this.
    pub enumeration_cap: u64,
    /// Single-threaded reference path.
    pub sequential: bool,
    pub strategy: Strategy,
    /// Fold the enumeration by the diagonal `mu_(n+1)` symmetry of
    /// Dwork-shaped polynomials (split fields only).
    pub fold_symmetry: bool,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            chunk_size: 1 << 16,
            enumeration_cap: 300_000_000,
            sequential: false,
            strategy: Strategy::Auto,
            fold_symmetry: false,
        }
    }
}

impl CountConfig {
    pub fn sequential() -> Self {
        CountConfig { sequential: true, ..Default::default() }
    }

    pub(crate) fn check_cap(&self, n: usize, q: u64) -> Result<()> {
        let points = projective_size(n, q);
        if points > self.enumeration_cap as u128 {
            return Err(Error::CapExceeded { points, cap: self.enumeration_cap });
        }
        Ok(())
    }
}

/// Number of points where a polynomial does and does not vanish.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub zero: u64,
    pub nonzero: u64,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, rhs: Tally) -> Tally {
        Tally { zero: self.zero + rhs.zero, nonzero: self.nonzero + rhs.nonzero }
    }
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        *self = *self + rhs;
    }
}

/// A contiguous range of the canonical enumeration inside one stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Chunk {
    pub lead: usize,
    pub start: u64,
    pub len: u64,
}

pub(crate) fn plan_chunks(n: usize, q: u64, chunk_size: u64, leads: RangeInclusive<usize>) -> Vec<Chunk> {
    let chunk_size = chunk_size.max(1);
    let mut chunks = Vec::new();
    for lead in leads {
        let size = q.pow((n - lead) as u32);
        let mut start = 0;
        while start < size {
            let len = chunk_size.min(size - start);
            chunks.push(Chunk { lead, start, len });
            start += len;
        }
    }
    chunks
}

fn run_chunk(n: usize, q: u32, one: u32, chunk: Chunk, visit: &(impl Fn(&[u32], &mut Tally) + Sync)) -> Tally {
    let mut coords = vec![0u32; n + 1];
    coords[chunk.lead] = one;
    let mut rest = chunk.start;
    for c in coords[chunk.lead + 1..].iter_mut().rev() {
        *c = (rest % q as u64) as u32;
        rest /= q as u64;
    }
    let mut tally = Tally::default();
    for _ in 0..chunk.len {
        visit(&coords, &mut tally);
        for c in coords[chunk.lead + 1..].iter_mut().rev() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    tally
}

/// Visits every point of the given chunks of `P^n(F_q)` and sums the tallies.
pub(crate) fn fold_points(
    n: usize,
    field: &Field,
    cfg: &CountConfig,
    chunks: &[Chunk],
    visit: impl Fn(&[u32], &mut Tally) + Sync,
) -> Tally {
    let (q, one) = (field.q(), field.raw_one());
    if cfg.sequential {
        chunks.iter().map(|&c| run_chunk(n, q, one, c, &visit)).fold(Tally::default(), Add::add)
    } else {
        chunks.par_iter().map(|&c| run_chunk(n, q, one, c, &visit)).reduce(Tally::default, Add::add)
    }
}

/// `sum A_i x_i^d + c * x_0 ... x_n` with every `A_i` nonzero; `c` may be
/// zero, and the product term only occurs when `d = n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkShape {
    d: u32,
    diag: Vec<u32>,
    prod: u32,
}

impl DworkShape {
    pub fn detect(f: &HomogeneousPoly) -> Option<Self> {
        let (n, d) = (f.n(), f.degree());
        if d == 0 {
            return None;
        }
        let mut diag = vec![0u32; n + 1];
        let mut prod = 0;
        for t in f.terms() {
            if let Some(i) = t.exps.iter().position(|&e| e == d) {
                diag[i] = t.coeff.index();
            } else if d as usize == n + 1 && t.exps.iter().all(|&e| e == 1) {
                prod = t.coeff.index();
            } else {
                return None;
            }
        }
        if diag.contains(&0) {
            return None;
        }
        Some(DworkShape { d, diag, prod })
    }

    pub(crate) fn from_raw(d: u32, diag: Vec<u32>, prod: u32) -> Self {
        DworkShape { d, diag, prod }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.diag.len() - 1
    }
}

fn pow_table(field: &Field, d: u32) -> Option<Vec<u32>> {
    (field.q() <= POW_TABLE_MAX_Q).then(|| (0..field.q()).map(|x| field.raw_pow(x, d as u64)).collect())
}

enum Evaluator<'a> {
    Dwork { shape: &'a DworkShape, pow: Vec<u32> },
    Generic(&'a HomogeneousPoly),
}

impl Evaluator<'_> {
    #[inline]
    fn eval(&self, field: &Field, x: &[u32]) -> u32 {
        match self {
            Evaluator::Dwork { shape, pow } => {
                let mut acc = 0;
                for (&a, &xi) in shape.diag.iter().zip(x) {
                    acc = field.raw_add(acc, field.raw_mul(a, pow[xi as usize]));
                }
                if shape.prod != 0 {
                    let p = x.iter().fold(shape.prod, |m, &xi| field.raw_mul(m, xi));
                    acc = field.raw_add(acc, p);
                }
                acc
            }
            Evaluator::Generic(f) => eval_raw(f, x, field),
        }
    }
}

fn check_membership(f: &HomogeneousPoly, field: &Field) -> Result<()> {
    if f.terms().iter().all(|t| field.contains(t.coeff)) {
        Ok(())
    } else {
        Err(Error::ForeignElement)
    }
}

/// Exact `#{x in P^n(F_q) : f(x) = 0}`.
pub fn count_points(f: &HomogeneousPoly, field: &Field, cfg: &CountConfig) -> Result<u64> {
    check_membership(f, field)?;
    cfg.check_cap(f.n(), field.q() as u64)?;
    let shape = DworkShape::detect(f);
    match (cfg.strategy, shape) {
        (Strategy::Enumerate, _) | (Strategy::Auto, None) => Ok(tally_points(f, field, cfg)?.zero),
        (Strategy::Auto, Some(shape)) => match FiberTable::new(field, shape.d) {
            Some(table) if !cfg.fold_symmetry => table.count(&shape, cfg),
            _ => Ok(tally_points(f, field, cfg)?.zero),
        },
        (Strategy::Fibered, Some(shape)) => {
            let table = FiberTable::new(field, shape.d)
                .ok_or(Error::TableCapExceeded { q: field.q() as u64, cap: FIBER_MAX_ENTRIES })?;
            table.count(&shape, cfg)
        }
        (Strategy::Fibered, None) => {
            Err(Error::InvalidPolynomial("fibered counting needs a diagonal-plus-product polynomial".into()))
        }
    }
}

/// Zero and nonzero tallies of `f` over `P^n(F_q)` in one enumeration pass.
pub fn tally_points(f: &HomogeneousPoly, field: &Field, cfg: &CountConfig) -> Result<Tally> {
    check_membership(f, field)?;
    let n = f.n();
    cfg.check_cap(n, field.q() as u64)?;
    let shape = DworkShape::detect(f);
    let evaluator = match (&shape, pow_table(field, f.degree())) {
        (Some(shape), Some(pow)) => Evaluator::Dwork { shape, pow },
        _ => Evaluator::Generic(f),
    };
    if cfg.fold_symmetry {
        if let (Some(shape), Evaluator::Dwork { pow, .. }) = (&shape, &evaluator) {
            if let Some(tally) = folded_tally(shape, pow, &evaluator, field, cfg) {
                return Ok(tally);
            }
        }
    }
    let chunks = plan_chunks(n, field.q() as u64, cfg.chunk_size, 0..=n);
    Ok(fold_points(n, field, cfg, &chunks, |x, tally| {
        if evaluator.eval(field, x) == 0 {
            tally.zero += 1;
        } else {
            tally.nonzero += 1;
        }
    }))
}

/// Enumeration with the leading-1 stratum folded by the diagonal group:
/// for `x_0 = 1`, scaling `x_1 .. x_(n-1)` by `(n+1)`-th roots of unity (and
/// `x_n` by the compensating root) preserves a Dwork-shaped form, so each
/// nonzero prefix coordinate only needs one representative per coset of
/// `mu_(n+1)`.
fn folded_tally(
    shape: &DworkShape,
    _pow: &[u32],
    evaluator: &Evaluator<'_>,
    field: &Field,
    cfg: &CountConfig,
) -> Option<Tally> {
    let n = shape.n();
    let d = shape.d as u64;
    let q = field.q() as u64;
    if n < 2 || d != n as u64 + 1 || (q - 1) % d != 0 || field.dlog_table().is_err() {
        return None;
    }
    let mut options = vec![0u32];
    options.extend((0..(q - 1) / d).map(|j| field.exp(j).index()));
    let radix = options.len() as u64;
    let folded = n - 1;
    let total = radix.pow(folded as u32);
    let ranges: Vec<(u64, u64)> =
        (0..total).step_by(cfg.chunk_size.max(1) as usize).map(|s| (s, cfg.chunk_size.min(total - s))).collect();
    let one = field.raw_one();
    let run = |&(start, len): &(u64, u64)| {
        let mut tally = Tally::default();
        let mut x = vec![0u32; n + 1];
        x[0] = one;
        for index in start..start + len {
            let mut rest = index;
            let mut nonzero = 0;
            for slot in (1..=folded).rev() {
                let o = (rest % radix) as usize;
                rest /= radix;
                x[slot] = options[o];
                nonzero += (o != 0) as u32;
            }
            let weight = d.pow(nonzero);
            let mut zeros = 0;
            for last in 0..q as u32 {
                x[n] = last;
                zeros += (evaluator.eval(field, &x) == 0) as u64;
            }
            tally.zero += weight * zeros;
            tally.nonzero += weight * (q - zeros);
        }
        tally
    };
    let stratum0 = if cfg.sequential {
        ranges.iter().map(run).fold(Tally::default(), Add::add)
    } else {
        ranges.par_iter().map(run).reduce(Tally::default, Add::add)
    };
    let chunks = plan_chunks(n, q, cfg.chunk_size, 1..=n);
    let rest = fold_points(n, field, cfg, &chunks, |x, tally| {
        if evaluator.eval(field, x) == 0 {
            tally.zero += 1;
        } else {
            tally.nonzero += 1;
        }
    });
    Some(stratum0 + rest)
}

/// All zeros of `f` in `P^n(F_q)`, in canonical order.
pub fn collect_points(f: &HomogeneousPoly, field: &Field, cfg: &CountConfig) -> Result<Vec<ProjPoint>> {
    check_membership(f, field)?;
    let n = f.n();
    cfg.check_cap(n, field.q() as u64)?;
    let shape = DworkShape::detect(f);
    let evaluator = match (&shape, pow_table(field, f.degree())) {
        (Some(shape), Some(pow)) => Evaluator::Dwork { shape, pow },
        _ => Evaluator::Generic(f),
    };
    let chunks = plan_chunks(n, field.q() as u64, cfg.chunk_size, 0..=n);
    let (q, one) = (field.q(), field.raw_one());
    let collect_chunk = |&chunk: &Chunk| {
        let found = std::sync::Mutex::new(Vec::new());
        run_chunk(n, q, one, chunk, &|x: &[u32], _: &mut Tally| {
            if evaluator.eval(field, x) == 0 {
                found.lock().unwrap().push(ProjPoint::from_normalized_raw(x.to_vec(), field));
            }
        });
        found.into_inner().unwrap()
    };
    let parts: Vec<Vec<ProjPoint>> = if cfg.sequential {
        chunks.iter().map(collect_chunk).collect()
    } else {
        chunks.par_iter().map(collect_chunk).collect()
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Root counts of `t^d + u t + v` over `F_q` for every `(u, v)`.
///
/// A point of `P^n` off `(0 : .. : 0 : 1)` is a normalized prefix in
/// `P^(n-1)` plus a free last coordinate, and `(0 : .. : 1)` never lies on a
/// form with nonzero `A_n`. So the count of `sum A_i y_i^d + c y_0..y_n` is
/// the sum over prefixes of the number of roots in the last variable, and
/// after dividing by `A_n` that number is one table lookup.
pub struct FiberTable {
    field: Field,
    d: u32,
    pow: Vec<u32>,
    roots: Vec<u8>,
}

impl FiberTable {
    pub fn new(field: &Field, d: u32) -> Option<Self> {
        let q = field.q() as u64;
        if q * q > FIBER_MAX_ENTRIES || d > u8::MAX as u32 {
            return None;
        }
        let pow = pow_table(field, d)?;
        let q32 = field.q();
        let mut roots = vec![0u8; (q * q) as usize];
        for t in 0..q32 {
            let td = pow[t as usize];
            for u in 0..q32 {
                let v = field.raw_neg(field.raw_add(td, field.raw_mul(u, t)));
                roots[(u * q32 + v) as usize] += 1;
            }
        }
        Some(FiberTable { field: field.clone(), d, pow, roots })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `#{x in P^n(F_q) : shape(x) = 0}`.
    pub fn count(&self, shape: &DworkShape, cfg: &CountConfig) -> Result<u64> {
        if shape.d != self.d {
            return Err(Error::InvalidPolynomial(format!("table built for degree {}, form has degree {}", self.d, shape.d)));
        }
        let field = &self.field;
        let n = shape.n();
        cfg.check_cap(n, field.q() as u64)?;
        let inv_last = field.raw_inv(shape.diag[n]);
        let scaled: Vec<u32> = shape.diag[..n].iter().map(|&a| field.raw_mul(a, inv_last)).collect();
        let prod = field.raw_mul(shape.prod, inv_last);
        let q = field.q();
        let root_count = |u: u32, s: u32| self.roots[(u * q + s) as usize] as u64;
        if n == 1 {
            return Ok(root_count(prod, scaled[0]));
        }
        // P^(n-1) is P^(n-2) x F_q (outer point, free y_(n-1)) plus (0 : .. : 0 : 1).
        let last: Vec<u32> = self.pow.iter().map(|&yd| field.raw_mul(scaled[n - 1], yd)).collect();
        let outer_dim = n - 2;
        let chunks = plan_chunks(outer_dim, q as u64, (cfg.chunk_size / q as u64).max(1), 0..=outer_dim);
        let tables = field.dlog_table().ok();
        // last coefficient term indexed by dlog of y_(n-1)
        let last_by_log: Vec<u32> = match tables {
            Some(t) => t.exp_slice()[..q as usize - 1].iter().map(|&y| last[y as usize]).collect(),
            None => Vec::new(),
        };
        let tally = fold_points(outer_dim, field, cfg, &chunks, |y, tally| {
            let mut s = 0;
            for (&a, &yi) in scaled.iter().zip(y) {
                s = field.raw_add(s, field.raw_mul(a, self.pow[yi as usize]));
            }
            let u = if prod == 0 { 0 } else { y.iter().fold(prod, |m, &yi| field.raw_mul(m, yi)) };
            let row = field.add_row(s);
            let add = |t: u32| match row {
                Some(r) => r[t as usize],
                None => field.raw_add(s, t),
            };
            let mut total = 0;
            match (u, tables) {
                (0, _) => {
                    for &t in &last {
                        total += root_count(0, add(t));
                    }
                }
                (u, Some(t)) => {
                    // y_(n-1) = 0, then y_(n-1) = g^j
                    total += root_count(0, add(last[0]));
                    let exp = &t.exp_slice()[t.log_slice()[u as usize] as usize..];
                    for (&uy, &l) in exp.iter().zip(&last_by_log) {
                        total += root_count(uy, add(l));
                    }
                }
                (u, None) => {
                    for (yl, &t) in last.iter().enumerate() {
                        total += root_count(field.raw_mul(u, yl as u32), add(t));
                    }
                }
            }
            tally.zero += total;
        });
        Ok(tally.zero + root_count(0, scaled[n - 1]))
    }
}
