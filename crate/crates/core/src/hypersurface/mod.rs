//! Projective space over finite fields and point counting on homogeneous
//! hypersurfaces.

mod count;

use serde::{Deserialize, Serialize};

pub use count::{
    collect_points, count_points, projective_size, tally_points, CountConfig, DworkShape, FiberTable, Strategy,
    Tally,
};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coeff: FieldElement,
}

/// Homogeneous polynomial in `n + 1` variables with terms sorted
/// lexicographically by exponent vector and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    n: usize,
    degree: u32,
    terms: Vec<Term>,
}

impl HomogeneousPoly {
    /// Collects like terms and drops zeros. The zero polynomial is allowed.
    pub fn new(n: usize, degree: u32, terms: Vec<Term>, field: &Field) -> Result<Self> {
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for term in terms {
            if term.exps.len() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: term.exps.len() });
            }
            if term.exps.iter().sum::<u32>() != degree {
                return Err(Error::InvalidPolynomial(format!("monomial {:?} is not of degree {degree}", term.exps)));
            }
            if !field.contains(term.coeff) {
                return Err(Error::ForeignElement);
            }
            merged.push(term);
        }
        merged.sort_by(|a, b| a.exps.cmp(&b.exps));
        let mut terms: Vec<Term> = Vec::with_capacity(merged.len());
        for term in merged {
            match terms.last_mut() {
                Some(last) if last.exps == term.exps => last.coeff = field.add(last.coeff, term.coeff),
                _ => terms.push(term),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Ok(HomogeneousPoly { n, degree, terms })
    }

    /// Ambient projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize], field: &Field) -> Result<Self> {
        if perm.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: perm.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = vec![0; self.n + 1];
                for (i, &e) in t.exps.iter().enumerate() {
                    exps[perm[i]] = e;
                }
                Term { exps, coeff: t.coeff }
            })
            .collect();
        Self::new(self.n, self.degree, terms, field)
    }

    /// Coefficients pushed through a field embedding.
    pub fn base_change(&self, embedding: &Embedding) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exps: t.exps.clone(), coeff: embedding.apply(t.coeff) })
            .collect();
        Self::new(self.n, self.degree, terms, embedding.target())
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize, field: &Field) -> Result<Self> {
        if i > self.n {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: i + 1 });
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[i] > 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                exps[i] -= 1;
                Term { exps, coeff: field.mul(t.coeff, field.from_int(t.exps[i] as i64)) }
            })
            .collect();
        Self::new(self.n, self.degree.saturating_sub(1), terms, field)
    }
}

/// A point of `P^n` whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPoint {
    coords: Vec<u32>,
    #[serde(skip)]
    q: u32,
}

impl ProjPoint {
    pub fn new(coords: &[FieldElement], field: &Field) -> Result<Self> {
        if coords.iter().any(|&c| !field.contains(c)) {
            return Err(Error::ForeignElement);
        }
        let mut raw: Vec<u32> = coords.iter().map(|c| c.index()).collect();
        if !normalize_raw(field, &mut raw) {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjPoint { coords: raw, q: field.q() })
    }

    pub(crate) fn from_normalized_raw(coords: Vec<u32>, field: &Field) -> Self {
        ProjPoint { coords, q: field.q() }
    }

    pub fn coords(&self, field: &Field) -> Vec<FieldElement> {
        assert_eq!(field.q(), self.q, "point does not belong to this field");
        self.coords.iter().map(|&c| field.from_index(c).expect("normalized coordinate")).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.coords
    }

    /// Ambient dimension `n` of the `P^n` containing the point.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Scales so the first nonzero entry is 1. Returns false for the zero vector.
pub(crate) fn normalize_raw(field: &Field, coords: &mut [u32]) -> bool {
    let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
        return false;
    };
    if lead != field.raw_one() {
        let inv = field.raw_inv(lead);
        for c in coords.iter_mut() {
            *c = field.raw_mul(*c, inv);
        }
    }
    true
}

/// Every point of `P^n(F_q)` exactly once, stratified by the position of the
/// leading 1 (first position first), lexicographic within a stratum.
pub fn enumerate_projective(n: usize, field: &Field, cap: u64) -> Result<impl Iterator<Item = ProjPoint> + '_> {
    let total = projective_size(n, field.q() as u64);
    if total > cap as u128 {
        return Err(Error::CapExceeded { points: total, cap });
    }
    let q = field.q();
    let one = field.raw_one();
    Ok((0..=n).flat_map(move |lead| {
        let free = n - lead;
        let size = (q as u64).pow(free as u32);
        (0..size).map(move |index| {
            let mut coords = vec![0u32; n + 1];
            coords[lead] = one;
            let mut rest = index;
            for c in coords[lead + 1..].iter_mut().rev() {
                *c = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            ProjPoint::from_normalized_raw(coords, field)
        })
    }))
}

/// Value of `f` at the normalized representative of `x`.
pub fn eval(f: &HomogeneousPoly, x: &ProjPoint, field: &Field) -> Result<FieldElement> {
    if x.coords.len() != f.n + 1 {
        return Err(Error::DimensionMismatch { expected: f.n + 1, got: x.coords.len() });
    }
    if x.q != field.q() {
        return Err(Error::ForeignElement);
    }
    Ok(field.wrap(eval_raw(f, &x.coords, field)))
}

pub(crate) fn eval_raw(f: &HomogeneousPoly, x: &[u32], field: &Field) -> u32 {
    f.terms.iter().fold(0, |acc, t| {
        let monomial = t
            .exps
            .iter()
            .zip(x)
            .fold(t.coeff.index(), |m, (&e, &xi)| if e == 0 { m } else { field.raw_mul(m, field.raw_pow(xi, e as u64)) });
        field.raw_add(acc, monomial)
    })
}

/// Coordinate-wise `p^s`-th power, renormalized. The geometric `q^m`
/// Frobenius over `F_{p^k}` is `s = k * m`.
pub fn frobenius_map(x: &ProjPoint, s: u64, field: &Field) -> ProjPoint {
    let mut coords: Vec<u32> = x.coords.iter().map(|&c| field.raw_frobenius(c, s)).collect();
    normalize_raw(field, &mut coords);
    ProjPoint::from_normalized_raw(coords, field)
}

#[cfg(test)]
mod tests;
