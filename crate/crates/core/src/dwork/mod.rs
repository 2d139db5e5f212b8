//! The Dwork family `sum X_i^(n+1) + lambda * X_0 ... X_n = 0` in `P^n`, its
//! diagonal symmetry group and point counts of its quotient.

mod group;
mod jacobi;
pub mod oracle;
mod quotient;
mod twist;

pub use group::{act, group_elements, group_order, GroupElement};
pub use jacobi::count_fermat_jacobi;
pub use quotient::{burnside_reduce, count_quotient, twisted_count, twisted_counts, TwistedCounter};
pub use twist::{twist_coefficients, twist_coefficients_with, TieBreak, TwistRoute, TwistedForm};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::hypersurface::{count_points, CountConfig, HomogeneousPoly, Term};

/// `(n, lambda, F_q)` for `X_lambda` in `P^n`, with `char F_q` prime to `n + 1`.
#[derive(Clone, Debug)]
pub struct DworkParams {
    n: usize,
    lambda: FieldElement,
    field: Field,
}

impl DworkParams {
    pub fn new(n: usize, lambda: FieldElement, field: &Field) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let degree = n as u32 + 1;
        if degree % field.p() == 0 {
            return Err(Error::CharacteristicDividesDegree { p: field.p(), degree });
        }
        if !field.contains(lambda) {
            return Err(Error::ForeignElement);
        }
        Ok(DworkParams { n, lambda, field: field.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n + 1`, the degree of the hypersurface.
    pub fn degree(&self) -> u32 {
        self.n as u32 + 1
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Base change to `F_(q^m)`.
    pub fn extension(&self, m: u32) -> Result<Extension> {
        if m < 1 {
            return Err(Error::InvalidDegree(m));
        }
        let field = Field::new(self.field.p() as u64, self.field.k() * m)?;
        let embedding = Embedding::new(&self.field, &field)?;
        let lambda = embedding.apply(self.lambda);
        Ok(Extension { n: self.n, m, field, lambda })
    }
}

/// A Dwork member base-changed to `F_(q^m)`.
#[derive(Clone, Debug)]
pub struct Extension {
    n: usize,
    m: u32,
    field: Field,
    lambda: FieldElement,
}

impl Extension {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> HomogeneousPoly {
        build_poly(self.n, self.lambda, &self.field)
    }

    /// Errors unless `n + 1` divides `q^m - 1`.
    pub fn require_split(&self) -> Result<()> {
        let degree = self.n as u32 + 1;
        let q_minus_one = self.field.q() as u64 - 1;
        if q_minus_one % degree as u64 != 0 {
            return Err(Error::NonSplit { degree, q_minus_one });
        }
        Ok(())
    }

    /// The designated primitive `(n+1)`-th root of unity of `F_(q^m)`.
    pub fn zeta(&self) -> Result<FieldElement> {
        self.require_split()?;
        self.field.primitive_root_of_unity(self.n as u64 + 1)
    }
}

fn build_poly(n: usize, lambda: FieldElement, field: &Field) -> HomogeneousPoly {
    let degree = n as u32 + 1;
    let mut terms: Vec<Term> = (0..=n)
        .map(|i| {
            let mut exps = vec![0; n + 1];
            exps[i] = degree;
            Term { exps, coeff: field.one() }
        })
        .collect();
    terms.push(Term { exps: vec![1; n + 1], coeff: lambda });
    HomogeneousPoly::new(n, degree, terms, field).expect("Dwork terms are homogeneous")
}

/// `sum X_i^(n+1) + lambda X_0 ... X_n` over the base field.
pub fn dwork_poly(params: &DworkParams) -> HomogeneousPoly {
    build_poly(params.n, params.lambda, &params.field)
}

/// `X_lambda` is smooth iff `lambda^(n+1) != (-(n+1))^(n+1)`.
///
/// At a singular point every `x_i^(n+1)` equals `-lambda/(n+1) * prod x_j`,
/// which forces all coordinates into `mu_(n+1)` after scaling and then
/// `lambda = -(n+1) / prod x_j`.
pub fn is_smooth(params: &DworkParams) -> bool {
    let field = &params.field;
    let d = params.degree() as u64;
    let lhs = field.pow(params.lambda, d);
    let rhs = field.pow(field.from_int(-(d as i64)), d);
    lhs != rhs
}

/// `#X_lambda(F_(q^m))`.
pub fn count_dwork(params: &DworkParams, m: u32, cfg: &CountConfig) -> Result<u64> {
    let ext = params.extension(m)?;
    count_points(&ext.poly(), ext.field(), cfg)
}

/// Every `lambda` in the base field with a smooth member.
pub fn smooth_parameters(n: usize, field: &Field) -> Result<Vec<FieldElement>> {
    let mut out = Vec::new();
    for lambda in field.elements() {
        if is_smooth(&DworkParams::new(n, lambda, field)?) {
            out.push(lambda);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
