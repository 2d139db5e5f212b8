use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::group::GroupElement;
use super::{DworkParams, Extension};
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::hypersurface::{DworkShape, HomogeneousPoly, Term};

/// How the twist coefficients are produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TwistRoute {
    /// `Extension` when `F_(Q^(n+1))` fits under the dlog cap, else `ClosedForm`.
    #[default]
    Auto,
    /// Solve `delta_i^(Q-1) = zeta^(e_i)` in `F_(Q^(n+1))` and restrict.
    Extension,
    /// `A_i = w^(e_i)`, `B = w^(sum e_i / (n+1))` for the generator `w` of `F_Q`.
    ClosedForm,
}

/// Which `delta_i` to take among the `Q - 1` solutions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    MinimalDlog,
    /// A reproducible pseudo-random choice. Counts do not depend on it.
    Seeded(u64),
}

/// `sum A_i y_i^(n+1) + lambda B y_0 ... y_n` over `F_Q`, with `A_0 = 1`.
#[derive(Clone, Debug)]
pub struct TwistedForm {
    a: Vec<FieldElement>,
    b: FieldElement,
    field: Field,
}

impl TwistedForm {
    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The form with parameter `lambda` (an element of `F_Q`).
    pub fn poly(&self, lambda: FieldElement) -> Result<HomogeneousPoly> {
        let n = self.a.len() - 1;
        let degree = n as u32 + 1;
        let mut terms: Vec<Term> = self
            .a
            .iter()
            .enumerate()
            .map(|(i, &coeff)| {
                let mut exps = vec![0; n + 1];
                exps[i] = degree;
                Term { exps, coeff }
            })
            .collect();
        let prod = self.field.arith(lambda, self.b, crate::field::Op::Mul)?;
        terms.push(Term { exps: vec![1; n + 1], coeff: prod });
        HomogeneousPoly::new(n, degree, terms, &self.field)
    }

    pub(crate) fn shape(&self, lambda: FieldElement) -> DworkShape {
        let d = self.a.len() as u32;
        let diag = self.a.iter().map(|a| a.index()).collect();
        DworkShape::from_raw(d, diag, self.field.mul(lambda, self.b).index())
    }
}

impl Serialize for TwistedForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let a: Vec<Vec<u32>> = self.a.iter().map(|&x| self.field.coeffs(x)).collect();
        let mut s = serializer.serialize_struct("TwistedForm", 2)?;
        s.serialize_field("A", &a)?;
        s.serialize_field("B", &self.field.coeffs(self.b))?;
        s.end()
    }
}

/// Twist coefficients for `g` over `F_(q^m)` with the default route and tie-break.
pub fn twist_coefficients(g: &GroupElement, params: &DworkParams, m: u32) -> Result<TwistedForm> {
    twist_coefficients_with(g, params, m, TwistRoute::Auto, TieBreak::MinimalDlog)
}

pub fn twist_coefficients_with(
    g: &GroupElement,
    params: &DworkParams,
    m: u32,
    route: TwistRoute,
    tie: TieBreak,
) -> Result<TwistedForm> {
    let ext = params.extension(m)?;
    twist_for_extension(g, &ext, route, tie)
}

pub(crate) fn twist_for_extension(g: &GroupElement, ext: &Extension, route: TwistRoute, tie: TieBreak) -> Result<TwistedForm> {
    TwistBuilder::new(ext, route, tie)?.form(g)
}

/// Twist coefficients for every `g` over one `F_Q`, with the splitting field
/// built once.
pub(crate) struct TwistBuilder {
    field: Field,
    n: usize,
    tie: TieBreak,
    splitting: Option<Splitting>,
}

struct Splitting {
    big: Field,
    embedding: Embedding,
    zeta: FieldElement,
}

impl TwistBuilder {
    pub(crate) fn new(ext: &Extension, route: TwistRoute, tie: TieBreak) -> Result<Self> {
        ext.require_split()?;
        let field = ext.field().clone();
        let d = ext.n as u32 + 1;
        let big_size = (field.q() as u128).pow(d);
        let fits = big_size <= field.dlog_cap() as u128 && big_size <= u32::MAX as u128;
        let use_extension = match route {
            TwistRoute::Extension if !fits => {
                return Err(Error::TableCapExceeded { q: field.q() as u64, cap: field.dlog_cap() });
            }
            TwistRoute::Extension => true,
            TwistRoute::Auto => fits,
            TwistRoute::ClosedForm => false,
        };
        let splitting = if use_extension {
            let big = Field::new(field.p() as u64, field.k() * d)?;
            let embedding = Embedding::new(&field, &big)?;
            let zeta = embedding.apply(field.primitive_root_of_unity(d as u64)?);
            Some(Splitting { big, embedding, zeta })
        } else {
            None
        };
        Ok(TwistBuilder { field, n: ext.n, tie, splitting })
    }

    pub(crate) fn form(&self, g: &GroupElement) -> Result<TwistedForm> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: g.exps().len() });
        }
        match &self.splitting {
            Some(s) => via_extension(g, &self.field, s, self.tie),
            None => Ok(closed_form(g, &self.field, self.tie)),
        }
    }
}

fn via_extension(g: &GroupElement, field: &Field, s: &Splitting, tie: TieBreak) -> Result<TwistedForm> {
    let d = g.exps().len() as u64;
    let big = &s.big;
    let q_minus_one = field.q() as u64 - 1;
    let mut rng = tie_rng(tie);
    let mut deltas = Vec::with_capacity(d as usize);
    for (i, &e) in g.exps().iter().enumerate() {
        let choice = match &mut rng {
            Some(rng) if i > 0 => rng.gen::<u64>(),
            _ => 0,
        };
        deltas.push(big.solve_power_nth(big.pow(s.zeta, e as u64), q_minus_one, choice)?);
    }
    let a = deltas.iter().map(|&delta| s.embedding.restrict(big.pow(delta, d))).collect::<Result<Vec<_>>>()?;
    let b = s.embedding.restrict(deltas.iter().fold(big.one(), |acc, &delta| big.mul(acc, delta)))?;
    Ok(TwistedForm { a, b, field: field.clone() })
}

fn closed_form(g: &GroupElement, field: &Field, tie: TieBreak) -> TwistedForm {
    let d = g.exps().len() as u64;
    let w = field.multiplicative_generator();
    let mut a: Vec<FieldElement> = g.exps().iter().map(|&e| field.pow(w, e as u64)).collect();
    let total: u64 = g.exps().iter().map(|&e| e as u64).sum();
    let mut b = field.pow(w, total / d);
    if let Some(mut rng) = tie_rng(tie) {
        // Rescaling y_i by a unit c_i multiplies A_i by c_i^d and B by c_i.
        let order = field.q() as u64 - 1;
        for a_i in a.iter_mut().skip(1) {
            let c = field.exp(rng.gen_range(0..order));
            *a_i = field.mul(*a_i, field.pow(c, d));
            b = field.mul(b, c);
        }
    }
    TwistedForm { a, b, field: field.clone() }
}

fn tie_rng(tie: TieBreak) -> Option<ChaCha8Rng> {
    match tie {
        TieBreak::MinimalDlog => None,
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    }
}
