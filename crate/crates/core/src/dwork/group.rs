use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::hypersurface::{normalize_raw, ProjPoint};

/// An element of `G = ker(prod: mu_(n+1)^(n+1) -> mu_(n+1)) / diagonal`,
/// written as exponents of a primitive root. The diagonal is absorbed by
/// requiring `exps[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct GroupElement {
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        let d = exps.len() as u32;
        let valid = d >= 3 && exps[0] == 0 && exps.iter().all(|&e| e < d) && exps.iter().sum::<u32>() % d == 0;
        if !valid {
            return Err(Error::InvalidGroupElement(exps));
        }
        Ok(GroupElement { exps })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { exps: vec![0; n + 1] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.exps.len(), other.exps.len());
        let d = self.exps.len() as u32;
        GroupElement { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % d).collect() }
    }

    /// Comma-separated exponents, e.g. `0,1,2`.
    pub fn label(&self) -> String {
        self.exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl TryFrom<Vec<u32>> for GroupElement {
    type Error = Error;
    fn try_from(exps: Vec<u32>) -> Result<Self> {
        GroupElement::new(exps)
    }
}

impl From<GroupElement> for Vec<u32> {
    fn from(g: GroupElement) -> Vec<u32> {
        g.exps
    }
}

/// `|G| = (n+1)^(n-1)`.
pub fn group_order(n: usize) -> u64 {
    (n as u64 + 1).pow(n as u32 - 1)
}

/// All of `G` in lexicographic order of exponent vectors.
pub fn group_elements(n: usize) -> Vec<GroupElement> {
    let d = n as u32 + 1;
    let free = n - 1;
    (0..group_order(n))
        .map(|index| {
            let mut exps = vec![0u32; n + 1];
            let mut rest = index;
            for slot in (1..=free).rev() {
                exps[slot] = (rest % d as u64) as u32;
                rest /= d as u64;
            }
            let partial: u32 = exps[1..=free].iter().sum();
            exps[n] = (d - partial % d) % d;
            GroupElement { exps }
        })
        .collect()
}

/// `(x_0 : .. : x_n) -> (zeta^e_0 x_0 : .. : zeta^e_n x_n)`, renormalized.
/// `zeta` must be a primitive `(n+1)`-th root of unity in the field of `x`.
pub fn act(g: &GroupElement, x: &ProjPoint, zeta: FieldElement, field: &Field) -> Result<ProjPoint> {
    let d = g.exps.len() as u32;
    if x.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.exps.len(), got: x.n() + 1 });
    }
    let q_minus_one = field.q() as u64 - 1;
    if q_minus_one % d as u64 != 0 {
        return Err(Error::NonSplit { degree: d, q_minus_one });
    }
    if !field.contains(zeta) {
        return Err(Error::ForeignElement);
    }
    let is_primitive = field.pow(zeta, d as u64) == field.one()
        && (1..d).all(|e| d % e != 0 || field.pow(zeta, e as u64) != field.one());
    if !is_primitive {
        return Err(Error::NotPrimitiveRoot(d));
    }
    Ok(act_raw(g, x.raw(), zeta.index(), field))
}

pub(crate) fn act_raw(g: &GroupElement, x: &[u32], zeta: u32, field: &Field) -> ProjPoint {
    let mut coords: Vec<u32> =
        x.iter().zip(&g.exps).map(|(&c, &e)| if e == 0 { c } else { field.raw_mul(c, field.raw_pow(zeta, e as u64)) }).collect();
    normalize_raw(field, &mut coords);
    ProjPoint::from_normalized_raw(coords, field)
}
