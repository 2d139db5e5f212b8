//! Zeta functions from point counts, q-adic Newton polygons and count
//! congruences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::poly::{is_prime, prime_factors};

/// `N_1, .., N_M` over `F_q, .., F_(q^M)`, with a label naming the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub q: u64,
    pub counts: Vec<u64>,
    pub label: String,
}

impl CountSeries {
    pub fn new(q: u64, counts: Vec<u64>, label: impl Into<String>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(CountSeries { q, counts, label: label.into() })
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// `Z(T) = exp(sum N_m T^m / m)` truncated at order `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    pub q: u64,
    pub coeffs: Vec<BigRational>,
}

impl ZetaSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl Serialize for ZetaSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut s = serializer.serialize_struct("ZetaSeries", 3)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

/// Power series exponential via `m c_m = sum_(j=1..m) N_j c_(m-j)`.
pub fn zeta_series(cs: &CountSeries) -> Result<ZetaSeries> {
    if cs.counts.is_empty() {
        return Err(Error::EmptySeries);
    }
    let mut coeffs = vec![BigRational::one()];
    for m in 1..=cs.counts.len() {
        let mut acc = BigRational::zero();
        for j in 1..=m {
            acc += BigRational::from_integer(BigInt::from(cs.counts[j - 1])) * &coeffs[m - j];
        }
        coeffs.push(acc / BigRational::from_integer(BigInt::from(m)));
    }
    Ok(ZetaSeries { q: cs.q, coeffs })
}

/// `P(T) = 1 - a T + q T^2`, the numerator of the zeta function of an
/// elliptic curve with `N_1 = q + 1 - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticZeta {
    pub q: u64,
    pub a: i64,
}

impl EllipticZeta {
    /// Constant-first integer coefficients.
    pub fn coeffs(&self) -> [i128; 3] {
        [1, -(self.a as i128), self.q as i128]
    }

    /// `N_m = q^m + 1 - (alpha^m + beta^m)`.
    pub fn predict(&self, m: u32) -> i128 {
        let (a, q) = (self.a as i128, self.q as i128);
        let (mut prev, mut cur) = (2i128, a);
        for _ in 1..m {
            (prev, cur) = (cur, a * cur - q * prev);
        }
        let power_sum = if m == 0 { 2 } else { cur };
        q.pow(m) + 1 - power_sum
    }

    pub fn predict_series(&self, len: u32) -> Vec<i128> {
        (1..=len).map(|m| self.predict(m)).collect()
    }
}

pub fn elliptic_zeta(n1: u64, q: u64) -> Result<EllipticZeta> {
    let a = q as i64 + 1 - n1 as i64;
    if (a as i128).pow(2) > 4 * q as i128 {
        return Err(Error::HasseBound { a, q });
    }
    Ok(EllipticZeta { q, a })
}

/// Slope written as an exact fraction.
pub type Slope = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Slope,
    pub length: u64,
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Segment", 2)?;
        s.serialize_field("slope", &format!("{}/{}", self.slope.numer(), self.slope.denom()))?;
        s.serialize_field("length", &self.length)?;
        s.end()
    }
}

/// Lower convex hull of `(i, v_q(c_i))`, as slopes with horizontal lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn degree(&self) -> u64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|s| format!("{} x{}", s.slope, s.length)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `(p, k)` with `q = p^k`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 || !is_prime(factors[0]) {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0];
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    Ok((p, k))
}

fn valuation(mut c: i128, p: u64) -> i64 {
    let p = p as i128;
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// Newton polygon of a constant-first integer polynomial with `v(q) = 1`.
pub fn newton_polygon(coeffs: &[i128], q: u64) -> Result<NewtonPolygon> {
    let (p, k) = prime_power(q)?;
    let Some(&last) = coeffs.last() else {
        return Err(Error::InvalidPolynomial("empty coefficient list".into()));
    };
    if coeffs[0] == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    if last == 0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let k = k as i64;
    let points: Vec<(i64, Slope)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i as i64, Ratio::new(valuation(c.abs(), p), k)))
        .collect();
    let mut hull: Vec<(i64, Slope)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord from a to pt
            let lhs = (b.1 - a.1) * Ratio::from_integer(pt.0 - a.0);
            let rhs = (pt.1 - a.1) * Ratio::from_integer(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let run = w[1].0 - w[0].0;
            Segment { slope: (w[1].1 - w[0].1) / Ratio::from_integer(run), length: run as u64 }
        })
        .collect();
    Ok(NewtonPolygon { segments })
}

/// Length of the slope-0 segment.
pub fn unit_root_count(np: &NewtonPolygon) -> u64 {
    np.segments.iter().filter(|s| s.slope.is_zero()).map(|s| s.length).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub m: u32,
    pub n_a: u64,
    pub n_b: u64,
    pub modulus: u128,
    pub residue_a: u128,
    pub residue_b: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub label_a: String,
    pub label_b: String,
    pub q: u64,
    pub rows: Vec<CongruenceRow>,
    pub pass: bool,
}

/// Row `m` compares `N_A` and `N_B` modulo `q^m`.
pub fn congruence_check(a: &CountSeries, b: &CountSeries) -> Result<CongruenceReport> {
    if a.q != b.q {
        return Err(Error::SeriesMismatch(format!("q = {} vs q = {}", a.q, b.q)));
    }
    if a.len() != b.len() {
        return Err(Error::SeriesMismatch(format!("{} counts vs {} counts", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::EmptySeries);
    }
    let rows: Vec<CongruenceRow> = a
        .counts
        .iter()
        .zip(&b.counts)
        .enumerate()
        .map(|(i, (&n_a, &n_b))| {
            let m = i as u32 + 1;
            let modulus = (a.q as u128).checked_pow(m).unwrap_or(u128::MAX);
            let (residue_a, residue_b) = (n_a as u128 % modulus, n_b as u128 % modulus);
            CongruenceRow { m, n_a, n_b, modulus, residue_a, residue_b, pass: residue_a == residue_b }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(CongruenceReport { label_a: a.label.clone(), label_b: b.label.clone(), q: a.q, rows, pass })
}
