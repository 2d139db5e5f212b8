use super::{mod_inverse, Field, FieldElement};
use crate::error::{Error, Result};

/// Ring embedding `F_{p^j} -> F_{p^k}` for `j | k`.
///
/// The generator `t` of the source is sent to the root of the source modulus
/// in the destination with the smallest discrete log, which makes the choice
/// canonical. Embedding a prime field is the identity on residues.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// Images of t^0, .., t^(j-1).
    basis: Vec<u32>,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Self> {
        let incompatible = || Error::IncompatibleFields {
            p_src: src.p(),
            k_src: src.k(),
            p_dst: dst.p(),
            k_dst: dst.k(),
        };
        if src.p() != dst.p() || dst.k() % src.k() != 0 {
            return Err(incompatible());
        }
        let j = src.k() as usize;
        let basis = if src == dst {
            // identity: t maps to t
            (0..j as u32).map(|i| src.raw_from_index_power(i)).collect()
        } else if j == 1 {
            vec![dst.raw_one()]
        } else {
            let root = Self::minimal_root(src, dst)?;
            std::iter::successors(Some(dst.raw_one()), |&x| Some(dst.raw_mul(x, root))).take(j).collect()
        };
        Ok(Embedding { src: src.clone(), dst: dst.clone(), basis })
    }

    fn minimal_root(src: &Field, dst: &Field) -> Result<u32> {
        let table = dst.dlog_table()?;
        let cofactor = (dst.q() as u64 - 1) / (src.q() as u64 - 1);
        let modulus = &src.descriptor().modulus;
        for e in 0..(src.q() as u64 - 1) {
            let x = table.exp[(e * cofactor) as usize];
            // Horner evaluation of the source modulus at x
            let value = modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| dst.raw_add(dst.raw_mul(acc, x), dst.from_int(c as i64).index()));
            if value == 0 {
                return Ok(x);
            }
        }
        Err(Error::Internal("source modulus has no root in the destination field".into()))
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        assert!(self.src.contains(a), "element does not belong to the source field");
        self.dst.wrap(self.apply_raw(a.index()))
    }

    pub(crate) fn apply_raw(&self, a: u32) -> u32 {
        if self.src == self.dst {
            return a;
        }
        let coeffs = self.src.raw_coeffs(a);
        let p = self.dst.p() as i64;
        coeffs.iter().zip(&self.basis).fold(0u32, |acc, (&c, &b)| {
            let term = self.dst.raw_mul(self.dst.from_int(c as i64 % p).index(), b);
            self.dst.raw_add(acc, term)
        })
    }

    /// Preimage of `b`, or an error when `b` lies outside the image.
    pub fn restrict(&self, b: FieldElement) -> Result<FieldElement> {
        if !self.dst.contains(b) {
            return Err(Error::ForeignElement);
        }
        if self.src == self.dst || b.is_zero() {
            return Ok(self.src.wrap(b.index()));
        }
        let src_order = self.src.q() as u64 - 1;
        let cofactor = (self.dst.q() as u64 - 1) / src_order;
        let log_b = self.dst.dlog(b)?;
        if log_b % cofactor != 0 {
            return Err(Error::NotInSubfield);
        }
        // image of the source generator is g_dst^(cofactor * u) with gcd(u, src_order) = 1
        let gen_image = self.apply(self.src.multiplicative_generator());
        let u = self.dst.dlog(gen_image)? / cofactor;
        let w = log_b / cofactor;
        let e = if src_order == 1 { 0 } else { (w as u128 * mod_inverse(u % src_order, src_order) as u128 % src_order as u128) as u64 };
        let preimage = self.src.exp(e);
        debug_assert_eq!(self.apply(preimage), b);
        Ok(preimage)
    }
}

impl Field {
    /// Packed value of `t^i` for `i < k`.
    fn raw_from_index_power(&self, i: u32) -> u32 {
        let mut coeffs = vec![0u32; self.k() as usize];
        coeffs[i as usize] = 1;
        self.element(&coeffs).expect("valid coefficient vector").index()
    }
}
