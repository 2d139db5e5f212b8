use crate::error::{Error, Result};
use crate::field::Field;
use crate::hypersurface::projective_size;

/// `#{sum_(i=0..n) x_i^(n+1) = 0}` in `P^n(F_q)` from Jacobi sums, for
/// `(n+1) | (q-1)`.
///
/// Characters of order dividing `d = n + 1` take values in `Z[zeta_d]`; sums
/// are carried in `Z[x]/(x^d - 1)` and reduced modulo the `d`-th cyclotomic
/// polynomial at the end, where the total has to be a rational integer.
pub fn count_fermat_jacobi(n: usize, field: &Field) -> Result<u64> {
    if n < 1 {
        return Err(Error::DimensionTooSmall(n));
    }
    let d = n as u64 + 1;
    let order = field.q() as u64 - 1;
    if order % d != 0 {
        return Err(Error::NotDivisor { d, q_minus_one: order });
    }
    let du = d as usize;
    let residue = |x| -> Result<usize> { Ok((field.dlog(x)? % d) as usize) };

    // hist[r] counts (t_0, .., t_(n-1)), all nonzero, summing to 1, whose
    // dlog residues mod d are the base-d digits of r.
    let mut hist = vec![0i64; du.pow(n as u32)];
    let units: Vec<_> = field.elements().filter(|x| !x.is_zero()).collect();
    let free = n - 1;
    let mut idx = vec![0usize; free];
    loop {
        let mut sum = field.zero();
        let mut key = 0usize;
        for (slot, &i) in idx.iter().enumerate() {
            sum = field.add(sum, units[i]);
            key += residue(units[i])? * du.pow(slot as u32);
        }
        let last = field.sub(field.one(), sum);
        if !last.is_zero() {
            key += residue(last)? * du.pow(free as u32);
            hist[key] += 1;
        }
        if !advance(&mut idx, units.len()) {
            break;
        }
    }

    let minus_one = residue(field.neg(field.one()))?;
    let mut total = vec![0i64; du];
    let mut a = vec![1usize; du];
    loop {
        if a.iter().sum::<usize>() % du == 0 {
            let shift = a[n] * minus_one;
            for (key, &count) in hist.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let mut exponent = shift;
                let mut rest = key;
                for &ai in &a[..n] {
                    exponent += ai * (rest % du);
                    rest /= du;
                }
                total[exponent % du] += count;
            }
        }
        if !advance_from_one(&mut a, du) {
            break;
        }
    }

    let reduced = reduce_cyclotomic(total, du);
    if reduced[1..].iter().any(|&c| c != 0) {
        return Err(Error::NonIntegralCharacterSum);
    }
    let count = projective_size(n - 1, field.q() as u64) as i128 + reduced[0] as i128;
    u64::try_from(count).map_err(|_| Error::NonIntegralCharacterSum)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for i in idx.iter_mut().rev() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

fn advance_from_one(a: &mut [usize], base: usize) -> bool {
    for i in a.iter_mut().rev() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 1;
    }
    false
}

/// Integer coefficients of the `d`-th cyclotomic polynomial, constant first.
fn cyclotomic(d: usize) -> Vec<i64> {
    // x^d - 1 divided by every cyclotomic factor of a proper divisor.
    let mut poly = vec![0i64; d + 1];
    poly[0] = -1;
    poly[d] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        poly = exact_div(&poly, &cyclotomic(e));
    }
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    quot
}

/// Remainder modulo the monic `d`-th cyclotomic polynomial.
fn reduce_cyclotomic(mut v: Vec<i64>, d: usize) -> Vec<i64> {
    let phi = cyclotomic(d);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        let c = v[i];
        if c != 0 {
            for (j, &pj) in phi.iter().enumerate() {
                v[i - deg + j] -= c * pj;
            }
        }
    }
    v.truncate(deg.max(1));
    v.resize(d, 0);
    v
}
