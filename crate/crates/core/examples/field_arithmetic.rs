//! Arithmetic in F_25, discrete logs, roots of unity and the embedding F_5 -> F_25.

use dworklab::field::{Embedding, Field};

fn main() -> dworklab::Result<()> {
    let f = Field::new(5, 2)?;
    println!("F_{} = F_5[t]/(f), f = {:?} (constant first)", f.q(), f.descriptor().modulus);

    let a = f.element(&[2, 3])?;
    let b = f.element(&[4, 1])?;
    println!("a = {:?}, b = {:?}", f.coeffs(a), f.coeffs(b));
    println!("a + b = {:?}", f.coeffs(f.add(a, b)));
    println!("a * b = {:?}", f.coeffs(f.mul(a, b)));
    println!("a / b = {:?}", f.coeffs(f.div(a, b)?));
    println!("a^24 = {:?}", f.coeffs(f.pow(a, 24)));

    let g = f.multiplicative_generator();
    println!("generator g = {:?}, dlog(a) = {}", f.coeffs(g), f.dlog(a)?);

    let mu4: Vec<_> = f.roots_of_unity(4)?.iter().map(|&z| f.coeffs(z)).collect();
    println!("fourth roots of unity: {mu4:?}");

    let square = f.mul(a, a);
    let r = f.solve_power(square, 2)?;
    println!("square root of a^2 with least dlog: {:?}", f.coeffs(r));
    println!("fifth root of a: {:?}", f.coeffs(f.solve_power(a, 5)?));

    let f5 = Field::new(5, 1)?;
    let e = Embedding::new(&f5, &f)?;
    for x in f5.elements() {
        let y = e.apply(x);
        assert_eq!(f.frobenius(y, 1), y);
        print!("{} -> {:?}  ", x.index(), f.coeffs(y));
    }
    println!();
    Ok(())
}
