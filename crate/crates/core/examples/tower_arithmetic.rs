//! Exact arithmetic in Q(√2)(√(2+√2)) and its Galois group.

use p1moduli::qfield::{FieldTower, GaloisGroup};

fn main() -> p1moduli::Result<()> {
    let q = FieldTower::rational();
    let k = q.extend(&q.int(2))?.tower;
    let s2 = k.root(0);
    let r = &k.int(2) + &s2;
    let t = k.extend(&r)?.tower;
    let a = t.root(1);
    println!("tower degree {} (real: {})", t.degree(), t.is_real());
    println!("a = {a}, a^2 = {}, a^4 = {}", a.square(), a.pow(4));
    let x = &(&t.one() + &a) * &a;
    println!("(1 + a) a = {x}, inverse {}", x.inv()?);
    match t.int(2).sqrt() {
        Some(s) => println!("sqrt(2) = {s}"),
        None => println!("2 is not a square"),
    }

    let gal = GaloisGroup::compute(&t)?;
    println!("|Gal| = {}", gal.order());
    for (i, g) in gal.elements().iter().enumerate() {
        println!("  g{i}: a ↦ {}", g.apply(&a));
    }
    println!("multiplication table {:?}", gal.table());
    Ok(())
}
