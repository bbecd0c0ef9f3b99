//! Test whether two divisors differ by a Möbius transformation.

use p1moduli::divisor::{compute_aut, pgl2_equivalent, Divisor};
use p1moduli::projline::Mobius;
use p1moduli::qfield::FieldTower;

fn main() -> p1moduli::Result<()> {
    let q = FieldTower::rational();
    let t = q.extend(&q.int(2))?.tower;
    let s = t.root(0);
    let d = Divisor::from_affine(&t, [Some(t.zero()), Some(t.one()), Some(s.clone()), Some(-&s), Some(t.int(5))])?;
    let m = Mobius::new(t.int(1), s.clone(), t.int(-1), t.int(3))?;
    let e = d.apply(&m);
    match pgl2_equivalent(&d, &e)? {
        Some(w) => println!("equivalent via {w}, which maps D onto E: {}", d.apply(&w) == e),
        None => println!("not equivalent"),
    }
    let f = Divisor::from_affine(&t, [Some(t.zero()), Some(t.one()), Some(s.clone()), Some(-&s), Some(t.int(6))])?;
    println!("D ~ F: {}", pgl2_equivalent(&d, &f)?.is_some());
    let aut = compute_aut(&d)?;
    println!("Aut(D) = {} of order {}", aut.class(), aut.order());
    Ok(())
}
