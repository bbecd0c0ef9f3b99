//! Field of moduli, descent cochain and quotient ledger.

use p1moduli::divisor::{compute_aut, Divisor};
use p1moduli::moduli::{compression, compression_ramification, field_of_moduli, quotient_ramification};
use p1moduli::qfield::FieldTower;

fn main() -> p1moduli::Result<()> {
    let q = FieldTower::rational();
    let t = q.extend(&q.int(-1))?.tower;
    let i = t.root(0);
    let d0 = Divisor::from_affine(&t, [Some(t.zero()), None, Some(t.one()), Some(-t.one()), Some(i.clone()), Some(-&i)])?;
    for d in [d0.clone(), Divisor::from_affine(&t, [Some(t.zero()), Some(t.one()), Some(i.clone()), Some(t.int(3))])?] {
        let data = field_of_moduli(&d)?;
        let aut = compute_aut(&d)?;
        println!("D of degree {}: Aut = {}, field of moduli of degree {}", d.degree(), aut.class(), data.fom().degree());
        for (s, phi) in data.h().iter().zip(data.cochain()) {
            println!("  σ{s}: φ = {phi}");
        }
    }

    for m in [2, 3, 4, 6] {
        let l = quotient_ramification(m);
        println!("x ↦ x^{m}: Σ d·deg = {} = 2·{m} - 2", l.different_sum());
    }
    let t2 = q.extend(&q.int(-3))?.tower;
    let w = (&-t2.one() + &t2.root(0)).scale(&p1moduli::qfield::Rational::new(1.into(), 2.into()));
    let d = Divisor::from_affine(&t2, [Some(t2.zero()), Some(t2.one()), Some(w.clone()), Some(w.square()), Some(t2.int(2)), Some(&w * &t2.int(2)), Some(&w.square() * &t2.int(2))])?;
    let aut = compute_aut(&d)?;
    let data = field_of_moduli(&d)?;
    let c = compression(&d, &data, &aut)?;
    let l = compression_ramification(&c)?;
    println!("cyclic quotient of order {}: ledger sum {} with {} branch points", l.degree, l.different_sum(), l.branch.len());
    Ok(())
}
