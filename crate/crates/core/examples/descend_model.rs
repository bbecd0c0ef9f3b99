//! Find a model over Q of a divisor given over Q(i, √2).

use p1moduli::binform::BinaryForm;
use p1moduli::construct::random_twisted_divisor;
use p1moduli::decide::build_p1_model;
use p1moduli::divisor::compute_aut;
use p1moduli::moduli::field_of_moduli;
use p1moduli::qfield::FieldTower;

fn main() -> p1moduli::Result<()> {
    let q = FieldTower::rational();
    let i = q.extend(&q.int(-1))?.tower;
    let t = i.extend(&i.int(2))?.tower;
    let d = random_twisted_divisor(5, &t, 11)?;
    let data = field_of_moduli(&d)?;
    let aut = compute_aut(&d)?;
    println!("field of moduli is Q: {}", data.fom_is_q());
    let m = build_p1_model(&d, &data, &aut)?;
    let bits: Vec<u64> = m.form.coeffs().iter().map(|c| c.as_rational().map_or(0, |q| q.numer().bits())).collect();
    println!("model over Q of degree {}, coefficient sizes in bits {bits:?}", m.form.degree());
    println!("B is the identity: {}", m.b.is_identity());
    let f = BinaryForm::new(m.form.coeffs().iter().map(|c| t.embed(c)).collect::<p1moduli::Result<_>>()?);
    let pulled = d.apply(&m.b.inverse());
    println!("B^-1(D) is the root set of the model: {}", pulled.points().iter().all(|p| f.eval(p).is_zero()));
    Ok(())
}
