//! Normal form {0, ∞, ±1, ±λ} of a sextic with an involution.

use p1moduli::construct::{deg6_normal_form, random_mobius};
use p1moduli::decide::decide;
use p1moduli::divisor::Divisor;
use p1moduli::qfield::FieldTower;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> p1moduli::Result<()> {
    let q = FieldTower::rational();
    let t = q.extend(&q.int(-3))?.tower;
    let lam = &t.int(2) + &t.root(0);
    let d = Divisor::from_affine(&t, [Some(t.zero()), None, Some(t.one()), Some(-t.one()), Some(lam.clone()), Some(-&lam)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let d = d.apply(&random_mobius(&t, &mut rng));
    let nf = deg6_normal_form(&d)?;
    println!("λ = {}", nf.lambda);
    println!("λ up to the normalizing choices: {:?}", nf.lambda_orbit.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("involution {}", nf.involution);
    let v = decide(&d)?;
    println!("Aut = {}, outcome {}", v.aut_class, v.outcome.as_str());
    Ok(())
}
