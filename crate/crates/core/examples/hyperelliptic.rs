//! Descent of the branch divisor of a hyperelliptic curve.

use p1moduli::construct::{gen_counterexample, hyperelliptic_branch_analysis, CounterexampleSpec, DEFAULT_MAX_RETRIES};
use p1moduli::divisor::Divisor;
use p1moduli::qfield::FieldTower;

fn main() -> p1moduli::Result<()> {
    let (c, _) = gen_counterexample(&CounterexampleSpec { a: -1, b: -1, n: 10, seed: 3 }, DEFAULT_MAX_RETRIES)?;
    let r = hyperelliptic_branch_analysis(&c.d, false)?;
    println!("genus {}, reduced automorphism group {} of order {}", r.genus, r.reduced_class, r.reduced_order);
    println!("branch divisor obstructed: {}, cyclic condition holds: {}", r.obstruction, r.cyclic_condition_holds);

    let q = FieldTower::rational();
    let t = q.extend(&q.int(5))?.tower;
    let s = t.root(0);
    let b = Divisor::from_affine(&t, [Some(t.zero()), Some(t.one()), Some(s.clone()), Some(-&s), Some(t.int(4))])?;
    let r = hyperelliptic_branch_analysis(&b, true)?;
    println!("y^2 = x(x-1)(x^2-5)(x-4): genus {}, outcome {}", r.genus, r.verdict.outcome.as_str());
    Ok(())
}
