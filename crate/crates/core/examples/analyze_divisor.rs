//! Decide descent for a few divisors and check their certificates.
//!
//! Usage: `cargo run --example analyze_divisor [seed]`

use p1moduli::construct::{gen_counterexample, random_twisted_divisor, CounterexampleSpec, DEFAULT_MAX_RETRIES};
use p1moduli::decide::{analyze, verify_certificate, DecideOptions};
use p1moduli::divisor::Divisor;
use p1moduli::qfield::FieldTower;

fn report(name: &str, d: &Divisor) -> p1moduli::Result<()> {
    let an = analyze(d, &DecideOptions::default())?;
    let v = &an.verdict;
    println!("{name}: n = {}, Aut = {} (order {})", d.degree(), v.aut_class, v.aut_order);
    println!("  outcome {}, field of moduli of degree {}", v.outcome.as_str(), v.fom.degree());
    if let Some(c) = &v.compression {
        println!("  compression {c}, solvable: {:?}", v.compression_solvable);
    }
    println!("  certificate {:?}", v.certificate);
    match verify_certificate(d, v) {
        Ok(()) => println!("  certificate verified"),
        Err(e) => println!("  certificate REJECTED: {e}"),
    }
    Ok(())
}

fn main() -> p1moduli::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let q = FieldTower::rational();
    let i = q.extend(&q.int(-1))?.tower;

    let d = Divisor::from_affine(&i, [Some(i.int(0)), None, Some(i.root(0)), Some(-i.root(0)), Some(i.int(3))])?;
    report("quintic over Q(i)", &d)?;

    let d = random_twisted_divisor(8, &i, seed)?;
    report("twisted octic", &d)?;

    let (data, _) = gen_counterexample(&CounterexampleSpec { a: -1, b: -1, n: 8, seed }, DEFAULT_MAX_RETRIES)?;
    report("double cover preimage", &data.d)?;
    Ok(())
}
