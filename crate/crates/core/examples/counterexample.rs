//! Build a divisor that is not defined over its field of moduli.
//!
//! Usage: `cargo run --example counterexample [a b n seed]`

use p1moduli::construct::{gen_counterexample, CounterexampleSpec, DEFAULT_MAX_RETRIES};
use p1moduli::decide::Certificate;

fn main() -> p1moduli::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (a, b, n, seed) = match args[..] {
        [a, b, n, seed] => (a, b, n as usize, seed as u64),
        _ => (-1, 3, 8, 0),
    };
    let (c, v) = gen_counterexample(&CounterexampleSpec { a, b, n, seed }, DEFAULT_MAX_RETRIES)?;
    println!("conic C: {}", c.conic);
    println!("k' has degree {}, E has {} points, {} in the branch locus", c.k_prime.degree(), c.e_degree(), c.branch_in_e());
    for l in &c.lines {
        println!("  rational line {} x + {} y + {} z = 0", l[0], l[1], l[2]);
    }
    println!("deck involution {}", c.deck);
    println!("D over a tower of degree {}, {} points, {} attempt(s)", c.d.tower().degree(), c.d.degree(), c.attempts);
    println!("verdict {} with Aut = {} of order {}", v.outcome.as_str(), v.aut_class, v.aut_order);
    if let Certificate::Obstruction { conic, failing, symbols } = &v.certificate {
        println!("compression {conic}");
        for f in failing {
            println!("  no local point at {}", f.place);
        }
        if let Some(ss) = symbols {
            println!("  cocycle class as quaternion symbols {ss:?}");
        }
    }
    Ok(())
}
