//! Local solvability, rational points and parametrizations of conics.

use p1moduli::conic::{find_point, hasse_solvable, hilbert_symbol, parametrize, Place, TernaryForm};
use p1moduli::qfield::Rational;

fn main() -> p1moduli::Result<()> {
    let forms = [
        TernaryForm::diagonal(1, 1, -2),
        TernaryForm::diagonal(1, 1, 1),
        TernaryForm::diagonal(3, 5, -1),
        TernaryForm::diagonal(7, -11, -13),
        TernaryForm::veronese(),
    ];
    for f in &forms {
        let r = hasse_solvable(f)?;
        print!("{f}: ");
        if r.solvable {
            let p = find_point(f)?.expect("locally solvable conics have points");
            println!("point ({}, {}, {})", p[0], p[1], p[2]);
            let v = p.clone().map(Rational::from_integer);
            let par = parametrize(f, &v)?;
            let one = Rational::from_integer(1.into());
            let two = Rational::from_integer(2.into());
            let q = par.eval(&two, &one);
            println!("  image of (2:1) has f = {}", f.eval(&q));
        } else {
            let places: Vec<String> = r.failing.iter().map(|e| e.place.to_string()).collect();
            println!("no points, obstructed at {}", places.join(", "));
        }
    }

    let a = Rational::from_integer((-1).into());
    for p in [Place::Infinity, Place::prime(2), Place::prime(3), Place::prime(5)] {
        println!("(-1, -1)_{p} = {}", hilbert_symbol(&a, &a, &p));
    }
    Ok(())
}
