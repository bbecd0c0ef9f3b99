//! Ternary quadratic forms over Q: diagonalization, Hilbert symbols,
//! the Hasse–Minkowski test, rational points and parametrizations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, DEFAULT_FACTOR_BITS};
use crate::error::{Error, Result};
use crate::qfield::{format_rational, Rational};

pub type Vec3 = [Rational; 3];

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn zero3() -> Vec3 {
    [Rational::zero(), Rational::zero(), Rational::zero()]
}

/// The plane conic `Σ g_ij x_i x_j = 0` given by a symmetric Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    gram: [Vec3; 3],
}

impl TernaryForm {
    pub fn new(gram: [Vec3; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::schema("gram", "matrix is not symmetric"));
                }
            }
        }
        Ok(TernaryForm { gram })
    }

    /// From the upper triangle `g00, g01, g02, g11, g12, g22` of the Gram matrix.
    pub fn from_upper(u: [Rational; 6]) -> Self {
        let [a, b, c, d, e, f] = u;
        TernaryForm {
            gram: [[a, b.clone(), c.clone()], [b, d, e.clone()], [c, e, f]],
        }
    }

    pub fn upper(&self) -> [Rational; 6] {
        let g = &self.gram;
        [
            g[0][0].clone(),
            g[0][1].clone(),
            g[0][2].clone(),
            g[1][1].clone(),
            g[1][2].clone(),
            g[2][2].clone(),
        ]
    }

    pub fn diagonal(a: i64, b: i64, c: i64) -> Self {
        let mut gram = [zero3(), zero3(), zero3()];
        gram[0][0] = rat(a);
        gram[1][1] = rat(b);
        gram[2][2] = rat(c);
        TernaryForm { gram }
    }

    /// The Veronese conic `y0 y2 - y1^2`.
    pub fn veronese() -> Self {
        let h = Rational::new(1.into(), 2.into());
        TernaryForm::from_upper([Rational::zero(), Rational::zero(), h, rat(-1), Rational::zero(), Rational::zero()])
    }

    pub fn gram(&self) -> &[Vec3; 3] {
        &self.gram
    }

    pub fn det(&self) -> Rational {
        let g = &self.gram;
        &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1]) - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
            + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0])
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                if !self.gram[i][j].is_zero() {
                    acc += &self.gram[i][j] * &u[i] * &v[j];
                }
            }
        }
        acc
    }

    pub fn eval(&self, v: &Vec3) -> Rational {
        self.bilinear(v, v)
    }

    pub fn eval_int(&self, v: &[BigInt; 3]) -> Rational {
        self.eval(&v.clone().map(Rational::from_integer))
    }

    /// `P^T G P` for the matrix whose columns are `cols`.
    pub fn transform(&self, cols: &[Vec3; 3]) -> TernaryForm {
        let mut gram = [zero3(), zero3(), zero3()];
        for i in 0..3 {
            for j in 0..3 {
                gram[i][j] = self.bilinear(&cols[i], &cols[j]);
            }
        }
        TernaryForm { gram }
    }

    pub fn scale(&self, s: &Rational) -> TernaryForm {
        TernaryForm { gram: self.gram.clone().map(|r| r.map(|x| x * s)) }
    }

    /// Rescaled so that the polynomial coefficients `g_ii` and `2 g_ij` are
    /// coprime integers with the first nonzero one positive.
    pub fn primitive(&self) -> TernaryForm {
        let coeffs: Vec<Rational> = (0..3)
            .flat_map(|i| (i..3).map(move |j| (i, j)))
            .map(|(i, j)| if i == j { self.gram[i][i].clone() } else { &self.gram[i][j] * rat(2) })
            .collect();
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if g.is_zero() {
            return self.clone();
        }
        let lead_neg = nums.iter().find(|n| !n.is_zero()).map_or(false, |n| n.is_negative());
        let s = Rational::new(den, if lead_neg { -g } else { g });
        self.scale(&s)
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let mut first = true;
        for i in 0..3 {
            for j in i..3 {
                let c = if i == j { self.gram[i][i].clone() } else { &self.gram[i][j] * rat(2) };
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j { format!("{}^2", names[i]) } else { format!("{}{}", names[i], names[j]) };
                let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c) };
                if first {
                    if sign == "-" {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                if mag.is_one() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{}*{mono}", format_rational(&mag))?;
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryForm({self})")
    }
}

/// `f(Σ x_i basis[i]) = scale · Σ coeffs[i] x_i^2` with squarefree integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub coeffs: [BigInt; 3],
    pub basis: [Vec3; 3],
    pub scale: Rational,
}

/// Exact congruence diagonalization.
pub fn diagonalize(f: &TernaryForm) -> Result<Diagonalization> {
    if !f.is_nonsingular() {
        return Err(Error::SingularForm);
    }
    let mut cols: [Vec3; 3] = [zero3(), zero3(), zero3()];
    for (i, c) in cols.iter_mut().enumerate() {
        c[i] = Rational::one();
    }
    for k in 0..3 {
        let g = f.transform(&cols);
        if g.gram[k][k].is_zero() {
            if let Some(j) = (k + 1..3).find(|&j| !g.gram[j][j].is_zero()) {
                cols.swap(k, j);
            } else {
                let j = (k + 1..3).find(|&j| !g.gram[k][j].is_zero()).ok_or(Error::SingularForm)?;
                let cj = cols[j].clone();
                for (a, b) in cols[k].iter_mut().zip(cj) {
                    *a += b;
                }
            }
        }
        let g = f.transform(&cols);
        let pivot = g.gram[k][k].clone();
        for j in k + 1..3 {
            let factor = &g.gram[k][j] / &pivot;
            if factor.is_zero() {
                continue;
            }
            let ck = cols[k].clone();
            for (a, b) in cols[j].iter_mut().zip(ck) {
                *a -= &factor * b;
            }
        }
    }
    let g = f.transform(&cols);
    let mut sq: Vec<BigInt> = Vec::with_capacity(3);
    for i in 0..3 {
        let (s, r) = arith::rational_squarefree(&g.gram[i][i])?;
        let inv = r.recip();
        for x in cols[i].iter_mut() {
            *x *= &inv;
        }
        sq.push(s);
    }
    let common = sq.iter().fold(BigInt::zero(), |acc, s| acc.gcd(s));
    let coeffs = [&sq[0] / &common, &sq[1] / &common, &sq[2] / &common];
    let out = Diagonalization { coeffs, basis: cols, scale: Rational::from_integer(common) };
    let check = f.transform(&out.basis);
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { &out.scale * Rational::from_integer(out.coeffs[i].clone()) } else { Rational::zero() };
            if check.gram[i][j] != want {
                return Err(Error::InternalInconsistency("diagonalization check failed".into()));
            }
        }
    }
    Ok(out)
}

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: i64) -> Place {
        Place::Prime(BigInt::from(p))
    }

    pub fn parse(s: &str) -> Option<Place> {
        if s == "inf" {
            return Some(Place::Infinity);
        }
        s.parse::<BigInt>().ok().filter(|p| p > &BigInt::one()).map(Place::Prime)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A Hilbert symbol value at one place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaceEval {
    pub place: Place,
    pub symbol: i8,
}

// numerator * denominator: same square class, integral
fn square_class(a: &Rational) -> BigInt {
    a.numer() * a.denom()
}

fn eps(u: &BigInt) -> u8 {
    // (u - 1)/2 mod 2 for odd u
    if u.mod_floor(&BigInt::from(4)) == BigInt::one() {
        0
    } else {
        1
    }
}

fn omega(u: &BigInt) -> u8 {
    // (u^2 - 1)/8 mod 2 for odd u
    let r = u.mod_floor(&BigInt::from(8));
    if r == BigInt::one() || r == BigInt::from(7) {
        0
    } else {
        1
    }
}

/// The Hilbert symbol `(a, b)_v` by the classical closed formulas.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let (a, b) = (square_class(a), square_class(b));
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = arith::valuation(&a, p);
            let (beta, v) = arith::valuation(&b, p);
            let mut e: u32 = 0;
            if p == &BigInt::from(2) {
                e += (eps(&u) * eps(&v)) as u32 + alpha * omega(&v) as u32 + beta * omega(&u) as u32;
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let ep = if p.mod_floor(&BigInt::from(4)) == BigInt::one() { 0 } else { 1 };
                e += alpha * beta * ep;
                let mut s: i8 = if e % 2 == 0 { 1 } else { -1 };
                if beta % 2 == 1 {
                    s *= arith::legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= arith::legendre(&v, p);
                }
                s
            }
        }
    }
}

/// `∞`, `2` and the odd primes dividing `ab`, in that order.
pub fn relevant_places(a: &Rational, b: &Rational, max_bits: u64) -> Result<Vec<Place>> {
    places_dividing([a.numer(), a.denom(), b.numer(), b.denom()], max_bits)
}

// each integer is factored on its own, so the bound applies per factor
fn places_dividing<'a>(ns: impl IntoIterator<Item = &'a BigInt>, max_bits: u64) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity, Place::prime(2)];
    for n in ns {
        if n.is_zero() {
            continue;
        }
        for (p, _) in arith::factor(n, max_bits)? {
            if p != BigInt::from(2) {
                places.push(Place::Prime(p));
            }
        }
    }
    places.sort();
    places.dedup();
    Ok(places)
}

/// Hilbert symbols of `(a, b)` at the given places.
pub fn symbols_at(a: &Rational, b: &Rational, places: &[Place]) -> Vec<PlaceEval> {
    places.iter().map(|v| PlaceEval { place: v.clone(), symbol: hilbert_symbol(a, b, v) }).collect()
}

/// Outcome of the local-global test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseReport {
    pub solvable: bool,
    /// Places where the form has no local zero.
    pub failing: Vec<PlaceEval>,
    /// Every place that was evaluated.
    pub evaluated: Vec<PlaceEval>,
    /// The symbol `(a, b)` whose local values were computed.
    pub symbol: (BigInt, BigInt),
    pub diagonal: Diagonalization,
}

pub fn hasse_solvable(f: &TernaryForm) -> Result<HasseReport> {
    hasse_solvable_bounded(f, DEFAULT_FACTOR_BITS)
}

/// Hasse–Minkowski test, refusing coefficients wider than `max_bits`.
///
/// After diagonalizing to `a x^2 + b y^2 + c z^2`, the conic has a point iff
/// the Hilbert symbol `(-ac, -bc)` is trivial everywhere.
pub fn hasse_solvable_bounded(f: &TernaryForm, max_bits: u64) -> Result<HasseReport> {
    let diagonal = diagonalize(f)?;
    let [a, b, c] = &diagonal.coeffs;
    let s1 = Rational::from_integer(-(a * c));
    let s2 = Rational::from_integer(-(b * c));
    let places = places_dividing([a, b, c], max_bits)?;
    let evaluated = symbols_at(&s1, &s2, &places);
    let failing: Vec<PlaceEval> = evaluated.iter().filter(|e| e.symbol == -1).cloned().collect();
    if failing.len() % 2 == 1 {
        return Err(Error::InternalInconsistency("Hilbert reciprocity violated".into()));
    }
    Ok(HasseReport {
        solvable: failing.is_empty(),
        failing,
        evaluated,
        symbol: (s1.to_integer(), s2.to_integer()),
        diagonal,
    })
}

const SEARCH_HEIGHT: i64 = 10;
const DESCENT_DEPTH: usize = 256;

/// A primitive integral point, first nonzero coordinate positive, or `None`
/// when the conic has no rational point.
///
/// A short search on the diagonal model runs first; Legendre descent takes
/// over when it finds nothing.
pub fn find_point(f: &TernaryForm) -> Result<Option<[BigInt; 3]>> {
    find_point_bounded(f, DEFAULT_FACTOR_BITS)
}

/// [`find_point`] with an explicit factoring bound.
pub fn find_point_bounded(f: &TernaryForm, max_bits: u64) -> Result<Option<[BigInt; 3]>> {
    let report = hasse_solvable_bounded(f, max_bits)?;
    if !report.solvable {
        return Ok(None);
    }
    let d = &report.diagonal;
    let local = small_search(&d.coeffs).map(Ok).unwrap_or_else(|| legendre_point(&d.coeffs))?;
    let mut v = zero3();
    for (i, col) in d.basis.iter().enumerate() {
        for (k, x) in col.iter().enumerate() {
            v[k] += x * &local[i];
        }
    }
    let p = primitive_point(&v);
    if !f.eval_int(&p).is_zero() {
        return Err(Error::InternalInconsistency("point not on the conic".into()));
    }
    Ok(Some(p))
}

/// Scales a nonzero rational vector to coprime integers with the first
/// nonzero coordinate positive.
pub fn primitive_point(v: &Vec3) -> [BigInt; 3] {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    let neg = ints.iter().find(|n| !n.is_zero()).map_or(false, |n| n.is_negative());
    let g = if neg { -g } else { g };
    [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g]
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

// (x, y) by increasing max(x, y), then lexicographically; z solved exactly
fn small_search(c: &[BigInt; 3]) -> Option<Vec3> {
    for h in 0..=SEARCH_HEIGHT {
        for x in 0..=h {
            for y in 0..=h {
                if x.max(y) != h || (x == 0 && y == 0) {
                    continue;
                }
                let s = &c[0] * x * x + &c[1] * y * y;
                if !(&s % &c[2]).is_zero() {
                    continue;
                }
                if let Some(z) = isqrt_exact(&(-s / &c[2])) {
                    return Some([rat(x), rat(y), Rational::from_integer(z)]);
                }
            }
        }
    }
    None
}

// a x^2 + b y^2 + c z^2 = 0 through W^2 = A U^2 + B V^2 with
// W = c z, -ac = A α^2, -bc = B β^2, U = α x, V = β y
fn legendre_point(c: &[BigInt; 3]) -> Result<Vec3> {
    let (a, b, cc) = (&c[0], &c[1], &c[2]);
    let (aa, alpha) = arith::squarefree_decompose(&(-(a * cc)))?;
    let (bb, beta) = arith::squarefree_decompose(&(-(b * cc)))?;
    let (w, u, v) = legendre_solve(&aa, &bb, 0)?;
    Ok([
        Rational::new(u, alpha),
        Rational::new(v, beta),
        Rational::new(w, cc.clone()),
    ])
}

/// A nontrivial solution of `x^2 = a y^2 + b z^2` for squarefree `a, b`
/// whose Hilbert symbol is trivial everywhere.
pub fn legendre_solve(a: &BigInt, b: &BigInt, depth: usize) -> Result<(BigInt, BigInt, BigInt)> {
    if depth > DESCENT_DEPTH {
        return Err(Error::SearchExhausted);
    }
    let one = BigInt::one();
    let zero = BigInt::zero();
    if a.is_one() {
        return Ok((one.clone(), one, zero));
    }
    if b.is_one() {
        return Ok((one.clone(), zero, one));
    }
    if a == &-b {
        return Ok((zero, one.clone(), one));
    }
    if a.abs() > b.abs() {
        let (x, y, z) = legendre_solve(b, a, depth + 1)?;
        return Ok((x, z, y));
    }
    let modulus = b.abs();
    if modulus.is_one() {
        return Err(Error::SearchExhausted);
    }
    let primes: Vec<BigInt> = arith::factor(&modulus, DEFAULT_FACTOR_BITS)?.into_iter().map(|(p, _)| p).collect();
    let mut t = arith::sqrt_mod_squarefree(a, &primes).ok_or(Error::SearchExhausted)?;
    if &t * 2 > modulus {
        t -= &modulus;
    }
    let num = &t * &t - a;
    let bp = &num / b;
    if bp.is_zero() {
        return Err(Error::SearchExhausted);
    }
    let (c, s) = arith::squarefree_decompose(&bp)?;
    let (x1, y1, z1) = legendre_solve(a, &c, depth + 1)?;
    // (x1 + y1 √a)(t + √a) has norm c z1^2 (t^2 - a) = b (c s z1)^2
    let x = &x1 * &t + a * &y1;
    let y = &x1 + &y1 * &t;
    let z = &c * &s * &z1;
    if &x * &x != a * &y * &y + b * &z * &z {
        return Err(Error::InternalInconsistency("Legendre descent produced a non-solution".into()));
    }
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return Err(Error::SearchExhausted);
    }
    Ok((x, y, z))
}

/// A degree-2 map `(s : t) ↦ Σ coeffs[k] s^{2-k} t^k` onto a conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    /// Coefficient vectors of `s^2`, `s t` and `t^2`.
    pub coeffs: [Vec3; 3],
}

impl Parametrization {
    pub fn eval(&self, s: &Rational, t: &Rational) -> Vec3 {
        let w = [s * s, s * t, t * t];
        let mut out = zero3();
        for (k, c) in self.coeffs.iter().enumerate() {
            for i in 0..3 {
                out[i] += &c[i] * &w[k];
            }
        }
        out
    }

    /// Coefficients of `f(X(s, t))` as a quartic in `s, t`.
    pub fn substitute(&self, f: &TernaryForm) -> [Rational; 5] {
        let mut out: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for i in 0..3 {
            for j in 0..3 {
                let g = &f.gram()[i][j];
                if g.is_zero() {
                    continue;
                }
                for k in 0..3 {
                    for l in 0..3 {
                        out[k + l] += g * &self.coeffs[k][i] * &self.coeffs[l][j];
                    }
                }
            }
        }
        out
    }
}

/// Lines through `p` meet the conic once more: `X = f(r) p - 2 B(p, r) r`
/// with `r = s q1 + t q2`.
pub fn parametrize(f: &TernaryForm, p: &Vec3) -> Result<Parametrization> {
    if p.iter().all(Zero::is_zero) || !f.eval(p).is_zero() {
        return Err(Error::PointNotOnConic);
    }
    if !f.is_nonsingular() {
        return Err(Error::SingularForm);
    }
    let units: Vec<Vec3> = (0..3)
        .map(|i| {
            let mut e = zero3();
            e[i] = Rational::one();
            e
        })
        .collect();
    let piv = (0..3).rev().find(|&i| !p[i].is_zero()).expect("nonzero point");
    let others: Vec<&Vec3> = (0..3).filter(|&i| i != piv).map(|i| &units[i]).collect();
    let (q1, q2) = (others[0], others[1]);
    let (f1, f2, b12) = (f.eval(q1), f.eval(q2), f.bilinear(q1, q2));
    let (b1, b2) = (f.bilinear(p, q1), f.bilinear(p, q2));
    let two = rat(2);
    let mut coeffs = [zero3(), zero3(), zero3()];
    for i in 0..3 {
        coeffs[0][i] = &f1 * &p[i] - &two * &b1 * &q1[i];
        coeffs[1][i] = &two * &b12 * &p[i] - &two * (&b1 * &q2[i] + &b2 * &q1[i]);
        coeffs[2][i] = &f2 * &p[i] - &two * &b2 * &q2[i];
    }
    let out = Parametrization { coeffs };
    if out.substitute(f).iter().any(|c| !c.is_zero()) {
        return Err(Error::InternalInconsistency("parametrization does not lie on the conic".into()));
    }
    Ok(out)
}
