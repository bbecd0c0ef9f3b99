use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::arith;
use crate::error::{Error, Result};

struct TowerData {
    radicands: Vec<Vec<Rational>>,
    // Radicand i as (integer coordinates, denominator), and the scale of integer products per level.
    int_rads: Vec<(Vec<BigInt>, BigInt)>,
    scales: Vec<BigInt>,
    real: bool,
}

impl TowerData {
    fn new(radicands: Vec<Vec<Rational>>, real: bool) -> Self {
        let mut int_rads = Vec::with_capacity(radicands.len());
        let mut scales = vec![BigInt::one()];
        for r in &radicands {
            let (v, e) = clear_denominators(r);
            let prev = scales.last().unwrap();
            scales.push(prev * prev * &e);
            int_rads.push((v, e));
        }
        TowerData { radicands, int_rads, scales, real }
    }
}

fn clear_denominators(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let d = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let v = a.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (v, d)
}

fn add_i(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

// Returns C with a*b = C / scales[level].
fn mul_int(t: &TowerData, level: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let half = 1 << (level - 1);
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let lift = |v: Vec<BigInt>, f: &BigInt| -> Vec<BigInt> {
        if f.is_one() {
            v
        } else {
            v.into_iter().map(|x| x * f).collect()
        }
    };
    let (r, e) = &t.int_rads[level - 1];
    let f = &t.scales[level - 1] * e;
    let a1z = a1.iter().all(Zero::is_zero);
    let b1z = b1.iter().all(Zero::is_zero);
    if a1z && b1z {
        let mut lo = lift(mul_int(t, level - 1, a0, b0), &f);
        lo.resize(2 * half, BigInt::zero());
        return lo;
    }
    let ac = mul_int(t, level - 1, a0, b0);
    let bd = mul_int(t, level - 1, a1, b1);
    let hi: Vec<BigInt> = if a1z {
        mul_int(t, level - 1, a0, b1)
    } else if b1z {
        mul_int(t, level - 1, a1, b0)
    } else {
        let cross = mul_int(t, level - 1, &add_i(a0, a1), &add_i(b0, b1));
        cross.into_iter().zip(&ac).zip(&bd).map(|((c, x), y)| c - x - y).collect()
    };
    let bdr = mul_int(t, level - 1, &bd, r);
    let mut out: Vec<BigInt> = lift(ac, &f).into_iter().zip(bdr).map(|(x, y)| x + y).collect();
    out.extend(lift(hi, &f));
    out
}

/// An iterated quadratic extension of Q.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerData>);

/// Result of adjoining a square root: the (possibly unchanged) tower and a
/// square root of the radicand inside it.
#[derive(Clone, Debug)]
pub struct TowerExtension {
    pub tower: FieldTower,
    pub root: FieldElem,
    pub extended: bool,
}

/// An element of a [`FieldTower`], stored by coordinates.
#[derive(Clone)]
pub struct FieldElem {
    tower: FieldTower,
    coords: Vec<Rational>,
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn add_v(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_v(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg_v(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

fn scale_v(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

fn is_zero_v(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn concat(lo: Vec<Rational>, hi: Vec<Rational>) -> Vec<Rational> {
    let mut v = lo;
    v.extend(hi);
    v
}

// (a0 + a1 √r)(b0 + b1 √r) = (a0 b0 + a1 b1 r) + (a0 b1 + a1 b0) √r
#[cfg(test)]
fn mul_rec(rads: &[Vec<Rational>], level: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let half = 1 << (level - 1);
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    if is_zero_v(a1) && is_zero_v(b1) {
        return concat(mul_rec(rads, level - 1, a0, b0), zeros(half));
    }
    let r = &rads[level - 1];
    let ac = mul_rec(rads, level - 1, a0, b0);
    let bd = mul_rec(rads, level - 1, a1, b1);
    let cross = mul_rec(rads, level - 1, &add_v(a0, a1), &add_v(b0, b1));
    let hi = sub_v(&sub_v(&cross, &ac), &bd);
    let lo = add_v(&ac, &mul_rec(rads, level - 1, &bd, r));
    concat(lo, hi)
}

fn mul_fast(t: &TowerData, level: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let (x, dx) = clear_denominators(a);
    let (y, dy) = clear_denominators(b);
    let den = dx * dy * &t.scales[level];
    mul_int(t, level, &x, &y).into_iter().map(|n| Rational::new(n, den.clone())).collect()
}

fn inv_rec(t: &TowerData, level: usize, a: &[Rational]) -> Option<Vec<Rational>> {
    if level == 0 {
        return if a[0].is_zero() { None } else { Some(vec![a[0].recip()]) };
    }
    let half = 1 << (level - 1);
    let (a0, a1) = a.split_at(half);
    let r = &t.radicands[level - 1];
    let sq0 = mul_fast(t, level - 1, a0, a0);
    let sq1 = mul_fast(t, level - 1, a1, a1);
    let norm = sub_v(&sq0, &mul_fast(t, level - 1, &sq1, r));
    let ninv = inv_rec(t, level - 1, &norm)?;
    Some(concat(
        mul_fast(t, level - 1, a0, &ninv),
        neg_v(&mul_fast(t, level - 1, a1, &ninv)),
    ))
}

fn sqrt_rec(t: &TowerData, level: usize, a: &[Rational]) -> Option<Vec<Rational>> {
    if level == 0 {
        return arith::rational_sqrt(&a[0]).map(|x| vec![x]);
    }
    let half = 1 << (level - 1);
    let (a0, a1) = a.split_at(half);
    let r = &t.radicands[level - 1];
    if is_zero_v(a1) {
        if let Some(c) = sqrt_rec(t, level - 1, a0) {
            return Some(concat(c, zeros(half)));
        }
        let rinv = inv_rec(t, level - 1, r)?;
        let d = sqrt_rec(t, level - 1, &mul_fast(t, level - 1, a0, &rinv))?;
        return Some(concat(zeros(half), d));
    }
    // c^2 + d^2 r = a0, 2cd = a1, so (c^2 - d^2 r)^2 = a0^2 - a1^2 r
    let norm = sub_v(
        &mul_fast(t, level - 1, a0, a0),
        &mul_fast(t, level - 1, &mul_fast(t, level - 1, a1, a1), r),
    );
    let n = sqrt_rec(t, level - 1, &norm)?;
    let two_inv = Rational::new(BigInt::one(), BigInt::from(2));
    for cand in [add_v(a0, &n), sub_v(a0, &n)] {
        let c2 = scale_v(&cand, &two_inv);
        if is_zero_v(&c2) {
            continue;
        }
        if let Some(c) = sqrt_rec(t, level - 1, &c2) {
            let cinv = inv_rec(t, level - 1, &c)?;
            let d = scale_v(&mul_fast(t, level - 1, a1, &cinv), &two_inv);
            return Some(concat(c, d));
        }
    }
    None
}

fn rat_sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

// Sign under the real embedding in which every adjoined root is positive.
fn sign_rec(t: &TowerData, level: usize, a: &[Rational]) -> i8 {
    if level == 0 {
        return rat_sign(&a[0]);
    }
    let half = 1 << (level - 1);
    let (a0, a1) = a.split_at(half);
    let s0 = sign_rec(t, level - 1, a0);
    let s1 = sign_rec(t, level - 1, a1);
    if s1 == 0 {
        return s0;
    }
    if s0 == 0 || s0 == s1 {
        return s1;
    }
    let r = &t.radicands[level - 1];
    let diff = sub_v(
        &mul_fast(t, level - 1, a0, a0),
        &mul_fast(t, level - 1, &mul_fast(t, level - 1, a1, a1), r),
    );
    s0 * sign_rec(t, level - 1, &diff)
}

impl FieldTower {
    /// The tower of level 0, i.e. Q itself.
    pub fn rational() -> Self {
        FieldTower(Arc::new(TowerData::new(Vec::new(), true)))
    }

    /// Builds a tower from explicit radicands; each must be a nonsquare in its level.
    pub fn from_radicands(radicands: Vec<Vec<Rational>>) -> Result<Self> {
        let mut tower = FieldTower::rational();
        for (i, r) in radicands.into_iter().enumerate() {
            if r.len() != 1 << i {
                return Err(Error::schema(
                    format!("tower[{i}]"),
                    format!("expected {} coordinates, found {}", 1 << i, r.len()),
                ));
            }
            let rad = tower.elem(r)?;
            if rad.is_zero() {
                return Err(Error::ZeroRadicand);
            }
            if rad.sqrt().is_some() {
                return Err(Error::SquareRadicand { step: i });
            }
            tower = tower.push_radicand(&rad);
        }
        Ok(tower)
    }

    fn push_radicand(&self, rad: &FieldElem) -> FieldTower {
        let real = self.0.real && rad.real_sign() == Some(1);
        let mut radicands = self.0.radicands.clone();
        radicands.push(rad.coords.clone());
        FieldTower(Arc::new(TowerData::new(radicands, real)))
    }

    /// Adjoins a square root of `radicand`, detecting squares.
    ///
    /// Rational radicands are normalized to squarefree integers first.
    pub fn extend(&self, radicand: &FieldElem) -> Result<TowerExtension> {
        self.check(radicand)?;
        if radicand.is_zero() {
            return Err(Error::ZeroRadicand);
        }
        if let Some(root) = radicand.sqrt() {
            return Ok(TowerExtension { tower: self.clone(), root, extended: false });
        }
        let (rad, scale) = match radicand.as_rational() {
            Some(q) => {
                let (s, f) = arith::rational_squarefree(q)?;
                (self.from_rational(Rational::from_integer(s)), f)
            }
            None => (radicand.clone(), Rational::one()),
        };
        let tower = self.push_radicand(&rad);
        let root = tower.root(self.level()).scale(&scale);
        Ok(TowerExtension { tower, root, extended: true })
    }

    pub fn level(&self) -> usize {
        self.0.radicands.len()
    }

    /// Degree over Q, `2^level`.
    pub fn degree(&self) -> usize {
        1 << self.level()
    }

    /// Whether the embedding with all adjoined roots positive is real.
    pub fn is_real(&self) -> bool {
        self.0.real
    }

    pub fn radicand_coords(&self, step: usize) -> &[Rational] {
        &self.0.radicands[step]
    }

    /// Radicand of `step` as an element of this tower.
    pub fn radicand(&self, step: usize) -> FieldElem {
        let mut c = self.0.radicands[step].clone();
        c.resize(self.degree(), Rational::zero());
        FieldElem { tower: self.clone(), coords: c }
    }

    /// The adjoined root of `step`.
    pub fn root(&self, step: usize) -> FieldElem {
        self.basis(1 << step)
    }

    /// Basis element with index `b` in binary-counter order.
    pub fn basis(&self, b: usize) -> FieldElem {
        let mut c = zeros(self.degree());
        c[b] = Rational::one();
        FieldElem { tower: self.clone(), coords: c }
    }

    /// The subtower made of the first `level` steps.
    pub fn prefix(&self, level: usize) -> FieldTower {
        if level == self.level() {
            return self.clone();
        }
        let mut t = FieldTower::rational();
        for r in &self.0.radicands[..level] {
            let rad = FieldElem { tower: t.clone(), coords: r.clone() };
            t = t.push_radicand(&rad);
        }
        t
    }

    /// True when `self` is `other` or a prefix of it.
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.level() <= other.level() && self.0.radicands[..] == other.0.radicands[..self.level()]
    }

    /// Embeds an element of a prefix tower.
    pub fn embed(&self, x: &FieldElem) -> Result<FieldElem> {
        if !x.tower.is_prefix_of(self) {
            return Err(Error::TowerMismatch);
        }
        let mut c = x.coords.clone();
        c.resize(self.degree(), Rational::zero());
        Ok(FieldElem { tower: self.clone(), coords: c })
    }

    pub fn same(&self, other: &FieldTower) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.radicands == other.0.radicands
    }

    fn check(&self, x: &FieldElem) -> Result<()> {
        if self.same(&x.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { tower: self.clone(), coords: zeros(self.degree()) }
    }

    pub fn one(&self) -> FieldElem {
        self.basis(0)
    }

    pub fn int(&self, n: i64) -> FieldElem {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: Rational) -> FieldElem {
        let mut c = zeros(self.degree());
        c[0] = q;
        FieldElem { tower: self.clone(), coords: c }
    }

    pub fn elem(&self, coords: Vec<Rational>) -> Result<FieldElem> {
        if coords.len() != self.degree() {
            return Err(Error::schema(
                "",
                format!("expected {} coordinates, found {}", self.degree(), coords.len()),
            ));
        }
        Ok(FieldElem { tower: self.clone(), coords })
    }

    pub(crate) fn radicands(&self) -> &[Vec<Rational>] {
        &self.0.radicands
    }

    /// True when every radicand is rational (a multiquadratic presentation).
    pub fn is_multiquadratic(&self) -> bool {
        self.0.radicands.iter().all(|r| is_zero_v(&r[1..]))
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower[")?;
        for (i, r) in self.0.radicands.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let e = FieldElem { tower: self.prefix(i), coords: r.clone() };
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for FieldTower {}

impl FieldElem {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_v(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_zero_v(&self.coords[1..])
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if is_zero_v(&self.coords[1..]) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn lvl(&self) -> usize {
        self.tower.level()
    }

    fn with(&self, coords: Vec<Rational>) -> FieldElem {
        FieldElem { tower: self.tower.clone(), coords }
    }

    pub fn checked_add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.tower.check(o)?;
        Ok(self.with(add_v(&self.coords, &o.coords)))
    }

    pub fn checked_sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.tower.check(o)?;
        Ok(self.with(sub_v(&self.coords, &o.coords)))
    }

    pub fn checked_mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.tower.check(o)?;
        Ok(self.with(mul_fast(&self.tower.0, self.lvl(), &self.coords, &o.coords)))
    }

    pub fn checked_div(&self, o: &FieldElem) -> Result<FieldElem> {
        self.tower.check(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        inv_rec(&self.tower.0, self.lvl(), &self.coords)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn scale(&self, q: &Rational) -> FieldElem {
        self.with(scale_v(&self.coords, q))
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = self.tower.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A square root inside the tower, if one exists.
    ///
    /// In a real tower the positive root is returned; otherwise the root whose
    /// first nonzero coordinate is positive.
    pub fn sqrt(&self) -> Option<FieldElem> {
        let r = self.with(sqrt_rec(&self.tower.0, self.lvl(), &self.coords)?);
        let flip = if r.is_zero() {
            false
        } else if self.tower.is_real() {
            r.real_sign() == Some(-1)
        } else {
            r.coords.iter().find(|c| !c.is_zero()).map_or(false, |c| c.is_negative())
        };
        Some(if flip { -&r } else { r })
    }

    /// Sign under the real embedding with positive roots, when the tower is real.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.tower.is_real() {
            return None;
        }
        Some(sign_rec(&self.tower.0, self.lvl(), &self.coords))
    }

    /// Least common denominator of the coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.tower.same(&other.tower)
    }
}
impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coordinates; only meaningful within one tower.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = String::new();
            let neg = c.is_negative();
            let mag = c.abs();
            let roots: Vec<String> =
                (0..self.lvl()).filter(|i| b >> i & 1 == 1).map(|i| format!("s{}", i + 1)).collect();
            if roots.is_empty() || !mag.is_one() {
                term.push_str(&format_rational(&mag));
            }
            if !roots.is_empty() {
                if !term.is_empty() {
                    term.push('*');
                }
                term.push_str(&roots.join("*"));
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{term}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator forms panic on tower mismatch; use the checked_* methods at API boundaries.
impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        self.checked_add(o).expect("tower mismatch in add")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        self.checked_sub(o).expect("tower mismatch in sub")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        self.checked_mul(o).expect("tower mismatch in mul")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with(neg_v(&self.coords))
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: FieldElem) -> FieldElem {
        &self + &o
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: FieldElem) -> FieldElem {
        &self - &o
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: FieldElem) -> FieldElem {
        &self * &o
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
