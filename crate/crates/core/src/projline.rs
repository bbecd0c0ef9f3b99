//! Exact projective line over a tower: points, Möbius maps, cross-ratios,
//! orders and fixed points.

use std::fmt;

use crate::error::{Error, Result};
use crate::qfield::{FieldElem, FieldTower, GaloisAut};

/// Default bound on the orders probed by [`Mobius::order_and_fixed`].
pub const DEFAULT_ORDER_BOUND: u32 = 24;

/// A point `(x : y)`, normalized to `(x : 1)` or `(1 : 0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: FieldElem,
    y: FieldElem,
}

impl ProjPoint {
    pub fn new(x: FieldElem, y: FieldElem) -> Result<Self> {
        if x.tower() != y.tower() {
            return Err(Error::TowerMismatch);
        }
        if y.is_zero() {
            if x.is_zero() {
                return Err(Error::ZeroPoint);
            }
            let t = x.tower().clone();
            return Ok(ProjPoint { x: t.one(), y: t.zero() });
        }
        let x = x.checked_div(&y)?;
        Ok(ProjPoint { y: x.tower().one(), x })
    }

    pub fn finite(x: FieldElem) -> Self {
        let y = x.tower().one();
        ProjPoint { x, y }
    }

    pub fn infinity(tower: &FieldTower) -> Self {
        ProjPoint { x: tower.one(), y: tower.zero() }
    }

    pub fn int(tower: &FieldTower, n: i64) -> Self {
        ProjPoint::finite(tower.int(n))
    }

    pub fn x(&self) -> &FieldElem {
        &self.x
    }

    pub fn y(&self) -> &FieldElem {
        &self.y
    }

    pub fn tower(&self) -> &FieldTower {
        self.x.tower()
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn affine(&self) -> Option<&FieldElem> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn conjugate(&self, sigma: &GaloisAut) -> ProjPoint {
        ProjPoint { x: sigma.apply(&self.x), y: sigma.apply(&self.y) }
    }

    /// Moves the point into a tower that has this point's tower as a prefix.
    pub fn embed(&self, tower: &FieldTower) -> Result<ProjPoint> {
        Ok(ProjPoint { x: tower.embed(&self.x)?, y: tower.embed(&self.y)? })
    }

    // y_p X - x_p Y, the linear form vanishing at this point
    fn linear_at(&self, other: &ProjPoint) -> FieldElem {
        &(&self.y * &other.x) - &(&self.x * &other.y)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "∞")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Order of a Möbius transformation in PGL2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiusOrder {
    Finite(u32),
    Infinite,
}

/// Fixed points, possibly over an extension of the input tower.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub tower: FieldTower,
    pub points: Vec<ProjPoint>,
}

/// A fractional-linear map `x ↦ (a x + b)/(c x + d)` up to scale.
/// The first nonzero entry of `(a, b, c, d)` is normalized to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    m: [FieldElem; 4],
}

impl Mobius {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        let t = a.tower().clone();
        if [&b, &c, &d].iter().any(|e| e.tower() != &t) {
            return Err(Error::TowerMismatch);
        }
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(Self::normalized([a, b, c, d]))
    }

    fn normalized(m: [FieldElem; 4]) -> Self {
        let lead = m.iter().find(|e| !e.is_zero()).expect("nonzero matrix").clone();
        if lead.is_one() {
            return Mobius { m };
        }
        let inv = lead.inv().expect("nonzero");
        Mobius { m: m.map(|e| &e * &inv) }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Mobius { m: [tower.one(), tower.zero(), tower.zero(), tower.one()] }
    }

    /// Convenience constructor from small integers over `tower`.
    pub fn from_ints(tower: &FieldTower, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(tower.int(a), tower.int(b), tower.int(c), tower.int(d))
    }

    pub fn entries(&self) -> &[FieldElem; 4] {
        &self.m
    }

    pub fn tower(&self) -> &FieldTower {
        self.m[0].tower()
    }

    pub fn det(&self) -> FieldElem {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn trace(&self) -> FieldElem {
        &self.m[0] + &self.m[3]
    }

    pub fn is_identity(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        let x = &(a * p.x()) + &(b * p.y());
        let y = &(c * p.x()) + &(d * p.y());
        ProjPoint::new(x, y).expect("nonsingular map sends points to points")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Mobius::normalized([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn inverse(&self) -> Mobius {
        let [a, b, c, d] = &self.m;
        Mobius::normalized([d.clone(), -b, -c, a.clone()])
    }

    pub fn power(&self, k: u32) -> Mobius {
        let mut acc = Mobius::identity(self.tower());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Applies a field automorphism to the entries.
    pub fn conjugate(&self, sigma: &GaloisAut) -> Mobius {
        Mobius::normalized(self.m.clone().map(|e| sigma.apply(&e)))
    }

    pub fn embed(&self, tower: &FieldTower) -> Result<Mobius> {
        let [a, b, c, d] = &self.m;
        Ok(Mobius { m: [tower.embed(a)?, tower.embed(b)?, tower.embed(c)?, tower.embed(d)?] })
    }

    /// The map sending `p1, p2, p3` to `0, 1, ∞`.
    fn to_standard(p: [&ProjPoint; 3]) -> Result<Mobius> {
        let [p1, p2, p3] = p;
        if p1 == p2 || p2 == p3 || p1 == p3 {
            return Err(Error::RepeatedPoints);
        }
        let l1 = p1.linear_at(p2);
        let l3 = p3.linear_at(p2);
        Ok(Mobius::normalized([
            &l3 * p1.y(),
            -&(&l3 * p1.x()),
            &l1 * p3.y(),
            -&(&l1 * p3.x()),
        ]))
    }

    /// The unique map with `M(p_i) = q_i`.
    pub fn from_triples(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> Result<Mobius> {
        let np = Mobius::to_standard(p)?;
        let nq = Mobius::to_standard(q)?;
        if np.tower() != nq.tower() {
            return Err(Error::TowerMismatch);
        }
        Ok(nq.inverse().compose(&np))
    }

    /// Order in PGL2 and the fixed points.
    ///
    /// Orders up to `bound` are detected by powering. Beyond it, the map is
    /// reported as infinite when `trace^2/det` rules out every root of unity,
    /// and `UnsupportedCyclotomy` is raised otherwise.
    pub fn order_and_fixed(&self, bound: u32) -> Result<(MobiusOrder, FixedPoints)> {
        let fixed = self.fixed_points()?;
        if self.is_identity() {
            return Ok((MobiusOrder::Finite(1), fixed));
        }
        let mut acc = self.clone();
        for k in 2..=bound {
            acc = acc.compose(self);
            if acc.is_identity() {
                return Ok((MobiusOrder::Finite(k), fixed));
            }
        }
        // trace^2/det = 2 + ζ + ζ^{-1} for an eigenvalue ratio ζ
        let s = self.trace().square().checked_div(&self.det())?;
        let t = self.tower();
        let infinite = match s.as_rational() {
            // the rational values 0..4 belong to orders 2, 3, 4, 6 and to parabolic maps
            Some(_) => true,
            None => match (s.real_sign(), (&s - &t.int(4)).real_sign()) {
                (Some(a), Some(b)) => a < 0 || b > 0,
                _ => false,
            },
        };
        if infinite {
            Ok((MobiusOrder::Infinite, fixed))
        } else {
            Err(Error::UnsupportedCyclotomy)
        }
    }

    /// Solutions of `c x^2 + (d - a) x y - b y^2 = 0`, adjoining a root when needed.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        let [a, b, c, d] = &self.m;
        let t = self.tower().clone();
        if self.is_identity() {
            return Ok(FixedPoints { tower: t, points: Vec::new() });
        }
        if c.is_zero() {
            let mut pts = vec![ProjPoint::infinity(&t)];
            let dma = d - a;
            if !dma.is_zero() {
                pts.push(ProjPoint::finite(b.checked_div(&dma)?));
            }
            pts.sort();
            return Ok(FixedPoints { tower: t, points: pts });
        }
        let dma = d - a;
        let disc = &dma.square() + &(&(b * c) * &t.int(4));
        if disc.is_zero() {
            let x = (-&dma).checked_div(&(c * &t.int(2)))?;
            return Ok(FixedPoints { tower: t, points: vec![ProjPoint::finite(x)] });
        }
        let ext = t.extend(&disc)?;
        let big = ext.tower;
        let (c, dma) = (big.embed(c)?, big.embed(&dma)?);
        let two_c = &c * &big.int(2);
        let mut pts = vec![
            ProjPoint::finite((&ext.root - &dma).checked_div(&two_c)?),
            ProjPoint::finite((&(-&ext.root) - &dma).checked_div(&two_c)?),
        ];
        pts.sort();
        Ok(FixedPoints { tower: big, points: pts })
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cross-ratio with the convention `cr(0, 1, ∞, z) = z`: the image of `p4`
/// under the map sending `p1, p2, p3` to `0, 1, ∞`.
pub fn cross_ratio(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint, p4: &ProjPoint) -> Result<ProjPoint> {
    Ok(Mobius::to_standard([p1, p2, p3])?.apply(p4))
}
