//! Reduced effective divisors on the projective line and their automorphism
//! groups inside PGL2.

use std::fmt;

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::projline::{Mobius, ProjPoint};
use crate::qfield::{FieldElem, FieldTower, GaloisAut};

/// A finite set of distinct points over one tower, kept sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    tower: FieldTower,
    points: Vec<ProjPoint>,
}

impl Divisor {
    pub fn new(tower: &FieldTower, mut points: Vec<ProjPoint>) -> Result<Self> {
        if points.iter().any(|p| p.tower() != tower) {
            return Err(Error::TowerMismatch);
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotReduced);
        }
        Ok(Divisor { tower: tower.clone(), points })
    }

    /// Builds a divisor from affine coordinates, with `None` standing for ∞.
    pub fn from_affine(tower: &FieldTower, xs: impl IntoIterator<Item = Option<crate::qfield::FieldElem>>) -> Result<Self> {
        let pts = xs
            .into_iter()
            .map(|x| match x {
                Some(x) => ProjPoint::finite(x),
                None => ProjPoint::infinity(tower),
            })
            .collect();
        Divisor::new(tower, pts)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Image under a Möbius map.
    pub fn apply(&self, m: &Mobius) -> Divisor {
        let mut pts: Vec<ProjPoint> = self.points.iter().map(|p| m.apply(p)).collect();
        pts.sort();
        Divisor { tower: self.tower.clone(), points: pts }
    }

    /// True when `m` maps the point set onto itself.
    pub fn is_stabilized_by(&self, m: &Mobius) -> bool {
        self.points.iter().all(|p| self.contains(&m.apply(p)))
    }

    pub fn embed(&self, tower: &FieldTower) -> Result<Divisor> {
        let pts = self.points.iter().map(|p| p.embed(tower)).collect::<Result<Vec<_>>>()?;
        Divisor::new(tower, pts)
    }

    /// The binary form `∏ (y_i x - x_i y)`.
    pub fn form(&self) -> BinaryForm {
        BinaryForm::from_roots(&self.tower, &self.points)
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.points).finish()
    }
}

/// Coordinatewise action of a field automorphism.
pub fn conjugate_divisor(sigma: &GaloisAut, d: &Divisor) -> Divisor {
    let mut pts: Vec<ProjPoint> = d.points.iter().map(|p| p.conjugate(sigma)).collect();
    pts.sort();
    Divisor { tower: d.tower.clone(), points: pts }
}

/// Isomorphism type of a finite subgroup of PGL2 in characteristic 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupClass {
    Trivial,
    Cyclic(u32),
    /// Dihedral of order `2m`; `Dihedral(2)` is the Klein four-group.
    Dihedral(u32),
    A4,
    S4,
    A5,
}

impl GroupClass {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupClass::Trivial | GroupClass::Cyclic(_))
    }

    /// Cyclic of even order.
    pub fn is_cyclic_even(&self) -> bool {
        matches!(self, GroupClass::Cyclic(m) if m % 2 == 0)
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupClass::Trivial => 1,
            GroupClass::Cyclic(m) => m as usize,
            GroupClass::Dihedral(m) => 2 * m as usize,
            GroupClass::A4 => 12,
            GroupClass::S4 => 24,
            GroupClass::A5 => 60,
        }
    }

    /// Parses the labels produced by `Display`.
    pub fn parse(s: &str) -> Option<GroupClass> {
        let num = |pre: &str| s.strip_prefix(pre)?.strip_suffix(')')?.parse::<u32>().ok();
        match s {
            "trivial" => Some(GroupClass::Trivial),
            "A4" => Some(GroupClass::A4),
            "S4" => Some(GroupClass::S4),
            "A5" => Some(GroupClass::A5),
            _ => num("cyclic(").map(GroupClass::Cyclic).or_else(|| num("dihedral(").map(GroupClass::Dihedral)),
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::Trivial => write!(f, "trivial"),
            GroupClass::Cyclic(m) => write!(f, "cyclic({m})"),
            GroupClass::Dihedral(m) => write!(f, "dihedral({m})"),
            GroupClass::A4 => write!(f, "A4"),
            GroupClass::S4 => write!(f, "S4"),
            GroupClass::A5 => write!(f, "A5"),
        }
    }
}

/// Classifies a finite subgroup of PGL2 from the multiset of its element orders.
pub fn classify_orders(orders: &[u32]) -> Result<GroupClass> {
    let n = orders.len() as u32;
    let max = orders.iter().copied().max().unwrap_or(0);
    let count = |k: u32| orders.iter().filter(|&&o| o == k).count() as u32;
    let bad = || Error::UnrecognizedGroup(sorted_orders(orders));
    if n == 0 || count(1) != 1 || orders.iter().any(|&o| o == 0 || n % o != 0) {
        return Err(bad());
    }
    let class = match (n, max) {
        (1, _) => GroupClass::Trivial,
        (_, m) if m == n => GroupClass::Cyclic(n),
        (12, 3) if count(2) == 3 && count(3) == 8 => GroupClass::A4,
        (24, 4) if count(2) == 9 && count(3) == 8 && count(4) == 6 => GroupClass::S4,
        (60, 5) if count(2) == 15 && count(3) == 20 && count(5) == 24 => GroupClass::A5,
        (_, m) if n % 2 == 0 && m == n / 2 => {
            // dihedral: a cyclic half plus n/2 reflections
            let reflections = n / 2;
            let rotations_of_order_two = if m % 2 == 0 { 1 } else { 0 };
            if count(2) != reflections + rotations_of_order_two {
                return Err(bad());
            }
            GroupClass::Dihedral(m)
        }
        _ => return Err(bad()),
    };
    Ok(class)
}

fn sorted_orders(orders: &[u32]) -> Vec<u32> {
    let mut v = orders.to_vec();
    v.sort_unstable();
    v
}

/// The stabilizer of a divisor in PGL2 over its tower.
///
/// The identity is element 0; the rest follow the lexicographic order of
/// their normalized entries.
#[derive(Clone, Debug)]
pub struct AutGroup {
    elements: Vec<Mobius>,
    table: Vec<Vec<usize>>,
    orders: Vec<u32>,
    class: GroupClass,
}

impl AutGroup {
    /// Builds the group from maps already closed under composition.
    pub fn from_elements(tower: &FieldTower, mut elements: Vec<Mobius>) -> Result<Self> {
        let id = Mobius::identity(tower);
        elements.retain(|m| !m.is_identity());
        elements.sort();
        elements.dedup();
        elements.insert(0, id);
        let n = elements.len();
        let index = |m: &Mobius| -> Result<usize> {
            if m.is_identity() {
                return Ok(0);
            }
            elements[1..]
                .binary_search(m)
                .map(|i| i + 1)
                .map_err(|_| Error::InternalInconsistency("automorphism set not closed".into()))
        };
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = index(&elements[i].compose(&elements[j]))?;
            }
        }
        let orders: Vec<u32> = (0..n)
            .map(|i| {
                let mut k = 1;
                let mut acc = i;
                while acc != 0 {
                    acc = table[acc][i];
                    k += 1;
                }
                k
            })
            .collect();
        let class = classify_orders(&orders)?;
        Ok(AutGroup { elements, table, orders, class })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mobius] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mobius {
        &self.elements[i]
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("group has inverses")
    }

    pub fn index_of(&self, m: &Mobius) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Element orders, aligned with `elements`.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn class(&self) -> GroupClass {
        self.class
    }

    pub fn is_cyclic_even(&self) -> bool {
        self.class.is_cyclic_even()
    }

    /// An element of maximal order; a generator when the group is cyclic.
    pub fn generator(&self) -> usize {
        (0..self.order()).max_by_key(|&i| (self.orders[i], std::cmp::Reverse(i))).unwrap_or(0)
    }

    /// Indices commuting with element `g`.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.table[g][h] == self.table[h][g]).collect()
    }

    /// Whether two distinct commuting involutions exist.
    pub fn contains_klein(&self) -> bool {
        let inv: Vec<usize> = (0..self.order()).filter(|&i| self.orders[i] == 2).collect();
        inv.iter().any(|&a| inv.iter().any(|&b| a < b && self.table[a][b] == self.table[b][a]))
    }
}

/// Full stabilizer of `d` in PGL2 over its tower.
///
/// A fixed ordered triple of `d` is sent to every ordered triple of `d`; the
/// resulting maps that permute `d` form the group.
pub fn compute_aut(d: &Divisor) -> Result<AutGroup> {
    let n = d.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let mut found = Vec::new();
    triple_search(d, d, |m| {
        found.push(m);
        false
    });
    AutGroup::from_elements(d.tower(), found)
}

type Mat2 = [FieldElem; 4];

// sends p1, p2, p3 to 0, 1, ∞ up to scale
fn to_standard_raw(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Mat2 {
    let l1 = &(p1.y() * p2.x()) - &(p1.x() * p2.y());
    let l3 = &(p3.y() * p2.x()) - &(p3.x() * p2.y());
    [&l3 * p1.y(), -&(&l3 * p1.x()), &l1 * p3.y(), -&(&l1 * p3.x())]
}

fn mul_raw(x: &Mat2, y: &Mat2) -> Mat2 {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)]
}

fn contains_image(target: &Divisor, m: &Mat2, p: &ProjPoint) -> bool {
    let x = &(&m[0] * p.x()) + &(&m[1] * p.y());
    let y = &(&m[2] * p.x()) + &(&m[3] * p.y());
    target.points().iter().any(|r| &x * r.y() == &y * r.x())
}

// Calls `f` on every Möbius map sending the first triple of `src` to an
// ordered triple of `dst` and `src` onto `dst`; stops when `f` returns true.
// Candidates are tested with unnormalized matrices; only hits are normalized.
fn triple_search(src: &Divisor, dst: &Divisor, mut f: impl FnMut(Mobius) -> bool) {
    let pts = src.points();
    let std_p = to_standard_raw(&pts[0], &pts[1], &pts[2]);
    let mut done = false;
    for_each_triple(dst.points(), |q| {
        if done {
            return;
        }
        let [a, b, c, d] = to_standard_raw(q[0], q[1], q[2]);
        let m = mul_raw(&[d, -&b, -&c, a], &std_p);
        if pts[3..].iter().all(|p| contains_image(dst, &m, p)) {
            let [a, b, c, d] = m;
            done = f(Mobius::new(a, b, c, d).expect("distinct triples give an invertible map"));
        }
    });
}

fn for_each_triple<'a>(pts: &'a [ProjPoint], mut f: impl FnMut([&'a ProjPoint; 3])) {
    let n = pts.len();
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k != i && k != j {
                    f([&pts[i], &pts[j], &pts[k]]);
                }
            }
        }
    }
}

/// Some `M` with `M(d1) = d2`, searching the images of a fixed triple of `d1`.
pub fn pgl2_equivalent(d1: &Divisor, d2: &Divisor) -> Result<Option<Mobius>> {
    if d1.tower() != d2.tower() {
        return Err(Error::TowerMismatch);
    }
    let n = d1.degree();
    if n != d2.degree() {
        return Ok(None);
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let mut witness = None;
    triple_search(d1, d2, |m| {
        witness = Some(m);
        true
    });
    Ok(witness)
}

/// Partition of the points of `d` into orbits of `g`, each orbit sorted and
/// the list ordered by first element.
pub fn orbit_structure(d: &Divisor, g: &AutGroup) -> Result<Vec<Vec<ProjPoint>>> {
    let mut seen = vec![false; d.degree()];
    let mut orbits = Vec::new();
    for (i, p) in d.points().iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<ProjPoint> = g.elements().iter().map(|m| m.apply(p)).collect();
        orbit.sort();
        orbit.dedup();
        for q in &orbit {
            let j = d
                .points()
                .binary_search(q)
                .map_err(|_| Error::InternalInconsistency("group does not stabilize the divisor".into()))?;
            seen[j] = true;
        }
        orbits.push(orbit);
    }
    if g.class().is_cyclic() && g.order() > 1 {
        let bad = orbits.iter().any(|o| o.len() != 1 && o.len() != g.order());
        if bad {
            return Err(Error::InternalInconsistency("cyclic orbit of unexpected size".into()));
        }
    }
    Ok(orbits)
}
