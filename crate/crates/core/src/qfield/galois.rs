use std::collections::BTreeSet;

use num_traits::Zero;

use super::rational::Rational;
use super::tower::{FieldElem, FieldTower};
use crate::arith;
use crate::error::{Error, Result};
use crate::linalg;

/// A field automorphism of a tower, given by the images of the adjoined roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAut {
    images: Vec<FieldElem>,
}

// Evaluates the element with coordinates `coords` (in a tower of `level` steps)
// after sending the i-th adjoined root to `images[i]`.
pub(crate) fn eval_on_images(images: &[FieldElem], target: &FieldTower, level: usize, coords: &[Rational]) -> FieldElem {
    if level == 0 {
        return target.from_rational(coords[0].clone());
    }
    let half = 1 << (level - 1);
    let (lo, hi) = coords.split_at(half);
    let lo_img = eval_on_images(images, target, level - 1, lo);
    if hi.iter().all(Zero::is_zero) {
        return lo_img;
    }
    let hi_img = eval_on_images(images, target, level - 1, hi);
    &lo_img + &(&hi_img * &images[level - 1])
}

impl GaloisAut {
    pub fn images(&self) -> &[FieldElem] {
        &self.images
    }

    pub fn apply(&self, x: &FieldElem) -> FieldElem {
        let t = x.tower();
        eval_on_images(&self.images, t, t.level(), x.coords())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, im)| *im == im.tower().root(i))
    }
}

/// The automorphism group of a Galois tower with its multiplication table.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    tower: FieldTower,
    elements: Vec<GaloisAut>,
    table: Vec<Vec<usize>>,
}

impl GaloisGroup {
    /// Enumerates all automorphisms by extending embeddings one step at a time.
    ///
    /// Fails with `NotGalois` at the first step whose conjugate radicand has
    /// no square root in the tower.
    pub fn compute(tower: &FieldTower) -> Result<Self> {
        let mut partial: Vec<Vec<FieldElem>> = vec![Vec::new()];
        for step in 0..tower.level() {
            let mut next = Vec::with_capacity(partial.len() * 2);
            for imgs in &partial {
                let conj = eval_on_images(imgs, tower, step, tower.radicand_coords(step));
                let root = conj.sqrt().ok_or(Error::NotGalois { step })?;
                let mut plus = imgs.clone();
                plus.push(root.clone());
                let mut minus = imgs.clone();
                minus.push(-&root);
                next.push(plus);
                next.push(minus);
            }
            partial = next;
        }
        let mut elements: Vec<GaloisAut> = partial.into_iter().map(|images| GaloisAut { images }).collect();
        if let Some(pos) = elements.iter().position(GaloisAut::is_identity) {
            let id = elements.remove(pos);
            elements.insert(0, id);
        } else {
            return Err(Error::InternalInconsistency("identity missing from Galois group".into()));
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let images: Vec<FieldElem> = elements[j].images.iter().map(|x| elements[i].apply(x)).collect();
                table[i][j] = elements
                    .iter()
                    .position(|e| e.images == images)
                    .ok_or_else(|| Error::InternalInconsistency("Galois group not closed".into()))?;
            }
        }
        Ok(GaloisGroup { tower: tower.clone(), elements, table })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GaloisAut] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GaloisAut {
        &self.elements[i]
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("group has inverses")
    }

    pub fn apply(&self, i: usize, x: &FieldElem) -> FieldElem {
        self.elements[i].apply(x)
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.table[a][b])))
    }

    fn average(&self, s: &[usize], x: &FieldElem) -> FieldElem {
        let mut acc = self.tower.zero();
        for &g in s {
            acc = &acc + &self.apply(g, x);
        }
        acc.scale(&Rational::new(1.into(), (s.len() as i64).into()))
    }

    /// The fixed field of a subgroup, presented as its own tower with an
    /// embedding into this one.
    pub fn fixed_subtower(&self, subgroup: &[usize]) -> Result<FixedField> {
        if !self.is_subgroup(subgroup) {
            return Err(Error::InternalInconsistency("not a subgroup".into()));
        }
        let chain = self.subgroup_chain(subgroup);
        let big = &self.tower;
        let mut sub = FieldTower::rational();
        let mut roots: Vec<FieldElem> = Vec::new();
        for w in chain.windows(2) {
            let (outer, inner) = (&w[0], &w[1]);
            let tau = *outer.iter().find(|g| !inner.contains(g)).expect("index two");
            let u = (0..big.degree())
                .map(|b| self.average(inner, &big.basis(b)))
                .map(|v| &v - &self.apply(tau, &v))
                .find(|u| !u.is_zero())
                .ok_or_else(|| Error::InternalInconsistency("no generator for fixed field step".into()))?;
            let rad_big = u.square();
            let partial = FixedField { tower: sub.clone(), roots: roots.clone(), big: big.clone(), subgroup: outer.clone() };
            let (u, rad) = match partial.restrict(&rad_big) {
                Some(r) if sub.level() == 0 => {
                    let (s, f) = arith::rational_squarefree(&r.coords()[0])?;
                    (u.scale(&f.recip()), sub.from_rational(Rational::from_integer(s)))
                }
                Some(r) => (u, r),
                None => return Err(Error::InternalInconsistency("radicand outside fixed field".into())),
            };
            let mut rads: Vec<Vec<Rational>> = sub.radicands().to_vec();
            rads.push(rad.coords().to_vec());
            sub = FieldTower::from_radicands(rads)?;
            roots.push(u);
        }
        Ok(FixedField { tower: sub, roots, big: big.clone(), subgroup: subgroup.to_vec() })
    }

    // G = T_0 ⊃ T_1 ⊃ ... ⊃ T_k = S with every index equal to 2.
    fn subgroup_chain(&self, s: &[usize]) -> Vec<Vec<usize>> {
        let mut chain = vec![sorted(s)];
        loop {
            let cur = chain.last().unwrap().clone();
            if cur.len() == self.order() {
                break;
            }
            let g = (0..self.order())
                .filter(|g| !cur.contains(g))
                .find(|&g| {
                    let gi = self.inverse(g);
                    cur.iter().all(|&h| cur.contains(&self.mul(self.mul(g, h), gi))) && cur.contains(&self.mul(g, g))
                })
                .expect("proper subgroups of 2-groups have a normalizing element");
            let mut next: Vec<usize> = cur.clone();
            next.extend(cur.iter().map(|&h| self.mul(g, h)));
            chain.push(sorted(&next));
        }
        chain.reverse();
        chain
    }
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    set.into_iter().collect()
}

/// Fixed field of a subgroup: its own tower plus the images of its roots.
#[derive(Clone, Debug)]
pub struct FixedField {
    tower: FieldTower,
    roots: Vec<FieldElem>,
    big: FieldTower,
    subgroup: Vec<usize>,
}

impl FixedField {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn is_rational(&self) -> bool {
        self.tower.level() == 0
    }

    pub fn degree(&self) -> usize {
        self.tower.degree()
    }

    /// Images of the fixed field's adjoined roots in the big tower.
    pub fn root_images(&self) -> &[FieldElem] {
        &self.roots
    }

    pub fn embed(&self, x: &FieldElem) -> FieldElem {
        eval_on_images(&self.roots, &self.big, self.tower.level(), x.coords())
    }

    /// Writes an element of the big tower in the fixed field's basis, if it lies there.
    pub fn restrict(&self, x: &FieldElem) -> Option<FieldElem> {
        if self.tower.level() == 0 {
            return x.as_rational().map(|q| self.tower.from_rational(q.clone()));
        }
        let columns: Vec<Vec<Rational>> =
            (0..self.tower.degree()).map(|b| self.embed(&self.tower.basis(b)).coords().to_vec()).collect();
        let sol = linalg::solve_columns(&columns, x.coords())?;
        self.tower.elem(sol).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q23() -> FieldTower {
        let t = FieldTower::rational();
        let t = t.extend(&t.int(2)).unwrap().tower;
        t.extend(&t.int(3)).unwrap().tower
    }

    #[test]
    fn biquadratic_group_is_klein() {
        let g = GaloisGroup::compute(&q23()).unwrap();
        assert_eq!(g.order(), 4);
        for i in 0..4 {
            assert_eq!(g.mul(i, i), 0);
            for j in 0..4 {
                assert_eq!(g.mul(i, j), g.mul(j, i));
            }
        }
        let mut patterns: Vec<Vec<bool>> = g
            .elements()
            .iter()
            .map(|e| e.images().iter().enumerate().map(|(i, im)| *im == -&im.tower().root(i)).collect())
            .collect();
        patterns.sort();
        assert_eq!(patterns, vec![vec![false, false], vec![false, true], vec![true, false], vec![true, true]]);
    }

    #[test]
    fn trivial_group_over_q() {
        let g = GaloisGroup::compute(&FieldTower::rational()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn nested_nonreal_conjugate_is_not_galois() {
        let t = FieldTower::rational();
        let t = t.extend(&t.int(2)).unwrap().tower;
        let t = t.extend(&(&t.one() + &t.root(0))).unwrap().tower;
        assert!(matches!(GaloisGroup::compute(&t), Err(Error::NotGalois { step: 1 })));
    }

    #[test]
    fn cyclic_quartic_tower() {
        // Q(√(2+√2)) is Galois with cyclic group of order 4
        let t = FieldTower::rational();
        let t = t.extend(&t.int(2)).unwrap().tower;
        let t = t.extend(&(&t.int(2) + &t.root(0))).unwrap().tower;
        let g = GaloisGroup::compute(&t).unwrap();
        assert_eq!(g.order(), 4);
        assert!((1..4).any(|i| g.mul(i, i) != 0));
        let ff = g.fixed_subtower(&[0, (1..4).find(|&i| g.mul(i, i) == 0).unwrap()]).unwrap();
        assert_eq!(ff.degree(), 2);
        assert_eq!(ff.tower().radicand_coords(0), &[Rational::from_integer(BigInt::from(2))]);
    }

    #[test]
    fn apply_aut_examples() {
        let t = q23();
        let g = GaloisGroup::compute(&t).unwrap();
        let s2 = t.root(0);
        let s3 = t.root(1);
        let flip2 = (0..4)
            .find(|&i| g.apply(i, &s2) == -&s2 && g.apply(i, &s3) == s3)
            .unwrap();
        let x = &t.int(3) + &s2;
        assert_eq!(g.apply(flip2, &x), &t.int(3) - &s2);
        let s6 = &s2 * &s3;
        assert_eq!(g.apply(flip2, &s6), -&s6);
        assert_eq!(g.apply(0, &x), x);
    }

    #[test]
    fn fixed_fields_of_biquadratic() {
        let t = q23();
        let g = GaloisGroup::compute(&t).unwrap();
        let full: Vec<usize> = (0..4).collect();
        assert!(g.fixed_subtower(&full).unwrap().is_rational());
        let whole = g.fixed_subtower(&[0]).unwrap();
        assert_eq!(whole.degree(), 4);
        let s2 = t.root(0);
        let s3 = t.root(1);
        let flip2 = (0..4).find(|&i| g.apply(i, &s2) == -&s2 && g.apply(i, &s3) == s3).unwrap();
        let ff = g.fixed_subtower(&[0, flip2]).unwrap();
        assert_eq!(ff.degree(), 2);
        assert_eq!(ff.tower().radicand_coords(0), &[Rational::from_integer(BigInt::from(3))]);
        assert_eq!(ff.embed(&ff.tower().root(0)).square(), t.int(3));
        assert!(ff.restrict(&s2).is_none());
        assert!(ff.restrict(&(&s3 + &t.int(1))).is_some());
    }
}
