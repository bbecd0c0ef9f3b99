//! Binary forms `Σ c_i x^{d-i} y^i` over a tower.

use std::fmt;

use crate::error::{Error, Result};
use crate::projline::ProjPoint;
use crate::qfield::{FieldElem, FieldTower, GaloisAut};

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<FieldElem>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<FieldElem>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn constant(c: FieldElem) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `y_p x - x_p y`, vanishing exactly at `p`.
    pub fn linear(p: &ProjPoint) -> Self {
        BinaryForm { coeffs: vec![p.y().clone(), -p.x()] }
    }

    /// Product of the linear forms of the given points.
    pub fn from_roots<'a>(tower: &FieldTower, points: impl IntoIterator<Item = &'a ProjPoint>) -> Self {
        points
            .into_iter()
            .fold(BinaryForm::constant(tower.one()), |acc, p| acc.mul(&BinaryForm::linear(p)))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn tower(&self) -> &FieldTower {
        self.coeffs[0].tower()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let t = self.tower();
        let mut out = vec![t.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElem {
        // Horner in both variables: Σ c_i x^{d-i} y^i
        let mut acc = self.tower().zero();
        let mut ypow = self.tower().one();
        let d = self.degree();
        let mut xpows = vec![self.tower().one(); d + 1];
        for k in 1..=d {
            xpows[k] = &xpows[k - 1] * p.x();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &xpows[d - i]) * &ypow);
            }
            ypow = &ypow * p.y();
        }
        acc
    }

    /// Scales so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero");
                BinaryForm { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn conjugate(&self, sigma: &GaloisAut) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| sigma.apply(c)).collect() }
    }

    pub fn dx(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(self.tower().zero());
        }
        let t = self.tower();
        BinaryForm { coeffs: (0..d).map(|i| &self.coeffs[i] * &t.int((d - i) as i64)).collect() }
    }

    pub fn dy(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(self.tower().zero());
        }
        let t = self.tower();
        BinaryForm { coeffs: (1..=d).map(|i| &self.coeffs[i] * &t.int(i as i64)).collect() }
    }

    pub fn sub(&self, o: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != o.degree() {
            return Err(Error::InternalInconsistency("degree mismatch".into()));
        }
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        let g = &divisor.coeffs;
        let lead = g.iter().position(|c| !c.is_zero())?;
        let trail = g.len() - 1 - g.iter().rposition(|c| !c.is_zero())?;
        let f = &self.coeffs;
        if f.len() < g.len() {
            return if self.is_zero() { Some(BinaryForm::constant(self.tower().zero())) } else { None };
        }
        // strip y^lead and x^trail
        if f[..lead].iter().any(|c| !c.is_zero()) || f[f.len() - trail..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let core_f = &f[lead..f.len() - trail];
        let core_g = &g[lead..g.len() - trail];
        let n = core_f.len() - 1;
        let k = core_g.len() - 1;
        let inv = core_g[0].inv().ok()?;
        let mut rem: Vec<FieldElem> = core_f.to_vec();
        let mut q = Vec::with_capacity(n - k + 1);
        for i in 0..=n - k {
            let qi = &rem[i] * &inv;
            for (j, gj) in core_g.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&qi * gj);
            }
            q.push(qi);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BinaryForm { coeffs: q })
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
