//! The decision engine: is the field of moduli a field of definition, and
//! does the divisor descend to the projective line over it?

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::DEFAULT_FACTOR_BITS;
use crate::binform::BinaryForm;
use crate::conic::{
    find_point_bounded, hasse_solvable_bounded, hilbert_symbol, parametrize, HasseReport, PlaceEval, TernaryForm,
};
use crate::divisor::{compute_aut, conjugate_divisor, AutGroup, Divisor, GroupClass};
use crate::error::{Error, Result};
use crate::moduli::{
    cocycle_class_to_quaternion, compressed_divisor, compression, descend_veronese, descent_cocycle, field_of_moduli, mat_vec,
    Compression, ModuliData, Symbol,
};
use crate::projline::{Mobius, ProjPoint};
use crate::qfield::{FieldElem, FieldTower, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Descends to a divisor on the projective line over the field of moduli.
    DefinedOnP1,
    /// Defined over the field of moduli on a pointless conic.
    DefinedOnConic,
    /// The field of moduli is not a field of definition.
    NotDefined,
    /// The answer needs local analysis over a field other than Q.
    UnsupportedBase,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::DefinedOnP1 => "DefinedOnP1",
            Outcome::DefinedOnConic => "DefinedOnConic",
            Outcome::NotDefined => "NotDefined",
            Outcome::UnsupportedBase => "UnsupportedBase",
        }
    }

    pub fn parse(s: &str) -> Option<Outcome> {
        [Outcome::DefinedOnP1, Outcome::DefinedOnConic, Outcome::NotDefined, Outcome::UnsupportedBase]
            .into_iter()
            .find(|o| o.as_str() == s)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rules that settle the question without local analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FastRule {
    OddDegree,
    Four,
    Six,
    Noncyclic,
    CyclicOdd,
}

impl FastRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            FastRule::OddDegree => "n_odd",
            FastRule::Four => "n4",
            FastRule::Six => "n6",
            FastRule::Noncyclic => "noncyclic",
            FastRule::CyclicOdd => "cyclic_odd",
        }
    }

    pub fn parse(s: &str) -> Option<FastRule> {
        [FastRule::OddDegree, FastRule::Four, FastRule::Six, FastRule::Noncyclic, FastRule::CyclicOdd]
            .into_iter()
            .find(|r| r.as_str() == s)
    }
}

/// A binary form over the field of moduli and a change of coordinates `B`
/// such that the roots of the form are `B^{-1}(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Model {
    pub form: BinaryForm,
    pub b: Mobius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    P1Model(P1Model),
    /// A rational point on the compression when no explicit model was built.
    PointWitness { conic: TernaryForm, point: [BigInt; 3] },
    ConicModel { conic: TernaryForm, degrees: Vec<usize>, failing: Vec<PlaceEval> },
    Obstruction { conic: TernaryForm, failing: Vec<PlaceEval>, symbols: Option<Vec<Symbol>> },
    FastPath(FastRule),
    /// No certificate; the verdict is a refusal.
    Refusal { reason: String },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub fom: FieldTower,
    pub aut_order: usize,
    pub aut_class: GroupClass,
    pub certificate: Certificate,
    /// Known even when the outcome is a refusal.
    pub defined_over_fom: Option<bool>,
    /// Indices of `H` in the Galois group.
    pub h: Vec<usize>,
    pub compression: Option<TernaryForm>,
    pub compression_solvable: Option<bool>,
    pub compressed_degrees: Option<Vec<usize>>,
}

impl Verdict {
    /// The three conditions of the characterization, read off this run:
    /// not defined; pointless compression with Aut of even order; pointless
    /// compression with Aut cyclic of even order. `None` when undecided.
    pub fn theorem3_conditions(&self) -> Option<[bool; 3]> {
        if self.outcome == Outcome::UnsupportedBase {
            return None;
        }
        let pointless = self.compression_solvable == Some(false);
        Some([
            self.outcome == Outcome::NotDefined,
            pointless && self.aut_order % 2 == 0,
            pointless && self.aut_class.is_cyclic_even(),
        ])
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub factor_bits: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { factor_bits: DEFAULT_FACTOR_BITS }
    }
}

/// Everything computed on the way to a verdict.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub aut: AutGroup,
    pub data: ModuliData,
    pub compression: Option<Compression>,
    pub hasse: Option<HasseReport>,
    pub verdict: Verdict,
}

pub fn decide(d: &Divisor) -> Result<Verdict> {
    Ok(analyze(d, &DecideOptions::default())?.verdict)
}

pub fn analyze(d: &Divisor, opts: &DecideOptions) -> Result<Analysis> {
    let n = d.degree();
    let aut = compute_aut(d)?;
    let data = field_of_moduli(d)?;
    let class = aut.class();
    let m = aut.order();
    let fom_q = data.fom_is_q();

    let mut comp = None;
    let mut hasse = None;
    let mut degrees = None;
    if class.is_cyclic() && fom_q {
        let c = compression(d, &data, &aut)?;
        let form = c.form.clone().expect("conic over Q");
        let rep = hasse_solvable_bounded(&form, opts.factor_bits)?;
        degrees = Some(compressed_divisor(d, &data, &c)?.degrees());
        comp = Some(c);
        hasse = Some(rep);
    }
    let solvable = hasse.as_ref().map(|h| h.solvable);
    let conic = comp.as_ref().and_then(|c| c.form.clone());

    let fast = |rule| (Outcome::DefinedOnP1, Certificate::FastPath(rule), Some(true));
    let (outcome, certificate, defined) = if !class.is_cyclic() {
        fast(FastRule::Noncyclic)
    } else if n % 2 == 1 {
        fast(FastRule::OddDegree)
    } else if n == 4 {
        fast(FastRule::Four)
    } else if !fom_q {
        if n == 6 && m % 2 == 0 {
            fast(FastRule::Six)
        } else if n == 6 {
            (Outcome::UnsupportedBase, Certificate::FastPath(FastRule::Six), Some(true))
        } else if m % 2 == 1 {
            (Outcome::UnsupportedBase, Certificate::FastPath(FastRule::CyclicOdd), Some(true))
        } else {
            let reason = "local analysis over a field of moduli other than Q".to_string();
            (Outcome::UnsupportedBase, Certificate::Refusal { reason }, None)
        }
    } else {
        let conic = conic.clone().expect("computed");
        let rep = hasse.as_ref().expect("computed");
        if rep.solvable {
            let cert = match build_p1_model(d, &data, &aut) {
                Ok(model) => Certificate::P1Model(model),
                Err(Error::ModelConstructionFailed(_)) if data.h().len() > 2 => {
                    let point = find_point_bounded(&conic, opts.factor_bits)?
                        .ok_or_else(|| Error::InternalInconsistency("no point on a solvable conic".into()))?;
                    Certificate::PointWitness { conic, point }
                }
                Err(e) => return Err(e),
            };
            (Outcome::DefinedOnP1, cert, Some(true))
        } else if m % 2 == 0 {
            let symbols = if m == 2 {
                let c = descent_cocycle(&data, &aut)?;
                cocycle_class_to_quaternion(&c, &data, &aut).ok()
            } else {
                None
            };
            let cert = Certificate::Obstruction { conic, failing: rep.failing.clone(), symbols };
            (Outcome::NotDefined, cert, Some(false))
        } else {
            let cert = Certificate::ConicModel {
                conic,
                degrees: degrees.clone().expect("computed"),
                failing: rep.failing.clone(),
            };
            (Outcome::DefinedOnConic, cert, Some(true))
        }
    };

    if outcome == Outcome::NotDefined && !class.is_cyclic_even() {
        return Err(Error::InternalInconsistency("not defined without a cyclic group of even order".into()));
    }
    if n == 6 && outcome == Outcome::NotDefined {
        return Err(Error::InternalInconsistency("degree six divisor not defined over its field of moduli".into()));
    }
    if outcome == Outcome::DefinedOnP1 && solvable == Some(false) {
        return Err(Error::InternalInconsistency("defined on the line with a pointless compression".into()));
    }
    if solvable == Some(false) && degrees.as_ref().map_or(false, |ds| ds.iter().any(|k| k % 2 == 1)) {
        return Err(Error::InternalInconsistency("pointless compression with an odd-degree point".into()));
    }

    let verdict = Verdict {
        outcome,
        fom: data.fom().tower().clone(),
        aut_order: m,
        aut_class: class,
        certificate,
        defined_over_fom: defined,
        h: data.h().to_vec(),
        compression: conic,
        compression_solvable: solvable,
        compressed_degrees: degrees,
    };
    if let Some([a, b, c]) = verdict.theorem3_conditions() {
        if a != b || b != c {
            return Err(Error::InternalInconsistency("characterization conditions disagree".into()));
        }
    }
    Ok(Analysis { aut, data, compression: comp, hasse, verdict })
}

type Mat2 = [FieldElem; 4];

fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)]
}

fn mat2_add(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| &x[i] + &y[i])
}

fn conj2(x: &Mat2, sigma: &crate::qfield::GaloisAut) -> Mat2 {
    x.clone().map(|e| sigma.apply(&e))
}

fn as_scalar(x: &Mat2) -> Option<FieldElem> {
    (x[1].is_zero() && x[2].is_zero() && x[0] == x[3]).then(|| x[0].clone())
}

// Deterministic candidates for the averaging B = Σ Φ_σ σ(A).
fn seeds(t: &FieldTower) -> Vec<Mat2> {
    let mut out = Vec::new();
    let gens: Vec<FieldElem> = std::iter::once(t.one()).chain((0..t.degree()).skip(1).map(|b| t.basis(b))).collect();
    let (z, o) = (t.zero(), t.one());
    out.push([o.clone(), z.clone(), z.clone(), o.clone()]);
    for g in &gens {
        out.push([o.clone(), g.clone(), z.clone(), o.clone()]);
        out.push([o.clone(), z.clone(), g.clone(), o.clone()]);
        out.push([g.clone(), o.clone(), o.clone(), z.clone()]);
        out.push([g.clone(), t.int(2), t.int(3), &o + g]);
    }
    out
}

const MAX_ASSIGNMENTS: usize = 20_000;

/// An explicit model over the field of moduli, by Hilbert 90 for `GL2`.
///
/// The cochain is corrected by automorphisms of `D` and rescaled until it
/// is an honest matrix cocycle `Φ`; then `B = Σ_σ Φ_σ σ(A)` for a suitable
/// `A` makes `B^{-1}(D)` stable under `H`. The rescaling solves a norm
/// equation, which is implemented for a quadratic descent to Q; other cases
/// are attempted without rescaling.
pub fn build_p1_model(d: &Divisor, data: &ModuliData, aut: &AutGroup) -> Result<P1Model> {
    let t = d.tower();
    let gal = data.galois();
    let h = data.h();
    let fail = |s: &str| Error::ModelConstructionFailed(s.to_string());
    let entries = |m: &Mobius| -> Mat2 { m.entries().clone() };

    let mut cocycles: Vec<Vec<Mat2>> = Vec::new();
    if h.len() == 1 {
        cocycles.push(vec![entries(&Mobius::identity(t))]);
    } else if h.len() == 2 {
        let sigma = gal.element(h[1]);
        for g in aut.elements() {
            let phi = entries(&g.compose(&data.cochain()[1]));
            let Some(lambda) = as_scalar(&mat2_mul(&phi, &conj2(&phi, sigma))) else { continue };
            let Some(mu) = norm_preimage(t, data, &lambda)? else { continue };
            let phi = phi.map(|e| &e * &mu);
            cocycles.push(vec![entries(&Mobius::identity(t)), phi]);
        }
    } else {
        let k = aut.order();
        let total = k.checked_pow((h.len() - 1) as u32).unwrap_or(usize::MAX);
        if total > MAX_ASSIGNMENTS {
            return Err(fail("too many cochain corrections to search"));
        }
        for code in 0..total {
            let mut c = code;
            let mut phis = vec![entries(&Mobius::identity(t))];
            for i in 1..h.len() {
                phis.push(entries(&aut.element(c % k).compose(&data.cochain()[i])));
                c /= k;
            }
            let ok = (0..h.len()).all(|a| {
                (0..h.len()).all(|b| {
                    let st = h.iter().position(|&s| s == gal.mul(h[a], h[b])).expect("subgroup");
                    mat2_mul(&phis[a], &conj2(&phis[b], gal.element(h[a]))) == phis[st]
                })
            });
            if ok {
                cocycles.push(phis);
                break;
            }
        }
    }
    if cocycles.is_empty() {
        return if data.fom_is_q() {
            veronese_model(d, data, aut)
        } else {
            Err(fail("no correction of the cochain is a matrix cocycle"))
        };
    }

    for phis in &cocycles {
        for a in seeds(t) {
            let mut b = entries(&Mobius::identity(t)).map(|e| &e - &e);
            for (i, &s) in h.iter().enumerate() {
                b = mat2_add(&b, &mat2_mul(&phis[i], &conj2(&a, gal.element(s))));
            }
            let Ok(bm) = Mobius::new(b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()) else { continue };
            let e = d.apply(&bm.inverse());
            if h.iter().any(|&s| conjugate_divisor(gal.element(s), &e) != e) {
                continue;
            }
            let form = descend_form(&e.form(), data)?;
            return Ok(P1Model { form, b: bm });
        }
    }
    if data.fom_is_q() {
        return veronese_model(d, data, aut);
    }
    Err(fail("averaging produced no invertible change of coordinates"))
}

// Over Q: a rational point on the descended Veronese conic of a corrected
// cochain, parametrized, gives B directly.
fn veronese_model(d: &Divisor, data: &ModuliData, aut: &AutGroup) -> Result<P1Model> {
    let t = d.tower();
    let gal = data.galois();
    let h = data.h();
    let k = aut.order();
    let total = k.checked_pow(h.len().saturating_sub(1) as u32).unwrap_or(usize::MAX);
    if total > MAX_ASSIGNMENTS {
        return Err(Error::ModelConstructionFailed("too many cochain corrections to search".into()));
    }
    let q = |n: i64| Rational::from_integer(n.into());
    for code in 0..total {
        let mut c = code;
        let mut phis = vec![Mobius::identity(t)];
        for i in 1..h.len() {
            phis.push(aut.element(c % k).compose(&data.cochain()[i]));
            c /= k;
        }
        let cocycle = (0..h.len()).all(|a| {
            (0..h.len()).all(|b| {
                let st = h.iter().position(|&s| s == gal.mul(h[a], h[b])).expect("subgroup");
                phis[a].compose(&phis[b].conjugate(gal.element(h[a]))) == phis[st]
            })
        });
        if !cocycle {
            continue;
        }
        let (basis, gram) = descend_veronese(t, data, &phis)?;
        let g = gram.map(|r| r.map(|e| e.as_rational().expect("rational").clone()));
        let conic = TernaryForm::new(g)?;
        let Some(p) = find_point_bounded(&conic, DEFAULT_FACTOR_BITS)? else { continue };
        let par = parametrize(&conic, &p.map(Rational::from_integer))?;
        let image = |s: i64, u: i64| -> Result<ProjPoint> {
            let x = par.eval(&q(s), &q(u)).map(|c| t.from_rational(c));
            let y = mat_vec(&basis, &x);
            if y[0].is_zero() {
                ProjPoint::new(y[1].clone(), y[2].clone())
            } else {
                ProjPoint::new(y[0].clone(), y[1].clone())
            }
        };
        let src = [ProjPoint::int(t, 0), ProjPoint::infinity(t), ProjPoint::int(t, 1)];
        let dst = [image(0, 1)?, image(1, 0)?, image(1, 1)?];
        let bm = Mobius::from_triples([&src[0], &src[1], &src[2]], [&dst[0], &dst[1], &dst[2]])?;
        let e = d.apply(&bm.inverse());
        if h.iter().any(|&s| conjugate_divisor(gal.element(s), &e) != e) {
            return Err(Error::InternalInconsistency("Veronese model is not Galois stable".into()));
        }
        let form = descend_form(&e.form(), data)?;
        return Ok(P1Model { form, b: bm });
    }
    Err(Error::ModelConstructionFailed("no corrected cochain has a split conic".into()))
}

// μ with μ σ(μ) = 1/λ in a quadratic extension of Q
fn norm_preimage(t: &FieldTower, data: &ModuliData, lambda: &FieldElem) -> Result<Option<FieldElem>> {
    if !data.fom_is_q() || t.level() != 1 {
        return Ok(lambda.is_one().then(|| t.one()));
    }
    let lam = lambda.as_rational().ok_or_else(|| Error::InternalInconsistency("cocycle scalar outside Q".into()))?;
    let delta = t.radicand(0).as_rational().expect("level one").clone();
    let z = Rational::zero();
    let f = TernaryForm::from_upper([Rational::one(), z.clone(), z.clone(), -delta, z, -lam.recip()]);
    let Some(p) = find_point_bounded(&f, DEFAULT_FACTOR_BITS)? else { return Ok(None) };
    let [x, y, w] = p.map(Rational::from_integer);
    if w.is_zero() {
        return Ok(None);
    }
    let mu = (&t.from_rational(x) + &t.root(0).scale(&y)).scale(&w.recip());
    Ok(Some(mu))
}

/// Restricts an `H`-stable form to the field of moduli, normalized so that
/// over Q the coefficients are coprime integers with positive leading term.
fn descend_form(f: &BinaryForm, data: &ModuliData) -> Result<BinaryForm> {
    let f = f.normalized();
    let fom = data.fom();
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| fom.restrict(c))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::ModelConstructionFailed("form is not defined over the field of moduli".into()))?;
    let mut out = BinaryForm::new(coeffs);
    if data.fom_is_q() {
        let rats: Vec<Rational> = out.coeffs().iter().map(|c| c.as_rational().expect("Q").clone()).collect();
        let den = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = rats.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if nums.iter().find(|n| !n.is_zero()).map_or(false, |n| n.is_negative()) {
            g = -g;
        }
        let q = fom.tower();
        out = BinaryForm::new(nums.iter().map(|n| q.from_rational(Rational::new(n.clone(), g.clone()))).collect());
    }
    Ok(out)
}

/// Independently re-checks a verdict's certificate against `D`.
pub fn verify_certificate(d: &Divisor, v: &Verdict) -> std::result::Result<(), String> {
    let n = d.degree();
    let aut = compute_aut(d).map_err(|e| e.to_string())?;
    if aut.class() != v.aut_class || aut.order() != v.aut_order {
        return Err(format!("automorphism group is {} of order {}", aut.class(), aut.order()));
    }
    let data = field_of_moduli(d).map_err(|e| e.to_string())?;
    if data.fom().tower() != &v.fom {
        return Err("field of moduli differs".into());
    }
    match &v.certificate {
        Certificate::FastPath(rule) => {
            let ok = match rule {
                FastRule::OddDegree => n % 2 == 1,
                FastRule::Four => n == 4,
                FastRule::Six => n == 6,
                FastRule::Noncyclic => !aut.class().is_cyclic(),
                FastRule::CyclicOdd => aut.class().is_cyclic() && aut.order() % 2 == 1,
            };
            if !ok {
                return Err(format!("rule {} does not apply", rule.as_str()));
            }
            if v.outcome == Outcome::NotDefined {
                return Err("fast path never yields NotDefined".into());
            }
        }
        Certificate::P1Model(model) => {
            if v.outcome != Outcome::DefinedOnP1 {
                return Err("model attached to a different outcome".into());
            }
            if model.form.tower() != data.fom().tower() || model.form.degree() != n {
                return Err("form has the wrong field or degree".into());
            }
            let big = BinaryForm::new(model.form.coeffs().iter().map(|c| data.fom().embed(c)).collect());
            let e = d.apply(&model.b.inverse());
            if big.is_zero() || e.points().iter().any(|p| !big.eval(p).is_zero()) {
                return Err("roots of the form differ from B^-1(D)".into());
            }
        }
        Certificate::PointWitness { conic, point } => {
            if point.iter().all(Zero::is_zero) || !conic.eval_int(point).is_zero() {
                return Err("witness is not a point of the conic".into());
            }
        }
        Certificate::Obstruction { conic, failing, symbols } => {
            if v.outcome != Outcome::NotDefined || !aut.class().is_cyclic_even() {
                return Err("obstruction without a cyclic group of even order".into());
            }
            if failing.is_empty() {
                return Err("no failing place".into());
            }
            recheck_places(conic, failing)?;
            if let Some(symbols) = symbols {
                for pe in failing {
                    let prod: i8 = symbols
                        .iter()
                        .map(|(a, b)| {
                            hilbert_symbol(&Rational::from_integer(a.clone()), &Rational::from_integer(b.clone()), &pe.place)
                        })
                        .product();
                    if prod != -1 {
                        return Err(format!("symbol product is trivial at {}", pe.place));
                    }
                }
            }
        }
        Certificate::ConicModel { conic, degrees, failing } => {
            if degrees.iter().any(|k| k % 2 == 1) {
                return Err("compressed divisor has a point of odd degree".into());
            }
            if failing.is_empty() {
                return Err("no failing place".into());
            }
            recheck_places(conic, failing)?;
        }
        Certificate::Refusal { .. } => {
            if v.outcome != Outcome::UnsupportedBase || data.fom_is_q() {
                return Err("refusal over Q".into());
            }
        }
    }
    Ok(())
}

fn recheck_places(conic: &TernaryForm, failing: &[PlaceEval]) -> std::result::Result<(), String> {
    let diag = crate::conic::diagonalize(conic).map_err(|e| e.to_string())?;
    let [a, b, c] = &diag.coeffs;
    let s1 = Rational::from_integer(-(a * c));
    let s2 = Rational::from_integer(-(b * c));
    for pe in failing {
        let s = hilbert_symbol(&s1, &s2, &pe.place);
        if s != -1 || pe.symbol != -1 {
            return Err(format!("conic is locally solvable at {}", pe.place));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::ProjPoint;

    fn q() -> FieldTower {
        FieldTower::rational()
    }

    fn ints(t: &FieldTower, xs: &[Option<i64>]) -> Divisor {
        Divisor::from_affine(t, xs.iter().map(|x| x.map(|v| t.int(v)))).unwrap()
    }

    #[test]
    fn degree_four_fast_path() {
        let t = q();
        let d = ints(&t, &[Some(0), Some(1), Some(3), Some(-7)]);
        let v = decide(&d).unwrap();
        assert_eq!(v.outcome, Outcome::DefinedOnP1);
        assert!(verify_certificate(&d, &v).is_ok());
    }

    #[test]
    fn three_points() {
        let t = q();
        let d = ints(&t, &[Some(0), Some(1), None]);
        let v = decide(&d).unwrap();
        assert_eq!(v.outcome, Outcome::DefinedOnP1);
        assert_eq!(v.aut_order, 6);
    }

    #[test]
    fn degree_six_twisted() {
        let t = q().extend(&q().int(2)).unwrap().tower;
        let s = t.root(0);
        let d0 = Divisor::from_affine(&t, [0, 1, -1, 5, -5].map(|k| Some(t.int(k))).into_iter().chain([None])).unwrap();
        let m = Mobius::new(t.one(), s.clone(), &t.int(3) - &s, t.int(2)).unwrap();
        let d = d0.apply(&m);
        let v = decide(&d).unwrap();
        assert_ne!(v.outcome, Outcome::NotDefined);
        assert!(verify_certificate(&d, &v).is_ok());
    }

    #[test]
    fn model_for_twisted_even_divisor() {
        // Galois-stable degree-6 divisor with trivial automorphisms, twisted over Q(√3)
        let t = q().extend(&q().int(3)).unwrap().tower;
        let s = t.root(0);
        let d0 = Divisor::from_affine(
            &t,
            [Some(s.clone()), Some(-&s), Some(t.int(0)), Some(t.int(1)), Some(t.int(4)), Some(t.int(-9))],
        )
        .unwrap();
        let m = Mobius::new(&t.int(2) + &s, t.one(), t.int(1), s.clone()).unwrap();
        let d = d0.apply(&m);
        let an = analyze(&d, &DecideOptions::default()).unwrap();
        assert_eq!(an.verdict.outcome, Outcome::DefinedOnP1);
        let Certificate::P1Model(model) = &an.verdict.certificate else { panic!("expected a model") };
        let e = d.apply(&model.b.inverse());
        for p in e.points() {
            let big = BinaryForm::new(model.form.coeffs().iter().map(|c| an.data.fom().embed(c)).collect());
            assert!(big.eval(p).is_zero());
        }
        assert!(verify_certificate(&d, &an.verdict).is_ok());
    }

    #[test]
    fn tampered_fast_path_rejected() {
        let t = q();
        let d = ints(&t, &[Some(0), Some(1), Some(3), Some(-7), Some(11), Some(20)]);
        let mut v = decide(&d).unwrap();
        v.certificate = Certificate::FastPath(FastRule::OddDegree);
        assert!(verify_certificate(&d, &v).is_err());
        let _ = ProjPoint::infinity(&t);
    }
}
