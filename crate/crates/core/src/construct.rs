//! Constructions: divisors whose field of moduli is not a field of definition,
//! the degree-six normal form, the hyperelliptic front-end and random
//! test instances.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binform::BinaryForm;
use crate::conic::{hasse_solvable, primitive_point, TernaryForm, Vec3};
use crate::decide::{analyze, DecideOptions, Outcome, Verdict};
use crate::divisor::{compute_aut, AutGroup, Divisor, GroupClass};
use crate::error::{Error, Result};
use crate::moduli::field_of_moduli;
use crate::projline::{Mobius, ProjPoint};
use crate::qfield::{FieldElem, FieldTower, GaloisAut, GaloisGroup, Rational};

pub const DEFAULT_MAX_RETRIES: usize = 64;

/// A plane point with coordinates in some tower.
pub type PlanePoint = [FieldElem; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub a: i64,
    pub b: i64,
    pub n: usize,
    pub seed: u64,
}

/// The two points where a rational line meets a conic.
#[derive(Clone, Debug)]
pub struct LineSection {
    /// `Q`, or the quadratic field the points live in.
    pub tower: FieldTower,
    pub points: [PlanePoint; 2],
}

fn dot(l: &Vec3, p: &PlanePoint) -> FieldElem {
    let t = p[0].tower();
    (0..3).fold(t.zero(), |acc, i| &acc + &p[i].scale(&l[i]))
}

fn kernel_basis(l: &Vec3) -> [Vec3; 2] {
    let z = Rational::zero;
    let i = l.iter().position(|c| !c.is_zero()).expect("nonzero line");
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let mut v1 = [z(), z(), z()];
    let mut v2 = [z(), z(), z()];
    v1[j] = Rational::one();
    v1[i] = -&l[j] / &l[i];
    v2[k] = Rational::one();
    v2[i] = -&l[k] / &l[i];
    [v1, v2]
}

/// Intersects `C` with the line `l·X = 0`.
pub fn line_section_divisor(c: &TernaryForm, l: &Vec3) -> Result<LineSection> {
    if l.iter().all(Zero::is_zero) {
        return Err(Error::HypothesesNotMet("zero line".into()));
    }
    let [v1, v2] = kernel_basis(l);
    let qa = c.eval(&v1);
    let qb = c.bilinear(&v1, &v2);
    let qc = c.eval(&v2);
    let disc = &qb * &qb - &qa * &qc;
    if disc.is_zero() {
        return Err(Error::TangentLine);
    }
    let ext = FieldTower::rational().extend(&FieldTower::rational().from_rational(disc))?;
    let t = ext.tower;
    let r = ext.root;
    // roots of qa s^2 + 2 qb s t + qc t^2
    let (s_t, swap) = if !qa.is_zero() { (&qa, false) } else { (&qc, true) };
    let roots: Vec<(FieldElem, FieldElem)> = if qa.is_zero() && qc.is_zero() {
        vec![(t.one(), t.zero()), (t.zero(), t.one())]
    } else {
        [r.clone(), -&r]
            .into_iter()
            .map(|sq| {
                let x = (&sq - &t.from_rational(qb.clone())).scale(&s_t.recip());
                if swap {
                    (t.one(), x)
                } else {
                    (x, t.one())
                }
            })
            .collect()
    };
    let pt = |(s, u): &(FieldElem, FieldElem)| -> PlanePoint {
        std::array::from_fn(|i| &s.scale(&v1[i]) + &u.scale(&v2[i]))
    };
    Ok(LineSection { tower: t, points: [pt(&roots[0]), pt(&roots[1])] })
}

fn plane_cross(p: &PlanePoint, q: &PlanePoint) -> PlanePoint {
    [
        &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
        &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
        &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
    ]
}

fn same_plane_point(p: &PlanePoint, q: &PlanePoint) -> bool {
    plane_cross(p, q).iter().all(FieldElem::is_zero)
}

fn eval_plane(c: &TernaryForm, p: &PlanePoint) -> FieldElem {
    let t = p[0].tower();
    let g = c.gram();
    let mut acc = t.zero();
    for i in 0..3 {
        for j in 0..3 {
            if !g[i][j].is_zero() {
                acc = &acc + &(&p[i] * &p[j]).scale(&g[i][j]);
            }
        }
    }
    acc
}

/// The data of the double-cover construction.
///
/// The conic `C: a x^2 + b y^2 = z^2` is identified with the line over
/// `k' = Q(√a)` through the coordinate `w = (z + √a x)/y`, in which the
/// nontrivial element of `Gal(k'/Q)` acts as `w ↦ b/σ(w)`. The branch pair
/// `p, p̄` is `w = 0, ∞`, the cover is `w = z^2` and `D` is the preimage of `E`.
#[derive(Clone, Debug)]
pub struct DoubleCoverData {
    pub spec: CounterexampleSpec,
    pub conic: TernaryForm,
    /// `k' = Q(√a)`.
    pub k_prime: FieldTower,
    /// `(s:t) ↦ (s^2 - b t^2, 2√a s t, √a (s^2 + b t^2))`, over `k'`.
    pub parametrization: [BinaryForm; 3],
    pub p: PlanePoint,
    pub p_bar: PlanePoint,
    /// `E` in the `w`-coordinate, over `k'`.
    pub e_w: Vec<ProjPoint>,
    /// `E` as points of the conic, over `k'`.
    pub e_points: Vec<PlanePoint>,
    /// Rational lines cutting out the degree-2 points of `E`.
    pub lines: Vec<[BigInt; 3]>,
    /// The deck involution `z ↦ -z`.
    pub deck: Mobius,
    pub d: Divisor,
    pub attempts: usize,
}

impl DoubleCoverData {
    pub fn e_degree(&self) -> usize {
        self.e_w.len()
    }

    /// Number of branch points lying in `E`.
    pub fn branch_in_e(&self) -> usize {
        self.e_points.iter().filter(|q| same_plane_point(q, &self.p) || same_plane_point(q, &self.p_bar)).count()
    }

    /// Maps a `w`-value to its point on the conic.
    pub fn plane_point(&self, w: &ProjPoint) -> Result<PlanePoint> {
        let w = w.embed(&self.k_prime)?;
        Ok(self.parametrization.clone().map(|f| f.eval(&w)))
    }
}

fn nontrivial_on_first_root(gal: &GaloisGroup, t: &FieldTower) -> usize {
    (0..gal.order())
        .find(|&i| {
            let im = gal.element(i).images();
            im[0] == -&t.root(0) && im.iter().enumerate().skip(1).all(|(j, x)| *x == t.root(j))
        })
        .expect("Galois group of a quadratic tower")
}

fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let m = n.unsigned_abs();
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

/// A divisor of degree `n` over a tower containing `Q(√a)` whose field of
/// moduli is Q but which is not defined over Q.
pub fn gen_counterexample(spec: &CounterexampleSpec, max_retries: usize) -> Result<(DoubleCoverData, Verdict)> {
    let CounterexampleSpec { a, b, n, seed } = *spec;
    if n < 8 || n % 2 == 1 {
        return Err(Error::BadDegree(n));
    }
    if !is_squarefree(a) || !is_squarefree(b) {
        return Err(Error::HypothesesNotMet("a and b must be nonzero squarefree integers".into()));
    }
    let conic = TernaryForm::diagonal(a, b, -1);
    if a == 1 || hasse_solvable(&conic)?.solvable {
        return Err(Error::SplitSymbol(a, b));
    }
    let q = FieldTower::rational();
    let kp = q.extend(&q.int(a))?.tower;
    let alpha = kp.root(0);
    let ext = kp.extend(&kp.int(b))?;
    let t = ext.tower;
    let sqrt_b = ext.root;
    let gal = GaloisGroup::compute(&t)?;
    let sigma = gal.element(nontrivial_on_first_root(&gal, &t)).clone();
    let gal_k = GaloisGroup::compute(&kp)?;
    let sigma_k = gal_k.element(1).clone();

    let bq = kp.int(b);
    let parametrization = [
        BinaryForm::new(vec![kp.one(), kp.zero(), -&bq]),
        BinaryForm::new(vec![kp.zero(), &alpha * &kp.int(2), kp.zero()]),
        BinaryForm::new(vec![alpha.clone(), kp.zero(), &alpha * &bq]),
    ];
    let p = parametrization.clone().map(|f| f.eval(&ProjPoint::int(&kp, 0)));
    let p_bar = parametrization.clone().map(|f| f.eval(&ProjPoint::infinity(&kp)));
    let deck = Mobius::from_ints(&t, -1, 0, 0, 1)?;
    let with_branch = n % 4 == 2;
    let pieces = n / 4;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_retries {
        let us: Vec<FieldElem> = (0..pieces)
            .map(|_| {
                let x = rng.gen_range(-9i64..=9);
                let mut y = rng.gen_range(-9i64..=8);
                if y >= 0 {
                    y += 1;
                }
                &kp.int(x) + &(&alpha * &kp.int(y))
            })
            .collect();
        let mut zs: Vec<Option<FieldElem>> = Vec::new();
        let mut e_w = Vec::new();
        for u in &us {
            let ut = t.embed(u)?;
            let ubar = sigma.apply(&ut);
            if ubar.is_zero() {
                continue;
            }
            let v = sqrt_b.checked_div(&ubar)?;
            zs.extend([Some(ut.clone()), Some(-&ut), Some(v.clone()), Some(-&v)]);
            let w = u.square();
            e_w.push(ProjPoint::finite(w.clone()));
            e_w.push(ProjPoint::finite(bq.checked_div(&sigma_k.apply(&w))?));
        }
        if with_branch {
            zs.extend([Some(t.zero()), None]);
            e_w.extend([ProjPoint::int(&kp, 0), ProjPoint::infinity(&kp)]);
        }
        let Ok(d) = Divisor::from_affine(&t, zs) else { continue };
        if d.degree() != n {
            continue;
        }
        let aut = compute_aut(&d)?;
        let g = aut.index_of(&deck).ok_or_else(|| Error::InternalInconsistency("deck involution missing".into()))?;
        if !check_self_centralizing(&aut, g)? {
            continue;
        }

        let mut data = DoubleCoverData {
            spec: spec.clone(),
            conic: conic.clone(),
            k_prime: kp.clone(),
            parametrization: parametrization.clone(),
            p: p.clone(),
            p_bar: p_bar.clone(),
            e_points: Vec::new(),
            e_w,
            lines: Vec::new(),
            deck: deck.clone(),
            d,
            attempts: attempt,
        };
        check_cover(&mut data, &sigma_k)?;
        let an = analyze(&data.d, &DecideOptions::default())?;
        let v = an.verdict;
        if v.outcome != Outcome::NotDefined {
            return Err(Error::InternalInconsistency(format!("generated divisor decided as {}", v.outcome)));
        }
        if v.fom.level() != 0 {
            return Err(Error::InternalInconsistency("field of moduli of a generated divisor is not Q".into()));
        }
        return Ok((data, v));
    }
    Err(Error::RetriesExhausted(max_retries))
}

// Checks that E lies on C, is Galois-stable, is cut out by rational lines,
// and that the degrees match.
fn check_cover(data: &mut DoubleCoverData, sigma: &GaloisAut) -> Result<()> {
    let bad = |s: &str| Error::InternalInconsistency(s.to_string());
    let mut pts = Vec::new();
    for w in &data.e_w {
        let pt = data.plane_point(w)?;
        if !eval_plane(&data.conic, &pt).is_zero() {
            return Err(bad("point of E off the conic"));
        }
        pts.push(pt);
    }
    let alpha = data.k_prime.root(0);
    let mut lines = Vec::new();
    for pair in pts.chunks(2) {
        let conj = pair[0].clone().map(|x| sigma.apply(&x));
        if !same_plane_point(&conj, &pair[1]) {
            return Err(bad("E is not Galois-stable"));
        }
        // P × σ(P) is anti-invariant, so √a times it is rational
        let l = plane_cross(&pair[0], &conj).map(|x| &x * &alpha);
        let lq: Option<Vec<Rational>> = l.iter().map(|x| x.as_rational().cloned()).collect();
        let lq = lq.ok_or_else(|| bad("line through a conjugate pair is not rational"))?;
        let lq: Vec3 = [lq[0].clone(), lq[1].clone(), lq[2].clone()];
        if !dot(&lq, &pair[0]).is_zero() || !dot(&lq, &pair[1]).is_zero() {
            return Err(bad("line misses its pair"));
        }
        let sec = line_section_divisor(&data.conic, &lq)?;
        if sec.tower.level() != 1 || sec.tower.radicand(0) != sec.tower.int(data.spec.a) {
            return Err(bad("line section does not split over Q(√a)"));
        }
        lines.push(primitive_point(&lq));
    }
    let deg_d = 2 * pts.len() - {
        data.e_points = pts;
        data.branch_in_e()
    };
    if deg_d != data.d.degree() {
        return Err(bad("degree bookkeeping of the cover"));
    }
    data.lines = lines;
    Ok(())
}

/// Whether the centralizer of the involution `g` is `{1, g}`; when it is,
/// `|G|/2` must be odd.
pub fn check_self_centralizing(aut: &AutGroup, g: usize) -> Result<bool> {
    if g == 0 || aut.mul(g, g) != 0 {
        return Err(Error::NotAnInvolution);
    }
    let c = aut.centralizer(g);
    let yes = c.len() == 2;
    if yes && (aut.order() / 2) % 2 == 0 {
        return Err(Error::InternalInconsistency("self-centralizing involution in a group of order 0 mod 4".into()));
    }
    Ok(yes)
}

/// `D` in the form `{0, ∞, 1, -1, λ, -λ}`.
#[derive(Clone, Debug)]
pub struct Deg6Form {
    pub lambda: FieldElem,
    /// `{λ, -λ, 1/λ, -1/λ}`, sorted.
    pub lambda_orbit: Vec<FieldElem>,
    pub normalizer: Mobius,
    /// The involution whose fixed points went to `0, ∞`.
    pub involution: Mobius,
}

/// Normalizes a degree-6 divisor with an involution fixing two of its points.
pub fn deg6_normal_form(d: &Divisor) -> Result<Deg6Form> {
    if d.degree() != 6 {
        return Err(Error::HypothesesNotMet(format!("degree {} is not 6", d.degree())));
    }
    let t = d.tower();
    let aut = compute_aut(d)?;
    for (i, g) in aut.elements().iter().enumerate() {
        if aut.orders()[i] != 2 {
            continue;
        }
        let fp = g.fixed_points()?;
        if !fp.tower.same(t) || fp.points.len() != 2 || !fp.points.iter().all(|p| d.contains(p)) {
            continue;
        }
        let other = d.points().iter().find(|p| !fp.points.contains(p)).expect("six points");
        let zero = ProjPoint::int(t, 0);
        let one = ProjPoint::int(t, 1);
        let inf = ProjPoint::infinity(t);
        let nm = Mobius::from_triples([&fp.points[0], &fp.points[1], other], [&zero, &inf, &one])?;
        let e = d.apply(&nm);
        let lam = e
            .points()
            .iter()
            .filter_map(|p| p.affine())
            .find(|x| !x.is_zero() && !x.is_one() && !(-*x).is_one())
            .cloned()
            .ok_or_else(|| Error::InternalInconsistency("normal form lost λ".into()))?;
        let expected = Divisor::from_affine(
            t,
            [Some(t.zero()), None, Some(t.one()), Some(-t.one()), Some(lam.clone()), Some(-&lam)],
        )?;
        if expected != e {
            return Err(Error::InternalInconsistency("normalized divisor is not {0,∞,±1,±λ}".into()));
        }
        let flip = Mobius::new(t.zero(), lam.clone(), t.one(), t.zero())?;
        if !e.is_stabilized_by(&flip) {
            return Err(Error::InternalInconsistency("x ↦ λ/x does not stabilize the normal form".into()));
        }
        let inv = lam.inv()?;
        let mut orbit = vec![lam.clone(), -&lam, inv.clone(), -&inv];
        orbit.sort();
        orbit.dedup();
        return Ok(Deg6Form { lambda: lam, lambda_orbit: orbit, normalizer: nm, involution: g.clone() });
    }
    Err(Error::HypothesesNotMet("no involution with both fixed points in the divisor".into()))
}

/// Analysis of a hyperelliptic curve through its branch divisor.
#[derive(Clone, Debug)]
pub struct HyperellipticReport {
    pub branch: Divisor,
    pub genus: usize,
    pub reduced_order: usize,
    pub reduced_class: GroupClass,
    pub verdict: Verdict,
    /// The branch divisor is not defined over its field of moduli.
    pub obstruction: bool,
    /// A pointless compression forces a cyclic reduced group; checked.
    pub cyclic_condition_holds: bool,
}

pub fn hyperelliptic_branch_analysis(branch: &Divisor, odd_infinity: bool) -> Result<HyperellipticReport> {
    let t = branch.tower();
    let mut b = branch.clone();
    if odd_infinity {
        let inf = ProjPoint::infinity(t);
        if b.contains(&inf) {
            return Err(Error::HypothesesNotMet("∞ is already a branch point".into()));
        }
        let mut pts = b.points().to_vec();
        pts.push(inf);
        b = Divisor::new(t, pts)?;
    }
    let n = b.degree();
    if n % 2 == 1 {
        return Err(Error::HypothesesNotMet(format!("branch degree {n} is odd")));
    }
    if n < 6 {
        return Err(Error::GenusTooSmall(n));
    }
    let an = analyze(&b, &DecideOptions::default())?;
    let v = an.verdict;
    let pointless = v.compression_solvable == Some(false);
    let cyclic = v.aut_class.is_cyclic();
    if pointless && !cyclic {
        return Err(Error::InternalInconsistency("pointless compression with a noncyclic group".into()));
    }
    Ok(HyperellipticReport {
        genus: (n - 2) / 2,
        reduced_order: v.aut_order,
        reduced_class: v.aut_class,
        obstruction: v.outcome == Outcome::NotDefined,
        cyclic_condition_holds: !pointless || cyclic,
        branch: b,
        verdict: v,
    })
}

fn small_elem(t: &FieldTower, rng: &mut ChaCha8Rng, range: i64) -> FieldElem {
    let coords = (0..t.degree()).map(|_| Rational::from_integer(rng.gen_range(-range..=range).into())).collect();
    t.elem(coords).expect("length matches")
}

/// A random Galois tower of level at most `max_level`.
pub fn random_galois_tower(rng: &mut ChaCha8Rng, max_level: usize) -> FieldTower {
    const RADICANDS: [i64; 8] = [2, 3, 5, -1, -2, -3, 6, 7];
    let q = FieldTower::rational();
    let level = rng.gen_range(0..=max_level.min(2));
    if level == 0 {
        return q;
    }
    let d1 = RADICANDS[rng.gen_range(0..RADICANDS.len())];
    let t1 = q.extend(&q.int(d1)).expect("nonzero").tower;
    if level == 1 {
        return t1;
    }
    if rng.gen_bool(0.25) && d1 == 2 {
        // Q(√(2+√2)) is cyclic of degree 4
        let r = &t1.int(2) + &t1.root(0);
        return t1.extend(&r).expect("nonzero").tower;
    }
    loop {
        let d2 = RADICANDS[rng.gen_range(0..RADICANDS.len())];
        let ext = t1.extend(&t1.int(d2)).expect("nonzero");
        if ext.extended {
            return ext.tower;
        }
    }
}

/// `M(D0)` for a random Galois-stable `D0` of degree `n` and a random Möbius
/// map `M` over the tower; the field of moduli is Q.
pub fn random_twisted_divisor(n: usize, tower: &FieldTower, seed: u64) -> Result<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d0 = random_stable_divisor(n, tower, &mut rng)?;
    let m = random_mobius(tower, &mut rng);
    let d = d0.apply(&m);
    if !field_of_moduli(&d)?.fom_is_q() {
        return Err(Error::InternalInconsistency("twisted divisor has a field of moduli larger than Q".into()));
    }
    Ok(d)
}

pub fn random_mobius(t: &FieldTower, rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let e: [FieldElem; 4] = std::array::from_fn(|_| small_elem(t, rng, 3));
        if let Ok(m) = Mobius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}

/// A Galois-stable divisor of degree `n`: rational points and Galois orbits.
pub fn random_stable_divisor(n: usize, t: &FieldTower, rng: &mut ChaCha8Rng) -> Result<Divisor> {
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let gal = GaloisGroup::compute(t)?;
    loop {
        let mut pts: Vec<ProjPoint> = Vec::new();
        if rng.gen_bool(0.2) {
            pts.push(ProjPoint::infinity(t));
        }
        let mut tries = 0;
        while pts.len() < n && tries < 200 {
            tries += 1;
            let remaining = n - pts.len();
            let x = if t.level() > 0 && remaining >= 2 && rng.gen_bool(0.6) {
                let b = rng.gen_range(1..t.degree());
                let c = rng.gen_range(1i64..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                &t.int(rng.gen_range(-12i64..=12)) + &t.basis(b).scale(&Rational::from_integer(c.into()))
            } else {
                t.int(rng.gen_range(-30i64..=30))
            };
            let mut orbit: Vec<ProjPoint> = gal.elements().iter().map(|s| ProjPoint::finite(s.apply(&x))).collect();
            orbit.sort();
            orbit.dedup();
            if orbit.len() > remaining || orbit.iter().any(|p| pts.contains(p)) {
                continue;
            }
            pts.extend(orbit);
        }
        if pts.len() == n {
            return Divisor::new(t, pts);
        }
    }
}

/// Parses a conic coefficient list `[a, b, c]` into `a x^2 + b y^2 + c z^2`.
pub fn diagonal_conic(coeffs: &[BigInt; 3]) -> TernaryForm {
    let z = Rational::zero;
    let r = |i: usize| Rational::from_integer(coeffs[i].clone());
    TernaryForm::from_upper([r(0), z(), z(), r(1), z(), r(2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::verify_certificate;

    #[test]
    fn counterexample_eight() {
        let spec = CounterexampleSpec { a: -1, b: -1, n: 8, seed: 1 };
        let (data, v) = gen_counterexample(&spec, DEFAULT_MAX_RETRIES).unwrap();
        assert_eq!(v.outcome, Outcome::NotDefined);
        assert_eq!(v.aut_order, 2);
        assert_eq!(data.d.degree(), 8);
        assert_eq!(data.e_degree(), 4);
        assert!(verify_certificate(&data.d, &v).is_ok());
    }

    #[test]
    fn counterexample_ten_contains_branch() {
        let spec = CounterexampleSpec { a: -1, b: -1, n: 10, seed: 3 };
        let (data, v) = gen_counterexample(&spec, DEFAULT_MAX_RETRIES).unwrap();
        assert_eq!(v.outcome, Outcome::NotDefined);
        assert_eq!(data.e_degree(), 6);
        assert_eq!(data.branch_in_e(), 2);
    }

    #[test]
    fn counterexample_rejects_split_and_bad_degree() {
        let s = CounterexampleSpec { a: 1, b: 5, n: 8, seed: 0 };
        assert_eq!(gen_counterexample(&s, 4).unwrap_err(), Error::SplitSymbol(1, 5));
        let s = CounterexampleSpec { a: -1, b: -1, n: 6, seed: 0 };
        assert_eq!(gen_counterexample(&s, 4).unwrap_err(), Error::BadDegree(6));
    }

    #[test]
    fn line_sections() {
        let c = TernaryForm::diagonal(1, 1, 1);
        let one = Rational::one();
        let l = [one.clone(), one.clone(), -one.clone()];
        let s = line_section_divisor(&c, &l).unwrap();
        assert_eq!(s.tower.level(), 1);
        for p in &s.points {
            assert!(eval_plane(&c, p).is_zero());
            assert!(dot(&l, p).is_zero());
        }
        // x^2 + y^2 - z^2 is tangent to x = z at (1:0:1)
        let c = TernaryForm::diagonal(1, 1, -1);
        let l = [one.clone(), Rational::zero(), -one];
        assert_eq!(line_section_divisor(&c, &l).unwrap_err(), Error::TangentLine);
    }

    #[test]
    fn normal_form_of_degree_six() {
        let t = FieldTower::rational();
        let d = Divisor::from_affine(&t, [Some(0), None, Some(1), Some(-1), Some(4), Some(-4)].map(|x| x.map(|v| t.int(v))))
            .unwrap();
        let f = deg6_normal_form(&d).unwrap();
        let four = t.int(4);
        assert!(f.lambda_orbit.contains(&four));
        let m = Mobius::from_ints(&t, 2, 1, -1, 3).unwrap();
        let g = deg6_normal_form(&d.apply(&m)).unwrap();
        assert_eq!(f.lambda_orbit, g.lambda_orbit);
        let generic = Divisor::from_affine(&t, [0, 1, 3, 7, 12, -5].map(|v| Some(t.int(v)))).unwrap();
        assert!(matches!(deg6_normal_form(&generic), Err(Error::HypothesesNotMet(_))));
    }

    #[test]
    fn self_centralizing_in_klein() {
        let t = FieldTower::rational();
        let d = Divisor::from_affine(&t, [Some(t.int(0)), None, Some(t.int(2)), Some(t.int(-2))]).unwrap();
        let aut = compute_aut(&d).unwrap();
        let g = aut.index_of(&Mobius::from_ints(&t, -1, 0, 0, 1).unwrap()).unwrap();
        assert!(!check_self_centralizing(&aut, g).unwrap());
        assert_eq!(check_self_centralizing(&aut, 0).unwrap_err(), Error::NotAnInvolution);
    }

    #[test]
    fn sextic_roots_of_unity() {
        let q = FieldTower::rational();
        let t = q.extend(&q.int(-3)).unwrap().tower;
        let w = t.root(0);
        let h = t.int(2).inv().unwrap();
        let pts = [t.one(), -t.one(), &(&t.one() + &w) * &h, &(&t.one() - &w) * &h, &(&-t.one() + &w) * &h, &(-&(&t.one() + &w)) * &h];
        let d = Divisor::from_affine(&t, pts.into_iter().map(Some)).unwrap();
        let r = hyperelliptic_branch_analysis(&d, false).unwrap();
        assert_eq!(r.genus, 2);
        assert!(!r.reduced_class.is_cyclic());
        assert!(!r.obstruction);
    }

    #[test]
    fn twisted_divisors_have_rational_moduli() {
        let q = FieldTower::rational();
        let t = q.extend(&q.int(2)).unwrap().tower;
        let d = random_twisted_divisor(5, &t, 11).unwrap();
        assert_eq!(d.degree(), 5);
        assert_eq!(crate::decide::decide(&d).unwrap().outcome, Outcome::DefinedOnP1);
    }
}
