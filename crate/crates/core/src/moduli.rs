//! Field of moduli, the descent cochain and its 2-cocycle, the compression
//! conic, the compressed divisor and the ramification ledger of the quotient.
//!
//! The compression is obtained by descending the Veronese embedding of the
//! quotient line. For a cyclic stabilizer `G` of order `m`, two generic
//! orbit forms `F_0, F_1 = ∏_{g ∈ G} ℓ_{g(x)}` give the quotient map
//! `Q = (F_0 : F_1)` without adjoining the fixed points. Each descent map
//! `φ_σ` induces a Möbius map `ψ_σ` on the target with
//! `ψ_σ ∘ Q^σ = Q ∘ φ_σ`, and `Sym²(ψ_σ)/det ψ_σ` is an exact semilinear
//! action on the plane whose fixed vectors give the conic over the field of
//! moduli.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith;
use crate::binform::BinaryForm;
use crate::conic::TernaryForm;
use crate::divisor::{conjugate_divisor, pgl2_equivalent, AutGroup, Divisor};
use crate::error::{Error, Result};
use crate::projline::{Mobius, ProjPoint};
use crate::qfield::{FieldElem, FieldTower, FixedField, GaloisGroup, Rational};

pub type Mat3 = [[FieldElem; 3]; 3];

/// The subgroup `H`, one descent map per element of `H`, and the field of moduli.
#[derive(Clone, Debug)]
pub struct ModuliData {
    galois: GaloisGroup,
    h: Vec<usize>,
    cochain: Vec<Mobius>,
    fom: FixedField,
}

impl ModuliData {
    pub fn galois(&self) -> &GaloisGroup {
        &self.galois
    }

    /// Indices into the Galois group's element list, increasing, identity first.
    pub fn h(&self) -> &[usize] {
        &self.h
    }

    /// `φ_σ` for `σ = h()[i]`, with `φ_σ(σ(D)) = D`.
    pub fn cochain(&self) -> &[Mobius] {
        &self.cochain
    }

    pub fn phi(&self, sigma: usize) -> Option<&Mobius> {
        self.h.iter().position(|&s| s == sigma).map(|i| &self.cochain[i])
    }

    pub fn fom(&self) -> &FixedField {
        &self.fom
    }

    pub fn fom_is_q(&self) -> bool {
        self.fom.is_rational()
    }

    fn pos(&self, sigma: usize) -> usize {
        self.h.iter().position(|&s| s == sigma).expect("element of H")
    }
}

/// `H = {σ : σ(D) ≅ D}` with one witness per element, and its fixed field.
pub fn field_of_moduli(d: &Divisor) -> Result<ModuliData> {
    if d.degree() < 3 {
        return Err(Error::DegreeTooSmall(d.degree()));
    }
    let galois = GaloisGroup::compute(d.tower())?;
    let mut h = Vec::new();
    let mut cochain = Vec::new();
    for (i, sigma) in galois.elements().iter().enumerate() {
        if i == 0 {
            h.push(0);
            cochain.push(Mobius::identity(d.tower()));
            continue;
        }
        let sd = conjugate_divisor(sigma, d);
        if let Some(m) = pgl2_equivalent(&sd, d)? {
            h.push(i);
            cochain.push(m);
        }
    }
    if !galois.is_subgroup(&h) {
        return Err(Error::InternalInconsistency("H is not a subgroup".into()));
    }
    let fom = galois.fixed_subtower(&h)?;
    Ok(ModuliData { galois, h, cochain, fom })
}

/// `c_{σ,τ} = φ_σ ∘ σ(φ_τ) ∘ φ_{στ}^{-1}` as indices into the automorphism group,
/// stored by positions in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub values: Vec<Vec<usize>>,
}

impl Cocycle {
    pub fn is_trivial_valued(&self) -> bool {
        self.values.iter().all(|r| r.iter().all(|&v| v == 0))
    }
}

/// The 2-cocycle of the cochain, checked against the twisted cocycle identity.
pub fn descent_cocycle(data: &ModuliData, aut: &AutGroup) -> Result<Cocycle> {
    let gal = &data.galois;
    let h = &data.h;
    let k = h.len();
    let mut mats = vec![vec![None; k]; k];
    let mut values = vec![vec![0; k]; k];
    for (a, &s) in h.iter().enumerate() {
        for (b, &t) in h.iter().enumerate() {
            let st = data.pos(gal.mul(s, t));
            let c = data.cochain[a]
                .compose(&data.cochain[b].conjugate(gal.element(s)))
                .compose(&data.cochain[st].inverse());
            values[a][b] = aut
                .index_of(&c)
                .ok_or_else(|| Error::InternalInconsistency("cocycle value does not stabilize D".into()))?;
            mats[a][b] = Some(c);
        }
    }
    let m = |a: usize, b: usize| mats[a][b].as_ref().expect("filled");
    for (a, &s) in h.iter().enumerate() {
        let phi = &data.cochain[a];
        let phi_inv = phi.inverse();
        for (b, &t) in h.iter().enumerate() {
            for (c, &r) in h.iter().enumerate() {
                let st = data.pos(gal.mul(s, t));
                let tr = data.pos(gal.mul(t, r));
                let lhs = m(a, b).compose(m(st, c));
                let twisted = phi.compose(&m(b, c).conjugate(gal.element(s))).compose(&phi_inv);
                let rhs = twisted.compose(m(a, tr));
                if lhs != rhs {
                    return Err(Error::InternalInconsistency("2-cocycle identity fails".into()));
                }
            }
        }
    }
    Ok(Cocycle { values })
}

/// The quotient map, the induced action on the quotient line and the
/// descended conic.
#[derive(Clone, Debug)]
pub struct Compression {
    /// Order of the cyclic automorphism group.
    pub m: usize,
    pub generator: Mobius,
    /// `Q = (F_0 : F_1)`, both of degree `m`.
    pub quotient: [BinaryForm; 2],
    /// `ψ_σ` aligned with `ModuliData::h`.
    pub psi: Vec<Mobius>,
    /// Columns are fixed vectors of the twisted Veronese action.
    pub basis: Mat3,
    /// The pulled-back Veronese quadric, entries in the field of moduli.
    pub gram: Mat3,
    /// The conic over Q, primitive, when the field of moduli is Q.
    pub form: Option<TernaryForm>,
}

impl Compression {
    pub fn apply_quotient(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.quotient[0].eval(p), self.quotient[1].eval(p)).expect("orbit forms have no common zero")
    }

    /// `Q^σ`, the quotient map with conjugated coefficients.
    fn apply_conj_quotient(&self, conj: &[BinaryForm; 2], p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(conj[0].eval(p), conj[1].eval(p)).expect("orbit forms have no common zero")
    }

    /// The point of the quotient line matching a vector on the descended conic.
    pub fn line_point(&self, x: &[FieldElem; 3]) -> Result<ProjPoint> {
        let y = mat_vec(&self.basis, x);
        if !(&(&y[0] * &y[2]) - &y[1].square()).is_zero() {
            return Err(Error::PointNotOnConic);
        }
        if y[0].is_zero() {
            ProjPoint::new(y[1].clone(), y[2].clone())
        } else {
            ProjPoint::new(y[0].clone(), y[1].clone())
        }
    }
}

fn sym2_over_det(m: &Mobius) -> Mat3 {
    let [a, b, c, d] = m.entries();
    let t = m.tower();
    let two = t.int(2);
    let det_inv = m.det().inv().expect("nonsingular");
    let rows = [
        [a.square(), &(&two * a) * b, b.square()],
        [a * c, &(a * d) + &(b * c), b * d],
        [c.square(), &(&two * c) * d, d.square()],
    ];
    rows.map(|r| r.map(|e| &e * &det_inv))
}

pub(crate) fn mat_vec(m: &Mat3, v: &[FieldElem; 3]) -> [FieldElem; 3] {
    std::array::from_fn(|i| &(&(&m[i][0] * &v[0]) + &(&m[i][1] * &v[1])) + &(&m[i][2] * &v[2]))
}

fn det3(m: &Mat3) -> FieldElem {
    let minor = |i: usize, j: usize, k: usize, l: usize| &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k]);
    &(&(&m[0][0] * &minor(1, 2, 1, 2)) - &(&m[0][1] * &minor(1, 2, 0, 2))) + &(&m[0][2] * &minor(1, 2, 0, 1))
}

fn cross(u: &[FieldElem; 3], v: &[FieldElem; 3]) -> [FieldElem; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

/// Inverse of a 3x3 matrix over a tower.
pub fn inverse3(m: &Mat3) -> Result<Mat3> {
    let det = det3(m);
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv = det.inv()?;
    let cols: [[FieldElem; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| m[i][j].clone()));
    // rows of the inverse are cross products of pairs of columns
    let r0 = cross(&cols[1], &cols[2]);
    let r1 = cross(&cols[2], &cols[0]);
    let r2 = cross(&cols[0], &cols[1]);
    Ok([r0, r1, r2].map(|r| r.map(|e| &e * &inv)))
}

fn veronese_pair(u: &[FieldElem; 3], v: &[FieldElem; 3], half: &Rational) -> FieldElem {
    // u^T S v with S the Gram matrix of y0 y2 - y1^2
    let s = &(&u[0] * &v[2]) + &(&u[2] * &v[0]);
    &s.scale(half) - &(&u[1] * &v[1])
}

/// Rational points `0, 1, -1, 2, -2, ...`.
fn test_points(t: &FieldTower) -> impl Iterator<Item = ProjPoint> + '_ {
    std::iter::once(ProjPoint::infinity(t))
        .chain((0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).map(move |k| ProjPoint::int(t, k)))
}

fn orbit_form(aut: &AutGroup, t: &FieldTower, x: &ProjPoint) -> Option<BinaryForm> {
    let mut orbit: Vec<ProjPoint> = aut.elements().iter().map(|g| g.apply(x)).collect();
    orbit.sort();
    orbit.dedup();
    (orbit.len() == aut.order()).then(|| BinaryForm::from_roots(t, &orbit))
}

const SAMPLE_LIMIT: usize = 400;

/// Descends the quotient of the line by a cyclic automorphism group.
pub fn compression(d: &Divisor, data: &ModuliData, aut: &AutGroup) -> Result<Compression> {
    if !aut.class().is_cyclic() {
        return Err(Error::NonCyclicAut);
    }
    let t = d.tower();
    let m = aut.order();
    let generator = aut.element(aut.generator()).clone();

    let mut forms: Vec<BinaryForm> = Vec::new();
    let mut seen: Vec<ProjPoint> = Vec::new();
    for x in test_points(t).take(SAMPLE_LIMIT) {
        if seen.contains(&x) {
            continue;
        }
        if let Some(f) = orbit_form(aut, t, &x) {
            seen.extend(aut.elements().iter().map(|g| g.apply(&x)));
            forms.push(f);
            if forms.len() == 2 {
                break;
            }
        }
    }
    if forms.len() < 2 {
        return Err(Error::DescentFailure("no generic orbits among sample points".into()));
    }
    let quotient = [forms[0].clone(), forms[1].clone()];
    let mut comp = Compression {
        m,
        generator,
        quotient,
        psi: Vec::new(),
        basis: std::array::from_fn(|_| std::array::from_fn(|_| t.zero())),
        gram: std::array::from_fn(|_| std::array::from_fn(|_| t.zero())),
        form: None,
    };

    let gal = data.galois();
    for (i, &s) in data.h().iter().enumerate() {
        let sigma = gal.element(s);
        let phi = &data.cochain()[i];
        let conj = [comp.quotient[0].conjugate(sigma), comp.quotient[1].conjugate(sigma)];
        let mut src: Vec<ProjPoint> = Vec::new();
        let mut dst: Vec<ProjPoint> = Vec::new();
        let mut checks = 0;
        let mut psi: Option<Mobius> = None;
        for w in test_points(t).take(SAMPLE_LIMIT) {
            let a = comp.apply_conj_quotient(&conj, &w);
            let b = comp.apply_quotient(&phi.apply(&w));
            if let Some(p) = &psi {
                if p.apply(&a) != b {
                    return Err(Error::DescentFailure("induced map on the quotient is not Möbius".into()));
                }
                checks += 1;
                if checks == 2 {
                    break;
                }
            } else if !src.contains(&a) {
                src.push(a);
                dst.push(b);
                if src.len() == 3 {
                    psi = Some(Mobius::from_triples([&src[0], &src[1], &src[2]], [&dst[0], &dst[1], &dst[2]])?);
                }
            }
        }
        comp.psi.push(psi.ok_or_else(|| Error::DescentFailure("too few distinct quotient samples".into()))?);
    }

    for (a, &s) in data.h().iter().enumerate() {
        for (b, &u) in data.h().iter().enumerate() {
            let su = data.pos(gal.mul(s, u));
            let lhs = comp.psi[a].compose(&comp.psi[b].conjugate(gal.element(s)));
            if lhs != comp.psi[su] {
                return Err(Error::DescentFailure("induced maps fail the 1-cocycle identity".into()));
            }
        }
    }

    let (basis, gram) = descend_veronese(t, data, &comp.psi)?;
    comp.basis = basis;
    comp.gram = gram;
    if data.fom_is_q() {
        let g = comp.gram.clone().map(|r| r.map(|e| e.as_rational().expect("rational").clone()));
        let f = TernaryForm::new(g)?;
        if !f.is_nonsingular() {
            return Err(Error::DescentFailure("descended conic is singular".into()));
        }
        comp.form = Some(f.primitive());
    }
    Ok(comp)
}

/// Fixed vectors of `v ↦ Sym²(φ_σ)/det · σ(v)` and the Veronese quadric on
/// them, for a `PGL_2` cocycle `φ` aligned with `ModuliData::h`.
pub(crate) fn descend_veronese(t: &FieldTower, data: &ModuliData, cochain: &[Mobius]) -> Result<(Mat3, Mat3)> {
    let gal = data.galois();
    let rho: Vec<Mat3> = cochain.iter().map(sym2_over_det).collect();
    let inv_h = Rational::new(BigInt::one(), BigInt::from(data.h().len()));
    let project = |v: &[FieldElem; 3]| -> [FieldElem; 3] {
        let mut acc: [FieldElem; 3] = std::array::from_fn(|_| t.zero());
        for (i, &s) in data.h().iter().enumerate() {
            let sv = v.clone().map(|e| gal.apply(s, &e));
            let w = mat_vec(&rho[i], &sv);
            for k in 0..3 {
                acc[k] = &acc[k] + &w[k];
            }
        }
        acc.map(|e| e.scale(&inv_h))
    };
    let mut cols: Vec<[FieldElem; 3]> = Vec::new();
    'search: for b in 0..t.degree() {
        for i in 0..3 {
            let mut v: [FieldElem; 3] = std::array::from_fn(|_| t.zero());
            v[i] = t.basis(b);
            let p = project(&v);
            let independent = match cols.len() {
                0 => p.iter().any(|e| !e.is_zero()),
                1 => cross(&cols[0], &p).iter().any(|e| !e.is_zero()),
                _ => !det3(&[0, 1, 2].map(|r| [cols[0][r].clone(), cols[1][r].clone(), p[r].clone()])).is_zero(),
            };
            if independent {
                cols.push(p);
                if cols.len() == 3 {
                    break 'search;
                }
            }
        }
    }
    if cols.len() != 3 {
        return Err(Error::DescentFailure(format!("fixed space has dimension {}", cols.len())));
    }
    let basis: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
    for (i, &s) in data.h().iter().enumerate() {
        for col in &cols {
            let sv = col.clone().map(|e| gal.apply(s, &e));
            if mat_vec(&rho[i], &sv) != *col {
                return Err(Error::DescentFailure("averaged vector is not fixed".into()));
            }
        }
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let fom = data.fom();
    let mut gram: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| t.zero()));
    for i in 0..3 {
        for j in 0..3 {
            let g = veronese_pair(&cols[i], &cols[j], &half);
            gram[i][j] = fom
                .restrict(&g)
                .ok_or_else(|| Error::DescentFailure("descended quadric is not defined over the field of moduli".into()))?;
        }
    }
    Ok((basis, gram))
}

/// Images of the points of `D` on the quotient line, grouped into orbits of
/// the twisted Galois action `y ↦ ψ_σ(σ(y))`.
#[derive(Clone, Debug)]
pub struct CompressedDivisor {
    pub orbits: Vec<Vec<ProjPoint>>,
}

impl CompressedDivisor {
    /// Degrees of the closed points over the field of moduli.
    pub fn degrees(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn point_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }
}

pub fn compressed_divisor(d: &Divisor, data: &ModuliData, comp: &Compression) -> Result<CompressedDivisor> {
    let images: BTreeSet<ProjPoint> = d.points().iter().map(|p| comp.apply_quotient(p)).collect();
    let gal = data.galois();
    let mut left = images.clone();
    let mut orbits = Vec::new();
    while let Some(y) = left.iter().next().cloned() {
        let mut orbit = BTreeSet::new();
        for (i, &s) in data.h().iter().enumerate() {
            let z = comp.psi[i].apply(&y.conjugate(gal.element(s)));
            if !images.contains(&z) {
                return Err(Error::InternalInconsistency("twisted action leaves the compressed divisor".into()));
            }
            orbit.insert(z);
        }
        for z in &orbit {
            left.remove(z);
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(CompressedDivisor { orbits })
}

/// One closed ramification point of a cyclic quotient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamEntry {
    /// Geometric points making up the closed point.
    pub points: Vec<ProjPoint>,
    pub e: u32,
    pub d: u32,
    pub residue_degree: u32,
}

/// Ramification data of a degree-`degree` map of projective lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationLedger {
    pub degree: u32,
    pub entries: Vec<RamEntry>,
    /// Branch points, each with its residue degree.
    pub branch: Vec<(Vec<ProjPoint>, u32)>,
}

impl RamificationLedger {
    /// `Σ d_r · deg r`.
    pub fn different_sum(&self) -> u32 {
        self.entries.iter().map(|e| e.d * e.residue_degree).sum()
    }

    /// Tameness `d = e - 1` and `2 deg - 2 = Σ d_r deg r`.
    pub fn check(&self) -> bool {
        self.entries.iter().all(|e| e.d + 1 == e.e)
            && 2 * self.degree - 2 == self.different_sum()
    }
}

/// The ledger of `z ↦ z^m`.
pub fn quotient_ramification(m: u32) -> RamificationLedger {
    assert!(m >= 2, "quotient_ramification needs m >= 2");
    let t = FieldTower::rational();
    let zero = ProjPoint::int(&t, 0);
    let inf = ProjPoint::infinity(&t);
    let entry = |p: &ProjPoint| RamEntry { points: vec![p.clone()], e: m, d: m - 1, residue_degree: 1 };
    RamificationLedger {
        degree: m,
        entries: vec![entry(&zero), entry(&inf)],
        branch: vec![(vec![zero.clone()], 1), (vec![inf], 1)],
    }
}

/// Reads the ramification of the constructed quotient map off its Jacobian
/// `∂_x F_0 ∂_y F_1 - ∂_y F_0 ∂_x F_1`, which must be a power of the
/// generator's fixed-point quadratic.
pub fn compression_ramification(comp: &Compression) -> Result<RamificationLedger> {
    let m = comp.m as u32;
    let [f0, f1] = &comp.quotient;
    if m == 1 {
        return Ok(RamificationLedger { degree: 1, entries: Vec::new(), branch: Vec::new() });
    }
    let jac = f0.dx().mul(&f1.dy()).sub(&f0.dy().mul(&f1.dx()))?;
    let [a, b, c, d] = comp.generator.entries();
    let q = BinaryForm::new(vec![c.clone(), d - a, -b]);
    let mut rest = jac;
    let mut mult = 0;
    while let Some(next) = rest.div_exact(&q) {
        rest = next;
        mult += 1;
    }
    if rest.degree() != 0 || rest.is_zero() {
        return Err(Error::InternalInconsistency("Jacobian is not supported on the fixed points".into()));
    }
    let e = mult + 1;
    let fixed = comp.generator.fixed_points()?;
    let split = fixed.tower.level() == comp.generator.tower().level();
    let big = &fixed.tower;
    let emb = [
        BinaryForm::new(f0.coeffs().iter().map(|x| big.embed(x)).collect::<Result<_>>()?),
        BinaryForm::new(f1.coeffs().iter().map(|x| big.embed(x)).collect::<Result<_>>()?),
    ];
    let image = |p: &ProjPoint| ProjPoint::new(emb[0].eval(p), emb[1].eval(p));
    let (entries, branch) = if split {
        let mut entries = Vec::new();
        let mut branch = Vec::new();
        for p in &fixed.points {
            entries.push(RamEntry { points: vec![p.clone()], e, d: e - 1, residue_degree: 1 });
            branch.push((vec![image(p)?], 1));
        }
        (entries, branch)
    } else {
        let imgs = fixed.points.iter().map(image).collect::<Result<Vec<_>>>()?;
        (
            vec![RamEntry { points: fixed.points.clone(), e, d: e - 1, residue_degree: 2 }],
            vec![(imgs, 2)],
        )
    };
    Ok(RamificationLedger { degree: m, entries, branch })
}

/// A quaternion symbol `(a, b)` over Q.
pub type Symbol = (BigInt, BigInt);

/// Decomposes a `{±1}`-valued cocycle of an elementary abelian Galois group
/// into cup products of the quadratic characters, as quaternion symbols.
///
/// The class of `x_i ∪ x_j` (`i < j`) maps to `(d_i, d_j)` and `x_i ∪ x_i`
/// to `(d_i, -1)`.
pub fn cocycle_class_to_quaternion(c: &Cocycle, data: &ModuliData, aut: &AutGroup) -> Result<Vec<Symbol>> {
    if aut.order() > 2 {
        return Err(Error::UnsupportedAut(aut.order()));
    }
    if !data.fom_is_q() {
        return Err(Error::HypothesesNotMet("field of moduli is not Q".into()));
    }
    let gal = data.galois();
    let t = gal.tower();
    if !t.is_multiquadratic() {
        return Err(Error::NonElementaryGaloisQuotient);
    }
    let r = t.level();
    let mut rads = Vec::with_capacity(r);
    for i in 0..r {
        let q = t.radicand(i).as_rational().expect("multiquadratic").clone();
        rads.push(arith::rational_squarefree(&q)?.0);
    }
    let n = gal.order();
    let signs: Vec<Vec<u8>> = (0..n)
        .map(|s| (0..r).map(|i| u8::from(gal.element(s).images()[i] != t.root(i))).collect())
        .collect();
    // positions in H coincide with Galois indices since H is everything
    let val = |a: usize, b: usize| u8::from(c.values[data.pos(a)][data.pos(b)] != 0);

    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let unknowns = pairs.len() + n;
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n * n);
    for s in 0..n {
        for u in 0..n {
            let mut row = vec![0u8; unknowns + 1];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                row[k] = signs[s][i] & signs[u][j];
            }
            // coboundary of f: f(s) + f(u) + f(su)
            for g in [s, u, gal.mul(s, u)] {
                row[pairs.len() + g] ^= 1;
            }
            row[unknowns] = val(s, u);
            rows.push(row);
        }
    }
    let sol = solve_gf2(rows, unknowns).ok_or_else(|| Error::InternalInconsistency("cocycle class not in the cup-product span".into()))?;
    let mut out = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if sol[k] == 1 {
            out.push(if i == j { (rads[i].clone(), BigInt::from(-1)) } else { (rads[i].clone(), rads[j].clone()) });
        }
    }
    Ok(out)
}

// Gaussian elimination over the two-element field; free variables set to 0.
fn solve_gf2(mut rows: Vec<Vec<u8>>, cols: usize) -> Option<Vec<u8>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[cols] == 1) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][cols];
    }
    Some(x)
}
