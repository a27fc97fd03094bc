//! The group and its `K`-extension as composable floating-point elements.
//!
//! `Λ ∈ SL(2,C)` and `R ∈ SU(2)` are stored as covering-group matrices; the
//! vector, symmetric-tensor and rotation actions are derived from them.
//! The `c` component holds the coefficients `c^{μν}` (μ ≤ ν) of `C_{μν}`, so
//! the symmetric tensor it represents has off-diagonal entries `c^{μν}/2`.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Matrix4, SMatrix};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{metric, BasisLabel, LieAlgebra};

pub type Cx2 = Matrix2<Complex64>;
pub type Mat34 = SMatrix<f64, 3, 4>;
pub type Mat10 = SMatrix<f64, 10, 10>;

const DET_TOL: f64 = 1e-9;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `σ_1, σ_2, σ_3` for `k = 0, 1, 2`, and the identity for `k = 3`.
pub fn sigma(k: usize) -> Cx2 {
    let (o, z, i) = (cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 1.0));
    match k {
        0 => Cx2::new(z, o, o, z),
        1 => Cx2::new(z, -i, i, z),
        2 => Cx2::new(o, z, z, -o),
        3 => Cx2::identity(),
        _ => panic!("sigma index {k}"),
    }
}

/// Pairs `(μ, ν)` with `μ ≤ ν` in the order of the `c` components.
pub fn sym_pairs() -> [(usize, usize); 10] {
    let mut out = [(0, 0); 10];
    let mut n = 0;
    for mu in 0..4 {
        for nu in mu..4 {
            out[n] = (mu, nu);
            n += 1;
        }
    }
    out
}

fn sym_index(mu: usize, nu: usize) -> usize {
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    sym_pairs().iter().position(|&p| p == (a, b)).unwrap()
}

/// Symmetric tensor `X` with `Σ_{μ≤ν} c^{μν} C_{μν} = Σ_{μ,ν} X^{μν} P_μ P_ν`.
pub fn c_to_tensor(c: &[f64; 10]) -> Matrix4<f64> {
    let mut x = Matrix4::zeros();
    for (n, &(mu, nu)) in sym_pairs().iter().enumerate() {
        if mu == nu {
            x[(mu, mu)] = c[n];
        } else {
            x[(mu, nu)] = c[n] / 2.0;
            x[(nu, mu)] = c[n] / 2.0;
        }
    }
    x
}

pub fn tensor_to_c(x: &Matrix4<f64>) -> [f64; 10] {
    let mut c = [0.0; 10];
    for (n, &(mu, nu)) in sym_pairs().iter().enumerate() {
        c[n] = if mu == nu { x[(mu, mu)] } else { x[(mu, nu)] + x[(nu, mu)] };
    }
    c
}

fn check_det(m: &Cx2) -> Result<()> {
    let d = m.determinant();
    if (d - cx(1.0, 0.0)).norm() > DET_TOL {
        return Err(Error::NonUnitDeterminant(if d.im.abs() < DET_TOL { d.re } else { d.norm() }));
    }
    Ok(())
}

fn check_su2(r: &Cx2) -> Result<()> {
    check_det(r)?;
    let dev = (r * r.adjoint() - Cx2::identity()).norm();
    if dev > DET_TOL {
        return Err(Error::InvalidParameter(format!("R is not unitary (deviation {dev:.3e})")));
    }
    Ok(())
}

/// Lorentz matrix of `Λ`: `Λ (x^μ σ_μ) Λ† = (Λ_vec x)^μ σ_μ`.
pub fn vector_rep(l: &Cx2) -> Result<Matrix4<f64>> {
    check_det(l)?;
    Ok(vector_rep_unchecked(l))
}

fn vector_rep_unchecked(l: &Cx2) -> Matrix4<f64> {
    let ld = l.adjoint();
    Matrix4::from_fn(|mu, nu| 0.5 * (sigma(mu) * l * sigma(nu) * ld).trace().re)
}

/// Action of `Λ_vec` on the ten `c` components: `X ↦ Λ_vec X Λ_vecᵀ`.
pub fn sym_rep(l: &Cx2) -> Result<Mat10> {
    let v = vector_rep(l)?;
    Ok(sym_rep_of(&v))
}

fn sym_rep_of(v: &Matrix4<f64>) -> Mat10 {
    let mut s = Mat10::zeros();
    for col in 0..10 {
        let mut c = [0.0; 10];
        c[col] = 1.0;
        let out = tensor_to_c(&(v * c_to_tensor(&c) * v.transpose()));
        for (row, x) in out.iter().enumerate() {
            s[(row, col)] = *x;
        }
    }
    s
}

/// Rotation matrix of `R ∈ SU(2)`.
pub fn so3_rep(r: &Cx2) -> Result<Matrix3<f64>> {
    check_su2(r)?;
    Ok(so3_rep_unchecked(r))
}

fn so3_rep_unchecked(r: &Cx2) -> Matrix3<f64> {
    let rd = r.adjoint();
    Matrix3::from_fn(|j, k| 0.5 * (sigma(j) * r * sigma(k) * rd).trace().re)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binom(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Spin-`j` matrix of `R` (`two_j = 2j`), basis ordered `m = j, j-1, …, -j`.
///
/// Realized on homogeneous polynomials of degree `2j` through
/// `(D(U) f)(v) = f(Uᵀ v)` with orthonormal monomials
/// `x^{j+m} y^{j-m} / sqrt((j+m)!(j-m)!)`.
pub fn spin_rep(r: &Cx2, two_j: u32) -> Result<DMatrix<Complex64>> {
    check_su2(r)?;
    let n = two_j as usize + 1;
    let (a, b, c, d) = (r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]);
    let mut out = DMatrix::zeros(n, n);
    // column: source monomial x^p y^(2j-p) with p = j+m
    for col in 0..n {
        let p = (two_j as usize - col) as u32;
        let qd = two_j - p;
        // (a x + c y)^p (b x + d y)^q
        for s in 0..=p {
            for t in 0..=qd {
                let coeff = cx(binom(p, s) * binom(qd, t), 0.0)
                    * a.powu(s)
                    * c.powu(p - s)
                    * b.powu(t)
                    * d.powu(qd - t);
                let xp = s + t;
                let row = (two_j - xp) as usize;
                let norm = (factorial(p) * factorial(qd)).sqrt() / (factorial(xp) * factorial(two_j - xp)).sqrt();
                out[(row, col)] += coeff * norm;
            }
        }
    }
    Ok(out)
}

/// `sl(2,C)` element whose vector action is `ad L_{μν}` on translations.
pub fn lorentz_generator(mu: usize, nu: usize) -> Cx2 {
    let mut target = Matrix4::zeros();
    target[(mu, nu)] = metric(nu as u8 + 1, nu as u8 + 1) as f64;
    target[(nu, mu)] = -(metric(mu as u8 + 1, mu as u8 + 1) as f64);
    let basis: Vec<Cx2> = (0..3)
        .flat_map(|k| [sigma(k) * cx(0.5, 0.0), sigma(k) * cx(0.0, 0.5)])
        .collect();
    let images: Vec<Matrix4<f64>> = basis.iter().map(vector_derivative).collect();
    solve_generator(&basis, images.iter().map(|m| m.as_slice().to_vec()).collect(), target.as_slice())
}

/// `su(2)` element whose rotation action is `ad J_{ij}` on the internal index.
pub fn rotation_generator(i: usize, j: usize) -> Cx2 {
    let mut target = Matrix3::zeros();
    target[(i, j)] = 1.0;
    target[(j, i)] = -1.0;
    let basis: Vec<Cx2> = (0..3).map(|k| sigma(k) * cx(0.0, 0.5)).collect();
    let images: Vec<Vec<f64>> = basis
        .iter()
        .map(|z| {
            let m = Matrix3::from_fn(|a, b| 0.5 * (sigma(a) * (z * sigma(b) - sigma(b) * z)).trace().re);
            m.as_slice().to_vec()
        })
        .collect();
    solve_generator(&basis, images, target.as_slice())
}

fn vector_derivative(z: &Cx2) -> Matrix4<f64> {
    Matrix4::from_fn(|a, b| 0.5 * (sigma(a) * (z * sigma(b) + sigma(b) * z.adjoint())).trace().re)
}

fn solve_generator(basis: &[Cx2], images: Vec<Vec<f64>>, target: &[f64]) -> Cx2 {
    let rows = target.len();
    let m = DMatrix::from_fn(rows, basis.len(), |r, c| images[c][r]);
    let rhs = DVector::from_column_slice(target);
    let coeffs = m.svd(true, true).solve(&rhs, 1e-12).expect("svd solve");
    basis.iter().zip(coeffs.iter()).fold(Cx2::zeros(), |acc, (z, w)| acc + z * cx(*w, 0.0))
}

/// `β^{μν}(a, q) = θ^{μν} δ_ij (a^{iμ} q^{jν} + a^{iν} q^{jμ})`.
pub fn beta(a: &Mat34, q: &Mat34) -> [f64; 10] {
    let mut out = [0.0; 10];
    for (n, &(mu, nu)) in sym_pairs().iter().enumerate() {
        let theta = if mu == nu { 0.5 } else { 1.0 };
        let s: f64 = (0..3).map(|i| a[(i, mu)] * q[(i, nu)] + a[(i, nu)] * q[(i, mu)]).sum();
        out[n] = theta * s;
    }
    out
}

fn add10(a: &[f64; 10], b: &[f64; 10]) -> [f64; 10] {
    std::array::from_fn(|i| a[i] + b[i])
}

fn scale10(a: &[f64; 10], s: f64) -> [f64; 10] {
    std::array::from_fn(|i| a[i] * s)
}

fn apply10(m: &Mat10, c: &[f64; 10]) -> [f64; 10] {
    let v = m * SMatrix::<f64, 10, 1>::from_column_slice(c);
    std::array::from_fn(|i| v[i])
}

/// Element `(t, t′, c, a, q, Λ, R)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub t: [f64; 4],
    pub tp: [f64; 4],
    pub c: [f64; 10],
    pub a: Mat34,
    pub q: Mat34,
    pub lambda: Cx2,
    pub r: Cx2,
}

/// Element `(k, g)` of the case-(7) extension.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedGroupElement {
    pub k: f64,
    pub g: GroupElement,
}

struct Actions {
    vec: Matrix4<f64>,
    sym: Mat10,
    rot: Matrix3<f64>,
}

impl Actions {
    fn of(g: &GroupElement) -> Self {
        let vec = vector_rep_unchecked(&g.lambda);
        Self {
            sym: sym_rep_of(&vec),
            rot: so3_rep_unchecked(&g.r),
            vec,
        }
    }

    fn v4(&self, t: &[f64; 4]) -> [f64; 4] {
        let v = self.vec * nalgebra::Vector4::from_column_slice(t);
        [v[0], v[1], v[2], v[3]]
    }

    /// `(Λ ⊗ R) a = R_vec a Λ_vecᵀ`.
    fn m34(&self, a: &Mat34) -> Mat34 {
        self.rot * a * self.vec.transpose()
    }
}

fn add4(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a[i] + b[i])
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            t: [0.0; 4],
            tp: [0.0; 4],
            c: [0.0; 10],
            a: Mat34::zeros(),
            q: Mat34::zeros(),
            lambda: Cx2::identity(),
            r: Cx2::identity(),
        }
    }

    /// Checks `det Λ = 1` and `R ∈ SU(2)`.
    pub fn validate(&self) -> Result<()> {
        check_det(&self.lambda)?;
        check_su2(&self.r)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let act = Actions::of(self);
        let q2 = act.m34(&other.q);
        Self {
            t: add4(&self.t, &act.v4(&other.t)),
            tp: add4(&self.tp, &act.v4(&other.tp)),
            c: add10(&add10(&self.c, &apply10(&act.sym, &other.c)), &beta(&self.a, &q2)),
            a: self.a + act.m34(&other.a),
            q: self.q + q2,
            lambda: self.lambda * other.lambda,
            r: self.r * other.r,
        }
    }

    pub fn inverse(&self) -> Self {
        let li = self.lambda.try_inverse().expect("det 1");
        let ri = self.r.adjoint();
        let inv_act = Actions::of(&Self {
            lambda: li,
            r: ri,
            ..Self::identity()
        });
        let neg = |v: [f64; 4]| v.map(|x| -x);
        // c1 + S c2 + β(a1, -q1) = 0
        let rest = add10(&scale10(&self.c, -1.0), &beta(&self.a, &self.q));
        Self {
            t: neg(inv_act.v4(&self.t)),
            tp: neg(inv_act.v4(&self.tp)),
            c: apply10(&inv_act.sym, &rest),
            a: -inv_act.m34(&self.a),
            q: -inv_act.m34(&self.q),
            lambda: li,
            r: ri,
        }
    }

    /// Largest componentwise deviation, covering matrices included.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            d = d.max((self.t[i] - other.t[i]).abs()).max((self.tp[i] - other.tp[i]).abs());
        }
        for i in 0..10 {
            d = d.max((self.c[i] - other.c[i]).abs());
        }
        d = d.max((self.a - other.a).amax()).max((self.q - other.q).amax());
        for (x, y) in self.lambda.iter().zip(other.lambda.iter()) {
            d = d.max((x - y).norm());
        }
        for (x, y) in self.r.iter().zip(other.r.iter()) {
            d = d.max((x - y).norm());
        }
        d
    }

    /// Pseudorandom element with translation parts in `[-scale, scale]`.
    pub fn random<R: Rng>(rng: &mut R, scale: f64) -> Self {
        let mut u = || rng.gen_range(-scale..=scale);
        let t = [u(), u(), u(), u()];
        let tp = [u(), u(), u(), u()];
        let c: [f64; 10] = std::array::from_fn(|_| u());
        let a = Mat34::from_fn(|_, _| u());
        let q = Mat34::from_fn(|_, _| u());
        let z = (0..3).fold(Cx2::zeros(), |acc, k| acc + sigma(k) * cx(u() / 2.0, u() / 2.0));
        let w = (0..3).fold(Cx2::zeros(), |acc, k| acc + sigma(k) * cx(0.0, u()));
        Self {
            t,
            tp,
            c,
            a,
            q,
            lambda: z.exp(),
            r: w.exp(),
        }
    }

    /// `exp(s X)` for a basis generator `X` of the algebra (not `K`).
    pub fn exp_basis(label: &BasisLabel, s: f64) -> Option<Self> {
        let mut g = Self::identity();
        match *label {
            BasisLabel::T(mu) => g.t[mu as usize - 1] = s,
            BasisLabel::Tp(mu) => g.tp[mu as usize - 1] = s,
            BasisLabel::C(mu, nu) => g.c[sym_index(mu as usize - 1, nu as usize - 1)] = s,
            BasisLabel::A(i, mu) => g.a[(i as usize - 1, mu as usize - 1)] = s,
            BasisLabel::Q(i, mu) => g.q[(i as usize - 1, mu as usize - 1)] = s,
            BasisLabel::L(mu, nu) => g.lambda = (lorentz_generator(mu as usize - 1, nu as usize - 1) * cx(s, 0.0)).exp(),
            BasisLabel::J(i, j) => g.r = (rotation_generator(i as usize - 1, j as usize - 1) * cx(s, 0.0)).exp(),
            _ => return None,
        }
        Some(g)
    }

    /// First-order algebra coordinates of an element near the identity,
    /// indexed by `labels`.
    pub fn log_coordinates(&self, labels: &[BasisLabel]) -> Vec<f64> {
        let dv = vector_rep_unchecked(&self.lambda) - Matrix4::identity();
        let dr = so3_rep_unchecked(&self.r) - Matrix3::identity();
        labels
            .iter()
            .map(|l| match *l {
                BasisLabel::T(mu) => self.t[mu as usize - 1],
                BasisLabel::Tp(mu) => self.tp[mu as usize - 1],
                BasisLabel::C(mu, nu) => self.c[sym_index(mu as usize - 1, nu as usize - 1)],
                BasisLabel::A(i, mu) => self.a[(i as usize - 1, mu as usize - 1)],
                BasisLabel::Q(i, mu) => self.q[(i as usize - 1, mu as usize - 1)],
                // ad L_{μν} has entry g_νν at (μ, ν)
                BasisLabel::L(mu, nu) => dv[(mu as usize - 1, nu as usize - 1)] * metric(nu, nu) as f64,
                BasisLabel::J(i, j) => dr[(i as usize - 1, j as usize - 1)],
                _ => 0.0,
            })
            .collect()
    }
}

impl ExtendedGroupElement {
    pub fn identity() -> Self {
        Self {
            k: 0.0,
            g: GroupElement::identity(),
        }
    }

    /// The displayed law of the case-(7) extension.
    pub fn compose(&self, other: &Self) -> Self {
        let (g1, g2) = (&self.g, &other.g);
        let act = Actions::of(g1);
        let (ck, sk) = (other.k.cos(), other.k.sin());
        let a2 = act.m34(&g2.a);
        let q2 = act.m34(&g2.q);
        let mut c = add10(&g1.c, &apply10(&act.sym, &g2.c));
        c = add10(&c, &scale10(&beta(&g1.a, &g1.q), sk * sk));
        let diff = add10(&beta(&g1.a, &g1.a), &scale10(&beta(&g1.q, &g1.q), -1.0));
        c = add10(&c, &scale10(&diff, -0.25 * (2.0 * other.k).sin()));
        let mixed = g1.q * ck + g1.a * sk;
        c = add10(&c, &scale10(&beta(&mixed, &a2), -1.0));
        Self {
            k: self.k + other.k,
            g: GroupElement {
                t: add4(&g1.t, &act.v4(&g2.t)),
                tp: add4(&g1.tp, &act.v4(&g2.tp)),
                c,
                a: g1.a * ck - g1.q * sk + a2,
                q: mixed + q2,
                lambda: g1.lambda * g2.lambda,
                r: g1.r * g2.r,
            },
        }
    }

    /// Two-sided inverse, obtained by solving `g · g⁻¹ = e` componentwise.
    pub fn inverse(&self) -> Self {
        let g1 = &self.g;
        let k2 = -self.k;
        let (ck, sk) = (k2.cos(), k2.sin());
        let li = g1.lambda.try_inverse().expect("det 1");
        let ri = g1.r.adjoint();
        let inv_act = Actions::of(&GroupElement {
            lambda: li,
            r: ri,
            ..GroupElement::identity()
        });
        let mixed = g1.q * ck + g1.a * sk;
        let a_img = -(g1.a * ck - g1.q * sk);
        let q_img = -mixed;
        let mut rest = g1.c;
        rest = add10(&rest, &scale10(&beta(&g1.a, &g1.q), sk * sk));
        let diff = add10(&beta(&g1.a, &g1.a), &scale10(&beta(&g1.q, &g1.q), -1.0));
        rest = add10(&rest, &scale10(&diff, -0.25 * (2.0 * k2).sin()));
        rest = add10(&rest, &scale10(&beta(&mixed, &a_img), -1.0));
        let neg = |v: [f64; 4]| v.map(|x| -x);
        Self {
            k: k2,
            g: GroupElement {
                t: neg(inv_act.v4(&g1.t)),
                tp: neg(inv_act.v4(&g1.tp)),
                c: apply10(&inv_act.sym, &scale10(&rest, -1.0)),
                a: inv_act.m34(&a_img),
                q: inv_act.m34(&q_img),
                lambda: li,
                r: ri,
            },
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.k - other.k).abs().max(self.g.distance(&other.g))
    }

    pub fn random<R: Rng>(rng: &mut R, scale: f64) -> Self {
        let k = rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI);
        Self {
            k,
            g: GroupElement::random(rng, scale),
        }
    }

    pub fn exp_basis(label: &BasisLabel, s: f64) -> Option<Self> {
        match label {
            BasisLabel::K => Some(Self {
                k: s,
                g: GroupElement::identity(),
            }),
            other => GroupElement::exp_basis(other, s).map(|g| Self { k: 0.0, g }),
        }
    }

    pub fn log_coordinates(&self, labels: &[BasisLabel]) -> Vec<f64> {
        let mut v = self.g.log_coordinates(labels);
        for (x, l) in v.iter_mut().zip(labels) {
            if *l == BasisLabel::K {
                *x = self.k;
            }
        }
        v
    }
}

/// Embeds `G` into the extension at `k = 0`.
///
/// The two displayed laws order the `A` and `Q` factors oppositely, so the
/// embedding shifts `c` by `-β(a, q)`; with it, `compose` is carried exactly
/// onto `ExtendedGroupElement::compose`.
pub fn embed_in_extension(g: &GroupElement) -> ExtendedGroupElement {
    let mut h = g.clone();
    h.c = add10(&g.c, &scale10(&beta(&g.a, &g.q), -1.0));
    ExtendedGroupElement { k: 0.0, g: h }
}

/// Inverse of [`embed_in_extension`] on the `k = 0` slice.
pub fn restrict_from_extension(e: &ExtendedGroupElement) -> GroupElement {
    let mut g = e.g.clone();
    g.c = add10(&e.g.c, &beta(&e.g.a, &e.g.q));
    g
}

/// Operations shared by both group laws, for generic checks.
pub trait LieGroupLaw: Sized + Clone {
    fn identity() -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn distance(&self, other: &Self) -> f64;
    fn exp_basis(label: &BasisLabel, s: f64) -> Option<Self>;
    fn log_coordinates(&self, labels: &[BasisLabel]) -> Vec<f64>;
}

impl LieGroupLaw for GroupElement {
    fn identity() -> Self {
        GroupElement::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        GroupElement::compose(self, other)
    }
    fn inverse(&self) -> Self {
        GroupElement::inverse(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        GroupElement::distance(self, other)
    }
    fn exp_basis(label: &BasisLabel, s: f64) -> Option<Self> {
        GroupElement::exp_basis(label, s)
    }
    fn log_coordinates(&self, labels: &[BasisLabel]) -> Vec<f64> {
        GroupElement::log_coordinates(self, labels)
    }
}

impl LieGroupLaw for ExtendedGroupElement {
    fn identity() -> Self {
        ExtendedGroupElement::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        ExtendedGroupElement::compose(self, other)
    }
    fn inverse(&self) -> Self {
        ExtendedGroupElement::inverse(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        ExtendedGroupElement::distance(self, other)
    }
    fn exp_basis(label: &BasisLabel, s: f64) -> Option<Self> {
        ExtendedGroupElement::exp_basis(label, s)
    }
    fn log_coordinates(&self, labels: &[BasisLabel]) -> Vec<f64> {
        ExtendedGroupElement::log_coordinates(self, labels)
    }
}

/// Worst deviation between second-order commutators of one-parameter
/// subgroups and the structure constants of `alg`, with the pair where it
/// occurs.
pub fn bracket_deviation<G: LieGroupLaw>(alg: &LieAlgebra, eps: f64) -> (f64, Option<(usize, usize)>) {
    let labels = alg.labels();
    let n = labels.len();
    let comm = |i: usize, j: usize, s: f64, t: f64| -> Vec<f64> {
        let g = G::exp_basis(&labels[i], s).expect("group generator");
        let h = G::exp_basis(&labels[j], t).expect("group generator");
        g.compose(&h).compose(&g.inverse()).compose(&h.inverse()).log_coordinates(labels)
    };
    let mut worst = (0.0, None);
    for i in 0..n {
        for j in i + 1..n {
            let pp = comm(i, j, eps, eps);
            let mp = comm(i, j, -eps, eps);
            let pm = comm(i, j, eps, -eps);
            let mm = comm(i, j, -eps, -eps);
            let exact = alg.bracket_basis(i, j);
            for k in 0..n {
                let fd = (pp[k] - mp[k] - pm[k] + mm[k]) / (4.0 * eps * eps);
                let want = exact
                    .iter()
                    .find(|(m, _)| *m == k)
                    .map_or(0.0, |(_, c)| num_traits::ToPrimitive::to_f64(c).unwrap());
                let dev = (fd - want).abs();
                if dev > worst.0 {
                    worst = (dev, Some((i, j)));
                }
            }
        }
    }
    worst
}

/// Worst associativity and inverse deviation over seeded random triples.
pub fn law_deviation<G: LieGroupLaw>(samples: &[(G, G, G)]) -> (f64, f64) {
    let mut assoc: f64 = 0.0;
    let mut inv: f64 = 0.0;
    let e = G::identity();
    for (a, b, c) in samples {
        assoc = assoc.max(a.compose(b).compose(c).distance(&a.compose(&b.compose(c))));
        inv = inv
            .max(a.compose(&a.inverse()).distance(&e))
            .max(a.inverse().compose(a).distance(&e))
            .max(e.compose(a).distance(a))
            .max(a.compose(&e).distance(a));
    }
    (assoc, inv)
}

/// Point `ξ` with `g(ξ, ξ) = -m₀²` and `ξ⁴ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassShellPoint {
    pub xi: [f64; 4],
    pub m0: f64,
}

impl MassShellPoint {
    pub fn new(xi: [f64; 4], m0: f64) -> Result<Self> {
        if m0 <= 0.0 {
            return Err(Error::InvalidParameter(format!("m0 must be positive (got {m0})")));
        }
        let norm = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] - xi[3] * xi[3];
        let res = (norm + m0 * m0).abs() / (m0 * m0).max(xi[3] * xi[3]);
        if res > 1e-9 || xi[3] <= 0.0 {
            return Err(Error::OffShell(res));
        }
        Ok(Self { xi, m0 })
    }

    /// The point with spatial part `p`.
    pub fn from_spatial(p: [f64; 3], m0: f64) -> Result<Self> {
        let e = (m0 * m0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        Self::new([p[0], p[1], p[2], e], m0)
    }

    pub fn rest(m0: f64) -> Self {
        Self { xi: [0.0, 0.0, 0.0, m0], m0 }
    }
}

/// Point `η` on the sphere of radius `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub eta: [f64; 3],
    pub lambda: f64,
}

impl SpherePoint {
    pub fn new(eta: [f64; 3], lambda: f64) -> Result<Self> {
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!("sphere radius must be positive (got {lambda})")));
        }
        let r = (eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]).sqrt();
        let res = (r - lambda).abs() / lambda;
        if res > 1e-9 {
            return Err(Error::OffSphere(res));
        }
        Ok(Self { eta, lambda })
    }

    pub fn pole(lambda: f64) -> Self {
        Self {
            eta: [0.0, 0.0, lambda],
            lambda,
        }
    }
}

/// `A_ξ = (m₀ + ξ⁴ + ξ⃗·σ⃗) / sqrt(2 m₀ (m₀ + ξ⁴))`.
pub fn boost_section(xi: &MassShellPoint) -> Cx2 {
    let m0 = xi.m0;
    let [x1, x2, x3, x4] = xi.xi;
    let num = Cx2::identity() * cx(m0 + x4, 0.0) + sigma(0) * cx(x1, 0.0) + sigma(1) * cx(x2, 0.0) + sigma(2) * cx(x3, 0.0);
    num / cx((2.0 * m0 * (m0 + x4)).sqrt(), 0.0)
}

/// Half-angle of the cone around the antipode where the rotation section
/// is refused.
pub const ANTIPODE_CONE: f64 = 1e-6;

/// Geodesic rotation taking the pole `(0, 0, λ)` to `η`.
pub fn rotation_section(eta: &SpherePoint) -> Result<Cx2> {
    let n = eta.eta.map(|x| x / eta.lambda);
    let cos_t = n[2].clamp(-1.0, 1.0);
    let theta = cos_t.acos();
    if std::f64::consts::PI - theta < ANTIPODE_CONE {
        return Err(Error::SingularSection(format!(
            "η = {:?} lies within {ANTIPODE_CONE:e} rad of the antipode",
            eta.eta
        )));
    }
    // axis ẑ × n, normalized
    let (ax, ay) = (-n[1], n[0]);
    let s = (ax * ax + ay * ay).sqrt();
    if s == 0.0 {
        return Ok(Cx2::identity());
    }
    let (ux, uy) = (ax / s, ay / s);
    // exp(-i θ/2 u·σ) rotates by +θ about u
    let h = theta / 2.0;
    Ok(Cx2::identity() * cx(h.cos(), 0.0) - (sigma(0) * cx(ux, 0.0) + sigma(1) * cx(uy, 0.0)) * cx(0.0, h.sin()))
}

fn apply3(m: &Matrix3<f64>, v: &[f64; 3]) -> [f64; 3] {
    let r = m * nalgebra::Vector3::from_column_slice(v);
    [r[0], r[1], r[2]]
}

/// Wigner phase `φ` of `W = R_η⁻¹ A_ξ⁻¹ Λ A_{Λ⁻¹ξ} R_η′`, with `η′`
/// transported by `D(1)(A⁻¹_{Λ⁻¹ξ} Λ⁻¹ A_ξ)`.
pub fn wigner_phase(lambda: &Cx2, xi: &MassShellPoint, eta: &SpherePoint) -> Result<f64> {
    let vec = vector_rep(lambda)?;
    let li = lambda.try_inverse().expect("det 1");
    let v_inv = vec.try_inverse().expect("Lorentz matrix invertible");
    let back = v_inv * nalgebra::Vector4::from_column_slice(&xi.xi);
    let xi_back = MassShellPoint::new([back[0], back[1], back[2], back[3]], xi.m0)?;
    let a_xi = boost_section(xi);
    let a_back = boost_section(&xi_back);
    let a_xi_inv = a_xi.try_inverse().expect("det 1");
    let a_back_inv = a_back.try_inverse().expect("det 1");
    let transport = a_back_inv * li * a_xi;
    let eta_p = SpherePoint {
        eta: apply3(&so3_rep_unchecked(&transport), &eta.eta),
        lambda: eta.lambda,
    };
    let r_eta = rotation_section(eta)?;
    let r_eta_p = rotation_section(&eta_p)?;
    let w = r_eta.adjoint() * a_xi_inv * lambda * a_back * r_eta_p;
    let off = w[(0, 1)].norm().max(w[(1, 0)].norm());
    let unit = (w[(0, 0)].norm() - 1.0).abs();
    if off > 1e-8 || unit > 1e-8 {
        return Err(Error::NotInStabilizer(off.max(unit)));
    }
    let phi = 2.0 * w[(0, 0)].arg();
    Ok(if phi <= -2.0 * std::f64::consts::PI { phi + 4.0 * std::f64::consts::PI } else { phi })
}

/// Serialized form `{t, t_prime, c, a, q, lambda, r, k}` with `c` as a
/// symmetric 4×4 array and covering matrices split into real and
/// imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub t: [f64; 4],
    pub t_prime: [f64; 4],
    pub c: [[f64; 4]; 4],
    pub a: [[f64; 4]; 3],
    pub q: [[f64; 4]; 3],
    pub lambda: ComplexMatrixRecord,
    pub r: ComplexMatrixRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrixRecord {
    pub re: [[f64; 2]; 2],
    pub im: [[f64; 2]; 2],
}

impl From<&Cx2> for ComplexMatrixRecord {
    fn from(m: &Cx2) -> Self {
        Self {
            re: [[m[(0, 0)].re, m[(0, 1)].re], [m[(1, 0)].re, m[(1, 1)].re]],
            im: [[m[(0, 0)].im, m[(0, 1)].im], [m[(1, 0)].im, m[(1, 1)].im]],
        }
    }
}

impl From<&ComplexMatrixRecord> for Cx2 {
    fn from(r: &ComplexMatrixRecord) -> Self {
        Cx2::from_fn(|i, j| cx(r.re[i][j], r.im[i][j]))
    }
}

fn m34_rows(m: &Mat34) -> [[f64; 4]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|mu| m[(i, mu)]))
}

impl GroupRecord {
    pub fn from_element(g: &GroupElement, k: Option<f64>) -> Self {
        let mut c = [[0.0; 4]; 4];
        for (n, &(mu, nu)) in sym_pairs().iter().enumerate() {
            c[mu][nu] = g.c[n];
            c[nu][mu] = g.c[n];
        }
        Self {
            t: g.t,
            t_prime: g.tp,
            c,
            a: m34_rows(&g.a),
            q: m34_rows(&g.q),
            lambda: (&g.lambda).into(),
            r: (&g.r).into(),
            k,
        }
    }

    pub fn to_element(&self) -> Result<GroupElement> {
        let mut c = [0.0; 10];
        for (n, &(mu, nu)) in sym_pairs().iter().enumerate() {
            if self.c[mu][nu] != self.c[nu][mu] {
                return Err(Error::Parse(format!("c is not symmetric at ({}, {})", mu + 1, nu + 1)));
            }
            c[n] = self.c[mu][nu];
        }
        let g = GroupElement {
            t: self.t,
            tp: self.t_prime,
            c,
            a: Mat34::from_fn(|i, mu| self.a[i][mu]),
            q: Mat34::from_fn(|i, mu| self.q[i][mu]),
            lambda: (&self.lambda).into(),
            r: (&self.r).into(),
        };
        g.validate()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(a: Complex64, b: Complex64) -> Cx2 {
        Cx2::new(a, cx(0.0, 0.0), cx(0.0, 0.0), b)
    }

    #[test]
    fn boost_along_three() {
        let s = 2f64.sqrt();
        let v = vector_rep(&diag(cx(s, 0.0), cx(1.0 / s, 0.0))).unwrap();
        let x = v * nalgebra::Vector4::new(0.0, 0.0, 0.0, 1.0);
        assert_abs_diff_eq!(x[2], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(x[3], 1.25, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_unit_determinant() {
        assert!(matches!(vector_rep(&(Cx2::identity() * cx(2.0, 0.0))), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn covering_is_two_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = GroupElement::random(&mut rng, 1.0);
        let a = vector_rep(&g.lambda).unwrap();
        let b = vector_rep(&(-g.lambda)).unwrap();
        assert!((a - b).amax() < 1e-12);
        assert!((so3_rep(&-Cx2::identity()).unwrap() - Matrix3::identity()).amax() < 1e-15);
    }

    #[test]
    fn metric_is_preserved() {
        let g = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let l = vector_rep(&GroupElement::random(&mut rng, 1.0).lambda).unwrap();
            assert!((l.transpose() * g * l - g).amax() < 1e-10);
        }
    }

    #[test]
    fn spin_half_eigenvalues() {
        let th = 0.7;
        let r = diag(cx(0.0, th / 2.0).exp(), cx(0.0, -th / 2.0).exp());
        let d = spin_rep(&r, 1).unwrap();
        assert!((d[(0, 0)] - cx(0.0, th / 2.0).exp()).norm() < 1e-14);
        assert!((d[(1, 1)] - cx(0.0, -th / 2.0).exp()).norm() < 1e-14);
        assert_eq!(spin_rep(&r, 0).unwrap()[(0, 0)], cx(1.0, 0.0));
    }

    #[test]
    fn spin_one_matches_rotation_matrix_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = GroupElement::random(&mut rng, 1.0).r;
        let d = spin_rep(&r, 2).unwrap();
        let tr_d = d.trace();
        let tr_r = so3_rep(&r).unwrap().trace();
        assert!((tr_d - cx(tr_r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn representations_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let g1 = GroupElement::random(&mut rng, 1.0);
            let g2 = GroupElement::random(&mut rng, 1.0);
            let p = g1.lambda * g2.lambda;
            assert!((sym_rep(&p).unwrap() - sym_rep(&g1.lambda).unwrap() * sym_rep(&g2.lambda).unwrap()).amax() < 1e-9);
            let rp = g1.r * g2.r;
            for two_j in 0..4 {
                let lhs = spin_rep(&rp, two_j).unwrap();
                let rhs = spin_rep(&g1.r, two_j).unwrap() * spin_rep(&g2.r, two_j).unwrap();
                assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-9));
            }
        }
    }

    #[test]
    fn beta_on_unit_pair() {
        let mut g1 = GroupElement::identity();
        g1.a[(0, 0)] = 1.0;
        let mut g2 = GroupElement::identity();
        g2.q[(0, 0)] = 1.0;
        let p = g1.compose(&g2);
        assert_eq!(p.c[0], 1.0);
        assert!(p.c[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn sym_rep_matches_tensor_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g1 = GroupElement::random(&mut rng, 1.0);
        let g2 = GroupElement {
            c: std::array::from_fn(|i| i as f64 - 4.5),
            ..GroupElement::identity()
        };
        let p = GroupElement {
            lambda: g1.lambda,
            ..GroupElement::identity()
        }
        .compose(&g2);
        let v = vector_rep(&g1.lambda).unwrap();
        let direct = tensor_to_c(&(v * c_to_tensor(&g2.c) * v.transpose()));
        for i in 0..10 {
            assert_abs_diff_eq!(p.c[i], direct[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn sections() {
        assert!((boost_section(&MassShellPoint::rest(2.0)) - Cx2::identity()).norm() < 1e-15);
        let xi = MassShellPoint::new([0.0, 0.0, 0.75, 1.25], 1.0).unwrap();
        let a = boost_section(&xi);
        let s = 2f64.sqrt();
        assert!((a - diag(cx(s, 0.0), cx(1.0 / s, 0.0))).norm() < 1e-12);
        let r = rotation_section(&SpherePoint::new([1.0, 0.0, 0.0], 1.0).unwrap()).unwrap();
        let d = so3_rep(&r).unwrap();
        let img = apply3(&d, &[0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(img[0], 1.0, epsilon = 1e-12);
        assert!(matches!(
            rotation_section(&SpherePoint::new([0.0, 0.0, -1.0], 1.0).unwrap()),
            Err(Error::SingularSection(_))
        ));
        assert!(matches!(MassShellPoint::new([0.0, 0.0, 0.0, 2.0], 1.0), Err(Error::OffShell(_))));
        assert!(matches!(SpherePoint::new([0.0, 0.0, 2.0], 1.0), Err(Error::OffSphere(_))));
    }

    #[test]
    fn wigner_phase_of_diagonal_rotation() {
        let th = 1.1;
        let r = diag(cx(0.0, th / 2.0).exp(), cx(0.0, -th / 2.0).exp());
        let phi = wigner_phase(&r, &MassShellPoint::rest(1.0), &SpherePoint::pole(1.0)).unwrap();
        assert_abs_diff_eq!(phi, th, epsilon = 1e-12);
        let phi0 = wigner_phase(&Cx2::identity(), &MassShellPoint::rest(1.0), &SpherePoint::pole(1.0)).unwrap();
        assert_abs_diff_eq!(phi0, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn brackets_from_group_law() {
        let alg = crate::algebras::build_newstein();
        let (dev, pair) = bracket_deviation::<GroupElement>(&alg, 1e-3);
        assert!(dev < 1e-5, "deviation {dev} at {pair:?}");
    }

    #[test]
    fn extended_brackets_from_group_law() {
        let alg = crate::algebras::build_extended(&crate::extensions::ExtensionClass::Case7).unwrap();
        let (dev, pair) = bracket_deviation::<ExtendedGroupElement>(&alg, 1e-3);
        assert!(dev < 1e-5, "deviation {dev} at {pair:?}");
    }

    #[test]
    fn laws_are_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s: Vec<_> = (0..200)
            .map(|_| (GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0)))
            .collect();
        let (a, i) = law_deviation(&s);
        assert!(a < 1e-9 && i < 1e-9, "{a} {i}");
        let s: Vec<_> = (0..200)
            .map(|_| {
                (
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                )
            })
            .collect();
        let (a, i) = law_deviation(&s);
        assert!(a < 1e-9 && i < 1e-9, "{a} {i}");
    }

    #[test]
    fn k_zero_slice_is_the_base_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let g1 = GroupElement::random(&mut rng, 1.0);
            let g2 = GroupElement::random(&mut rng, 1.0);
            let lhs = embed_in_extension(&g1.compose(&g2));
            let rhs = embed_in_extension(&g1).compose(&embed_in_extension(&g2));
            assert!(lhs.distance(&rhs) < 1e-12);
            assert!(restrict_from_extension(&lhs).distance(&g1.compose(&g2)) < 1e-12);
        }
    }

    #[test]
    fn k_rotates_a_into_q() {
        let mut a = GroupElement::identity();
        a.a[(0, 1)] = 1.0;
        let kk = ExtendedGroupElement::exp_basis(&BasisLabel::K, std::f64::consts::FRAC_PI_2).unwrap();
        let conj = kk.compose(&ExtendedGroupElement { k: 0.0, g: a }).compose(&kk.inverse());
        assert!(conj.g.a.amax() < 1e-12);
        assert!((conj.g.q[(0, 1)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn record_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = GroupElement::random(&mut rng, 1.0);
        let rec = GroupRecord::from_element(&g, None);
        let json = serde_json::to_string(&rec).unwrap();
        let back: GroupRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_element().unwrap(), g);
    }
}
