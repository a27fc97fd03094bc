//! The induced representation on sampled functions of `(ξ, η, z)`, the
//! printed infinitesimal generators as first-order differential operators,
//! and a finite-difference oracle comparing the two.
//!
//! Coordinates are ambient: `ξ ∈ ℝ⁴`, `η ∈ ℝ³`, `z ∈ ℝ³`, flattened in that
//! order. The representation is evaluated in the chart of the extended law
//! (see [`embed_in_extension`]); its phase pairs `q` of the left factor with
//! `a` of the right one, which is the ordering used there.

use nalgebra::Vector4;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    boost_section, embed_in_extension, so3_rep, spin_rep, sym_pairs, vector_rep, wigner_phase, Cx2, GroupElement,
    MassShellPoint, SpherePoint,
};
use crate::lie::{metric, BasisLabel};
use crate::oscillator::{lower, null_momentum, CMatrix, CVector, RepParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn gm(mu: usize) -> f64 {
    metric(mu as u8 + 1, mu as u8 + 1) as f64
}

/// Point `(ξ, η, z)` of the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub xi: MassShellPoint,
    pub eta: SpherePoint,
    pub z: [f64; 3],
}

impl SamplePoint {
    pub fn new(xi: MassShellPoint, eta: SpherePoint, z: [f64; 3]) -> Self {
        Self { xi, eta, z }
    }

    /// Random point with `|ξ⃗| ≤ m₀`, `η` outside a cap around the antipode
    /// and `|z^j| ≤ 1`.
    pub fn random<R: Rng>(rng: &mut R, params: &RepParams) -> Self {
        let m0 = params.m0;
        let p = [0; 3].map(|_| rng.gen_range(-0.6..0.6) * m0);
        let xi = MassShellPoint::from_spatial(p, m0).expect("constructed on shell");
        let eta = loop {
            let v = [0; 3].map(|_| rng.gen_range(-1.0..1.0f64));
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.2 && n <= 1.0 && v[2] / n > -0.8 {
                break SpherePoint { eta: v.map(|x| x / n * params.lambda), lambda: params.lambda };
            }
        };
        let z = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        Self { xi, eta, z }
    }

    pub fn coords(&self) -> [f64; 10] {
        let mut c = [0.0; 10];
        c[..4].copy_from_slice(&self.xi.xi);
        c[4..7].copy_from_slice(&self.eta.eta);
        c[7..].copy_from_slice(&self.z);
        c
    }

    /// Unchecked inverse of [`coords`](Self::coords); used for
    /// finite-difference stencils that leave the orbit.
    pub fn from_coords(c: &[f64; 10], m0: f64, lambda: f64) -> Self {
        Self {
            xi: MassShellPoint { xi: [c[0], c[1], c[2], c[3]], m0 },
            eta: SpherePoint { eta: [c[4], c[5], c[6]], lambda },
            z: [c[7], c[8], c[9]],
        }
    }
}

/// The action of `Λ⁻¹`, `R⁻¹` and the `q`-shift on a point: the argument at
/// which `F` is evaluated.
fn pull_back(g: &GroupElement, x: &SamplePoint) -> Result<SamplePoint> {
    let li = g.lambda.try_inverse().ok_or(Error::NonUnitDeterminant(0.0))?;
    let v_inv = vector_rep(&li)?;
    let xb = v_inv * Vector4::from_column_slice(&x.xi.xi);
    let xi_back = MassShellPoint { xi: [xb[0], xb[1], xb[2], xb[3]], m0: x.xi.m0 };
    let transport = boost_section(&xi_back).try_inverse().expect("det 1") * li * boost_section(&x.xi);
    let e = so3_rep(&su2_part(&transport)?)? * nalgebra::Vector3::from_column_slice(&x.eta.eta);
    let eta_p = SpherePoint { eta: [e[0], e[1], e[2]], lambda: x.eta.lambda };
    let xl = lower(&x.xi);
    let shifted: [f64; 3] = std::array::from_fn(|i| x.z[i] - (0..4).map(|nu| xl[nu] * g.q[(i, nu)]).sum::<f64>());
    let rot = so3_rep(&g.r)?;
    let zp = rot.transpose() * nalgebra::Vector3::from_column_slice(&shifted);
    Ok(SamplePoint { xi: xi_back, eta: eta_p, z: [zp[0], zp[1], zp[2]] })
}

/// Projects a numerically unitary matrix onto `SU(2)` after checking it.
fn su2_part(m: &Cx2) -> Result<Cx2> {
    let dev = (m * m.adjoint() - Cx2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > 1e-8 {
        return Err(Error::NotInStabilizer(dev));
    }
    Ok(*m)
}

/// Exponent `⟨p,t⟩ + ⟨ξ,t′⟩ + ⟨b,a⟩₁ + ⟨D,c⟩₂` with `b = (α/m₀²) ξ ⊗ z` and
/// `D = (α/m₀²) ξ ⊗ ξ`, using the extended-law chart for `c`.
fn phase_exponent(g: &GroupElement, x: &SamplePoint, params: &RepParams) -> Result<f64> {
    let h = embed_in_extension(g).g;
    let p = null_momentum(&x.xi, &x.eta)?;
    let xl = lower(&x.xi);
    let k = params.alpha / (params.m0 * params.m0);
    let pt: f64 = (0..4).map(|m| gm(m) * p[m] * h.t[m]).sum();
    let xt: f64 = (0..4).map(|m| xl[m] * h.tp[m]).sum();
    let ba: f64 = (0..3).map(|i| x.z[i] * (0..4).map(|m| xl[m] * h.a[(i, m)]).sum::<f64>()).sum::<f64>() * k;
    let dc: f64 = sym_pairs().iter().enumerate().map(|(n, &(mu, nu))| xl[mu] * xl[nu] * h.c[n]).sum::<f64>() * k;
    Ok(pt + xt + ba + dc)
}

/// `(U(g)F)(x)`.
pub fn iur_eval<F>(g: &GroupElement, f: &F, x: &SamplePoint, params: &RepParams) -> Result<CVector>
where
    F: Fn(&SamplePoint) -> Result<CVector> + ?Sized,
{
    let phi = wigner_phase(&g.lambda, &x.xi, &x.eta)?;
    let theta = phase_exponent(g, x, params)? + params.s() * phi;
    let y = pull_back(g, x)?;
    let d = spin_rep(&g.r, params.two_j)?;
    Ok(d * f(&y)? * (I * theta).exp())
}

/// `U(g)F` at each of `points`.
pub fn iur_apply<F>(g: &GroupElement, f: &F, points: &[SamplePoint], params: &RepParams) -> Result<Vec<CVector>>
where
    F: Fn(&SamplePoint) -> Result<CVector> + Sync + ?Sized,
{
    points.par_iter().map(|x| iur_eval(g, f, x, params)).collect()
}

/// A first-order operator `scalar + prefactor·(field·∇) + spin`.
#[derive(Clone, Debug)]
pub struct FieldOperator {
    pub scalar: Complex64,
    pub prefactor: Complex64,
    pub field: [f64; 10],
    pub spin: Option<CMatrix>,
}

impl FieldOperator {
    fn scalar(v: f64) -> Self {
        Self { scalar: Complex64::new(v, 0.0), prefactor: I, field: [0.0; 10], spin: None }
    }

    fn negate(mut self) -> Self {
        self.scalar = -self.scalar;
        self.prefactor = -self.prefactor;
        self.spin = self.spin.map(|m| -m);
        self
    }

    /// The same operator with the sign of its derivative part reversed.
    pub fn flip_derivative(mut self) -> Self {
        self.prefactor = -self.prefactor;
        self
    }

    /// `(Op F)(x)`, with the directional derivative by fourth-order central
    /// differences of step `h` in ambient coordinates.
    pub fn apply<F>(&self, f: &F, x: &SamplePoint, h: f64) -> Result<CVector>
    where
        F: Fn(&SamplePoint) -> Result<CVector> + ?Sized,
    {
        let c = x.coords();
        let at = |s: f64| {
            let y: [f64; 10] = std::array::from_fn(|i| c[i] + s * self.field[i]);
            f(&SamplePoint::from_coords(&y, x.xi.m0, x.eta.lambda))
        };
        let f0 = f(x)?;
        let mut out = &f0 * self.scalar;
        if self.field.iter().any(|v| *v != 0.0) {
            let d = (at(-2.0 * h)? - at(2.0 * h)? + (at(h)? - at(-h)?) * Complex64::new(8.0, 0.0)) / Complex64::new(12.0 * h, 0.0);
            out += d * self.prefactor;
        }
        if let Some(s) = &self.spin {
            out += s * &f0;
        }
        Ok(out)
    }
}

/// Hermitian spin matrices `S¹, S², S³` of `D(j)`, defined by
/// `D(j)(exp(-iθσ_l/2)) = exp(-iθ S^l)`.
pub fn spin_generators(two_j: u32) -> [CMatrix; 3] {
    let h = 1e-5;
    std::array::from_fn(|l| {
        let gen = crate::group::sigma(l) * Complex64::new(0.0, -0.5);
        let at = |t: f64| spin_rep(&(gen * Complex64::new(t, 0.0)).exp(), two_j).expect("su2");
        let d = (at(-2.0 * h) - at(2.0 * h) + (at(h) - at(-h)) * Complex64::new(8.0, 0.0)) / Complex64::new(12.0 * h, 0.0);
        d * I
    })
}

/// Which version of the printed list to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorVariant {
    /// The formulas exactly as displayed.
    Printed,
    /// `L_{24}` with its `η`-coefficients re-derived from the Wigner rotation
    /// `ω = ξ⃗ × e₂ / (ξ⁴ + m₀)` and the factor `i` restored; identical to
    /// `Printed` for every other generator.
    Rederived,
}

fn rot_field_xi(l: usize, x: &[f64; 10]) -> [f64; 10] {
    let mut f = [0.0; 10];
    cross_field(l, &x[0..3], &mut f, 0);
    f
}

/// Components of `(v ∧ ∂/∂v)^l = ε_{lab} v^a ∂_b` written into `out[off..off+3]`.
fn cross_field(l: usize, v: &[f64], out: &mut [f64; 10], off: usize) {
    let (a, b) = ((l + 1) % 3, (l + 2) % 3);
    out[off + b] += v[a];
    out[off + a] -= v[b];
}

/// The displayed generator for `label` at `x`, in the index order of the
/// algebra basis (`L_{13} = -L_{31}`, `J_{13} = -J_{31}`).
pub fn printed_generator(label: &BasisLabel, x: &SamplePoint, params: &RepParams, variant: GeneratorVariant) -> Result<FieldOperator> {
    let xl = lower(&x.xi);
    let c = x.coords();
    let k = params.alpha / (params.m0 * params.m0);
    let lam = params.lambda;
    let s = params.s();
    let [x1, x2, x3, x4] = x.xi.xi;
    let [e1, e2, e3] = x.eta.eta;
    let m0 = params.m0;
    let op = match *label {
        BasisLabel::T(mu) => {
            let p = null_momentum(&x.xi, &x.eta)?;
            FieldOperator::scalar(gm(mu as usize - 1) * p[mu as usize - 1])
        }
        BasisLabel::Tp(mu) => FieldOperator::scalar(xl[mu as usize - 1]),
        BasisLabel::C(mu, nu) => FieldOperator::scalar(k * xl[mu as usize - 1] * xl[nu as usize - 1]),
        BasisLabel::A(j, mu) => FieldOperator::scalar(k * x.z[j as usize - 1] * xl[mu as usize - 1]),
        BasisLabel::Q(j, mu) => {
            let mut f = [0.0; 10];
            f[7 + j as usize - 1] = xl[mu as usize - 1];
            FieldOperator { scalar: 0.0.into(), prefactor: I, field: f, spin: None }
        }
        BasisLabel::J(i, j) => {
            let (l, sign) = match (i, j) {
                (2, 3) => (0, 1.0),
                (1, 3) => (1, -1.0),
                (1, 2) => (2, 1.0),
                _ => return Err(Error::InvalidParameter(format!("no generator J{i}{j}"))),
            };
            let mut f = [0.0; 10];
            cross_field(l, &x.z, &mut f, 7);
            let op = FieldOperator {
                scalar: 0.0.into(),
                prefactor: I,
                field: f,
                spin: Some(spin_generators(params.two_j)[l].clone()),
            };
            if sign < 0.0 {
                op.negate()
            } else {
                op
            }
        }
        BasisLabel::L(a, b) if b != 4 => {
            let (l, sign, mult) = match (a, b) {
                (2, 3) => (0, 1.0, s * e1 / (lam + e3)),
                (1, 3) => (1, -1.0, s * e2 / (lam + e3)),
                (1, 2) => (2, 1.0, s),
                _ => return Err(Error::InvalidParameter(format!("no generator L{a}{b}"))),
            };
            let mut f = rot_field_xi(l, &c);
            cross_field(l, &c[4..7], &mut f, 4);
            let op = FieldOperator { scalar: mult.into(), prefactor: I, field: f, spin: None };
            if sign < 0.0 {
                op.negate()
            } else {
                op
            }
        }
        BasisLabel::L(a, 4) => {
            let den = (lam + e3) * (m0 + x4);
            let w = x4 + m0;
            let mut f = [0.0; 10];
            let mut prefactor = I;
            let mult = match a {
                1 => {
                    f[4] = (x3 * e3 + x2 * e2) / w;
                    f[5] = -e1 * x2 / w;
                    f[6] = -e1 * x3 / w;
                    s * (e2 * x3 - x2 * (lam + e3)) / den
                }
                2 => {
                    match variant {
                        GeneratorVariant::Printed => {
                            f[4] = -(x1 * e2 + x1 * e2) / w;
                            f[5] = (e1 + x1 + x3 * e3) / w;
                            prefactor = Complex64::new(1.0, 0.0);
                        }
                        GeneratorVariant::Rederived => {
                            f[4] = -x1 * e2 / w;
                            f[5] = (x1 * e1 + x3 * e3) / w;
                        }
                    }
                    f[6] = -e2 * x3 / w;
                    s * (-e1 * x3 + x1 * (lam + e3)) / den
                }
                3 => {
                    f[4] = -e3 * x1 / w;
                    f[5] = -e3 * x2 / w;
                    f[6] = (e1 * x1 + e2 * x2) / w;
                    s * (e1 * x2 - x1 * e2) / den
                }
                _ => return Err(Error::InvalidParameter(format!("no generator L{a}4"))),
            };
            f[a as usize - 1] += x4;
            f[3] += c[a as usize - 1];
            FieldOperator { scalar: mult.into(), prefactor, field: f, spin: None }
        }
        ref other => return Err(Error::InvalidParameter(format!("no printed generator for {other}"))),
    };
    Ok(op)
}

/// The external generators `L_{μν}`, `T_μ`, `J_{ij}` at `x`.
pub fn external_vector_fields(x: &SamplePoint, params: &RepParams, variant: GeneratorVariant) -> Result<Vec<(BasisLabel, FieldOperator)>> {
    if (x.eta.eta[2] + params.lambda).abs() < 1e-9 * params.lambda {
        return Err(Error::SingularSection(format!("η³ = -λ at {:?}", x.eta.eta)));
    }
    let mut labels = Vec::new();
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        labels.push(BasisLabel::L(a, b));
    }
    labels.extend((1..=4).map(BasisLabel::T));
    labels.extend([(1, 2), (1, 3), (2, 3)].map(|(i, j)| BasisLabel::J(i, j)));
    labels.into_iter().map(|l| printed_generator(&l, x, params, variant).map(|op| (l, op))).collect()
}

/// Outcome of comparing one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Match,
    /// Agrees once the sign of the derivative part is reversed.
    DerivativeSignReversed,
    /// Disagrees as printed but agrees after the re-derivation.
    SuspectedTypo,
    Mismatch,
}

/// Per-generator discrepancy. `rederived_deviation` (for `L_{24}` only)
/// compares the re-derived coefficients with the derivative sign reversed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub generator: String,
    pub printed_deviation: f64,
    pub derivative_reversed_deviation: f64,
    pub rederived_deviation: Option<f64>,
    pub status: OracleStatus,
}

/// Test function: a quadratic polynomial in the ambient coordinates in each
/// spin component, with seeded coefficients.
#[derive(Clone, Debug)]
pub struct PolyTestFunction {
    components: Vec<(Complex64, [Complex64; 10], Vec<Complex64>)>,
}

impl PolyTestFunction {
    pub fn random<R: Rng>(rng: &mut R, two_j: u32) -> Self {
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let components = (0..=two_j)
            .map(|_| (c(), std::array::from_fn(|_| c()), (0..55).map(|_| c() * 0.5).collect()))
            .collect();
        Self { components }
    }

    pub fn eval(&self, x: &SamplePoint) -> CVector {
        let v = x.coords();
        CVector::from_iterator(
            self.components.len(),
            self.components.iter().map(|(c0, lin, quad)| {
                let mut s = *c0;
                let mut n = 0;
                for i in 0..10 {
                    s += lin[i] * v[i];
                    for j in i..10 {
                        s += quad[n] * v[i] * v[j];
                        n += 1;
                    }
                }
                s
            }),
        )
    }
}

fn rel_dev(a: &CVector, b: &CVector) -> f64 {
    let scale = a.norm().max(b.norm()).max(1.0);
    (a - b).norm() / scale
}

/// Central difference `(d/ds) U(exp sX) F` at `x`, Richardson-extrapolated.
pub fn generator_derivative<F>(label: &BasisLabel, f: &F, x: &SamplePoint, params: &RepParams, h: f64) -> Result<CVector>
where
    F: Fn(&SamplePoint) -> Result<CVector> + ?Sized,
{
    let u = |s: f64| -> Result<CVector> {
        let g = GroupElement::exp_basis(label, s).ok_or_else(|| Error::InvalidParameter(format!("no one-parameter subgroup for {label}")))?;
        iur_eval(&g, f, x, params)
    };
    let d = |h: f64| -> Result<CVector> { Ok((u(h)? - u(-h)?) / Complex64::new(2.0 * h, 0.0)) };
    let (d1, d2) = (d(h)?, d(h / 2.0)?);
    Ok((d2 * Complex64::new(4.0, 0.0) - d1) / Complex64::new(3.0, 0.0))
}

/// Compares `(d/ds)|₀ U(exp sX)F` with `i·Op(X)F` for every generator of the
/// algebra over seeded points and test functions.
pub fn generator_oracle<R: Rng>(labels: &[BasisLabel], params: &RepParams, rng: &mut R, points: usize, functions: usize, tol: f64) -> Result<Vec<OracleRow>> {
    let pts: Vec<SamplePoint> = (0..points).map(|_| SamplePoint::random(rng, params)).collect();
    let fns: Vec<PolyTestFunction> = (0..functions).map(|_| PolyTestFunction::random(rng, params.two_j)).collect();
    labels
        .par_iter()
        .map(|label| {
            let mut dev = [0.0f64; 3];
            for tf in &fns {
                let f = |y: &SamplePoint| -> Result<CVector> { Ok(tf.eval(y)) };
                for x in &pts {
                    let lhs = generator_derivative(label, &f, x, params, 1e-3)?;
                    let printed = printed_generator(label, x, params, GeneratorVariant::Printed)?;
                    let flipped = printed.clone().flip_derivative().apply(&f, x, 1e-4)? * I;
                    let printed = printed.apply(&f, x, 1e-4)? * I;
                    let rederived = printed_generator(label, x, params, GeneratorVariant::Rederived)?.flip_derivative().apply(&f, x, 1e-4)? * I;
                    dev[0] = dev[0].max(rel_dev(&lhs, &printed));
                    dev[1] = dev[1].max(rel_dev(&lhs, &flipped));
                    dev[2] = dev[2].max(rel_dev(&lhs, &rederived));
                }
            }
            let differs = matches!(label, BasisLabel::L(2, 4));
            let status = if dev[0] <= tol {
                OracleStatus::Match
            } else if dev[1] <= tol {
                OracleStatus::DerivativeSignReversed
            } else if differs && dev[2] <= tol {
                OracleStatus::SuspectedTypo
            } else {
                OracleStatus::Mismatch
            };
            Ok(OracleRow {
                generator: label.to_string(),
                printed_deviation: dev[0],
                derivative_reversed_deviation: dev[1],
                rederived_deviation: differs.then_some(dev[2]),
                status,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> RepParams {
        RepParams::new(1.3, 0.8, 0.9, 0.0, 1, 1).unwrap()
    }

    #[test]
    fn identity_leaves_function_unchanged() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let tf = PolyTestFunction::random(&mut rng, p.two_j);
        let f = |y: &SamplePoint| -> Result<CVector> { Ok(tf.eval(y)) };
        for _ in 0..10 {
            let x = SamplePoint::random(&mut rng, &p);
            let v = iur_eval(&GroupElement::identity(), &f, &x, &p).unwrap();
            assert!((v - tf.eval(&x)).norm() < 1e-12);
        }
    }

    #[test]
    fn pure_t_prime_is_a_phase() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let tf = PolyTestFunction::random(&mut rng, p.two_j);
        let f = |y: &SamplePoint| -> Result<CVector> { Ok(tf.eval(y)) };
        let mut g = GroupElement::identity();
        g.tp = [0.3, -0.2, 0.5, 0.7];
        let x = SamplePoint::random(&mut rng, &p);
        let xl = lower(&x.xi);
        let ph: f64 = (0..4).map(|m| xl[m] * g.tp[m]).sum();
        let v = iur_eval(&g, &f, &x, &p).unwrap();
        assert!((v - tf.eval(&x) * (I * ph).exp()).norm() < 1e-12);
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tf = PolyTestFunction::random(&mut rng, p.two_j);
        let f = |y: &SamplePoint| -> Result<CVector> { Ok(tf.eval(y)) };
        for _ in 0..5 {
            let g1 = GroupElement::random(&mut rng, 0.4);
            let g2 = GroupElement::random(&mut rng, 0.4);
            let g12 = g1.compose(&g2);
            let inner = |y: &SamplePoint| iur_eval(&g2, &f, y, &p);
            for _ in 0..5 {
                let x = SamplePoint::random(&mut rng, &p);
                let a = iur_eval(&g1, &inner, &x, &p).unwrap();
                let b = iur_eval(&g12, &f, &x, &p).unwrap();
                assert!(rel_dev(&a, &b) < 1e-9, "{}", rel_dev(&a, &b));
            }
        }
    }

    #[test]
    fn eta_parts_are_tangent() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let x = SamplePoint::random(&mut rng, &p);
            for (label, op) in external_vector_fields(&x, &p, GeneratorVariant::Rederived).unwrap() {
                let dot: f64 = (0..3).map(|i| x.eta.eta[i] * op.field[4 + i]).sum();
                assert!(dot.abs() < 1e-9, "{label}: {dot}");
            }
        }
    }

    #[test]
    fn l12_multiplier_is_s() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = SamplePoint::random(&mut rng, &p);
        let op = printed_generator(&BasisLabel::L(1, 2), &x, &p, GeneratorVariant::Printed).unwrap();
        assert_eq!(op.scalar, Complex64::new(0.5, 0.0));
    }

    #[test]
    fn singular_chart_rejected() {
        let p = params();
        let x = SamplePoint::new(MassShellPoint::rest(p.m0), SpherePoint { eta: [0.0, 0.0, -p.lambda], lambda: p.lambda }, [0.0; 3]);
        assert!(matches!(external_vector_fields(&x, &p, GeneratorVariant::Printed), Err(Error::SingularSection(_))));
    }
}
