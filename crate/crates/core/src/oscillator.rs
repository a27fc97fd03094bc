//! Internal sector of the induced representation on a truncated
//! three-dimensional oscillator basis.
//!
//! Matrices are built in the dimensionless variables `x = z / ℓ_z` with
//! `ℓ_z = m₀ / √α`, where `d𝑈̃(K) - ℓ/2` is `½(-Δ_x + x²)`. Physical operators
//! pick up powers of `ℓ_z` only through [`RepParams::length_scale`].
//!
//! Truncating at total degree `N` corrupts products on the top levels; all
//! identities are stated on the interior (degree `≤ N - 2`).

use std::collections::HashMap;
use std::io::{BufRead, Write};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{so3_rep, vector_rep, boost_section, rotation_section, MassShellPoint, SpherePoint};
use crate::lie::{metric, BasisLabel};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Representation data: mass `m₀`, orbit datum `α`, sphere radius `λ`,
/// character `ℓ`, and twice the spins `s` and `j`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RepParams {
    pub m0: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub ell: f64,
    pub two_s: i32,
    pub two_j: u32,
}

impl RepParams {
    pub fn new(m0: f64, alpha: f64, lambda: f64, ell: f64, two_s: i32, two_j: u32) -> Result<Self> {
        let p = Self { m0, alpha, lambda, ell, two_s, two_j };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("m0", self.m0), ("alpha", self.alpha), ("lambda", self.lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive and finite (got {v})")));
            }
        }
        if !self.ell.is_finite() {
            return Err(Error::InvalidParameter(format!("ell must be finite (got {})", self.ell)));
        }
        Ok(())
    }

    /// `ℓ_z = m₀ / √α`, the unit in which `z = ℓ_z x`.
    pub fn length_scale(&self) -> f64 {
        self.m0 / self.alpha.sqrt()
    }

    pub fn s(&self) -> f64 {
        self.two_s as f64 / 2.0
    }
}

impl Default for RepParams {
    fn default() -> Self {
        Self { m0: 1.0, alpha: 1.0, lambda: 1.0, ell: 0.0, two_s: 0, two_j: 0 }
    }
}

/// Occupation states `(n₁, n₂, n₃)` with `n₁ + n₂ + n₃ ≤ N`, in lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct FockBasis {
    cutoff: usize,
    states: Vec<[usize; 3]>,
    index: HashMap<[usize; 3], usize>,
}

impl FockBasis {
    pub fn new(cutoff: usize) -> Self {
        let mut states = Vec::new();
        for n1 in 0..=cutoff {
            for n2 in 0..=cutoff - n1 {
                for n3 in 0..=cutoff - n1 - n2 {
                    states.push([n1, n2, n3]);
                }
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self { cutoff, states, index }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[[usize; 3]] {
        &self.states
    }

    pub fn index_of(&self, n: [usize; 3]) -> Option<usize> {
        self.index.get(&n).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.states[i].iter().sum()
    }

    /// Indices of states of degree `≤ N - 2`.
    pub fn interior(&self) -> Vec<usize> {
        let top = self.cutoff.saturating_sub(2);
        if self.cutoff < 2 {
            return Vec::new();
        }
        (0..self.dim()).filter(|&i| self.degree(i) <= top).collect()
    }
}

/// Matrix with metadata.
#[derive(Clone, Debug)]
pub struct OscillatorOperator {
    pub matrix: CMatrix,
    pub hermitian: bool,
    pub exact_on_interior: bool,
}

impl OscillatorOperator {
    fn new(matrix: CMatrix, hermitian: bool) -> Self {
        Self { matrix, hermitian, exact_on_interior: true }
    }

    /// `ρ(X) = i·Op(X)`.
    pub fn rho(&self) -> CMatrix {
        &self.matrix * I
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_norm(&(&self.matrix - self.matrix.adjoint()))
    }
}

/// Position `x_j` and momentum `-i∂/∂x_j` in dimensionless units.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub position: [CMatrix; 3],
    pub momentum: [CMatrix; 3],
}

pub fn ladder_matrices(basis: &FockBasis) -> Ladder {
    let d = basis.dim();
    let lower = |j: usize| {
        let mut a = CMatrix::zeros(d, d);
        for (col, n) in basis.states().iter().enumerate() {
            if n[j] > 0 {
                let mut m = *n;
                m[j] -= 1;
                let row = basis.index_of(m).expect("lowered state in basis");
                a[(row, col)] = re((n[j] as f64).sqrt());
            }
        }
        a
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mk = |j: usize| {
        let a = lower(j);
        let ad = a.adjoint();
        ((&a + &ad) * re(h), (&a - &ad) * Complex64::new(0.0, -h))
    };
    let (x1, p1) = mk(0);
    let (x2, p2) = mk(1);
    let (x3, p3) = mk(2);
    Ladder { position: [x1, x2, x3], momentum: [p1, p2, p3] }
}

/// `ξ_μ = g_{μν} ξ^ν`.
pub fn lower(xi: &MassShellPoint) -> [f64; 4] {
    std::array::from_fn(|m| metric(m as u8 + 1, m as u8 + 1) as f64 * xi.xi[m])
}

/// The displayed internal generator at fixed `ξ`, as a self-adjoint operator:
/// `T′_μ = ξ_μ`, `C_{μν} = (α/m₀²) ξ_μ ξ_ν`, `A_{jμ} = (α/m₀²) z^j ξ_μ`,
/// `Q_{jμ} = i ∂/∂z^j ξ_μ`.
pub fn internal_generator(label: &BasisLabel, xi: &MassShellPoint, params: &RepParams, basis: &FockBasis) -> Result<OscillatorOperator> {
    let xl = lower(xi);
    let k = params.alpha / (params.m0 * params.m0);
    let ls = params.length_scale();
    let id = CMatrix::identity(basis.dim(), basis.dim());
    let op = match *label {
        BasisLabel::Tp(mu) => OscillatorOperator::new(id * re(xl[mu as usize - 1]), true),
        BasisLabel::C(mu, nu) => OscillatorOperator::new(id * re(k * xl[mu as usize - 1] * xl[nu as usize - 1]), true),
        BasisLabel::A(j, mu) => {
            let l = ladder_matrices(basis);
            OscillatorOperator::new(&l.position[j as usize - 1] * re(k * ls * xl[mu as usize - 1]), true)
        }
        BasisLabel::Q(j, mu) => {
            // i∂_z = -(-i∂_x)/ℓ_z
            let l = ladder_matrices(basis);
            OscillatorOperator::new(&l.momentum[j as usize - 1] * re(-xl[mu as usize - 1] / ls), true)
        }
        ref other => return Err(Error::NotInternal(other.to_string())),
    };
    Ok(op)
}

fn sum_of_squares(ms: &[CMatrix; 3]) -> CMatrix {
    ms.iter().fold(CMatrix::zeros(ms[0].nrows(), ms[0].ncols()), |acc, m| acc + m * m)
}

/// `-Δ` and `z^{(2)}` in physical units.
fn laplacian_and_radius(params: &RepParams, basis: &FockBasis) -> (CMatrix, CMatrix) {
    let l = ladder_matrices(basis);
    let ls = params.length_scale();
    (sum_of_squares(&l.momentum) * re(1.0 / (ls * ls)), sum_of_squares(&l.position) * re(ls * ls))
}

/// `½(-(m₀²/α)Δ + (α/m₀²)z^{(2)})`, the part of `d𝑈̃(K)` without `ℓ`.
pub fn oscillator_part(params: &RepParams, basis: &FockBasis) -> OscillatorOperator {
    let (neg_lap, r2) = laplacian_and_radius(params, basis);
    let k = params.alpha / (params.m0 * params.m0);
    OscillatorOperator::new((neg_lap * re(1.0 / k) + r2 * re(k)) * re(0.5), true)
}

/// `d𝑈̃(K) = ½(-(m₀²/α)Δ + (α/m₀²)z^{(2)} + ℓ)`.
pub fn hamiltonian_k(params: &RepParams, basis: &FockBasis) -> OscillatorOperator {
    let mut h = oscillator_part(params, basis);
    for i in 0..basis.dim() {
        h.matrix[(i, i)] += re(params.ell / 2.0);
    }
    h
}

fn casimir(label: fn(u8, u8) -> BasisLabel, params: &RepParams, xi: &MassShellPoint, basis: &FockBasis) -> Result<OscillatorOperator> {
    let d = basis.dim();
    let mut out = CMatrix::zeros(d, d);
    for i in 1..=3u8 {
        for mu in 1..=4u8 {
            let x = internal_generator(&label(i, mu), xi, params, basis)?.matrix;
            out -= &x * &x * re(metric(mu, mu) as f64);
        }
    }
    Ok(OscillatorOperator::new(out, true))
}

/// `M²_N = -g^{μν} δ^{ij} Q_{iμ} Q_{jν}`, assembled from the generators.
pub fn casimir_mn(params: &RepParams, xi: &MassShellPoint, basis: &FockBasis) -> Result<OscillatorOperator> {
    casimir(BasisLabel::Q, params, xi, basis)
}

/// `M²_A = -g^{μν} δ^{ij} A_{iμ} A_{jν}`, assembled from the generators.
pub fn casimir_ma(params: &RepParams, xi: &MassShellPoint, basis: &FockBasis) -> Result<OscillatorOperator> {
    casimir(BasisLabel::A, params, xi, basis)
}

/// `-m₀²Δ` and `(α²/m₀²) z^{(2)}` built directly, for comparison.
pub fn casimir_targets(params: &RepParams, basis: &FockBasis) -> (CMatrix, CMatrix) {
    let (neg_lap, r2) = laplacian_and_radius(params, basis);
    let m2 = params.m0 * params.m0;
    (neg_lap * re(m2), r2 * re(params.alpha * params.alpha / m2))
}

/// Null momentum `p = A_ξ R_η (0, 0, λ, λ)`.
pub fn null_momentum(xi: &MassShellPoint, eta: &SpherePoint) -> Result<[f64; 4]> {
    let l = boost_section(xi) * rotation_section(eta)?;
    let v = vector_rep(&l)?;
    let p0 = nalgebra::Vector4::new(0.0, 0.0, eta.lambda, eta.lambda);
    let p = v * p0;
    Ok([p[0], p[1], p[2], p[3]])
}

/// `g_{μν} p^μ p^ν` for the momentum attached to `(ξ, η)`.
pub fn free_mass_check(xi: &MassShellPoint, eta: &SpherePoint) -> Result<f64> {
    let p = null_momentum(xi, eta)?;
    Ok((0..4).map(|m| metric(m as u8 + 1, m as u8 + 1) as f64 * p[m] * p[m]).sum())
}

/// Real symmetric spectral decomposition of a Hermitian operator whose
/// matrix is real.
fn real_eigen(op: &OscillatorOperator) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let m = op.matrix.map(|z| z.re);
    SymmetricEigen::new(m)
}

fn spectral_function(op: &OscillatorOperator, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let e = real_eigen(op);
    let v = e.eigenvectors.map(re);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(e.eigenvalues.len(), e.eigenvalues.iter().map(|&x| f(x))));
    &v * d * v.adjoint()
}

/// `W(k) = exp(ik (m₀²/2α)(-Δ + (α²/m₀⁴) z^{(2)}))`.
pub fn w_operator(k: f64, params: &RepParams, basis: &FockBasis) -> OscillatorOperator {
    let h = oscillator_part(params, basis);
    let mut w = OscillatorOperator::new(spectral_function(&h, |x| (I * k * x).exp()), false);
    w.exact_on_interior = true;
    w
}

/// Eigenvalue with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Level {
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

/// Eigenvalues of `d𝑈̃(K)` on the uncorrupted levels `n ≤ N - 2`, grouped
/// within `tol`.
///
/// The operator is diagonal in total degree, so the interior block is
/// diagonalized on its own; the truncated top levels sit below some
/// interior levels and would otherwise interleave.
pub fn spectrum(params: &RepParams, basis: &FockBasis, tol: f64) -> Vec<Level> {
    let h = hamiltonian_k(params, basis);
    let idx = basis.interior();
    let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| h.matrix[(idx[r], idx[c])].re);
    let mut vals: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<Level> = Vec::new();
    for v in vals {
        match out.last_mut() {
            Some(l) if (v - l.eigenvalue).abs() <= tol => l.multiplicity += 1,
            _ => out.push(Level { eigenvalue: v, multiplicity: 1 }),
        }
    }
    out
}

/// Largest matrix element of `d𝑈̃(K)` between interior and exterior states.
pub fn interior_leakage(params: &RepParams, basis: &FockBasis) -> f64 {
    let h = hamiltonian_k(params, basis);
    let inner: std::collections::HashSet<usize> = basis.interior().into_iter().collect();
    let mut worst: f64 = 0.0;
    for &c in &inner {
        for r in (0..basis.dim()).filter(|r| !inner.contains(r)) {
            worst = worst.max(h.matrix[(r, c)].norm());
        }
    }
    worst
}

/// Internal-sector state at fixed `(ξ, η)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    pub coeffs: CVector,
    pub normalized: bool,
}

impl WaveFunction {
    pub fn new(coeffs: CVector) -> Result<Self> {
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("wave function has non-finite coefficients".into()));
        }
        Ok(Self { coeffs, normalized: false })
    }

    pub fn basis_state(basis: &FockBasis, n: [usize; 3]) -> Result<Self> {
        let i = basis
            .index_of(n)
            .ok_or_else(|| Error::InvalidParameter(format!("state {n:?} beyond cutoff {}", basis.cutoff())))?;
        let mut c = CVector::zeros(basis.dim());
        c[i] = re(1.0);
        Ok(Self { coeffs: c, normalized: true })
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        self.coeffs /= re(n);
        self.normalized = true;
        Ok(self)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, a: &CMatrix) -> Complex64 {
        self.coeffs.dotc(&(a * &self.coeffs))
    }

    /// Reads `index re im` lines; missing indices are zero, `#` starts a comment.
    pub fn read<R: BufRead>(reader: R, basis: &FockBasis) -> Result<Self> {
        let mut c = CVector::zeros(basis.dim());
        for (ln, line) in reader.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected `index re im`", ln + 1)));
            }
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what}", ln + 1));
            let i: usize = f[0].parse().map_err(|_| bad("index"))?;
            let a: f64 = f[1].parse().map_err(|_| bad("real part"))?;
            let b: f64 = f[2].parse().map_err(|_| bad("imaginary part"))?;
            if i >= basis.dim() {
                return Err(Error::Parse(format!("line {}: index {i} out of range (dim {})", ln + 1, basis.dim())));
            }
            c[i] = Complex64::new(a, b);
        }
        Self::new(c)
    }

    /// Writes every coefficient as `index re im`.
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, z) in self.coeffs.iter().enumerate() {
            writeln!(w, "{i} {:e} {:e}", z.re, z.im)?;
        }
        Ok(())
    }
}

/// `ψ(τ) = exp(-iτ d𝑈̃(K)) ψ`.
pub fn evolve(psi: &WaveFunction, tau: f64, params: &RepParams, basis: &FockBasis) -> Result<WaveFunction> {
    Propagator::new(params, basis).apply(psi, tau)
}

/// `exp(-iτ d𝑈̃(K))` with the eigendecomposition computed once.
pub struct Propagator {
    vectors: CMatrix,
    values: Vec<f64>,
}

impl Propagator {
    pub fn new(params: &RepParams, basis: &FockBasis) -> Self {
        let e = real_eigen(&hamiltonian_k(params, basis));
        Propagator { vectors: e.eigenvectors.map(re), values: e.eigenvalues.iter().copied().collect() }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn matrix(&self, tau: f64) -> CMatrix {
        let d = CVector::from_iterator(self.dim(), self.values.iter().map(|&x| (-I * tau * x).exp()));
        &self.vectors * CMatrix::from_diagonal(&d) * self.vectors.adjoint()
    }

    pub fn apply(&self, psi: &WaveFunction, tau: f64) -> Result<WaveFunction> {
        if psi.coeffs.len() != self.dim() {
            return Err(Error::InvalidParameter(format!("state has {} coefficients, basis has {}", psi.coeffs.len(), self.dim())));
        }
        let mut c = self.vectors.adjoint() * &psi.coeffs;
        for (z, &x) in c.iter_mut().zip(&self.values) {
            *z *= (-I * tau * x).exp();
        }
        Ok(WaveFunction { coeffs: &self.vectors * c, normalized: psi.normalized })
    }
}

/// Largest entry of `a - b` over interior columns.
pub fn interior_deviation(a: &CMatrix, b: &CMatrix, basis: &FockBasis) -> f64 {
    basis
        .interior()
        .iter()
        .map(|&c| (a.column(c) - b.column(c)).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_norm<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<Complex64, R, C>>(m: &nalgebra::Matrix<Complex64, R, C, S>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `[a, b]`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Rotation part of `R` on the `z` variables.
pub fn rotate_z(r: &crate::group::Cx2, z: &[f64; 3]) -> Result<[f64; 3]> {
    let m = so3_rep(r)?;
    let v = m * nalgebra::Vector3::from_column_slice(z);
    Ok([v[0], v[1], v[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> FockBasis {
        FockBasis::new(6)
    }

    #[test]
    fn basis_dimension_and_bijection() {
        for n in 0..8 {
            let b = FockBasis::new(n);
            assert_eq!(b.dim(), (n + 1) * (n + 2) * (n + 3) / 6);
            for (i, s) in b.states().iter().enumerate() {
                assert_eq!(b.index_of(*s), Some(i));
            }
        }
    }

    #[test]
    fn position_has_zero_diagonal_and_couples_neighbours() {
        let b = basis();
        let l = ladder_matrices(&b);
        let g = b.index_of([0, 0, 0]).unwrap();
        let e1 = b.index_of([1, 0, 0]).unwrap();
        assert!(l.position[0][(g, e1)].norm() > 0.5);
        for j in 0..3 {
            assert!(max_norm(&l.position[j].diagonal()) == 0.0);
        }
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let b = basis();
        let l = ladder_matrices(&b);
        let id = CMatrix::identity(b.dim(), b.dim());
        for j in 0..3 {
            for k in 0..3 {
                let c = commutator(&l.position[j], &l.momentum[k]);
                let want = if j == k { &id * I } else { CMatrix::zeros(b.dim(), b.dim()) };
                assert!(interior_deviation(&c, &want, &b) < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_ladders() {
        let b = basis();
        let l = ladder_matrices(&b);
        for j in 0..3 {
            assert!(max_norm(&(&l.position[j] - l.position[j].adjoint())) < 1e-12);
            assert!(max_norm(&(&l.momentum[j] - l.momentum[j].adjoint())) < 1e-12);
        }
    }

    #[test]
    fn oscillator_diagonal_in_degree() {
        let b = basis();
        let l = ladder_matrices(&b);
        let h = sum_of_squares(&l.position) + sum_of_squares(&l.momentum);
        for c in b.interior() {
            for r in 0..b.dim() {
                let want = if r == c { 2.0 * b.degree(c) as f64 + 3.0 } else { 0.0 };
                assert!((h[(r, c)] - re(want)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn t_prime_four_at_rest_is_minus_m0() {
        let p = RepParams::new(2.0, 0.7, 1.0, 0.0, 0, 0).unwrap();
        let b = FockBasis::new(2);
        let op = internal_generator(&BasisLabel::Tp(4), &MassShellPoint::rest(2.0), &p, &b).unwrap();
        assert!(max_norm(&(op.matrix.clone() - CMatrix::identity(b.dim(), b.dim()) * re(-2.0))) < 1e-15);
    }

    #[test]
    fn external_label_rejected() {
        let b = FockBasis::new(2);
        let r = internal_generator(&BasisLabel::L(1, 2), &MassShellPoint::rest(1.0), &RepParams::default(), &b);
        assert!(matches!(r, Err(Error::NotInternal(_))));
    }

    #[test]
    fn w_at_zero_is_identity() {
        let b = basis();
        let w = w_operator(0.0, &RepParams::default(), &b);
        assert!(max_norm(&(w.matrix - CMatrix::identity(b.dim(), b.dim()))) < 1e-12);
    }

    #[test]
    fn wavefunction_text_round_trip() {
        let b = FockBasis::new(3);
        let c = CVector::from_fn(b.dim(), |i, _| Complex64::new(i as f64 * 0.1, -(i as f64) / 7.0));
        let psi = WaveFunction::new(c).unwrap();
        let mut buf = Vec::new();
        psi.write(&mut buf).unwrap();
        let back = WaveFunction::read(std::io::Cursor::new(buf), &b).unwrap();
        assert_eq!(back.coeffs, psi.coeffs);
    }

    #[test]
    fn wavefunction_rejects_bad_index() {
        let b = FockBasis::new(1);
        let r = WaveFunction::read(std::io::Cursor::new("9 1 0\n"), &b);
        assert!(matches!(r, Err(Error::Parse(_))));
    }

    #[test]
    fn params_validation() {
        assert!(RepParams::new(0.0, 1.0, 1.0, 0.0, 0, 0).is_err());
        assert!(RepParams::new(1.0, -1.0, 1.0, 0.0, 0, 0).is_err());
        assert!(RepParams::new(1.0, 1.0, 0.0, 0.0, 0, 0).is_err());
    }
}
