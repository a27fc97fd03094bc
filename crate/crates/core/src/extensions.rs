//! Relativistic-invariant extensions by a generator `K`.
//!
//! `ad K` acts on every `(A_{i rho}, Q_{i rho})` plane by the same real
//! 2x2 matrix `L = [[beta, beta'], [gamma, gamma']]` (column 1 is the image
//! of `A`, column 2 the image of `Q`, in `(A, Q)` coordinates) and on `C` by
//! `tr L`. Extensions are classified by the real Jordan type of `L` after
//! the positive rescaling `K -> K / s`.

use std::fmt;

use nalgebra::{DMatrix, Matrix2};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebras::build_newstein;
use crate::error::{Error, Result};
use crate::lie::{int, BasisLabel, LieAlgebra, Scalar};
use crate::linalg::RatMatrix;

/// One of the nine canonical extensions, with exact parameters.
///
/// `zeta2` is the square `zeta^2`. Angles are carried as an exact point
/// `(cos phi, sin phi)` on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionClass {
    Case1,
    Case2,
    Case3 { zeta2: Scalar },
    Case4 { zeta2: Scalar },
    Case5 { zeta2: Scalar },
    Case6,
    Case7,
    /// As printed: `[K, A] = cos A - sin Q`, `[K, Q] = Q`, `[K, C] = 2 C`.
    Case8 { cos: Scalar, sin: Scalar },
    Case9 { cos: Scalar, sin: Scalar },
}

impl ExtensionClass {
    pub fn case_id(&self) -> u8 {
        match self {
            ExtensionClass::Case1 => 1,
            ExtensionClass::Case2 => 2,
            ExtensionClass::Case3 { .. } => 3,
            ExtensionClass::Case4 { .. } => 4,
            ExtensionClass::Case5 { .. } => 5,
            ExtensionClass::Case6 => 6,
            ExtensionClass::Case7 => 7,
            ExtensionClass::Case8 { .. } => 8,
            ExtensionClass::Case9 { .. } => 9,
        }
    }

    /// Parses `<case>[:<params>]`: cases 3-5 take `zeta^2`, cases 8 and 9
    /// take `cos,sin`, all as exact rationals. Missing parameters fall back
    /// to the sample values.
    pub fn parse(s: &str) -> Result<Self> {
        let (case, params) = match s.split_once(':') {
            Some((c, p)) => (c.trim(), Some(p)),
            None => (s.trim(), None),
        };
        let id: u8 = case.parse().map_err(|_| Error::Parse(format!("bad case '{case}'")))?;
        let sample = Self::samples()
            .into_iter()
            .find(|c| c.case_id() == id)
            .ok_or_else(|| Error::InvalidParameter(format!("no case {id}; cases are 1-9")))?;
        let Some(params) = params else { return Ok(sample) };
        let vals = params.split(',').map(crate::lie::parse_scalar).collect::<Result<Vec<_>>>()?;
        let arity = |n: usize| {
            if vals.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("case {id} takes {n} parameter(s), got {}", vals.len())))
            }
        };
        let cls = match id {
            3..=5 => {
                arity(1)?;
                let zeta2 = vals[0].clone();
                match id {
                    3 => Self::Case3 { zeta2 },
                    4 => Self::Case4 { zeta2 },
                    _ => Self::Case5 { zeta2 },
                }
            }
            8 | 9 => {
                arity(2)?;
                let (cos, sin) = (vals[0].clone(), vals[1].clone());
                if id == 8 {
                    Self::Case8 { cos, sin }
                } else {
                    Self::Case9 { cos, sin }
                }
            }
            _ => {
                arity(0)?;
                sample
            }
        };
        cls.validate()?;
        Ok(cls)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            ExtensionClass::Case3 { zeta2 } => {
                if !zeta2.is_positive() || *zeta2 == int(1) {
                    return bad(format!("case 3 needs zeta^2 > 0, zeta^2 != 1 (got {zeta2})"));
                }
            }
            ExtensionClass::Case4 { zeta2 } | ExtensionClass::Case5 { zeta2 } => {
                if !zeta2.is_positive() {
                    return bad(format!("zeta^2 must be positive (got {zeta2})"));
                }
            }
            ExtensionClass::Case8 { cos, sin } | ExtensionClass::Case9 { cos, sin } => {
                if cos * cos + sin * sin != int(1) {
                    return bad(format!("({cos}, {sin}) is not on the unit circle"));
                }
                if self.case_id() == 9 && cos.is_zero() {
                    return bad("case 9 excludes phi = (k + 1/2) pi".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The plane matrix `[[beta, beta'], [gamma, gamma']]`.
    pub fn plane_matrix(&self) -> [[Scalar; 2]; 2] {
        let z = Scalar::zero;
        let one = || int(1);
        match self {
            ExtensionClass::Case1 => [[z(), z()], [z(), z()]],
            ExtensionClass::Case2 => [[one(), z()], [z(), -one()]],
            ExtensionClass::Case3 { zeta2 } => [[zeta2.clone(), z()], [z(), -zeta2.recip()]],
            ExtensionClass::Case4 { zeta2 } => [[zeta2.clone(), z()], [z(), zeta2.recip()]],
            ExtensionClass::Case5 { zeta2 } => [[zeta2.clone(), z()], [z(), z()]],
            ExtensionClass::Case6 => [[z(), z()], [-one(), z()]],
            ExtensionClass::Case7 => [[z(), one()], [-one(), z()]],
            ExtensionClass::Case8 { cos, sin } => [[cos.clone(), z()], [-sin.clone(), one()]],
            ExtensionClass::Case9 { cos, sin } => [[cos.clone(), sin.clone()], [-sin.clone(), cos.clone()]],
        }
    }

    /// Coefficient of `[K, C_{mu nu}]`, as printed for each case.
    pub fn c_eigenvalue(&self) -> Scalar {
        match self {
            ExtensionClass::Case8 { .. } => int(2),
            _ => {
                let m = self.plane_matrix();
                &m[0][0] + &m[1][1]
            }
        }
    }

    /// Representative parameters used in sampled checks: `zeta^2 = 2` and
    /// the Pythagorean angle `(3/5, 4/5)`.
    pub fn samples() -> Vec<ExtensionClass> {
        use crate::lie::rat;
        vec![
            ExtensionClass::Case1,
            ExtensionClass::Case2,
            ExtensionClass::Case3 { zeta2: int(2) },
            ExtensionClass::Case4 { zeta2: int(2) },
            ExtensionClass::Case5 { zeta2: int(2) },
            ExtensionClass::Case6,
            ExtensionClass::Case7,
            ExtensionClass::Case8 { cos: rat(3, 5), sin: rat(4, 5) },
            ExtensionClass::Case9 { cos: rat(3, 5), sin: rat(4, 5) },
        ]
    }
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionClass::Case3 { zeta2 } | ExtensionClass::Case4 { zeta2 } | ExtensionClass::Case5 { zeta2 } => {
                write!(f, "case {} (zeta^2 = {zeta2})", self.case_id())
            }
            ExtensionClass::Case8 { cos, sin } | ExtensionClass::Case9 { cos, sin } => {
                write!(f, "case {} (cos = {cos}, sin = {sin})", self.case_id())
            }
            _ => write!(f, "case {}", self.case_id()),
        }
    }
}

/// Real 2x2 matrix `[[beta, beta'], [gamma, gamma']]`, optionally exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionMatrix {
    entries: [[f64; 2]; 2],
    exact: Option<[[Scalar; 2]; 2]>,
}

impl ExtensionMatrix {
    pub fn new(beta: f64, beta_p: f64, gamma: f64, gamma_p: f64) -> Self {
        Self {
            entries: [[beta, beta_p], [gamma, gamma_p]],
            exact: None,
        }
    }

    pub fn rational(m: [[Scalar; 2]; 2]) -> Self {
        let f = |x: &Scalar| x.to_f64().unwrap_or(f64::NAN);
        Self {
            entries: [[f(&m[0][0]), f(&m[0][1])], [f(&m[1][0]), f(&m[1][1])]],
            exact: Some(m),
        }
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.entries
    }

    pub fn exact(&self) -> Option<&[[Scalar; 2]; 2]> {
        self.exact.as_ref()
    }

    fn as_matrix2(&self) -> Matrix2<f64> {
        let e = self.entries;
        Matrix2::new(e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

/// Real Jordan type of the rescaled matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum JordanType {
    Zero,
    Nilpotent,
    RealDistinct { high: f64, low: f64 },
    Scalar { eigenvalue: f64 },
    Block { eigenvalue: f64 },
    Complex { re: f64, im: f64 },
}

/// Result of classifying a plane matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    /// Printed case, or `None` when the Jordan type matches none of them.
    pub case: Option<u8>,
    pub zeta2: Option<f64>,
    pub phi: Option<f64>,
    /// `s` in `K' = K / s`.
    pub rescale: f64,
    pub jordan: JordanType,
    pub note: Option<String>,
}

impl Classification {
    /// Canonical representative of the class (the matrix `K'` acts by).
    pub fn canonical_plane(&self) -> [[f64; 2]; 2] {
        match (&self.case, &self.jordan) {
            (Some(1), _) => [[0.0, 0.0], [0.0, 0.0]],
            (Some(2), _) => [[1.0, 0.0], [0.0, -1.0]],
            (Some(3), _) => {
                let z = self.zeta2.unwrap();
                [[z, 0.0], [0.0, -1.0 / z]]
            }
            (Some(4), _) => {
                let z = self.zeta2.unwrap();
                [[z, 0.0], [0.0, 1.0 / z]]
            }
            (Some(5), _) => [[self.zeta2.unwrap(), 0.0], [0.0, 0.0]],
            (Some(6), _) => [[0.0, 0.0], [-1.0, 0.0]],
            (Some(7), _) => [[0.0, 1.0], [-1.0, 0.0]],
            (Some(9), _) => {
                let (s, c) = self.phi.unwrap().sin_cos();
                [[c, s], [-s, c]]
            }
            (_, JordanType::RealDistinct { high, low }) => [[*high, 0.0], [0.0, *low]],
            (_, JordanType::Scalar { eigenvalue }) => [[*eigenvalue, 0.0], [0.0, *eigenvalue]],
            (_, JordanType::Block { eigenvalue }) => [[*eigenvalue, 0.0], [-1.0, *eigenvalue]],
            (_, JordanType::Complex { re, im }) => [[*re, *im], [-*im, *re]],
            (_, JordanType::Nilpotent) => [[0.0, 0.0], [-1.0, 0.0]],
            (_, JordanType::Zero) => [[0.0, 0.0], [0.0, 0.0]],
        }
    }
}

const THRESHOLD: f64 = 1e-10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sign {
    Neg,
    Zero,
    Pos,
}

fn sign_f(x: f64, scale: f64) -> Sign {
    if x.abs() <= THRESHOLD * scale.max(1.0) {
        Sign::Zero
    } else if x > 0.0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

fn sign_q(x: &Scalar) -> Sign {
    if x.is_zero() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Exact or thresholded invariants of the matrix.
struct Invariants {
    tr: f64,
    det: f64,
    det_sign: Sign,
    tr_sign: Sign,
    /// sign of `tr^2 - 4 det`
    disc_sign: Sign,
    is_zero: bool,
    is_scalar: bool,
}

fn invariants(m: &ExtensionMatrix) -> Invariants {
    let [[a, b], [c, d]] = m.entries;
    let tr = a + d;
    let det = a * d - b * c;
    match &m.exact {
        Some([[qa, qb], [qc, qd]]) => {
            let qtr = qa + qd;
            let qdet = qa * qd - qb * qc;
            let qdisc = &qtr * &qtr - int(4) * &qdet;
            Invariants {
                tr,
                det,
                det_sign: sign_q(&qdet),
                tr_sign: sign_q(&qtr),
                disc_sign: sign_q(&qdisc),
                is_zero: [qa, qb, qc, qd].iter().all(|x| x.is_zero()),
                is_scalar: qb.is_zero() && qc.is_zero() && qa == qd,
            }
        }
        None => {
            let norm = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
            Invariants {
                tr,
                det,
                det_sign: sign_f(det, norm * norm),
                tr_sign: sign_f(tr, norm),
                disc_sign: sign_f(tr * tr - 4.0 * det, norm * norm),
                is_zero: norm <= THRESHOLD,
                is_scalar: b.abs() <= THRESHOLD * norm.max(1.0)
                    && c.abs() <= THRESHOLD * norm.max(1.0)
                    && (a - d).abs() <= THRESHOLD * norm.max(1.0),
            }
        }
    }
}

/// Jordan-type classification into the nine printed cases.
///
/// Decision table, after rescaling by `sqrt|det|` (or `|tr|` when
/// `det = 0`):
///
/// | det | tr / spectrum                 | case |
/// |-----|-------------------------------|------|
/// | 0   | `L = 0`                       | 1    |
/// | 0   | nilpotent, `L != 0`           | 6    |
/// | 0   | `tr > 0`                      | 5 (`zeta^2 = 1`) |
/// | 0   | `tr < 0`                      | none |
/// | -1  | `tr = 0`                      | 2    |
/// | -1  | `tr != 0`                     | 3 (`zeta^2` = positive eigenvalue) |
/// | +1  | real, `tr > 2`, or `L = I`    | 4 (`zeta^2` = larger eigenvalue) |
/// | +1  | Jordan block at 1             | none |
/// | +1  | real negative spectrum        | none |
/// | +1  | complex, `tr = 0`             | 7    |
/// | +1  | complex, `tr != 0`            | 9 (`phi` in `(0, pi)`) |
///
/// Case 8 as printed is never produced: its bracket table is a derivation
/// only at `phi = 0`, where it coincides with case 4 at `zeta^2 = 1`.
pub fn classify(m: &ExtensionMatrix) -> Classification {
    let inv = invariants(m);
    let mut out = Classification {
        case: None,
        zeta2: None,
        phi: None,
        rescale: 1.0,
        jordan: JordanType::Zero,
        note: None,
    };
    if inv.is_zero {
        out.case = Some(1);
        return out;
    }
    match inv.det_sign {
        Sign::Zero => match inv.tr_sign {
            Sign::Zero => {
                out.case = Some(6);
                out.jordan = JordanType::Nilpotent;
            }
            Sign::Pos => {
                out.rescale = inv.tr.abs();
                out.case = Some(5);
                out.zeta2 = Some(1.0);
                out.jordan = JordanType::RealDistinct { high: 1.0, low: 0.0 };
            }
            Sign::Neg => {
                out.rescale = inv.tr.abs();
                out.jordan = JordanType::RealDistinct { high: 0.0, low: -1.0 };
                out.note = Some("det 0 with negative trace: no printed case".into());
            }
        },
        Sign::Neg => {
            let s = inv.det.abs().sqrt();
            let t = if inv.tr_sign == Sign::Zero { 0.0 } else { inv.tr / s };
            let root = (t * t + 4.0).sqrt();
            let high = (t + root) / 2.0;
            let low = (t - root) / 2.0;
            out.rescale = s;
            out.jordan = JordanType::RealDistinct { high, low };
            if inv.tr_sign == Sign::Zero {
                out.case = Some(2);
            } else {
                out.case = Some(3);
                out.zeta2 = Some(high);
            }
        }
        Sign::Pos => {
            let s = inv.det.sqrt();
            let t = if inv.tr_sign == Sign::Zero { 0.0 } else { inv.tr / s };
            out.rescale = s;
            match inv.disc_sign {
                Sign::Pos => {
                    let root = (t * t - 4.0).max(0.0).sqrt();
                    let high = (t + root) / 2.0;
                    let low = (t - root) / 2.0;
                    out.jordan = JordanType::RealDistinct { high, low };
                    if t > 0.0 {
                        out.case = Some(4);
                        out.zeta2 = Some(high);
                    } else {
                        out.note = Some("det 1 with negative real spectrum: no printed case".into());
                    }
                }
                Sign::Zero => {
                    let ev = t.signum();
                    if inv.is_scalar {
                        out.jordan = JordanType::Scalar { eigenvalue: ev };
                        if ev > 0.0 {
                            out.case = Some(4);
                            out.zeta2 = Some(1.0);
                        } else {
                            out.note = Some("L = -I: no printed case".into());
                        }
                    } else {
                        out.jordan = JordanType::Block { eigenvalue: ev };
                        out.note = Some(format!(
                            "non-diagonalizable with eigenvalue {ev}: no printed case"
                        ));
                    }
                }
                Sign::Neg => {
                    let re = t / 2.0;
                    let im = (1.0 - re * re).max(0.0).sqrt();
                    out.jordan = JordanType::Complex { re, im };
                    if inv.tr_sign == Sign::Zero {
                        out.case = Some(7);
                    } else {
                        out.case = Some(9);
                        out.phi = Some(re.clamp(-1.0, 1.0).acos());
                    }
                }
            }
        }
    }
    out
}

/// Same class (case and continuous parameters).
pub fn equivalent(a: &ExtensionMatrix, b: &ExtensionMatrix) -> bool {
    let (ca, cb) = (classify(a), classify(b));
    let close = |x: Option<f64>, y: Option<f64>| match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= 1e-8 * x.abs().max(1.0),
        _ => false,
    };
    if ca.case != cb.case || !close(ca.zeta2, cb.zeta2) || !close(ca.phi, cb.phi) {
        return false;
    }
    if ca.case.is_none() {
        let canon = |c: &Classification| c.canonical_plane();
        let (x, y) = (canon(&ca), canon(&cb));
        return (0..2).all(|i| (0..2).all(|j| (x[i][j] - y[i][j]).abs() <= 1e-8));
    }
    true
}

/// Invertible `P` with `P^{-1} (L / s) P = canonical`, i.e. the change of
/// basis on the `(A, Q)` plane identifying the extension built from `L`
/// with the canonical one. Returns `P` and the residual.
pub fn similarity_witness(m: &ExtensionMatrix, cls: &Classification) -> Option<([[f64; 2]; 2], f64)> {
    let l = m.as_matrix2() / cls.rescale;
    let c = cls.canonical_plane();
    let can = Matrix2::new(c[0][0], c[0][1], c[1][0], c[1][1]);
    // Solve l P - P can = 0 for vec(P) = (p00, p01, p10, p11).
    let mut sys = DMatrix::<f64>::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let row = 2 * i + j;
            for k in 0..2 {
                sys[(row, 2 * k + j)] += l[(i, k)];
                sys[(row, 2 * i + k)] -= can[(k, j)];
            }
        }
    }
    let svd = sys.clone().svd(true, true);
    let v_t = svd.v_t?;
    let sv = svd.singular_values;
    let scale = sv.max().max(1.0);
    let null: Vec<_> = (0..4)
        .filter(|&i| sv[i] <= 1e-7 * scale)
        .map(|i| v_t.row(i).transpose())
        .collect();
    // Deterministic generic combination of the null vectors.
    let weights = [1.0, 0.618_033_988_7, 0.414_213_562_4, 0.302_775_637_7];
    let mut p = nalgebra::DVector::<f64>::zeros(4);
    for (w, v) in weights.iter().zip(&null) {
        p += v * *w;
    }
    let pm = Matrix2::new(p[0], p[1], p[2], p[3]);
    let inv = pm.try_inverse()?;
    if pm.determinant().abs() < 1e-9 {
        return None;
    }
    let resid = (inv * l * pm - can).abs().max();
    Some(([[p[0], p[1]], [p[2], p[3]]], resid))
}

/// Matrix of the derivation `x -> [K, x]` of the 51-dimensional algebra
/// determined by `L`: identity-free action on the `A/Q` planes, `tr L` on
/// `C`, zero on `L, T, T', J`. Column `j` is the image of `e_j`.
pub fn derivation_from_matrix(alg: &LieAlgebra, l: &[[Scalar; 2]; 2]) -> RatMatrix {
    let n = alg.dim();
    let mut phi = RatMatrix::zeros(n, n);
    let trace = &l[0][0] + &l[1][1];
    for (j, lab) in alg.labels().iter().enumerate() {
        match lab {
            BasisLabel::A(i, r) => {
                let q = alg.index_of(&BasisLabel::Q(*i, *r)).unwrap();
                phi[(j, j)] = l[0][0].clone();
                phi[(q, j)] = l[1][0].clone();
            }
            BasisLabel::Q(i, r) => {
                let a = alg.index_of(&BasisLabel::A(*i, *r)).unwrap();
                phi[(a, j)] = l[0][1].clone();
                phi[(j, j)] = l[1][1].clone();
            }
            BasisLabel::C(..) => phi[(j, j)] = trace.clone(),
            _ => {}
        }
    }
    phi
}

/// Basis pairs where `D[x, y] != [Dx, y] + [x, Dy]`.
pub fn leibniz_violations(alg: &LieAlgebra, d: &RatMatrix) -> Vec<(usize, usize)> {
    let n = alg.dim();
    let image = |v: &[(usize, Scalar)]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (k, c) in v {
            for (r, o) in out.iter_mut().enumerate() {
                let e = &d[(r, *k)];
                if !e.is_zero() {
                    *o += e * c;
                }
            }
        }
        out
    };
    let col = |j: usize| -> Vec<(usize, Scalar)> {
        (0..n).filter(|&r| !d[(r, j)].is_zero()).map(|r| (r, d[(r, j)].clone())).collect()
    };
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = image(&alg.bracket_basis(i, j));
            let mut rhs = vec![Scalar::zero(); n];
            for (k, c) in col(i) {
                for (r, v) in alg.bracket_basis(k, j) {
                    rhs[r] += &c * v;
                }
            }
            for (k, c) in col(j) {
                for (r, v) in alg.bracket_basis(i, k) {
                    rhs[r] += &c * v;
                }
            }
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Convenience: the derivation for `L` on a freshly built algebra.
pub fn derivation_for(l: &[[Scalar; 2]; 2]) -> (LieAlgebra, RatMatrix) {
    let g = build_newstein();
    let d = derivation_from_matrix(&g, l);
    (g, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::rat;

    fn q(m: [[i64; 2]; 2]) -> ExtensionMatrix {
        ExtensionMatrix::rational([[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]])
    }

    #[test]
    fn printed_examples() {
        assert_eq!(classify(&q([[0, 0], [0, 0]])).case, Some(1));
        assert_eq!(classify(&q([[1, 0], [0, -1]])).case, Some(2));
        assert_eq!(classify(&q([[0, 1], [-1, 0]])).case, Some(7));
        assert_eq!(classify(&q([[0, -1], [0, 0]])).case, Some(6));
    }

    #[test]
    fn canonical_representatives_classify_to_themselves() {
        for cls in ExtensionClass::samples() {
            if cls.case_id() == 8 {
                continue;
            }
            let m = ExtensionMatrix::rational(cls.plane_matrix());
            assert_eq!(classify(&m).case, Some(cls.case_id()), "{cls}");
        }
    }

    #[test]
    fn parameter_domains() {
        let c = classify(&q([[2, 0], [0, 1]]));
        // det 2 -> rescale sqrt 2 -> diag(sqrt2, 1/sqrt2)
        assert_eq!(c.case, Some(4));
        assert!((c.zeta2.unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let c = classify(&ExtensionMatrix::rational([[rat(1, 2), int(0)], [int(0), int(2)]]));
        assert_eq!(c.case, Some(4));
        assert!((c.zeta2.unwrap() - 2.0).abs() < 1e-12);
        let c = classify(&ExtensionMatrix::rational([[rat(3, 5), rat(-4, 5)], [rat(4, 5), rat(3, 5)]]));
        assert_eq!(c.case, Some(9));
        assert!((c.phi.unwrap() - (0.6f64).acos()).abs() < 1e-12);
    }

    #[test]
    fn unlisted_types_are_flagged() {
        assert_eq!(classify(&q([[1, 0], [-1, 1]])).case, None);
        assert_eq!(classify(&q([[-1, 0], [0, -1]])).case, None);
        assert_eq!(classify(&q([[-1, 0], [0, 0]])).case, None);
        assert_eq!(classify(&q([[-3, 0], [0, -1]])).case, None);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ExtensionClass::Case3 { zeta2: int(1) }.validate().is_err());
        assert!(ExtensionClass::Case3 { zeta2: int(0) }.validate().is_err());
        assert!(ExtensionClass::Case4 { zeta2: int(0) }.validate().is_err());
        assert!(ExtensionClass::Case9 { cos: int(0), sin: int(1) }.validate().is_err());
        assert!(ExtensionClass::Case9 { cos: rat(1, 2), sin: rat(1, 2) }.validate().is_err());
    }

    #[test]
    fn scaling_is_absorbed() {
        let l = q([[1, 2], [3, -4]]);
        let s = ExtensionMatrix::new(2.5, 5.0, 7.5, -10.0);
        assert!(equivalent(&l, &s));
        assert!(!equivalent(&q([[1, 0], [0, -1]]), &q([[0, 1], [-1, 0]])));
    }

    #[test]
    fn zero_matrix_gives_zero_derivation() {
        let (_, d) = derivation_for(&[[int(0), int(0)], [int(0), int(0)]]);
        assert!(d.is_zero());
    }
}
