//! Concrete algebras: the 51-dimensional New-Stein algebra, its variants and
//! extensions, and a few small reference algebras used as oracles.
//!
//! Basis order (fixed, used by every file format and matrix):
//! `L12 L13 L14 L23 L24 L34`, `T1..T4`, `Tp1..Tp4`, `C11 C12 .. C44`
//! (upper triangle, row-major), `A11 A12 .. A34` (internal index major),
//! `Q11 .. Q34`, `J12 J13 J23`, then `K` when present.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extensions::ExtensionClass;
use crate::lie::{int, metric, BasisLabel, LieAlgebra, Scalar, Terms};

/// Pairs `(a, b)` with `a < b` over `1..=n`.
fn pairs(n: u8) -> impl Iterator<Item = (u8, u8)> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
}

/// Labels of the New-Stein algebra with an internal space of dimension `n`.
pub fn newstein_labels(n: u8) -> Vec<BasisLabel> {
    let mut v: Vec<BasisLabel> = pairs(4).map(|(a, b)| BasisLabel::L(a, b)).collect();
    v.extend((1..=4).map(BasisLabel::T));
    v.extend((1..=4).map(BasisLabel::Tp));
    v.extend((1..=4).flat_map(|a| (a..=4).map(move |b| BasisLabel::C(a, b))));
    v.extend((1..=n).flat_map(|i| (1..=4).map(move |m| BasisLabel::A(i, m))));
    v.extend((1..=n).flat_map(|i| (1..=4).map(move |m| BasisLabel::Q(i, m))));
    v.extend(pairs(n).map(|(i, j)| BasisLabel::J(i, j)));
    v
}

fn kronecker(a: u8, b: u8) -> i64 {
    i64::from(a == b)
}

/// Antisymmetric label `L_{mu nu}` as (canonical label, sign); `None` on the diagonal.
fn l_label(mu: u8, nu: u8) -> Option<(BasisLabel, i64)> {
    match mu.cmp(&nu) {
        std::cmp::Ordering::Less => Some((BasisLabel::L(mu, nu), 1)),
        std::cmp::Ordering::Greater => Some((BasisLabel::L(nu, mu), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

fn j_label(i: u8, j: u8) -> Option<(BasisLabel, i64)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((BasisLabel::J(i, j), 1)),
        std::cmp::Ordering::Greater => Some((BasisLabel::J(j, i), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

fn c_label(mu: u8, nu: u8) -> BasisLabel {
    BasisLabel::C(mu.min(nu), mu.max(nu))
}

/// Replaces the index of a vector-type label (`T`, `Tp`, `A_i`, `Q_i`).
fn with_vector_index(x: &BasisLabel, rho: u8) -> BasisLabel {
    match x {
        BasisLabel::T(_) => BasisLabel::T(rho),
        BasisLabel::Tp(_) => BasisLabel::Tp(rho),
        BasisLabel::A(i, _) => BasisLabel::A(*i, rho),
        BasisLabel::Q(i, _) => BasisLabel::Q(*i, rho),
        _ => unreachable!("not a vector label"),
    }
}

fn vector_index(x: &BasisLabel) -> Option<u8> {
    match x {
        BasisLabel::T(r) | BasisLabel::Tp(r) | BasisLabel::A(_, r) | BasisLabel::Q(_, r) => Some(*r),
        _ => None,
    }
}

/// Replaces the internal index of `A` / `Q`.
fn with_internal_index(y: &BasisLabel, k: u8) -> BasisLabel {
    match y {
        BasisLabel::A(_, r) => BasisLabel::A(k, *r),
        BasisLabel::Q(_, r) => BasisLabel::Q(k, *r),
        _ => unreachable!("not an internal label"),
    }
}

type Combo = Vec<(BasisLabel, i64)>;

/// Brackets `[a, b]` of the New-Stein algebra, as displayed generator
/// relations, for `a` in "first position" form. Returns `None` when the pair
/// is only covered in the opposite order.
fn newstein_formula(a: &BasisLabel, b: &BasisLabel) -> Option<Combo> {
    use BasisLabel::*;
    let g = |x: u8, y: u8| metric(x, y);
    let mut out: Combo = Vec::new();
    match (a, b) {
        (L(mu, nu), L(rho, sigma)) => {
            let (mu, nu, rho, sigma) = (*mu, *nu, *rho, *sigma);
            for (coef, x, y) in [
                (-g(mu, rho), nu, sigma),
                (-g(nu, sigma), mu, rho),
                (g(mu, sigma), nu, rho),
                (g(nu, rho), mu, sigma),
            ] {
                if coef != 0 {
                    if let Some((l, s)) = l_label(x, y) {
                        out.push((l, coef * s));
                    }
                }
            }
        }
        (L(mu, nu), x) if vector_index(x).is_some() => {
            let rho = vector_index(x).unwrap();
            let (mu, nu) = (*mu, *nu);
            if g(nu, rho) != 0 {
                out.push((with_vector_index(x, mu), g(nu, rho)));
            }
            if g(mu, rho) != 0 {
                out.push((with_vector_index(x, nu), -g(mu, rho)));
            }
        }
        (L(mu, nu), C(rho, sigma)) => {
            let (mu, nu, rho, sigma) = (*mu, *nu, *rho, *sigma);
            for (coef, x, y) in [
                (-g(mu, rho), nu, sigma),
                (-g(mu, sigma), nu, rho),
                (g(nu, sigma), mu, rho),
                (g(nu, rho), mu, sigma),
            ] {
                if coef != 0 {
                    out.push((c_label(x, y), coef));
                }
            }
        }
        (A(i, mu), Q(j, nu)) => {
            if i == j {
                out.push((c_label(*mu, *nu), 1));
            }
        }
        (J(i, j), J(k, l)) => {
            let (i, j, k, l) = (*i, *j, *k, *l);
            for (coef, x, y) in [
                (-kronecker(i, k), j, l),
                (-kronecker(j, l), i, k),
                (kronecker(i, l), j, k),
                (kronecker(j, k), i, l),
            ] {
                if coef != 0 {
                    if let Some((lab, s)) = j_label(x, y) {
                        out.push((lab, coef * s));
                    }
                }
            }
        }
        (J(i, j), y @ (A(k, _) | Q(k, _))) => {
            let (i, j, k) = (*i, *j, *k);
            if kronecker(j, k) != 0 {
                out.push((with_internal_index(y, i), 1));
            }
            if kronecker(i, k) != 0 {
                out.push((with_internal_index(y, j), -1));
            }
        }
        _ => return None,
    }
    Some(out)
}

fn collect_brackets(
    labels: &[BasisLabel],
    formula: impl Fn(&BasisLabel, &BasisLabel) -> Option<Combo>,
) -> Result<Vec<((usize, usize), Terms)>> {
    let index: BTreeMap<&BasisLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (combo, sign) = match formula(&labels[i], &labels[j]) {
                Some(c) => (c, 1),
                None => match formula(&labels[j], &labels[i]) {
                    Some(c) => (c, -1),
                    None => continue,
                },
            };
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (lab, c) in combo {
                let k = *index.get(&lab).ok_or_else(|| {
                    Error::InvalidDefinition(format!("bracket produced unknown label {lab}"))
                })?;
                *acc.entry(k).or_insert_with(Scalar::zero) += int(c * sign);
            }
            let terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                out.push(((i, j), terms));
            }
        }
    }
    Ok(out)
}

fn build_with_internal_dim(name: &str, n: u8) -> LieAlgebra {
    let labels = newstein_labels(n);
    let brackets = collect_brackets(&labels, newstein_formula).expect("closed label set");
    LieAlgebra::new(name, labels, brackets).expect("valid construction")
}

/// The 51-dimensional New-Stein algebra.
pub fn build_newstein() -> LieAlgebra {
    build_with_internal_dim("newstein", 3)
}

/// The variant with a two-dimensional internal space (41-dimensional).
///
/// The internal rotation algebra is spanned by the single generator `J12`
/// acting on the internal index by the planar vector representation, using
/// the same relation `[J_ij, Y_k] = d_jk Y_i - d_ik Y_j` as for three
/// internal dimensions.
pub fn build_newstein2() -> LieAlgebra {
    build_with_internal_dim("newstein2", 2)
}

/// Resolves an algebra selector: `newstein`, `newstein-ext:<case>[:<params>]`,
/// `newstein2`, `h3`, `sl2`, `so3` or `file:<path>` (definition file).
pub fn select_algebra(selector: &str) -> Result<LieAlgebra> {
    match selector {
        "newstein" => Ok(build_newstein()),
        "newstein2" => Ok(build_newstein2()),
        "h3" => Ok(heisenberg3()),
        "sl2" => Ok(sl2()),
        "so3" => Ok(so3()),
        s => {
            if let Some(case) = s.strip_prefix("newstein-ext:") {
                build_extended(&ExtensionClass::parse(case)?)
            } else if let Some(path) = s.strip_prefix("file:") {
                let text = std::fs::read_to_string(path).map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
                LieAlgebra::from_json(&text)
            } else {
                Err(Error::UnknownAlgebra(s.into()))
            }
        }
    }
}

/// Adds a generator `K` acting on each `(A_i rho, Q_i rho)` plane by the
/// matrix `[[beta, beta'], [gamma, gamma']]` (columns are images of `A`, `Q`),
/// on `C` by the scalar `c_eigen`, and trivially on `L, T, T', J`.
///
/// A derivation requires `c_eigen = beta + gamma'`; other values are allowed
/// so that inconsistent bracket tables can be built and then rejected by the
/// Jacobi check.
pub fn build_k_extension(
    name: &str,
    plane: &[[Scalar; 2]; 2],
    c_eigen: &Scalar,
) -> LieAlgebra {
    let base = build_newstein();
    let mut labels = base.labels().to_vec();
    labels.push(BasisLabel::K);
    let k = labels.len() - 1;
    let mut brackets: Vec<((usize, usize), Terms)> = base
        .constants()
        .iter()
        .map(|(&key, t)| (key, t.clone()))
        .collect();
    let [[beta, beta_p], [gamma, gamma_p]] = plane;
    let push = |brackets: &mut Vec<((usize, usize), Terms)>, x: usize, terms: Vec<(usize, Scalar)>| {
        let terms: Terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !terms.is_empty() {
            brackets.push(((k, x), terms));
        }
    };
    for i in 1..=3 {
        for rho in 1..=4 {
            let a = base.index_of(&BasisLabel::A(i, rho)).unwrap();
            let q = base.index_of(&BasisLabel::Q(i, rho)).unwrap();
            push(&mut brackets, a, vec![(a, beta.clone()), (q, gamma.clone())]);
            push(&mut brackets, q, vec![(a, beta_p.clone()), (q, gamma_p.clone())]);
        }
    }
    for mu in 1..=4 {
        for nu in mu..=4 {
            let c = base.index_of(&BasisLabel::C(mu, nu)).unwrap();
            push(&mut brackets, c, vec![(c, c_eigen.clone())]);
        }
    }
    LieAlgebra::new(name, labels, brackets).expect("valid construction")
}

/// Relativistic-invariant extension for one of the canonical cases.
pub fn build_extended(cls: &ExtensionClass) -> Result<LieAlgebra> {
    cls.validate()?;
    let plane = cls.plane_matrix();
    let c_eigen = cls.c_eigenvalue();
    Ok(build_k_extension(&format!("newstein-ext:{}", cls.case_id()), &plane, &c_eigen))
}

/// Antisymmetric bilinear form, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCocycle {
    values: BTreeMap<(usize, usize), Scalar>,
}

impl CentralCocycle {
    pub fn new(values: impl IntoIterator<Item = ((usize, usize), Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for ((i, j), v) in values {
            if v.is_zero() || i == j {
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
            *map.entry(key).or_insert_with(Scalar::zero) += v;
        }
        map.retain(|_, v: &mut Scalar| !v.is_zero());
        Self { values: map }
    }

    pub fn eval(&self, i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::zero(),
            std::cmp::Ordering::Less => self.values.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero),
            std::cmp::Ordering::Greater => -self.values.get(&(j, i)).cloned().unwrap_or_else(Scalar::zero),
        }
    }

    /// `omega(x, y)` for sparse vectors.
    pub fn eval_terms(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Scalar {
        let mut s = Scalar::zero();
        for (i, a) in x {
            for (j, b) in y {
                let w = self.eval(*i, *j);
                if !w.is_zero() {
                    s += w * a * b;
                }
            }
        }
        s
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.values
    }

    /// Basis triples violating `w([x,y],z) + w([y,z],x) + w([z,x],y) = 0`.
    pub fn cocycle_violations(&self, alg: &LieAlgebra) -> Vec<(usize, usize, usize)> {
        let n = alg.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.eval_terms(&alg.bracket_basis(i, j), &[(k, Scalar::one())])
                        + self.eval_terms(&alg.bracket_basis(j, k), &[(i, Scalar::one())])
                        + self.eval_terms(&alg.bracket_basis(k, i), &[(j, Scalar::one())]);
                    if !s.is_zero() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

/// Infinitesimal cocycle of the exponent `beta(g1, g2) = <t1, Lambda1 t'2>`:
/// `omega(T_mu, T'_nu) = g_{mu nu}`, zero elsewhere.
pub fn beta_cocycle(alg: &LieAlgebra) -> CentralCocycle {
    let mut vals = Vec::new();
    for mu in 1..=4 {
        let t = alg.index_of(&BasisLabel::T(mu)).expect("New-Stein labels");
        let tp = alg.index_of(&BasisLabel::Tp(mu)).expect("New-Stein labels");
        vals.push(((t, tp), int(metric(mu, mu))));
    }
    CentralCocycle::new(vals)
}

/// Heisenberg algebra `[p, q] = z`.
pub fn heisenberg3() -> LieAlgebra {
    let labels = ["p", "q", "z"].iter().map(|s| BasisLabel::Other(s.to_string())).collect();
    LieAlgebra::new("h3", labels, [((0, 1), vec![(2, int(1))])]).expect("valid")
}

/// `sl(2)` in the basis `h, e, f`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    let labels = ["h", "e", "f"].iter().map(|s| BasisLabel::Other(s.to_string())).collect();
    LieAlgebra::new(
        "sl2",
        labels,
        [
            ((0, 1), vec![(1, int(2))]),
            ((0, 2), vec![(2, int(-2))]),
            ((1, 2), vec![(0, int(1))]),
        ],
    )
    .expect("valid")
}

/// `so(3)`: `[e1, e2] = e3` and cyclic.
pub fn so3() -> LieAlgebra {
    let labels = ["e1", "e2", "e3"].iter().map(|s| BasisLabel::Other(s.to_string())).collect();
    LieAlgebra::new(
        "so3",
        labels,
        [
            ((0, 1), vec![(2, int(1))]),
            ((1, 2), vec![(0, int(1))]),
            ((0, 2), vec![(1, int(-1))]),
        ],
    )
    .expect("valid")
}

/// `g^{mu nu} C_{mu nu}` as a dense coefficient vector.
pub fn trace_c(alg: &LieAlgebra) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); alg.dim()];
    for mu in 1..=4 {
        v[alg.index_of(&BasisLabel::C(mu, mu)).unwrap()] = int(metric(mu, mu));
    }
    v
}

/// Indices of labels matching a predicate.
pub fn indices_where(alg: &LieAlgebra, pred: impl Fn(&BasisLabel) -> bool) -> Vec<usize> {
    alg.labels().iter().enumerate().filter(|(_, l)| pred(l)).map(|(i, _)| i).collect()
}

/// Indices spanning the Levi factor (`L` and `J`).
pub fn levi_indices(alg: &LieAlgebra) -> Vec<usize> {
    indices_where(alg, |l| matches!(l, BasisLabel::L(..) | BasisLabel::J(..)))
}

/// Indices spanning the nilpotent ideal (`T, T', C, A, Q`).
pub fn ideal_indices(alg: &LieAlgebra) -> Vec<usize> {
    indices_where(alg, |l| {
        matches!(
            l,
            BasisLabel::T(_) | BasisLabel::Tp(_) | BasisLabel::C(..) | BasisLabel::A(..) | BasisLabel::Q(..)
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(alg: &LieAlgebra, l: BasisLabel) -> usize {
        alg.index_of(&l).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_newstein().dim(), 51);
        assert_eq!(build_newstein2().dim(), 41);
    }

    #[test]
    fn basis_order_is_fixed() {
        let g = build_newstein();
        let names: Vec<String> = g.labels().iter().map(ToString::to_string).collect();
        assert_eq!(&names[..6], ["L12", "L13", "L14", "L23", "L24", "L34"]);
        assert_eq!(names[6], "T1");
        assert_eq!(names[10], "Tp1");
        assert_eq!(names[14], "C11");
        assert_eq!(names[23], "C44");
        assert_eq!(names[24], "A11");
        assert_eq!(names[36], "Q11");
        assert_eq!(&names[48..], ["J12", "J13", "J23"]);
    }

    #[test]
    fn displayed_brackets() {
        let g = build_newstein();
        use BasisLabel::*;
        assert_eq!(g.bracket_basis(idx(&g, L(1, 2)), idx(&g, T(2))), vec![(idx(&g, T(1)), int(1))]);
        assert_eq!(g.bracket_basis(idx(&g, A(1, 2)), idx(&g, Q(1, 3))), vec![(idx(&g, C(2, 3)), int(1))]);
        assert_eq!(
            g.bracket_basis(idx(&g, J(1, 2)), idx(&g, A(1, 3))),
            vec![(idx(&g, A(2, 3)), int(-1))]
        );
        assert_eq!(
            g.bracket_basis(idx(&g, L(1, 4)), idx(&g, C(4, 4))),
            vec![(idx(&g, C(1, 4)), int(-2))]
        );
        for mu in 1..=4 {
            for nu in 1..=4 {
                assert!(g.bracket_basis(idx(&g, T(mu)), idx(&g, Tp(nu))).is_empty());
            }
        }
    }

    #[test]
    fn newstein2_internal_rules() {
        let g = build_newstein2();
        use BasisLabel::*;
        assert!(g.bracket_basis(idx(&g, A(1, 1)), idx(&g, Q(2, 2))).is_empty());
        assert_eq!(g.bracket_basis(idx(&g, J(1, 2)), idx(&g, A(1, 3))), vec![(idx(&g, A(2, 3)), int(-1))]);
        assert_eq!(g.bracket_basis(idx(&g, J(1, 2)), idx(&g, A(2, 3))), vec![(idx(&g, A(1, 3)), int(1))]);
    }

    #[test]
    fn beta_values() {
        let g = build_newstein();
        let w = beta_cocycle(&g);
        use BasisLabel::*;
        assert_eq!(w.eval(idx(&g, T(1)), idx(&g, Tp(1))), int(1));
        assert_eq!(w.eval(idx(&g, T(4)), idx(&g, Tp(4))), int(-1));
        assert_eq!(w.eval(idx(&g, Tp(4)), idx(&g, T(4))), int(1));
        assert!(w.eval(idx(&g, T(1)), idx(&g, T(2))).is_zero());
        assert!(w.eval(idx(&g, T(1)), idx(&g, Tp(2))).is_zero());
    }

    #[test]
    fn small_algebras_are_lie() {
        for a in [heisenberg3(), sl2(), so3()] {
            assert!(a.jacobi_check().is_empty(), "{}", a.name());
        }
    }

    #[test]
    fn jacobi_holds_on_constructions() {
        assert!(build_newstein().jacobi_check().is_empty());
        assert!(build_newstein2().jacobi_check().is_empty());
    }

    #[test]
    fn extensions_pass_jacobi_except_printed_case_8() {
        for cls in ExtensionClass::samples() {
            let alg = build_extended(&cls).unwrap();
            let bad = alg.jacobi_check();
            if cls.case_id() == 8 {
                assert!(!bad.is_empty());
            } else {
                assert!(bad.is_empty(), "{cls}: {} violations", bad.len());
            }
        }
        let degenerate = ExtensionClass::Case8 { cos: int(1), sin: int(0) };
        assert!(build_extended(&degenerate).unwrap().jacobi_check().is_empty());
    }

    #[test]
    fn ideal_and_nilpotency() {
        let g = build_newstein();
        assert!(g.is_ideal(&ideal_indices(&g)));
        let nil = indices_where(&g, |l| matches!(l, BasisLabel::A(..) | BasisLabel::Q(..) | BasisLabel::C(..)));
        for &x in &nil {
            for &y in &nil {
                for (k, _) in g.bracket_basis(x, y) {
                    for &z in &nil {
                        assert!(g.bracket_basis(k, z).is_empty());
                    }
                }
            }
        }
        let levi = levi_indices(&g);
        for &l in &levi {
            for &j in &levi {
                assert!(g.bracket_basis(l, j).iter().all(|(k, _)| levi.contains(k)));
                if matches!(g.labels()[l], BasisLabel::L(..)) && matches!(g.labels()[j], BasisLabel::J(..)) {
                    assert!(g.bracket_basis(l, j).is_empty());
                }
            }
        }
    }

    #[test]
    fn beta_is_a_rotation_invariant_cocycle() {
        let g = build_newstein();
        let w = beta_cocycle(&g);
        assert!(w.cocycle_violations(&g).is_empty());
        for j in indices_where(&g, |l| matches!(l, BasisLabel::J(..))) {
            for x in 0..g.dim() {
                for y in 0..g.dim() {
                    let s = w.eval_terms(&g.bracket_basis(j, x), &[(y, int(1))])
                        + w.eval_terms(&[(x, int(1))], &g.bracket_basis(j, y));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn selectors() {
        assert_eq!(select_algebra("newstein").unwrap().dim(), 51);
        assert_eq!(select_algebra("newstein2").unwrap().dim(), 41);
        assert_eq!(select_algebra("newstein-ext:7").unwrap().dim(), 52);
        assert_eq!(select_algebra("newstein-ext:3:9/4").unwrap().labels().last(), Some(&BasisLabel::K));
        assert!(matches!(select_algebra("newstein-ext:9:1/2,1/2"), Err(Error::InvalidParameter(_))));
        assert!(matches!(select_algebra("newstein-ext:10"), Err(Error::InvalidParameter(_))));
        assert!(matches!(select_algebra("e8"), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(select_algebra("file:/nonexistent/x.json"), Err(Error::Io(_))));
    }
}
