//! Finite-dimensional Lie algebras over exact rationals.
//!
//! An algebra is a labeled basis plus structure constants `[e_i, e_j] =
//! sum_k c_ij^k e_k`, stored only for `i < j`. The `(j, i)` bracket is the
//! negation and `[e_i, e_i] = 0`, so antisymmetry cannot be violated by a
//! definition. The Jacobi identity is checked, never assumed.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

pub type Scalar = BigRational;

/// Exact rational from a small integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Exact rational `p / q`.
pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Minkowski metric with signature (+,+,+,-), indices 1..=4.
pub fn metric(mu: u8, nu: u8) -> i64 {
    match (mu, nu) {
        (a, b) if a != b => 0,
        (4, 4) => -1,
        _ => 1,
    }
}

/// Name of a basis vector.
///
/// Index conventions: `L(mu, nu)` with `mu < nu`, `C(mu, nu)` with
/// `mu <= nu`, `A(i, mu)` / `Q(i, mu)` internal index first, `J(i, j)` with
/// `i < j`. `Other` covers algebras read from files or the small test
/// algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    L(u8, u8),
    T(u8),
    Tp(u8),
    C(u8, u8),
    A(u8, u8),
    Q(u8, u8),
    J(u8, u8),
    K,
    Other(String),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::L(a, b) => write!(f, "L{a}{b}"),
            BasisLabel::T(a) => write!(f, "T{a}"),
            BasisLabel::Tp(a) => write!(f, "Tp{a}"),
            BasisLabel::C(a, b) => write!(f, "C{a}{b}"),
            BasisLabel::A(i, m) => write!(f, "A{i}{m}"),
            BasisLabel::Q(i, m) => write!(f, "Q{i}{m}"),
            BasisLabel::J(i, j) => write!(f, "J{i}{j}"),
            BasisLabel::K => write!(f, "K"),
            BasisLabel::Other(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = |rest: &str| -> Option<Vec<u8>> {
            rest.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect()
        };
        let parsed = if s == "K" {
            Some(BasisLabel::K)
        } else if let Some(rest) = s.strip_prefix("Tp") {
            match digits(rest).as_deref() {
                Some([a]) => Some(BasisLabel::Tp(*a)),
                _ => None,
            }
        } else {
            let mut chars = s.chars();
            let head = chars.next();
            match (head, digits(chars.as_str()).as_deref()) {
                (Some('L'), Some([a, b])) if a < b => Some(BasisLabel::L(*a, *b)),
                (Some('T'), Some([a])) => Some(BasisLabel::T(*a)),
                (Some('C'), Some([a, b])) if a <= b => Some(BasisLabel::C(*a, *b)),
                (Some('A'), Some([i, m])) => Some(BasisLabel::A(*i, *m)),
                (Some('Q'), Some([i, m])) => Some(BasisLabel::Q(*i, *m)),
                (Some('J'), Some([i, j])) if i < j => Some(BasisLabel::J(*i, *j)),
                _ => None,
            }
        };
        match parsed {
            Some(l) => Ok(l),
            None if s.is_empty() => Err(Error::Parse("empty basis label".into())),
            None => Ok(BasisLabel::Other(s.to_string())),
        }
    }
}

/// Sparse vector over the basis, sorted by index, no explicit zeros.
pub type Terms = Vec<(usize, Scalar)>;

fn add_scaled(acc: &mut BTreeMap<usize, Scalar>, terms: &[(usize, Scalar)], s: &Scalar) {
    for (k, c) in terms {
        let v = acc.entry(*k).or_insert_with(Scalar::zero);
        *v += c * s;
        if v.is_zero() {
            acc.remove(k);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<BasisLabel>,
    constants: BTreeMap<(usize, usize), Terms>,
}

impl LieAlgebra {
    /// Builds an algebra from brackets given for arbitrary ordered pairs.
    ///
    /// A bracket supplied as `(j, i)` with `j > i` is negated into the
    /// `(i, j)` slot. Supplying both orders, or `(i, i)`, is rejected unless
    /// the two entries agree.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<BasisLabel>,
        brackets: impl IntoIterator<Item = ((usize, usize), Terms)>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidDefinition("dimension must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidDefinition(format!("duplicate label {l}")));
            }
        }
        let mut constants: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        let mut given: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= dim || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::InvalidDefinition(format!("index out of range in [{i},{j}]")));
            }
            let (key, sign) = match i.cmp(&j) {
                std::cmp::Ordering::Less => ((i, j), int(1)),
                std::cmp::Ordering::Greater => ((j, i), int(-1)),
                std::cmp::Ordering::Equal => {
                    if terms.iter().all(|(_, c)| c.is_zero()) {
                        continue;
                    }
                    return Err(Error::InvalidDefinition(format!(
                        "[e{i}, e{i}] must vanish"
                    )));
                }
            };
            let normalized: Terms = {
                let mut m = BTreeMap::new();
                add_scaled(&mut m, &terms, &sign);
                m.into_iter().collect()
            };
            if let Some(prev) = given.get(&key) {
                if *prev != normalized {
                    return Err(Error::InvalidDefinition(format!(
                        "conflicting brackets for ({}, {})",
                        labels[key.0], labels[key.1]
                    )));
                }
                continue;
            }
            given.insert(key, normalized.clone());
            let slot = constants.entry(key).or_default();
            add_scaled(slot, &normalized, &int(1));
        }
        let constants = constants
            .into_iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, t)| (k, t.into_iter().collect()))
            .collect();
        Ok(Self {
            name: name.into(),
            labels,
            constants,
        })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        let labels = (1..=dim).map(|i| BasisLabel::Other(format!("e{i}"))).collect();
        Self::new(name, labels, std::iter::empty()).expect("abelian algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonzero structure constants, `i < j`.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.constants
    }

    /// Returns a copy with the `(i, j)` bracket replaced.
    pub fn with_bracket(&self, i: usize, j: usize, terms: Terms) -> Self {
        let mut out = self.clone();
        let (key, neg) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let terms: Terms = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, if neg { -c } else { c }))
            .collect();
        if terms.is_empty() {
            out.constants.remove(&key);
        } else {
            out.constants.insert(key, terms);
        }
        out
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn signature(&self) -> String {
        let mut h = DefaultHasher::new();
        self.name.hash(&mut h);
        self.labels.hash(&mut h);
        format!("{}#{:016x}", self.name, h.finish())
    }

    /// `[e_i, e_j]` as a sparse vector, with the sign resolved.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Terms {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Less => self.constants.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .constants
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j)
            .into_iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c)
            .unwrap_or_else(Scalar::zero)
    }

    fn bracket_terms(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                if i == j {
                    continue;
                }
                let t = self.bracket_basis(*i, *j);
                if !t.is_empty() {
                    add_scaled(&mut acc, &t, &(a * b));
                }
            }
        }
        acc.into_iter().collect()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.signature(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        assert!(i < self.dim(), "basis index out of range");
        let mut e = self.zero();
        e.coeffs.insert(i, int(1));
        e
    }

    pub fn element_of(&self, label: &BasisLabel) -> Option<AlgebraElement> {
        self.index_of(label).map(|i| self.basis_element(i))
    }

    pub fn element(&self, coeffs: impl IntoIterator<Item = (usize, Scalar)>) -> AlgebraElement {
        let mut e = self.zero();
        for (i, c) in coeffs {
            assert!(i < self.dim(), "basis index out of range");
            if !c.is_zero() {
                let v = e.coeffs.entry(i).or_insert_with(Scalar::zero);
                *v += c;
                if v.is_zero() {
                    e.coeffs.remove(&i);
                }
            }
        }
        e
    }

    pub fn element_from_dense(&self, v: &[Scalar]) -> AlgebraElement {
        assert_eq!(v.len(), self.dim());
        self.element(v.iter().cloned().enumerate())
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        let sig = self.signature();
        if x.algebra != sig {
            return Err(Error::MismatchedAlgebra(x.algebra.clone(), sig));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let xs: Terms = x.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect();
        let ys: Terms = y.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect();
        Ok(AlgebraElement {
            algebra: x.algebra.clone(),
            coeffs: self.bracket_terms(&xs, &ys).into_iter().collect(),
        })
    }

    /// Basis triples `i <= j <= k` on which the Jacobiator is nonzero.
    pub fn jacobi_check(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut out: Vec<_> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut bad = Vec::new();
                for j in i..n {
                    let ij = self.bracket_basis(i, j);
                    for k in j..n {
                        if !self.jacobiator(i, j, k, &ij).is_empty() {
                            bad.push((i, j, k));
                        }
                    }
                }
                bad
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize, ij: &[(usize, Scalar)]) -> Terms {
        let ek = [(k, int(1))];
        let ei = [(i, int(1))];
        let ej = [(j, int(1))];
        let mut acc = BTreeMap::new();
        add_scaled(&mut acc, &self.bracket_terms(ij, &ek), &int(1));
        add_scaled(&mut acc, &self.bracket_terms(&self.bracket_basis(j, k), &ei), &int(1));
        add_scaled(&mut acc, &self.bracket_terms(&self.bracket_basis(k, i), &ej), &int(1));
        acc.into_iter().collect()
    }

    /// Matrix of `ad(x) = [x, .]`; column `j` holds `[x, e_j]`.
    pub fn adjoint(&self, x: &AlgebraElement) -> Result<RatMatrix> {
        self.check(x)?;
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        for (i, a) in &x.coeffs {
            for j in 0..n {
                for (k, c) in self.bracket_basis(*i, j) {
                    m[(k, j)] += a * &c;
                }
            }
        }
        Ok(m)
    }

    /// Basis of `{x : [g, x] = 0 for every g in generators}`.
    pub fn centralizer(&self, generators: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
        let n = self.dim();
        let mut rows = Vec::new();
        for g in generators {
            let ad = self.adjoint(g)?;
            for i in 0..n {
                let row = ad.row(i);
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row.to_vec());
                }
            }
        }
        if rows.is_empty() {
            return Ok((0..n).map(|i| self.basis_element(i)).collect());
        }
        let sys = RatMatrix::from_rows(rows);
        Ok(sys
            .nullspace()
            .into_iter()
            .map(|v| self.element_from_dense(&v))
            .collect())
    }

    /// Dimension of the derived algebra `[g, g]`.
    pub fn derived_dim(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = self
            .constants
            .values()
            .map(|t| {
                let mut v = vec![Scalar::zero(); self.dim()];
                for (k, c) in t {
                    v[*k] = c.clone();
                }
                v
            })
            .collect();
        if rows.is_empty() {
            0
        } else {
            RatMatrix::from_rows(rows).rank()
        }
    }

    /// True when `[e_i, v]` stays inside `span{e_k : k in subset}` for every
    /// basis vector `e_i` of the algebra and `v` in the subset.
    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        (0..self.dim()).all(|i| {
            subset.iter().all(|&j| {
                self.bracket_basis(i, j)
                    .iter()
                    .all(|(k, _)| subset.contains(k))
            })
        })
    }

    pub fn to_definition(&self) -> AlgebraDefinition {
        AlgebraDefinition {
            name: self.name.clone(),
            dimension: self.dim(),
            labels: self.labels.iter().map(ToString::to_string).collect(),
            constants: self
                .constants
                .iter()
                .map(|(&(i, j), t)| ConstantEntry {
                    i,
                    j,
                    terms: t
                        .iter()
                        .map(|(k, c)| TermEntry {
                            k: *k,
                            coeff: format!("{}/{}", c.numer(), c.denom()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_definition(def: &AlgebraDefinition) -> Result<Self> {
        if def.labels.len() != def.dimension {
            return Err(Error::InvalidDefinition(format!(
                "dimension {} but {} labels",
                def.dimension,
                def.labels.len()
            )));
        }
        let labels = def
            .labels
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BasisLabel>>>()?;
        let mut brackets = Vec::with_capacity(def.constants.len());
        for e in &def.constants {
            if e.i >= e.j {
                return Err(Error::InvalidDefinition(format!(
                    "constant entry ({}, {}) must have i < j",
                    e.i, e.j
                )));
            }
            let terms = e
                .terms
                .iter()
                .map(|t| parse_scalar(&t.coeff).map(|c| (t.k, c)))
                .collect::<Result<Terms>>()?;
            brackets.push(((e.i, e.j), terms));
        }
        Self::new(def.name.clone(), labels, brackets)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_definition()).expect("definition serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let def: AlgebraDefinition = serde_json::from_str(s)?;
        Self::from_definition(&def)
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let q: BigInt = q.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Scalar::new(p, q))
}

/// Serialized form of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDefinition {
    pub name: String,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub constants: Vec<ConstantEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    pub coeff: String,
}

/// Element of a specific algebra, sparse in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: String,
    coeffs: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        (0..dim).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement {
                algebra: self.algebra.clone(),
                coeffs: BTreeMap::new(),
            };
        }
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.algebra != other.algebra {
            return Err(Error::MismatchedAlgebra(
                self.algebra.clone(),
                other.algebra.clone(),
            ));
        }
        let mut coeffs = self.coeffs.clone();
        let terms: Terms = other.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect();
        add_scaled(&mut coeffs, &terms, &Scalar::one());
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    /// True if `other = s * self` for some rational `s` (both nonzero).
    pub fn is_proportional(&self, other: &AlgebraElement) -> bool {
        let Some((&k, a)) = self.coeffs.iter().next() else {
            return other.is_zero();
        };
        let b = other.coeff(k);
        if b.is_zero() {
            return false;
        }
        let s = b / a;
        self.scale(&s).coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> LieAlgebra {
        let labels = ["p", "q", "z"]
            .iter()
            .map(|s| BasisLabel::Other(s.to_string()))
            .collect();
        LieAlgebra::new("h3", labels, [((0, 1), vec![(2, int(1))])]).unwrap()
    }

    #[test]
    fn reversed_bracket_is_negated() {
        let labels = vec![BasisLabel::Other("x".into()), BasisLabel::Other("y".into())];
        let a = LieAlgebra::new("a", labels, [((1, 0), vec![(1, int(1))])]).unwrap();
        assert_eq!(a.bracket_basis(0, 1), vec![(1, int(-1))]);
        assert_eq!(a.bracket_basis(1, 0), vec![(1, int(1))]);
    }

    #[test]
    fn self_bracket_must_vanish() {
        let labels = vec![BasisLabel::Other("x".into())];
        assert!(LieAlgebra::new("a", labels, [((0, 0), vec![(0, int(1))])]).is_err());
    }

    #[test]
    fn abelian_jacobi_is_clean() {
        assert!(LieAlgebra::abelian("r3", 3).jacobi_check().is_empty());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let h = heisenberg();
        let r = LieAlgebra::abelian("r3", 3);
        let x = h.basis_element(0);
        let y = r.basis_element(1);
        assert!(matches!(h.bracket(&x, &y), Err(Error::MismatchedAlgebra(..))));
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        let h = heisenberg();
        assert_eq!(h.centralizer(&[]).unwrap().len(), 3);
        let z = h.centralizer(&[h.basis_element(0), h.basis_element(1)]).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].is_proportional(&h.basis_element(2)));
    }

    #[test]
    fn labels_round_trip_through_strings() {
        for l in [
            BasisLabel::L(1, 4),
            BasisLabel::T(2),
            BasisLabel::Tp(4),
            BasisLabel::C(3, 3),
            BasisLabel::A(2, 4),
            BasisLabel::Q(1, 1),
            BasisLabel::J(1, 3),
            BasisLabel::K,
            BasisLabel::Other("z".into()),
        ] {
            assert_eq!(l.to_string().parse::<BasisLabel>().unwrap(), l);
        }
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(parse_scalar("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
