//! Chevalley-Eilenberg cohomology with trivial, adjoint or explicit
//! coefficients.
//!
//! Cochains `C^k = Hom(Λ^k g, M)` are indexed by `(S, l)` with `S` a sorted
//! `k`-subset in lexicographic order and `l` a module index; the global index
//! is `rank(S) * dim M + l`. Ranks are computed blockwise over every
//! integer grading the structure constants admit, which is exact because the
//! differential preserves weight.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebras::{ideal_indices, levi_indices};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Scalar};
use crate::linalg::RatMatrix;
use crate::sparse::{primes_below, SparseExactMatrix};

type Row = Vec<(usize, Scalar)>;

/// Coefficient module of a cochain complex.
#[derive(Clone, Debug)]
pub enum CoefficientModule {
    /// The one-dimensional trivial module.
    Trivial,
    /// The algebra acting on itself.
    Adjoint,
    /// `ρ(e_i)` for each basis element, all square of the same size.
    Explicit(Vec<RatMatrix>),
}

impl CoefficientModule {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Trivial => "trivial",
            Self::Adjoint => "adjoint",
            Self::Explicit(_) => "explicit",
        }
    }

    pub fn dim(&self, alg: &LieAlgebra) -> usize {
        match self {
            Self::Trivial => 1,
            Self::Adjoint => alg.dim(),
            Self::Explicit(ms) => ms.first().map_or(0, RatMatrix::nrows),
        }
    }

    /// Checks `ρ([x,y]) = [ρ(x), ρ(y)]` on basis pairs.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<()> {
        let Self::Explicit(ms) = self else { return Ok(()) };
        if ms.len() != alg.dim() {
            return Err(Error::InvalidParameter(format!(
                "{} matrices for a {}-dimensional algebra",
                ms.len(),
                alg.dim()
            )));
        }
        let d = self.dim(alg);
        if ms.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::InvalidParameter("module matrices must be square of equal size".into()));
        }
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let mut lhs = RatMatrix::zeros(d, d);
                for (k, c) in alg.bracket_basis(i, j) {
                    for a in 0..d {
                        for b in 0..d {
                            lhs[(a, b)] += &c * &ms[k][(a, b)];
                        }
                    }
                }
                let rhs = ms[i].mul(&ms[j]).sub(&ms[j].mul(&ms[i]));
                if lhs != rhs {
                    return Err(Error::InvalidParameter(format!("not a representation on pair ({i}, {j})")));
                }
            }
        }
        Ok(())
    }
}

/// Rank method requested by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Primes to use; an empty list selects three primes just below `2^31`.
    Modular(Vec<u64>),
}

impl Method {
    pub fn modular() -> Self {
        Self::Modular(Vec::new())
    }
}

/// How a report's ranks were obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MethodReport {
    Exact,
    Modular {
        primes: Vec<u64>,
        /// Primes discarded because they divided a denominator.
        replaced: Vec<u64>,
        unanimous: bool,
        certificate: String,
    },
    /// Hochschild-Serre reduction to Levi-invariant cochains on the ideal.
    InvariantReduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub module: String,
    pub degree: usize,
    pub dim_c_prev: usize,
    pub dim_c: usize,
    pub dim_c_next: usize,
    pub rank_d_prev: usize,
    pub rank_d: usize,
    pub betti: usize,
    pub method: MethodReport,
    pub blocks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order, flattened.
fn subsets(n: usize, k: usize) -> Vec<u16> {
    let mut out = Vec::with_capacity(binomial(n, k) * k);
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.extend(cur.iter().map(|&x| x as u16));
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of sorted subsets of `0..n`.
struct Ranker {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl Ranker {
    fn new(n: usize, kmax: usize) -> Self {
        let table = (0..=n).map(|a| (0..=kmax + 1).map(|b| binomial(a, b)).collect()).collect();
        Self { n, table }
    }

    fn c(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn rank(&self, s: &[usize]) -> usize {
        let k = s.len();
        let mut r = self.c(self.n, k) - 1;
        for (i, &x) in s.iter().enumerate() {
            r -= self.c(self.n - 1 - x, k - i);
        }
        r
    }
}

/// Integer gradings `w` with `w_k = w_i + w_j` whenever `c_ij^k != 0`.
pub fn gradings(alg: &LieAlgebra) -> Vec<Vec<i64>> {
    let n = alg.dim();
    let mut rows = Vec::new();
    for (&(i, j), terms) in alg.constants() {
        for (k, _) in terms {
            let mut r = vec![Scalar::zero(); n];
            r[*k] += Scalar::one();
            r[i] -= Scalar::one();
            r[j] -= Scalar::one();
            rows.push(r);
        }
    }
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    RatMatrix::from_rows(rows).nullspace().into_iter().map(|v| integerize(&v)).collect()
}

fn integerize(v: &[Scalar]) -> Vec<i64> {
    use num_integer::Integer;
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| {
            let y = x * Scalar::from_integer(lcm.clone());
            num_traits::ToPrimitive::to_i64(y.numer()).expect("small weight")
        })
        .collect()
}

/// Chevalley-Eilenberg complex of a subalgebra `dom` with values in a module.
pub(crate) struct Complex {
    pub(crate) n: usize,
    pub(crate) m: usize,
    /// `br[u][v]` for `u < v`, in domain indices.
    br: Vec<Vec<Row>>,
    /// `rho[u][l]` lists `(l', ρ(u)_{l l'})`.
    rho: Vec<Vec<Row>>,
    dom_w: Vec<Vec<i64>>,
    mod_w: Vec<Vec<i64>>,
    ranker: Ranker,
}

impl Complex {
    /// Full complex of `alg` with the given coefficients.
    pub(crate) fn new(alg: &LieAlgebra, coeffs: &CoefficientModule, kmax: usize) -> Result<Self> {
        coeffs.validate(alg)?;
        let dom: Vec<usize> = (0..alg.dim()).collect();
        let grading = match coeffs {
            CoefficientModule::Explicit(_) => Vec::new(),
            _ => gradings(alg),
        };
        let weight = |i: usize| grading.iter().map(|g| g[i]).collect::<Vec<_>>();
        let m = coeffs.dim(alg);
        let rho: Vec<Vec<Row>> = match coeffs {
            CoefficientModule::Trivial => vec![vec![Vec::new()]; alg.dim()],
            CoefficientModule::Adjoint => dom.iter().map(|&u| adjoint_rows(alg, u)).collect(),
            CoefficientModule::Explicit(ms) => ms
                .iter()
                .map(|mat| {
                    (0..m)
                        .map(|l| (0..m).filter(|&b| !mat[(l, b)].is_zero()).map(|b| (b, mat[(l, b)].clone())).collect())
                        .collect()
                })
                .collect(),
        };
        let mod_w = match coeffs {
            CoefficientModule::Adjoint => (0..m).map(weight).collect(),
            _ => vec![vec![0; grading.len()]; m],
        };
        Self::assemble(alg, &dom, rho, dom.iter().map(|&i| weight(i)).collect(), mod_w, kmax)
    }

    /// Complex of the ideal `dom` with values in the adjoint module of `alg`.
    pub(crate) fn on_ideal(alg: &LieAlgebra, dom: &[usize], kmax: usize) -> Result<Self> {
        if !alg.is_ideal(dom) {
            return Err(Error::InvalidParameter("domain is not an ideal".into()));
        }
        let grading = gradings(alg);
        let weight = |i: usize| grading.iter().map(|g| g[i]).collect::<Vec<_>>();
        let rho = dom.iter().map(|&u| adjoint_rows(alg, u)).collect();
        Self::assemble(
            alg,
            dom,
            rho,
            dom.iter().map(|&i| weight(i)).collect(),
            (0..alg.dim()).map(weight).collect(),
            kmax,
        )
    }

    fn assemble(
        alg: &LieAlgebra,
        dom: &[usize],
        rho: Vec<Vec<Row>>,
        dom_w: Vec<Vec<i64>>,
        mod_w: Vec<Vec<i64>>,
        kmax: usize,
    ) -> Result<Self> {
        let n = dom.len();
        let local: HashMap<usize, usize> = dom.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut br = vec![vec![Vec::new(); n]; n];
        for u in 0..n {
            for v in u + 1..n {
                br[u][v] = alg
                    .bracket_basis(dom[u], dom[v])
                    .into_iter()
                    .map(|(k, c)| {
                        local
                            .get(&k)
                            .map(|&a| (a, c))
                            .ok_or_else(|| Error::InvalidParameter("domain is not a subalgebra".into()))
                    })
                    .collect::<Result<_>>()?;
            }
        }
        Ok(Self {
            n,
            m: mod_w.len(),
            br,
            rho,
            dom_w,
            mod_w,
            ranker: Ranker::new(n, kmax + 1),
        })
    }

    pub(crate) fn dim(&self, k: usize) -> usize {
        binomial(self.n, k) * self.m
    }

    /// Weight of each cochain of degree `k`, grouped into blocks.
    pub(crate) fn blocks(&self, k: usize) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let subs = subsets(self.n, k);
        let gdim = self.mod_w.first().map_or(0, Vec::len);
        let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        let count = binomial(self.n, k);
        for s in 0..count {
            let mut ws = vec![0i64; gdim];
            for &u in &subs[s * k..(s + 1) * k] {
                for (a, w) in ws.iter_mut().zip(&self.dom_w[u as usize]) {
                    *a += w;
                }
            }
            for l in 0..self.m {
                let key: Vec<i64> = self.mod_w[l].iter().zip(&ws).map(|(a, b)| a - b).collect();
                out.entry(key).or_default().push(s * self.m + l);
            }
        }
        out
    }

    fn unrank(&self, k: usize, idx: usize) -> Vec<usize> {
        // Invert the lexicographic rank greedily.
        let mut out = Vec::with_capacity(k);
        let mut r = idx;
        let mut start = 0;
        for i in 0..k {
            let mut x = start;
            loop {
                let c = self.ranker.c(self.n - 1 - x, k - i - 1);
                if r < c {
                    break;
                }
                r -= c;
                x += 1;
            }
            out.push(x);
            start = x + 1;
        }
        out
    }

    /// Row of `d_k` at the `(k+1)`-cochain with global index `idx`, as
    /// entries over global `k`-cochain indices.
    pub(crate) fn d_row(&self, k: usize, idx: usize) -> Row {
        let (si, l) = (idx / self.m, idx % self.m);
        let u = self.unrank(k + 1, si);
        let mut row: Row = Vec::new();
        let mut s = Vec::with_capacity(k);
        for i in 0..=k {
            s.clear();
            s.extend(u.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, &x)| x));
            let base = self.ranker.rank(&s) * self.m;
            for (lp, val) in &self.rho[u[i]][l] {
                row.push((base + lp, if i % 2 == 0 { val.clone() } else { -val.clone() }));
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let terms = &self.br[u[i]][u[j]];
                if terms.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = u.iter().enumerate().filter(|(a, _)| *a != i && *a != j).map(|(_, &x)| x).collect();
                for (mm, c) in terms {
                    if rest.contains(mm) {
                        continue;
                    }
                    let below = rest.iter().filter(|&&x| x < *mm).count();
                    s.clear();
                    s.extend(rest.iter().copied());
                    s.insert(below, *mm);
                    let neg = (i + j + below) % 2 == 1;
                    row.push((self.ranker.rank(&s) * self.m + l, if neg { -c.clone() } else { c.clone() }));
                }
            }
        }
        row.sort_by_key(|(c, _)| *c);
        let mut merged: Row = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        merged
    }

    /// Block of `d_k` between the `k`-cochains `cols` and `(k+1)`-cochains
    /// `rows`, in local indices.
    pub(crate) fn d_block(&self, k: usize, rows: &[usize], cols: &[usize]) -> SparseExactMatrix {
        let mut m = SparseExactMatrix::new(cols.len());
        for &r in rows {
            let entries = self
                .d_row(k, r)
                .into_iter()
                .map(|(c, v)| {
                    let pos = cols.binary_search(&c).expect("differential preserves weight");
                    (pos, v)
                })
                .collect();
            m.push_row(entries);
        }
        m
    }

    /// Pairs of blocks `(rows of C^{k+1}, cols of C^k)` sharing a weight.
    pub(crate) fn d_blocks(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut cols = self.blocks(k);
        self.blocks(k + 1)
            .into_iter()
            .filter_map(|(key, rows)| cols.remove(&key).map(|c| (rows, c)))
            .collect()
    }

    /// Sum over blocks of `rank d_k`.
    fn rank_d(&self, k: usize, method: &Method) -> Result<(usize, MethodReport, usize)> {
        let blocks = self.d_blocks(k);
        let nblocks = blocks.len();
        match method {
            Method::Exact => {
                let r = blocks.par_iter().map(|(rows, cols)| self.d_block(k, rows, cols).rank_exact()).sum();
                Ok((r, MethodReport::Exact, nblocks))
            }
            Method::Modular(requested) => {
                let mut candidates = if requested.is_empty() { primes_below(1 << 31, 3) } else { requested.clone() };
                if candidates.len() < 3 || candidates.iter().any(|&p| p <= 1 << 20 || !crate::sparse::is_prime(p)) {
                    return Err(Error::Modular("need at least three distinct primes above 2^20".into()));
                }
                candidates.sort_unstable();
                candidates.dedup();
                let mats: Vec<SparseExactMatrix> = blocks.par_iter().map(|(r, c)| self.d_block(k, r, c)).collect();
                let mut used = Vec::new();
                let mut replaced = Vec::new();
                let mut ranks = Vec::new();
                let mut queue = candidates.clone();
                let mut next_below = *candidates.iter().min().unwrap();
                while used.len() < candidates.len() {
                    let p = match queue.pop() {
                        Some(p) => p,
                        None => {
                            let p = primes_below(next_below, 1)[0];
                            next_below = p;
                            p
                        }
                    };
                    let r: Option<usize> = mats.par_iter().map(|m| m.rank_mod_p(p)).sum();
                    match r {
                        Some(r) => {
                            used.push(p);
                            ranks.push(r);
                        }
                        None => replaced.push(p),
                    }
                }
                let unanimous = ranks.windows(2).all(|w| w[0] == w[1]);
                if !unanimous {
                    return Err(Error::Modular(format!("ranks disagree across primes {used:?}: {ranks:?}")));
                }
                Ok((
                    ranks[0],
                    MethodReport::Modular {
                        primes: used,
                        replaced,
                        unanimous,
                        certificate: "unanimous modular ranks: a high-confidence certificate, \
                                      each a lower bound on the rational rank"
                            .into(),
                    },
                    nblocks,
                ))
            }
        }
    }

    /// Entries of `d_{k+1} ∘ d_k` that are nonzero, as (row, col) pairs.
    pub(crate) fn d_squared_violations(&self, k: usize) -> Vec<(usize, usize)> {
        let blocks = self.blocks(k + 2);
        let keys: Vec<_> = blocks.into_iter().collect();
        let mut out: Vec<(usize, usize)> = keys
            .par_iter()
            .flat_map_iter(|(_, rows)| {
                rows.iter()
                    .flat_map(|&v| {
                        let mut acc: HashMap<usize, Scalar> = HashMap::new();
                        for (t, a) in self.d_row(k + 1, v) {
                            for (c, b) in self.d_row(k, t) {
                                *acc.entry(c).or_insert_with(Scalar::zero) += &a * &b;
                            }
                        }
                        let mut bad: Vec<(usize, usize)> =
                            acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|(c, _)| (v, c)).collect();
                        bad.sort_unstable();
                        bad
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn adjoint_rows(alg: &LieAlgebra, u: usize) -> Vec<Row> {
    let mut rows = vec![Vec::new(); alg.dim()];
    for b in 0..alg.dim() {
        for (l, c) in alg.bracket_basis(u, b) {
            rows[l].push((b, c));
        }
    }
    rows
}

/// Matrix of `d_k: C^k -> C^{k+1}` (rows `C^{k+1}`, columns `C^k`).
pub fn coboundary_matrix(alg: &LieAlgebra, coeffs: &CoefficientModule, k: usize) -> Result<SparseExactMatrix> {
    let cx = Complex::new(alg, coeffs, k)?;
    let mut m = SparseExactMatrix::new(cx.dim(k));
    for r in 0..cx.dim(k + 1) {
        m.push_row(cx.d_row(k, r));
    }
    Ok(m)
}

/// Checks `d_{k+1} ∘ d_k = 0` exactly; returns the offending entries.
pub fn d_squared_violations(alg: &LieAlgebra, coeffs: &CoefficientModule, k: usize) -> Result<Vec<(usize, usize)>> {
    Complex::new(alg, coeffs, k + 1).map(|cx| cx.d_squared_violations(k))
}

/// `dim H^k(alg, coeffs)`.
pub fn betti(alg: &LieAlgebra, coeffs: &CoefficientModule, k: usize, method: &Method) -> Result<CohomologyReport> {
    let cx = Complex::new(alg, coeffs, k)?;
    let (rank_d, report, blocks) = cx.rank_d(k, method)?;
    let (rank_prev, _, _) = if k == 0 { (0, MethodReport::Exact, 0) } else { cx.rank_d(k - 1, method)? };
    let dim_c = cx.dim(k);
    let betti = dim_c - rank_d - rank_prev;
    let note = (k == 2 && matches!(coeffs, CoefficientModule::Adjoint) && betti == 0)
        .then(|| "H^2 with adjoint coefficients vanishes: the algebra is rigid".to_string());
    Ok(CohomologyReport {
        algebra: alg.name().to_string(),
        module: coeffs.kind().to_string(),
        degree: k,
        dim_c_prev: if k == 0 { 0 } else { cx.dim(k - 1) },
        dim_c,
        dim_c_next: cx.dim(k + 1),
        rank_d_prev: rank_prev,
        rank_d,
        betti,
        method: report,
        blocks,
        note,
    })
}

/// Which part of the algebra cochains must be invariant under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariance {
    /// The Levi factor, spanned by the `L` and `J` generators.
    Levi,
    /// Every basis element of the algebra.
    Full,
}

/// Basis of invariant cochains `Λ^k(ideal) -> alg`.
#[derive(Clone, Debug)]
pub struct InvariantCochainSpace {
    pub degree: usize,
    pub invariance: Invariance,
    /// Algebra indices spanning the ideal, in domain order.
    pub ideal: Vec<usize>,
    /// Each vector is sparse over global cochain indices of the ideal complex.
    pub basis: Vec<Row>,
}

impl InvariantCochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn sort_sign(t: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && t[j - 1] == t[j] {
            return 0;
        }
    }
    sign
}

impl Complex {
    /// Image of a basis cochain under the action of `alg[x]`, given the
    /// adjoint rows of `x` on the module and on the domain.
    fn act(&self, k: usize, idx: usize, module_rows: &[Row], dom_rows: &[Row]) -> Row {
        let (si, l) = (idx / self.m, idx % self.m);
        let s = self.unrank(k, si);
        let mut out: Row = Vec::new();
        // [x, f(S)]: rows of ad x with column l
        for (lp, row) in module_rows.iter().enumerate() {
            for (b, c) in row {
                if *b == l {
                    out.push((si * self.m + lp, c.clone()));
                }
            }
        }
        // -f(.., [x, y_i], ..)
        for (j, &mm) in s.iter().enumerate() {
            for (a, c) in &dom_rows[mm] {
                let mut t = s.clone();
                t[j] = *a;
                let mut sorted = t.clone();
                let sign = sort_sign(&mut sorted);
                if sign == 0 {
                    continue;
                }
                let v = if sign > 0 { -c.clone() } else { c.clone() };
                out.push((self.ranker.rank(&sorted) * self.m + l, v));
            }
        }
        out
    }
}

/// Levi- or fully-invariant cochains on the nilpotent ideal of `alg`.
pub fn invariant_cochains(alg: &LieAlgebra, k: usize, invariance: Invariance) -> Result<InvariantCochainSpace> {
    let ideal = ideal_indices(alg);
    let cx = Complex::on_ideal(alg, &ideal, k)?;
    let basis = invariant_basis(alg, &cx, &ideal, k, invariance);
    Ok(InvariantCochainSpace {
        degree: k,
        invariance,
        ideal,
        basis,
    })
}

fn invariant_basis(alg: &LieAlgebra, cx: &Complex, ideal: &[usize], k: usize, invariance: Invariance) -> Vec<Row> {
    let actors: Vec<usize> = match invariance {
        Invariance::Levi => levi_indices(alg),
        Invariance::Full => (0..alg.dim()).collect(),
    };
    let local: HashMap<usize, usize> = ideal.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    // Adjoint rows of each actor on the module and on the ideal.
    let actions: Vec<(Vec<Row>, Vec<Row>)> = actors
        .iter()
        .map(|&x| {
            let module_rows = adjoint_rows(alg, x);
            let mut dom_rows: Vec<Row> = vec![Vec::new(); ideal.len()];
            for (a, &y) in ideal.iter().enumerate() {
                for (m, c) in alg.bracket_basis(x, y) {
                    dom_rows[local[&m]].push((a, c));
                }
            }
            (module_rows, dom_rows)
        })
        .collect();
    let blocks: Vec<Vec<usize>> = cx.blocks(k).into_values().collect();
    let mut out: Vec<Row> = blocks
        .par_iter()
        .flat_map_iter(|cols| {
            let mut eqs: BTreeMap<(usize, usize), Row> = BTreeMap::new();
            for (c_local, &c) in cols.iter().enumerate() {
                for (xi, (mr, dr)) in actions.iter().enumerate() {
                    for (r, v) in cx.act(k, c, mr, dr) {
                        eqs.entry((xi, r)).or_default().push((c_local, v));
                    }
                }
            }
            let m = SparseExactMatrix::from_rows(cols.len(), eqs.into_values().collect());
            m.nullspace()
                .into_iter()
                .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect::<Row>())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by_key(|v| v.first().map(|x| x.0));
    out
}

/// `dim H^k(alg, alg)` for `k ∈ {1, 2}` through the invariant complex on
/// the nilpotent ideal; valid because the Levi factor is semisimple and
/// `H^1 = H^2 = 0` for it.
pub fn hk_via_reduction(alg: &LieAlgebra, k: usize) -> Result<CohomologyReport> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter("reduction implemented for degrees 1 and 2".into()));
    }
    let ideal = ideal_indices(alg);
    let cx = Complex::on_ideal(alg, &ideal, k)?;
    let prev = invariant_basis(alg, &cx, &ideal, k - 1, Invariance::Levi);
    let cur = invariant_basis(alg, &cx, &ideal, k, Invariance::Levi);
    let rank_prev = image_rank(&cx, k - 1, &prev);
    let rank_d = image_rank(&cx, k, &cur);
    Ok(CohomologyReport {
        algebra: alg.name().to_string(),
        module: "adjoint".into(),
        degree: k,
        dim_c_prev: prev.len(),
        dim_c: cur.len(),
        dim_c_next: 0,
        rank_d_prev: rank_prev,
        rank_d,
        betti: cur.len() - rank_d - rank_prev,
        method: MethodReport::InvariantReduction,
        blocks: cx.blocks(k).len(),
        note: Some("dimensions are those of Levi-invariant cochains on the ideal".into()),
    })
}

/// `H^1(alg, alg)` through the invariant complex.
pub fn h1_via_reduction(alg: &LieAlgebra) -> Result<CohomologyReport> {
    hk_via_reduction(alg, 1)
}

/// Images `d_k v` of sparse `k`-cochains, over global `(k+1)`-indices.
pub(crate) fn apply_d(cx: &Complex, k: usize, vs: &[Row]) -> Vec<Row> {
    let blocks = cx.blocks(k + 1);
    let col_blocks = cx.blocks(k);
    // block key for each vector: the key of its first entry
    let key_of: HashMap<usize, &Vec<i64>> =
        col_blocks.iter().flat_map(|(key, idxs)| idxs.iter().map(move |&i| (i, key))).collect();
    vs.par_iter()
        .map(|v| {
            let Some((first, _)) = v.first() else { return Vec::new() };
            let key = key_of[first];
            let Some(rows) = blocks.get(key) else { return Vec::new() };
            let dense: HashMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
            rows.iter()
                .filter_map(|&r| {
                    let s = cx
                        .d_row(k, r)
                        .iter()
                        .filter_map(|(c, a)| dense.get(c).map(|b| a * *b))
                        .fold(Scalar::zero(), |acc, x| acc + x);
                    (!s.is_zero()).then_some((r, s))
                })
                .collect()
        })
        .collect()
}

fn image_rank(cx: &Complex, k: usize, vs: &[Row]) -> usize {
    let images = apply_d(cx, k, vs);
    let ncols = cx.dim(k + 1);
    SparseExactMatrix::from_rows(ncols, images).rank_exact()
}

/// One term of a cochain: `coeff * (e_{args}^* ⊗ value)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTerm {
    pub args: Vec<String>,
    pub value: String,
    pub coeff: String,
}

/// Cohomology class representatives, each a readable list of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRepresentatives {
    pub algebra: String,
    pub module: String,
    pub degree: usize,
    pub classes: Vec<Vec<CochainTerm>>,
}

/// Picks vectors from `candidates` extending the span of `base`.
fn complement(ncols: usize, base: &[Row], candidates: Vec<Row>) -> Vec<Row> {
    let mut acc: Vec<Row> = base.to_vec();
    let mut rank = SparseExactMatrix::from_rows(ncols, acc.clone()).rank_exact();
    let mut out = Vec::new();
    for v in candidates {
        acc.push(v.clone());
        let r = SparseExactMatrix::from_rows(ncols, acc.clone()).rank_exact();
        if r > rank {
            rank = r;
            out.push(v);
        } else {
            acc.pop();
        }
    }
    out
}

fn describe(cx: &Complex, alg: &LieAlgebra, dom: &[usize], module_labels: &[String], k: usize, v: &Row) -> Vec<CochainTerm> {
    v.iter()
        .map(|(i, c)| {
            let s = cx.unrank(k, i / cx.m);
            CochainTerm {
                args: s.iter().map(|&a| alg.labels()[dom[a]].to_string()).collect(),
                value: module_labels[i % cx.m].clone(),
                coeff: c.to_string(),
            }
        })
        .collect()
}

/// Exact representatives of `H^k(alg, coeffs)`; intended for small complexes
/// such as trivial coefficients on the 51-dimensional algebra.
pub fn class_representatives(alg: &LieAlgebra, coeffs: &CoefficientModule, k: usize) -> Result<ClassRepresentatives> {
    let cx = Complex::new(alg, coeffs, k)?;
    let next = cx.blocks(k + 1);
    let prev = if k == 0 { BTreeMap::new() } else { cx.blocks(k - 1) };
    let mut classes = Vec::new();
    for (key, cols) in cx.blocks(k) {
        let cocycles: Vec<Row> = match next.get(&key) {
            Some(rows) => cx.d_block(k, rows, &cols).nullspace(),
            None => (0..cols.len()).map(|i| vec![(i, Scalar::one())]).collect(),
        };
        let bounds: Vec<Row> = match prev.get(&key) {
            Some(pcols) => cx.d_block(k - 1, &cols, pcols).transpose().rows().to_vec(),
            None => Vec::new(),
        };
        for v in complement(cols.len(), &bounds, cocycles) {
            classes.push(v.into_iter().map(|(i, c)| (cols[i], c)).collect::<Row>());
        }
    }
    let dom: Vec<usize> = (0..alg.dim()).collect();
    let module_labels: Vec<String> = match coeffs {
        CoefficientModule::Adjoint => alg.labels().iter().map(ToString::to_string).collect(),
        _ => (0..cx.m).map(|i| format!("m{i}")).collect(),
    };
    Ok(ClassRepresentatives {
        algebra: alg.name().to_string(),
        module: coeffs.kind().to_string(),
        degree: k,
        classes: classes.iter().map(|v| describe(&cx, alg, &dom, &module_labels, k, v)).collect(),
    })
}

/// Representatives of `H^k(ideal, alg)^{Levi}` for `k ∈ {1, 2}`.
pub fn invariant_class_representatives(alg: &LieAlgebra, k: usize) -> Result<ClassRepresentatives> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter("reduction implemented for degrees 1 and 2".into()));
    }
    let ideal = ideal_indices(alg);
    let cx = Complex::on_ideal(alg, &ideal, k)?;
    let prev = invariant_basis(alg, &cx, &ideal, k - 1, Invariance::Levi);
    let cur = invariant_basis(alg, &cx, &ideal, k, Invariance::Levi);
    let cocycles = invariant_cocycles(&cx, k, &cur);
    let bounds = apply_d(&cx, k - 1, &prev);
    let classes = complement(cx.dim(k), &bounds, cocycles);
    let labels: Vec<String> = alg.labels().iter().map(ToString::to_string).collect();
    Ok(ClassRepresentatives {
        algebra: alg.name().to_string(),
        module: "adjoint".into(),
        degree: k,
        classes: classes.iter().map(|v| describe(&cx, alg, &ideal, &labels, k, v)).collect(),
    })
}

/// Combinations of `vs` annihilated by `d_k`.
fn invariant_cocycles(cx: &Complex, k: usize, vs: &[Row]) -> Vec<Row> {
    let images = apply_d(cx, k, vs);
    // columns of the image matrix are the images; its null space gives the combinations
    let t = SparseExactMatrix::from_rows(cx.dim(k + 1), images).transpose();
    t.nullspace()
        .into_iter()
        .map(|comb| {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in comb {
                for (j, x) in &vs[i] {
                    *acc.entry(*j).or_insert_with(Scalar::zero) += &c * x;
                }
            }
            acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
        })
        .collect()
}

/// Largest absolute coefficient, for diagnostics.
pub fn max_coefficient(v: &Row) -> Scalar {
    v.iter().map(|(_, x)| x.abs()).max().unwrap_or_else(Scalar::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{heisenberg3, sl2, so3};

    #[test]
    fn subsets_are_lexicographic_and_ranked() {
        let r = Ranker::new(6, 4);
        for k in 0..=4 {
            let subs = subsets(6, k);
            for (i, s) in subs.chunks(k.max(1)).enumerate().take(binomial(6, k)) {
                if k == 0 {
                    break;
                }
                let s: Vec<usize> = s.iter().map(|&x| x as usize).collect();
                assert_eq!(r.rank(&s), i);
            }
        }
    }

    #[test]
    fn unrank_inverts_rank() {
        let alg = sl2();
        let cx = Complex::new(&alg, &CoefficientModule::Adjoint, 3).unwrap();
        for k in 0..=3 {
            for i in 0..binomial(3, k) {
                assert_eq!(cx.ranker.rank(&cx.unrank(k, i)), i);
            }
        }
    }

    #[test]
    fn sort_sign_counts_transpositions() {
        assert_eq!(sort_sign(&mut [0, 1, 2]), 1);
        assert_eq!(sort_sign(&mut [1, 0, 2]), -1);
        assert_eq!(sort_sign(&mut [2, 0, 1]), 1);
        assert_eq!(sort_sign(&mut [1, 1]), 0);
    }

    #[test]
    fn abelian_differential_vanishes() {
        let alg = LieAlgebra::abelian("ab", 4);
        for k in 0..3 {
            assert!(coboundary_matrix(&alg, &CoefficientModule::Trivial, k).unwrap().is_zero());
        }
    }

    #[test]
    fn heisenberg_trivial() {
        let h = heisenberg3();
        let d1 = coboundary_matrix(&h, &CoefficientModule::Trivial, 1).unwrap();
        assert_eq!(d1.rank_exact(), 1);
        let b: Vec<usize> = (0..4)
            .map(|k| betti(&h, &CoefficientModule::Trivial, k, &Method::Exact).unwrap().betti)
            .collect();
        assert_eq!(b, vec![1, 2, 2, 1]);
    }

    #[test]
    fn sl2_adjoint_vanishes() {
        for k in 0..=2 {
            let r = betti(&sl2(), &CoefficientModule::Adjoint, k, &Method::Exact).unwrap();
            assert_eq!(r.betti, 0, "degree {k}");
        }
    }

    #[test]
    fn so3_trivial_degree_three() {
        let r = betti(&so3(), &CoefficientModule::Trivial, 3, &Method::Exact).unwrap();
        assert_eq!(r.betti, 1);
    }

    #[test]
    fn explicit_module_matches_adjoint() {
        let alg = sl2();
        let ms = (0..3).map(|i| alg.adjoint(&alg.basis_element(i)).unwrap()).collect();
        let m = CoefficientModule::Explicit(ms);
        for k in 0..=2 {
            assert_eq!(betti(&alg, &m, k, &Method::Exact).unwrap().betti, 0);
        }
    }

    #[test]
    fn explicit_module_is_validated() {
        let alg = sl2();
        let ms = vec![RatMatrix::identity(2); 3];
        assert!(CoefficientModule::Explicit(ms).validate(&alg).is_err());
    }

    #[test]
    fn modular_agrees_with_exact_on_small() {
        let h = heisenberg3();
        let r = betti(&h, &CoefficientModule::Adjoint, 1, &Method::modular()).unwrap();
        let e = betti(&h, &CoefficientModule::Adjoint, 1, &Method::Exact).unwrap();
        assert_eq!(r.betti, e.betti);
        assert!(matches!(r.method, MethodReport::Modular { unanimous: true, .. }));
    }

    #[test]
    fn modular_rejects_small_primes() {
        let h = heisenberg3();
        assert!(betti(&h, &CoefficientModule::Trivial, 1, &Method::Modular(vec![101, 103, 107])).is_err());
    }

    #[test]
    fn d_squared_small() {
        for alg in [heisenberg3(), sl2(), so3()] {
            for k in 0..2 {
                assert!(d_squared_violations(&alg, &CoefficientModule::Adjoint, k).unwrap().is_empty());
            }
        }
    }
}
