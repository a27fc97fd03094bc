//! Claim-by-claim verification of the acceptance criteria.
//!
//! Each criterion produces a [`ClaimReport`] with the stated target, the
//! computed value, the method and a status. Reports contain no timings, so a
//! fixed seed yields identical bytes.

use std::collections::BTreeMap;
use std::time::Instant;

use nalgebra::Vector4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebras::{build_extended, build_newstein, build_newstein2, heisenberg3, ideal_indices, levi_indices, sl2, trace_c};
use crate::cohomology::{betti, hk_via_reduction, invariant_cochains, CoefficientModule, Invariance, Method, MethodReport};
use crate::extensions::{classify, equivalent, ExtensionClass, ExtensionMatrix};
use crate::group::{bracket_deviation, law_deviation, ExtendedGroupElement, GroupElement, MassShellPoint, SpherePoint};
use crate::induced::{generator_oracle, iur_eval, OracleStatus, PolyTestFunction, SamplePoint};
use crate::lie::int;
use crate::oscillator::{
    casimir_ma, casimir_mn, casimir_targets, commutator, evolve, free_mass_check, hamiltonian_k, interior_deviation, interior_leakage, internal_generator,
    null_momentum, spectrum, w_operator, CMatrix, CVector, FockBasis, Propagator, RepParams, WaveFunction,
};
use crate::{AlgebraElement, BasisLabel, Error, LieAlgebra, Result};

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Match,
    Mismatch,
    Conditional,
}

/// Outcome of one criterion. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub target_value: String,
    pub computed_value: String,
    pub method: String,
    pub status: ClaimStatus,
    pub detail: String,
    pub measurements: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

impl ClaimReport {
    pub fn id(&self) -> u8 {
        self.claim.trim_start_matches("criterion ").parse().unwrap_or(0)
    }

    pub fn measurement(&self, key: &str) -> Option<&Value> {
        self.measurements.get(key)
    }
}

/// Shared state for a verification run.
pub struct Verifier {
    seed: u64,
    g: LieAlgebra,
}

struct Draft {
    target: String,
    computed: String,
    method: String,
    status: ClaimStatus,
    detail: String,
    m: BTreeMap<String, Value>,
    note: Option<String>,
    cmd: String,
}

impl Draft {
    fn new(target: impl Into<String>, computed: impl Into<String>, method: impl Into<String>, ok: bool) -> Self {
        Draft {
            target: target.into(),
            computed: computed.into(),
            method: method.into(),
            status: if ok { ClaimStatus::Match } else { ClaimStatus::Mismatch },
            detail: String::new(),
            m: BTreeMap::new(),
            note: None,
            cmd: String::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    fn with(mut self, k: &str, v: impl Serialize) -> Self {
        self.m.insert(k.into(), json!(v));
        self
    }

    fn conditional(mut self, note: impl Into<String>) -> Self {
        self.status = ClaimStatus::Conditional;
        self.note = Some(note.into());
        self
    }

    fn cmd(mut self, c: impl Into<String>) -> Self {
        self.cmd = c.into();
        self
    }
}

fn method_label(m: &MethodReport) -> String {
    match m {
        MethodReport::Exact => "exact".into(),
        MethodReport::Modular { primes, unanimous, .. } => {
            format!("modular ({} primes, {})", primes.len(), if *unanimous { "unanimous" } else { "split" })
        }
        MethodReport::InvariantReduction => "invariant reduction (exact)".into(),
    }
}

fn unanimous(m: &MethodReport) -> bool {
    matches!(m, MethodReport::Modular { primes, unanimous: true, .. } if primes.len() >= 3)
}

/// The six-parameter family on the ideal: `α T`, `α′ T′`, `(β A + γ Q)`,
/// `(β′ A + γ′ Q)`, `(β + γ′) C`.
pub fn family_member(g: &LieAlgebra, p: [i64; 6]) -> impl Fn(usize) -> AlgebraElement + '_ {
    let [alpha, alpha_p, beta, beta_p, gamma, gamma_p] = p.map(int);
    move |i| {
        let idx = |l: &BasisLabel| g.index_of(l).unwrap();
        match g.labels()[i] {
            BasisLabel::T(_) => g.basis_element(i).scale(&alpha),
            BasisLabel::Tp(_) => g.basis_element(i).scale(&alpha_p),
            BasisLabel::C(..) => g.basis_element(i).scale(&(&beta + &gamma_p)),
            BasisLabel::A(a, m) => g.element([(i, beta.clone()), (idx(&BasisLabel::Q(a, m)), gamma.clone())]),
            BasisLabel::Q(a, m) => g.element([(idx(&BasisLabel::A(a, m)), beta_p.clone()), (i, gamma_p.clone())]),
            _ => g.zero(),
        }
    }
}

/// Whether every basis member of the family is a Levi-equivariant 1-cocycle
/// on the ideal.
pub fn family_embeds(g: &LieAlgebra) -> Result<bool> {
    let ideal = ideal_indices(g);
    let lv = levi_indices(g);
    let sub = |a: AlgebraElement, b: AlgebraElement| -> Result<bool> { Ok(a.add(&b.scale(&int(-1)))?.is_zero()) };
    for k in 0..6 {
        let mut p = [0i64; 6];
        p[k] = 1;
        let f = family_member(g, p);
        let image = |x: usize, y: usize| g.bracket_basis(x, y).into_iter().try_fold(g.zero(), |acc, (m, c)| acc.add(&f(m).scale(&c)));
        for &x in &ideal {
            for &y in &ideal {
                let d = g.bracket(&g.basis_element(x), &f(y))?.add(&g.bracket(&f(x), &g.basis_element(y))?)?;
                if !sub(d, image(x, y)?)? {
                    return Ok(false);
                }
            }
            for &l in &lv {
                if !sub(g.bracket(&g.basis_element(l), &f(x))?, image(l, x)?)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `P M P⁻¹` for a random well-conditioned `P`.
pub fn random_conjugate<R: Rng>(rng: &mut R, m: [[f64; 2]; 2]) -> ExtensionMatrix {
    loop {
        let p: [[f64; 2]; 2] = [[0.0; 2]; 2].map(|r| r.map(|_| rng.gen_range(-2.0..2.0)));
        let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        if det.abs() < 0.3 {
            continue;
        }
        let inv = [[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]];
        let mul = |a: [[f64; 2]; 2], b: [[f64; 2]; 2]| {
            let mut out = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
                }
            }
            out
        };
        let out = mul(mul(p, m), inv);
        return ExtensionMatrix::new(out[0][0], out[0][1], out[1][0], out[1][1]);
    }
}

fn random_params(rng: &mut ChaCha8Rng, ell: f64) -> Result<RepParams> {
    RepParams::new(rng.gen_range(0.3..3.0), rng.gen_range(0.2..2.0), rng.gen_range(0.5..2.0), ell, 1, 0)
}

fn random_shell(rng: &mut ChaCha8Rng, m0: f64) -> Result<MassShellPoint> {
    MassShellPoint::from_spatial([0; 3].map(|_| rng.gen_range(-1.0..1.0) * m0), m0)
}

fn sci(x: f64) -> String {
    format!("{x:.1e}")
}

impl Verifier {
    pub fn new(seed: u64) -> Self {
        Verifier { seed, g: build_newstein() }
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(id as u64))
    }

    /// Runs one criterion.
    pub fn run(&self, id: u8) -> Result<ClaimReport> {
        let d = match id {
            1 => self.c1(),
            2 => self.c2(),
            3 => self.c3(),
            4 => self.c4(),
            5 => self.c5(),
            6 => self.c6(),
            7 => self.c7(),
            8 => self.c8(),
            9 => self.c9(),
            10 => self.c10(),
            11 => self.c11(),
            12 => self.c12(),
            13 => self.c13(),
            14 => self.c14(),
            15 => self.c15(),
            16 => self.c16(),
            _ => return Err(Error::InvalidParameter(format!("no criterion {id}"))),
        }?;
        let reproduce = match d.status {
            ClaimStatus::Match => None,
            _ if d.cmd.is_empty() => Some(format!("newstein verify-all --only {id} --seed {}", self.seed)),
            _ => Some(format!("{}; newstein verify-all --only {id} --seed {}", d.cmd, self.seed)),
        };
        Ok(ClaimReport {
            claim: format!("criterion {id}"),
            target_value: d.target,
            computed_value: d.computed,
            method: d.method,
            status: d.status,
            detail: d.detail,
            measurements: d.m,
            note: d.note,
            reproduce,
        })
    }

    fn c1(&self) -> Result<Draft> {
        let t = Instant::now();
        let v = self.g.jacobi_check();
        let fast = t.elapsed().as_secs_f64() < 300.0;
        let ok = self.g.dim() == 51 && v.is_empty() && fast;
        Ok(Draft::new("51-dim, 0 violations", format!("{}-dim, {} violations", self.g.dim(), v.len()), "exact", ok)
            .detail(format!("all unordered basis triples; under five minutes: {fast}"))
            .with("dim", self.g.dim())
            .with("violations", v.len())
            .cmd("newstein jacobi --algebra newstein"))
    }

    fn c2(&self) -> Result<Draft> {
        let g = &self.g;
        let r = betti(g, &CoefficientModule::Adjoint, 0, &Method::Exact)?;
        let all: Vec<AlgebraElement> = (0..g.dim()).map(|i| g.basis_element(i)).collect();
        let center = g.centralizer(&all)?;
        let tr = g.element_from_dense(&trace_c(g));
        let prop = center.len() == 1 && center[0].is_proportional(&tr);
        Ok(Draft::new("1, generated by g^mn C_mn", r.betti.to_string(), method_label(&r.method), r.betti == 1 && prop)
            .detail(format!("generator proportional to g^mn C_mn: {prop}"))
            .with("betti", r.betti)
            .with("proportional", prop)
            .cmd("newstein cohomology --algebra newstein --coeffs adjoint --degree 0 --method exact"))
    }

    fn c3(&self) -> Result<Draft> {
        let red = hk_via_reduction(&self.g, 1)?;
        let direct = betti(&self.g, &CoefficientModule::Adjoint, 1, &Method::modular())?;
        let ok = red.betti == 6 && direct.betti == 6 && unanimous(&direct.method);
        Ok(Draft::new("6", red.betti.to_string(), format!("{}; cross-check {}", method_label(&red.method), method_label(&direct.method)), ok)
            .detail(format!(
                "reduction: Levi-invariant cochains {}, rank d {}; direct modular gives {}",
                red.dim_c, red.rank_d, direct.betti
            ))
            .with("reduction", red.betti)
            .with("direct", direct.betti)
            .with("unanimous", unanimous(&direct.method))
            .cmd("newstein cohomology --algebra newstein --coeffs adjoint --degree 1 --method modular"))
    }

    fn c4(&self) -> Result<Draft> {
        let red = hk_via_reduction(&self.g, 2)?;
        let direct = betti(&self.g, &CoefficientModule::Adjoint, 2, &Method::modular())?;
        let ok = red.betti == 0 && direct.betti == 0;
        Ok(Draft::new("0", red.betti.to_string(), format!("{}; cross-check {}", method_label(&red.method), method_label(&direct.method)), ok)
            .detail(format!(
                "reduction: cochains {}, rank d {}, B2 {}; direct over {} cochains gives {}",
                red.dim_c, red.rank_d, red.rank_d_prev, direct.dim_c, direct.betti
            ))
            .with("reduction", [red.dim_c, red.rank_d, red.rank_d_prev, red.betti])
            .with("direct", direct.betti)
            .with("unanimous", unanimous(&direct.method))
            .cmd("newstein cohomology --algebra newstein --coeffs adjoint --degree 2 --method modular"))
    }

    fn c5(&self) -> Result<Draft> {
        let exact = betti(&self.g, &CoefficientModule::Trivial, 2, &Method::Exact)?;
        let modular = betti(&self.g, &CoefficientModule::Trivial, 2, &Method::modular())?;
        Ok(Draft::new("11", exact.betti.to_string(), format!("exact; cross-check {}", method_label(&modular.method)), exact.betti == 11)
            .detail(format!("exact {}, modular {}", exact.betti, modular.betti))
            .with("exact", exact.betti)
            .with("modular", modular.betti)
            .cmd("newstein cohomology --algebra newstein --coeffs trivial --degree 2 --method exact"))
    }

    fn c6(&self) -> Result<Draft> {
        let g2 = build_newstein2();
        let r = betti(&g2, &CoefficientModule::Trivial, 2, &Method::Exact)?;
        Ok(Draft::new("13", r.betti.to_string(), "exact", r.betti == 13)
            .detail(format!("algebra dim {}", g2.dim()))
            .with("betti", r.betti)
            .with("dim", g2.dim())
            .conditional("the SO(2) action on the internal index pair is taken as the planar rotation; the substitution alone does not fix it")
            .cmd("newstein cohomology --algebra newstein2 --coeffs trivial --degree 2 --method exact"))
    }

    fn c7(&self) -> Result<Draft> {
        let levi = invariant_cochains(&self.g, 1, Invariance::Levi)?;
        let full = invariant_cochains(&self.g, 1, Invariance::Full)?;
        let red = hk_via_reduction(&self.g, 1)?;
        let cocycles = red.dim_c - red.rank_d;
        let embeds = family_embeds(&self.g)?;
        Ok(Draft::new("6", levi.dim().to_string(), "exact", levi.dim() == 6 && embeds)
            .detail(format!(
                "Levi-invariant 1-cochains {}, cocycles {cocycles}, fully invariant {}; six-parameter family embeds as cocycles: {embeds}",
                levi.dim(),
                full.dim()
            ))
            .with("levi_invariant", levi.dim())
            .with("cocycles", cocycles)
            .with("fully_invariant", full.dim())
            .with("family_embeds", embeds))
    }

    fn c8(&self) -> Result<Draft> {
        let mut rng = self.rng(8);
        let mut self_classify = Vec::new();
        let mut ok = true;
        let mut case8 = String::new();
        for cls in ExtensionClass::samples() {
            let id = cls.case_id();
            let m = ExtensionMatrix::rational(cls.plane_matrix());
            let c = classify(&m);
            let jacobi = build_extended(&cls)?.jacobi_check().is_empty();
            let preserved = (0..1000).all(|_| equivalent(&m, &random_conjugate(&mut rng, m.entries())));
            if id == 8 {
                case8 = format!("case 8 as printed: classified {:?}, conjugates preserved {preserved}, Jacobi {jacobi}", c.case);
                continue;
            }
            let good = c.case == Some(id) && jacobi && preserved;
            if good {
                self_classify.push(id);
            }
            ok &= good;
        }
        let d = Draft::new("9 cases self-classify", format!("{} of 8 unambiguous cases self-classify", self_classify.len()), "exact classification, f64 conjugates", ok)
            .detail(format!("1000 conjugates each preserved, Jacobi exact; {case8}"))
            .with("self_classified", &self_classify)
            .with("case8", &case8)
            .cmd("newstein extensions classify --matrix 0.6 0 -0.8 1");
        Ok(if ok {
            d.conditional("case 8 as printed fails Jacobi unless cos phi = 1")
        } else {
            d
        })
    }

    fn c9(&self) -> Result<Draft> {
        let mut rng = self.rng(9);
        let base: Vec<_> = (0..1000)
            .map(|_| (GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0)))
            .collect();
        let ext: Vec<_> = (0..1000)
            .map(|_| {
                (
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                )
            })
            .collect();
        let (ab, ib) = law_deviation(&base);
        let (ae, ie) = law_deviation(&ext);
        let (db, _) = bracket_deviation::<GroupElement>(&self.g, 1e-3);
        let (de, _) = bracket_deviation::<ExtendedGroupElement>(&build_extended(&ExtensionClass::Case7)?, 1e-3);
        let law = ab.max(ib).max(ae).max(ie);
        let br = db.max(de);
        Ok(Draft::new("law <= 1e-9, bracket <= 1e-5", format!("law {}, bracket {}", sci(law), sci(br)), "f64", law <= 1e-9 && br <= 1e-5)
            .detail(format!("assoc {}/{}, inverse {}/{}, bracket {}/{}", sci(ab), sci(ae), sci(ib), sci(ie), sci(db), sci(de)))
            .with("law", law)
            .with("bracket", br)
            .cmd(format!("newstein grouplaw check --seed {}", self.seed.wrapping_add(9))))
    }

    fn c10(&self) -> Result<Draft> {
        let mut rng = self.rng(10);
        let basis = FockBasis::new(12);
        let mut worst: f64 = 0.0;
        let mut mult_ok = true;
        let mut leak: f64 = 0.0;
        for _ in 0..5 {
            let ell = rng.gen_range(-4.0..4.0);
            let p = random_params(&mut rng, ell)?;
            let levels = spectrum(&p, &basis, 1e-6);
            leak = leak.max(interior_leakage(&p, &basis));
            mult_ok &= levels.len() == 11;
            for (n, l) in levels.iter().enumerate() {
                worst = worst.max((l.eigenvalue - (n as f64 + 1.5 + ell / 2.0)).abs());
                mult_ok &= l.multiplicity == (n + 1) * (n + 2) / 2;
            }
        }
        let p = random_params(&mut rng, -3.0)?;
        let e0 = spectrum(&p, &basis, 1e-6)[0].eigenvalue;
        let ok = worst <= 1e-9 && mult_ok && e0.abs() <= 1e-12 && leak <= 1e-12;
        Ok(Draft::new("n + 3/2 + l/2, multiplicity (n+1)(n+2)/2", format!("max level error {}", sci(worst)), "f64 symmetric eigensolver", ok)
            .detail(format!("multiplicities {mult_ok}, ground at l=-3 {}, interior leakage {}", sci(e0), sci(leak)))
            .with("level_error", worst)
            .with("multiplicities", mult_ok)
            .with("ground", e0)
            .cmd("newstein spectrum --ell -3 --cutoff 12"))
    }

    fn c11(&self) -> Result<Draft> {
        let mut rng = self.rng(11);
        let basis = FockBasis::new(10);
        let mut dev = [0.0f64; 3];
        for _ in 0..5 {
            let ell = rng.gen_range(-4.0..4.0);
            let p = random_params(&mut rng, ell)?;
            let xi = random_shell(&mut rng, p.m0)?;
            let mn = casimir_mn(&p, &xi, &basis)?.matrix;
            let ma = casimir_ma(&p, &xi, &basis)?.matrix;
            let (tn, ta) = casimir_targets(&p, &basis);
            let h = hamiltonian_k(&p, &basis).matrix;
            let mut b = (&mn + &ma) * Complex64::new(1.0 / (2.0 * p.alpha), 0.0);
            for i in 0..basis.dim() {
                b[(i, i)] += Complex64::new(p.ell / 2.0, 0.0);
            }
            dev[0] = dev[0].max(interior_deviation(&mn, &tn, &basis));
            dev[1] = dev[1].max(interior_deviation(&ma, &ta, &basis));
            dev[2] = dev[2].max(interior_deviation(&b, &h, &basis));
        }
        let worst = dev.iter().copied().fold(0.0, f64::max);
        Ok(Draft::new("identities hold", format!("max interior deviation {}", sci(worst)), "f64", worst <= 1e-10)
            .detail(format!("M2_N {}, M2_A {}, K {}", sci(dev[0]), sci(dev[1]), sci(dev[2])))
            .with("deviation", dev))
    }

    fn c12(&self) -> Result<Draft> {
        let mut rng = self.rng(12);
        let basis = FockBasis::new(10);
        let p = random_params(&mut rng, 0.0)?;
        let id = CMatrix::identity(basis.dim(), basis.dim());
        let w2pi = w_operator(2.0 * std::f64::consts::PI, &p, &basis).matrix;
        let per = interior_deviation(&w2pi, &(-&id), &basis);
        let xi = random_shell(&mut rng, p.m0)?;
        let mut rot: f64 = 0.0;
        for _ in 0..5 {
            let k = rng.gen_range(-3.0..3.0);
            let w = w_operator(k, &p, &basis).matrix;
            let wi = w.adjoint();
            let (c, s) = (Complex64::new(k.cos(), 0.0), Complex64::new(k.sin(), 0.0));
            for j in 1..=3 {
                for mu in 1..=4 {
                    let a = internal_generator(&BasisLabel::A(j, mu), &xi, &p, &basis)?.rho();
                    let q = internal_generator(&BasisLabel::Q(j, mu), &xi, &p, &basis)?.rho();
                    rot = rot.max(interior_deviation(&(&w * &a * &wi), &(&a * c - &q * s), &basis));
                    rot = rot.max(interior_deviation(&(&w * &q * &wi), &(&q * c + &a * s), &basis));
                }
            }
        }
        Ok(Draft::new("W(2pi) = -I, (A, Q) rotated by k", format!("periodicity {}, rotation {}", sci(per), sci(rot)), "f64 spectral calculus", per <= 1e-9 && rot <= 1e-8)
            .with("periodicity", per)
            .with("rotation", rot))
    }

    fn c13(&self) -> Result<Draft> {
        let mut rng = self.rng(13);
        let mut worst: f64 = 0.0;
        let mut positive = true;
        for _ in 0..100 {
            let p = random_params(&mut rng, 0.0)?;
            let x = SamplePoint::random(&mut rng, &p);
            let xi = random_shell(&mut rng, p.m0)?;
            worst = worst.max(free_mass_check(&xi, &x.eta)?.abs() / (p.lambda * p.lambda));
            positive &= null_momentum(&xi, &x.eta)?[3] > 0.0;
        }
        let pole = null_momentum(&MassShellPoint::rest(1.0), &SpherePoint::pole(2.0))?;
        let pole_ok = (Vector4::from(pole) - Vector4::new(0.0, 0.0, 2.0, 2.0)).amax() < 1e-14;
        Ok(Draft::new("p.p = 0, p4 > 0", format!("max |p.p|/lambda^2 {}", sci(worst)), "f64", worst <= 1e-10 && positive && pole_ok)
            .detail(format!("p4 > 0 at all points: {positive}; rest-frame pole {pole_ok}"))
            .with("free_mass", worst)
            .with("positive", positive))
    }

    fn c14(&self) -> Result<Draft> {
        let mut rng = self.rng(14);
        let p = RepParams::new(1.3, 0.8, 0.9, 0.0, 1, 1)?;
        let tf = PolyTestFunction::random(&mut rng, p.two_j);
        let f = |y: &SamplePoint| -> Result<CVector> { Ok(tf.eval(y)) };
        let mut hom: f64 = 0.0;
        for _ in 0..10 {
            let g1 = GroupElement::random(&mut rng, 0.5);
            let g2 = GroupElement::random(&mut rng, 0.5);
            let g12 = g1.compose(&g2);
            let inner = |y: &SamplePoint| iur_eval(&g2, &f, y, &p);
            for _ in 0..20 {
                let x = SamplePoint::random(&mut rng, &p);
                let a = iur_eval(&g1, &inner, &x, &p)?;
                let b = iur_eval(&g12, &f, &x, &p)?;
                hom = hom.max((&a - &b).norm() / a.norm().max(b.norm()).max(1e-300));
            }
        }
        let rows = generator_oracle(self.g.labels(), &p, &mut rng, 8, 3, 1e-5)?;
        let count = |s: OracleStatus| rows.iter().filter(|r| r.status == s).count();
        let (m, rev, typo, mis) = (
            count(OracleStatus::Match),
            count(OracleStatus::DerivativeSignReversed),
            count(OracleStatus::SuspectedTypo),
            count(OracleStatus::Mismatch),
        );
        let l24 = rows.iter().find(|r| r.generator == "L24").and_then(|r| r.rederived_deviation);
        let flagged: Vec<&str> = rows.iter().filter(|r| r.status == OracleStatus::SuspectedTypo).map(|r| r.generator.as_str()).collect();
        let off: Vec<&str> = rows.iter().filter(|r| matches!(r.status, OracleStatus::DerivativeSignReversed | OracleStatus::Mismatch)).map(|r| r.generator.as_str()).collect();
        let ok = hom <= 1e-7 && m + typo == rows.len();
        Ok(Draft::new(
            "homomorphism <= 1e-7, all generators <= 1e-5 except flagged typos",
            format!("homomorphism {}; {m} of {} generators match as printed", sci(hom), rows.len()),
            "f64 finite differences (Richardson)",
            ok,
        )
        .detail(format!(
            "{rev} match only with the derivative sign reversed ({}), {typo} suspected typo ({}, re-derived deviation {}), {mis} unexplained",
            off.join(" "),
            flagged.join(" "),
            l24.map(sci).unwrap_or_else(|| "n/a".into())
        ))
        .with("homomorphism", hom)
        .with("counts", [m, rev, typo, mis])
        .with("l24_rederived", l24)
        .cmd("newstein oracle generators"))
    }

    fn c15(&self) -> Result<Draft> {
        let b = |g: &LieAlgebra, m: CoefficientModule, k| betti(g, &m, k, &Method::Exact).map(|r| r.betti);
        let h3 = heisenberg3();
        let s = sl2();
        let v = [b(&h3, CoefficientModule::Trivial, 1)?, b(&h3, CoefficientModule::Trivial, 2)?, b(&s, CoefficientModule::Adjoint, 1)?, b(&s, CoefficientModule::Adjoint, 2)?];
        Ok(Draft::new("2, 2, 0, 0", format!("{}, {}, {}, {}", v[0], v[1], v[2], v[3]), "exact", v == [2, 2, 0, 0])
            .detail("h3 trivial degrees 1, 2; sl2 adjoint degrees 1, 2")
            .with("betti", v)
            .cmd("newstein cohomology --algebra h3 --coeffs trivial --degree 2 --method exact"))
    }

    fn c16(&self) -> Result<Draft> {
        let mut rng = self.rng(16);
        let basis = FockBasis::new(10);
        let ell = rng.gen_range(-4.0..4.0);
        let p = random_params(&mut rng, ell)?;
        let h = hamiltonian_k(&p, &basis).matrix;
        let c = CVector::from_fn(basis.dim(), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let psi = WaveFunction::new(c)?.normalize()?;
        let e0 = psi.expectation(&h).re;
        let prop = Propagator::new(&p, &basis);
        let (mut dn, mut de): (f64, f64) = (0.0, 0.0);
        for i in 0..=20 {
            let out = prop.apply(&psi, i as f64 * 0.5)?;
            dn = dn.max((out.norm() - 1.0).abs());
            de = de.max((out.expectation(&h).re - e0).abs());
        }
        let pg = RepParams { ell: -3.0, ..p };
        let ground = WaveFunction::basis_state(&basis, [0, 0, 0])?;
        let still = (evolve(&ground, 7.3, &pg, &basis)?.coeffs - &ground.coeffs).norm();
        let w = w_operator(1.1, &p, &basis).matrix;
        let comm = interior_deviation(&commutator(&prop.matrix(2.3), &w), &CMatrix::zeros(basis.dim(), basis.dim()), &basis);
        let ok = dn <= 1e-10 && de <= 1e-10 && still <= 1e-12 && comm <= 1e-10;
        Ok(Draft::new("norm and energy conserved", format!("norm drift {}, energy drift {}", sci(dn), sci(de)), "f64 spectral propagator", ok)
            .detail(format!("l=-3 ground drift {}, [U, W] {}", sci(still), sci(comm)))
            .with("norm_drift", dn)
            .with("energy_drift", de))
    }
}

/// `true` iff no non-conditional claim is a mismatch.
pub fn all_match(reports: &[ClaimReport]) -> bool {
    reports.iter().all(|r| r.status != ClaimStatus::Mismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_claims_and_serialization() {
        let v = Verifier::new(0);
        let r = v.run(15).unwrap();
        assert_eq!(r.status, ClaimStatus::Match);
        assert!(r.reproduce.is_none());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"claim\":\"criterion 15\",\"target_value\""));
        let back: ClaimReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(v.run(17).is_err());
    }

    #[test]
    fn mismatch_carries_reproduction() {
        let r = Verifier::new(0).run(5).unwrap();
        assert_eq!(r.status, ClaimStatus::Mismatch);
        assert!(r.reproduce.unwrap().contains("--coeffs trivial --degree 2"));
    }
}
