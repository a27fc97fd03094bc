use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use newstein_core::algebras::{build_extended, build_newstein, select_algebra};
use newstein_core::cohomology::{betti, hk_via_reduction, CoefficientModule, Method};
use newstein_core::extensions::{classify as classify_matrix, ExtensionClass, ExtensionMatrix};
use newstein_core::group::{bracket_deviation, law_deviation, ExtendedGroupElement, GroupElement};
use newstein_core::induced::{generator_oracle, OracleStatus};
use newstein_core::lie::parse_scalar;
use newstein_core::oscillator::{hamiltonian_k, spectrum as levels, FockBasis, Propagator, RepParams, WaveFunction};
use newstein_core::verify::{all_match, ClaimStatus, Verifier, CRITERIA};

use crate::config::RunConfig;
use crate::{exit, Coeffs, Failure, RankMethod, RepArgs};

pub struct Output {
    pub body: String,
    pub code: u8,
}

fn json_out(v: &impl Serialize, ok: bool) -> Result<Output, Failure> {
    let body = serde_json::to_string_pretty(v).map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(Output { body, code: if ok { exit::OK } else { exit::CHECK_FAILED } })
}

pub fn emit(cfg: &RunConfig, body: &str) -> Result<(), Failure> {
    let write = |mut w: Box<dyn Write>| writeln!(w, "{body}").and_then(|_| w.flush());
    match &cfg.output {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
            write(Box::new(f)).map_err(|e| Failure::io(format!("{}: {e}", p.display())))
        }
        None => write(Box::new(std::io::stdout().lock())).map_err(|e| Failure::io(e.to_string())),
    }
}

fn rep_params(cfg: &RunConfig, rep: &RepArgs) -> Result<(RepParams, FockBasis), Failure> {
    let f = &cfg.file;
    let p = RepParams::new(
        rep.m0.or(f.m0).unwrap_or(1.0),
        rep.alpha.or(f.alpha).unwrap_or(1.0),
        rep.lambda.or(f.lambda).unwrap_or(1.0),
        rep.ell.or(f.ell).unwrap_or(0.0),
        rep.two_s.or(f.two_s).unwrap_or(0),
        rep.two_j.or(f.two_j).unwrap_or(0),
    )?;
    let cutoff = rep.cutoff.or(f.cutoff).unwrap_or(10);
    if cutoff < 2 {
        return Err(Failure::invalid("cutoff must be at least 2 (levels n <= N - 2 are reported)"));
    }
    Ok((p, FockBasis::new(cutoff)))
}

pub fn jacobi(algebra: &str) -> Result<Output, Failure> {
    let g = select_algebra(algebra)?;
    let v = g.jacobi_check();
    let labels = g.labels();
    let shown: Vec<[String; 3]> = v.iter().take(20).map(|&(i, j, k)| [i, j, k].map(|x| labels[x].to_string())).collect();
    eprintln!("{}-dim, {} violations", g.dim(), v.len());
    json_out(&json!({ "algebra": g.name(), "dim": g.dim(), "violations": v.len(), "first_violations": shown }), v.is_empty())
}

pub fn cohomology(cfg: &RunConfig, algebra: &str, coeffs: Coeffs, degree: usize, method: Option<RankMethod>, primes: Vec<u64>) -> Result<Output, Failure> {
    let method = match method {
        Some(m) => m,
        None => match cfg.file.method.as_deref() {
            None | Some("exact") => RankMethod::Exact,
            Some("modular") => RankMethod::Modular,
            Some("reduction") => RankMethod::Reduction,
            Some(other) => return Err(Failure::invalid(format!("config method '{other}' is not exact, modular or reduction"))),
        },
    };
    let g = select_algebra(algebra)?;
    let module = match coeffs {
        Coeffs::Trivial => CoefficientModule::Trivial,
        Coeffs::Adjoint => CoefficientModule::Adjoint,
    };
    let report = match method {
        RankMethod::Exact => betti(&g, &module, degree, &Method::Exact)?,
        RankMethod::Modular => betti(&g, &module, degree, &Method::Modular(primes))?,
        RankMethod::Reduction => {
            if coeffs != Coeffs::Adjoint {
                return Err(Failure::invalid("the invariant reduction applies to adjoint coefficients"));
            }
            hk_via_reduction(&g, degree)?
        }
    };
    eprintln!("{} {} H^{degree}: betti {} ({:?})", g.name(), module.kind(), report.betti, method);
    json_out(&report, true)
}

pub fn classify(entries: &[String]) -> Result<Output, Failure> {
    let exact: Option<Vec<_>> = entries.iter().map(|s| parse_scalar(s).ok()).collect();
    let m = match exact {
        Some(v) => ExtensionMatrix::rational([[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]]),
        None => {
            let v = entries
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| Failure::invalid(format!("'{s}' is not a number"))))
                .collect::<Result<Vec<f64>, _>>()?;
            ExtensionMatrix::new(v[0], v[1], v[2], v[3])
        }
    };
    let c = classify_matrix(&m);
    match c.case {
        Some(k) => eprintln!("case {k}, rescale {}, {:?}", c.rescale, c.jordan),
        None => eprintln!("no printed case matches ({:?})", c.jordan),
    }
    json_out(&c, true)
}

pub fn grouplaw(cfg: &RunConfig, samples: usize, extended: bool) -> Result<Output, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base: Vec<_> = (0..samples)
        .map(|_| (GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0)))
        .collect();
    let (assoc, inv) = law_deviation(&base);
    let (bracket, _) = bracket_deviation::<GroupElement>(&build_newstein(), 1e-3);
    let mut ok = assoc.max(inv) <= 1e-9 && bracket <= 1e-5;
    let mut report = json!({
        "seed": cfg.seed,
        "samples": samples,
        "base": { "associativity": assoc, "inverse": inv, "bracket": bracket },
    });
    eprintln!("base law: associativity {assoc:.2e}, inverse {inv:.2e}, bracket {bracket:.2e}");
    if extended {
        let ext: Vec<_> = (0..samples)
            .map(|_| {
                (
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                    ExtendedGroupElement::random(&mut rng, 1.0),
                )
            })
            .collect();
        let (a, i) = law_deviation(&ext);
        let (b, _) = bracket_deviation::<ExtendedGroupElement>(&build_extended(&ExtensionClass::Case7)?, 1e-3);
        ok &= a.max(i) <= 1e-9 && b <= 1e-5;
        report["extended"] = json!({ "associativity": a, "inverse": i, "bracket": b });
        eprintln!("extended law: associativity {a:.2e}, inverse {i:.2e}, bracket {b:.2e}");
    }
    report["within_tolerance"] = json!(ok);
    json_out(&report, ok)
}

pub fn spectrum(cfg: &RunConfig, rep: &RepArgs) -> Result<Output, Failure> {
    let (p, basis) = rep_params(cfg, rep)?;
    let rows = levels(&p, &basis, 1e-6);
    eprintln!("{:>4} {:>14} {:>12}", "n", "eigenvalue", "multiplicity");
    for (n, l) in rows.iter().enumerate() {
        eprintln!("{n:>4} {:>14.9} {:>12}", l.eigenvalue, l.multiplicity);
    }
    json_out(&rows, true)
}

pub fn evolve(cfg: &RunConfig, tau: f64, state: &Path, rep: &RepArgs) -> Result<Output, Failure> {
    let (p, basis) = rep_params(cfg, rep)?;
    let file = File::open(state).map_err(|e| Failure::io(format!("{}: {e}", state.display())))?;
    let psi = WaveFunction::read(BufReader::new(file), &basis)?;
    let out = Propagator::new(&p, &basis).apply(&psi, tau)?;
    let h = hamiltonian_k(&p, &basis).matrix;
    eprintln!(
        "tau {tau}: norm {:.12} -> {:.12}, energy {:.12} -> {:.12}",
        psi.norm(),
        out.norm(),
        psi.expectation(&h).re,
        out.expectation(&h).re
    );
    let mut buf = Vec::new();
    out.write(&mut buf)?;
    let body = String::from_utf8(buf).expect("ascii output");
    Ok(Output { body: body.trim_end().to_string(), code: exit::OK })
}

pub fn oracle(cfg: &RunConfig, points: usize, functions: usize, tol: f64, rep: &RepArgs) -> Result<Output, Failure> {
    let (p, _) = rep_params(cfg, rep)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rows = generator_oracle(build_newstein().labels(), &p, &mut rng, points, functions, tol)?;
    eprintln!("{:<6} {:>10} {:>10} {:>10}  status", "gen", "printed", "reversed", "rederived");
    for r in &rows {
        let red = r.rederived_deviation.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into());
        eprintln!("{:<6} {:>10.2e} {:>10.2e} {:>10}  {:?}", r.generator, r.printed_deviation, r.derivative_reversed_deviation, red, r.status);
    }
    let ok = rows.iter().all(|r| matches!(r.status, OracleStatus::Match | OracleStatus::SuspectedTypo));
    json_out(&rows, ok)
}

pub fn verify_all(cfg: &RunConfig, only: &[u8]) -> Result<Output, Failure> {
    if let Some(bad) = only.iter().find(|i| !CRITERIA.contains(*i)) {
        return Err(Failure::invalid(format!("no criterion {bad}")));
    }
    let v = Verifier::new(cfg.seed);
    let mut reports = Vec::new();
    for id in CRITERIA.filter(|i| only.is_empty() || only.contains(i)) {
        let r = v.run(id)?;
        let s = match r.status {
            ClaimStatus::Match => "match",
            ClaimStatus::Mismatch => "MISMATCH",
            ClaimStatus::Conditional => "conditional",
        };
        eprintln!("{:<13} {:<12} target {} | computed {}", r.claim, s, r.target_value, r.computed_value);
        reports.push(r);
    }
    let ok = all_match(&reports);
    json_out(&reports, ok)
}
