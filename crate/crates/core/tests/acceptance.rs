//! Acceptance suite: one line per criterion.
//!
//! Each criterion prints PASS, FAIL or CONDITIONAL against its stated target.
//! Independently established values are asserted as well, so the target
//! fails on regressions but not on a known mismatch with a stated target.

use std::time::Instant;

use serde_json::{json, Value};

use newstein_core::group::MassShellPoint;
use newstein_core::lie::metric;
use newstein_core::oscillator::{commutator, interior_deviation, internal_generator, max_norm, oscillator_part, FockBasis, RepParams};
use newstein_core::verify::{ClaimReport, ClaimStatus, Verifier, CRITERIA};
use newstein_core::BasisLabel;

fn m<'a>(r: &'a ClaimReport, k: &str) -> &'a Value {
    r.measurement(k).unwrap_or_else(|| panic!("criterion {} lacks {k}", r.id()))
}

fn f(r: &ClaimReport, k: &str) -> f64 {
    m(r, k).as_f64().unwrap()
}

/// Values established independently of the stated targets.
fn regressions(r: &ClaimReport) {
    match r.id() {
        1 => assert_eq!((m(r, "dim"), m(r, "violations")), (&json!(51), &json!(0))),
        2 => assert_eq!((m(r, "betti"), m(r, "proportional")), (&json!(1), &json!(true))),
        3 => assert_eq!((m(r, "reduction"), m(r, "direct"), m(r, "unanimous")), (&json!(8), &json!(8), &json!(true))),
        4 => assert_eq!((m(r, "reduction"), m(r, "direct"), m(r, "unanimous")), (&json!([42, 38, 2, 2]), &json!(2), &json!(true))),
        5 => assert_eq!((m(r, "exact"), m(r, "modular")), (&json!(1), &json!(1))),
        6 => assert_eq!((m(r, "betti"), m(r, "dim")), (&json!(4), &json!(41))),
        7 => assert_eq!(
            [m(r, "levi_invariant"), m(r, "cocycles"), m(r, "fully_invariant"), m(r, "family_embeds")],
            [&json!(10), &json!(8), &json!(5), &json!(true)]
        ),
        8 => {
            assert_eq!(m(r, "self_classified"), &json!([1, 2, 3, 4, 5, 6, 7, 9]));
            assert!(m(r, "case8").as_str().unwrap().contains("Jacobi false"));
        }
        14 => {
            assert!(f(r, "homomorphism") <= 1e-7);
            assert_eq!(m(r, "counts"), &json!([42, 8, 1, 0]));
        }
        9..=13 | 15 | 16 => assert_eq!(r.status, ClaimStatus::Match),
        _ => unreachable!(),
    }
}

/// Operator-level checks not tied to one criterion line.
fn sanity() {
    let basis = FockBasis::new(8);
    let p = RepParams::new(1.7, 0.6, 1.0, 0.0, 0, 0).unwrap();
    let h0 = oscillator_part(&p, &basis);
    assert!(h0.hermiticity_defect() < 1e-12);
    let xi = MassShellPoint::rest(p.m0);
    let a = internal_generator(&BasisLabel::A(1, 1), &xi, &p, &basis).unwrap().rho();
    let q = internal_generator(&BasisLabel::Q(1, 2), &xi, &p, &basis).unwrap().rho();
    let c = internal_generator(&BasisLabel::C(1, 2), &xi, &p, &basis).unwrap().rho();
    // [A_{1,1}, Q_{1,2}] = C_{12}, and C_{12} vanishes at rest
    assert!(interior_deviation(&commutator(&a, &q), &c, &basis) < 1e-10);
    assert!(max_norm(&c) == 0.0);
    // T′_4 at rest is ξ_4 = g_44 m₀
    let t4 = internal_generator(&BasisLabel::Tp(4), &xi, &p, &basis).unwrap().matrix;
    assert!((t4[(0, 0)].re - metric(4, 4) as f64 * p.m0).abs() < 1e-15);
}

fn main() {
    let start = Instant::now();
    sanity();
    let v = Verifier::new(0);
    println!("acceptance criteria");
    let mut counts = [0usize; 3];
    for id in CRITERIA {
        let t = Instant::now();
        let r = v.run(id).unwrap();
        let s = match r.status {
            ClaimStatus::Match => "PASS",
            ClaimStatus::Mismatch => "FAIL",
            ClaimStatus::Conditional => "CONDITIONAL",
        };
        counts[r.status as usize] += 1;
        println!(
            "criterion {id:2}: {s:11} target {}; computed {} [{}] {} ({:.1} s)",
            r.target_value,
            r.computed_value,
            r.method,
            r.detail,
            t.elapsed().as_secs_f64()
        );
        regressions(&r);
    }
    println!("summary: {} pass, {} fail, {} conditional ({:.1} s)", counts[0], counts[1], counts[2], start.elapsed().as_secs_f64());
}
