//! Canonical algebra definitions checked against files under `fixtures/`.
//! Set `NEWSTEIN_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use newstein_core::algebras::{build_extended, build_newstein, build_newstein2};
use newstein_core::extensions::ExtensionClass;
use newstein_core::LieAlgebra;

fn check(name: &str, alg: &LieAlgebra) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let text = alg.to_json() + "\n";
    if std::env::var_os("NEWSTEIN_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(&path).unwrap();
    assert_eq!(golden, text, "{name} differs from the built algebra");
    let parsed = LieAlgebra::from_json(&golden).unwrap();
    assert_eq!(parsed.dim(), alg.dim());
    assert!(parsed.jacobi_check().is_empty());
}

#[test]
fn newstein() {
    check("newstein.json", &build_newstein());
}

#[test]
fn newstein_case7() {
    check("newstein-ext-7.json", &build_extended(&ExtensionClass::Case7).unwrap());
}

#[test]
fn newstein2() {
    check("newstein2.json", &build_newstein2());
}
