use std::path::PathBuf;
use std::process::Command;

use hallforge::cli::{IsoJson, LieCompareJson, PetrescoJson, PfJson};
use hallforge::json::{BasisEntry, CocycleFile, ElementJson, HallPolyFile, LieConstantsJson};
use hallforge::suites::VerifyReport;
use hallforge_core::hall_poly::derive_hall_polynomials;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hallforge(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hallforge"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hallforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_cocycle(name: &str, r: usize, c: usize, first: serde_json::Value) -> String {
    let zero = serde_json::json!({ "terms": [] });
    let n_c = hallforge_core::magnus::hall_basis(r, c).unwrap().weight_range(c).len();
    let mut cocycles = vec![vec![zero; n_c]; r];
    cocycles[0][0] = first;
    let file = serde_json::json!({ "r": r, "c": c, "cocycles": cocycles });
    let path = scratch(name);
    std::fs::write(&path, file.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn basis_class_five() {
    let run = hallforge(&["basis", "--rank", "2", "--class", "5", "--json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let entries: Vec<BasisEntry> = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(entries.len(), 14);
    let weights: Vec<usize> = (1..=5)
        .map(|w| entries.iter().filter(|e| e.weight == w).count())
        .collect();
    assert_eq!(weights, [2, 1, 2, 3, 6]);
    assert_eq!(entries[2].tree, "[x2,x1]");
}

#[test]
fn verify_small_config() {
    let run = hallforge(&["verify", "--rank", "2", "--class", "2", "--seed", "1"]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    assert!(run.stdout.contains("all suites passed"));
    assert_eq!(run.stdout.matches("PASS").count(), 9);
}

#[test]
fn exit_codes() {
    let a = r#"{"r":2,"c":2,"coords":["1","0","0"]}"#;
    let b = r#"{"r":3,"c":2,"coords":["1","0","0","0","0","0"]}"#;
    assert_eq!(hallforge(&["mul", "--rank", "2", "--class", "2", a, b]).code, 2);
    assert_eq!(
        hallforge(&["mul", "--rank", "2", "--class", "2", a, r#"{"coords":["1"]}"#]).code,
        2
    );
    assert_eq!(hallforge(&["mul", "--rank", "2", "--class", "2", a]).code, 1);
    assert_eq!(
        hallforge(&["mul", "--rank", "2", "--class", "2", a, "not json"]).code,
        1
    );
    assert_eq!(hallforge(&["frobnicate"]).code, 1);
    assert_eq!(hallforge(&["basis", "--rank", "two", "--class", "2"]).code, 1);
    assert_eq!(hallforge(&["basis", "--rank", "1", "--class", "2"]).code, 2);
    assert_eq!(hallforge(&["basis", "--rank", "2", "--class", "1"]).code, 2);
    assert_eq!(hallforge(&["basis", "--rank", "4", "--class", "4"]).code, 2);
    assert_eq!(
        hallforge(&["verify", "--rank", "2", "--class", "2", "--suite", "nope"]).code,
        1
    );
    assert_eq!(hallforge(&["--help"]).code, 0);
}

#[test]
fn arithmetic_commands() {
    let x = r#"{"coords":["1","0","0"]}"#;
    let y = r#"{"coords":["0","1","0"]}"#;
    let run = hallforge(&["mul", "--rank", "2", "--class", "2", "--json", y, x]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let e: ElementJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(e.coords, ["1", "1", "1"]);
    assert_eq!((e.r, e.c), (Some(2), Some(2)));

    let run = hallforge(&[
        "pow",
        "--rank",
        "2",
        "--class",
        "2",
        "--json",
        "--exponent",
        "-3",
        r#"{"coords":["1","1","0"]}"#,
    ]);
    let e: ElementJson = serde_json::from_str(&run.stdout).unwrap();
    // (x1 x2)^n = x1^n x2^n [x2, x1]^binom(n, 2)
    assert_eq!(e.coords, ["-3", "-3", "6"]);

    let run = hallforge(&[
        "inv",
        "--rank",
        "2",
        "--class",
        "2",
        "--ring",
        "q",
        "--json",
        r#"{"coords":["1/2","2","0"]}"#,
    ]);
    let e: ElementJson = serde_json::from_str(&run.stdout).unwrap();
    // (a, b, c)^-1 = (-a, -b, ab - c)
    assert_eq!(e.coords, ["-1/2", "-2", "1"]);

    let word = r#"{"letters":[{"weight":1,"j":2,"exponent":"1"},{"weight":1,"j":1,"exponent":"1"}]}"#;
    let run = hallforge(&["collect", "--rank", "2", "--class", "2", "--json", word]);
    let e: ElementJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(e.coords, ["1", "1", "1"]);
}

#[test]
fn element_from_file() {
    let path = scratch("x.json");
    std::fs::write(&path, r#"{"coords":["2","0","1"]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let run = hallforge(&["inv", "--rank", "2", "--class", "2", &arg]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout.trim(), "(-2, 0, -1)");
}

#[test]
fn hallpoly_file() {
    let path = scratch("hp.json");
    let run = hallforge(&[
        "hallpoly",
        "--rank",
        "2",
        "--class",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let file: HallPolyFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file.convention.generator_commutator_sign, -1);
    assert_eq!(file.basis.len(), 5);
    let derived = derive_hall_polynomials(2, 3).unwrap();
    assert_eq!(file.product.to_polys().unwrap(), derived.product());
    assert_eq!(file.power.to_polys().unwrap(), derived.power());
    let (pb, _) = derived.binomial_forms().unwrap();
    let arity = 2 * file.basis.len();
    let parsed: Vec<_> = file
        .product_binomial
        .iter()
        .map(|f| f.to_form(arity).unwrap())
        .collect();
    assert_eq!(parsed, pb);
}

#[test]
fn deform_commands() {
    let ab = write_cocycle(
        "ab.json",
        2,
        2,
        serde_json::json!({ "terms": [{ "degrees": [1, 1], "coeff": "1" }] }),
    );
    let run = hallforge(&["deform", "--rank", "2", "--class", "2", "--cocycle", &ab, "check"]);
    assert_eq!(run.code, 0, "{}", run.stderr);

    let x = r#"{"coords":["2","0","0"]}"#;
    let y = r#"{"coords":["3","0","0"]}"#;
    let run = hallforge(&[
        "deform",
        "--rank",
        "2",
        "--class",
        "2",
        "--cocycle",
        &ab,
        "--json",
        "mul",
        x,
        y,
    ]);
    let e: ElementJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(e.coords, ["5", "0", "6"]);

    let run = hallforge(&[
        "deform",
        "--rank",
        "2",
        "--class",
        "2",
        "--cocycle",
        &ab,
        "--json",
        "--samples",
        "30",
        "iso",
        x,
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let iso: IsoJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(iso.verified_pairs, 30);
    // ψ(n) = binom(n, 2)
    assert_eq!(iso.splittings[0].psi[0].terms.len(), 1);
    assert_eq!(iso.splittings[0].psi[0].terms[0].degrees, [2]);
    assert_eq!(iso.images[0].coords, ["2", "0", "-1"]);

    // a²b is not symmetric
    let bad = write_cocycle(
        "bad.json",
        2,
        2,
        serde_json::json!({ "terms": [{ "degrees": [2, 1], "coeff": "2" }, { "degrees": [1, 1], "coeff": "1" }] }),
    );
    let run = hallforge(&["deform", "--rank", "2", "--class", "2", "--cocycle", &bad, "check"]);
    assert_eq!(run.code, 3);
    assert!(run.stdout.contains("symmetric false"));
    assert_eq!(
        hallforge(&["deform", "--rank", "2", "--class", "2", "--cocycle", &bad, "mul", x, y]).code,
        2
    );
    assert_eq!(
        hallforge(&["deform", "--rank", "2", "--class", "3", "--cocycle", &ab, "check"]).code,
        2
    );

    let parsed: CocycleFile = serde_json::from_str(&std::fs::read_to_string(&ab).unwrap()).unwrap();
    assert_eq!(parsed.cocycles.len(), 2);
}

#[test]
fn lie_commands() {
    let run = hallforge(&["lie", "--rank", "2", "--class", "2", "--json", "constants"]);
    let k: LieConstantsJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(k.dims, [2, 1]);
    assert_eq!(k.constants.len(), 1);
    assert_eq!((k.constants[0].a, k.constants[0].b), (0, 1));
    assert_eq!(k.constants[0].value, ["0", "0", "-1"]);

    let run = hallforge(&["lie", "--rank", "3", "--class", "2", "--json", "compare"]);
    assert_eq!(run.code, 0);
    assert!(serde_json::from_str::<LieCompareJson>(&run.stdout).unwrap().equal);

    let run = hallforge(&["lie", "--rank", "2", "--class", "3", "--json", "pf"]);
    assert_eq!(run.code, 0);
    let pf: PfJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!((pf.domain, pf.codomain, pf.dimension), (3, 3, 1));
}

#[test]
fn petresco_of_generators() {
    let run = hallforge(&["petresco", "--rank", "2", "--class", "2", "--json"]);
    let p: PetrescoJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(p.taus.len(), 2);
    assert_eq!(p.taus[0].coords, ["1", "1", "0"]);
    // x1^2 x2^2 = (x1 x2)^2 τ_2
    assert_eq!(p.taus[1].coords, ["0", "0", "-1"]);
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "verify",
        "--rank",
        "2",
        "--class",
        "3",
        "--seed",
        "7",
        "--samples",
        "15",
        "--json",
    ];
    let (a, b) = (hallforge(&args), hallforge(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let report: VerifyReport = serde_json::from_str(&a.stdout).unwrap();
    assert!(report.passed());
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", a.stdout);

    let ab = write_cocycle(
        "seed.json",
        2,
        3,
        serde_json::json!({ "terms": [{ "degrees": [1, 1], "coeff": "2" }] }),
    );
    let args = [
        "deform",
        "--rank",
        "2",
        "--class",
        "3",
        "--cocycle",
        &ab,
        "--seed",
        "3",
        "--json",
        "iso",
    ];
    assert_eq!(hallforge(&args).stdout, hallforge(&args).stdout);
}
