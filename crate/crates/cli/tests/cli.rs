use proptest::prelude::*;
use riordan::series::rat;
use riordan::Series;
use riordan_cli::app::run;
use riordan_cli::expr::parse_expression;

fn riordan(args: &[&str]) -> riordan_cli::app::Outcome {
    run(std::iter::once("riordan").chain(args.iter().copied()))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn pascal_csv_matches_binomials() {
    let out = riordan(&["matrix", "--g", "1/(1-z)", "--f", "z/(1-z)", "--trunc", "5", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut expected = String::from("n\\k,0,1,2,3,4,5\n");
    for n in 0..=5 {
        let row: Vec<String> = (0..=n).map(|k| binomial(n, k).to_string()).collect();
        expected.push_str(&format!("{n},{}\n", row.join(",")));
    }
    assert_eq!(out.stdout, expected);
}

#[test]
fn rmul_agrees_with_matrix_of_product() {
    let sq = riordan(&[
        "rmul", "--g", "1/(1-z)", "--f", "z/(1-z)", "--g2", "1/(1-z)", "--f2", "z/(1-z)",
        "--trunc", "6", "--format", "json",
    ]);
    assert_eq!(sq.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&sq.stdout).unwrap();
    assert_eq!(doc["kind"], "array");
    assert_eq!(doc["g"][3], "8");
    assert_eq!(doc["multipliers"][0][2], "2");

    let direct = riordan(&["matrix", "--g", "1/(1-2z)", "--f", "z/(1-2z)", "--trunc", "6"]);
    assert_eq!(direct.code, 2, "implicit multiplication is not part of the grammar");
    let direct = riordan(&["matrix", "--g", "1/(1-2*z)", "--f", "z/(1-2*z)", "--trunc", "6", "--format", "csv"]);
    let p = riordan(&["matrix", "--g", "1/(1-z)", "--f", "z/(1-z)", "--trunc", "6", "--format", "csv"]);
    // row 4 of P^2: C(4,k) 2^(4-k)
    let row4 = direct.stdout.lines().nth(5).unwrap();
    assert_eq!(row4, "4,16,32,24,8,1");
    assert_ne!(p.stdout, direct.stdout);
}

#[test]
fn double_riordan_commands() {
    let out = riordan(&[
        "apply", "--g", "1", "--m", "z", "--m", "z/(1-z^2)", "--a", "1/(1-z^2)", "--trunc", "6",
        "--format", "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "series");
    assert_eq!(doc["trunc"], 6);

    let inv = riordan(&["rinv", "--g", "1/(1-z^2)", "--m", "z", "--m", "z/(1-z^2)", "--trunc", "8"]);
    assert_eq!(inv.code, 0);
    assert!(inv.stdout.starts_with("Double Riordan array"));

    let bad = riordan(&["matrix", "--g", "1+z", "--m", "z", "--m", "z"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("g violates"));
}

#[test]
fn map_commands() {
    let out = riordan(&["map", "--map", "phi", "--g", "1/(1-z)", "--f", "z/(1-z)", "--trunc", "6", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "component,0,1,2,3,4,5,6\ng,1,0,1,0,1,0,1\nm1,0,1,0,0,0,0,0\nm2,0,1,0,1,0,1,0\n"
    );
    let psi = riordan(&["map", "--map", "psi", "--g", "1/(1-z)", "--f", "z/(1-z)"]);
    assert_eq!(psi.code, 1, "Pascal is not checkerboard");
    let chii = riordan(&["map", "--map", "chii", "--k", "3", "--g", "1", "--m", "z", "--m", "z"]);
    assert_eq!(chii.code, 2);
    let phik = riordan(&["map", "--map", "phik", "--k", "3", "--position", "1", "--g", "1", "--f", "z+z^2"]);
    assert_eq!(phik.code, 0);
    assert!(phik.stdout.contains("m1 = z + z^4"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(riordan(&["eval"]).code, 2);
    assert_eq!(riordan(&["frobnicate"]).code, 2);
    assert_eq!(riordan(&["eval", "1 +"]).code, 2);
    assert_eq!(riordan(&["verify", "--map", "chii"]).code, 2);
    let out = riordan(&["matrix", "--g", "1"]);
    assert_eq!(out.code, 2);
    let json = riordan(&["eval", "(z", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json.stderr).unwrap();
    assert_eq!(doc["kind"], "error");
    assert_eq!(doc["code"], 2);
    assert!(json.stdout.is_empty());
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(riordan(&["eval", "1/z"]).code, 1);
    assert_eq!(riordan(&["rinv", "--g", "z", "--f", "z"]).code, 1);
    assert_eq!(riordan(&["map", "--map", "phik", "--k", "2", "--position", "3", "--g", "1", "--f", "z"]).code, 1);
}

#[test]
fn verify_report_in_every_format() {
    for format in ["json", "csv", "pretty"] {
        let a = riordan(&["verify", "--map", "chii", "--k", "2", "--position", "3", "--trials", "5", "--trunc", "9", "--seed", "3", "--format", format]);
        assert_eq!(a.code, 0, "{}", a.stdout);
        let b = riordan(&["verify", "--map", "chii", "--k", "2", "--position", "3", "--trials", "5", "--trunc", "9", "--seed", "3", "--format", format]);
        assert_eq!(a, b);
    }
}

#[test]
fn unicode_minus_is_accepted() {
    let a = riordan(&["eval", "1/(1−z)", "--trunc", "3"]);
    assert_eq!(a.stdout, "1 + z + z^2 + z^3 + O(z^4)\n");
}

fn small_rational() -> impl Strategy<Value = riordan::Coefficient> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #[test]
    fn display_round_trips(coeffs in prop::collection::vec(small_rational(), 1..12)) {
        let s = Series::new(coeffs);
        let n = s.truncation();
        let back = parse_expression(&s.to_string()).unwrap().eval(n).unwrap();
        prop_assert_eq!(back, s);
    }
}
