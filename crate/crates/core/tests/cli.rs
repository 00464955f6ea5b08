use std::path::PathBuf;

use gradscheme::cli::run;

fn gs(args: &[&str]) -> (i32, String) {
    let mut all = vec!["gradscheme"];
    all.extend_from_slice(args);
    run(all)
}

fn write_deck(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gradscheme-{}-{name}.deck", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn check_accepts_bundled_gradings() {
    for g in ["GammaZero6", "GammaCyc3", "GammaCubic", "GammaTriv"] {
        let (code, out) = gs(&["check", g]);
        assert_eq!(code, 0, "{g}: {out}");
    }
}

#[test]
fn universal_group_of_cubic_grading() {
    let (code, out) = gs(&["universal", "GammaCubic"]);
    assert_eq!(code, 0);
    assert!(out.contains("U=Z/3"), "{out}");
}

#[test]
fn weyl_modes() {
    let (_, closure) = gs(&["weyl", "GammaCubic"]);
    assert!(closure.contains("weyl.order=2"), "{closure}");
    let (_, rational) = gs(&["weyl", "GammaCubic", "--mode", "rational"]);
    assert!(rational.contains("weyl.order=1"), "{rational}");
    let (_, split) = gs(&["weyl", "GammaCubic", "--mode", "split"]);
    assert!(split.contains("weyl.field=F3"), "{split}");
}

#[test]
fn diagonal_points_over_dual_numbers() {
    let (code, out) = gs(&[
        "points",
        "GammaCyc3",
        "--ring",
        "F3eps",
        "--functor",
        "diag",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.ends_with("=3")), "{out}");
}

#[test]
fn member_reports_certificate() {
    let (_, out) = gs(&["member", "swapz"]);
    assert!(out.contains("autgamma=true"), "{out}");
    assert!(out.contains("dgroup.certificate=relation (3,0)"), "{out}");
}

#[test]
fn ses_over_f7() {
    let (code, out) = gs(&["ses", "GammaCubic", "--field", "F7"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn verify_theorem_on_small_grading() {
    let (code, out) = gs(&["verify-theorem", "GammaCyc3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn unknown_name_is_an_input_error() {
    let (code, out) = gs(&["check", "Nope"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn user_deck_with_bad_grading_exits_one() {
    let path = write_deck(
        "bad",
        "algebra B over F5 dim 2 basis a,b\nmul a a = b\ngrading G on B by Z/4 deg a=1 b=1\n",
    );
    let (code, out) = gs(&["--deck", path.to_str().unwrap(), "check", "G"]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn user_deck_round_trips_through_print() {
    let path = write_deck(
        "print",
        "algebra B over F5 dim 2 basis a,b\nmul a a = b\ngrading G on B by Z/4 deg a=1 b=2\n",
    );
    let (code, first) = gs(&["--deck", path.to_str().unwrap(), "print"]);
    assert_eq!(code, 0, "{first}");
    let again = write_deck("print2", &first);
    let (_, second) = gs(&["--deck", again.to_str().unwrap(), "print"]);
    let _ = std::fs::remove_file(&path);
    let _ = std::fs::remove_file(&again);
    assert_eq!(first, second);
}
