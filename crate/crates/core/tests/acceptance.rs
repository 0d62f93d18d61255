//! One line per acceptance criterion; exits nonzero if any fails.

use sfcond::selftest;

fn main() {
    let checks: [fn() -> selftest::CriterionResult; 7] = [
        selftest::criterion_1,
        selftest::criterion_2,
        selftest::criterion_3,
        selftest::criterion_4,
        selftest::criterion_5,
        selftest::criterion_6,
        selftest::criterion_7,
    ];
    let mut failed = 0;
    for check in checks {
        let r = check();
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
            for d in r.detail.iter().filter(|d| d.starts_with("FAIL")) {
                println!("    {d}");
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
