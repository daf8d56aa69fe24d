//! The two Fock spaces are time reflections of one another: constant-function
//! moments coincide, and reflecting every test function maps one space's
//! moments onto the other's.
//!
//! ```bash
//! cargo run -p monotone-fock --example anti_monotone_mirror
//! ```

use monotone_fock::anti_monotone::mirror_spec;
use monotone_fock::discrete_fock::OrderFlag;
use monotone_fock::moment_engine::{continuous_moment_exact, MomentSpec};
use monotone_fock::partitions::{enumerate_dyck_words, SignWord};
use monotone_fock::test_function::TestFunction;
use num_complex::Complex64;

fn main() {
    println!("constant functions: moments agree word by word");
    println!("      word   monotone   anti-monotone");
    for n in 1..=3 {
        for word in enumerate_dyck_words(n).unwrap() {
            let mono = MomentSpec::constant_ones(word.clone(), OrderFlag::Monotone);
            let anti = mirror_spec(&mono);
            let a = continuous_moment_exact(&mono).unwrap().re;
            let b = continuous_moment_exact(&anti).unwrap().re;
            println!("  {:>8}   {a:>8.6}   {b:>13.6}", word.to_string());
            assert_eq!(a, b);
        }
    }

    // an asymmetric step weight on the inner block separates the two spaces:
    // the monotone kernel integrates it against 1-t, the anti-monotone one
    // against t
    let g = TestFunction::piecewise_constant(
        vec![0.0, 0.25, 1.0],
        vec![Complex64::new(2.0, 0.0), Complex64::new(-0.5, 1.0)],
    )
    .unwrap();
    let word: SignWord = "--++".parse().unwrap();
    let functions = vec![
        TestFunction::one(),
        g.clone(),
        g.clone(),
        TestFunction::one(),
    ];
    let reflected: Vec<TestFunction> = functions.iter().map(TestFunction::reflected).collect();

    let mono = MomentSpec::new(word.clone(), functions.clone(), OrderFlag::Monotone).unwrap();
    let anti_plain = MomentSpec::new(word.clone(), functions, OrderFlag::AntiMonotone).unwrap();
    let anti_reflected = MomentSpec::new(word, reflected, OrderFlag::AntiMonotone).unwrap();

    let m = continuous_moment_exact(&mono).unwrap();
    let ap = continuous_moment_exact(&anti_plain).unwrap();
    let ar = continuous_moment_exact(&anti_reflected).unwrap();
    println!("\nword --++ with functions (1, g, g, 1), g a step function:");
    println!(
        "  monotone moment:                    {:.7}{:+.7}i",
        m.re, m.im
    );
    println!(
        "  anti-monotone moment:               {:.7}{:+.7}i  (differs)",
        ap.re, ap.im
    );
    println!(
        "  anti-monotone with reflected f_i:   {:.7}{:+.7}i  (matches)",
        ar.re, ar.im
    );
    assert!((m - ar).norm() < 1e-12);
    assert!((m - ap).norm() > 1e-3);
}
