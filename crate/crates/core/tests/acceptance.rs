//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and asserts.
//! Every comparison is exact; the only numeric thresholds are wall-clock bounds.

use std::time::{Duration, Instant};

use degspivey::classical;
use degspivey::sequences::{limit_rows, stirling2_deg_triangle, stirling2_deg_via_basis, Families};
use degspivey::series::{self, stirling_column};
use degspivey::verify::{self, IdentityId, Mode, Mutation, VerifyReport};
use degspivey::{Bindings, Poly, Rat, SeqKind, Var};

fn record(id: u32, what: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {id}: {what} ({detail})");
    assert!(ok, "criterion {id} failed: {what}: {detail}");
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn report_detail(r: &VerifyReport, elapsed: Duration) -> String {
    format!("{}; {:.2?}", r.summary(), elapsed)
}

fn at_lambda(v: Rat) -> Bindings {
    [(Var::Lambda, v)].into()
}

#[test]
fn criterion_01_theorem1_symbolic() {
    let (r, dt) = timed(|| verify::check_theorem1(8, 8, &Mode::Symbolic));
    let ok = r.ok() && r.grid_size == 81 && dt < Duration::from_secs(60);
    record(
        1,
        "Theorem 1 symbolic, 0 <= n, m <= 8",
        ok,
        &report_detail(&r, dt),
    );
}

#[test]
fn criterion_02_theorem2_symbolic() {
    let (r, dt) = timed(|| verify::check_theorem2(6, 6, &Mode::Symbolic));
    let ok = r.ok() && r.grid_size == 49 && dt < Duration::from_secs(120);
    record(
        2,
        "Theorem 2 symbolic in t and l, 0 <= n, m <= 6",
        ok,
        &report_detail(&r, dt),
    );
}

#[test]
fn criterion_03_theorem3_symbolic() {
    let (r, dt) = timed(|| verify::check_theorem3(6, 6, &Mode::Symbolic));
    let ok = r.ok() && r.grid_size == 49 && dt < Duration::from_secs(120);
    record(
        3,
        "Theorem 3 symbolic in t and l, 0 <= n, m <= 6",
        ok,
        &report_detail(&r, dt),
    );
}

#[test]
fn criterion_04_kim_kim_recurrence_and_spivey_numbers() {
    let r = verify::check_eq2_kim_kim(6, 6, &Mode::Symbolic);

    // l = 0, x = 1 specialization of both sides of the degenerate recurrence,
    // compared against Bell numbers from the Bell triangle.
    let bell = classical::bell_numbers(8);
    let expected: Vec<Rat> = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
        .into_iter()
        .map(Rat::from_int)
        .collect();
    let point = Mode::Rational(vec![
        [(Var::Lambda, Rat::zero()), (Var::X, Rat::one())].into()
    ]);
    let specialized = verify::check_eq2_kim_kim(4, 4, &point);
    let fam = Families::new(8, 0);
    let b: Bindings = [(Var::Lambda, Rat::zero()), (Var::X, Rat::one())].into();
    let deg_at_classical: Vec<Rat> = (0..=8)
        .map(|n| fam.bell_deg(n).eval(&b).constant_value().unwrap())
        .collect();
    let eq1 = verify::check_spivey_eq1(4, 4, &Mode::Symbolic);

    let ok =
        r.ok() && specialized.ok() && eq1.ok() && bell == expected && deg_at_classical == expected;
    record(
        4,
        "Kim-Kim recurrence symbolic for n, m <= 6; l = 0, x = 1 gives Spivey with Bell numbers to n = 8",
        ok,
        &format!(
            "{}; {}; {}; bell = {:?}",
            r.summary(),
            specialized.summary(),
            eq1.summary(),
            deg_at_classical
        ),
    );
}

#[test]
fn criterion_05_triple_oracle_stirling() {
    let recurrence = stirling2_deg_triangle(12);
    let basis = stirling2_deg_via_basis(12);
    let columns: Vec<_> = (0..=12).map(|k| stirling_column(k, 12)).collect();
    let mut mismatches = Vec::new();
    for n in 0..=12 {
        for k in 0..=n {
            let a = &recurrence[n][k];
            let b = basis.get(n, Some(k)).unwrap();
            let c = columns[k].egf_coefficient(n).unwrap();
            if a != b || a != c {
                mismatches.push((n, k));
            }
        }
        // EGF column k has nothing below index k
        for k in n + 1..=12 {
            if !columns[k].coeffs()[n].is_zero() {
                mismatches.push((n, k));
            }
        }
    }
    record(
        5,
        "recurrence, change-of-basis and EGF Stirling routes agree, 0 <= k <= n <= 12",
        mismatches.is_empty(),
        &format!("91 entries, mismatches {mismatches:?}"),
    );
}

#[test]
fn criterion_06_closed_forms_vs_series_oracle() {
    let n_max = 12;
    let fam = Families::new(n_max, 4);
    let bell_gf = series::fully_deg_bell_gf(n_max);
    let fubini_gf = series::deg_fubini_gf(n_max);
    let mut bad = Vec::new();
    for n in 0..=n_max {
        if &fam.bell_fully_deg(n) != bell_gf.egf_coefficient(n).unwrap() {
            bad.push(format!("bell n={n}"));
        }
        if &fam.fubini_deg(n) != fubini_gf.egf_coefficient(n).unwrap() {
            bad.push(format!("fubini n={n}"));
        }
    }
    for alpha in 0..=4u32 {
        let gf = series::two_var_fubini_gf(alpha, n_max);
        for n in 0..=n_max {
            if fam.fubini_two_var_alpha(n, alpha) != gf.egf_coefficient(n).unwrap() {
                bad.push(format!("two-var n={n} alpha={alpha}"));
            }
        }
    }
    record(
        6,
        "closed forms equal generating-function coefficients, n <= 12, alpha <= 4",
        bad.is_empty(),
        &format!("{} comparisons, mismatches {bad:?}", 13 * 7),
    );
}

#[test]
fn criterion_07_limit_suite() {
    let mut failures = Vec::new();
    let mut rows = 0;
    for kind in [
        SeqKind::DegStirling2,
        SeqKind::DegBell,
        SeqKind::FullyDegBell,
        SeqKind::DegFubini,
        SeqKind::TwoVarDegFubini,
        SeqKind::FallingFactorial,
    ] {
        let table = limit_rows(kind, 10, Some(4)).unwrap();
        rows += table.len();
        failures.extend(
            table
                .iter()
                .filter(|r| !r.matches)
                .map(|r| format!("{kind} n={} k={:?}", r.n, r.k)),
        );
    }
    // The l -> 0 forms of Theorems 1-3: at l = 0 each theorem still holds and
    // its left side is the classical family, whose own Spivey-type identity
    // holds with classical ingredients.
    let zero = Mode::Rational(vec![at_lambda(Rat::zero())]);
    let reductions = [
        verify::check_theorem1(5, 5, &zero),
        verify::check_spivey_eq1(5, 5, &Mode::Symbolic),
        verify::check_theorem2(5, 5, &zero),
        verify::check_spivey_poly_eq3(5, 5, &Mode::Symbolic),
        verify::check_theorem3(5, 5, &zero),
        verify::check_theorem3_limit(5, 5, &Mode::Symbolic),
    ];
    failures.extend(
        reductions
            .iter()
            .filter(|r| !r.ok())
            .map(VerifyReport::summary),
    );
    record(
        7,
        "l = 0 specializations match classical families for n <= 10 and the l -> 0 theorem forms hold",
        failures.is_empty(),
        &format!("{rows} limit rows, 6 reduction grids, failures {failures:?}"),
    );
}

#[test]
fn criterion_08_zero_argument_specializations() {
    let r = verify::check_eq12(10, 4, &Mode::Symbolic);
    let ok = r.ok() && r.grid_size == 11 * 5;
    record(
        8,
        "F^(alpha)(0, y) and F^(alpha)(x, 0) forms, n <= 10, alpha <= 4",
        ok,
        &r.summary(),
    );
}

#[test]
fn criterion_09_vandermonde_and_splitting() {
    let v = verify::check_vandermonde_deg(12, &Mode::Symbolic);
    let s = verify::check_exp_splitting(6, 6, &Mode::Symbolic);
    // the l = 0 grid is the classical exponential law: every entry is 1
    let (lhs, _) = series::nested_exp_splitting(6, 6);
    let b = at_lambda(Rat::zero());
    let classical = (0..=6).all(|j| (0..=6).all(|k| lhs.entry(j, k).eval(&b) == Poly::one()));
    let ok = v.ok() && s.ok() && s.grid_size == 49 && classical;
    record(
        9,
        "degenerate Vandermonde and e_l(u+v) = e_l(u) e_l(v/(1+lu)) at order (6, 6)",
        ok,
        &format!(
            "{}; {}; classical grid {classical}",
            v.summary(),
            s.summary()
        ),
    );
}

fn small_counterexample(r: &VerifyReport) -> bool {
    r.fail > 0
        && r.first_counterexample
            .as_ref()
            .is_some_and(|c| c.lhs != c.rhs && c.indices["n"] + c.indices["m"] <= 3)
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let t1 = verify::check_with_mutation(
        IdentityId::Theorem1,
        3,
        3,
        &Mode::Symbolic,
        Mutation::DropUnitFalling,
    );
    let t3 = verify::check_with_mutation(
        IdentityId::Theorem3,
        3,
        3,
        &Mode::Symbolic,
        Mutation::UnshiftedOrderArgument,
    );
    let ok = small_counterexample(&t1) && small_counterexample(&t3);
    record(
        10,
        "corrupted Theorem 1 and Theorem 3 right sides are caught at n + m <= 3",
        ok,
        &format!("{}; {}", t1.summary(), t3.summary()),
    );
}
