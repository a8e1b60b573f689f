//! One line per acceptance criterion. All comparisons are exact (zero tolerance); the only
//! numeric bounds are the wall-clock budgets below.

use std::process::Command;
use std::time::{Duration, Instant};

use qvmf::hecke;
use qvmf::heisenberg::{self, axioms};
use qvmf::par::Strategy;
use qvmf::qv::{self, reference};
use qvmf::ring::rational::int;
use qvmf::ring::LaurentScalar;
use qvmf::verify::{self, VerifyConfig};

const DIMENSION_TABLE: [(u32, usize, usize); 15] = [
    (0, 1, 1),
    (2, 2, 1),
    (4, 5, 3),
    (6, 10, 5),
    (8, 19, 9),
    (10, 33, 14),
    (12, 57, 24),
    (14, 92, 35),
    (16, 147, 55),
    (18, 227, 80),
    (20, 345, 118),
    (22, 512, 167),
    (24, 752, 240),
    (26, 1083, 331),
    (28, 1545, 462),
];

const BUDGET_DIMS: Duration = Duration::from_secs(60);
const BUDGET_BASES: Duration = Duration::from_secs(30);
const BUDGET_VOA: Duration = Duration::from_secs(180);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    NotReproducible,
}

struct Line {
    id: u32,
    status: Status,
    detail: String,
}

fn line(id: u32, ok: bool, detail: impl Into<String>) -> Line {
    Line { id, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn s() -> Strategy {
    Strategy::Parallel
}

fn criterion_1() -> Line {
    let (out, dt) = timed(|| {
        Command::new(env!("CARGO_BIN_EXE_qvmf"))
            .args(["dims", "--max-weight", "28", "--output", "csv"])
            .output()
            .expect("binary runs")
    });
    let text = String::from_utf8_lossy(&out.stdout);
    let mut want = String::from("k,dim_Q,dim_M\n");
    for (k, q, m) in DIMENSION_TABLE {
        want.push_str(&format!("{k},{q},{m}\n"));
    }
    let ok = out.status.success() && text == want && dt < BUDGET_DIMS;
    line(1, ok, format!("15 rows vs the published dimension table, formula and nullspace agree, {:.1}s of {}s", dt.as_secs_f64(), BUDGET_DIMS.as_secs()))
}

fn criterion_2() -> Line {
    let (ok, dt) = timed(|| {
        let spans = [0, 2, 4, 6, 8].into_iter().all(|k| reference::reference_span_check(k).unwrap());
        // the weight-8 row through P(h(-4)) carries u^2/24 = -pi^2/6 and lies in the kernel
        let rows = reference::reference_rows(8).unwrap();
        let key = qv::QvKey::new(reference::FLAGGED.1, reference::FLAGGED.2.parse().unwrap());
        let flagged = rows.iter().any(|r| {
            r.coeff(&key) == LaurentScalar::monomial(qvmf::ring::rational::rat(1, 24), 2) && qv::lambda_op(r).is_zero()
        });
        spans && flagged
    });
    line(2, ok && dt < BUDGET_BASES, format!("mutual span k in {{0,2,4,6,8}}, flagged E2^2 h(-2) read as -pi^2/6, {:.1}s", dt.as_secs_f64()))
}

fn criterion_3() -> Line {
    let dims = verify::kernel_dims_check(s(), 28).unwrap();
    let onto = verify::surjectivity_check(s(), 20).unwrap();
    line(3, dims && onto, format!("nullity = closed formula k <= 28: {dims}; rank = dim Q_k(S) k <= 20: {onto}"))
}

fn criterion_4() -> Line {
    let ok = (0..=12).step_by(2).all(|k| verify::p_bijection_check(k).unwrap());
    line(4, ok, "Lambda P = 0, P P^-1 = id, dimension match, k <= 12")
}

fn criterion_5() -> Line {
    let preserve = verify::t_prime_preserves_kernel(s(), 6, 10).unwrap();
    let commute = (0..=12).step_by(2).all(|k| hecke::commutation_check(&[2, 3, 4, 5], k).unwrap());
    let recursion = [2u64, 3].into_iter().all(|p| (0..=12).step_by(2).all(|k| hecke::relation_check(p, 1, k).unwrap()));
    let m4 = verify::m4_eigenvalues().unwrap();
    let m4_ok = m4 == vec![int(9), int(6), int(6)];
    let t1 = verify::hecke_t_one_check(12).unwrap();
    let doubling = verify::nabla_doubling_check(s(), &[2, 3, 4, 5, 6], 8).unwrap();
    let ok = preserve && commute && recursion && m4_ok && t1 && doubling;
    line(
        5,
        ok,
        format!(
            "preserve {preserve}, commute {commute}, recursion with p^(weight-1) {recursion}, M_4 {{9,6,6}} {m4_ok}, \
             T_m(1) {t1}, doubling for u*theta + L(-1) {doubling}"
        ),
    )
}

fn criterion_6() -> Line {
    let eig = verify::quasimodular_eigenbasis_check(s(), &[2, 3], 18).unwrap();
    let theta = verify::theta_doubling_check(s(), 7, 16).unwrap();
    let ram = verify::ramanujan_check(16, 30);
    line(6, eig && theta && ram, format!("eigenbasis k <= 18 {eig}, theta doubling m <= 7 {theta}, Ramanujan to q^30 {ram}"))
}

fn criterion_7() -> Line {
    let colored = (0..=14u32).all(|n| qv::dim_qv(2 * n as i64).unwrap() as u128 == qv::colored_partition_count(n as usize));
    let doubletons = (1..=14i64).all(|k| {
        let d = qv::dim_mv(2 * k).unwrap() as i64 - qv::dim_mv(2 * k - 2).unwrap() as i64;
        d == qv::doubleton_count((k + 2) as u32) as i64
    });
    line(7, colored && doubletons, format!("colored n <= 14 {colored}, doubletons k <= 14 {doubletons}"))
}

/// The n = 2 sub-claim is false: the alternating sum is (ad L(1))^2 L(-1) = 2 L(1), which is
/// nonzero on F_6 S. The line reports FAIL and the counterexample is asserted separately.
fn criterion_8() -> (Line, bool) {
    let ((jacobi, vir, alt, two_is_l1, two_vanishes), dt) = timed(|| {
        let samples = axioms::jacobi_samples(0, 200, 4, 3);
        let jacobi = s().all(samples, |x| axioms::jacobi_holds(&x));
        let pairs: Vec<(i64, i64)> = (-3..=3).flat_map(|m| (-3..=3).map(move |n| (m, n))).collect();
        let vir = s().all(pairs, |(m, n)| heisenberg::virasoro_bracket_check(m, n, 6));
        let alt = (3..=5).all(|n| axioms::alternating_sum_vanishes(n, 6));
        (jacobi, vir, alt, axioms::alternating_sum_two_is_2l1(6), axioms::alternating_sum_vanishes(2, 6))
    });
    let attainable = jacobi && vir && alt && dt < BUDGET_VOA;
    let l = line(
        8,
        attainable && two_vanishes,
        format!(
            "Jacobi 200 triples {jacobi}, Virasoro c=1 {vir}, alternating sum n=3..5 {alt}; \
             n=2 vanishes {two_vanishes} (it equals 2 L(1): {two_is_l1}), {:.1}s",
            dt.as_secs_f64()
        ),
    );
    (l, attainable && two_is_l1 && !two_vanishes)
}

fn criterion_9() -> Line {
    // the suite caps the cocycle truncation at 4 and runs the connection identity at 6
    let cfg = VerifyConfig::default();
    let lines = verify::run(verify::Suite::Geometry, &cfg);
    let need = ["cocycle", "X(a)", "connection identity"];
    let ok = need.iter().all(|n| lines.iter().any(|l| l.name.contains(n) && l.passed)) && lines.iter().all(|l| l.passed);
    let detail = lines.iter().map(|l| format!("{}: {}", l.name, l.passed)).collect::<Vec<_>>().join("; ");
    line(9, ok, format!("20 pairs x 30 samples; {detail}"))
}

fn main() {
    let mut lines = vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()];
    let (c8, c8_expected) = criterion_8();
    lines.push(c8);
    lines.push(criterion_9());
    lines.push(Line {
        id: 10,
        status: Status::NotReproducible,
        detail: "analytic transformation laws and holomorphy at the cusp are not checked; their algebraic consequences are".into(),
    });
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotReproducible => "NOT REPRODUCIBLE",
        };
        println!("criterion {}: {tag} - {}", l.id, l.detail);
    }
    let mut unexpected = Vec::new();
    for l in &lines {
        let want = match l.id {
            8 => Status::Fail,
            10 => Status::NotReproducible,
            _ => Status::Pass,
        };
        if l.status != want {
            unexpected.push(format!("criterion {}: expected {want:?}, got {:?}", l.id, l.status));
        }
    }
    if !c8_expected {
        unexpected.push("criterion 8: attainable parts or the n = 2 counterexample did not reproduce".into());
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (8 fails on its n = 2 sub-claim, 10 declared)");
    } else {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}
