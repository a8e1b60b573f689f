//! Property suites behind `qvmf verify`. Each check yields one line; errors count as failures.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{self, IntMatrix2};
use crate::hecke;
use crate::heisenberg::{self, axioms};
use crate::par::Strategy;
use crate::qmf::eigen::{quasimodular_eigenbasis_rational, rational_eigenvalue};
use crate::qmf::mono::{dim_m, dim_q, monomials_of_weight};
use crate::qmf::poly::{delta_e2, theta};
use crate::qmf::reconstruct::{lift, poly_from_qexp, qexp_of_poly, rational_qexp};
use crate::qmf::{hecke_tm_poly, Mono, QmPolynomial};
use crate::qv::form::{e2_degree, qv_term};
use crate::qv::kernel::{kernel_dim, span_rank};
use crate::qv::ops::{l1, on_q};
use crate::qv::{self, QVForm};
use crate::ring::rational::{int, rat, sigma};
use crate::ring::{LaurentScalar, LinComb, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Qmf,
    Voa,
    Lambda,
    Hecke,
    Geometry,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Qmf, Suite::Voa, Suite::Lambda, Suite::Hecke, Suite::Geometry];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Qmf => "qmf",
            Suite::Voa => "voa",
            Suite::Lambda => "lambda",
            Suite::Hecke => "hecke",
            Suite::Geometry => "geometry",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_weight: u32,
    pub trunc: u32,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_weight: 28,
            trunc: 6,
            seed: 0,
            strategy: Strategy::Parallel,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

struct Runner {
    suite: &'static str,
    lines: Vec<CheckLine>,
}

impl Runner {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), lines: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let t = Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.lines.push(CheckLine {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
            millis: t.elapsed().as_millis(),
        });
    }
}

fn all_ok<T: Send>(s: Strategy, items: Vec<T>, f: impl Fn(T) -> Result<bool> + Sync + Send) -> Result<bool> {
    let mut ok = true;
    for r in s.map(items, f) {
        ok &= r?;
    }
    Ok(ok)
}

fn even_upto(k: u32) -> Vec<u32> {
    (0..=k).step_by(2).collect()
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckLine> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, cfg)).collect(),
        Suite::Qmf => qmf_suite(cfg),
        Suite::Voa => voa_suite(cfg),
        Suite::Lambda => lambda_suite(cfg),
        Suite::Hecke => hecke_suite(cfg),
        Suite::Geometry => geometry_suite(cfg),
    }
}

fn mono_poly(m: Mono) -> LinComb<Mono, Rational> {
    LinComb::basis(m)
}

// ---------------------------------------------------------------- qmf

pub fn ramanujan_check(max_weight: u32, order: usize) -> bool {
    (0..=max_weight).step_by(2).all(|k| {
        monomials_of_weight(k).into_iter().all(|m| {
            let f = mono_poly(m);
            let lhs = rational_qexp(&theta(&f), order);
            let d: Vec<Rational> = rational_qexp(&f, order).into_iter().enumerate().map(|(n, c)| c * int(n as i64)).collect();
            lhs == d
        })
    })
}

pub fn theta_doubling_check(s: Strategy, max_m: u64, max_weight: u32) -> Result<bool> {
    let items: Vec<(u64, Mono)> = (2..=max_m)
        .flat_map(|m| even_upto(max_weight).into_iter().flat_map(move |k| monomials_of_weight(k).into_iter().map(move |x| (m, x))))
        .collect();
    all_ok(s, items, |(m, x)| {
        let f: QmPolynomial = lift(&mono_poly(x));
        let lhs = hecke_tm_poly(m, &theta(&f))?;
        let rhs = theta(&hecke_tm_poly(m, &f)?).scale_rat(&int(m as i64));
        Ok(lhs == rhs)
    })
}

pub fn hecke_t_one_check(max_m: u64) -> Result<bool> {
    let one: QmPolynomial = lift(&mono_poly(Mono::ONE));
    for m in 1..=max_m {
        let want = one.scale_rat(&Rational::new(sigma(1, m), m.into()));
        if hecke_tm_poly(m, &one)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `∪θ^ℓ(B_{k−2ℓ})` diagonalizes `T_m` for the given `m` on `Q_k`.
pub fn quasimodular_eigenbasis_check(s: Strategy, ms: &[u64], max_weight: u32) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| {
        let basis = quasimodular_eigenbasis_rational(k)?;
        if basis.len() != dim_q(k as i64)? {
            return Ok(false);
        }
        for f in &basis {
            for &m in ms {
                if rational_eigenvalue(m, f)?.is_none() {
                    return Ok(false);
                }
            }
        }
        let qf: Vec<QmPolynomial> = basis.iter().map(lift).collect();
        Ok(span_rank_q(k, &qf) == basis.len())
    })
}

fn span_rank_q(k: u32, fs: &[QmPolynomial]) -> usize {
    let forms: Vec<QVForm> = fs.iter().map(|f| qv::tensor(f, &heisenberg::vacuum())).collect();
    span_rank(k, &forms).unwrap_or(0)
}

pub fn round_trip_check(s: Strategy, max_weight: u32, seed: u64) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ k as u64);
        let mut f = QmPolynomial::zero();
        for m in monomials_of_weight(k) {
            let c = LaurentScalar::monomial(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)), rng.gen_range(-2..=2));
            f.add_term(m, c);
        }
        let order = crate::qmf::reconstruct::determining_order(k) + 2;
        Ok(poly_from_qexp(k, &qexp_of_poly(&f, order))? == f)
    })
}

pub fn hecke_stability_check(s: Strategy, max_m: u64, max_weight: u32) -> Result<bool> {
    let items: Vec<(u64, Mono)> = (2..=max_m)
        .flat_map(|m| even_upto(max_weight).into_iter().flat_map(move |k| monomials_of_weight(k).into_iter().map(move |x| (m, x))))
        .collect();
    all_ok(s, items, |(m, x)| hecke_tm_poly(m, &lift(&mono_poly(x))).map(|_| true))
}

/// `[∂_{E2}, θ] = k/12` on weight `k`.
pub fn sl2_bracket_check(max_weight: u32) -> bool {
    even_upto(max_weight).into_iter().all(|k| {
        monomials_of_weight(k).into_iter().all(|m| {
            let f = mono_poly(m);
            let br = &delta_e2(&theta(&f)) - &theta(&delta_e2(&f));
            br == f.scale_rat(&rat(k as i64, 12))
        })
    })
}

fn qmf_suite(cfg: &VerifyConfig) -> Vec<CheckLine> {
    let s = cfg.strategy;
    let mut r = Runner::new(Suite::Qmf);
    r.check("theta matches q d/dq on monomials, weight <= 16, order 30", || Ok((ramanujan_check(16, 30), "exact".into())));
    r.check("poly_from_qexp inverts qexp_of_poly, weight <= 20", || Ok((round_trip_check(s, 20, cfg.seed)?, format!("seed {}", cfg.seed))));
    r.check("T_m maps Q_k into Q_k, m <= 7, k <= 16", || Ok((hecke_stability_check(s, 7, 16)?, "overdetermined reconstruction".into())));
    r.check("T_m(theta f) = m theta T_m(f), m <= 7, k <= 12", || Ok((theta_doubling_check(s, 7, 12)?, "all monomials".into())));
    r.check("T_m(1) = sigma_1(m)/m, m <= 12", || Ok((hecke_t_one_check(12)?, String::new())));
    r.check("quasimodular eigenbasis diagonalizes T_2, T_3, T_5, k <= 18", || {
        Ok((quasimodular_eigenbasis_check(s, &[2, 3, 5], 18)?, "rational strata".into()))
    });
    r.check("[d/dE2, theta] = k/12 on weight k <= 16", || Ok((sl2_bracket_check(16), String::new())));
    r.check("T_2 eigenvalues on M_12 are {2049, -24}", || {
        let b = crate::qmf::eigen::modular_eigenbasis_rational(12)?;
        let ev: Vec<Option<Rational>> = b.iter().map(|f| rational_eigenvalue(2, f)).collect::<Result<_>>()?;
        Ok((ev == vec![Some(int(2049)), Some(int(-24))], format!("{} forms", dim_m(12)?)))
    });
    r.lines
}

// ---------------------------------------------------------------- voa

fn voa_suite(cfg: &VerifyConfig) -> Vec<CheckLine> {
    let s = cfg.strategy;
    let cap = cfg.trunc.min(6);
    let mut r = Runner::new(Suite::Voa);
    r.check("creativity on degree <= 5", || Ok((axioms::creativity_check(5), String::new())));
    r.check("Jacobi identity, 200 random triples, degree <= 4, r,s,t in [-3,3]", || {
        let samples = axioms::jacobi_samples(cfg.seed, 200, 4, 3);
        Ok((s.all(samples, |x| axioms::jacobi_holds(&x)), format!("seed {}", cfg.seed)))
    });
    r.check("(L(-1)a)(n) = -n a(n-1) on F_5 S, deg a <= 4", || Ok((axioms::translation_covariance_check(4, 5), String::new())));
    r.check("L(1): S_{k+1} -> S_k onto, 1 <= k <= 8", || Ok(((1..=8).all(axioms::l1_surjective), String::new())));
    r.check(format!("[L(+-1), h(-n)] from modes of omega on F_{cap} S"), || Ok((axioms::sl2_commutator_check(cap, 4), String::new())));
    r.check(format!("Virasoro bracket c = 1 on F_{cap} S, |m|,|n| <= 3"), || {
        let pairs: Vec<(i64, i64)> = (-3..=3).flat_map(|m| (-3..=3).map(move |n| (m, n))).collect();
        Ok((s.all(pairs, |(m, n)| heisenberg::virasoro_bracket_check(m, n, cap)), String::new()))
    });
    r.check(format!("alternating L(1)/L(-1) sum vanishes on F_{cap} S, 3 <= n <= 5"), || {
        Ok(((3..=5).all(|n| axioms::alternating_sum_vanishes(n, cap)), String::new()))
    });
    r.check(format!("alternating sum at n = 2 equals 2 L(1) on F_{cap} S"), || {
        Ok((axioms::alternating_sum_two_is_2l1(cap), "nonzero; the identity starts at n = 3".into()))
    });
    r.check("dim S_k = p(k), k <= 12", || {
        Ok(((0..=12).all(|k| heisenberg::dim_s(k) == heisenberg::partitions(k).len() as u128), String::new()))
    });
    r.lines
}

// ---------------------------------------------------------------- lambda

/// `dim M_k(V)` from the nullity of `Λ` equals the closed formula for all even `k ≤ max_weight`.
pub fn kernel_dims_check(s: Strategy, max_weight: u32) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| Ok(kernel_dim(k)? == qv::dim_mv(k as i64)?))
}

pub fn surjectivity_check(s: Strategy, max_weight: u32) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| Ok(qv::lambda_surjectivity_check(k)?.holds))
}

/// `P` is a bijection `M ⊗ V → ker Λ` at weight `k`.
pub fn p_bijection_check(k: u32) -> Result<bool> {
    let mut images = Vec::new();
    for l in 0..=k / 2 {
        for m in crate::qmf::mono::modular_monomials(k - 2 * l) {
            for p in heisenberg::partitions(l) {
                let x = qv_term(m, p, LaurentScalar::one());
                let y = qv::p_iso(&x)?;
                if !qv::lambda_op(&y).is_zero() || qv::p_inv(&y)? != x {
                    return Ok(false);
                }
                images.push(y);
            }
        }
    }
    let basis = qv::mforms_basis(k)?;
    for b in basis.iter() {
        if qv::p_iso(&qv::p_inv(b)?)? != *b {
            return Ok(false);
        }
    }
    let mut both = images.clone();
    both.extend(basis.iter().cloned());
    let r = span_rank(k, &images)?;
    Ok(r == images.len() && r == basis.len() && span_rank(k, &both)? == r)
}

pub fn nabla_preserves_kernel(k: u32) -> Result<bool> {
    for f in qv::mforms_basis(k)?.iter() {
        if !qv::lambda_op(&qv::nabla(f, k)?).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Λ` lowers weight by 2 and depth by exactly 1 on every basis key.
pub fn lambda_grading_check(k: u32) -> bool {
    qv::weight_slice(k).into_iter().all(|key| {
        let f = QVForm::basis(key.clone());
        let g = qv::lambda_op(&f);
        let d = qv::depth(&f);
        g.keys().all(|x| x.weight() + 2 == k) && (d == 0 || qv::depth(&g) + 1 == d)
    })
}

/// For E2-free modular-coefficient forms, `Λf = 0` iff the Fock part is quasi-primary.
pub fn depth_zero_quasi_primary_check(k: u32) -> Result<bool> {
    let slice: Vec<_> = qv::weight_slice(k).into_iter().filter(|x| x.mono.is_modular()).collect();
    for key in &slice {
        let f = QVForm::basis(key.clone());
        if qv::lambda_op(&f).is_zero() != l1(&f).is_zero() {
            return Ok(false);
        }
    }
    // and on the quasi-primary forms of that shape
    for f in qv::kernel::quasi_primary_forms(k)? {
        if e2_degree(&f) == 0 && !l1(&f).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn q_component_check(k: u32) -> bool {
    qv::weight_slice(k).into_iter().all(|key| {
        let f = QVForm::basis(key);
        qv::ops::q_component(&f, 0) == f && qv::ops::q_component(&f, qv::depth(&f) + 1).is_zero()
    })
}

/// `depth(f(m)g) ≤ M + N − m − 1` for `f, g ∈ ker Λ` of conformal degrees `M, N ≤ 3`.
pub fn pointwise_depth_check(max_weight: u32) -> Result<bool> {
    let degree = |f: &QVForm| f.keys().map(|k| k.part.size()).max().unwrap_or(0) as i64;
    let mut forms = Vec::new();
    for k in even_upto(max_weight) {
        forms.extend(qv::mforms_basis(k)?.iter().filter(|f| degree(f) <= 3).cloned());
    }
    for f in &forms {
        for g in &forms {
            for m in -1..=2 {
                let h = qv::pointwise_mode(f, m, g);
                if !h.is_zero() && (qv::depth(&h) as i64) > degree(f) + degree(g) - m - 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Q-side QVOA laws for `graded_mode` with `L(−1) = θ`, `L(1) = 12∂_{E2}`, `L(0) = weight/2`.
pub fn q_side_mode_laws(max_weight: u32) -> bool {
    let l1q = |f: &QVForm| on_q(f, |g| delta_e2(g).scale_rat(&int(12)));
    let thq = |f: &QVForm| on_q(f, theta);
    let vac: crate::heisenberg::Partition = crate::heisenberg::Partition::vacuum();
    let qf = |m: Mono| qv_term(m, vac.clone(), LaurentScalar::one());
    let monos: Vec<Mono> = even_upto(max_weight).into_iter().flat_map(monomials_of_weight).collect();
    let targets: Vec<Mono> = even_upto(4).into_iter().flat_map(monomials_of_weight).collect();
    monos.iter().all(|&a| {
        let fa = qf(a);
        let k = a.weight() as i64 / 2;
        targets.iter().all(|&b| {
            let fb = qf(b);
            (-4..=-1).all(|n| {
                let transl = qv::graded_mode(&thq(&fa), n, &fb) == qv::graded_mode(&fa, n - 1, &fb).scale_rat(&int(-n));
                let lhs = &l1q(&qv::graded_mode(&fa, n, &fb)) - &qv::graded_mode(&fa, n, &l1q(&fb));
                let rhs = &qv::graded_mode(&l1q(&fa), n, &fb) + &qv::graded_mode(&fa, n + 1, &fb).scale_rat(&int(2 * k - n - 2));
                transl && lhs == rhs
            })
        })
    })
}

/// `δθᵐa = −m(2k+m−1)θ^{m−1}a + θᵐδa` for `a ∈ Q_{2k}`, with `δ = −12∂_{E2}`.
pub fn delta_theta_helper_check(max_weight: u32, max_m: u32) -> bool {
    let delta = |f: &LinComb<Mono, Rational>| delta_e2(f).scale_rat(&int(-12));
    even_upto(max_weight).into_iter().all(|w| {
        let k = w as i64 / 2;
        monomials_of_weight(w).into_iter().all(|a| {
            let f = mono_poly(a);
            (1..=max_m).all(|m| {
                let tm = crate::qmf::poly::theta_pow(&f, m);
                let lhs = delta(&tm);
                let rhs = &crate::qmf::poly::theta_pow(&f, m - 1).scale_rat(&int(-(m as i64) * (2 * k + m as i64 - 1)))
                    + &crate::qmf::poly::theta_pow(&delta(&f), m);
                lhs == rhs
            })
        })
    })
}

fn lambda_suite(cfg: &VerifyConfig) -> Vec<CheckLine> {
    let s = cfg.strategy;
    let top = cfg.max_weight.min(28);
    let mut r = Runner::new(Suite::Lambda);
    r.check(format!("dims: closed formula = nullity of Lambda, k <= {top}"), || Ok((kernel_dims_check(s, top)?, String::new())));
    r.check("dim Q_k(V) convolution = slice size, k <= 28", || {
        Ok((even_upto(28).into_iter().all(|k| qv::dim_qv(k as i64).ok() == Some(qv::weight_slice(k).len())), String::new()))
    });
    r.check("Lambda onto Q_k(V) with kernel = first difference, k <= 20", || Ok((surjectivity_check(s, 20)?, String::new())));
    r.check("dim Q_{2n}(V) = two-coloured 1,2,3 partitions, n <= 14", || {
        Ok(((0..=14).all(|n| qv::dim_qv(2 * n as i64).ok().map(|d| d as u128) == Some(qv::colored_partition_count(n))), String::new()))
    });
    r.check("dim M_{2k} - dim M_{2k-2} = doubletons of k+2, k <= 14", || {
        let ok = (1..=14i64).all(|k| {
            let d = qv::dim_mv(2 * k).unwrap() as i64 - qv::dim_mv(2 * k - 2).unwrap() as i64;
            d == qv::doubleton_count((k + 2) as u32) as i64
        });
        Ok((ok, String::new()))
    });
    r.check("published basis rows span ker Lambda, k in {0,2,4,6,8}", || {
        all_ok(s, even_upto(8), qv::reference::reference_span_check).map(|b| (b, "weight-8 E2^2 h(-2) read as -pi^2/6".into()))
    });
    r.check("P bijective M (x) V -> ker Lambda, k <= 12", || all_ok(s, even_upto(12), p_bijection_check).map(|b| (b, String::new())));
    r.check("nabla preserves ker Lambda, k <= 12", || all_ok(s, even_upto(12), nabla_preserves_kernel).map(|b| (b, String::new())));
    r.check("Lambda lowers weight by 2 and depth by 1, k <= 16", || Ok((s.all(even_upto(16), lambda_grading_check), String::new())));
    r.check("Q_0(f) = f and Q_n(f) = 0 past depth, k <= 12", || Ok((s.all(even_upto(12), q_component_check), String::new())));
    r.check("depth-0 modular: Lambda f = 0 iff quasi-primary, k <= 12", || {
        all_ok(s, even_upto(12), depth_zero_quasi_primary_check).map(|b| (b, String::new()))
    });
    r.check("decomposition M_k = QP + nabla image + R_k, 4 <= k <= 16", || {
        all_ok(s, (4..=16).step_by(2).collect(), |k| Ok(qv::decomposition_check(k)?.holds)).map(|b| (b, "R_k = 0".into()))
    });
    r.check("P nabla' = nabla P on the M (x) V basis, k <= 10", || {
        all_ok(s, even_upto(10), |k| {
            for l in 0..=k / 2 {
                for m in crate::qmf::mono::modular_monomials(k - 2 * l) {
                    for p in heisenberg::partitions(l) {
                        let x = qv_term(m, p, LaurentScalar::one());
                        if qv::p_iso(&qv::nabla_prime(&x, k)?)? != qv::nabla(&qv::p_iso(&x)?, k)? {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        })
        .map(|b| (b, String::new()))
    });
    r.check("pointwise-mode depth bound, conformal degree <= 3", || Ok((pointwise_depth_check(8)?, String::new())));
    r.check("Q-side graded modes: translation and [L(1), a(n)], weight <= 6", || Ok((q_side_mode_laws(6), String::new())));
    r.check("delta theta^m a = -m(2k+m-1) theta^{m-1} a + theta^m delta a, m <= 4", || {
        Ok((delta_theta_helper_check(12, 4), "delta = -12 d/dE2".into()))
    });
    r.lines
}

// ---------------------------------------------------------------- hecke

pub fn t_prime_preserves_kernel(s: Strategy, max_m: u64, max_weight: u32) -> Result<bool> {
    let items: Vec<(u64, u32)> = (1..=max_m).flat_map(|m| even_upto(max_weight).into_iter().map(move |k| (m, k))).collect();
    all_ok(s, items, |(m, k)| {
        for b in qv::mforms_basis(k)?.iter() {
            if !qv::lambda_op(&hecke::t_prime(m, b)?).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

pub fn nabla_doubling_check(s: Strategy, ms: &[u64], max_weight: u32) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| {
        for e in hecke::eigenstates(k)? {
            for &m in ms {
                if !hecke::nabla_eigen_check(&e, m)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

pub fn eigenstates_check(s: Strategy, ms: &[u64], max_weight: u32) -> Result<bool> {
    all_ok(s, even_upto(max_weight), |k| {
        let e = hecke::eigenstates(k)?;
        if e.len() != qv::dim_mv(k as i64)? {
            return Ok(false);
        }
        for st in &e {
            for &m in ms {
                if !st.is_eigenvector_for(m)? {
                    return Ok(false);
                }
            }
        }
        let v: Vec<QVForm> = e.iter().map(|x| x.vector.clone()).collect();
        Ok(span_rank(k, &v)? == v.len())
    })
}

pub fn m4_eigenvalues() -> Result<Vec<Rational>> {
    let cp = hecke::t_prime_matrix(2, 4)?.graded_similar()?.charpoly();
    let mut roots = crate::linalg::rational_roots(&cp).unwrap_or_default();
    roots.sort();
    roots.reverse();
    Ok(roots)
}

fn hecke_suite(cfg: &VerifyConfig) -> Vec<CheckLine> {
    let s = cfg.strategy;
    let mut r = Runner::new(Suite::Hecke);
    r.check("T'_m preserves ker Lambda, m <= 6, k <= 10", || Ok((t_prime_preserves_kernel(s, 6, 10)?, String::new())));
    r.check("T'_2..T'_5 commute pairwise, k <= 10", || {
        all_ok(s, even_upto(10), |k| hecke::commutation_check(&[2, 3, 4, 5], k)).map(|b| (b, String::new()))
    });
    r.check("T'_p T'_p = T'_{p^2} + p^{k-1}, p in {2,3}, k <= 12", || {
        let items: Vec<(u64, u32)> = [2, 3].into_iter().flat_map(|p| even_upto(12).into_iter().map(move |k| (p, k))).collect();
        all_ok(s, items, |(p, k)| hecke::relation_check(p, 1, k)).map(|b| (b, "k = actual weight".into()))
    });
    r.check("T'_2 T'_3 = T'_6, k <= 8", || all_ok(s, even_upto(8), |k| hecke::coprime_relation_check(2, 3, k)).map(|b| (b, String::new())));
    r.check("T'_2 eigenvalues on M_4(S) are {9, 6, 6}", || {
        let ev = m4_eigenvalues()?;
        Ok((ev == vec![int(9), int(6), int(6)], format!("{:?}", ev.iter().map(crate::ring::rational::fmt_rational).collect::<Vec<_>>())))
    });
    r.check("eigenstates: complete, independent, eigen for T'_2, T'_3, T'_5, k <= 12", || {
        Ok((eigenstates_check(s, &[2, 3, 5], 12)?, String::new()))
    });
    r.check("T'_m(u theta f + L(-1) f) = m lambda_m (u theta f + L(-1) f) on eigenstates, m <= 5, k <= 8", || {
        Ok((nabla_doubling_check(s, &[2, 3, 4, 5], 8)?, "raising operator without the E2 term".into()))
    });
    r.check("with the E2 term, nabla_4(E4) is not a T'_2 eigenform of eigenvalue 18", || {
        let e4 = hecke::eigenstates(4)?.into_iter().find(|e| e.scalar_weight() == 4).ok_or(crate::error::Error::NotModular)?;
        Ok((!hecke::corrected_nabla_eigen_check(&e4, 2)? && hecke::nabla_eigen_check(&e4, 2)?, "nabla_4 E4 = -(u/3) E6, eigenvalue 33".into()))
    });
    r.check("T'_2 charpoly = graded multiset of classical eigenvalues, k <= 12", || {
        all_ok(s, even_upto(12), |k| hecke::multiplicity_law_check(2, k)).map(|b| (b, String::new()))
    });
    r.check("T'_m P = P T'_m holds for k <= 4 and fails at k = 6 by (u^2/8) E4 h(-1)", || {
        let low = (0..=4).step_by(2).all(|k| (2..=5).all(|m| hecke::p_commutation_failures(k, m).map(|f| f.is_empty()).unwrap_or(false)));
        let six = hecke::p_commutation_failures(6, 2)?;
        let hit = six.iter().any(|c| c.input == "h(-3)" && c.difference == "1/8*u^2*E4*h(-1)");
        Ok((low && hit, format!("{} failing inputs at k = 6", six.len())))
    });
    r.check("Euler factor of P(1 (x) v) splits as p^{l-1}, p^l", || {
        for k in [2u32, 4, 6] {
            for st in hecke::eigenstates(k)? {
                if st.scalar_weight() == 0 {
                    for p in [2u64, 3, 5] {
                        let f = hecke::euler_factor(&st.eigenvalue(p)?, p, k)?;
                        let l = (k / 2) as i64;
                        if f.split != Some((l - 1, l)) {
                            return Ok((false, format!("p = {p}, k = {k}")));
                        }
                    }
                }
            }
        }
        Ok((true, String::new()))
    });
    r.lines
}

// ---------------------------------------------------------------- geometry

/// Seeded matrix pairs with entries in `[−10, 10]` and determinant in `[1, 4]`.
pub fn random_pairs(seed: u64, count: usize) -> Vec<(IntMatrix2, IntMatrix2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (IntMatrix2::random(&mut rng, 10, 4), IntMatrix2::random(&mut rng, 10, 4))).collect()
}

pub fn pair_panel(a: &IntMatrix2, b: &IntMatrix2, len: usize) -> Vec<Rational> {
    geometry::panel_avoiding(&[*a, *b, a.mul(b)], len)
}

fn geometry_suite(cfg: &VerifyConfig) -> Vec<CheckLine> {
    let s = cfg.strategy;
    let n = cfg.trunc.min(4);
    let samples = (geometry::tau_degree_bound(n) + 1).max(30);
    let pairs = random_pairs(cfg.seed, 20);
    let mut r = Runner::new(Suite::Geometry);
    let detail = format!("20 seeded pairs, {samples} samples each, panel 2, 3, 5/2, 7/3, -4/3, ..., N = {n}");
    r.check("cocycle K(ab,t) = K(a,bt) K(b,t)", || {
        all_ok(s, pairs.clone(), |(a, b)| geometry::cocycle_identity_check(&a, &b, &pair_panel(&a, &b, samples), n)).map(|x| (x, detail.clone()))
    });
    r.check("group action a.(b.(t,v)) = (ab).(t,v)", || {
        all_ok(s, pairs.clone(), |(a, b)| geometry::group_action_check(&a, &b, &pair_panel(&a, &b, samples), n)).map(|x| (x, detail.clone()))
    });
    r.check("X(a)|_2 b = X(ab) - X(b)", || {
        all_ok(s, pairs.clone(), |(a, b)| geometry::x_cocycle_check(&a, &b, &pair_panel(&a, &b, samples))).map(|x| (x, detail.clone()))
    });
    r.check("K block-unitriangular with diagonal (det/j^2)^n", || {
        all_ok(s, pairs.clone(), |(a, _)| {
            for t in pair_panel(&a, &a, 5) {
                let j = a.j(&t)?;
                if !geometry::cocycle_k(&a, &t, n)?.is_block_unitriangular(&(int(a.det()) / (&j * &j))) {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .map(|x| (x, format!("N = {n}")))
    });
    let cn = cfg.trunc.min(6);
    r.check(format!("connection identity on F_{cn} S at 5 (c, j) samples"), || {
        Ok((geometry::connection_identity_check(cn, &geometry::connection_samples())?, String::new()))
    });
    r.check("coordinate change: expansion = closed form, inverse composes to X, order 8", || {
        all_ok(s, pairs.clone(), |(a, _)| {
            for t in pair_panel(&a, &a.adjugate(), 3) {
                if geometry::coordinate_change_series(&a, &t, 8)? != geometry::series::coordinate_change_closed(&a, &t, 8)?
                    || !geometry::inverse_composition_check(&a, &t, 8)?
                {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .map(|x| (x, String::new()))
    });
    r.check("exp(a X^2 d/dX) X = sum a^{m-1} X^m, order 12", || {
        let alphas = ["0", "1", "1/2*u", "3 - u^-2", "-7/5*u^3"];
        let mut ok = true;
        for a in alphas {
            ok &= geometry::exp_vector_field_check(&a.parse()?, 12)?;
        }
        Ok((ok, String::new()))
    });
    r.lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pieces() {
        assert!(ramanujan_check(8, 12));
        assert!(sl2_bracket_check(8));
        assert!(hecke_t_one_check(6).unwrap());
        assert!(delta_theta_helper_check(6, 3));
        assert!(q_side_mode_laws(4));
        assert!(p_bijection_check(6).unwrap());
        assert_eq!(m4_eigenvalues().unwrap(), vec![int(9), int(6), int(6)]);
        // with delta = d/dE2 the helper identity does not hold
        let f = mono_poly(Mono::E4);
        assert_ne!(delta_e2(&theta(&f)), f.scale_rat(&int(-4)));
    }
}
