//! Command surface of the `qvmf` binary. Every command renders to a string so it can be tested
//! without spawning a process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qvmf::error::{Error, Result};
use qvmf::hecke::{hecke_report, HeckeReport};
use qvmf::par::Strategy;
use qvmf::qmf::{parse_qm, qexp_of_poly};
use qvmf::qv::form::{canonical_terms, render, render_pi_notation, to_json};
use qvmf::qv::{self, kernel};
use qvmf::verify::{self, CheckLine, Suite, VerifyConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest weight at which `dims` also computes the nullspace column.
pub const NULLSPACE_LIMIT: u32 = 28;

#[derive(Parser, Debug, Clone)]
#[command(name = "qvmf", version, about = "Exact Heisenberg-valued quasi-modular forms")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest even weight for tables.
    #[arg(long, global = true, default_value_t = 28)]
    pub max_weight: u32,
    /// Fock truncation N for VOA and geometry checks.
    #[arg(long, global = true, default_value_t = 6)]
    pub trunc: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print constants with u written as 2πi, basis rows normalized on their E2-free end.
    #[arg(long, global = true)]
    pub pi_notation: bool,
    /// Run batch checks on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    All,
    Qmf,
    Voa,
    Lambda,
    Hecke,
    Geometry,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Qmf => Suite::Qmf,
            SuiteArg::Voa => Suite::Voa,
            SuiteArg::Lambda => Suite::Lambda,
            SuiteArg::Hecke => Suite::Hecke,
            SuiteArg::Geometry => Suite::Geometry,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// dim Q_k(S) and dim M_k(S) for k = 0, 2, ..., max-weight.
    Dims,
    /// Canonical basis of M_k(S).
    Basis { weight: u32 },
    /// T'_m matrix, eigenstates and relation checks on M_k(S).
    Hecke { m: u64, weight: u32 },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// q-expansion of a polynomial in E2, E4, E6 (and u).
    Qexp {
        expression: String,
        #[arg(default_value_t = 10)]
        order: usize,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: EXIT_USAGE }
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::BadWeight(_) | Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Self { stdout: String::new(), stderr: format!("error: {e}\n"), code }
    }
}

impl Global {
    fn validate(&self) -> std::result::Result<(), String> {
        if self.max_weight % 2 != 0 || self.max_weight > 40 {
            return Err(format!("--max-weight must be even and at most 40, got {}", self.max_weight));
        }
        if self.trunc > 8 {
            return Err(format!("--trunc must be at most 8, got {}", self.trunc));
        }
        Ok(())
    }

    fn strategy(&self) -> Strategy {
        if self.sequential {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Err(m) = cli.global.validate() {
        return Outcome::usage(m);
    }
    let g = &cli.global;
    let res = match &cli.command {
        Command::Dims => cmd_dims(g),
        Command::Basis { weight } => cmd_basis(*weight, g),
        Command::Hecke { m, weight } => cmd_hecke(*m, *weight, g),
        Command::Verify { suite } => return cmd_verify((*suite).into(), g),
        Command::Qexp { expression, order } => cmd_qexp(expression, *order, g),
    };
    res.unwrap_or_else(Outcome::from_error)
}

fn csv_string<R: Serialize>(rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- dims

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub k: u32,
    #[serde(rename = "dim_Q")]
    pub dim_q: usize,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    /// Nullity of the lowering operator, when computed.
    #[serde(rename = "dim_M_nullspace", skip_serializing_if = "Option::is_none")]
    pub dim_m_nullspace: Option<usize>,
}

/// Both columns by closed formula, checked against the slice size and (up to weight 28) the
/// exact nullity of the lowering operator.
pub fn dims_table(max_weight: u32, strategy: Strategy) -> Result<Vec<DimsRow>> {
    let ks: Vec<u32> = (0..=max_weight).step_by(2).collect();
    let rows = strategy.map(ks, |k| -> Result<DimsRow> {
        let dim_q = qv::dim_qv(k as i64)?;
        let dim_m = qv::dim_mv(k as i64)?;
        let slice = qv::weight_slice(k).len();
        if slice != dim_q {
            return Err(Error::InternalMismatch(format!("weight {k}: slice has {slice} keys, formula {dim_q}")));
        }
        let nullity = if k <= NULLSPACE_LIMIT { Some(kernel::kernel_dim(k)?) } else { None };
        if let Some(n) = nullity {
            if n != dim_m {
                return Err(Error::InternalMismatch(format!("weight {k}: nullity {n}, formula {dim_m}")));
            }
        }
        Ok(DimsRow { k, dim_q, dim_m, dim_m_nullspace: nullity })
    });
    rows.into_iter().collect()
}

fn cmd_dims(g: &Global) -> Result<Outcome> {
    let rows = dims_table(g.max_weight, g.strategy())?;
    let stdout = match g.output {
        Output::Json => json_string(&rows),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row {
                k: u32,
                #[serde(rename = "dim_Q")]
                q: usize,
                #[serde(rename = "dim_M")]
                m: usize,
            }
            csv_string(&rows.iter().map(|r| Row { k: r.k, q: r.dim_q, m: r.dim_m }).collect::<Vec<_>>())
        }
        Output::Text => {
            let mut s = format!("{:>4} {:>8} {:>8}\n", "k", "dim Q_k", "dim M_k");
            for r in &rows {
                let mark = if r.dim_m_nullspace.is_some() { "" } else { "  (formula only)" };
                s.push_str(&format!("{:>4} {:>8} {:>8}{mark}\n", r.k, r.dim_q, r.dim_m));
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- basis

pub const BASIS_FOOTNOTE: &str =
    "[1] the published coefficient reads -π/6; only -π²/6 lies in the kernel, so that is what is listed";

#[derive(Debug, Clone, Serialize)]
pub struct BasisRow {
    pub index: usize,
    pub display: String,
    pub form: serde_json::Value,
}

fn flagged(f: &qv::QVForm, k: u32) -> bool {
    let (w, mono, part) = qv::reference::FLAGGED;
    k == w && f.iter().any(|(key, _)| key.mono == mono && key.part.to_string() == part)
}

/// Rescales a form with E2 terms so its last canonical term (lowest E2 power) has coefficient 1, the layout of the
/// published table where each row is `P` applied to a Fock vector.
pub fn table_normalized(f: &qv::QVForm) -> qv::QVForm {
    if qv::form::e2_degree(f) == 0 {
        return f.clone();
    }
    match canonical_terms(f).last() {
        Some((_, c)) => c.monomial_inverse().map(|inv| f.scale(&inv)).unwrap_or_else(|_| f.clone()),
        None => f.clone(),
    }
}

fn cmd_basis(k: u32, g: &Global) -> Result<Outcome> {
    if k % 2 != 0 || k > 16 {
        return Err(Error::InvalidArgument(format!("basis weight must be even and at most 16, got {k}")));
    }
    let basis = qv::mforms_basis(k)?;
    let mut footnote = false;
    let rows: Vec<BasisRow> = basis
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut display = if g.pi_notation { render_pi_notation(&table_normalized(f)) } else { render(f) };
            if g.pi_notation && flagged(f, k) {
                display.push_str("  [1]");
                footnote = true;
            }
            BasisRow { index: i + 1, display, form: to_json(f) }
        })
        .collect();
    let stdout = match g.output {
        Output::Json => json_string(&rows),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                index: usize,
                form: &'a str,
            }
            csv_string(&rows.iter().map(|r| Row { index: r.index, form: &r.display }).collect::<Vec<_>>())
        }
        Output::Text => {
            let mut s = format!("M_{k}(S): dimension {}\n", rows.len());
            for r in &rows {
                s.push_str(&format!("{:>3}  {}\n", r.index, r.display));
            }
            if footnote {
                s.push_str(BASIS_FOOTNOTE);
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- hecke

fn cmd_hecke(m: u64, k: u32, g: &Global) -> Result<Outcome> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if k % 2 != 0 || k > 16 {
        return Err(Error::InvalidArgument(format!("hecke weight must be even and at most 16, got {k}")));
    }
    let (report, warning): (Option<HeckeReport>, Option<String>) = match hecke_report(m, k) {
        Ok(r) => (Some(r), None),
        Err(e @ Error::IrrationalEigenvalues { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let mut out = Outcome::ok(String::new());
    if let Some(w) = &warning {
        out.stderr = format!("warning: {w}\n");
    }
    let Some(report) = report else {
        return Ok(out);
    };
    out.stdout = match g.output {
        Output::Json => json_string(&report),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                lambda: &'a str,
                formula: &'a str,
                vector: &'a str,
            }
            let rows: Vec<Row> = report
                .eigenpairs
                .iter()
                .map(|p| Row { lambda: &p.lambda, formula: &p.formula, vector: &p.display })
                .collect();
            csv_string(&rows)
        }
        Output::Text => {
            let mut s = format!("T'_{m} on M_{k}(S)\nmatrix:\n");
            for row in &report.matrix {
                s.push_str(&format!("  [{}]\n", row.join(", ")));
            }
            s.push_str("eigenpairs:\n");
            for p in &report.eigenpairs {
                s.push_str(&format!("  {:>8}  ({})  {}\n", p.lambda, p.formula, p.display));
            }
            s.push_str("verified:\n");
            for r in &report.relations_verified {
                s.push_str(&format!("  {r}\n"));
            }
            s
        }
    };
    Ok(out)
}

// ---------------------------------------------------------------- verify

pub fn verify_config(g: &Global) -> VerifyConfig {
    VerifyConfig {
        max_weight: g.max_weight,
        trunc: g.trunc,
        seed: g.seed,
        strategy: g.strategy(),
    }
}

fn cmd_verify(suite: Suite, g: &Global) -> Outcome {
    let lines: Vec<CheckLine> = verify::run(suite, &verify_config(g));
    let failed = lines.iter().filter(|l| !l.passed).count();
    let stdout = match g.output {
        Output::Json => json_string(&lines),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                suite: &'a str,
                check: &'a str,
                passed: bool,
                detail: &'a str,
                millis: u128,
            }
            let rows: Vec<Row> = lines
                .iter()
                .map(|l| Row { suite: l.suite, check: &l.name, passed: l.passed, detail: &l.detail, millis: l.millis })
                .collect();
            csv_string(&rows)
        }
        Output::Text => {
            let mut s = String::new();
            for l in &lines {
                let tag = if l.passed { "PASS" } else { "FAIL" };
                let detail = if l.detail.is_empty() { String::new() } else { format!(" ({})", l.detail) };
                s.push_str(&format!("{tag} [{}] {}{detail} {}ms\n", l.suite, l.name, l.millis));
            }
            s.push_str(&format!("{} checks, {} failed\n", lines.len(), failed));
            s
        }
    };
    Outcome { stdout, stderr: String::new(), code: if failed == 0 { EXIT_OK } else { EXIT_FAIL } }
}

// ---------------------------------------------------------------- qexp

#[derive(Debug, Clone, Serialize)]
struct QexpJson {
    expression: String,
    order: usize,
    coefficients: Vec<serde_json::Value>,
}

fn cmd_qexp(expr: &str, order: usize, g: &Global) -> Result<Outcome> {
    let f = parse_qm(expr)?;
    let s = qexp_of_poly(&f, order);
    let stdout = match g.output {
        Output::Json => json_string(&QexpJson {
            expression: expr.to_string(),
            order,
            coefficients: s.coeffs().iter().map(|c| c.to_json_value()).collect(),
        }),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                coeff: String,
            }
            csv_string(&s.coeffs().iter().enumerate().map(|(n, c)| Row { n, coeff: c.to_string() }).collect::<Vec<_>>())
        }
        Output::Text => format!("{s}\n"),
    };
    Ok(Outcome::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("qvmf").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn small_dims() {
        let out = run(&cli(&["dims", "--max-weight", "0", "--output", "csv"]));
        assert_eq!(out.stdout, "k,dim_Q,dim_M\n0,1,1\n");
        assert_eq!(out.code, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&cli(&["dims", "--max-weight", "42"])).code, EXIT_USAGE);
        assert_eq!(run(&cli(&["dims", "--max-weight", "7"])).code, EXIT_USAGE);
        assert_eq!(run(&cli(&["dims", "--trunc", "9"])).code, EXIT_USAGE);
        assert_eq!(run(&cli(&["basis", "18"])).code, EXIT_USAGE);
        assert_eq!(run(&cli(&["qexp", "E2 +* E4"])).code, EXIT_USAGE);
        assert_eq!(run(&cli(&["hecke", "0", "4"])).code, EXIT_USAGE);
    }

    #[test]
    fn basis_listing() {
        assert!(run(&cli(&["basis", "2"])).stdout.contains("  1  h(-1)\n"));
        let w8 = run(&cli(&["basis", "8", "--pi-notation"])).stdout;
        assert!(w8.contains("π³i/54*E2^3*h(-1) - π²/6*E2^2*h(-2) - 2πi/3*E2*h(-3) + h(-4)  [1]"), "{w8}");
        assert!(w8.contains(BASIS_FOOTNOTE));
        assert_eq!(w8.lines().filter(|l| l.starts_with("  ")).count(), 9);
    }

    #[test]
    fn qexp_examples() {
        assert_eq!(run(&cli(&["qexp", "E2", "3"])).stdout, "1 - 24*q - 72*q^2 - 96*q^3 + O(q^4)\n");
        assert_eq!(run(&cli(&["qexp", "(E4^3 - E6^2)/1728", "3"])).stdout, "0 + q - 24*q^2 + 252*q^3 + O(q^4)\n");
        assert_eq!(run(&cli(&["qexp", "E2*E4 - E6", "1"])).stdout, "0 + 720*q + O(q^2)\n");
    }

    #[test]
    fn hecke_examples() {
        let j = run(&cli(&["hecke", "2", "0", "--output", "json"])).stdout;
        let r: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(r["eigenpairs"][0]["lambda"], "3/2");
        let csv = run(&cli(&["hecke", "5", "2", "--output", "csv"])).stdout;
        assert!(csv.lines().nth(1).unwrap().starts_with("6,"), "{csv}");
    }
}
