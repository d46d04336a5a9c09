//! `gfl` — command-line front end for the exact-arithmetic engine.
//!
//! Sequence queries print a single value; `verify` and `order` subcommands
//! run parameter sweeps over the corresponding core checkers and print a
//! JSON sweep report on stdout. Exit code 0 means every check passed, 1
//! means at least one failure, 2 means a usage or I/O error.
//!
//! `GFL_THREADS` caps sweep parallelism; sweeps are deterministic (results
//! ordered by parameter tuple regardless of completion order).

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gfl_core::coding::{decode_stream, encode_stream, CodecConfig};
use gfl_core::exact::{int, rat};
use gfl_core::orders::{prop54_closure, remark41_closure};
use gfl_core::quaternions::{
    catalan_check, cassini_check, check_thm46, check_thm47, AlgebraParams, HxParams,
};
use gfl_core::sequences::{
    cassini_gfl, check_prop21, check_prop32, check_prop51, check_remark52, gfl, term,
    GFLParams, NegIndexMode, Prop21Id, Prop51Id, SequenceSpec,
};
use gfl_core::series::{check_prop31, check_prop32_series, check_prop42, check_thm45};
use gfl_core::{IdentityReport, Polynomial, Rational};

/// Inclusive integer range `lo..hi`; a bare integer is the one-point range.
#[derive(Clone, Copy, Debug)]
struct Span {
    lo: i64,
    hi: i64,
}

impl Span {
    fn iter(self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    fn iter_nonzero(self) -> impl Iterator<Item = i64> + Clone {
        self.iter().filter(|v| *v != 0)
    }

    fn unsigned(self) -> Result<(u64, u64), String> {
        if self.lo < 0 {
            return Err(format!("range {} must be non-negative", self));
        }
        Ok((self.lo as u64, self.hi as u64))
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi),
        None => (s, s),
    };
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range bound in '{}'", s))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range bound in '{}'", s))?;
    if lo > hi {
        return Err(format!("empty range '{}'", s));
    }
    Ok(Span { lo, hi })
}

#[derive(Parser)]
#[command(name = "gfl", version, about = "Generalized Fibonacci-Lucas toolkit", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate sequence terms exactly.
    Seq {
        #[command(subcommand)]
        which: SeqCommand,
    },
    /// Sweep an identity checker over a parameter box and report.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Verify lattice-order closure claims.
    Order {
        #[command(subcommand)]
        which: OrderCommand,
    },
    /// Block-encode or decode a file with the coding matrix.
    Code {
        #[command(subcommand)]
        which: CodeCommand,
    },
}

#[derive(Subcommand)]
enum SeqCommand {
    /// Term of the (a, b, x0, x1) recurrence d_n = a d_{n-1} + b d_{n-2}.
    Term {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        x0: i64,
        #[arg(long)]
        x1: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// How to read negative indices: run the recurrence backwards, or
        /// use the sign rule d_{-n} = (-1)^{n+1} d_n.
        #[arg(long, value_enum, default_value_t = NegMode::Recurrence)]
        neg_mode: NegMode,
    },
    /// Generalized Fibonacci-Lucas number g_n^{p,q}.
    Gfl {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NegMode {
    Recurrence,
    PaperRule,
}

#[derive(Args, Clone, Copy)]
struct PqBox {
    /// Range for p, as `lo..hi` (inclusive).
    #[arg(long, value_parser = parse_span, default_value = "-5..5", allow_hyphen_values = true)]
    p: Span,
    /// Range for q, as `lo..hi` (inclusive).
    #[arg(long, value_parser = parse_span, default_value = "-5..5", allow_hyphen_values = true)]
    q: Span,
}

#[derive(Args, Clone, Copy)]
struct GammaBox {
    /// Range for gamma1 (0 is skipped).
    #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
    gamma1: Span,
    /// Range for gamma2 (0 is skipped).
    #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
    gamma2: Span,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The twelve classical Fibonacci-Lucas identities.
    Prop21 {
        #[arg(long, value_parser = parse_span, default_value = "0..50")]
        n: Span,
        #[arg(long, value_parser = parse_span, default_value = "0..50")]
        m: Span,
    },
    /// Generating function of g_n^{p,q}: coefficients equal the sequence.
    Prop31 {
        #[command(flatten)]
        pq: PqBox,
        /// Truncation order of the expansion.
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// Convolution sum against its four-term closed form; the squared-series
    /// coefficient reading is compared and reported under `errata`.
    Prop32 {
        #[command(flatten)]
        pq: PqBox,
        #[arg(long, value_parser = parse_span, default_value = "2..100")]
        n: Span,
    },
    /// Cassini for g_n^{p,q} (equals the coding-matrix determinant).
    Prop33 {
        #[arg(long, value_parser = parse_span, default_value = "-10..10", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-10..10", allow_hyphen_values = true)]
        q: Span,
        #[arg(long, value_parser = parse_span, default_value = "2..200")]
        n: Span,
    },
    /// Quaternion generating function B(z).
    Prop42 {
        #[command(flatten)]
        pq: PqBox,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// The four x/y product identities of the (1, a, *, *) family.
    Prop51 {
        #[arg(long, value_parser = parse_span, default_value = "1..10")]
        a: Span,
        #[arg(long, value_parser = parse_span, default_value = "0..30")]
        n: Span,
        #[arg(long, value_parser = parse_span, default_value = "0..30")]
        l: Span,
    },
    /// Index-shift relation p x_{n+1} + q y_n = s_n^{ap,q} + s_{n+1}^{p,0}.
    Remark52 {
        #[arg(long, value_parser = parse_span, default_value = "1..10")]
        a: Span,
        #[command(flatten)]
        pq: PqBox,
        #[arg(long, value_parser = parse_span, default_value = "1..50")]
        n: Span,
    },
    /// Polynomial-quaternion generating function A(t), over the built-in
    /// h/x sample sets.
    Thm45 {
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        q: Span,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Corrected scalar Binet form for g_{h,n}(x) vs the recurrence.
    Thm46 {
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        q: Span,
        #[arg(long, value_parser = parse_span, default_value = "0..40")]
        n: Span,
    },
    /// Quaternion Binet form for G_{h,n}(x) vs the recurrence build.
    Thm47 {
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        q: Span,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, value_parser = parse_span, default_value = "0..40")]
        n: Span,
    },
    /// Catalan identity for the h(x) quaternions (all 1 <= s <= n).
    Catalan {
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        q: Span,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, value_parser = parse_span, default_value = "1..20")]
        n: Span,
    },
    /// Cassini identity for the h(x) quaternions (Catalan at s = 1).
    CassiniHx {
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        p: Span,
        #[arg(long, value_parser = parse_span, default_value = "-3..3", allow_hyphen_values = true)]
        q: Span,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, value_parser = parse_span, default_value = "1..20")]
        n: Span,
    },
}

#[derive(Subcommand)]
enum OrderCommand {
    /// Closure of the span of {1} u {5 G_n^{p,q}} under multiplication.
    Remark41 {
        #[command(flatten)]
        gamma: GammaBox,
        /// Index window for the membership sweep.
        #[arg(long, value_parser = parse_span, default_value = "1..30")]
        window: Span,
        /// Parameter box for p and q in the membership sweep.
        #[arg(long = "box", value_parser = parse_span, default_value = "-5..5", allow_hyphen_values = true)]
        pq_box: Span,
    },
    /// Closure of the span of {1} u {(1+4a) S_n^{p,q}} under multiplication.
    Prop54 {
        #[arg(long, value_parser = parse_span, default_value = "1..5")]
        a: Span,
        #[command(flatten)]
        gamma: GammaBox,
        #[arg(long, value_parser = parse_span, default_value = "1..30")]
        window: Span,
        #[arg(long = "box", value_parser = parse_span, default_value = "-5..5", allow_hyphen_values = true)]
        pq_box: Span,
    },
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    q: i64,
    /// Index of the coding matrix M_n.
    #[arg(long, default_value_t = 2)]
    n: u64,
    /// Modulus for the residue arithmetic.
    #[arg(long, default_value_t = 65521)]
    m: i64,
    /// Input file.
    #[arg(long = "in")]
    input: std::path::PathBuf,
    /// Output file.
    #[arg(long = "out")]
    output: std::path::PathBuf,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Encode a file into the framed block format.
    Encode {
        #[command(flatten)]
        args: CodecArgs,
    },
    /// Decode a framed file back to the payload, flagging corrupt blocks.
    Decode {
        #[command(flatten)]
        args: CodecArgs,
    },
}

#[derive(Serialize)]
struct Failure {
    identity: String,
    params: Vec<(String, String)>,
    left: String,
    right: String,
}

#[derive(Serialize)]
struct SweepReport {
    command: String,
    ranges: BTreeMap<String, String>,
    total_checks: usize,
    failures: Vec<Failure>,
    errata: Vec<String>,
    wall_time_ms: u128,
}

fn h_set() -> Vec<Polynomial> {
    vec![
        Polynomial::x(),
        Polynomial::new(vec![rat(1, 1), rat(2, 1)]),
        Polynomial::new(vec![rat(0, 1), rat(0, 1), rat(1, 1)]),
    ]
}

fn x_set() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(1, 2), rat(-3, 1)]
}

fn gammas(bx: GammaBox) -> Result<Vec<AlgebraParams>, String> {
    let mut out = Vec::new();
    for g1 in bx.gamma1.iter_nonzero() {
        for g2 in bx.gamma2.iter_nonzero() {
            out.push(AlgebraParams::from_i64(g1, g2).map_err(|e| e.to_string())?);
        }
    }
    if out.is_empty() {
        return Err("gamma ranges contain no nonzero values".into());
    }
    Ok(out)
}

/// Runs `check` over `cases` in parallel, preserving case order.
fn sweep<T: Sync>(
    cases: &[T],
    check: impl Fn(&T) -> Result<IdentityReport, gfl_core::Error> + Sync,
) -> Result<Vec<IdentityReport>, String> {
    use rayon::prelude::*;
    cases
        .par_iter()
        .map(|c| check(c).map_err(|e| e.to_string()))
        .collect()
}

fn assemble(
    command: String,
    ranges: BTreeMap<String, String>,
    reports: Vec<IdentityReport>,
    started: Instant,
) -> (SweepReport, i32) {
    let mut errata = Vec::new();
    let mut failures = Vec::new();
    for r in &reports {
        for note in &r.notes {
            let entry = format!("{}: {}", r.identity, note);
            if !errata.contains(&entry) {
                errata.push(entry);
            }
        }
        if !r.pass {
            failures.push(Failure {
                identity: r.identity.clone(),
                params: r.params.clone(),
                left: r.left.clone(),
                right: r.right.clone(),
            });
        }
    }
    let code = if failures.is_empty() { 0 } else { 1 };
    (
        SweepReport {
            command,
            ranges,
            total_checks: reports.len(),
            failures,
            errata,
            wall_time_ms: started.elapsed().as_millis(),
        },
        code,
    )
}

fn ranges_of(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn run_verify(which: VerifyCommand, command: String) -> Result<i32, String> {
    let started = Instant::now();
    let (ranges, reports) = match which {
        VerifyCommand::Prop21 { n, m } => {
            let (nlo, nhi) = n.unsigned()?;
            let (mlo, mhi) = m.unsigned()?;
            let mut cases = Vec::new();
            for id in Prop21Id::ALL {
                for nn in nlo.max(id.min_index())..=nhi {
                    if id.takes_pair() {
                        for mm in mlo..=mhi {
                            cases.push((id, nn, mm));
                        }
                    } else {
                        cases.push((id, nn, 0));
                    }
                }
            }
            let reports = sweep(&cases, |&(id, nn, mm)| check_prop21(id, nn, mm))?;
            (
                ranges_of(&[("n", n.to_string()), ("m", m.to_string())]),
                reports,
            )
        }
        VerifyCommand::Prop31 { pq, order } => {
            let cases: Vec<(i64, i64)> = pq
                .p
                .iter()
                .flat_map(|p| pq.q.iter().map(move |q| (p, q)))
                .collect();
            let reports = sweep(&cases, |&(p, q)| {
                check_prop31(&GFLParams::from_i64(p, q), order)
            })?;
            (
                ranges_of(&[
                    ("p", pq.p.to_string()),
                    ("q", pq.q.to_string()),
                    ("order", order.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Prop32 { pq, n } => {
            let (nlo, nhi) = n.unsigned()?;
            if nlo < 2 {
                return Err("prop32 needs n >= 2".into());
            }
            let mut cases = Vec::new();
            for p in pq.p.iter() {
                for q in pq.q.iter() {
                    // one series-reading report per parameter pair, then the
                    // per-index convolution checks
                    cases.push((p, q, None));
                    for nn in nlo..=nhi {
                        cases.push((p, q, Some(nn)));
                    }
                }
            }
            let reports = sweep(&cases, |&(p, q, nn)| {
                let params = GFLParams::from_i64(p, q);
                match nn {
                    Some(nn) => check_prop32(&params, nn),
                    None => check_prop32_series(&params, nhi as usize),
                }
            })?;
            (
                ranges_of(&[
                    ("p", pq.p.to_string()),
                    ("q", pq.q.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Prop33 { p, q, n } => {
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for pp in p.iter() {
                for qq in q.iter() {
                    for nn in nlo.max(2)..=nhi {
                        cases.push((pp, qq, nn));
                    }
                }
            }
            let reports = sweep(&cases, |&(p, q, nn)| {
                cassini_gfl(&GFLParams::from_i64(p, q), nn)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Prop42 { pq, gamma, order } => {
            let algebras = gammas(gamma)?;
            let mut cases = Vec::new();
            for p in pq.p.iter() {
                for q in pq.q.iter() {
                    for a in &algebras {
                        cases.push((p, q, a.clone()));
                    }
                }
            }
            let reports = sweep(&cases, |(p, q, a)| {
                check_prop42(&GFLParams::from_i64(*p, *q), a, order)
            })?;
            (
                ranges_of(&[
                    ("p", pq.p.to_string()),
                    ("q", pq.q.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("order", order.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Prop51 { a, n, l } => {
            let (alo, ahi) = a.unsigned()?;
            let (nlo, nhi) = n.unsigned()?;
            let (llo, lhi) = l.unsigned()?;
            let mut cases = Vec::new();
            for id in Prop51Id::ALL {
                for aa in alo.max(1)..=ahi {
                    for nn in nlo..=nhi {
                        for ll in llo..=lhi {
                            cases.push((id, aa, nn, ll));
                        }
                    }
                }
            }
            let reports = sweep(&cases, |&(id, aa, nn, ll)| {
                check_prop51(id, &int(aa as i64), nn, ll)
            })?;
            (
                ranges_of(&[
                    ("a", a.to_string()),
                    ("n", n.to_string()),
                    ("l", l.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Remark52 { a, pq, n } => {
            let (alo, ahi) = a.unsigned()?;
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for aa in alo.max(1)..=ahi {
                for p in pq.p.iter() {
                    for q in pq.q.iter() {
                        for nn in nlo.max(1)..=nhi {
                            cases.push((aa, p, q, nn));
                        }
                    }
                }
            }
            let reports = sweep(&cases, |&(aa, p, q, nn)| {
                check_remark52(&int(aa as i64), &GFLParams::from_i64(p, q), nn)
            })?;
            (
                ranges_of(&[
                    ("a", a.to_string()),
                    ("p", pq.p.to_string()),
                    ("q", pq.q.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Thm45 { p, q, gamma, order } => {
            let algebras = gammas(gamma)?;
            let mut cases = Vec::new();
            for h in h_set() {
                for x in x_set() {
                    for pp in p.iter() {
                        for qq in q.iter() {
                            for a in &algebras {
                                cases.push((h.clone(), x.clone(), pp, qq, a.clone()));
                            }
                        }
                    }
                }
            }
            let reports = sweep(&cases, |(h, x, pp, qq, a)| {
                check_thm45(&HxParams::new(h.clone(), int(*pp), int(*qq)), x, a, order)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("order", order.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Thm46 { p, q, n } => {
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for h in h_set() {
                for x in x_set() {
                    for pp in p.iter() {
                        for qq in q.iter() {
                            for nn in nlo..=nhi {
                                cases.push((h.clone(), x.clone(), pp, qq, nn));
                            }
                        }
                    }
                }
            }
            let reports = sweep(&cases, |(h, x, pp, qq, nn)| {
                check_thm46(&HxParams::new(h.clone(), int(*pp), int(*qq)), x, *nn)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Thm47 { p, q, gamma, n } => {
            let algebras = gammas(gamma)?;
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for h in h_set() {
                for x in x_set() {
                    for pp in p.iter() {
                        for qq in q.iter() {
                            for a in &algebras {
                                for nn in nlo..=nhi {
                                    cases.push((h.clone(), x.clone(), pp, qq, a.clone(), nn));
                                }
                            }
                        }
                    }
                }
            }
            let reports = sweep(&cases, |(h, x, pp, qq, a, nn)| {
                check_thm47(&HxParams::new(h.clone(), int(*pp), int(*qq)), x, *nn, a)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::Catalan { p, q, gamma, n } => {
            let algebras = gammas(gamma)?;
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for h in h_set() {
                for x in x_set() {
                    for pp in p.iter() {
                        for qq in q.iter() {
                            for a in &algebras {
                                for nn in nlo.max(1)..=nhi {
                                    for s in 1..=nn {
                                        cases.push((h.clone(), x.clone(), pp, qq, a.clone(), nn, s));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let reports = sweep(&cases, |(h, x, pp, qq, a, nn, s)| {
                catalan_check(&HxParams::new(h.clone(), int(*pp), int(*qq)), x, *nn, *s, a)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
        VerifyCommand::CassiniHx { p, q, gamma, n } => {
            let algebras = gammas(gamma)?;
            let (nlo, nhi) = n.unsigned()?;
            let mut cases = Vec::new();
            for h in h_set() {
                for x in x_set() {
                    for pp in p.iter() {
                        for qq in q.iter() {
                            for a in &algebras {
                                for nn in nlo.max(1)..=nhi {
                                    cases.push((h.clone(), x.clone(), pp, qq, a.clone(), nn));
                                }
                            }
                        }
                    }
                }
            }
            let reports = sweep(&cases, |(h, x, pp, qq, a, nn)| {
                cassini_check(&HxParams::new(h.clone(), int(*pp), int(*qq)), x, *nn, a)
            })?;
            (
                ranges_of(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("n", n.to_string()),
                ]),
                reports,
            )
        }
    };
    let (report, code) = assemble(command, ranges, reports, started);
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    Ok(code)
}

fn run_order(which: OrderCommand, command: String) -> Result<i32, String> {
    let started = Instant::now();
    let (ranges, reports) = match which {
        OrderCommand::Remark41 { gamma, window, pq_box } => {
            let algebras = gammas(gamma)?;
            let (wlo, whi) = window.unsigned()?;
            let reports = sweep(&algebras, |a| {
                remark41_closure(a, wlo.max(1)..=whi, pq_box.lo..=pq_box.hi)
            })?;
            (
                ranges_of(&[
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("window", window.to_string()),
                    ("box", pq_box.to_string()),
                ]),
                reports,
            )
        }
        OrderCommand::Prop54 { a, gamma, window, pq_box } => {
            let algebras = gammas(gamma)?;
            let (alo, ahi) = a.unsigned()?;
            let (wlo, whi) = window.unsigned()?;
            let mut cases = Vec::new();
            for aa in alo.max(1)..=ahi {
                for alg in &algebras {
                    cases.push((aa, alg.clone()));
                }
            }
            let reports = sweep(&cases, |(aa, alg)| {
                prop54_closure(&int(*aa as i64), alg, wlo.max(1)..=whi, pq_box.lo..=pq_box.hi)
            })?;
            (
                ranges_of(&[
                    ("a", a.to_string()),
                    ("gamma1", gamma.gamma1.to_string()),
                    ("gamma2", gamma.gamma2.to_string()),
                    ("window", window.to_string()),
                    ("box", pq_box.to_string()),
                ]),
                reports,
            )
        }
    };
    let (report, code) = assemble(command, ranges, reports, started);
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    Ok(code)
}

#[derive(Serialize)]
struct CodeReport {
    command: String,
    bytes_in: usize,
    bytes_out: usize,
    corrupt_blocks: Vec<usize>,
    wall_time_ms: u128,
}

fn run_code(which: CodeCommand, command: String) -> Result<i32, String> {
    let started = Instant::now();
    let (args, encode) = match which {
        CodeCommand::Encode { args } => (args, true),
        CodeCommand::Decode { args } => (args, false),
    };
    let cfg = CodecConfig::from_i64(args.p, args.q, args.n, args.m).map_err(|e| e.to_string())?;
    let data = std::fs::read(&args.input)
        .map_err(|e| format!("cannot read {}: {}", args.input.display(), e))?;
    let (out, corrupt_blocks) = if encode {
        (encode_stream(&data, &cfg).map_err(|e| e.to_string())?, Vec::new())
    } else {
        let decoded = decode_stream(&data, &cfg).map_err(|e| e.to_string())?;
        (decoded.payload, decoded.corrupt_blocks)
    };
    std::fs::write(&args.output, &out)
        .map_err(|e| format!("cannot write {}: {}", args.output.display(), e))?;
    let report = CodeReport {
        command,
        bytes_in: data.len(),
        bytes_out: out.len(),
        corrupt_blocks: corrupt_blocks.clone(),
        wall_time_ms: started.elapsed().as_millis(),
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    Ok(if corrupt_blocks.is_empty() { 0 } else { 1 })
}

fn run(cli: Cli, command: String) -> Result<i32, String> {
    match cli.command {
        Command::Seq { which } => {
            match which {
                SeqCommand::Term { a, b, x0, x1, n, neg_mode } => {
                    let spec = SequenceSpec::from_i64(a, b, x0, x1);
                    let mode = match neg_mode {
                        NegMode::Recurrence => NegIndexMode::Recurrence,
                        NegMode::PaperRule => NegIndexMode::PaperRule,
                    };
                    let value = term(&spec, n, mode).map_err(|e| e.to_string())?;
                    println!("{}", value);
                }
                SeqCommand::Gfl { p, q, n } => {
                    println!("{}", gfl(&GFLParams::from_i64(p, q), n));
                }
            }
            Ok(0)
        }
        Command::Verify { which } => run_verify(which, command),
        Command::Order { which } => run_order(which, command),
        Command::Code { which } => run_code(which, command),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GFL_THREADS") {
        if let Ok(k) = threads.trim().parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
    let command: String = std::iter::once("gfl".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let cli = Cli::parse();
    match run(cli, command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
