//! The `skewinc` command line, as a library so that tests can drive it
//! without spawning processes.
//!
//! Exit codes: 0 on success, 1 when the library reports a domain error
//! (a non-unit, a violated hypothesis, a rejected witness), 2 when the
//! input cannot be parsed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skew_incidence::algebra::check_algebra_identities;
use skew_incidence::isomorphism::{
    build_psi, fingerprint, parse_witness, recover_poset_map, recover_poset_map_exploratory, render_witness, RingIso,
};
use skew_incidence::ring::check_ring_axioms;
use skew_incidence::structure::{
    center_enumerate, center_member_elem, component_center_check, diagonalize_idempotent, invert_elem,
    is_idempotent_elem, jacobson_member_elem, locate_primitive,
};
use skew_incidence::{AlgebraContext, CoeffRing, Error, Poset, RingSpec, SkewElement, DEFAULT_ENUMERATION_BOUND};

#[derive(Debug, Parser)]
#[command(name = "skewinc", version, about = "Arithmetic and structure of skew incidence rings over finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Poset file: `elements <n>` then one cover `i < j` per line.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Coefficient ring, e.g. `zmod:4`, `gf:2:2:frobenius`, `prodswap:zmod:3`.
    #[arg(long)]
    pub ring: Option<String>,
    /// Element expression such as `1*e[1] + w*e[1,2]` (repeatable).
    #[arg(long = "elem")]
    pub elems: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest algebra that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply the elements left to right.
    Mul(Common),
    /// Two-sided inverse of a unit.
    Invert(Common),
    /// Membership in the Jacobson radical.
    RadicalTest(Common),
    /// Whether each element is idempotent.
    IdempotentTest(Common),
    /// Conjugate an idempotent to its diagonal part.
    Diagonalize(Common),
    /// Whether an idempotent is primitive, and where.
    PrimitiveTest(Common),
    /// Membership in the center.
    Center(Common),
    /// Enumerate the center.
    CenterEnum(Common),
    /// Isomorphism-invariant cardinalities.
    Fingerprint(Common),
    /// Build the ring isomorphism induced by an order isomorphism and a ring isomorphism.
    BuildPsi(BuildPsiArgs),
    /// Recover the poset isomorphism from a witness file.
    Recover(WitnessArgs),
    /// Check a witness file.
    VerifyWitness(WitnessArgs),
    /// Check the ring axioms, and the algebra identities when a poset is given.
    CheckAxioms(Common),
}

#[derive(Debug, Args)]
pub struct BuildPsiArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub target_poset: PathBuf,
    /// Defaults to the source ring.
    #[arg(long)]
    pub target_ring: Option<String>,
    /// Images of x1..xn in the target poset, 1-based, e.g. `2 1 3`.
    #[arg(long)]
    pub alpha: String,
    /// `identity` or `sigma:<k>` (the k-th power of the source endomorphism).
    #[arg(long, default_value = "identity")]
    pub phi: String,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub witness: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    pub bound: usize,
    /// Run recovery even when the rings have nontrivial idempotents.
    #[arg(long)]
    pub exploratory: bool,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Key-value or free-text output, chosen by `--format`.
struct Report {
    format: Format,
    out: String,
    diag: String,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, out: String::new(), diag: String::new() }
    }

    /// A `key=value` line in structured mode; nothing in text mode.
    fn key(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.format == Format::Structured {
            let _ = writeln!(self.out, "{key}={value}");
        }
    }

    /// A line in text mode; nothing in structured mode.
    fn text(&mut self, line: impl std::fmt::Display) {
        if self.format == Format::Text {
            let _ = writeln!(self.out, "{line}");
        }
    }

    fn both(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Structured => self.key(key, value),
            Format::Text => self.text(value),
        }
    }
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = match &cli.command {
        Command::BuildPsi(a) => a.common.format,
        Command::Recover(a) | Command::VerifyWitness(a) => a.format,
        Command::Mul(c)
        | Command::Invert(c)
        | Command::RadicalTest(c)
        | Command::IdempotentTest(c)
        | Command::Diagonalize(c)
        | Command::PrimitiveTest(c)
        | Command::Center(c)
        | Command::CenterEnum(c)
        | Command::Fingerprint(c)
        | Command::CheckAxioms(c) => c.format,
    };
    let mut report = Report::new(format);
    let result = dispatch(&cli.command, &mut report);
    let mut stderr = std::mem::take(&mut report.diag);
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    };
    if code != 0 && format == Format::Structured {
        report.key("status", "error");
    }
    Outcome { code, stdout: report.out, stderr }
}

fn read_file(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_poset(path: &Path, report: &mut Report) -> Run<Poset> {
    let poset = Poset::parse_text(&read_file(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if poset.was_relabeled() {
        let moved: Vec<String> = (0..poset.len())
            .map(|i| format!("x{}=old x{}", i + 1, poset.origin(i) + 1))
            .collect();
        let _ = writeln!(
            report.diag,
            "note: {} relabeled to a linear extension: {}",
            path.display(),
            moved.join(", ")
        );
    }
    Ok(poset)
}

fn parse_ring(spec: &str) -> Run<RingSpec> {
    Ok(spec.parse::<RingSpec>()?)
}

fn context(common: &Common, report: &mut Report) -> Run<Arc<AlgebraContext<RingSpec>>> {
    let path = common.poset.as_deref().ok_or_else(|| Failure::Input("missing --poset".into()))?;
    let ring = common.ring.as_deref().ok_or_else(|| Failure::Input("missing --ring".into()))?;
    let poset = load_poset(path, report)?;
    let ring = parse_ring(ring)?;
    report.key("ring", ring.id());
    report.key("poset", inline_poset(&poset));
    Ok(AlgebraContext::new(poset, ring))
}

fn inline_poset(p: &Poset) -> String {
    p.to_text().trim_end().replace('\n', "; ")
}

fn elements(ctx: &Arc<AlgebraContext<RingSpec>>, common: &Common, min: usize, report: &mut Report) -> Run<Vec<SkewElement<RingSpec>>> {
    if common.elems.len() < min {
        return Err(Failure::Input(format!("expected at least {min} --elem")));
    }
    let mut out = Vec::with_capacity(common.elems.len());
    for (k, text) in common.elems.iter().enumerate() {
        let f = ctx.parse_element(text)?;
        report.key(&format!("elem.{}", k + 1), f.render());
        out.push(f);
    }
    Ok(out)
}

fn dispatch(command: &Command, report: &mut Report) -> Run<()> {
    match command {
        Command::Mul(c) => {
            report.key("verb", "mul");
            let ctx = context(c, report)?;
            let elems = elements(&ctx, c, 1, report)?;
            let product = elems.iter().skip(1).fold(elems[0].clone(), |acc, f| &acc * f);
            report.both("result", product.render());
        }
        Command::Invert(c) => {
            report.key("verb", "invert");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                report.both(&format!("result.{}", k + 1), invert_elem(f)?.render());
            }
        }
        Command::RadicalTest(c) => {
            report.key("verb", "radical-test");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                let member = jacobson_member_elem(f)?;
                report.key(&format!("in_radical.{}", k + 1), member);
                report.text(format!("{}: {}", f.render(), if member { "in the radical" } else { "not in the radical" }));
            }
        }
        Command::IdempotentTest(c) => {
            report.key("verb", "idempotent-test");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                let idem = is_idempotent_elem(f);
                report.key(&format!("idempotent.{}", k + 1), idem);
                report.text(format!("{}: {}", f.render(), if idem { "idempotent" } else { "not idempotent" }));
            }
        }
        Command::Diagonalize(c) => {
            report.key("verb", "diagonalize");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                let d = diagonalize_idempotent(f)?;
                let k = k + 1;
                report.key(&format!("diagonal.{k}"), d.diagonal.render());
                report.key(&format!("conjugator.{k}"), d.conjugator.render());
                report.key(&format!("conjugator_inverse.{k}"), d.conjugator_inverse.render());
                report.text(format!("diagonal:   {}", d.diagonal.render()));
                report.text(format!("conjugator: {}", d.conjugator.render()));
                report.text(format!("inverse:    {}", d.conjugator_inverse.render()));
            }
        }
        Command::PrimitiveTest(c) => {
            report.key("verb", "primitive-test");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                let k = k + 1;
                match locate_primitive(f)? {
                    Some(loc) => {
                        let coeff = ctx.ring().format_elem(&loc.coeff);
                        report.key(&format!("primitive.{k}"), true);
                        report.key(&format!("position.{k}"), loc.index + 1);
                        report.key(&format!("coefficient.{k}"), &coeff);
                        report.key(&format!("coefficient_canonical.{k}"), loc.coeff_is_canonical);
                        report.text(format!("{}: primitive at x{} with coefficient {coeff}", f.render(), loc.index + 1));
                    }
                    None => {
                        report.key(&format!("primitive.{k}"), false);
                        report.text(format!("{}: not primitive", f.render()));
                    }
                }
            }
        }
        Command::Center(c) => {
            report.key("verb", "center");
            let ctx = context(c, report)?;
            for (k, f) in elements(&ctx, c, 1, report)?.iter().enumerate() {
                let central = center_member_elem(f)?;
                if central {
                    component_center_check(f)?;
                }
                report.key(&format!("central.{}", k + 1), central);
                report.text(format!("{}: {}", f.render(), if central { "central" } else { "not central" }));
            }
        }
        Command::CenterEnum(c) => {
            report.key("verb", "center-enum");
            let ctx = context(c, report)?;
            let mut center = center_enumerate(&ctx)?;
            center.sort();
            report.key("count", center.len());
            for (k, z) in center.iter().enumerate() {
                report.both(&format!("element.{}", k + 1), z.render());
            }
            report.text(format!("{} central elements", center.len()));
        }
        Command::Fingerprint(c) => {
            report.key("verb", "fingerprint");
            let ctx = context(c, report)?;
            let fp = fingerprint(&ctx, c.bound)?;
            report.key("total", fp.total);
            report.key("units", fp.units);
            report.key("idempotents", fp.idempotents);
            report.key("center", fp.center);
            report.key("radical", fp.radical);
            report.text(&fp);
        }
        Command::BuildPsi(a) => build_psi_command(a, report)?,
        Command::Recover(a) => recover_command(a, report)?,
        Command::VerifyWitness(a) => {
            report.key("verb", "verify-witness");
            let w = load_witness(a)?;
            match w.verify() {
                Ok(()) => report.both("verified", true),
                Err(Error::WitnessRejected(reason)) => {
                    report.key("verified", false);
                    report.key("reason", &reason);
                    report.text(format!("rejected: {reason}"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::CheckAxioms(c) => {
            report.key("verb", "check-axioms");
            let ring = parse_ring(c.ring.as_deref().ok_or_else(|| Failure::Input("missing --ring".into()))?)?;
            report.key("ring", ring.id());
            check_ring_axioms(&ring)?;
            report.both("ring_axioms", "ok");
            if let Some(path) = &c.poset {
                let poset = load_poset(path, report)?;
                report.key("poset", inline_poset(&poset));
                check_algebra_identities(&AlgebraContext::new(poset, ring))?;
                report.both("algebra_identities", "ok");
            }
        }
    }
    Ok(())
}

fn parse_labels(text: &str, n: usize) -> Run<Vec<usize>> {
    let labels = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(Failure::Input(format!("bad label '{t}' in --alpha (expected 1..{n})"))),
        })
        .collect::<Run<Vec<_>>>()?;
    if labels.len() != n {
        return Err(Failure::Input(format!("--alpha needs {n} labels, got {}", labels.len())));
    }
    Ok(labels)
}

fn build_psi_command(a: &BuildPsiArgs, report: &mut Report) -> Run<()> {
    report.key("verb", "build-psi");
    let source = context(&a.common, report)?;
    let target_poset = load_poset(&a.target_poset, report)?;
    let target_ring = match &a.target_ring {
        Some(spec) => parse_ring(spec)?,
        None => source.ring().clone(),
    };
    report.key("target_ring", target_ring.id());
    report.key("target_poset", inline_poset(&target_poset));
    let alpha = parse_labels(&a.alpha, source.poset().len())?;
    let ring = source.ring();
    let phi = match a.phi.as_str() {
        "identity" => RingIso::from_fn(ring, &target_ring, |r| r.clone())?,
        other => {
            let k: usize = other
                .strip_prefix("sigma:")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Failure::Input(format!("bad --phi '{other}' (expected identity or sigma:<k>)")))?;
            RingIso::from_fn(ring, &target_ring, |r| ring.sigma_pow(k, r))?
        }
    };
    report.key("phi", &a.phi);
    let w = build_psi(&source, &target_poset, target_ring, &alpha, &phi)?;
    w.verify()?;
    report.key("verified", true);
    let text = render_witness(&w)?;
    for line in text.lines() {
        report.both("witness", line);
    }
    Ok(())
}

fn load_witness(a: &WitnessArgs) -> Run<skew_incidence::RingIsoWitness<RingSpec, RingSpec>> {
    let text = read_file(&a.witness)?;
    let dir = a.witness.parent();
    Ok(parse_witness(&text, dir, a.bound)?)
}

fn recover_command(a: &WitnessArgs, report: &mut Report) -> Run<()> {
    report.key("verb", "recover");
    let w = load_witness(a)?;
    let n = w.source().poset().len();
    if a.exploratory {
        let r = recover_poset_map_exploratory(&w)?;
        report.key("mode", "exploratory");
        report.text("exploratory run: the coefficient-ring hypothesis is not checked");
        for (x, loc) in r.located.iter().enumerate() {
            let value = match loc {
                Ok(y) => format!("y{}", w.target_relabel().map_or(*y, |r| r[*y]) + 1),
                Err(why) => format!("none ({why})"),
            };
            report.key(&format!("alpha.{}", x + 1), &value);
            report.text(format!("x{} -> {value}", x + 1));
        }
        report.key("order_isomorphism", r.is_order_isomorphism);
        report.text(format!("order isomorphism: {}", r.is_order_isomorphism));
        return Ok(());
    }
    let r = recover_poset_map(&w)?;
    let labels: Vec<String> = r.alpha_original.iter().map(|y| (y + 1).to_string()).collect();
    report.key("alpha", labels.join(" "));
    for x in 0..n {
        report.text(format!("x{} -> y{}", x + 1, r.alpha_original[x] + 1));
    }
    for (x, h) in r.conjugators.iter().enumerate() {
        report.key(&format!("conjugator.{}", x + 1), h.render());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(parse_labels("2 1,3", 3).ok(), Some(vec![1, 0, 2]));
        assert!(parse_labels("1 2", 3).is_err());
        assert!(parse_labels("0 1", 2).is_err());
    }

    #[test]
    fn missing_inputs_are_usage_errors() {
        let out = run(["skewinc", "mul", "--ring", "zmod:2", "--elem", "delta"]);
        assert_eq!(out.code, 2);
        assert_eq!(out.stderr, "error: missing --poset\n");
    }
}
