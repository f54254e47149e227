//! Batch front door for the exact plane-quartic pipeline: run the
//! seven-point invariant, the four-line quartic construction, or a named
//! seeded verification suite, and emit a deterministic machine-readable
//! report.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use morley::bateman::{
    branch_quartic, luroth_closed_form, pentalateral_ops, reverse_roberts, RobertsData,
};
use morley::batch::{run_suite, CaseStatus};
use morley::config7::{morley_data, morley_invariant_fano, Config7};
use morley::rational::{format_rational, rat_i};
use morley::{Error, Form, Rational};

#[derive(Parser)]
#[command(name = "morley", about = "Exact invariants of plane quartic constructions", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Seven-point invariant: Q values, pfaffian F and both routes to Psi
    Psi {
        /// JSON file with a seven-point configuration
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Quartic of a four-line decomposition: branch form, closed form, vertices
    Luroth {
        /// JSON file with lines and decomposition coefficients
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a named seeded property suite
    Verify {
        /// Suite name (see `morley verify --suite list`)
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CheckStatus {
    Pass,
    Fail,
    Degenerate,
}

impl CheckStatus {
    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Degenerate => "degenerate",
        }
    }
}

struct Check {
    name: String,
    status: CheckStatus,
    residual: Option<String>,
}

/// Assembled result of one command invocation; rendering is deterministic
/// because outputs keep insertion order and all values are exact strings.
struct RunReport {
    command: String,
    input_digest: String,
    outputs: Vec<(String, Value)>,
    checks: Vec<Check>,
}

impl RunReport {
    fn new(command: &str, digest: String) -> Self {
        RunReport { command: command.into(), input_digest: digest, outputs: Vec::new(), checks: Vec::new() }
    }

    fn output(&mut self, key: &str, v: Value) {
        self.outputs.push((key.into(), v));
    }

    fn pass(&mut self, name: &str) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Pass, residual: None });
    }

    fn fail(&mut self, name: &str, residual: String) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Fail, residual: Some(residual) });
    }

    fn degenerate(&mut self, name: &str) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Degenerate, residual: None });
    }

    fn check(&mut self, name: &str, ok: bool, residual: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, residual());
        }
    }

    fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let outputs: Vec<Value> =
                    self.outputs.iter().map(|(k, v)| json!({"key": k, "value": v})).collect();
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| {
                        let mut o = json!({"name": c.name, "status": c.status.as_str()});
                        if let Some(r) = &c.residual {
                            o["residual"] = Value::String(r.clone());
                        }
                        o
                    })
                    .collect();
                let report = json!({
                    "command": self.command,
                    "input_digest": self.input_digest,
                    "outputs": outputs,
                    "checks": checks,
                });
                let mut s = serde_json::to_string_pretty(&report).unwrap();
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                s.push_str(&format!("command: {}\n", self.command));
                s.push_str(&format!("input: sha256:{}\n", self.input_digest));
                for (k, v) in &self.outputs {
                    s.push_str(&format!("{k}: {v}\n"));
                }
                for c in &self.checks {
                    match &c.residual {
                        Some(r) => s.push_str(&format!("check {}: {} ({r})\n", c.name, c.status.as_str())),
                        None => s.push_str(&format!("check {}: {}\n", c.name, c.status.as_str())),
                    }
                }
                s
            }
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn read_json(path: &PathBuf) -> Result<(Value, String), String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: Value =
        serde_json::from_slice(&bytes).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))?;
    Ok((v, sha256_hex(&bytes)))
}

fn rat_out(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn cmd_psi(input: &PathBuf, format: Format) -> Result<ExitCode, String> {
    let (v, digest) = read_json(input)?;
    let mut report = RunReport::new("psi", digest);
    let z = match Config7::from_json(&v) {
        Ok(z) => z,
        Err(Error::Parse(msg)) => return Err(msg),
        Err(e) => {
            report.output("error", Value::String(e.to_string()));
            report.degenerate("configuration");
            print!("{}", report.render(format));
            return Ok(ExitCode::SUCCESS);
        }
    };
    let fano = morley_invariant_fano(z.points());
    report.output("psi_fano", rat_out(&fano));
    match morley_data(&z) {
        Ok(d) => {
            report.output(
                "q_values",
                Value::Array(d.q_values.iter().map(rat_out).collect()),
            );
            report.output("f", rat_out(&d.f));
            match &d.psi {
                Some(psi) => {
                    report.output("psi", rat_out(psi));
                    report.check("two-route-consistency", fano == psi * &rat_i(6), || {
                        format_rational(&fano)
                    });
                }
                None => {
                    report.output("psi", Value::Null);
                    report.degenerate("two-route-consistency");
                }
            }
        }
        Err(Error::Parse(msg)) => return Err(msg),
        Err(e) => {
            report.output("error", Value::String(e.to_string()));
            report.degenerate("pipeline");
        }
    }
    print!("{}", report.render(format));
    Ok(if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn form_out(f: &Form) -> Value {
    f.to_json()
}

fn cmd_luroth(input: &PathBuf, format: Format) -> Result<ExitCode, String> {
    let (v, digest) = read_json(input)?;
    let mut report = RunReport::new("luroth", digest);
    let degenerate = |mut report: RunReport, e: Error, format: Format| {
        report.output("error", Value::String(e.to_string()));
        report.degenerate("construction");
        print!("{}", report.render(format));
        Ok(ExitCode::SUCCESS)
    };
    let r = match RobertsData::from_json(&v) {
        Ok(r) => r,
        Err(Error::Parse(msg)) => return Err(msg),
        Err(e) => return degenerate(report, e, format),
    };
    report.output("theta", form_out(&r.theta_form()));
    report.output("d", form_out(&r.d_form()));
    let (closed, fifth) = match luroth_closed_form(&r) {
        Ok(p) => p,
        Err(e) => return degenerate(report, e, format),
    };
    let quartic = match reverse_roberts(&r).and_then(|inp| branch_quartic(&inp)) {
        Ok(q) => q,
        Err(e) => return degenerate(report, e, format),
    };
    report.output("branch_quartic", form_out(&quartic));
    report.output("closed_form", form_out(&closed));
    report.output("fifth_line", form_out(&fifth));
    report.check("proportional", quartic.is_proportional_to(&closed), || {
        "branch quartic differs from the closed form".into()
    });
    let five = [
        r.lines[0].clone(),
        r.lines[1].clone(),
        r.lines[2].clone(),
        r.lines[3].clone(),
        fifth,
    ];
    match pentalateral_ops(&five) {
        Ok((penta, _)) => {
            report.output(
                "vertices",
                Value::Array(penta.vertices.iter().map(|p| p.to_json()).collect()),
            );
            report.check(
                "vertices-on-quartic",
                penta.vertices.iter().all(|p| quartic.eval(p.coords()).is_zero()),
                || "a vertex misses the quartic".into(),
            );
        }
        Err(_) => report.degenerate("vertices-on-quartic"),
    }
    print!("{}", report.render(format));
    Ok(if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_verify(suite: &str, seed: u64, count: u64, format: Format) -> Result<ExitCode, String> {
    let digest = sha256_hex(format!("{suite}:{seed}:{count}").as_bytes());
    let results = run_suite(suite, seed, count).map_err(|e| e.to_string())?;
    let mut report = RunReport::new("verify", digest);
    report.output("suite", Value::String(suite.into()));
    report.output("seed", json!(seed));
    report.output("count", json!(count));
    for c in results {
        let name = format!("case-{}/{}", c.index, c.name);
        match c.status {
            CaseStatus::Pass => report.pass(&name),
            CaseStatus::Degenerate => report.degenerate(&name),
            CaseStatus::Fail => report.fail(&name, c.residual.unwrap_or_default()),
        }
    }
    print!("{}", report.render(format));
    Ok(if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Psi { input, format } => cmd_psi(input, *format),
        Command::Luroth { input, format } => cmd_luroth(input, *format),
        Command::Verify { suite, seed, count, format } => cmd_verify(suite, *seed, *count, *format),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
