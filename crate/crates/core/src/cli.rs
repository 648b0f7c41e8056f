//! The `solqsol` command line.
//!
//! Exit codes: 0 success, 1 a verified claim came back otherwise or an
//! internal failure, 2 usage or spec parse error, 3 order cap exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::factorize;
use crate::catalog::type_label;
use crate::group::{Group, OrderHistogram};
use crate::iso::{characteristic_subgroups, subgroup_abstract_group};
use crate::lattice::{FiniteLattice, LatticeJson, LatticeSummary};
use crate::limits::max_order;
use crate::quotient::quotient_unchecked;
use crate::solitary::{qsol, sol, solitary_report};
use crate::spec::GroupSpec;
use crate::subgroups::{
    all_subgroups, is_cyclic, is_elementary_abelian, is_hamiltonian, is_nilpotent, is_normal, is_perfect,
    normal_subgroups, SubgroupFamily,
};
use crate::verify::{verify, verify_all, VerificationResult};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "solqsol", version, about = "Solitary subgroup and solitary quotient lattices of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, element-order histogram and structural flags.
    Show { spec: String },
    /// One subgroup family with its lattice.
    Families {
        spec: String,
        which: Which,
        /// Also write the Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Shorthand for `families <spec> sol`.
    Sol {
        spec: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Shorthand for `families <spec> qsol`.
    Qsol {
        spec: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the claim-verification suite.
    Verify {
        #[arg(long, conflicts_with = "id", required_unless_present = "id")]
        all: bool,
        #[arg(long)]
        id: Option<String>,
    },
    /// One JSON line per group in the chosen constructor families.
    Census {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        #[arg(long, value_delimiter = ',', default_value = "cyclic,dihedral,semidihedral,quaternion,symmetric,abelian")]
        families: Vec<CensusFamily>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Sol,
    Qsol,
    Normal,
    Char,
    Subgroups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusFamily {
    Cyclic,
    Dihedral,
    Semidihedral,
    Quaternion,
    Symmetric,
    Abelian,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupFlags {
    pub abelian: bool,
    pub cyclic: bool,
    pub nilpotent: bool,
    pub perfect: bool,
    pub hamiltonian: bool,
    pub elementary_abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupDescriptor {
    pub spec: String,
    pub label: String,
    pub order: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    pub flags: GroupFlags,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberReport {
    pub order: usize,
    pub members: Vec<usize>,
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_type: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    #[serde(flatten)]
    pub summary: LatticeSummary,
    pub json: LatticeJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: Which,
    pub orders: Vec<usize>,
    pub members: Vec<MemberReport>,
    pub lattice: LatticeReport,
}

pub fn describe(spec: &str, g: &Group) -> Result<GroupDescriptor> {
    Ok(GroupDescriptor {
        spec: spec.to_string(),
        label: g.label().to_string(),
        order: g.order(),
        type_label: type_label(g),
        flags: GroupFlags {
            abelian: g.is_abelian(),
            cyclic: is_cyclic(g),
            nilpotent: is_nilpotent(g),
            perfect: is_perfect(g),
            hamiltonian: is_hamiltonian(g)?,
            elementary_abelian: is_elementary_abelian(g),
        },
    })
}

pub fn family(g: &Group, which: Which) -> Result<SubgroupFamily> {
    Ok(match which {
        Which::Sol => sol(g)?.clone(),
        Which::Qsol => qsol(g)?.clone(),
        Which::Normal => normal_subgroups(g)?.clone(),
        Which::Char => characteristic_subgroups(g)?,
        Which::Subgroups => all_subgroups(g)?.clone(),
    })
}

pub fn family_report(g: &Group, which: Which) -> Result<(FamilyReport, FiniteLattice)> {
    let f = family(g, which)?;
    let lattice = FiniteLattice::from_subgroup_family(&f)?;
    let members = f
        .iter()
        .map(|h| {
            let quotient_type = if is_normal(g, h)? {
                Some(type_label(&quotient_unchecked(g, h)?.group))
            } else {
                None
            };
            Ok(MemberReport {
                order: h.order(),
                members: h.elements(),
                type_label: type_label(&subgroup_abstract_group(g, h)?.0),
                quotient_type,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = FamilyReport {
        family: which,
        orders: f.orders(),
        members,
        lattice: LatticeReport { summary: lattice.summary(), json: lattice.to_json() },
    };
    Ok((report, lattice))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Parse { .. } | Error::InvalidParameter(_) | Error::UnknownClaim(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn cmd_show(spec: &str, echo: &[String], out: &mut dyn Write) -> Result<i32> {
    let g = GroupSpec::parse(spec)?.build()?;
    let histogram: OrderHistogram = g.order_histogram();
    print_json(
        out,
        &json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "group": describe(spec, &g)?,
            "exponent": g.exponent(),
            "histogram": histogram,
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_families(spec: &str, which: Which, dot: Option<&PathBuf>, echo: &[String], out: &mut dyn Write) -> Result<i32> {
    let g = GroupSpec::parse(spec)?.build()?;
    let (report, lattice) = family_report(&g, which)?;
    if let Some(path) = dot {
        std::fs::write(path, lattice.to_dot())
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
    }
    print_json(
        out,
        &json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "group": describe(spec, &g)?,
            "families": [report],
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_verify(all: bool, id: Option<&str>, echo: &[String], out: &mut dyn Write) -> Result<i32> {
    let results: Vec<VerificationResult> = match (all, id) {
        (true, _) => verify_all()?,
        (false, Some(id)) => vec![verify(id)?],
        (false, None) => return Err(Error::InvalidParameter("pass --all or --id".into())),
    };
    let unexpected: Vec<&str> = results.iter().filter(|r| !r.as_expected()).map(|r| r.claim.as_str()).collect();
    print_json(
        out,
        &json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "results": results,
            "summary": {
                "total": results.len(),
                "as_expected": results.len() - unexpected.len(),
                "unexpected": unexpected,
            },
        }),
    )?;
    Ok(if unexpected.is_empty() { EXIT_OK } else { EXIT_FAILED })
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.push(k);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order at most `max`, one spec per isomorphism type.
pub fn abelian_specs(max: usize) -> Vec<String> {
    let mut out = vec!["C1".to_string()];
    for n in 2..=max as u64 {
        let mut combos = vec![String::new()];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for c in &combos {
                for part in partitions(e, e) {
                    let list: Vec<String> = part.iter().map(u32::to_string).collect();
                    let block = format!("Ab({p}:[{}])", list.join(","));
                    next.push(if c.is_empty() { block } else { format!("{c}x{block}") });
                }
            }
            combos = next;
        }
        out.extend(combos);
    }
    out
}

pub fn census_specs(max: usize, families: &[CensusFamily]) -> Vec<String> {
    let mut out = Vec::new();
    for f in families {
        match f {
            CensusFamily::Cyclic => out.extend((1..=max).map(|n| format!("C{n}"))),
            CensusFamily::Dihedral => out.extend((6..=max).step_by(2).map(|n| format!("D{n}"))),
            CensusFamily::Semidihedral => {
                out.extend((4..).map(|k| 1usize << k).take_while(|&n| n <= max).map(|n| format!("SD{n}")))
            }
            CensusFamily::Quaternion => {
                out.extend(["Q8", "Q8xC2", "Q8xC2xC2"].iter().filter(|s| crate::corpus::spec_order(s).unwrap_or(usize::MAX) <= max).map(|s| s.to_string()))
            }
            CensusFamily::Symmetric => out.extend((1..=5usize).filter(|&n| (1..=n).product::<usize>() <= max).map(|n| format!("S{n}"))),
            CensusFamily::Abelian => out.extend(abelian_specs(max)),
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
struct CensusLine {
    spec: String,
    #[serde(rename = "type")]
    type_label: String,
    order: usize,
    sol_orders: Vec<usize>,
    qsol_orders: Vec<usize>,
    sol_lattice: LatticeSummary,
    qsol_lattice: LatticeSummary,
    quotient_solitary_free: bool,
    qsol_equals_normal: bool,
    sol_equals_qsol: bool,
}

fn census_line(spec: &str) -> Result<CensusLine> {
    let g = GroupSpec::parse(spec)?.build()?;
    let r = solitary_report(&g)?;
    Ok(CensusLine {
        spec: spec.to_string(),
        type_label: type_label(&g),
        order: g.order(),
        sol_orders: r.sol.orders(),
        qsol_orders: r.qsol.orders(),
        sol_lattice: r.sol_lattice.summary(),
        qsol_lattice: r.qsol_lattice.summary(),
        quotient_solitary_free: r.quotient_solitary_free,
        qsol_equals_normal: r.qsol_equals_normal,
        sol_equals_qsol: r.sol_equals_qsol,
    })
}

fn cmd_census(max: usize, families: &[CensusFamily], out: &mut dyn Write) -> Result<i32> {
    if max > max_order() {
        return Err(Error::CapExceeded { order: max, cap: max_order() });
    }
    let specs = census_specs(max, families);
    let lines: Vec<Result<CensusLine>> = specs.par_iter().map(|s| census_line(s)).collect();
    for line in lines {
        let text = serde_json::to_string(&line?).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).cloned().collect();
    let outcome = match &cli.command {
        Command::Show { spec } => cmd_show(spec, &echo, out),
        Command::Families { spec, which, dot } => cmd_families(spec, *which, dot.as_ref(), &echo, out),
        Command::Sol { spec, dot } => cmd_families(spec, Which::Sol, dot.as_ref(), &echo, out),
        Command::Qsol { spec, dot } => cmd_families(spec, Which::Qsol, dot.as_ref(), &echo, out),
        Command::Verify { all, id } => cmd_verify(*all, id.as_deref(), &echo, out),
        Command::Census { max_order, families } => cmd_census(*max_order, families, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Applies `SOLQSOL_MAX_ORDER` if set; an unparsable value is a usage error.
pub fn apply_environment(err: &mut dyn Write) -> std::result::Result<(), i32> {
    if let Ok(text) = std::env::var("SOLQSOL_MAX_ORDER") {
        match text.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => crate::limits::set_max_order(cap),
            _ => {
                let _ = writeln!(err, "error: SOLQSOL_MAX_ORDER must be a positive integer, got `{text}`");
                return Err(EXIT_USAGE);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("solqsol").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn qsol_of_d8() {
        let (code, out, _) = run_args(&["qsol", "D8"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["families"][0]["orders"], json!([1, 2, 8]));
        assert_eq!(v["families"][0]["members"][1]["quotient_type"], json!("C2xC2"));
    }

    #[test]
    fn trivial_sol() {
        let (code, out, _) = run_args(&["families", "C1", "sol"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["families"][0]["orders"], json!([1]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["show", "D6xZ4"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["show", "C201"]).0, EXIT_CAP);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "--id", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["show", "D4"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn census_lines() {
        let (code, out, _) = run_args(&["census", "--max-order", "8", "--families", "dihedral,quaternion"]);
        assert_eq!(code, 0);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["spec"], json!("D6"));
        assert_eq!(lines[1]["qsol_orders"], json!([1, 2, 8]));
    }

    #[test]
    fn abelian_census_counts() {
        // Number of abelian groups of order n for n = 1..=16.
        let per_order = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        assert_eq!(abelian_specs(16).len(), per_order.iter().sum::<usize>());
    }
}
