//! Command implementations behind the `bnctl` binary.

pub mod error;
pub mod netfile;

use std::io::Write;
use std::path::Path;

use bncontrol::bounds::bounds_report;
use bncontrol::families::{gen_family, gen_xor_circulant, gen_xor_window, strategy, Family, LayeredFamilySpec};
use bncontrol::majority::{
    control_set_from_extraction, majority_extraction, random_regular_network, two_step_control, ThresholdKind,
};
use bncontrol::model::{simulate, trajectory, xor_matrix};
use bncontrol::oracle::{is_controllable_bruteforce, min_control_set_bruteforce, shortest_drive, STATE_LIMIT};
use bncontrol::xor::{basis_schedule, construct_control_node_set, is_controllable_xor, synthesize_control};
use bncontrol::{BnError, BooleanNetwork, ControlNodeSet, ControlScheme, Gf2Vector};

pub use error::CliError;
use netfile::{Metadata, NetworkFile, SchemeFile};

/// Largest network the `auto` method sends to the exhaustive oracle.
pub const AUTO_ORACLE_LIMIT: usize = 14;

pub type CmdResult = Result<i32, CliError>;

fn out_err(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_network(path: &Path) -> Result<(NetworkFile, BooleanNetwork), CliError> {
    let file = NetworkFile::parse(&read_file(path)?)?;
    let bn = file.network()?;
    Ok((file, bn))
}

/// A 0/1 string of length n, x1 leftmost.
pub fn parse_bits(s: &str, n: usize) -> Result<Gf2Vector, CliError> {
    let v = Gf2Vector::parse(s.trim()).map_err(|_| CliError::Usage(format!("'{s}' is not a 0/1 string")))?;
    if v.len() != n {
        return Err(CliError::BitLength { text: s.into(), expected: n, found: v.len() });
    }
    Ok(v)
}

/// Comma-separated node list such as `x1,x3` or `1,3`.
pub fn parse_control(s: &str, n: usize) -> Result<ControlNodeSet, CliError> {
    let mut nodes = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let digits = part.strip_prefix('x').unwrap_or(part);
        let i: usize = digits.parse().map_err(|_| CliError::Usage(format!("bad node '{part}'")))?;
        nodes.push(i);
    }
    Ok(ControlNodeSet::new(n, nodes)?)
}

pub fn format_set(u: &ControlNodeSet) -> String {
    if u.is_empty() {
        return "{}".into();
    }
    u.members().iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
}

fn resolve_control(file: &NetworkFile, flag: Option<&str>) -> Result<ControlNodeSet, CliError> {
    match flag {
        Some(s) => parse_control(s, file.n),
        None => file
            .control_set()?
            .ok_or_else(|| CliError::Usage("no --control given and the file has no control_set".into())),
    }
}

pub struct GenArgs {
    pub family: String,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

fn need(v: Option<usize>, name: &str, family: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{family} needs --{name}")))
}

pub fn cmd_gen(args: &GenArgs) -> Result<NetworkFile, CliError> {
    let fam = args.family.as_str();
    let meta = |k: Option<usize>, m: Option<usize>, seed: Option<u64>| {
        Some(Metadata { family: Some(fam.to_string()), k, m, seed })
    };
    let file = match fam {
        "majority-odd" | "majority-even" | "mtbi" | "phi" => {
            let family: Family = fam.parse()?;
            let (k, m) = (need(args.k, "k", fam)?, need(args.m, "m", fam)?);
            let (bn, u) = gen_family(&LayeredFamilySpec::new(family, k, m)?)?;
            NetworkFile::from_network(&bn, Some(&u), meta(Some(k), Some(m), None))
        }
        "xor-window" => {
            let (n, k) = (need(args.n, "n", fam)?, need(args.k, "k", fam)?);
            let (bn, u) = gen_xor_window(n, k)?;
            NetworkFile::from_network(&bn, Some(&u), meta(Some(k), None, None))
        }
        "xor-circulant" => {
            let (m, k) = (need(args.m, "m", fam)?, need(args.k, "k", fam)?);
            let (bn, u) = gen_xor_circulant(m, k)?;
            NetworkFile::from_network(&bn, Some(&u), meta(Some(k), Some(m), None))
        }
        "regular-majority" | "regular-mtbi" => {
            let (n, k) = (need(args.n, "n", fam)?, need(args.k, "k", fam)?);
            let seed = args.seed.unwrap_or(0);
            let kind = if fam == "regular-mtbi" { ThresholdKind::Mtbi } else { ThresholdKind::Majority };
            let bn = random_regular_network(n, k, kind, seed)?;
            NetworkFile::from_network(&bn, None, meta(Some(k), None, Some(seed)))
        }
        _ => return Err(CliError::Usage(format!("unknown family '{fam}'"))),
    };
    Ok(file)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Auto,
    XorExact,
    Oracle,
}

impl std::str::FromStr for CheckMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(CheckMethod::Auto),
            "xor-exact" => Ok(CheckMethod::XorExact),
            "oracle" => Ok(CheckMethod::Oracle),
            _ => Err(format!("unknown method '{s}' (auto, xor-exact, oracle)")),
        }
    }
}

pub fn cmd_check(path: &Path, control: Option<&str>, method: CheckMethod, out: &mut dyn Write) -> CmdResult {
    let (file, bn) = load_network(path)?;
    let u = resolve_control(&file, control)?;
    let method = match method {
        CheckMethod::Auto if bn.is_all_xor() => CheckMethod::XorExact,
        CheckMethod::Auto if bn.n() <= AUTO_ORACLE_LIMIT => CheckMethod::Oracle,
        CheckMethod::Auto => {
            return Err(BnError::OracleLimit { n: bn.n(), limit: AUTO_ORACLE_LIMIT }.into());
        }
        m => m,
    };
    let controllable = match method {
        CheckMethod::XorExact => {
            let cert = is_controllable_xor(&xor_matrix(&bn)?, &u)?;
            writeln!(out, "method: xor-exact").map_err(out_err)?;
            writeln!(out, "control set: {}", format_set(&u)).map_err(out_err)?;
            writeln!(out, "rank of W_U: {}/{}", cert.rank(), bn.n()).map_err(out_err)?;
            cert.controllable
        }
        _ => {
            let c = is_controllable_bruteforce(&bn, &u)?;
            writeln!(out, "method: oracle ({} states)", 1u64 << bn.n()).map_err(out_err)?;
            writeln!(out, "control set: {}", format_set(&u)).map_err(out_err)?;
            c
        }
    };
    writeln!(out, "{}", if controllable { "controllable" } else { "not controllable" }).map_err(out_err)?;
    Ok(if controllable { 0 } else { 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetMethod {
    GreedyXor,
    GreedyMajority,
    BruteMin,
}

impl std::str::FromStr for SetMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "greedy-xor" => Ok(SetMethod::GreedyXor),
            "greedy-majority" => Ok(SetMethod::GreedyMajority),
            "brute-min" => Ok(SetMethod::BruteMin),
            _ => Err(format!("unknown method '{s}' (greedy-xor, greedy-majority, brute-min)")),
        }
    }
}

pub fn cmd_control_set(path: &Path, method: SetMethod, max_size: Option<usize>, out: &mut dyn Write) -> CmdResult {
    let (_, bn) = load_network(path)?;
    let u = match method {
        SetMethod::GreedyXor => construct_control_node_set(&xor_matrix(&bn)?)?,
        SetMethod::GreedyMajority => {
            let e = majority_extraction(&bn)?;
            for (g, y) in e.groups.iter().zip(&e.targets) {
                let g: Vec<String> = g.iter().map(|i| format!("x{i}")).collect();
                writeln!(out, "group {} -> x{y}", g.join(",")).map_err(out_err)?;
            }
            let r: Vec<String> = e.residual.iter().map(|i| format!("x{i}")).collect();
            writeln!(out, "residual: {}", if r.is_empty() { "{}".into() } else { r.join(",") }).map_err(out_err)?;
            control_set_from_extraction(&e, bn.n())
        }
        SetMethod::BruteMin => match min_control_set_bruteforce(&bn, max_size.unwrap_or(bn.n()))? {
            Some(u) => u,
            None => {
                writeln!(out, "no controllable set within the size limit").map_err(out_err)?;
                return Ok(1);
            }
        },
    };
    writeln!(out, "size: {}", u.len()).map_err(out_err)?;
    writeln!(out, "control set: {}", format_set(&u)).map_err(out_err)?;
    Ok(0)
}

fn layered_family(file: &NetworkFile) -> Option<(Family, usize)> {
    let meta = file.metadata.as_ref()?;
    let family: Family = meta.family.as_deref()?.parse().ok()?;
    Some((family, meta.k?))
}

/// Picks the construction strategy, the XOR solver, the two-step majority scheme, or the oracle.
pub fn synthesize(
    file: &NetworkFile,
    bn: &BooleanNetwork,
    u: &ControlNodeSet,
    a: &Gf2Vector,
    b: &Gf2Vector,
) -> Result<(&'static str, ControlScheme), CliError> {
    if let Some((family, k)) = layered_family(file) {
        match strategy(family, bn, u, k, a, b) {
            Ok(s) => return Ok(("family strategy", s)),
            Err(BnError::FamilyMismatch(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    if bn.is_all_xor() {
        let m = xor_matrix(bn)?;
        let schedule = basis_schedule(&m, u)?;
        return Ok(("krylov solve", synthesize_control(&m, u, &schedule, a, b)?));
    }
    if let Ok(e) = majority_extraction(bn) {
        if control_set_from_extraction(&e, bn.n()) == *u {
            if let Ok(s) = two_step_control(bn, &e, a, b) {
                return Ok(("two-step", s));
            }
        }
    }
    if bn.n() > STATE_LIMIT {
        return Err(BnError::OracleLimit { n: bn.n(), limit: STATE_LIMIT }.into());
    }
    Ok(("oracle shortest drive", shortest_drive(bn, u, a, b)?))
}

pub fn write_trajectory(
    bn: &BooleanNetwork,
    u: &ControlNodeSet,
    a: &Gf2Vector,
    scheme: &ControlScheme,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let tr = trajectory(bn, u, a, scheme)?;
    let rows = tr.rows();
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (label, v) in rows {
        writeln!(out, "{label:<width$}  {v}").map_err(out_err)?;
    }
    Ok(())
}

pub fn cmd_synthesize(
    path: &Path,
    control: Option<&str>,
    from: &str,
    to: &str,
    scheme_out: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let (file, bn) = load_network(path)?;
    let u = resolve_control(&file, control)?;
    let a = parse_bits(from, bn.n())?;
    let b = parse_bits(to, bn.n())?;
    let (method, scheme) = synthesize(&file, &bn, &u, &a, &b)?;
    writeln!(out, "method: {method}").map_err(out_err)?;
    writeln!(out, "control set: {}", format_set(&u)).map_err(out_err)?;
    for (t, s) in scheme.signals.iter().enumerate() {
        writeln!(out, "u({t}) = {s}").map_err(out_err)?;
    }
    writeln!(out).map_err(out_err)?;
    write_trajectory(&bn, &u, &a, &scheme, out)?;
    if let Some(p) = scheme_out {
        write_file(p, &SchemeFile::new(bn.n(), &u, &scheme).emit())?;
    }
    Ok(0)
}

pub fn cmd_verify(network: &Path, scheme: &Path, from: &str, to: &str, out: &mut dyn Write) -> CmdResult {
    let (_, bn) = load_network(network)?;
    let sf = SchemeFile::parse(&read_file(scheme)?)?;
    if sf.n != bn.n() {
        return Err(BnError::DimensionMismatch { expected: bn.n(), found: sf.n }.into());
    }
    let (u, scheme) = sf.scheme()?;
    let a = parse_bits(from, bn.n())?;
    let b = parse_bits(to, bn.n())?;
    let states = simulate(&bn, &u, &a, &scheme)?;
    let last = states.last().expect("simulation includes the start state");
    if *last == b {
        writeln!(out, "pass: reached {b} at time {}", scheme.steps()).map_err(out_err)?;
        Ok(0)
    } else {
        writeln!(out, "fail: reached {last}, expected {b}").map_err(out_err)?;
        Ok(1)
    }
}

pub fn cmd_bounds(n: usize, k: usize, s: usize, family: &str, out: &mut dyn Write) -> CmdResult {
    let family: Family = family.parse()?;
    let r = bounds_report(n, k, s, family)?;
    let rows = [
        ("family", r.family.to_string()),
        ("n", r.n.to_string()),
        ("k", r.k.to_string()),
        ("in-degree", r.arity.to_string()),
        ("horizon s", r.s.to_string()),
        ("lower bound (closed form)", r.closed_form_lb.to_string()),
        ("lower bound (inequality)", r.inequality_min_m.to_string()),
        ("upper bound", r.upper_bound.to_string()),
        ("upper bound (floor)", r.upper_floor.to_string()),
    ];
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (label, value) in rows {
        writeln!(out, "{label:<width$}  {value}").map_err(out_err)?;
    }
    Ok(0)
}
