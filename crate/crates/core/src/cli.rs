//! Command-line front end. [`run`] is pure apart from reading input files and
//! writing `--out`, so tests can drive it in process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::acceptance::{self, Fault};
use crate::error::{Error, Result};
use crate::fgab::{Element, FgAbGroup};
use crate::graded::{
    coefficient_ring, phi_thr_fp_dims, phi_thr_z_dims, thh_crt_check, thh_z_table, weight_slice, DimsReport,
    FIXED_POINT_RESTRICTION,
};
use crate::json::{self, element_value, group_value, mackey_value, ring_value, MackeyInput};
use crate::mackey::{
    box_product, burnside_hermitian, hermitian_from_ring, validate_green, validate_hermitian, validate_mackey,
    GreenZ2, HermitianMackey, MackeyZ2,
};
use crate::ringalg::{gaussian_integers, group_by_name, integers, matrix_ring_m2, zmod, FinMonoid, PresRing, Report};
use crate::thr::{
    check_commutative_structure, laurent_inclusion, laurent_thr_pi0, thr_group_ring, thr_pi0, thr_pi0_commutative,
};
use crate::witt::witt_green;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "eqalg", version, about = "Exact calculus of Z/2-Mackey functors, Witt vectors and π₀THR")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check Mackey, Green or Hermitian data against its axioms.
    Validate {
        /// A built-in name (burnside, Z, F2, ...) or a JSON file.
        #[arg(long)]
        input: String,
    },
    /// The Witt Green functor of a ring with anti-involution.
    Witt {
        #[arg(long, default_value = "F2")]
        base: String,
        /// Ring JSON, used with `--base file`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Invariant factors by enumeration (finite rings only).
        #[arg(long)]
        decompose: bool,
    },
    /// Box product of two Mackey functors.
    Box {
        /// Two operands, each a built-in name or a JSON file.
        #[arg(long, num_args = 1, required = true)]
        input: Vec<String>,
    },
    /// π₀ of real topological Hochschild homology of Hermitian data.
    ThrPi0 {
        #[arg(long, default_value = "Z")]
        base: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// π₀ for a group ring over a base.
    GroupRing {
        /// A catalog name (c2, s3, q8, ...) or monoid JSON.
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "Z")]
        base: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// π₀ for the Laurent polynomials, truncated to |n| ≤ window.
    Laurent {
        #[arg(long, default_value_t = 5)]
        window: usize,
    },
    /// Degreewise dimension counts.
    Graded {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        weight: i64,
    },
    /// Run every acceptance check and the golden files.
    Selftest {
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
        #[arg(long, hide = true)]
        golden_dir: Option<PathBuf>,
        /// Rewrite golden files from the current output.
        #[arg(long, hide = true)]
        bless: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    PhiZ,
    PhiF2,
    Slice,
    ThhZ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    BurnsideTran,
}

/// Exit status and the text for each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: Value,
    text: String,
    status: i32,
}

impl Rendered {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, status: 0 }
    }
}

pub fn status_of(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Unsupported(_) | Error::Unbounded(_) | Error::Missing(_) => EXIT_UNSUPPORTED,
        _ => EXIT_VALIDATION,
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::IllDefinedHom(_) => "ill_defined_hom",
        Error::Shape(_) => "shape",
        Error::NotInvolution(_) => "not_involution",
        Error::InvalidRing(_) => "invalid_ring",
        Error::InvalidMonoid(_) => "invalid_monoid",
        Error::Validation(_) => "validation",
        Error::Missing(_) => "missing",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
        Error::Unbounded(_) => "unbounded",
    }
}

fn diagnostic(kind: &str, message: &str, status: i32) -> String {
    let v = json!({ "error": { "kind": kind, "message": message, "status": status } });
    serde_json::to_string(&v).expect("serializable") + "\n"
}

pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    status: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Output {
                    status: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: format!("{}{}", e.render(), diagnostic("usage", &e.kind().to_string(), EXIT_PARSE)),
                },
            };
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let status = status_of(&e);
            return Output {
                status,
                stdout: String::new(),
                stderr: diagnostic(kind_of(&e), &e.to_string(), status),
            };
        }
    };
    let body = match cli.format {
        Format::Json => json::to_string(&report.json),
        Format::Text => report.text,
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Output {
                status: report.status,
                ..Output::default()
            },
            Err(e) => Output {
                status: EXIT_FAILURE,
                stdout: String::new(),
                stderr: diagnostic("io", &e.to_string(), EXIT_FAILURE),
            },
        },
        None => Output {
            status: report.status,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Rendered> {
    match cmd {
        Command::Validate { input } => validate_cmd(input),
        Command::Witt { base, input, decompose } => witt_cmd(base, input.as_deref(), *decompose),
        Command::Box { input } => box_cmd(input),
        Command::ThrPi0 { base, input } => thr_pi0_cmd(base, input.as_deref()),
        Command::GroupRing { group, base, input } => group_ring_cmd(group, base, input.as_deref()),
        Command::Laurent { window } => laurent_cmd(*window),
        Command::Graded {
            target,
            max_degree,
            prime,
            weight,
        } => graded_cmd(*target, *max_degree, *prime, *weight),
        Command::Selftest {
            inject_fault,
            golden_dir,
            bless,
        } => selftest_cmd(*inject_fault, golden_dir.as_deref(), *bless),
    }
}

fn read_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    json::parse(&text)
}

/// Built-in rings with anti-involution.
pub fn builtin_ring(name: &str) -> Option<PresRing> {
    Some(match name.to_ascii_lowercase().as_str() {
        "z" => integers(),
        "f2" => zmod(2),
        "f3" => zmod(3),
        "f5" => zmod(5),
        "z4" => zmod(4),
        "zi" => gaussian_integers(),
        "m2" => matrix_ring_m2(),
        _ => return None,
    })
}

/// Built-in Hermitian data: `burnside`, or a built-in ring with its fixed points.
pub fn builtin_hermitian(name: &str) -> Option<Result<HermitianMackey>> {
    if name.eq_ignore_ascii_case("burnside") {
        return Some(Ok(burnside_hermitian()));
    }
    builtin_ring(name).map(|r| hermitian_from_ring(&r))
}

fn mackey_operand(name: &str) -> Result<MackeyInput> {
    if let Some(h) = builtin_hermitian(name) {
        let h = h?;
        return Ok(MackeyInput {
            mackey: h.mackey.clone(),
            ring_e: Some(h.ring_e.clone()),
            ring_fix: h.ring_fix.clone(),
            hermitian: Some(h),
        });
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Error::Parse(format!("{name} is neither a built-in name nor a file")));
    }
    let v = read_file(path)?;
    json::read_mackey(v.get("result").unwrap_or(&v))
}

fn hermitian_base(base: &str, input: Option<&Path>) -> Result<HermitianMackey> {
    if base.eq_ignore_ascii_case("file") {
        let path = input.ok_or_else(|| Error::Parse("--base file needs --input".into()))?;
        let v = read_file(path)?;
        return json::read_mackey(&v)?
            .hermitian
            .ok_or_else(|| Error::Missing("input has no Hermitian action".into()));
    }
    builtin_hermitian(base).unwrap_or_else(|| Err(Error::Parse(format!("unknown base {base}"))))
}

fn report_value(rep: &Report) -> Value {
    Value::Array(
        rep.violations
            .iter()
            .map(|v| json!({ "law": v.law, "witness": v.witness }))
            .collect(),
    )
}

fn render_mackey(m: &MackeyZ2) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "level_e    {}", m.level_e);
    let _ = writeln!(s, "level_fix  {}", m.level_fix);
    for (name, mat) in [("res", m.res.matrix()), ("tran", m.tran.matrix()), ("w", m.w.matrix())] {
        let body = mat.to_string().replace('\n', "\n           ");
        let _ = writeln!(s, "{name:<10} {body}");
    }
    s
}

fn render_report(rep: &Report) -> String {
    if rep.is_valid() {
        "valid: yes\n".into()
    } else {
        let mut s = "valid: no\n".to_string();
        for v in &rep.violations {
            let _ = writeln!(s, "  {}  ({})", v.law, v.witness);
        }
        s
    }
}

fn validate_cmd(input: &str) -> Result<Rendered> {
    let data = mackey_operand(input)?;
    let (kind, rep) = match (&data.hermitian, &data.ring_e, &data.ring_fix) {
        (Some(h), _, _) => ("hermitian", validate_hermitian(h)),
        (None, Some(re), Some(rf)) => (
            "green",
            validate_green(&GreenZ2 {
                mackey: data.mackey.clone(),
                ring_e: re.clone(),
                ring_fix: rf.clone(),
            }),
        ),
        _ => ("mackey", validate_mackey(&data.mackey)),
    };
    let json = json!({ "input": input, "checked": kind, "valid": rep.is_valid(), "violations": report_value(&rep) });
    let text = format!("{kind} data\n{}{}", render_mackey(&data.mackey), render_report(&rep));
    Ok(Rendered {
        json,
        text,
        status: if rep.is_valid() { 0 } else { EXIT_VALIDATION },
    })
}

fn ints_text(v: &[crate::matrix::Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn witt_cmd(base: &str, input: Option<&Path>, decompose: bool) -> Result<Rendered> {
    let ring = if base.eq_ignore_ascii_case("file") {
        let path = input.ok_or_else(|| Error::Parse("--base file needs --input".into()))?;
        json::read_ring(&read_file(path)?, None, None)?
    } else {
        builtin_ring(base).ok_or_else(|| Error::Parse(format!("unknown base ring {base}")))?
    };
    let wg = witt_green(&ring, decompose)?;
    let rep = validate_green(&wg.green);
    let mut obj = Map::new();
    obj.insert("base".into(), json!(base));
    obj.insert("group".into(), group_value(wg.ring.group()));
    obj.insert("mackey".into(), mackey_value(&wg.green.mackey));
    obj.insert("ring_fix".into(), ring_value(&wg.green.ring_fix));
    obj.insert("valid".into(), json!(rep.is_valid()));
    obj.insert("violations".into(), report_value(&rep));
    if let Some(d) = &wg.decomposition {
        obj.insert("invariant_factors".into(), json::ints_value(d));
    }
    let mut text = format!("W(S) for S = {base}\ngroup      {}\n", wg.ring.group());
    if let Some(d) = &wg.decomposition {
        let _ = writeln!(text, "invariant factors {}", ints_text(d));
    }
    text.push_str(&render_mackey(&wg.green.mackey));
    text.push_str(&render_report(&rep));
    Ok(Rendered {
        json: Value::Object(obj),
        text,
        status: if rep.is_valid() { 0 } else { EXIT_VALIDATION },
    })
}

fn box_cmd(inputs: &[String]) -> Result<Rendered> {
    if inputs.len() != 2 {
        return Err(Error::Parse(format!("box needs exactly two --input operands, got {}", inputs.len())));
    }
    let m = mackey_operand(&inputs[0])?.mackey;
    let n = mackey_operand(&inputs[1])?.mackey;
    let bx = box_product(&m, &n)?;
    let rep = validate_mackey(&bx.mackey);
    let names: Vec<String> = bx.fix_generator_names();
    let json = json!({
        "inputs": inputs,
        "result": mackey_value(&bx.mackey),
        "fixed_generators": names,
        "valid": rep.is_valid(),
    });
    let text = format!("{} □ {}\n{}{}", inputs[0], inputs[1], render_mackey(&bx.mackey), render_report(&rep));
    Ok(Rendered::ok(json, text))
}

fn basis_value(named: &[(String, Element)]) -> Value {
    Value::Object(named.iter().map(|(k, x)| (k.clone(), element_value(x))).collect())
}

fn render_basis(label: &str, g: &FgAbGroup, named: &[(String, Element)]) -> String {
    let width = named.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = format!("{label} basis\n");
    for (k, x) in named {
        let pad = width - k.chars().count();
        let _ = writeln!(s, "  {k}{}  {}", " ".repeat(pad), g.format_element(x));
    }
    s
}

fn thr_pi0_cmd(base: &str, input: Option<&Path>) -> Result<Rendered> {
    let h = hermitian_base(base, input)?;
    let rep = thr_pi0(&h)?;
    let m = &rep.result;
    let mut obj = Map::new();
    obj.insert("base".into(), json!(base));
    obj.insert("result".into(), mackey_value(m));
    obj.insert("trace".into(), json!(rep.trace));
    obj.insert("box_agrees".into(), json!(rep.box_agrees));
    obj.insert("unit_fix".into(), element_value(&rep.unit_fix));
    let mut text = format!("π₀ for base {base}\n{}", render_mackey(m));
    for t in &rep.trace {
        let _ = writeln!(text, "  {t}");
    }
    let _ = writeln!(text, "agrees with the relative box product: {}", yes_no(rep.box_agrees));
    if h.ring_e.is_commutative() && h.ring_fix.is_some() {
        let c = thr_pi0_commutative(&h)?;
        let structure = check_commutative_structure(&h, &c)?;
        let ring = c.ring.as_ref().expect("commutative case has a ring");
        obj.insert("ring_fix".into(), ring_value(ring));
        obj.insert(
            "norm".into(),
            Value::Array(c.norm.iter().flatten().map(element_value).collect()),
        );
        obj.insert("commutative_agrees".into(), json!(c.box_agrees));
        obj.insert("norm_multiplicative".into(), json!(structure));
        let _ = writeln!(text, "commutative presentation agrees: {}", yes_no(c.box_agrees));
        let _ = writeln!(text, "norm multiplicative, res a ring map: {}", yes_no(Some(structure)));
    }
    Ok(Rendered::ok(Value::Object(obj), text))
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn group_operand(name: &str) -> Result<FinMonoid> {
    if let Some(g) = group_by_name(name) {
        return Ok(g);
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Error::Parse(format!("{name} is neither a catalog group nor a file")));
    }
    json::read_monoid(&read_file(path)?)
}

fn group_ring_cmd(group: &str, base: &str, input: Option<&Path>) -> Result<Rendered> {
    let g = group_operand(group)?;
    let h = hermitian_base(base, input)?;
    let integral = base.eq_ignore_ascii_case("z");
    let rep = thr_group_ring(&g, &h, integral)?;
    let m = rep.result();
    let valid = validate_mackey(m);
    let (be, bf) = rep.named_basis();
    let mut obj = Map::new();
    obj.insert("group".into(), json!(group));
    obj.insert("base".into(), json!(base));
    obj.insert("classes".into(), json!(rep.data.class_names));
    obj.insert("fixed_pairs".into(), json!(rep.data.pair_names));
    obj.insert("result".into(), mackey_value(m));
    obj.insert("basis".into(), json!({ "level_e": basis_value(&be), "level_fix": basis_value(&bf) }));
    obj.insert("paths_agree".into(), json!(rep.paths_agree()));
    obj.insert("valid".into(), json!(valid.is_valid()));
    let mut text = format!("π₀ for {group} over {base}\n{}", render_mackey(m));
    text.push_str(&render_basis("level_e", &m.level_e, &be));
    text.push_str(&render_basis("level_fix", &m.level_fix, &bf));
    let _ = writeln!(text, "direct presentation agrees: {}", yes_no(rep.paths_agree()));
    text.push_str(&render_report(&valid));
    Ok(Rendered::ok(Value::Object(obj), text))
}

fn laurent_cmd(window: usize) -> Result<Rendered> {
    let rep = laurent_thr_pi0(window)?;
    let larger = laurent_thr_pi0(window + 3)?;
    let inc = laurent_inclusion(&rep, &larger)?;
    let (ce, _) = inc.f_e.cokernel();
    let (cf, _) = inc.f_fix.cokernel();
    let stable = inc.f_e.is_injective()
        && inc.f_fix.is_injective()
        && ce.torsion().is_empty()
        && cf.torsion().is_empty()
        && rep.has_expected_basis();
    let (be, bf) = rep.named_basis();
    let m = &rep.result;
    let json = json!({
        "window": window,
        "result": mackey_value(m),
        "basis": { "level_e": basis_value(&be), "level_fix": basis_value(&bf) },
        "stable": stable,
    });
    let mut text = format!("π₀ for Z[t, t⁻¹], |n| ≤ {window}\n{}", render_mackey(m));
    text.push_str(&render_basis("level_fix", &m.level_fix, &bf));
    let _ = writeln!(text, "stable under enlarging the window: {}", yes_no(Some(stable)));
    Ok(Rendered::ok(json, text))
}

fn dims_table(header: &str, rep: &DimsReport) -> String {
    let mut s = format!("{header}\n   n  dim  expected\n");
    for (n, (a, b)) in rep.computed.iter().zip(&rep.expected).enumerate() {
        let _ = writeln!(s, "{n:>4} {a:>4} {b:>9}");
    }
    for (name, ok) in &rep.checks {
        let _ = writeln!(s, "{name}: {}", yes_no(Some(*ok)));
    }
    s
}

fn dims_value(rep: &DimsReport) -> Value {
    json!({
        "dimensions": rep.computed,
        "expected": rep.expected,
        "agrees": rep.agrees(),
        "checks": rep.checks.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<Map<_, _>>(),
    })
}

fn graded_cmd(target: Target, max_degree: usize, prime: Option<u64>, weight: i64) -> Result<Rendered> {
    let (mut json, text) = match target {
        Target::PhiZ => {
            let rep = phi_thr_z_dims(max_degree)?;
            (dims_value(&rep), dims_table("Φ THR(Z): Tor over Z vs F₂[b₁,b₂,e]/e²", &rep))
        }
        Target::PhiF2 => {
            let p = prime.unwrap_or(2);
            let rep = phi_thr_fp_dims(p, max_degree)?;
            (dims_value(&rep), dims_table(&format!("Φ THR(F_{p})"), &rep))
        }
        Target::Slice => {
            let p = prime.unwrap_or(2);
            let ring = coefficient_ring(p)?;
            let dims = weight_slice(&ring, weight, max_degree)?;
            let mut s = format!("π_(n,{weight}) THR(F_{p})\n   n  dim\n");
            for (n, d) in dims.iter().enumerate() {
                let _ = writeln!(s, "{n:>4} {d:>4}");
            }
            let gens: Vec<Value> = ring
                .gens
                .iter()
                .map(|g| json!({ "name": g.name, "degree": [g.degree.0, g.degree.1], "invertible": g.invertible }))
                .collect();
            let mut v = json!({ "dimensions": dims, "generators": gens });
            if p == 2 {
                v["assumption"] = json!("only the bi-negative coefficient generators a and u are used");
            }
            v["restriction"] = Value::Object(
                FIXED_POINT_RESTRICTION
                    .iter()
                    .map(|(a, b)| (a.to_string(), json!(b)))
                    .collect(),
            );
            (v, s)
        }
        Target::ThhZ => {
            let groups = (0..=max_degree as u64)
                .map(|n| thh_z_table(n, prime))
                .collect::<Result<Vec<_>>>()?;
            let crt = thh_crt_check(50)?;
            let mut s = match prime {
                Some(p) => format!("π_n THH(Z)_({p})\n"),
                None => "π_n THH(Z)\n".to_string(),
            };
            for (n, g) in groups.iter().enumerate() {
                let _ = writeln!(s, "{n:>4}  {g}");
            }
            let _ = writeln!(s, "CRT consistent up to k = 50: {}", yes_no(Some(crt)));
            (json!({ "groups": groups.iter().map(group_value).collect::<Vec<_>>(), "crt_consistent": crt }), s)
        }
    };
    let target_name = match target {
        Target::PhiZ => "phi-z",
        Target::PhiF2 => "phi-f2",
        Target::Slice => "slice",
        Target::ThhZ => "thh-z",
    };
    json["target"] = json!(target_name);
    json["max_degree"] = json!(max_degree);
    if let Some(p) = prime {
        json["prime"] = json!(p);
    }
    if target == Target::Slice {
        json["weight"] = json!(weight);
    }
    Ok(Rendered::ok(json, text))
}

/// Commands whose JSON output is frozen under `tests/golden`.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("witt_f2.json", &["witt", "--base", "F2", "--decompose"]),
    ("witt_f3.json", &["witt", "--base", "F3", "--decompose"]),
    ("thr_pi0_z.json", &["thr-pi0", "--base", "Z"]),
    ("thr_pi0_f2.json", &["thr-pi0", "--base", "F2"]),
    ("thr_pi0_burnside.json", &["thr-pi0", "--base", "burnside"]),
    ("group_ring_c2_z.json", &["group-ring", "--group", "c2", "--base", "Z"]),
    ("group_ring_c2_burnside.json", &["group-ring", "--group", "c2", "--base", "burnside"]),
    ("laurent_5.json", &["laurent", "--window", "5"]),
    ("graded_phi_z.json", &["graded", "--target", "phi-z", "--max-degree", "20"]),
    ("graded_slice_f3.json", &["graded", "--target", "slice", "--prime", "3", "--max-degree", "20"]),
    ("graded_thh_z.json", &["graded", "--target", "thh-z", "--max-degree", "20"]),
    ("validate_burnside.json", &["validate", "--input", "burnside"]),
];

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// JSON output of a golden command.
pub fn golden_output(args: &[&str]) -> Output {
    let mut full = vec!["eqalg"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    run(full)
}

/// `None` when `actual` matches the file, otherwise a unified diff.
pub fn golden_diff(path: &Path, actual: &str) -> Option<String> {
    let expected = std::fs::read_to_string(path).unwrap_or_default();
    if expected == actual {
        return None;
    }
    let diff = similar::TextDiff::from_lines(expected.as_str(), actual);
    Some(
        diff.unified_diff()
            .context_radius(2)
            .header(&path.display().to_string(), "actual")
            .to_string(),
    )
}

fn selftest_cmd(fault: Option<FaultArg>, golden_dir: Option<&Path>, bless: bool) -> Result<Rendered> {
    let fault = match fault {
        Some(FaultArg::BurnsideTran) => Fault::BurnsideTran,
        None => Fault::None,
    };
    let outcomes = acceptance::run_all(fault);
    let mut text = String::new();
    let mut failures = Vec::new();
    for o in &outcomes {
        let _ = writeln!(text, "{o}");
        if !o.passed {
            failures.push(json!({ "criterion": o.id, "provenance": o.provenance, "message": o.detail }));
        }
    }
    let dir = golden_dir.map(Path::to_path_buf).unwrap_or_else(default_golden_dir);
    let mut golden = Map::new();
    for (file, args) in GOLDEN {
        let out = golden_output(args);
        let path = dir.join(file);
        if bless {
            std::fs::write(&path, &out.stdout).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
        let verdict = match (out.status, golden_diff(&path, &out.stdout)) {
            (0, None) => "pass".to_string(),
            (s, None) => format!("exit {s}"),
            (_, Some(diff)) => {
                let _ = writeln!(text, "golden drift in {file}:\n{diff}");
                "drift".to_string()
            }
        };
        if verdict != "pass" {
            failures.push(json!({ "golden": file, "provenance": format!("cli/{}", args[0]), "message": verdict }));
        }
        let _ = writeln!(text, "golden {file} [{verdict}]");
        golden.insert(file.to_string(), json!(verdict));
    }
    let passed = failures.is_empty();
    let _ = writeln!(text, "{}", if passed { "all checks pass" } else { "FAILURES" });
    let json = json!({
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id, "name": o.name, "provenance": o.provenance, "passed": o.passed, "detail": o.detail,
        })).collect::<Vec<_>>(),
        "golden": golden,
        "failures": failures,
        "passed": passed,
    });
    Ok(Rendered {
        json,
        text,
        status: if passed { 0 } else { EXIT_FAILURE },
    })
}
