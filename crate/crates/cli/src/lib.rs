//! Command implementations behind the `relcoh` binary.

mod args;

use std::fmt::Write as _;

use relcoh_core::algebra::{direct_sum, quotient, triangular, DirectSum};
use relcoh_core::cyclic::{connes_tsygan, cyclic_cohomology_range, sbi_exactness, CyclicCase};
use relcoh_core::hochschild::{cohomology_range, comparison_inclusion_range, CohomologyReport};
use relcoh_core::io::{
    parse_bimodule_json, resolve_algebra, resolve_bimodule, resolve_direct_sum, resolve_ideal, resolve_matrix,
    resolve_parts, resolve_subalgebra, validate_algebra_spec,
};
use relcoh_core::theoremlab::{builtin_cases, verify};
use relcoh_core::{Algebra, Bimodule, Error, Limits, Result, Status, TheoremCase, Verdict};
use serde::Serialize;

pub use args::{Cli, Command, Format, Input, Options, VerifyArgs};

/// What a command prints on stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// 1 for failed checks and internal inconsistencies, 2 for bad input,
/// 3 for exceeded limits.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeBudget { .. } | Error::DegreeCap { .. } => 3,
        Error::Parse(_)
        | Error::InvalidAlgebra(_)
        | Error::InvalidBimodule(_)
        | Error::Subalgebra(_)
        | Error::Ideal(_)
        | Error::Dimension(_)
        | Error::Precondition(_) => 2,
        Error::Containment(_) | Error::ChainMap(_) | Error::Exactness(_) | Error::Assembly(_) => 1,
    }
}

struct Loaded {
    algebra: Algebra,
    sum: Option<DirectSum>,
}

impl Input {
    fn load(&self) -> Result<Loaded> {
        match (&self.algebra, &self.parts) {
            (Some(spec), None) => Ok(Loaded { algebra: resolve_algebra(spec)?, sum: None }),
            (None, Some(parts)) => {
                let ds = resolve_direct_sum(parts)?;
                Ok(Loaded { algebra: ds.algebra.clone(), sum: Some(ds) })
            }
            _ => Err(Error::Parse("give exactly one of --algebra or --parts".into())),
        }
    }

    fn module_spec(&self) -> &str {
        self.module.as_deref().unwrap_or("dual")
    }
}

impl Loaded {
    fn module(&self, input: &Input) -> Result<Bimodule> {
        resolve_bimodule(input.module_spec(), &self.algebra)
    }

    fn subalgebra(&self, spec: &str) -> Result<relcoh_core::SubalgebraSpec> {
        resolve_subalgebra(spec, &self.algebra, self.sum.as_ref())
    }

    fn ideal(&self, input: &Input) -> Result<relcoh_core::IdealSpec> {
        let spec = input.ideal.as_deref().ok_or_else(|| Error::Parse("this theorem needs --ideal".into()))?;
        resolve_ideal(spec, &self.algebra, self.sum.as_ref())
    }

    fn explicit_module(&self, input: &Input, over: &Algebra) -> Result<Option<Bimodule>> {
        match input.module.as_deref() {
            None | Some("dual") => Ok(None),
            Some(spec) => resolve_bimodule(spec, over).map(Some),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn ok(output: String) -> Result<Outcome> {
    Ok(Outcome { output, code: 0 })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.options;
    let budget = usize::try_from(opts.size_budget).unwrap_or(usize::MAX);
    let limits = Limits::new(opts.max_degree, budget);
    match &cli.command {
        Command::Validate(input) => validate(input, opts),
        Command::Hochschild(input) => hochschild(input, opts, &limits, false),
        Command::Relative(input) => hochschild(input, opts, &limits, true),
        Command::Cyclic(input) => cyclic(input, opts, &limits),
        Command::ConnesTsygan(input) => ct(input, opts, &limits),
        Command::Sbi(input) => sbi(input, opts, &limits),
        Command::Verify(v) => {
            let case = theorem_case(v, opts.max_degree)?;
            let verdict = verify(&case, opts.skip_certification, &limits)?;
            Ok(verdicts(&[(v.id.clone(), verdict)], opts.format))
        }
        Command::Suite => {
            let mut out = Vec::new();
            for named in builtin_cases() {
                out.push((named.name.clone(), verify(&named.case, opts.skip_certification, &limits)?));
            }
            Ok(verdicts(&out, opts.format))
        }
    }
}

#[derive(Serialize)]
struct ValidationJson {
    dim: usize,
    associative: bool,
    unital: bool,
    valid: bool,
    violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module_error: Option<String>,
}

fn validate(input: &Input, opts: &Options) -> Result<Outcome> {
    let report = match (&input.algebra, &input.parts) {
        (Some(spec), None) => validate_algebra_spec(spec)?,
        (None, Some(parts)) => {
            let parts = resolve_parts(parts)?;
            direct_sum(&parts)?.algebra.validate()
        }
        _ => return Err(Error::Parse("give exactly one of --algebra or --parts".into())),
    };
    let mut out = ValidationJson {
        dim: report.dim,
        associative: report.associative,
        unital: report.unital,
        valid: report.is_valid(),
        violation: report.violation.as_ref().map(ToString::to_string),
        module_valid: None,
        module_error: None,
    };
    if let (true, Some(_)) = (out.valid, &input.module) {
        let loaded = input.load()?;
        match loaded.module(input) {
            Ok(_) => out.module_valid = Some(true),
            Err(e @ Error::InvalidBimodule(_)) | Err(e @ Error::Dimension(_)) => {
                out.module_valid = Some(false);
                out.module_error = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    let code = i32::from(!out.valid || out.module_valid == Some(false));
    let output = match opts.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "dim = {}", out.dim);
            let _ = writeln!(s, "associative = {}", out.associative);
            let _ = writeln!(s, "unital = {}", out.unital);
            match &out.violation {
                Some(v) => {
                    let _ = writeln!(s, "INVALID: {v}");
                }
                None => {
                    let _ = writeln!(s, "valid algebra");
                }
            }
            match (&out.module_valid, &out.module_error) {
                (Some(true), _) => {
                    let _ = writeln!(s, "valid bimodule");
                }
                (Some(false), Some(e)) => {
                    let _ = writeln!(s, "INVALID bimodule: {e}");
                }
                _ => {}
            }
            s
        }
    };
    Ok(Outcome { output, code })
}

fn hochschild(input: &Input, opts: &Options, limits: &Limits, relative: bool) -> Result<Outcome> {
    let loaded = input.load()?;
    let x = loaded.module(input)?;
    let s = match (&input.subalgebra, relative) {
        (Some(spec), _) => Some(loaded.subalgebra(spec)?),
        (None, true) => return Err(Error::Parse("relative cohomology needs --subalgebra".into())),
        (None, false) => None,
    };
    let results = cohomology_range(&loaded.algebra, &x, s.as_ref(), opts.max_degree, limits)?;
    let mut reports: Vec<CohomologyReport> = results.iter().map(|r| r.report()).collect();
    let mut comparison = None;
    if relative {
        let s = s.as_ref().expect("checked above");
        let maps = comparison_inclusion_range(&loaded.algebra, &x, s, opts.max_degree, limits)?;
        let isos: Vec<bool> = maps.iter().map(|m| m.is_iso()).collect();
        let absolute: Vec<usize> = maps.iter().map(|m| m.tgt_dim).collect();
        for (r, &iso) in reports.iter_mut().zip(&isos) {
            r.iso_flags.insert("comparison_iso".into(), iso);
        }
        comparison = Some((absolute, isos));
    }
    let output = match opts.format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut s = String::new();
            let label = if relative || input.subalgebra.is_some() { "H_S" } else { "H" };
            let dims: Vec<usize> = reports.iter().map(|r| r.dim_h).collect();
            let _ = writeln!(s, "{label} = {}", list(&dims));
            for r in &reports {
                let _ = writeln!(s, "  degree {}: dim Z = {}, dim N = {}, dim H = {}", r.degree, r.dim_z, r.dim_n, r.dim_h);
            }
            if let Some((absolute, isos)) = comparison {
                let _ = writeln!(s, "H = {}", list(&absolute));
                let _ = writeln!(s, "comparison iso = {}", list(&isos));
            }
            s
        }
    };
    ok(output)
}

fn cyclic(input: &Input, opts: &Options, limits: &Limits) -> Result<Outcome> {
    let loaded = input.load()?;
    let s = input.subalgebra.as_deref().map(|spec| loaded.subalgebra(spec)).transpose()?;
    let results = cyclic_cohomology_range(&loaded.algebra, s.as_ref(), opts.max_degree, limits)?;
    let reports: Vec<CohomologyReport> = results.iter().map(|r| r.report()).collect();
    let output = match opts.format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut s = String::new();
            let label = if input.subalgebra.is_some() { "HC_S" } else { "HC" };
            let dims: Vec<usize> = reports.iter().map(|r| r.dim_h).collect();
            let _ = writeln!(s, "{label} = {}", list(&dims));
            for r in &reports {
                let _ = writeln!(s, "  degree {}: dim Z = {}, dim N = {}, dim HC = {}", r.degree, r.dim_z, r.dim_n, r.dim_h);
            }
            s
        }
    };
    ok(output)
}

fn ct(input: &Input, opts: &Options, limits: &Limits) -> Result<Outcome> {
    let loaded = input.load()?;
    let s = input.subalgebra.as_deref().map(|spec| loaded.subalgebra(spec)).transpose()?;
    let seq = connes_tsygan(&loaded.algebra, s.as_ref(), opts.max_degree, limits)?;
    let report = seq.report();
    let good = seq.is_exact() && report.eta_invertible.iter().all(|&b| b);
    let output = match opts.format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "HC = {}", list(&report.hc));
            let _ = writeln!(s, "H = {}", list(&report.h));
            let _ = writeln!(s, "exactness defects = {}", list(&report.exactness_defects));
            let _ = writeln!(s, "eta invertible = {}", list(&report.eta_invertible));
            let _ = writeln!(s, "{}", if good { "exact" } else { "NOT exact" });
            s
        }
    };
    Ok(Outcome { output, code: i32::from(!good) })
}

fn sbi(input: &Input, opts: &Options, limits: &Limits) -> Result<Outcome> {
    let loaded = input.load()?;
    let s = input.subalgebra.as_deref().map(|spec| loaded.subalgebra(spec)).transpose()?;
    let report = sbi_exactness(&loaded.algebra, s.as_ref(), opts.max_degree, limits)?;
    let good = report.is_exact();
    let output = match opts.format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            for d in &report.degrees {
                let _ = writeln!(
                    s,
                    "degree {}: dim C = {}, dim CC = {}, dim CS = {}, defects = {}, stable = {}, chain maps = {}",
                    d.degree,
                    d.dim_relative,
                    d.dim_cyclic,
                    d.dim_image,
                    list(&d.defects()),
                    d.stable,
                    d.chain_maps
                );
            }
            let _ = writeln!(s, "{}", if good { "exact" } else { "NOT exact" });
            s
        }
    };
    Ok(Outcome { output, code: i32::from(!good) })
}

fn verdicts(list_of: &[(String, Verdict)], format: Format) -> Outcome {
    let fail = list_of.iter().any(|(_, v)| v.overall() == Status::Fail);
    let output = match format {
        Format::Json if list_of.len() == 1 => json(&list_of[0].1),
        Format::Json => {
            #[derive(Serialize)]
            struct Named<'a> {
                name: &'a str,
                #[serde(flatten)]
                verdict: &'a Verdict,
            }
            let named: Vec<Named> = list_of.iter().map(|(n, v)| Named { name: n, verdict: v }).collect();
            json(&named)
        }
        Format::Text => {
            let mut s = String::new();
            for (name, v) in list_of {
                let _ = writeln!(s, "{} {name}", v.overall());
                for (i, (deg, st)) in v.degrees.iter().zip(&v.status).enumerate() {
                    let lhs = v.lhs_dims.get(i).map_or("-".to_string(), ToString::to_string);
                    let rhs = v.rhs_dims.get(i).map_or("-".to_string(), ToString::to_string);
                    let _ = writeln!(s, "  degree {deg}: {st} (lhs {lhs}, rhs {rhs})");
                }
                for (h, holds) in &v.hypotheses {
                    let _ = writeln!(s, "  hypothesis {h}: {holds}");
                }
            }
            s
        }
    };
    Outcome { output, code: i32::from(fail) }
}

fn triangular_corners(v: &VerifyArgs, loaded_parts: Option<&str>) -> Result<(Algebra, Algebra, Bimodule)> {
    let parts = loaded_parts.ok_or_else(|| Error::Parse("triangular theorems need --parts a1,a2".into()))?;
    let parts = resolve_parts(parts)?;
    let [a1, a2]: [Algebra; 2] =
        parts.try_into().map_err(|_| Error::Parse("triangular theorems need exactly two --parts".into()))?;
    let y = match v.y.as_str() {
        "regular" => Bimodule::regular(&a1),
        "zero" => Bimodule::zero(a1.dim(), a2.dim(), 0),
        spec => {
            let text = if spec.trim_start().starts_with('{') {
                spec.to_string()
            } else {
                std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?
            };
            parse_bimodule_json(&text)?
        }
    };
    triangular(&a1, &a2, &y)?;
    Ok((a1, a2, y))
}

/// Builds the theorem instance named by `v.id` from the command-line input.
pub fn theorem_case(v: &VerifyArgs, max_degree: usize) -> Result<TheoremCase> {
    let input = &v.input;
    let needs_sub = |loaded: &Loaded| -> Result<relcoh_core::SubalgebraSpec> {
        let spec = input.subalgebra.as_deref().ok_or_else(|| Error::Parse("this theorem needs --subalgebra".into()))?;
        loaded.subalgebra(spec)
    };
    let case = match v.id.as_str() {
        "1.6" => {
            let loaded = input.load()?;
            let subalgebra = needs_sub(&loaded)?;
            let module = loaded.explicit_module(input, &loaded.algebra)?;
            TheoremCase::Relative { algebra: loaded.algebra, subalgebra, module, max_degree }
        }
        "1.7" => {
            let parts = input.parts.as_deref().ok_or_else(|| Error::Parse("1.7 needs --parts".into()))?;
            let loaded = input.load()?;
            let module = loaded.explicit_module(input, &loaded.algebra)?;
            TheoremCase::DirectSum { parts: resolve_parts(parts)?, module, max_degree }
        }
        "1.10" => {
            let (a1, a2, y) = triangular_corners(v, input.parts.as_deref())?;
            TheoremCase::Triangular { a1, a2, y, max_degree }
        }
        "2.1" => {
            let loaded = input.load()?;
            let ideal = loaded.ideal(input)?;
            let q = quotient(&loaded.algebra, &ideal)?;
            let module = loaded.explicit_module(input, &q.algebra)?;
            TheoremCase::Quotient { algebra: loaded.algebra, ideal, module, max_degree }
        }
        "2.2" => {
            let loaded = input.load()?;
            let ideal = loaded.ideal(input)?;
            TheoremCase::IdealVanishing { algebra: loaded.algebra, ideal, max_degree }
        }
        "2.4" => {
            let loaded = input.load()?;
            let ideal = loaded.ideal(input)?;
            TheoremCase::QuotientDual { algebra: loaded.algebra, ideal, max_degree }
        }
        "4.1" => {
            let loaded = input.load()?;
            let subalgebra = needs_sub(&loaded)?;
            TheoremCase::Cyclic(CyclicCase::Relative { algebra: loaded.algebra, subalgebra, max_degree })
        }
        "4.2" => {
            let loaded = input.load()?;
            let ideal = loaded.ideal(input)?;
            TheoremCase::Cyclic(CyclicCase::Quotient { algebra: loaded.algebra, ideal, max_degree })
        }
        "4.3" => {
            let loaded = input.load()?;
            let kappa = v.kappa.as_deref().ok_or_else(|| Error::Parse("4.3 needs --kappa".into()))?;
            let (target, kappa) = match kappa.strip_prefix("projection:") {
                Some(i) => {
                    let ds = loaded.sum.as_ref().ok_or_else(|| Error::Parse("projection:i needs --parts".into()))?;
                    let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad part index `{i}`")))?;
                    let part = ds.parts.get(i).ok_or_else(|| Error::Parse(format!("no part {i}")))?;
                    (part.clone(), ds.projection(i))
                }
                None => {
                    let target = v.target.as_deref().ok_or_else(|| Error::Parse("4.3 needs --target".into()))?;
                    (resolve_algebra(target)?, resolve_matrix(kappa)?)
                }
            };
            TheoremCase::Cyclic(CyclicCase::Morphism { algebra: loaded.algebra, target, kappa, max_degree })
        }
        "4.4" => {
            let parts = input.parts.as_deref().ok_or_else(|| Error::Parse("4.4 needs --parts".into()))?;
            TheoremCase::Cyclic(CyclicCase::DirectSum { parts: resolve_parts(parts)?, max_degree })
        }
        "4.7" => {
            let (a1, a2, y) = triangular_corners(v, input.parts.as_deref())?;
            TheoremCase::Cyclic(CyclicCase::Triangular { a1, a2, y, max_degree })
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown theorem `{other}` (expected 1.6, 1.7, 1.10, 2.1, 2.2, 2.4, 4.1, 4.2, 4.3, 4.4 or 4.7)"
            )))
        }
    };
    Ok(case)
}
