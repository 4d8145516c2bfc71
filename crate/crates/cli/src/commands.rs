use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jjcoh_core::cochain::{cohomologous, cohomology, is_coboundary, is_cocycle};
use jjcoh_core::deformation::{
    equivalent_order1, hom_infinitesimal_class, infinitesimal_class, specialize, verify_deformation,
    verify_hom_deformation, DeformationError, DeformationMode, TruncatedDeformation,
    TruncatedHomDeformation,
};
use jjcoh_core::linalg::parse_rational;
use jjcoh_core::representation::{extensions_equivalent, semidirect_product};
use jjcoh_core::structures::{
    antiderivations, b_p_dimension, check_pseudo_euclidean, derivations, exact_sequence_report,
    inner_antiderivations, invariant_forms, structure_report, symmetric_skew_antiderivations,
    symmetric_skew_derivations, BilinearForm, StructureError,
};
use jjcoh_core::{
    Algebra, AlgebraError, Cochain, CochainError, GeneralAlgebra, Representation, RepresentationError,
    SymmetryClass,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::catalog::{self, CatalogKind};
use crate::parse::{self, default_names, ParseError, ParsedAlgebra};
use crate::report::{self, q};

#[derive(Parser, Debug)]
#[command(name = "jjcoh", version, about = "Cohomology, invariant forms and deformations of Jacobi-Jordan algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include bases (cocycles, representatives, derivations, …).
    #[arg(long, global = true)]
    pub basis: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check commutativity, the Jacobi identity and x^3 = 0.
    Validate(AlgebraArg),
    /// Annihilator, power chain, nilpotency index and identity flags.
    Info(AlgebraArg),
    /// Cocycles, coboundaries and cohomology in one degree.
    Cohomology(CohomologyArgs),
    /// Derivations (split by a form if one is given).
    Derivations(OptionalFormArgs),
    /// Antiderivations and inner antiderivations.
    Antiderivations(OptionalFormArgs),
    /// Invariant symmetric forms and b_p.
    Forms(OptionalFormArgs),
    /// Exactness of the Der / F / H_s^3 sequence for a pseudo-Euclidean pair.
    ExactSequence(FormArgs),
    /// Abelian extensions by a symmetric 2-cochain.
    #[command(subcommand)]
    Extension(ExtensionCommand),
    /// Formal deformations of an algebra.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Formal deformations of a homomorphism.
    #[command(subcommand)]
    HomDeform(HomDeformCommand),
    /// Rewrite an algebra in a new basis.
    Transport(TransportArgs),
    /// Built-in algebras and forms.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// `catalog:NAME` or a file path.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub algebra: String,
    /// `trivial`, `adjoint` or `rep:<path>`.
    #[arg(long, default_value = "trivial")]
    pub coefficients: String,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value = "full")]
    pub class: SymmetryClass,
}

#[derive(Args, Debug)]
pub struct OptionalFormArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub form: Option<String>,
}

#[derive(Args, Debug)]
pub struct FormArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub form: String,
}

#[derive(Args, Debug)]
pub struct ExtensionArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value = "trivial")]
    pub coefficients: String,
    /// Cochain file.
    #[arg(long)]
    pub cochain: String,
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCommand {
    /// Print the algebra E_c.
    Build(ExtensionArgs),
    /// Is c a symmetric cocycle, and is E_c Jacobi-Jordan?
    Check(ExtensionArgs),
    /// Are E_c and E_c' equivalent extensions?
    Equiv {
        #[command(flatten)]
        first: ExtensionArgs,
        #[arg(long)]
        cochain2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DeformCommand {
    /// Check the deformation equations order by order.
    Verify {
        #[arg(long)]
        deformation: String,
        #[arg(long, default_value = "truncated")]
        mode: DeformationMode,
        /// Truncate (or zero-pad) to this order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Class of the infinitesimal term in H_s^2(J, J).
    Class {
        #[arg(long)]
        deformation: String,
    },
    /// Order-one equivalence of two deformations.
    Equiv {
        #[arg(long)]
        deformation: String,
        #[arg(long)]
        deformation2: String,
    },
    /// The algebra at a rational parameter value.
    Specialize {
        #[arg(long)]
        deformation: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum HomDeformCommand {
    Verify {
        #[arg(long)]
        hom: String,
    },
    Class {
        #[arg(long)]
        hom: String,
    },
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    #[arg(long)]
    pub algebra: String,
    /// Matrix file; column i is the i-th new basis vector in old coordinates.
    #[arg(long)]
    pub change: String,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Show { name: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Parse(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Domain(_) => "domain",
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

impl From<CochainError> for CliError {
    fn from(e: CochainError) -> Self {
        domain(e)
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        domain(e)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        domain(e)
    }
}

impl From<RepresentationError> for CliError {
    fn from(e: RepresentationError) -> Self {
        match e {
            RepresentationError::InvalidRepresentation { .. } => CliError::Validation(e.to_string()),
            other => domain(other),
        }
    }
}

impl From<DeformationError> for CliError {
    fn from(e: DeformationError) -> Self {
        match e {
            DeformationError::TargetNotAdmissible => CliError::Validation(e.to_string()),
            other => domain(other),
        }
    }
}

pub struct Config {
    pub max_degree: usize,
}

/// Resolves `catalog:` references and file paths. References inside a
/// file are relative to that file's directory.
struct Loader;

impl Loader {
    fn path(reference: &str, base: Option<&Path>) -> PathBuf {
        match base {
            Some(dir) => dir.join(reference),
            None => PathBuf::from(reference),
        }
    }

    fn read(reference: &str, base: Option<&Path>) -> Result<(String, String, PathBuf), CliError> {
        let path = Self::path(reference, base);
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Ok((path.display().to_string(), text, path.parent().map(Path::to_path_buf).unwrap_or_default()))
    }

    fn algebra_any(reference: &str, base: Option<&Path>) -> Result<ParsedAlgebra, CliError> {
        if let Some(name) = reference.strip_prefix("catalog:") {
            return catalog::algebra(name)
                .map(ParsedAlgebra::Commutative)
                .ok_or_else(|| CliError::Usage(format!("no catalog algebra named {name:?}")));
        }
        let (source, text, _) = Self::read(reference, base)?;
        Ok(parse::parse_algebra_any(&source, &text)?)
    }

    fn algebra(reference: &str, base: Option<&Path>) -> Result<Algebra, CliError> {
        match Self::algebra_any(reference, base)? {
            ParsedAlgebra::Commutative(a) => Ok(a),
            ParsedAlgebra::General(_) => Err(CliError::Validation(format!(
                "{reference}: algebra is declared `general`, a commutative algebra is required"
            ))),
        }
    }

    fn form(reference: &str, a: &Algebra) -> Result<BilinearForm, CliError> {
        let m = if let Some(name) = reference.strip_prefix("catalog:") {
            catalog::form(name).ok_or_else(|| CliError::Usage(format!("no catalog form named {name:?}")))?
        } else {
            let (source, text, _) = Self::read(reference, None)?;
            parse::parse_form(&source, &text)?.1
        };
        if m.rows() != a.dim() {
            return Err(domain(format!("form has dimension {}, algebra has {}", m.rows(), a.dim())));
        }
        Ok(BilinearForm::new(m)?)
    }

    /// The representation and the names of the module basis.
    fn coefficients(spec: &str, a: &Algebra) -> Result<(Representation, Vec<String>), CliError> {
        match spec {
            "trivial" => Ok((Representation::trivial(a, 1), default_names("m", 1))),
            "adjoint" => Ok((Representation::adjoint(a), a.basis_names().to_vec())),
            other => {
                let Some(path) = other.strip_prefix("rep:") else {
                    return Err(CliError::Usage(format!(
                        "--coefficients must be trivial, adjoint or rep:<path>, found {other:?}"
                    )));
                };
                let (source, text, dir) = Self::read(path, None)?;
                let spec = parse::parse_rep_header(&source, &text)?;
                let base = Self::algebra(&spec.algebra_ref, Some(&dir))?;
                if base != *a {
                    return Err(domain(format!("{source}: representation is over a different algebra")));
                }
                let actions = parse::parse_rep_actions(&spec, a.basis_names())?;
                let r = Representation::new(a.clone(), spec.module_dim, actions)?;
                if let Some(v) = r.check_representation().violations.first() {
                    return Err(CliError::Validation(format!(
                        "{source}: not a representation: fails at ({}, {})",
                        a.basis_names()[v.i],
                        a.basis_names()[v.j]
                    )));
                }
                Ok((r, spec.module_names))
            }
        }
    }

    fn cochain(reference: &str, a: &Algebra, module_names: &[String]) -> Result<Cochain, CliError> {
        let (source, text, _) = Self::read(reference, None)?;
        Ok(parse::parse_cochain(&source, &text, a.basis_names(), module_names)?)
    }

    fn deformation(reference: &str) -> Result<TruncatedDeformation, CliError> {
        let (source, text, dir) = Self::read(reference, None)?;
        let spec = parse::parse_deformation_header(&source, &text)?;
        let base = Self::algebra(&spec.algebra_ref, Some(&dir))?;
        let terms = parse::parse_deformation_terms(&spec, base.basis_names())?;
        Ok(TruncatedDeformation::new(base, terms)?)
    }

    fn hom(reference: &str) -> Result<TruncatedHomDeformation, CliError> {
        let (source, text, dir) = Self::read(reference, None)?;
        let spec = parse::parse_hom_header(&source, &text)?;
        let src = Self::algebra(&spec.source_ref, Some(&dir))?;
        let tgt = Self::algebra_any(&spec.target_ref, Some(&dir))?.into_general();
        let maps = parse::parse_hom_maps(&spec, src.basis_names(), tgt.basis_names())?;
        Ok(TruncatedHomDeformation::new(src, tgt, maps)?)
    }
}

fn require_jj(a: &Algebra, reference: &str) -> Result<(), CliError> {
    let rep = a.validate_jacobi_jordan();
    if rep.holds() {
        return Ok(());
    }
    let names = a.basis_names();
    let detail = if let Some(t) = rep.jacobi_violations.first() {
        let [i, j, k] = t.indices;
        format!("Jacobi identity fails at ({}, {}, {})", names[i], names[j], names[k])
    } else {
        "x^3 = 0 fails".to_string()
    };
    Err(CliError::Validation(format!("{reference}: not a Jacobi-Jordan algebra: {detail}")))
}

/// A command's report plus its exit status.
pub struct Outcome {
    pub report: Map<String, Value>,
    pub code: i32,
}

fn ok(report: Map<String, Value>) -> Result<Outcome, CliError> {
    Ok(Outcome { report, code: 0 })
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

fn merge(into: &mut Map<String, Value>, v: Value) {
    into.extend(obj(v));
}

pub fn execute(cli: &Cli, cfg: &Config) -> Result<Outcome, CliError> {
    let basis = cli.basis;
    match &cli.command {
        Command::Validate(args) => validate(&args.algebra),
        Command::Info(args) => info(&args.algebra),
        Command::Cohomology(args) => cohomology_cmd(args, basis, cfg),
        Command::Derivations(args) => derivations_cmd(args, basis),
        Command::Antiderivations(args) => antiderivations_cmd(args, basis),
        Command::Forms(args) => forms_cmd(args, basis),
        Command::ExactSequence(args) => exact_sequence_cmd(args),
        Command::Extension(sub) => extension_cmd(sub, basis),
        Command::Deform(sub) => deform_cmd(sub, basis),
        Command::HomDeform(sub) => hom_deform_cmd(sub),
        Command::Transport(args) => transport_cmd(args),
        Command::Catalog(sub) => catalog_cmd(sub),
    }
}

fn validation_json(a: &Algebra) -> (Value, bool) {
    let rep = a.validate_jacobi_jordan();
    let names = a.basis_names();
    let v = json!({
        "dim": a.dim(),
        "commutative": rep.is_commutative,
        "jacobi_violations": rep.jacobi_violations.iter().map(|t| json!({
            "indices": t.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "residual": report::vector(&t.residual, names),
        })).collect::<Vec<_>>(),
        "cube_violations": rep.cube_violations.iter().map(|c| json!({
            "monomial": c.monomial.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "coefficient": report::vector(&c.coefficient, names),
            "witness": report::vector(&c.witness, names),
            "value": report::vector(&c.value, names),
        })).collect::<Vec<_>>(),
        "jacobi_jordan": rep.holds(),
    });
    (v, rep.holds())
}

fn validate(reference: &str) -> Result<Outcome, CliError> {
    let mut out = obj(json!({"command": "validate", "algebra": reference}));
    match Loader::algebra_any(reference, None)? {
        ParsedAlgebra::Commutative(a) => {
            let (v, holds) = validation_json(&a);
            merge(&mut out, v);
            Ok(Outcome { report: out, code: if holds { 0 } else { 1 } })
        }
        ParsedAlgebra::General(g) => {
            let witness = match Algebra::from_general(g.clone()) {
                Err(AlgebraError::NotCommutative { i, j }) => {
                    json!([g.basis_names()[i], g.basis_names()[j]])
                }
                Ok(a) => {
                    let (v, holds) = validation_json(&a);
                    merge(&mut out, v);
                    return Ok(Outcome { report: out, code: if holds { 0 } else { 1 } });
                }
                Err(e) => return Err(domain(e)),
            };
            merge(&mut out, json!({
                "dim": g.dim(),
                "commutative": false,
                "commutativity_witness": witness,
                "jacobi_jordan": false,
            }));
            Ok(Outcome { report: out, code: 1 })
        }
    }
}

fn general_flags(g: &GeneralAlgebra) -> Value {
    json!({
        "anti_associative": g.check_anti_associative().holds(),
        "jacobi_jordan_admissible": g.is_jacobi_jordan_admissible(),
    })
}

fn info(reference: &str) -> Result<Outcome, CliError> {
    let mut out = obj(json!({"command": "info", "algebra": reference}));
    let a = match Loader::algebra_any(reference, None)? {
        ParsedAlgebra::Commutative(a) => a,
        ParsedAlgebra::General(g) => {
            merge(&mut out, json!({"dim": g.dim(), "basis_names": g.basis_names(), "commutative": g.is_commutative()}));
            merge(&mut out, general_flags(&g));
            return ok(out);
        }
    };
    let names = a.basis_names();
    let ann = a.annihilator();
    merge(&mut out, json!({
        "dim": a.dim(),
        "basis_names": names,
        "commutative": true,
        "jacobi_jordan": a.validate_jacobi_jordan().holds(),
        "jordan_identity": a.check_jordan_identity(),
    }));
    merge(&mut out, general_flags(a.as_general()));
    out.insert("annihilator".into(), json!({"dim": ann.dim(), "basis": report::vector_basis(&ann, names)}));
    match a.derived_powers() {
        Ok(series) => {
            out.insert("power_dims".into(), json!(series.powers.iter().map(|p| p.dim()).collect::<Vec<_>>()));
            out.insert("nilpotency_index".into(), json!(series.nilpotency_index()));
        }
        Err(AlgebraError::NonNilpotent { .. }) => {
            out.insert("power_dims".into(), Value::Null);
            out.insert("nilpotency_index".into(), Value::Null);
        }
        Err(e) => return Err(domain(e)),
    }
    ok(out)
}

fn cohomology_cmd(args: &CohomologyArgs, basis: bool, cfg: &Config) -> Result<Outcome, CliError> {
    if args.degree > cfg.max_degree {
        return Err(domain(format!(
            "degree {} exceeds the cap {} (set JJCOH_MAX_DEGREE to raise it)",
            args.degree, cfg.max_degree
        )));
    }
    let a = Loader::algebra(&args.algebra, None)?;
    require_jj(&a, &args.algebra)?;
    let (r, module_names) = Loader::coefficients(&args.coefficients, &a)?;
    let h = cohomology(&r, args.degree, args.class)?;
    let mut out = obj(json!({
        "command": "cohomology",
        "algebra": args.algebra,
        "coefficients": args.coefficients,
        "degree": args.degree,
        "class": args.class.name(),
        "module_basis": module_names,
        "dim_cocycles": h.dim_cocycles,
        "dim_coboundaries": h.dim_coboundaries,
        "dim_full_coboundaries": h.dim_full_coboundaries,
        "dim_cohomology": h.dim_cohomology,
    }));
    if basis {
        let (p, n, m) = (args.degree, a.dim(), r.module_dim());
        out.insert("cocycle_basis".into(), report::cochain_basis(&h.cocycle_basis, p, n, m));
        out.insert("coboundary_basis".into(), report::cochain_basis(&h.coboundary_basis, p, n, m));
        out.insert("representatives".into(), report::cochain_basis(&h.representatives, p, n, m));
    }
    ok(out)
}

fn load_pair(algebra: &str, form: Option<&str>) -> Result<(Algebra, Option<BilinearForm>), CliError> {
    let a = Loader::algebra(algebra, None)?;
    require_jj(&a, algebra)?;
    let b = form.map(|f| Loader::form(f, &a)).transpose()?;
    Ok((a, b))
}

fn derivations_cmd(args: &OptionalFormArgs, basis: bool) -> Result<Outcome, CliError> {
    let (a, b) = load_pair(&args.algebra, args.form.as_deref())?;
    let n = a.dim();
    let der = derivations(&a);
    let mut out = obj(json!({"command": "derivations", "algebra": args.algebra, "form": args.form, "dim_der": der.dim()}));
    if let Some(b) = &b {
        let (s, k) = symmetric_skew_derivations(&a, b)?;
        merge(&mut out, json!({"dim_der_s": s.dim(), "dim_der_a": k.dim()}));
        if basis {
            out.insert("der_s_basis".into(), report::square_basis(&s, n));
            out.insert("der_a_basis".into(), report::square_basis(&k, n));
        }
    }
    if basis {
        out.insert("der_basis".into(), report::square_basis(&der, n));
    }
    ok(out)
}

fn antiderivations_cmd(args: &OptionalFormArgs, basis: bool) -> Result<Outcome, CliError> {
    let (a, b) = load_pair(&args.algebra, args.form.as_deref())?;
    let n = a.dim();
    let ader = antiderivations(&a);
    let inner = inner_antiderivations(&a);
    let mut out = obj(json!({
        "command": "antiderivations",
        "algebra": args.algebra,
        "form": args.form,
        "dim_ader": ader.dim(),
        "dim_iader": inner.dim(),
    }));
    if let Some(b) = &b {
        let (s, k) = symmetric_skew_antiderivations(&a, b)?;
        merge(&mut out, json!({"dim_ader_s": s.dim(), "dim_ader_a": k.dim()}));
        if basis {
            out.insert("ader_s_basis".into(), report::square_basis(&s, n));
            out.insert("ader_a_basis".into(), report::square_basis(&k, n));
        }
    }
    if basis {
        out.insert("ader_basis".into(), report::square_basis(&ader, n));
        out.insert("iader_basis".into(), report::square_basis(&inner, n));
    }
    ok(out)
}

fn forms_cmd(args: &OptionalFormArgs, basis: bool) -> Result<Outcome, CliError> {
    let a = Loader::algebra(&args.algebra, None)?;
    require_jj(&a, &args.algebra)?;
    let n = a.dim();
    let f = invariant_forms(&a);
    let bp = b_p_dimension(&a);
    let mut out = obj(json!({
        "command": "forms",
        "algebra": args.algebra,
        "form": args.form,
        "dim_f": f.dim(),
        "b_p": bp.b_p,
        "nondegenerate_witness": bp.witness.as_ref().map(|w| report::matrix(w.matrix())),
    }));
    if let Some(reference) = &args.form {
        let b = Loader::form(reference, &a)?;
        let pe = check_pseudo_euclidean(&a, &b);
        out.insert(
            "pseudo_euclidean".into(),
            json!({
                "symmetric": pe.symmetric,
                "nondegenerate": pe.nondegenerate,
                "invariance_violations": pe.invariance_violations.iter()
                    .map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "holds": pe.holds(),
            }),
        );
    }
    if basis {
        out.insert("f_basis".into(), report::square_basis(&f, n));
    }
    ok(out)
}

fn exact_sequence_cmd(args: &FormArgs) -> Result<Outcome, CliError> {
    let (a, b) = load_pair(&args.algebra, Some(&args.form))?;
    let b = b.expect("form given");
    let e = exact_sequence_report(&a, &b)?;
    let s = structure_report(&a, &b)?;
    let out = obj(json!({
        "command": "exact-sequence",
        "algebra": args.algebra,
        "form": args.form,
        "dim_der": e.dim_der,
        "dim_der_s": e.dim_der_s,
        "dim_der_a": e.dim_der_a,
        "dim_ader": s.dim_ader,
        "dim_iader": s.dim_iader,
        "dim_ader_s": s.dim_ader_s,
        "dim_f": e.dim_f,
        "b_p": s.b_p,
        "dim_ker_nu": e.dim_ker_nu,
        "dim_im_nu": e.dim_im_nu,
        "dim_ker_mu_bar": e.dim_ker_mu_bar,
        "dim_zs3": e.dim_zs3,
        "dim_hs3": e.dim_hs3,
        "dim_annihilator": s.dim_annihilator,
        "ker_nu_is_der_a": e.ker_nu_is_der_a,
        "im_nu_is_ker_mu_bar": e.im_nu_is_ker_mu_bar,
        "mu_lands_in_cocycles": e.mu_lands_in_cocycles,
        "nu_lands_in_f": e.nu_lands_in_f,
        "exact": e.exact(),
        "bound_low": s.bound_low,
        "bound_high": s.bound_high,
        "bounds_hold": s.bounds_hold(),
    }));
    ok(out)
}

fn extension_cmd(sub: &ExtensionCommand, basis: bool) -> Result<Outcome, CliError> {
    let args = match sub {
        ExtensionCommand::Build(a) | ExtensionCommand::Check(a) => a,
        ExtensionCommand::Equiv { first, .. } => first,
    };
    let a = Loader::algebra(&args.algebra, None)?;
    require_jj(&a, &args.algebra)?;
    let (r, module_names) = Loader::coefficients(&args.coefficients, &a)?;
    let c = Loader::cochain(&args.cochain, &a, &module_names)?;
    if c.degree() != 2 {
        return Err(domain(format!("{}: extension cochains have degree 2", args.cochain)));
    }
    let mut out = obj(json!({
        "command": "extension",
        "algebra": args.algebra,
        "coefficients": args.coefficients,
        "cochain": args.cochain,
    }));
    match sub {
        ExtensionCommand::Build(_) => {
            let e = semidirect_product(&r, Some(&c))?;
            out.insert("action".into(), json!("build"));
            out.insert("jacobi_jordan".into(), json!(e.validate_jacobi_jordan().holds()));
            out.insert("extension".into(), json!(parse::render_algebra(&e)));
        }
        ExtensionCommand::Check(_) => {
            let symmetric = c.is_symmetric();
            let cocycle = is_cocycle(&r, &c)?;
            let e = semidirect_product(&r, symmetric.then_some(&c))?;
            let valid = symmetric && e.validate_jacobi_jordan().holds();
            merge(&mut out, json!({
                "action": "check",
                "symmetric": symmetric,
                "cocycle": cocycle,
                "extension_jacobi_jordan": valid,
                "agree": valid == (symmetric && cocycle),
            }));
        }
        ExtensionCommand::Equiv { cochain2, .. } => {
            let c2 = Loader::cochain(cochain2, &a, &module_names)?;
            if c2.degree() != 2 {
                return Err(domain(format!("{cochain2}: extension cochains have degree 2")));
            }
            if !c.is_symmetric() || !c2.is_symmetric() {
                return Err(domain("extension cochains must be symmetric"));
            }
            let direct = extensions_equivalent(&r, &c, &c2)?;
            let by_cohomology = cohomologous(&r, &c, &c2)?;
            merge(&mut out, json!({
                "action": "equiv",
                "cochain2": cochain2,
                "cohomologous": by_cohomology,
                "equivalent": direct.is_some(),
                "agree": by_cohomology == direct.is_some(),
            }));
            if basis {
                out.insert("equivalence".into(), direct.as_ref().map(report::matrix).unwrap_or(Value::Null));
            }
        }
    }
    ok(out)
}

fn pad_order(d: TruncatedDeformation, order: Option<usize>) -> Result<TruncatedDeformation, CliError> {
    let Some(n) = order else { return Ok(d) };
    let dim = d.base().dim();
    let mut terms = d.terms().to_vec();
    terms.resize(n, Cochain::zero(2, dim, dim));
    Ok(TruncatedDeformation::new(d.base().clone(), terms)?)
}

fn residual_entries(entries: &[jjcoh_core::deformation::ResidualEntry], names: &[String]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "order": e.order,
                    "indices": e.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "residual": report::vector(&e.residual, names),
                })
            })
            .collect(),
    )
}

fn deform_cmd(sub: &DeformCommand, basis: bool) -> Result<Outcome, CliError> {
    match sub {
        DeformCommand::Verify { deformation, mode, order } => {
            let d = pad_order(Loader::deformation(deformation)?, *order)?;
            let rep = verify_deformation(&d, *mode);
            let names = d.base().basis_names();
            let mut out = obj(json!({
                "command": "deform",
                "action": "verify",
                "deformation": deformation,
                "mode": match mode { DeformationMode::Truncated => "truncated", DeformationMode::Polynomial => "polynomial" },
                "order": d.order(),
                "orders_checked": rep.orders_checked,
                "verdict": rep.verdict(),
                "residuals": residual_entries(&rep.entries, names),
            }));
            let base_ok = d.base().validate_jacobi_jordan().holds();
            let r = Representation::adjoint(d.base());
            let obstructions = rep
                .obstructions
                .iter()
                .map(|(p, c)| {
                    let cob = if base_ok { Some(is_coboundary(&r, c)?.is_some()) } else { None };
                    let mut o = obj(json!({"order": p, "coboundary": cob}));
                    if basis {
                        o.insert("cochain".into(), report::cochain(c));
                    }
                    Ok(Value::Object(o))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            out.insert("obstructions".into(), Value::Array(obstructions));
            ok(out)
        }
        DeformCommand::Class { deformation } => {
            let d = Loader::deformation(deformation)?;
            require_jj(d.base(), deformation)?;
            let c = infinitesimal_class(&d)?;
            let mut out = obj(json!({
                "command": "deform",
                "action": "class",
                "deformation": deformation,
                "is_cocycle": c.is_cocycle,
                "dim_hs2": c.representatives.len(),
                "class": c.class.as_ref().map(|v| v.iter().map(q).collect::<Vec<_>>()),
                "trivial": c.is_trivial(),
            }));
            if basis {
                out.insert("representatives".into(), Value::Array(c.representatives.iter().map(report::cochain).collect()));
            }
            ok(out)
        }
        DeformCommand::Equiv { deformation, deformation2 } => {
            let d1 = Loader::deformation(deformation)?;
            let d2 = Loader::deformation(deformation2)?;
            require_jj(d1.base(), deformation)?;
            let phi = equivalent_order1(&d1, &d2)?;
            ok(obj(json!({
                "command": "deform",
                "action": "equiv",
                "deformation": deformation,
                "deformation2": deformation2,
                "equivalent": phi.is_some(),
                "phi1": phi.as_ref().map(report::matrix),
            })))
        }
        DeformCommand::Specialize { deformation, at } => {
            let t = parse_rational(at).map_err(|_| CliError::Usage(format!("--at: malformed rational {at:?}")))?;
            let d = Loader::deformation(deformation)?;
            let a = specialize(&d, &t)?;
            ok(obj(json!({
                "command": "deform",
                "action": "specialize",
                "deformation": deformation,
                "at": q(&t),
                "jacobi_jordan": a.validate_jacobi_jordan().holds(),
                "algebra_text": parse::render_algebra(&a),
            })))
        }
    }
}

fn hom_deform_cmd(sub: &HomDeformCommand) -> Result<Outcome, CliError> {
    match sub {
        HomDeformCommand::Verify { hom } => {
            let h = Loader::hom(hom)?;
            require_jj(h.source(), hom)?;
            let rep = verify_hom_deformation(&h)?;
            ok(obj(json!({
                "command": "hom-deform",
                "action": "verify",
                "hom": hom,
                "order": h.order(),
                "orders_checked": rep.orders_checked,
                "verdict": rep.verdict(),
                "residuals": residual_entries(&rep.entries, h.target().basis_names()),
            })))
        }
        HomDeformCommand::Class { hom } => {
            let h = Loader::hom(hom)?;
            require_jj(h.source(), hom)?;
            let c = hom_infinitesimal_class(&h)?;
            ok(obj(json!({
                "command": "hom-deform",
                "action": "class",
                "hom": hom,
                "is_cocycle": c.is_cocycle,
                "dim_h1": c.dim_h1,
                "class": c.class.as_ref().map(|v| v.iter().map(q).collect::<Vec<_>>()),
                "trivial": c.is_trivial(),
            })))
        }
    }
}

fn transport_cmd(args: &TransportArgs) -> Result<Outcome, CliError> {
    let a = Loader::algebra(&args.algebra, None)?;
    let (source, text, _) = Loader::read(&args.change, None)?;
    let p = parse::parse_matrix(&source, &text)?;
    let t = a.transport(&p)?;
    ok(obj(json!({
        "command": "transport",
        "algebra": args.algebra,
        "change": args.change,
        "jacobi_jordan": t.validate_jacobi_jordan().holds(),
        "algebra_text": parse::render_algebra(&t),
    })))
}

fn catalog_cmd(sub: &CatalogCommand) -> Result<Outcome, CliError> {
    let describe = |e: &catalog::CatalogEntry| {
        let (kind, on) = match e.kind {
            CatalogKind::Algebra => ("algebra", None),
            CatalogKind::Form(on) => ("form", Some(on)),
        };
        json!({"name": e.name, "kind": kind, "on": on, "note": e.note})
    };
    match sub {
        CatalogCommand::List => ok(obj(json!({
            "command": "catalog",
            "entries": catalog::ENTRIES.iter().map(describe).collect::<Vec<_>>(),
        }))),
        CatalogCommand::Show { name } => {
            let e = catalog::entry(name).ok_or_else(|| CliError::Usage(format!("no catalog entry named {name:?}")))?;
            let mut out = obj(json!({"command": "catalog"}));
            merge(&mut out, describe(e));
            out.insert("text".into(), json!(e.source));
            ok(out)
        }
    }
}
