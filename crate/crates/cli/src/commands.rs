//! One function per subcommand. Each returns the text and the JSON object
//! for a single input file.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::{json, Map, Value};

use stgeom::acm::{
    check_parallel, classify, conformal_const, dim5_lee_identity, field_eq_report, hol_span,
    homothety, is_killing, is_normal, is_st, lee_form, lee_forms, st_connection, torsion, validate,
    PrimaryClass,
};
use stgeom::hermitian::{
    central_extension_st, cylinder, cylinder_lee, is_integrable, is_skt, kt_lee, kt_torsion,
    torus_extension_st,
};
use stgeom::rational::to_string;
use stgeom::warped::{cone_report, warped_skt_report, WarpedSktReport};
use stgeom::{AcmStructure, HermitianStructure, Poly, RFun, Rational};

use crate::failure::Failure;
use crate::render::{self, form, form_text, lifted, q, yes};
use crate::structure::{parse_form_path, Parsed, Structure, StructureFile};

#[derive(Clone, Debug)]
pub enum Op {
    Validate,
    Classify,
    Torsion,
    Connection,
    Lee,
    FieldEq,
    Holonomy,
    Cylinder,
    Cone,
    Warp(Poly),
    Homothety(Rational),
    Conformal(Rational),
    Extend(PathBuf),
    TorusExtend {
        sigma1: PathBuf,
        sigma2: PathBuf,
        s: Rational,
        t: Rational,
    },
    Report,
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Validate => "validate",
            Op::Classify => "classify",
            Op::Torsion => "torsion",
            Op::Connection => "connection",
            Op::Lee => "lee",
            Op::FieldEq => "field-eq",
            Op::Holonomy => "holonomy",
            Op::Cylinder => "cylinder",
            Op::Cone => "cone",
            Op::Warp(_) => "warp",
            Op::Homothety(_) => "homothety",
            Op::Conformal(_) => "conformal",
            Op::Extend(_) => "extend",
            Op::TorusExtend { .. } => "torus-extend",
            Op::Report => "report",
        }
    }
}

/// Text for humans and a JSON object for machines.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub text: String,
    pub json: Map<String, Value>,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.to_string(), v.into());
    }

    fn section(&mut self, title: &str, other: Output) {
        let _ = writeln!(self.text, "# {title}");
        self.text.push_str(&other.text);
        self.json.insert(title.replace(' ', "_"), Value::Object(other.json));
    }
}

pub fn run(op: &Op, parsed: &Parsed) -> Result<Output, Failure> {
    let st = &parsed.structure;
    match op {
        Op::Validate => {
            let mut out = match st {
                Structure::Acm(s) => validate_acm(s)?,
                Structure::Hermitian(h) => validate_hermitian(h),
            };
            if let Some(name) = &parsed.name {
                out.line(format!("name: {name}"));
                out.set("name", name.as_str());
            }
            if let Some(labels) = &parsed.labels {
                out.line(format!("labels: {}", labels.join(" ")));
                out.set("labels", labels.clone());
            }
            Ok(out)
        }
        Op::Classify => classify_cmd(acm(st, op)?),
        Op::Torsion => match st {
            Structure::Acm(s) => torsion_cmd(s),
            Structure::Hermitian(h) => kt_torsion_cmd(h),
        },
        Op::Connection => connection_cmd(acm(st, op)?),
        Op::Lee => match st {
            Structure::Acm(s) => lee_cmd(s),
            Structure::Hermitian(h) => kt_lee_cmd(h),
        },
        Op::FieldEq => field_eq_cmd(acm(st, op)?),
        Op::Holonomy => holonomy_cmd(acm(st, op)?),
        Op::Cylinder => cylinder_cmd(acm(st, op)?),
        Op::Cone => Ok(warped_out("cone", &cone_report(acm(st, op)?)?)),
        Op::Warp(f) => {
            let mut out = warped_out("warped", &warped_skt_report(acm(st, op)?, &RFun::poly(f.clone()))?);
            out.text.insert_str(0, &format!("f = {f}\n"));
            out.set("f", f.to_string());
            Ok(out)
        }
        Op::Homothety(a) => Ok(structure_out(&homothety(acm(st, op)?, a)?)),
        Op::Conformal(lam2) => Ok(structure_out(&conformal_const(acm(st, op)?, lam2)?)),
        Op::Extend(path) => {
            let Structure::Hermitian(h) = st else {
                return Err(Failure::precondition(
                    "extend needs a Hermitian structure file (one without xi)",
                ));
            };
            let sigma = parse_form_path(path, h.dim()).map_err(|e| e.context(&path.display().to_string()))?;
            Ok(structure_out(&central_extension_st(h, &sigma)?))
        }
        Op::TorusExtend { sigma1, sigma2, s, t } => {
            let base = acm(st, op)?;
            let n = base.dim();
            let load = |p: &PathBuf| parse_form_path(p, n).map_err(|e| e.context(&p.display().to_string()));
            let (a, b) = (load(sigma1)?, load(sigma2)?);
            Ok(structure_out(&torus_extension_st(base, &a, &b, (s, t))?))
        }
        Op::Report => match st {
            Structure::Acm(s) => report_acm(s),
            Structure::Hermitian(h) => report_hermitian(h),
        },
    }
}

fn acm<'a>(st: &'a Structure, op: &Op) -> Result<&'a AcmStructure, Failure> {
    match st {
        Structure::Acm(s) => Ok(s),
        Structure::Hermitian(_) => Err(Failure::precondition(format!(
            "{} needs an almost contact metric structure (the file has no xi)",
            op.name()
        ))),
    }
}

/// The structure as a file: TOML text, and the same document under
/// `"structure"` in JSON.
pub fn structure_out(s: &AcmStructure) -> Output {
    file_out(&StructureFile::from_acm(s, None))
}

pub fn file_out(file: &StructureFile) -> Output {
    let mut out = Output {
        text: file.to_toml(),
        ..Output::default()
    };
    out.set("structure", serde_json::to_value(file).expect("structure files serialize"));
    out
}

fn validate_acm(s: &AcmStructure) -> Result<Output, Failure> {
    let mut out = Output::default();
    out.line(format!("almost contact metric structure, dim {}", s.dim()));
    let mut checks = Map::new();
    for c in validate(s).checks {
        out.line(format!("  {:<4}{}", if c.passed() { "ok" } else { "FAIL" }, c.name));
        checks.insert(c.name.to_string(), c.passed().into());
    }
    let (normal, killing, st) = (is_normal(s)?, is_killing(s), is_st(s)?);
    out.line(format!("normal: {}", yes(normal)));
    out.line(format!("Killing: {}", yes(killing)));
    out.line(format!("ST: {}", yes(st)));
    out.set("kind", "almost contact metric");
    out.set("dim", s.dim());
    out.set("checks", checks);
    out.set("normal", normal);
    out.set("killing", killing);
    out.set("st", st);
    Ok(out)
}

fn validate_hermitian(h: &HermitianStructure) -> Output {
    let mut out = Output::default();
    let integrable = is_integrable(h);
    out.line(format!("Hermitian structure, dim {}", h.dim()));
    out.line(format!("integrable: {}", yes(integrable)));
    out.set("kind", "hermitian");
    out.set("dim", h.dim());
    out.set("integrable", integrable);
    out
}

fn classify_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let c = classify(s)?;
    let mut out = Output::default();
    out.line(format!(
        "{}; dη∧dη {} 0; {}",
        c.primary,
        if c.deta_decomposable { "=" } else { "≠" },
        if c.is_sst { "SST" } else { "not SST" }
    ));
    out.line(format!("balanced: {}", yes(c.is_balanced)));
    out.line(format!("c = η∧dη: {}", yes(c.is_quasi_sasaki)));
    let alpha = match &c.primary {
        PrimaryClass::AlphaSasaki(a) => q(a),
        _ => Value::Null,
    };
    out.set("primary", c.primary.to_string());
    out.set("alpha", alpha);
    out.set("sst", c.is_sst);
    out.set("balanced", c.is_balanced);
    out.set("deta_squared_zero", c.deta_decomposable);
    out.set("torsion_is_eta_deta", c.is_quasi_sasaki);
    Ok(out)
}

fn torsion_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let c = torsion(s)?;
    let dc = s.algebra().d(&c);
    let mut out = Output::default();
    out.line(format!("c = {c}"));
    out.line(format!("dc = {dc}"));
    out.set("c", form(&c));
    out.set("dc", form(&dc));
    Ok(out)
}

fn kt_torsion_cmd(h: &HermitianStructure) -> Result<Output, Failure> {
    let t = kt_torsion(h)?;
    let skt = is_skt(h)?;
    let mut out = Output::default();
    out.line(format!("KT torsion = {t}"));
    out.line(format!("SKT: {}", yes(skt)));
    out.set("kt_torsion", form(&t));
    out.set("skt", skt);
    Ok(out)
}

fn connection_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let conn = st_connection(s)?;
    let n = s.dim();
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = conn.nabla(i, j);
            if !v.is_zero() {
                lines.push(format!("∇_E{} E{} = {v}", i + 1, j + 1));
                entries.push(json!({
                    "along": format!("E{}", i + 1),
                    "of": format!("E{}", j + 1),
                    "value": render::vector(v),
                }));
            }
        }
    }
    let parallel = check_parallel(s, &conn).passed();
    let mut out = Output::default();
    out.line(format!("ST connection: {} nonzero entries", lines.len()));
    for l in lines {
        out.line(format!("  {l}"));
    }
    out.line(format!("g, ξ, φ parallel and torsion c: {}", yes(parallel)));
    out.set("entries", entries);
    out.set("parallel", parallel);
    Ok(out)
}

fn lee_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let theta = lee_form(s)?;
    let agree = lee_forms(s)?.iter().all(|t| *t == theta);
    let mut out = Output::default();
    out.line(format!("θ = {theta}"));
    out.line(format!("balanced: {}", yes(theta.is_zero())));
    out.line(format!("three formulas agree: {}", yes(agree)));
    out.set("lee", form(&theta));
    out.set("balanced", theta.is_zero());
    out.set("formulas_agree", agree);
    if s.dim() == 5 {
        let holds = dim5_lee_identity(s)?;
        out.line(format!("dF = θ∧F: {}", if holds { "holds" } else { "fails" }));
        out.set("dim5_identity", holds);
    }
    Ok(out)
}

fn kt_lee_cmd(h: &HermitianStructure) -> Result<Output, Failure> {
    let theta = kt_lee(h)?;
    let mut out = Output::default();
    out.line(format!("θ = {theta}"));
    out.line(format!("balanced: {}", yes(theta.is_zero())));
    out.set("lee", form(&theta));
    out.set("balanced", theta.is_zero());
    Ok(out)
}

fn field_eq_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let r = field_eq_report(s)?;
    let mut out = Output::default();
    out.line(format!("Ric = 0: {}", yes(r.ricci_flat())));
    if !r.ricci_flat() {
        for i in 0..s.dim() {
            for (j, x) in r.ricci.row(i).support() {
                out.line(format!("  Ric(E{}, E{}) = {}", i + 1, j + 1, to_string(x)));
            }
        }
    }
    out.line(format!("d*c = 0: {}", yes(r.coclosed())));
    out.line(format!("dc = 0: {}", yes(r.closed())));
    out.line(format!("R = 0: {}", yes(r.flat)));
    out.set("ricci", render::matrix(&r.ricci));
    out.set("codifferential", form(&r.codifferential));
    out.set("dc", form(&r.dc));
    out.set("flat", r.flat);
    Ok(out)
}

fn holonomy_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let h = hol_span(s)?;
    let mut out = Output::default();
    out.line(format!("holonomy algebra dimension: {}", h.basis.len()));
    out.line(format!("annihilates ξ: {}", yes(h.kills_xi)));
    out.line(format!("skew: {}", yes(h.skew)));
    out.line(format!("commutes with φ: {}", yes(h.commutes_with_phi)));
    out.line(format!("tr(φA) = 0: {}", yes(h.phi_traceless)));
    out.set("dimension", h.basis.len());
    out.set("basis", h.basis.iter().map(render::matrix).collect::<Vec<_>>());
    out.set("kills_xi", h.kills_xi);
    out.set("skew", h.skew);
    out.set("commutes_with_phi", h.commutes_with_phi);
    out.set("phi_traceless", h.phi_traceless);
    Ok(out)
}

fn cylinder_cmd(s: &AcmStructure) -> Result<Output, Failure> {
    let h = cylinder(s)?;
    let t = kt_torsion(&h)?;
    let skt = is_skt(&h)?;
    let (horizontal, ds) = cylinder_lee(s)?;
    let mut out = Output::default();
    out.line(format!("KT torsion = {}", form_text(&t, lifted("ds"))));
    out.line(format!("SKT: {}", yes(skt)));
    out.line(format!("Lee form, part along N = {horizontal}"));
    out.line(format!("Lee form, ds component = {}", to_string(&ds)));
    out.set("kt_torsion", render::form_named(&t, lifted("ds")));
    out.set("skt", skt);
    out.set("lee_horizontal", form(&horizontal));
    out.set("lee_ds", q(&ds));
    Ok(out)
}

fn warped_out(what: &str, r: &WarpedSktReport) -> Output {
    let mut out = Output::default();
    out.line(format!("{what} torsion = {}", r.torsion));
    out.line(format!("{what} torsion {}", if r.closed { "closed" } else { "not closed" }));
    if let Some(b) = &r.branch {
        out.line(format!("branch: {b}"));
    }
    out.set("torsion", render::wform(&r.torsion));
    out.set("dtorsion", render::wform(&r.dtorsion));
    out.set("closed", r.closed);
    out.set("branch", r.branch.as_ref().map_or(Value::Null, |b| b.to_string().into()));
    out
}

fn report_acm(s: &AcmStructure) -> Result<Output, Failure> {
    let mut out = Output::default();
    out.section("validation", validate_acm(s)?);
    if !is_st(s)? {
        out.line("not ST: no ST connection, remaining sections skipped");
        return Ok(out);
    }
    out.section("classification", classify_cmd(s)?);
    out.section("torsion", torsion_cmd(s)?);
    out.section("connection", connection_cmd(s)?);
    out.section("lee form", lee_cmd(s)?);
    out.section("field equations", field_eq_cmd(s)?);
    Ok(out)
}

fn report_hermitian(h: &HermitianStructure) -> Result<Output, Failure> {
    let mut out = Output::default();
    out.section("validation", validate_hermitian(h));
    if !is_integrable(h) {
        out.line("not integrable: remaining sections skipped");
        return Ok(out);
    }
    out.section("torsion", kt_torsion_cmd(h)?);
    out.section("lee form", kt_lee_cmd(h)?);
    Ok(out)
}
