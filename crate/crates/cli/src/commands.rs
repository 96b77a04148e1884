use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};
use torsionlab::bessel::{
    cone_spectrum, product_formula_residual, torsion_zeta_partial, z_q_values, zeta_at_zero, BesselSequence,
    BoundaryCondition, ConeSpectrumInput, Mode,
};
use torsionlab::geometry::{
    assemble_cone_torsions, cone_intersection_torsion, duality_check, main_theorem_identity, Middle, SectionData,
    SectionReference, TorsionQuadruple,
};
use torsionlab::linalg::Q;
use torsionlab::logexpr::LogExpr;
use torsionlab::simplicial::{standard, OrientedComplex};
use torsionlab::stratified::{intersection_homology, Flavor, Perversity, StratifiedComplex};
use torsionlab::Error;

use crate::document::ComplexDocument;
use crate::{
    BcArg, Failure, FlavorArg, HomologyArgs, ModeArg, Outcome, SpectrumArgs, TorsionArgs, VerifyArgs,
    ZetaArgs,
};

/// Symbol standing for `log τ(W, l²g)` when no value is known.
pub const SECTION_SYMBOL: &str = "log_tau_section";

/// Largest disagreement tolerated between the closed form and the chain computation.
pub const PATH_TOLERANCE: f64 = 1e-12;

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<ComplexDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    ComplexDocument::parse(&text).map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })
}

/// Attributes a library argument error to the flag that carried it.
fn flagged(flag: &'static str) -> impl Fn(Error) -> Failure {
    move |e| match e {
        Error::InvalidArgument(m) => Failure::usage(format!("{flag}: {m}")),
        other => other.into(),
    }
}

fn parse_q(flag: &str, s: &str) -> Result<Q, Failure> {
    s.trim().parse::<Q>().map_err(|e| Failure::usage(format!("{flag}: {s:?} is not a rational number ({e})")))
}

fn perversity(spec: &str, n: usize) -> Result<Perversity, Failure> {
    Ok(match spec {
        "m" => Perversity::lower_middle(n),
        "mc" => Perversity::upper_middle(n),
        "zero" => Perversity::zero(n),
        "top" => Perversity::top(n),
        list => {
            let values = list
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::usage(format!("--perversity: {list:?} is not m, mc, zero, top or a list of integers")))?;
            if values.len() + 1 != n.max(1) {
                return Err(Failure::usage(format!(
                    "--perversity: need {} values p_2..p_{n}, got {}",
                    n.saturating_sub(1),
                    values.len()
                )));
            }
            Perversity::new(values).map_err(flagged("--perversity"))?
        }
    })
}

fn middle(spec: &str) -> Result<Middle, Failure> {
    match spec {
        "m" => Ok(Middle::Lower),
        "mc" => Ok(Middle::Upper),
        other => Err(Failure::usage(format!("--perversity: expected m or mc for torsion, got {other:?}"))),
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Absolute => "absolute",
        Flavor::Relative => "relative",
    }
}

pub fn homology(a: &HomologyArgs) -> Outcome {
    let doc = load(&a.file)?;
    let s = doc.stratified()?;
    let flavor = if a.relative { Flavor::Relative } else { Flavor::Absolute };
    let n = s.dim();
    let (kind, p, ranks) = if a.intersection {
        let p = perversity(&a.perversity, n)?;
        let ranks = intersection_homology(&s, &p, flavor)?.ranks;
        ("intersection", Some(p), ranks)
    } else {
        let plain = StratifiedComplex::manifold(s.complex().clone())?;
        ("ordinary", None, intersection_homology(&plain, &Perversity::zero(n), flavor)?.ranks)
    };
    Ok(pretty(&json!({
        "homology": kind,
        "flavor": flavor_name(flavor),
        "perversity": p.map(|p| p.values().to_vec()),
        "dimension": n,
        "ranks": ranks,
    })))
}

fn pick(t: &TorsionQuadruple, which: Middle) -> (&LogExpr, &LogExpr) {
    match which {
        Middle::Lower => (&t.absolute_m, &t.relative_m),
        Middle::Upper => (&t.absolute_mc, &t.relative_mc),
    }
}

fn flavors(a: &TorsionArgs) -> Vec<Flavor> {
    match a.flavor {
        None => vec![Flavor::Absolute, Flavor::Relative],
        Some(FlavorArg::Abs) => vec![Flavor::Absolute],
        Some(FlavorArg::Rel) => vec![Flavor::Relative],
    }
}

fn torsion_block(section: &LogExpr, abs: &LogExpr, rel: &LogExpr, flavors: &[Flavor]) -> Value {
    let mut block = Map::new();
    block.insert("section_log_torsion".into(), json!(section.report(None)));
    for &f in flavors {
        let e = if f == Flavor::Absolute { abs } else { rel };
        block.insert(flavor_name(f).into(), json!(e.report(None)));
    }
    Value::Object(block)
}

fn section_ranks(w: &OrientedComplex, m: usize) -> Vec<usize> {
    let mut r = w.homology_ranks();
    r.resize(m + 1, 0);
    r
}

pub fn torsion(a: &TorsionArgs) -> Outcome {
    let doc = load(&a.file)?;
    doc.stratified()?;
    let Some((_, w)) = doc.cone_section()? else {
        return Err(Error::Unsupported(
            "torsion needs a cone: one singular vertex lying in every maximal simplex, with a closed link".into(),
        )
        .into());
    };
    let l = match &a.scale {
        Some(s) => parse_q("--scale", s)?,
        None => doc.scale()?.unwrap_or_else(|| Q::from_integer(1.into())),
    };
    let m = w.top_dim();
    let computed = section_ranks(&w, m);
    let r = doc.betti.clone().unwrap_or_else(|| computed.clone());
    if r.len() != m + 1 {
        return Err(Failure::usage(format!("betti: need {} entries for a section of dimension {m}, got {}", m + 1, r.len())));
    }
    let d = SectionData::new(r.clone(), l.clone()).map_err(flagged("--scale"))?;
    let which = middle(&a.perversity)?;
    let flavors = flavors(a);

    let chain = if a.chain_level {
        if r != computed {
            return Err(Failure::invariant(format!("betti override {r:?} differs from the section homology {computed:?}")));
        }
        let (tau_w, ct) = cone_intersection_torsion(&w, which, SectionReference::circle)?;
        Some((tau_w.substitute_l(&l)?, ct.absolute.substitute_l(&l)?, ct.relative.substitute_l(&l)?))
    } else {
        None
    };
    let tau_w = match (&a.section_log_torsion, &chain) {
        (Some(s), _) => LogExpr::rational(parse_q("--section-log-torsion", s)?),
        (None, Some((t, _, _))) => t.clone(),
        (None, None) => LogExpr::symbol(SECTION_SYMBOL),
    };
    let raw = assemble_cone_torsions(&d, &tau_w);
    let quad = TorsionQuadruple {
        absolute_m: d.instantiate(&raw.absolute_m)?,
        absolute_mc: d.instantiate(&raw.absolute_mc)?,
        relative_m: d.instantiate(&raw.relative_m)?,
        relative_mc: d.instantiate(&raw.relative_mc)?,
    };

    let mut out = Map::new();
    out.insert("m".into(), json!(m));
    out.insert("scale".into(), json!(l.to_string()));
    out.insert("betti".into(), json!(r));
    out.insert("perversity".into(), json!(which.name()));
    let (abs, rel) = pick(&quad, which);
    if a.closed_form || !a.chain_level {
        out.insert("closed_form".into(), torsion_block(&tau_w, abs, rel, &flavors));
    }
    if let Some((t, ca, cr)) = &chain {
        out.insert("chain_level".into(), torsion_block(t, ca, cr, &flavors));
        if a.closed_form {
            let mut worst = 0.0f64;
            let mut exact = true;
            for &f in &flavors {
                let (x, y) = if f == Flavor::Absolute { (abs, ca) } else { (rel, cr) };
                let diff = x.clone() - y.clone();
                exact &= diff.is_zero();
                worst = worst.max(diff.value()?.abs());
            }
            out.insert("residual".into(), json!(worst));
            out.insert("residual_exact_zero".into(), json!(exact));
            if !(worst < PATH_TOLERANCE) {
                return Err(Failure::invariant(format!(
                    "closed form and chain-level torsion differ by {worst:e} (tolerance {PATH_TOLERANCE:e})"
                )));
            }
        }
    }
    if a.duality {
        let report = duality_check(&d, &quad);
        if !report.holds {
            return Err(Failure::invariant(format!(
                "duality abs^m = (-1)^m rel^mc fails: residuals {} and {}",
                report.swapped_residual, report.averaged_residual
            )));
        }
        out.insert("duality".into(), json!(report));
    }
    Ok(pretty(&out))
}

fn mode(a: &ZetaArgs) -> Result<Mode, Failure> {
    if let Some(c) = a.c {
        if !c.is_finite() {
            return Err(Failure::usage(format!("--c: {c} is not finite")));
        }
    }
    match (a.mode, a.c) {
        (ModeArg::Plain, None) => Ok(Mode::Plain),
        (ModeArg::Plain | ModeArg::Hatted, Some(c)) => Ok(Mode::Hatted(c)),
        (ModeArg::Derivative, None) => Ok(Mode::Derivative),
        (ModeArg::Derivative, Some(_)) => Err(Failure::usage("--c: not used with --mode derivative")),
        (ModeArg::Hatted, None) => Err(Failure::usage("--mode hatted needs --c")),
    }
}

pub fn zeta(a: &ZetaArgs) -> Outcome {
    let mut csv = String::new();
    let mut report = Map::new();
    if a.zq {
        let p = a.p.ok_or_else(|| Failure::usage("--zq needs --p"))?;
        if p == 0 {
            return Err(Failure::usage("--p: must be at least 1"));
        }
        let qs: Vec<usize> = match a.q {
            Some(q) => vec![q],
            None => (0..p).collect(),
        };
        let rows = qs
            .into_iter()
            .map(|q| z_q_values(p, q).map_err(flagged("--q")).map(|z| json!(z)))
            .collect::<Result<Vec<_>, _>>()?;
        report.insert("zq".into(), Value::Array(rows));
    }
    if a.k_max.is_some() || a.values || a.product_check {
        let nu = a.nu.ok_or_else(|| Failure::usage("--nu is required"))?;
        if !nu.is_finite() || nu < 0.0 {
            return Err(Failure::usage(format!("--nu: need a finite order >= 0, got {nu}")));
        }
        let mode = mode(a)?;
        let seq = BesselSequence::new(nu, mode).map_err(flagged("--nu"))?;
        if let Some(k) = a.k_max {
            csv.push_str(&seq.to_csv(k).map_err(flagged("--k-max"))?);
        }
        if a.values {
            report.insert("zeta".into(), json!(zeta_at_zero(&seq)?));
        }
        if a.product_check {
            let z = a.z.ok_or_else(|| Failure::usage("--product-check needs --z"))?;
            let c = seq.hatted_parameter();
            let check = product_formula_residual(nu, c, z, a.zeros).map_err(flagged("--z"))?;
            report.insert("product_check".into(), json!(check));
        }
    } else if a.nu.is_some() && !a.zq {
        return Err(Failure::usage("nothing to compute: add --k-max, --values or --product-check"));
    }
    if csv.is_empty() && report.is_empty() {
        return Err(Failure::usage("nothing to compute: pass --k-max, --values, --zq or --product-check"));
    }
    if !report.is_empty() {
        csv.push_str(&pretty(&report));
    }
    Ok(csv)
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn spectrum(a: &SpectrumArgs) -> Outcome {
    if let Some(l) = a.scale {
        if !(l.is_finite() && l > 0.0) {
            return Err(Failure::usage(format!("--scale: need a positive number, got {l}")));
        }
    }
    let input = match (&a.file, a.circle) {
        (Some(_), true) => return Err(Failure::usage("give either a section file or --circle")),
        (None, false) => return Err(Failure::usage("missing section: give a file or --circle")),
        (None, true) => ConeSpectrumInput::circle(a.scale.unwrap_or(1.0), a.n_max),
        (Some(path), false) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let mut input: ConeSpectrumInput =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            if let Some(l) = a.scale {
                input.l = l;
            }
            input
        }
    };
    input.validate()?;
    if let Some(s) = a.torsion_zeta {
        let t = torsion_zeta_partial(&input, Complex64::new(s, 0.0), a.n_max, a.k_max).map_err(flagged("--torsion-zeta"))?;
        return Ok(pretty(&json!({
            "m": input.m,
            "l": input.l,
            "s": complex_pair(t.s),
            "n_max": a.n_max,
            "k_max": a.k_max,
            "scale": complex_pair(t.scale),
            "t_blocks": t.t_blocks.iter().copied().map(complex_pair).collect::<Vec<_>>(),
            "z_blocks": t.z_blocks.iter().copied().map(complex_pair).collect::<Vec<_>>(),
            "reduced": complex_pair(t.reduced),
            "value": complex_pair(t.value),
        })));
    }
    let bc = match a.bc {
        BcArg::Abs => BoundaryCondition::Absolute,
        BcArg::Rel => BoundaryCondition::Relative,
    };
    let entries = cone_spectrum(&input, bc, a.degree, a.n_max, a.k_max).map_err(flagged("--degree"))?;
    Ok(pretty(&json!({
        "m": input.m,
        "l": input.l,
        "bc": bc,
        "degree": a.degree,
        "eigenvalues": entries,
    })))
}

fn describe(doc: &ComplexDocument, text: &str) -> Result<Value, Failure> {
    let s = doc.stratified()?;
    let c = s.complex();
    Ok(json!({
        "valid": true,
        "canonical": doc.to_json() == text,
        "dimension": s.dim(),
        "kind": s.kind(),
        "f_vector": c.f_vector(),
        "homology": c.homology_ranks(),
        "has_boundary": s.has_boundary(),
        "cone": doc.cone_section()?.is_some(),
    }))
}

fn builtin_checks() -> Vec<(&'static str, Result<bool, Error>)> {
    let l2 = Q::from_integer(2.into());
    vec![
        (
            "intersection homology of the cone over T2 is (1,2,0,0)",
            StratifiedComplex::cone_over(&standard::torus())
                .and_then(|s| intersection_homology(&s, &Perversity::lower_middle(3), Flavor::Absolute))
                .map(|h| h.ranks == [1, 2, 0, 0]),
        ),
        (
            "zeros of J_1/2 are kπ",
            BesselSequence::plain(0.5).and_then(|s| s.values(20)).map(|z| {
                z.iter().enumerate().all(|(i, x)| (x - (i + 1) as f64 * std::f64::consts::PI).abs() < 1e-12)
            }),
        ),
        ("z_1 values for p = 3", z_q_values(3, 1).map(|_| true)),
        (
            "cone over S1: closed form matches chains at l = 2",
            (|| {
                let w = standard::polygon(12);
                let (tau, ct) = cone_intersection_torsion(&w, Middle::Lower, SectionReference::circle)?;
                let d = SectionData::new(vec![1, 1], l2.clone())?;
                let tau = tau.substitute_l(&l2)?;
                let q = assemble_cone_torsions(&d, &tau);
                let abs = d.instantiate(&q.absolute_m)? - ct.absolute.substitute_l(&l2)?;
                let rel = d.instantiate(&q.relative_m)? - ct.relative.substitute_l(&l2)?;
                Ok(abs.is_zero() && rel.is_zero())
            })(),
        ),
        (
            "duality sign for m = 1 and m = 2",
            (|| {
                let mut ok = true;
                for r in [vec![1, 1], vec![1, 2, 1]] {
                    let d = SectionData::new(r, l2.clone())?;
                    let q = assemble_cone_torsions(&d, &LogExpr::symbol(SECTION_SYMBOL));
                    ok &= duality_check(&d, &q).holds;
                }
                Ok(ok)
            })(),
        ),
        (
            "bookkeeping identity for r = (1,3,3,1), l = 7/2",
            SectionData::new(vec![1, 3, 3, 1], "7/2".parse().expect("literal"))
                .and_then(|d| main_theorem_identity(&d, &LogExpr::symbol(SECTION_SYMBOL)))
                .map(|e| e.is_zero()),
        ),
    ]
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let doc = load(path)?;
        return Ok(pretty(&describe(&doc, &text)?));
    }
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for (name, result) in builtin_checks() {
        let (pass, detail) = match result {
            Ok(p) => (p, None),
            Err(e) => (false, Some(e.to_string())),
        };
        if !pass {
            failed.push(name);
        }
        rows.push(json!({ "check": name, "pass": pass, "detail": detail }));
    }
    if !failed.is_empty() {
        return Err(Failure::invariant(failed.join("; ")));
    }
    Ok(pretty(&rows))
}

pub const EXAMPLES: [&str; 9] = [
    "cone-over-S1",
    "cone-over-S2",
    "cone-over-T2",
    "suspension-S1",
    "suspension-S2",
    "suspension-T2",
    "disc",
    "sphere2",
    "torus",
];

pub fn example_document(name: &str) -> Option<ComplexDocument> {
    Some(match name {
        "cone-over-S1" => ComplexDocument::cone(&standard::polygon(12), "c"),
        "cone-over-S2" => ComplexDocument::cone(&standard::sphere(2), "c"),
        "cone-over-T2" => ComplexDocument::cone(&standard::torus(), "c"),
        "suspension-S1" => ComplexDocument::suspension(&standard::polygon(4)),
        "suspension-S2" => ComplexDocument::suspension(&standard::sphere(2)),
        "suspension-T2" => ComplexDocument::suspension(&standard::torus()),
        "disc" => {
            let mut doc = ComplexDocument::from_complex(&standard::disc());
            let c = standard::disc();
            let b = torsionlab::simplicial::boundary_subcomplex(&c).ok()?;
            doc.boundary = Some(b.maximal_simplices().iter().map(|s| s.iter().map(|&v| b.labels()[v].clone()).collect()).collect());
            doc
        }
        "sphere2" => ComplexDocument::from_complex(&standard::sphere(2)),
        "torus" => ComplexDocument::from_complex(&standard::torus()),
        _ => return None,
    })
}

pub fn example(name: &str) -> Outcome {
    example_document(name)
        .map(|d| d.to_json())
        .ok_or_else(|| Failure::usage(format!("unknown example {name:?}; known: {}", EXAMPLES.join(", "))))
}
