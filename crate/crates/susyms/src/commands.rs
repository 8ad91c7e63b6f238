//! Command implementations. Each returns a [`Report`]; usage problems are
//! returned as errors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use susyms_core::atom::Atom;
use susyms_core::calculus::derivative_wrt_atom;
use susyms_core::classical::{
    classical_classify, classical_generators, classical_table, e4_abel_residual_max, e4_solution_fd_max, e4me3_findings,
    euler_lagrange_check, prolong2_symmetry_check, published_classical_table, reduce_classical, ClassicalVectorField,
    CLASSICAL_NAMES,
};
use susyms_core::classification::{
    classify_stage, published_g, published_l, reflect_and_dedupe, render_element, support_of, Label, RepresentativeClass,
    Stage, NON_STANDARD,
};
use susyms_core::elliptic::{elliptic_integral, EllipticKind};
use susyms_core::numeric::{eval, Env};
use susyms_core::reduction::{reduce_bodiless, residual_at, residual_components, verify_symbolic, GridSpec};
use susyms_core::simplify::{clear_denominators, constraint_locus, ConstraintVerdict};
use susyms_core::superalgebra::{
    adjoint_action, render_combination, susy_table, verify_decomposition, Algebra, Element, Generator, StructureTable,
    PUBLISHED_TABLE,
};
use susyms_core::superfield::{check_operator_identities, component_residual_literal, extension_discrepancy, operator_residual, Convention, DerivativeSide};
use susyms_core::{Exponent, GradedExpr};

use crate::error::{Error, Result};
use crate::parse::{parse_ode, parse_source, Source};
use crate::report::{fmt17, latex_table, markdown_table, num, text_table, Report};

/// Printed reduced equations of the bodiless ansatz.
pub const PRINTED_L74_ODE: &str = "(w^2 + xi^2 + 1)*w'' = 0";
pub const PRINTED_G136_ODE: &str = "(2*xi*w*w' + 6*w^2 + xi^2 + 4)*w'' = 0";

/// Expected number of classes per stage.
pub const STAGE_COUNTS: [(Stage, usize); 5] =
    [(Stage::S1, 7), (Stage::S2, 7), (Stage::S, 63), (Stage::TildeS, 127), (Stage::Full, 255)];
pub const DEDUPED_COUNT: usize = 143;

fn cells(t: &StructureTable) -> Vec<Vec<String>> {
    (0..t.size()).map(|i| (0..t.size()).map(|j| t.cell_string(i, j)).collect()).collect()
}

fn cells_json(c: &[Vec<String>]) -> Value {
    Value::Array(c.iter().map(|r| Value::Array(r.iter().map(|s| Value::String(s.clone())).collect())).collect())
}

/// Table 1 cells as computed.
pub fn susy_cells() -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let t = susy_table()?;
    Ok((t.names.clone(), cells(&t)))
}

/// Classical commutator cells as computed.
pub fn classical_cells() -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let t = classical_table()?;
    Ok((t.names.clone(), cells(&t)))
}

fn published_classical_cells() -> Vec<Vec<String>> {
    let names: Vec<String> = CLASSICAL_NAMES.iter().map(|s| s.to_string()).collect();
    let table = published_classical_table();
    table
        .iter()
        .map(|row| row.iter().map(|c| render_combination(&c.iter().map(|q| GradedExpr::constant(q.clone())).collect::<Vec<_>>(), &names)).collect())
        .collect()
}

fn mismatches(a: &[Vec<String>], b: &[Vec<String>], names: &[String]) -> Vec<Value> {
    let mut out = Vec::new();
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (ca, cb)) in ra.iter().zip(rb).enumerate() {
            if ca != cb {
                out.push(json!({"row": names[i], "column": names[j], "computed": ca, "published": cb}));
            }
        }
    }
    out
}

/// Number of basis triples violating the graded Jacobi identity.
pub fn jacobi_violations(alg: &Algebra) -> usize {
    let n = alg.dim();
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if alg.jacobi(i, j, k).iter().any(|c| !c.is_zero()) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

pub fn tables() -> Result<Report> {
    let mut r = Report::new("tables");
    let (names, computed) = susy_cells()?;
    let published: Vec<Vec<String>> = PUBLISHED_TABLE.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect();
    let mm = mismatches(&computed, &published, &names);
    r.line("Supercommutation table [X, Y] (row X, column Y):");
    r.line(text_table(&names, &computed).trim_end());
    r.check(&format!("table matches the published table ({} mismatching cells)", mm.len()), mm.is_empty());
    let alg = Algebra::susy()?;
    let jac = jacobi_violations(&alg);
    r.check(&format!("graded Jacobi identity on all {} basis triples ({jac} violations)", alg.dim().pow(3)), jac == 0);
    let dec = verify_decomposition(&alg);
    for d in &dec {
        r.check(&d.description, d.passed);
    }
    r.set(
        "susy",
        json!({
            "names": names,
            "cells": cells_json(&computed),
            "matches_published": mm.is_empty(),
            "mismatches": mm,
            "jacobi_violations": jac,
            "decomposition": dec.iter().map(|d| json!({"check": d.description, "passed": d.passed})).collect::<Vec<_>>(),
        }),
    );

    let (cnames, ccomputed) = classical_cells()?;
    let cpub = published_classical_cells();
    let cmm = mismatches(&ccomputed, &cpub, &cnames);
    r.line("Classical commutator table [X, Y]:");
    r.line(text_table(&cnames, &ccomputed).trim_end());
    r.check(&format!("classical table matches the published relations ({} mismatching cells)", cmm.len()), cmm.is_empty());
    r.set("classical", json!({"names": cnames, "cells": cells_json(&ccomputed), "matches_published": cmm.is_empty(), "mismatches": cmm}));

    r.latex = Some(format!(
        "{}\n{}",
        latex_table("Supercommutation table of the symmetry generators", &names, &computed),
        latex_table("Commutation relations of the classical symmetry generators", &cnames, &ccomputed)
    ));
    r.markdown = Some(format!(
        "## Supercommutation table\n\n{}\n## Classical commutation table\n\n{}",
        markdown_table(&names, &computed),
        markdown_table(&cnames, &ccomputed)
    ));
    Ok(r)
}

pub fn verify_identities() -> Result<Report> {
    let mut r = Report::new("verify-identities");
    let checks = check_operator_identities()?;
    let mut out = Vec::new();
    for c in &checks {
        r.check(c.name, c.passed);
        out.push(json!({"relation": c.name, "passed": c.passed, "residual": c.residual.to_string()}));
    }
    r.set("relations", out);
    Ok(r)
}

fn convention_name(c: Convention) -> String {
    format!("{:?}/{:?}", c.side, c.order).to_lowercase()
}

pub fn verify_extension() -> Result<Report> {
    let mut r = Report::new("verify-extension");
    let mut convs = Vec::new();
    for c in Convention::all() {
        let d = extension_discrepancy(c)?;
        let name = convention_name(c);
        if c == Convention::STANDARD {
            r.check(&format!("operator form minus component form vanishes ({name})"), d.is_zero());
        } else {
            r.line(format!("[INFO] {name}: discrepancy has {} terms", d.len()));
        }
        convs.push(json!({"convention": name, "standard": c == Convention::STANDARD, "terms": d.len(), "zero": d.is_zero()}));
    }
    let op = operator_residual(&susyms_core::superfield::phi(), DerivativeSide::Left)?;
    let op = susyms_core::superfield::expand_superfield(&op)?;
    let lit = susyms_core::superfield::expand_superfield(&component_residual_literal(Convention::STANDARD)?)?;
    let lit_terms = op.gsub(&lit).len();
    r.line(format!("[INFO] literal transcription of the component form: discrepancy has {lit_terms} terms"));
    r.set("conventions", convs);
    r.set("literal_reading_terms", lit_terms);
    Ok(r)
}

fn class_json(c: &RepresentativeClass) -> Value {
    json!({
        "label": c.label.to_string(),
        "element": render_element(&c.element),
        "support": c.support.iter().map(|g| g.name()).collect::<Vec<_>>(),
        "standard_invariants": c.standard_invariants,
    })
}

/// Labels whose support consists of odd generators only.
pub fn pure_odd_labels(classes: &[RepresentativeClass]) -> Vec<u16> {
    classes
        .iter()
        .filter(|c| c.support.iter().all(|g| g.parity().is_odd()))
        .map(|c| match c.label {
            Label::G(n) | Label::L(n) => n,
        })
        .collect()
}

/// The adjoint action of `Y = r P1 + eta P3 + lambda Q1` on
/// `X = alpha P1 + mu P3 + nu Q1`, with the expected image.
pub fn bch_example(alg: &Algebra) -> Result<(Element, Element)> {
    use Generator::*;
    let (c, o) = (GradedExpr::konst, GradedExpr::odd_const);
    let mut x = Element::zero();
    x.set(P1.index(), c("alpha"));
    x.set(P3.index(), o("mu"));
    x.set(Q1.index(), o("nu"));
    let mut y = Element::zero();
    y.set(P1.index(), c("r"));
    y.set(P3.index(), o("eta"));
    y.set(Q1.index(), o("lambda"));
    let got = adjoint_action(alg, &y, &x)?;
    let shift = o("eta").gmul(&o("nu")).gadd(&o("lambda").gmul(&o("mu"))).gadd(&o("lambda").gmul(&o("nu")).scale_int(2));
    let mut want = x.clone();
    want.set(P1.index(), c("alpha").gadd(&shift));
    Ok((got, want))
}

pub fn classify(stage: Stage, dedupe: bool) -> Result<Report> {
    if dedupe && stage != Stage::Full {
        return Err(Error::Usage("--dedupe-reflection applies to --stage full".into()));
    }
    let mut r = Report::new("classify");
    let alg = Algebra::susy()?;
    let (got, want) = bch_example(&alg)?;
    r.check(
        &format!("adjoint action on alpha P1 + mu P3 + nu Q1 gives {}", got.render(&alg)),
        got.sub(&want).is_zero(),
    );
    r.set("adjoint_example", json!({"computed": got.render(&alg), "expected": want.render(&alg), "matches": got.sub(&want).is_zero()}));
    let classes = classify_stage(&alg, stage)?;
    let expected = STAGE_COUNTS.iter().find(|(s, _)| *s == stage).map(|(_, n)| *n);
    r.set("stage", stage.name());
    if let Some(n) = expected {
        r.check(&format!("stage {} yields {} classes (expected {n})", stage.name(), classes.len()), classes.len() == n);
    }
    let list = if dedupe {
        let d = reflect_and_dedupe(&alg, &classes)?;
        r.check(&format!("reflection deduplication yields {} classes (expected {DEDUPED_COUNT})", d.classes.len()), d.classes.len() == DEDUPED_COUNT);
        let published = published_l()?;
        let mm = list_mismatches(&d.classes, &published);
        r.check(&format!("L list matches the published labels ({} mismatches)", mm.len()), mm.is_empty());
        let odd = pure_odd_labels(&d.classes);
        r.check(&format!("non-standard classes {:?} are exactly the pure-odd supports", NON_STANDARD), odd == NON_STANDARD);
        r.set("pairing", d.pairing.iter().map(|(g, h)| json!([format!("G{g}"), format!("G{h}")])).collect::<Vec<_>>());
        r.set("survivors", d.survivors.iter().map(|(l, g)| json!([format!("L{l}"), format!("G{g}")])).collect::<Vec<_>>());
        r.set("non_standard", NON_STANDARD.iter().map(|n| format!("L{n}")).collect::<Vec<_>>());
        r.set("mismatches", mm);
        d.classes
    } else {
        if stage == Stage::Full {
            let mm = list_mismatches(&classes, &published_g()?);
            r.check(&format!("G list matches the published list ({} mismatches)", mm.len()), mm.is_empty());
            r.set("mismatches", mm);
        }
        classes
    };
    r.set("count", list.len());
    r.set("classes", list.iter().map(class_json).collect::<Vec<_>>());
    let mut md = String::from("| label | representative |\n|---|---|\n");
    for c in &list {
        r.line(format!("{} = {{{}}}", c.label, render_element(&c.element)));
        md.push_str(&format!("| {} | {} |\n", c.label, render_element(&c.element)));
    }
    r.markdown = Some(md);
    let mut tex = String::from("\\begin{longtable}{ll}\n");
    for c in &list {
        let (k, n) = match c.label {
            Label::G(n) => ("G", n),
            Label::L(n) => ("L", n),
        };
        tex.push_str(&format!("${{\\mathcal {k}}}_{{{n}}}$ & $\\{{{}\\}}$ \\\\\n", render_element(&c.element)));
    }
    tex.push_str("\\end{longtable}\n");
    r.latex = Some(tex);
    Ok(r)
}

fn list_mismatches(classes: &[RepresentativeClass], published: &[(u16, Element)]) -> Vec<Value> {
    let mut out = Vec::new();
    if classes.len() != published.len() {
        out.push(json!({"count": classes.len(), "published_count": published.len()}));
    }
    for (c, (n, e)) in classes.iter().zip(published) {
        let label_ok = matches!(c.label, Label::G(k) | Label::L(k) if k == *n);
        if !label_ok || support_of(&c.element) != support_of(e) || render_element(&c.element) != render_element(e) {
            out.push(json!({"label": c.label.to_string(), "computed": render_element(&c.element), "published": render_element(e)}));
        }
    }
    out
}

/// Whether `a = c b` for some nonzero rational `c`.
pub fn equal_up_to_scalar(a: &GradedExpr, b: &GradedExpr) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (ma, ca) = a.terms().next().unwrap();
    let cb = b.terms().find(|(m, _)| *m == ma).map(|(_, c)| c.clone());
    match cb {
        Some(cb) => a.scale(&cb).gsub(&b.scale(ca)).is_zero(),
        None => false,
    }
}

/// Normalized comparison of a derived equation with a printed one.
pub fn ode_matches(derived: &GradedExpr, printed: &str) -> Result<bool> {
    Ok(equal_up_to_scalar(derived, &parse_ode(printed)?))
}

pub fn reduce(subalgebra: &str, ansatz: &str, m: Option<&str>) -> Result<Report> {
    let mut r = Report::new("reduce");
    r.set("subalgebra", subalgebra);
    match subalgebra {
        "L74" | "G136" | "L72" => {
            if ansatz != "bodiless" {
                return Err(Error::Usage(format!("unsupported ansatz `{ansatz}`; only `bodiless` is available")));
            }
            let label = Label::parse(subalgebra).unwrap();
            let ode = reduce_bodiless(label)?;
            r.set("ansatz", ansatz);
            r.set("ode", ode.to_string());
            r.set("lhs", ode.lhs.to_string());
            r.set("factor", ode.factor.as_ref().map(|f| f.to_string()));
            r.line(format!("{subalgebra}: {ode}"));
            let printed = match subalgebra {
                "L74" => Some(PRINTED_L74_ODE),
                "G136" => Some(PRINTED_G136_ODE),
                _ => None,
            };
            match printed {
                Some(p) => {
                    let ok = ode_matches(&ode.lhs, p)?;
                    r.set("printed", p);
                    r.set("matches_printed", ok);
                    r.check(&format!("derived equation equals the printed one {p}"), ok);
                }
                None => {
                    r.set("printed", Value::Null);
                    r.line("[INFO] no printed equation to compare with");
                }
            }
        }
        "e4" | "e4+me3" => {
            let red = if subalgebra == "e4" {
                reduce_classical(None)?
            } else {
                let mv = match m {
                    Some(s) => crate::parse::parse_expression(s)?,
                    None => GradedExpr::konst("m"),
                };
                reduce_classical(Some(&mv))?
            };
            r.set("label", red.label.clone());
            r.set("rhs", red.rhs.to_string());
            r.set("matches_printed", red.matches);
            r.line(format!("{}: v' = {}", red.label, red.rhs));
            r.check("reduced equation equals the printed Abel equation", red.matches);
        }
        other => return Err(Error::Usage(format!("unknown subalgebra `{other}`"))),
    }
    Ok(r)
}

fn verdict_json(v: &ConstraintVerdict) -> Value {
    match v {
        ConstraintVerdict::IdenticallyZero => json!({"kind": "identically-zero"}),
        ConstraintVerdict::ZeroOn(eqs) => {
            json!({"kind": "zero-on-constraints", "constraints": eqs.iter().map(|e| format!("{e} = 0")).collect::<Vec<_>>()})
        }
        ConstraintVerdict::NonZero => json!({"kind": "nonzero"}),
    }
}

fn verdict_text(v: &ConstraintVerdict) -> String {
    match v {
        ConstraintVerdict::IdenticallyZero => "identically zero".into(),
        ConstraintVerdict::ZeroOn(eqs) => {
            format!("zero exactly on {}", eqs.iter().map(|e| format!("{e} = 0")).collect::<Vec<_>>().join(", "))
        }
        ConstraintVerdict::NonZero => "nonzero".into(),
    }
}

/// Substitute `w(xi)` into an equation in `xi`, `w`, `w'`, `w''`, ....
pub fn ode_residual(ode: &GradedExpr, w: &GradedExpr) -> Result<GradedExpr> {
    let xi = Atom::var("xi");
    let mut map = BTreeMap::new();
    let mut d = w.clone();
    let mut name = String::from("w");
    for _ in 0..4 {
        map.insert(Atom::var(&name), d.clone());
        d = derivative_wrt_atom(&d, &xi)?;
        name.push('\'');
    }
    Ok(ode.gsubstitute(&map)?)
}

/// Options of `verify-solution`.
#[derive(Clone, Debug, Default)]
pub struct SolutionOptions {
    pub numeric: bool,
    pub grid: Option<GridSpec>,
    pub complex: bool,
    pub tolerance: f64,
    pub ode: Option<String>,
    pub accept_constraints: bool,
}

/// Parse `x0:x1:nx,y0:y1:ny`.
pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let bad = || Error::Usage(format!("grid `{s}` is not of the form x0:x1:nx,y0:y1:ny"));
    let axes: Vec<&str> = s.split(',').collect();
    if axes.len() != 2 {
        return Err(bad());
    }
    let axis = |a: &str| -> Result<((f64, f64), usize)> {
        let p: Vec<&str> = a.split(':').collect();
        if p.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = p[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = p[1].trim().parse().map_err(|_| bad())?;
        let n: usize = p[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() {
            return Err(bad());
        }
        Ok(((lo, hi), n))
    };
    let (x, nx) = axis(axes[0])?;
    let (y, ny) = axis(axes[1])?;
    Ok(GridSpec { x, y, nx, ny })
}

/// Numeric residual of a solution on a grid, evaluated in parallel.
pub fn numeric_residual(phi: &GradedExpr, grid: &GridSpec, samples: &BTreeMap<Atom, Complex64>, real: bool) -> Result<(f64, (f64, f64))> {
    let comps = residual_components(phi)?;
    let points = grid.points();
    let values: Vec<susyms_core::Result<f64>> = points.par_iter().map(|p| residual_at(&comps, *p, samples, real)).collect();
    let mut worst = (0.0f64, points.first().copied().unwrap_or((0.0, 0.0)));
    for (p, v) in points.iter().zip(values) {
        let v = v?;
        if v > worst.0 || v.is_nan() {
            worst = (v, *p);
            if v.is_nan() {
                break;
            }
        }
    }
    Ok(worst)
}

pub fn verify_solution(path: &str, opts: &SolutionOptions) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_string(), source })?;
    let src = parse_source(&text)?;
    verify_source(path, &src, opts)
}

pub fn verify_source(name: &str, src: &Source, opts: &SolutionOptions) -> Result<Report> {
    let mut r = Report::new("verify-solution");
    r.set("file", name);
    r.set("expression", src.expr.to_string());
    if let Some(ode) = &opts.ode {
        let eq = parse_ode(ode)?;
        let res = clear_denominators(&ode_residual(&eq, &src.expr)?)?;
        let v = constraint_locus(&res)?;
        r.set("ode", ode.as_str());
        r.set("residual", res.to_string());
        r.set("verdict", verdict_json(&v));
        r.line(format!("ODE residual: {}", verdict_text(&v)));
        let ok = match &v {
            ConstraintVerdict::IdenticallyZero => true,
            ConstraintVerdict::ZeroOn(_) => opts.accept_constraints,
            ConstraintVerdict::NonZero => false,
        };
        r.check(&format!("w(xi) satisfies {ode}"), ok);
        return Ok(r);
    }
    if opts.numeric {
        let grid = opts.grid.clone().unwrap_or_default();
        r.set("mode", "numeric");
        r.set("grid", json!({"x": [num(grid.x.0), num(grid.x.1)], "y": [num(grid.y.0), num(grid.y.1)], "nx": grid.nx, "ny": grid.ny}));
        r.set("tolerance", num(opts.tolerance));
        match numeric_residual(&src.expr, &grid, &src.samples, !opts.complex) {
            Ok((max, p)) => {
                r.set("max_abs_residual", num(max));
                r.set("worst_point", json!([num(p.0), num(p.1)]));
                r.check(&format!("max |residual| = {} <= {} (worst at x = {}, y = {})", fmt17(max), fmt17(opts.tolerance), p.0, p.1), max <= opts.tolerance);
            }
            Err(Error::Core(susyms_core::Error::Domain(m))) => {
                r.set("domain_error", m.clone());
                r.check(&format!("evaluation stays inside the function domains: {m}"), false);
            }
            Err(e) => return Err(e),
        }
        return Ok(r);
    }
    r.set("mode", "symbolic");
    let rep = verify_symbolic(&src.expr)?;
    r.set("residual", rep.residual.to_string());
    r.set("verdict", verdict_json(&rep.verdict));
    r.line(format!("residual: {}", verdict_text(&rep.verdict)));
    let ok = match &rep.verdict {
        ConstraintVerdict::IdenticallyZero => true,
        ConstraintVerdict::ZeroOn(_) => opts.accept_constraints,
        ConstraintVerdict::NonZero => false,
    };
    r.check("residual vanishes", ok);
    Ok(r)
}

fn negative_control() -> ClassicalVectorField {
    ClassicalVectorField::new(GradedExpr::zero(), GradedExpr::zero(), GradedExpr::var("x"))
}

pub fn classical_symmetries() -> Result<Report> {
    let mut r = Report::new("classical symmetries");
    let mut gens = Vec::new();
    for (name, g) in CLASSICAL_NAMES.iter().zip(classical_generators()) {
        let res = prolong2_symmetry_check(&g)?;
        r.check(&format!("{name} = {} leaves the equation invariant on shell", g.to_vector_field()), res.is_zero());
        gens.push(json!({"name": name, "field": g.to_vector_field().to_string(), "residual": res.to_string()}));
    }
    let ctl = prolong2_symmetry_check(&negative_control())?;
    r.check("negative control x d/du is rejected (nonzero residual)", !ctl.is_zero());
    let (cnames, ccomputed) = classical_cells()?;
    let mm = mismatches(&ccomputed, &published_classical_cells(), &cnames);
    r.check(&format!("commutators match the published relations ({} mismatching cells)", mm.len()), mm.is_empty());
    r.set("generators", gens);
    r.set("negative_control", json!({"field": negative_control().to_vector_field().to_string(), "residual": ctl.to_string()}));
    r.set("table", json!({"names": cnames, "cells": cells_json(&ccomputed), "mismatches": mm}));
    Ok(r)
}

pub fn classical_classify_report() -> Result<Report> {
    let mut r = Report::new("classical classify");
    let c = classical_classify()?;
    let alg = susyms_core::classical::classical_algebra()?;
    r.check(&format!("Killing form of {{e4, e5, e6}} is negative definite: {:?}", c.killing_form.iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()), c.killing_negative_definite);
    for (name, ok) in &c.checks {
        r.check(name, *ok);
    }
    r.check(&format!("{} representatives", c.representatives.len()), c.representatives.len() == 4);
    for (name, e) in &c.representatives {
        r.line(format!("{{{name}}} = {}", e.render(&alg)));
    }
    for u in &c.unlisted {
        r.line(format!("[INFO] unlisted class: {u}"));
    }
    r.set("representatives", c.representatives.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>());
    r.set("killing_form", c.killing_form.iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    r.set("killing_negative_definite", c.killing_negative_definite);
    r.set("checks", c.checks.iter().map(|(n, ok)| json!({"check": n, "passed": ok})).collect::<Vec<_>>());
    r.set("unlisted", c.unlisted.clone());
    Ok(r)
}

pub fn classical_reduce() -> Result<Report> {
    let mut r = Report::new("classical reduce");
    let mut out = Vec::new();
    for red in [reduce_classical(None)?, reduce_classical(Some(&GradedExpr::konst("m")))?] {
        r.check(&format!("{}: v' = {}", red.label, red.rhs), red.matches);
        out.push(json!({"label": red.label, "rhs": red.rhs.to_string(), "matches_printed": red.matches}));
    }
    let degenerate = susyms_core::classical::classical_rhs(&GradedExpr::zero())?;
    let e4 = reduce_classical(None)?.rhs;
    r.check("m = 0 gives the e4 equation", degenerate == e4);
    r.set("reductions", out);
    Ok(r)
}

/// Finite-difference and Abel tolerances of the radial solution checks.
pub const FD_TOLERANCE: f64 = 1e-6;
pub const ABEL_TOLERANCE: f64 = 1e-8;
pub const FD_STEP: f64 = 1e-3;

pub fn classical_verify() -> Result<Report> {
    let mut r = Report::new("classical verify");
    let v = euler_lagrange_check()?;
    r.check("Euler-Lagrange equation of the area Lagrangian equals the divergence form", v.euler_lagrange_matches);
    r.check("divergence form times (1 + u_x^2 + u_y^2)^(3/2) equals the equation", v.conservation_matches);
    r.check("y = i t maps the equation to the scalar Born-Infeld equation", v.wick_matches);
    r.check("the rotation is inverted by t = -i y", v.wick_involution);
    r.set(
        "variational",
        json!({"euler_lagrange": v.euler_lagrange_matches, "conservation": v.conservation_matches, "wick": v.wick_matches, "wick_involution": v.wick_involution}),
    );
    let cases: Vec<(f64, f64)> = [0.5, 1.0, 2.0].iter().flat_map(|s| [0.0, 1.0].map(|k| (*s, k))).collect();
    let fd: Vec<f64> = cases.par_iter().map(|(s, k)| e4_solution_fd_max(*s, *k, FD_STEP)).collect();
    let mut fd_json = Vec::new();
    for ((s, k), m) in cases.iter().zip(&fd) {
        r.check(&format!("radial solution s0 = {s}, k0 = {k}: relative finite-difference residual {} <= {FD_TOLERANCE:e}", fmt17(*m)), *m <= FD_TOLERANCE);
        fd_json.push(json!({"s0": num(*s), "k0": num(*k), "max_relative": num(*m)}));
    }
    let mut abel_json = Vec::new();
    for (s, k) in [(Exponent::new(1, 2), Exponent::new(0, 1)), (Exponent::new(1, 1), Exponent::new(0, 1)), (Exponent::new(1, 1), Exponent::new(1, 1)), (Exponent::new(2, 1), Exponent::new(1, 1))] {
        let a = e4_abel_residual_max(s, k, 41)?;
        r.check(&format!("Abel residual of the radial solution s0 = {s}, k0 = {k}: {} <= {ABEL_TOLERANCE:e}", fmt17(a)), a <= ABEL_TOLERANCE);
        abel_json.push(json!({"s0": s.to_string(), "k0": k.to_string(), "max_abs": num(a)}));
    }
    let mut findings = Vec::new();
    for m in [0.0, 0.5, 1.0] {
        let f = e4me3_findings(1.0, 0.0, m);
        r.line(format!(
            "[INFO] e4 + m e3 printed solution, m = {m}: ODE residual (real part) {}, (complex) {}, max |Im| {}, relative PDE residual {}",
            fmt17(f.real_part_ode_residual),
            fmt17(f.complex_ode_residual),
            fmt17(f.imaginary_part_max),
            fmt17(f.real_part_pde_residual)
        ));
        findings.push(json!({
            "m": num(m),
            "real_part_ode_residual": num(f.real_part_ode_residual),
            "complex_ode_residual": num(f.complex_ode_residual),
            "imaginary_part_max": num(f.imaginary_part_max),
            "real_part_pde_residual": num(f.real_part_pde_residual),
        }));
    }
    r.set("finite_difference", json!({"step": num(FD_STEP), "annulus_s0_r2": [num(susyms_core::classical::FD_ANNULUS.0), num(susyms_core::classical::FD_ANNULUS.1)], "cases": fd_json}));
    r.set("abel", abel_json);
    r.set("e4_me3_findings", findings);
    Ok(r)
}

/// Evaluate a numeric argument given as an expression such as `2^(-1/2)`.
pub fn numeric_argument(s: &str) -> Result<f64> {
    let e = crate::parse::parse_expression(s)?;
    let z = eval(&e, &Env::new(true))?;
    Ok(z.re)
}

pub fn elliptic(kind: &str, phi: &str, k: &str) -> Result<Report> {
    let kind_v = match kind {
        "F" => EllipticKind::F,
        "E" => EllipticKind::E,
        other => return Err(Error::Usage(format!("unknown elliptic integral `{other}`"))),
    };
    let (p, kv) = (numeric_argument(phi)?, numeric_argument(k)?);
    let v = elliptic_integral(kind_v, p, kv).map_err(|e| Error::Usage(e.to_string()))?;
    let mut r = Report::new("elliptic");
    r.set("kind", kind);
    r.set("phi", num(p));
    r.set("k", num(kv));
    r.set("value", num(v));
    r.line(format!("{kind}({}, {}) = {}", fmt17(p), fmt17(kv), fmt17(v)));
    Ok(r)
}
