//! Symmetry reduction of the SUSY minimal surface equation: invariants of
//! worked subalgebras, the bodiless reduction to ODEs and verification of
//! explicit solutions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::atom::{Atom, FuncHead, Symbol};
use crate::classification::{canonical_element, Label};
use crate::error::{Error, Result};
use crate::expr::{GradedExpr, Monomial};
use crate::funcs::func_expr;
use crate::number::{Coeff, Exponent, Rational};
use crate::numeric::{eval, Env};
use crate::simplify::{clear_denominators, constraint_locus, is_zero_exact, ConstraintVerdict};
use crate::superalgebra::Generator;
use crate::superfield::{residual_for, th1, th2, x, y, ResidualForm};
use crate::vector_field::VectorField;

/// Labels with stored invariants.
pub const WORKED_LABELS: [Label; 6] = [Label::L(1), Label::L(4), Label::L(8), Label::L(72), Label::L(74), Label::G(136)];
/// Labels supporting the bodiless reduction.
pub const BODILESS_LABELS: [Label; 3] = [Label::L(72), Label::L(74), Label::G(136)];

fn xe() -> GradedExpr {
    GradedExpr::atom(x())
}
fn ye() -> GradedExpr {
    GradedExpr::atom(y())
}
fn t1() -> GradedExpr {
    GradedExpr::atom(th1())
}
fn t2() -> GradedExpr {
    GradedExpr::atom(th2())
}
fn phi_coord() -> GradedExpr {
    GradedExpr::var("Phi")
}
fn mu() -> GradedExpr {
    GradedExpr::odd_const("mu")
}
fn eps() -> GradedExpr {
    GradedExpr::atom(Atom::sign("eps"))
}
fn xi() -> Atom {
    Atom::var("xi")
}

/// Support of a worked subalgebra (the canonical representative).
fn worked_support(label: Label) -> Result<Vec<Generator>> {
    use Generator::*;
    Ok(match label {
        Label::L(1) => vec![P1],
        Label::L(4) => vec![P1, P3],
        Label::L(8) => vec![P1, P2],
        Label::L(72) => vec![D],
        Label::L(74) => vec![D, P3],
        Label::G(136) => vec![D, P2],
        _ => return Err(Error::UnsupportedSubalgebra(label.to_string())),
    })
}

/// The generator of a worked subalgebra as a vector field on superspace.
pub fn generator_field(label: Label) -> Result<VectorField> {
    let basis: Vec<VectorField> = Generator::TABLE_ORDER.iter().map(|g| g.vector_field()).collect();
    Ok(canonical_element(&worked_support(label)?).to_vector_field(&basis))
}

/// A complete set of invariants of a one-dimensional subalgebra.
#[derive(Clone, Debug)]
pub struct InvariantSet {
    pub subalgebra: Label,
    pub generator: VectorField,
    pub invariants: Vec<(String, GradedExpr)>,
    /// The group orbit reads `Phi = orbit_factor * Psi(invariants)`.
    pub orbit_factor: GradedExpr,
}

impl InvariantSet {
    pub fn get(&self, name: &str) -> Option<&GradedExpr> {
        self.invariants.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// Apply the generator to every invariant; all results must vanish.
    pub fn annihilation(&self) -> Result<Vec<(String, GradedExpr)>> {
        self.invariants
            .iter()
            .map(|(n, e)| Ok((n.clone(), self.generator.apply(e)?)))
            .collect()
    }
}

pub fn invariants_for(label: Label) -> Result<InvariantSet> {
    let generator = generator_field(label)?;
    let inv_sqrt_x = xe().powr(Exponent::new(-1, 2))?;
    let inv_x2 = xe().powr(Exponent::from_integer(-2))?;
    let scaling = |xi_expr: GradedExpr, odd1: GradedExpr| -> Vec<(String, GradedExpr)> {
        vec![
            ("xi".into(), xi_expr),
            ("eta1".into(), odd1.gmul(&inv_sqrt_x)),
            ("eta2".into(), t2().gmul(&inv_sqrt_x)),
            ("Psi".into(), phi_coord().gmul(&inv_x2)),
        ]
    };
    let (invariants, orbit_factor) = match label {
        Label::L(1) => (
            vec![
                (String::from("y"), ye()),
                ("theta1".into(), t1()),
                ("theta2".into(), t2()),
                ("Psi".into(), phi_coord()),
            ],
            GradedExpr::one(),
        ),
        Label::L(4) => (
            vec![
                (String::from("y"), ye()),
                ("eta".into(), t1().gsub(&mu().gmul(&xe()))),
                ("theta2".into(), t2()),
                ("Psi".into(), phi_coord()),
            ],
            GradedExpr::one(),
        ),
        Label::L(8) => (
            vec![
                (String::from("xi"), ye().gsub(&GradedExpr::konst("k").gmul(&xe()))),
                ("theta1".into(), t1()),
                ("theta2".into(), t2()),
                ("Psi".into(), phi_coord()),
            ],
            GradedExpr::one(),
        ),
        Label::L(72) => (scaling(ye().gmul(&xe().inv()?), t1()), xe().pow_int(2)?),
        Label::L(74) => (scaling(ye().gmul(&xe().inv()?), t1().gadd(&mu())), xe().pow_int(2)?),
        Label::G(136) => {
            let xi_expr = ye().scale_int(2).gadd(&eps()).gmul(&xe().inv()?);
            (scaling(xi_expr, t1()), xe().pow_int(2)?)
        }
        _ => return Err(Error::UnsupportedSubalgebra(label.to_string())),
    };
    let set = InvariantSet { subalgebra: label, generator, invariants, orbit_factor };
    for (n, r) in set.annihilation()? {
        if !is_zero_exact(&r)? {
            return Err(Error::Consistency(format!("{label}: generator does not annihilate {n}: {r}")));
        }
    }
    Ok(set)
}

/// Reduced ordinary differential equation `lhs = 0` for `w(xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedODE {
    pub subalgebra: Label,
    pub variable: Symbol,
    pub unknown: Symbol,
    /// In the atoms `xi`, `w`, `w'`, `w''`, ...
    pub lhs: GradedExpr,
    /// `lhs = factor * w''` when the highest derivative factors out linearly.
    pub factor: Option<GradedExpr>,
}

impl fmt::Display for ReducedODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.factor {
            Some(c) => write!(f, "({c})*{} = 0", self.highest().name().map(|s| s.to_string()).unwrap_or_default()),
            None => write!(f, "{} = 0", self.lhs),
        }
    }
}

fn w_jet(order: u32) -> Atom {
    let mut name = String::from("w");
    for _ in 0..order {
        name.push('\'');
    }
    Atom::var(&name)
}

impl ReducedODE {
    fn highest(&self) -> Atom {
        let mut best = 0;
        for a in self.lhs.atoms() {
            if let Some(n) = a.name() {
                if n.starts_with('w') {
                    best = best.max(n.len() as u32 - 1);
                }
            }
        }
        w_jet(best)
    }

    /// Evaluate the left-hand side on a candidate `w(xi)`.
    pub fn substitute(&self, w: &GradedExpr) -> Result<GradedExpr> {
        let mut map = BTreeMap::new();
        let mut d = w.clone();
        for k in 0..=4u32 {
            map.insert(w_jet(k), d.clone());
            d = crate::calculus::derivative_wrt_atom(&d, &xi())?;
        }
        self.lhs.gsubstitute(&map)
    }

    /// Evaluate the factor multiplying the highest derivative on `w(xi)`.
    pub fn substitute_factor(&self, w: &GradedExpr) -> Result<GradedExpr> {
        let f = self.factor.as_ref().ok_or_else(|| Error::Reduction("equation has no factored form".into()))?;
        let ode = ReducedODE { lhs: f.clone(), factor: None, ..self.clone() };
        ode.substitute(w)
    }
}

/// Replace `w(xi)`, `w'(xi)`, ... by the plain atoms `w`, `w'`, ...
fn jets_to_atoms(e: &GradedExpr) -> Result<GradedExpr> {
    let xi_e = GradedExpr::atom(xi());
    e.substitute_with(&mut |a| match a {
        Atom::Func(f) => match &f.head {
            FuncHead::User { name, order } if &**name == "w" && f.args[0] == xi_e => Some(GradedExpr::atom(w_jet(*order))),
            _ => None,
        },
        _ => None,
    })
}

/// Divide by the rational content and fix the sign so that the coefficient
/// of the highest `w`-free power of `xi` is positive.
fn primitive(e: &GradedExpr) -> GradedExpr {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::from(0);
    let mut den = num_bigint::BigInt::from(1);
    for (_, c) in e.terms() {
        if !num_traits::Zero::is_zero(&c.im) {
            return e.clone();
        }
        num = num.gcd(c.re.numer());
        den = den.lcm(c.re.denom());
    }
    if num == num_bigint::BigInt::from(0) {
        return e.clone();
    }
    let mut scale = Rational::new(den, num);
    let lead = e
        .terms()
        .filter(|(m, _)| m.odd.is_empty() && m.even.keys().all(|a| *a == xi()))
        .max_by_key(|(m, _)| m.even.get(&xi()).copied().unwrap_or_default())
        .map(|(_, c)| c.re.clone());
    if let Some(l) = lead {
        if l < Rational::from_integer(0.into()) {
            scale = -scale;
        }
    }
    e.scale(&Coeff::real(scale))
}

/// Coefficient of `xi`-free power of `x` in a reduced expression: returns
/// `(p, c)` with `e = x^p c` and `c` free of `x`.
fn split_x_power(e: &GradedExpr) -> Result<(Exponent, GradedExpr)> {
    let xa = x();
    let mut p: Option<Exponent> = None;
    for (m, _) in e.terms() {
        let q = m.even.get(&xa).copied().unwrap_or_default();
        match p {
            None => p = Some(q),
            Some(pp) if pp != q => {
                return Err(Error::Reduction(format!("residual is not homogeneous in x: {e}")));
            }
            _ => {}
        }
    }
    let p = p.unwrap_or_default();
    let c = e.map_terms(|m, c| {
        let mut m: Monomial = m.clone();
        m.even.remove(&xa);
        GradedExpr::term(m, c.clone())
    });
    if c.contains_atom(|a| *a == xa) {
        return Err(Error::Reduction(format!("x survives inside functions: {c}")));
    }
    Ok((p, c))
}

/// Substitute `Phi = x^2 w(xi) eta1 eta2` and extract the equation for `w`.
pub fn reduce_bodiless(label: Label) -> Result<ReducedODE> {
    reduce_bodiless_with(label, &|f| residual_for(f, ResidualForm::Operator))
}

/// Bodiless reduction against an arbitrary residual builder (used to compare
/// readings of the equation).
pub fn reduce_bodiless_with(label: Label, residual_of: &dyn Fn(&GradedExpr) -> Result<GradedExpr>) -> Result<ReducedODE> {
    if !BODILESS_LABELS.contains(&label) {
        return Err(Error::UnsupportedSubalgebra(label.to_string()));
    }
    let inv = invariants_for(label)?;
    let xi_expr = inv.get("xi").unwrap().clone();
    let eta12 = inv.get("eta1").unwrap().gmul(inv.get("eta2").unwrap());
    let w = func_expr(FuncHead::User { name: "w".into(), order: 0 }, vec![xi_expr])?;
    let ansatz = inv.orbit_factor.gmul(&w).gmul(&eta12);
    let residual = residual_of(&ansatz)?;
    // change variables y -> y(xi, x)
    let xi_e = GradedExpr::atom(xi());
    let y_of_xi = match label {
        Label::G(136) => xi_e.gmul(&xe()).gsub(&eps()).scale(&Coeff::real(crate::number::rat(1, 2))),
        _ => xi_e.gmul(&xe()),
    };
    let residual = residual.subs(&y(), &y_of_xi)?;
    let eta12 = eta12.subs(&y(), &y_of_xi)?;
    // residual = c * eta1 eta2, and eta1 eta2 = theta1 theta2 / x + ...
    let c = residual.odd_coefficient(&[th1(), th2()]).gmul(&xe());
    let stray = residual.gsub(&c.gmul(&eta12));
    if !is_zero_exact(&stray)? {
        return Err(Error::Reduction(format!("terms outside the eta1 eta2 span: {stray}")));
    }
    let (_, c) = split_x_power(&c)?;
    let lhs = primitive(&jets_to_atoms(&clear_denominators(&c)?)?);
    if lhs.contains_atom(|a| matches!(a, Atom::OddVar(_) | Atom::OddConst(_))) {
        return Err(Error::Reduction(format!("reduced equation is not purely even: {lhs}")));
    }
    let mut ode = ReducedODE { subalgebra: label, variable: "xi".into(), unknown: "w".into(), lhs, factor: None };
    let top = ode.highest();
    let factorable = ode.lhs.terms().all(|(m, _)| m.even.get(&top) == Some(&Exponent::from_integer(1)));
    if factorable {
        let f = ode.lhs.map_terms(|m, c| {
            let mut m = m.clone();
            m.even.remove(&top);
            GradedExpr::term(m, c.clone())
        });
        ode.factor = Some(primitive(&f));
        ode.lhs = ode.factor.as_ref().unwrap().gmul(&GradedExpr::atom(top));
    }
    Ok(ode)
}

/// Exact residual of a candidate solution with its vanishing locus.
#[derive(Clone, Debug)]
pub struct SymbolicReport {
    pub residual: GradedExpr,
    pub verdict: ConstraintVerdict,
}

pub fn verify_symbolic(phi: &GradedExpr) -> Result<SymbolicReport> {
    let residual = residual_for(phi, ResidualForm::Operator)?;
    let residual = clear_denominators(&residual)?;
    let verdict = constraint_locus(&residual)?;
    Ok(SymbolicReport { residual, verdict })
}

/// Sampling grid for numeric verification.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x: (0.5, 3.0), y: (-2.0, 2.0), nx: 41, ny: 41 }
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let step = |(a, b): (f64, f64), n: usize, i: usize| if n <= 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 };
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for i in 0..self.nx {
            for j in 0..self.ny {
                out.push((step(self.x, self.nx, i), step(self.y, self.ny, j)));
            }
        }
        out
    }
}

/// The residual split by its theta part; each component must be free of odd
/// constants to be evaluated numerically.
pub fn residual_components(phi: &GradedExpr) -> Result<Vec<(String, GradedExpr)>> {
    let residual = residual_for(phi, ResidualForm::Operator)?;
    let mut out = Vec::new();
    for odd in residual.odd_parts() {
        if odd.iter().any(|a| !matches!(a, Atom::OddVar(_))) {
            return Err(Error::Usage(format!("residual has a nilpotent constant part {odd:?}; numeric mode needs bodiless theta components")));
        }
        let name = if odd.is_empty() {
            "1".to_string()
        } else {
            odd.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("*")
        };
        out.push((name, residual.odd_coefficient(&odd)));
    }
    Ok(out)
}

/// Largest residual magnitude at one grid point.
pub fn residual_at(components: &[(String, GradedExpr)], point: (f64, f64), constants: &BTreeMap<Atom, Complex64>, real: bool) -> Result<f64> {
    let mut env = Env::new(real);
    for (a, v) in constants {
        env.set_complex(a.clone(), *v);
    }
    env.set(x(), point.0).set(y(), point.1);
    let mut worst = 0.0f64;
    for (_, c) in components {
        let v = eval(c, &env).map_err(|e| match e {
            Error::Domain(m) => Error::Domain(format!("at (x, y) = ({}, {}): {m}", point.0, point.1)),
            other => other,
        })?;
        worst = worst.max(v.norm());
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub grid: GridSpec,
    pub max_abs: f64,
    pub worst_point: (f64, f64),
}

/// Evaluate the residual on a grid (sequentially).
pub fn verify_numeric(phi: &GradedExpr, grid: &GridSpec, constants: &BTreeMap<Atom, Complex64>, real: bool) -> Result<NumericReport> {
    let comps = residual_components(phi)?;
    let mut report = NumericReport { grid: grid.clone(), max_abs: 0.0, worst_point: (grid.x.0, grid.y.0) };
    for p in grid.points() {
        let r = residual_at(&comps, p, constants, real)?;
        if r > report.max_abs || r.is_nan() {
            report.max_abs = r;
            report.worst_point = p;
        }
    }
    Ok(report)
}
