//! The classical minimal surface equation
//! `(1 + u_x^2) u_yy - 2 u_x u_y u_xy + (1 + u_y^2) u_xx = 0`:
//! residuals, conservation and variational forms, the Born-Infeld map, point
//! symmetries, their one-dimensional subalgebras and Abel-type reductions.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::atom::{Atom, FieldDecl, FuncHead, Jet, Parity};
use crate::calculus::{derivative_wrt_atom, partial_derivative};
use crate::error::Result;
use crate::expr::GradedExpr;
use crate::funcs::func_expr;
use crate::number::{rat, Coeff, Exponent};
use crate::numeric::{eval, Env};
use crate::simplify::is_zero_exact;
use crate::superalgebra::{adjoint_action, structure_table, Algebra, Element, StructureTable};
use crate::vector_field::VectorField;

pub fn u_field() -> Arc<FieldDecl> {
    FieldDecl::new("u", Parity::Even, &["x", "y"])
}

fn jet(field: &Arc<FieldDecl>, a: u32, b: u32) -> GradedExpr {
    GradedExpr::atom(Atom::Jet(Jet { field: field.clone(), counts: vec![a, b], odd: vec![] }))
}

/// `u_{x^a y^b}` of the classical field.
pub fn u_jet(a: u32, b: u32) -> GradedExpr {
    jet(&u_field(), a, b)
}

fn xv() -> GradedExpr {
    GradedExpr::var("x")
}
fn yv() -> GradedExpr {
    GradedExpr::var("y")
}

/// Left-hand side of the minimal surface equation on the abstract field `u`.
pub fn ms_equation() -> GradedExpr {
    let (ux, uy) = (u_jet(1, 0), u_jet(0, 1));
    let one = GradedExpr::one();
    one.gadd(&ux.gmul(&ux))
        .gmul(&u_jet(0, 2))
        .gsub(&ux.gmul(&uy).gmul(&u_jet(1, 1)).scale_int(2))
        .gadd(&one.gadd(&uy.gmul(&uy)).gmul(&u_jet(2, 0)))
}

/// Replace the jets of `u` by derivatives of `target` (an expression in x, y).
pub fn substitute_u(e: &GradedExpr, target: &GradedExpr) -> Result<GradedExpr> {
    crate::superfield::substitute_field(e, "u", target)
}

/// Symbolic residual of the minimal surface equation for `u = target`.
pub fn ms_residual(target: &GradedExpr) -> Result<GradedExpr> {
    substitute_u(&ms_equation(), target)
}

/// Finite-difference residual with its scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdResidual {
    pub residual: f64,
    /// Largest magnitude among the three terms of the equation.
    pub scale: f64,
}

impl FdResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            libm::fabs(self.residual)
        } else {
            libm::fabs(self.residual) / self.scale
        }
    }
}

/// Second-order central-difference evaluation of the equation at `(x, y)`.
pub fn ms_residual_fd(u: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> FdResidual {
    let c = u(x, y);
    let ux = (u(x + h, y) - u(x - h, y)) / (2.0 * h);
    let uy = (u(x, y + h) - u(x, y - h)) / (2.0 * h);
    let uxx = (u(x + h, y) - 2.0 * c + u(x - h, y)) / (h * h);
    let uyy = (u(x, y + h) - 2.0 * c + u(x, y - h)) / (h * h);
    let uxy = (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h)) / (4.0 * h * h);
    let t1 = (1.0 + ux * ux) * uyy;
    let t2 = 2.0 * ux * uy * uxy;
    let t3 = (1.0 + uy * uy) * uxx;
    FdResidual { residual: t1 - t2 + t3, scale: libm::fmax(libm::fabs(t1), libm::fmax(libm::fabs(t2), libm::fabs(t3))) }
}

/// `sqrt(1 + u_x^2 + u_y^2)`.
pub fn lagrangian() -> Result<GradedExpr> {
    let (ux, uy) = (u_jet(1, 0), u_jet(0, 1));
    GradedExpr::one().gadd(&ux.gmul(&ux)).gadd(&uy.gmul(&uy)).powr(Exponent::new(1, 2))
}

/// `d/dx (u_x / L) + d/dy (u_y / L)`.
pub fn conservation_form() -> Result<GradedExpr> {
    let li = lagrangian()?.inv()?;
    let fx = partial_derivative(&u_jet(1, 0).gmul(&li), &Atom::var("x"))?;
    let fy = partial_derivative(&u_jet(0, 1).gmul(&li), &Atom::var("y"))?;
    Ok(fx.gadd(&fy))
}

/// Euler-Lagrange expression `dL/du - D_x dL/du_x - D_y dL/du_y`.
pub fn euler_lagrange(l: &GradedExpr) -> Result<GradedExpr> {
    let u = |a, b| match u_jet(a, b).as_atom() {
        Some(at) => at.clone(),
        None => unreachable!(),
    };
    let du = derivative_wrt_atom(l, &u(0, 0))?;
    let dux = derivative_wrt_atom(l, &u(1, 0))?;
    let duy = derivative_wrt_atom(l, &u(0, 1))?;
    Ok(du.gsub(&partial_derivative(&dux, &Atom::var("x"))?).gsub(&partial_derivative(&duy, &Atom::var("y"))?))
}

/// Outcome of the variational and conservation-law checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationalReport {
    /// `EL(L) + divergence form` vanishes.
    pub euler_lagrange_matches: bool,
    /// `L^3 * divergence form - MS` vanishes.
    pub conservation_matches: bool,
    /// `wick(MS) + Born-Infeld` vanishes.
    pub wick_matches: bool,
    /// Inverse rotation of the rotated equation returns the original.
    pub wick_involution: bool,
}

pub fn euler_lagrange_check() -> Result<VariationalReport> {
    let l = lagrangian()?;
    let div = conservation_form()?;
    let el = euler_lagrange(&l)?;
    let euler_lagrange_matches = is_zero_exact(&el.gadd(&div))?;
    let l3 = l.pow_int(3)?;
    let conservation_matches = is_zero_exact(&l3.gmul(&div).gsub(&ms_equation()))?;
    let ms = ms_equation();
    let rotated = wick_rotate(&ms)?;
    let wick_matches = is_zero_exact(&rotated.gadd(&born_infeld()))?;
    let wick_involution = wick_unrotate(&rotated)? == ms;
    Ok(VariationalReport { euler_lagrange_matches, conservation_matches, wick_matches, wick_involution })
}

/// Field `u(x, t)` used after the Wick rotation.
pub fn u_field_xt() -> Arc<FieldDecl> {
    FieldDecl::new("u", Parity::Even, &["x", "t"])
}

/// Scalar Born-Infeld equation `(1 + u_x^2) u_tt - 2 u_x u_t u_xt - (1 - u_t^2) u_xx`.
pub fn born_infeld() -> GradedExpr {
    let f = u_field_xt();
    let (ux, ut) = (jet(&f, 1, 0), jet(&f, 0, 1));
    let one = GradedExpr::one();
    one.gadd(&ux.gmul(&ux))
        .gmul(&jet(&f, 0, 2))
        .gsub(&ux.gmul(&ut).gmul(&jet(&f, 1, 1)).scale_int(2))
        .gsub(&one.gsub(&ut.gmul(&ut)).gmul(&jet(&f, 2, 0)))
}

fn rotate_jets(e: &GradedExpr, from: &Arc<FieldDecl>, to: &Arc<FieldDecl>, unit: Coeff) -> Result<GradedExpr> {
    e.substitute_with(&mut |a| match a {
        Atom::Jet(j) if j.field == *from => {
            let b = j.counts[1];
            let c = unit.pow_int(b as i64).unwrap();
            Some(jet(to, j.counts[0], b).scale(&c))
        }
        _ => None,
    })
}

/// Substitute `y = i t`: `d/dy = -i d/dt`.
pub fn wick_rotate(e: &GradedExpr) -> Result<GradedExpr> {
    rotate_jets(e, &u_field(), &u_field_xt(), Coeff::i().neg())
}

/// Inverse substitution `t = -i y`: `d/dt = i d/dy`.
pub fn wick_unrotate(e: &GradedExpr) -> Result<GradedExpr> {
    rotate_jets(e, &u_field_xt(), &u_field(), Coeff::i())
}

/// A classical point vector field `xi d_x + eta d_y + phi d_u` with
/// coefficients in the variables `x`, `y`, `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalVectorField {
    pub coeff_x: GradedExpr,
    pub coeff_y: GradedExpr,
    pub coeff_u: GradedExpr,
}

impl ClassicalVectorField {
    pub fn new(coeff_x: GradedExpr, coeff_y: GradedExpr, coeff_u: GradedExpr) -> Self {
        ClassicalVectorField { coeff_x, coeff_y, coeff_u }
    }

    pub fn to_vector_field(&self) -> VectorField {
        VectorField::new(vec![
            (Atom::var("x"), self.coeff_x.clone()),
            (Atom::var("y"), self.coeff_y.clone()),
            (Atom::var("u"), self.coeff_u.clone()),
        ])
    }
}

pub const CLASSICAL_NAMES: [&str; 7] = ["e1", "e2", "e3", "e4", "e5", "e6", "e7"];

/// The seven point symmetries.
pub fn classical_generators() -> Vec<ClassicalVectorField> {
    let (x, y, u) = (xv(), yv(), GradedExpr::var("u"));
    let z = GradedExpr::zero;
    let one = GradedExpr::one;
    vec![
        ClassicalVectorField::new(one(), z(), z()),
        ClassicalVectorField::new(z(), one(), z()),
        ClassicalVectorField::new(z(), z(), one()),
        ClassicalVectorField::new(y.gneg(), x.clone(), z()),
        ClassicalVectorField::new(z(), u.gneg(), y.clone()),
        ClassicalVectorField::new(u.clone(), z(), x.gneg()),
        ClassicalVectorField::new(x, y, u),
    ]
}

pub fn classical_table() -> Result<StructureTable> {
    let names: Vec<String> = CLASSICAL_NAMES.iter().map(|s| s.to_string()).collect();
    let basis: Vec<VectorField> = classical_generators().iter().map(|g| g.to_vector_field()).collect();
    structure_table(&names, &basis)
}

/// Nonzero commutators as printed: `(i, j, [(k, c)])` meaning `[e_i, e_j] = sum c e_k`.
pub const PUBLISHED_COMMUTATORS: [(usize, usize, usize, i64); 12] = [
    (1, 4, 2, 1),
    (1, 6, 3, -1),
    (1, 7, 1, 1),
    (2, 4, 1, -1),
    (2, 5, 3, 1),
    (2, 7, 2, 1),
    (3, 5, 2, -1),
    (3, 6, 1, 1),
    (3, 7, 3, 1),
    (4, 5, 6, -1),
    (4, 6, 5, 1),
    (5, 6, 4, -1),
];

/// The printed table as a full antisymmetric array (zeros included).
pub fn published_classical_table() -> Vec<Vec<Vec<Coeff>>> {
    let mut t = vec![vec![vec![Coeff::zero(); 7]; 7]; 7];
    for (i, j, k, c) in PUBLISHED_COMMUTATORS {
        t[i - 1][j - 1][k - 1] = Coeff::from_int(c);
        t[j - 1][i - 1][k - 1] = Coeff::from_int(-c);
    }
    t
}

pub fn classical_algebra() -> Result<Algebra> {
    Algebra::from_table(&classical_table()?)
}

/// Replace the second jet `u_yy` using the equation (valid where `1 + u_x^2 != 0`).
fn on_shell(e: &GradedExpr) -> Result<GradedExpr> {
    let ms = ms_equation();
    let uyy = u_jet(0, 2).as_atom().cloned().unwrap();
    let a = derivative_wrt_atom(&ms, &uyy)?;
    let b = ms.gsub(&a.gmul(&u_jet(0, 2)));
    let solved = b.gneg().gmul(&a.inv()?);
    e.subs(&uyy, &solved)
}

/// Apply the second prolongation of `v` to the equation and reduce on shell.
/// Zero exactly when `v` is a point symmetry.
pub fn prolong2_symmetry_check(v: &ClassicalVectorField) -> Result<GradedExpr> {
    let u0 = u_jet(0, 0);
    let lift = |c: &GradedExpr| c.subs(&Atom::var("u"), &u0);
    let (xi, eta, phi) = (lift(&v.coeff_x)?, lift(&v.coeff_y)?, lift(&v.coeff_u)?);
    let (x, y) = (Atom::var("x"), Atom::var("y"));
    // characteristic Q = phi - xi u_x - eta u_y
    let q = phi.gsub(&xi.gmul(&u_jet(1, 0))).gsub(&eta.gmul(&u_jet(0, 1)));
    let ms = ms_equation();
    let mut out = xi.gmul(&derivative_wrt_atom(&ms, &x)?).gadd(&eta.gmul(&derivative_wrt_atom(&ms, &y)?));
    for a in 0..=2u32 {
        for b in 0..=(2 - a) {
            let j = u_jet(a, b);
            let atom = j.as_atom().cloned().unwrap();
            let d = derivative_wrt_atom(&ms, &atom)?;
            if d.is_zero() {
                continue;
            }
            let mut dq = q.clone();
            for _ in 0..a {
                dq = partial_derivative(&dq, &x)?;
            }
            for _ in 0..b {
                dq = partial_derivative(&dq, &y)?;
            }
            let coeff = dq.gadd(&xi.gmul(&u_jet(a + 1, b))).gadd(&eta.gmul(&u_jet(a, b + 1)));
            out.add_assign(&coeff.gmul(&d));
        }
    }
    let reduced = on_shell(&out)?;
    crate::simplify::clear_denominators(&reduced)
}

/// Result of the classical subalgebra classification.
#[derive(Clone, Debug)]
pub struct ClassicalClassification {
    /// Representatives as printed: `{e1}, {e4}, {e4 + m e3}, {e7}`.
    pub representatives: Vec<(String, Element)>,
    pub killing_form: Vec<Vec<Coeff>>,
    pub killing_negative_definite: bool,
    /// Named structural facts used by the classification, with outcome.
    pub checks: Vec<(String, bool)>,
    /// Classes the machinery produces that the printed list omits.
    pub unlisted: Vec<String>,
}

fn elem(pairs: &[(usize, GradedExpr)]) -> Element {
    let mut e = Element::zero();
    for (i, c) in pairs {
        e.set(*i - 1, c.clone());
    }
    e
}

fn span_check(alg: &Algebra, xs: &[usize], ys: &[usize], target: &[usize]) -> bool {
    xs.iter().all(|&i| {
        ys.iter().all(|&j| (0..alg.dim()).all(|k| alg.structure[i - 1][j - 1][k].is_zero() || target.contains(&(k + 1))))
    })
}

fn negative_definite(m: &[Vec<Coeff>]) -> bool {
    // Sylvester's criterion on -m
    let n = m.len();
    let mut a: Vec<Vec<crate::number::Rational>> = m.iter().map(|r| r.iter().map(|c| -c.re.clone()).collect()).collect();
    if m.iter().flatten().any(|c| !c.is_real()) {
        return false;
    }
    for k in 0..n {
        if a[k][k] <= crate::number::Rational::from_integer(0.into()) {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k].clone() / a[k][k].clone();
            for j in k..n {
                let v = a[k][j].clone() * f.clone();
                a[i][j] -= v;
            }
        }
    }
    true
}

pub fn classical_classify() -> Result<ClassicalClassification> {
    let alg = classical_algebra()?;
    let killing_form = alg.killing_form(&[3, 4, 5]);
    let killing_negative_definite = negative_definite(&killing_form);
    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("[A, A] in A for A = {e4, e5, e6}".into(), span_check(&alg, &[4, 5, 6], &[4, 5, 6], &[4, 5, 6])));
    checks.push(("[A, B] in B for B = {e1, e2, e3}".into(), span_check(&alg, &[4, 5, 6], &[1, 2, 3], &[1, 2, 3])));
    checks.push(("B abelian".into(), span_check(&alg, &[1, 2, 3], &[1, 2, 3], &[])));
    checks.push(("[e7, A] = 0".into(), span_check(&alg, &[7], &[4, 5, 6], &[])));
    checks.push(("[e7, B] in B".into(), span_check(&alg, &[7], &[1, 2, 3], &[1, 2, 3])));
    // translations remove the e1, e2 parts of e4 + b, leaving the e3 part
    let b = elem(&[(4, GradedExpr::one()), (1, GradedExpr::konst("b1")), (2, GradedExpr::konst("b2")), (3, GradedExpr::konst("b3"))]);
    let y = elem(&[(1, GradedExpr::konst("b2").gneg()), (2, GradedExpr::konst("b1"))]);
    let moved = adjoint_action(&alg, &y, &b)?;
    let target = elem(&[(4, GradedExpr::one()), (3, GradedExpr::konst("b3"))]);
    checks.push(("Ad_exp(-b2 e1 + b1 e2)(e4 + b1 e1 + b2 e2 + b3 e3) = e4 + b3 e3".into(), moved.sub(&target).is_zero()));
    // the dilation scales translations: Ad_exp(t e7)(e1) = exp(-t) e1
    let t = GradedExpr::konst("t");
    let d = adjoint_action(&alg, &elem(&[(7, t.clone())]), &elem(&[(1, GradedExpr::one())]))?;
    let expected = func_expr(FuncHead::Exp, vec![t.gneg()])?;
    checks.push(("Ad_exp(t e7)(e1) = exp(-t) e1".into(), d.coefficient(0) == expected && d.coeffs.len() == 1));
    // e7 absorbs translations: Ad_exp(b e1)(e7) = e7 + b e1
    let d = adjoint_action(&alg, &elem(&[(1, GradedExpr::konst("b"))]), &elem(&[(7, GradedExpr::one())]))?;
    checks.push(("Ad_exp(b e1)(e7) = e7 + b e1".into(), d.sub(&elem(&[(7, GradedExpr::one()), (1, GradedExpr::konst("b"))])).is_zero()));
    let representatives = vec![
        ("e1".to_string(), elem(&[(1, GradedExpr::one())])),
        ("e4".to_string(), elem(&[(4, GradedExpr::one())])),
        ("e4 + m e3".to_string(), elem(&[(4, GradedExpr::one()), (3, GradedExpr::konst("m"))])),
        ("e7".to_string(), elem(&[(7, GradedExpr::one())])),
    ];
    let unlisted = vec!["e7 + a e4 (a != 0): e7 commutes with A, so the rotation part of e7 + a e4 cannot be removed".to_string()];
    Ok(ClassicalClassification { representatives, killing_form, killing_negative_definite, checks, unlisted })
}

/// Reduced equation `v' = rhs(xi, v)` of a classical reduction.
#[derive(Clone, Debug)]
pub struct ClassicalReduction {
    pub label: String,
    /// Right-hand side in the atoms `xi`, `v`.
    pub rhs: GradedExpr,
    /// Whether the equation equals `coefficient * (v' - rhs)` exactly.
    pub matches: bool,
}

fn xi_expr() -> GradedExpr {
    xv().gmul(&xv()).gadd(&yv().gmul(&yv()))
}

/// Right-hand side of the printed reduced equation for `e4 + m e3`
/// (`m = 0` gives the `e4` equation).
pub fn classical_rhs(m: &GradedExpr) -> Result<GradedExpr> {
    let xi = GradedExpr::var("xi");
    let v = GradedExpr::var("v");
    let m2 = m.gmul(m);
    let xm = xi.gadd(&m2);
    let t1 = xi.scale_int(2).gmul(&xm.inv()?).gmul(&v.pow_int(3)?).gneg();
    let t2 = xi.scale_int(2).gadd(&m2.scale_int(3)).gmul(&xi.scale_int(2).gmul(&xm).inv()?).gmul(&v).gneg();
    Ok(t1.gadd(&t2))
}

/// Substitute the invariant ansatz for `e4` (`m = None`) or `e4 + m e3` into
/// the equation and compare with `v' = rhs`. The arcsine ansatz is taken on
/// the half plane `y > 0`.
pub fn reduce_classical(m: Option<&GradedExpr>) -> Result<ClassicalReduction> {
    let uf = func_expr(FuncHead::User { name: "U".into(), order: 0 }, vec![xi_expr()])?;
    let target = match m {
        None => uf,
        Some(m) => {
            let ang = func_expr(FuncHead::Asin, vec![xv().gmul(&xi_expr().powr(Exponent::new(-1, 2))?)])?;
            uf.gsub(&m.gmul(&ang))
        }
    };
    let r = ms_residual(&target)?;
    let r = r.substitute_with(&mut |a| match a {
        Atom::Func(f) => match &f.head {
            FuncHead::User { name, order } if &**name == "U" => match order {
                1 => Some(GradedExpr::var("v")),
                2 => Some(GradedExpr::var("v'")),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    })?;
    let mm = m.cloned().unwrap_or_else(GradedExpr::zero);
    let rhs = classical_rhs(&mm)?;
    let coef = derivative_wrt_atom(&r, &Atom::var("v'"))?;
    let rhs_xy = rhs.subs(&Atom::var("xi"), &xi_expr())?;
    let diff = r.gsub(&coef.gmul(&GradedExpr::var("v'").gsub(&rhs_xy)));
    let matches = !coef.is_zero() && is_zero_exact(&diff)?;
    let label = match m {
        None => "e4".to_string(),
        Some(m) => format!("e4 + ({m}) e3"),
    };
    Ok(ClassicalReduction { label, rhs, matches })
}

/// The radial solution `u(r^2)` of the `e4` reduction:
/// `(2 s0)^(-1/2) ln(4 sqrt(s0) sqrt(s0 xi^2 - 2 xi) + 4 s0 xi - 4) + k0`.
pub fn e4_solution_xi(s0: &GradedExpr, k0: &GradedExpr, xi: &GradedExpr) -> Result<GradedExpr> {
    let rs = s0.powr(Exponent::new(1, 2))?;
    let inner = s0.gmul(&xi.gmul(xi)).gsub(&xi.scale_int(2)).powr(Exponent::new(1, 2))?;
    let arg = rs.gmul(&inner).scale_int(4).gadd(&s0.gmul(xi).scale_int(4)).gsub(&GradedExpr::int(4));
    let pre = s0.scale_int(2).powr(Exponent::new(-1, 2))?;
    Ok(pre.gmul(&func_expr(FuncHead::Ln, vec![arg])?).gadd(k0))
}

/// Numeric value of the radial solution at a point of the plane.
pub fn e4_solution_value(s0: f64, k0: f64, x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    let arg = 4.0 * libm::sqrt(s0) * libm::sqrt(s0 * r2 * r2 - 2.0 * r2) + 4.0 * s0 * r2 - 4.0;
    libm::log(libm::fabs(arg)) / libm::sqrt(2.0 * s0) + k0
}

/// Sample points on the annulus `s0 r^2 in [r2_lo, r2_hi]`.
pub fn annulus_points(s0: f64, (r2_lo, r2_hi): (f64, f64), nr: usize, nt: usize, upper_half: bool) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let (lo, hi) = (libm::sqrt(r2_lo / s0), libm::sqrt(r2_hi / s0));
    for i in 0..nr {
        let r = lo + (hi - lo) * i as f64 / (nr - 1) as f64;
        for j in 0..nt {
            let t = if upper_half {
                // stay clear of the axis where the arcsine branch turns
                0.1 + (core::f64::consts::PI - 0.2) * j as f64 / (nt - 1) as f64
            } else {
                2.0 * core::f64::consts::PI * j as f64 / nt as f64
            };
            out.push((r * libm::cos(t), r * libm::sin(t)));
        }
    }
    out
}

/// Annulus used for the finite-difference check of the radial solution, in
/// units of `s0 r^2`; it keeps away from the branch circle `s0 r^2 = 2`.
pub const FD_ANNULUS: (f64, f64) = (6.0, 20.0);

/// Largest relative finite-difference residual of the radial solution on
/// [`FD_ANNULUS`]. The step is `h / sqrt(s0)`, i.e. `h` in the natural length
/// unit of the solution.
pub fn e4_solution_fd_max(s0: f64, k0: f64, h: f64) -> f64 {
    let u = move |x: f64, y: f64| e4_solution_value(s0, k0, x, y);
    let step = h / libm::sqrt(s0);
    annulus_points(s0, FD_ANNULUS, 16, 32, false)
        .iter()
        .map(|&(x, y)| ms_residual_fd(&u, x, y, step).relative())
        .fold(0.0, f64::max)
}

/// Largest residual of `v' + v/xi + 2 v^3` for `v = du/dxi` of the radial
/// solution, with `xi` in `[3/s0, 10/s0]`; derivatives are exact.
pub fn e4_abel_residual_max(s0: Exponent, k0: Exponent, samples: usize) -> Result<f64> {
    let c = |q: Exponent| GradedExpr::rational(rat(*q.numer(), *q.denom()));
    let xi = GradedExpr::var("xi");
    let u = e4_solution_xi(&c(s0), &c(k0), &xi)?;
    let v = derivative_wrt_atom(&u, &Atom::var("xi"))?;
    let dv = derivative_wrt_atom(&v, &Atom::var("xi"))?;
    let rhs = classical_rhs(&GradedExpr::zero())?;
    let resid = dv.gsub(&rhs.subs(&Atom::var("v"), &v)?);
    let s = num_traits::ToPrimitive::to_f64(&s0).unwrap_or(f64::NAN);
    let mut worst = 0.0f64;
    for i in 0..samples {
        let xv = (3.0 + 7.0 * i as f64 / (samples - 1) as f64) / s;
        let mut env = Env::new(true);
        env.set(Atom::var("xi"), xv);
        worst = worst.max(eval(&resid, &env)?.norm());
    }
    Ok(worst)
}

/// The printed solution for `e4 + m e3` as a complex function of `xi`,
/// with `ln|.|` read as the logarithm of the modulus.
pub fn e4me3_phi(s0: f64, k0: f64, m: f64, xi: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let sq = |z: Complex64| z.sqrt();
    let a = sq(Complex64::new(s0 * xi - 2.0, 0.0)) * sq(Complex64::new(m * m + xi, 0.0));
    let first_arg = (i * 2.0 * libm::sqrt(2.0) * m * a + (s0 * m * m - 2.0) * xi - 4.0 * m * m) / xi;
    let second_arg = (2.0 * libm::sqrt(s0) * a + (2.0 * xi + m * m) * s0 - 2.0) / libm::sqrt(s0);
    i * (m / 2.0) * libm::log(first_arg.norm()) + libm::log(second_arg.norm()) / libm::sqrt(2.0 * s0) + k0
}

/// Findings for the printed `e4 + m e3` solution.
#[derive(Clone, Debug, PartialEq)]
pub struct E4me3Findings {
    /// Max ODE residual of `v = Re(phi)'`.
    pub real_part_ode_residual: f64,
    /// Max ODE residual of the full complex `v = phi'`.
    pub complex_ode_residual: f64,
    /// Max magnitude of `Im(phi)` on the sample range.
    pub imaginary_part_max: f64,
    /// Max relative finite-difference residual of `u = Re(phi) - m asin(x/r)`
    /// on the upper half annulus.
    pub real_part_pde_residual: f64,
}

pub fn e4me3_findings(s0: f64, k0: f64, m: f64) -> E4me3Findings {
    let h = 1e-4;
    let phi = |xi: f64| e4me3_phi(s0, k0, m, xi);
    let d = |f: &dyn Fn(f64) -> Complex64, xi: f64| (f(xi + h) - f(xi - h)) / (2.0 * h);
    let dd = |f: &dyn Fn(f64) -> Complex64, xi: f64| (f(xi + h) - f(xi) * 2.0 + f(xi - h)) / (h * h);
    let ode = |v: Complex64, dv: Complex64, xi: f64| {
        dv + v * v * v * (2.0 * xi / (xi + m * m)) + v * ((2.0 * xi + 3.0 * m * m) / (2.0 * xi * (xi + m * m)))
    };
    let re = |xi: f64| Complex64::new(phi(xi).re, 0.0);
    let mut out = E4me3Findings { real_part_ode_residual: 0.0, complex_ode_residual: 0.0, imaginary_part_max: 0.0, real_part_pde_residual: 0.0 };
    for i in 0..41 {
        let xi = (3.0 + 7.0 * i as f64 / 40.0) / s0;
        out.real_part_ode_residual = out.real_part_ode_residual.max(ode(d(&re, xi), dd(&re, xi), xi).norm());
        out.complex_ode_residual = out.complex_ode_residual.max(ode(d(&phi, xi), dd(&phi, xi), xi).norm());
        out.imaginary_part_max = out.imaginary_part_max.max(libm::fabs(phi(xi).im));
    }
    let u = move |x: f64, y: f64| {
        let r2 = x * x + y * y;
        e4me3_phi(s0, k0, m, r2).re - m * libm::asin(x / libm::sqrt(r2))
    };
    out.real_part_pde_residual =
        annulus_points(s0, (3.0, 10.0), 12, 24, true).iter().map(|&(x, y)| ms_residual_fd(&u, x, y, 1e-3).relative()).fold(0.0, f64::max);
    out
}

/// Plain numeric callable for a closed-form solution.
pub type RealFn = Box<dyn Fn(f64, f64) -> f64>;

/// Numeric callable for `u = target(x, y)` evaluated through the expression engine.
pub fn callable(target: GradedExpr, constants: BTreeMap<Atom, f64>) -> RealFn {
    Box::new(move |x, y| {
        let mut env = Env::new(true);
        for (a, v) in &constants {
            env.set(a.clone(), *v);
        }
        env.set(Atom::var("x"), x).set(Atom::var("y"), y);
        eval(&target, &env).map(|z| z.re).unwrap_or(f64::NAN)
    })
}
