//! Floating-point evaluation of even, theta-free expressions.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::atom::{Atom, FuncHead, Symbol};
use crate::elliptic::{complete, elliptic_complex, EllipticKind};
use crate::error::{Error, Result};
use crate::expr::GradedExpr;
use crate::number::Exponent;

/// Values for user functions: `(name, derivative order, argument) -> value`.
pub type UserFn<'a> = Box<dyn Fn(&Symbol, u32, Complex64) -> Result<Complex64> + 'a>;

/// Evaluation environment.
pub struct Env<'a> {
    pub values: BTreeMap<Atom, Complex64>,
    pub user: Option<UserFn<'a>>,
    /// Reject branch points and non-real intermediate values.
    pub real: bool,
}

impl<'a> Env<'a> {
    pub fn new(real: bool) -> Self {
        Env { values: BTreeMap::new(), user: None, real }
    }

    pub fn set(&mut self, a: Atom, v: f64) -> &mut Self {
        self.values.insert(a, Complex64::new(v, 0.0));
        self
    }

    pub fn set_complex(&mut self, a: Atom, v: Complex64) -> &mut Self {
        self.values.insert(a, v);
        self
    }
}

const REAL_EPS: f64 = 1e-12;

fn check_real(env: &Env, what: &str, z: Complex64) -> Result<()> {
    if env.real && z.im.abs() > REAL_EPS * (1.0 + z.re.abs()) {
        return Err(Error::Domain(format!("{what} is not real: {z}")));
    }
    Ok(())
}

fn power(env: &Env, base: Complex64, e: Exponent) -> Result<Complex64> {
    if e.is_integer() {
        let n = e.to_integer();
        if base == Complex64::new(0.0, 0.0) && n < 0 {
            return Err(Error::Domain(format!("division by zero in power {e}")));
        }
        return Ok(base.powi(n as i32));
    }
    if env.real && base.re < 0.0 && base.im.abs() <= REAL_EPS * (1.0 + base.re.abs()) {
        return Err(Error::Domain(format!("negative radicand {} under power {e}", base.re)));
    }
    if base == Complex64::new(0.0, 0.0) {
        return if e > Exponent::from_integer(0) {
            Ok(base)
        } else {
            Err(Error::Domain(format!("division by zero in power {e}")))
        };
    }
    let p = e.to_f64().unwrap_or(f64::NAN);
    Ok((base.ln() * p).exp())
}

/// Evaluate an expression without odd atoms.
pub fn eval(e: &GradedExpr, env: &Env) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (m, c) in e.terms() {
        if !m.odd.is_empty() {
            return Err(Error::Usage(format!("cannot evaluate odd monomial in {e}")));
        }
        let mut t = c.to_complex();
        for (a, ex) in &m.even {
            let v = eval_atom(a, env)?;
            t *= power(env, v, *ex)?;
        }
        total += t;
    }
    Ok(total)
}

fn eval_atom(a: &Atom, env: &Env) -> Result<Complex64> {
    if let Some(v) = env.values.get(a) {
        return Ok(*v);
    }
    match a {
        Atom::Power(b) => eval(b, env),
        Atom::Func(f) => {
            let args = f.args.iter().map(|x| eval(x, env)).collect::<Result<Vec<_>>>()?;
            let z = args[0];
            let out = match &f.head {
                FuncHead::Ln => {
                    if env.real && z.re <= 0.0 {
                        return Err(Error::Domain(format!("logarithm of non-positive value {}", z.re)));
                    }
                    z.ln()
                }
                FuncHead::Exp => z.exp(),
                FuncHead::Sin => z.sin(),
                FuncHead::Cos => z.cos(),
                FuncHead::Asin => {
                    if env.real && z.re.abs() > 1.0 {
                        return Err(Error::Domain(format!("arcsine of {} outside [-1, 1]", z.re)));
                    }
                    z.asin()
                }
                FuncHead::EllipticF | FuncHead::EllipticE => {
                    let kind = if f.head == FuncHead::EllipticF { EllipticKind::F } else { EllipticKind::E };
                    let k = args[1];
                    if env.real && k.re * k.re >= 1.0 {
                        return Err(Error::Domain(format!("elliptic modulus {} has k^2 >= 1", k.re)));
                    }
                    let pi = core::f64::consts::PI;
                    let n = libm::round(z.re / pi);
                    let r = z - Complex64::new(n * pi, 0.0);
                    let mut v = elliptic_complex(kind, r, k);
                    if n != 0.0 {
                        v += 2.0 * n * complete(kind, k.re);
                    }
                    v
                }
                FuncHead::User { name, order } => match &env.user {
                    Some(u) => u(name, *order, z)?,
                    None => return Err(Error::Unbound(format!("{name}"))),
                },
            };
            check_real(env, "function value", out)?;
            Ok(out)
        }
        _ => Err(Error::Unbound(format!("{a}"))),
    }
}
