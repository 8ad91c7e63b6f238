//! Construction and differentiation table for function atoms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::atom::{Atom, Func, FuncHead};
use crate::calculus::derivative_wrt_atom;
use crate::error::{Error, Result};
use crate::expr::{GradedExpr, Monomial};
use crate::number::{exp_rat, Coeff};

/// Apply a function head to arguments, simplifying trivial values and
/// Taylor-expanding nilpotent parts of a single argument.
pub fn func_expr(head: FuncHead, args: Vec<GradedExpr>) -> Result<GradedExpr> {
    if args.len() != head.arity() {
        return Err(Error::Usage(format!("{} expects {} argument(s), got {}", head.name(), head.arity(), args.len())));
    }
    for a in &args {
        if !a.is_even_or_zero() {
            return Err(Error::Parity(format!("argument {a} of {} is not even", head.name())));
        }
    }
    if args.iter().any(|a| !a.soul().is_zero()) {
        if args.len() != 1 {
            return Err(Error::Unsupported(format!("nilpotent argument of {}", head.name())));
        }
        let b = args[0].body();
        let n = args[0].soul();
        let t = Atom::var("__arg");
        let mut fk = func_expr(head, vec![GradedExpr::atom(t.clone())])?;
        let mut nk = GradedExpr::one();
        let mut fact = 1i64;
        let mut k = 0i64;
        let mut out = GradedExpr::zero();
        while !nk.is_zero() {
            let term = fk.subs(&t, &b)?.gmul(&nk).scale(&Coeff::real(crate::number::rat(1, fact)));
            out.add_assign(&term);
            k += 1;
            fact *= k;
            nk = nk.gmul(&n);
            fk = derivative_wrt_atom(&fk, &t)?;
        }
        return Ok(out);
    }
    let zero = |i: usize| args[i].is_zero();
    match head {
        FuncHead::Ln if args[0].is_one() => return Ok(GradedExpr::zero()),
        FuncHead::Exp if zero(0) => return Ok(GradedExpr::one()),
        FuncHead::Sin | FuncHead::Asin if zero(0) => return Ok(GradedExpr::zero()),
        FuncHead::Cos if zero(0) => return Ok(GradedExpr::one()),
        FuncHead::EllipticF | FuncHead::EllipticE if zero(0) => return Ok(GradedExpr::zero()),
        FuncHead::EllipticF | FuncHead::EllipticE if zero(1) => return Ok(args[0].clone()),
        _ => {}
    }
    let mut m = Monomial::one();
    m.even.insert(Atom::Func(Func { head, args }), exp_rat(1, 1));
    Ok(GradedExpr::term(m, Coeff::one()))
}

fn call(head: FuncHead, args: &[GradedExpr]) -> Result<GradedExpr> {
    func_expr(head, args.to_vec())
}

/// Partial derivative of `f(args)` with respect to its `idx`-th argument.
pub fn arg_derivative(f: &Func, idx: usize) -> Result<GradedExpr> {
    let a = &f.args;
    Ok(match (&f.head, idx) {
        (FuncHead::Ln, 0) => a[0].inv()?,
        (FuncHead::Exp, 0) => call(FuncHead::Exp, a)?,
        (FuncHead::Sin, 0) => call(FuncHead::Cos, a)?,
        (FuncHead::Cos, 0) => call(FuncHead::Sin, a)?.gneg(),
        (FuncHead::Asin, 0) => GradedExpr::one().gsub(&a[0].gmul(&a[0])).powr(exp_rat(-1, 2))?,
        (FuncHead::EllipticF, 0) | (FuncHead::EllipticE, 0) => {
            let s = call(FuncHead::Sin, &a[..1])?;
            let rad = GradedExpr::one().gsub(&a[1].gmul(&a[1]).gmul(&s).gmul(&s));
            let e = if f.head == FuncHead::EllipticF { exp_rat(-1, 2) } else { exp_rat(1, 2) };
            rad.powr(e)?
        }
        (FuncHead::User { name, order }, 0) => call(FuncHead::User { name: name.clone(), order: order + 1 }, a)?,
        _ => {
            return Err(Error::Unsupported(format!("derivative of {} in argument {}", f.head.name(), idx + 1)));
        }
    })
}
