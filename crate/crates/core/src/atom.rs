//! The symbol alphabet: variables, constants, field jets, function atoms and
//! composite power bases.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::GradedExpr;

pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
    pub fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// An anticommuting coordinate. The rank fixes the global odd order
/// (theta1 < theta2 < eta1 < eta2 < anything else).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddVar {
    pub rank: u32,
    pub name: Symbol,
}

impl OddVar {
    pub fn new(name: &str) -> OddVar {
        let rank = match name {
            "theta1" => 0,
            "theta2" => 1,
            "eta1" => 2,
            "eta2" => 3,
            _ => 16,
        };
        OddVar { rank, name: sym(name) }
    }
}

/// Declaration of a field: its name, base parity and the coordinates it
/// depends on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldDecl {
    pub name: Symbol,
    pub parity: Parity,
    pub even_deps: Vec<Symbol>,
    pub odd_deps: Vec<OddVar>,
}

impl FieldDecl {
    pub fn new(name: &str, parity: Parity, deps: &[&str]) -> Arc<FieldDecl> {
        let mut even_deps = Vec::new();
        let mut odd_deps = Vec::new();
        for d in deps {
            let v = OddVar::new(d);
            if d.starts_with("theta") || d.starts_with("eta") {
                odd_deps.push(v);
            } else {
                even_deps.push(sym(d));
            }
        }
        Arc::new(FieldDecl { name: sym(name), parity, even_deps, odd_deps })
    }
}

/// A derivative of a field, stored in normal order: bosonic derivative counts
/// outermost, then odd derivatives with lower-ranked coordinates outermost.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Jet {
    pub field: Arc<FieldDecl>,
    pub counts: Vec<u32>,
    pub odd: Vec<bool>,
}

impl Jet {
    pub fn base(field: &Arc<FieldDecl>) -> Jet {
        Jet {
            field: field.clone(),
            counts: alloc::vec![0; field.even_deps.len()],
            odd: alloc::vec![false; field.odd_deps.len()],
        }
    }

    pub fn parity(&self) -> Parity {
        let n = self.odd.iter().filter(|b| **b).count();
        if n % 2 == 1 {
            self.field.parity.flip()
        } else {
            self.field.parity
        }
    }

    pub fn order(&self) -> u32 {
        self.counts.iter().sum::<u32>() + self.odd.iter().filter(|b| **b).count() as u32
    }

    /// Derivative variable names in normal order, outermost first.
    pub fn derivative_list(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, c) in self.field.even_deps.iter().zip(&self.counts) {
            for _ in 0..*c {
                out.push(name.to_string());
            }
        }
        for (v, set) in self.field.odd_deps.iter().zip(&self.odd) {
            if *set {
                out.push(v.name.to_string());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuncHead {
    Ln,
    Exp,
    Sin,
    Cos,
    Asin,
    EllipticF,
    EllipticE,
    /// An unknown function of one argument, differentiated `order` times.
    User { name: Symbol, order: u32 },
}

impl FuncHead {
    pub fn arity(&self) -> usize {
        match self {
            FuncHead::EllipticF | FuncHead::EllipticE => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            FuncHead::Ln => "ln".into(),
            FuncHead::Exp => "exp".into(),
            FuncHead::Sin => "sin".into(),
            FuncHead::Cos => "cos".into(),
            FuncHead::Asin => "asin".into(),
            FuncHead::EllipticF => "EllipticF".into(),
            FuncHead::EllipticE => "EllipticE".into(),
            FuncHead::User { name, order } => {
                let mut s = name.to_string();
                for _ in 0..*order {
                    s.push('\'');
                }
                s
            }
        }
    }

    pub fn builtin(name: &str) -> Option<FuncHead> {
        Some(match name {
            "ln" => FuncHead::Ln,
            "exp" => FuncHead::Exp,
            "sin" => FuncHead::Sin,
            "cos" => FuncHead::Cos,
            "asin" | "arcsin" => FuncHead::Asin,
            "EllipticF" => FuncHead::EllipticF,
            "EllipticE" => FuncHead::EllipticE,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func {
    pub head: FuncHead,
    pub args: Vec<GradedExpr>,
}

/// A symbol of the graded alphabet. Variant order fixes the global odd order:
/// odd coordinates precede odd constants, which precede odd jets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    OddVar(OddVar),
    OddConst(Symbol),
    Jet(Jet),
    Var(Symbol),
    Const(Symbol),
    /// An even constant restricted to the values +1 and -1.
    Sign(Symbol),
    Func(Func),
    /// A composite or numeric base carrying a non-integer or negative power.
    Power(Arc<GradedExpr>),
}

impl Atom {
    pub fn var(name: &str) -> Atom {
        Atom::Var(sym(name))
    }
    pub fn odd_var(name: &str) -> Atom {
        Atom::OddVar(OddVar::new(name))
    }
    pub fn theta1() -> Atom {
        Atom::odd_var("theta1")
    }
    pub fn theta2() -> Atom {
        Atom::odd_var("theta2")
    }
    pub fn konst(name: &str) -> Atom {
        Atom::Const(sym(name))
    }
    pub fn odd_const(name: &str) -> Atom {
        Atom::OddConst(sym(name))
    }
    pub fn sign(name: &str) -> Atom {
        Atom::Sign(sym(name))
    }

    pub fn parity(&self) -> Parity {
        match self {
            Atom::OddVar(_) | Atom::OddConst(_) => Parity::Odd,
            Atom::Jet(j) => j.parity(),
            _ => Parity::Even,
        }
    }

    /// True for coordinates: bosonic variables and odd variables.
    pub fn is_coordinate(&self) -> bool {
        matches!(self, Atom::Var(_) | Atom::OddVar(_))
    }

    /// True if the atom is a constant (carries no dependence on coordinates
    /// or fields).
    pub fn is_constant(&self) -> bool {
        match self {
            Atom::OddConst(_) | Atom::Const(_) | Atom::Sign(_) => true,
            Atom::Func(f) => f.args.iter().all(|a| a.is_constant()),
            Atom::Power(b) => b.is_constant(),
            _ => false,
        }
    }

    pub fn name(&self) -> Option<&Symbol> {
        match self {
            Atom::OddVar(v) => Some(&v.name),
            Atom::OddConst(s) | Atom::Var(s) | Atom::Const(s) | Atom::Sign(s) => Some(s),
            Atom::Jet(j) => Some(&j.field.name),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::OddVar(v) => write!(f, "{}", v.name),
            Atom::OddConst(s) | Atom::Var(s) | Atom::Const(s) | Atom::Sign(s) => write!(f, "{s}"),
            Atom::Jet(j) => {
                let list = j.derivative_list();
                if list.is_empty() {
                    write!(f, "{}", j.field.name)
                } else {
                    write!(f, "D({};{})", list.join(","), j.field.name)
                }
            }
            Atom::Func(func) => {
                write!(f, "{}(", func.head.name())?;
                for (i, a) in func.args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Atom::Power(b) => write!(f, "({b})"),
        }
    }
}
