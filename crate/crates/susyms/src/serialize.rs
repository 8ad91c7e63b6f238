//! Deterministic text serialization of canonical expressions.

use std::collections::BTreeMap;

use susyms_core::atom::{Atom, FuncHead, Parity};
use susyms_core::GradedExpr;

use crate::parse::{Decl, BUILTIN_ODD_VARS, BUILTIN_VARS};

/// Every non-builtin symbol of `e` with its declaration, sorted by name.
pub fn declarations(e: &GradedExpr) -> BTreeMap<String, Decl> {
    let mut out = BTreeMap::new();
    e.visit_atoms(&mut |a| {
        let entry = match a {
            Atom::Var(s) if !BUILTIN_VARS.contains(&&**s) => Some((s.to_string(), Decl::Var)),
            Atom::OddVar(v) if !BUILTIN_ODD_VARS.contains(&&*v.name) => Some((v.name.to_string(), Decl::OddVar)),
            Atom::Const(s) => Some((s.to_string(), Decl::Const)),
            Atom::OddConst(s) => Some((s.to_string(), Decl::OddConst)),
            Atom::Sign(s) => Some((s.to_string(), Decl::Sign)),
            Atom::Jet(j) => Some((j.field.name.to_string(), Decl::Field(j.field.clone()))),
            Atom::Func(f) => match &f.head {
                FuncHead::User { name, .. } => Some((name.to_string(), Decl::Function)),
                _ => None,
            },
            _ => None,
        };
        if let Some((n, d)) = entry {
            out.insert(n, d);
        }
    });
    out
}

fn declaration_lines(decls: &BTreeMap<String, Decl>) -> Vec<String> {
    let mut groups: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut fields = Vec::new();
    for (name, d) in decls {
        let kw = match d {
            Decl::Var => "var",
            // odd coordinates outside the builtin set are not representable
            Decl::OddVar => continue,
            Decl::Const => "even",
            Decl::OddConst => "odd",
            Decl::Sign => "sign",
            Decl::Function => "function",
            Decl::Field(f) => {
                let kw = if f.parity == Parity::Odd { "odd" } else { "even" };
                let deps: Vec<String> =
                    f.even_deps.iter().map(|s| s.to_string()).chain(f.odd_deps.iter().map(|v| v.name.to_string())).collect();
                fields.push(format!("{kw} {name}({});", deps.join(",")));
                continue;
            }
        };
        groups.entry(kw).or_default().push(name.clone());
    }
    let mut lines = Vec::new();
    for kw in ["var", "even", "odd", "sign", "function"] {
        if let Some(names) = groups.get(kw) {
            lines.push(format!("{kw} {};", names.join(", ")));
        }
    }
    lines.extend(fields);
    lines
}

/// Declarations followed by the canonical expression text.
pub fn serialize(e: &GradedExpr) -> String {
    let mut lines = declaration_lines(&declarations(e));
    lines.push(e.to_string());
    let mut s = lines.join("\n");
    s.push('\n');
    s
}
