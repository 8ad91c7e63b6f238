//! Classification of one-dimensional subalgebras of the symmetry
//! superalgebra into conjugacy classes.
//!
//! Representatives are identified by their generator support: an even
//! generator is present when its coefficient has a nonzero body, an odd
//! generator when its (odd) coefficient is nonzero. Parameters are named by a
//! fixed rule: the first even coefficient is 1 (or the sign `eps` when `D` is
//! present), the next ones `k` and `l`; odd coefficients are `mu`, `nu`,
//! `rho`, `sigma` in the order P3, P4, Q1, Q2.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, Parity, Symbol};
use crate::error::{Error, Result};
use crate::expr::GradedExpr;
use crate::number::{Coeff, Exponent};
use crate::superalgebra::{adjoint_action, dilate, Algebra, Element, Generator};

use Generator::*;

/// Order used when naming parameters and printing representatives.
pub const CLASS_ORDER: [Generator; 8] = [D, P1, P2, P5, P3, P4, Q1, Q2];
const EVEN_TRANSLATIONS: [Generator; 3] = [P1, P2, P5];
const ODD_ORDER: [Generator; 4] = [P3, P4, Q1, Q2];
const EVEN_NAMES: [&str; 2] = ["k", "l"];
const ODD_NAMES: [&str; 4] = ["mu", "nu", "rho", "sigma"];

/// Labels of the nine subalgebras with non-standard invariant structure.
pub const NON_STANDARD: [u16; 9] = [2, 3, 6, 15, 16, 19, 21, 24, 33];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    S1,
    S2,
    S,
    TildeS,
    Full,
    Deduped,
}

impl Stage {
    pub fn generators(self) -> Vec<Generator> {
        match self {
            Stage::S1 => vec![P1, P3, Q1],
            Stage::S2 => vec![P2, P4, Q2],
            Stage::S => vec![P1, P3, Q1, P2, P4, Q2],
            Stage::TildeS => vec![P1, P3, Q1, P2, P4, Q2, P5],
            Stage::Full | Stage::Deduped => Generator::TABLE_ORDER.to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::S1 => "s1",
            Stage::S2 => "s2",
            Stage::S => "s",
            Stage::TildeS => "tilde-s",
            Stage::Full => "full",
            Stage::Deduped => "deduped",
        }
    }

    pub fn from_name(s: &str) -> Option<Stage> {
        Some(match s {
            "s1" => Stage::S1,
            "s2" => Stage::S2,
            "s" => Stage::S,
            "tilde-s" => Stage::TildeS,
            "full" => Stage::Full,
            "deduped" => Stage::Deduped,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    G(u16),
    L(u16),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::G(n) => write!(f, "G{n}"),
            Label::L(n) => write!(f, "L{n}"),
        }
    }
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        let (kind, num) = s.split_at(1);
        let n: u16 = num.parse().ok()?;
        match kind {
            "G" => Some(Label::G(n)),
            "L" => Some(Label::L(n)),
            _ => None,
        }
    }
}

/// A named entry of a classification list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeClass {
    pub label: Label,
    pub element: Element,
    pub support: Vec<Generator>,
    pub stage: Stage,
    pub standard_invariants: bool,
}

fn sorted_support(gens: &[Generator]) -> Vec<Generator> {
    let mut v: Vec<Generator> = gens.to_vec();
    v.sort_by_key(|g| CLASS_ORDER.iter().position(|h| h == g).unwrap());
    v.dedup();
    v
}

/// Parameter name attached to each generator of a support.
pub fn parameter_names(support: &[Generator]) -> Vec<(Generator, Option<&'static str>)> {
    let s = sorted_support(support);
    let has_d = s.contains(&D);
    let mut out = Vec::new();
    let mut even_seen = 0;
    for g in &s {
        match g {
            D => out.push((D, None)),
            P1 | P2 | P5 => {
                let name = match (even_seen, has_d) {
                    (0, false) => None,
                    (0, true) => Some("eps"),
                    (n, _) => Some(EVEN_NAMES[n - 1]),
                };
                even_seen += 1;
                out.push((*g, name));
            }
            _ => {}
        }
    }
    let mut odd_seen = 0;
    for g in ODD_ORDER {
        if s.contains(&g) {
            out.push((g, Some(ODD_NAMES[odd_seen])));
            odd_seen += 1;
        }
    }
    out
}

fn param_atom(name: &str) -> Atom {
    match name {
        "eps" => Atom::sign("eps"),
        "mu" | "nu" | "rho" | "sigma" => Atom::odd_const(name),
        _ => Atom::konst(name),
    }
}

/// The canonical representative with the given generator support.
pub fn canonical_element(support: &[Generator]) -> Element {
    let mut e = Element::zero();
    for (g, name) in parameter_names(support) {
        let c = match name {
            None => GradedExpr::one(),
            Some(n) => GradedExpr::atom(param_atom(n)),
        };
        e.set(g.index(), c);
    }
    e
}

/// Print an element in class order, e.g. `D + eps P1 + mu P3`.
pub fn render_element(e: &Element) -> String {
    let mut parts: Vec<String> = Vec::new();
    for g in CLASS_ORDER {
        let c = e.coefficient(g.index());
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(g.name().to_string());
        } else if c.as_atom().is_some() || c.as_coeff().is_some() {
            parts.push(format!("{c} {g}"));
        } else {
            parts.push(format!("({c}) {g}"));
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

/// Parse the representative notation `D + eps P1 + k P2 + mu P3`.
pub fn parse_element(s: &str) -> Result<Element> {
    let mut e = Element::zero();
    for term in s.split('+') {
        let words: Vec<&str> = term.split_whitespace().collect();
        let (coef, gen) = match words.as_slice() {
            [g] => (GradedExpr::one(), *g),
            [c, g] => (GradedExpr::atom(param_atom(c)), *g),
            _ => return Err(Error::Usage(format!("cannot parse term `{term}`"))),
        };
        let g = Generator::from_name(gen).ok_or_else(|| Error::Usage(format!("unknown generator `{gen}`")))?;
        if !e.coefficient(g.index()).is_zero() {
            return Err(Error::Usage(format!("generator {gen} repeated in `{s}`")));
        }
        e.set(g.index(), coef);
    }
    Ok(e)
}

fn parse_list(data: &str, prefix: char) -> Result<Vec<(u16, Element)>> {
    let mut out = Vec::new();
    for line in data.lines().filter(|l| !l.trim().is_empty()) {
        let (lab, body) = line.split_once(':').ok_or_else(|| Error::Usage(format!("bad line `{line}`")))?;
        let n: u16 = lab
            .trim()
            .strip_prefix(prefix)
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Usage(format!("bad label `{lab}`")))?;
        out.push((n, parse_element(body.trim())?));
    }
    Ok(out)
}

/// The 255 representatives G1..G255 as printed.
pub fn published_g() -> Result<Vec<(u16, Element)>> {
    parse_list(include_str!("../data/published_g.txt"), 'G')
}

/// The 143 representatives L1..L143 as printed.
pub fn published_l() -> Result<Vec<(u16, Element)>> {
    parse_list(include_str!("../data/published_l.txt"), 'L')
}

/// Generators with a present coefficient: nonzero body for even generators,
/// nonzero for odd ones.
pub fn support_of(e: &Element) -> Vec<Generator> {
    let mut out = Vec::new();
    for (i, c) in &e.coeffs {
        let g = Generator::from_index(*i);
        let present = match g.parity() {
            Parity::Even => !c.body().is_zero(),
            Parity::Odd => !c.is_zero(),
        };
        if present {
            out.push(g);
        }
    }
    sorted_support(&out)
}

/// Show that the coefficient support of a general element of a summand is
/// invariant under the adjoint action of the summand: odd coefficients do
/// not move and even coefficients move only by nilpotent shifts. Returns the
/// computed coefficient shifts.
pub fn summand_orbit_analysis(alg: &Algebra, gens: &[Generator]) -> Result<Vec<(Generator, GradedExpr)>> {
    let general = |prefix: &str| {
        let mut e = Element::zero();
        for g in gens {
            let name = format!("{prefix}_{}", g.name());
            let c = match g.parity() {
                Parity::Even => GradedExpr::konst(&name),
                Parity::Odd => GradedExpr::odd_const(&name),
            };
            e.set(g.index(), c);
        }
        e
    };
    let x = general("a");
    let y = general("b");
    let moved = adjoint_action(alg, &y, &x)?;
    let mut shifts = Vec::new();
    for g in gens {
        let shift = moved.coefficient(g.index()).gsub(&x.coefficient(g.index()));
        let ok = match g.parity() {
            Parity::Odd => shift.is_zero(),
            Parity::Even => shift.body().is_zero(),
        };
        if !ok {
            return Err(Error::Unsupported(format!("coefficient of {g} is not invariant: shift {shift}")));
        }
        shifts.push((*g, shift));
    }
    for (i, _) in moved.coeffs.iter() {
        if !gens.iter().any(|g| g.index() == *i) {
            return Err(Error::Consistency(format!("summand not closed: {}", moved.render(alg))));
        }
    }
    Ok(shifts)
}

fn nonempty_subsets(gens: &[Generator]) -> Vec<Vec<Generator>> {
    let n = gens.len();
    let mut out: Vec<Vec<Generator>> = Vec::new();
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| gens[i]).collect());
            // next combination in lexicographic order
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

fn make_class(support: Vec<Generator>, stage: Stage, n: usize) -> RepresentativeClass {
    RepresentativeClass {
        label: Label::G(n as u16),
        element: canonical_element(&support),
        support: sorted_support(&support),
        stage,
        standard_invariants: true,
    }
}

fn relabel(mut classes: Vec<RepresentativeClass>, stage: Stage, offset: usize) -> Vec<RepresentativeClass> {
    for (i, c) in classes.iter_mut().enumerate() {
        c.label = Label::G((offset + i + 1) as u16);
        c.stage = stage;
    }
    classes
}

/// Classes of one summand: every nonempty support, by size then in summand order.
pub fn classify_summand(alg: &Algebra, gens: &[Generator], stage: Stage, offset: usize) -> Result<Vec<RepresentativeClass>> {
    summand_orbit_analysis(alg, gens)?;
    let classes = nonempty_subsets(gens).into_iter().map(|s| make_class(s, stage, 0)).collect();
    Ok(relabel(classes, stage, offset))
}

pub fn classify_stage_s1(alg: &Algebra) -> Result<Vec<RepresentativeClass>> {
    classify_summand(alg, &[P1, P3, Q1], Stage::S1, 0)
}

pub fn classify_stage_s2(alg: &Algebra) -> Result<Vec<RepresentativeClass>> {
    classify_summand(alg, &[P2, P4, Q2], Stage::S2, 7)
}

/// Goursat combination of the classes of two commuting summands: the
/// non-twisted classes of each summand followed by the twisted sums
/// `a + tau(a)` for every pair admitting a homomorphism.
pub fn goursat_combine(
    alg: &Algebra,
    a: &[RepresentativeClass],
    b: &[RepresentativeClass],
    homomorphism: &dyn Fn(&RepresentativeClass, &RepresentativeClass) -> bool,
    stage: Stage,
) -> Result<Vec<RepresentativeClass>> {
    for ca in a {
        for cb in b {
            for g in &ca.support {
                for h in &cb.support {
                    if alg.structure[g.index()][h.index()].iter().any(|c| !c.is_zero()) {
                        return Err(Error::Consistency(format!("[{g}, {h}] != 0; summands do not commute")));
                    }
                }
            }
        }
    }
    let mut out: Vec<RepresentativeClass> = a.iter().chain(b.iter()).cloned().collect();
    for ca in a {
        for cb in b {
            if homomorphism(ca, cb) {
                let mut s = ca.support.clone();
                s.extend(cb.support.iter().copied());
                out.push(make_class(s, stage, 0));
            }
        }
    }
    Ok(relabel(out, stage, 0))
}

/// One-dimensional algebras: every linear map is a homomorphism.
pub fn one_dimensional_homomorphism(_: &RepresentativeClass, _: &RepresentativeClass) -> bool {
    true
}

pub fn classify_stage_s(alg: &Algebra) -> Result<Vec<RepresentativeClass>> {
    goursat_combine(alg, &classify_stage_s1(alg)?, &classify_stage_s2(alg)?, &one_dimensional_homomorphism, Stage::S)
}

pub fn classify_stage_tilde_s(alg: &Algebra) -> Result<Vec<RepresentativeClass>> {
    let p5 = classify_summand(alg, &[P5], Stage::TildeS, 0)?;
    goursat_combine(alg, &classify_stage_s(alg)?, &p5, &one_dimensional_homomorphism, Stage::TildeS)
}

/// Extension by the dilation: the splitting classes (the input plus `{D}`)
/// followed by the non-splitting classes `{D + X}`, with the first
/// translation coefficient scaled to `eps = +-1`.
pub fn splitting_nonsplitting_with_d(alg: &Algebra, classes: &[RepresentativeClass]) -> Result<Vec<RepresentativeClass>> {
    let w = alg.diagonal_weights(D.index()).ok_or_else(|| Error::Consistency("D does not act diagonally".into()))?;
    for c in classes {
        for g in &c.support {
            if w[g.index()].is_zero() {
                return Err(Error::Consistency(format!("D does not scale {g}")));
            }
        }
    }
    let mut out: Vec<RepresentativeClass> = classes.to_vec();
    out.push(make_class(vec![D], Stage::Full, 0));
    for c in classes {
        let mut s = c.support.clone();
        s.push(D);
        out.push(make_class(s, Stage::Full, 0));
    }
    Ok(relabel(out, Stage::Full, 0))
}

pub fn classify_full(alg: &Algebra) -> Result<Vec<RepresentativeClass>> {
    splitting_nonsplitting_with_d(alg, &classify_stage_tilde_s(alg)?)
}

pub fn classify_stage(alg: &Algebra, stage: Stage) -> Result<Vec<RepresentativeClass>> {
    match stage {
        Stage::S1 => classify_stage_s1(alg),
        Stage::S2 => classify_stage_s2(alg),
        Stage::S => classify_stage_s(alg),
        Stage::TildeS => classify_stage_tilde_s(alg),
        Stage::Full => classify_full(alg),
        Stage::Deduped => Ok(reflect_and_dedupe(alg, &classify_full(alg)?)?.classes),
    }
}

/// Apply the reflection x <-> y, theta1 <-> theta2 to an element.
pub fn reflect(e: &Element) -> Element {
    let mut out = Element::zero();
    for (i, c) in &e.coeffs {
        out.set(Generator::from_index(*i).reflect().index(), c.clone());
    }
    out
}

/// Whether the reflection permutes the structure constants.
pub fn reflection_is_automorphism(alg: &Algebra) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (ri, rj) = (Generator::from_index(i).reflect().index(), Generator::from_index(j).reflect().index());
            (0..n).all(|k| alg.structure[i][j][k] == alg.structure[ri][rj][Generator::from_index(k).reflect().index()])
        })
    })
}

/// Result of reflection deduplication.
#[derive(Clone, Debug)]
pub struct Dedupe {
    pub classes: Vec<RepresentativeClass>,
    /// `(g, image of g under the reflection)` for every input class.
    pub pairing: Vec<(u16, u16)>,
    /// `(L label, G label)` of the survivors.
    pub survivors: Vec<(u16, u16)>,
}

/// Pair each class with its reflection image, keep the lower G label of each
/// pair and number the survivors L1, L2, ... in G order.
pub fn reflect_and_dedupe(alg: &Algebra, classes: &[RepresentativeClass]) -> Result<Dedupe> {
    if !reflection_is_automorphism(alg) {
        return Err(Error::Consistency("reflection does not preserve the brackets".into()));
    }
    let mut pairing = Vec::new();
    for c in classes {
        let image = support_of(&reflect(&c.element));
        let Label::G(g) = c.label else { return Err(Error::Consistency("expected G labels".into())) };
        let h = match classes.iter().find(|d| d.support == image).map(|d| d.label) {
            Some(Label::G(h)) => h,
            _ => return Err(Error::Consistency(format!("reflection image of {} is not in the list", c.label))),
        };
        pairing.push((g, h));
    }
    for (g, h) in &pairing {
        let back = pairing.iter().find(|(a, _)| a == h).map(|(_, b)| *b);
        if back != Some(*g) {
            return Err(Error::Consistency(format!("reflection is not an involution on G{g}")));
        }
    }
    let mut out = Vec::new();
    let mut survivors = Vec::new();
    for (c, (g, h)) in classes.iter().zip(&pairing) {
        if g <= h {
            let n = out.len() as u16 + 1;
            let mut k = c.clone();
            k.label = Label::L(n);
            k.stage = Stage::Deduped;
            k.standard_invariants = !NON_STANDARD.contains(&n);
            out.push(k);
            survivors.push((n, *g));
        }
    }
    Ok(Dedupe { classes: out, pairing, survivors })
}

/// One step of a conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugationStep {
    /// Rescale the spanning element (same one-dimensional subalgebra).
    Scale(GradedExpr),
    /// Apply `Ad_exp(Y)`.
    Adjoint(Element),
    /// Apply `exp(ln(s) D)`.
    Dilate(GradedExpr),
    /// Apply the discrete reflection.
    Reflect,
}

/// Outcome of normalizing an element.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub label: Label,
    pub steps: Vec<ConjugationStep>,
    /// Values of the representative's parameters.
    pub bindings: BTreeMap<Symbol, GradedExpr>,
    /// Nilpotent translation coefficients absorbed into the class (the
    /// representative is defined up to such shifts).
    pub absorbed: Element,
}

pub fn apply_step(alg: &Algebra, x: &Element, step: &ConjugationStep) -> Result<Element> {
    match step {
        ConjugationStep::Scale(c) => Ok(x.scale_left(c)),
        ConjugationStep::Adjoint(y) => adjoint_action(alg, y, x),
        ConjugationStep::Dilate(s) => dilate(alg, D.index(), x, s),
        ConjugationStep::Reflect => Ok(reflect(x)),
    }
}

pub fn apply_steps(alg: &Algebra, x: &Element, steps: &[ConjugationStep]) -> Result<Element> {
    let mut cur = x.clone();
    for s in steps {
        cur = apply_step(alg, &cur, s)?;
    }
    Ok(cur)
}

/// Substitute parameter values into an element.
pub fn instantiate(e: &Element, bindings: &BTreeMap<Symbol, GradedExpr>) -> Result<Element> {
    let map: BTreeMap<Atom, GradedExpr> = bindings.iter().map(|(k, v)| (param_atom(k), v.clone())).collect();
    e.map_coeffs(|_, c| c.gsubstitute(&map))
}

/// Index (1-based G label) of a support in the list of a stage.
fn label_in_stage(alg: &Algebra, support: &[Generator], stage: Stage) -> Result<u16> {
    let list = classify_stage(alg, if stage == Stage::Deduped { Stage::Full } else { stage })?;
    list.iter()
        .find(|c| c.support == support)
        .map(|c| match c.label {
            Label::G(n) => n,
            Label::L(n) => n,
        })
        .ok_or_else(|| Error::NoMatch(format!("support {support:?} not in stage {}", stage.name())))
}

/// Carry `x` to a listed representative. Fails with `NoMatch` for elements
/// outside the implemented procedure.
pub fn normalize_to_representative(alg: &Algebra, x: &Element, stage: Stage) -> Result<Normalization> {
    let mut n = normalize_inner(alg, x, stage)?;
    if stage == Stage::Deduped {
        let full = classify_full(alg)?;
        let dd = reflect_and_dedupe(alg, &full)?;
        let Label::G(g) = n.label else { unreachable!() };
        if let Some((l, _)) = dd.survivors.iter().find(|(_, h)| *h == g) {
            n.label = Label::L(*l);
        } else {
            let mut steps = n.steps.clone();
            let cur = apply_steps(alg, x, &steps)?;
            steps.push(ConjugationStep::Reflect);
            let image = reflect(&cur);
            let mut m = normalize_inner(alg, &image, Stage::Full)?;
            steps.extend(m.steps.drain(..));
            let Label::G(h) = m.label else { unreachable!() };
            let l = dd.survivors.iter().find(|(_, k)| *k == h).map(|(l, _)| *l).ok_or_else(|| {
                Error::Consistency(format!("neither G{g} nor its image G{h} survives deduplication"))
            })?;
            m.label = Label::L(l);
            m.steps = steps;
            // the reflection also moves absorbed shifts
            m.absorbed = m.absorbed.add(&reflect(&n.absorbed));
            return Ok(m);
        }
    }
    Ok(n)
}

fn body_coeff(e: &GradedExpr) -> Option<Coeff> {
    e.body().as_coeff()
}

fn normalize_inner(alg: &Algebra, x: &Element, stage: Stage) -> Result<Normalization> {
    if x.is_zero() {
        return Err(Error::NoMatch("zero element".into()));
    }
    if !x.is_even(alg) {
        return Err(Error::Parity(format!("element {} is not even", x.render(alg))));
    }
    let allowed = stage.generators();
    for i in x.coeffs.keys() {
        let g = Generator::from_index(*i);
        if !allowed.contains(&g) {
            return Err(Error::NoMatch(format!("{g} is outside stage {}", stage.name())));
        }
    }
    let mut steps: Vec<ConjugationStep> = Vec::new();
    let mut cur = x.clone();
    let mut absorbed = Element::zero();
    let push = |steps: &mut Vec<ConjugationStep>, cur: &mut Element, s: ConjugationStep| -> Result<()> {
        *cur = apply_step(alg, cur, &s)?;
        steps.push(s);
        Ok(())
    };
    let dcoef = cur.coefficient(D.index());
    let has_d = !dcoef.is_zero();
    if has_d {
        if dcoef.body().is_zero() {
            return Err(Error::NoMatch("nilpotent D coefficient".into()));
        }
        push(&mut steps, &mut cur, ConjugationStep::Scale(dcoef.inv()?))?;
        for g in EVEN_TRANSLATIONS {
            let c = cur.coefficient(g.index());
            let shift = if c.body().is_zero() { c.clone() } else { c.soul() };
            if shift.is_zero() {
                continue;
            }
            // Ad_exp(s g) adds s [g, D] = s * mu_g * g
            let mu = alg.structure[g.index()][D.index()][g.index()].clone();
            let s = shift.scale(&mu.inv().ok_or_else(|| Error::Consistency(format!("[{g}, D] has no {g} part")))?).gneg();
            push(&mut steps, &mut cur, ConjugationStep::Adjoint(Element::basis(g.index(), s)))?;
        }
        let first = EVEN_TRANSLATIONS.iter().copied().find(|g| !cur.coefficient(g.index()).is_zero());
        let is_sign = |e: &GradedExpr| matches!(e.as_atom(), Some(Atom::Sign(_)));
        if let Some(g) = first.filter(|g| !is_sign(&cur.coefficient(g.index()))) {
            let b = body_coeff(&cur.coefficient(g.index()))
                .filter(|b| b.is_real())
                .ok_or_else(|| Error::NoMatch(format!("coefficient of {g} is not a real number")))?;
            let w = alg.diagonal_weights(D.index()).unwrap()[g.index()].clone();
            let wn = num_traits::ToPrimitive::to_i64(w.re.numer()).unwrap();
            let mag = GradedExpr::rational(num_traits::Signed::abs(&b.re));
            // s^w |b| = 1
            let s = mag.powr(Exponent::new(-1, wn))?;
            push(&mut steps, &mut cur, ConjugationStep::Dilate(s))?;
        }
    } else {
        let first = EVEN_TRANSLATIONS.iter().copied().find(|g| !cur.coefficient(g.index()).body().is_zero());
        if let Some(g) = first {
            let c = cur.coefficient(g.index());
            push(&mut steps, &mut cur, ConjugationStep::Scale(c.inv()?))?;
        }
        for (g, partners) in [(P1, [P3, Q1]), (P2, [P4, Q2])] {
            let c = cur.coefficient(g.index());
            if c.is_zero() || !c.body().is_zero() {
                continue;
            }
            if partners.iter().all(|h| cur.coefficient(h.index()).is_zero()) {
                return Err(Error::NoMatch(format!("nilpotent {g} coefficient without odd partners")));
            }
            absorbed.set(g.index(), c.clone());
            cur.set(g.index(), GradedExpr::zero());
        }
        if !cur.coefficient(P5.index()).is_zero() && cur.coefficient(P5.index()).body().is_zero() {
            return Err(Error::NoMatch("nilpotent P5 coefficient".into()));
        }
    }
    let support = support_of(&cur);
    if support.is_empty() {
        return Err(Error::NoMatch("no generator with a nonzero body or odd coefficient".into()));
    }
    let label = label_in_stage(alg, &support, stage)?;
    let mut bindings = BTreeMap::new();
    for (g, name) in parameter_names(&support) {
        let c = cur.coefficient(g.index());
        match name {
            None => {
                if !c.is_one() {
                    return Err(Error::Consistency(format!("normalized coefficient of {g} is {c}, expected 1")));
                }
            }
            Some(n) => {
                bindings.insert(Symbol::from(n), c);
            }
        }
    }
    Ok(Normalization { label: Label::G(label), steps, bindings, absorbed })
}

/// Check `apply_steps(x) == instantiate(representative, bindings) + absorbed`.
pub fn verify_normalization(alg: &Algebra, x: &Element, n: &Normalization, rep: &Element) -> Result<bool> {
    let lhs = apply_steps(alg, x, &n.steps)?;
    let rhs = instantiate(rep, &n.bindings)?.add(&n.absorbed);
    Ok(lhs.sub(&rhs).coeffs.values().all(|c| c.is_zero()))
}

/// Generators present in every listed class (used for reporting).
pub fn union_support(classes: &[RepresentativeClass]) -> BTreeSet<Generator> {
    classes.iter().flat_map(|c| c.support.iter().copied()).collect()
}
