//! Set-theoretic vocabulary, the axioms of Tarski-Grothendieck set theory and
//! the bootstrap theory the type checker works in.

mod defs;
pub mod derive;
pub mod terms;

use thiserror::Error;

pub use defs::definitions;
pub use terms::names;

use crate::kernel::{Definition, Sequent, TheoremSource, Theory, TheoryError};
use crate::lfol::{beta_normalize, logic::*, Expr, Signature, Sort};
use derive::{sfam, sv};
use terms::*;

#[derive(Debug, Clone, Error)]
pub enum SetTheoryError {
    #[error("`{0}` is not a defined constant")]
    UnknownDefinition(String),
}

/// `exists z. forall w. w in z <=> prop(w)`
fn exists_set(prop: impl Fn(Expr) -> Expr) -> Expr {
    exists("z", |z| forall("w", |w| iff(mem(w.clone(), z), prop(w))))
}

/// Axiom schemas, in registration order.
pub fn axioms() -> Vec<(&'static str, Sequent)> {
    let (x, y, a) = (sv("X"), sv("Y"), sv("A"));
    let p = Expr::schematic("P", Sort::predicate());
    let f = sfam("F");
    vec![
        (
            "extensionality",
            Sequent::new(
                [forall("w", |w| iff(mem(w.clone(), x.clone()), mem(w, y.clone())))],
                [eq(x.clone(), y.clone())],
            ),
        ),
        (
            "pairing",
            Sequent::goal(exists_set(|w| or(eq(w.clone(), x.clone()), eq(w, y.clone())))),
        ),
        (
            "union",
            Sequent::goal(exists_set(|w| {
                exists("y", |v| and(mem(v.clone(), x.clone()), mem(w, v)))
            })),
        ),
        (
            "powerset",
            Sequent::goal(exists_set(|w| subset(w, x.clone()))),
        ),
        (
            "separation",
            Sequent::goal(exists_set(|w| and(mem(w.clone(), a.clone()), Expr::app(p.clone(), w)))),
        ),
        (
            "replacement",
            Sequent::goal(exists_set(|w| {
                exists("x", |v| and(mem(v.clone(), a.clone()), eq(w, Expr::app(f.clone(), v))))
            })),
        ),
        (
            "tarski",
            Sequent::goal(exists("U", |u| and(mem(x.clone(), u.clone()), is_grothendieck(u)))),
        ),
        ("eq_refl", Sequent::goal(eq(x.clone(), x))),
    ]
}

fn family_in(t1: &Expr, fam: &Expr, target: impl Fn(Expr) -> Expr) -> Expr {
    let fam = fam.clone();
    forall_in("x", t1.clone(), move |v| mem(Expr::app(fam, v.clone()), target(v)))
}

/// Lemmas admitted without a kernel derivation: `(name, schema, citation)`.
pub fn registered_lemmas() -> Vec<(&'static str, Sequent, &'static str)> {
    let (t, t1, t1b, f, u) = (sv("T"), sv("T1"), sv("T1b"), sv("f"), sv("u"));
    let (x, uu) = (sv("t"), sv("U"));
    let (l, lb, body) = (sfam("L"), sfam("Lb"), sfam("B"));
    vec![
        (
            "BetaThm",
            Sequent::new(
                [mem(x.clone(), t.clone())],
                [eq(app(abs(t, l.clone()), x.clone()), Expr::app(l.clone(), x))],
            ),
            "beta-reduction: applying the graph abs(T)(L) to t in T yields L(t)",
        ),
        (
            "T_abs",
            Sequent::new(
                [family_in(&t1, &body, |v| Expr::app(l.clone(), v))],
                [mem(abs(t1.clone(), body.clone()), pi(t1.clone(), l.clone()))],
            ),
            "abstraction typing: a body in L(x) for every x in T1 gives abs(T1)(B) in Pi(T1)(L)",
        ),
        (
            "T_app",
            Sequent::new(
                [mem(f.clone(), pi(t1.clone(), l.clone())), mem(u.clone(), t1.clone())],
                [mem(app(f, u.clone()), Expr::app(l.clone(), u))],
            ),
            "application typing: f in Pi(T1)(L) and u in T1 give app(f)(u) in L(u)",
        ),
        (
            "GrothendieckImpliesIsUniverse",
            Sequent::new([is_grothendieck(uu.clone())], [is_universe(uu.clone())]),
            "every Grothendieck universe satisfies the three isUniverse clauses",
        ),
        (
            "UniversePiClosure",
            Sequent::new(
                [
                    is_universe(uu.clone()),
                    mem(t1.clone(), uu.clone()),
                    family_in(&t1, &l, |_| uu.clone()),
                ],
                [mem(pi(t1.clone(), l.clone()), uu.clone())],
            ),
            "universes are closed under dependent products",
        ),
        (
            "PiSubtyping",
            Sequent::new(
                [
                    eq(t1.clone(), t1b.clone()),
                    forall_in("x", t1.clone(), |v| {
                        subset(Expr::app(l.clone(), v.clone()), Expr::app(lb.clone(), v))
                    }),
                ],
                [subset(pi(t1, l), pi(t1b, lb))],
            ),
            "dependent products are invariant in the domain and covariant in the codomain",
        ),
    ]
}

/// Logical signature plus every definition and its defining axiom.
pub fn definitional_theory() -> Theory {
    let mut t = Theory::new(Signature::logical());
    for d in definitions() {
        t = t.define(d).expect("bootstrap definitions are well-formed");
    }
    t
}

/// Register the kernel-derived helpers whose ingredients are present.
/// Returns the extended theory and the names that could not be derived.
pub fn add_derived(mut t: Theory) -> (Theory, Vec<&'static str>) {
    let mut skipped = Vec::new();
    for (name, derivation) in derive::derivations() {
        let next = derivation(&t)
            .ok()
            .and_then(|(schema, proof)| t.register_theorem(name, schema, TheoremSource::Proof(proof)).ok());
        match next {
            Some(n) => t = n,
            None => skipped.push(name),
        }
    }
    (t, skipped)
}

/// The full theory: definitions, axioms, registered lemmas and derived helpers.
pub fn bootstrap() -> Theory {
    let mut t = definitional_theory();
    for (name, schema) in axioms() {
        t = t.register_axiom(name, schema).expect("bootstrap axioms are well-formed");
    }
    for (name, schema, citation) in registered_lemmas() {
        t = t
            .register_theorem(name, schema, TheoremSource::RegisteredLemma(citation.to_string()))
            .expect("bootstrap lemmas are well-formed");
    }
    let (t, skipped) = add_derived(t);
    assert!(skipped.is_empty(), "bootstrap derivations failed: {skipped:?}");
    t
}

/// Like [`bootstrap`] but reporting the first failing step instead of panicking.
pub fn try_bootstrap() -> Result<Theory, TheoryError> {
    let mut t = definitional_theory();
    for (name, schema) in axioms() {
        t = t.register_axiom(name, schema)?;
    }
    for (name, schema, citation) in registered_lemmas() {
        t = t.register_theorem(name, schema, TheoremSource::RegisteredLemma(citation.to_string()))?;
    }
    for (name, derivation) in derive::derivations() {
        let (schema, proof) = derivation(&t).map_err(|e| TheoryError::InvalidDefinition {
            name: name.to_string(),
            detail: e.to_string(),
        })?;
        t = t.register_theorem(name, schema, TheoremSource::Proof(proof))?;
    }
    Ok(t)
}

/// Replace every occurrence of the defined constant `name` by its definiens
/// and beta-normalize.
pub fn unfold_definition(theory: &Theory, name: &str, e: &Expr) -> Result<Expr, SetTheoryError> {
    let def = theory
        .definition(name)
        .ok_or_else(|| SetTheoryError::UnknownDefinition(name.to_string()))?;
    Ok(unfold_with(&[def], e))
}

fn unfold_with(defs: &[&Definition], e: &Expr) -> Expr {
    let replaced = e.replace_consts(&|n, _| {
        defs.iter().find(|d| &*d.name == n).map(|d| d.definiens.clone())
    });
    if replaced.ptr_eq(e) {
        e.clone()
    } else {
        beta_normalize(&replaced)
    }
}

/// Unfold definitions, latest first, until only primitive constants remain.
pub fn unfold_all(theory: &Theory, e: &Expr) -> Expr {
    let defs: Vec<&Definition> = theory.definitions().collect();
    let mut out = e.clone();
    for d in defs.iter().rev() {
        if out.mentions_const(&d.name) {
            out = unfold_with(&[d], &out);
        }
    }
    out
}
