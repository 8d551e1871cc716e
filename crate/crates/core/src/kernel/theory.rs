use std::collections::BTreeMap;

use super::{check_proof, ProofError, ProofTree, Sequent};
use crate::lfol::{beta_normalize, is_beta_normal, logic, sym, Expr, LfolError, Signature, Sort, Symbol};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum TheoryError {
    #[error("name `{0}` is already registered")]
    DuplicateName(String),
    #[error("ill-sorted schema `{name}`: {detail}")]
    SortMismatch { name: String, detail: String },
    #[error("invalid definition of `{name}`: {detail}")]
    InvalidDefinition { name: String, detail: String },
    #[error("proof of `{name}` does not conclude its schema: proved {found}")]
    ConclusionMismatch { name: String, found: String },
    #[error("proof of `{name}` rejected: {source}")]
    Proof {
        name: String,
        #[source]
        source: ProofError,
    },
    #[error(transparent)]
    Lfol(#[from] LfolError),
}

/// A sequent whose schematic symbols may be instantiated.
#[derive(Clone, Debug)]
pub struct Schema {
    pub sequent: Sequent,
    pub schematics: BTreeMap<Symbol, Sort>,
}

impl Schema {
    fn new(sequent: Sequent) -> Result<Schema, String> {
        let mut schematics: BTreeMap<Symbol, Sort> = BTreeMap::new();
        for f in sequent.formulas() {
            for (n, s) in f.schematics() {
                match schematics.get(&n) {
                    Some(prev) if *prev != s => {
                        return Err(format!("schematic ?{n} used at sorts {prev} and {s}"));
                    }
                    _ => {
                        schematics.insert(n, s);
                    }
                }
            }
        }
        Ok(Schema { sequent, schematics })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    KernelProved,
    /// Admitted without a kernel derivation; the citation names the result.
    RegisteredLemma { citation: String },
}

#[derive(Clone, Debug)]
pub struct TheoremEntry {
    pub schema: Schema,
    pub justification: Justification,
}

pub enum TheoremSource {
    Proof(ProofTree),
    RegisteredLemma(String),
}

/// A defined constant `name(params) := definiens(params)`.
#[derive(Clone, Debug)]
pub struct Definition {
    pub name: Symbol,
    pub params: Vec<(Symbol, Sort)>,
    pub result: Sort,
    /// Closed lambda abstraction over the parameters.
    pub definiens: Expr,
}

impl Definition {
    pub fn sort(&self) -> Sort {
        let params: Vec<Sort> = self.params.iter().map(|(_, s)| s.clone()).collect();
        Sort::curried(&params, self.result.clone())
    }

    pub fn axiom_name(&self) -> String {
        format!("def.{}", self.name)
    }

    /// `|- name(?p..) = definiens(?p..)` (or `<=>` for predicates).
    pub fn axiom(&self) -> Sequent {
        let args: Vec<Expr> = self
            .params
            .iter()
            .map(|(n, s)| Expr::schematic(n, s.clone()))
            .collect();
        let head = Expr::apps(Expr::constant(&self.name, self.sort()), args.clone());
        let body = beta_normalize(&Expr::apps(self.definiens.clone(), args));
        let phi = if self.result == Sort::Prop {
            logic::iff(head, body)
        } else {
            logic::eq(head, body)
        };
        Sequent::goal(phi)
    }
}

/// Signature, definitions, axiom schemas and theorems. Extended functionally.
#[derive(Clone, Debug)]
pub struct Theory {
    signature: Signature,
    definitions: BTreeMap<Symbol, Definition>,
    definition_order: Vec<Symbol>,
    axioms: BTreeMap<Symbol, Schema>,
    theorems: BTreeMap<Symbol, TheoremEntry>,
}

impl Theory {
    pub fn new(signature: Signature) -> Theory {
        Theory {
            signature,
            definitions: BTreeMap::new(),
            definition_order: Vec::new(),
            axioms: BTreeMap::new(),
            theorems: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axiom(&self, name: &str) -> Option<&Schema> {
        self.axioms.get(name)
    }

    pub fn theorem(&self, name: &str) -> Option<&TheoremEntry> {
        self.theorems.get(name)
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.get(name)
    }

    /// Definitions in the order they were introduced; each mentions only earlier ones.
    pub fn definitions(&self) -> impl Iterator<Item = &Definition> {
        self.definition_order.iter().map(|n| &self.definitions[n])
    }

    pub fn axioms(&self) -> impl Iterator<Item = (&Symbol, &Schema)> {
        self.axioms.iter()
    }

    pub fn theorems(&self) -> impl Iterator<Item = (&Symbol, &TheoremEntry)> {
        self.theorems.iter()
    }

    fn name_taken(&self, name: &str) -> bool {
        self.axioms.contains_key(name) || self.theorems.contains_key(name)
    }

    pub fn declare_constant(&self, name: &str, sort: Sort) -> Result<Theory, TheoryError> {
        let mut t = self.clone();
        t.signature.declare(name, sort)?;
        Ok(t)
    }

    /// Normalize and sort-check a schema against the signature.
    pub fn validate_schema(&self, name: &str, sequent: &Sequent) -> Result<Schema, TheoryError> {
        let err = |detail: String| TheoryError::SortMismatch {
            name: name.to_string(),
            detail,
        };
        for f in sequent.formulas() {
            let s = self.signature.sort_of(f).map_err(|e| err(e.to_string()))?;
            if s != Sort::Prop {
                return Err(err(format!("formula {f:?} has sort {s}, expected Prop")));
            }
        }
        Schema::new(sequent.normalized()).map_err(err)
    }

    pub fn register_axiom(&self, name: &str, schema: Sequent) -> Result<Theory, TheoryError> {
        if self.name_taken(name) {
            return Err(TheoryError::DuplicateName(name.to_string()));
        }
        let schema = self.validate_schema(name, &schema)?;
        let mut t = self.clone();
        t.axioms.insert(sym(name), schema);
        Ok(t)
    }

    pub fn register_theorem(
        &self,
        name: &str,
        schema: Sequent,
        source: TheoremSource,
    ) -> Result<Theory, TheoryError> {
        if self.name_taken(name) {
            return Err(TheoryError::DuplicateName(name.to_string()));
        }
        let schema = self.validate_schema(name, &schema)?;
        let justification = match source {
            TheoremSource::RegisteredLemma(citation) => Justification::RegisteredLemma { citation },
            TheoremSource::Proof(tree) => {
                let proved = check_proof(&tree, self).map_err(|source| TheoryError::Proof {
                    name: name.to_string(),
                    source,
                })?;
                if !proved.sequent().same_as(&schema.sequent) {
                    return Err(TheoryError::ConclusionMismatch {
                        name: name.to_string(),
                        found: format!("{:?}", proved.sequent()),
                    });
                }
                Justification::KernelProved
            }
        };
        let mut t = self.clone();
        t.theorems.insert(
            sym(name),
            TheoremEntry {
                schema,
                justification,
            },
        );
        Ok(t)
    }

    /// Introduce a defined constant and its defining axiom `def.<name>`.
    pub fn define(&self, def: Definition) -> Result<Theory, TheoryError> {
        let bad = |detail: String| TheoryError::InvalidDefinition {
            name: def.name.to_string(),
            detail,
        };
        if !def.definiens.is_closed() || !def.definiens.schematics().is_empty() || !def.definiens.free_vars().is_empty() {
            return Err(bad("definiens must be closed".into()));
        }
        if !is_beta_normal(&def.definiens) {
            return Err(bad("definiens must be beta-normal".into()));
        }
        if def.result != Sort::Ind && def.result != Sort::Prop {
            return Err(bad(format!("result sort {} is not Ind or Prop", def.result)));
        }
        let found = self.signature.sort_of(&def.definiens).map_err(|e| bad(e.to_string()))?;
        if found != def.sort() {
            return Err(bad(format!("definiens has sort {found}, expected {}", def.sort())));
        }
        let with_const = self.declare_constant(&def.name, def.sort())?;
        let mut t = with_const.register_axiom(&def.axiom_name(), def.axiom())?;
        t.definition_order.push(def.name.clone());
        t.definitions.insert(def.name.clone(), def);
        Ok(t)
    }

    /// Schema of an axiom or theorem, whichever carries `name`.
    pub fn schema(&self, name: &str) -> Option<&Schema> {
        self.axioms
            .get(name)
            .or_else(|| self.theorems.get(name).map(|t| &t.schema))
    }
}
