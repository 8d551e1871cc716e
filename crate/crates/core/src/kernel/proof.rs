use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::Sequent;
use crate::lfol::{Expr, Symbol};

/// Simultaneous instantiation of schematic symbols, keyed by symbol name.
pub type Instantiation = BTreeMap<Symbol, Expr>;

/// An inference step together with the data it needs to be checked.
#[derive(Clone, Debug)]
pub enum Rule {
    Hypothesis { phi: Expr },
    Cut { phi: Expr },
    Weakening,
    Restate,
    InstSchema { inst: Instantiation },
    LeftAnd { phi: Expr, psi: Expr },
    RightAnd { phi: Expr, psi: Expr },
    LeftOr { phi: Expr, psi: Expr },
    RightOr { phi: Expr, psi: Expr },
    LeftImplies { phi: Expr, psi: Expr },
    RightImplies { phi: Expr, psi: Expr },
    LeftIff { phi: Expr, psi: Expr },
    RightIff { phi: Expr, psi: Expr },
    LeftNot { phi: Expr },
    RightNot { phi: Expr },
    LeftForall { body: Expr, term: Expr },
    RightForall { body: Expr, eigen: Symbol },
    LeftExists { body: Expr, eigen: Symbol },
    RightExists { body: Expr, term: Expr },
    LeftSubstEq { lhs: Expr, rhs: Expr, ctx: Expr },
    RightSubstEq { lhs: Expr, rhs: Expr, ctx: Expr },
    EpsilonIntro { body: Expr },
    ByAxiom { name: Symbol, inst: Instantiation },
    ByTheorem { name: Symbol, inst: Instantiation },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    Hypothesis,
    Cut,
    Weakening,
    Restate,
    InstSchema,
    LeftAnd,
    RightAnd,
    LeftOr,
    RightOr,
    LeftImplies,
    RightImplies,
    LeftIff,
    RightIff,
    LeftNot,
    RightNot,
    LeftForall,
    RightForall,
    LeftExists,
    RightExists,
    LeftSubstEq,
    RightSubstEq,
    EpsilonIntro,
    ByAxiom,
    ByTheorem,
}

impl RuleTag {
    pub const ALL: [RuleTag; 24] = [
        RuleTag::Hypothesis,
        RuleTag::Cut,
        RuleTag::Weakening,
        RuleTag::Restate,
        RuleTag::InstSchema,
        RuleTag::LeftAnd,
        RuleTag::RightAnd,
        RuleTag::LeftOr,
        RuleTag::RightOr,
        RuleTag::LeftImplies,
        RuleTag::RightImplies,
        RuleTag::LeftIff,
        RuleTag::RightIff,
        RuleTag::LeftNot,
        RuleTag::RightNot,
        RuleTag::LeftForall,
        RuleTag::RightForall,
        RuleTag::LeftExists,
        RuleTag::RightExists,
        RuleTag::LeftSubstEq,
        RuleTag::RightSubstEq,
        RuleTag::EpsilonIntro,
        RuleTag::ByAxiom,
        RuleTag::ByTheorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Hypothesis => "Hypothesis",
            RuleTag::Cut => "Cut",
            RuleTag::Weakening => "Weakening",
            RuleTag::Restate => "Restate",
            RuleTag::InstSchema => "InstSchema",
            RuleTag::LeftAnd => "LeftAnd",
            RuleTag::RightAnd => "RightAnd",
            RuleTag::LeftOr => "LeftOr",
            RuleTag::RightOr => "RightOr",
            RuleTag::LeftImplies => "LeftImplies",
            RuleTag::RightImplies => "RightImplies",
            RuleTag::LeftIff => "LeftIff",
            RuleTag::RightIff => "RightIff",
            RuleTag::LeftNot => "LeftNot",
            RuleTag::RightNot => "RightNot",
            RuleTag::LeftForall => "LeftForall",
            RuleTag::RightForall => "RightForall",
            RuleTag::LeftExists => "LeftExists",
            RuleTag::RightExists => "RightExists",
            RuleTag::LeftSubstEq => "LeftSubstEq",
            RuleTag::RightSubstEq => "RightSubstEq",
            RuleTag::EpsilonIntro => "EpsilonIntro",
            RuleTag::ByAxiom => "ByAxiom",
            RuleTag::ByTheorem => "ByTheorem",
        }
    }

    /// Number of premises the rule takes.
    pub fn premise_count(self) -> usize {
        match self {
            RuleTag::Hypothesis | RuleTag::ByAxiom | RuleTag::ByTheorem => 0,
            RuleTag::Cut
            | RuleTag::RightAnd
            | RuleTag::LeftOr
            | RuleTag::LeftImplies
            | RuleTag::RightIff => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

impl Rule {
    pub fn tag(&self) -> RuleTag {
        match self {
            Rule::Hypothesis { .. } => RuleTag::Hypothesis,
            Rule::Cut { .. } => RuleTag::Cut,
            Rule::Weakening => RuleTag::Weakening,
            Rule::Restate => RuleTag::Restate,
            Rule::InstSchema { .. } => RuleTag::InstSchema,
            Rule::LeftAnd { .. } => RuleTag::LeftAnd,
            Rule::RightAnd { .. } => RuleTag::RightAnd,
            Rule::LeftOr { .. } => RuleTag::LeftOr,
            Rule::RightOr { .. } => RuleTag::RightOr,
            Rule::LeftImplies { .. } => RuleTag::LeftImplies,
            Rule::RightImplies { .. } => RuleTag::RightImplies,
            Rule::LeftIff { .. } => RuleTag::LeftIff,
            Rule::RightIff { .. } => RuleTag::RightIff,
            Rule::LeftNot { .. } => RuleTag::LeftNot,
            Rule::RightNot { .. } => RuleTag::RightNot,
            Rule::LeftForall { .. } => RuleTag::LeftForall,
            Rule::RightForall { .. } => RuleTag::RightForall,
            Rule::LeftExists { .. } => RuleTag::LeftExists,
            Rule::RightExists { .. } => RuleTag::RightExists,
            Rule::LeftSubstEq { .. } => RuleTag::LeftSubstEq,
            Rule::RightSubstEq { .. } => RuleTag::RightSubstEq,
            Rule::EpsilonIntro { .. } => RuleTag::EpsilonIntro,
            Rule::ByAxiom { .. } => RuleTag::ByAxiom,
            Rule::ByTheorem { .. } => RuleTag::ByTheorem,
        }
    }
}

/// A proof: a conclusion justified by a rule from the conclusions of its premises.
#[derive(Clone, Debug)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            rule,
            conclusion,
            premises,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::node_count).sum::<usize>()
    }

    /// Visit every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a ProofTree)) {
        f(self);
        for p in &self.premises {
            p.walk(f);
        }
    }

    /// Names of all theorems referenced by `ByTheorem` leaves.
    pub fn theorems_used(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            if let Rule::ByTheorem { name, .. } = &n.rule {
                out.push(&**name);
            }
        });
        out
    }
}
