use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::tree::{parse_join, parse_twisted, RootedTree, TwistedTree, UnrootedTree};
use crate::error::{Error, Result};
use crate::freelie::{add_term, parse_big};

/// Formal integer combination of order `n` trees and, for even `n`, order
/// `n/2` twisted trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSum {
    m: usize,
    order: usize,
    plain: BTreeMap<UnrootedTree, BigInt>,
    twisted: BTreeMap<TwistedTree, BigInt>,
}

impl TreeSum {
    pub fn new(m: usize, order: usize) -> Self {
        TreeSum {
            m,
            order,
            plain: BTreeMap::new(),
            twisted: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn plain_terms(&self) -> &BTreeMap<UnrootedTree, BigInt> {
        &self.plain
    }

    pub fn twisted_terms(&self) -> &BTreeMap<TwistedTree, BigInt> {
        &self.twisted
    }

    pub fn is_empty(&self) -> bool {
        self.plain.is_empty() && self.twisted.is_empty()
    }

    /// Adds `coeff * <a, b>`, folding the canonicalization sign into the
    /// coefficient.
    pub fn add_join(&mut self, a: &RootedTree, b: &RootedTree, coeff: impl Into<BigInt>) -> Result<()> {
        let c = UnrootedTree::join(a, b);
        self.add_plain(c.tree, coeff.into() * c.sign)
    }

    /// Adds a term for an already canonical tree.
    pub fn add_plain(&mut self, tree: UnrootedTree, coeff: BigInt) -> Result<()> {
        tree.check_labels(self.m)?;
        if tree.order() != self.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: tree.order(),
            });
        }
        add_term(&mut self.plain, tree, coeff);
        Ok(())
    }

    pub fn add_twisted(&mut self, body: &RootedTree, coeff: impl Into<BigInt>) -> Result<()> {
        if self.order % 2 == 1 {
            return Err(Error::TwistedInOddOrder(self.order));
        }
        body.check_labels(self.m)?;
        if 2 * body.order() != self.order {
            return Err(Error::OrderMismatch {
                expected: self.order / 2,
                found: body.order(),
            });
        }
        add_term(&mut self.twisted, TwistedTree::new(body), coeff.into());
        Ok(())
    }

    pub fn add(&self, other: &TreeSum) -> Result<TreeSum> {
        if self.m != other.m {
            return Err(Error::GeneratorMismatch(self.m, other.m));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        let mut out = self.clone();
        for (t, c) in &other.plain {
            add_term(&mut out.plain, t.clone(), c.clone());
        }
        for (t, c) in &other.twisted {
            add_term(&mut out.twisted, t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> TreeSumJson {
        TreeSumJson {
            m: self.m,
            order: self.order,
            terms: self
                .plain
                .iter()
                .map(|(t, c)| TreeTerm {
                    tree: t.to_string(),
                    coeff: JsonInt::Text(c.to_string()),
                })
                .collect(),
            twisted: self
                .twisted
                .iter()
                .map(|(t, c)| TreeTerm {
                    tree: t.to_string(),
                    coeff: JsonInt::Text(c.to_string()),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &TreeSumJson) -> Result<Self> {
        let mut out = TreeSum::new(json.m, json.order);
        for term in &json.terms {
            let (a, b) = parse_join(&term.tree)?;
            out.add_join(&a, &b, term.coeff.value()?)?;
        }
        for term in &json.twisted {
            out.add_twisted(&parse_twisted(&term.tree)?, term.coeff.value()?)?;
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

impl fmt::Display for TreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .plain
            .iter()
            .map(|(t, c)| format!("{c}*{t}"))
            .chain(self.twisted.iter().map(|(t, c)| format!("{c}*{t}")))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// An integer written either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Number(i64),
    Text(String),
}

impl JsonInt {
    pub fn value(&self) -> Result<BigInt> {
        match self {
            JsonInt::Number(n) => Ok(BigInt::from(*n)),
            JsonInt::Text(s) => parse_big(s),
        }
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt::Text(v.to_string())
    }
}

impl Default for JsonInt {
    fn default() -> Self {
        JsonInt::Number(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeTerm {
    pub tree: String,
    pub coeff: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSumJson {
    pub m: usize,
    pub order: usize,
    #[serde(default)]
    pub terms: Vec<TreeTerm>,
    #[serde(default)]
    pub twisted: Vec<TreeTerm>,
}
