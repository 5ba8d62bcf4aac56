//! Evaluated inequality chains with signed slacks.

use serde::Serialize;

use crate::real::Real;

/// One evaluated bound in a chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Link<T> {
    pub label: String,
    pub value: T,
}

/// Either side of an asserted relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Term {
    Lhs,
    Link(usize),
}

/// `Ge`: left ≥ right. `Le`: left ≤ right. `Eq`: left = right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

/// An asserted relation and its signed slack (≥ 0 means satisfied;
/// equalities carry `-|left - right|`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slack<T> {
    pub left: Term,
    pub relation: Relation,
    pub right: Term,
    pub value: T,
}

/// Evaluated left side, every bound of a chain, and one slack per relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundChainReport<T> {
    pub lhs: T,
    pub links: Vec<Link<T>>,
    pub slacks: Vec<Slack<T>>,
    pub passed: bool,
    pub tol_used: T,
}

impl<T: Real> BoundChainReport<T> {
    pub fn link(&self, label: &str) -> Option<T> {
        self.links
            .iter()
            .find(|l| l.label == label)
            .map(|l| l.value)
    }

    /// Smallest slack in the chain, or `+inf` for an empty chain.
    pub fn min_slack(&self) -> T {
        self.slacks
            .iter()
            .map(|s| s.value)
            .fold(T::infinity(), T::min)
    }

    /// Slack of the relation whose right-hand side is the named link.
    pub fn slack_against(&self, label: &str) -> Option<T> {
        let idx = self.links.iter().position(|l| l.label == label)?;
        self.slacks
            .iter()
            .find(|s| s.right == Term::Link(idx))
            .map(|s| s.value)
    }

    /// Human-readable form of a relation, e.g. `lhs >= young_lower`.
    pub fn describe(&self, slack: &Slack<T>) -> String {
        let name = |t: Term| match t {
            Term::Lhs => "lhs".to_string(),
            Term::Link(i) => self.links[i].label.clone(),
        };
        let op = match slack.relation {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "==",
        };
        format!("{} {} {}", name(slack.left), op, name(slack.right))
    }
}

/// Assembles a [`BoundChainReport`].
#[derive(Debug, Clone)]
pub struct ChainBuilder<T> {
    lhs: T,
    tol: T,
    links: Vec<Link<T>>,
    slacks: Vec<Slack<T>>,
}

impl<T: Real> ChainBuilder<T> {
    pub fn new(lhs: T, tol: T) -> Self {
        Self {
            lhs,
            tol,
            links: Vec::new(),
            slacks: Vec::new(),
        }
    }

    pub fn link(&mut self, label: impl Into<String>, value: T) -> Term {
        self.links.push(Link {
            label: label.into(),
            value,
        });
        Term::Link(self.links.len() - 1)
    }

    fn value(&self, t: Term) -> T {
        match t {
            Term::Lhs => self.lhs,
            Term::Link(i) => self.links[i].value,
        }
    }

    fn push(&mut self, left: Term, relation: Relation, right: Term) -> &mut Self {
        let (l, r) = (self.value(left), self.value(right));
        let value = match relation {
            Relation::Ge => l - r,
            Relation::Le => r - l,
            Relation::Eq => -(l - r).abs(),
        };
        self.slacks.push(Slack {
            left,
            relation,
            right,
            value,
        });
        self
    }

    pub fn ge(&mut self, left: Term, right: Term) -> &mut Self {
        self.push(left, Relation::Ge, right)
    }

    pub fn le(&mut self, left: Term, right: Term) -> &mut Self {
        self.push(left, Relation::Le, right)
    }

    pub fn eq(&mut self, left: Term, right: Term) -> &mut Self {
        self.push(left, Relation::Eq, right)
    }

    pub fn finish(self) -> BoundChainReport<T> {
        let passed = self.slacks.iter().all(|s| s.value >= -self.tol);
        BoundChainReport {
            lhs: self.lhs,
            links: self.links,
            slacks: self.slacks,
            passed,
            tol_used: self.tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slacks_follow_relation_direction() {
        let mut b = ChainBuilder::new(2.0_f64, 1e-12);
        let lo = b.link("lo", 1.5);
        let hi = b.link("hi", 3.0);
        let hi2 = b.link("hi2", 3.0 + 1e-13);
        b.ge(Term::Lhs, lo).le(Term::Lhs, hi).eq(hi, hi2);
        let r = b.finish();
        assert!(r.passed);
        assert_eq!(r.slacks[0].value, 0.5);
        assert_eq!(r.slacks[1].value, 1.0);
        assert!(r.slacks[2].value <= 0.0);
        assert_eq!(r.describe(&r.slacks[0]), "lhs >= lo");
        assert_eq!(r.slack_against("hi"), Some(1.0));
        assert_eq!(r.min_slack(), r.slacks[2].value);
    }

    #[test]
    fn violation_beyond_tolerance_fails() {
        let mut b = ChainBuilder::new(1.0_f64, 1e-12);
        let lo = b.link("lo", 1.0 + 1e-9);
        b.ge(Term::Lhs, lo);
        assert!(!b.finish().passed);
    }
}
