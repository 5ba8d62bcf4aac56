use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::matkit::{eigh, loewner_leq, Matrix};
use crate::real::Real;
use crate::report::Relation;

/// Order in which a chain's relations are asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Loewner,
    NormScalar,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinkValue<T> {
    Matrix(Matrix<T>),
    Scalar(T),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixLink<T> {
    pub label: String,
    pub value: LinkValue<T>,
}

impl<T: Real> MatrixLink<T> {
    pub fn matrix(&self) -> Option<&Matrix<T>> {
        match &self.value {
            LinkValue::Matrix(m) => Some(m),
            LinkValue::Scalar(_) => None,
        }
    }

    pub fn scalar(&self) -> Option<T> {
        match self.value {
            LinkValue::Scalar(x) => Some(x),
            LinkValue::Matrix(_) => None,
        }
    }

    fn size(&self) -> T {
        match &self.value {
            LinkValue::Matrix(m) => m.inf_norm(),
            LinkValue::Scalar(x) => x.abs(),
        }
    }
}

/// One asserted relation between two links.
///
/// For `Le`, `value` is `λ_min(right - left)` (Loewner) or `right - left`
/// (scalar). For `Eq` it is `-‖left - right‖_∞` or `-|left - right|`. The
/// relation passes when `value ≥ -threshold`, with
/// `threshold = tol (‖left‖_∞ + ‖right‖_∞)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<T> {
    pub left: String,
    pub relation: Relation,
    pub right: String,
    pub value: T,
    pub threshold: T,
    pub passed: bool,
}

impl<T: Real> Witness<T> {
    pub fn margin(&self) -> T {
        self.value + self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixChainReport<T> {
    pub theorem: &'static str,
    pub relation: RelationKind,
    pub links: Vec<MatrixLink<T>>,
    pub witnesses: Vec<Witness<T>>,
    pub passed: bool,
    /// Observations that do not fail the chain.
    pub flags: Vec<String>,
    pub params: Map<String, Value>,
}

impl<T: Real> MatrixChainReport<T> {
    pub fn link(&self, label: &str) -> Option<&MatrixLink<T>> {
        self.links.iter().find(|l| l.label == label)
    }

    pub fn witness(&self, left: &str, right: &str) -> Option<&Witness<T>> {
        self.witnesses
            .iter()
            .find(|w| w.left == left && w.right == right)
    }

    /// Smallest `value + threshold` over the witnesses.
    pub fn min_margin(&self) -> T {
        self.witnesses
            .iter()
            .map(Witness::margin)
            .fold(T::infinity(), T::min)
    }

    pub fn to_json(&self) -> Value {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "left": w.left,
                    "relation": w.relation,
                    "right": w.right,
                    "value": f(w.value),
                    "threshold": f(w.threshold),
                    "passed": w.passed,
                })
            })
            .collect();
        let mut out = json!({
            "theorem": self.theorem,
            "relation": self.relation,
            "witnesses": witnesses,
            "passed": self.passed,
            "params": self.params,
        });
        if !self.flags.is_empty() {
            out["flags"] = json!(self.flags);
        }
        out
    }
}

pub(crate) struct ChainBuilder<T> {
    theorem: &'static str,
    relation: RelationKind,
    tol: T,
    links: Vec<MatrixLink<T>>,
    witnesses: Vec<Witness<T>>,
    flags: Vec<String>,
    params: Map<String, Value>,
}

impl<T: Real> ChainBuilder<T> {
    pub fn new(theorem: &'static str, relation: RelationKind, tol: T) -> Self {
        let mut params = Map::new();
        params.insert("tol".into(), json!(tol.to_f64()));
        Self {
            theorem,
            relation,
            tol,
            links: Vec::new(),
            witnesses: Vec::new(),
            flags: Vec::new(),
            params,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn flag(&mut self, note: String) {
        self.flags.push(note);
    }

    pub fn matrix(&mut self, label: &str, m: Matrix<T>) -> usize {
        self.push(label, LinkValue::Matrix(m))
    }

    pub fn scalar(&mut self, label: &str, x: T) -> usize {
        self.push(label, LinkValue::Scalar(x))
    }

    fn push(&mut self, label: &str, value: LinkValue<T>) -> usize {
        self.links.push(MatrixLink {
            label: label.into(),
            value,
        });
        self.links.len() - 1
    }

    /// Asserts `links[i] ≤ links[j]`.
    pub fn le(&mut self, i: usize, j: usize) -> Result<&mut Self> {
        let (value, threshold) = match (&self.links[i].value, &self.links[j].value) {
            (LinkValue::Matrix(x), LinkValue::Matrix(y)) => {
                let w = loewner_leq(x, y, self.tol)?;
                (w.min_eig, w.threshold)
            }
            (LinkValue::Scalar(x), LinkValue::Scalar(y)) => {
                (*y - *x, self.tol * (x.abs() + y.abs()))
            }
            _ => unreachable!("relations compare links of one kind"),
        };
        self.record(i, Relation::Le, j, value, threshold);
        Ok(self)
    }

    /// Asserts `links[i] = links[j]`.
    pub fn eq(&mut self, i: usize, j: usize) -> &mut Self {
        let value = match (&self.links[i].value, &self.links[j].value) {
            (LinkValue::Matrix(x), LinkValue::Matrix(y)) => -(x - y).inf_norm(),
            (LinkValue::Scalar(x), LinkValue::Scalar(y)) => -(*x - *y).abs(),
            _ => unreachable!("relations compare links of one kind"),
        };
        let threshold = self.tol * (self.links[i].size() + self.links[j].size());
        self.record(i, Relation::Eq, j, value, threshold);
        self
    }

    /// Flags `m` (labelled `what`) when its smallest eigenvalue falls below
    /// `-tol scale`.
    pub fn flag_if_not_psd(&mut self, what: String, m: &Matrix<T>, scale: T) -> Result<()> {
        let min = eigh(m)?.min();
        if min < -self.tol * scale {
            self.flag(format!("{what} has eigenvalue {min:e}"));
        }
        Ok(())
    }

    fn record(&mut self, i: usize, relation: Relation, j: usize, value: T, threshold: T) {
        self.witnesses.push(Witness {
            left: self.links[i].label.clone(),
            relation,
            right: self.links[j].label.clone(),
            value,
            threshold,
            passed: value >= -threshold,
        });
    }

    pub fn finish(self) -> MatrixChainReport<T> {
        MatrixChainReport {
            theorem: self.theorem,
            relation: self.relation,
            passed: self.witnesses.iter().all(|w| w.passed),
            links: self.links,
            witnesses: self.witnesses,
            flags: self.flags,
            params: self.params,
        }
    }
}
