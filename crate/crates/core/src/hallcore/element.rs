use std::collections::BTreeMap;
use std::fmt;

use super::ClassId;
use crate::scalar::{Rational, ScalarExt};

/// Finite linear combination of isomorphism classes. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    q: u32,
    terms: BTreeMap<ClassId, ScalarExt>,
}

impl HallElement {
    pub fn zero(q: u32) -> Self {
        HallElement {
            q,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `[id]`.
    pub fn basis(q: u32, id: ClassId) -> Self {
        let mut x = Self::zero(q);
        x.add_term(id, ScalarExt::one(q));
        x
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<ClassId, ScalarExt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, id: ClassId) -> ScalarExt {
        self.terms
            .get(&id)
            .cloned()
            .unwrap_or_else(|| ScalarExt::zero(self.q))
    }

    pub fn add_term(&mut self, id: ClassId, c: ScalarExt) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&id) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&id);
        } else {
            self.terms.insert(id, sum);
        }
    }

    pub fn add(&self, other: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (&id, c) in &other.terms {
            out.add_term(id, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (&id, c) in &other.terms {
            out.add_term(id, -c);
        }
        out
    }

    pub fn scale(&self, c: &ScalarExt) -> HallElement {
        let mut out = Self::zero(self.q);
        for (&id, x) in &self.terms {
            out.add_term(id, x * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> HallElement {
        self.scale(&ScalarExt::rational(self.q, r.clone()))
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(id, c)| format!("({c})[{id}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
