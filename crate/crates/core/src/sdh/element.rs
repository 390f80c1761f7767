use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::frobcat::TorusClass;
use crate::scalar::Rational;

/// Identifier of a projective-free stable basis class; 0 is the zero object.
pub type StableId = usize;

/// `a + b` on torus classes, dropping zero exponents.
pub fn torus_add(a: &TorusClass, b: &TorusClass) -> TorusClass {
    let mut out = a.clone();
    for (&g, &e) in b {
        let v = out.entry(g).or_insert(0);
        *v += e;
        if *v == 0 {
            out.remove(&g);
        }
    }
    out
}

pub fn torus_neg(a: &TorusClass) -> TorusClass {
    a.iter().map(|(&g, &e)| (g, -e)).collect()
}

/// `coeff * t^exponents` in the quantum torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    pub exponents: TorusClass,
    pub coeff: Rational,
}

impl TorusElement {
    pub fn one() -> Self {
        TorusElement {
            exponents: TorusClass::new(),
            coeff: Rational::one(),
        }
    }

    pub fn monomial(exponents: TorusClass) -> Self {
        TorusElement {
            exponents,
            coeff: Rational::one(),
        }
    }
}

/// Sparse combination of normal-form monomials `t^e <> [m]`, keyed by
/// `(e, m)`. Also used for `DH (x) Q[K_0]` on the comparison side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SdhElement {
    terms: BTreeMap<(TorusClass, StableId), Rational>,
}

impl SdhElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: TorusClass, m: StableId, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(e, m, c);
        x
    }

    /// `[m]` with empty torus part.
    pub fn basis(m: StableId) -> Self {
        Self::monomial(TorusClass::new(), m, Rational::one())
    }

    /// `t^e`.
    pub fn torus(e: TorusClass) -> Self {
        Self::monomial(e, 0, Rational::one())
    }

    /// The unit `[0]`.
    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn terms(&self) -> &BTreeMap<(TorusClass, StableId), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &TorusClass, m: StableId) -> Rational {
        self.terms
            .get(&(e.clone(), m))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: TorusClass, m: StableId, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (e, m);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &SdhElement) -> SdhElement {
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add_term(e.clone(), *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SdhElement) -> SdhElement {
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add_term(e.clone(), *m, -c);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> SdhElement {
        let mut out = Self::zero();
        for ((e, m), c) in &self.terms {
            out.add_term(e.clone(), *m, c * r);
        }
        out
    }
}

impl fmt::Display for SdhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((e, m), c)| {
                let t: Vec<String> = e
                    .iter()
                    .map(|(g, k)| format!("t[{}:{}]^{}", g.degree, g.vertex + 1, k))
                    .collect();
                format!("({c}) {} [{m}]", t.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse combination of stable classes in the derived Hall algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DhElement {
    terms: BTreeMap<StableId, Rational>,
}

impl DhElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(m: StableId) -> Self {
        let mut x = Self::zero();
        x.add_term(m, Rational::one());
        x
    }

    pub fn terms(&self) -> &BTreeMap<StableId, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: StableId, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &DhElement) -> DhElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> DhElement {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * r);
        }
        out
    }
}
