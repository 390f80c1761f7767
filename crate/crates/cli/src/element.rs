//! Element files: sparse linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::path::Path;

use hallforge::frobcat::{Gen, TorusClass};
use hallforge::hallcore::{HallAlgebra, HallBackend, HallElement};
use hallforge::scalar::{format_rational, parse_rational, Rational, ScalarExt};
use hallforge::sdh::{DhElement, Sdh, SdhElement};
use hallforge::HallError;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::spec::FORMAT_VERSION;
use crate::{Algebra, CliError};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub terms: Vec<Term>,
    /// Canonical encodings of the class ids used in `terms`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, String>,
}

/// `coeff (+ coeff_v sqrt(q)) t^exponents [class]`. Inputs may name the
/// object by its encoding instead of a class id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exponents: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_v: Option<String>,
}

fn contract(msg: impl Into<String>) -> CliError {
    CliError::from(HallError::Contract(msg.into()))
}

/// `"degree:vertex"` with the vertex numbered from 1.
pub fn gen_name(g: Gen) -> String {
    format!("{}:{}", g.degree, g.vertex + 1)
}

pub fn parse_gen(name: &str) -> Result<Gen, CliError> {
    let bad = || contract(format!("malformed generator {name:?}"));
    let (d, v) = name.split_once(':').ok_or_else(bad)?;
    let vertex: usize = v.trim().parse().map_err(|_| bad())?;
    if vertex == 0 {
        return Err(bad());
    }
    Ok(Gen {
        degree: d.trim().parse().map_err(|_| bad())?,
        vertex: vertex - 1,
    })
}

fn parse_coeff(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| contract(format!("malformed rational {s:?}")))
}

fn torus_from(names: &BTreeMap<String, i64>) -> Result<TorusClass, CliError> {
    let mut t = TorusClass::new();
    for (name, &e) in names {
        if e != 0 {
            *t.entry(parse_gen(name)?).or_insert(0) += e;
        }
    }
    t.retain(|_, e| *e != 0);
    Ok(t)
}

fn torus_names(t: &TorusClass) -> BTreeMap<String, i64> {
    t.iter().map(|(&g, &e)| (gen_name(g), e)).collect()
}

impl ElementFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| contract(format!("cannot read {}: {e}", path.display())))?;
        let f: ElementFile = serde_json::from_str(&text)
            .map_err(|e| contract(format!("element file {}: {e}", path.display())))?;
        if f.format_version != FORMAT_VERSION {
            return Err(contract(format!(
                "unsupported element format_version {}",
                f.format_version
            )));
        }
        Ok(f)
    }

    fn encoding(&self, t: &Term) -> Result<Option<String>, CliError> {
        if let Some(o) = &t.object {
            return Ok(Some(o.clone()));
        }
        match t.class {
            None => Err(contract("term names neither a class nor an object")),
            Some(id) => match self.classes.get(&id.to_string()) {
                Some(e) => Ok(Some(e.clone())),
                None if id == 0 => Ok(None),
                None => Err(contract(format!("class {id} has no encoding"))),
            },
        }
    }

    fn plain_coeff(t: &Term) -> Result<Rational, CliError> {
        if t.coeff_v.as_deref().is_some_and(|v| !parse_rational(v).is_some_and(|r| r.is_zero())) {
            return Err(contract("sqrt(q) coefficients only occur in the twisted Hall algebra"));
        }
        parse_coeff(&t.coeff)
    }

    fn no_torus(t: &Term) -> Result<(), CliError> {
        if t.exponents.values().any(|&e| e != 0) {
            return Err(contract("torus exponents only occur in semi-derived algebras"));
        }
        Ok(())
    }

    pub fn to_hall<B: HallBackend>(&self, h: &HallAlgebra<B>) -> Result<HallElement, CliError> {
        let q = h.q();
        let mut out = HallElement::zero(q);
        for t in &self.terms {
            Self::no_torus(t)?;
            let id = match self.encoding(t)? {
                Some(e) => h.register(&h.backend().decode(&e)?)?,
                None => 0,
            };
            let v = match &t.coeff_v {
                Some(v) => parse_coeff(v)?,
                None => Rational::zero(),
            };
            out.add_term(id, ScalarExt::new(q, parse_coeff(&t.coeff)?, v));
        }
        Ok(out)
    }

    pub fn to_sdh(&self, s: &Sdh) -> Result<SdhElement, CliError> {
        let mut out = SdhElement::zero();
        for t in &self.terms {
            let c = Self::plain_coeff(t)?;
            let e = torus_from(&t.exponents)?;
            let base = match self.encoding(t)? {
                Some(enc) => s.normalize(&s.category().decode(&enc)?)?,
                None => SdhElement::one(),
            };
            out = out.add(&s.torus_left(&e, &base)?.scale(&c));
        }
        Ok(out)
    }

    pub fn to_dh(&self, s: &Sdh) -> Result<DhElement, CliError> {
        let mut out = DhElement::zero();
        for t in &self.terms {
            Self::no_torus(t)?;
            let c = Self::plain_coeff(t)?;
            let id = match self.encoding(t)? {
                Some(enc) => s.normal_form(&s.category().decode(&enc)?)?.1,
                None => 0,
            };
            out.add_term(id, c);
        }
        Ok(out)
    }

    pub fn from_hall<B: HallBackend>(
        h: &HallAlgebra<B>,
        algebra: Algebra,
        x: &HallElement,
    ) -> Result<Self, CliError> {
        let mut f = Self::new(algebra);
        for (&id, c) in x.terms() {
            f.classes.insert(id.to_string(), h.encode_class(id)?);
            f.terms.push(Term {
                class: Some(id),
                coeff: format_rational(c.rational_part()),
                coeff_v: (!c.v_part().is_zero()).then(|| format_rational(c.v_part())),
                ..Default::default()
            });
        }
        Ok(f)
    }

    pub fn from_sdh(s: &Sdh, algebra: Algebra, x: &SdhElement) -> Result<Self, CliError> {
        let mut f = Self::new(algebra);
        for ((e, m), c) in x.terms() {
            f.classes.insert(m.to_string(), s.encode_stable(*m)?);
            f.terms.push(Term {
                exponents: torus_names(e),
                class: Some(*m),
                coeff: format_rational(c),
                ..Default::default()
            });
        }
        Ok(f)
    }

    pub fn from_dh(s: &Sdh, x: &DhElement) -> Result<Self, CliError> {
        let mut f = Self::new(Algebra::Dh);
        for (m, c) in x.terms() {
            f.classes.insert(m.to_string(), s.encode_stable(*m)?);
            f.terms.push(Term {
                class: Some(*m),
                coeff: format_rational(c),
                ..Default::default()
            });
        }
        Ok(f)
    }

    fn new(algebra: Algebra) -> Self {
        ElementFile {
            format_version: FORMAT_VERSION,
            algebra: Some(algebra.name().to_string()),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("element files serialize");
        s.push('\n');
        s
    }
}
