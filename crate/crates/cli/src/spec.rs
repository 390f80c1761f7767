//! Category specification files.

use std::path::Path;

use hallforge::frobcat::{ComplexCategory, ComplexDimCap, ComplexKind};
use hallforge::hallcore::{AbelianBackend, HallAlgebra};
use hallforge::quiverrep::{Quiver, RepCategory};
use hallforge::sdh::Sdh;
use hallforge::{Caps, Exec, Field, HallError};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub format_version: u32,
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    pub backend: BackendSpec,
    #[serde(default)]
    pub caps: CapsSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub q: u32,
}

/// Vertices are numbered from 1; an arrow is `[tail, head]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BackendSpec {
    Abelian,
    Bounded {
        window: [i64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        headroom: Option<i64>,
    },
    Periodic {
        period: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    pub max_ext: Option<u128>,
    pub max_hom: Option<u128>,
    pub max_endo: Option<u128>,
    pub max_enum: Option<u128>,
    /// Default enumeration cap, in `--dim-cap` syntax.
    pub dim_cap: Option<String>,
}

/// Enumeration bound for a table or verification grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimCap {
    /// Per-vertex dimension bound for representations.
    Vector(Vec<usize>),
    /// Projective multiplicity bounds for complexes.
    Complex(ComplexDimCap),
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::from(HallError::InvalidConfig(msg.into()))
}

impl CategorySpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: CategorySpec =
            serde_json::from_str(text).map_err(|e| invalid(format!("spec file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.format_version != FORMAT_VERSION {
            return Err(invalid(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        self.field()?;
        self.quiver()?;
        match self.backend {
            BackendSpec::Abelian => {}
            BackendSpec::Bounded { window, headroom } => {
                if window[0] > window[1] {
                    return Err(invalid("window must satisfy lo <= hi"));
                }
                if headroom.is_some_and(|h| h < 1) {
                    return Err(invalid("headroom must be positive"));
                }
            }
            BackendSpec::Periodic { period } => {
                if period < 2 {
                    return Err(invalid("period must be at least 2"));
                }
            }
        }
        let caps = self.caps();
        if [caps.max_ext, caps.max_hom, caps.max_endo, caps.max_enum].contains(&0) {
            return Err(invalid("caps must be positive"));
        }
        if let Some(c) = &self.caps.dim_cap {
            self.parse_dim_cap(c)?;
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field, CliError> {
        Ok(Field::new(self.field.q)?)
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        let n = self.quiver.vertices;
        if n == 0 {
            return Err(invalid("quiver needs at least one vertex"));
        }
        let mut arrows = Vec::new();
        for &[t, h] in &self.quiver.arrows {
            if t == 0 || h == 0 || t > n || h > n {
                return Err(invalid(format!("arrow [{t}, {h}] names a missing vertex")));
            }
            arrows.push((t - 1, h - 1));
        }
        Ok(Quiver::new(n, arrows)?)
    }

    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_ext: self.caps.max_ext.unwrap_or(d.max_ext),
            max_hom: self.caps.max_hom.unwrap_or(d.max_hom),
            max_endo: self.caps.max_endo.unwrap_or(d.max_endo),
            max_enum: self.caps.max_enum.unwrap_or(d.max_enum),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.backend == BackendSpec::Abelian
    }

    /// Parse `--dim-cap`: `"1,1"` (or a single bound for every vertex) on
    /// the abelian backend; `"2"`, `"total=2"` or `"2,total=3"` on complex
    /// backends.
    pub fn parse_dim_cap(&self, text: &str) -> Result<DimCap, CliError> {
        let bad = || invalid(format!("malformed dim cap {text:?}"));
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if self.is_abelian() {
            let nums = parts
                .iter()
                .map(|p| p.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            let n = self.quiver.vertices;
            return match nums.len() {
                1 => Ok(DimCap::Vector(vec![nums[0]; n])),
                k if k == n => Ok(DimCap::Vector(nums)),
                _ => Err(invalid(format!("dim cap {text:?} needs {n} entries"))),
            };
        }
        let mut per = None;
        let mut total = None;
        for p in parts {
            match p.strip_prefix("total=") {
                Some(t) => total = Some(t.parse::<usize>().map_err(|_| bad())?),
                None => per = Some(p.parse::<usize>().map_err(|_| bad())?),
            }
        }
        match (per, total) {
            (Some(p), t) => Ok(DimCap::Complex(ComplexDimCap {
                per_degree: p,
                total: t,
            })),
            (None, Some(t)) => Ok(DimCap::Complex(ComplexDimCap::total(t))),
            (None, None) => Err(bad()),
        }
    }

    /// `--dim-cap` if given, else the spec's default, else 1 everywhere.
    pub fn dim_cap(&self, arg: Option<&str>) -> Result<DimCap, CliError> {
        match arg.or(self.caps.dim_cap.as_deref()) {
            Some(t) => self.parse_dim_cap(t),
            None => self.parse_dim_cap("1"),
        }
    }

    fn complex_kind(&self) -> Option<ComplexKind> {
        match self.backend {
            BackendSpec::Abelian => None,
            BackendSpec::Bounded { window, headroom } => {
                let mut k = ComplexKind::bounded(window[0], window[1]);
                if let (ComplexKind::Bounded { headroom: h, .. }, Some(v)) = (&mut k, headroom) {
                    *h = v;
                }
                Some(k)
            }
            BackendSpec::Periodic { period } => Some(ComplexKind::periodic(period)),
        }
    }

    pub fn build(&self, exec: Exec) -> Result<Workspace, CliError> {
        let caps = self.caps();
        let field = self.field()?;
        let quiver = self.quiver()?;
        Ok(match self.complex_kind() {
            None => Workspace::Abelian(HallAlgebra::new(
                AbelianBackend::new(RepCategory::new(quiver, field, caps)),
                exec,
            )?),
            Some(kind) => {
                Workspace::Complex(Sdh::new(ComplexCategory::new(kind, quiver, field, caps)?, exec)?)
            }
        })
    }
}

/// The algebras available for a specification.
#[allow(clippy::large_enum_variant)]
pub enum Workspace {
    Abelian(HallAlgebra<AbelianBackend>),
    Complex(Sdh),
}

impl Workspace {
    pub fn describe(&self) -> String {
        use hallforge::hallcore::HallBackend;
        match self {
            Workspace::Abelian(h) => h.backend().describe(),
            Workspace::Complex(s) => s.category().describe(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(backend: &str) -> String {
        format!(
            r#"{{"format_version": 1, "field": {{"q": 2}},
                "quiver": {{"vertices": 2, "arrows": [[1, 2]]}},
                "backend": {backend}}}"#
        )
    }

    #[test]
    fn parses_backends() {
        let s = CategorySpec::from_json(&spec(r#"{"kind": "abelian"}"#)).unwrap();
        assert!(s.is_abelian());
        let s = CategorySpec::from_json(&spec(r#"{"kind": "bounded", "window": [0, 1]}"#)).unwrap();
        assert_eq!(s.complex_kind(), Some(ComplexKind::bounded(0, 1)));
        let s = CategorySpec::from_json(&spec(r#"{"kind": "periodic", "period": 3}"#)).unwrap();
        assert_eq!(s.complex_kind(), Some(ComplexKind::periodic(3)));
    }

    #[test]
    fn rejects_invalid_specs() {
        for backend in [
            r#"{"kind": "periodic", "period": 1}"#,
            r#"{"kind": "bounded", "window": [2, 1]}"#,
            r#"{"kind": "cyclic"}"#,
        ] {
            assert!(CategorySpec::from_json(&spec(backend)).is_err(), "{backend}");
        }
        let bad_q = spec(r#"{"kind": "abelian"}"#).replace("\"q\": 2", "\"q\": 4");
        assert_eq!(CategorySpec::from_json(&bad_q).unwrap_err().code, 2);
        let cyclic = spec(r#"{"kind": "abelian"}"#).replace("[[1, 2]]", "[[1, 2], [2, 1]]");
        assert!(CategorySpec::from_json(&cyclic).is_err());
        let missing = spec(r#"{"kind": "abelian"}"#).replace("[[1, 2]]", "[[1, 3]]");
        assert!(CategorySpec::from_json(&missing).is_err());
    }

    #[test]
    fn dim_cap_syntax() {
        let a = CategorySpec::from_json(&spec(r#"{"kind": "abelian"}"#)).unwrap();
        assert_eq!(a.parse_dim_cap("1,2").unwrap(), DimCap::Vector(vec![1, 2]));
        assert_eq!(a.parse_dim_cap("2").unwrap(), DimCap::Vector(vec![2, 2]));
        assert!(a.parse_dim_cap("1,2,3").is_err());
        let c = CategorySpec::from_json(&spec(r#"{"kind": "periodic", "period": 2}"#)).unwrap();
        assert_eq!(
            c.parse_dim_cap("2").unwrap(),
            DimCap::Complex(ComplexDimCap::per_degree(2))
        );
        assert_eq!(
            c.parse_dim_cap("total=2").unwrap(),
            DimCap::Complex(ComplexDimCap::total(2))
        );
        assert_eq!(
            c.parse_dim_cap("2,total=3").unwrap(),
            DimCap::Complex(ComplexDimCap {
                per_degree: 2,
                total: Some(3)
            })
        );
    }
}
