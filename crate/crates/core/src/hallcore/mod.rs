//! Hall algebras over finitary exact backends.
//!
//! `[A] <> [C] = sum_B |Ext^1(A, C)_B| / |Hom(A, C)| [B]`, where
//! `Ext^1(A, C)` classifies conflations `C >-> B ->> A`.

mod algebra;
mod element;

use crate::config::Caps;
use crate::error::{HallError, Result};
use crate::ffla::Field;
use crate::frobcat::{Complex, ComplexCategory, ComplexKind};
use crate::quiverrep::{IndecRegistry, IsoKey, Rep, RepCategory};

pub use algebra::{AssociativityReport, CacheRecord, HallAlgebra, StructureEntry};
pub use element::HallElement;

pub type ClassId = usize;

/// What a Hall algebra needs from an exact category.
pub trait HallBackend: Send + Sync {
    type Object: Clone + Send + Sync + std::fmt::Debug + PartialEq;

    fn field(&self) -> Field;
    fn caps(&self) -> &Caps;
    fn zero_object(&self) -> Self::Object;
    fn hom_dim(&self, a: &Self::Object, b: &Self::Object) -> Result<usize>;
    fn ext1_dim(&self, a: &Self::Object, c: &Self::Object) -> Result<usize>;
    /// One middle term per class of `Ext^1(a, c)`, zero class first.
    fn ext1_middles(&self, a: &Self::Object, c: &Self::Object) -> Result<Vec<Self::Object>>;
    fn iso_key(&self, x: &Self::Object) -> Result<IsoKey>;
    fn direct_sum(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    /// Additive grading: dimension vector, per degree for complexes.
    fn grade(&self, x: &Self::Object) -> Vec<usize>;
    /// `e` with `<a, b> = q^e`; errors when the Euler form is undefined.
    fn euler_exponent(&self, a: &Self::Object, b: &Self::Object) -> Result<i64>;
    fn encode(&self, x: &Self::Object) -> String;
    fn decode(&self, text: &str) -> Result<Self::Object>;
    /// Stable description of the configuration, for cache invalidation.
    fn describe(&self) -> String;
}

/// Representations of an acyclic quiver.
#[derive(Debug)]
pub struct AbelianBackend {
    cat: RepCategory,
    registry: IndecRegistry,
}

impl AbelianBackend {
    pub fn new(cat: RepCategory) -> Self {
        AbelianBackend {
            cat,
            registry: IndecRegistry::new(),
        }
    }

    pub fn category(&self) -> &RepCategory {
        &self.cat
    }
}

impl HallBackend for AbelianBackend {
    type Object = Rep;

    fn field(&self) -> Field {
        self.cat.field()
    }

    fn caps(&self) -> &Caps {
        self.cat.caps()
    }

    fn zero_object(&self) -> Rep {
        self.cat.zero()
    }

    fn hom_dim(&self, a: &Rep, b: &Rep) -> Result<usize> {
        self.cat.hom_dim(a, b)
    }

    fn ext1_dim(&self, a: &Rep, c: &Rep) -> Result<usize> {
        self.cat.ext1_dim(a, c)
    }

    fn ext1_middles(&self, a: &Rep, c: &Rep) -> Result<Vec<Rep>> {
        self.cat
            .ext1_space(a, c)?
            .classes
            .iter()
            .map(|f| self.cat.middle_term(a, c, f))
            .collect()
    }

    fn iso_key(&self, x: &Rep) -> Result<IsoKey> {
        self.cat.iso_key(x, &self.registry)
    }

    fn direct_sum(&self, a: &Rep, b: &Rep) -> Rep {
        self.cat.direct_sum(a, b)
    }

    fn grade(&self, x: &Rep) -> Vec<usize> {
        x.dims().to_vec()
    }

    fn euler_exponent(&self, a: &Rep, b: &Rep) -> Result<i64> {
        Ok(self.cat.euler_exponent(a.dims(), b.dims()))
    }

    fn encode(&self, x: &Rep) -> String {
        x.encode()
    }

    fn decode(&self, text: &str) -> Result<Rep> {
        self.cat.decode(text)
    }

    fn describe(&self) -> String {
        format!(
            "abelian;p={};quiver={:?};caps={:?}",
            self.cat.field().p(),
            self.cat.quiver(),
            self.cat.caps()
        )
    }
}

impl HallBackend for ComplexCategory {
    type Object = Complex;

    fn field(&self) -> Field {
        ComplexCategory::field(self)
    }

    fn caps(&self) -> &Caps {
        ComplexCategory::caps(self)
    }

    fn zero_object(&self) -> Complex {
        self.zero()
    }

    fn hom_dim(&self, a: &Complex, b: &Complex) -> Result<usize> {
        ComplexCategory::hom_dim(self, a, b)
    }

    fn ext1_dim(&self, a: &Complex, c: &Complex) -> Result<usize> {
        ComplexCategory::ext1_dim(self, a, c)
    }

    fn ext1_middles(&self, a: &Complex, c: &Complex) -> Result<Vec<Complex>> {
        self.ext1_classes(a, c)?
            .iter()
            .map(|f| self.middle_term_cx(a, c, f))
            .collect()
    }

    fn iso_key(&self, x: &Complex) -> Result<IsoKey> {
        ComplexCategory::iso_key(self, x)
    }

    fn direct_sum(&self, a: &Complex, b: &Complex) -> Complex {
        ComplexCategory::direct_sum(self, a, b)
    }

    fn grade(&self, x: &Complex) -> Vec<usize> {
        x.flat().dims().to_vec()
    }

    /// `<a, b> = prod_{i >= 0} |Ext^i(a, b)|^{(-1)^i}`, a finite product for
    /// bounded complexes.
    fn euler_exponent(&self, a: &Complex, b: &Complex) -> Result<i64> {
        if self.is_periodic() {
            return Err(HallError::EulerUndefined(
                "the alternating Ext product of periodic complexes does not terminate".into(),
            ));
        }
        let mut e = ComplexCategory::hom_dim(self, a, b)? as i64;
        if let (Some((a_lo, _)), Some((_, b_hi))) = (self.support(a), self.support(b)) {
            for p in 1..=(b_hi - a_lo) {
                let d = self.extp_dim(a, b, p)? as i64;
                e += if p % 2 == 0 { d } else { -d };
            }
        }
        Ok(e)
    }

    fn encode(&self, x: &Complex) -> String {
        ComplexCategory::encode(self, x)
    }

    fn decode(&self, text: &str) -> Result<Complex> {
        ComplexCategory::decode(self, text)
    }

    fn describe(&self) -> String {
        let kind = match self.kind() {
            ComplexKind::Bounded { lo, hi, headroom } => {
                format!("bounded[{lo},{hi}]+{headroom}")
            }
            ComplexKind::Periodic { period } => format!("periodic{period}"),
        };
        format!(
            "complex;{kind};p={};quiver={:?};caps={:?}",
            ComplexCategory::field(self).p(),
            self.base().quiver(),
            ComplexCategory::caps(self)
        )
    }
}

#[cfg(test)]
mod tests;
