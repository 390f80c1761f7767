//! Complexes of projective representations with degreewise split
//! conflations: bounded complexes in a degree window, and `Z/m`-periodic
//! complexes.
//!
//! A complex is stored as a representation of a larger "flattened" quiver
//! with one vertex per (degree, vertex) pair, the base arrows copied into
//! every degree, and one extra arrow per (degree, vertex) carrying the
//! differential. Chain maps are exactly morphisms of flattened
//! representations, so Hom, isomorphism and Krull-Schmidt decomposition are
//! inherited from [`RepCategory`].

mod enumerate;
mod homotopy;
mod strip;

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::config::Caps;
use crate::error::{HallError, Result};
use crate::ffla::{Field, Matrix};
use crate::quiverrep::{IndecRegistry, IsoKey, Morphism, Quiver, Rep, RepCategory};

pub use enumerate::ComplexDimCap;
pub use homotopy::GradedMap;

/// Which complexes the backend models.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    /// Complexes concentrated in `[lo, hi]`; shifts may use `headroom`
    /// extra degrees on either side.
    Bounded { lo: i64, hi: i64, headroom: i64 },
    /// Complexes indexed by `Z/period`.
    Periodic { period: usize },
}

impl ComplexKind {
    /// Bounded window with the default headroom `width + 2`.
    pub fn bounded(lo: i64, hi: i64) -> Self {
        ComplexKind::Bounded {
            lo,
            hi,
            headroom: (hi - lo).max(0) + 2,
        }
    }

    pub fn periodic(period: usize) -> Self {
        ComplexKind::Periodic { period }
    }
}

/// A contractible generator: the cone on `id_{P_vertex}` in degrees
/// `degree, degree + 1` (degrees taken mod the period when periodic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub degree: i64,
    pub vertex: usize,
}

/// Class in `K_0` of the projective-injectives: an exponent per generator.
pub type TorusClass = BTreeMap<Gen, i64>;

/// A complex of projectives, stored as a flattened representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    flat: Rep,
}

impl Complex {
    pub fn flat(&self) -> &Rep {
        &self.flat
    }

    pub fn is_zero(&self) -> bool {
        self.flat.is_zero()
    }
}

/// The Frobenius category of complexes over a base quiver.
#[derive(Debug)]
pub struct ComplexCategory {
    kind: ComplexKind,
    base: RepCategory,
    flat: RepCategory,
    /// Degree of slot 0.
    start: i64,
    slots: usize,
    registry: IndecRegistry,
    generators: RwLock<HashMap<usize, Option<Gen>>>,
}

impl ComplexCategory {
    pub fn new(kind: ComplexKind, quiver: Quiver, field: Field, caps: Caps) -> Result<Self> {
        let (start, slots) = match kind {
            ComplexKind::Bounded { lo, hi, headroom } => {
                if lo > hi {
                    return Err(HallError::InvalidConfig(format!(
                        "empty degree window [{lo}, {hi}]"
                    )));
                }
                if headroom < 0 {
                    return Err(HallError::InvalidConfig("negative headroom".into()));
                }
                (lo - headroom, (hi - lo + 1 + 2 * headroom) as usize)
            }
            ComplexKind::Periodic { period } => {
                if period < 2 {
                    return Err(HallError::InvalidConfig(format!(
                        "period {period} is below 2"
                    )));
                }
                (0, period)
            }
        };
        let n = quiver.vertex_count();
        let mut arrows = Vec::new();
        for s in 0..slots {
            for &(t, h) in quiver.arrows() {
                arrows.push((s * n + t, s * n + h));
            }
        }
        let diff_slots = match kind {
            ComplexKind::Bounded { .. } => slots - 1,
            ComplexKind::Periodic { .. } => slots,
        };
        for s in 0..diff_slots {
            for v in 0..n {
                arrows.push((s * n + v, ((s + 1) % slots) * n + v));
            }
        }
        let flat_quiver = Quiver::new_unchecked(slots * n, arrows)?;
        Ok(ComplexCategory {
            kind,
            base: RepCategory::new(quiver, field, caps),
            flat: RepCategory::new(flat_quiver, field, caps),
            start,
            slots,
            registry: IndecRegistry::new(),
            generators: RwLock::new(HashMap::new()),
        })
    }

    pub fn kind(&self) -> &ComplexKind {
        &self.kind
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, ComplexKind::Periodic { .. })
    }

    pub fn base(&self) -> &RepCategory {
        &self.base
    }

    pub fn flat(&self) -> &RepCategory {
        &self.flat
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn caps(&self) -> &Caps {
        self.base.caps()
    }

    pub fn registry(&self) -> &IndecRegistry {
        &self.registry
    }

    /// Object window: `[lo, hi]` when bounded, `[0, m - 1]` when periodic.
    pub fn window(&self) -> (i64, i64) {
        match self.kind {
            ComplexKind::Bounded { lo, hi, .. } => (lo, hi),
            ComplexKind::Periodic { period } => (0, period as i64 - 1),
        }
    }

    /// Every degree with storage, including headroom.
    pub fn range(&self) -> (i64, i64) {
        (self.start, self.start + self.slots as i64 - 1)
    }

    fn nv(&self) -> usize {
        self.base.quiver().vertex_count()
    }

    fn na(&self) -> usize {
        self.base.quiver().arrows().len()
    }

    fn degree_of(&self, slot: usize) -> i64 {
        self.start + slot as i64
    }

    /// Storage slot of degree `n`, if any.
    pub(crate) fn slot(&self, n: i64) -> Option<usize> {
        match self.kind {
            ComplexKind::Periodic { period } => Some(n.rem_euclid(period as i64) as usize),
            ComplexKind::Bounded { .. } => {
                let s = n - self.start;
                (s >= 0 && (s as usize) < self.slots).then_some(s as usize)
            }
        }
    }

    /// Storage degrees in increasing order.
    pub(crate) fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.slots).map(|s| self.degree_of(s))
    }

    fn diff_arrow(&self, slot: usize, v: usize) -> Option<usize> {
        let base = self.slots * self.na();
        match self.kind {
            ComplexKind::Bounded { .. } if slot + 1 >= self.slots => None,
            _ => Some(base + slot * self.nv() + v),
        }
    }

    fn check(&self, x: &Complex) -> Result<()> {
        if x.flat.dims().len() != self.flat.quiver().vertex_count()
            || x.flat.maps().len() != self.flat.quiver().arrows().len()
        {
            return Err(HallError::Contract("complex from a different backend".into()));
        }
        Ok(())
    }

    /// `dim x_n` at base vertex `v` (zero outside storage).
    pub(crate) fn dim_at(&self, x: &Complex, n: i64, v: usize) -> usize {
        self.slot(n).map_or(0, |s| x.flat.dims()[s * self.nv() + v])
    }

    /// Component `x_n` as a base representation.
    pub fn component(&self, x: &Complex, n: i64) -> Rep {
        match self.slot(n) {
            None => self.base.zero(),
            Some(s) => {
                let nv = self.nv();
                let na = self.na();
                let dims = x.flat.dims()[s * nv..(s + 1) * nv].to_vec();
                let maps = x.flat.maps()[s * na..(s + 1) * na].to_vec();
                Rep::from_parts(dims, maps)
            }
        }
    }

    /// Block of `d_n : x_n -> x_{n+1}` at base vertex `v`.
    pub(crate) fn dmat(&self, x: &Complex, n: i64, v: usize) -> Matrix {
        let rows = self.dim_at(x, n + 1, v);
        let cols = self.dim_at(x, n, v);
        match self.slot(n).and_then(|s| self.diff_arrow(s, v)) {
            Some(a) if self.slot(n + 1).is_some() => x.flat.maps()[a].clone(),
            _ => Matrix::zeros(rows, cols),
        }
    }

    /// Differential `d_n` as a morphism of base representations.
    pub fn diff(&self, x: &Complex, n: i64) -> Morphism {
        (0..self.nv()).map(|v| self.dmat(x, n, v)).collect()
    }

    /// Projective multiplicities of `x_n`.
    pub fn multiplicities(&self, x: &Complex, n: i64) -> Vec<usize> {
        self.base.projective_multiplicities(&self.component(x, n))
    }

    /// Lowest and highest degree with a nonzero component.
    pub fn support(&self, x: &Complex) -> Option<(i64, i64)> {
        let nonzero: Vec<i64> = self
            .degrees()
            .filter(|&n| !self.component(x, n).is_zero())
            .collect();
        Some((*nonzero.first()?, *nonzero.last()?))
    }

    /// Assemble a complex from per-slot components and per-slot
    /// differentials (`diffs[s]` leaves slot `s`; `None` means zero).
    fn pack(&self, comps: &[Rep], diffs: &[Option<Morphism>]) -> Complex {
        let nv = self.nv();
        let mut dims = Vec::with_capacity(self.slots * nv);
        let mut maps = Vec::with_capacity(self.flat.quiver().arrows().len());
        for c in comps {
            dims.extend_from_slice(c.dims());
        }
        for c in comps {
            maps.extend(c.maps().iter().cloned());
        }
        for s in 0..self.slots {
            for v in 0..nv {
                if self.diff_arrow(s, v).is_none() {
                    continue;
                }
                let t = (s + 1) % self.slots;
                let m = match &diffs[s] {
                    Some(d) => d[v].clone(),
                    None => Matrix::zeros(comps[t].dims()[v], comps[s].dims()[v]),
                };
                maps.push(m);
            }
        }
        Complex {
            flat: Rep::from_parts(dims, maps),
        }
    }

    /// Components and differentials in storage order.
    fn unpack(&self, x: &Complex) -> (Vec<Rep>, Vec<Option<Morphism>>) {
        let comps = self.degrees().map(|n| self.component(x, n)).collect();
        let diffs = (0..self.slots)
            .map(|s| {
                let n = self.degree_of(s);
                self.slot(n + 1).map(|_| self.diff(x, n))
            })
            .collect();
        (comps, diffs)
    }

    /// Build a complex with components `comps[k]` in degree `lo + k` and
    /// differentials `diffs[k] : comps[k] -> comps[k + 1]`. Periodic
    /// complexes take the last differential back to `comps[0]`.
    pub fn complex(&self, lo: i64, comps: Vec<Rep>, diffs: Vec<Morphism>) -> Result<Complex> {
        let k = comps.len();
        let expected = if self.is_periodic() {
            if k != self.slots {
                return Err(HallError::Contract(format!(
                    "periodic complex needs {} components, got {k}",
                    self.slots
                )));
            }
            k
        } else {
            k.saturating_sub(1)
        };
        if diffs.len() != expected {
            return Err(HallError::Contract(format!(
                "{} differentials given, expected {expected}",
                diffs.len()
            )));
        }
        let mut slot_comps: Vec<Rep> = (0..self.slots).map(|_| self.base.zero()).collect();
        let mut slot_diffs: Vec<Option<Morphism>> = vec![None; self.slots];
        let mut used = vec![false; self.slots];
        for (i, c) in comps.into_iter().enumerate() {
            let n = lo + i as i64;
            if c.is_zero() {
                continue;
            }
            let s = self.slot(n).ok_or_else(|| self.overflow())?;
            if used[s] {
                return Err(HallError::Contract(format!("degree {n} given twice")));
            }
            used[s] = true;
            slot_comps[s] = c;
        }
        for (i, d) in diffs.into_iter().enumerate() {
            let n = lo + i as i64;
            if d.iter().all(|m| m.is_zero()) {
                continue;
            }
            let s = self.slot(n).ok_or_else(|| self.overflow())?;
            if self.slot(n + 1).is_none() {
                return Err(self.overflow());
            }
            slot_diffs[s] = Some(d);
        }
        for s in 0..self.slots {
            if let Some(d) = &slot_diffs[s] {
                let t = (s + 1) % self.slots;
                if !self.base.is_morphism(&slot_comps[s], &slot_comps[t], d) {
                    return Err(HallError::Contract(format!(
                        "differential in degree {} is not a morphism of representations",
                        self.degree_of(s)
                    )));
                }
            }
        }
        let x = self.pack(&slot_comps, &slot_diffs);
        self.validate(&x)?;
        Ok(x)
    }

    /// Build from projective multiplicity vectors; components are the
    /// standard projectives `(+) P_v^{mult[v]}`.
    pub fn from_multiplicities(
        &self,
        lo: i64,
        mults: &[Vec<usize>],
        diffs: Vec<Morphism>,
    ) -> Result<Complex> {
        let comps = mults.iter().map(|m| self.base.projective(m)).collect();
        self.complex(lo, comps, diffs)
    }

    /// Components projective and `d o d = 0`.
    pub fn validate(&self, x: &Complex) -> Result<()> {
        self.check(x)?;
        let f = self.field();
        for n in self.degrees() {
            if !self.base.is_projective(&self.component(x, n)) {
                return Err(HallError::Contract(format!(
                    "component in degree {n} is not projective"
                )));
            }
            for v in 0..self.nv() {
                let dd = self.dmat(x, n + 1, v).mul(f, &self.dmat(x, n, v));
                if !dd.is_zero() {
                    return Err(HallError::Contract(format!(
                        "d o d is nonzero at degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn overflow(&self) -> HallError {
        let (lo, hi) = self.range();
        HallError::WindowOverflow { lo, hi }
    }

    pub fn zero(&self) -> Complex {
        Complex {
            flat: self.flat.zero(),
        }
    }

    /// `mult` placed in degree `n` with zero differentials.
    pub fn stalk(&self, n: i64, mult: &[usize]) -> Result<Complex> {
        if mult.len() != self.nv() {
            return Err(HallError::Contract(format!(
                "multiplicity vector has length {}, quiver has {} vertices",
                mult.len(),
                self.nv()
            )));
        }
        let s = self.slot(n).ok_or_else(|| self.overflow())?;
        let mut comps: Vec<Rep> = (0..self.slots).map(|_| self.base.zero()).collect();
        comps[s] = self.base.projective(mult);
        Ok(self.pack(&comps, &vec![None; self.slots]))
    }

    /// The cone on `id_{P_v}` occupying degrees `n` and `n + 1`.
    pub fn cone(&self, g: Gen) -> Result<Complex> {
        let p = self.base.proj_indec(g.vertex);
        let (s, t) = match (self.slot(g.degree), self.slot(g.degree + 1)) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(self.overflow()),
        };
        let mut comps: Vec<Rep> = (0..self.slots).map(|_| self.base.zero()).collect();
        comps[s] = p.clone();
        comps[t] = p.clone();
        let mut diffs: Vec<Option<Morphism>> = vec![None; self.slots];
        diffs[s] = Some(self.base.identity(&p));
        Ok(self.pack(&comps, &diffs))
    }

    pub fn direct_sum(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            flat: self.flat.direct_sum(&a.flat, &b.flat),
        }
    }

    pub fn direct_sum_all<'a>(&self, parts: impl IntoIterator<Item = &'a Complex>) -> Complex {
        parts
            .into_iter()
            .fold(self.zero(), |acc, p| self.direct_sum(&acc, p))
    }

    /// `(Sigma^k x)_n = x_{n+k}` with differential `(-1)^k d`.
    pub fn shift(&self, x: &Complex, k: i64) -> Result<Complex> {
        self.check(x)?;
        if k == 0 {
            return Ok(x.clone());
        }
        let f = self.field();
        let (comps, diffs) = self.unpack(x);
        let mut new_comps: Vec<Rep> = (0..self.slots).map(|_| self.base.zero()).collect();
        let mut new_diffs: Vec<Option<Morphism>> = vec![None; self.slots];
        for s in 0..self.slots {
            let n = self.degree_of(s);
            if comps[s].is_zero() {
                continue;
            }
            let t = self.slot(n - k).ok_or_else(|| self.overflow())?;
            new_comps[t] = comps[s].clone();
        }
        for s in 0..self.slots {
            let n = self.degree_of(s);
            if let Some(d) = &diffs[s] {
                if d.iter().all(|m| m.is_zero()) {
                    continue;
                }
                let t = self.slot(n - k).ok_or_else(|| self.overflow())?;
                let d = if k % 2 == 0 {
                    d.clone()
                } else {
                    d.iter().map(|m| m.neg(f)).collect()
                };
                new_diffs[t] = Some(d);
            }
        }
        Ok(self.pack(&new_comps, &new_diffs))
    }

    /// Chain maps `x -> y` (degree-0 maps commuting with differentials).
    pub fn hom_space(&self, x: &Complex, y: &Complex) -> Result<Vec<Morphism>> {
        self.check(x)?;
        self.check(y)?;
        self.flat.hom_basis(&x.flat, &y.flat)
    }

    pub fn hom_dim(&self, x: &Complex, y: &Complex) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        self.flat.hom_dim(&x.flat, &y.flat)
    }

    pub fn iso_test_cx(&self, x: &Complex, y: &Complex) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        self.flat.iso_test(&x.flat, &y.flat)
    }

    /// Indecomposable summands, in decomposition order.
    pub fn decompose_cx(&self, x: &Complex) -> Result<Vec<Complex>> {
        self.check(x)?;
        Ok(self
            .flat
            .decompose(&x.flat)?
            .into_iter()
            .map(|flat| Complex { flat })
            .collect())
    }

    pub fn direct_sum_cx(&self, a: &Complex, b: &Complex) -> Complex {
        self.direct_sum(a, b)
    }

    /// Isomorphism key through the shared indecomposable registry.
    pub fn iso_key(&self, x: &Complex) -> Result<IsoKey> {
        self.check(x)?;
        self.flat.iso_key(&x.flat, &self.registry)
    }

    /// Canonical text form, prefixed with `cx:`.
    pub fn encode(&self, x: &Complex) -> String {
        format!("cx:{}", x.flat.encode())
    }

    pub fn decode(&self, text: &str) -> Result<Complex> {
        let body = text
            .strip_prefix("cx:")
            .ok_or_else(|| HallError::Contract(format!("not a complex encoding: {text:?}")))?;
        let x = Complex {
            flat: self.flat.decode(body)?,
        };
        self.validate(&x)?;
        for s in 0..self.slots {
            let n = self.degree_of(s);
            let d = self.diff(&x, n);
            let t = self.component(&x, n + 1);
            if !self.base.is_morphism(&self.component(&x, n), &t, &d) {
                return Err(HallError::Contract(format!(
                    "differential in degree {n} is not a morphism of representations"
                )));
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests;
