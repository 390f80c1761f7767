//! Graded maps between complexes, cycles and null-homotopic maps.
//!
//! A degree-`s` map `f : x -> y` has one block `f_n : x_n -> y_{n+s}` per
//! degree, each a morphism of base representations. Blocks are stored per
//! flattened vertex of `x`, and the concatenation of their row-major entries
//! is the map's coordinate vector.

use num_bigint::BigUint;

use super::{Complex, ComplexCategory};
use crate::error::{HallError, Result};
use crate::ffla::{self, Elem, Matrix};
use crate::quiverrep::Morphism;

/// A degree-`shift` map between two complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    pub shift: i64,
    /// `blocks[slot * vertices + v]` is `x_{n,v} -> y_{n+shift,v}`.
    pub blocks: Vec<Matrix>,
}

/// Cycles and boundaries of the degree-`s` Hom complex, as coordinates.
pub(crate) struct HomData {
    pub(crate) shapes: Vec<(usize, usize)>,
    pub(crate) cycles: Vec<Vec<Elem>>,
    pub(crate) boundaries: Vec<Vec<Elem>>,
}

impl HomData {
    fn dim(&self) -> usize {
        self.shapes.iter().map(|(r, c)| r * c).sum()
    }
}

impl ComplexCategory {
    fn shapes(&self, x: &Complex, y: &Complex, s: i64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in self.degrees() {
            for v in 0..self.nv() {
                out.push((self.dim_at(y, n + s, v), self.dim_at(x, n, v)));
            }
        }
        out
    }

    fn to_coords(f: &GradedMap) -> Vec<Elem> {
        f.blocks.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    fn from_coords(shapes: &[(usize, usize)], s: i64, v: &[Elem]) -> GradedMap {
        let mut at = 0;
        let blocks = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Matrix::from_vec(r, c, v[at..at + r * c].to_vec());
                at += r * c;
                m
            })
            .collect();
        GradedMap { shift: s, blocks }
    }

    fn block(&self, f: &GradedMap, x: &Complex, y: &Complex, n: i64, v: usize) -> Matrix {
        match self.slot(n) {
            Some(slot) => f.blocks[slot * self.nv() + v].clone(),
            None => Matrix::zeros(self.dim_at(y, n + f.shift, v), self.dim_at(x, n, v)),
        }
    }

    /// `a * (d_y o f) + b * (f o d_x)`, a map of degree `shift + 1`.
    fn d_combination(
        &self,
        x: &Complex,
        y: &Complex,
        f: &GradedMap,
        a: Elem,
        b: Elem,
    ) -> GradedMap {
        let fld = self.field();
        let s = f.shift;
        let mut blocks = Vec::with_capacity(f.blocks.len());
        for n in self.degrees() {
            for v in 0..self.nv() {
                let left = self
                    .dmat(y, n + s, v)
                    .mul(fld, &self.block(f, x, y, n, v))
                    .scale(fld, a);
                let right = self
                    .block(f, x, y, n + 1, v)
                    .mul(fld, &self.dmat(x, n, v))
                    .scale(fld, b);
                blocks.push(left.add(fld, &right));
            }
        }
        GradedMap {
            shift: s + 1,
            blocks,
        }
    }

    /// Basis of degree-`s` maps whose blocks are base morphisms.
    fn graded_basis(&self, x: &Complex, y: &Complex, s: i64) -> Result<Vec<GradedMap>> {
        let shapes = self.shapes(x, y, s);
        let nv = self.nv();
        let mut out = Vec::new();
        for (slot, n) in self.degrees().enumerate() {
            let a = self.component(x, n);
            let b = self.component(y, n + s);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            for phi in self.base.hom_basis(&a, &b)? {
                let mut blocks: Vec<Matrix> =
                    shapes.iter().map(|&(r, c)| Matrix::zeros(r, c)).collect();
                for (v, m) in phi.into_iter().enumerate() {
                    blocks[slot * nv + v] = m;
                }
                out.push(GradedMap { shift: s, blocks });
            }
        }
        Ok(out)
    }

    /// Degree-`s` chain maps `x -> Sigma^s y` and the null-homotopic ones.
    ///
    /// Cycles: `d_y f - (-1)^s f d_x = 0`. Boundaries: `(-1)^s d_y k + k d_x`
    /// for `k` of degree `s - 1`.
    pub(crate) fn hom_data(&self, x: &Complex, y: &Complex, s: i64) -> Result<HomData> {
        self.check(x)?;
        self.check(y)?;
        let fld = self.field();
        let sign = if s.rem_euclid(2) == 0 { 1 } else { fld.p() - 1 };
        let shapes = self.shapes(x, y, s);
        let basis = self.graded_basis(x, y, s)?;
        let next_dim: usize = self.shapes(x, y, s + 1).iter().map(|(r, c)| r * c).sum();
        let images: Vec<Vec<Elem>> = basis
            .iter()
            .map(|g| Self::to_coords(&self.d_combination(x, y, g, 1, fld.neg(sign))))
            .collect();
        let columns = Matrix::from_columns(next_dim, &images);
        let coords: Vec<Vec<Elem>> = basis.iter().map(Self::to_coords).collect();
        let dim: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let cycles = if basis.is_empty() {
            Vec::new()
        } else {
            ffla::kernel_basis(fld, &columns)
                .iter()
                .map(|c| ffla::combine(fld, dim, c, &coords))
                .collect()
        };
        let boundaries = self
            .graded_basis(x, y, s - 1)?
            .iter()
            .map(|k| Self::to_coords(&self.d_combination(x, y, k, sign, 1)))
            .collect();
        Ok(HomData {
            shapes,
            cycles,
            boundaries,
        })
    }

    /// `dim Hom_stable(x, y)`.
    pub fn stable_hom_dim(&self, x: &Complex, y: &Complex) -> Result<usize> {
        let h = self.hom_data(x, y, 0)?;
        Ok(h.cycles.len() - ffla::span_rank(self.field(), h.dim(), &h.boundaries))
    }

    /// Number of homotopy classes of chain maps `x -> y`.
    pub fn stable_hom_card(&self, x: &Complex, y: &Complex) -> Result<BigUint> {
        Ok(BigUint::from(self.field().p()).pow(self.stable_hom_dim(x, y)? as u32))
    }

    /// `dim Ext^1(x, y)`: odd cocycles modulo coboundaries.
    pub fn ext1_dim(&self, x: &Complex, y: &Complex) -> Result<usize> {
        let h = self.hom_data(x, y, 1)?;
        Ok(h.cycles.len() - ffla::span_rank(self.field(), h.dim(), &h.boundaries))
    }

    /// One cocycle per class of `Ext^1(x, y)`, classes for extensions
    /// `y >-> B ->> x`. The zero class comes first; the rest follow the
    /// lexicographic order of quotient coordinates.
    pub fn ext1_classes(&self, x: &Complex, y: &Complex) -> Result<Vec<GradedMap>> {
        let fld = self.field();
        let h = self.hom_data(x, y, 1)?;
        let comp = ffla::quotient_complement(fld, h.dim(), &h.boundaries, &h.cycles);
        let size = fld.card(comp.len()).unwrap_or(u128::MAX);
        if size > self.caps().max_ext {
            return Err(HallError::ExtEnumCapExceeded {
                size,
                cap: self.caps().max_ext,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        ffla::for_each_coeffs(fld, comp.len(), |c| {
            out.push(Self::from_coords(&h.shapes, 1, &ffla::combine(fld, h.dim(), c, &comp)));
            true
        });
        Ok(out)
    }

    /// Whether `f` is a degree-1 map with `d_y f + f d_x = 0`.
    pub fn is_cocycle(&self, x: &Complex, y: &Complex, f: &GradedMap) -> bool {
        if f.shift != 1 || f.blocks.len() != self.slots * self.nv() {
            return false;
        }
        let shapes = self.shapes(x, y, 1);
        if f.blocks.iter().zip(&shapes).any(|(m, &s)| m.shape() != s) {
            return false;
        }
        for (slot, n) in self.degrees().enumerate() {
            let a = self.component(x, n);
            let b = self.component(y, n + 1);
            let phi: Morphism = (0..self.nv())
                .map(|v| f.blocks[slot * self.nv() + v].clone())
                .collect();
            if !self.base.is_morphism(&a, &b, &phi) {
                return false;
            }
        }
        self.d_combination(x, y, f, 1, 1)
            .blocks
            .iter()
            .all(|m| m.is_zero())
    }

    /// Middle term of `y >-> B ->> x` given by the cocycle `f`:
    /// `B_n = y_n (+) x_n`, `d_B = [[d_y, f], [0, d_x]]`.
    pub fn middle_term_cx(&self, x: &Complex, y: &Complex, f: &GradedMap) -> Result<Complex> {
        self.check(x)?;
        self.check(y)?;
        if !self.is_cocycle(x, y, f) {
            return Err(HallError::Contract("not an odd cocycle".into()));
        }
        let sum = self.flat.direct_sum(&y.flat, &x.flat);
        let mut maps = sum.maps().to_vec();
        let nv = self.nv();
        for (slot, n) in self.degrees().enumerate() {
            for v in 0..nv {
                if let Some(a) = self.diff_arrow(slot, v) {
                    maps[a] = Matrix::block(
                        &self.dmat(y, n, v),
                        &f.blocks[slot * nv + v],
                        &Matrix::zeros(self.dim_at(x, n + 1, v), self.dim_at(y, n, v)),
                        &self.dmat(x, n, v),
                    );
                }
            }
        }
        Ok(Complex {
            flat: crate::quiverrep::Rep::from_parts(sum.dims().to_vec(), maps),
        })
    }

    /// Identity is null-homotopic: some `h` of degree -1 has
    /// `d h + h d = id`.
    pub fn is_contractible(&self, x: &Complex) -> Result<bool> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        let fld = self.field();
        let shapes = self.shapes(x, x, 0);
        let dim: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let images: Vec<Vec<Elem>> = self
            .graded_basis(x, x, -1)?
            .iter()
            .map(|k| Self::to_coords(&self.d_combination(x, x, k, 1, 1)))
            .collect();
        let id = GradedMap {
            shift: 0,
            blocks: shapes.iter().map(|&(r, _)| Matrix::identity(r)).collect(),
        };
        if images.is_empty() {
            return Ok(false);
        }
        let a = Matrix::from_columns(dim, &images);
        Ok(ffla::solve_linear(fld, &a, &Self::to_coords(&id)).is_some())
    }

    /// `|Ext^p(x, y)| = |Hom_stable(Sigma^{-p} x, y)|`.
    pub fn extp_card(&self, x: &Complex, y: &Complex, p: i64) -> Result<BigUint> {
        self.stable_hom_card(&self.shift(x, -p)?, y)
    }

    pub fn extp_dim(&self, x: &Complex, y: &Complex, p: i64) -> Result<usize> {
        self.stable_hom_dim(&self.shift(x, -p)?, y)
    }
}
