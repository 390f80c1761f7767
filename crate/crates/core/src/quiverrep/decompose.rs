//! Krull-Schmidt decomposition by Fitting splitting of endomorphisms.
//!
//! For an endomorphism `phi` of `M` and `N = dim M`, `M = Im phi^N (+) Ker phi^N`
//! as representations. `M` is indecomposable iff every endomorphism is
//! nilpotent or invertible, i.e. no `phi` gives a proper splitting.

use super::{Morphism, Rep, RepCategory};
use crate::error::{HallError, Result};
use crate::ffla::{self, Elem, Matrix};

/// Deterministic xorshift for sampling coefficient vectors when End is too
/// large to enumerate.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

const SAMPLES: usize = 4096;

impl RepCategory {
    /// Rank of `phi^N` summed over vertices, where `N = dim M`.
    fn stable_rank(&self, m: &Rep, phi: &Morphism) -> usize {
        let n = m.total_dim();
        phi.iter()
            .map(|x| {
                if x.rows() == 0 {
                    0
                } else {
                    x.pow(self.field, n).rank(self.field)
                }
            })
            .sum()
    }

    fn splits(&self, m: &Rep, phi: &Morphism) -> bool {
        let r = self.stable_rank(m, phi);
        r > 0 && r < m.total_dim()
    }

    /// Basis elements, their shifts by scalars, and pairwise sums.
    pub(crate) fn cheap_split(&self, m: &Rep, basis: &[Morphism]) -> Option<Morphism> {
        let f = self.field;
        let id = self.identity(m);
        for b in basis {
            if self.splits(m, b) {
                return Some(b.clone());
            }
        }
        for lambda in 1..f.p() {
            for b in basis {
                let shifted: Morphism = b
                    .iter()
                    .zip(&id)
                    .map(|(x, i)| x.add(f, &i.scale(f, lambda)))
                    .collect();
                if self.splits(m, &shifted) {
                    return Some(shifted);
                }
            }
        }
        if basis.len() <= 16 {
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    let s: Morphism = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(x, y)| x.add(f, y))
                        .collect();
                    if self.splits(m, &s) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    /// Search all of End when it fits under the cap; otherwise sample and
    /// report a cap breach if nothing splits.
    pub(crate) fn exhaustive_split(
        &self,
        m: &Rep,
        basis: &[Morphism],
    ) -> Result<Option<Morphism>> {
        let f = self.field;
        let size = f.card(basis.len()).unwrap_or(u128::MAX);
        let mut found = None;
        if size <= self.caps.max_endo {
            ffla::for_each_coeffs(f, basis.len(), |c| {
                let phi = self.combine(c, basis, m, m);
                if self.splits(m, &phi) {
                    found = Some(phi);
                    return false;
                }
                true
            });
            return Ok(found);
        }
        let mut rng = XorShift(0x9e37_79b9_7f4a_7c15 ^ basis.len() as u64);
        for _ in 0..SAMPLES {
            let c: Vec<Elem> = (0..basis.len())
                .map(|_| (rng.next() % f.p() as u64) as Elem)
                .collect();
            let phi = self.combine(&c, basis, m, m);
            if self.splits(m, &phi) {
                return Ok(Some(phi));
            }
        }
        Err(HallError::EndoSearchCapExceeded {
            dim: basis.len(),
            cap: self.caps.max_endo,
        })
    }

    /// Split `m` along the Fitting decomposition of `phi`: image part first.
    pub(crate) fn split_along(&self, m: &Rep, phi: &Morphism) -> (Rep, Rep) {
        let f = self.field;
        let n = m.total_dim();
        let mut images = Vec::with_capacity(phi.len());
        let mut kernels = Vec::with_capacity(phi.len());
        for (v, x) in phi.iter().enumerate() {
            let d = m.dims()[v];
            if d == 0 {
                images.push(Matrix::zeros(0, 0));
                kernels.push(Matrix::zeros(0, 0));
                continue;
            }
            let psi = x.pow(f, n);
            let (_, pivots) = ffla::rref(f, &psi);
            let cols: Vec<Vec<Elem>> = pivots
                .iter()
                .map(|&c| (0..d).map(|r| psi.get(r, c)).collect())
                .collect();
            images.push(Matrix::from_columns(d, &cols));
            kernels.push(Matrix::from_columns(d, &ffla::kernel_basis(f, &psi)));
        }
        (self.restrict(m, &images), self.restrict(m, &kernels))
    }

    /// Indecomposable summands of `m` (empty for the zero representation).
    pub fn decompose(&self, m: &Rep) -> Result<Vec<Rep>> {
        self.check_same(m)?;
        let mut out = Vec::new();
        let mut stack = vec![m.clone()];
        while let Some(x) = stack.pop() {
            if x.is_zero() {
                continue;
            }
            let basis = self.hom_basis(&x, &x)?;
            let phi = if basis.len() <= 1 {
                None
            } else if let Some(phi) = self.cheap_split(&x, &basis) {
                Some(phi)
            } else {
                self.exhaustive_split(&x, &basis)?
            };
            match phi {
                Some(phi) => {
                    let (a, b) = self.split_along(&x, &phi);
                    // pushed in reverse so the image part is processed first
                    stack.push(b);
                    stack.push(a);
                }
                None => out.push(x),
            }
        }
        Ok(out)
    }

    /// Whether End(m) has no splitting endomorphism.
    pub fn is_indecomposable(&self, m: &Rep) -> Result<bool> {
        if m.is_zero() {
            return Ok(false);
        }
        let basis = self.hom_basis(m, m)?;
        if basis.len() <= 1 {
            return Ok(true);
        }
        if self.cheap_split(m, &basis).is_some() {
            return Ok(false);
        }
        Ok(self.exhaustive_split(m, &basis)?.is_none())
    }
}
