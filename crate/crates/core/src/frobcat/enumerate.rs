use std::collections::HashSet;

use super::{Complex, ComplexCategory, ComplexKind};
use crate::error::{HallError, Result};
use crate::ffla::{self, Matrix};
use crate::quiverrep::{dims_up_to, Morphism, Rep};

/// Size limits for enumerated complexes, counted in projective summands:
/// at most `per_degree` in each degree and at most `total` overall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComplexDimCap {
    pub per_degree: usize,
    pub total: Option<usize>,
}

impl ComplexDimCap {
    pub fn per_degree(n: usize) -> Self {
        ComplexDimCap {
            per_degree: n,
            total: None,
        }
    }

    pub fn total(n: usize) -> Self {
        ComplexDimCap {
            per_degree: n,
            total: Some(n),
        }
    }
}

impl ComplexCategory {
    /// Degrees objects may occupy: the window, or the residues.
    fn object_degrees(&self) -> Vec<i64> {
        let (lo, hi) = self.window();
        (lo..=hi).collect()
    }

    /// Multiplicity patterns (one vector per object degree), graded-lex on
    /// the concatenated vector.
    pub fn multiplicity_patterns(&self, cap: &ComplexDimCap) -> Vec<Vec<Vec<usize>>> {
        let nv = self.nv();
        let deg = self.object_degrees().len();
        dims_up_to(&vec![cap.per_degree; deg * nv])
            .into_iter()
            .filter(|flat| {
                let total: usize = flat.iter().sum();
                cap.total.is_none_or(|t| total <= t)
                    && flat.chunks(nv).all(|c| c.iter().sum::<usize>() <= cap.per_degree)
            })
            .map(|flat| flat.chunks(nv).map(|c| c.to_vec()).collect())
            .collect()
    }

    /// Every complex with the given multiplicities, differentials in
    /// lexicographic order of their coordinates in the Hom bases.
    pub fn complexes_with(&self, mults: &[Vec<usize>]) -> Result<Vec<Complex>> {
        let fld = self.field();
        let degrees = self.object_degrees();
        let lo = degrees[0];
        let comps: Vec<Rep> = mults.iter().map(|m| self.base.projective(m)).collect();
        let k = comps.len();
        let links = match self.kind {
            ComplexKind::Periodic { .. } => k,
            ComplexKind::Bounded { .. } => k - 1,
        };
        let mut bases: Vec<Vec<Morphism>> = Vec::with_capacity(links);
        for i in 0..links {
            bases.push(self.base.hom_basis(&comps[i], &comps[(i + 1) % k])?);
        }
        let n_coeffs: usize = bases.iter().map(|b| b.len()).sum();
        let size = fld.card(n_coeffs).unwrap_or(u128::MAX);
        if size > self.caps().max_enum {
            return Err(HallError::EnumCapExceeded {
                size,
                cap: self.caps().max_enum,
            });
        }
        let mut out = Vec::new();
        let mut failure = None;
        ffla::for_each_coeffs(fld, n_coeffs, |c| {
            let mut at = 0;
            let mut diffs = Vec::with_capacity(links);
            for (i, b) in bases.iter().enumerate() {
                let j = (i + 1) % k;
                diffs.push(self.base.combine(&c[at..at + b.len()], b, &comps[i], &comps[j]));
                at += b.len();
            }
            let squares_vanish = (0..links).all(|i| {
                let next = (i + 1) % k;
                if next >= links {
                    return true;
                }
                diffs[next]
                    .iter()
                    .zip(&diffs[i])
                    .all(|(b, a): (&Matrix, &Matrix)| b.mul(fld, a).is_zero())
            });
            if !squares_vanish {
                return true;
            }
            match self.complex(lo, comps.clone(), diffs) {
                Ok(x) => out.push(x),
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
            true
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// One complex per isomorphism class within `cap`, first-encountered
    /// in pattern order and then differential order.
    pub fn enumerate_complexes(&self, cap: &ComplexDimCap) -> Result<Vec<Complex>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mults in self.multiplicity_patterns(cap) {
            for x in self.complexes_with(&mults)? {
                if seen.insert(self.iso_key(&x)?) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// The projective-free classes of [`ComplexCategory::enumerate_complexes`].
    pub fn enumerate_projective_free(&self, cap: &ComplexDimCap) -> Result<Vec<Complex>> {
        let mut out = Vec::new();
        for x in self.enumerate_complexes(cap)? {
            if self.is_projective_free(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }
}
