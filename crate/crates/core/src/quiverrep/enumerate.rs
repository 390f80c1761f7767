use std::collections::HashSet;

use super::{IndecRegistry, Rep, RepCategory};
use crate::error::{HallError, Result};
use crate::ffla::{self, Matrix};

/// All vectors `d <= cap` componentwise, graded-lexicographic: by total,
/// then lexicographically.
pub fn dims_up_to(cap: &[usize]) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    for &c in cap {
        all = all
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=c).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    all.sort_by(|a, b| {
        let sa: usize = a.iter().sum();
        let sb: usize = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    all
}

/// Every representation with dimension vector `dims`, in lexicographic
/// order of the concatenated arrow matrices.
pub fn reps_with_dims(cat: &RepCategory, dims: &[usize]) -> Result<Vec<Rep>> {
    let f = cat.field();
    let shapes: Vec<(usize, usize)> = cat
        .quiver()
        .arrows()
        .iter()
        .map(|&(t, h)| (dims[h], dims[t]))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let size = f.card(entries).unwrap_or(u128::MAX);
    if size > cat.caps().max_enum {
        return Err(HallError::EnumCapExceeded {
            size,
            cap: cat.caps().max_enum,
        });
    }
    let mut out = Vec::with_capacity(size as usize);
    ffla::for_each_coeffs(f, entries, |v| {
        let mut maps = Vec::with_capacity(shapes.len());
        let mut at = 0;
        for &(r, c) in &shapes {
            maps.push(Matrix::from_vec(r, c, v[at..at + r * c].to_vec()));
            at += r * c;
        }
        out.push(Rep::from_parts(dims.to_vec(), maps));
        true
    });
    Ok(out)
}

impl RepCategory {
    /// One representative per isomorphism class with `dims <= cap`,
    /// first-encountered in the deterministic generation order.
    pub fn enumerate_reps(&self, cap: &[usize]) -> Result<Vec<Rep>> {
        let reg = IndecRegistry::new();
        self.enumerate_reps_with(cap, &reg)
    }

    pub fn enumerate_reps_with(&self, cap: &[usize], reg: &IndecRegistry) -> Result<Vec<Rep>> {
        if cap.len() != self.quiver().vertex_count() {
            return Err(HallError::Contract(format!(
                "dimension cap has length {}, quiver has {} vertices",
                cap.len(),
                self.quiver().vertex_count()
            )));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for dims in dims_up_to(cap) {
            for r in reps_with_dims(self, &dims)? {
                if seen.insert(self.iso_key(&r, reg)?) {
                    out.push(r);
                }
            }
        }
        Ok(out)
    }
}
