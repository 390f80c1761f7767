//! Isomorphism classification through Krull-Schmidt.
//!
//! Every indecomposable met so far is kept in an [`IndecRegistry`]. Two
//! representations are isomorphic iff their sorted lists of indecomposable
//! ids agree, and that list is the [`IsoKey`]. Ids inside the registry are
//! assigned in whatever order threads reach them; only equality of keys is
//! meaningful.

use std::collections::HashMap;
use std::sync::RwLock;

use super::{Rep, RepCategory};
use crate::error::Result;

pub type IsoKey = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Invariant {
    dims: Vec<usize>,
    ranks: Vec<usize>,
    top: Vec<usize>,
    socle: Vec<usize>,
}

#[derive(Default)]
struct Inner {
    reps: Vec<Rep>,
    by_invariant: HashMap<Invariant, Vec<usize>>,
}

/// Concurrent registry of indecomposable representations.
#[derive(Default)]
pub struct IndecRegistry {
    inner: RwLock<Inner>,
}

impl std::fmt::Debug for IndecRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndecRegistry")
            .field("len", &self.len())
            .finish()
    }
}

impl IndecRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: usize) -> Rep {
        self.inner.read().unwrap().reps[id].clone()
    }

    fn lookup(&self, cat: &RepCategory, m: &Rep, inv: &Invariant) -> Result<Option<usize>> {
        let candidates: Vec<(usize, Rep)> = {
            let inner = self.inner.read().unwrap();
            match inner.by_invariant.get(inv) {
                Some(ids) => ids.iter().map(|&i| (i, inner.reps[i].clone())).collect(),
                None => return Ok(None),
            }
        };
        for (id, r) in candidates {
            if cat.iso_test_indecomposable(m, &r)? {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    fn insert(&self, cat: &RepCategory, m: Rep, inv: Invariant) -> Result<usize> {
        let mut inner = self.inner.write().unwrap();
        // another thread may have added an isomorphic copy meanwhile
        if let Some(ids) = inner.by_invariant.get(&inv) {
            for &i in ids {
                if cat.iso_test_indecomposable(&m, &inner.reps[i])? {
                    return Ok(i);
                }
            }
        }
        let id = inner.reps.len();
        inner.reps.push(m);
        inner.by_invariant.entry(inv).or_default().push(id);
        Ok(id)
    }
}

impl RepCategory {
    fn invariant(&self, m: &Rep) -> Invariant {
        Invariant {
            dims: m.dims().to_vec(),
            ranks: self.arrow_ranks(m),
            top: self.top_dims(m),
            socle: self.socle_dims(m),
        }
    }

    /// Indecomposable summands of `m` paired with their registry ids, in
    /// the same order as [`RepCategory::decompose`].
    pub fn decompose_classified(&self, m: &Rep, reg: &IndecRegistry) -> Result<Vec<(usize, Rep)>> {
        self.check_same(m)?;
        let mut out = Vec::new();
        let mut stack = vec![m.clone()];
        while let Some(x) = stack.pop() {
            if x.is_zero() {
                continue;
            }
            let basis = self.hom_basis(&x, &x)?;
            let inv = self.invariant(&x);
            if basis.len() > 1 {
                if let Some(phi) = self.cheap_split(&x, &basis) {
                    let (a, b) = self.split_along(&x, &phi);
                    stack.push(b);
                    stack.push(a);
                    continue;
                }
            }
            // an invertible map to a known indecomposable proves x indecomposable
            if let Some(id) = reg.lookup(self, &x, &inv)? {
                out.push((id, x));
                continue;
            }
            if basis.len() > 1 {
                if let Some(phi) = self.exhaustive_split(&x, &basis)? {
                    let (a, b) = self.split_along(&x, &phi);
                    stack.push(b);
                    stack.push(a);
                    continue;
                }
            }
            let id = reg.insert(self, x.clone(), inv)?;
            out.push((id, x));
        }
        Ok(out)
    }

    /// Sorted indecomposable ids of `m`.
    pub fn iso_key(&self, m: &Rep, reg: &IndecRegistry) -> Result<IsoKey> {
        let mut key: Vec<usize> = self
            .decompose_classified(m, reg)?
            .into_iter()
            .map(|(id, _)| id)
            .collect();
        key.sort_unstable();
        Ok(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::ffla::{Field, Matrix};
    use crate::quiverrep::Quiver;

    #[test]
    fn keys_identify_isomorphic_reps() {
        let cat = RepCategory::new(Quiver::linear_a(2), Field::new(3).unwrap(), Caps::default());
        let reg = IndecRegistry::new();
        let p1 = cat.proj_indec(0);
        let scaled = cat.rep(vec![1, 1], vec![Matrix::from_rows(cat.field(), &[vec![2]])]).unwrap();
        assert_eq!(cat.iso_key(&p1, &reg).unwrap(), cat.iso_key(&scaled, &reg).unwrap());
        let s = cat.direct_sum(&cat.simple(0), &cat.simple(1));
        let t = cat.direct_sum(&cat.simple(1), &cat.simple(0));
        assert_eq!(cat.iso_key(&s, &reg).unwrap(), cat.iso_key(&t, &reg).unwrap());
        assert_ne!(cat.iso_key(&s, &reg).unwrap(), cat.iso_key(&p1, &reg).unwrap());
        assert_eq!(reg.len(), 3);
    }
}
