use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use super::{ClassId, HallBackend, HallElement};
use crate::config::Exec;
use crate::error::{HallError, Result};
use crate::par;
use crate::quiverrep::IsoKey;
use crate::scalar::{self, ScalarExt};

/// Structure constants of `[A] <> [C]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub hom_dim: usize,
    /// `(B, |Ext^1(A, C)_B|)` in order of first appearance among the
    /// enumerated extension classes.
    pub terms: Vec<(ClassId, u128)>,
}

impl StructureEntry {
    /// `sum_B |Ext^1(A, C)_B|`.
    pub fn ext_size(&self) -> u128 {
        self.terms.iter().map(|(_, n)| n).sum()
    }
}

/// Backend-independent form of a [`StructureEntry`]: objects by their
/// canonical encodings, one representative middle term per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub a: String,
    pub c: String,
    pub hom_dim: usize,
    pub middles: Vec<(String, u128)>,
}

/// Result of an exhaustive associativity check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples: usize,
    pub failures: Vec<(ClassId, ClassId, ClassId)>,
    pub errors: Vec<((ClassId, ClassId, ClassId), String)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }
}

struct Raw<O> {
    hom_dim: usize,
    groups: Vec<(IsoKey, O, u128)>,
}

struct Classes<O> {
    objects: Vec<O>,
    by_key: HashMap<IsoKey, ClassId>,
}

/// Hall algebra of a backend, with its class registry and the cache of
/// structure constants.
///
/// Class ids are handed out sequentially. Batched operations compute in
/// parallel and register new classes afterwards in a fixed order, so ids
/// never depend on thread scheduling.
pub struct HallAlgebra<B: HallBackend> {
    backend: B,
    exec: Exec,
    classes: RwLock<Classes<B::Object>>,
    entries: RwLock<HashMap<(ClassId, ClassId), Arc<StructureEntry>>>,
    preloaded: RwLock<HashMap<(String, String), CacheRecord>>,
    cache_hits: AtomicUsize,
}

impl<B: HallBackend> HallAlgebra<B> {
    /// Class 0 is the zero object.
    pub fn new(backend: B, exec: Exec) -> Result<Self> {
        let zero = backend.zero_object();
        let key = backend.iso_key(&zero)?;
        Ok(HallAlgebra {
            backend,
            exec,
            classes: RwLock::new(Classes {
                objects: vec![zero],
                by_key: HashMap::from([(key, 0)]),
            }),
            entries: RwLock::new(HashMap::new()),
            preloaded: RwLock::new(HashMap::new()),
            cache_hits: AtomicUsize::new(0),
        })
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn q(&self) -> u32 {
        self.backend.field().p()
    }

    pub fn class_count(&self) -> usize {
        self.classes.read().unwrap().objects.len()
    }

    pub fn object(&self, id: ClassId) -> Result<B::Object> {
        self.classes
            .read()
            .unwrap()
            .objects
            .get(id)
            .cloned()
            .ok_or(HallError::UnknownClass(id))
    }

    pub fn encode_class(&self, id: ClassId) -> Result<String> {
        Ok(self.backend.encode(&self.object(id)?))
    }

    fn install_key(&self, key: IsoKey, x: &B::Object) -> ClassId {
        let mut c = self.classes.write().unwrap();
        if let Some(&id) = c.by_key.get(&key) {
            return id;
        }
        let id = c.objects.len();
        c.objects.push(x.clone());
        c.by_key.insert(key, id);
        id
    }

    /// Class id of `x`, registering it if new.
    pub fn register(&self, x: &B::Object) -> Result<ClassId> {
        let key = self.backend.iso_key(x)?;
        Ok(self.install_key(key, x))
    }

    /// Register many objects; ids follow the input order.
    pub fn register_all(&self, xs: &[B::Object]) -> Result<Vec<ClassId>> {
        let keys = par::try_map(self.exec, xs, |x| self.backend.iso_key(x))?;
        Ok(keys
            .into_iter()
            .zip(xs)
            .map(|(k, x)| self.install_key(k, x))
            .collect())
    }

    /// Cached entry, if present.
    pub fn cached_entry(&self, a: ClassId, c: ClassId) -> Option<Arc<StructureEntry>> {
        self.entries.read().unwrap().get(&(a, c)).cloned()
    }

    /// Number of entries served from preloaded cache records.
    pub fn cache_hits(&self) -> usize {
        self.cache_hits.load(Ordering::Relaxed)
    }

    fn raw(&self, a: ClassId, c: ClassId) -> Result<Raw<B::Object>> {
        let (xa, xc) = (self.object(a)?, self.object(c)?);
        let lookup = (self.backend.encode(&xa), self.backend.encode(&xc));
        let record = self.preloaded.read().unwrap().get(&lookup).cloned();
        if let Some(r) = record {
            let mut groups = Vec::with_capacity(r.middles.len());
            for (text, n) in &r.middles {
                let b = self.backend.decode(text)?;
                groups.push((self.backend.iso_key(&b)?, b, *n));
            }
            self.cache_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(Raw {
                hom_dim: r.hom_dim,
                groups,
            });
        }
        let hom_dim = self.backend.hom_dim(&xa, &xc)?;
        let mut groups: Vec<(IsoKey, B::Object, u128)> = Vec::new();
        for b in self.backend.ext1_middles(&xa, &xc)? {
            let key = self.backend.iso_key(&b)?;
            match groups.iter_mut().find(|g| g.0 == key) {
                Some(g) => g.2 += 1,
                None => groups.push((key, b, 1)),
            }
        }
        Ok(Raw { hom_dim, groups })
    }

    fn install_entry(&self, a: ClassId, c: ClassId, raw: Raw<B::Object>) -> Arc<StructureEntry> {
        let terms = raw
            .groups
            .into_iter()
            .map(|(key, b, n)| (self.install_key(key, &b), n))
            .collect();
        let entry = Arc::new(StructureEntry {
            hom_dim: raw.hom_dim,
            terms,
        });
        self.entries
            .write()
            .unwrap()
            .entry((a, c))
            .or_insert(entry)
            .clone()
    }

    /// Structure constants of `[a] <> [c]`, computed on first use.
    pub fn entry(&self, a: ClassId, c: ClassId) -> Result<Arc<StructureEntry>> {
        if let Some(e) = self.cached_entry(a, c) {
            return Ok(e);
        }
        let raw = self.raw(a, c)?;
        Ok(self.install_entry(a, c, raw))
    }

    /// Fill the cache for `pairs`: the expensive part runs under the
    /// configured executor, new classes are registered in pair order.
    /// Every computable pair is installed; the first error is returned.
    pub fn precompute(&self, pairs: &[(ClassId, ClassId)]) -> Result<()> {
        let mut missing = Vec::new();
        {
            let entries = self.entries.read().unwrap();
            let mut seen = HashSet::new();
            for p in pairs {
                if !entries.contains_key(p) && seen.insert(*p) {
                    missing.push(*p);
                }
            }
        }
        let raws = par::map(self.exec, &missing, |&(a, c)| self.raw(a, c));
        let mut first_err = None;
        for (&(a, c), raw) in missing.iter().zip(raws) {
            match raw {
                Ok(r) => {
                    self.install_entry(a, c, r);
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        first_err.map_or(Ok(()), Err)
    }

    /// `[a] <> [c]`.
    pub fn basis_product(&self, a: ClassId, c: ClassId) -> Result<HallElement> {
        let q = self.q();
        let e = self.entry(a, c)?;
        let denom = scalar::q_pow(q, -(e.hom_dim as i64));
        let mut out = HallElement::zero(q);
        for &(b, n) in &e.terms {
            let coeff = &denom * scalar::Rational::from_integer((n as u64).into());
            out.add_term(b, ScalarExt::rational(q, coeff));
        }
        Ok(out)
    }

    fn bilinear(
        &self,
        x: &HallElement,
        y: &HallElement,
        twist: impl Fn(ClassId, ClassId) -> Result<ScalarExt>,
    ) -> Result<HallElement> {
        let pairs: Vec<(ClassId, ClassId)> = x
            .terms()
            .keys()
            .flat_map(|&a| y.terms().keys().map(move |&c| (a, c)))
            .collect();
        self.precompute(&pairs)?;
        let mut out = HallElement::zero(self.q());
        for (a, ca) in x.terms() {
            for (c, cc) in y.terms() {
                let coeff = &(ca * cc) * &twist(*a, *c)?;
                out = out.add(&self.basis_product(*a, *c)?.scale(&coeff));
            }
        }
        Ok(out)
    }

    /// Bilinear Hall product.
    pub fn hall_product(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let q = self.q();
        self.bilinear(x, y, |_, _| Ok(ScalarExt::one(q)))
    }

    /// `[A] * [B] = sqrt<A, B> [A] <> [B]` with `sqrt<A, B> = v^e` for
    /// `<A, B> = q^e`.
    pub fn twisted_product(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let q = self.q();
        self.bilinear(x, y, |a, c| {
            let e = self
                .backend
                .euler_exponent(&self.object(a)?, &self.object(c)?)?;
            Ok(ScalarExt::v_pow(q, e))
        })
    }

    /// Check `([a] <> [b]) <> [c] = [a] <> ([b] <> [c])` for every triple.
    pub fn verify_associativity(&self, ids: &[ClassId]) -> AssociativityReport {
        let q = self.q();
        let pairs: Vec<(ClassId, ClassId)> = ids
            .iter()
            .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
            .collect();
        let _ = self.precompute(&pairs);
        // second-level pairs, in a fixed order
        let mut second = Vec::new();
        for &(a, b) in &pairs {
            if let Some(e) = self.cached_entry(a, b) {
                for &(m, _) in &e.terms {
                    for &c in ids {
                        second.push((m, c));
                        second.push((c, m));
                    }
                }
            }
        }
        let _ = self.precompute(&second);
        let triples: Vec<(ClassId, ClassId, ClassId)> = ids
            .iter()
            .flat_map(|&a| {
                ids.iter()
                    .flat_map(move |&b| ids.iter().map(move |&c| (a, b, c)))
            })
            .collect();
        let outcomes = par::map(self.exec, &triples, |&(a, b, c)| -> Result<bool> {
            let (ea, eb, ec) = (
                HallElement::basis(q, a),
                HallElement::basis(q, b),
                HallElement::basis(q, c),
            );
            let left = self.hall_product(&self.hall_product(&ea, &eb)?, &ec)?;
            let right = self.hall_product(&ea, &self.hall_product(&eb, &ec)?)?;
            Ok(left == right)
        });
        let mut report = AssociativityReport {
            triples: triples.len(),
            ..Default::default()
        };
        for (t, o) in triples.into_iter().zip(outcomes) {
            match o {
                Ok(true) => {}
                Ok(false) => report.failures.push(t),
                Err(e) => report.errors.push((t, e.to_string())),
            }
        }
        report
    }

    /// Make `records` available: an entry whose objects match a record's
    /// encodings is rebuilt from it instead of enumerating extensions.
    pub fn preload(&self, records: impl IntoIterator<Item = CacheRecord>) {
        let mut p = self.preloaded.write().unwrap();
        for r in records {
            p.insert((r.a.clone(), r.c.clone()), r);
        }
    }

    /// All computed entries as records, sorted by encodings.
    pub fn export_cache(&self) -> Result<Vec<CacheRecord>> {
        let entries: Vec<((ClassId, ClassId), Arc<StructureEntry>)> = self
            .entries
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let mut out = BTreeMap::new();
        for ((a, c), e) in entries {
            let rec = CacheRecord {
                a: self.encode_class(a)?,
                c: self.encode_class(c)?,
                hom_dim: e.hom_dim,
                middles: e
                    .terms
                    .iter()
                    .map(|&(b, n)| Ok((self.encode_class(b)?, n)))
                    .collect::<Result<_>>()?,
            };
            out.insert((rec.a.clone(), rec.c.clone()), rec);
        }
        Ok(out.into_values().collect())
    }
}
