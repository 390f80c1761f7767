//! The four subcommands, independent of argument parsing and file output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hallforge::frobcat::{Complex, ComplexDimCap};
use hallforge::hallcore::{ClassId, HallAlgebra, HallBackend, HallElement};
use hallforge::par;
use hallforge::report::CheckReport;
use hallforge::sdh::{DhElement, Sdh, SdhElement, StableId};
use hallforge::{Exec, HallError};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cache;
use crate::element::{ElementFile, Term};
use crate::spec::{CategorySpec, DimCap, Workspace, FORMAT_VERSION};
use crate::{Algebra, CliError, Suite};

#[derive(Clone, Debug)]
pub struct Options {
    pub exec: Exec,
    pub use_cache: bool,
    pub cache_dir: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            exec: Exec::Parallel,
            use_cache: true,
            cache_dir: cache::cache_dir(),
        }
    }
}

/// A specification together with its algebras and cache file.
pub struct Session {
    pub spec: CategorySpec,
    pub ws: Workspace,
    cache: Option<PathBuf>,
    config: String,
}

fn unavailable(what: &str) -> CliError {
    CliError::from(HallError::InvalidConfig(format!(
        "{what} needs a complex backend (bounded or periodic)"
    )))
}

impl Session {
    pub fn open(spec_path: &Path, opts: &Options) -> Result<Self, CliError> {
        Self::new(CategorySpec::load(spec_path)?, opts)
    }

    pub fn new(spec: CategorySpec, opts: &Options) -> Result<Self, CliError> {
        let ws = spec.build(opts.exec)?;
        let config = ws.describe();
        let cache = opts
            .use_cache
            .then(|| cache::cache_path(&opts.cache_dir, &config));
        let s = Session {
            spec,
            ws,
            cache,
            config,
        };
        if let Some(path) = &s.cache {
            let records = cache::load(path, &s.config);
            match &s.ws {
                Workspace::Abelian(h) => h.preload(records),
                Workspace::Complex(x) => x.hall().preload(records),
            }
        }
        Ok(s)
    }

    /// Write back every computed structure constant.
    pub fn persist(&self) -> Result<(), CliError> {
        let Some(path) = &self.cache else {
            return Ok(());
        };
        let records = match &self.ws {
            Workspace::Abelian(h) => h.export_cache()?,
            Workspace::Complex(s) => s.hall().export_cache()?,
        };
        cache::save(path, &self.config, &records)
            .map_err(|e| CliError::io(format!("cannot write cache {}: {e}", path.display())))
    }

    pub fn cache_hits(&self) -> usize {
        match &self.ws {
            Workspace::Abelian(h) => h.cache_hits(),
            Workspace::Complex(s) => s.hall().cache_hits(),
        }
    }

    fn complex(&self, what: &str) -> Result<&Sdh, CliError> {
        match &self.ws {
            Workspace::Complex(s) => Ok(s),
            Workspace::Abelian(_) => Err(unavailable(what)),
        }
    }

    fn complex_cap(&self, cap: &DimCap) -> Result<ComplexDimCap, CliError> {
        match cap {
            DimCap::Complex(c) => Ok(*c),
            DimCap::Vector(_) => Err(unavailable("a complex dim cap")),
        }
    }

    fn complexes(&self, cap: &DimCap) -> Result<Vec<Complex>, CliError> {
        let s = self.complex("enumerating complexes")?;
        Ok(s.category().enumerate_complexes(&self.complex_cap(cap)?)?)
    }

    fn stable_ids(&self, cap: &DimCap) -> Result<Vec<StableId>, CliError> {
        let s = self.complex("the derived Hall algebra")?;
        let objs = s
            .category()
            .enumerate_projective_free(&self.complex_cap(cap)?)?;
        let mut ids = s.register_stable_all(&objs)?;
        ids.dedup();
        Ok(ids)
    }

    fn sdh_basis(&self, cap: &DimCap) -> Result<Vec<SdhElement>, CliError> {
        let s = self.complex("the semi-derived Hall algebra")?;
        Ok(s.normalize_all(&self.complexes(cap)?)?)
    }

    /// Hall classes of the enumerated objects, in enumeration order.
    fn hall_ids(&self, cap: &DimCap) -> Result<Vec<ClassId>, CliError> {
        match (&self.ws, cap) {
            (Workspace::Abelian(h), DimCap::Vector(v)) => {
                let reps = h.backend().category().enumerate_reps(v)?;
                Ok(h.register_all(&reps)?)
            }
            (Workspace::Complex(s), DimCap::Complex(_)) => {
                Ok(s.hall().register_all(&self.complexes(cap)?)?)
            }
            _ => Err(CliError::from(HallError::InvalidConfig(
                "dim cap does not match the backend".into(),
            ))),
        }
    }
}

fn hall_mul<B: HallBackend>(
    h: &HallAlgebra<B>,
    algebra: Algebra,
    x: &HallElement,
    y: &HallElement,
) -> Result<HallElement, CliError> {
    Ok(match algebra {
        Algebra::Twisted => h.twisted_product(x, y)?,
        _ => h.hall_product(x, y)?,
    })
}

fn sdh_mul(s: &Sdh, algebra: Algebra, x: &SdhElement, y: &SdhElement) -> Result<SdhElement, CliError> {
    Ok(match algebra {
        Algebra::SdhTw => s.sdh_tw_product(x, y)?,
        _ => s.sdh_product(x, y)?,
    })
}

/// `x * y` in the chosen algebra.
pub fn product(
    session: &Session,
    algebra: Algebra,
    x: &ElementFile,
    y: &ElementFile,
) -> Result<ElementFile, CliError> {
    match (&session.ws, algebra) {
        (Workspace::Abelian(h), Algebra::Hall | Algebra::Twisted) => {
            let p = hall_mul(h, algebra, &x.to_hall(h)?, &y.to_hall(h)?)?;
            ElementFile::from_hall(h, algebra, &p)
        }
        (Workspace::Abelian(_), _) => Err(unavailable(algebra.name())),
        (Workspace::Complex(s), Algebra::Hall | Algebra::Twisted) => {
            let h = s.hall();
            let p = hall_mul(h, algebra, &x.to_hall(h)?, &y.to_hall(h)?)?;
            ElementFile::from_hall(h, algebra, &p)
        }
        (Workspace::Complex(s), Algebra::Sdh | Algebra::SdhTw) => {
            let p = sdh_mul(s, algebra, &x.to_sdh(s)?, &y.to_sdh(s)?)?;
            ElementFile::from_sdh(s, algebra, &p)
        }
        (Workspace::Complex(s), Algebra::Dh) => {
            let p = s.dh_product(&x.to_dh(s)?, &y.to_dh(s)?)?;
            ElementFile::from_dh(s, &p)
        }
    }
}

/// Normal form `sum c t^e [m]` of an element given by arbitrary objects.
pub fn normalize(session: &Session, x: &ElementFile) -> Result<ElementFile, CliError> {
    let s = session.complex("normalize")?;
    ElementFile::from_sdh(s, Algebra::Sdh, &x.to_sdh(s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub format_version: u32,
    pub algebra: String,
    pub dim_cap: String,
    pub basis: Vec<Vec<Term>>,
    pub products: Vec<TableEntry>,
    pub classes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<Term>,
}

fn square<T: Copy>(xs: &[T]) -> Vec<(T, T)> {
    xs.iter()
        .flat_map(|&a| xs.iter().map(move |&b| (a, b)))
        .collect()
}

/// Multiplication table over the enumerated basis.
pub fn table(session: &Session, algebra: Algebra, cap_text: &str) -> Result<TableFile, CliError> {
    let cap = session.spec.parse_dim_cap(cap_text)?;
    let mut basis = Vec::new();
    let mut products = Vec::new();
    match algebra {
        Algebra::Hall | Algebra::Twisted => {
            let ids = session.hall_ids(&cap)?;
            (basis, products) = match &session.ws {
                Workspace::Abelian(h) => hall_table(h, algebra, &ids)?,
                Workspace::Complex(s) => hall_table(s.hall(), algebra, &ids)?,
            };
        }
        Algebra::Sdh | Algebra::SdhTw => {
            let s = session.complex(algebra.name())?;
            let elems = session.sdh_basis(&cap)?;
            let ids: Vec<StableId> = elems
                .iter()
                .flat_map(|e| e.terms().keys().map(|k| k.1))
                .collect();
            s.precompute_basis(&ids)?;
            for e in &elems {
                basis.push(ElementFile::from_sdh(s, algebra, e)?);
            }
            for x in &elems {
                for y in &elems {
                    products.push(ElementFile::from_sdh(s, algebra, &sdh_mul(s, algebra, x, y)?)?);
                }
            }
        }
        Algebra::Dh => {
            let s = session.complex("dh")?;
            let ids = session.stable_ids(&cap)?;
            s.dh_precompute(&square(&ids))?;
            for &i in &ids {
                basis.push(ElementFile::from_dh(s, &DhElement::basis(i))?);
            }
            for &(a, b) in &square(&ids) {
                let p = s.dh_product(&DhElement::basis(a), &DhElement::basis(b))?;
                products.push(ElementFile::from_dh(s, &p)?);
            }
        }
    }
    let n = basis.len();
    let mut classes = BTreeMap::new();
    let mut out_basis = Vec::new();
    for f in basis {
        classes.extend(f.classes);
        out_basis.push(f.terms);
    }
    let mut entries = Vec::new();
    for (k, f) in products.into_iter().enumerate() {
        classes.extend(f.classes);
        entries.push(TableEntry {
            left: k / n.max(1),
            right: k % n.max(1),
            terms: f.terms,
        });
    }
    Ok(TableFile {
        format_version: FORMAT_VERSION,
        algebra: algebra.name().into(),
        dim_cap: cap_text.into(),
        basis: out_basis,
        products: entries,
        classes,
    })
}

type Files = (Vec<ElementFile>, Vec<ElementFile>);

fn hall_table<B: HallBackend>(
    h: &HallAlgebra<B>,
    algebra: Algebra,
    ids: &[ClassId],
) -> Result<Files, CliError> {
    h.precompute(&square(ids))?;
    let e = |i| HallElement::basis(h.q(), i);
    let basis = ids
        .iter()
        .map(|&i| ElementFile::from_hall(h, algebra, &e(i)))
        .collect::<Result<_, _>>()?;
    let mut products = Vec::new();
    for (a, c) in square(ids) {
        products.push(ElementFile::from_hall(h, algebra, &hall_mul(h, algebra, &e(a), &e(c))?)?);
    }
    Ok((basis, products))
}

fn hall_associativity<B: HallBackend>(
    h: &HallAlgebra<B>,
    algebra: Algebra,
    ids: &[ClassId],
) -> Result<CheckReport, CliError> {
    let pairs = square(ids);
    h.precompute(&pairs)?;
    let encode = |t: &[ClassId]| -> Result<Vec<String>, CliError> {
        t.iter().map(|&i| Ok(h.encode_class(i)?)).collect()
    };
    let mut report = CheckReport::new("associativity");
    if algebra == Algebra::Hall {
        let r = h.verify_associativity(ids);
        if let Some((_, e)) = r.errors.first() {
            return Err(CliError::new(1, e.clone()));
        }
        report.checks = r.triples;
        for (a, b, c) in r.failures {
            report.check(false, || "(ab)c != a(bc)".into(), encode(&[a, b, c])?);
        }
        return Ok(report);
    }
    let q = h.q();
    let e = |i| HallElement::basis(q, i);
    let triples: Vec<(ClassId, ClassId, ClassId)> = ids
        .iter()
        .flat_map(|&a| {
            ids.iter()
                .flat_map(move |&b| ids.iter().map(move |&c| (a, b, c)))
        })
        .collect();
    let outcomes = par::try_map(h.exec(), &triples, |&(a, b, c)| {
        let l = h.twisted_product(&h.twisted_product(&e(a), &e(b))?, &e(c))?;
        let r = h.twisted_product(&e(a), &h.twisted_product(&e(b), &e(c))?)?;
        Ok::<_, HallError>(l == r)
    })?;
    for (&(a, b, c), ok) in triples.iter().zip(outcomes) {
        report.check(ok, || "(a*b)*c != a*(b*c)".into(), encode(&[a, b, c])?);
    }
    Ok(report)
}

fn lemma_ext(s: &Sdh, objs: &[Complex]) -> Result<CheckReport, CliError> {
    let cat = s.category();
    let pairs = square(&(0..objs.len()).collect::<Vec<_>>());
    let results = par::try_map(s.exec(), &pairs, |&(i, j)| {
        let (x, y) = (&objs[i], &objs[j]);
        let classes = BigUint::from(cat.ext1_classes(x, y)?.len());
        let stable = cat.stable_hom_card(x, &cat.shift(y, 1)?)?;
        Ok::<_, HallError>((classes, stable))
    })?;
    let mut report = CheckReport::new("lemma-ext");
    for (&(i, j), (classes, stable)) in pairs.iter().zip(results) {
        report.check(
            classes == stable,
            || format!("|Ext^1| = {classes} but |Hom_st(x, y[1])| = {stable}"),
            vec![cat.encode(&objs[i]), cat.encode(&objs[j])],
        );
    }
    Ok(report)
}

/// Run a verification suite over the enumerated grid.
pub fn verify(
    session: &Session,
    suite: Suite,
    algebra: Algebra,
    cap_text: Option<&str>,
) -> Result<CheckReport, CliError> {
    let cap = session.spec.dim_cap(cap_text)?;
    let mut report = match suite {
        Suite::Associativity => match algebra {
            Algebra::Hall | Algebra::Twisted => {
                let ids = session.hall_ids(&cap)?;
                match &session.ws {
                    Workspace::Abelian(h) => hall_associativity(h, algebra, &ids)?,
                    Workspace::Complex(s) => hall_associativity(s.hall(), algebra, &ids)?,
                }
            }
            Algebra::Sdh | Algebra::SdhTw => {
                let s = session.complex(algebra.name())?;
                let elems = session.sdh_basis(&cap)?;
                s.verify_sdh_associativity(&elems, algebra == Algebra::SdhTw)?
            }
            Algebra::Dh => {
                let s = session.complex("dh")?;
                s.verify_dh_associativity(&session.stable_ids(&cap)?)?
            }
        },
        Suite::LemmaExt => {
            let s = session.complex("lemma-ext")?;
            lemma_ext(s, &session.complexes(&cap)?)?
        }
        Suite::Freeness => {
            let s = session.complex("freeness")?;
            s.verify_freeness(&session.complexes(&cap)?)?
        }
        Suite::RelEuler => {
            let s = session.complex("rel-euler")?;
            let objs = session.complexes(&cap)?;
            let tests: Vec<Complex> = objs.iter().filter(|x| !x.is_zero()).take(5).cloned().collect();
            s.verify_rel_euler(&objs, &tests, usize::MAX)?
        }
        Suite::Toen => {
            let s = session.complex("toen")?;
            let ids = session.stable_ids(&cap)?;
            s.compare_toen(&square(&ids))?
        }
        Suite::ShiftFunctor => {
            let s = session.complex("shift-functor")?;
            s.verify_shift_functor(1, &session.complexes(&cap)?)?
        }
    };
    report.suite = suite.name().into();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub suite: String,
    pub algebra: String,
    pub dim_cap: String,
    pub status: String,
    pub checks: usize,
    pub failures: Vec<FailureRecord>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: String,
    pub objects: Vec<String>,
}

impl ReportFile {
    pub fn new(r: &CheckReport, algebra: Algebra, dim_cap: &str) -> Self {
        ReportFile {
            format_version: FORMAT_VERSION,
            suite: r.suite.clone(),
            algebra: algebra.name().into(),
            dim_cap: dim_cap.into(),
            status: if r.passed() { "pass" } else { "fail" }.into(),
            checks: r.checks,
            failures: r
                .failures
                .iter()
                .map(|f| FailureRecord {
                    check: f.check.clone(),
                    objects: f.objects.clone(),
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

