//! Semi-derived Hall algebras: the Hall algebra of a complex backend
//! localized at the contractible classes, kept in the normal form
//! `t^e <> [m]` with `t^e = [K_e]` a monomial in the quantum torus of
//! contractibles and `m` a projective-free canonical representative.
//!
//! Conventions used throughout:
//!
//! * `t^e <> t^f = <e, f>^{-1} t^{e+f}` with `<e, f> = |Hom(K_e, K_f)|`
//!   extended bimultiplicatively;
//! * `[m] <> t^f = lambda(f, m) t^f <> [m]` with
//!   `lambda(f, m) = prod_g (|Hom(K_g, m)| / |Hom(m, K_g)|)^{f_g}`;
//! * `[K_e (+) m] = |Hom(K_e, m)| t^e <> [m]`.

mod derived;
mod element;
mod functor;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::config::Exec;
use crate::error::{HallError, Result};
use crate::frobcat::{Complex, ComplexCategory, Gen, TorusClass};
use crate::hallcore::{ClassId, HallAlgebra};
use crate::par;
use crate::quiverrep::IsoKey;
use crate::scalar::{self, Rational};

pub use element::{torus_add, torus_neg, DhElement, SdhElement, StableId, TorusElement};

#[derive(Clone, Debug)]
struct Normal {
    torus: TorusClass,
    id: StableId,
    hom_exp: i64,
}

struct RawNormal {
    torus: TorusClass,
    key: IsoKey,
    rest: Complex,
    hom_exp: i64,
}

struct Stable {
    objects: Vec<Complex>,
    by_key: HashMap<IsoKey, StableId>,
    hall_ids: Vec<ClassId>,
}

type DhEntry = Arc<Vec<(StableId, Rational)>>;

/// Semi-derived Hall algebra of a complex backend, together with the
/// derived Hall algebra of its stable category.
pub struct Sdh {
    hall: HallAlgebra<ComplexCategory>,
    stable: RwLock<Stable>,
    normal: RwLock<HashMap<ClassId, Normal>>,
    pairing: RwLock<HashMap<(Gen, Gen), i64>>,
    gen_hom: RwLock<HashMap<(Gen, StableId, bool), i64>>,
    rel: RwLock<HashMap<(StableId, StableId), i64>>,
    dh: RwLock<HashMap<(StableId, StableId), DhEntry>>,
}

impl Sdh {
    pub fn new(cat: ComplexCategory, exec: Exec) -> Result<Self> {
        let hall = HallAlgebra::new(cat, exec)?;
        let zero = hall.backend().zero();
        let key = hall.backend().iso_key(&zero)?;
        Ok(Sdh {
            hall,
            stable: RwLock::new(Stable {
                objects: vec![zero],
                by_key: HashMap::from([(key, 0)]),
                hall_ids: vec![0],
            }),
            normal: RwLock::new(HashMap::new()),
            pairing: RwLock::new(HashMap::new()),
            gen_hom: RwLock::new(HashMap::new()),
            rel: RwLock::new(HashMap::new()),
            dh: RwLock::new(HashMap::new()),
        })
    }

    pub fn category(&self) -> &ComplexCategory {
        self.hall.backend()
    }

    pub fn hall(&self) -> &HallAlgebra<ComplexCategory> {
        &self.hall
    }

    pub fn exec(&self) -> Exec {
        self.hall.exec()
    }

    pub fn q(&self) -> u32 {
        self.hall.q()
    }

    fn qp(&self, e: i64) -> Rational {
        scalar::q_pow(self.q(), e)
    }

    pub fn stable_count(&self) -> usize {
        self.stable.read().unwrap().objects.len()
    }

    /// Canonical projective-free representative of a stable class.
    pub fn stable_object(&self, id: StableId) -> Result<Complex> {
        self.stable
            .read()
            .unwrap()
            .objects
            .get(id)
            .cloned()
            .ok_or(HallError::UnknownClass(id))
    }

    pub fn encode_stable(&self, id: StableId) -> Result<String> {
        Ok(self.category().encode(&self.stable_object(id)?))
    }

    fn stable_hall_id(&self, id: StableId) -> Result<ClassId> {
        self.stable
            .read()
            .unwrap()
            .hall_ids
            .get(id)
            .copied()
            .ok_or(HallError::UnknownClass(id))
    }

    fn install_stable(&self, key: IsoKey, m: &Complex) -> Result<StableId> {
        if let Some(&id) = self.stable.read().unwrap().by_key.get(&key) {
            return Ok(id);
        }
        let hall_id = self.hall.register(m)?;
        let mut s = self.stable.write().unwrap();
        if let Some(&id) = s.by_key.get(&key) {
            return Ok(id);
        }
        let id = s.objects.len();
        s.objects.push(m.clone());
        s.by_key.insert(key, id);
        s.hall_ids.push(hall_id);
        Ok(id)
    }

    fn raw_normal(&self, x: &Complex) -> Result<RawNormal> {
        let cat = self.category();
        let (torus, rest) = cat.strip_contractibles(x)?;
        let key = cat.iso_key(&rest)?;
        let hom_exp = cat.hom_dim(&cat.torus_object(&torus)?, &rest)? as i64;
        Ok(RawNormal {
            torus,
            key,
            rest,
            hom_exp,
        })
    }

    fn install_normal(&self, raw: RawNormal) -> Result<Normal> {
        Ok(Normal {
            id: self.install_stable(raw.key, &raw.rest)?,
            torus: raw.torus,
            hom_exp: raw.hom_exp,
        })
    }

    /// `(e, m, c)` with `[x] = c t^e <> [m]`.
    pub fn normal_form(&self, x: &Complex) -> Result<(TorusClass, StableId, Rational)> {
        let n = self.install_normal(self.raw_normal(x)?)?;
        Ok((n.torus, n.id, self.qp(n.hom_exp)))
    }

    /// `[x]` in normal form: `|Hom(K, m)| t_K <> [m]`.
    pub fn normalize(&self, x: &Complex) -> Result<SdhElement> {
        let (e, m, c) = self.normal_form(x)?;
        Ok(SdhElement::monomial(e, m, c))
    }

    /// Stable ids of the projective-free parts of `xs`, registered in order.
    pub fn register_stable_all(&self, xs: &[Complex]) -> Result<Vec<StableId>> {
        let raws = par::try_map(self.exec(), xs, |x| self.raw_normal(x))?;
        raws.into_iter()
            .map(|r| Ok(self.install_normal(r)?.id))
            .collect()
    }

    fn class_normal(&self, id: ClassId) -> Result<Normal> {
        if let Some(n) = self.normal.read().unwrap().get(&id) {
            return Ok(n.clone());
        }
        let n = self.install_normal(self.raw_normal(&self.hall.object(id)?)?)?;
        self.normal.write().unwrap().insert(id, n.clone());
        Ok(n)
    }

    /// Normalize Hall classes: decompositions in parallel, registration in
    /// input order.
    fn prepare_classes(&self, ids: &[ClassId]) -> Result<()> {
        let missing: Vec<ClassId> = {
            let n = self.normal.read().unwrap();
            let mut seen = std::collections::HashSet::new();
            ids.iter()
                .copied()
                .filter(|i| !n.contains_key(i) && seen.insert(*i))
                .collect()
        };
        let raws = par::try_map(self.exec(), &missing, |&id| {
            self.raw_normal(&self.hall.object(id)?)
        })?;
        for (id, raw) in missing.into_iter().zip(raws) {
            let n = self.install_normal(raw)?;
            self.normal.write().unwrap().insert(id, n);
        }
        Ok(())
    }

    /// `log_q <g, h> = dim Hom(K_g, K_h)`.
    pub fn pairing_exp(&self, g: Gen, h: Gen) -> Result<i64> {
        if let Some(&v) = self.pairing.read().unwrap().get(&(g, h)) {
            return Ok(v);
        }
        let cat = self.category();
        let v = cat.hom_dim(&cat.cone(g)?, &cat.cone(h)?)? as i64;
        self.pairing.write().unwrap().insert((g, h), v);
        Ok(v)
    }

    /// `log_q <e, f>` extended bimultiplicatively.
    pub fn torus_pairing_exp(&self, e: &TorusClass, f: &TorusClass) -> Result<i64> {
        let mut s = 0;
        for (&g, &a) in e {
            for (&h, &b) in f {
                s += a * b * self.pairing_exp(g, h)?;
            }
        }
        Ok(s)
    }

    /// `dim Hom(K_g, m)` (`to_gen = false`) or `dim Hom(m, K_g)`.
    fn gen_hom_exp(&self, g: Gen, m: StableId, to_gen: bool) -> Result<i64> {
        if let Some(&v) = self.gen_hom.read().unwrap().get(&(g, m, to_gen)) {
            return Ok(v);
        }
        let cat = self.category();
        let k = cat.cone(g)?;
        let x = self.stable_object(m)?;
        let v = if to_gen {
            cat.hom_dim(&x, &k)?
        } else {
            cat.hom_dim(&k, &x)?
        } as i64;
        self.gen_hom.write().unwrap().insert((g, m, to_gen), v);
        Ok(v)
    }

    /// `log_q |Hom(K_e, m)|`.
    pub fn torus_hom_exp(&self, e: &TorusClass, m: StableId) -> Result<i64> {
        let mut s = 0;
        for (&g, &a) in e {
            s += a * self.gen_hom_exp(g, m, false)?;
        }
        Ok(s)
    }

    /// `log_q |Hom(m, K_e)|`.
    pub fn hom_torus_exp(&self, m: StableId, e: &TorusClass) -> Result<i64> {
        let mut s = 0;
        for (&g, &a) in e {
            s += a * self.gen_hom_exp(g, m, true)?;
        }
        Ok(s)
    }

    /// `t^e t^f = <e, f>^{-1} t^{e+f}`.
    pub fn torus_mul(&self, s: &TorusElement, t: &TorusElement) -> Result<TorusElement> {
        let pe = self.torus_pairing_exp(&s.exponents, &t.exponents)?;
        Ok(TorusElement {
            exponents: torus_add(&s.exponents, &t.exponents),
            coeff: &s.coeff * &t.coeff * self.qp(-pe),
        })
    }

    /// Two-sided inverse in the quantum torus.
    pub fn torus_inverse(&self, s: &TorusElement) -> Result<TorusElement> {
        let pe = self.torus_pairing_exp(&s.exponents, &s.exponents)?;
        Ok(TorusElement {
            exponents: torus_neg(&s.exponents),
            coeff: self.qp(-pe) / &s.coeff,
        })
    }

    /// `t^e <> y` for a normal-form `y`.
    pub fn torus_left(&self, e: &TorusClass, y: &SdhElement) -> Result<SdhElement> {
        let mut out = SdhElement::zero();
        for ((f, m), c) in y.terms() {
            let pe = self.torus_pairing_exp(e, f)?;
            out.add_term(torus_add(e, f), *m, c * self.qp(-pe));
        }
        Ok(out)
    }

    /// Product of normal forms with an extra scalar `q^twist` per pair of
    /// monomials.
    fn product_with(
        &self,
        x: &SdhElement,
        y: &SdhElement,
        twist: impl Fn(&TorusClass, StableId, &TorusClass, StableId) -> Result<i64>,
    ) -> Result<SdhElement> {
        let mut pairs = Vec::new();
        for (_, a) in x.terms().keys() {
            for (_, b) in y.terms().keys() {
                pairs.push((self.stable_hall_id(*a)?, self.stable_hall_id(*b)?));
            }
        }
        self.hall.precompute(&pairs)?;
        let mut classes = Vec::new();
        for &(a, b) in &pairs {
            classes.extend(self.hall.entry(a, b)?.terms.iter().map(|t| t.0));
        }
        self.prepare_classes(&classes)?;

        let mut out = SdhElement::zero();
        for ((e, a), c1) in x.terms() {
            for ((f, b), c2) in y.terms() {
                let lam = self.torus_hom_exp(f, *a)? - self.hom_torus_exp(*a, f)?;
                let base_exp = lam - self.torus_pairing_exp(e, f)? + twist(e, *a, f, *b)?;
                let base = c1 * c2 * self.qp(base_exp);
                let ef = torus_add(e, f);
                let prod = self
                    .hall
                    .basis_product(self.stable_hall_id(*a)?, self.stable_hall_id(*b)?)?;
                for (cls, cb) in prod.terms() {
                    let n = self.class_normal(*cls)?;
                    let exp = n.hom_exp - self.torus_pairing_exp(&ef, &n.torus)?;
                    out.add_term(
                        torus_add(&ef, &n.torus),
                        n.id,
                        &base * cb.rational_part() * self.qp(exp),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Product in the localized Hall algebra, reduced to normal form.
    pub fn sdh_product(&self, x: &SdhElement, y: &SdhElement) -> Result<SdhElement> {
        self.product_with(x, y, |_, _, _, _| Ok(0))
    }

    /// Batch the Hall products behind `sdh_product` on all basis pairs.
    pub fn precompute_basis(&self, ids: &[StableId]) -> Result<()> {
        let mut pairs = Vec::new();
        for &a in ids {
            for &b in ids {
                pairs.push((self.stable_hall_id(a)?, self.stable_hall_id(b)?));
            }
        }
        self.hall.precompute(&pairs)?;
        let mut classes = Vec::new();
        for &(a, b) in &pairs {
            classes.extend(self.hall.entry(a, b)?.terms.iter().map(|t| t.0));
        }
        self.prepare_classes(&classes)
    }

    /// `log_q` of the relative Euler form
    /// `(|Hom(a, b)| / |Hom_st(a, b)|) prod_{i>0} |Ext_st^{-i}(a, b)|^{(-1)^{i-1}}`.
    pub fn rel_euler_exp_objects(&self, a: &Complex, b: &Complex) -> Result<i64> {
        let cat = self.category();
        if cat.is_periodic() {
            return Err(HallError::RelEulerUndefined(
                "negative stable Ext groups of periodic complexes never vanish".into(),
            ));
        }
        let mut e = cat.hom_dim(a, b)? as i64 - cat.stable_hom_dim(a, b)? as i64;
        if let (Some((_, a_hi)), Some((b_lo, _))) = (cat.support(a), cat.support(b)) {
            for i in 1..=(a_hi - b_lo) {
                let d = cat.stable_hom_dim(a, &cat.shift(b, -i)?)? as i64;
                e += if i % 2 == 1 { d } else { -d };
            }
        }
        Ok(e)
    }

    /// Relative Euler form of two complexes.
    pub fn rel_euler(&self, a: &Complex, b: &Complex) -> Result<Rational> {
        Ok(self.qp(self.rel_euler_exp_objects(a, b)?))
    }

    fn rel_exp(&self, a: StableId, b: StableId) -> Result<i64> {
        if let Some(&v) = self.rel.read().unwrap().get(&(a, b)) {
            return Ok(v);
        }
        let v = self.rel_euler_exp_objects(&self.stable_object(a)?, &self.stable_object(b)?)?;
        self.rel.write().unwrap().insert((a, b), v);
        Ok(v)
    }

    /// `x * y = <x, y>_rel x <> y`, bilinear on normal-form monomials.
    pub fn sdh_tw_product(&self, x: &SdhElement, y: &SdhElement) -> Result<SdhElement> {
        if self.category().is_periodic() {
            return Err(HallError::RelEulerUndefined(
                "the twisted semi-derived product needs bounded complexes".into(),
            ));
        }
        self.product_with(x, y, |e, a, f, b| {
            Ok(self.torus_pairing_exp(e, f)?
                + self.torus_hom_exp(e, b)?
                + self.hom_torus_exp(a, f)?
                + self.rel_exp(a, b)?)
        })
    }
}

#[cfg(test)]
mod tests;

