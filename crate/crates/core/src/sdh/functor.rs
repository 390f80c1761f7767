use std::collections::{BTreeMap, BTreeSet};

use super::{torus_add, Sdh, SdhElement, StableId};
use crate::error::Result;
use crate::frobcat::{Complex, Gen, TorusClass};
use crate::par;
use crate::report::CheckReport;

impl Sdh {
    /// Image of a torus generator under `Sigma^n`.
    pub fn shift_gen(&self, n: i64, g: Gen) -> Gen {
        self.category().canonical_gen(Gen {
            degree: g.degree - n,
            vertex: g.vertex,
        })
    }

    pub fn shift_torus(&self, n: i64, e: &TorusClass) -> TorusClass {
        let mut out = TorusClass::new();
        for (&g, &k) in e {
            out = torus_add(&out, &TorusClass::from([(self.shift_gen(n, g), k)]));
        }
        out
    }

    /// Algebra map induced by the shift auto-equivalence `Sigma^n`.
    pub fn pushforward_shift(&self, n: i64, x: &SdhElement) -> Result<SdhElement> {
        let cat = self.category();
        let ids: Vec<StableId> = x
            .terms()
            .keys()
            .map(|(_, m)| *m)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let objs = ids
            .iter()
            .map(|&m| cat.shift(&self.stable_object(m)?, n))
            .collect::<Result<Vec<_>>>()?;
        let images: BTreeMap<StableId, SdhElement> = ids
            .iter()
            .copied()
            .zip(self.normalize_all(&objs)?)
            .collect();
        let mut out = SdhElement::zero();
        for ((e, m), c) in x.terms() {
            let y = self.torus_left(&self.shift_torus(n, e), &images[m])?;
            out = out.add(&y.scale(c));
        }
        Ok(out)
    }

    /// `normalize` on a batch: decompositions in parallel, registration in
    /// input order.
    pub fn normalize_all(&self, xs: &[Complex]) -> Result<Vec<SdhElement>> {
        let raws = par::try_map(self.exec(), xs, |x| self.raw_normal(x))?;
        raws.into_iter()
            .map(|r| {
                let n = self.install_normal(r)?;
                Ok(SdhElement::monomial(n.torus, n.id, self.qp(n.hom_exp)))
            })
            .collect()
    }

    /// Checks that `pushforward_shift(n, .)` permutes the torus generators
    /// (injects them, on a bounded window), restricts to a bijection on the stable classes of `objects`, and is
    /// multiplicative on all pairs of their classes.
    pub fn verify_shift_functor(&self, n: i64, objects: &[Complex]) -> Result<CheckReport> {
        let cat = self.category();
        let mut report = CheckReport::new("shift-functor");

        let gens = cat.contractible_generators();
        let images: BTreeSet<Gen> = gens.iter().map(|&g| self.shift_gen(n, g)).collect();
        let gen_set: BTreeSet<Gen> = gens.iter().copied().collect();
        if cat.is_periodic() {
            report.check(
                images == gen_set,
                || "shift does not permute the torus generators".into(),
                vec![],
            );
        } else {
            report.check(
                images.len() == gens.len(),
                || "shift identifies two torus generators".into(),
                vec![],
            );
            report
                .notes
                .push("bounded window: generators are checked for injectivity only".into());
        }
        for &g in &gens {
            let shifted = self.normalize(&cat.shift(&cat.cone(g)?, n)?)?;
            let expected = SdhElement::torus(TorusClass::from([(self.shift_gen(n, g), 1)]));
            report.check(
                shifted == expected,
                || format!("shifted cone normalizes to {shifted}"),
                vec![format!("{}:{}", g.degree, g.vertex + 1)],
            );
        }

        let elems = self.normalize_all(objects)?;
        let ids: BTreeSet<StableId> = elems
            .iter()
            .flat_map(|x| x.terms().keys().map(|(_, m)| *m))
            .collect();
        let mut image_ids = BTreeSet::new();
        for &m in &ids {
            let y = self.pushforward_shift(n, &SdhElement::basis(m))?;
            let back = self.pushforward_shift(-n, &y)?;
            report.check(
                back == SdhElement::basis(m),
                || format!("shifting back gives {back}"),
                vec![self.encode_stable(m)?],
            );
            let keys: Vec<_> = y.terms().keys().cloned().collect();
            let single = keys.len() == 1 && keys[0].0.is_empty();
            report.check(
                single && image_ids.insert(keys[0].1),
                || format!("basis class maps to {y}"),
                vec![self.encode_stable(m)?],
            );
        }

        for x in &elems {
            for y in &elems {
                let lhs = self.pushforward_shift(n, &self.sdh_product(x, y)?)?;
                let rhs = self.sdh_product(
                    &self.pushforward_shift(n, x)?,
                    &self.pushforward_shift(n, y)?,
                )?;
                report.check(
                    lhs == rhs,
                    || format!("F(xy) = {lhs} but F(x)F(y) = {rhs}"),
                    vec![x.to_string(), y.to_string()],
                );
            }
        }
        Ok(report)
    }

    /// Checks of the stable-class basis on `objects`: the projective part
    /// of each torus generator is itself; normalization is idempotent and
    /// compatible with adding contractibles; stable ids separate exactly
    /// the stably non-isomorphic objects.
    pub fn verify_freeness(&self, objects: &[Complex]) -> Result<CheckReport> {
        let cat = self.category();
        let mut report = CheckReport::new("freeness");

        for g in cat.contractible_generators() {
            let (t, rest) = cat.strip_contractibles(&cat.cone(g)?)?;
            report.check(
                t == TorusClass::from([(g, 1)]) && rest.is_zero(),
                || "projective part of a generator is not itself".into(),
                vec![format!("{}:{}", g.degree, g.vertex + 1)],
            );
        }

        let gens = cat.contractible_generators();
        let forms = par::try_map(self.exec(), objects, |x| self.raw_normal(x))?;
        let mut normal = Vec::new();
        for raw in forms {
            let rest = raw.rest.clone();
            let n = self.install_normal(raw)?;
            normal.push((n, rest));
        }

        for (x, (n, rest)) in objects.iter().zip(&normal) {
            let enc = vec![cat.encode(x)];
            let rebuilt = cat.direct_sum(&cat.torus_object(&n.torus)?, rest);
            let (e2, id2, c2) = self.normal_form(&rebuilt)?;
            report.check(
                e2 == n.torus && id2 == n.id && c2 == self.qp(n.hom_exp),
                || "normalization is not idempotent".into(),
                enc.clone(),
            );
            for &g in &gens {
                let y = cat.direct_sum(&cat.cone(g)?, x);
                let (e3, id3, c3) = self.normal_form(&y)?;
                let t = TorusClass::from([(g, 1)]);
                let expect_c = self.qp(n.hom_exp + self.torus_hom_exp(&t, n.id)?);
                report.check(
                    e3 == torus_add(&t, &n.torus) && id3 == n.id && c3 == expect_c,
                    || format!("adding the cone {}:{} breaks normalization", g.degree, g.vertex + 1),
                    enc.clone(),
                );
            }
        }

        let pairs: Vec<(usize, usize)> = (0..objects.len())
            .flat_map(|i| (i + 1..objects.len()).map(move |j| (i, j)))
            .collect();
        let iso = par::try_map(self.exec(), &pairs, |&(i, j)| {
            cat.iso_test_cx(&normal[i].1, &normal[j].1)
        })?;
        for (&(i, j), same) in pairs.iter().zip(iso) {
            report.check(
                same == (normal[i].0.id == normal[j].0.id),
                || "stable ids disagree with stable isomorphism".into(),
                vec![cat.encode(&objects[i]), cat.encode(&objects[j])],
            );
        }
        report.notes.push(format!(
            "{} objects, {} stable classes",
            objects.len(),
            normal.iter().map(|(n, _)| n.id).collect::<BTreeSet<_>>().len()
        ));
        Ok(report)
    }
}
