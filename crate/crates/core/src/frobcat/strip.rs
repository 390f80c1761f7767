use super::{Complex, ComplexCategory, ComplexKind, Gen, TorusClass};
use crate::error::{HallError, Result};

impl ComplexCategory {
    /// Cones on the indecomposable projectives, one per placement: each
    /// `n` with `n, n + 1` inside the window when bounded, each residue
    /// when periodic.
    pub fn contractible_generators(&self) -> Vec<Gen> {
        let degrees: Vec<i64> = match self.kind {
            ComplexKind::Bounded { lo, hi, .. } => (lo..hi).collect(),
            ComplexKind::Periodic { period } => (0..period as i64).collect(),
        };
        let mut out = Vec::new();
        for &degree in &degrees {
            for vertex in 0..self.nv() {
                out.push(Gen { degree, vertex });
            }
        }
        out
    }

    /// Normalized generator label: degrees reduced mod the period.
    pub fn canonical_gen(&self, g: Gen) -> Gen {
        match self.kind {
            ComplexKind::Periodic { period } => Gen {
                degree: g.degree.rem_euclid(period as i64),
                vertex: g.vertex,
            },
            ComplexKind::Bounded { .. } => g,
        }
    }

    /// `(+) cone(g)^{e_g}` for a class with nonnegative exponents.
    pub fn torus_object(&self, t: &TorusClass) -> Result<Complex> {
        let mut acc = self.zero();
        for (&g, &e) in t {
            if e < 0 {
                return Err(HallError::Contract(format!(
                    "negative exponent {e} has no object"
                )));
            }
            let c = self.cone(g)?;
            for _ in 0..e {
                acc = self.direct_sum(&acc, &c);
            }
        }
        Ok(acc)
    }

    /// Generator of an indecomposable summand, or `None` when it is not
    /// contractible. Cached per registry id.
    fn summand_generator(&self, id: usize, c: &Complex) -> Result<Option<Gen>> {
        if let Some(g) = self.generators.read().unwrap().get(&id) {
            return Ok(*g);
        }
        let g = if self.is_contractible(c)? {
            Some(self.locate_cone(c)?)
        } else {
            None
        };
        self.generators.write().unwrap().insert(id, g);
        Ok(g)
    }

    /// Placement of an indecomposable contractible complex: the degree
    /// whose outgoing differential is nonzero, and the vertex of its top.
    fn locate_cone(&self, c: &Complex) -> Result<Gen> {
        for n in self.degrees() {
            if self.diff(c, n).iter().all(|m| m.is_zero()) {
                continue;
            }
            let mult = self.multiplicities(c, n);
            let vertices: Vec<usize> = (0..mult.len()).filter(|&v| mult[v] > 0).collect();
            if mult.iter().sum::<usize>() != 1 {
                break;
            }
            return Ok(self.canonical_gen(Gen {
                degree: n,
                vertex: vertices[0],
            }));
        }
        Err(HallError::Contract(
            "contractible indecomposable is not a cone on an indecomposable projective".into(),
        ))
    }

    /// Split off every contractible summand. Returns the projective part
    /// as a torus class and the remaining projective-free complex.
    pub fn strip_contractibles(&self, x: &Complex) -> Result<(TorusClass, Complex)> {
        self.check(x)?;
        let mut torus = TorusClass::new();
        let mut rest = Vec::new();
        for (id, flat) in self.flat.decompose_classified(&x.flat, &self.registry)? {
            let c = Complex { flat };
            match self.summand_generator(id, &c)? {
                Some(g) => *torus.entry(g).or_insert(0) += 1,
                None => rest.push(c),
            }
        }
        Ok((torus, self.direct_sum_all(rest.iter())))
    }

    /// No contractible summand.
    pub fn is_projective_free(&self, x: &Complex) -> Result<bool> {
        Ok(self.strip_contractibles(x)?.0.is_empty())
    }
}
