//! Finite-dimensional representations of a quiver over `F_p`: the abelian
//! backend, and (through flattening) the engine behind the complex
//! backends.

mod classify;
mod decompose;
mod enumerate;

use num_rational::BigRational;

use crate::config::Caps;
use crate::error::{HallError, Result};
use crate::ffla::{self, Elem, Field, Matrix};
use crate::scalar;

pub use classify::{IndecRegistry, IsoKey};
pub use enumerate::{dims_up_to, reps_with_dims};

/// A finite quiver. Vertices are `0..vertex_count`; arrows are
/// `(tail, head)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// An acyclic quiver; oriented cycles are rejected.
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let q = Self::new_unchecked(vertices, arrows)?;
        if !q.is_acyclic() {
            return Err(HallError::InvalidConfig(
                "quiver has an oriented cycle".into(),
            ));
        }
        Ok(q)
    }

    /// Any finite quiver, cycles allowed. Used for flattened complexes,
    /// where only Hom-type computations are performed.
    pub(crate) fn new_unchecked(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(HallError::InvalidConfig("quiver needs a vertex".into()));
        }
        for &(t, h) in &arrows {
            if t >= vertices || h >= vertices {
                return Err(HallError::InvalidConfig(format!(
                    "arrow ({t}, {h}) refers to a missing vertex"
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("linear quiver is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let mut indeg = vec![0usize; self.vertices];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        stack.push(h);
                    }
                }
            }
        }
        seen == self.vertices
    }

    /// All paths starting at `start`, as arrow-index sequences (the trivial
    /// path first). Requires acyclicity.
    pub fn paths_from(&self, start: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out = vec![(start, Vec::new())];
        let mut i = 0;
        while i < out.len() {
            let (end, path) = out[i].clone();
            for (a, &(t, h)) in self.arrows.iter().enumerate() {
                if t == end {
                    let mut p = path.clone();
                    p.push(a);
                    out.push((h, p));
                }
            }
            i += 1;
        }
        out
    }
}

/// One linear map per vertex.
pub type Morphism = Vec<Matrix>;

/// One linear map per arrow, `a_tail -> c_head`; parameterises extensions.
pub type Cocycle = Vec<Matrix>;

/// A representation: a vector space `k^{dims[v]}` at each vertex and a
/// matrix of shape `dims[head] x dims[tail]` on each arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    pub fn new(quiver: &Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(HallError::Contract(format!(
                "dimension vector has length {}, quiver has {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(HallError::Contract(format!(
                "{} arrow maps given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (i, (&(t, h), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.shape() != (dims[h], dims[t]) {
                return Err(HallError::Contract(format!(
                    "arrow {i} map has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[h], dims[t])
                )));
            }
        }
        Ok(Rep { dims, maps })
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Rep { dims, maps }
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Rep {
            dims: vec![0; quiver.vertex_count()],
            maps: quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Canonical text form: dimensions, then one `RxC:entries` block per
    /// arrow, row-major, separated by `|`. Example: `1,1|1x1:1`.
    pub fn encode(&self) -> String {
        let mut s = join(self.dims.iter());
        for m in &self.maps {
            s.push('|');
            s.push_str(&format!("{}x{}:{}", m.rows(), m.cols(), join(m.data().iter())));
        }
        s
    }

    /// Inverse of [`Rep::encode`], validated against `quiver`.
    pub fn decode(quiver: &Quiver, text: &str) -> Result<Self> {
        let bad = || HallError::Contract(format!("malformed representation encoding {text:?}"));
        let mut parts = text.trim().split('|');
        let dims = parse_list(parts.next().ok_or_else(bad)?).ok_or_else(bad)?;
        let mut maps = Vec::new();
        for block in parts {
            let (shape, data) = block.split_once(':').ok_or_else(bad)?;
            let (r, c) = shape.split_once('x').ok_or_else(bad)?;
            let r: usize = r.parse().map_err(|_| bad())?;
            let c: usize = c.parse().map_err(|_| bad())?;
            let data: Vec<Elem> = parse_list(data).ok_or_else(bad)?;
            if data.len() != r * c {
                return Err(bad());
            }
            maps.push(Matrix::from_vec(r, c, data));
        }
        Rep::new(quiver, dims, maps)
    }
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

/// Ext^1 data: the dimension of the quotient and one cocycle per class.
#[derive(Clone, Debug)]
pub struct Ext1Space {
    pub cocycle_dim: usize,
    pub dim: usize,
    pub classes: Vec<Cocycle>,
}

/// Representations of a fixed quiver over a fixed field.
#[derive(Clone, Debug)]
pub struct RepCategory {
    quiver: Quiver,
    field: Field,
    caps: Caps,
}

impl RepCategory {
    pub fn new(quiver: Quiver, field: Field, caps: Caps) -> Self {
        RepCategory {
            quiver,
            field,
            caps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    fn check_same(&self, a: &Rep) -> Result<()> {
        if a.dims.len() != self.quiver.vertex_count() || a.maps.len() != self.quiver.arrows().len()
        {
            return Err(HallError::Contract("representation of a different quiver".into()));
        }
        Ok(())
    }

    pub fn rep(&self, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        Rep::new(&self.quiver, dims, maps)
    }

    pub fn zero(&self) -> Rep {
        Rep::zero(&self.quiver)
    }

    /// Parse [`Rep::encode`] output, rejecting entries outside `F_p`.
    pub fn decode(&self, text: &str) -> Result<Rep> {
        let r = Rep::decode(&self.quiver, text)?;
        let p = self.field.p();
        if r.maps.iter().any(|m| m.data().iter().any(|&x| x >= p)) {
            return Err(HallError::Contract(format!("entry outside F_{p} in {text:?}")));
        }
        Ok(r)
    }

    /// Simple representation at `v`.
    pub fn simple(&self, v: usize) -> Rep {
        let mut dims = vec![0; self.quiver.vertex_count()];
        dims[v] = 1;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|&(t, h)| Matrix::zeros(dims[h], dims[t]))
            .collect();
        Rep { dims, maps }
    }

    /// The indecomposable projective at `v`: basis = paths starting at `v`.
    pub fn proj_indec(&self, v: usize) -> Rep {
        let paths = self.quiver.paths_from(v);
        let n = self.quiver.vertex_count();
        // index of each path within its end vertex
        let mut dims = vec![0; n];
        let mut slot = Vec::with_capacity(paths.len());
        for (end, _) in &paths {
            slot.push(dims[*end]);
            dims[*end] += 1;
        }
        let mut maps: Vec<Matrix> = self
            .quiver
            .arrows()
            .iter()
            .map(|&(t, h)| Matrix::zeros(dims[h], dims[t]))
            .collect();
        for (i, (end, path)) in paths.iter().enumerate() {
            for (a, &(t, h)) in self.quiver.arrows().iter().enumerate() {
                if t != *end {
                    continue;
                }
                let mut ext = path.clone();
                ext.push(a);
                let j = paths
                    .iter()
                    .position(|(e, p)| *e == h && *p == ext)
                    .expect("path closure");
                maps[a].set(slot[j], slot[i], 1);
            }
        }
        Rep { dims, maps }
    }

    /// Direct sum of the given projectives: `mult[v]` copies of `P_v`,
    /// summands ordered by vertex.
    pub fn projective(&self, mult: &[usize]) -> Rep {
        let mut acc = self.zero();
        for (v, &k) in mult.iter().enumerate() {
            let p = self.proj_indec(v);
            for _ in 0..k {
                acc = self.direct_sum(&acc, &p);
            }
        }
        acc
    }

    pub fn direct_sum(&self, a: &Rep, b: &Rep) -> Rep {
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let maps = a
            .maps
            .iter()
            .zip(&b.maps)
            .map(|(x, y)| Matrix::block_diag(x, y))
            .collect();
        Rep { dims, maps }
    }

    pub fn direct_sum_all<'a>(&self, parts: impl IntoIterator<Item = &'a Rep>) -> Rep {
        parts
            .into_iter()
            .fold(self.zero(), |acc, p| self.direct_sum(&acc, p))
    }

    fn hom_offsets(&self, a: &Rep, b: &Rep) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(a.dims.len());
        let mut total = 0;
        for v in 0..a.dims.len() {
            offsets.push(total);
            total += b.dims[v] * a.dims[v];
        }
        (offsets, total)
    }

    fn hom_equations(&self, a: &Rep, b: &Rep) -> (Matrix, Vec<usize>, usize) {
        let f = self.field;
        let (off, unknowns) = self.hom_offsets(a, b);
        let rows: usize = self
            .quiver
            .arrows()
            .iter()
            .map(|&(t, h)| b.dims[h] * a.dims[t])
            .sum();
        let mut eq = Matrix::zeros(rows, unknowns);
        let mut row = 0;
        for (alpha, &(t, h)) in self.quiver.arrows().iter().enumerate() {
            let am = &a.maps[alpha];
            let bm = &b.maps[alpha];
            for r in 0..b.dims[h] {
                for c in 0..a.dims[t] {
                    // phi_h a_alpha
                    for k in 0..a.dims[h] {
                        let coef = am.get(k, c);
                        if coef != 0 {
                            let idx = off[h] + r * a.dims[h] + k;
                            eq.set(row, idx, f.add(eq.get(row, idx), coef));
                        }
                    }
                    // - b_alpha phi_t
                    for k in 0..b.dims[t] {
                        let coef = bm.get(r, k);
                        if coef != 0 {
                            let idx = off[t] + k * a.dims[t] + c;
                            eq.set(row, idx, f.sub(eq.get(row, idx), coef));
                        }
                    }
                    row += 1;
                }
            }
        }
        (eq, off, unknowns)
    }

    fn unpack_morphism(&self, a: &Rep, b: &Rep, off: &[usize], v: &[Elem]) -> Morphism {
        (0..a.dims.len())
            .map(|x| {
                let (r, c) = (b.dims[x], a.dims[x]);
                Matrix::from_vec(r, c, v[off[x]..off[x] + r * c].to_vec())
            })
            .collect()
    }

    /// Basis of `Hom(a, b)`; `|Hom| = p^len`.
    pub fn hom_basis(&self, a: &Rep, b: &Rep) -> Result<Vec<Morphism>> {
        self.check_same(a)?;
        self.check_same(b)?;
        let (eq, off, _) = self.hom_equations(a, b);
        Ok(ffla::kernel_basis(self.field, &eq)
            .iter()
            .map(|v| self.unpack_morphism(a, b, &off, v))
            .collect())
    }

    pub fn hom_dim(&self, a: &Rep, b: &Rep) -> Result<usize> {
        self.check_same(a)?;
        self.check_same(b)?;
        let (eq, _, unknowns) = self.hom_equations(a, b);
        Ok(unknowns - eq.rank(self.field))
    }

    pub fn is_morphism(&self, a: &Rep, b: &Rep, phi: &Morphism) -> bool {
        let f = self.field;
        phi.len() == a.dims.len()
            && phi
                .iter()
                .enumerate()
                .all(|(v, m)| m.shape() == (b.dims[v], a.dims[v]))
            && self
                .quiver
                .arrows()
                .iter()
                .enumerate()
                .all(|(alpha, &(t, h))| {
                    phi[h].mul(f, &a.maps[alpha]) == b.maps[alpha].mul(f, &phi[t])
                })
    }

    pub fn identity(&self, a: &Rep) -> Morphism {
        a.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }

    pub fn is_iso_morphism(&self, phi: &Morphism) -> bool {
        phi.iter().all(|m| m.is_invertible(self.field))
    }

    /// `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[Elem], basis: &[Morphism], a: &Rep, b: &Rep) -> Morphism {
        let f = self.field;
        let mut out: Morphism = (0..a.dims.len())
            .map(|v| Matrix::zeros(b.dims[v], a.dims[v]))
            .collect();
        for (&c, m) in coeffs.iter().zip(basis) {
            if c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(m) {
                *o = o.add(f, &x.scale(f, c));
            }
        }
        out
    }

    fn ext1_layout(&self, a: &Rep, c: &Rep) -> (Vec<usize>, usize) {
        let mut off = Vec::new();
        let mut total = 0;
        for &(t, h) in self.quiver.arrows() {
            off.push(total);
            total += c.dims[h] * a.dims[t];
        }
        (off, total)
    }

    /// Images of the coboundary map `g -> (c_alpha g_t - g_h a_alpha)`.
    fn coboundaries(&self, a: &Rep, c: &Rep, off: &[usize], total: usize) -> Vec<Vec<Elem>> {
        let f = self.field;
        let mut out = Vec::new();
        for v in 0..a.dims.len() {
            for r in 0..c.dims[v] {
                for s in 0..a.dims[v] {
                    // g = unit matrix E_{rs} at vertex v
                    let mut img = vec![0; total];
                    for (alpha, &(t, h)) in self.quiver.arrows().iter().enumerate() {
                        let (rows, cols) = (c.dims[h], a.dims[t]);
                        if t == v {
                            // c_alpha E_rs : column s gets c_alpha[:, r]
                            let cm = &c.maps[alpha];
                            for i in 0..rows {
                                let idx = off[alpha] + i * cols + s;
                                img[idx] = f.add(img[idx], cm.get(i, r));
                            }
                        }
                        if h == v {
                            // - E_rs a_alpha : row r gets a_alpha[s, :]
                            let am = &a.maps[alpha];
                            for j in 0..cols {
                                let idx = off[alpha] + r * cols + j;
                                img[idx] = f.sub(img[idx], am.get(s, j));
                            }
                        }
                    }
                    out.push(img);
                }
            }
        }
        out
    }

    /// `dim Ext^1(a, c)` where extensions are `0 -> c -> B -> a -> 0`.
    pub fn ext1_dim(&self, a: &Rep, c: &Rep) -> Result<usize> {
        self.check_same(a)?;
        self.check_same(c)?;
        let (off, total) = self.ext1_layout(a, c);
        let cob = self.coboundaries(a, c, &off, total);
        Ok(total - ffla::span_rank(self.field, total, &cob))
    }

    /// `Ext^1(a, c)` with one representative cocycle per class, enumerated
    /// in lexicographic order of quotient coordinates (zero class first).
    pub fn ext1_space(&self, a: &Rep, c: &Rep) -> Result<Ext1Space> {
        self.check_same(a)?;
        self.check_same(c)?;
        let f = self.field;
        let (off, total) = self.ext1_layout(a, c);
        let cob = self.coboundaries(a, c, &off, total);
        let units: Vec<Vec<Elem>> = (0..total)
            .map(|i| {
                let mut e = vec![0; total];
                e[i] = 1;
                e
            })
            .collect();
        let comp = ffla::quotient_complement(f, total, &cob, &units);
        let dim = comp.len();
        let size = f.card(dim).unwrap_or(u128::MAX);
        if size > self.caps.max_ext {
            return Err(HallError::ExtEnumCapExceeded {
                size,
                cap: self.caps.max_ext,
            });
        }
        let mut classes = Vec::with_capacity(size as usize);
        ffla::for_each_coeffs(f, dim, |coeffs| {
            let v = ffla::combine(f, total, coeffs, &comp);
            classes.push(self.unpack_cocycle(a, c, &off, &v));
            true
        });
        Ok(Ext1Space {
            cocycle_dim: total,
            dim,
            classes,
        })
    }

    fn unpack_cocycle(&self, a: &Rep, c: &Rep, off: &[usize], v: &[Elem]) -> Cocycle {
        self.quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(alpha, &(t, h))| {
                let (r, cl) = (c.dims[h], a.dims[t]);
                Matrix::from_vec(r, cl, v[off[alpha]..off[alpha] + r * cl].to_vec())
            })
            .collect()
    }

    /// Middle term of the extension `0 -> c -> B -> a -> 0` given by `f`:
    /// `B_v = c_v + a_v`, arrow blocks `[[c_alpha, f_alpha], [0, a_alpha]]`.
    pub fn middle_term(&self, a: &Rep, c: &Rep, f: &Cocycle) -> Result<Rep> {
        self.check_same(a)?;
        self.check_same(c)?;
        if f.len() != self.quiver.arrows().len() {
            return Err(HallError::Contract("cocycle has wrong arrow count".into()));
        }
        let dims: Vec<usize> = c.dims.iter().zip(&a.dims).map(|(x, y)| x + y).collect();
        let mut maps = Vec::with_capacity(f.len());
        for (alpha, &(t, h)) in self.quiver.arrows().iter().enumerate() {
            if f[alpha].shape() != (c.dims[h], a.dims[t]) {
                return Err(HallError::Contract(format!(
                    "cocycle block {alpha} has shape {:?}, expected {:?}",
                    f[alpha].shape(),
                    (c.dims[h], a.dims[t])
                )));
            }
            maps.push(Matrix::block(
                &c.maps[alpha],
                &f[alpha],
                &Matrix::zeros(a.dims[h], c.dims[t]),
                &a.maps[alpha],
            ));
        }
        Ok(Rep { dims, maps })
    }

    /// Exponent `e` of the Euler form `<d1, d2> = q^e`.
    pub fn euler_exponent(&self, d1: &[usize], d2: &[usize]) -> i64 {
        let diag: i64 = d1.iter().zip(d2).map(|(&x, &y)| (x * y) as i64).sum();
        let arrows: i64 = self
            .quiver
            .arrows()
            .iter()
            .map(|&(t, h)| (d1[t] * d2[h]) as i64)
            .sum();
        diag - arrows
    }

    pub fn euler_form_quiver(&self, d1: &[usize], d2: &[usize]) -> BigRational {
        scalar::q_pow(self.field.p(), self.euler_exponent(d1, d2))
    }

    fn incoming_rank(&self, m: &Rep, v: usize) -> usize {
        // rank of the combined map  (+)_{alpha: t -> v} M_t -> M_v
        let blocks: Vec<&Matrix> = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, &(_, h))| h == v)
            .map(|(a, _)| &m.maps[a])
            .collect();
        let cols: usize = blocks.iter().map(|b| b.cols()).sum();
        let mut big = Matrix::zeros(m.dims[v], cols);
        let mut c0 = 0;
        for b in blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    big.set(r, c0 + c, b.get(r, c));
                }
            }
            c0 += b.cols();
        }
        big.rank(self.field)
    }

    fn outgoing_rank(&self, m: &Rep, v: usize) -> usize {
        let blocks: Vec<&Matrix> = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, &(t, _))| t == v)
            .map(|(a, _)| &m.maps[a])
            .collect();
        let rows: usize = blocks.iter().map(|b| b.rows()).sum();
        let mut big = Matrix::zeros(rows, m.dims[v]);
        let mut r0 = 0;
        for b in blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    big.set(r0 + r, c, b.get(r, c));
                }
            }
            r0 += b.rows();
        }
        big.rank(self.field)
    }

    /// `dim Hom(m, S_v)` per vertex.
    pub fn top_dims(&self, m: &Rep) -> Vec<usize> {
        (0..m.dims.len())
            .map(|v| m.dims[v] - self.incoming_rank(m, v))
            .collect()
    }

    /// `dim Hom(S_v, m)` per vertex.
    pub fn socle_dims(&self, m: &Rep) -> Vec<usize> {
        (0..m.dims.len())
            .map(|v| m.dims[v] - self.outgoing_rank(m, v))
            .collect()
    }

    /// Projective iff every combined incoming map is injective.
    pub fn is_projective(&self, m: &Rep) -> bool {
        (0..m.dims.len()).all(|v| {
            let incoming: usize = self
                .quiver
                .arrows()
                .iter()
                .filter(|&&(_, h)| h == v)
                .map(|&(t, _)| m.dims[t])
                .sum();
            self.incoming_rank(m, v) == incoming
        })
    }

    /// Multiplicity of each `P_v` in a projective representation.
    pub fn projective_multiplicities(&self, m: &Rep) -> Vec<usize> {
        self.top_dims(m)
    }

    /// Rank of every arrow map; an isomorphism invariant.
    pub fn arrow_ranks(&self, m: &Rep) -> Vec<usize> {
        m.maps.iter().map(|x| x.rank(self.field)).collect()
    }

    /// Subrepresentation on the subspaces spanned by the columns of
    /// `bases[v]` (full column rank, invariant under all arrows).
    pub fn restrict(&self, m: &Rep, bases: &[Matrix]) -> Rep {
        let f = self.field;
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(alpha, &(t, h))| {
                let image = m.maps[alpha].mul(f, &bases[t]);
                ffla::solve_matrix(f, &bases[h], &image)
                    .expect("subspace is not invariant under an arrow")
            })
            .collect();
        Rep { dims, maps }
    }

    /// Whether `a` and `b` are isomorphic.
    ///
    /// Rejects on dimensions and Hom fingerprints first; then enumerates
    /// `Hom(a, b)` when it is within `max_hom`, and otherwise compares
    /// Krull-Schmidt decompositions.
    pub fn iso_test(&self, a: &Rep, b: &Rep) -> Result<bool> {
        self.check_same(a)?;
        self.check_same(b)?;
        if a.dims != b.dims {
            return Ok(false);
        }
        if self.arrow_ranks(a) != self.arrow_ranks(b)
            || self.top_dims(a) != self.top_dims(b)
            || self.socle_dims(a) != self.socle_dims(b)
        {
            return Ok(false);
        }
        let basis = self.hom_basis(a, b)?;
        let end_a = self.hom_dim(a, a)?;
        if basis.len() != end_a
            || self.hom_dim(b, b)? != end_a
            || self.hom_dim(b, a)? != end_a
        {
            return Ok(false);
        }
        if basis.iter().any(|m| self.is_iso_morphism(m)) {
            return Ok(true);
        }
        let size = self.field.card(basis.len()).unwrap_or(u128::MAX);
        if size <= self.caps.max_hom {
            let mut found = false;
            ffla::for_each_coeffs(self.field, basis.len(), |c| {
                found = self.is_iso_morphism(&self.combine(c, &basis, a, b));
                !found
            });
            return Ok(found);
        }
        let reg = IndecRegistry::new();
        Ok(self.iso_key(a, &reg)? == self.iso_key(b, &reg)?)
    }

    /// Isomorphism test by exhaustive enumeration only; errors above the cap.
    pub fn iso_test_enumerate(&self, a: &Rep, b: &Rep) -> Result<bool> {
        if a.dims != b.dims {
            return Ok(false);
        }
        let basis = self.hom_basis(a, b)?;
        let size = self.field.card(basis.len()).unwrap_or(u128::MAX);
        if size > self.caps.max_hom {
            return Err(HallError::IsoEnumCapExceeded {
                size,
                cap: self.caps.max_hom,
            });
        }
        let mut found = false;
        ffla::for_each_coeffs(self.field, basis.len(), |c| {
            found = self.is_iso_morphism(&self.combine(c, &basis, a, b));
            !found
        });
        Ok(found)
    }

    /// Isomorphism test for two indecomposables: some basis element of
    /// `Hom(a, b)` is invertible iff `a ~ b` (non-isomorphisms form a
    /// proper subspace when they are isomorphic).
    pub fn iso_test_indecomposable(&self, a: &Rep, b: &Rep) -> Result<bool> {
        if a.dims != b.dims {
            return Ok(false);
        }
        Ok(self
            .hom_basis(a, b)?
            .iter()
            .any(|m| self.is_iso_morphism(m)))
    }
}
