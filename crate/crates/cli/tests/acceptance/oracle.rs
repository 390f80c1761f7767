//! Brute-force semi-derived products of 2-periodic complexes of F_2 vector
//! spaces, computed directly from matrices.

use std::collections::{BTreeMap, BTreeSet};

use hallforge::scalar::{rat, Rational};

type Mat = Vec<Vec<u8>>;

/// `d[0]: V_0 -> V_1`, `d[1]: V_1 -> V_0`.
#[derive(Clone, Debug)]
pub struct Cx {
    pub n: [usize; 2],
    pub d: [Mat; 2],
}

/// `(rank d_0, rank d_1, dim H_0, dim H_1)`: a complete invariant.
pub type Key = (usize, usize, usize, usize);

fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

fn mul(a: &Mat, b: &Mat, r: usize, k: usize, c: usize) -> Mat {
    let mut out = zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            let mut s = 0;
            for l in 0..k {
                s ^= a[i][l] & b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u ^ v).collect())
        .collect()
}

fn rank(m: &Mat, cols: usize) -> usize {
    let mut rows = m.clone();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

fn all_mats(r: usize, c: usize) -> Vec<Mat> {
    (0u32..1 << (r * c))
        .map(|bits| {
            (0..r)
                .map(|i| (0..c).map(|j| ((bits >> (i * c + j)) & 1) as u8).collect())
                .collect()
        })
        .collect()
}

impl Cx {
    pub fn stalk(deg: usize, dim: usize) -> Cx {
        let mut n = [0, 0];
        n[deg] = dim;
        Cx {
            n,
            d: [zeros(n[1], n[0]), zeros(n[0], n[1])],
        }
    }

    pub fn key(&self) -> Key {
        let r0 = rank(&self.d[0], self.n[0]);
        let r1 = rank(&self.d[1], self.n[1]);
        (r0, r1, self.n[0] - r0 - r1, self.n[1] - r0 - r1)
    }

    pub fn from_key(k: Key) -> Cx {
        let (r0, r1, h0, h1) = k;
        let n = [r0 + r1 + h0, r0 + r1 + h1];
        let (mut d0, mut d1) = (zeros(n[1], n[0]), zeros(n[0], n[1]));
        for i in 0..r0 {
            d0[i][i] = 1;
        }
        for i in 0..r1 {
            d1[r0 + i][r0 + i] = 1;
        }
        Cx { n, d: [d0, d1] }
    }
}

/// Chain maps `a -> c`.
fn hom_count(a: &Cx, c: &Cx) -> usize {
    let mut count = 0;
    for g0 in all_mats(c.n[0], a.n[0]) {
        for g1 in all_mats(c.n[1], a.n[1]) {
            let ok0 = mul(&g1, &a.d[0], c.n[1], a.n[1], a.n[0])
                == mul(&c.d[0], &g0, c.n[1], c.n[0], a.n[0]);
            let ok1 = mul(&g0, &a.d[1], c.n[0], a.n[0], a.n[1])
                == mul(&c.d[1], &g1, c.n[0], c.n[1], a.n[1]);
            count += (ok0 && ok1) as usize;
        }
    }
    count
}

/// Middle term of `c -> b -> a` with twisting `f_0: a_0 -> c_1`, `f_1: a_1 -> c_0`.
fn middle(a: &Cx, c: &Cx, f: &[Mat; 2]) -> Cx {
    let n = [c.n[0] + a.n[0], c.n[1] + a.n[1]];
    let mut d = [zeros(n[1], n[0]), zeros(n[0], n[1])];
    for deg in 0..2 {
        let (src, dst) = (deg, 1 - deg);
        for i in 0..c.n[dst] {
            for j in 0..c.n[src] {
                d[deg][i][j] = c.d[deg][i][j];
            }
            for j in 0..a.n[src] {
                d[deg][i][c.n[src] + j] = f[deg][i][j];
            }
        }
        for i in 0..a.n[dst] {
            for j in 0..a.n[src] {
                d[deg][c.n[dst] + i][c.n[src] + j] = a.d[deg][i][j];
            }
        }
    }
    Cx { n, d }
}

fn is_square_zero(x: &Cx) -> bool {
    let z0 = mul(&x.d[1], &x.d[0], x.n[0], x.n[1], x.n[0]);
    let z1 = mul(&x.d[0], &x.d[1], x.n[1], x.n[0], x.n[1]);
    z0.iter().flatten().all(|&v| v == 0) && z1.iter().flatten().all(|&v| v == 0)
}

/// `[a] <> [c]` in the Hall algebra: iso classes of middle terms with
/// coefficient `|Ext^1(a, c)_b| / |Hom(a, c)|`.
pub fn hall_product(a: &Cx, c: &Cx) -> BTreeMap<Key, Rational> {
    let mut cocycles = Vec::new();
    for f0 in all_mats(c.n[1], a.n[0]) {
        for f1 in all_mats(c.n[0], a.n[1]) {
            let f = [f0.clone(), f1];
            if is_square_zero(&middle(a, c, &f)) {
                cocycles.push(f);
            }
        }
    }
    let mut boundaries = BTreeSet::new();
    for h0 in all_mats(c.n[0], a.n[0]) {
        for h1 in all_mats(c.n[1], a.n[1]) {
            let b0 = add(
                &mul(&c.d[0], &h0, c.n[1], c.n[0], a.n[0]),
                &mul(&h1, &a.d[0], c.n[1], a.n[1], a.n[0]),
            );
            let b1 = add(
                &mul(&c.d[1], &h1, c.n[0], c.n[1], a.n[1]),
                &mul(&h0, &a.d[1], c.n[0], a.n[0], a.n[1]),
            );
            boundaries.insert([b0, b1]);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = BTreeMap::new();
    let hom = hom_count(a, c) as i64;
    for f in &cocycles {
        let class: BTreeSet<[Mat; 2]> = boundaries
            .iter()
            .map(|b| [add(&f[0], &b[0]), add(&f[1], &b[1])])
            .collect();
        if !seen.insert(class) {
            continue;
        }
        let k = middle(a, c, f).key();
        *out.entry(k).or_insert_with(|| rat(0, 1)) += rat(1, hom);
    }
    out
}

/// Rewrite `[b]` as `|Hom(K, m)| t_K [m]` with `K` the contractible part
/// and `m` the homology.
pub fn normalize(x: BTreeMap<Key, Rational>) -> BTreeMap<Key, Rational> {
    let mut out: BTreeMap<Key, Rational> = BTreeMap::new();
    for (k, c) in x {
        let kpart = Cx::from_key((k.0, k.1, 0, 0));
        let m = Cx::from_key((0, 0, k.2, k.3));
        let h = hom_count(&kpart, &m) as i64;
        *out.entry(k).or_insert_with(|| rat(0, 1)) += c * rat(h, 1);
    }
    out.retain(|_, c| *c != rat(0, 1));
    out
}

pub fn sub(a: &BTreeMap<Key, Rational>, b: &BTreeMap<Key, Rational>) -> BTreeMap<Key, Rational> {
    let mut out = a.clone();
    for (k, c) in b {
        *out.entry(*k).or_insert_with(|| rat(0, 1)) -= c.clone();
    }
    out.retain(|_, c| *c != rat(0, 1));
    out
}
