//! Irreducible reduced root systems of types A to G, Bourbaki numbering.
//!
//! Roots are stored in the simple-root basis. The Cartan matrix follows the
//! convention `cartan[i][j] = <alpha_j, alpha_i^vee>`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("roots are proportional")]
    ProportionalPair,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Family {
    type Err = RootSysError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(RootSysError::UnknownFamily(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSysError::InvalidRank { family, rank })
        }
    }

    /// Type A with even rank: the only types with odd Coxeter number.
    pub fn is_a_even(&self) -> bool {
        self.family == Family::A && self.rank.is_multiple_of(2)
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl std::str::FromStr for RootSystemType {
    type Err = RootSysError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, tail) = s.split_at(1.min(s.len()));
        let family: Family = head.parse()?;
        let rank = tail.parse::<usize>().map_err(|_| RootSysError::UnknownFamily(s.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

/// Coordinates of a root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
    pub fn neg(&self) -> RootVec {
        RootVec(self.0.iter().map(|c| -c).collect())
    }
    pub fn add(&self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rational combination of simple coroots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCoweight {
    pub coeffs: Vec<Q>,
}

impl RationalCoweight {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Self { coeffs }
    }
    pub fn zero(rank: usize) -> Self {
        Self { coeffs: vec![Q::zero(); rank] }
    }
    pub fn simple_coroot(rank: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); rank];
        c[i] = q(1);
        Self { coeffs: c }
    }
    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
    pub fn scale(&self, k: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }
}

/// Direction in which orbits of root sets are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitMode {
    Strict,
    /// Members are identified with their negatives.
    SignInsensitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub sets: Vec<Vec<RootVec>>,
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: RootSystemType,
    roots: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    npos: usize,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    sq_len: Vec<i64>,
    max_len: i64,
    /// pair[i][j] = <root_i, root_j^vee>
    pair: Vec<Vec<i64>>,
    neg: Vec<usize>,
    sum: Vec<Vec<Option<usize>>>,
    /// refl[k][j] = s_{alpha_k}(root_j)
    refl: Vec<Vec<usize>>,
    simple: Vec<usize>,
    highest: usize,
    exponents: Vec<i64>,
    rho: Vec<Q>,
}

/// Squared lengths of the simple roots (short roots have length 2) and the
/// Dynkin edges, 0-based.
fn dynkin(t: RootSystemType) -> (Vec<i64>, Vec<(usize, usize)>) {
    let d = t.rank;
    let chain: Vec<(usize, usize)> = (0..d.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    match t.family {
        Family::A => (vec![2; d], chain),
        Family::B => {
            let mut n = vec![4; d];
            n[d - 1] = 2;
            (n, chain)
        }
        Family::C => {
            let mut n = vec![2; d];
            n[d - 1] = 4;
            (n, chain)
        }
        Family::D => {
            let mut e: Vec<(usize, usize)> = (0..d - 2).map(|i| (i, i + 1)).collect();
            e.push((d - 3, d - 1));
            (vec![2; d], e)
        }
        Family::E => {
            let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            let e = all.iter().copied().filter(|&(a, b)| a < d && b < d).collect();
            (vec![2; d], e)
        }
        Family::F => (vec![4, 4, 2, 2], chain),
        Family::G => (vec![2, 6], vec![(0, 1)]),
    }
}

fn exponents_of(t: RootSystemType) -> Vec<i64> {
    let d = t.rank as i64;
    match t.family {
        Family::A => (1..=d).collect(),
        Family::B | Family::C => (1..=d).map(|i| 2 * i - 1).collect(),
        Family::D => {
            let mut e: Vec<i64> = (1..d).map(|i| 2 * i - 1).collect();
            e.push(d - 1);
            e.sort();
            e
        }
        Family::E => match d {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
        },
        Family::F => vec![1, 5, 7, 11],
        Family::G => vec![1, 5],
    }
}

impl RootSystem {
    pub fn build(t: RootSystemType) -> Result<RootSystem, RootSysError> {
        let t = RootSystemType::new(t.family, t.rank)?;
        let d = t.rank;
        let (norms, edges) = dynkin(t);
        let mut gram = vec![vec![0i64; d]; d];
        for i in 0..d {
            gram[i][i] = norms[i];
        }
        for &(a, b) in &edges {
            let v = -norms[a].max(norms[b]) / 2;
            gram[a][b] = v;
            gram[b][a] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| 2 * gram[j][i] / gram[i][i]).collect()).collect();

        // positive roots by root strings, height by height
        let unit = |i: usize| {
            let mut v = vec![0i64; d];
            v[i] = 1;
            RootVec(v)
        };
        let mut pos: Vec<RootVec> = (0..d).map(unit).collect();
        let mut known: BTreeSet<RootVec> = pos.iter().cloned().collect();
        let mut layer = pos.clone();
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for b in &layer {
                for i in 0..d {
                    let p = {
                        let mut p = 0;
                        let mut cur = b.clone();
                        loop {
                            cur.0[i] -= 1;
                            if known.contains(&cur) {
                                p += 1;
                            } else {
                                break;
                            }
                        }
                        p
                    };
                    let pairing: i64 = (0..d).map(|j| b.0[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut c = b.clone();
                        c.0[i] += 1;
                        if !known.contains(&c) {
                            next.insert(c);
                        }
                    }
                }
            }
            for c in &next {
                known.insert(c.clone());
            }
            layer = next.into_iter().collect();
            pos.extend(layer.iter().cloned());
        }
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.neg()));
        let index: HashMap<RootVec, usize> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let n = roots.len();

        let form = |a: &RootVec, b: &RootVec| -> i64 {
            let mut s = 0;
            for i in 0..d {
                if a.0[i] == 0 {
                    continue;
                }
                for j in 0..d {
                    s += a.0[i] * b.0[j] * gram[i][j];
                }
            }
            s
        };
        let sq_len: Vec<i64> = roots.iter().map(|r| form(r, r)).collect();
        let max_len = *sq_len.iter().max().unwrap();
        let mut pair = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                pair[i][j] = 2 * form(&roots[i], &roots[j]) / sq_len[j];
            }
        }
        let neg: Vec<usize> = (0..n).map(|i| if i < npos { i + npos } else { i - npos }).collect();
        let sum: Vec<Vec<Option<usize>>> =
            (0..n).map(|i| (0..n).map(|j| index.get(&roots[i].add(&roots[j])).copied()).collect()).collect();
        let simple: Vec<usize> = (0..d).map(|i| index[&unit(i)]).collect();
        let refl: Vec<Vec<usize>> = (0..d)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let r = roots[j].sub(&roots[simple[k]].scale(pair[j][simple[k]]));
                        index[&r]
                    })
                    .collect()
            })
            .collect();
        let highest = (0..npos).max_by_key(|&i| roots[i].height()).unwrap();

        let cq: Vec<Vec<Q>> = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let rho = linalg::solve_square(&cq, &vec![q(1); d]).expect("Cartan matrix is invertible");

        Ok(RootSystem {
            ty: t,
            roots,
            index,
            npos,
            cartan,
            gram,
            sq_len,
            max_len,
            pair,
            neg,
            sum,
            refl,
            simple,
            highest,
            exponents: exponents_of(t),
            rho,
        })
    }

    pub fn of(family: Family, rank: usize) -> Result<RootSystem, RootSysError> {
        Self::build(RootSystemType { family, rank })
    }

    pub fn ty(&self) -> RootSystemType {
        self.ty
    }
    pub fn rank(&self) -> usize {
        self.ty.rank
    }
    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }
    pub fn num_positive(&self) -> usize {
        self.npos
    }
    pub fn root(&self, i: usize) -> &RootVec {
        &self.roots[i]
    }
    pub fn index_of(&self, r: &RootVec) -> Option<usize> {
        self.index.get(r).copied()
    }
    pub fn require(&self, r: &RootVec) -> Result<usize, RootSysError> {
        if r.0.len() != self.rank() {
            return Err(RootSysError::DimensionMismatch { expected: self.rank(), got: r.0.len() });
        }
        self.index_of(r).ok_or_else(|| RootSysError::NotARoot(r.0.clone()))
    }
    pub fn is_positive_index(&self, i: usize) -> bool {
        i < self.npos
    }
    /// Index of the positive root in `{root_i, -root_i}`.
    pub fn positive_rep(&self, i: usize) -> usize {
        if i < self.npos {
            i
        } else {
            self.neg[i]
        }
    }
    pub fn neg_index(&self, i: usize) -> usize {
        self.neg[i]
    }
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sum[i][j]
    }
    /// `<root_i, root_j^vee>`
    pub fn pair_index(&self, i: usize, j: usize) -> i64 {
        self.pair[i][j]
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    /// Gram matrix of the simple roots, scaled so short roots have squared length 2.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }
    pub fn sq_len_index(&self, i: usize) -> i64 {
        self.sq_len[i]
    }
    pub fn is_long_index(&self, i: usize) -> bool {
        self.sq_len[i] == self.max_len
    }
    pub fn is_simply_laced(&self) -> bool {
        self.sq_len.iter().all(|&l| l == self.max_len)
    }
    pub fn simple_index(&self, i: usize) -> usize {
        self.simple[i]
    }
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }
    pub fn reflect_simple_index(&self, k: usize, j: usize) -> usize {
        self.refl[k][j]
    }
    /// `s_{root_a}(root_b)`
    pub fn reflect_index(&self, a: usize, b: usize) -> usize {
        let r = self.roots[b].sub(&self.roots[a].scale(self.pair[b][a]));
        self.index[&r]
    }
    pub fn highest_root(&self) -> &RootVec {
        &self.roots[self.highest]
    }
    pub fn highest_index(&self) -> usize {
        self.highest
    }
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }
    /// Half-sum of positive roots in the simple-root basis.
    pub fn rho(&self) -> &[Q] {
        &self.rho
    }
    pub fn is_root(&self, r: &RootVec) -> bool {
        self.index.contains_key(r)
    }

    /// Coordinates of `root_i^vee` in the simple-coroot basis.
    pub fn coroot_coeffs(&self, i: usize) -> Vec<i64> {
        let r = &self.roots[i];
        (0..self.rank()).map(|k| r.0[k] * self.gram[k][k] / self.sq_len[i]).collect()
    }

    pub fn coroot(&self, i: usize) -> RationalCoweight {
        RationalCoweight::new(self.coroot_coeffs(i).into_iter().map(q).collect())
    }

    /// Exact pairing of a root with a rational coweight.
    pub fn pairing(&self, a: &RootVec, xi: &RationalCoweight) -> Result<Q, RootSysError> {
        self.require(a)?;
        Ok(self.pairing_unchecked(a, xi))
    }

    /// Pairing extended linearly to any vector of the root lattice.
    pub fn pairing_unchecked(&self, a: &RootVec, xi: &RationalCoweight) -> Q {
        let d = self.rank();
        let mut s = Q::zero();
        for j in 0..d {
            if xi.coeffs[j].is_zero() {
                continue;
            }
            let t: i64 = (0..d).map(|i| a.0[i] * self.cartan[j][i]).sum();
            s += &xi.coeffs[j] * q(t);
        }
        s
    }

    /// Pairing of a rational vector in the simple-root basis with a coweight.
    pub fn pairing_rational(&self, a: &[Q], xi: &RationalCoweight) -> Q {
        let d = self.rank();
        let mut s = Q::zero();
        for j in 0..d {
            for i in 0..d {
                if self.cartan[j][i] != 0 {
                    s += &a[i] * &xi.coeffs[j] * q(self.cartan[j][i]);
                }
            }
        }
        s
    }

    /// Coweight with prescribed pairings against the simple roots.
    pub fn coweight_from_simple_pairings(&self, vals: &[Q]) -> RationalCoweight {
        // <alpha_i, xi> = sum_j c_j cartan[j][i]
        let d = self.rank();
        let a: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| q(self.cartan[j][i])).collect()).collect();
        RationalCoweight::new(linalg::solve_square(&a, vals).expect("invertible"))
    }

    pub fn fundamental_coweight(&self, k: usize) -> RationalCoweight {
        let mut v = vec![Q::zero(); self.rank()];
        v[k] = q(1);
        self.coweight_from_simple_pairings(&v)
    }

    pub fn strongly_orthogonal(&self, a: &RootVec, b: &RootVec) -> Result<bool, RootSysError> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        if i == j || self.neg[i] == j {
            return Err(RootSysError::ProportionalPair);
        }
        Ok(self.so_index(i, j))
    }

    pub fn so_index(&self, i: usize, j: usize) -> bool {
        self.pair[i][j] == 0 && self.sum[i][j].is_none()
    }

    pub fn coxeter_number(&self) -> i64 {
        1 + self.highest_root().height()
    }

    /// The simple roots together with the negative of the highest root.
    pub fn extended_simple_set(&self) -> Vec<RootVec> {
        let mut v: Vec<RootVec> = self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        v.push(self.highest_root().neg());
        v
    }

    /// A word `w` in simple reflections and a simple index `k` with `root_i = w(alpha_k)`.
    pub fn word_to_simple(&self, i: usize) -> (Vec<usize>, usize) {
        let mut cur = i;
        let mut word = Vec::new();
        loop {
            if let Some(k) = self.simple.iter().position(|&s| s == cur || self.neg[s] == cur) {
                if self.simple[k] != cur {
                    // -alpha_k = s_k(alpha_k)
                    word.push(k);
                }
                return (word, k);
            }
            // lower the height of |cur| with a simple reflection
            let positive = cur < self.npos;
            let k = (0..self.rank())
                .find(|&k| {
                    let p = self.pair[cur][self.simple[k]];
                    if positive {
                        p > 0
                    } else {
                        p < 0
                    }
                })
                .expect("a non-simple root has a descent");
            word.push(k);
            cur = self.refl[k][cur];
        }
    }

    /// The reflection in `root_i` as a word in simple reflections.
    pub fn reflection_word(&self, i: usize) -> Vec<usize> {
        let (w, k) = self.word_to_simple(i);
        let mut out = w.clone();
        out.push(k);
        out.extend(w.iter().rev());
        out
    }

    /// Applies a word (rightmost letter first) to a root index.
    pub fn apply_word(&self, word: &[usize], i: usize) -> usize {
        word.iter().rev().fold(i, |acc, &k| self.refl[k][acc])
    }

    fn canon(&self, set: &[usize], mode: OrbitMode) -> Vec<usize> {
        let mut v: Vec<usize> = match mode {
            OrbitMode::Strict => set.to_vec(),
            OrbitMode::SignInsensitive => set.iter().map(|&i| self.positive_rep(i)).collect(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Orbit of a set of roots under the Weyl group, by breadth-first search.
    pub fn weyl_orbit_indices(&self, seed: &[usize], max_size: usize, mode: OrbitMode) -> (Vec<Vec<usize>>, bool) {
        let start = self.canon(seed, mode);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut truncated = false;
        while let Some(s) = queue.pop_front() {
            for k in 0..self.rank() {
                let img: Vec<usize> = s.iter().map(|&j| self.refl[k][j]).collect();
                let c = self.canon(&img, mode);
                if !seen.contains(&c) {
                    if seen.len() >= max_size {
                        truncated = true;
                        break;
                    }
                    seen.insert(c.clone());
                    queue.push_back(c);
                }
            }
            if truncated {
                break;
            }
        }
        (seen.into_iter().collect(), truncated)
    }

    pub fn weyl_orbit(&self, seed: &[RootVec], max_size: usize, mode: OrbitMode) -> Result<Orbit, RootSysError> {
        let idx: Vec<usize> = seed.iter().map(|r| self.require(r)).collect::<Result<_, _>>()?;
        let (sets, truncated) = self.weyl_orbit_indices(&idx, max_size, mode);
        let mut sets: Vec<Vec<RootVec>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<RootVec> = s.iter().map(|&i| self.roots[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        sets.sort();
        Ok(Orbit { sets, truncated })
    }

    /// Images of the simple roots in the orthonormal epsilon basis (classical types).
    pub fn eps_images(&self) -> Option<Vec<Vec<Q>>> {
        let d = self.rank();
        let dim = if self.ty.family == Family::A { d + 1 } else { d };
        let e = |i: usize| {
            let mut v = vec![Q::zero(); dim];
            v[i] = q(1);
            v
        };
        let diff = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
        let sum = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let mut out: Vec<Vec<Q>> = match self.ty.family {
            Family::A | Family::B | Family::C | Family::D => {
                (0..d.min(dim - 1)).map(|i| diff(e(i), e(i + 1))).collect()
            }
            _ => return None,
        };
        match self.ty.family {
            Family::A => {}
            Family::B => out.push(e(d - 1)),
            Family::C => out.push(e(d - 1).iter().map(|x| x * q(2)).collect()),
            Family::D => {
                out.truncate(d - 1);
                out.push(sum(e(d - 2), e(d - 1)));
            }
            _ => unreachable!(),
        }
        Some(out)
    }

    /// Converts epsilon coordinates (1-based signed entries) to a root.
    pub fn from_eps(&self, v: &[Q]) -> Option<RootVec> {
        let basis = self.eps_images()?;
        let x = linalg::express(&basis, v)?;
        if !x.iter().all(linalg::is_integer) {
            return None;
        }
        let r = RootVec(x.iter().map(|c| c.to_integer().try_into().unwrap()).collect());
        self.is_root(&r).then_some(r)
    }

    /// Root from a sparse epsilon expression: `[(i, c), ...]` means sum of c * eps_i, 1-based.
    pub fn eps_root(&self, terms: &[(usize, i64)]) -> Option<RootVec> {
        let dim = self.eps_images()?[0].len();
        let mut v = vec![Q::zero(); dim];
        for &(i, c) in terms {
            v[i - 1] += q(c);
        }
        self.from_eps(&v)
    }

    pub fn to_eps(&self, r: &RootVec) -> Option<Vec<Q>> {
        let basis = self.eps_images()?;
        let dim = basis[0].len();
        let mut v = vec![Q::zero(); dim];
        for (k, b) in basis.iter().enumerate() {
            for c in 0..dim {
                v[c] += q(r.0[k]) * &b[c];
            }
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_g2_and_b2() {
        let g2 = RootSystem::of(Family::G, 2).unwrap();
        assert_eq!(g2.cartan()[0][1], -3);
        assert_eq!(g2.cartan()[1][0], -1);
        assert_eq!(g2.highest_root(), &RootVec(vec![3, 2]));
        let b2 = RootSystem::of(Family::B, 2).unwrap();
        assert_eq!(b2.cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(b2.highest_root(), &RootVec(vec![1, 2]));
    }

    #[test]
    fn root_counts() {
        for (f, r, n) in [
            (Family::A, 2, 6),
            (Family::B, 3, 18),
            (Family::C, 4, 32),
            (Family::D, 5, 40),
            (Family::E, 6, 72),
            (Family::E, 7, 126),
            (Family::E, 8, 240),
            (Family::F, 4, 48),
            (Family::G, 2, 12),
        ] {
            assert_eq!(RootSystem::of(f, r).unwrap().num_roots(), n, "{f}{r}");
        }
    }

    #[test]
    fn invalid_rank() {
        assert!(matches!(RootSystem::of(Family::D, 2), Err(RootSysError::InvalidRank { .. })));
        assert!(RootSystem::of(Family::E, 9).is_err());
        assert!(RootSystem::of(Family::A, 0).is_err());
    }

    #[test]
    fn word_to_simple_reaches_root() {
        let s = RootSystem::of(Family::F, 4).unwrap();
        for i in 0..s.num_roots() {
            let (w, k) = s.word_to_simple(i);
            assert_eq!(s.apply_word(&w, s.simple_index(k)), i);
            let rw = s.reflection_word(i);
            for j in 0..s.num_roots() {
                assert_eq!(s.apply_word(&rw, j), s.reflect_index(i, j));
            }
        }
    }

    #[test]
    fn eps_translation() {
        let b2 = RootSystem::of(Family::B, 2).unwrap();
        assert_eq!(b2.eps_root(&[(1, 1), (2, 1)]), Some(RootVec(vec![1, 2])));
        let c3 = RootSystem::of(Family::C, 3).unwrap();
        assert_eq!(c3.eps_root(&[(1, 2)]), Some(RootVec(vec![2, 2, 1])));
        let d4 = RootSystem::of(Family::D, 4).unwrap();
        assert_eq!(d4.eps_root(&[(3, 1), (4, -1)]), Some(RootVec(vec![0, 0, 1, 0])));
        assert_eq!(d4.eps_root(&[(1, 1), (2, 1)]), Some(RootVec(vec![1, 2, 1, 1])));
    }
}
