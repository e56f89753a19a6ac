//! The standard apartment at the E- and F-levels. A chamber or facet is a
//! concave function on the roots, stored in half-units `h = 2f`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, is_integer, q, Q};
use crate::rootsys::{Family, RationalCoweight, RootSystem, RootVec};
use crate::sorth::{self, SOSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApartmentError {
    #[error("chambers live at different levels")]
    LevelMismatch,
    #[error("h({root}) = {c} is not a wall at the {level} level")]
    NotAWall { root: RootVec, c: i64, level: Level },
    #[error("central chambers exist only in type A_2n")]
    NotTypeA2n,
    #[error("not a tabled Sigma_a")]
    UnsupportedSigma,
    #[error("coweight pairs non-integrally with {0}")]
    NonIntegralCoweight(RootVec),
    #[error("expected an F-level chamber")]
    NotFLevel,
    #[error("value {0} is not a half-integer")]
    NotHalfInteger(String),
    #[error("the set has {got} members, the rank is {rank}")]
    NotFullRank { got: usize, rank: usize },
    #[error("f'({root}) = {value} is not in (1/2)Z")]
    HalfIntegralityViolation { root: RootVec, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    E,
    F,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::E => "E",
            Level::F => "F",
        })
    }
}

/// Chamber of the standard apartment: `h[i]` is twice the concave function
/// at root `i` (canonical root order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chamber {
    level: Level,
    h: Vec<i64>,
}

impl Chamber {
    /// Builds a chamber and checks it.
    pub fn new(sys: &RootSystem, level: Level, h: Vec<i64>) -> Option<Chamber> {
        let c = Chamber { level, h };
        c.is_valid(sys).then_some(c)
    }

    pub fn level(&self) -> Level {
        self.level
    }
    pub fn h(&self, i: usize) -> i64 {
        self.h[i]
    }
    pub fn values(&self) -> &[i64] {
        &self.h
    }
    pub fn h_of(&self, sys: &RootSystem, r: &RootVec) -> Option<i64> {
        sys.index_of(r).map(|i| self.h[i])
    }
    /// Value of the concave function itself.
    pub fn f(&self, i: usize) -> Q {
        linalg::qf(self.h[i], 2)
    }
    /// Positive-root part; determines the chamber.
    pub fn key(&self, sys: &RootSystem) -> Vec<i64> {
        self.h[..sys.num_positive()].to_vec()
    }

    fn width(&self) -> i64 {
        match self.level {
            Level::E => 1,
            Level::F => 2,
        }
    }

    pub fn is_concave(&self, sys: &RootSystem) -> bool {
        let n = sys.num_roots();
        (0..n).all(|i| self.h[i] + self.h[sys.neg_index(i)] >= 0)
            && (0..n).all(|i| {
                (0..n).all(|j| match sys.sum_index(i, j) {
                    Some(k) => self.h[k] <= self.h[i] + self.h[j],
                    None => true,
                })
            })
    }

    pub fn is_valid(&self, sys: &RootSystem) -> bool {
        let w = self.width();
        self.h.len() == sys.num_roots()
            && (0..sys.num_roots()).all(|i| self.h[i] + self.h[sys.neg_index(i)] == w)
            && (self.level == Level::E || self.h.iter().all(|x| x % 2 == 0))
            && self.is_concave(sys)
    }
}

pub fn base_chambers(sys: &RootSystem) -> (Chamber, Chamber) {
    let np = sys.num_positive();
    let mk = |level, neg| Chamber { level, h: (0..sys.num_roots()).map(|i| if i < np { 0 } else { neg }).collect() };
    (mk(Level::F, 2), mk(Level::E, 1))
}

/// Gallery distance: the number of walls of the level separating the chambers.
pub fn distance(sys: &RootSystem, a: &Chamber, b: &Chamber) -> Result<u64, ApartmentError> {
    if a.level != b.level {
        return Err(ApartmentError::LevelMismatch);
    }
    let s: u64 = (0..sys.num_positive()).map(|i| (a.h[i] - b.h[i]).unsigned_abs()).sum();
    Ok(match a.level {
        Level::E => s,
        Level::F => s / 2,
    })
}

fn coweight_pairings(sys: &RootSystem, xi: &RationalCoweight) -> Result<Vec<i64>, ApartmentError> {
    sys.roots()
        .iter()
        .map(|r| {
            let p = sys.pairing_unchecked(r, xi);
            if is_integer(&p) {
                Ok(p.to_integer().try_into().expect("small pairing"))
            } else {
                Err(ApartmentError::NonIntegralCoweight(r.clone()))
            }
        })
        .collect()
}

/// Translation by the coweight `xi`: `h(alpha) += 2 <alpha, xi>`.
pub fn translate(sys: &RootSystem, c: &Chamber, xi: &RationalCoweight) -> Result<Chamber, ApartmentError> {
    let p = coweight_pairings(sys, xi)?;
    Ok(Chamber { level: c.level, h: c.h.iter().zip(&p).map(|(h, x)| h + 2 * x).collect() })
}

/// Reflection in the hyperplane where `h(root) = c`.
pub fn reflect(sys: &RootSystem, ch: &Chamber, root: usize, c: i64) -> Result<Chamber, ApartmentError> {
    if ch.level == Level::F && c % 2 != 0 {
        return Err(ApartmentError::NotAWall { root: sys.root(root).clone(), c, level: ch.level });
    }
    Ok(reflect_unchecked(sys, ch, root, c))
}

fn reflect_unchecked(sys: &RootSystem, ch: &Chamber, root: usize, c: i64) -> Chamber {
    let h = (0..sys.num_roots()).map(|g| ch.h[sys.reflect_index(root, g)] + c * sys.pair_index(g, root)).collect();
    Chamber { level: ch.level, h }
}

/// Roots carrying the walls of the chamber, with the neighbour across each.
pub fn walls(sys: &RootSystem, ch: &Chamber) -> Vec<(usize, Chamber)> {
    let mut out = Vec::new();
    for b in 0..sys.num_roots() {
        let c = ch.h[b];
        if ch.level == Level::F && c % 2 != 0 {
            continue;
        }
        let n = reflect_unchecked(sys, ch, b, c);
        if distance(sys, ch, &n) == Ok(1) {
            out.push((b, n));
        }
    }
    out
}

pub fn neighbours(sys: &RootSystem, ch: &Chamber) -> Vec<Chamber> {
    walls(sys, ch).into_iter().map(|(_, n)| n).collect()
}

/// All chambers at distance at most `r`, in BFS order, with their distances.
pub fn chambers_within(sys: &RootSystem, c0: &Chamber, r: usize) -> Vec<(Chamber, usize)> {
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(c0.key(sys), ());
    let mut out = vec![(c0.clone(), 0)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (ch, d) = out[k].clone();
        if d == r {
            continue;
        }
        for n in neighbours(sys, &ch) {
            if seen.insert(n.key(sys), ()).is_none() {
                out.push((n, d + 1));
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

/// The F-chamber containing an E-chamber.
pub fn containing_f_chamber(sys: &RootSystem, c: &Chamber) -> Chamber {
    if c.level == Level::F {
        return c.clone();
    }
    let np = sys.num_positive();
    let mut h = vec![0; sys.num_roots()];
    for i in 0..np {
        let v = c.h[i] + c.h[i].rem_euclid(2);
        h[i] = v;
        h[sys.neg_index(i)] = 2 - v;
    }
    Chamber { level: Level::F, h }
}

/// The `2^d` E-chambers subdividing an F-chamber.
pub fn e_chambers_in_f_chamber(sys: &RootSystem, cf: &Chamber) -> Result<Vec<Chamber>, ApartmentError> {
    if cf.level != Level::F {
        return Err(ApartmentError::NotFLevel);
    }
    let np = sys.num_positive();
    let mut out = Vec::new();
    // depth-first over the positive roots, pruning on concavity of the
    // partial assignment
    let mut h = vec![0i64; sys.num_roots()];
    fn rec(sys: &RootSystem, cf: &Chamber, k: usize, np: usize, h: &mut Vec<i64>, out: &mut Vec<Chamber>) {
        if k == np {
            let c = Chamber { level: Level::E, h: h.clone() };
            if c.is_concave(sys) {
                out.push(c);
            }
            return;
        }
        for drop in [1, 0] {
            h[k] = cf.h[k] - drop;
            h[sys.neg_index(k)] = 1 - h[k];
            // concavity on triples touching root k whose members are all assigned
            let done = |x: usize| sys.positive_rep(x) <= k;
            let ok = (0..sys.num_roots()).filter(|&x| done(x)).all(|x| {
                (0..sys.num_roots()).filter(|&y| done(y)).all(|y| match sys.sum_index(x, y) {
                    Some(s) if done(s) => {
                        let touches = [x, y, s].iter().any(|&z| sys.positive_rep(z) == k);
                        !touches || h[s] <= h[x] + h[y]
                    }
                    _ => true,
                })
            });
            if ok {
                rec(sys, cf, k + 1, np, h, out);
            }
        }
    }
    rec(sys, cf, 0, np, &mut h, &mut out);
    Ok(out)
}

fn require_a_even(sys: &RootSystem) -> Result<usize, ApartmentError> {
    let t = sys.ty();
    if t.family == Family::A && t.rank.is_multiple_of(2) {
        Ok(t.rank / 2)
    } else {
        Err(ApartmentError::NotTypeA2n)
    }
}

/// E-chambers of `cf` none of whose walls lie in an F-wall.
pub fn central_chambers_brute(sys: &RootSystem, cf: &Chamber) -> Result<Vec<Chamber>, ApartmentError> {
    Ok(e_chambers_in_f_chamber(sys, cf)?
        .into_iter()
        .filter(|c| walls(sys, c).iter().all(|(b, _)| c.h[*b] % 2 != 0))
        .collect())
}

/// Central chamber of the base F-chamber, from the permutation
/// `sigma(1) = n+1`, `sigma(2i) = i`, `sigma(2i+1) = n+i+1`.
fn central_of_base(sys: &RootSystem, n: usize) -> Chamber {
    let m = 2 * n + 1;
    let mut sigma = vec![0usize; m + 1];
    sigma[1] = n + 1;
    for i in 1..=n {
        sigma[2 * i] = i;
        sigma[2 * i + 1] = n + i + 1;
    }
    let mut pos = vec![0usize; m + 1];
    for i in 1..=m {
        pos[sigma[i]] = i;
    }
    let run = |i: usize, j: usize| -> i64 { (i..j).map(|k| if k % 2 == 1 { 1 } else { -1 }).sum() };
    let mut h = vec![0i64; sys.num_roots()];
    for a in 1..=m {
        for b in 1..=m {
            if a == b {
                continue;
            }
            let r = sys.eps_root(&[(a, 1), (b, -1)]).expect("type A root");
            let (i, j) = (pos[a], pos[b]);
            h[sys.index_of(&r).expect("root")] = if i < j { run(i, j) } else { 1 - run(j, i) };
        }
    }
    Chamber { level: Level::E, h }
}

/// Central chamber of an F-chamber in type A_2n: the base case is given by
/// the permutation formula and carried along a gallery from the base.
pub fn central_chamber(sys: &RootSystem, cf: &Chamber) -> Result<Chamber, ApartmentError> {
    let n = require_a_even(sys)?;
    if cf.level != Level::F {
        return Err(ApartmentError::NotFLevel);
    }
    let (base, _) = base_chambers(sys);
    let mut path = Vec::new();
    let mut cur = cf.clone();
    let mut d = distance(sys, &cur, &base)?;
    while d > 0 {
        let (b, next) = walls(sys, &cur)
            .into_iter()
            .find(|(_, n)| distance(sys, n, &base) == Ok(d - 1))
            .expect("some wall separates from the base");
        path.push((b, cur.h[b]));
        cur = next;
        d -= 1;
    }
    let mut c = central_of_base(sys, n);
    for &(b, v) in path.iter().rev() {
        c = reflect_unchecked(sys, &c, b, v);
    }
    Ok(c)
}

/// F-chambers within F-radius `r` of the base, each with its central chamber.
pub fn central_chambers_within(sys: &RootSystem, r: usize) -> Result<Vec<(Chamber, usize, Chamber)>, ApartmentError> {
    let n = require_a_even(sys)?;
    let (base, _) = base_chambers(sys);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(base.key(sys), ());
    let mut out = vec![(base, 0, central_of_base(sys, n))];
    let mut k = 0;
    while k < out.len() {
        let (cf, d, cc) = out[k].clone();
        k += 1;
        if d == r {
            continue;
        }
        for (b, nb) in walls(sys, &cf) {
            if seen.insert(nb.key(sys), ()).is_none() {
                let moved = reflect_unchecked(sys, &cc, b, cf.h[b]);
                out.push((nb, d + 1, moved));
            }
        }
    }
    Ok(out)
}

fn long_count(sys: &RootSystem, r: &RootVec) -> i64 {
    (0..sys.rank()).filter(|&i| sys.is_long_index(sys.simple_index(i))).map(|i| r.0[i]).sum()
}

/// Canonical chamber attached to a tabled Sigma_a: `f(alpha) = -ht(alpha)/2`
/// and `f(-alpha) = (ht(alpha)+1)/2` for positive `alpha`, where `ht` counts
/// long simple roots when Sigma_a is all long in a non simply-laced system.
pub fn canonical_sigma_chamber(sys: &RootSystem, sigma: &SOSet) -> Result<Chamber, ApartmentError> {
    let tabled: Vec<SOSet> =
        [sorth::sign_sigma_a(sys).ok(), sorth::table_sigma_a(sys).ok()].into_iter().flatten().collect();
    let key = |s: &SOSet| {
        let mut v = s.indices().to_vec();
        v.sort_unstable();
        v
    };
    if !tabled.iter().any(|t| key(t) == key(sigma)) {
        return Err(ApartmentError::UnsupportedSigma);
    }
    let all_long = sigma.indices().iter().all(|&i| sys.is_long_index(i));
    let ht = |r: &RootVec| {
        if all_long && !sys.is_simply_laced() {
            long_count(sys, r)
        } else {
            r.height()
        }
    };
    let np = sys.num_positive();
    let mut h = vec![0i64; sys.num_roots()];
    for i in 0..np {
        let t = ht(sys.root(i));
        h[i] = -t;
        h[sys.neg_index(i)] = t + 1;
    }
    let c = Chamber { level: Level::E, h };
    if !c.is_valid(sys) || sigma.indices().iter().any(|&i| c.h[i] % 2 != 0) {
        return Err(ApartmentError::UnsupportedSigma);
    }
    Ok(c)
}

/// Linear functional on the span of a full-rank strongly orthogonal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFunctional {
    /// Value at each root, canonical order.
    pub values: Vec<Q>,
}

/// Extends prescribed values on `sigma` linearly and checks the image of the
/// roots stays in `(1/2)Z`.
pub fn facet_functional(sys: &RootSystem, sigma: &SOSet, values: &[Q]) -> Result<FacetFunctional, ApartmentError> {
    if sigma.len() != sys.rank() || values.len() != sigma.len() {
        return Err(ApartmentError::NotFullRank { got: sigma.len(), rank: sys.rank() });
    }
    if let Some(v) = values.iter().find(|v| !is_integer(&(*v * q(2)))) {
        return Err(ApartmentError::NotHalfInteger(v.to_string()));
    }
    let basis: Vec<Vec<Q>> = sigma.indices().iter().map(|&i| sys.root(i).0.iter().map(|&x| q(x)).collect()).collect();
    let mut out = Vec::with_capacity(sys.num_roots());
    for r in sys.roots() {
        let v: Vec<Q> = r.0.iter().map(|&x| q(x)).collect();
        let lam = linalg::express(&basis, &v).expect("full rank set spans");
        let f = lam.iter().zip(values).fold(Q::zero(), |acc, (l, x)| acc + l * x);
        if !is_integer(&(&f * q(2))) {
            return Err(ApartmentError::HalfIntegralityViolation { root: r.clone(), value: f.to_string() });
        }
        out.push(f);
    }
    Ok(FacetFunctional { values: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(r: usize) -> RootSystem {
        RootSystem::of(Family::A, r).unwrap()
    }

    #[test]
    fn base_values() {
        let s = a(1);
        let (f, e) = base_chambers(&s);
        assert_eq!(f.values(), &[0, 2]);
        assert_eq!(e.values(), &[0, 1]);
        assert!(f.is_valid(&s) && e.is_valid(&s));
    }

    #[test]
    fn a1_translate_distances() {
        let s = a(1);
        let (f, e) = base_chambers(&s);
        let xi = RationalCoweight::simple_coroot(1, 0);
        let te = translate(&s, &e, &xi).unwrap();
        assert_eq!(te.h(0), 4);
        assert_eq!(distance(&s, &e, &te), Ok(4));
        assert_eq!(distance(&s, &f, &translate(&s, &f, &xi).unwrap()), Ok(2));
    }

    #[test]
    fn e_chamber_counts() {
        for (r, n) in [(1, 2), (2, 4), (4, 16)] {
            let s = a(r);
            let (f, _) = base_chambers(&s);
            let es = e_chambers_in_f_chamber(&s, &f).unwrap();
            assert_eq!(es.len(), n);
            assert!(es.iter().all(|c| c.is_valid(&s)));
        }
    }

    #[test]
    fn a2_central() {
        let s = a(2);
        let (f, _) = base_chambers(&s);
        let c = central_chamber(&s, &f).unwrap();
        assert_eq!(central_chambers_brute(&s, &f).unwrap(), vec![c.clone()]);
        let v = |x: &[i64]| c.h_of(&s, &RootVec(x.to_vec())).unwrap();
        assert_eq!((v(&[-1, 0]), v(&[1, 1]), v(&[0, -1])), (1, -1, 1));
        assert_eq!(central_chamber(&a(3), &base_chambers(&a(3)).0), Err(ApartmentError::NotTypeA2n));
    }

    #[test]
    fn reflect_is_involution() {
        let s = RootSystem::of(Family::G, 2).unwrap();
        let (_, e) = base_chambers(&s);
        for b in 0..s.num_roots() {
            for c in -2..3 {
                let r = reflect(&s, &reflect(&s, &e, b, c).unwrap(), b, c).unwrap();
                assert_eq!(r, e);
            }
        }
        assert!(reflect(&s, &base_chambers(&s).0, 0, 1).is_err());
    }
}
