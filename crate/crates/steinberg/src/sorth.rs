//! Sets of pairwise strongly orthogonal roots: the highest-root algorithm,
//! condition (C1), conjugacy certificates and exhaustive classification.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::linalg;
use crate::rootsys::{Family, OrbitMode, RootSysError, RootSystem, RootSystemType, RootVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SorthError {
    #[error(transparent)]
    Root(#[from] RootSysError),
    #[error("roots {0} and {1} are not strongly orthogonal")]
    NotStronglyOrthogonal(RootVec, RootVec),
    #[error("Weyl group of order {order} exceeds the budget {budget}")]
    BudgetExceeded { order: u128, budget: u128 },
    #[error("no tabled form for {0}")]
    NoTable(RootSystemType),
}

/// Ordered list of pairwise strongly orthogonal roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SOSet {
    idx: Vec<usize>,
}

impl SOSet {
    pub fn new(sys: &RootSystem, members: &[RootVec]) -> Result<SOSet, SorthError> {
        let idx: Vec<usize> = members.iter().map(|r| sys.require(r)).collect::<Result<_, _>>()?;
        Self::from_indices(sys, idx)
    }

    pub fn from_indices(sys: &RootSystem, idx: Vec<usize>) -> Result<SOSet, SorthError> {
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let (i, j) = (idx[a], idx[b]);
                if i == j || sys.neg_index(i) == j || !sys.so_index(i, j) {
                    return Err(SorthError::NotStronglyOrthogonal(sys.root(i).clone(), sys.root(j).clone()));
                }
            }
        }
        Ok(SOSet { idx })
    }

    pub fn empty() -> SOSet {
        SOSet { idx: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.idx.len()
    }
    pub fn is_empty(&self) -> bool {
        self.idx.is_empty()
    }
    pub fn indices(&self) -> &[usize] {
        &self.idx
    }
    pub fn members(&self, sys: &RootSystem) -> Vec<RootVec> {
        self.idx.iter().map(|&i| sys.root(i).clone()).collect()
    }
    /// Canonical form: positive representatives, sorted.
    pub fn unsigned_key(&self, sys: &RootSystem) -> Vec<usize> {
        let mut v: Vec<usize> = self.idx.iter().map(|&i| sys.positive_rep(i)).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C1Witness {
    pub alpha: RootVec,
    pub beta: RootVec,
}

/// Splits a set of roots into irreducible components, ordered by their
/// lowest canonical root.
pub fn components(sys: &RootSystem, set: &[usize]) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = set.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let linked: Vec<usize> = left.iter().copied().filter(|&j| sys.pair_index(i, j) != 0).collect();
            for j in linked {
                left.remove(&j);
                comp.push(j);
                queue.push_back(j);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by_key(|c| c.iter().map(|&i| sys.positive_rep(i)).min());
    out
}

/// Roots of `within` strongly orthogonal to every member of `set`.
pub fn so_complement_within(sys: &RootSystem, within: &[usize], set: &[usize]) -> Vec<usize> {
    within
        .iter()
        .copied()
        .filter(|&r| set.iter().all(|&s| r != s && sys.neg_index(s) != r && sys.so_index(r, s)))
        .collect()
}

pub fn so_complement_indices(sys: &RootSystem, set: &SOSet) -> Vec<usize> {
    let all: Vec<usize> = (0..sys.num_roots()).collect();
    so_complement_within(sys, &all, set.indices())
}

pub fn so_complement(sys: &RootSystem, set: &SOSet) -> Vec<RootVec> {
    so_complement_indices(sys, set).iter().map(|&i| sys.root(i).clone()).collect()
}

/// True if the root set is closed under negation and under root addition.
pub fn is_closed_subsystem(sys: &RootSystem, set: &[usize]) -> bool {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    set.iter().all(|&i| s.contains(&sys.neg_index(i)))
        && set.iter().all(|&i| {
            set.iter().all(|&j| match sys.sum_index(i, j) {
                Some(k) => s.contains(&k),
                None => true,
            })
        })
}

/// Cartan type of each irreducible component of a subsystem.
pub fn classify_subsystem(sys: &RootSystem, set: &[usize]) -> Vec<RootSystemType> {
    let mut out = Vec::new();
    for comp in components(sys, set) {
        let n = comp.len();
        let rows: Vec<Vec<i64>> = comp.iter().map(|&i| sys.root(i).0.clone()).collect();
        let r = linalg::rank_int(&rows);
        let lens: BTreeSet<i64> = comp.iter().map(|&i| sys.sq_len_index(i)).collect();
        let family = if lens.len() == 1 {
            if n == r * (r + 1) {
                Family::A
            } else if r >= 4 && n == 2 * r * (r - 1) {
                Family::D
            } else {
                Family::E
            }
        } else {
            let short = *lens.iter().next().unwrap();
            let ratio = lens.iter().last().unwrap() / short;
            let nshort = comp.iter().filter(|&&i| sys.sq_len_index(i) == short).count();
            if ratio == 3 {
                Family::G
            } else if r == 4 && n == 48 {
                Family::F
            } else if nshort == 2 * r {
                Family::B
            } else {
                Family::C
            }
        };
        out.push(RootSystemType { family, rank: r });
    }
    out.sort();
    out
}

fn sigma_rec(sys: &RootSystem, within: &[usize], out: &mut Vec<usize>) {
    for comp in components(sys, within) {
        let top = comp
            .iter()
            .copied()
            .filter(|&i| sys.is_positive_index(i))
            .max_by_key(|&i| (sys.root(i).height(), std::cmp::Reverse(i)))
            .expect("component has positive roots");
        out.push(sys.neg_index(top));
        let rest = so_complement_within(sys, &comp, &[top]);
        sigma_rec(sys, &rest, out);
    }
}

/// Highest-root construction: negative of the highest root of each
/// component, then recursion on the strongly orthogonal complement.
pub fn sigma_a(sys: &RootSystem) -> SOSet {
    let all: Vec<usize> = (0..sys.num_roots()).collect();
    let mut out = Vec::new();
    sigma_rec(sys, &all, &mut out);
    SOSet { idx: out }
}

pub fn satisfies_c1(sys: &RootSystem, set: &SOSet) -> Option<C1Witness> {
    let m = set.indices();
    for (a, &alpha) in m.iter().enumerate() {
        for beta in 0..sys.num_roots() {
            let orth = m.iter().enumerate().all(|(b, &g)| b == a || sys.pair_index(g, beta) == 0);
            if orth && sys.pair_index(alpha, beta).rem_euclid(2) == 1 {
                return Some(C1Witness { alpha: sys.root(alpha).clone(), beta: sys.root(beta).clone() });
            }
        }
    }
    None
}

/// Order of the Weyl group, from the exponents.
pub fn weyl_order(sys: &RootSystem) -> u128 {
    sys.exponents().iter().map(|&m| (m + 1) as u128).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    /// `w(set)` lies in the target up to member signs; letters are simple
    /// reflections, rightmost applied first.
    Conjugate {
        word: Vec<usize>,
    },
    NotConjugate,
    /// Search exhausted without certificate and the group is too large for BFS.
    Unknown,
}

const ORBIT_BFS_LIMIT: u128 = 1_000_000;

fn length_screen(sys: &RootSystem, set: &[usize], target: &[usize]) -> bool {
    let count = |s: &[usize]| {
        let mut m: BTreeMap<i64, usize> = BTreeMap::new();
        for &i in s {
            *m.entry(sys.sq_len_index(i)).or_default() += 1;
        }
        m
    };
    let a = count(set);
    let b = count(target);
    a.iter().all(|(l, n)| b.get(l).copied().unwrap_or(0) >= *n)
}

/// Word `u` in reflections of `psi` (as simple letters) with `u(from) = to`.
fn map_within(sys: &RootSystem, psi: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
    let gens: Vec<usize> = psi.iter().copied().filter(|&i| sys.is_positive_index(i)).collect();
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen: BTreeSet<usize> = BTreeSet::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut refls = Vec::new();
            let mut cur = x;
            while cur != from {
                let (p, g) = prev[&cur];
                refls.push(g);
                cur = p;
            }
            // refls[0] applied last
            let mut word = Vec::new();
            for g in refls {
                word.extend(sys.reflection_word(g));
            }
            return Some(word);
        }
        for &g in &gens {
            let y = sys.reflect_index(g, x);
            if seen.insert(y) {
                prev.insert(y, (x, g));
                queue.push_back(y);
            }
        }
    }
    None
}

fn search(sys: &RootSystem, psi: &[usize], rest: &[usize], targets: &[usize], word: Vec<usize>) -> Option<Vec<usize>> {
    if rest.is_empty() {
        return Some(word);
    }
    let gpos = (0..rest.len()).max_by_key(|&k| (sys.sq_len_index(rest[k]), std::cmp::Reverse(k)))?;
    let g = rest[gpos];
    for (tpos, &t) in targets.iter().enumerate() {
        if sys.sq_len_index(t) != sys.sq_len_index(g) {
            continue;
        }
        for s in [t, sys.neg_index(t)] {
            let Some(u) = map_within(sys, psi, g, s) else { continue };
            let moved: Vec<usize> =
                rest.iter().enumerate().filter(|&(k, _)| k != gpos).map(|(_, &r)| sys.apply_word(&u, r)).collect();
            let tg: Vec<usize> = targets.iter().enumerate().filter(|&(k, _)| k != tpos).map(|(_, &x)| x).collect();
            let psi2 = so_complement_within(sys, psi, &[s]);
            let mut w = u.clone();
            w.extend(word.iter().copied());
            if let Some(res) = search(sys, &psi2, &moved, &tg, w) {
                return Some(res);
            }
        }
    }
    None
}

fn orbit_search(sys: &RootSystem, set: &[usize], target: &[usize]) -> Option<Vec<usize>> {
    let tset: BTreeSet<usize> = target.iter().map(|&i| sys.positive_rep(i)).collect();
    let canon = |s: &[usize]| {
        let mut v: Vec<usize> = s.iter().map(|&i| sys.positive_rep(i)).collect();
        v.sort_unstable();
        v
    };
    let start = canon(set);
    let mut prev: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        if s.iter().all(|i| tset.contains(i)) {
            let mut word = Vec::new();
            let mut cur = s;
            while cur != start {
                let (p, k) = prev[&cur].clone();
                word.push(k);
                cur = p;
            }
            return Some(word);
        }
        for k in 0..sys.rank() {
            let img: Vec<usize> = s.iter().map(|&j| sys.reflect_simple_index(k, j)).collect();
            let c = canon(&img);
            if seen.insert(c.clone()) {
                prev.insert(c.clone(), (s.clone(), k));
                queue.push_back(c);
            }
        }
    }
    None
}

/// Decides whether some Weyl conjugate of `set` is contained in `target`,
/// members compared up to sign.
pub fn is_conjugate_subset_of(sys: &RootSystem, set: &SOSet, target: &SOSet) -> Conjugacy {
    if set.len() > target.len() || !length_screen(sys, set.indices(), target.indices()) {
        return Conjugacy::NotConjugate;
    }
    let all: Vec<usize> = (0..sys.num_roots()).collect();
    if let Some(word) = search(sys, &all, set.indices(), target.indices(), Vec::new()) {
        return Conjugacy::Conjugate { word };
    }
    if weyl_order(sys) <= ORBIT_BFS_LIMIT {
        return match orbit_search(sys, set.indices(), target.indices()) {
            Some(word) => Conjugacy::Conjugate { word },
            None => Conjugacy::NotConjugate,
        };
    }
    Conjugacy::Unknown
}

/// Checks a certificate: `w(set)` is contained in `target` up to sign.
pub fn check_certificate(sys: &RootSystem, set: &SOSet, target: &SOSet, word: &[usize]) -> bool {
    let t: BTreeSet<usize> = target.indices().iter().map(|&i| sys.positive_rep(i)).collect();
    set.indices().iter().all(|&i| t.contains(&sys.positive_rep(sys.apply_word(word, i))))
}

pub fn is_conjugate(sys: &RootSystem, a: &SOSet, b: &SOSet) -> Conjugacy {
    if a.len() != b.len() {
        return Conjugacy::NotConjugate;
    }
    is_conjugate_subset_of(sys, a, b)
}

pub const DEFAULT_ENUM_BUDGET: u128 = 100_000;

/// Representatives of all strongly orthogonal sets up to Weyl conjugacy and
/// member signs, sizes up to `max_rank`.
pub fn enumerate_so_sets(sys: &RootSystem, max_rank: usize, budget: u128) -> Result<Vec<SOSet>, SorthError> {
    let order = weyl_order(sys);
    if order > budget {
        return Err(SorthError::BudgetExceeded { order, budget });
    }
    let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<Vec<usize>> = vec![Vec::new()];
    owner.insert(Vec::new(), 0);
    let mut layer = vec![Vec::<usize>::new()];
    for _ in 0..max_rank {
        let mut next = Vec::new();
        for rep in &layer {
            for r in 0..sys.num_positive() {
                if rep.contains(&r) || !rep.iter().all(|&s| sys.so_index(r, s)) {
                    continue;
                }
                let mut cand = rep.clone();
                cand.push(r);
                cand.sort_unstable();
                if owner.contains_key(&cand) {
                    continue;
                }
                let (orbit, _) = sys.weyl_orbit_indices(&cand, usize::MAX, OrbitMode::SignInsensitive);
                let id = reps.len();
                let rep_form = orbit[0].clone();
                for o in orbit {
                    owner.insert(o, id);
                }
                reps.push(rep_form.clone());
                next.push(rep_form);
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let mut out: Vec<SOSet> = reps.into_iter().map(|idx| SOSet { idx }).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.idx.cmp(&b.idx)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnismaxReport {
    pub ty: RootSystemType,
    pub classes: usize,
    /// Sigma_a maximal, (C1)-free, and the only maximal (C1)-free class.
    pub clause1: Option<bool>,
    /// Sigma_a maximal among plain orthogonal sets.
    pub clause2: Option<bool>,
    /// Every (C1)-free class is conjugate into Sigma_a.
    pub clause3: Option<bool>,
    /// Type A_{2n}: every nonempty class satisfies (C1).
    pub clause4: Option<bool>,
    /// Every class is (C1)-witnessed or conjugate into Sigma_a.
    pub trichotomy: bool,
}

impl AnismaxReport {
    pub fn all_pass(&self) -> bool {
        [self.clause1, self.clause2, self.clause3, self.clause4].iter().all(|c| c.unwrap_or(true)) && self.trichotomy
    }
}

pub fn verify_anismax(sys: &RootSystem, budget: u128) -> Result<AnismaxReport, SorthError> {
    let classes = enumerate_so_sets(sys, sys.rank(), budget)?;
    let ty = sys.ty();
    if ty.is_a_even() {
        let ok = classes.iter().filter(|c| !c.is_empty()).all(|c| satisfies_c1(sys, c).is_some());
        return Ok(AnismaxReport {
            ty,
            classes: classes.len(),
            clause1: None,
            clause2: None,
            clause3: None,
            clause4: Some(ok),
            trichotomy: ok,
        });
    }
    let sa = sigma_a(sys);
    let sa_free = satisfies_c1(sys, &sa).is_none();
    let maximal = |s: &SOSet| so_complement_indices(sys, s).is_empty();
    let free: Vec<&SOSet> = classes.iter().filter(|c| satisfies_c1(sys, c).is_none()).collect();
    let maximal_free: Vec<&&SOSet> = free.iter().filter(|c| maximal(c)).collect();
    let unique =
        maximal_free.len() == 1 && matches!(is_conjugate(sys, maximal_free[0], &sa), Conjugacy::Conjugate { .. });
    let clause1 = sa_free && maximal(&sa) && unique;
    let clause2 = (0..sys.num_roots()).all(|b| sa.indices().iter().any(|&s| sys.pair_index(b, s) != 0));
    let into = |c: &SOSet| matches!(is_conjugate_subset_of(sys, c, &sa), Conjugacy::Conjugate { .. });
    let clause3 = free.iter().all(|c| into(c));
    let trichotomy = classes.iter().all(|c| satisfies_c1(sys, c).is_some() || into(c));
    Ok(AnismaxReport {
        ty,
        classes: classes.len(),
        clause1: Some(clause1),
        clause2: Some(clause2),
        clause3: Some(clause3),
        clause4: None,
        trichotomy,
    })
}

fn e(sys: &RootSystem, terms: &[(usize, i64)]) -> RootVec {
    sys.eps_root(terms).expect("tabled epsilon root")
}

fn neg_vec(v: &[i64]) -> RootVec {
    RootVec(v.iter().map(|c| -c).collect())
}

fn neg_simple(d: usize, i: usize) -> RootVec {
    let mut v = vec![0; d];
    v[i - 1] = -1;
    RootVec(v)
}

/// The tabled representative of Sigma_a, written with negative roots.
pub fn table_sigma_a(sys: &RootSystem) -> Result<SOSet, SorthError> {
    let t = sys.ty();
    let d = t.rank;
    let h = sys.highest_root().neg();
    let members: Vec<RootVec> = match t.family {
        Family::A if d % 2 == 1 => {
            let n = d.div_ceil(2);
            (1..=n).map(|i| e(sys, &[(i, -1), (2 * n + 1 - i, 1)])).collect()
        }
        Family::B | Family::D => {
            let mut v = Vec::new();
            for i in 1..=d / 2 {
                v.push(e(sys, &[(2 * i - 1, -1), (2 * i, 1)]));
                v.push(e(sys, &[(2 * i - 1, -1), (2 * i, -1)]));
            }
            if t.family == Family::B && d % 2 == 1 {
                v.push(e(sys, &[(d, -1)]));
            }
            v
        }
        Family::C => (1..=d).map(|i| e(sys, &[(i, -2)])).collect(),
        Family::E => match d {
            6 => vec![h, neg_vec(&[1, 0, 1, 1, 1, 1]), neg_vec(&[0, 0, 1, 1, 1, 0]), neg_simple(6, 4)],
            7 => vec![
                h,
                neg_vec(&[0, 1, 1, 2, 2, 2, 1]),
                neg_vec(&[0, 1, 1, 2, 1, 0, 0]),
                neg_simple(7, 2),
                neg_simple(7, 3),
                neg_simple(7, 5),
                neg_simple(7, 7),
            ],
            _ => vec![
                h,
                neg_vec(&[2, 2, 3, 4, 3, 2, 1, 0]),
                neg_vec(&[0, 1, 1, 2, 2, 2, 1, 0]),
                neg_vec(&[0, 1, 1, 2, 1, 0, 0, 0]),
                neg_simple(8, 2),
                neg_simple(8, 3),
                neg_simple(8, 5),
                neg_simple(8, 7),
            ],
        },
        Family::F => vec![h, neg_vec(&[0, 1, 2, 2]), neg_vec(&[0, 1, 2, 0]), neg_simple(4, 2)],
        Family::G => vec![h, neg_simple(2, 1)],
        Family::A => return Err(SorthError::NoTable(t)),
    };
    SOSet::new(sys, &members)
}

/// The alternative tabled representatives, rich in negative simple roots.
pub fn table_sigma_a_alternative(sys: &RootSystem) -> Result<Option<SOSet>, SorthError> {
    let t = sys.ty();
    let d = t.rank;
    let members: Vec<RootVec> = match t.family {
        Family::A if d % 2 == 1 => (1..=d).step_by(2).map(|i| neg_simple(d, i)).collect(),
        Family::D if d % 2 == 1 => {
            let mut v = Vec::new();
            for i in 1..=d / 2 {
                v.push(e(sys, &[(2 * i, -1), (2 * i + 1, 1)]));
                v.push(e(sys, &[(2 * i, -1), (2 * i + 1, -1)]));
            }
            v
        }
        Family::E if d == 6 => {
            vec![RootVec(vec![0, 1, 1, 2, 1, 0]), neg_simple(6, 2), neg_simple(6, 3), neg_simple(6, 5)]
        }
        _ => return Ok(None),
    };
    Ok(Some(SOSet::new(sys, &members)?))
}

/// Ordered Sigma_a whose members index the sign basis `e_1..e_r`.
pub fn sign_sigma_a(sys: &RootSystem) -> Result<SOSet, SorthError> {
    let t = sys.ty();
    let d = t.rank;
    let members: Vec<RootVec> = match t.family {
        Family::A if d % 2 == 1 => (1..=d).step_by(2).map(|i| neg_simple(d, i)).collect(),
        Family::B => {
            let mut v = Vec::new();
            for i in 1..=d / 2 {
                v.push(e(sys, &[(2 * i - 1, -1), (2 * i, -1)]));
                v.push(e(sys, &[(2 * i - 1, -1), (2 * i, 1)]));
            }
            if d % 2 == 1 {
                v.push(e(sys, &[(d, -1)]));
            }
            v
        }
        Family::C => (1..=d).map(|i| e(sys, &[(i, -2)])).collect(),
        Family::D => {
            let s = d % 2;
            let mut v = Vec::new();
            for i in 1..=d / 2 {
                v.push(e(sys, &[(2 * i - 1 + s, -1), (2 * i + s, -1)]));
                v.push(e(sys, &[(2 * i - 1 + s, -1), (2 * i + s, 1)]));
            }
            v
        }
        Family::E => match d {
            6 => vec![neg_vec(&[0, 1, 1, 2, 1, 0]), neg_simple(6, 2), neg_simple(6, 3), neg_simple(6, 5)],
            7 => vec![
                sys.highest_root().neg(),
                neg_simple(7, 2),
                neg_simple(7, 3),
                neg_vec(&[0, 1, 1, 2, 2, 2, 1]),
                neg_simple(7, 5),
                neg_vec(&[0, 1, 1, 2, 1, 0, 0]),
                neg_simple(7, 7),
            ],
            _ => vec![
                sys.highest_root().neg(),
                neg_simple(8, 2),
                neg_simple(8, 3),
                neg_vec(&[2, 2, 3, 4, 3, 2, 1, 0]),
                neg_simple(8, 5),
                neg_vec(&[0, 1, 1, 2, 2, 2, 1, 0]),
                neg_simple(8, 7),
                neg_vec(&[0, 1, 1, 2, 1, 0, 0, 0]),
            ],
        },
        Family::F => vec![sys.highest_root().neg(), neg_simple(4, 2), neg_vec(&[0, 1, 2, 0]), neg_vec(&[0, 1, 2, 2])],
        Family::G => vec![neg_simple(2, 1), sys.highest_root().neg()],
        Family::A => return Err(SorthError::NoTable(t)),
    };
    SOSet::new(sys, &members)
}
