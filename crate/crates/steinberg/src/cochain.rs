//! Cochains on apartment chambers with building multiplicities, and the
//! `(Z/2)^r` sign calculus attached to Sigma_a.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::apartment::{self, ApartmentError, Chamber};
use crate::linalg::{is_integer, q, qf, Q};
use crate::rootsys::{Family, RationalCoweight, RootSystem, RootSystemType, RootVec};
use crate::sorth::SOSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("q = {0} must be odd and at least 3")]
    InvalidQ(i64),
    #[error("panel sum needs the cochain to be declared invariant under the panel fixator")]
    UnsupportedPanel,
    #[error("base values do not sum to zero over the star (sum {0})")]
    NotHarmonicBase(String),
    #[error("not applicable to type {0}")]
    NotApplicable(RootSystemType),
    #[error("<{root}, xi> = {value} is not an integer")]
    NonIntegralPairing { root: RootVec, value: String },
    #[error("constraints have rank {rank} < {r}; free coordinates {free:?}")]
    Ambiguous { rank: usize, r: usize, free: Vec<usize> },
    #[error("constraints {0:?} multiply to an inconsistent relation")]
    Inconsistent(Vec<usize>),
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
}

pub fn check_q(q: i64) -> Result<(), CochainError> {
    if q >= 3 && q % 2 == 1 {
        Ok(())
    } else {
        Err(CochainError::InvalidQ(q))
    }
}

/// `(-q)^{-d}` exactly.
pub fn neg_q_pow(q: i64, d: u64) -> Q {
    let p = Q::from_integer((-q).into()).pow(d as i32);
    p.recip()
}

/// Finitely supported rational function on chambers of one level.
#[derive(Debug, Clone)]
pub struct Cochain {
    pub base: Chamber,
    pub q: i64,
    values: HashMap<Chamber, Q>,
}

impl Cochain {
    pub fn new(base: Chamber, q: i64) -> Self {
        Cochain { base, q, values: HashMap::new() }
    }
    pub fn value(&self, c: &Chamber) -> Q {
        self.values.get(c).cloned().unwrap_or_else(Q::zero)
    }
    pub fn set(&mut self, c: Chamber, v: Q) {
        self.values.insert(c, v);
    }
    pub fn support_len(&self) -> usize {
        self.values.values().filter(|v| !v.is_zero()).count()
    }
    pub fn chambers(&self) -> impl Iterator<Item = (&Chamber, &Q)> {
        self.values.iter()
    }
}

/// `C -> (-q)^{-d(C0, C)}` on the ball of the given radius.
pub fn iwahori_vector(sys: &RootSystem, c0: &Chamber, q: i64, radius: usize) -> Result<Cochain, CochainError> {
    check_q(q)?;
    let mut f = Cochain::new(c0.clone(), q);
    for (c, d) in apartment::chambers_within(sys, c0, radius) {
        f.set(c, neg_q_pow(q, d as u64));
    }
    Ok(f)
}

/// A panel of the apartment seen from a retraction centre: one building
/// chamber retracts onto `near`, the other `q` onto `far`.
#[derive(Debug, Clone)]
pub struct PanelSpec {
    pub near: Chamber,
    pub far: Chamber,
    /// Caller's declaration that the cochain is constant on retraction classes.
    pub invariant: bool,
}

impl PanelSpec {
    /// Orders the two apartment chambers at a panel by distance to `centre`.
    pub fn toward(sys: &RootSystem, centre: &Chamber, a: Chamber, b: Chamber) -> Result<PanelSpec, CochainError> {
        let (da, db) = (apartment::distance(sys, centre, &a)?, apartment::distance(sys, centre, &b)?);
        let (near, far) = if da <= db { (a, b) } else { (b, a) };
        Ok(PanelSpec { near, far, invariant: true })
    }
}

/// Sum over the `q + 1` chambers of the panel in the near/far model.
pub fn panel_sum(panel: &PanelSpec, f: &Cochain) -> Result<Q, CochainError> {
    if !panel.invariant {
        return Err(CochainError::UnsupportedPanel);
    }
    Ok(f.value(&panel.near) + q(f.q) * f.value(&panel.far))
}

/// One chamber of a facet star with its building multiplicity.
#[derive(Debug, Clone)]
pub struct StarEntry {
    pub chamber: Chamber,
    pub value: Q,
    pub multiplicity: u64,
}

/// Extends harmonic values on a facet star: each chamber of the ball takes
/// the value of its nearest star chamber times `(-q)^{-d}`.
pub fn extend_by_harmonicity(
    sys: &RootSystem,
    star: &[StarEntry],
    q: i64,
    radius: usize,
) -> Result<Cochain, CochainError> {
    check_q(q)?;
    let total = star.iter().fold(Q::zero(), |acc, s| acc + &s.value * Q::from_integer(s.multiplicity.into()));
    if !total.is_zero() {
        return Err(CochainError::NotHarmonicBase(total.to_string()));
    }
    let Some(first) = star.first() else {
        return Err(CochainError::NotHarmonicBase("empty star".into()));
    };
    let mut f = Cochain::new(first.chamber.clone(), q);
    for (c, _) in apartment::chambers_within(sys, &first.chamber, radius) {
        let (d, s) = star
            .iter()
            .map(|s| (apartment::distance(sys, &c, &s.chamber).expect("same level"), s))
            .min_by_key(|(d, _)| *d)
            .expect("nonempty star");
        f.set(c, &s.value * neg_q_pow(q, d));
    }
    Ok(f)
}

/// Element of `(Z/2)^r`, coordinates `e_1..e_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub bits: Vec<bool>,
}

impl SignVector {
    pub fn zero(r: usize) -> Self {
        SignVector { bits: vec![false; r] }
    }
    /// Product of the listed generators (1-based).
    pub fn of(r: usize, gens: &[usize]) -> Self {
        let mut v = Self::zero(r);
        for &g in gens {
            v.bits[g - 1] ^= true;
        }
        v
    }
    pub fn add(&self, o: &SignVector) -> SignVector {
        SignVector { bits: self.bits.iter().zip(&o.bits).map(|(a, b)| a ^ b).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
    pub fn support(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).map(|i| i + 1).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support();
        if s.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = s.iter().map(|i| format!("e{i}")).collect();
        f.write_str(&parts.join(""))
    }
}

/// Character of `(Z/2)^r`: `e_i -> (-1)^{dual_bits[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignCharacter {
    pub dual_bits: Vec<bool>,
}

impl SignCharacter {
    pub fn from_values(v: &[i64]) -> Self {
        SignCharacter { dual_bits: v.iter().map(|&x| x < 0).collect() }
    }
    pub fn eval(&self, v: &SignVector) -> i64 {
        let odd = self.dual_bits.iter().zip(&v.bits).filter(|(a, b)| **a && **b).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }
    /// Values on `e_1..e_r`.
    pub fn values(&self) -> Vec<i64> {
        self.dual_bits.iter().map(|&b| if b { -1 } else { 1 }).collect()
    }
}

/// Parities of `<beta_j, xi>`.
pub fn coroot_action(sys: &RootSystem, sigma: &SOSet, xi: &RationalCoweight) -> Result<SignVector, CochainError> {
    let bits = sigma
        .members(sys)
        .iter()
        .map(|b| {
            let p = sys.pairing_unchecked(b, xi);
            if !is_integer(&p) {
                return Err(CochainError::NonIntegralPairing { root: b.clone(), value: p.to_string() });
            }
            Ok(p.to_integer().is_odd())
        })
        .collect::<Result<_, _>>()?;
    Ok(SignVector { bits })
}

fn sign_rank(t: RootSystemType) -> Result<usize, CochainError> {
    let d = t.rank;
    Ok(match t.family {
        Family::A if d % 2 == 1 => d.div_ceil(2),
        Family::A => return Err(CochainError::NotApplicable(t)),
        Family::D if d % 2 == 1 => d - 1,
        Family::E if d == 6 => 4,
        _ => d,
    })
}

/// Character on the sign basis forced by the constraint system.
pub fn eic_character(t: RootSystemType) -> Result<SignCharacter, CochainError> {
    let r = sign_rank(t)?;
    let d = t.rank;
    let v: Vec<i64> = (1..=r)
        .map(|i| match t.family {
            Family::B => {
                if i % 2 == 0 || i == d {
                    -1
                } else {
                    1
                }
            }
            Family::C => {
                if (d + 1 - i).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            Family::F if i % 2 == 1 => 1,
            _ => -1,
        })
        .collect();
    Ok(SignCharacter::from_values(&v))
}

/// The character table exactly as printed, for side-by-side comparison.
pub fn printed_eic(t: RootSystemType) -> Result<SignCharacter, CochainError> {
    let mut v = eic_character(t)?.values();
    match (t.family, t.rank) {
        (Family::E, 7) => {
            v[0] = 1;
            v[1] = 1;
        }
        (Family::E, 8) => {
            v[0] = 1;
            v[2] = 1;
        }
        (Family::F, _) => v = vec![-1; 4],
        _ => {}
    }
    Ok(SignCharacter::from_values(&v))
}

/// Solves for the character over GF(2).
pub fn solve_character(r: usize, constraints: &[(SignVector, i64)]) -> Result<SignCharacter, CochainError> {
    // rows: (vector, rhs bit, constraint indices combined)
    let mut rows: Vec<(Vec<bool>, bool, BTreeSet<usize>)> =
        constraints.iter().enumerate().map(|(k, (v, s))| (v.bits.clone(), *s < 0, BTreeSet::from([k]))).collect();
    let mut pivots = Vec::new();
    let mut rk = 0;
    for col in 0..r {
        let Some(p) = (rk..rows.len()).find(|&i| rows[i].0[col]) else { continue };
        rows.swap(rk, p);
        let (pv, pb, pc) = rows[rk].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rk && row.0[col] {
                for (x, y) in row.0.iter_mut().zip(&pv) {
                    *x ^= y;
                }
                row.1 ^= pb;
                row.2 = row.2.symmetric_difference(&pc).copied().collect();
            }
        }
        pivots.push(col);
        rk += 1;
    }
    if let Some(bad) = rows[rk..].iter().find(|row| row.1) {
        return Err(CochainError::Inconsistent(bad.2.iter().copied().collect()));
    }
    if rk < r {
        let free = (0..r).filter(|c| !pivots.contains(c)).map(|c| c + 1).collect();
        return Err(CochainError::Ambiguous { rank: rk, r, free });
    }
    let mut dual = vec![false; r];
    for (k, &c) in pivots.iter().enumerate() {
        dual[c] = rows[k].1;
    }
    Ok(SignCharacter { dual_bits: dual })
}

/// Root subsystem generated by reflections in the given roots.
fn generated(sys: &RootSystem, gens: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = gens.iter().flat_map(|&g| [g, sys.neg_index(g)]).collect();
    loop {
        let cur: Vec<usize> = s.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                grew |= s.insert(sys.reflect_index(a, b));
            }
        }
        if !grew {
            return s;
        }
    }
}

fn is_negative_simple(r: &RootVec) -> bool {
    r.0.iter().all(|&x| x <= 0) && r.height() == -1
}

/// Constraints on the character from negative simple members, from pairs
/// spanning a `B_2` with a negative simple root, and from the simple coroots.
pub fn build_constraints(
    sys: &RootSystem,
    sigma: &SOSet,
    c0: &Chamber,
) -> Result<Vec<(SignVector, i64)>, CochainError> {
    let r = sigma.len();
    let m = sigma.members(sys);
    let mut out = Vec::new();
    for (i, b) in m.iter().enumerate() {
        if is_negative_simple(b) {
            out.push((SignVector::of(r, &[i + 1]), -1));
        }
    }
    let mut seen = BTreeSet::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let diff = m[j].sub(&m[i]);
            if diff.0.iter().any(|x| x % 2 != 0) {
                continue;
            }
            let alpha = RootVec(diff.0.iter().map(|x| x / 2).collect());
            if !is_negative_simple(&alpha) {
                continue;
            }
            let (Some(ai), Some(bj)) = (sys.index_of(&alpha), sys.index_of(&m[j])) else { continue };
            if generated(sys, &[bj, ai]).len() != 8 {
                continue;
            }
            // f'(alpha) = (f(beta_j) - f(beta_i)) / 2 in f-units, h = 2f
            let hi = c0.h(sigma.indices()[i]);
            let hj = c0.h(sigma.indices()[j]);
            if (hj - hi) % 4 != 0 {
                continue;
            }
            let v = SignVector::of(r, &[i + 1, j + 1]);
            if seen.insert(v.clone()) {
                out.push((v, -1));
            }
        }
    }
    for k in 0..sys.rank() {
        let xi = RationalCoweight::simple_coroot(sys.rank(), k);
        out.push((coroot_action(sys, sigma, &xi)?, 1));
    }
    Ok(out)
}

/// Coweights representing the nontrivial classes in `Y/Y^2` for which the
/// solved character is compared with the torus character.
pub fn chi_representatives(sys: &RootSystem) -> Vec<RationalCoweight> {
    let t = sys.ty();
    let d = t.rank;
    let half = qf(1, 2);
    let third = qf(1, 3);
    let c = |pairs: &[(usize, Q)]| {
        let mut v = vec![Q::zero(); d];
        for (i, x) in pairs {
            v[i - 1] = x.clone();
        }
        RationalCoweight::new(v)
    };
    match t.family {
        Family::A if d % 2 == 1 => vec![sys.fundamental_coweight(0)],
        Family::B => vec![sys.fundamental_coweight(0)],
        Family::C => vec![sys.fundamental_coweight(d - 1)],
        Family::D if d.is_multiple_of(2) => vec![sys.fundamental_coweight(0), sys.fundamental_coweight(d - 1)],
        Family::D => vec![sys.fundamental_coweight(d - 1)],
        Family::E if d == 6 => vec![c(&[(1, third.clone()), (3, -third.clone()), (5, third.clone()), (6, -third)])],
        Family::E if d == 7 => vec![c(&[(2, half.clone()), (5, half.clone()), (7, half)])],
        _ => Vec::new(),
    }
}

/// Coroot actions `alpha_i^vee(c)` on the sign basis as printed, one entry per
/// simple coroot; `None` where no row is printed.
pub fn printed_sract(t: RootSystemType) -> Result<Vec<Option<Vec<usize>>>, CochainError> {
    sign_rank(t)?;
    let d = t.rank;
    let set = |v: &[usize]| Some(v.to_vec());
    let rows = (1..=d)
        .map(|i| match t.family {
            Family::A => {
                if i % 2 == 1 {
                    set(&[])
                } else {
                    set(&[i / 2, i / 2 + 1])
                }
            }
            Family::B => {
                if i % 2 == 1 || i == d {
                    set(&[])
                } else if i < d - 1 {
                    set(&[i - 1, i, i + 1, i + 2])
                } else {
                    set(&[d - 2, d - 1, d])
                }
            }
            Family::C => set(&[]),
            Family::D => {
                if i == d || (d - i) % 2 == 1 {
                    set(&[])
                } else if i > 1 {
                    set(&[i - 1, i, i + 1, i + 2])
                } else {
                    set(&[1, 2])
                }
            }
            Family::E => match (d, i) {
                (6, 1..=3) => set(&[]),
                (6, 4) => set(&[1, 2, 3, 4]),
                (6, _) => None,
                (_, 2 | 3 | 5 | 7) => set(&[]),
                (7, 1) => set(&[1, 3, 4, 6]),
                (7, 4) => set(&[2, 3, 5, 6]),
                (7, _) => set(&[4, 5, 7]),
                (_, 1) => set(&[3, 4, 6, 8]),
                (_, 4) => set(&[2, 3, 5, 8]),
                (_, 6) => set(&[5, 6, 7]),
                _ => set(&[1, 4, 6, 7]),
            },
            Family::F => {
                if i == 1 {
                    set(&[1, 2, 3, 4])
                } else {
                    set(&[])
                }
            }
            Family::G => {
                if i == 1 {
                    set(&[])
                } else {
                    set(&[1, 2])
                }
            }
        })
        .collect();
    Ok(rows)
}

/// Computed coroot actions on the ordered sign basis.
pub fn computed_sract(sys: &RootSystem, sigma: &SOSet) -> Result<Vec<SignVector>, CochainError> {
    (0..sys.rank()).map(|k| coroot_action(sys, sigma, &RationalCoweight::simple_coroot(sys.rank(), k))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct R1R2Result {
    pub r1: usize,
    pub r2: usize,
}

/// Roots separating two adjacent facets of the fixed subcomplex, and those
/// among them of even height.
pub fn r1_r2(sys: &RootSystem) -> Result<R1R2Result, CochainError> {
    let t = sys.ty();
    let d = t.rank;
    // (separating simple root, simple roots outside the Levi), 0-based
    let (sep, outside): (usize, Vec<usize>) = match t.family {
        Family::A if d % 2 == 1 && d > 1 => (1, (1..d).step_by(2).collect()),
        Family::D if d % 2 == 1 => (0, vec![0]),
        Family::E if d == 6 => (0, vec![0, 5]),
        _ => return Err(CochainError::NotApplicable(t)),
    };
    let hits: Vec<&RootVec> = sys.roots()[..sys.num_positive()]
        .iter()
        .filter(|r| r.0[sep] == 1 && outside.iter().all(|&o| o == sep || r.0[o] == 0))
        .collect();
    let r1 = hits.len();
    let r2 = hits.iter().filter(|r| r.height() % 2 == 0).count();
    Ok(R1R2Result { r1, r2 })
}

/// Value on a class of size `k` in the A_2n support computation.
pub fn a2n_class_value(k: usize, q: i64, base: &Q) -> Q {
    let one_minus_q = Q::from_integer((1 - q).into());
    if k == 0 {
        return base.clone();
    }
    let mut v = base / &one_minus_q;
    let step = Q::from_integer(2.into()) / &one_minus_q;
    for _ in 1..k {
        v = &v * &step;
    }
    v
}

/// True if every constraint holds for the character.
pub fn satisfies(ch: &SignCharacter, constraints: &[(SignVector, i64)]) -> bool {
    constraints.iter().all(|(v, s)| ch.eval(v) == *s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartment::base_chambers;

    #[test]
    fn solve_examples() {
        let g = solve_character(2, &[(SignVector::of(2, &[1]), -1), (SignVector::of(2, &[1, 2]), 1)]).unwrap();
        assert_eq!(g.values(), vec![-1, -1]);
        assert!(matches!(solve_character(2, &[(SignVector::of(2, &[1, 2]), 1)]), Err(CochainError::Ambiguous { .. })));
        assert!(matches!(
            solve_character(
                2,
                &[(SignVector::of(2, &[1]), -1), (SignVector::of(2, &[2]), -1), (SignVector::of(2, &[1, 2]), -1)]
            ),
            Err(CochainError::Inconsistent(_))
        ));
    }

    #[test]
    fn panel_sums() {
        let s = RootSystem::of(Family::A, 1).unwrap();
        let (_, e) = base_chambers(&s);
        let f = iwahori_vector(&s, &e, 3, 4).unwrap();
        let n = apartment::neighbours(&s, &e);
        let p = PanelSpec::toward(&s, &e, e.clone(), n[0].clone()).unwrap();
        assert!(panel_sum(&p, &f).unwrap().is_zero());
        let p2 = PanelSpec { invariant: false, ..p };
        assert_eq!(panel_sum(&p2, &f), Err(CochainError::UnsupportedPanel));
    }

    #[test]
    fn class_values() {
        assert_eq!(a2n_class_value(0, 3, &q(1)), q(1));
        assert_eq!(a2n_class_value(1, 3, &q(1)), qf(-1, 2));
        assert_eq!(a2n_class_value(2, 3, &q(1)), qf(1, 2));
    }

    #[test]
    fn r1r2_values() {
        for (f, d, r1, r2) in [(Family::A, 3, 4, 2), (Family::D, 5, 8, 4), (Family::E, 6, 8, 4)] {
            let s = RootSystem::of(f, d).unwrap();
            assert_eq!(r1_r2(&s).unwrap(), R1R2Result { r1, r2 });
        }
    }
}
