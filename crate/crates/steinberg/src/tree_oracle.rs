//! A ball in the `(q+1)`-regular tree: chambers are edges, panels are
//! vertices. Serves as a brute-force oracle in rank one.

use num_traits::Zero;
use thiserror::Error;

use crate::cochain::{self, CochainError};
use crate::linalg::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("radius {0} exceeds the supported maximum 12")]
    BudgetExceeded(usize),
    #[error("chamber {0} is not in the ball")]
    NotInBall(usize),
    #[error("base values sum to {0}, not zero")]
    NotHarmonicBase(String),
}

#[derive(Debug, Clone)]
pub struct TreeBall {
    pub q: i64,
    pub radius: usize,
    /// Endpoints of each chamber.
    pub chambers: Vec<[usize; 2]>,
    /// Distance of each chamber from the base.
    pub depth: Vec<usize>,
    /// Incident chambers of each panel.
    pub panels: Vec<Vec<usize>>,
    vparent: Vec<Option<usize>>,
    vdepth: Vec<usize>,
    pub base: usize,
    /// Axis chambers with their signed offset from the base.
    pub axis: Vec<(i64, usize)>,
}

pub const MAX_RADIUS: usize = 12;

pub fn build_ball(q: i64, r: usize) -> Result<TreeBall, TreeError> {
    cochain::check_q(q)?;
    if r > MAX_RADIUS {
        return Err(TreeError::BudgetExceeded(r));
    }
    let mut b = TreeBall {
        q,
        radius: r,
        chambers: vec![[0, 1]],
        depth: vec![0],
        panels: vec![vec![0], vec![0]],
        vparent: vec![None, Some(0)],
        vdepth: vec![0, 1],
        base: 0,
        axis: vec![(0, 0)],
    };
    // (panel, chamber depth to give new chambers, axis direction if on axis)
    let mut frontier: Vec<(usize, Option<i64>)> = vec![(0, Some(-1)), (1, Some(1))];
    for d in 1..=r {
        let mut next = Vec::new();
        for (v, dir) in frontier {
            for k in 0..q as usize {
                let u = b.panels.len();
                let c = b.chambers.len();
                b.panels.push(vec![c]);
                b.vparent.push(Some(v));
                b.vdepth.push(b.vdepth[v] + 1);
                b.chambers.push([v, u]);
                b.depth.push(d);
                b.panels[v].push(c);
                let ax = if k == 0 { dir } else { None };
                if let Some(s) = ax {
                    b.axis.push((s * d as i64, c));
                }
                next.push((u, ax));
            }
        }
        frontier = next;
    }
    b.axis.sort();
    Ok(b)
}

impl TreeBall {
    pub fn num_chambers(&self) -> usize {
        self.chambers.len()
    }

    /// Panels whose full star of `q + 1` chambers lies in the ball.
    pub fn interior_panels(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.panels.len()).filter(|&v| self.panels[v].len() == self.q as usize + 1)
    }

    fn vertex_distance(&self, mut a: usize, mut b: usize) -> usize {
        let mut d = 0;
        while self.vdepth[a] > self.vdepth[b] {
            a = self.vparent[a].unwrap();
            d += 1;
        }
        while self.vdepth[b] > self.vdepth[a] {
            b = self.vparent[b].unwrap();
            d += 1;
        }
        while a != b {
            a = self.vparent[a].unwrap();
            b = self.vparent[b].unwrap();
            d += 2;
        }
        d
    }

    fn dist(&self, c1: usize, c2: usize) -> usize {
        if c1 == c2 {
            return 0;
        }
        let [a, b] = self.chambers[c1];
        let [c, d] = self.chambers[c2];
        [(a, c), (a, d), (b, c), (b, d)].iter().map(|&(x, y)| self.vertex_distance(x, y)).min().unwrap() + 1
    }

    pub fn axis_chamber(&self, offset: i64) -> Option<usize> {
        self.axis.iter().find(|(o, _)| *o == offset).map(|(_, c)| *c)
    }
}

pub fn tree_distance(ball: &TreeBall, c1: usize, c2: usize) -> Result<usize, TreeError> {
    for c in [c1, c2] {
        if c >= ball.num_chambers() {
            return Err(TreeError::NotInBall(c));
        }
    }
    Ok(ball.dist(c1, c2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicReport {
    pub panels_checked: usize,
    pub sums_checked: usize,
    pub failures: usize,
}

impl HarmonicReport {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.sums_checked > 0
    }
}

/// `sum_{C >= D} (-q)^{-d(C, C')}` over interior panels `D` and chambers `C'`
/// within `r_inner` of the base, scaled to integers.
pub fn verify_hctest(ball: &TreeBall, r_inner: usize) -> HarmonicReport {
    let qv = ball.q as i128;
    let top = 2 * ball.radius as u32 + 2;
    let mut rep = HarmonicReport { panels_checked: 0, sums_checked: 0, failures: 0 };
    let centres: Vec<usize> = (0..ball.num_chambers()).filter(|&c| ball.depth[c] <= r_inner).collect();
    for v in ball.interior_panels() {
        rep.panels_checked += 1;
        for &cp in &centres {
            let s: i128 = ball.panels[v].iter().map(|&c| (-qv).pow(top - ball.dist(c, cp) as u32)).sum();
            rep.sums_checked += 1;
            if s != 0 {
                rep.failures += 1;
            }
        }
    }
    rep
}

fn legendre_prime(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Values on the star of the base panel: zero on the two axis chambers,
/// the quadratic character of a labelling by `k^*` on the others.
pub fn legendre_base(ball: &TreeBall) -> Vec<(usize, Q)> {
    let v = ball.chambers[ball.base][0];
    let axis: Vec<usize> = ball.axis.iter().map(|(_, c)| *c).collect();
    let mut out = Vec::new();
    let mut label = 0i64;
    for &c in &ball.panels[v] {
        if axis.contains(&c) {
            out.push((c, Q::zero()));
            continue;
        }
        label += 1;
        let s = if is_prime(ball.q) {
            legendre_prime(label, ball.q)
        } else if (label - 1) % 2 == 0 {
            // label k stands for g^{k-1}, g a generator
            1
        } else {
            -1
        };
        out.push((c, Q::from_integer(s.into())));
    }
    out
}

#[derive(Debug, Clone)]
pub struct Extension {
    /// Value at each chamber, times `q^radius+1` so all are integers.
    pub scaled: Vec<i128>,
    pub scale_exp: u32,
    pub report: HarmonicReport,
    /// Values decay by `-1/q` per step away from the star.
    pub decay_ok: bool,
}

/// Extends values on the star of one panel by `(-q)^{-d}` and checks every
/// interior panel sums to zero.
pub fn verify_extension(ball: &TreeBall, base: &[(usize, Q)]) -> Result<Extension, TreeError> {
    let total = base.iter().fold(Q::zero(), |acc, (_, x)| acc + x);
    if !total.is_zero() {
        return Err(TreeError::NotHarmonicBase(total.to_string()));
    }
    let qv = ball.q as i128;
    let exp = ball.radius as u32 + 1;
    let scale = qv.pow(exp);
    let mut scaled = vec![0i128; ball.num_chambers()];
    let mut decay_ok = true;
    for c in 0..ball.num_chambers() {
        let (d, v) = base.iter().map(|(s, x)| (ball.dist(c, *s), x)).min_by_key(|(d, _)| *d).expect("nonempty base");
        let num = v * Q::from_integer(scale.into()) / Q::from_integer((-qv).pow(d as u32).into());
        if !num.is_integer() {
            decay_ok = false;
        }
        scaled[c] = num.to_integer().try_into().expect("fits");
    }
    // each step away from the star multiplies by -1/q
    for c in 0..ball.num_chambers() {
        if base.iter().any(|(s, _)| *s == c) {
            continue;
        }
        let lower = ball.chambers[c][0];
        let parent = ball.panels[lower].iter().copied().find(|&p| ball.depth[p] + 1 == ball.depth[c]);
        if let Some(p) = parent {
            if scaled[c] * -qv != scaled[p] {
                decay_ok = false;
            }
        }
    }
    let mut rep = HarmonicReport { panels_checked: 0, sums_checked: 0, failures: 0 };
    for v in ball.interior_panels() {
        rep.panels_checked += 1;
        rep.sums_checked += 1;
        let s: i128 = ball.panels[v].iter().map(|&c| scaled[c]).sum();
        if s != 0 {
            rep.failures += 1;
        }
    }
    Ok(Extension { scaled, scale_exp: exp, report: rep, decay_ok })
}

/// `sum_{d(base, C) = n} |(-q)^{-n}|` for each shell `n`.
pub fn iwahori_shell_sums(ball: &TreeBall) -> Vec<Q> {
    let mut counts = vec![0u64; ball.radius + 1];
    for &d in &ball.depth {
        counts[d] += 1;
    }
    counts.iter().enumerate().map(|(n, &k)| Q::new(k.into(), num_bigint::BigInt::from(ball.q).pow(n as u32))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(build_ball(3, 0).unwrap().num_chambers(), 1);
        assert_eq!(build_ball(3, 1).unwrap().num_chambers(), 7);
        assert_eq!(build_ball(3, 2).unwrap().num_chambers(), 25);
        assert!(build_ball(4, 2).is_err());
    }

    #[test]
    fn axis_distances() {
        let b = build_ball(3, 4).unwrap();
        let a = |k| b.axis_chamber(k).unwrap();
        assert_eq!(tree_distance(&b, a(-2), a(2)).unwrap(), 4);
        assert_eq!(tree_distance(&b, a(0), a(0)).unwrap(), 0);
        assert!(tree_distance(&b, 0, 10_000).is_err());
    }

    #[test]
    fn legendre_star() {
        let b = build_ball(5, 1).unwrap();
        let l = legendre_base(&b);
        assert_eq!(l.len(), 6);
        let plus = l.iter().filter(|(_, x)| *x == Q::from_integer(1.into())).count();
        assert_eq!(plus, 2);
    }
}
