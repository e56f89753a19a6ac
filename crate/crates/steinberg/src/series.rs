//! Length generating functions of affine Weyl groups and the exact
//! lambda computations built on them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::apartment::{self, ApartmentError};
use crate::cochain::{self, CochainError};
use crate::linalg::{q, Q};
use crate::rootsys::{Family, RootSystem, RootSystemType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("|x| = |{0}| must be below 1")]
    DomainError(String),
    #[error("ball of radius {radius} exceeds the chamber budget {budget}")]
    BudgetExceeded { radius: usize, budget: usize },
    #[error("not applicable to type {0}")]
    NotApplicable(RootSystemType),
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// Truncated power series with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<BigInt>,
}

impl PowerSeries {
    fn one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::one();
        PowerSeries { coeffs: c }
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    fn mul_binomial(&mut self, k: usize) {
        // times (1 - x^k)
        for i in (k..self.coeffs.len()).rev() {
            let t = self.coeffs[i - k].clone();
            self.coeffs[i] -= t;
        }
    }
    fn div_binomial(&mut self, k: usize) {
        // times 1/(1 - x^k)
        for i in k..self.coeffs.len() {
            let t = self.coeffs[i - k].clone();
            self.coeffs[i] += t;
        }
    }
    pub fn as_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.try_into().expect("small coefficient")).collect()
    }
    /// Exact value of the truncated polynomial at `x`.
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
    }
}

/// `prod_i (1 - x^{m_i+1}) / ((1 - x)(1 - x^{m_i}))` over the exponents.
pub fn poincare_closed(sys: &RootSystem, n: usize) -> PowerSeries {
    let mut s = PowerSeries::one(n);
    for &m in sys.exponents() {
        let m = m as usize;
        s.mul_binomial(m + 1);
        s.div_binomial(1);
        s.div_binomial(m);
    }
    s
}

/// `(1 - x^{d+1}) / (1 - x)^{d+1}`, the closed form in type A_d.
pub fn a_type_closed(d: usize, n: usize) -> PowerSeries {
    let mut s = PowerSeries::one(n);
    s.mul_binomial(d + 1);
    for _ in 0..=d {
        s.div_binomial(1);
    }
    s
}

pub const DEFAULT_CHAMBER_BUDGET: usize = 2_000_000;

/// Chamber counts by gallery distance, from a BFS in the apartment.
pub fn poincare_bfs(sys: &RootSystem, n: usize, budget: usize) -> Result<PowerSeries, SeriesError> {
    let closed = poincare_closed(sys, n);
    let expected: BigInt = closed.coeffs.iter().sum();
    if expected > BigInt::from(budget) {
        return Err(SeriesError::BudgetExceeded { radius: n, budget });
    }
    let (_, e) = apartment::base_chambers(sys);
    let mut c = vec![BigInt::zero(); n + 1];
    for (_, d) in apartment::chambers_within(sys, &e, n) {
        c[d] += 1;
    }
    Ok(PowerSeries { coeffs: c })
}

/// Exact value of the closed form at a rational point.
pub fn poincare_value(sys: &RootSystem, x: &Q) -> Q {
    let one = Q::one();
    sys.exponents().iter().fold(Q::one(), |acc, &m| {
        let m = m as i32;
        acc * (&one - x.pow(m + 1)) / ((&one - x) * (&one - x.pow(m)))
    })
}

/// `s(d', x) = (1 - x^{d'+1}) / (1 - x)^{d'+1}`.
pub fn s_value(d: u32, x: &Q) -> Result<Q, SeriesError> {
    if x.abs() >= Q::one() {
        return Err(SeriesError::DomainError(x.to_string()));
    }
    let one = Q::one();
    let e = d as i32 + 1;
    Ok((&one - x.pow(e)) / (&one - x).pow(e))
}

/// Tail of the weighted chamber sum beyond radius `r`, computed exactly:
/// `q^{N0} (P(1/q) - sum_{l <= r} c_l q^{-l})`.
pub fn tail_bound(sys: &RootSystem, qv: i64, r: usize, n0: u32) -> Q {
    let x = Q::new(1.into(), qv.into());
    let total = poincare_value(sys, &x);
    let head = poincare_closed(sys, r).eval(&x);
    q(qv).pow(n0 as i32) * (total - head)
}

pub const N0_A2N: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    /// `S_0 .. S_R`.
    pub partial_sums: Vec<Q>,
    pub tail_bounds: Vec<Q>,
    pub target: Q,
    /// Smallest `d_E - 2 d_F` met; the tail bound needs it `>= -N0`.
    pub min_excess: i64,
    pub n0: u32,
}

impl LambdaReport {
    pub fn certified_at(&self, r: usize) -> bool {
        (&self.partial_sums[r] - &self.target).abs() <= self.tail_bounds[r] && self.min_excess >= -(self.n0 as i64)
    }
}

/// Partial sums of `sum_{C_F} q^{d_F} (-q)^{-d_E(C_0, central(C_F))}` in
/// type A_2n.
pub fn lambda_a2n_partial(n: usize, qv: i64, r: usize) -> Result<LambdaReport, SeriesError> {
    cochain::check_q(qv)?;
    let sys = RootSystem::of(Family::A, 2 * n).map_err(|_| ApartmentError::NotTypeA2n)?;
    let list = apartment::central_chambers_within(&sys, r)?;
    let c0 = list[0].2.clone();
    let mut shell = vec![Q::zero(); r + 1];
    let mut min_excess = i64::MAX;
    for (_, df, cc) in &list {
        let de = apartment::distance(&sys, &c0, cc)?;
        min_excess = min_excess.min(de as i64 - 2 * *df as i64);
        shell[*df] += q(qv).pow(*df as i32) * cochain::neg_q_pow(qv, de);
    }
    let mut partial = Vec::with_capacity(r + 1);
    let mut acc = Q::zero();
    for s in shell {
        acc += s;
        partial.push(acc.clone());
    }
    let tails = (0..=r).map(|k| tail_bound(&sys, qv, k, N0_A2N)).collect();
    Ok(LambdaReport { partial_sums: partial, tail_bounds: tails, target: Q::one(), min_excess, n0: N0_A2N })
}

/// Dimension of the fixed affine subspace, zero in the vertex cases.
pub fn fixed_dimension(t: RootSystemType) -> Result<u32, SeriesError> {
    Ok(match (t.family, t.rank) {
        (Family::A, d) if d % 2 == 0 => return Err(SeriesError::NotApplicable(t)),
        (Family::A, d) => (d as u32 - 1) / 2,
        (Family::D, d) if d % 2 == 1 => 1,
        (Family::E, 6) => 2,
        _ => 0,
    })
}

/// `#(Ch_{D,a}) s(d', q^{r2 - r1})`, or the count itself at a vertex.
pub fn lambda_tvoth(sys: &RootSystem, qv: i64, ch_da_count: u64) -> Result<Q, SeriesError> {
    cochain::check_q(qv)?;
    let d = fixed_dimension(sys.ty())?;
    let count = Q::from_integer(ch_da_count.into());
    if d == 0 {
        return Ok(count);
    }
    let rr = cochain::r1_r2(sys)?;
    let x = q(qv).pow(rr.r2 as i32 - rr.r1 as i32);
    Ok(count * s_value(d, &x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn closed_forms() {
        let a1 = RootSystem::of(Family::A, 1).unwrap();
        assert_eq!(poincare_closed(&a1, 4).as_i64(), vec![1, 2, 2, 2, 2]);
        let a2 = RootSystem::of(Family::A, 2).unwrap();
        assert_eq!(poincare_closed(&a2, 3).as_i64(), vec![1, 3, 6, 9]);
        assert_eq!(a_type_closed(2, 8), poincare_closed(&a2, 8));
    }

    #[test]
    fn s_values() {
        assert_eq!(s_value(1, &qf(1, 2)).unwrap(), q(3));
        assert_eq!(s_value(0, &qf(2, 7)).unwrap(), q(1));
        assert!(s_value(1, &q(1)).is_err());
    }

    #[test]
    fn small_lambda() {
        let rep = lambda_a2n_partial(1, 3, 4).unwrap();
        assert_eq!(rep.partial_sums[0], q(1));
        assert!(rep.min_excess >= -3);
    }
}
