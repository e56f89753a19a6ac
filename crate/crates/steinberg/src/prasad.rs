//! The quadratic character `eps o 2rho`, seen through parities of `2rho`.

use std::ops::Mul;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{is_integer, q, Q};
use crate::rootsys::{Family, RationalCoweight, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrasadError {
    #[error("<2rho, xi> = {0} is not an integer")]
    NonIntegralPairing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignOutcome {
    Plus,
    Minus,
}

impl SignOutcome {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            SignOutcome::Minus
        } else {
            SignOutcome::Plus
        }
    }
    pub fn value(self) -> i64 {
        match self {
            SignOutcome::Plus => 1,
            SignOutcome::Minus => -1,
        }
    }
    pub fn from_value(v: i64) -> Self {
        Self::from_parity(v < 0)
    }
}

impl Mul for SignOutcome {
    type Output = SignOutcome;
    fn mul(self, o: SignOutcome) -> SignOutcome {
        SignOutcome::from_parity((self == SignOutcome::Minus) != (o == SignOutcome::Minus))
    }
}

/// `rho` lies in the root lattice.
pub fn prasad_trivial(sys: &RootSystem) -> bool {
    sys.rho().iter().all(is_integer)
}

pub fn two_rho(sys: &RootSystem) -> Vec<Q> {
    sys.rho().iter().map(|c| c * q(2)).collect()
}

/// Value of the character on the torus element `xi(c)`, `c` a unit that is a
/// square or not.
pub fn chi_on_torus(sys: &RootSystem, xi: &RationalCoweight, nonsquare: bool) -> Result<SignOutcome, PrasadError> {
    let p = sys.pairing_rational(&two_rho(sys), xi);
    if !p.denom().is_one() {
        return Err(PrasadError::NonIntegralPairing(p.to_string()));
    }
    if !nonsquare {
        return Ok(SignOutcome::Plus);
    }
    Ok(SignOutcome::from_parity(p.numer().is_odd()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum D2nIdentity {
    /// D2 is not irreducible.
    Skipped,
    Checked {
        /// `n` even: all coefficients of `2rho` are even.
        all_even_branch: bool,
        holds: bool,
        /// Coefficients of `2rho` agree with the closed formula.
        formula_matches: bool,
    },
}

/// Compares the parity pattern of `2rho` in type `D_{2n}` with that of
/// `n(2n-1)(alpha_{2n-1} + alpha_{2n})`.
pub fn d2n_character_identity(n: usize) -> D2nIdentity {
    if n < 2 {
        return D2nIdentity::Skipped;
    }
    let d = 2 * n;
    let sys = RootSystem::of(Family::D, d).expect("rank in bounds");
    let tr = two_rho(&sys);
    let di = d as i64;
    let formula: Vec<Q> =
        (1..=di).map(|i| if i <= di - 2 { q(i * (2 * di - 1 - i)) } else { q(di * (di - 1) / 2) }).collect();
    let formula_matches = formula == tr;
    let parity = |x: &Q| x.to_integer().is_odd();
    let expected: Vec<bool> = (0..d).map(|i| i >= d - 2 && (n * (2 * n - 1)) % 2 == 1).collect();
    let actual: Vec<bool> = tr.iter().map(parity).collect();
    D2nIdentity::Checked { all_even_branch: n.is_multiple_of(2), holds: actual == expected, formula_matches }
}

/// Oracle for `rho`: half the sum of the positive roots.
pub fn rho_by_half_sum(sys: &RootSystem) -> Vec<Q> {
    let d = sys.rank();
    let mut s = vec![Q::zero(); d];
    for r in &sys.roots()[..sys.num_positive()] {
        for i in 0..d {
            s[i] += q(r.0[i]);
        }
    }
    s.iter().map(|x| x / q(2)).collect()
}
