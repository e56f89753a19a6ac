use proptest::prelude::*;
use steinberg::apartment::{self, Chamber, Level};
use steinberg::linalg::{self, q, qf, Q};
use steinberg::rootsys::{RationalCoweight, RootSystem, RootVec};
use steinberg::sorth;

fn sys(name: &str) -> RootSystem {
    RootSystem::build(name.parse().unwrap()).unwrap()
}

fn ball(s: &RootSystem, level: Level, r: usize) -> Vec<(Chamber, usize)> {
    let (f, e) = apartment::base_chambers(s);
    apartment::chambers_within(s, if level == Level::E { &e } else { &f }, r)
}

#[test]
fn balls_consist_of_valid_chambers_at_bfs_distance() {
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let s = sys(name);
        let (_, e) = apartment::base_chambers(&s);
        for (c, d) in ball(&s, Level::E, 4) {
            assert!(c.is_valid(&s), "{name}");
            assert_eq!(apartment::distance(&s, &e, &c).unwrap(), d as u64, "{name}");
        }
    }
}

#[test]
fn triangle_inequality_on_small_balls() {
    for name in ["A2", "B2", "G2", "A3"] {
        let s = sys(name);
        let cs: Vec<Chamber> = ball(&s, Level::E, 3).into_iter().map(|(c, _)| c).collect();
        for a in &cs {
            for b in &cs {
                let ab = apartment::distance(&s, a, b).unwrap();
                assert_eq!(ab, apartment::distance(&s, b, a).unwrap());
                assert_eq!(ab == 0, a == b);
                for c in cs.iter().step_by(3) {
                    let ac = apartment::distance(&s, a, c).unwrap();
                    let cb = apartment::distance(&s, c, b).unwrap();
                    assert!(ab <= ac + cb);
                }
            }
        }
    }
}

#[test]
fn level_mismatch_is_an_error() {
    let s = sys("A2");
    let (f, e) = apartment::base_chambers(&s);
    assert!(apartment::distance(&s, &f, &e).is_err());
}

#[test]
fn e_chambers_fill_each_f_chamber() {
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let s = sys(name);
        for (cf, _) in ball(&s, Level::F, 2) {
            let es = apartment::e_chambers_in_f_chamber(&s, &cf).unwrap();
            assert_eq!(es.len(), 1 << s.rank(), "{name}");
            for e in es {
                assert!(e.is_valid(&s));
                assert_eq!(apartment::containing_f_chamber(&s, &e), cf);
            }
        }
    }
}

/// The walls of a chamber satisfy one linear relation with coprime positive
/// integer coefficients; weighted by it, the wall values of `f` give the same
/// total on every chamber, and 1/2 in type A where all coefficients are 1.
#[test]
fn wall_relation_total_is_constant() {
    use num_integer::Integer;
    for name in ["A2", "A4", "B2", "G2", "C3"] {
        let s = sys(name);
        let mut totals = std::collections::BTreeSet::new();
        for (c, _) in ball(&s, Level::E, 3) {
            let ws: Vec<usize> = apartment::walls(&s, &c).into_iter().map(|(b, _)| b).collect();
            assert_eq!(ws.len(), s.rank() + 1, "{name}");
            // write the first wall in terms of the others
            let basis: Vec<Vec<Q>> = ws[1..].iter().map(|&i| s.root(i).0.iter().map(|&x| q(x)).collect()).collect();
            let target: Vec<Q> = s.root(ws[0]).0.iter().map(|&x| q(-x)).collect();
            let mut coef = vec![q(1)];
            coef.extend(linalg::express(&basis, &target).unwrap());
            let den = coef.iter().fold(num_bigint::BigInt::from(1), |a, x| a.lcm(x.denom()));
            let num = coef.iter().fold(num_bigint::BigInt::from(0), |a, x| a.gcd(&(x * &den).to_integer()));
            let coef: Vec<Q> =
                coef.iter().map(|x| x * Q::from_integer(den.clone()) / Q::from_integer(num.clone())).collect();
            assert!(coef.iter().all(|x| *x > q(0)), "{name}");
            let total = coef.iter().zip(&ws).fold(q(0), |acc, (l, &w)| acc + l * c.f(w));
            totals.insert(total);
        }
        assert_eq!(totals.len(), 1, "{name}: {totals:?}");
        if name.starts_with('A') {
            assert_eq!(totals.into_iter().next().unwrap(), qf(1, 2));
        }
    }
}

#[test]
fn adjacent_central_chambers_are_three_apart() {
    let s = sys("A4");
    let (f, _) = apartment::base_chambers(&s);
    let c0 = apartment::central_chamber(&s, &f).unwrap();
    for (_, nb) in apartment::walls(&s, &f) {
        let c = apartment::central_chamber(&s, &nb).unwrap();
        assert_eq!(apartment::distance(&s, &c0, &c).unwrap(), 3);
    }
}

#[test]
fn canonical_chambers() {
    let a1 = sys("A1");
    let sig = sorth::sign_sigma_a(&a1).unwrap();
    let c = apartment::canonical_sigma_chamber(&a1, &sig).unwrap();
    assert_eq!(c.values(), &[-1, 2]);
    assert_eq!(c.f(1), q(1));
    for name in ["C2", "C4", "B4", "F4", "E7", "E6", "D5", "G2"] {
        let s = sys(name);
        let sig = sorth::sign_sigma_a(&s).unwrap();
        let c = apartment::canonical_sigma_chamber(&s, &sig).unwrap();
        assert!(c.is_valid(&s));
        for &b in sig.indices() {
            assert!(linalg::is_integer(&c.f(b)), "{name}");
        }
    }
    let a3 = sys("A3");
    let odd = sorth::SOSet::new(&a3, &[RootVec(vec![-1, 0, 0])]).unwrap();
    assert!(apartment::canonical_sigma_chamber(&a3, &odd).is_err());
}

#[test]
fn facet_functional_examples() {
    let d4 = sys("D4");
    let sig = sorth::sigma_a(&d4);
    let vals = vec![qf(1, 2), qf(-1, 2), qf(3, 2), qf(1, 2)];
    let f = apartment::facet_functional(&d4, &sig, &vals).unwrap();
    for (k, &b) in sig.indices().iter().enumerate() {
        assert_eq!(f.values[b], vals[k]);
    }
    assert!(apartment::facet_functional(&d4, &sig, &[qf(1, 3), q(0), q(0), q(0)]).is_err());
    // quarter values at a half-sum of four members
    assert!(apartment::facet_functional(&d4, &sig, &[qf(1, 2), q(0), q(0), q(0)]).is_err());
}

fn coweight(s: &RootSystem, c: &[i64]) -> RationalCoweight {
    let mut xi = RationalCoweight::zero(s.rank());
    for (k, &x) in c.iter().enumerate() {
        xi = xi.add(&s.fundamental_coweight(k).scale(&q(x)));
    }
    xi
}

proptest! {
    #[test]
    fn reflections_are_isometric_involutions(
        name in prop::sample::select(vec!["A2", "B2", "G2", "A3"]),
        i in 0usize..100, j in 0usize..100, root in 0usize..24, c in -3i64..4,
    ) {
        let s = sys(name);
        let cs = ball(&s, Level::E, 3);
        let (a, b) = (&cs[i % cs.len()].0, &cs[j % cs.len()].0);
        let root = root % s.num_roots();
        let ra = apartment::reflect(&s, a, root, c).unwrap();
        let rb = apartment::reflect(&s, b, root, c).unwrap();
        prop_assert!(ra.is_valid(&s));
        prop_assert_eq!(&apartment::reflect(&s, &ra, root, c).unwrap(), a);
        prop_assert_eq!(apartment::distance(&s, &ra, &rb), apartment::distance(&s, a, b));
    }

    #[test]
    fn translations_keep_chambers_and_double_distances(
        name in prop::sample::select(vec!["A2", "C2", "G2", "B3"]),
        i in 0usize..100, c in prop::collection::vec(-4i64..5, 3),
    ) {
        let s = sys(name);
        let cs = ball(&s, Level::E, 2);
        let ch = &cs[i % cs.len()].0;
        let xi = coweight(&s, &c[..s.rank()]);
        let t = apartment::translate(&s, ch, &xi).unwrap();
        prop_assert!(t.is_valid(&s));
        let de = apartment::distance(&s, ch, &t).unwrap();
        prop_assert_eq!(de % 2, 0);
        let cf = apartment::containing_f_chamber(&s, ch);
        let tf = apartment::translate(&s, &cf, &xi).unwrap();
        prop_assert_eq!(de, 2 * apartment::distance(&s, &cf, &tf).unwrap());
    }
}
