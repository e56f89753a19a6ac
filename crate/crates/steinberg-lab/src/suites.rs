//! Verification suites, one per library module.

use num_traits::{Signed, Zero};
use steinberg::apartment;
use steinberg::cochain::{self, PanelSpec};
use steinberg::linalg::Q;
use steinberg::prasad;
use steinberg::rootsys::{Family, RootSystem, RootSystemType};
use steinberg::series::{self, SeriesError, DEFAULT_CHAMBER_BUDGET};
use steinberg::sorth::{self, Conjugacy, SorthError, DEFAULT_ENUM_BUDGET};
use steinberg::tree_oracle::{self, MAX_RADIUS};

use crate::report::{Check, Provenance, SuiteReport};

pub const SUITES: [&str; 6] = ["apartment", "cochain", "rootsys", "series", "sorth", "tree"];

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub q: i64,
    pub radius: usize,
    /// Cap on enumeration sizes; library defaults when unset.
    pub budget: Option<u128>,
}

impl Config {
    fn enum_budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_ENUM_BUDGET)
    }
    fn chamber_budget(&self) -> usize {
        self.budget.map_or(DEFAULT_CHAMBER_BUDGET, |b| b.min(usize::MAX as u128) as usize)
    }
}

const TABLED: [&str; 18] =
    ["A1", "A3", "A5", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"];

const SIGN_TYPES: [&str; 28] = [
    "A1", "A3", "A5", "A7", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "D4",
    "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
];

pub fn sys(name: &str) -> RootSystem {
    RootSystem::build(name.parse::<RootSystemType>().expect("known type")).expect("valid rank")
}

pub fn vec_str<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn run(name: &str, cfg: &Config) -> SuiteReport {
    let checks = match name {
        "rootsys" => rootsys(),
        "sorth" => sorth_suite(cfg),
        "apartment" => apartment_suite(cfg),
        "cochain" => cochain_suite(cfg),
        "series" => series_suite(cfg),
        "tree" => tree(cfg),
        _ => unreachable!("suite names are validated by the parser"),
    };
    SuiteReport { suite: name.to_string(), checks }
}

/// Runs every suite on its own thread; the report is ordered by suite name.
pub fn run_all(cfg: &Config) -> SuiteReport {
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|n| s.spawn(move || run(n, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    SuiteReport { suite: "all".into(), checks: reports.into_iter().flat_map(|r| r.checks).collect() }
}

fn root_count(t: RootSystemType) -> usize {
    let d = t.rank;
    match t.family {
        Family::A => d * (d + 1),
        Family::B | Family::C => 2 * d * d,
        Family::D => 2 * d * (d - 1),
        Family::E => [72, 126, 240][d - 6],
        Family::F => 48,
        Family::G => 12,
    }
}

fn rootsys() -> Vec<Check> {
    let mut out = Vec::new();
    for name in TABLED.iter().copied().chain(["A2", "A4", "A6", "A8"]) {
        let s = sys(name);
        out.push(Check::eq(
            format!("rootsys.count.{name}"),
            "number of roots",
            s.num_roots(),
            root_count(s.ty()),
            Provenance::ClosedForm,
        ));
        out.push(Check::eq(
            format!("rootsys.rho.{name}"),
            "rho from fundamental weights equals half the sum of positive roots",
            vec_str(s.rho()),
            vec_str(&prasad::rho_by_half_sum(&s)),
            Provenance::Invariant,
        ));
        out.push(Check::eq(
            format!("rootsys.coxeter-parity.{name}"),
            "Coxeter number is odd exactly in type A_2n",
            s.coxeter_number() % 2 == 1,
            s.ty().is_a_even(),
            Provenance::Invariant,
        ));
    }
    out
}

fn sorth_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for name in TABLED {
        let s = sys(name);
        let sa = sorth::sigma_a(&s);
        let mut targets = Vec::new();
        match sorth::table_sigma_a(&s) {
            Ok(t) => targets.push(("table", t)),
            Err(e) => out.push(Check::error(format!("sorth.sigma-a.{name}"), "tabled set", e, Provenance::Table)),
        }
        if let Ok(Some(t)) = sorth::table_sigma_a_alternative(&s) {
            targets.push(("alternative", t));
        }
        for (label, t) in targets {
            let got = match sorth::is_conjugate(&s, &sa, &t) {
                Conjugacy::Conjugate { word } if sorth::check_certificate(&s, &sa, &t, &word) => {
                    "conjugate".to_string()
                }
                Conjugacy::Conjugate { .. } => "bad certificate".to_string(),
                other => format!("{other:?}"),
            };
            out.push(Check::eq(
                format!("sorth.sigma-a.{name}.{label}"),
                "greedy maximal strongly orthogonal set is W-conjugate to the tabled set",
                got,
                "conjugate",
                Provenance::Table,
            ));
        }
    }
    for name in ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let id = format!("sorth.trichotomy.{name}");
        let desc = "classification of strongly orthogonal classes by maximality and (C1)";
        match sorth::verify_anismax(&sys(name), cfg.enum_budget()) {
            Ok(r) => out.push(Check::eq(
                id,
                desc,
                if r.all_pass() { "all clauses hold" } else { "clause fails" },
                "all clauses hold",
                Provenance::BruteForce,
            )),
            Err(e @ SorthError::BudgetExceeded { .. }) => out.push(Check::skip(id, desc, e, Provenance::BruteForce)),
            Err(e) => out.push(Check::error(id, desc, e, Provenance::BruteForce)),
        }
    }
    out
}

fn apartment_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, central) in [("A2", 1usize), ("A4", 1), ("A3", 0)] {
        let s = sys(name);
        let (f, _) = apartment::base_chambers(&s);
        let desc = "central E-chambers in the base F-chamber";
        match apartment::central_chambers_brute(&s, &f) {
            Ok(b) => {
                out.push(Check::eq(format!("apartment.central.{name}"), desc, b.len(), central, Provenance::BruteForce))
            }
            Err(e) => out.push(Check::error(format!("apartment.central.{name}"), desc, e, Provenance::BruteForce)),
        }
    }
    let a4 = sys("A4");
    let (f, _) = apartment::base_chambers(&a4);
    let dists: Result<Vec<u64>, _> = apartment::central_chamber(&a4, &f).and_then(|c0| {
        apartment::walls(&a4, &f)
            .into_iter()
            .map(|(_, nb)| apartment::central_chamber(&a4, &nb).and_then(|c| apartment::distance(&a4, &c0, &c)))
            .collect()
    });
    let desc = "E-distance between central chambers of adjacent F-chambers in A4";
    match dists {
        Ok(d) => out.push(Check::eq(
            "apartment.adjacent-central.A4",
            desc,
            vec_str(&d),
            vec_str(&[3; 5]),
            Provenance::Invariant,
        )),
        Err(e) => out.push(Check::error("apartment.adjacent-central.A4", desc, e, Provenance::Invariant)),
    }
    let r = cfg.radius.min(3);
    for name in ["A2", "B2", "G2"] {
        let s = sys(name);
        let (_, e) = apartment::base_chambers(&s);
        let ball = apartment::chambers_within(&s, &e, r);
        let mut bad = 0;
        for (c, d) in &ball {
            let ok = apartment::distance(&s, &e, c).ok() == Some(*d as u64)
                && (0..s.num_roots()).all(|a| {
                    let h = c.h(a);
                    apartment::reflect(&s, c, a, h)
                        .is_ok_and(|m| m.is_valid(&s) && apartment::reflect(&s, &m, a, h).ok().as_ref() == Some(c))
                });
            bad += usize::from(!ok);
        }
        out.push(Check::eq(
            format!("apartment.reflections.{name}"),
            format!("chambers within radius {r} failing BFS distance or reflection involution"),
            bad,
            0,
            Provenance::Invariant,
        ));
    }
    out
}

fn cochain_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let r = cfg.radius.min(6);
    for name in ["A1", "A2"] {
        let s = sys(name);
        let (_, e) = apartment::base_chambers(&s);
        let id = format!("cochain.iwahori-harmonic.{name}");
        let desc = format!("panels within radius {r} with nonzero sum of the Iwahori vector, q={}", cfg.q);
        let res = cochain::iwahori_vector(&s, &e, cfg.q, r).and_then(|f| {
            let mut bad = 0usize;
            for (c, d) in apartment::chambers_within(&s, &e, r) {
                if d >= r {
                    continue;
                }
                for n in apartment::neighbours(&s, &c) {
                    let p = PanelSpec::toward(&s, &e, c.clone(), n)?;
                    if p.near == c && !cochain::panel_sum(&p, &f)?.is_zero() {
                        bad += 1;
                    }
                }
            }
            Ok(bad)
        });
        match res {
            Ok(bad) => out.push(Check::eq(id, desc, bad, 0, Provenance::Invariant)),
            Err(e) => out.push(Check::error(id, desc, e, Provenance::Invariant)),
        }
    }
    for name in SIGN_TYPES {
        let s = sys(name);
        let id = format!("cochain.sign-character.{name}");
        let desc = "character forced by the constraint system";
        let res = sorth::sign_sigma_a(&s).map_err(|e| e.to_string()).and_then(|sig| {
            let c0 = apartment::canonical_sigma_chamber(&s, &sig).map_err(|e| e.to_string())?;
            let cons = cochain::build_constraints(&s, &sig, &c0).map_err(|e| e.to_string())?;
            cochain::solve_character(sig.len(), &cons).map_err(|e| e.to_string())
        });
        match (res, cochain::eic_character(s.ty())) {
            (Ok(ch), Ok(t)) => {
                out.push(Check::eq(id, desc, vec_str(&ch.values()), vec_str(&t.values()), Provenance::Table))
            }
            (Err(e), _) => out.push(Check::error(id, desc, e, Provenance::Table)),
            (_, Err(e)) => out.push(Check::error(id, desc, e, Provenance::Table)),
        }
    }
    for (name, r1, r2) in [("A3", 4, 2), ("D5", 8, 4), ("E6", 8, 4)] {
        let id = format!("cochain.r1r2.{name}");
        let desc = "separating roots and those of even height";
        match cochain::r1_r2(&sys(name)) {
            Ok(g) => out.push(Check::eq(
                id,
                desc,
                format!("{},{}", g.r1, g.r2),
                format!("{r1},{r2}"),
                Provenance::BruteForce,
            )),
            Err(e) => out.push(Check::error(id, desc, e, Provenance::BruteForce)),
        }
    }
    out
}

fn series_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let n = cfg.radius.min(10);
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let s = sys(name);
        let id = format!("series.poincare.{name}");
        let desc = format!("chamber counts by distance up to {n}");
        let closed = series::poincare_closed(&s, n);
        match series::poincare_bfs(&s, n, cfg.chamber_budget()) {
            Ok(b) => out.push(Check::eq(id, desc, vec_str(&b.coeffs), vec_str(&closed.coeffs), Provenance::ClosedForm)),
            Err(e @ SeriesError::BudgetExceeded { .. }) => out.push(Check::skip(id, desc, e, Provenance::ClosedForm)),
            Err(e) => out.push(Check::error(id, desc, e, Provenance::ClosedForm)),
        }
    }
    let r = cfg.radius;
    let id = "series.lambda.A2";
    let desc = format!("|S_R - 1| within the exact tail bound, q={}, R={r}", cfg.q);
    match series::lambda_a2n_partial(1, cfg.q, r) {
        Ok(rep) => {
            let err: Q = (&rep.partial_sums[r] - &rep.target).abs();
            out.push(Check::with(
                id,
                desc,
                rep.certified_at(r),
                err,
                format!("<= {}", rep.tail_bounds[r]),
                Provenance::ClosedForm,
            ));
        }
        Err(e) => out.push(Check::error(id, desc, e, Provenance::ClosedForm)),
    }
    out
}

fn tree(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let qv = cfg.q;
    // largest radius whose ball fits the budget
    let size = |r: u32| (1..=r).map(|d| 2 * (qv as u128).pow(d)).sum::<u128>() + 1;
    let mut r = cfg.radius.min(MAX_RADIUS);
    while r > 2 && size(r as u32) > cfg.chamber_budget() as u128 {
        r -= 1;
    }
    let ball = match tree_oracle::build_ball(qv, r) {
        Ok(b) => b,
        Err(e) => return vec![Check::error("tree.ball", "ball construction", e, Provenance::Invariant)],
    };
    let inner = r.saturating_sub(2).min(2);
    let hc = tree_oracle::verify_hctest(&ball, inner);
    out.push(Check::eq(
        "tree.iwahori-harmonic",
        format!("panel sums of the Iwahori vector, q={qv}, R={r}, inner radius {inner}"),
        hc.failures,
        0,
        Provenance::Invariant,
    ));
    let base = tree_oracle::legendre_base(&ball);
    match tree_oracle::verify_extension(&ball, &base) {
        Ok(ext) => {
            out.push(Check::eq(
                "tree.quadratic-extension",
                format!(
                    "interior panels with nonzero sum after extending the quadratic character, {} panels",
                    ext.report.panels_checked
                ),
                ext.report.failures,
                0,
                Provenance::Invariant,
            ));
            out.push(Check::eq(
                "tree.decay",
                "values scale by -1/q per step from the star",
                ext.decay_ok,
                true,
                Provenance::Invariant,
            ));
        }
        Err(e) => out.push(Check::error("tree.quadratic-extension", "extension", e, Provenance::Invariant)),
    }
    let shells = tree_oracle::iwahori_shell_sums(&ball);
    let want: Vec<Q> = (0..shells.len()).map(|n| Q::from_integer(if n == 0 { 1 } else { 2 }.into())).collect();
    out.push(Check::eq(
        "tree.shells",
        "weighted shell sums of |(-q)^-d|",
        vec_str(&shells),
        vec_str(&want),
        Provenance::ClosedForm,
    ));
    out
}
