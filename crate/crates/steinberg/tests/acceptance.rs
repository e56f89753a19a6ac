//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steinberg::apartment::{self, ApartmentError};
use steinberg::cochain::{self, R1R2Result};
use steinberg::linalg::{is_integer, q, qf, Q};
use steinberg::prasad::{self, D2nIdentity, SignOutcome};
use steinberg::rootsys::{RationalCoweight, RootSystem, RootSystemType};
use steinberg::series;
use steinberg::sorth::{self, Conjugacy, DEFAULT_ENUM_BUDGET};
use steinberg::tree_oracle;

// pinned tolerances and budgets
const CRIT1_BUDGET: Duration = Duration::from_secs(60);
const CRIT2_BUDGET: Duration = Duration::from_secs(300);
const CRIT7_BUDGET: Duration = Duration::from_secs(120);
const CRIT8_BUDGET: Duration = Duration::from_secs(300);
const CRIT12_BUDGET: Duration = Duration::from_secs(120);
const POINCARE_DEGREE: usize = 10;
const LAMBDA_QS: [i64; 3] = [3, 5, 7];
const LAMBDA_R_MIN: usize = 6;
const LAMBDA_R_MAX: usize = 12;
const LAMBDA_N0: u32 = 3;
const TRANSLATIONS: usize = 100;
const TREE_QS: [i64; 2] = [3, 5];
const TREE_RADIUS: usize = 8;
const TREE_INNER: usize = 2;
const SEED: u64 = 0x5eed;

fn tail_max() -> Q {
    qf(1, 100)
}

const EIGHTEEN: [&str; 18] =
    ["A1", "A3", "A5", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sys(name: &str) -> RootSystem {
    RootSystem::build(name.parse::<RootSystemType>().expect("type")).expect("system")
}

fn within(t: Instant, budget: Duration) -> Result<(), String> {
    if t.elapsed() > budget {
        Err(format!("took {:?}, budget {:?}", t.elapsed(), budget))
    } else {
        Ok(())
    }
}

fn c1_sigma_tables() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for name in EIGHTEEN {
        let s = sys(name);
        let sa = sorth::sigma_a(&s);
        let mut targets = vec![sorth::table_sigma_a(&s).map_err(|e| e.to_string())?];
        if let Some(alt) = sorth::table_sigma_a_alternative(&s).map_err(|e| e.to_string())? {
            targets.push(alt);
        }
        for tab in targets {
            match sorth::is_conjugate(&s, &sa, &tab) {
                Conjugacy::Conjugate { word } if sorth::check_certificate(&s, &sa, &tab, &word) => checked += 1,
                other => return Err(format!("{name}: {other:?}")),
            }
        }
    }
    within(t, CRIT1_BUDGET)?;
    Ok(format!("{checked} table entries certified in {:.1?}", t.elapsed()))
}

fn c2_trichotomy() -> Outcome {
    let t = Instant::now();
    let mut classes = 0;
    for name in ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let s = sys(name);
        let rep = sorth::verify_anismax(&s, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
        if !rep.all_pass() {
            return Err(format!("{name}: {rep:?}"));
        }
        if s.ty().is_a_even() && rep.clause4 != Some(true) {
            return Err(format!("{name}: clause (4) not checked"));
        }
        classes += rep.classes;
    }
    within(t, CRIT2_BUDGET)?;
    Ok(format!("{classes} classes over 9 systems in {:.1?}", t.elapsed()))
}

fn c3_coxeter() -> Outcome {
    let mut n = 0;
    for name in EIGHTEEN.iter().copied().chain(["A2", "A4", "A6", "A8"]) {
        let s = sys(name);
        if (s.coxeter_number() % 2 == 1) != s.ty().is_a_even() {
            return Err(format!("{name}: h = {}", s.coxeter_number()));
        }
        n += 1;
    }
    Ok(format!("{n} systems"))
}

fn c4_central() -> Outcome {
    for (name, total, central) in [("A2", 4, 1), ("A4", 16, 1), ("A3", 8, 0)] {
        let s = sys(name);
        let (f, _) = apartment::base_chambers(&s);
        let es = apartment::e_chambers_in_f_chamber(&s, &f).map_err(|e| e.to_string())?;
        let brute = apartment::central_chambers_brute(&s, &f).map_err(|e| e.to_string())?;
        if es.len() != total || brute.len() != central {
            return Err(format!("{name}: {} E-chambers, {} central", es.len(), brute.len()));
        }
        match apartment::central_chamber(&s, &f) {
            Ok(c) if central == 1 && brute[0] == c => {}
            Err(ApartmentError::NotTypeA2n) if central == 0 => {}
            other => return Err(format!("{name}: formula gave {other:?}")),
        }
    }
    // formula against brute force away from the base
    let mut compared = 0;
    for (name, r) in [("A2", 3), ("A4", 1)] {
        let s = sys(name);
        for (cf, _) in apartment::chambers_within(&s, &apartment::base_chambers(&s).0, r) {
            let b = apartment::central_chambers_brute(&s, &cf).map_err(|e| e.to_string())?;
            let c = apartment::central_chamber(&s, &cf).map_err(|e| e.to_string())?;
            if b != vec![c] {
                return Err(format!("{name}: mismatch at {:?}", cf.values()));
            }
            compared += 1;
        }
    }
    Ok(format!("A2 1/4, A4 1/16, A3 0/8; formula = brute force on {compared} F-chambers"))
}

fn random_coweight(s: &RootSystem, rng: &mut ChaCha8Rng) -> RationalCoweight {
    let d = s.rank();
    let mut xi = RationalCoweight::zero(d);
    for k in 0..d {
        let c: i64 = rng.gen_range(-3..=3);
        xi = xi.add(&s.fundamental_coweight(k).scale(&q(c)));
    }
    xi
}

fn c5_distance_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for name in ["A2", "C2", "G2"] {
        let s = sys(name);
        let (_, e) = apartment::base_chambers(&s);
        let ball: Vec<_> = apartment::chambers_within(&s, &e, 3).into_iter().map(|(c, _)| c).collect();
        for _ in 0..TRANSLATIONS {
            let c = &ball[rng.gen_range(0..ball.len())];
            let xi = random_coweight(&s, &mut rng);
            let tc = apartment::translate(&s, c, &xi).map_err(|e| e.to_string())?;
            let cf = apartment::containing_f_chamber(&s, c);
            let tcf = apartment::translate(&s, &cf, &xi).map_err(|e| e.to_string())?;
            if apartment::containing_f_chamber(&s, &tc) != tcf {
                return Err(format!("{name}: translation does not commute with F-closure"));
            }
            let de = apartment::distance(&s, c, &tc).unwrap();
            let df = apartment::distance(&s, &cf, &tcf).unwrap();
            if de != 2 * df {
                return Err(format!("{name}: d_E = {de}, d_F = {df}"));
            }
        }
    }
    Ok(format!("{} translations per system in A2, C2, G2", TRANSLATIONS))
}

fn c6_adjacent_central() -> Outcome {
    let s = sys("A2");
    let (f, _) = apartment::base_chambers(&s);
    let c0 = apartment::central_chamber(&s, &f).map_err(|e| e.to_string())?;
    let ws = apartment::walls(&s, &f);
    if ws.len() != 3 {
        return Err(format!("{} walls", ws.len()));
    }
    let mut ds = Vec::new();
    for (_, nb) in ws {
        let c = apartment::central_chamber(&s, &nb).map_err(|e| e.to_string())?;
        ds.push(apartment::distance(&s, &c0, &c).unwrap());
    }
    if ds.iter().all(|&d| d == 3) {
        Ok(format!("distances {ds:?}"))
    } else {
        Err(format!("distances {ds:?}"))
    }
}

fn c7_poincare() -> Outcome {
    let t = Instant::now();
    for name in ["A1", "A2", "C2", "G2", "A3"] {
        let s = sys(name);
        let closed = series::poincare_closed(&s, POINCARE_DEGREE);
        let bfs =
            series::poincare_bfs(&s, POINCARE_DEGREE, series::DEFAULT_CHAMBER_BUDGET).map_err(|e| e.to_string())?;
        if closed != bfs {
            return Err(format!("{name}: closed {:?} bfs {:?}", closed.as_i64(), bfs.as_i64()));
        }
    }
    within(t, CRIT7_BUDGET)?;
    Ok(format!("5 affine groups to degree {POINCARE_DEGREE} in {:.1?}", t.elapsed()))
}

fn c8_lambda() -> Outcome {
    let t = Instant::now();
    let mut worst = Vec::new();
    for qv in LAMBDA_QS {
        let rep = series::lambda_a2n_partial(1, qv, LAMBDA_R_MAX).map_err(|e| e.to_string())?;
        if rep.n0 != LAMBDA_N0 || rep.min_excess < -(LAMBDA_N0 as i64) {
            return Err(format!("q={qv}: d_E - 2 d_F reaches {}", rep.min_excess));
        }
        for r in LAMBDA_R_MIN..=LAMBDA_R_MAX {
            if !rep.certified_at(r) {
                return Err(format!(
                    "q={qv} R={r}: |S_R - 1| = {} > tail {}",
                    (&rep.partial_sums[r] - Q::one()).abs(),
                    rep.tail_bounds[r]
                ));
            }
        }
        let tail = &rep.tail_bounds[LAMBDA_R_MAX];
        if *tail >= tail_max() {
            return Err(format!("q={qv}: tail(12) = {tail}"));
        }
        let gap = (&rep.partial_sums[LAMBDA_R_MAX] - Q::one()).abs();
        worst.push(format!("q={qv} |S12-1|~{:.1e} tail~{:.1e}", to_f64(&gap), to_f64(tail)));
    }
    within(t, CRIT8_BUDGET)?;
    Ok(worst.join(", "))
}

fn to_f64(x: &Q) -> f64 {
    // display only
    let n: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

const SIGN_TYPES: [&str; 28] = [
    "A1", "A3", "A5", "A7", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "D4",
    "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
];

fn c9_sign_calculus() -> Outcome {
    let mut chi_checks = 0;
    for name in SIGN_TYPES {
        let s = sys(name);
        let sig = sorth::sign_sigma_a(&s).map_err(|e| e.to_string())?;
        let c0 = apartment::canonical_sigma_chamber(&s, &sig).map_err(|e| format!("{name}: {e}"))?;
        let cons = cochain::build_constraints(&s, &sig, &c0).map_err(|e| e.to_string())?;
        let ch = cochain::solve_character(sig.len(), &cons).map_err(|e| format!("{name}: {e}"))?;
        let eic = cochain::eic_character(s.ty()).map_err(|e| e.to_string())?;
        if ch != eic {
            return Err(format!("{name}: solved {:?}, table {:?}", ch.values(), eic.values()));
        }
        for k in 0..s.rank() {
            let v = cochain::coroot_action(&s, &sig, &RationalCoweight::simple_coroot(s.rank(), k))
                .map_err(|e| e.to_string())?;
            if ch.eval(&v) != 1 {
                return Err(format!("{name}: coroot {} acts by -1", k + 1));
            }
        }
        for xi in cochain::chi_representatives(&s) {
            let v = cochain::coroot_action(&s, &sig, &xi).map_err(|e| e.to_string())?;
            let torus = prasad::chi_on_torus(&s, &xi, true).map_err(|e| e.to_string())?;
            if ch.eval(&v) != torus.value() {
                return Err(format!("{name}: chi mismatch on {:?}", xi.coeffs));
            }
            chi_checks += 1;
        }
    }
    Ok(format!("{} types unique and equal to the table, {chi_checks} torus comparisons", SIGN_TYPES.len()))
}

fn info_printed_eic() -> String {
    let mut differ = Vec::new();
    for name in SIGN_TYPES {
        let t: RootSystemType = name.parse().unwrap();
        let (a, b) = (cochain::eic_character(t).unwrap(), cochain::printed_eic(t).unwrap());
        if a != b {
            differ.push(format!("{name} printed {:?} vs forced {:?}", b.values(), a.values()));
        }
    }
    if differ.is_empty() {
        "printed character table agrees everywhere".into()
    } else {
        format!("printed character table differs: {}", differ.join("; "))
    }
}

fn c10_r1r2() -> Outcome {
    let mut out = Vec::new();
    for (name, r1, r2) in [("A3", 4, 2), ("D5", 8, 4), ("E6", 8, 4)] {
        let got = cochain::r1_r2(&sys(name)).map_err(|e| e.to_string())?;
        if got != (R1R2Result { r1, r2 }) || got.r2 >= got.r1 || got.r1 != 2 * got.r2 {
            return Err(format!("{name}: {got:?}"));
        }
        out.push(format!("{name}({},{})", got.r1, got.r2));
    }
    Ok(out.join(" "))
}

fn c11_half_integral() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut evals = 0;
    for name in ["A1", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "D4", "D6", "E7", "E8", "F4", "G2"] {
        let s = sys(name);
        for sig in [sorth::sigma_a(&s), sorth::sign_sigma_a(&s).map_err(|e| e.to_string())?] {
            let d = sig.len();
            if d != s.rank() {
                return Err(format!("{name}: Sigma_a has {d} members"));
            }
            // values in Z + 1/2; all sign patterns of +-1/2, then random shifts
            let mut patterns: Vec<Vec<Q>> = (0..1u32 << d)
                .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { qf(1, 2) } else { qf(-1, 2) }).collect())
                .collect();
            for _ in 0..16 {
                patterns.push((0..d).map(|_| qf(2 * rng.gen_range(-5i64..=5) + 1, 2)).collect());
            }
            for vals in patterns {
                let f = apartment::facet_functional(&s, &sig, &vals).map_err(|e| format!("{name}: {e}"))?;
                if (0..s.num_roots()).any(|i| !(&f.values[i] + &f.values[s.neg_index(i)]).is_zero()) {
                    return Err(format!("{name}: f'(a) + f'(-a) != 0"));
                }
                evals += 1;
            }
        }
    }
    Ok(format!("{evals} functionals, image in (1/2)Z on every root"))
}

fn c12_tree() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for qv in TREE_QS {
        let ball = tree_oracle::build_ball(qv, TREE_RADIUS).map_err(|e| e.to_string())?;
        let hc = tree_oracle::verify_hctest(&ball, TREE_INNER);
        if !hc.ok() {
            return Err(format!("q={qv}: hctest {hc:?}"));
        }
        let base = tree_oracle::legendre_base(&ball);
        let ext = tree_oracle::verify_extension(&ball, &base).map_err(|e| e.to_string())?;
        if !ext.report.ok() || !ext.decay_ok {
            return Err(format!("q={qv}: extension {:?}, decay {}", ext.report, ext.decay_ok));
        }
        let shells = tree_oracle::iwahori_shell_sums(&ball);
        if shells[1..].iter().any(|x| *x != q(2)) {
            return Err(format!("q={qv}: shell sums {shells:?}"));
        }
        parts.push(format!("q={qv}: {} hctest sums, {} panels", hc.sums_checked, ext.report.panels_checked));
    }
    within(t, CRIT12_BUDGET)?;
    Ok(parts.join(", "))
}

fn c13_prasad() -> Outcome {
    for name in EIGHTEEN {
        let s = sys(name);
        let oracle = prasad::rho_by_half_sum(&s).iter().all(is_integer);
        if prasad::prasad_trivial(&s) != oracle {
            return Err(format!("{name}: trivial flag disagrees with the half-sum"));
        }
    }
    let e7 = sys("E7");
    let mut c = vec![Q::zero(); 7];
    for i in [1, 4, 6] {
        c[i] = qf(1, 2);
    }
    let xi = RationalCoweight::new(c);
    if prasad::chi_on_torus(&e7, &xi, true) != Ok(SignOutcome::Minus) {
        return Err("E7 torus value is not -1".into());
    }
    for n in 2..=4 {
        match prasad::d2n_character_identity(n) {
            D2nIdentity::Checked { holds: true, formula_matches: true, .. } => {}
            other => return Err(format!("D{}: {other:?}", 2 * n)),
        }
    }
    Ok("18 systems, E7 torus -1, D4/D6/D8 identity".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Sigma_a tables", c1_sigma_tables),
        ("trichotomy", c2_trichotomy),
        ("Coxeter parity", c3_coxeter),
        ("central chambers", c4_central),
        ("distance law", c5_distance_law),
        ("adjacent central chambers", c6_adjacent_central),
        ("Poincare cross-check", c7_poincare),
        ("lambda for A2", c8_lambda),
        ("sign calculus", c9_sign_calculus),
        ("r1/r2", c10_r1r2),
        ("half-integral facets", c11_half_integral),
        ("tree oracle", c12_tree),
        ("Prasad character", c13_prasad),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("INFO    {}", info_printed_eic());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
