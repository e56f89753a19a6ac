//! Computed tables beside the hard-coded ones.

use steinberg::cochain;
use steinberg::sorth;

use crate::report::Table;
use crate::suites::{sys, vec_str};

const SIGN_TYPES: [&str; 28] = [
    "A1", "A3", "A5", "A7", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "D4",
    "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
];

fn support_str(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter().map(|i| format!("e{i}")).collect()
}

/// Parities of each simple coroot on the sign basis.
pub fn sract() -> Table {
    let mut t = Table::new(&["type", "coroot", "computed", "printed", "match"]);
    for name in SIGN_TYPES {
        let s = sys(name);
        let (Ok(sig), Ok(printed)) = (sorth::sign_sigma_a(&s), cochain::printed_sract(s.ty())) else { continue };
        let Ok(comp) = cochain::computed_sract(&s, &sig) else { continue };
        for (k, (c, p)) in comp.iter().zip(&printed).enumerate() {
            let (printed, matches) = match p {
                Some(p) => (support_str(p), (&c.support() == p).to_string()),
                None => ("-".into(), "-".into()),
            };
            t.push(vec![name.into(), format!("a{}", k + 1), support_str(&c.support()), printed, matches]);
        }
    }
    t
}

/// Character values on `e_1..e_r`.
pub fn eic() -> Table {
    let mut t = Table::new(&["type", "computed", "printed", "match"]);
    for name in SIGN_TYPES {
        let ty = sys(name).ty();
        let (Ok(c), Ok(p)) = (cochain::eic_character(ty), cochain::printed_eic(ty)) else { continue };
        t.push(vec![name.into(), vec_str(&c.values()), vec_str(&p.values()), (c == p).to_string()]);
    }
    t
}

pub fn r1r2() -> Table {
    let mut t = Table::new(&["type", "r1", "r2", "r1 = 2 r2"]);
    for name in ["A3", "D5", "E6"] {
        let r = cochain::r1_r2(&sys(name)).expect("defined for these types");
        t.push(vec![name.into(), r.r1.to_string(), r.r2.to_string(), (r.r1 == 2 * r.r2).to_string()]);
    }
    t
}
