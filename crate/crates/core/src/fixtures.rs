//! Table fixtures shipped with the crate.

use crate::ring::FiniteRing;
use crate::spec::parse_table_text;

const Z2T: &str = include_str!("../fixtures/z2t.ring");
const Z4T: &str = include_str!("../fixtures/z4t.ring");

/// Names accepted by `fixture(...)`.
pub const NAMES: [&str; 2] = ["z2t", "z4t"];

/// `z2t` is Z2[t]/(t^2) with `a + b·t` coded `a + 2b`; `z4t` is
/// Z4[t]/(2t, t^2) with `a + b·t` coded `a + 4b`.
pub fn by_name(name: &str) -> Option<FiniteRing> {
    let (text, label) = match name {
        "z2t" => (Z2T, "Z2[t]/(t^2)"),
        "z4t" => (Z4T, "Z4[t]/(2t,t^2)"),
        _ => return None,
    };
    Some(parse_table_text(text, label).expect("shipped fixture is a valid ring"))
}

pub fn all() -> Vec<(&'static str, FiniteRing)> {
    NAMES.iter().map(|&n| (n, by_name(n).unwrap())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_local_rings() {
        for (name, r) in all() {
            assert!(r.is_local().unwrap(), "{name}");
        }
        assert_eq!(by_name("z4t").unwrap().order(), 8);
        assert_eq!(by_name("z2t").unwrap().characteristic(), 2);
    }
}
