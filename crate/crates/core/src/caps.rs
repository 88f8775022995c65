use serde::{Deserialize, Serialize};

/// Size limits for every exhaustive search in the crate.
///
/// Exceeding a limit always yields [`crate::Error::ResourceLimit`]; no search
/// silently truncates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_ideals: usize,
    pub max_module_order: usize,
    pub max_generators: usize,
    /// Backtracking nodes visited by a single hom / iso search.
    pub max_candidates: u64,
    pub max_amalgam_order: usize,
    /// Rings up to this order get their double-annihilator verdict
    /// re-derived through Baer's criterion.
    pub baer_crosscheck_order: usize,
}

pub const AMALGAM_MAX_ORDER_ENV: &str = "AMALGAM_MAX_ORDER";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ideals: 4096,
            max_module_order: 64,
            max_generators: 6,
            max_candidates: 10_000_000,
            max_amalgam_order: 256,
            baer_crosscheck_order: 36,
        }
    }
}

impl Caps {
    /// Defaults, with the amalgam order cap taken from `AMALGAM_MAX_ORDER`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var(AMALGAM_MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            caps.max_amalgam_order = n;
        }
        caps
    }
}
