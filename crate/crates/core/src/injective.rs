//! Injectivity of modules (Baer's criterion) and self-injectivity of rings.
//!
//! For a finite commutative ring `R` the following coincide: `R` is
//! self-injective, `R` is quasi-Frobenius, and `Ann(Ann(I)) = I` for every
//! ideal `I`. The double-annihilator scan is the primary decider; Baer's
//! criterion on `R` over itself re-derives the answer independently on small
//! rings.

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals_capped, annihilator, Ideal};
use crate::module::{enumerate_module_homs, FModule};
use crate::ring::{Elem, FiniteRing};

/// An ideal `I` and a linear map `φ: I → M` that is not of the form
/// `i ↦ i·m`. `images[k]` is `φ(I.elements()[k])`.
#[derive(Debug, Clone)]
pub struct BaerFailure {
    pub ideal: Ideal,
    pub images: Vec<Elem>,
}

/// First Baer failure in lattice order, or `None` when `M` is injective.
///
/// Extensions of `φ: I → M` to `R → M` are exactly the maps `r ↦ r·m`, so
/// each `φ` only needs comparison against the `|M|` multiplication maps.
pub fn baer_failure(module: &FModule, caps: &Caps) -> Result<Option<BaerFailure>> {
    let ring = module.ring();
    for ideal in all_ideals_capped(ring, caps.max_ideals)? {
        let im = FModule::from_ideal(ring, &ideal)?;
        let extendable: HashSet<Vec<Elem>> = (0..module.order())
            .map(|m| ideal.elements().iter().map(|&i| module.act(i, m)).collect())
            .collect();
        for phi in enumerate_module_homs(&im, module, caps)? {
            if !extendable.contains(phi.map()) {
                return Ok(Some(BaerFailure { ideal, images: phi.map().to_vec() }));
            }
        }
    }
    Ok(None)
}

pub fn is_injective_module(module: &FModule, caps: &Caps) -> Result<bool> {
    Ok(baer_failure(module, caps)?.is_none())
}

/// First ideal `I` (lattice order) with `Ann(Ann(I)) ≠ I`.
pub fn double_annihilator_failure(ring: &FiniteRing, caps: &Caps) -> Result<Option<Ideal>> {
    if let Some(cached) = ring.cache().double_annihilator.get() {
        return Ok(cached.as_ref().map(|e| Ideal::from_sorted_unchecked(ring, e.clone())));
    }
    let mut failure = None;
    for ideal in all_ideals_capped(ring, caps.max_ideals)? {
        let ann = annihilator(ring, ideal.elements())?;
        let ann2 = annihilator(ring, ann.elements())?;
        if ann2 != ideal {
            failure = Some(ideal);
            break;
        }
    }
    let _ = ring.cache().double_annihilator.set(failure.as_ref().map(|i| i.elements().to_vec()));
    Ok(failure)
}

fn baer_regular(ring: &FiniteRing, caps: &Caps) -> Result<bool> {
    if let Some(&b) = ring.cache().baer_regular.get() {
        return Ok(b);
    }
    let b = is_injective_module(&FModule::regular(ring), caps)?;
    let _ = ring.cache().baer_regular.set(b);
    Ok(b)
}

/// Outcome of the self-injectivity decision with its supporting evidence.
#[derive(Debug, Clone)]
pub struct SelfInjectivity {
    pub self_injective: bool,
    /// An ideal violating the double-annihilator condition, if any.
    pub failing_ideal: Option<Ideal>,
    /// Whether Baer's criterion was also run (and agreed).
    pub baer_checked: bool,
}

pub fn self_injectivity(ring: &FiniteRing, caps: &Caps) -> Result<SelfInjectivity> {
    let failing_ideal = double_annihilator_failure(ring, caps)?;
    let self_injective = failing_ideal.is_none();
    let baer_checked = ring.order() <= caps.baer_crosscheck_order;
    if baer_checked {
        let baer = baer_regular(ring, caps)?;
        if baer != self_injective {
            return Err(Error::OracleDisagreement(format!(
                "{}: double annihilator says {self_injective}, Baer says {baer}",
                ring.label()
            )));
        }
    }
    Ok(SelfInjectivity { self_injective, failing_ideal, baer_checked })
}

pub fn is_self_injective(ring: &FiniteRing, caps: &Caps) -> Result<bool> {
    Ok(self_injectivity(ring, caps)?.self_injective)
}

/// Finite rings are Artinian and Noetherian, so quasi-Frobenius coincides
/// with self-injective.
pub fn is_quasi_frobenius(ring: &FiniteRing, caps: &Caps) -> Result<bool> {
    is_self_injective(ring, caps)
}
