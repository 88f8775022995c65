use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::caps::Caps;
use crate::error::Result;
use crate::hom::RingHom;
use crate::ring::{Elem, FiniteRing};
use crate::search::{Extension, Group};

/// Per-element data preserved by every ring isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    additive_order: usize,
    unit: bool,
    idempotent: bool,
    nilpotency: Option<usize>,
    annihilator_size: usize,
}

fn signatures(r: &FiniteRing) -> Vec<Signature> {
    r.elements()
        .map(|x| Signature {
            additive_order: r.additive_order(x),
            unit: r.is_unit(x),
            idempotent: r.is_idempotent(x),
            nilpotency: r.nilpotency_index(x),
            annihilator_size: r.elements().filter(|&y| r.mul(x, y) == r.zero()).count(),
        })
        .collect()
}

/// A ring isomorphism `R → S` if one exists.
///
/// Orders, unit counts, idempotent counts and additive-order multisets are
/// compared first; the search then backtracks over images of an additive
/// generating sequence, restricted to elements with matching signatures.
pub fn ring_isomorphic(r: &FiniteRing, s: &FiniteRing, caps: &Caps) -> Result<Option<RingHom>> {
    if r.order() != s.order()
        || r.units().len() != s.units().len()
        || r.idempotents().len() != s.idempotents().len()
        || r.additive_order_profile() != s.additive_order_profile()
    {
        return Ok(None);
    }
    let (sig_r, sig_s) = (signatures(r), signatures(s));
    let mut hist_r: BTreeMap<&Signature, usize> = BTreeMap::new();
    let mut hist_s: BTreeMap<&Signature, usize> = BTreeMap::new();
    sig_r.iter().for_each(|g| *hist_r.entry(g).or_default() += 1);
    sig_s.iter().for_each(|g| *hist_s.entry(g).or_default() += 1);
    if hist_r != hist_s {
        return Ok(None);
    }
    let dom = Group { order: r.order(), add: r.add_table(), zero: r.zero() };
    let cod = Group { order: s.order(), add: s.add_table(), zero: s.zero() };
    let gens = dom.generating_sequence(caps.max_generators)?;
    let candidates = gens
        .iter()
        .map(|&g| s.elements().filter(|&c| sig_s[c] == sig_r[g]).collect())
        .collect();
    let ext = Extension { dom, cod, gens, candidates, injective: true, node_limit: caps.max_candidates };
    let mut found: Option<Vec<Elem>> = None;
    ext.run(
        |pm| {
            if pm.get(r.one()).is_some_and(|v| v != s.one()) {
                return false;
            }
            let assigned = pm.assigned();
            assigned.iter().all(|&x| {
                let fx = pm.get(x).unwrap();
                sig_r[x] == sig_s[fx]
                    && assigned.iter().all(|&y| match pm.get(r.mul(x, y)) {
                        Some(v) => v == s.mul(fx, pm.get(y).unwrap()),
                        None => true,
                    })
            })
        },
        |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        },
    )?;
    Ok(found.map(|m| RingHom::from_valid(r.clone(), s.clone(), m)))
}
