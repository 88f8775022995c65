//! Unital ring homomorphisms between finite rings.

use std::fmt;
use std::ops::ControlFlow;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Elem, FiniteRing};
use crate::search::{Extension, Group};

#[derive(Clone)]
pub struct RingHom {
    domain: FiniteRing,
    codomain: FiniteRing,
    map: Vec<Elem>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {}, {:?})", self.domain.label(), self.codomain.label(), self.map)
    }
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.domain.same_ring(&other.domain) && self.codomain.same_ring(&other.codomain)
    }
}

impl RingHom {
    /// Validates unitality, additivity and multiplicativity exhaustively.
    pub fn new(domain: &FiniteRing, codomain: &FiniteRing, map: Vec<Elem>) -> Result<Self> {
        if map.len() != domain.order() {
            return Err(Error::invalid(format!(
                "map has length {}, domain has order {}",
                map.len(),
                domain.order()
            )));
        }
        if let Some(x) = map.iter().position(|&y| y >= codomain.order()) {
            return Err(Error::InvalidHom { law: "closure", witness: vec![x] });
        }
        if map[domain.one()] != codomain.one() {
            return Err(Error::InvalidHom { law: "f(1) = 1", witness: vec![domain.one()] });
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if map[domain.add(x, y)] != codomain.add(map[x], map[y]) {
                    return Err(Error::InvalidHom { law: "f(x+y) = f(x)+f(y)", witness: vec![x, y] });
                }
                if map[domain.mul(x, y)] != codomain.mul(map[x], map[y]) {
                    return Err(Error::InvalidHom { law: "f(xy) = f(x)f(y)", witness: vec![x, y] });
                }
            }
        }
        Ok(Self::from_valid(domain.clone(), codomain.clone(), map))
    }

    pub(crate) fn from_valid(domain: FiniteRing, codomain: FiniteRing, map: Vec<Elem>) -> Self {
        RingHom { domain, codomain, map }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Self::from_valid(ring.clone(), ring.clone(), ring.elements().collect())
    }

    /// The canonical map `k·1 ↦ k·1` out of a ring whose additive group is
    /// generated by `1` (e.g. `Z_m → Z_n` for `n | m`).
    pub fn reduction(domain: &FiniteRing, codomain: &FiniteRing) -> Result<Self> {
        let mut map = vec![usize::MAX; domain.order()];
        let (mut x, mut y) = (domain.zero(), codomain.zero());
        for _ in 0..domain.order() {
            map[x] = y;
            x = domain.add(x, domain.one());
            y = codomain.add(y, codomain.one());
        }
        if map.contains(&usize::MAX) {
            return Err(Error::invalid(format!(
                "reduction needs an additively cyclic domain generated by 1; {} is not",
                domain.label()
            )));
        }
        Self::new(domain, codomain, map)
    }

    pub fn domain(&self) -> &FiniteRing {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteRing {
        &self.codomain
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_identity(&self) -> bool {
        self.domain.same_ring(&self.codomain) && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Sorted image set `f(A)`.
    pub fn image(&self) -> Vec<Elem> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn kernel(&self) -> Ideal {
        let z = self.codomain.zero();
        let elems = self.domain.elements().filter(|&x| self.map[x] == z).collect();
        Ideal::from_sorted_unchecked(&self.domain, elems)
    }

    /// `f⁻¹(J)` for an ideal `J` of the codomain.
    pub fn preimage_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        if !ideal.ring().same_ring(&self.codomain) {
            return Err(Error::invalid("ideal is not an ideal of the codomain"));
        }
        let elems = self.domain.elements().filter(|&x| ideal.contains(self.map[x])).collect();
        Ok(Ideal::from_sorted_unchecked(&self.domain, elems))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if !self.codomain.same_ring(&other.domain) {
            return Err(Error::invalid("composition of non-matching homs"));
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(Self::from_valid(self.domain.clone(), other.codomain.clone(), map))
    }
}

/// Every unital ring homomorphism `A → B`, in lexicographic order of the
/// generator images.
pub fn enumerate_ring_homs(a: &FiniteRing, b: &FiniteRing, caps: &Caps) -> Result<Vec<RingHom>> {
    let dom = Group { order: a.order(), add: a.add_table(), zero: a.zero() };
    let cod = Group { order: b.order(), add: b.add_table(), zero: b.zero() };
    let gens = dom.generating_sequence(caps.max_generators)?;
    let cod_orders = cod.element_orders();
    let candidates = gens
        .iter()
        .map(|&g| {
            let d = a.additive_order(g);
            (0..b.order()).filter(|&c| d.is_multiple_of(cod_orders[c])).collect()
        })
        .collect();
    let ext = Extension { dom, cod, gens, candidates, injective: false, node_limit: caps.max_candidates };
    let mut out = Vec::new();
    ext.run(
        |pm| {
            if let Some(v) = pm.get(a.one()) {
                if v != b.one() {
                    return false;
                }
            }
            let assigned = pm.assigned();
            assigned.iter().all(|&x| {
                let fx = pm.get(x).unwrap();
                assigned.iter().all(|&y| match pm.get(a.mul(x, y)) {
                    Some(v) => v == b.mul(fx, pm.get(y).unwrap()),
                    None => true,
                })
            })
        },
        |m| {
            out.push(RingHom::from_valid(a.clone(), b.clone(), m.to_vec()));
            ControlFlow::Continue(())
        },
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    #[test]
    fn make_hom_examples() {
        let z6 = z(6);
        assert!(RingHom::new(&z6, &z6, (0..6).collect()).is_ok());
        let red = RingHom::new(&z(4), &z(2), vec![0, 1, 0, 1]).unwrap();
        assert!(red.is_surjective() && !red.is_injective());
        let err = RingHom::new(&z(2), &z6, vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidHom { .. }));
    }

    #[test]
    fn injective_surjective() {
        let id = RingHom::identity(&z(6));
        assert!(id.is_injective() && id.is_surjective());
        let p = crate::ring::FiniteRing::product(&z(2), &z(2)).ring;
        let diag = RingHom::new(&z(2), &p, vec![0, 3]).unwrap();
        assert!(diag.is_injective() && !diag.is_surjective());
    }

    #[test]
    fn preimages() {
        let z6 = z(6);
        let id = RingHom::identity(&z6);
        assert_eq!(id.preimage_ideal(&Ideal::zero(&z6)).unwrap().elements(), &[0]);
        let z2 = z(2);
        let red = RingHom::reduction(&z(4), &z2).unwrap();
        assert_eq!(red.preimage_ideal(&Ideal::zero(&z2)).unwrap().elements(), &[0, 2]);
        assert!(red.preimage_ideal(&Ideal::unit(&z2)).unwrap().is_whole());
    }

    #[test]
    fn reduction_requires_divisibility() {
        assert!(RingHom::reduction(&z(6), &z(3)).is_ok());
        assert!(RingHom::reduction(&z(6), &z(4)).is_err());
    }

    #[test]
    fn hom_enumeration_between_zmods() {
        let caps = Caps::default();
        // unital Z_m -> Z_n exists iff n | m, and is then unique
        for m in 1..=12 {
            for n in 1..=12 {
                let homs = enumerate_ring_homs(&z(m), &z(n), &caps).unwrap();
                assert_eq!(homs.len(), usize::from(m % n == 0), "Z_{m} -> Z_{n}");
            }
        }
    }

    #[test]
    fn hom_enumeration_into_product() {
        let caps = Caps::default();
        let p = crate::ring::FiniteRing::product(&z(2), &z(2)).ring;
        // Z2xZ2 -> Z2xZ2: identity and swap, plus the two maps through a factor
        let homs = enumerate_ring_homs(&p, &p, &caps).unwrap();
        assert_eq!(homs.len(), 4);
        let z4 = z(4);
        let p24 = crate::ring::FiniteRing::product(&z(2), &z4).ring;
        let homs = enumerate_ring_homs(&z4, &p24, &caps).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_injective());
    }
}
