//! Ideals, the full ideal lattice, annihilators, and idempotent generators.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// Lattices larger than this are refused rather than truncated.
pub const DEFAULT_MAX_IDEALS: usize = 4096;

/// An ideal in canonical form: sorted, duplicate-free element list.
#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    elements: Vec<Elem>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.ring.same_ring(&other.ring)
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.elements)
    }
}

fn mask_of(order: usize, elems: &[Elem]) -> Vec<bool> {
    let mut m = vec![false; order];
    for &e in elems {
        m[e] = true;
    }
    m
}

fn from_mask(mask: &[bool]) -> Vec<Elem> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn principal_elements(ring: &FiniteRing, g: Elem) -> Vec<Elem> {
    let mut m = vec![false; ring.order()];
    for r in ring.elements() {
        m[ring.mul(r, g)] = true;
    }
    from_mask(&m)
}

fn sum_elements(ring: &FiniteRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut m = vec![false; ring.order()];
    for &x in a {
        for &y in b {
            m[ring.add(x, y)] = true;
        }
    }
    from_mask(&m)
}

impl Ideal {
    pub(crate) fn from_sorted_unchecked(ring: &FiniteRing, elements: Vec<Elem>) -> Self {
        Ideal { ring: ring.clone(), elements }
    }

    /// Validates that `elements` is an ideal of `ring`.
    pub fn from_elements(ring: &FiniteRing, elements: &[Elem]) -> Result<Self> {
        for &e in elements {
            ring.check_elem(e)?;
        }
        let mask = mask_of(ring.order(), elements);
        if !mask[ring.zero()] {
            return Err(Error::invalid("ideal must contain zero"));
        }
        let elems = from_mask(&mask);
        for &x in &elems {
            for &y in &elems {
                if !mask[ring.add(x, y)] {
                    return Err(Error::invalid(format!("not closed under addition at ({x}, {y})")));
                }
            }
            for r in ring.elements() {
                if !mask[ring.mul(r, x)] {
                    return Err(Error::invalid(format!("not closed under multiplication at ({r}, {x})")));
                }
            }
        }
        Ok(Ideal { ring: ring.clone(), elements: elems })
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Ideal { ring: ring.clone(), elements: vec![ring.zero()] }
    }

    pub fn unit(ring: &FiniteRing) -> Self {
        Ideal { ring: ring.clone(), elements: ring.elements().collect() }
    }

    pub fn principal(ring: &FiniteRing, g: Elem) -> Result<Self> {
        ring.check_elem(g)?;
        Ok(Ideal { ring: ring.clone(), elements: principal_elements(ring, g) })
    }

    /// Smallest ideal containing `gens`: the sum of the principal ideals.
    pub fn generated(ring: &FiniteRing, gens: &[Elem]) -> Result<Self> {
        let mut acc = vec![ring.zero()];
        for &g in gens {
            ring.check_elem(g)?;
            let p = principal_elements(ring, g);
            acc = sum_elements(ring, &acc, &p);
        }
        Ok(Ideal { ring: ring.clone(), elements: acc })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        mask_of(self.ring.order(), &self.elements)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` within the sorted element list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// A small generating set: ascending elements not already covered.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = vec![self.ring.zero()];
        for &x in &self.elements {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = sum_elements(&self.ring, &current, &principal_elements(&self.ring, x));
            }
        }
        gens
    }

    fn same_parent(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::invalid("ideals belong to different rings"))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_parent(other)?;
        Ok(Ideal { ring: self.ring.clone(), elements: sum_elements(&self.ring, &self.elements, &other.elements) })
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.same_parent(other)?;
        let elements = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Ok(Ideal { ring: self.ring.clone(), elements })
    }

    /// Ideal generated by all pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_parent(other)?;
        let mut m = vec![false; self.ring.order()];
        for &x in &self.elements {
            for &y in &other.elements {
                m[self.ring.mul(x, y)] = true;
            }
        }
        Ideal::generated(&self.ring, &from_mask(&m))
    }
}

/// `{ x : x·s = 0 for all s ∈ subset }`.
pub fn annihilator(ring: &FiniteRing, subset: &[Elem]) -> Result<Ideal> {
    for &s in subset {
        ring.check_elem(s)?;
    }
    let elements = ring
        .elements()
        .filter(|&x| subset.iter().all(|&s| ring.mul(x, s) == ring.zero()))
        .collect();
    Ok(Ideal::from_sorted_unchecked(ring, elements))
}

pub fn all_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    all_ideals_capped(ring, DEFAULT_MAX_IDEALS)
}

/// Every ideal, sorted by `(cardinality, element list)`.
///
/// Principal ideals are closed under pairwise sums until nothing new
/// appears; every ideal of a finite ring is a finite sum of principals.
pub fn all_ideals_capped(ring: &FiniteRing, max_ideals: usize) -> Result<Vec<Ideal>> {
    let lists = match ring.cache().ideals.get() {
        Some(cached) => cached,
        None => {
            let computed = enumerate_lattice(ring, max_ideals)?;
            let _ = ring.cache().ideals.set(computed);
            ring.cache().ideals.get().unwrap()
        }
    };
    if lists.len() > max_ideals {
        return Err(Error::ResourceLimit { what: "ideal lattice size", limit: max_ideals });
    }
    Ok(lists.iter().map(|e| Ideal::from_sorted_unchecked(ring, e.clone())).collect())
}

fn enumerate_lattice(ring: &FiniteRing, max_ideals: usize) -> Result<Vec<Vec<Elem>>> {
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut list: Vec<Vec<Elem>> = Vec::new();
    let mut push = |e: Vec<Elem>, list: &mut Vec<Vec<Elem>>| -> Result<()> {
        if seen.insert(e.clone()) {
            if list.len() >= max_ideals {
                return Err(Error::ResourceLimit { what: "ideal lattice size", limit: max_ideals });
            }
            list.push(e);
        }
        Ok(())
    };
    for g in ring.elements() {
        push(principal_elements(ring, g), &mut list)?;
    }
    let mut p = 0;
    while p < list.len() {
        for q in 0..p {
            let (a, b) = (&list[p], &list[q]);
            if a.len() == ring.order() || b.len() == ring.order() {
                continue;
            }
            let s = sum_elements(ring, a, b);
            if s.len() != a.len() && s.len() != b.len() {
                push(s, &mut list)?;
            }
        }
        p += 1;
    }
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list)
}

/// Least idempotent `e` (by index) with `eR = J`.
pub fn idempotent_generator(ring: &FiniteRing, ideal: &Ideal) -> Option<Elem> {
    ring.idempotents()
        .into_iter()
        .find(|&e| principal_elements(ring, e) == ideal.elements())
}

/// Non-zero-divisor test. In a finite commutative ring this coincides with
/// being a unit; the equivalence is checked in debug builds.
pub fn is_regular_element(ring: &FiniteRing, z: Elem) -> bool {
    let regular = ring.elements().all(|x| ring.mul(z, x) != ring.zero() || x == ring.zero());
    debug_assert_eq!(regular, ring.is_unit(z), "regular vs unit for {z} in {}", ring.label());
    regular
}

/// Maximal elements of the proper ideals under inclusion.
pub fn maximal_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    if ring.order() < 2 {
        return Err(Error::invalid("the zero ring has no maximal ideals"));
    }
    let proper: Vec<Ideal> = all_ideals(ring)?.into_iter().filter(|i| !i.is_whole()).collect();
    Ok(proper
        .iter()
        .filter(|i| !proper.iter().any(|k| k.len() > i.len() && i.is_subset(k)))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn elems(ideals: &[Ideal]) -> Vec<Vec<Elem>> {
        ideals.iter().map(|i| i.elements().to_vec()).collect()
    }

    #[test]
    fn generated_ideals() {
        let z6 = z(6);
        assert_eq!(Ideal::generated(&z6, &[2]).unwrap().elements(), &[0, 2, 4]);
        assert_eq!(Ideal::generated(&z6, &[]).unwrap().elements(), &[0]);
        assert_eq!(Ideal::generated(&z6, &[4]).unwrap().elements(), &[0, 2, 4]);
        assert!(Ideal::generated(&z6, &[6]).is_err());
    }

    #[test]
    fn lattices() {
        assert_eq!(elems(&all_ideals(&z(6)).unwrap()), vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]);
        assert_eq!(elems(&all_ideals(&z(4)).unwrap()), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let p = FiniteRing::product(&z(2), &z(2)).ring;
        // (a,b) -> 2a+b: {0}x Z2 = {0,1}, Z2 x {0} = {0,2}
        assert_eq!(elems(&all_ideals(&p).unwrap()), vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn lattice_cap_is_an_error() {
        let p = FiniteRing::product(&z(2), &z(2)).ring;
        let err = all_ideals_capped(&p, 3).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn annihilators() {
        let z6 = z(6);
        assert_eq!(annihilator(&z6, &[0, 2, 4]).unwrap().elements(), &[0, 3]);
        assert_eq!(annihilator(&z6, &[0, 3]).unwrap().elements(), &[0, 2, 4]);
        assert_eq!(annihilator(&z(4), &[0, 2]).unwrap().elements(), &[0, 2]);
    }

    #[test]
    fn ideal_arithmetic() {
        let z6 = z(6);
        let a = Ideal::from_elements(&z6, &[0, 3]).unwrap();
        let b = Ideal::from_elements(&z6, &[0, 2, 4]).unwrap();
        assert!(a.sum(&b).unwrap().is_whole());
        assert!(a.intersection(&b).unwrap().is_zero());
        let z4 = z(4);
        let t = Ideal::from_elements(&z4, &[0, 2]).unwrap();
        assert!(t.product(&t).unwrap().is_zero());
        assert!(a.sum(&t).is_err());
    }

    #[test]
    fn from_elements_rejects_non_ideals() {
        let z6 = z(6);
        assert!(Ideal::from_elements(&z6, &[0, 2]).is_err());
        assert!(Ideal::from_elements(&z6, &[2, 4]).is_err());
        assert!(Ideal::from_elements(&z6, &[0, 1]).is_err());
    }

    #[test]
    fn idempotent_generators() {
        let z6 = z(6);
        let j = Ideal::from_elements(&z6, &[0, 2, 4]).unwrap();
        assert_eq!(idempotent_generator(&z6, &j), Some(4));
        let z4 = z(4);
        assert_eq!(idempotent_generator(&z4, &Ideal::from_elements(&z4, &[0, 2]).unwrap()), None);
        assert_eq!(idempotent_generator(&z6, &Ideal::zero(&z6)), Some(0));
    }

    #[test]
    fn regular_elements() {
        assert!(is_regular_element(&z(6), 5));
        assert!(!is_regular_element(&z(6), 2));
        assert!(is_regular_element(&z(4), 3));
    }

    #[test]
    fn maximal() {
        assert_eq!(elems(&maximal_ideals(&z(6)).unwrap()), vec![vec![0, 3], vec![0, 2, 4]]);
        assert_eq!(elems(&maximal_ideals(&z(4)).unwrap()), vec![vec![0, 2]]);
        let p = FiniteRing::product(&z(2), &z(2)).ring;
        assert_eq!(maximal_ideals(&p).unwrap().len(), 2);
        assert!(maximal_ideals(&z(1)).is_err());
    }

    #[test]
    fn generators_regenerate() {
        let p = FiniteRing::product(&z(2), &z(4)).ring;
        for i in all_ideals(&p).unwrap() {
            assert_eq!(Ideal::generated(&p, &i.generators()).unwrap(), i);
        }
    }
}
