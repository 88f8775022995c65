//! The amalgamation `A ⋈^f J = {(a, f(a) + j) : a ∈ A, j ∈ J} ⊆ A × B`.

use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::ring::{Elem, FiniteRing};

/// `A ⋈^f J` as an explicit ring, with each element decodable as a pair.
///
/// Element `a·|J| + k` is `(a, f(a) + J[k])`, so the pairing `(a, j)` that
/// defines the set is literal and reversible.
#[derive(Clone)]
pub struct AmalgamRing {
    ring: FiniteRing,
    a_ring: FiniteRing,
    b_ring: FiniteRing,
    hom: RingHom,
    j_ideal: Ideal,
    decode: Vec<(Elem, Elem)>,
    /// `a·|B| + b` to amalgam index, `usize::MAX` when absent.
    lookup: Vec<usize>,
}

impl fmt::Debug for AmalgamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmalgamRing({}, order {})", self.ring.label(), self.ring.order())
    }
}

pub fn amalgamate(a: &FiniteRing, b: &FiniteRing, f: &RingHom, j: &Ideal, caps: &Caps) -> Result<AmalgamRing> {
    if !f.domain().same_ring(a) || !f.codomain().same_ring(b) {
        return Err(Error::invalid("hom does not go from A to B"));
    }
    if !j.ring().same_ring(b) {
        return Err(Error::invalid("J is not an ideal of B"));
    }
    let order = a.order() * j.len();
    if order > caps.max_amalgam_order {
        return Err(Error::ResourceLimit { what: "amalgam order", limit: caps.max_amalgam_order });
    }
    let nb = b.order();
    let mut decode = Vec::with_capacity(order);
    let mut lookup = vec![usize::MAX; a.order() * nb];
    for x in a.elements() {
        for &jj in j.elements() {
            let pair = (x, b.add(f.apply(x), jj));
            let slot = &mut lookup[pair.0 * nb + pair.1];
            if *slot != usize::MAX {
                return Err(Error::OracleDisagreement("amalgam decode is not injective".into()));
            }
            *slot = decode.len();
            decode.push(pair);
        }
    }
    let idx = |p: (Elem, Elem)| {
        let v = lookup[p.0 * nb + p.1];
        debug_assert!(v != usize::MAX, "amalgam not closed");
        v
    };
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for &(x, y) in &decode {
        for &(u, v) in &decode {
            add.push(idx((a.add(x, u), b.add(y, v))));
            mul.push(idx((a.mul(x, u), b.mul(y, v))));
        }
    }
    let label = format!("{} ⋈^f {:?} ⊆ {}", a.label(), j.elements(), b.label());
    let ring = FiniteRing::from_flat(
        order,
        add,
        mul,
        idx((a.zero(), b.zero())),
        idx((a.one(), b.one())),
        label,
    )?;
    Ok(AmalgamRing { ring, a_ring: a.clone(), b_ring: b.clone(), hom: f.clone(), j_ideal: j.clone(), decode, lookup })
}

/// `A ⋈ I`: the amalgamation along the identity of `A`.
pub fn duplication(a: &FiniteRing, i: &Ideal, caps: &Caps) -> Result<AmalgamRing> {
    amalgamate(a, a, &RingHom::identity(a), i, caps)
}

impl AmalgamRing {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn a_ring(&self) -> &FiniteRing {
        &self.a_ring
    }

    pub fn b_ring(&self) -> &FiniteRing {
        &self.b_ring
    }

    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn j_ideal(&self) -> &Ideal {
        &self.j_ideal
    }

    pub fn decode(&self, x: Elem) -> (Elem, Elem) {
        self.decode[x]
    }

    pub fn decode_table(&self) -> &[(Elem, Elem)] {
        &self.decode
    }

    pub fn index_of(&self, a: Elem, b: Elem) -> Option<Elem> {
        if a >= self.a_ring.order() || b >= self.b_ring.order() {
            return None;
        }
        let v = self.lookup[a * self.b_ring.order() + b];
        (v != usize::MAX).then_some(v)
    }

    /// `g: (a, f(a) + j) ↦ a`.
    pub fn modulation_map(&self) -> RingHom {
        let map = self.decode.iter().map(|&(a, _)| a).collect();
        RingHom::from_valid(self.ring.clone(), self.a_ring.clone(), map)
    }

    /// `(a, b) ↦ b`.
    pub fn second_projection(&self) -> RingHom {
        let map = self.decode.iter().map(|&(_, b)| b).collect();
        RingHom::from_valid(self.ring.clone(), self.b_ring.clone(), map)
    }

    /// `a ↦ (a, f(a))`, a section of the modulation map.
    pub fn diagonal(&self) -> RingHom {
        let map = self
            .a_ring
            .elements()
            .map(|a| self.index_of(a, self.hom.apply(a)).unwrap())
            .collect();
        RingHom::from_valid(self.a_ring.clone(), self.ring.clone(), map)
    }

    /// `{0} × J`, the kernel of the modulation map.
    pub fn zero_cross_j(&self) -> Ideal {
        self.k_bowtie_j(&Ideal::zero(&self.a_ring)).expect("zero is an ideal of A")
    }

    /// `K ⋈^f J = {(k, f(k) + j) : k ∈ K, j ∈ J}` for an ideal `K` of `A`.
    pub fn k_bowtie_j(&self, k: &Ideal) -> Result<Ideal> {
        if !k.ring().same_ring(&self.a_ring) {
            return Err(Error::invalid("K is not an ideal of A"));
        }
        let b = &self.b_ring;
        let mut elems: Vec<Elem> = k
            .elements()
            .iter()
            .flat_map(|&x| {
                self.j_ideal
                    .elements()
                    .iter()
                    .map(move |&j| self.index_of(x, b.add(self.hom.apply(x), j)).unwrap())
            })
            .collect();
        elems.sort_unstable();
        Ideal::from_elements(&self.ring, &elems)
    }

    /// The subring `f(A) + J` of `B`.
    pub fn image_plus_j(&self) -> Vec<Elem> {
        let b = &self.b_ring;
        let mut mask = vec![false; b.order()];
        for y in self.hom.image() {
            for &j in self.j_ideal.elements() {
                mask[b.add(y, j)] = true;
            }
        }
        b.elements().filter(|&x| mask[x]).collect()
    }

    pub fn image_plus_j_subring(&self) -> Result<FiniteRing> {
        let label = format!("f(A)+J in {}", self.b_ring.label());
        Ok(self.b_ring.subring(&self.image_plus_j(), label)?.0)
    }

    pub fn f_injective(&self) -> bool {
        self.hom.is_injective()
    }

    pub fn f_surjective(&self) -> bool {
        self.hom.is_surjective()
    }

    /// Literal set containment `J ⊆ f(A)`.
    pub fn j_in_image(&self) -> bool {
        let img = self.hom.image();
        self.j_ideal.elements().iter().all(|x| img.binary_search(x).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::ring_isomorphic;
    use crate::ring::quotient_ring;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn orders() {
        let z6 = z(6);
        let w = duplication(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        assert_eq!(w.ring().order(), 18);
        let z4 = z(4);
        let w = duplication(&z4, &Ideal::generated(&z4, &[2]).unwrap(), &caps()).unwrap();
        assert_eq!(w.ring().order(), 8);
    }

    #[test]
    fn full_j_gives_product() {
        let (z4, z2) = (z(4), z(2));
        let red = RingHom::reduction(&z4, &z2).unwrap();
        let w = amalgamate(&z4, &z2, &red, &Ideal::unit(&z2), &caps()).unwrap();
        assert_eq!(w.ring().order(), 8);
        let p = FiniteRing::product(&z4, &z2).ring;
        assert!(ring_isomorphic(w.ring(), &p, &caps()).unwrap().is_some());
    }

    #[test]
    fn zero_j_gives_graph() {
        let (z4, z2) = (z(4), z(2));
        let red = RingHom::reduction(&z4, &z2).unwrap();
        let w = amalgamate(&z4, &z2, &red, &Ideal::zero(&z2), &caps()).unwrap();
        assert!(ring_isomorphic(w.ring(), &z4, &caps()).unwrap().is_some());
        assert!(w.zero_cross_j().is_zero());
    }

    #[test]
    fn modulation_and_kernel() {
        let z6 = z(6);
        let w = duplication(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        let g = w.modulation_map();
        let x = w.index_of(4, 0).unwrap();
        assert_eq!(g.apply(x), 4);
        assert!(g.is_surjective());
        assert_eq!(g.kernel(), w.zero_cross_j());
        assert_eq!(w.zero_cross_j().len(), 3);
        let (q, _) = quotient_ring(w.ring(), &w.zero_cross_j()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(ring_isomorphic(&q, &z6, &caps()).unwrap().is_some());
    }

    #[test]
    fn quotient_by_zero_cross_j_for_reduction() {
        let (z4, z2) = (z(4), z(2));
        let red = RingHom::reduction(&z4, &z2).unwrap();
        let w = amalgamate(&z4, &z2, &red, &Ideal::unit(&z2), &caps()).unwrap();
        let zj = w.zero_cross_j();
        assert_eq!(zj.len(), 2);
        let (q, _) = quotient_ring(w.ring(), &zj).unwrap();
        assert!(ring_isomorphic(&q, &z4, &caps()).unwrap().is_some());
    }

    #[test]
    fn image_plus_j_examples() {
        let z6 = z(6);
        let w = duplication(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        assert_eq!(w.image_plus_j_subring().unwrap(), z6);

        let (z4, z2) = (z(4), z(2));
        let red = RingHom::reduction(&z4, &z2).unwrap();
        let w = amalgamate(&z4, &z2, &red, &Ideal::unit(&z2), &caps()).unwrap();
        assert_eq!(w.image_plus_j_subring().unwrap(), z2);

        let p = FiniteRing::product(&z2, &z2).ring;
        let diag = RingHom::new(&z2, &p, vec![0, 3]).unwrap();
        let j = Ideal::from_elements(&p, &[0, 2]).unwrap();
        let w = amalgamate(&z2, &p, &diag, &j, &caps()).unwrap();
        assert_eq!(w.image_plus_j_subring().unwrap(), p);
    }

    #[test]
    fn k_bowtie_j_examples() {
        let z6 = z(6);
        let w = duplication(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        assert_eq!(w.k_bowtie_j(&Ideal::zero(&z6)).unwrap(), w.zero_cross_j());
        assert!(w.k_bowtie_j(&Ideal::unit(&z6)).unwrap().is_whole());
        assert_eq!(w.k_bowtie_j(&Ideal::generated(&z6, &[3]).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn order_cap() {
        let z6 = z(6);
        let tight = Caps { max_amalgam_order: 10, ..Caps::default() };
        let err = duplication(&z6, &Ideal::unit(&z6), &tight).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn hypothesis_flags() {
        let z6 = z(6);
        let w = duplication(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        assert!(w.f_injective() && w.j_in_image());
        let (z4, z2) = (z(4), z(2));
        let red = RingHom::reduction(&z4, &z2).unwrap();
        let w = amalgamate(&z4, &z2, &red, &Ideal::unit(&z2), &caps()).unwrap();
        assert!(!w.f_injective() && w.f_surjective() && w.j_in_image());
    }
}
