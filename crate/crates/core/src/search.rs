//! Backtracking search for additive maps between finite abelian groups.
//!
//! A map is fixed by the images of a generating sequence of the domain.
//! Images are chosen generator by generator; each choice is propagated over
//! the enlarged span, and any clash (two values for one element, or a
//! repeated image when injectivity is required) cuts the branch.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::ring::Elem;

const UNSET: usize = usize::MAX;

/// Borrowed view of an abelian group given by its addition table.
#[derive(Clone, Copy)]
pub(crate) struct Group<'a> {
    pub order: usize,
    pub add: &'a [Elem],
    pub zero: Elem,
}

impl<'a> Group<'a> {
    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.order + y]
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.sum(acc, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    /// Greedy generating sequence: repeatedly take an element of largest
    /// additive order outside the current span (least index on ties).
    pub fn generating_sequence(&self, max_len: usize) -> Result<Vec<Elem>> {
        let orders = self.element_orders();
        let mut in_span = vec![false; self.order];
        in_span[self.zero] = true;
        let mut span = vec![self.zero];
        let mut gens = Vec::new();
        while span.len() < self.order {
            let g = (0..self.order)
                .filter(|&x| !in_span[x])
                .max_by(|&a, &b| orders[a].cmp(&orders[b]).then(b.cmp(&a)))
                .unwrap();
            if gens.len() == max_len {
                return Err(Error::ResourceLimit { what: "generating sequence length", limit: max_len });
            }
            gens.push(g);
            let mut i = 0;
            while i < span.len() {
                let y = self.sum(span[i], g);
                if !in_span[y] {
                    in_span[y] = true;
                    span.push(y);
                }
                i += 1;
            }
        }
        Ok(gens)
    }
}

/// Partial additive map maintained during the search.
pub(crate) struct PartialMap {
    image: Vec<Elem>,
    preimage: Vec<Elem>,
    assigned: Vec<Elem>,
}

impl PartialMap {
    #[inline]
    pub fn get(&self, x: Elem) -> Option<Elem> {
        let v = self.image[x];
        (v != UNSET).then_some(v)
    }

    /// Domain elements with an image, in assignment order.
    pub fn assigned(&self) -> &[Elem] {
        &self.assigned
    }
}

pub(crate) struct Extension<'a> {
    pub dom: Group<'a>,
    pub cod: Group<'a>,
    pub gens: Vec<Elem>,
    pub candidates: Vec<Vec<Elem>>,
    pub injective: bool,
    pub node_limit: u64,
}

struct State<'s, P, V> {
    pm: PartialMap,
    nodes: u64,
    prune: P,
    visit: V,
    _m: std::marker::PhantomData<&'s ()>,
}

impl<'a> Extension<'a> {
    /// Calls `visit` on every complete map accepted by `prune` at each level.
    /// `prune` sees the partial map after each generator is placed; returning
    /// false abandons that branch.
    pub fn run<P, V>(&self, prune: P, visit: V) -> Result<()>
    where
        P: FnMut(&PartialMap) -> bool,
        V: FnMut(&[Elem]) -> ControlFlow<()>,
    {
        let mut pm = PartialMap {
            image: vec![UNSET; self.dom.order],
            preimage: vec![UNSET; self.cod.order],
            assigned: Vec::with_capacity(self.dom.order),
        };
        pm.image[self.dom.zero] = self.cod.zero;
        pm.preimage[self.cod.zero] = self.dom.zero;
        pm.assigned.push(self.dom.zero);
        let mut st = State { pm, nodes: 0, prune, visit, _m: std::marker::PhantomData };
        if !(st.prune)(&st.pm) {
            return Ok(());
        }
        self.descend(0, &mut st).map(|_| ())
    }

    fn descend<P, V>(&self, level: usize, st: &mut State<'_, P, V>) -> Result<ControlFlow<()>>
    where
        P: FnMut(&PartialMap) -> bool,
        V: FnMut(&[Elem]) -> ControlFlow<()>,
    {
        if level == self.gens.len() {
            debug_assert_eq!(st.pm.assigned.len(), self.dom.order);
            return Ok((st.visit)(&st.pm.image));
        }
        let g = self.gens[level];
        for &c in &self.candidates[level] {
            st.nodes += 1;
            if st.nodes > self.node_limit {
                return Err(Error::ResourceLimit {
                    what: "search candidates",
                    limit: self.node_limit.min(usize::MAX as u64) as usize,
                });
            }
            let mark = st.pm.assigned.len();
            let ok = self.extend(&mut st.pm, g, c) && (st.prune)(&st.pm);
            if ok {
                if let ControlFlow::Break(()) = self.descend(level + 1, st)? {
                    self.undo(&mut st.pm, mark);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo(&mut st.pm, mark);
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Propagates `g ↦ c` along `x ↦ x + g` over the span. Leaves partial
    /// assignments in place on failure; the caller undoes them.
    fn extend(&self, pm: &mut PartialMap, g: Elem, c: Elem) -> bool {
        if let Some(v) = pm.get(g) {
            return v == c;
        }
        let mut i = 0;
        while i < pm.assigned.len() {
            let x = pm.assigned[i];
            let y = self.dom.sum(x, g);
            let img = self.cod.sum(pm.image[x], c);
            match pm.get(y) {
                Some(v) if v != img => return false,
                Some(_) => {}
                None => {
                    if self.injective {
                        if pm.preimage[img] != UNSET {
                            return false;
                        }
                        pm.preimage[img] = y;
                    }
                    pm.image[y] = img;
                    pm.assigned.push(y);
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&self, pm: &mut PartialMap, mark: usize) {
        for &x in &pm.assigned[mark..] {
            if self.injective {
                pm.preimage[pm.image[x]] = UNSET;
            }
            pm.image[x] = UNSET;
        }
        pm.assigned.truncate(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_add(n: usize) -> Vec<Elem> {
        (0..n * n).map(|i| (i / n + i % n) % n).collect()
    }

    #[test]
    fn generating_sequences() {
        let z6 = zmod_add(6);
        let g = Group { order: 6, add: &z6, zero: 0 };
        assert_eq!(g.generating_sequence(6).unwrap(), vec![1]);
        // Z2 x Z2 coded 2a+b
        let k: Vec<Elem> = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let g = Group { order: 4, add: &k, zero: 0 };
        assert_eq!(g.generating_sequence(6).unwrap(), vec![1, 2]);
        assert!(g.generating_sequence(1).unwrap_err().is_resource_limit());
    }

    #[test]
    fn additive_maps_z4_to_z2() {
        let z4 = zmod_add(4);
        let z2 = zmod_add(2);
        let ext = Extension {
            dom: Group { order: 4, add: &z4, zero: 0 },
            cod: Group { order: 2, add: &z2, zero: 0 },
            gens: vec![1],
            candidates: vec![vec![0, 1]],
            injective: false,
            node_limit: 100,
        };
        let mut maps = Vec::new();
        ext.run(|_| true, |m| {
            maps.push(m.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(maps, vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn inconsistent_images_are_cut() {
        // Z2 -> Z4 with 1 -> 1 is not additive (2·1 = 2 ≠ 0)
        let z2 = zmod_add(2);
        let z4 = zmod_add(4);
        let ext = Extension {
            dom: Group { order: 2, add: &z2, zero: 0 },
            cod: Group { order: 4, add: &z4, zero: 0 },
            gens: vec![1],
            candidates: vec![vec![0, 1, 2, 3]],
            injective: false,
            node_limit: 100,
        };
        let mut maps = Vec::new();
        ext.run(|_| true, |m| {
            maps.push(m.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 2]]);
    }

    #[test]
    fn node_limit() {
        let z4 = zmod_add(4);
        let ext = Extension {
            dom: Group { order: 4, add: &z4, zero: 0 },
            cod: Group { order: 4, add: &z4, zero: 0 },
            gens: vec![1],
            candidates: vec![vec![0, 1, 2, 3]],
            injective: false,
            node_limit: 2,
        };
        let err = ext.run(|_| true, |_| ControlFlow::Continue(())).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
