//! Finite modules over finite rings, their homomorphisms, and Hom-objects.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::{annihilator, Ideal};
use crate::ring::{Elem, FiniteRing};
use crate::search::{Extension, Group};

/// A module given by its addition table and a `|R| × order` action table.
#[derive(Clone)]
pub struct FModule {
    inner: Arc<ModuleData>,
}

struct ModuleData {
    ring: FiniteRing,
    order: usize,
    add: Vec<Elem>,
    zero: Elem,
    action: Vec<Elem>,
    label: String,
}

impl fmt::Debug for FModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FModule({} over {}, order {})", self.label(), self.ring().label(), self.order())
    }
}

impl PartialEq for FModule {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.inner, &other.inner);
        Arc::ptr_eq(a, b)
            || (a.ring.same_ring(&b.ring)
                && a.order == b.order
                && a.zero == b.zero
                && a.add == b.add
                && a.action == b.action)
    }
}

fn check_module(ring: &FiniteRing, order: usize, add: &[Elem], zero: Elem, action: &[Elem]) -> Result<()> {
    let n = order;
    let bad = |law, witness| Err(Error::InvalidModule { law, witness });
    if n == 0 || add.len() != n * n || action.len() != ring.order() * n || zero >= n {
        return bad("table shape", vec![add.len(), action.len()]);
    }
    if add.iter().chain(action).any(|&v| v >= n) {
        return bad("closure", vec![]);
    }
    let a = |x: Elem, y: Elem| add[x * n + y];
    let act = |r: Elem, m: Elem| action[r * n + m];
    for x in 0..n {
        if a(zero, x) != x {
            return bad("0 + m = m", vec![x]);
        }
        if !(0..n).any(|y| a(x, y) == zero) {
            return bad("additive inverse", vec![x]);
        }
        for y in 0..n {
            if a(x, y) != a(y, x) {
                return bad("m + n = n + m", vec![x, y]);
            }
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z)) {
                    return bad("(m + n) + p = m + (n + p)", vec![x, y, z]);
                }
            }
        }
    }
    for m in 0..n {
        if act(ring.one(), m) != m {
            return bad("1·m = m", vec![m]);
        }
    }
    for r in ring.elements() {
        for s in ring.elements() {
            for m in 0..n {
                if act(ring.add(r, s), m) != a(act(r, m), act(s, m)) {
                    return bad("(r+s)·m = r·m + s·m", vec![r, s, m]);
                }
                if act(ring.mul(r, s), m) != act(r, act(s, m)) {
                    return bad("(rs)·m = r·(s·m)", vec![r, s, m]);
                }
            }
        }
        for m in 0..n {
            for p in 0..n {
                if act(r, a(m, p)) != a(act(r, m), act(r, p)) {
                    return bad("r·(m+n) = r·m + r·n", vec![r, m, p]);
                }
            }
        }
    }
    Ok(())
}

impl FModule {
    pub fn new(
        ring: &FiniteRing,
        order: usize,
        add: Vec<Elem>,
        zero: Elem,
        action: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        check_module(ring, order, &add, zero, &action)?;
        Ok(Self::from_valid(ring.clone(), order, add, zero, action, label.into()))
    }

    pub(crate) fn from_valid(
        ring: FiniteRing,
        order: usize,
        add: Vec<Elem>,
        zero: Elem,
        action: Vec<Elem>,
        label: String,
    ) -> Self {
        FModule { inner: Arc::new(ModuleData { ring, order, add, zero, action, label }) }
    }

    /// `R` as a module over itself.
    pub fn regular(ring: &FiniteRing) -> Self {
        Self::from_valid(
            ring.clone(),
            ring.order(),
            ring.add_table().to_vec(),
            ring.zero(),
            ring.mul_table().to_vec(),
            ring.label().to_string(),
        )
    }

    pub fn zero_module(ring: &FiniteRing) -> Self {
        Self::from_valid(ring.clone(), 1, vec![0], 0, vec![0; ring.order()], "0".into())
    }

    /// The ideal `I` as an `R`-module; module element `k` is `I.elements()[k]`.
    pub fn from_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<Self> {
        if !ideal.ring().same_ring(ring) {
            return Err(Error::invalid("ideal belongs to a different ring"));
        }
        let el = ideal.elements();
        let pos = |x: Elem| ideal.position(x).expect("ideal is closed");
        let k = el.len();
        let mut add = Vec::with_capacity(k * k);
        for &x in el {
            for &y in el {
                add.push(pos(ring.add(x, y)));
            }
        }
        let mut action = Vec::with_capacity(ring.order() * k);
        for r in ring.elements() {
            for &x in el {
                action.push(pos(ring.mul(r, x)));
            }
        }
        Ok(Self::from_valid(ring.clone(), k, add, pos(ring.zero()), action, format!("{el:?}")))
    }

    /// `B` viewed as an `A`-module through `f: A → B`, i.e. `a·b = f(a)b`.
    pub fn via_hom(f: &RingHom) -> Self {
        Self::regular(f.codomain()).restrict_scalars(f).expect("codomain matches")
    }

    /// Same group, action `r·m := h(r)·m` for `h: R → S` and `self` over `S`.
    pub fn restrict_scalars(&self, h: &RingHom) -> Result<Self> {
        if !h.codomain().same_ring(self.ring()) {
            return Err(Error::invalid("restriction hom must land in the module's ring"));
        }
        let n = self.order();
        let mut action = Vec::with_capacity(h.domain().order() * n);
        for r in h.domain().elements() {
            let s = h.apply(r);
            action.extend_from_slice(&self.inner.action[s * n..(s + 1) * n]);
        }
        Ok(Self::from_valid(
            h.domain().clone(),
            n,
            self.inner.add.clone(),
            self.zero(),
            action,
            self.label().to_string(),
        ))
    }

    /// `M ⊕ N` with `(m, n)` coded as `m·|N| + n`.
    pub fn direct_sum(&self, other: &FModule) -> Result<Self> {
        if !self.ring().same_ring(other.ring()) {
            return Err(Error::invalid("direct sum of modules over different rings"));
        }
        let (nm, nn) = (self.order(), other.order());
        let n = nm * nn;
        let mut add = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                add.push(self.add(x / nn, y / nn) * nn + other.add(x % nn, y % nn));
            }
        }
        let mut action = Vec::with_capacity(self.ring().order() * n);
        for r in self.ring().elements() {
            for x in 0..n {
                action.push(self.act(r, x / nn) * nn + other.act(r, x % nn));
            }
        }
        Ok(Self::from_valid(
            self.ring().clone(),
            n,
            add,
            self.zero() * nn + other.zero(),
            action,
            format!("{} (+) {}", self.label(), other.label()),
        ))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.inner.ring
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn zero(&self) -> Elem {
        self.inner.zero
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.inner.add[x * self.inner.order + y]
    }

    #[inline]
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        self.inner.action[r * self.inner.order + m]
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub(crate) fn group(&self) -> Group<'_> {
        Group { order: self.order(), add: &self.inner.add, zero: self.zero() }
    }

    pub fn additive_order(&self, m: Elem) -> usize {
        self.group().element_order(m)
    }

    /// `{ r ∈ R : r·m = 0 }` as a membership mask over ring elements.
    pub fn annihilator_mask(&self, m: Elem) -> Vec<bool> {
        self.ring().elements().map(|r| self.act(r, m) == self.zero()).collect()
    }

    fn invariant_profile(&self) -> BTreeMap<(usize, usize), usize> {
        let mut p = BTreeMap::new();
        for m in 0..self.order() {
            let ann = self.annihilator_mask(m).iter().filter(|&&b| b).count();
            *p.entry((self.additive_order(m), ann)).or_insert(0) += 1;
        }
        p
    }
}

/// An `R`-linear map, stored as the image of each domain index.
#[derive(Clone)]
pub struct ModuleHom {
    domain: FModule,
    codomain: FModule,
    map: Vec<Elem>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleHom({:?})", self.map)
    }
}

impl ModuleHom {
    pub fn new(domain: &FModule, codomain: &FModule, map: Vec<Elem>) -> Result<Self> {
        if !domain.ring().same_ring(codomain.ring()) {
            return Err(Error::invalid("module hom between modules over different rings"));
        }
        if map.len() != domain.order() || map.iter().any(|&y| y >= codomain.order()) {
            return Err(Error::invalid("map has the wrong shape"));
        }
        for x in 0..domain.order() {
            for y in 0..domain.order() {
                if map[domain.add(x, y)] != codomain.add(map[x], map[y]) {
                    return Err(Error::InvalidHom { law: "additive", witness: vec![x, y] });
                }
            }
            for r in domain.ring().elements() {
                if map[domain.act(r, x)] != codomain.act(r, map[x]) {
                    return Err(Error::InvalidHom { law: "equivariant", witness: vec![r, x] });
                }
            }
        }
        Ok(Self::from_valid(domain.clone(), codomain.clone(), map))
    }

    pub(crate) fn from_valid(domain: FModule, codomain: FModule, map: Vec<Elem>) -> Self {
        ModuleHom { domain, codomain, map }
    }

    pub fn identity(m: &FModule) -> Self {
        Self::from_valid(m.clone(), m.clone(), (0..m.order()).collect())
    }

    pub fn domain(&self) -> &FModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FModule {
        &self.codomain
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_surjective()
    }

    /// Domain indices sent to zero.
    pub fn kernel(&self) -> Vec<Elem> {
        (0..self.domain.order()).filter(|&x| self.map[x] == self.codomain.zero()).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.codomain != other.domain {
            return Err(Error::invalid("composition of non-matching module homs"));
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(Self::from_valid(self.domain.clone(), other.codomain.clone(), map))
    }
}

/// A section `t` of a surjection `s`, i.e. `s ∘ t = id`.
#[derive(Debug, Clone)]
pub struct SplitWitness {
    pub section: ModuleHom,
}

fn bits(mask: &[bool]) -> Vec<u64> {
    let mut w = vec![0u64; mask.len().div_ceil(64)];
    for (i, &b) in mask.iter().enumerate() {
        if b {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

fn check_sizes(m: &FModule, n: &FModule, caps: &Caps) -> Result<()> {
    if !m.ring().same_ring(n.ring()) {
        return Err(Error::invalid("modules over different rings"));
    }
    if m.order() > caps.max_module_order || n.order() > caps.max_module_order {
        return Err(Error::ResourceLimit { what: "module order", limit: caps.max_module_order });
    }
    Ok(())
}

/// Drives the generator search over `R`-linear maps `M → N`.
///
/// A candidate image `c` for generator `g` must satisfy `ord(c) | ord(g)`
/// and `Ann(g) ⊆ Ann(c)`; with `iso` both are required with equality and
/// the map must be injective.
fn search_module_homs<V>(m: &FModule, n: &FModule, caps: &Caps, iso: bool, mut visit: V) -> Result<()>
where
    V: FnMut(&[Elem]) -> ControlFlow<()>,
{
    check_sizes(m, n, caps)?;
    let (dom, cod) = (m.group(), n.group());
    let gens = dom.generating_sequence(caps.max_generators)?;
    let n_orders = cod.element_orders();
    let n_ann: Vec<Vec<u64>> = (0..n.order()).map(|x| bits(&n.annihilator_mask(x))).collect();
    let candidates = gens
        .iter()
        .map(|&g| {
            let d = m.additive_order(g);
            let ann_g = bits(&m.annihilator_mask(g));
            (0..n.order())
                .filter(|&c| {
                    if iso {
                        n_orders[c] == d && n_ann[c] == ann_g
                    } else {
                        d.is_multiple_of(n_orders[c]) && ann_g.iter().zip(&n_ann[c]).all(|(a, b)| a & !b == 0)
                    }
                })
                .collect()
        })
        .collect();
    let ext = Extension { dom, cod, gens, candidates, injective: iso, node_limit: caps.max_candidates };
    let ring = m.ring();
    ext.run(
        |pm| {
            pm.assigned().iter().all(|&x| {
                let fx = pm.get(x).unwrap();
                ring.elements().all(|r| match pm.get(m.act(r, x)) {
                    Some(v) => v == n.act(r, fx),
                    None => true,
                })
            })
        },
        &mut visit,
    )
}

/// All `R`-linear maps `M → N` in lexicographic order of generator images.
pub fn enumerate_module_homs(m: &FModule, n: &FModule, caps: &Caps) -> Result<Vec<ModuleHom>> {
    let mut out = Vec::new();
    search_module_homs(m, n, caps, false, |map| {
        out.push(ModuleHom::from_valid(m.clone(), n.clone(), map.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `Hom_R(M, N)` materialized as an `R`-module.
#[derive(Debug, Clone)]
pub struct HomObject {
    domain: FModule,
    codomain: FModule,
    maps: Vec<Vec<Elem>>,
    lookup: HashMap<Vec<Elem>, usize>,
    module: FModule,
}

impl HomObject {
    pub fn module(&self) -> &FModule {
        &self.module
    }

    pub fn domain(&self) -> &FModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FModule {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The map with index `i` in the module.
    pub fn map(&self, i: usize) -> &[Elem] {
        &self.maps[i]
    }

    pub fn hom(&self, i: usize) -> ModuleHom {
        ModuleHom::from_valid(self.domain.clone(), self.codomain.clone(), self.maps[i].clone())
    }

    pub fn index_of(&self, map: &[Elem]) -> Option<usize> {
        self.lookup.get(map).copied()
    }

    /// The same additive group with a different scalar ring. `act(s, h)`
    /// returns the image list of `s·h`, which must again be one of the homs.
    pub fn with_action<F>(&self, ring: &FiniteRing, label: impl Into<String>, act: F) -> Result<FModule>
    where
        F: Fn(Elem, &[Elem]) -> Vec<Elem>,
    {
        let k = self.maps.len();
        let mut action = Vec::with_capacity(ring.order() * k);
        for s in ring.elements() {
            for h in &self.maps {
                let image = act(s, h);
                let idx = self
                    .index_of(&image)
                    .ok_or_else(|| Error::invalid("twisted action leaves the hom set"))?;
                action.push(idx);
            }
        }
        FModule::new(ring, k, self.module.inner.add.clone(), self.module.zero(), action, label)
    }
}

pub fn hom_object(m: &FModule, n: &FModule, caps: &Caps) -> Result<HomObject> {
    let homs = enumerate_module_homs(m, n, caps)?;
    if homs.len() > caps.max_module_order {
        return Err(Error::ResourceLimit { what: "hom object order", limit: caps.max_module_order });
    }
    let maps: Vec<Vec<Elem>> = homs.into_iter().map(|h| h.map).collect();
    let lookup: HashMap<Vec<Elem>, usize> = maps.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let k = maps.len();
    let idx = |v: Vec<Elem>| lookup[&v];
    let mut add = Vec::with_capacity(k * k);
    for f in &maps {
        for g in &maps {
            add.push(idx(f.iter().zip(g).map(|(&a, &b)| n.add(a, b)).collect()));
        }
    }
    let ring = m.ring();
    let mut action = Vec::with_capacity(ring.order() * k);
    for r in ring.elements() {
        for f in &maps {
            action.push(idx(f.iter().map(|&y| n.act(r, y)).collect()));
        }
    }
    let zero = idx(vec![n.zero(); m.order()]);
    let module = FModule::new(ring, k, add, zero, action, format!("Hom({}, {})", m.label(), n.label()))?;
    Ok(HomObject { domain: m.clone(), codomain: n.clone(), maps, lookup, module })
}

/// `π: B → Hom_B(J, J)`, `π(b)(j) = bj`, with its target Hom-object.
#[derive(Debug, Clone)]
pub struct MultiplicationMap {
    pub endomorphisms: HomObject,
    pub map: ModuleHom,
}

pub fn multiplication_map(ring: &FiniteRing, ideal: &Ideal, caps: &Caps) -> Result<MultiplicationMap> {
    let jm = FModule::from_ideal(ring, ideal)?;
    let ends = hom_object(&jm, &jm, caps)?;
    let pos = |x: Elem| ideal.position(x).unwrap();
    let mut map = Vec::with_capacity(ring.order());
    for b in ring.elements() {
        let image: Vec<Elem> = ideal.elements().iter().map(|&j| pos(ring.mul(b, j))).collect();
        map.push(ends.index_of(&image).ok_or_else(|| Error::invalid("multiplication is not a hom"))?);
    }
    let pi = ModuleHom::from_valid(FModule::regular(ring), ends.module().clone(), map);
    let ann = annihilator(ring, ideal.elements())?;
    if pi.kernel() != ann.elements() {
        return Err(Error::OracleDisagreement(format!(
            "ker(pi) = {:?} but Ann(J) = {:?}",
            pi.kernel(),
            ann.elements()
        )));
    }
    Ok(MultiplicationMap { endomorphisms: ends, map: pi })
}

/// A hom `t: N → M` with `s ∘ t = id_N` for the surjection `s: M → N`.
pub fn find_section(s: &ModuleHom, caps: &Caps) -> Result<Option<SplitWitness>> {
    if !s.is_surjective() {
        return Err(Error::invalid("find_section needs a surjection"));
    }
    let (m, n) = (s.domain(), s.codomain());
    let mut found = None;
    search_module_homs(n, m, caps, false, |t| {
        if (0..n.order()).all(|y| s.apply(t[y]) == y) {
            found = Some(t.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found.map(|t| SplitWitness { section: ModuleHom::from_valid(n.clone(), m.clone(), t) }))
}

/// A bijective `R`-linear map `M → N` if one exists.
///
/// Cheap invariants (order, multiset of additive orders, per-element
/// annihilator sizes) rule out most non-isomorphic pairs before searching.
pub fn module_isomorphic(m: &FModule, n: &FModule, caps: &Caps) -> Result<Option<ModuleHom>> {
    if !m.ring().same_ring(n.ring()) {
        return Err(Error::invalid("modules over different rings"));
    }
    if m.order() != n.order() || m.invariant_profile() != n.invariant_profile() {
        return Ok(None);
    }
    let mut found = None;
    search_module_homs(m, n, caps, true, |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|map| ModuleHom::from_valid(m.clone(), n.clone(), map)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn ideal_modules() {
        let z6 = z(6);
        let m = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[2]).unwrap()).unwrap();
        assert_eq!(m.order(), 3);
        assert!(FModule::from_ideal(&z6, &Ideal::zero(&z6)).unwrap().is_zero());
        let z4 = z(4);
        let t = FModule::from_ideal(&z4, &Ideal::generated(&z4, &[2]).unwrap()).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.act(2, 1), t.zero());
    }

    #[test]
    fn modules_via_homs() {
        let z6 = z(6);
        assert_eq!(FModule::via_hom(&RingHom::identity(&z6)), FModule::regular(&z6));
        let red = RingHom::reduction(&z(4), &z(2)).unwrap();
        let m = FModule::via_hom(&red);
        assert_eq!(m.act(2, 1), 0);
        assert_eq!(m.act(3, 1), 1);
        let p = FiniteRing::product(&z(2), &z(2)).ring;
        let diag = RingHom::new(&z(2), &p, vec![0, 3]).unwrap();
        assert_eq!(FModule::via_hom(&diag).order(), 4);
    }

    #[test]
    fn restriction_along_identity_is_identity() {
        let z6 = z(6);
        let m = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[3]).unwrap()).unwrap();
        assert_eq!(m.restrict_scalars(&RingHom::identity(&z6)).unwrap(), m);
    }

    #[test]
    fn module_validation_rejects_bad_action() {
        let z2 = z(2);
        // 1·m must be m
        let err = FModule::new(&z2, 2, vec![0, 1, 1, 0], 0, vec![0, 0, 0, 0], "bad").unwrap_err();
        assert!(matches!(err, Error::InvalidModule { .. }));
    }

    #[test]
    fn hom_counts() {
        let z6 = z(6);
        let r = FModule::regular(&z6);
        assert_eq!(enumerate_module_homs(&r, &r, &caps()).unwrap().len(), 6);
        let z4 = z(4);
        let two = FModule::from_ideal(&z4, &Ideal::generated(&z4, &[2]).unwrap()).unwrap();
        let quot = FModule::via_hom(&RingHom::reduction(&z4, &z(2)).unwrap());
        assert_eq!(enumerate_module_homs(&two, &quot, &caps()).unwrap().len(), 2);
        let zero = FModule::zero_module(&z4);
        assert_eq!(enumerate_module_homs(&zero, &quot, &caps()).unwrap().len(), 1);
    }

    #[test]
    fn hom_objects() {
        let z6 = z(6);
        let j = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[2]).unwrap()).unwrap();
        assert_eq!(hom_object(&j, &j, &caps()).unwrap().module().order(), 3);
        let zero = FModule::zero_module(&z6);
        assert!(hom_object(&zero, &j, &caps()).unwrap().module().is_zero());
        let ann = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[3]).unwrap()).unwrap();
        assert!(hom_object(&j, &ann, &caps()).unwrap().module().is_zero());
    }

    #[test]
    fn multiplication_maps() {
        let z6 = z(6);
        let j = Ideal::generated(&z6, &[2]).unwrap();
        let pi = multiplication_map(&z6, &j, &caps()).unwrap();
        assert!(pi.map.is_surjective());
        assert_eq!(pi.map.kernel(), vec![0, 3]);

        let z4 = z(4);
        let pi = multiplication_map(&z4, &Ideal::generated(&z4, &[2]).unwrap(), &caps()).unwrap();
        assert_eq!(pi.map.kernel(), vec![0, 2]);

        let pi = multiplication_map(&z4, &Ideal::zero(&z4), &caps()).unwrap();
        assert_eq!(pi.endomorphisms.len(), 1);
        assert_eq!(pi.map.kernel(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn sections() {
        let z6 = z(6);
        let pi = multiplication_map(&z6, &Ideal::generated(&z6, &[2]).unwrap(), &caps()).unwrap();
        let t = find_section(&pi.map, &caps()).unwrap().expect("splits");
        assert!(t.section.then(&pi.map).unwrap().map().iter().enumerate().all(|(i, &y)| i == y));

        let z4 = z(4);
        let red = RingHom::reduction(&z4, &z(2)).unwrap();
        let q = FModule::via_hom(&red);
        let s = ModuleHom::new(&FModule::regular(&z4), &q, red.map().to_vec()).unwrap();
        assert!(find_section(&s, &caps()).unwrap().is_none());

        let id = ModuleHom::identity(&q);
        assert_eq!(find_section(&id, &caps()).unwrap().unwrap().section.map(), id.map());
    }

    #[test]
    fn direct_sums() {
        let z6 = z(6);
        let j = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[2]).unwrap()).unwrap();
        let a = FModule::from_ideal(&z6, &Ideal::generated(&z6, &[3]).unwrap()).unwrap();
        let s = j.direct_sum(&a).unwrap();
        assert_eq!(s.order(), 6);
        let r = FModule::regular(&z6);
        assert!(module_isomorphic(&s, &r, &caps()).unwrap().is_some());
        let zero = FModule::zero_module(&z6);
        assert!(module_isomorphic(&j.direct_sum(&zero).unwrap(), &j, &caps()).unwrap().is_some());
    }

    #[test]
    fn isomorphisms() {
        let z4 = z(4);
        let r = FModule::regular(&z4);
        assert_eq!(module_isomorphic(&r, &r, &caps()).unwrap().unwrap().map(), &[0, 1, 2, 3]);
        let two = FModule::from_ideal(&z4, &Ideal::generated(&z4, &[2]).unwrap()).unwrap();
        let quot = FModule::via_hom(&RingHom::reduction(&z4, &z(2)).unwrap());
        assert!(module_isomorphic(&two, &quot, &caps()).unwrap().is_some());
        assert!(module_isomorphic(&r, &two.direct_sum(&quot).unwrap(), &caps()).unwrap().is_none());
    }

    #[test]
    fn size_caps() {
        let z6 = z(6);
        let r = FModule::regular(&z6);
        let tight = Caps { max_module_order: 4, ..Caps::default() };
        assert!(enumerate_module_homs(&r, &r, &tight).unwrap_err().is_resource_limit());
    }
}
