//! Finite commutative rings with identity, stored as dense Cayley tables.
//!
//! Elements are indices `0..order`. A [`FiniteRing`] is a cheap handle to
//! immutable, validated tables; cloning it shares the tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::Ideal;

/// Index of an element relative to one specific ring.
pub type Elem = usize;

#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingData>,
}

struct RingData {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    label: String,
    cache: RingCache,
}

/// Lazily computed facts about a ring. Only successful computations are
/// stored, so a resource-limited attempt can be retried with larger caps.
#[derive(Default)]
pub(crate) struct RingCache {
    pub(crate) ideals: OnceLock<Vec<Vec<Elem>>>,
    pub(crate) double_annihilator: OnceLock<Option<Vec<Elem>>>,
    pub(crate) baer_regular: OnceLock<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    TableShape,
    Closure,
    AddCommutative,
    AddAssociative,
    AddIdentity,
    AddInverse,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    Distributive,
    ZeroEqualsOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// First failing tuple in lexicographic order.
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<Elem>) {
        self.violations.push(Violation { axiom, witness });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {:?}", v.axiom, v.witness))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every commutative-ring-with-identity axiom on flat tables.
pub fn validate_tables(
    order: usize,
    add: &[Elem],
    mul: &[Elem],
    zero: Elem,
    one: Elem,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = order;
    if n == 0 || add.len() != n * n || mul.len() != n * n {
        report.push(Axiom::TableShape, vec![add.len(), mul.len()]);
        return report;
    }
    if zero >= n || one >= n {
        report.push(Axiom::Closure, vec![zero, one]);
        return report;
    }
    if let Some(i) = add.iter().chain(mul.iter()).position(|&v| v >= n) {
        let i = i % (n * n);
        report.push(Axiom::Closure, vec![i / n, i % n]);
        return report;
    }
    let a = |x: Elem, y: Elem| add[x * n + y];
    let m = |x: Elem, y: Elem| mul[x * n + y];

    let first_pair = |p: &dyn Fn(Elem, Elem) -> bool| {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !p(x, y))
    };
    let first_triple = |p: &dyn Fn(Elem, Elem, Elem) -> bool| {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !p(x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    };

    if let Some((x, y)) = first_pair(&|x, y| a(x, y) == a(y, x)) {
        report.push(Axiom::AddCommutative, vec![x, y]);
    }
    if let Some((x, y, z)) = first_triple(&|x, y, z| a(a(x, y), z) == a(x, a(y, z))) {
        report.push(Axiom::AddAssociative, vec![x, y, z]);
    }
    if let Some(x) = (0..n).find(|&x| a(zero, x) != x || a(x, zero) != x) {
        report.push(Axiom::AddIdentity, vec![x]);
    }
    if let Some(x) = (0..n).find(|&x| !(0..n).any(|y| a(x, y) == zero)) {
        report.push(Axiom::AddInverse, vec![x]);
    }
    let mul_comm = first_pair(&|x, y| m(x, y) == m(y, x));
    if let Some((x, y)) = mul_comm {
        report.push(Axiom::MulCommutative, vec![x, y]);
    }
    if let Some((x, y, z)) = first_triple(&|x, y, z| m(m(x, y), z) == m(x, m(y, z))) {
        report.push(Axiom::MulAssociative, vec![x, y, z]);
    }
    if let Some(x) = (0..n).find(|&x| m(one, x) != x || m(x, one) != x) {
        report.push(Axiom::MulIdentity, vec![x]);
    }
    let left = first_triple(&|x, y, z| m(x, a(y, z)) == a(m(x, y), m(x, z)));
    let right = if mul_comm.is_none() {
        None
    } else {
        first_triple(&|x, y, z| m(a(y, z), x) == a(m(y, x), m(z, x)))
    };
    if let Some((x, y, z)) = left.or(right) {
        report.push(Axiom::Distributive, vec![x, y, z]);
    }
    if n > 1 && zero == one {
        report.push(Axiom::ZeroEqualsOne, vec![zero]);
    }
    report
}

pub fn validate_ring(ring: &FiniteRing) -> ValidationReport {
    let d = &ring.inner;
    validate_tables(d.order, &d.add, &d.mul, d.zero, d.one)
}

/// A product ring together with its two coordinate projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub ring: FiniteRing,
    pub left: RingHom,
    pub right: RingHom,
}

impl FiniteRing {
    /// Builds a ring from flat row-major tables, rejecting any axiom failure.
    pub fn from_flat(
        order: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<Self> {
        let report = validate_tables(order, &add, &mul, zero, one);
        if !report.is_empty() {
            return Err(Error::InvalidRing(report));
        }
        Ok(Self::from_valid(order, add, mul, zero, one, label.into()))
    }

    pub(crate) fn from_valid(
        order: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        label: String,
    ) -> Self {
        let neg = (0..order)
            .map(|x| (0..order).find(|&y| add[x * order + y] == zero).unwrap())
            .collect();
        FiniteRing {
            inner: Arc::new(RingData {
                order,
                add,
                mul,
                neg,
                zero,
                one,
                label,
                cache: RingCache::default(),
            }),
        }
    }

    pub fn from_tables(
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = add.len();
        let square = |t: &Vec<Vec<Elem>>| t.len() == n && t.iter().all(|row| row.len() == n);
        if !square(&add) || !square(&mul) {
            let mut report = ValidationReport::default();
            report.push(Axiom::TableShape, vec![add.len(), mul.len()]);
            return Err(Error::InvalidRing(report));
        }
        let flat = |t: Vec<Vec<Elem>>| t.into_iter().flatten().collect::<Vec<_>>();
        Self::from_flat(n, flat(add), flat(mul), zero, one, label)
    }

    /// Z/nZ with element `i` coded as index `i`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("zmod requires n >= 1"));
        }
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        Ok(Self::from_valid(n, add, mul, 0, 1 % n, format!("zmod {n}")))
    }

    /// `R × S` with the pair `(r, s)` coded as `r·|S| + s`.
    pub fn product(r: &FiniteRing, s: &FiniteRing) -> Product {
        let (nr, ns) = (r.order(), s.order());
        let n = nr * ns;
        let split = |i: Elem| (i / ns, i % ns);
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xr, xs) = split(x);
            for y in 0..n {
                let (yr, ys) = split(y);
                add.push(r.add(xr, yr) * ns + s.add(xs, ys));
                mul.push(r.mul(xr, yr) * ns + s.mul(xs, ys));
            }
        }
        let ring = Self::from_valid(
            n,
            add,
            mul,
            r.zero() * ns + s.zero(),
            r.one() * ns + s.one(),
            format!("product({}, {})", r.label(), s.label()),
        );
        let left = RingHom::from_valid(ring.clone(), r.clone(), (0..n).map(|i| i / ns).collect());
        let right = RingHom::from_valid(ring.clone(), s.clone(), (0..n).map(|i| i % ns).collect());
        Product { ring, left, right }
    }

    /// The subring on `elements`, re-indexed in ascending order of the
    /// original indices. Returns the ring and its inclusion into `self`.
    pub fn subring(&self, elements: &[Elem], label: impl Into<String>) -> Result<(FiniteRing, RingHom)> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &e) in elems.iter().enumerate() {
            if e >= self.order() {
                return Err(Error::invalid(format!("element {e} out of range")));
            }
            pos[e] = i;
        }
        let k = elems.len();
        if pos[self.zero()] == usize::MAX || pos[self.one()] == usize::MAX {
            return Err(Error::invalid("subring must contain zero and one"));
        }
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &x in &elems {
            for &y in &elems {
                let (s, p) = (pos[self.add(x, y)], pos[self.mul(x, y)]);
                if s == usize::MAX || p == usize::MAX || pos[self.neg(x)] == usize::MAX {
                    return Err(Error::invalid("subset is not closed under ring operations"));
                }
                add.push(s);
                mul.push(p);
            }
        }
        let sub = Self::from_flat(k, add, mul, pos[self.zero()], pos[self.one()], label)?;
        let incl = RingHom::from_valid(sub.clone(), self.clone(), elems);
        Ok((sub, incl))
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn zero(&self) -> Elem {
        self.inner.zero
    }

    pub fn one(&self) -> Elem {
        self.inner.one
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> FiniteRing {
        let d = &self.inner;
        Self::from_valid(d.order, d.add.clone(), d.mul.clone(), d.zero, d.one, label.into())
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.inner.add[x * self.inner.order + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.inner.mul[x * self.inner.order + y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.inner.neg[x]
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.inner.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.inner.mul
    }

    pub(crate) fn cache(&self) -> &RingCache {
        &self.inner.cache
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order()
    }

    pub(crate) fn check_elem(&self, x: Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "element {x} out of range for {} (order {})",
                self.label(),
                self.order()
            )))
        }
    }

    /// Same handle or identical tables.
    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    /// All `e` with `e·e = e`, ascending.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.elements().any(|y| self.mul(x, y) == self.one())
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        self.nilpotency_index(x).is_some()
    }

    /// Least `k ≥ 1` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: Elem) -> Option<usize> {
        let mut p = x;
        for k in 1..=self.order() {
            if p == self.zero() {
                return Some(k);
            }
            p = self.mul(p, x);
        }
        None
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// `k·x` for a non-negative integer `k`.
    pub fn multiple(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.zero(), |acc, _| self.add(acc, x))
    }

    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one())
    }

    /// Multiset of additive orders as `order -> count`.
    pub fn additive_order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for x in self.elements() {
            *m.entry(self.additive_order(x)).or_insert(0) += 1;
        }
        m
    }

    /// True iff the ring has exactly one maximal ideal.
    ///
    /// The lattice answer is cross-checked against "only idempotents are 0
    /// and 1"; the two agree for every finite commutative ring.
    pub fn is_local(&self) -> Result<bool> {
        if self.order() < 2 {
            return Err(Error::invalid("locality is undefined for the zero ring"));
        }
        let by_lattice = crate::ideal::maximal_ideals(self)?.len() == 1;
        let by_idempotents = self.idempotents().len() == 2;
        if by_lattice != by_idempotents {
            return Err(Error::OracleDisagreement(format!(
                "{}: maximal-ideal locality {by_lattice} vs idempotent test {by_idempotents}",
                self.label()
            )));
        }
        Ok(by_lattice)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.inner, &other.inner);
        a.order == b.order && a.zero == b.zero && a.one == b.one && a.add == b.add && a.mul == b.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.label(), self.order())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `R/I` with cosets represented by their least element index, plus the
/// quotient map. Quotient elements are numbered by ascending representative.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingHom)> {
    if !ideal.ring().same_ring(ring) {
        return Err(Error::invalid("ideal belongs to a different ring"));
    }
    let n = ring.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &i in ideal.elements() {
            class[ring.add(x, i)] = c;
        }
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &x in &reps {
        for &y in &reps {
            add.push(class[ring.add(x, y)]);
            mul.push(class[ring.mul(x, y)]);
        }
    }
    let label = format!("{}/{:?}", ring.label(), ideal.elements());
    let q = FiniteRing::from_flat(k, add, mul, class[ring.zero()], class[ring.one()], label)?;
    let p = RingHom::from_valid(ring.clone(), q.clone(), class);
    Ok((q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2t() -> FiniteRing {
        // 0, 1, t, 1+t coded as a + 2b
        let n = 4;
        let add: Vec<Elem> = (0..16).map(|i| (i / n) ^ (i % n)).collect();
        let mul = (0..16)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
                (a & c) | ((((a & d) ^ (b & c)) & 1) << 1)
            })
            .collect();
        FiniteRing::from_flat(4, add, mul, 0, 1, "Z2[t]/(t^2)").unwrap()
    }

    #[test]
    fn zmod_basics() {
        let z1 = FiniteRing::zmod(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.zero(), z1.one());
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.mul(4, 4), 4);
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.add(2, 2), 0);
        assert_eq!(z4.mul(2, 2), 0);
        assert!(matches!(FiniteRing::zmod(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn product_identity_and_idempotents() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let z3 = FiniteRing::zmod(3).unwrap();
        let p = FiniteRing::product(&z2, &z3);
        assert_eq!(p.ring.order(), 6);
        let one = 3 + 1;
        assert_eq!(p.ring.one(), one);
        assert_eq!(p.ring.mul(one, one), one);

        let p22 = FiniteRing::product(&z2, &z2);
        assert_eq!(p22.ring.idempotents(), vec![0, 1, 2, 3]);
        assert!(p22.left.is_surjective() && p22.right.is_surjective());
    }

    #[test]
    fn table_fixture_validates() {
        let r = z2t();
        assert!(validate_ring(&r).is_empty());
        assert_eq!(r.mul(2, 2), 0);
        assert!(r.is_local().unwrap());
    }

    #[test]
    fn corrupted_z4_is_rejected() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let mut mul = z4.mul_table().to_vec();
        mul[2 * 4 + 2] = 1;
        let report = validate_tables(4, z4.add_table(), &mul, 0, 1);
        assert!(!report.is_empty());
        assert!(report.violates(Axiom::Distributive) || report.violates(Axiom::MulAssociative));
        let err = FiniteRing::from_flat(4, z4.add_table().to_vec(), mul, 0, 1, "bad").unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    #[test]
    fn ragged_tables_rejected() {
        let err = FiniteRing::from_tables(vec![vec![0, 1], vec![1]], vec![vec![0, 0], vec![0, 1]], 0, 1, "x")
            .unwrap_err();
        match err {
            Error::InvalidRing(r) => assert!(r.violates(Axiom::TableShape)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn zero_ring_is_valid_but_not_local() {
        let z1 = FiniteRing::zmod(1).unwrap();
        assert!(validate_ring(&z1).is_empty());
        assert!(matches!(z1.is_local(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn idempotents_of_small_rings() {
        assert_eq!(FiniteRing::zmod(6).unwrap().idempotents(), vec![0, 1, 3, 4]);
        assert_eq!(FiniteRing::zmod(4).unwrap().idempotents(), vec![0, 1]);
    }

    #[test]
    fn locality_of_small_rings() {
        assert!(FiniteRing::zmod(4).unwrap().is_local().unwrap());
        assert!(!FiniteRing::zmod(6).unwrap().is_local().unwrap());
    }

    #[test]
    fn quotients() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let i = Ideal::generated(&z6, &[2]).unwrap();
        let (q, p) = quotient_ring(&z6, &i).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q, FiniteRing::zmod(2).unwrap());
        assert_eq!(p.kernel().elements(), i.elements());

        let z4 = FiniteRing::zmod(4).unwrap();
        let (q0, p0) = quotient_ring(&z4, &Ideal::zero(&z4)).unwrap();
        assert_eq!(q0, z4);
        assert_eq!(p0.map(), &[0, 1, 2, 3]);
        let (q1, _) = quotient_ring(&z4, &Ideal::unit(&z4)).unwrap();
        assert_eq!(q1.order(), 1);
    }

    #[test]
    fn subring_of_product_diagonal() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let p = FiniteRing::product(&z2, &z2);
        let (d, incl) = p.ring.subring(&[0, 3], "diag").unwrap();
        assert_eq!(d, z2);
        assert_eq!(incl.map(), &[0, 3]);
        assert!(p.ring.subring(&[0, 2], "x").is_err());
    }
}
