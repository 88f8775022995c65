//! Verifiers for the self-injectivity and quasi-Frobenius statements about
//! amalgamated algebras.
//!
//! A verifier gates on the statement's hypotheses, computes both sides only
//! when they all hold, and records a [`Verdict`]. Inapplicable verdicts carry
//! `consistent = true` (the implication holds vacuously) and never count as
//! counterexamples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::amalgam::AmalgamRing;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals_capped, annihilator, idempotent_generator, Ideal};
use crate::injective::{baer_failure, double_annihilator_failure, BaerFailure};
use crate::module::{find_section, hom_object, module_isomorphic, multiplication_map, FModule, ModuleHom};
use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    PropHomIso,
    PropDualIso,
    RemarkIdempotent,
    ThmSelfinjChar,
    CorLocalNever,
    CorDuplication,
    ThmQfChar,
    LemmaProductQf,
    LemmaDescentQf,
    LemmaHomIsoSurjective,
    PropLocalSurjectiveQf,
    LemmaQfEquiv,
}

impl Statement {
    pub const ALL: [Statement; 12] = [
        Statement::PropHomIso,
        Statement::PropDualIso,
        Statement::RemarkIdempotent,
        Statement::ThmSelfinjChar,
        Statement::CorLocalNever,
        Statement::CorDuplication,
        Statement::ThmQfChar,
        Statement::LemmaProductQf,
        Statement::LemmaDescentQf,
        Statement::LemmaHomIsoSurjective,
        Statement::PropLocalSurjectiveQf,
        Statement::LemmaQfEquiv,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::PropHomIso => "prop-hom-iso",
            Statement::PropDualIso => "prop-dual-iso",
            Statement::RemarkIdempotent => "remark-idempotent",
            Statement::ThmSelfinjChar => "thm-selfinj-char",
            Statement::CorLocalNever => "cor-local-never",
            Statement::CorDuplication => "cor-duplication",
            Statement::ThmQfChar => "thm-qf-char",
            Statement::LemmaProductQf => "lemma-product-qf",
            Statement::LemmaDescentQf => "lemma-descent-qf",
            Statement::LemmaHomIsoSurjective => "lemma-hom-iso-surjective",
            Statement::PropLocalSurjectiveQf => "prop-local-surjective-qf",
            Statement::LemmaQfEquiv => "lemma-qf-equiv",
        }
    }

    pub fn from_id(id: &str) -> Option<Statement> {
        Statement::ALL.into_iter().find(|s| s.id() == id)
    }

    /// Whether this statement has anything to say about `instance`.
    pub fn accepts(self, instance: &Instance) -> bool {
        match (self, instance) {
            (Statement::RemarkIdempotent, Instance::Idempotent { .. }) => true,
            (Statement::LemmaProductQf, Instance::Product(_)) => true,
            (Statement::LemmaQfEquiv, Instance::Ring(_)) => true,
            (Statement::CorDuplication, Instance::Amalgam(w)) => is_duplication(w),
            (
                Statement::PropHomIso
                | Statement::PropDualIso
                | Statement::ThmSelfinjChar
                | Statement::CorLocalNever
                | Statement::ThmQfChar
                | Statement::LemmaDescentQf
                | Statement::LemmaHomIsoSurjective
                | Statement::PropLocalSurjectiveQf,
                Instance::Amalgam(_),
            ) => true,
            _ => false,
        }
    }

    /// Runs the verifier, or returns `None` if it does not accept `instance`.
    pub fn verify(self, instance: &Instance, caps: &Caps) -> Result<Option<Verdict>> {
        if !self.accepts(instance) {
            return Ok(None);
        }
        let v = match instance {
            Instance::Ring(r) => verify_qf_equivalence(r, caps)?,
            Instance::Product(f) => verify_product_qf(f, caps)?,
            Instance::Idempotent { ring, e } => verify_remark_idempotent(ring, *e, caps)?,
            Instance::Amalgam(w) => match self {
                Statement::PropHomIso => verify_prop_hom_iso(w, caps)?,
                Statement::PropDualIso => verify_prop_dual_iso(w, caps)?,
                Statement::ThmSelfinjChar => verify_selfinjective_characterization(w, caps)?,
                Statement::CorLocalNever => verify_local_never(w, caps)?,
                Statement::CorDuplication => verify_duplication(w.a_ring(), w.j_ideal(), caps)?,
                Statement::ThmQfChar => verify_qf_characterization(w, caps)?,
                Statement::LemmaDescentQf => verify_descent_qf(w, caps)?,
                Statement::LemmaHomIsoSurjective => verify_hom_iso_surjective_case(w, caps)?,
                Statement::PropLocalSurjectiveQf => verify_local_surjective_qf(w, caps)?,
                _ => unreachable!("accepts() filtered"),
            },
        };
        Ok(Some(v))
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The inputs a verifier can run on.
#[derive(Debug, Clone)]
pub enum Instance {
    Ring(FiniteRing),
    Amalgam(AmalgamRing),
    Idempotent { ring: FiniteRing, e: Elem },
    Product(Vec<FiniteRing>),
}

fn is_duplication(w: &AmalgamRing) -> bool {
    w.a_ring().same_ring(w.b_ring()) && w.hom().is_identity()
}

/// Which ring (or module) of an instance a witness talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// The amalgam itself.
    Amalgam,
    A,
    /// `B`, or `B` viewed as an `A`-module through `f` for module witnesses.
    B,
    /// The ring of a single-ring or idempotent instance (over itself for
    /// module witnesses).
    Ring,
    Product,
    Factor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `e² = e` and `eR` is exactly `ideal`.
    Idempotent { ring: Target, e: Elem, ideal: Vec<Elem> },
    /// No idempotent of the ring generates `ideal`.
    NoIdempotentGenerator { ring: Target, ideal: Vec<Elem> },
    /// `Ann(Ann(I)) ≠ I`.
    AnnihilatorFailure { ring: Target, ideal: Vec<Elem>, double_annihilator: Vec<Elem> },
    /// Every ideal equals its double annihilator.
    AnnihilatorHolds { ring: Target },
    /// A linear map from an ideal of the scalar ring that has no extension.
    BaerFailure { module: Target, ideal: Vec<Elem>, images: Vec<Elem> },
    Injective { module: Target },
    Isomorphism { map: Vec<Elem> },
    NotIsomorphic { lhs_order: usize, rhs_order: usize },
    Section { map: Vec<Elem> },
    NoSection { pi_surjective: bool },
    NonzeroHom { map: Vec<Elem> },
    ProperIdeal { ring: Target, ideal: Vec<Elem> },
    Combined { parts: Vec<Witness> },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Idempotent { .. } => "idempotent",
            Witness::NoIdempotentGenerator { .. } => "no-idempotent-generator",
            Witness::AnnihilatorFailure { .. } => "annihilator-failure",
            Witness::AnnihilatorHolds { .. } => "annihilator-holds",
            Witness::BaerFailure { .. } => "baer-failure",
            Witness::Injective { .. } => "injective",
            Witness::Isomorphism { .. } => "isomorphism",
            Witness::NotIsomorphic { .. } => "not-isomorphic",
            Witness::Section { .. } => "section",
            Witness::NoSection { .. } => "no-section",
            Witness::NonzeroHom { .. } => "nonzero-hom",
            Witness::ProperIdeal { .. } => "proper-ideal",
            Witness::Combined { .. } => "combined",
        }
    }

    fn informative(&self) -> bool {
        !matches!(self, Witness::AnnihilatorHolds { .. } | Witness::Injective { .. })
    }

    fn combine(mut parts: Vec<Witness>) -> Option<Witness> {
        match parts.len() {
            0 => None,
            1 => parts.pop(),
            _ => Some(Witness::Combined { parts }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One side of a claim: a truth value, or a module known by its order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Claim {
    Bool(bool),
    Module { order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub statement_id: String,
    pub hypotheses: Vec<Condition>,
    pub applicable: bool,
    pub lhs: Option<Claim>,
    pub rhs: Option<Claim>,
    #[serde(default)]
    pub rhs_clauses: Vec<Condition>,
    pub consistent: bool,
    pub witness: Option<Witness>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(statement: Statement) -> Self {
        Verdict {
            statement_id: statement.id().to_string(),
            hypotheses: Vec::new(),
            applicable: true,
            lhs: None,
            rhs: None,
            rhs_clauses: Vec::new(),
            consistent: true,
            witness: None,
            notes: Vec::new(),
        }
    }

    fn hypothesis(&mut self, name: &str, holds: bool) -> &mut Self {
        self.hypothesis_noted(name, holds, None)
    }

    fn hypothesis_noted(&mut self, name: &str, holds: bool, note: Option<String>) -> &mut Self {
        self.applicable &= holds;
        self.hypotheses.push(Condition { name: name.to_string(), holds, note });
        self
    }

    pub fn is_counterexample(&self) -> bool {
        self.applicable && !self.consistent
    }

    pub fn witness_kind(&self) -> &'static str {
        self.witness.as_ref().map_or("none", Witness::kind)
    }

    pub fn statement(&self) -> Option<Statement> {
        Statement::from_id(&self.statement_id)
    }

    /// Fills in an "lhs iff every rhs clause" conclusion.
    fn biconditional(&mut self, lhs: Clause, rhs: Vec<Clause>) {
        let r = rhs.iter().all(|c| c.holds);
        self.lhs = Some(Claim::Bool(lhs.holds));
        self.rhs = Some(Claim::Bool(r));
        self.consistent = lhs.holds == r;
        let witnesses = if self.consistent {
            if r {
                rhs.iter().filter_map(|c| c.witness.clone()).filter(Witness::informative).collect()
            } else {
                lhs.witness.clone().into_iter().collect()
            }
        } else {
            let mut parts: Vec<Witness> = lhs.witness.clone().into_iter().collect();
            parts.extend(rhs.iter().filter(|c| !r || !c.holds).filter_map(|c| c.witness.clone()));
            parts
        };
        self.witness = Witness::combine(witnesses);
        self.rhs_clauses = rhs.into_iter().map(Clause::into_condition).collect();
    }

    fn isomorphism(&mut self, lhs: &FModule, rhs: &FModule, caps: &Caps) -> Result<()> {
        self.lhs = Some(Claim::Module { order: lhs.order() });
        self.rhs = Some(Claim::Module { order: rhs.order() });
        match module_isomorphic(lhs, rhs, caps)? {
            Some(h) => self.witness = Some(Witness::Isomorphism { map: h.map().to_vec() }),
            None => {
                self.consistent = false;
                self.witness = Some(Witness::NotIsomorphic { lhs_order: lhs.order(), rhs_order: rhs.order() });
            }
        }
        Ok(())
    }
}

struct Clause {
    name: &'static str,
    holds: bool,
    note: Option<String>,
    witness: Option<Witness>,
}

impl Clause {
    fn into_condition(self) -> Condition {
        Condition { name: self.name.to_string(), holds: self.holds, note: self.note }
    }
}

fn self_injective_clause(name: &'static str, ring: &FiniteRing, target: Target, caps: &Caps) -> Result<Clause> {
    let si = crate::injective::self_injectivity(ring, caps)?;
    let witness = match &si.failing_ideal {
        None => Witness::AnnihilatorHolds { ring: target },
        Some(i) => Witness::AnnihilatorFailure {
            ring: target,
            ideal: i.elements().to_vec(),
            double_annihilator: double_annihilator(ring, i)?.elements().to_vec(),
        },
    };
    let note = si.baer_checked.then(|| "confirmed by Baer's criterion".to_string());
    Ok(Clause { name, holds: si.self_injective, note, witness: Some(witness) })
}

fn double_annihilator(ring: &FiniteRing, ideal: &Ideal) -> Result<Ideal> {
    annihilator(ring, annihilator(ring, ideal.elements())?.elements())
}

fn injective_clause(name: &'static str, module: &FModule, target: Target, caps: &Caps) -> Result<Clause> {
    let failure = baer_failure(module, caps)?;
    let witness = match &failure {
        None => Witness::Injective { module: target },
        Some(BaerFailure { ideal, images }) => {
            Witness::BaerFailure { module: target, ideal: ideal.elements().to_vec(), images: images.clone() }
        }
    };
    Ok(Clause { name, holds: failure.is_none(), note: None, witness: Some(witness) })
}

fn idempotent_clause(name: &'static str, ring: &FiniteRing, ideal: &Ideal, target: Target) -> Clause {
    let e = idempotent_generator(ring, ideal);
    let witness = match e {
        Some(e) => Witness::Idempotent { ring: target, e, ideal: ideal.elements().to_vec() },
        None => Witness::NoIdempotentGenerator { ring: target, ideal: ideal.elements().to_vec() },
    };
    Clause { name, holds: e.is_some(), note: None, witness: Some(witness) }
}

fn noetherian_clause() -> Clause {
    Clause { name: "f(A)+J-noetherian", holds: true, note: Some("trivially true (finite)".into()), witness: None }
}

fn nontrivial(w: &AmalgamRing) -> bool {
    w.a_ring().order() >= 2 && w.b_ring().order() >= 2
}

fn amalgam_gates(v: &mut Verdict, w: &AmalgamRing) {
    v.hypothesis("nonzero-rings", nontrivial(w))
        .hypothesis("f-injective", w.f_injective())
        .hypothesis("j-in-f(A)", w.j_in_image());
}

/// `Hom_W(A, W)` with `A` a `W`-module through the modulation map, viewed
/// as an `A`-module through `a ↦ (a, f(a))`.
pub fn hom_a_into_amalgam(w: &AmalgamRing, caps: &Caps) -> Result<FModule> {
    let a = FModule::via_hom(&w.modulation_map());
    let homs = hom_object(&a, &FModule::regular(w.ring()), caps)?;
    homs.module().restrict_scalars(&w.diagonal())
}

/// `J ⊕ Ann_B(J)` as an `A`-module through `f`.
pub fn j_plus_annihilator(w: &AmalgamRing) -> Result<FModule> {
    let b = w.b_ring();
    let ann = annihilator(b, w.j_ideal().elements())?;
    FModule::from_ideal(b, w.j_ideal())?
        .direct_sum(&FModule::from_ideal(b, &ann)?)?
        .restrict_scalars(w.hom())
}

/// `J` as an `A`-module through `f`.
pub fn j_over_a(w: &AmalgamRing) -> Result<FModule> {
    FModule::from_ideal(w.b_ring(), w.j_ideal())?.restrict_scalars(w.hom())
}

/// `Hom_A(W, J ⊕ Ann_B(J))` made into a `W`-module by `(s·φ)(y) = φ(sy)`.
pub fn dual_module(w: &AmalgamRing, caps: &Caps) -> Result<FModule> {
    let w_over_a = FModule::regular(w.ring()).restrict_scalars(&w.diagonal())?;
    let homs = hom_object(&w_over_a, &j_plus_annihilator(w)?, caps)?;
    let r = w.ring().clone();
    homs.with_action(w.ring(), "Hom_A(W, J (+) Ann(J))", move |s, h| r.elements().map(|y| h[r.mul(s, y)]).collect())
}

#[derive(Debug)]
struct SplitCheck {
    pi_surjective: bool,
    section: Option<ModuleHom>,
    nonzero_hom: Option<ModuleHom>,
}

fn split_check(b: &FiniteRing, j: &Ideal, caps: &Caps) -> Result<SplitCheck> {
    let pi = multiplication_map(b, j, caps)?.map;
    let pi_surjective = pi.is_surjective();
    let section = if pi_surjective { find_section(&pi, caps)?.map(|s| s.section) } else { None };
    let ann = annihilator(b, j.elements())?;
    let homs = hom_object(&FModule::from_ideal(b, j)?, &FModule::from_ideal(b, &ann)?, caps)?;
    let nonzero_hom = (0..homs.len()).map(|i| homs.hom(i)).find(|h| h.map().iter().any(|&x| x != h.codomain().zero()));
    Ok(SplitCheck { pi_surjective, section, nonzero_hom })
}

impl SplitCheck {
    fn record(&self, v: &mut Verdict) {
        v.hypothesis_noted(
            "pi-splits",
            self.section.is_some(),
            (!self.pi_surjective).then(|| "pi is not surjective".to_string()),
        );
        v.hypothesis("hom(J,Ann(J))-zero", self.nonzero_hom.is_none());
    }
}

pub fn verify_prop_hom_iso(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::PropHomIso);
    amalgam_gates(&mut v, w);
    if v.applicable {
        v.isomorphism(&hom_a_into_amalgam(w, caps)?, &j_plus_annihilator(w)?, caps)?;
    }
    Ok(v)
}

pub fn verify_prop_dual_iso(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::PropDualIso);
    amalgam_gates(&mut v, w);
    if !v.applicable {
        return Ok(v);
    }
    split_check(w.b_ring(), w.j_ideal(), caps)?.record(&mut v);
    if v.applicable {
        v.isomorphism(&dual_module(w, caps)?, &FModule::regular(w.ring()), caps)?;
    }
    Ok(v)
}

pub fn verify_remark_idempotent(b: &FiniteRing, e: Elem, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::RemarkIdempotent);
    b.check_elem(e)?;
    v.hypothesis("nonzero-ring", b.order() >= 2)
        .hypothesis("e-idempotent", b.is_idempotent(e))
        .hypothesis("e-nonzero", e != b.zero());
    if !v.applicable {
        return Ok(v);
    }
    let j = Ideal::principal(b, e)?;
    let s = split_check(b, &j, caps)?;
    let splits = s.section.is_some();
    let hom_zero = s.nonzero_hom.is_none();
    v.lhs = Some(Claim::Bool(true));
    v.rhs = Some(Claim::Bool(splits && hom_zero));
    v.consistent = splits && hom_zero;
    v.rhs_clauses = vec![
        Condition { name: "pi-splits".into(), holds: splits, note: None },
        Condition { name: "hom(J,Ann(J))-zero".into(), holds: hom_zero, note: None },
    ];
    let mut parts = Vec::new();
    match &s.section {
        Some(t) => parts.push(Witness::Section { map: t.map().to_vec() }),
        None => parts.push(Witness::NoSection { pi_surjective: s.pi_surjective }),
    }
    if let Some(h) = &s.nonzero_hom {
        parts.push(Witness::NonzeroHom { map: h.map().to_vec() });
    }
    v.witness = Witness::combine(parts);
    Ok(v)
}

pub fn verify_selfinjective_characterization(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::ThmSelfinjChar);
    amalgam_gates(&mut v, w);
    if v.applicable {
        let lhs = self_injective_clause("amalgam-self-injective", w.ring(), Target::Amalgam, caps)?;
        let rhs = vec![
            injective_clause("b-injective-over-a", &FModule::via_hom(w.hom()), Target::B, caps)?,
            idempotent_clause("j-idempotent-generated", w.b_ring(), w.j_ideal(), Target::B),
        ];
        v.biconditional(lhs, rhs);
    }
    Ok(v)
}

pub fn verify_local_never(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::CorLocalNever);
    amalgam_gates(&mut v, w);
    let b_local = w.b_ring().order() >= 2 && w.b_ring().is_local()?;
    v.hypothesis("b-local", b_local)
        .hypothesis("j-nonzero", !w.j_ideal().is_zero())
        .hypothesis("j-proper", !w.j_ideal().is_whole());
    if v.applicable {
        let si = self_injective_clause("amalgam-self-injective", w.ring(), Target::Amalgam, caps)?;
        v.lhs = Some(Claim::Bool(si.holds));
        v.rhs = Some(Claim::Bool(false));
        v.consistent = !si.holds;
        v.witness = si.witness;
    }
    Ok(v)
}

pub fn verify_duplication(a: &FiniteRing, i: &Ideal, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::CorDuplication);
    v.hypothesis("nonzero-ring", a.order() >= 2);
    if v.applicable {
        let w = crate::amalgam::duplication(a, i, caps)?;
        let lhs = self_injective_clause("duplication-self-injective", w.ring(), Target::Amalgam, caps)?;
        let rhs = vec![
            self_injective_clause("a-self-injective", a, Target::A, caps)?,
            idempotent_clause("i-idempotent-generated", a, i, Target::A),
        ];
        v.biconditional(lhs, rhs);
    }
    Ok(v)
}

pub fn verify_qf_characterization(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::ThmQfChar);
    amalgam_gates(&mut v, w);
    if v.applicable {
        let lhs = self_injective_clause("amalgam-qf", w.ring(), Target::Amalgam, caps)?;
        let rhs = vec![
            self_injective_clause("a-qf", w.a_ring(), Target::A, caps)?,
            noetherian_clause(),
            injective_clause("b-injective-over-a", &FModule::via_hom(w.hom()), Target::B, caps)?,
            idempotent_clause("j-idempotent-generated", w.b_ring(), w.j_ideal(), Target::B),
        ];
        v.biconditional(lhs, rhs);
    }
    Ok(v)
}

fn product_of(factors: &[FiniteRing], caps: &Caps) -> Result<FiniteRing> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::invalid("empty product"))?;
    let mut ring = first.clone();
    for f in rest {
        if ring.order() * f.order() > caps.max_amalgam_order {
            return Err(Error::ResourceLimit { what: "product order", limit: caps.max_amalgam_order });
        }
        ring = FiniteRing::product(&ring, f).ring;
    }
    Ok(ring)
}

pub fn verify_product_qf(factors: &[FiniteRing], caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::LemmaProductQf);
    v.hypothesis("nonempty", !factors.is_empty())
        .hypothesis("nonzero-factors", factors.iter().all(|f| f.order() >= 2));
    if v.applicable {
        let product = product_of(factors, caps)?;
        let lhs = self_injective_clause("product-qf", &product, Target::Product, caps)?;
        let rhs = factors
            .iter()
            .enumerate()
            .map(|(i, f)| self_injective_clause("factor-qf", f, Target::Factor(i), caps))
            .collect::<Result<Vec<_>>>()?;
        v.biconditional(lhs, rhs);
        v.notes.push("decided by direct double-annihilator computation".into());
    }
    Ok(v)
}

pub fn verify_descent_qf(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::LemmaDescentQf);
    v.hypothesis("nonzero-rings", nontrivial(w));
    if v.applicable {
        let lhs = self_injective_clause("amalgam-qf", w.ring(), Target::Amalgam, caps)?;
        v.lhs = Some(Claim::Bool(lhs.holds));
        if !lhs.holds {
            v.notes.push("antecedent false".into());
            v.witness = lhs.witness;
            return Ok(v);
        }
        let rhs = self_injective_clause("a-qf", w.a_ring(), Target::A, caps)?;
        v.rhs = Some(Claim::Bool(rhs.holds));
        v.consistent = rhs.holds;
        if !rhs.holds {
            v.witness = Witness::combine(lhs.witness.into_iter().chain(rhs.witness.clone()).collect());
        }
        v.rhs_clauses.push(rhs.into_condition());
    }
    Ok(v)
}

fn annihilator_zero(w: &AmalgamRing) -> Result<bool> {
    Ok(annihilator(w.b_ring(), w.j_ideal().elements())?.is_zero())
}

pub fn verify_hom_iso_surjective_case(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::LemmaHomIsoSurjective);
    v.hypothesis("nonzero-rings", nontrivial(w))
        .hypothesis("f-surjective", w.f_surjective())
        .hypothesis("ann(J)-zero", annihilator_zero(w)?);
    if v.applicable {
        v.isomorphism(&j_over_a(w)?, &hom_a_into_amalgam(w, caps)?, caps)?;
    }
    Ok(v)
}

pub fn verify_local_surjective_qf(w: &AmalgamRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::PropLocalSurjectiveQf);
    let a_local = w.a_ring().order() >= 2 && w.a_ring().is_local()?;
    v.hypothesis("nonzero-rings", nontrivial(w))
        .hypothesis("a-local", a_local)
        .hypothesis("f-surjective", w.f_surjective())
        .hypothesis("j-nonzero", !w.j_ideal().is_zero())
        .hypothesis("ann(J)-zero", annihilator_zero(w)?);
    v.notes.push("the clause J = A is read as J = B, since J is an ideal of B".into());
    if v.applicable {
        let lhs = self_injective_clause("amalgam-qf", w.ring(), Target::Amalgam, caps)?;
        let j = w.j_ideal();
        let whole = Clause {
            name: "j-equals-b",
            holds: j.is_whole(),
            note: None,
            witness: (!j.is_whole()).then(|| Witness::ProperIdeal { ring: Target::B, ideal: j.elements().to_vec() }),
        };
        let rhs = vec![self_injective_clause("a-qf", w.a_ring(), Target::A, caps)?, whole];
        v.biconditional(lhs, rhs);
    }
    Ok(v)
}

/// Double-annihilator condition against Baer's criterion for `R` over
/// itself, each computed without consulting the other.
pub fn verify_qf_equivalence(r: &FiniteRing, caps: &Caps) -> Result<Verdict> {
    let mut v = Verdict::new(Statement::LemmaQfEquiv);
    let failing = double_annihilator_failure(r, caps)?;
    let lhs = Clause {
        name: "double-annihilator",
        holds: failing.is_none(),
        note: None,
        witness: Some(match &failing {
            None => Witness::AnnihilatorHolds { ring: Target::Ring },
            Some(i) => Witness::AnnihilatorFailure {
                ring: Target::Ring,
                ideal: i.elements().to_vec(),
                double_annihilator: double_annihilator(r, i)?.elements().to_vec(),
            },
        }),
    };
    let rhs = injective_clause("baer-regular", &FModule::regular(r), Target::Ring, caps)?;
    v.biconditional(lhs, vec![rhs]);
    Ok(v)
}

fn resolve(target: Target, instance: &Instance, caps: &Caps) -> Result<FiniteRing> {
    let missing = || Error::invalid(format!("witness target {target:?} does not exist in this instance"));
    Ok(match (target, instance) {
        (Target::Amalgam, Instance::Amalgam(w)) => w.ring().clone(),
        (Target::A, Instance::Amalgam(w)) => w.a_ring().clone(),
        (Target::B, Instance::Amalgam(w)) => w.b_ring().clone(),
        (Target::Ring, Instance::Ring(r)) | (Target::Ring, Instance::Idempotent { ring: r, .. }) => r.clone(),
        (Target::Product, Instance::Product(f)) => product_of(f, caps)?,
        (Target::Factor(i), Instance::Product(f)) => f.get(i).ok_or_else(missing)?.clone(),
        _ => return Err(missing()),
    })
}

fn witness_module(target: Target, instance: &Instance) -> Result<FModule> {
    match (target, instance) {
        (Target::B, Instance::Amalgam(w)) => Ok(FModule::via_hom(w.hom())),
        (Target::Ring, Instance::Ring(r)) => Ok(FModule::regular(r)),
        _ => Err(Error::invalid(format!("no module witness target {target:?} here"))),
    }
}

/// The two modules compared by an isomorphism-type verdict.
fn module_sides(statement: Statement, instance: &Instance, caps: &Caps) -> Result<(FModule, FModule)> {
    let Instance::Amalgam(w) = instance else {
        return Err(Error::invalid("module witnesses need an amalgam instance"));
    };
    match statement {
        Statement::PropHomIso => Ok((hom_a_into_amalgam(w, caps)?, j_plus_annihilator(w)?)),
        Statement::PropDualIso => Ok((dual_module(w, caps)?, FModule::regular(w.ring()))),
        Statement::LemmaHomIsoSurjective => Ok((j_over_a(w)?, hom_a_into_amalgam(w, caps)?)),
        _ => Err(Error::invalid(format!("{statement} has no module sides"))),
    }
}

fn split_context(instance: &Instance) -> Result<(FiniteRing, Ideal)> {
    match instance {
        Instance::Amalgam(w) => Ok((w.b_ring().clone(), w.j_ideal().clone())),
        Instance::Idempotent { ring, e } => Ok((ring.clone(), Ideal::principal(ring, *e)?)),
        _ => Err(Error::invalid("split witnesses need a (B, J) pair")),
    }
}

fn brute_double_annihilator_holds(r: &FiniteRing, caps: &Caps) -> Result<bool> {
    for i in all_ideals_capped(r, caps.max_ideals)? {
        if double_annihilator(r, &i)? != i {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check(w: &Witness, statement: Statement, instance: &Instance, caps: &Caps) -> Result<bool> {
    Ok(match w {
        Witness::Idempotent { ring, e, ideal } => {
            let r = resolve(*ring, instance, caps)?;
            r.contains(*e) && r.is_idempotent(*e) && Ideal::principal(&r, *e)?.elements() == ideal.as_slice()
        }
        Witness::NoIdempotentGenerator { ring, ideal } => {
            let r = resolve(*ring, instance, caps)?;
            let i = Ideal::from_elements(&r, ideal)?;
            r.idempotents().into_iter().all(|e| Ideal::principal(&r, e).map(|p| p != i).unwrap_or(false))
        }
        Witness::AnnihilatorFailure { ring, ideal, double_annihilator: d } => {
            let r = resolve(*ring, instance, caps)?;
            let i = Ideal::from_elements(&r, ideal)?;
            let aa = double_annihilator(&r, &i)?;
            aa != i && aa.elements() == d.as_slice()
        }
        Witness::AnnihilatorHolds { ring } => brute_double_annihilator_holds(&resolve(*ring, instance, caps)?, caps)?,
        Witness::BaerFailure { module, ideal, images } => {
            let m = witness_module(*module, instance)?;
            let i = Ideal::from_elements(m.ring(), ideal)?;
            let im = FModule::from_ideal(m.ring(), &i)?;
            ModuleHom::new(&im, &m, images.clone()).is_ok()
                && (0..m.order()).all(|x| i.elements().iter().zip(images).any(|(&r, &y)| m.act(r, x) != y))
        }
        Witness::Injective { module } => baer_failure(&witness_module(*module, instance)?, caps)?.is_none(),
        Witness::Isomorphism { map } => {
            let (l, r) = module_sides(statement, instance, caps)?;
            ModuleHom::new(&l, &r, map.clone()).is_ok_and(|h| h.is_bijective())
        }
        Witness::NotIsomorphic { lhs_order, rhs_order } => {
            let (l, r) = module_sides(statement, instance, caps)?;
            l.order() == *lhs_order
                && r.order() == *rhs_order
                && (l.order() != r.order() || module_isomorphic(&l, &r, caps)?.is_none())
        }
        Witness::Section { map } => {
            let (b, j) = split_context(instance)?;
            let pi = multiplication_map(&b, &j, caps)?.map;
            ModuleHom::new(pi.codomain(), pi.domain(), map.clone()).is_ok()
                && (0..pi.codomain().order()).all(|y| pi.apply(map[y]) == y)
        }
        Witness::NoSection { pi_surjective } => {
            let (b, j) = split_context(instance)?;
            let pi = multiplication_map(&b, &j, caps)?.map;
            pi.is_surjective() == *pi_surjective && (!pi_surjective || find_section(&pi, caps)?.is_none())
        }
        Witness::NonzeroHom { map } => {
            let (b, j) = split_context(instance)?;
            let ann = annihilator(&b, j.elements())?;
            let (jm, am) = (FModule::from_ideal(&b, &j)?, FModule::from_ideal(&b, &ann)?);
            ModuleHom::new(&jm, &am, map.clone()).is_ok() && map.iter().any(|&x| x != am.zero())
        }
        Witness::ProperIdeal { ring, ideal } => {
            let r = resolve(*ring, instance, caps)?;
            Ideal::from_elements(&r, ideal).is_ok_and(|i| !i.is_whole())
        }
        Witness::Combined { parts } => {
            for p in parts {
                if !check(p, statement, instance, caps)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// Re-derives a verdict's witness from the instance alone. A counterexample
/// without a witness never passes.
pub fn recheck_witness(verdict: &Verdict, instance: &Instance, caps: &Caps) -> Result<bool> {
    let statement = verdict
        .statement()
        .ok_or_else(|| Error::invalid(format!("unknown statement {}", verdict.statement_id)))?;
    match &verdict.witness {
        Some(w) => check(w, statement, instance, caps),
        None => Ok(!verdict.is_counterexample()),
    }
}
