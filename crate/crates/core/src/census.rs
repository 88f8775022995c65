//! Corpus generation, verification campaigns, and report persistence.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hom::enumerate_ring_homs;
use crate::ideal::{all_ideals_capped, annihilator};
use crate::iso::ring_isomorphic;
use crate::ring::{Elem, FiniteRing};
use crate::spec::{parse_spec, HomSpec, RingSpec};
use crate::theorems::{recheck_witness, Instance, Statement, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    /// `Z_n` for `2 ≤ n ≤ max_ring_order`.
    pub max_ring_order: usize,
    /// Two-factor products of the cyclic rings and fixtures up to this order.
    pub max_product_order: usize,
    /// Amalgamation data is kept when `|A|·|J|` is at most this.
    pub max_amalgam_order: usize,
    /// Drop rings isomorphic to an earlier corpus ring.
    pub dedup: bool,
    pub caps: Caps,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { max_ring_order: 12, max_product_order: 36, max_amalgam_order: 64, dedup: false, caps: Caps::default() }
    }
}

impl CorpusConfig {
    /// Products are capped at `max_ring_order`.
    pub fn new(max_ring_order: usize, max_amalgam_order: usize) -> Self {
        CorpusConfig { max_ring_order, max_product_order: max_ring_order, max_amalgam_order, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.max_ring_order < 2 || self.max_product_order < 2 || self.max_amalgam_order < 2 {
            return Err(Error::invalid("corpus caps must be at least 2"));
        }
        if self.max_amalgam_order > self.caps.max_amalgam_order {
            return Err(Error::invalid(format!(
                "max_amalgam_order {} exceeds the amalgam cap {}",
                self.max_amalgam_order, self.caps.max_amalgam_order
            )));
        }
        Ok(())
    }
}

/// How to rebuild an instance; every ring is stored as spec text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    Ring { spec: String },
    Product { factors: Vec<String> },
    Idempotent { ring: String, e: Elem },
    Amalgam { spec: String },
}

impl Recipe {
    pub fn instance(&self, caps: &Caps) -> Result<Instance> {
        let ring = |s: &str| parse_spec(s)?.eval_ring(caps);
        Ok(match self {
            Recipe::Ring { spec } => Instance::Ring(ring(spec)?),
            Recipe::Product { factors } => Instance::Product(factors.iter().map(|f| ring(f)).collect::<Result<_>>()?),
            Recipe::Idempotent { ring: r, e } => Instance::Idempotent { ring: ring(r)?, e: *e },
            Recipe::Amalgam { spec } => Instance::Amalgam(parse_spec(spec)?.eval_amalgam(caps)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub id: String,
    pub recipe: Recipe,
    pub caps: Caps,
    pub tags: Vec<String>,
}

impl CorpusItem {
    pub fn new(id: impl Into<String>, recipe: Recipe, caps: Caps, tags: Vec<String>) -> Self {
        CorpusItem { id: id.into(), recipe, caps, tags }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

/// A single-instance item for an arbitrary spec (amalgam specs become
/// amalgam items, anything else a ring item).
pub fn item_from_spec(text: &str, caps: &Caps) -> Result<CorpusItem> {
    let spec = parse_spec(text)?;
    let recipe = match spec {
        RingSpec::Amalgam { .. } | RingSpec::Duplication(..) => Recipe::Amalgam { spec: spec.to_string() },
        _ => Recipe::Ring { spec: spec.to_string() },
    };
    Ok(CorpusItem::new(spec.to_string(), recipe, caps.clone(), vec!["instance".into()]))
}

struct Base {
    spec: RingSpec,
    ring: FiniteRing,
}

fn base_rings(cfg: &CorpusConfig) -> Result<(Vec<Base>, Vec<[RingSpec; 2]>)> {
    let mut factors: Vec<Base> = (2..=cfg.max_ring_order)
        .map(|n| Ok(Base { spec: RingSpec::Zmod(n), ring: FiniteRing::zmod(n)? }))
        .collect::<Result<_>>()?;
    factors.extend(
        fixtures::all()
            .into_iter()
            .map(|(name, ring)| Base { spec: RingSpec::Fixture(name.to_string()), ring }),
    );
    let mut products = Vec::new();
    let mut rings = Vec::new();
    for (i, x) in factors.iter().enumerate() {
        for y in &factors[i..] {
            if x.ring.order() * y.ring.order() <= cfg.max_product_order {
                let spec = RingSpec::Product(Box::new(x.spec.clone()), Box::new(y.spec.clone()));
                let ring = FiniteRing::product(&x.ring, &y.ring).ring.with_label(spec.to_string());
                products.push([x.spec.clone(), y.spec.clone()]);
                rings.push(Base { spec, ring });
            }
        }
    }
    factors.append(&mut rings);
    let mut rings = factors;
    if cfg.dedup {
        let mut kept: Vec<Base> = Vec::new();
        for b in rings {
            let mut seen = false;
            for k in &kept {
                if ring_isomorphic(&k.ring, &b.ring, &cfg.caps)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                kept.push(b);
            }
        }
        rings = kept;
    }
    Ok((rings, products))
}

fn ideal_spec(gens: &[Elem]) -> String {
    let g: Vec<String> = gens.iter().map(|x| x.to_string()).collect();
    format!("ideal({})", g.join(", "))
}

/// The corpus for `CorpusConfig::new(max_ring_order, max_amalgam_order)`.
pub fn generate_corpus(max_ring_order: usize, max_amalgam_order: usize) -> Result<Vec<CorpusItem>> {
    generate_corpus_with(&CorpusConfig::new(max_ring_order, max_amalgam_order))
}

/// Rings, two-factor products, nonzero idempotents, and every amalgamation
/// datum `(A, B, f, J)` between corpus rings within the amalgam cap. The
/// identity of a ring only enters through duplication items.
pub fn generate_corpus_with(cfg: &CorpusConfig) -> Result<Vec<CorpusItem>> {
    cfg.validate()?;
    let caps = cfg.caps.clone();
    let (rings, products) = base_rings(cfg)?;
    let mut items = Vec::new();

    for b in &rings {
        let mut tags = vec!["ring".to_string()];
        if b.ring.is_local()? {
            tags.push("local".into());
        }
        let spec = b.spec.to_string();
        items.push(CorpusItem::new(format!("ring {spec}"), Recipe::Ring { spec }, caps.clone(), tags));
    }
    for [x, y] in &products {
        let factors = vec![x.to_string(), y.to_string()];
        let id = format!("product {} x {}", factors[0], factors[1]);
        items.push(CorpusItem::new(id, Recipe::Product { factors }, caps.clone(), vec!["product".into()]));
    }
    for b in &rings {
        for e in b.ring.idempotents().into_iter().filter(|&e| e != b.ring.zero()) {
            let spec = b.spec.to_string();
            let id = format!("idempotent {spec} e={e}");
            items.push(CorpusItem::new(id, Recipe::Idempotent { ring: spec, e }, caps.clone(), vec!["idempotent".into()]));
        }
    }

    let ideals: Vec<_> = rings
        .iter()
        .map(|b| all_ideals_capped(&b.ring, caps.max_ideals))
        .collect::<Result<_>>()?;
    let local: Vec<bool> = rings.iter().map(|b| b.ring.is_local()).collect::<Result<_>>()?;

    for (ai, a) in rings.iter().enumerate() {
        for i in &ideals[ai] {
            if a.ring.order() * i.len() > cfg.max_amalgam_order {
                continue;
            }
            let spec = format!("duplication({}, {})", a.spec, ideal_spec(&i.generators()));
            let mut tags = vec!["duplication", "f-injective", "f-surjective", "j-in-image"];
            push_common_tags(&mut tags, local[ai], local[ai], i.is_zero(), i.is_whole(), annihilator(&a.ring, i.elements())?.is_zero());
            items.push(amalgam_item(spec, &caps, tags));
        }
    }
    for (ai, a) in rings.iter().enumerate() {
        for (bi, b) in rings.iter().enumerate() {
            if a.ring.order() > cfg.max_amalgam_order {
                continue;
            }
            for f in enumerate_ring_homs(&a.ring, &b.ring, &caps)? {
                if ai == bi && f.is_identity() {
                    continue;
                }
                let hom = HomSpec::Map(f.map().to_vec());
                let img = f.image();
                for j in &ideals[bi] {
                    if a.ring.order() * j.len() > cfg.max_amalgam_order {
                        continue;
                    }
                    let spec = format!("amalgam({}, {}, {hom}, {})", a.spec, b.spec, ideal_spec(&j.generators()));
                    let mut tags = Vec::new();
                    if f.is_injective() {
                        tags.push("f-injective");
                    }
                    if f.is_surjective() {
                        tags.push("f-surjective");
                    }
                    if j.elements().iter().all(|x| img.binary_search(x).is_ok()) {
                        tags.push("j-in-image");
                    }
                    let ann_zero = annihilator(&b.ring, j.elements())?.is_zero();
                    push_common_tags(&mut tags, local[ai], local[bi], j.is_zero(), j.is_whole(), ann_zero);
                    items.push(amalgam_item(spec, &caps, tags));
                }
            }
        }
    }
    Ok(items)
}

fn push_common_tags(tags: &mut Vec<&str>, a_local: bool, b_local: bool, j_zero: bool, j_whole: bool, ann_zero: bool) {
    for (t, on) in [("local-A", a_local), ("local-B", b_local), ("j-zero", j_zero), ("j-whole", j_whole), ("ann-j-zero", ann_zero)] {
        if on {
            tags.push(t);
        }
    }
}

fn amalgam_item(spec: String, caps: &Caps, tags: Vec<&str>) -> CorpusItem {
    let mut all = vec!["amalgam".to_string()];
    all.extend(tags.into_iter().map(String::from));
    CorpusItem::new(format!("amalgam {spec}"), Recipe::Amalgam { spec }, caps.clone(), all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Verdict {
        verdict: Verdict,
        /// Result of re-deriving the witness of a counterexample.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness_rechecked: Option<bool>,
    },
    ResourceLimited { message: String },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub statement_id: String,
    pub outcome: Outcome,
    pub elapsed_ms: u64,
}

impl Entry {
    pub fn verdict(&self) -> Option<&Verdict> {
        match &self.outcome {
            Outcome::Verdict { verdict, .. } => Some(verdict),
            _ => None,
        }
    }

    pub fn is_counterexample(&self) -> bool {
        self.verdict().is_some_and(Verdict::is_counterexample)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub evaluated: usize,
    pub applicable: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub inapplicable: usize,
    pub resource_limited: usize,
    pub errors: usize,
}

impl Summary {
    pub fn tally(entries: &[Entry]) -> Summary {
        let mut s = Summary { evaluated: entries.len(), ..Default::default() };
        for e in entries {
            match &e.outcome {
                Outcome::Verdict { verdict, .. } if !verdict.applicable => s.inapplicable += 1,
                Outcome::Verdict { verdict, .. } => {
                    s.applicable += 1;
                    if verdict.consistent {
                        s.consistent += 1;
                    } else {
                        s.inconsistent += 1;
                    }
                }
                Outcome::ResourceLimited { .. } => s.resource_limited += 1,
                Outcome::Error { .. } => s.errors += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub caps: Caps,
    pub crate_version: String,
    pub statements: Vec<String>,
    pub items: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign_id: String,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    pub environment: Environment,
}

impl CampaignReport {
    /// Exit status for the campaign: 0 all consistent, 1 a counterexample
    /// or internal error, 2 a resource limit without counterexamples.
    pub fn exit_code(&self) -> i32 {
        if self.summary.inconsistent > 0 || self.summary.errors > 0 {
            1
        } else if self.summary.resource_limited > 0 {
            2
        } else {
            0
        }
    }

    /// The same report with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> CampaignReport {
        let mut r = self.clone();
        r.entries.iter_mut().for_each(|e| e.elapsed_ms = 0);
        r
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.is_counterexample())
    }
}

fn evaluate_item(item: &CorpusItem, statements: &[Statement]) -> Vec<Entry> {
    let start = Instant::now();
    let instance = match item.recipe.instance(&item.caps) {
        Ok(i) => i,
        Err(err) => {
            let outcome = failure_outcome(err);
            return statements
                .iter()
                .map(|s| Entry {
                    id: item.id.clone(),
                    statement_id: s.id().to_string(),
                    outcome: outcome.clone(),
                    elapsed_ms: start.elapsed().as_millis() as u64,
                })
                .collect();
        }
    };
    let mut out = Vec::new();
    for &s in statements {
        let t = Instant::now();
        let outcome = match s.verify(&instance, &item.caps) {
            Ok(None) => continue,
            Ok(Some(verdict)) => {
                let witness_rechecked = if verdict.is_counterexample() {
                    Some(recheck_witness(&verdict, &instance, &item.caps).unwrap_or(false))
                } else {
                    None
                };
                Outcome::Verdict { verdict, witness_rechecked }
            }
            Err(err) => failure_outcome(err),
        };
        out.push(Entry {
            id: item.id.clone(),
            statement_id: s.id().to_string(),
            outcome,
            elapsed_ms: t.elapsed().as_millis() as u64,
        });
    }
    out
}

fn failure_outcome(err: Error) -> Outcome {
    if err.is_resource_limit() {
        Outcome::ResourceLimited { message: err.to_string() }
    } else {
        Outcome::Error { message: err.to_string() }
    }
}

fn campaign_id(corpus: &[CorpusItem], statements: &[Statement]) -> String {
    let mut h = DefaultHasher::new();
    for item in corpus {
        item.id.hash(&mut h);
        item.recipe.hash(&mut h);
    }
    statements.hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Evaluates every accepted `(item, statement)` pair, in parallel across
/// items; entries come back in corpus order, then statement order.
pub fn run_campaign(corpus: &[CorpusItem], statements: &[Statement]) -> CampaignReport {
    let entries: Vec<Entry> = corpus.par_iter().map(|item| evaluate_item(item, statements)).flatten().collect();
    CampaignReport {
        campaign_id: campaign_id(corpus, statements),
        summary: Summary::tally(&entries),
        environment: Environment {
            caps: corpus.first().map(|i| i.caps.clone()).unwrap_or_default(),
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            statements: statements.iter().map(|s| s.id().to_string()).collect(),
            items: corpus.len(),
        },
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// One CSV row of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub id: String,
    pub statement_id: String,
    pub applicable: Option<bool>,
    pub consistent: Option<bool>,
    pub witness_kind: String,
    pub elapsed_ms: u64,
}

impl From<&Entry> for CsvRow {
    fn from(e: &Entry) -> Self {
        let (applicable, consistent, witness_kind) = match &e.outcome {
            Outcome::Verdict { verdict, .. } => {
                (Some(verdict.applicable), Some(verdict.consistent), verdict.witness_kind().to_string())
            }
            Outcome::ResourceLimited { .. } => (None, None, "resource-limited".to_string()),
            Outcome::Error { .. } => (None, None, "error".to_string()),
        };
        CsvRow { id: e.id.clone(), statement_id: e.statement_id.clone(), applicable, consistent, witness_kind, elapsed_ms: e.elapsed_ms }
    }
}

pub fn write_report(report: &CampaignReport, path: &Path, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => {
            let file = std::io::BufWriter::new(std::fs::File::create(path)?);
            serde_json::to_writer_pretty(file, report)?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_path(path)?;
            for e in &report.entries {
                w.serialize(CsvRow::from(e))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn read_report(path: &Path) -> Result<CampaignReport> {
    Ok(serde_json::from_reader(std::io::BufReader::new(std::fs::File::open(path)?))?)
}

pub fn read_csv_rows(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_for_order_nine() {
        let corpus = generate_corpus(9, 36).unwrap();
        let ids: Vec<&str> = corpus.iter().map(|c| c.id.as_str()).collect();
        for n in 2..=9 {
            assert!(ids.contains(&format!("ring zmod({n})").as_str()));
        }
        for (m, n) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
            assert!(ids.contains(&format!("ring product(zmod({m}), zmod({n}))").as_str()), "{m} {n}");
        }
        assert!(!ids.contains(&"ring product(zmod(3), zmod(4))"));
        assert!(ids.contains(&"ring fixture(z2t)") && ids.contains(&"ring fixture(z4t)"));
        assert!(ids.contains(&"amalgam amalgam(zmod(4), zmod(2), map(0, 1, 0, 1), ideal(1))"));
        assert!(ids.contains(&"amalgam duplication(zmod(6), ideal(2))"));
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len(), "ids are unique");
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(generate_corpus(6, 24).unwrap(), generate_corpus(6, 24).unwrap());
    }

    #[test]
    fn bad_caps_are_rejected() {
        assert!(matches!(generate_corpus(1, 36), Err(Error::InvalidParameter(_))));
        assert!(matches!(generate_corpus(9, 100_000), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn empty_campaign() {
        let r = run_campaign(&[], &Statement::ALL);
        assert_eq!(r.summary, Summary::default());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn duplication_campaign_for_selfinjectivity() {
        let cfg = CorpusConfig::new(9, 81);
        let corpus: Vec<_> = generate_corpus_with(&cfg)
            .unwrap()
            .into_iter()
            .filter(|c| c.has_tag("duplication") && c.id.contains("zmod") && !c.id.contains("product"))
            .collect();
        assert!(!corpus.is_empty());
        let r = run_campaign(&corpus, &[Statement::ThmSelfinjChar]);
        assert_eq!(r.summary.evaluated, corpus.len());
        assert_eq!(r.summary.applicable, corpus.len());
        assert_eq!(r.summary.inconsistent, 0);
    }

    #[test]
    fn dual_iso_is_inapplicable_on_z4() {
        let item = item_from_spec("duplication(zmod(4), ideal(2))", &Caps::default()).unwrap();
        let r = run_campaign(&[item], &[Statement::PropDualIso]);
        assert_eq!(r.summary.inapplicable, 1);
    }

    #[test]
    fn resource_limits_are_recorded() {
        let caps = Caps { max_module_order: 4, ..Caps::default() };
        let item = item_from_spec("duplication(zmod(6), ideal(2))", &caps).unwrap();
        let r = run_campaign(&[item], &[Statement::PropHomIso]);
        assert_eq!(r.summary.resource_limited, 1);
        assert_eq!(r.summary.consistent + r.summary.inconsistent, 0);
        assert_eq!(r.exit_code(), 2);
    }
}
