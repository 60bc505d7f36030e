use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::claims::{
    check_c21, check_c23, check_c26_facts, check_c31, check_c32, check_completeness, check_fig1,
    check_l1, check_l3, check_t8, InstanceFacts,
};
use super::{ClaimId, ClaimStatus, ClaimVerdict};
use crate::chp::PlacementMode;
use crate::error::{Error, Result};
use crate::filling::{chromatic_fill, Decomposition, FillConfig, ResidualPolicy};
use crate::graph::{
    complete, cycle, empty, erdos_renyi, join, mycielski_iterate, path, petersen, Graph,
};
use crate::rng::{derive_seed, SplitMix64};
use crate::OracleLimits;

/// Tally key used by checks that do not depend on the filling settings.
pub const ANY_COMBO: &str = "any";

/// One placement/residual interpretation of the filling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Combo {
    pub placement: PlacementMode,
    pub residual: ResidualPolicy,
}

impl Combo {
    pub const ALL: [Combo; 4] = [
        Combo {
            placement: PlacementMode::Capacity,
            residual: ResidualPolicy::ProcessAll,
        },
        Combo {
            placement: PlacementMode::Capacity,
            residual: ResidualPolicy::DiscardSmaller,
        },
        Combo {
            placement: PlacementMode::UsedColors,
            residual: ResidualPolicy::ProcessAll,
        },
        Combo {
            placement: PlacementMode::UsedColors,
            residual: ResidualPolicy::DiscardSmaller,
        },
    ];

    pub fn label(&self) -> String {
        format!("{}/{}", self.placement.label(), self.residual.label())
    }

    pub fn fill_config(&self, capacity: usize, limits: OracleLimits) -> FillConfig {
        FillConfig {
            capacity,
            placement: self.placement,
            residual: self.residual,
            limits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Total number of instances, structured ones included.
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub edge_probabilities: Vec<f64>,
    /// Lead the corpus with hand-picked graphs before the random ones.
    pub structured: bool,
    pub combos: Vec<Combo>,
    pub claims: Vec<ClaimId>,
    pub capacity: usize,
    pub jobs: usize,
    pub limits: OracleLimits,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 100,
            n_min: 5,
            n_max: 9,
            edge_probabilities: vec![0.3, 0.5, 0.7],
            structured: true,
            combos: Combo::ALL.to_vec(),
            claims: ClaimId::ALL
                .iter()
                .copied()
                .filter(|&c| c != ClaimId::Fig1)
                .collect(),
            capacity: 4,
            jobs: 1,
            limits: OracleLimits::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_min > self.n_max {
            return bad(format!("empty size range {}..{}", self.n_min, self.n_max));
        }
        if self.edge_probabilities.is_empty() {
            return bad("no edge probabilities given".into());
        }
        if let Some(p) = self
            .edge_probabilities
            .iter()
            .find(|p| !(0.0..=1.0).contains(*p))
        {
            return bad(format!("edge probability {p} outside [0, 1]"));
        }
        if self.combos.is_empty() {
            return bad("no filling combination selected".into());
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1".into());
        }
        self.limits.validate()?;
        for combo in &self.combos {
            combo.fill_config(self.capacity, self.limits).validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub index: usize,
    /// Generator expression, e.g. `er:7,0.5,123`.
    pub source: String,
    pub graph: Graph,
}

fn two_k4_at_cut_vertex() -> Graph {
    let mut edges: Vec<(usize, usize)> = complete(4).edges().collect();
    edges.extend(complete(4).edges().map(|(u, v)| (u + 3, v + 3)));
    Graph::from_edge_list(7, edges).expect("valid edges")
}

fn structured() -> Vec<(String, Graph)> {
    let c5 = cycle(5).expect("n >= 3");
    vec![
        ("join:cycle:5,complete:5".into(), join(&c5, &complete(5))),
        ("complete:8".into(), complete(8)),
        ("complete:5".into(), complete(5)),
        ("mycielski:2".into(), mycielski_iterate(2)),
        ("cycle:5".into(), c5.clone()),
        ("petersen".into(), petersen()),
        ("complete:9".into(), complete(9)),
        ("k4-cut-k4".into(), two_k4_at_cut_vertex()),
        ("join:cycle:5,cycle:5".into(), join(&c5, &c5)),
        ("complete:4".into(), complete(4)),
        ("path:6".into(), path(6)),
        ("empty:3".into(), empty(3)),
    ]
}

/// Structured graphs first (when enabled), then Erdős–Rényi graphs whose
/// parameters come from `derive_seed(seed, index)`.
pub fn fuzz_corpus(config: &FuzzConfig) -> Result<Vec<CorpusEntry>> {
    config.validate()?;
    let mut out: Vec<CorpusEntry> = Vec::with_capacity(config.count);
    if config.structured {
        for (source, graph) in structured().into_iter().take(config.count) {
            out.push(CorpusEntry {
                index: out.len(),
                source,
                graph,
            });
        }
    }
    while out.len() < config.count {
        let index = out.len();
        let mut rng = SplitMix64::new(derive_seed(config.seed, index as u64));
        let n = rng.range_inclusive(config.n_min, config.n_max);
        let p =
            config.edge_probabilities[rng.range_inclusive(0, config.edge_probabilities.len() - 1)];
        let seed = rng.next_u64();
        out.push(CorpusEntry {
            index,
            source: format!("er:{n},{p},{seed}"),
            graph: erdos_renyi(n, p, seed)?,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub holds: usize,
    pub violated: usize,
    pub inconclusive: usize,
}

impl Tally {
    fn add(&mut self, status: ClaimStatus) {
        match status {
            ClaimStatus::Holds => self.holds += 1,
            ClaimStatus::Violated => self.violated += 1,
            ClaimStatus::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub key: String,
    pub combo: String,
    pub instance: usize,
    pub source: String,
    pub reverified: bool,
    pub verdict: ClaimVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub instance: usize,
    pub source: String,
    pub combo: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub seed: u64,
    pub instances: usize,
    pub combos: Vec<String>,
    /// claim key → combo label → tally
    pub tallies: BTreeMap<String, BTreeMap<String, Tally>>,
    pub violations: Vec<ViolationRecord>,
    pub errors: Vec<ErrorRecord>,
    /// Oracle cross-checks that should never fail, e.g. `χ <= h`.
    pub sanity_failures: Vec<String>,
}

impl ReportSet {
    /// 3 on errors or failed sanity checks, 2 on violations, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() || !self.sanity_failures.is_empty() {
            3
        } else if !self.violations.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn tally(&self, key: &str, combo: &str) -> Tally {
        self.tallies
            .get(key)
            .and_then(|m| m.get(combo))
            .copied()
            .unwrap_or_default()
    }

    /// Tally of one key summed over all combos.
    pub fn total(&self, key: &str) -> Tally {
        let mut t = Tally::default();
        for x in self.tallies.get(key).into_iter().flat_map(|m| m.values()) {
            t.holds += x.holds;
            t.violated += x.violated;
            t.inconclusive += x.inconclusive;
        }
        t
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} instances, {} combos: {} violations, {} errors, {} sanity failures",
            self.instances,
            self.combos.len(),
            self.violations.len(),
            self.errors.len(),
            self.sanity_failures.len()
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn has(claims: &[ClaimId], c: ClaimId) -> bool {
    claims.contains(&c)
}

/// Verdicts of every selected claim that looks at one decomposition (all but
/// C2.6 and FIG1), in claim order.
pub fn decomposition_verdicts(
    g: &Graph,
    d: &Decomposition,
    facts: &InstanceFacts,
    claims: &[ClaimId],
    limits: &OracleLimits,
) -> Vec<ClaimVerdict> {
    let mut out = Vec::new();
    if has(claims, ClaimId::L1) {
        out.push(check_l1(g, d, facts, limits));
    }
    if has(claims, ClaimId::C2_1) {
        out.push(check_c21(g, d));
    }
    let wants_completeness = [ClaimId::C2_2, ClaimId::C2_4, ClaimId::C2_5, ClaimId::C3_3]
        .iter()
        .any(|&c| has(claims, c));
    if wants_completeness {
        let base = check_completeness(g, d, limits);
        for alias in [ClaimId::C2_2, ClaimId::C2_4, ClaimId::C2_5] {
            if has(claims, alias) {
                out.push(
                    ClaimVerdict {
                        claim: alias,
                        ..base.clone()
                    }
                    .with_sub("via-completeness"),
                );
            }
        }
        if has(claims, ClaimId::C3_3) {
            out.push(base);
        }
    }
    if has(claims, ClaimId::C2_3) {
        out.push(check_c23(g, d, limits));
    }
    if has(claims, ClaimId::L3) {
        out.push(check_l3(g, d));
    }
    if has(claims, ClaimId::C3_1) {
        out.push(check_c31(g, d, limits));
    }
    if has(claims, ClaimId::C3_2) {
        out.push(check_c32(g, d, limits));
    }
    if has(claims, ClaimId::T8) {
        out.extend(check_t8(g, d, facts, limits));
    }
    out
}

/// Verdicts and sanity failures of one combo, or the filling error.
type ComboResult = std::result::Result<(Vec<ClaimVerdict>, Vec<String>), String>;

fn combo_verdicts(
    entry: &CorpusEntry,
    combo: &Combo,
    facts: &InstanceFacts,
    config: &FuzzConfig,
) -> ComboResult {
    let g = &entry.graph;
    let d = chromatic_fill(g, &combo.fill_config(config.capacity, config.limits))
        .map_err(|e| e.to_string())?;
    let out = decomposition_verdicts(g, &d, facts, &config.claims, &config.limits);

    let mut sanity = Vec::new();
    if let Ok(chi) = facts.chromatic {
        let bound = config.capacity * d.plane_count();
        if d.unplaced.is_empty() && chi > bound {
            sanity.push(format!(
                "instance {} ({}), {}: χ = {chi} exceeds capacity x planes = {bound}",
                entry.index,
                entry.source,
                combo.label()
            ));
        }
    }
    Ok((out, sanity))
}

struct InstanceOutcome {
    facts: InstanceFacts,
    per_combo: Vec<ComboResult>,
}

fn evaluate(entry: &CorpusEntry, config: &FuzzConfig) -> InstanceOutcome {
    let facts = InstanceFacts::compute(&entry.graph, &config.limits);
    let per_combo = config
        .combos
        .iter()
        .map(|combo| combo_verdicts(entry, combo, &facts, config))
        .collect();
    InstanceOutcome { facts, per_combo }
}

/// Runs the selected claims on every corpus entry under every combo. The
/// result does not depend on `jobs`.
pub fn run_claims(corpus: &[CorpusEntry], config: &FuzzConfig) -> Result<ReportSet> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let outcomes: Vec<InstanceOutcome> =
        pool.install(|| corpus.par_iter().map(|e| evaluate(e, config)).collect());

    let combos: Vec<String> = config.combos.iter().map(Combo::label).collect();
    let mut report = ReportSet {
        seed: config.seed,
        instances: corpus.len(),
        combos: combos.clone(),
        tallies: BTreeMap::new(),
        violations: Vec::new(),
        errors: Vec::new(),
        sanity_failures: Vec::new(),
    };
    let mut pending = Vec::new();
    if has(&config.claims, ClaimId::Fig1) {
        // instance-free; evaluated once when asked for explicitly
        let v = check_fig1(&config.limits);
        report
            .tallies
            .entry(v.key())
            .or_default()
            .entry(ANY_COMBO.into())
            .or_default()
            .add(v.status);
        if v.status == ClaimStatus::Violated {
            pending.push(ViolationRecord {
                key: v.key(),
                combo: ANY_COMBO.into(),
                instance: 0,
                source: "fig1-layout".into(),
                reverified: false,
                verdict: v,
            });
        }
    }
    for (entry, outcome) in corpus.iter().zip(&outcomes) {
        if let (Ok(chi), Ok(h)) = (&outcome.facts.chromatic, &outcome.facts.hadwiger) {
            if chi > h {
                report.sanity_failures.push(format!(
                    "instance {} ({}): χ = {chi} > h = {h}",
                    entry.index, entry.source
                ));
            }
        }
        for (combo, result) in combos.iter().zip(&outcome.per_combo) {
            match result {
                Err(message) => report.errors.push(ErrorRecord {
                    instance: entry.index,
                    source: entry.source.clone(),
                    combo: combo.clone(),
                    message: message.clone(),
                }),
                Ok((verdicts, sanity)) => {
                    report.sanity_failures.extend(sanity.iter().cloned());
                    for v in verdicts {
                        let key = v.key();
                        report
                            .tallies
                            .entry(key.clone())
                            .or_default()
                            .entry(combo.clone())
                            .or_default()
                            .add(v.status);
                        if v.status == ClaimStatus::Violated {
                            pending.push(ViolationRecord {
                                key,
                                combo: combo.clone(),
                                instance: entry.index,
                                source: entry.source.clone(),
                                reverified: false,
                                verdict: v.clone(),
                            });
                        }
                    }
                }
            }
        }
    }

    if has(&config.claims, ClaimId::C2_6) {
        let graphs: Vec<Graph> = corpus.iter().map(|e| e.graph.clone()).collect();
        let facts: Vec<InstanceFacts> = outcomes.iter().map(|o| o.facts.clone()).collect();
        let v = check_c26_facts(&graphs, &facts);
        let key = v.key();
        report
            .tallies
            .entry(key.clone())
            .or_default()
            .entry(ANY_COMBO.into())
            .or_default()
            .add(v.status);
        if v.status == ClaimStatus::Violated {
            let first = v
                .witness
                .as_ref()
                .and_then(|w| corpus.iter().find(|e| e.graph == w.graph))
                .map(|e| (e.index, e.source.clone()))
                .unwrap_or((0, String::new()));
            pending.push(ViolationRecord {
                key,
                combo: ANY_COMBO.into(),
                instance: first.0,
                source: first.1,
                reverified: false,
                verdict: v,
            });
        }
    }

    let capacity = config.capacity;
    let limits = config.limits;
    report.violations = pool.install(|| {
        pending
            .into_par_iter()
            .map(|mut r| {
                r.reverified = super::claims::reverify(&r.verdict, capacity, &limits);
                r
            })
            .collect()
    });
    Ok(report)
}

/// Generates the corpus and runs every selected claim on it.
pub fn fuzz(config: &FuzzConfig) -> Result<ReportSet> {
    let corpus = fuzz_corpus(config)?;
    run_claims(&corpus, config)
}
