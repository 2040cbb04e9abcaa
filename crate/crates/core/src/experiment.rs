//! JSON-driven experiments: build an instance, refine it, run the requested
//! checks and produce a deterministic report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::algebra::{Field, FqMatrix, Permutation, ActionSpec, genset_validate, ValidatedAction, perm_from_matrix};
use crate::analysis::{
    check_coherent, empty_colors, gamma_graph, generator_graph, verify_automorphism, AutomorphismCheck,
    CoherenceViolation,
};
use crate::config::{ConfigDocument, Configuration};
use crate::error::Error;
use crate::schreier::{
    cycle_cayley, heptagon_pair, schreier_config, sl_tuples, sym_adjacent, sym_cayley, CayleyGroup,
    GeneratorChoice, SlInstance, Q2_NOTE,
};
use crate::theorems::{
    bartholdi_check, cayley_exact, minimal_right_mult_witness, right_mult_witness,
    scalar_witnesses, verify_lower_general, verify_lower_sl, verify_upper, AutomorphismWitness,
    BoundReport, PartitionCheck,
};
use crate::wl::{wl_run, WlOptions, WlTrace};

pub const SPEC_SCHEMA_VERSION: u32 = 1;
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A field element: an integer below `p` for prime fields, or a coefficient
/// list (lowest degree first) for extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldValue {
    Int(u64),
    Coeffs(Vec<u32>),
}

impl FieldValue {
    fn resolve(&self, field: &Field) -> crate::Result<u32> {
        match self {
            Self::Int(v) => field.element(*v),
            Self::Coeffs(c) => field.from_coeffs(c),
        }
    }
}

/// The instance to build. Schreier kinds color pairs by generator subsets;
/// `cycle` and `cayley_of` build Cayley configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instance {
    Explicit {
        points: usize,
        generators: BTreeMap<String, Permutation>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point_labels: Option<Vec<String>>,
    },
    Cycle {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        steps: Option<Vec<i64>>,
    },
    SymAdjacent {
        n: usize,
    },
    HeptagonPair,
    SlTuples {
        n: usize,
        q: u64,
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        /// Labelled matrices as rows of field values; transvections when
        /// absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrices: Option<BTreeMap<String, Vec<Vec<FieldValue>>>>,
    },
    CayleyOf {
        /// `Sym(n)` with adjacent transpositions `(i i+1)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symmetric: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<BTreeMap<String, Permutation>>,
    },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Explicit { .. } => "explicit",
            Self::Cycle { .. } => "cycle",
            Self::SymAdjacent { .. } => "sym_adjacent",
            Self::HeptagonPair => "heptagon_pair",
            Self::SlTuples { .. } => "sl_tuples",
            Self::CayleyOf { .. } => "cayley_of",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Upper,
    LowerSl,
    LowerGeneral,
    CayleyExact,
    Coherence,
    Bartholdi,
    Automorphisms,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Upper,
        Check::LowerSl,
        Check::LowerGeneral,
        Check::CayleyExact,
        Check::Coherence,
        Check::Bartholdi,
        Check::Automorphisms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Upper => "upper",
            Check::LowerSl => "lower_sl",
            Check::LowerGeneral => "lower_general",
            Check::CayleyExact => "cayley_exact",
            Check::Coherence => "coherence",
            Check::Bartholdi => "bartholdi",
            Check::Automorphisms => "automorphisms",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

fn default_checks() -> Vec<Check> {
    vec![Check::Upper, Check::Coherence]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default = "default_cap")]
    pub vertices: usize,
    #[serde(default = "default_cap")]
    pub group: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

fn default_cap() -> usize {
    5000
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            vertices: default_cap(),
            group: default_cap(),
            iterations: None,
        }
    }
}

/// An automorphism to use for the fixed-point-free lower bound. When none
/// are given, scalar witnesses (SL instances) or a right multiplication of
/// minimal order (Cayley instances) are derived automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessSpec {
    /// Scalar matrix `hI` on an `sl_tuples` instance.
    Scalar { h: FieldValue },
    /// Right multiplication by the group element given as a permutation of
    /// the generating action's points.
    RightMult { element: Permutation },
    /// A permutation of the configuration's vertices.
    Permutation { phi: Permutation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub instance: Instance,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSpec>,
}

impl InstanceSpec {
    pub fn new(instance: Instance) -> Self {
        Self {
            schema_version: SPEC_SCHEMA_VERSION,
            name: None,
            instance,
            checks: default_checks(),
            caps: Caps::default(),
            witnesses: Vec::new(),
        }
    }

    pub fn with_checks(mut self, checks: &[Check]) -> Self {
        self.checks = checks.to_vec();
        self
    }

    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let spec: Self = serde_json::from_str(text).map_err(|e| ExperimentError::Parse(e.to_string()))?;
        if spec.schema_version != SPEC_SCHEMA_VERSION {
            return Err(ExperimentError::Parse(format!(
                "unsupported schema_version {} (expected {SPEC_SCHEMA_VERSION})",
                spec.schema_version
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("spec parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Invalid(Error),
    #[error("resource cap exceeded: {0}")]
    Cap(Error),
}

impl ExperimentError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) | Self::Invalid(_) => 2,
            Self::Cap(_) => 3,
        }
    }
}

impl From<Error> for ExperimentError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap { .. }
            | Error::GroupTooLarge { .. }
            | Error::IterationCapExceeded(_)
            | Error::FieldTooLarge(_) => Self::Cap(e),
            other => Self::Invalid(other),
        }
    }
}

/// Per-run overrides of the spec.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_iter: Option<usize>,
    pub snapshots: bool,
    pub timestamp: bool,
    pub checks: Option<Vec<Check>>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_iter: None,
            snapshots: true,
            timestamp: true,
            checks: None,
        }
    }
}

impl RunOptions {
    /// No snapshots and no timestamp: the report is a pure function of the
    /// spec text.
    pub fn reproducible() -> Self {
        Self {
            snapshots: false,
            timestamp: false,
            ..Self::default()
        }
    }
}

/// Whether the configuration is a Schreier or a Cayley configuration, with
/// the data needed by the checks.
pub enum Family {
    Schreier {
        action: ValidatedAction,
        sl: Option<SlInstance>,
    },
    Cayley {
        action: ValidatedAction,
        group: CayleyGroup,
    },
}

/// An instance ready to refine.
pub struct Built {
    pub config: Configuration,
    pub family: Family,
    pub summary: InstanceSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub kind: String,
    pub family: String,
    pub vertices: usize,
    pub colors: usize,
    pub generators: Vec<String>,
    pub origin: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_choice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
}

fn explicit_action(
    points: usize,
    generators: &BTreeMap<String, Permutation>,
    origin: String,
) -> crate::Result<ValidatedAction> {
    let mut spec = ActionSpec::new(points, origin);
    for (label, perm) in generators {
        spec = spec.with_generator(label.clone(), perm.clone());
    }
    genset_validate(spec)
}

fn sl_instance(
    n: usize,
    q: u64,
    k: usize,
    modulus: Option<&[u32]>,
    matrices: Option<&BTreeMap<String, Vec<Vec<FieldValue>>>>,
    cap: usize,
) -> crate::Result<SlInstance> {
    let field = Field::of_order_with(q, modulus)?;
    let choice = match matrices {
        None => GeneratorChoice::Transvections,
        Some(list) => {
            let mut out = Vec::new();
            for (label, rows) in list {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|v| v.resolve(&field)).collect::<crate::Result<Vec<_>>>())
                    .collect::<crate::Result<Vec<_>>>()?;
                out.push((label.clone(), FqMatrix::from_rows(&field, &rows)?));
            }
            GeneratorChoice::Matrices(out)
        }
    };
    sl_tuples(n, &field, k, &choice, cap)
}

fn summary_of(kind: &str, family: &str, action: &ValidatedAction, config: &Configuration) -> InstanceSummary {
    let spec = action.spec();
    InstanceSummary {
        kind: kind.to_string(),
        family: family.to_string(),
        vertices: config.vertex_count(),
        colors: config.color_count(),
        generators: action.labels().to_vec(),
        origin: spec.origin.clone(),
        notes: spec.notes.clone(),
        point_labels: spec.point_labels.clone(),
        q: None,
        generator_choice: None,
        group_order: None,
    }
}

fn check_vertex_cap(points: usize, cap: usize) -> crate::Result<()> {
    if points > cap {
        return Err(Error::SizeCap {
            needed: points as u128,
            cap,
        });
    }
    Ok(())
}

/// Builds the iteration-0 configuration of an instance.
pub fn build(spec: &InstanceSpec) -> Result<Built, ExperimentError> {
    let caps = &spec.caps;
    let kind = spec.instance.kind();
    let schreier = |action: ValidatedAction, sl: Option<SlInstance>| -> crate::Result<Built> {
        check_vertex_cap(action.points(), caps.vertices)?;
        let config = schreier_config(&action);
        let mut summary = summary_of(kind, "schreier", &action, &config);
        if let Some(inst) = &sl {
            summary.q = Some(inst.q());
        }
        Ok(Built {
            config,
            family: Family::Schreier { action, sl },
            summary,
        })
    };
    let cayley = |action: ValidatedAction| -> crate::Result<Built> {
        let group = CayleyGroup::close(&action, caps.group.min(caps.vertices))?;
        let config = group.configuration();
        let mut summary = summary_of(kind, "cayley", &action, &config);
        summary.group_order = Some(group.order());
        Ok(Built {
            config,
            family: Family::Cayley { action, group },
            summary,
        })
    };
    let built = match &spec.instance {
        Instance::Explicit {
            points,
            generators,
            point_labels,
        } => {
            check_vertex_cap(*points, caps.vertices)?;
            let mut action = explicit_action(*points, generators, "explicit generators".into())?;
            if let Some(labels) = point_labels {
                if labels.len() != *points {
                    return Err(Error::SizeMismatch(labels.len(), *points).into());
                }
                let mut s = action.spec().clone();
                s.point_labels = Some(labels.clone());
                action = genset_validate(s)?;
            }
            schreier(action, None)
        }
        Instance::Cycle { n, steps } => cycle_cayley(*n, steps.as_deref()).and_then(cayley),
        Instance::SymAdjacent { n } => sym_adjacent(*n).and_then(|a| schreier(a, None)),
        Instance::HeptagonPair => schreier(heptagon_pair(), None),
        Instance::SlTuples {
            n,
            q,
            k,
            modulus,
            matrices,
        } => sl_instance(*n, *q, *k, modulus.as_deref(), matrices.as_ref(), caps.vertices).and_then(|inst| {
            let choice = if matrices.is_some() { "explicit matrices" } else { "transvections" };
            let mut b = schreier(inst.action.clone(), Some(inst))?;
            b.summary.generator_choice = Some(choice.to_string());
            Ok(b)
        }),
        Instance::CayleyOf {
            symmetric,
            points,
            generators,
        } => match (symmetric, points, generators) {
            (Some(n), None, None) => sym_cayley(*n).and_then(cayley),
            (None, Some(p), Some(g)) => {
                check_vertex_cap(*p, caps.vertices)?;
                explicit_action(*p, g, "explicit generators".into()).and_then(cayley)
            }
            _ => {
                return Err(ExperimentError::Parse(
                    "cayley_of needs either `symmetric` or both `points` and `generators`".into(),
                ))
            }
        },
    };
    Ok(built?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Software {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceSummary {
    pub coherent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<CoherenceViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub provenance: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismEntry {
    pub provenance: String,
    pub result: AutomorphismCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BartholdiEntry {
    pub k: usize,
    pub radius: usize,
    pub result: PartitionCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedCheck {
    pub check: Check,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub software: Software,
    pub spec_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub instance: InstanceSummary,
    /// Diameter of the graph of nonempty colors.
    pub diameter: usize,
    /// Diameter of the Schreier or Cayley graph itself.
    pub graph_diameter: usize,
    pub antipode_unique: bool,
    pub wl_count: usize,
    pub class_counts: Vec<usize>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence: Option<CoherenceSummary>,
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<AutomorphismEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bartholdi: Vec<BartholdiEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedCheck>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<Vec<ConfigDocument>>,
}

impl Report {
    /// 0 when every requested check that applies holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn resolve_witnesses(
    spec: &InstanceSpec,
    built: &Built,
) -> Result<Vec<AutomorphismWitness>, ExperimentError> {
    let config = &built.config;
    let mut out = Vec::new();
    for w in &spec.witnesses {
        let witness = match (w, &built.family) {
            (WitnessSpec::Permutation { phi }, _) => {
                AutomorphismWitness::validate(phi.clone(), "user", config)?
            }
            (WitnessSpec::Scalar { h }, Family::Schreier { sl: Some(inst), .. }) => {
                let h = h.resolve(&inst.field)?;
                let phi = perm_from_matrix(&FqMatrix::scalar(&inst.field, inst.n, h), &inst.tuples)?;
                AutomorphismWitness::validate(phi, format!("scalar {h}"), config)?
            }
            (WitnessSpec::RightMult { element }, Family::Cayley { group, .. }) => {
                let idx = group.index_of(element).ok_or_else(|| {
                    ExperimentError::Invalid(Error::Spec("right_mult element is not in the group".into()))
                })?;
                right_mult_witness(group, idx)?
            }
            (WitnessSpec::Scalar { .. }, _) => {
                return Err(ExperimentError::Invalid(Error::Spec(
                    "scalar witnesses need an sl_tuples instance".into(),
                )))
            }
            (WitnessSpec::RightMult { .. }, _) => {
                return Err(ExperimentError::Invalid(Error::Spec(
                    "right_mult witnesses need a Cayley instance".into(),
                )))
            }
        };
        out.push(witness);
    }
    if out.is_empty() {
        match &built.family {
            Family::Schreier { sl: Some(inst), .. } => out = scalar_witnesses(inst)?,
            Family::Cayley { group, .. } if group.order() > 1 => {
                out.push(minimal_right_mult_witness(group)?)
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Runs an experiment from its JSON spec text.
pub fn run_experiment(text: &str, opts: &RunOptions) -> Result<Report, ExperimentError> {
    let spec = InstanceSpec::parse(text)?;
    run_spec(&spec, sha256_hex(text.as_bytes()), opts)
}

/// Runs an already parsed spec; `spec_digest` is recorded verbatim.
pub fn run_spec(spec: &InstanceSpec, spec_digest: String, opts: &RunOptions) -> Result<Report, ExperimentError> {
    let mut checks = opts.checks.clone().unwrap_or_else(|| spec.checks.clone());
    checks.sort();
    checks.dedup();
    let wants = |c: Check| checks.contains(&c);

    let built = build(spec)?;
    let config = &built.config;
    let keep_history = opts.snapshots || wants(Check::Bartholdi) || wants(Check::Automorphisms);
    let trace = wl_run(
        config,
        WlOptions {
            max_iter: opts.max_iter.or(spec.caps.iterations),
            keep_history,
        },
    )?;
    let wl_count = trace.wl_count();

    let gamma = gamma_graph(config).distances();
    let graph = generator_graph(config).distances();
    let diameter = gamma.diameter()?;
    let graph_diameter = graph.diameter()?;
    let antipode_unique = graph.antipode_unique()?;

    let mut passed = true;
    let mut skipped = Vec::new();
    let mut skip = |check: Check, reason: &str| {
        skipped.push(SkippedCheck {
            check,
            reason: reason.to_string(),
        })
    };

    let coherence = wants(Check::Coherence).then(|| match check_coherent(trace.last()) {
        Ok(cert) => CoherenceSummary {
            coherent: true,
            digest: Some(cert.digest()),
            triples: Some(cert.triple_count()),
            violation: None,
        },
        Err(v) => CoherenceSummary {
            coherent: false,
            digest: None,
            triples: None,
            violation: Some(v),
        },
    });
    if let Some(c) = &coherence {
        passed &= c.coherent;
    }

    let mut bounds = Vec::new();
    if wants(Check::Upper) {
        if diameter == 0 {
            skip(Check::Upper, "diameter 0");
        } else {
            bounds.push(verify_upper(wl_count, diameter)?);
        }
    }
    if wants(Check::LowerSl) {
        match &built.family {
            Family::Schreier { sl: Some(inst), .. } if inst.q() <= 2 => skip(Check::LowerSl, Q2_NOTE),
            Family::Schreier { sl: Some(inst), .. } => {
                let mut report = verify_lower_sl(wl_count, graph_diameter, inst.q())?;
                if inst.k == inst.n {
                    report.notes.push("hypothesis not met: k = n".to_string());
                }
                bounds.push(report)
            }
            _ => skip(Check::LowerSl, "not an sl_tuples instance"),
        }
    }
    if wants(Check::CayleyExact) {
        match &built.family {
            Family::Cayley { .. } if graph_diameter > 0 => {
                bounds.push(cayley_exact(wl_count, graph_diameter, antipode_unique)?)
            }
            Family::Cayley { .. } => skip(Check::CayleyExact, "diameter 0"),
            Family::Schreier { .. } => skip(Check::CayleyExact, "not a Cayley instance"),
        }
    }

    let need_witnesses = wants(Check::LowerGeneral) || wants(Check::Automorphisms);
    let witnesses = if need_witnesses {
        resolve_witnesses(spec, &built)?
    } else {
        Vec::new()
    };
    if wants(Check::LowerGeneral) {
        if witnesses.is_empty() {
            skip(Check::LowerGeneral, "no witness available");
        } else if diameter == 0 {
            skip(Check::LowerGeneral, "diameter 0");
        } else {
            let mut report = verify_lower_general(wl_count, diameter, &witnesses)?;
            let empty = empty_colors(config).len();
            if empty > 1 {
                report
                    .notes
                    .push(format!("hypothesis not met: {empty} empty colors (one expected)"));
            }
            bounds.push(report);
        }
    }
    passed &= bounds.iter().all(|b| b.holds);

    let mut automorphisms = Vec::new();
    if wants(Check::Automorphisms) {
        if witnesses.is_empty() {
            skip(Check::Automorphisms, "no witness available");
        }
        for w in &witnesses {
            let result = verify_automorphism(&trace, w.phi())?;
            passed &= result == AutomorphismCheck::Pass;
            automorphisms.push(AutomorphismEntry {
                provenance: w.provenance().to_string(),
                result,
            });
        }
    }

    let mut bartholdi = Vec::new();
    if wants(Check::Bartholdi) {
        match &built.family {
            Family::Cayley { group, .. } => {
                for k in 0..=wl_count {
                    let result = bartholdi_check(group, &trace, k)?;
                    passed &= result == PartitionCheck::Pass;
                    bartholdi.push(BartholdiEntry {
                        k,
                        radius: 1 << k,
                        result,
                    });
                }
            }
            Family::Schreier { .. } => skip(Check::Bartholdi, "not a Cayley instance"),
        }
    }

    let snapshots = opts
        .snapshots
        .then(|| trace.snapshots().map(|(_, c)| c.to_document()).collect());
    let timestamp = opts.timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });

    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        software: Software {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        spec_digest,
        timestamp,
        name: spec.name.clone(),
        instance: built.summary,
        diameter,
        graph_diameter,
        antipode_unique,
        wl_count,
        class_counts: trace.class_counts().to_vec(),
        checks,
        coherence,
        bounds,
        witnesses: witnesses
            .iter()
            .map(|w| WitnessSummary {
                provenance: w.provenance().to_string(),
                order: w.order(),
            })
            .collect(),
        automorphisms,
        bartholdi,
        skipped,
        passed,
        snapshots,
    })
}

/// The iteration-0 configuration of a spec, as a document.
pub fn dump_config(text: &str) -> Result<ConfigDocument, ExperimentError> {
    let spec = InstanceSpec::parse(text)?;
    Ok(build(&spec)?.config.to_document())
}

/// Parses a configuration document.
pub fn load_config(text: &str) -> Result<Configuration, ExperimentError> {
    let doc: ConfigDocument = serde_json::from_str(text).map_err(|e| ExperimentError::Parse(e.to_string()))?;
    Ok(Configuration::from_document(&doc)?)
}

/// Refinement trace of a loaded configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefineReport {
    pub schema_version: u32,
    pub vertices: usize,
    pub wl_count: usize,
    pub class_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<Vec<ConfigDocument>>,
}

pub fn refine(config: &Configuration, max_iter: Option<usize>, snapshots: bool) -> Result<RefineReport, ExperimentError> {
    let trace: WlTrace = wl_run(
        config,
        WlOptions {
            max_iter,
            keep_history: snapshots,
        },
    )?;
    Ok(RefineReport {
        schema_version: REPORT_SCHEMA_VERSION,
        vertices: config.vertex_count(),
        wl_count: trace.wl_count(),
        class_counts: trace.class_counts().to_vec(),
        snapshots: snapshots.then(|| trace.snapshots().map(|(_, c)| c.to_document()).collect()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub kind: &'static str,
    pub family: &'static str,
    pub parameters: &'static str,
    pub example: serde_json::Value,
}

/// Built-in instance kinds with parameter ranges and an example spec each.
pub fn list_examples() -> Vec<CatalogEntry> {
    let spec = |instance: serde_json::Value, checks: &[&str]| {
        json!({ "schema_version": SPEC_SCHEMA_VERSION, "instance": instance, "checks": checks })
    };
    vec![
        CatalogEntry {
            kind: "explicit",
            family: "schreier",
            parameters: "points ≥ 1; generators: label → 0-indexed image array, must include `e` and be inverse-closed and transitive",
            example: spec(
                json!({"kind": "explicit", "points": 3, "generators": {"e": [0, 1, 2], "r": [1, 2, 0], "r^-1": [2, 0, 1]}}),
                &["upper", "coherence"],
            ),
        },
        CatalogEntry {
            kind: "cycle",
            family: "cayley",
            parameters: "n ≥ 3; steps: optional nonzero integers, closed under negation (default [1])",
            example: spec(json!({"kind": "cycle", "n": 8}), &["upper", "cayley_exact", "bartholdi", "coherence"]),
        },
        CatalogEntry {
            kind: "sym_adjacent",
            family: "schreier",
            parameters: "n ≥ 3; Sym(n) on Z/nZ by the transpositions (i i+1 mod n)",
            example: spec(json!({"kind": "sym_adjacent", "n": 7}), &["upper", "coherence", "lower_general"]),
        },
        CatalogEntry {
            kind: "heptagon_pair",
            family: "schreier",
            parameters: "none; 14 points, two 7-cycles and their inverses",
            example: spec(json!({"kind": "heptagon_pair"}), &["upper", "coherence"]),
        },
        CatalogEntry {
            kind: "sl_tuples",
            family: "schreier",
            parameters: "n ≥ 2; q a prime power ≤ 1024 (modulus required unless q ∈ {4, 8, 9} or prime); 1 ≤ k ≤ n; optional matrices",
            example: spec(
                json!({"kind": "sl_tuples", "n": 2, "q": 5, "k": 1}),
                &["upper", "lower_sl", "lower_general", "automorphisms", "coherence"],
            ),
        },
        CatalogEntry {
            kind: "cayley_of",
            family: "cayley",
            parameters: "symmetric: n ≥ 2, or points + generators as for explicit; group order ≤ caps.group",
            example: spec(
                json!({"kind": "cayley_of", "symmetric": 4}),
                &["upper", "cayley_exact", "bartholdi", "coherence"],
            ),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heptagon_spec() -> String {
        r#"{"schema_version": 1, "instance": {"kind": "heptagon_pair"}, "checks": ["upper", "coherence"]}"#.into()
    }

    #[test]
    fn heptagon_report() {
        let r = run_experiment(&heptagon_spec(), &RunOptions::reproducible()).unwrap();
        assert_eq!(r.diameter, 4);
        assert_eq!(r.wl_count, 3);
        assert!(r.passed);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.instance.point_labels.as_ref().unwrap()[0], "1");
        assert!(r.coherence.as_ref().unwrap().coherent);
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let e = run_experiment(r#"{"schema_version": 1, "instance": {"kind": "unknown"}}"#, &RunOptions::default())
            .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(e, ExperimentError::Parse(_)));
    }

    #[test]
    fn failed_checks_exit_one() {
        let mut r = run_experiment(&heptagon_spec(), &RunOptions::reproducible()).unwrap();
        r.passed = false;
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn wrong_schema_version() {
        let e = InstanceSpec::parse(r#"{"schema_version": 7, "instance": {"kind": "heptagon_pair"}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn caps_map_to_exit_three() {
        let text = r#"{"schema_version": 1, "instance": {"kind": "cayley_of", "symmetric": 6}, "caps": {"group": 100}}"#;
        let e = run_experiment(text, &RunOptions::reproducible()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let text = r#"{"schema_version": 1, "instance": {"kind": "sl_tuples", "n": 3, "q": 7, "k": 2}, "caps": {"vertices": 1000}}"#;
        assert_eq!(run_experiment(text, &RunOptions::reproducible()).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn reproducible_reports_are_identical() {
        let a = run_experiment(&heptagon_spec(), &RunOptions::reproducible()).unwrap().to_json();
        let b = run_experiment(&heptagon_spec(), &RunOptions::reproducible()).unwrap().to_json();
        assert_eq!(a, b);
        assert!(!a.contains("timestamp"));
    }

    #[test]
    fn sym_family_has_no_witness() {
        let text = r#"{"schema_version": 1, "instance": {"kind": "sym_adjacent", "n": 5}, "checks": ["lower_general"]}"#;
        let r = run_experiment(text, &RunOptions::reproducible()).unwrap();
        assert!(r.passed);
        assert_eq!(r.skipped[0].reason, "no witness available");
    }

    #[test]
    fn q2_lower_bound_is_skipped() {
        let text = r#"{"schema_version": 1, "instance": {"kind": "sl_tuples", "n": 2, "q": 2, "k": 1}, "checks": ["lower_sl"]}"#;
        let r = run_experiment(text, &RunOptions::reproducible()).unwrap();
        assert_eq!(r.skipped[0].reason, Q2_NOTE);
        assert!(r.instance.notes.iter().any(|n| n == Q2_NOTE));
    }

    #[test]
    fn catalog_examples_run() {
        let catalog = list_examples();
        assert!(catalog.iter().any(|e| e.kind == "heptagon_pair"));
        for entry in catalog {
            let r = run_experiment(&entry.example.to_string(), &RunOptions::reproducible()).unwrap();
            assert!(r.passed, "{}", entry.kind);
            assert_eq!(r.instance.kind, entry.kind);
        }
    }

    #[test]
    fn dump_cycle_five() {
        let doc = dump_config(r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 5}}"#).unwrap();
        let mut origins: Vec<&str> = doc.table.iter().map(|(_, i)| i.origin.as_str()).collect();
        origins.sort();
        assert_eq!(origins, vec!["+1", "-1", "e", "∅"]);
    }

    #[test]
    fn explicit_witness_spec() {
        let text = r#"{"schema_version": 1, "instance": {"kind": "sl_tuples", "n": 2, "q": 7, "k": 1},
            "checks": ["lower_general"], "witnesses": [{"type": "scalar", "h": 6}]}"#;
        let r = run_experiment(text, &RunOptions::reproducible()).unwrap();
        assert_eq!(r.witnesses, vec![WitnessSummary { provenance: "scalar 6".into(), order: 2 }]);
        assert!(r.passed);
    }

    #[test]
    fn extension_field_matrices() {
        // F4 elements as coefficient arrays; x is [0, 1]. Two involutions
        // alone would only generate a dihedral group.
        let text = r#"{"schema_version": 1, "instance": {"kind": "sl_tuples", "n": 2, "q": 4, "k": 1,
            "matrices": {"a": [[1, [0, 1]], [0, 1]], "b": [[1, 0], [1, 1]], "c": [[1, 1], [0, 1]]}}}"#;
        let r = run_experiment(text, &RunOptions::reproducible()).unwrap();
        assert_eq!(r.instance.vertices, 15);
        assert_eq!(r.instance.generator_choice.as_deref(), Some("explicit matrices"));
    }
}
