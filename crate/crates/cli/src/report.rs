//! JSON report schema. Every section except `group` is optional; absent
//! sections serialize as `null` so the key set is fixed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: String,
    pub group: GroupSection,
    pub symplectic: Option<SymplecticSection>,
    pub d2: Option<D2Section>,
    pub n2: Option<N2Section>,
    pub colimit_check: Option<ColimitCheckSection>,
    pub lemmas: Option<LemmaSection>,
    pub homology: Option<HomologySection>,
    pub hom_count: Option<HomCountSection>,
    pub conjecture: Option<ConjectureSection>,
    /// `null` for commands that do not decide asphericity.
    pub verdict: Option<VerdictSection>,
}

impl AnalysisReport {
    pub fn new(command: &str, group: GroupSection) -> Self {
        AnalysisReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            group,
            symplectic: None,
            d2: None,
            n2: None,
            colimit_check: None,
            lemmas: None,
            homology: None,
            hom_count: None,
            conjecture: None,
            verdict: None,
        }
    }

    /// Whether anything in the report stopped short of a definite answer.
    pub fn is_inconclusive(&self) -> bool {
        let verdict = self
            .verdict
            .as_ref()
            .is_some_and(|v| v.verdict == VerdictKind::Inconclusive);
        let n2 = self
            .n2
            .as_ref()
            .is_some_and(|n| n.enumeration.state == EnumerationStateKind::LimitExceeded);
        let search = self
            .symplectic
            .as_ref()
            .is_some_and(|s| s.outcome == SymplecticOutcome::NotFoundWithinBudget);
        let conjecture = self.conjecture.as_ref().is_some_and(|c| c.agreement == "inconclusive");
        verdict || n2 || search || conjecture
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub spec: String,
    pub order: Option<u128>,
    pub abelian: bool,
    /// `enumerated` or `stabilizer_chain`.
    pub representation: String,
    pub conjugacy_classes: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub derived_order: Option<usize>,
    pub center_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymplecticOutcome {
    Valid,
    Invalid,
    Found,
    ExhaustedNone,
    NotFoundWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticSection {
    /// `check`, `find` or `seeded`.
    pub mode: String,
    pub r: Option<usize>,
    pub budget: Option<u64>,
    pub expanded: Option<u64>,
    pub outcome: SymplecticOutcome,
    pub sequence: Option<SequenceSection>,
    pub violation: Option<String>,
    pub structure: Option<StructureSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSection {
    pub r: usize,
    /// Canonical ids, when the ambient group is enumerated.
    pub ids: Option<Vec<usize>>,
    /// Cycle notation, matrices or family names.
    pub names: Vec<String>,
    pub commutator_id: Option<usize>,
    pub commutator: String,
    pub nontrivial: bool,
    pub even_permutations: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSection {
    pub subgroup_order: usize,
    pub derived_generated_by_commutator: bool,
    pub commutator_central: bool,
    pub bilinear: Option<bool>,
    pub commutator_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D2Section {
    /// Which group the section describes: `group` or `sequence_subgroup`.
    pub of: String,
    pub order: usize,
    pub derived_order: usize,
    pub antidiagonal_generation: Option<bool>,
    pub projection_kernel_is_derived: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationStateKind {
    Closed,
    LimitExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationSection {
    pub state: EnumerationStateKind,
    /// Live cosets at the end; the colimit order when closed.
    pub coset_count: usize,
    pub high_water: usize,
    pub total_defined: u64,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct N2Section {
    pub q: usize,
    /// `group` or `sequence_subgroup`.
    pub of: String,
    pub presented_order: usize,
    pub relators: usize,
    pub enumeration: EnumerationSection,
    pub kernel_order: Option<usize>,
    pub torsion_free: Option<bool>,
    pub k_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OutcomeKind {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColimitCheckSection {
    pub subgroup_order: usize,
    pub d2_order: usize,
    pub outcome: OutcomeKind,
    pub epsilon_bar_bijective: Option<bool>,
    pub factorization_holds: Option<bool>,
    pub d2_embeds: bool,
    pub image_symplectic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSection {
    pub seed: u64,
    pub merge_pairs_checked: usize,
    pub merge_exhaustive: bool,
    pub exponent_bound: i64,
    pub k_order: usize,
    pub commutator_order: usize,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyGroupEntry {
    pub degree: usize,
    pub rank: usize,
    /// Invariant factors as decimal strings.
    pub torsion: Vec<String>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologySection {
    pub q: usize,
    pub dim: usize,
    pub simplex_counts: Vec<usize>,
    pub groups: Vec<HomologyGroupEntry>,
    pub h1_from_presentation: Option<String>,
    pub h1_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomCountSection {
    pub n: usize,
    pub q: usize,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureSection {
    pub q: usize,
    pub nilpotency_class: Option<usize>,
    pub predicts_isomorphism: bool,
    pub observed_isomorphism: Option<bool>,
    /// `agree`, `disagree` or `inconclusive`.
    pub agreement: String,
    pub enumeration: EnumerationSection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "NOT_K_PI_1")]
    NotKPi1,
    #[serde(rename = "K_PI_1")]
    KPi1,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl VerdictKind {
    pub fn label(self) -> &'static str {
        match self {
            VerdictKind::NotKPi1 => "NOT_K_PI_1",
            VerdictKind::KPi1 => "K_PI_1",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSection {
    pub verdict: VerdictKind,
    pub certificate: CertificateSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSection {
    /// `abelian`, `symplectic_sequence`, `kernel_torsion` or `none`.
    pub kind: String,
    pub sequence: Option<SequenceSection>,
    /// A word in the colimit generators (signed element ids).
    pub torsion_word: Option<String>,
    pub torsion_order: Option<usize>,
    pub kernel_order: Option<usize>,
}
