//! The colimit groups `N_q(G)`: presentations, coset enumeration, the
//! subgroup `D_2(G)` of `G × G`, and the structural checks built on them.

mod d2;
mod presentation;
mod todd_coxeter;
mod verify;
mod word;

pub use d2::{antidiagonal_closure, d2, d2_antidiagonal_generation, D2Subgroup};
pub use presentation::{build_presentation, Presentation};
pub use todd_coxeter::{column, todd_coxeter, CosetTable, EnumerationState, DEFAULT_COSET_LIMIT};
pub use verify::{
    colimit_d2_verify, conjecture_probe, coset_map, epsilon_images, epsilon_kernel, kpi1_verdict, lemma_suite,
    omega_check, sequence_image_in_n2, Agreement, Certificate, ColimitD2Report, ConjectureReport, EnumerationSummary,
    KernelReport, LemmaReport, OmegaReport, Outcome, SequenceColimit, SequenceImageReport, Verdict, VerdictReport,
    MERGE_EXHAUSTIVE_LIMIT, MERGE_SAMPLES,
};
pub use word::Word;
