//! Instance generators and property checks.

mod axioms;
mod generate;
mod lemmas;

pub use axioms::{check_rank_axioms, AxiomReport};
pub use generate::{
    corpus, field_of_order, generate, random_linear, CorpusEntry, GeneratorKind, GeneratorSpec, Graph, Instance, Named,
};
pub use lemmas::{
    check_lemma, default_pool, guts_augmented, search_hypothesis_instances, LemmaId, LemmaInstance, LemmaReport,
    SearchResult, Witness, DEFAULT_BUDGET,
};
