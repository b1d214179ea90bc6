//! Player strategies: the explicit constructions and baseline opponents.

mod bipartite;
mod breaker_complete;
mod breaker_cycle;
mod breaker_path;
mod catalog;
mod duplicator;
mod exhaustive;
mod heuristics;
mod line;
mod mirror;
mod reply;
mod series;
mod translated;

pub use bipartite::BipartiteB;
pub use breaker_complete::{classify, star_of, BreakerComplete, Position, Star, COMPLETE_MOVE_BUDGET};
pub use breaker_cycle::{cycle_opening, BreakerCycle, Opening};
pub use catalog::{breaker_name, build_strategy, strategy_sides, translated_for, STRATEGY_NAMES};
pub use breaker_path::{budget_for, reduced_budget, BreakerPath, EXACT_BREAKER_EDGES};
pub use exhaustive::{against_every_a, against_every_b, Factory, TreeReport};
pub use duplicator::{DuplicatorTable, Gap, GapKind, ThresholdDuplicator};
pub use heuristics::{fewest_replies, AdversarialRandom, GreedyCopy, RandomPlayer};
pub use mirror::Mirror;
pub use series::{ceil_log2, phi, series_budget, Check, Phase, SeriesLedger, SeriesRecord};
pub use reply::{is_valid_reply, valid_replies};
pub use translated::{SimulationStop, TranslationLog, Translated};
