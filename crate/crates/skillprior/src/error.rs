use thiserror::Error;

/// Validation failures for the shared domain types.
#[derive(Debug, Error)]
pub enum TypeError {
    #[error("unknown task family: {0}")]
    UnknownTask(String),
    #[error("skill description must be non-empty")]
    EmptySkillDescription,
    #[error("skill description contains a newline: {0:?}")]
    SkillDescriptionNewline(String),
    #[error("goal instruction text must be non-empty")]
    EmptyGoalText,
    #[error("flag/prior vector must be non-empty")]
    EmptyFlags,
    #[error("relevance flag must be 0 or 1, got {0}")]
    NonBinaryFlag(u8),
    #[error("prior vector entries must be finite")]
    NonFinitePrior,
    #[error("prior vector is not normalized: sum(exp) = {0}")]
    UnnormalizedPrior(f64),
    #[error("lambda must lie in [0, 1], got {0}")]
    LambdaOutOfRange(f64),
}
