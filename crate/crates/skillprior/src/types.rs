//! Shared domain types: skills, goals, trajectory summaries, relevance
//! flags, priors, and per-decision records.
//!
//! Everything here is an immutable value after construction; validation
//! happens in the constructors and nowhere else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TypeError;

/// Identifier for the built-in task families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TaskId {
    UnlockReach,
    KeyCorridorV0,
    KeyCorridorV1,
    DeskCleanUp,
    SwapBlocks,
}

impl TaskId {
    pub const ALL: [TaskId; 5] = [
        TaskId::UnlockReach,
        TaskId::KeyCorridorV0,
        TaskId::KeyCorridorV1,
        TaskId::DeskCleanUp,
        TaskId::SwapBlocks,
    ];

    /// Grid tasks re-sample their layout every episode; block tasks keep
    /// one layout per run seed (one "robot session").
    pub fn is_grid(self) -> bool {
        matches!(
            self,
            TaskId::UnlockReach | TaskId::KeyCorridorV0 | TaskId::KeyCorridorV1
        )
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TaskId::UnlockReach => "UnlockReach",
            TaskId::KeyCorridorV0 => "KeyCorridorV0",
            TaskId::KeyCorridorV1 => "KeyCorridorV1",
            TaskId::DeskCleanUp => "DeskCleanUp",
            TaskId::SwapBlocks => "SwapBlocks",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for TaskId {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "UnlockReach" => Ok(TaskId::UnlockReach),
            "KeyCorridorV0" => Ok(TaskId::KeyCorridorV0),
            "KeyCorridorV1" => Ok(TaskId::KeyCorridorV1),
            "DeskCleanUp" => Ok(TaskId::DeskCleanUp),
            "SwapBlocks" => Ok(TaskId::SwapBlocks),
        _ => Err(TypeError::UnknownTask(s.to_string())),
        }
    }
}

/// A named temporally-extended action. `id` is dense within an
/// environment and doubles as the handle into that environment's skill
/// table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Skill {
    pub id: usize,
    pub description: String,
}

impl Skill {
    pub fn new(id: usize, description: impl Into<String>) -> Result<Self, TypeError> {
        let description = description.into();
        if description.is_empty() {
            return Err(TypeError::EmptySkillDescription);
        }
        if description.contains('\n') {
            return Err(TypeError::SkillDescriptionNewline(description));
        }
        Ok(Skill { id, description })
    }
}

/// The full task instruction, stable for the whole episode. The text may
/// carry constraint clauses ("avoid the yellow and grey doors") that the
/// relevance backends are expected to honor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoalInstruction {
    pub text: String,
    pub task_id: TaskId,
}

impl GoalInstruction {
    pub fn new(text: impl Into<String>, task_id: TaskId) -> Result<Self, TypeError> {
        let text = text.into();
        if text.is_empty() {
            return Err(TypeError::EmptyGoalText);
        }
        Ok(GoalInstruction { text, task_id })
    }
}

/// Sliding window over the descriptions of recently completed skills,
/// oldest first. The canonical text rendering is what prompts and cache
/// keys see.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrajectorySummary {
    window: usize,
    recent_skills: Vec<String>,
}

/// Default window size: the last two completed skills.
pub const DEFAULT_TRAJ_WINDOW: usize = 2;

impl TrajectorySummary {
    pub fn new(window: usize) -> Self {
        TrajectorySummary {
            window,
            recent_skills: Vec::new(),
        }
    }

    pub fn from_slice(window: usize, skills: &[&str]) -> Self {
        let mut s = TrajectorySummary::new(window);
        for d in skills {
            s.push(d);
        }
        s
    }

    /// Append a completed skill description, evicting the oldest entry
    /// once the window is full.
    pub fn push(&mut self, description: &str) {
        if self.window == 0 {
            return;
        }
        if self.recent_skills.len() == self.window {
            self.recent_skills.remove(0);
        }
        self.recent_skills.push(description.to_string());
    }

    pub fn recent(&self) -> &[String] {
        &self.recent_skills
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn is_empty(&self) -> bool {
        self.recent_skills.is_empty()
    }

    /// Canonical comma-joined rendering, in execution order. The empty
    /// history renders as the empty string.
    pub fn render(&self) -> String {
        self.recent_skills.join(", ")
    }
}

/// Per-skill yes/no relevance bits, one per skill in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVector {
    flags: Vec<u8>,
}

impl FlagVector {
    pub fn new(flags: Vec<u8>) -> Result<Self, TypeError> {
        if flags.is_empty() {
            return Err(TypeError::EmptyFlags);
        }
        if let Some(&bad) = flags.iter().find(|&&f| f > 1) {
            return Err(TypeError::NonBinaryFlag(bad));
        }
        Ok(FlagVector { flags })
    }

    pub fn bits(&self) -> &[u8] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Log-probabilities over skills; `sum(exp(.)) == 1` within 1e-9.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorVector {
    log_probs: Vec<f64>,
}

/// Normalization slack allowed when constructing a [`PriorVector`].
pub const PRIOR_NORMALIZATION_TOL: f64 = 1e-9;

impl PriorVector {
    pub fn new(log_probs: Vec<f64>) -> Result<Self, TypeError> {
        if log_probs.is_empty() {
            return Err(TypeError::EmptyFlags);
        }
        if log_probs.iter().any(|v| !v.is_finite()) {
            return Err(TypeError::NonFinitePrior);
        }
        let total: f64 = log_probs.iter().map(|v| v.exp()).sum();
        if (total - 1.0).abs() > PRIOR_NORMALIZATION_TOL {
            return Err(TypeError::UnnormalizedPrior(total));
        }
        Ok(PriorVector { log_probs })
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }

    pub fn len(&self) -> usize {
        self.log_probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_probs.is_empty()
    }
}

/// One high-level decision, as recorded by the training loop.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRecord {
    pub state_key: String,
    pub skill_id: usize,
    pub lambda_used: f64,
    pub reward: f64,
    pub next_state_key: String,
    pub terminal: bool,
    pub success: bool,
}

impl DecisionRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        state_key: impl Into<String>,
        skill_id: usize,
        lambda_used: f64,
        reward: f64,
        next_state_key: impl Into<String>,
        terminal: bool,
        success: bool,
    ) -> Result<Self, TypeError> {
        if !(0.0..=1.0).contains(&lambda_used) {
            return Err(TypeError::LambdaOutOfRange(lambda_used));
        }
        Ok(DecisionRecord {
            state_key: state_key.into(),
            skill_id,
            lambda_used,
            reward,
            next_state_key: next_state_key.into(),
            terminal,
            success,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn render_empty_history() {
        assert_eq!(TrajectorySummary::new(2).render(), "");
    }

    #[test]
    fn render_single_element() {
        let t = TrajectorySummary::from_slice(2, &["pick:green:key"]);
        assert_eq!(t.render(), "pick:green:key");
    }

    #[test]
    fn render_two_elements_matches_prompt_form() {
        let t = TrajectorySummary::from_slice(2, &["pick:green:key", "unlock:green:door"]);
        assert_eq!(t.render(), "pick:green:key, unlock:green:door");
    }

    #[test]
    fn push_on_full_window_drops_oldest() {
        let mut t = TrajectorySummary::from_slice(2, &["a", "b"]);
        t.push("c");
        assert_eq!(t.recent(), &["b".to_string(), "c".to_string()]);
        assert_eq!(t.recent().len(), 2);
    }

    #[test]
    fn skill_rejects_empty_and_newline() {
        assert!(Skill::new(0, "").is_err());
        assert!(Skill::new(0, "pick\nkey").is_err());
        assert!(Skill::new(0, "pick:green:key").is_ok());
    }

    #[test]
    fn flags_must_be_binary() {
        assert!(FlagVector::new(vec![0, 1, 1]).is_ok());
        assert!(FlagVector::new(vec![0, 2]).is_err());
        assert!(FlagVector::new(vec![]).is_err());
    }

    #[test]
    fn prior_requires_normalization() {
        let ln3 = 3.0f64.ln();
        assert!(PriorVector::new(vec![-ln3, -ln3, -ln3]).is_ok());
        assert!(PriorVector::new(vec![-1.0, -1.0, -1.0]).is_err());
        assert!(PriorVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn decision_record_validates_lambda() {
        assert!(DecisionRecord::new("s", 0, 1.5, 0.0, "s2", false, false).is_err());
        assert!(DecisionRecord::new("s", 0, 0.5, 0.0, "s2", false, false).is_ok());
    }

    proptest! {
        // Window semantics: appending to a full summary keeps length K and
        // drops exactly the oldest entry.
        #[test]
        fn window_append_preserves_length(k in 1usize..6, names in prop::collection::vec("[a-z]{1,8}", 0..24)) {
            let mut t = TrajectorySummary::new(k);
            for (i, n) in names.iter().enumerate() {
                t.push(n);
                let expect = (i + 1).min(k);
                prop_assert_eq!(t.recent().len(), expect);
                // newest entry is always last
                prop_assert_eq!(t.recent().last().unwrap(), n);
            }
        }

        // Injectivity of the rendering over vocabularies whose entries
        // contain no ", " separator.
        #[test]
        fn render_injective(a in prop::collection::vec("[a-z:]{1,10}", 0..3),
                            b in prop::collection::vec("[a-z:]{1,10}", 0..3)) {
            let ta = TrajectorySummary::from_slice(3, &a.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            let tb = TrajectorySummary::from_slice(3, &b.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            if ta.render() == tb.render() {
                prop_assert_eq!(a, b);
            }
        }
    }
}
