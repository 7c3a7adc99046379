//! Social choice functions: the named rules and an interface for tabled ones.

mod table;

pub use table::TabledFunction;

use thiserror::Error;

use crate::profile::{Ballot, Outcome, Profile};

/// Failure to evaluate a function on a profile.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The table has no outcome for this canonical profile.
    #[error("incomplete table: no outcome for {0}")]
    Incomplete(Profile),
    /// The profile lies outside the function's domain (wrong `m` or too many voters).
    #[error("profile {profile} is outside the domain (m = {m}, n_max = {n_max})")]
    OutOfDomain {
        profile: Profile,
        m: u8,
        n_max: usize,
    },
}

/// A total map from profiles to outcomes.
pub trait SocialChoiceFunction: Send + Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, p: &Profile) -> Result<Outcome, EvalError>;

    /// Declares that `evaluate` only depends on the canonical form. Checked, never trusted.
    fn claims_anonymous(&self) -> bool {
        false
    }
}

impl<F: SocialChoiceFunction + ?Sized> SocialChoiceFunction for &F {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn evaluate(&self, p: &Profile) -> Result<Outcome, EvalError> {
        (**self).evaluate(p)
    }

    fn claims_anonymous(&self) -> bool {
        (**self).claims_anonymous()
    }
}

/// The candidate with strictly more votes than every other, else 0.
pub fn majority_rule(p: &Profile) -> Outcome {
    let tally = p.tally();
    match tally.leaders().as_slice() {
        [k] if tally.count(*k) > 0 => Ballot::new(*k),
        _ => Ballot::ABSTAIN,
    }
}

/// `k` when `k` is the only candidate with votes, else 0.
pub fn unanimity_consent(p: &Profile) -> Outcome {
    match p.tally().support().as_slice() {
        [k] => Ballot::new(*k),
        _ => Ballot::ABSTAIN,
    }
}

/// The lowest-numbered candidate with any votes; 0 if everybody abstains.
pub fn lexicographic_first(p: &Profile) -> Outcome {
    p.values()
        .filter(|&v| v > 0)
        .min()
        .map_or(Ballot::ABSTAIN, Ballot::new)
}

pub fn constant_zero(_p: &Profile) -> Outcome {
    Ballot::ABSTAIN
}

/// A function backed by a plain closure or fn pointer.
pub struct FnRule<F> {
    name: String,
    anonymous: bool,
    f: F,
}

impl<F> FnRule<F>
where
    F: Fn(&Profile) -> Outcome + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnRule {
            name: name.into(),
            anonymous: false,
            f,
        }
    }

    pub fn anonymous(mut self) -> Self {
        self.anonymous = true;
        self
    }
}

impl<F> SocialChoiceFunction for FnRule<F>
where
    F: Fn(&Profile) -> Outcome + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, p: &Profile) -> Result<Outcome, EvalError> {
        Ok((self.f)(p))
    }

    fn claims_anonymous(&self) -> bool {
        self.anonymous
    }
}

/// A rule addressable from the command line.
pub struct NamedRule {
    id: &'static str,
    description: &'static str,
    rule: fn(&Profile) -> Outcome,
}

impl NamedRule {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn description(&self) -> &'static str {
        self.description
    }
}

impl SocialChoiceFunction for NamedRule {
    fn name(&self) -> &str {
        self.id
    }

    fn evaluate(&self, p: &Profile) -> Result<Outcome, EvalError> {
        Ok((self.rule)(p))
    }

    fn claims_anonymous(&self) -> bool {
        true
    }
}

pub static MAJORITY: NamedRule = NamedRule {
    id: "maj",
    description: "majority rule: a strict plurality leader wins, otherwise 0",
    rule: majority_rule,
};

pub static UNANIMITY_CONSENT: NamedRule = NamedRule {
    id: "uc",
    description: "unanimity consent: wins only when no other candidate has votes",
    rule: unanimity_consent,
};

pub static LEXICOGRAPHIC_FIRST: NamedRule = NamedRule {
    id: "lex",
    description: "lowest-numbered candidate with at least one vote",
    rule: lexicographic_first,
};

pub static CONSTANT_ZERO: NamedRule = NamedRule {
    id: "zero",
    description: "always 0",
    rule: constant_zero,
};

pub static REGISTRY: [&NamedRule; 4] = [
    &MAJORITY,
    &UNANIMITY_CONSENT,
    &LEXICOGRAPHIC_FIRST,
    &CONSTANT_ZERO,
];

pub fn lookup(id: &str) -> Option<&'static NamedRule> {
    REGISTRY.iter().copied().find(|r| r.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::enumerate_profiles;

    fn p(m: usize, b: &[u8]) -> Profile {
        Profile::new(m, b.iter().copied()).unwrap()
    }

    fn o(k: u8) -> Outcome {
        Ballot::new(k)
    }

    #[test]
    fn majority_examples() {
        assert_eq!(majority_rule(&p(2, &[1, 1, 2])), o(1));
        assert_eq!(majority_rule(&p(2, &[1, 2])), o(0));
        assert_eq!(majority_rule(&p(2, &[0, 0, 0])), o(0));
        assert_eq!(majority_rule(&p(4, &[4, 0, 0])), o(4));
        assert_eq!(majority_rule(&p(3, &[3, 2, 2, 3, 1])), o(0));
    }

    #[test]
    fn unanimity_examples() {
        assert_eq!(unanimity_consent(&p(2, &[1, 1, 2])), o(0));
        assert_eq!(unanimity_consent(&p(2, &[0, 0, 1])), o(1));
        assert_eq!(unanimity_consent(&p(2, &[0, 0])), o(0));
    }

    #[test]
    fn lexicographic_examples() {
        assert_eq!(lexicographic_first(&p(2, &[2, 1])), o(1));
        assert_eq!(lexicographic_first(&p(3, &[0, 0, 0])), o(0));
        assert_eq!(lexicographic_first(&p(3, &[3, 0, 2])), o(2));
    }

    #[test]
    fn zero_examples() {
        assert_eq!(constant_zero(&p(2, &[1])), o(0));
        assert_eq!(constant_zero(&p(2, &[0, 0])), o(0));
        assert_eq!(constant_zero(&p(2, &[1, 1, 1])), o(0));
    }

    #[test]
    fn registry_ids() {
        for id in ["maj", "uc", "lex", "zero"] {
            assert_eq!(lookup(id).unwrap().id(), id);
        }
        assert!(lookup("borda").is_none());
    }

    #[test]
    fn named_rules_are_anonymous() {
        for rule in REGISTRY {
            for m in 2..=4u8 {
                for n in 1..=5 {
                    for q in enumerate_profiles(m, n, false) {
                        assert_eq!(
                            rule.evaluate(&q).unwrap(),
                            rule.evaluate(&q.canonicalize()).unwrap(),
                            "{} on {q}",
                            rule.id()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rule_characterizations() {
        for m in 2..=4u8 {
            for n in 1..=5 {
                for q in enumerate_profiles(m, n, false) {
                    let t = q.tally();
                    let leaders = t.leaders();
                    let maj = majority_rule(&q);
                    if leaders.len() == 1 && t.max_count() > 0 {
                        assert_eq!(maj, o(leaders[0]));
                    } else {
                        assert_eq!(maj, o(0));
                    }
                    assert_eq!(unanimity_consent(&q) != o(0), t.support().len() == 1);
                    assert_eq!(lexicographic_first(&q) == o(0), q.is_all_abstention());
                }
            }
        }
    }
}
