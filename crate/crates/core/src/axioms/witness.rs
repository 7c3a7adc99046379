use serde::{Deserialize, Serialize};

use crate::profile::{Ballot, CandidatePermutation, Outcome, Profile, VoterPermutation};
use crate::rules::SocialChoiceFunction;

use super::{reduce_profile, Axiom, CheckError, TieClause};

/// The configuration that violates an axiom, with the outcomes observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `f(Pσ) != f(P)` where `Pσ` is the canonical reordering of `P`.
    Anonymity {
        profile: Profile,
        permutation: VoterPermutation,
        permuted_profile: Profile,
        outcome: Outcome,
        permuted_outcome: Outcome,
    },
    /// `f(τP) != τ f(P)`.
    Neutrality {
        profile: Profile,
        permutation: CandidatePermutation,
        permuted_profile: Profile,
        outcome: Outcome,
        permuted_outcome: Outcome,
        expected: Outcome,
    },
    /// A duel between `pair` won by an outsider.
    Duel {
        profile: Profile,
        pair: [u8; 2],
        outcome: Outcome,
    },
    /// The only supported candidate does not win.
    Pareto {
        profile: Profile,
        candidate: u8,
        outcome: Outcome,
    },
    /// `f(P) != f(f(P^{-1}) | ... | f(P^{-n}))`.
    Reducibility {
        profile: Profile,
        reduced: Profile,
        lhs: Outcome,
        rhs: Outcome,
    },
    /// Moving voter `voter` to `candidate` does not produce a win for `candidate`.
    Responsiveness {
        profile: Profile,
        candidate: u8,
        voter: usize,
        changed: Profile,
        before: Outcome,
        after: Outcome,
    },
    /// Two candidates with equal counts, one of which wins.
    TiedWinner {
        profile: Profile,
        pair: [u8; 2],
        outcome: Outcome,
    },
}

impl Witness {
    pub fn axiom(&self) -> Axiom {
        match self {
            Witness::Anonymity { .. } => Axiom::Anonymity,
            Witness::Neutrality { .. } => Axiom::Neutrality,
            Witness::Duel { .. } => Axiom::DuelProperty,
            Witness::Pareto { .. } => Axiom::Pareto,
            Witness::Reducibility { .. } => Axiom::Reducibility,
            Witness::Responsiveness { .. } => Axiom::PositiveResponsiveness,
            Witness::TiedWinner { .. } => Axiom::TiedNoWin,
        }
    }

    /// The primary profile of the violation.
    pub fn profile(&self) -> &Profile {
        match self {
            Witness::Anonymity { profile, .. }
            | Witness::Neutrality { profile, .. }
            | Witness::Duel { profile, .. }
            | Witness::Pareto { profile, .. }
            | Witness::Reducibility { profile, .. }
            | Witness::Responsiveness { profile, .. }
            | Witness::TiedWinner { profile, .. } => profile,
        }
    }

    /// Re-evaluates `f` on the recorded configuration straight from the
    /// axiom's definition. `true` iff every recorded outcome is reproduced
    /// and the configuration is a genuine violation.
    pub fn replay<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        tie_clause: TieClause,
    ) -> Result<bool, CheckError> {
        Ok(match self {
            Witness::Anonymity {
                profile,
                permutation,
                permuted_profile,
                outcome,
                permuted_outcome,
            } => {
                let moved = profile.apply_voter_permutation(permutation)?;
                let a = f.evaluate(profile)?;
                let b = f.evaluate(&moved)?;
                moved == *permuted_profile && a == *outcome && b == *permuted_outcome && a != b
            }
            Witness::Neutrality {
                profile,
                permutation,
                permuted_profile,
                outcome,
                permuted_outcome,
                expected,
            } => {
                let moved = profile.apply_candidate_permutation(permutation)?;
                let a = f.evaluate(profile)?;
                let b = f.evaluate(&moved)?;
                let want = permutation.apply_to_outcome(a);
                moved == *permuted_profile
                    && a == *outcome
                    && b == *permuted_outcome
                    && want == *expected
                    && b != want
            }
            Witness::Duel {
                profile,
                pair,
                outcome,
            } => {
                let o = f.evaluate(profile)?;
                let is_duel = profile.values().all(|v| v == 0 || pair.contains(&v));
                is_duel && o == *outcome && o.value() != 0 && !pair.contains(&o.value())
            }
            Witness::Pareto {
                profile,
                candidate,
                outcome,
            } => {
                let o = f.evaluate(profile)?;
                let tally = profile.tally();
                tally.support() == [*candidate] && o == *outcome && o != Ballot::new(*candidate)
            }
            Witness::Reducibility {
                profile,
                reduced,
                lhs,
                rhs,
            } => {
                let r = reduce_profile(f, profile)?;
                let a = f.evaluate(profile)?;
                let b = f.evaluate(&r)?;
                r == *reduced && a == *lhs && b == *rhs && a != b
            }
            Witness::Responsiveness {
                profile,
                candidate,
                voter,
                changed,
                before,
                after,
            } => {
                let k = Ballot::new(*candidate);
                let moved = profile.with_ballot(*voter, k)?;
                let a = f.evaluate(profile)?;
                let b = f.evaluate(&moved)?;
                let applies = profile.ballot(*voter) != Some(k)
                    && (a == k || (a.is_abstention() && tie_clause.applies(profile, *candidate)));
                moved == *changed && a == *before && b == *after && applies && b != k
            }
            Witness::TiedWinner {
                profile,
                pair,
                outcome,
            } => {
                let o = f.evaluate(profile)?;
                let tally = profile.tally();
                pair[0] != pair[1]
                    && tally.count(pair[0]) == tally.count(pair[1])
                    && o == *outcome
                    && pair.contains(&o.value())
            }
        })
    }
}
