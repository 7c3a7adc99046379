//! Bounded-exhaustive axiom checkers.
//!
//! Every checker visits all profiles with `1 <= n <= n_max` in lexicographic
//! `(n, profile)` order and reports the first violation, so witnesses are
//! minimal and identical for any worker count. Work inside a voter level is
//! split across a rayon pool; `find_map_first` keeps the merge deterministic.

mod witness;

pub use witness::Witness;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{
    profile_at, profile_count, Ballot, CandidatePermutation, Profile, ProfileError,
    VoterPermutation,
};
use crate::rules::{EvalError, SocialChoiceFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("invalid scope m = {m}, n_max = {n_max}: {reason}")]
    InvalidScope {
        m: u8,
        n_max: usize,
        reason: &'static str,
    },
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

/// Axiom identifiers as used on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "A")]
    Anonymity,
    #[serde(rename = "N")]
    Neutrality,
    #[serde(rename = "DP")]
    DuelProperty,
    #[serde(rename = "PO")]
    Pareto,
    #[serde(rename = "RS")]
    Reducibility,
    #[serde(rename = "PR")]
    PositiveResponsiveness,
    /// Candidates with equal counts never win. Holds for every anonymous,
    /// neutral function; reported under the id `TIE`.
    #[serde(rename = "TIE")]
    TiedNoWin,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Anonymity,
        Axiom::Neutrality,
        Axiom::DuelProperty,
        Axiom::Pareto,
        Axiom::Reducibility,
        Axiom::PositiveResponsiveness,
        Axiom::TiedNoWin,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::Anonymity => "A",
            Axiom::Neutrality => "N",
            Axiom::DuelProperty => "DP",
            Axiom::Pareto => "PO",
            Axiom::Reducibility => "RS",
            Axiom::PositiveResponsiveness => "PR",
            Axiom::TiedNoWin => "TIE",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Axiom::Anonymity => "anonymity",
            Axiom::Neutrality => "neutrality",
            Axiom::DuelProperty => "duel property",
            Axiom::Pareto => "Pareto optimality",
            Axiom::Reducibility => "reducibility to subsocieties",
            Axiom::PositiveResponsiveness => "positive responsiveness",
            Axiom::TiedNoWin => "tied candidates never win",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown axiom {s:?} (expected one of A, N, DP, PO, RS, PR, TIE)")
            })
    }
}

/// Parses a comma separated axiom list such as `"A,N,DP"`.
pub fn parse_axiom_list(s: &str) -> Result<Vec<Axiom>, String> {
    let mut out: Vec<Axiom> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// When positive responsiveness also demands that a tie turns into a win.
///
/// Wins for `k` must always survive one more ballot for `k`. The clause decides
/// what happens when `f(P) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieClause {
    /// `f(P) = 0` and `k` has the maximum count in `P`: `f(P')` must be `k`.
    #[default]
    Leaders,
    /// `f(P) = 0` always forces `f(P') = k`.
    Any,
    /// Only existing wins are preserved.
    Off,
}

impl TieClause {
    pub fn applies(self, p: &Profile, k: u8) -> bool {
        match self {
            TieClause::Leaders => p.tally().leaders().contains(&k),
            TieClause::Any => true,
            TieClause::Off => false,
        }
    }
}

impl FromStr for TieClause {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leaders" => Ok(TieClause::Leaders),
            "any" => Ok(TieClause::Any),
            "off" => Ok(TieClause::Off),
            _ => Err(format!(
                "unknown tie clause {s:?} (expected leaders, any or off)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scope {
    pub m: u8,
    pub n_max: usize,
}

/// Outcome of one bounded check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub scope: Scope,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tie_clause: Option<TieClause>,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn new(axiom: Axiom, scope: Scope, witness: Option<Witness>) -> Self {
        AxiomReport {
            axiom,
            scope,
            pass: witness.is_none(),
            tie_clause: None,
            witness,
        }
    }
}

/// `(f(P^{-1}), ..., f(P^{-n}))`, the profile of sub-society outcomes.
pub fn reduce_profile<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    p: &Profile,
) -> Result<Profile, CheckError> {
    if p.n() < 2 {
        return Err(ProfileError::LastVoter.into());
    }
    let ballots = (1..=p.n())
        .map(|l| f.evaluate(&p.remove_voter(l)?).map_err(CheckError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Profile::from_ballots(p.m(), ballots)?)
}

type Visit<'a> = dyn Fn(&Profile) -> Result<Option<Witness>, CheckError> + Sync + 'a;

/// Runs the checkers, optionally on a dedicated pool of worker threads.
#[derive(Debug, Default)]
pub struct Checker {
    pool: Option<rayon::ThreadPool>,
    tie_clause: TieClause,
}

impl Checker {
    pub fn new() -> Self {
        Checker::default()
    }

    pub fn with_workers(workers: usize) -> Result<Self, CheckError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| CheckError::Pool(e.to_string()))?;
        Ok(Checker {
            pool: Some(pool),
            tie_clause: TieClause::default(),
        })
    }

    pub fn with_tie_clause(mut self, tie_clause: TieClause) -> Self {
        self.tie_clause = tie_clause;
        self
    }

    pub fn tie_clause(&self) -> TieClause {
        self.tie_clause
    }

    pub fn check<F: SocialChoiceFunction + ?Sized>(
        &self,
        axiom: Axiom,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        match axiom {
            Axiom::Anonymity => self.check_anonymity(f, m, n_max),
            Axiom::Neutrality => self.check_neutrality(f, m, n_max),
            Axiom::DuelProperty => self.check_duel_property(f, m, n_max),
            Axiom::Pareto => self.check_pareto(f, m, n_max),
            Axiom::Reducibility => self.check_rs(f, m, n_max),
            Axiom::PositiveResponsiveness => self.check_positive_responsiveness(f, m, n_max),
            Axiom::TiedNoWin => self.check_tied_no_win(f, m, n_max),
        }
    }

    /// First witness over `n_lo..=n_max` in `(n, profile)` order.
    fn scan(
        &self,
        m: u8,
        n_lo: usize,
        n_max: usize,
        visit: &Visit<'_>,
    ) -> Result<Option<Witness>, CheckError> {
        if m < 2 || n_max < 1 {
            return Err(CheckError::InvalidScope {
                m,
                n_max,
                reason: "need m >= 2 and n_max >= 1",
            });
        }
        let run = || {
            for n in n_lo.max(1)..=n_max {
                let count = profile_count(m, n)
                    .and_then(|c| usize::try_from(c).ok())
                    .ok_or(CheckError::InvalidScope {
                        m,
                        n_max,
                        reason: "profile space does not fit in memory addressing",
                    })?;
                let found = (0..count).into_par_iter().find_map_first(|i| {
                    match visit(&profile_at(m, n, i as u64)) {
                        Ok(None) => None,
                        other => Some(other),
                    }
                });
                if let Some(result) = found {
                    return result;
                }
            }
            Ok(None)
        };
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }

    /// `f(Pσ) = f(P)` for all `σ`, checked as `f(P) = f(canonicalize(P))`.
    pub fn check_anonymity<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let witness = self.scan(m, 1, n_max, &|p| {
            let canonical = p.canonicalize();
            if canonical == *p {
                return Ok(None);
            }
            let outcome = f.evaluate(p)?;
            let permuted_outcome = f.evaluate(&canonical)?;
            Ok((outcome != permuted_outcome).then(|| Witness::Anonymity {
                profile: p.clone(),
                permutation: VoterPermutation::sorting(p),
                permuted_profile: canonical,
                outcome,
                permuted_outcome,
            }))
        })?;
        Ok(AxiomReport::new(
            Axiom::Anonymity,
            Scope { m, n_max },
            witness,
        ))
    }

    /// `f(τP) = τ f(P)` over all `m!` candidate permutations.
    pub fn check_neutrality<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let perms: Vec<CandidatePermutation> = CandidatePermutation::all(m)
            .into_iter()
            .filter(|t| !t.is_identity())
            .collect();
        let witness = self.scan(m, 1, n_max, &|p| {
            let outcome = f.evaluate(p)?;
            for tau in &perms {
                let permuted_profile = p.apply_candidate_permutation(tau)?;
                let permuted_outcome = f.evaluate(&permuted_profile)?;
                let expected = tau.apply_to_outcome(outcome);
                if permuted_outcome != expected {
                    return Ok(Some(Witness::Neutrality {
                        profile: p.clone(),
                        permutation: tau.clone(),
                        permuted_profile,
                        outcome,
                        permuted_outcome,
                        expected,
                    }));
                }
            }
            Ok(None)
        })?;
        Ok(AxiomReport::new(
            Axiom::Neutrality,
            Scope { m, n_max },
            witness,
        ))
    }

    /// On a duel profile for `i < j` the outcome is `0`, `i` or `j`.
    pub fn check_duel_property<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let witness = self.scan(m, 1, n_max, &|p| {
            let support = p.tally().support();
            if support.len() > 2 {
                return Ok(None);
            }
            let outcome = f.evaluate(p)?;
            for i in 1..=m {
                for j in i + 1..=m {
                    let is_duel = support.iter().all(|&k| k == i || k == j);
                    let v = outcome.value();
                    if is_duel && v != 0 && v != i && v != j {
                        return Ok(Some(Witness::Duel {
                            profile: p.clone(),
                            pair: [i, j],
                            outcome,
                        }));
                    }
                }
            }
            Ok(None)
        })?;
        Ok(AxiomReport::new(
            Axiom::DuelProperty,
            Scope { m, n_max },
            witness,
        ))
    }

    /// If `k` is the only candidate with votes, `k` wins.
    pub fn check_pareto<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let witness = self.scan(m, 1, n_max, &|p| {
            let &[k] = p.tally().support().as_slice() else {
                return Ok(None);
            };
            let outcome = f.evaluate(p)?;
            Ok((outcome != Ballot::new(k)).then(|| Witness::Pareto {
                profile: p.clone(),
                candidate: k,
                outcome,
            }))
        })?;
        Ok(AxiomReport::new(Axiom::Pareto, Scope { m, n_max }, witness))
    }

    /// `f(P) = f(reduce_profile(f, P))` for every profile with at least two voters.
    pub fn check_rs<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let witness = if n_max < 2 {
            None
        } else {
            self.scan(m, 2, n_max, &|p| {
                let lhs = f.evaluate(p)?;
                let reduced = reduce_profile(f, p)?;
                let rhs = f.evaluate(&reduced)?;
                Ok((lhs != rhs).then(|| Witness::Reducibility {
                    profile: p.clone(),
                    reduced,
                    lhs,
                    rhs,
                }))
            })?
        };
        Ok(AxiomReport::new(
            Axiom::Reducibility,
            Scope { m, n_max },
            witness,
        ))
    }

    /// One extra ballot for `k` keeps a win for `k`, and under the
    /// configured [`TieClause`] turns a tie into a win for `k`.
    pub fn check_positive_responsiveness<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let tie_clause = self.tie_clause;
        let witness = self.scan(m, 1, n_max, &|p| {
            let before = f.evaluate(p)?;
            for k in 1..=m {
                let target = Ballot::new(k);
                let applies =
                    before == target || (before.is_abstention() && tie_clause.applies(p, k));
                if !applies {
                    continue;
                }
                for voter in 1..=p.n() {
                    if p.ballot(voter) == Some(target) {
                        continue;
                    }
                    let changed = p.with_ballot(voter, target)?;
                    let after = f.evaluate(&changed)?;
                    if after != target {
                        return Ok(Some(Witness::Responsiveness {
                            profile: p.clone(),
                            candidate: k,
                            voter,
                            changed,
                            before,
                            after,
                        }));
                    }
                }
            }
            Ok(None)
        })?;
        let mut report =
            AxiomReport::new(Axiom::PositiveResponsiveness, Scope { m, n_max }, witness);
        report.tie_clause = Some(tie_clause);
        Ok(report)
    }

    /// Whenever `Σ_i(P) = Σ_j(P)` for `i != j`, `f(P)` is neither `i` nor `j`.
    ///
    /// Meaningful for functions already known to be anonymous and neutral;
    /// those hypotheses are not rechecked here.
    pub fn check_tied_no_win<F: SocialChoiceFunction + ?Sized>(
        &self,
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<AxiomReport, CheckError> {
        let witness = self.scan(m, 1, n_max, &|p| {
            let tally = p.tally();
            let outcome = f.evaluate(p)?;
            for i in 1..=m {
                for j in i + 1..=m {
                    let v = outcome.value();
                    if tally.count(i) == tally.count(j) && (v == i || v == j) {
                        return Ok(Some(Witness::TiedWinner {
                            profile: p.clone(),
                            pair: [i, j],
                            outcome,
                        }));
                    }
                }
            }
            Ok(None)
        })?;
        Ok(AxiomReport::new(
            Axiom::TiedNoWin,
            Scope { m, n_max },
            witness,
        ))
    }
}

pub fn check_anonymity<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_anonymity(f, m, n_max)
}

pub fn check_neutrality<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_neutrality(f, m, n_max)
}

pub fn check_duel_property<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_duel_property(f, m, n_max)
}

pub fn check_pareto<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_pareto(f, m, n_max)
}

pub fn check_rs<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_rs(f, m, n_max)
}

/// Uses the default [`TieClause::Leaders`].
pub fn check_positive_responsiveness<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_positive_responsiveness(f, m, n_max)
}

pub fn check_tied_no_win<F: SocialChoiceFunction + ?Sized>(
    f: &F,
    m: u8,
    n_max: usize,
) -> Result<AxiomReport, CheckError> {
    Checker::new().check_tied_no_win(f, m, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Outcome;
    use crate::rules::{FnRule, CONSTANT_ZERO, LEXICOGRAPHIC_FIRST, MAJORITY, UNANIMITY_CONSENT};

    fn p(m: usize, b: &[u8]) -> Profile {
        Profile::new(m, b.iter().copied()).unwrap()
    }

    fn o(k: u8) -> Outcome {
        Ballot::new(k)
    }

    fn dictator() -> FnRule<impl Fn(&Profile) -> Outcome + Send + Sync> {
        FnRule::new("first-voter", |p: &Profile| p.ballots()[0])
    }

    fn third_party() -> FnRule<impl Fn(&Profile) -> Outcome + Send + Sync> {
        FnRule::new("third-party", |p: &Profile| {
            match p.tally().support().as_slice() {
                &[i, j] if p.m() == 3 => o(6 - i - j),
                _ => o(0),
            }
        })
    }

    fn assert_replays<F: SocialChoiceFunction + ?Sized>(f: &F, r: &AxiomReport) {
        let w = r.witness.as_ref().expect("expected a witness");
        assert_eq!(w.axiom(), r.axiom);
        assert!(w.replay(f, TieClause::default()).unwrap(), "{w:?}");
    }

    #[test]
    fn anonymity() {
        assert!(check_anonymity(&MAJORITY, 3, 4).unwrap().pass);
        assert!(check_anonymity(&UNANIMITY_CONSENT, 2, 3).unwrap().pass);

        let f = dictator();
        let r = check_anonymity(&f, 2, 2).unwrap();
        assert!(!r.pass);
        assert_replays(&f, &r);
        // (1,0) is the first non-canonical profile and its reordering (0,1) changes the winner.
        match r.witness.unwrap() {
            Witness::Anonymity {
                profile,
                permuted_profile,
                outcome,
                permuted_outcome,
                ..
            } => {
                assert_eq!(profile, p(2, &[1, 0]));
                assert_eq!(permuted_profile, p(2, &[0, 1]));
                assert_eq!((outcome, permuted_outcome), (o(1), o(0)));
            }
            w => panic!("unexpected {w:?}"),
        }
    }

    #[test]
    fn dictator_disagrees_on_swapped_duel() {
        let f = dictator();
        let a = f.evaluate(&p(2, &[1, 2])).unwrap();
        let b = f.evaluate(&p(2, &[2, 1])).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn neutrality() {
        let r = check_neutrality(&LEXICOGRAPHIC_FIRST, 2, 2).unwrap();
        assert_replays(&LEXICOGRAPHIC_FIRST, &r);
        match r.witness.unwrap() {
            Witness::Neutrality {
                profile,
                permutation,
                permuted_outcome,
                expected,
                ..
            } => {
                assert_eq!(profile, p(2, &[1, 2]));
                assert_eq!(permutation.image(), &[2, 1]);
                assert_eq!(permuted_outcome, o(1));
                assert_eq!(expected, o(2));
            }
            w => panic!("unexpected {w:?}"),
        }
        assert!(check_neutrality(&MAJORITY, 3, 3).unwrap().pass);
        assert!(check_neutrality(&CONSTANT_ZERO, 4, 2).unwrap().pass);
    }

    #[test]
    fn duel_property() {
        assert!(check_duel_property(&MAJORITY, 3, 4).unwrap().pass);
        assert!(check_duel_property(&UNANIMITY_CONSENT, 3, 3).unwrap().pass);
        let f = third_party();
        assert_eq!(f.evaluate(&p(3, &[1, 2])).unwrap(), o(3));
        let r = check_duel_property(&f, 3, 3).unwrap();
        assert_replays(&f, &r);
        assert_eq!(
            r.witness.unwrap(),
            Witness::Duel {
                profile: p(3, &[1, 2]),
                pair: [1, 2],
                outcome: o(3)
            }
        );
        // The third-party rule is anonymous and neutral, so at m = 3 neutrality
        // does not imply the duel property.
        assert!(check_anonymity(&f, 3, 3).unwrap().pass);
        assert!(check_neutrality(&f, 3, 3).unwrap().pass);
    }

    #[test]
    fn pareto() {
        let r = check_pareto(&CONSTANT_ZERO, 2, 1).unwrap();
        assert_replays(&CONSTANT_ZERO, &r);
        assert_eq!(
            r.witness.unwrap(),
            Witness::Pareto {
                profile: p(2, &[1]),
                candidate: 1,
                outcome: o(0)
            }
        );
        assert!(check_pareto(&MAJORITY, 3, 4).unwrap().pass);
        assert!(check_pareto(&LEXICOGRAPHIC_FIRST, 3, 3).unwrap().pass);
    }

    #[test]
    fn reduce_profile_examples() {
        assert_eq!(
            reduce_profile(&UNANIMITY_CONSENT, &p(2, &[1, 1, 2])).unwrap(),
            p(2, &[0, 0, 1])
        );
        assert_eq!(
            reduce_profile(&MAJORITY, &p(2, &[1, 1])).unwrap(),
            p(2, &[1, 1])
        );
        assert_eq!(
            reduce_profile(&MAJORITY, &p(2, &[1, 2])).unwrap(),
            p(2, &[2, 1])
        );
        assert_eq!(
            reduce_profile(&MAJORITY, &p(2, &[1])),
            Err(CheckError::Profile(ProfileError::LastVoter))
        );
    }

    #[test]
    fn reducibility() {
        let r = check_rs(&UNANIMITY_CONSENT, 2, 3).unwrap();
        assert_replays(&UNANIMITY_CONSENT, &r);
        assert_eq!(
            r.witness.unwrap(),
            Witness::Reducibility {
                profile: p(2, &[1, 1, 2]),
                reduced: p(2, &[0, 0, 1]),
                lhs: o(0),
                rhs: o(1)
            }
        );
        assert!(check_rs(&MAJORITY, 3, 4).unwrap().pass);
        assert!(check_rs(&LEXICOGRAPHIC_FIRST, 2, 3).unwrap().pass);
        assert!(check_rs(&UNANIMITY_CONSENT, 2, 1).unwrap().pass);
    }

    #[test]
    fn positive_responsiveness() {
        assert!(check_positive_responsiveness(&MAJORITY, 2, 3).unwrap().pass);

        // Unanimity consent agrees with majority rule up to two voters at m = 2.
        assert!(
            check_positive_responsiveness(&UNANIMITY_CONSENT, 2, 2)
                .unwrap()
                .pass
        );
        let r = check_positive_responsiveness(&UNANIMITY_CONSENT, 2, 3).unwrap();
        assert_replays(&UNANIMITY_CONSENT, &r);
        assert_eq!(
            r.witness.unwrap(),
            Witness::Responsiveness {
                profile: p(2, &[0, 1, 2]),
                candidate: 1,
                voter: 1,
                changed: p(2, &[1, 1, 2]),
                before: o(0),
                after: o(0)
            }
        );

        let r = check_positive_responsiveness(&CONSTANT_ZERO, 2, 2).unwrap();
        assert_eq!(
            r.witness.unwrap(),
            Witness::Responsiveness {
                profile: p(2, &[0]),
                candidate: 1,
                voter: 1,
                changed: p(2, &[1]),
                before: o(0),
                after: o(0)
            }
        );
        // The constant function has no wins to lose.
        let off = Checker::new().with_tie_clause(TieClause::Off);
        assert!(
            off.check_positive_responsiveness(&CONSTANT_ZERO, 2, 3)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn strict_tie_clause_rejects_majority_beyond_two_candidates() {
        let strict = Checker::new().with_tie_clause(TieClause::Any);
        assert!(
            strict
                .check_positive_responsiveness(&MAJORITY, 2, 4)
                .unwrap()
                .pass
        );
        let r = strict
            .check_positive_responsiveness(&MAJORITY, 3, 2)
            .unwrap();
        let w = r.witness.clone().unwrap();
        assert!(w.replay(&MAJORITY, TieClause::Any).unwrap());
        assert!(!w.replay(&MAJORITY, TieClause::Leaders).unwrap());
        // (1,2) is a tie; moving voter 1 to candidate 3 only gives a new tie.
        assert_eq!(w.profile(), &p(3, &[1, 2]));
        assert!(matches!(
            w,
            Witness::Responsiveness {
                candidate: 3,
                voter: 1,
                ..
            }
        ));
        assert_eq!(r.tie_clause, Some(TieClause::Any));
    }

    #[test]
    fn tied_no_win() {
        assert!(check_tied_no_win(&MAJORITY, 3, 4).unwrap().pass);
        assert_eq!(MAJORITY.evaluate(&p(2, &[1, 2])).unwrap(), o(0));
        let r = check_tied_no_win(&LEXICOGRAPHIC_FIRST, 2, 2).unwrap();
        assert_replays(&LEXICOGRAPHIC_FIRST, &r);
        assert_eq!(
            r.witness.unwrap(),
            Witness::TiedWinner {
                profile: p(2, &[1, 2]),
                pair: [1, 2],
                outcome: o(1)
            }
        );
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let one = Checker::with_workers(1).unwrap();
        let eight = Checker::with_workers(8).unwrap();
        for axiom in Axiom::ALL {
            for f in crate::rules::REGISTRY {
                let a = one.check(axiom, f, 3, 3).unwrap();
                let b = eight.check(axiom, f, 3, 3).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn failures_persist_with_larger_scope() {
        for axiom in Axiom::ALL {
            for f in crate::rules::REGISTRY {
                let small = Checker::new().check(axiom, f, 2, 2).unwrap();
                if !small.pass {
                    let big = Checker::new().check(axiom, f, 2, 4).unwrap();
                    assert!(!big.pass);
                    assert_eq!(small.witness, big.witness);
                }
            }
        }
    }

    #[test]
    fn report_serialization_round_trips() {
        let r = check_rs(&UNANIMITY_CONSENT, 2, 3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"axiom\":\"RS\""));
        assert!(json.contains("\"profile\":\"2 3\\n1 1 2\""));
        let back: AxiomReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn axiom_list_parsing() {
        assert_eq!(
            parse_axiom_list("RS,a,N,N").unwrap(),
            vec![Axiom::Anonymity, Axiom::Neutrality, Axiom::Reducibility]
        );
        assert!(parse_axiom_list("A,XX").is_err());
    }
}
