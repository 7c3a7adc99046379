//! Verdicts for the majority-rule characterization and axiom independence.

use serde::{Deserialize, Serialize};

use crate::axioms::{Axiom, AxiomReport, CheckError, Checker, Witness};
use crate::profile::{enumerate_profiles, Ballot, CandidatePermutation, Profile};
use crate::rules::{
    majority_rule, SocialChoiceFunction, TabledFunction, CONSTANT_ZERO, LEXICOGRAPHIC_FIRST,
    MAJORITY, UNANIMITY_CONSENT,
};

use super::{enumerate_functions, Limits, SearchError, SearchSpec, SearchSummary};

/// How a profile falls into the two cases of the induction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileCase {
    AllAbstention,
    /// At least two candidates share the highest positive count.
    DominatingTie,
    /// One candidate has strictly more votes than every other.
    Leader,
}

fn is_all_abstention(p: &Profile) -> bool {
    p.values().all(|v| v == 0)
}

fn is_dominating_tie(p: &Profile) -> bool {
    let t = p.tally();
    (1..=p.m()).any(|i| {
        (i + 1..=p.m()).any(|j| {
            t.count(i) > 0
                && t.count(i) == t.count(j)
                && (1..=p.m()).all(|k| t.count(k) <= t.count(i))
        })
    })
}

fn is_leader(p: &Profile) -> bool {
    let t = p.tally();
    (1..=p.m()).any(|s| (1..=p.m()).all(|k| k == s || t.count(s) > t.count(k)))
}

pub fn classify(p: &Profile) -> ProfileCase {
    let t = p.tally();
    match t.leaders().len() {
        _ if t.max_count() == 0 => ProfileCase::AllAbstention,
        1 => ProfileCase::Leader,
        _ => ProfileCase::DominatingTie,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub all_abstention: u64,
    pub dominating_tie: u64,
    pub leader: u64,
    /// Profiles matching zero or several of the three conditions.
    pub not_partitioned: u64,
}

/// Structural replay of the induction step at one level, assuming majority
/// rule one voter below: in a dominating tie the reduced profile only uses
/// tied candidates (at most two of them), and for a leader it is a Pareto
/// profile for that leader.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionReplay {
    pub level: usize,
    pub checked: u64,
    pub failures: Vec<Profile>,
}

pub fn replay_induction_step(m: u8, n: usize) -> InductionReplay {
    let mut replay = InductionReplay {
        level: n,
        ..InductionReplay::default()
    };
    if n < 2 {
        return replay;
    }
    for p in enumerate_profiles(m, n, true) {
        let reduced: Vec<u8> = (1..=n)
            .map(|l| majority_rule(&p.remove_voter(l).expect("n >= 2")).value())
            .collect();
        let mut support: Vec<u8> = reduced.iter().copied().filter(|&v| v > 0).collect();
        support.sort_unstable();
        support.dedup();
        let tally = p.tally();
        let ok = match classify(&p) {
            ProfileCase::AllAbstention => support.is_empty(),
            ProfileCase::DominatingTie => {
                let tied = tally.leaders();
                support.len() <= 2 && support.iter().all(|k| tied.contains(k))
            }
            ProfileCase::Leader => support == tally.leaders(),
        };
        replay.checked += 1;
        if !ok {
            replay.failures.push(p);
        }
    }
    replay
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterizationVerdict {
    pub m: u8,
    pub n_max: usize,
    pub include_dp: bool,
    pub search: SearchSummary,
    /// The solution set is exactly majority rule's table.
    pub unique_majority: bool,
    pub cases: CaseCounts,
    pub partition_ok: bool,
    pub induction: Vec<InductionReplay>,
    pub induction_ok: bool,
    pub pass: bool,
}

/// Searches for every function satisfying N, PO, RS (and DP unless
/// `include_dp` is false) and passes iff majority rule is the only one.
///
/// Dropping DP is sound for `m >= 4`; at smaller `m` the verdict may fail.
pub fn verify_majority_characterization(
    m: u8,
    n_max: usize,
    include_dp: bool,
    limits: Limits,
) -> Result<CharacterizationVerdict, SearchError> {
    let mut axioms = vec![Axiom::Neutrality, Axiom::Pareto, Axiom::Reducibility];
    if include_dp {
        axioms.push(Axiom::DuelProperty);
    }
    let spec = SearchSpec::new(m, n_max, axioms).with_limits(limits);
    let result = enumerate_functions(&spec)?;
    let maj = TabledFunction::tabulate(&MAJORITY, m, n_max).expect("majority rule is total");
    let unique_majority = result.exhausted && result.solutions == [maj];

    let mut cases = CaseCounts::default();
    for n in 1..=n_max {
        for p in enumerate_profiles(m, n, false) {
            let hits = [is_all_abstention(&p), is_dominating_tie(&p), is_leader(&p)];
            if hits.iter().filter(|&&h| h).count() != 1 {
                cases.not_partitioned += 1;
                continue;
            }
            match classify(&p) {
                ProfileCase::AllAbstention if hits[0] => cases.all_abstention += 1,
                ProfileCase::DominatingTie if hits[1] => cases.dominating_tie += 1,
                ProfileCase::Leader if hits[2] => cases.leader += 1,
                _ => cases.not_partitioned += 1,
            }
        }
    }
    let partition_ok = cases.not_partitioned == 0;
    let induction: Vec<_> = (2..=n_max).map(|n| replay_induction_step(m, n)).collect();
    let induction_ok = induction.iter().all(|r| r.failures.is_empty());

    Ok(CharacterizationVerdict {
        m,
        n_max,
        include_dp,
        search: result.summary(&spec),
        unique_majority,
        cases,
        partition_ok,
        induction,
        induction_ok,
        pass: unique_majority && partition_ok && induction_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceEntry {
    pub rule: String,
    pub expected_failure: Axiom,
    pub reports: Vec<AxiomReport>,
    /// Exactly `expected_failure` fails among A, N, DP, PO, RS.
    pub fails_exactly_expected: bool,
    /// The failing witness is the known counterexample.
    pub witness_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceVerdict {
    pub m: u8,
    pub n_max: usize,
    pub entries: Vec<IndependenceEntry>,
    pub pass: bool,
}

const INDEPENDENCE_AXIOMS: [Axiom; 5] = [
    Axiom::Anonymity,
    Axiom::Neutrality,
    Axiom::DuelProperty,
    Axiom::Pareto,
    Axiom::Reducibility,
];

/// Replays the three counterexamples showing N, PO and RS independent.
pub fn verify_independence(
    checker: &Checker,
    m: u8,
    n_max: usize,
) -> Result<IndependenceVerdict, CheckError> {
    if m < 2 || n_max < 3 {
        return Err(CheckError::InvalidScope {
            m,
            n_max,
            reason: "need m >= 2 and n_max >= 3",
        });
    }
    let p = |b: &[u8]| Profile::new(m as usize, b.iter().copied()).expect("valid profile");
    let o = Ballot::new;
    let swap = CandidatePermutation::transposition(m, 1, 2).expect("m >= 2");

    let expect_lex = move |w: &Witness| {
        matches!(w, Witness::Neutrality { profile, permutation, permuted_outcome, expected, .. }
            if *profile == p(&[1, 2]) && *permutation == swap
                && *permuted_outcome == o(1) && *expected == o(2))
    };
    let expect_zero = move |w: &Witness| {
        matches!(w, Witness::Pareto { profile, candidate: 1, outcome }
            if *profile == p(&[1]) && *outcome == o(0))
    };
    let expect_uc = move |w: &Witness| {
        matches!(w, Witness::Reducibility { profile, reduced, lhs, rhs }
            if *profile == p(&[1, 1, 2]) && *reduced == p(&[0, 0, 1])
                && *lhs == o(0) && *rhs == o(1))
    };

    type Matcher<'a> = &'a dyn Fn(&Witness) -> bool;
    let cases: [(&dyn SocialChoiceFunction, Axiom, Matcher<'_>); 3] = [
        (&LEXICOGRAPHIC_FIRST, Axiom::Neutrality, &expect_lex),
        (&CONSTANT_ZERO, Axiom::Pareto, &expect_zero),
        (&UNANIMITY_CONSENT, Axiom::Reducibility, &expect_uc),
    ];

    let mut entries = Vec::new();
    for (rule, expected_failure, matcher) in cases {
        let reports = INDEPENDENCE_AXIOMS
            .iter()
            .map(|&a| checker.check(a, rule, m, n_max))
            .collect::<Result<Vec<_>, _>>()?;
        let fails_exactly_expected = reports
            .iter()
            .all(|r| r.pass == (r.axiom != expected_failure));
        let witness_matches = reports
            .iter()
            .find(|r| r.axiom == expected_failure)
            .and_then(|r| r.witness.as_ref())
            .is_some_and(matcher);
        entries.push(IndependenceEntry {
            rule: rule.name().to_string(),
            expected_failure,
            reports,
            fails_exactly_expected,
            witness_matches,
        });
    }
    let pass = entries
        .iter()
        .all(|e| e.fails_exactly_expected && e.witness_matches);
    Ok(IndependenceVerdict {
        m,
        n_max,
        entries,
        pass,
    })
}
