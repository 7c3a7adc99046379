use std::collections::HashSet;

use proptest::prelude::*;

use maycheck::axioms::{Axiom, Checker, TieClause};
use maycheck::profile::{
    canonical_count, enumerate_profiles, profile_at, profile_count, Ballot, CandidatePermutation,
    Profile, VoterPermutation,
};
use maycheck::rules::{majority_rule, TabledFunction, MAJORITY};
use maycheck::search::{
    enumerate_functions, enumerate_neutral_functions, Limits, SearchError, SearchSpec,
};
use maycheck::SocialChoiceFunction;

fn profile() -> impl Strategy<Value = Profile> {
    (2u8..=5, 1usize..=7).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..=m, n).prop_map(move |b| Profile::new(m as usize, b).unwrap())
    })
}

fn profile_with_voter_perm() -> impl Strategy<Value = (Profile, VoterPermutation)> {
    profile().prop_flat_map(|p| {
        let n = p.n();
        (Just(p), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(p, img)| (p, VoterPermutation::new(img).unwrap()))
    })
}

fn profile_with_candidate_perm() -> impl Strategy<Value = (Profile, CandidatePermutation)> {
    profile().prop_flat_map(|p| {
        let m = p.m();
        (Just(p), Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(p, img)| (p, CandidatePermutation::new(img).unwrap()))
    })
}

fn sorted_values(p: &Profile) -> Vec<u8> {
    let mut v: Vec<u8> = p.values().collect();
    v.sort_unstable();
    v
}

/// A table over the canonical profiles at `(m, n_max)` with arbitrary outcomes.
fn random_table(m: u8, n_max: usize) -> impl Strategy<Value = TabledFunction> {
    let cells: Vec<Profile> = (1..=n_max)
        .flat_map(|n| enumerate_profiles(m, n, true))
        .collect();
    prop::collection::vec(0..=m, cells.len()).prop_map(move |outs| {
        let mut t = TabledFunction::new(m, n_max);
        for (c, o) in cells.iter().zip(outs) {
            t.assign(c.clone(), Ballot::new(o)).unwrap();
        }
        t
    })
}

proptest! {
    #[test]
    fn tally_ignores_voter_order((p, sigma) in profile_with_voter_perm()) {
        let q = p.apply_voter_permutation(&sigma).unwrap();
        prop_assert_eq!(q.tally(), p.tally());
        prop_assert_eq!(sorted_values(&q), sorted_values(&p));
    }

    #[test]
    fn relabeling_moves_counts((p, tau) in profile_with_candidate_perm()) {
        let q = p.apply_candidate_permutation(&tau).unwrap();
        let (tp, tq) = (p.tally(), q.tally());
        prop_assert_eq!(tq.abstentions(), tp.abstentions());
        for k in 1..=p.m() {
            let image = tau.apply_to_outcome(Ballot::new(k)).value();
            prop_assert_eq!(tq.count(image), tp.count(k));
        }
        let back = q.apply_candidate_permutation(&tau.inverse()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn canonical_form_is_the_sorted_profile(p in profile()) {
        let c = p.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(c.tally(), p.tally());
        prop_assert_eq!(c.values().collect::<Vec<_>>(), sorted_values(&p));
        prop_assert_eq!(p.apply_voter_permutation(&VoterPermutation::sorting(&p)).unwrap(), c);
    }

    #[test]
    fn removing_a_voter_drops_one_ballot(p in profile(), pick in any::<prop::sample::Index>()) {
        prop_assume!(p.n() >= 2);
        let l = pick.index(p.n()) + 1;
        let q = p.remove_voter(l).unwrap();
        prop_assert_eq!(q.n(), p.n() - 1);
        let mut expected: Vec<u8> = p.values().collect();
        expected.remove(l - 1);
        prop_assert_eq!(q.values().collect::<Vec<_>>(), expected);
        let removed = p.ballot(l).unwrap().value();
        let (tp, tq) = (p.tally(), q.tally());
        for k in 0..=p.m() {
            let before = if k == 0 { tp.abstentions() } else { tp.count(k) };
            let after = if k == 0 { tq.abstentions() } else { tq.count(k) };
            prop_assert_eq!(before, after + usize::from(k == removed));
        }
    }

    #[test]
    fn profile_text_round_trips(p in profile()) {
        let text = p.to_text();
        let back = Profile::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text.clone());
        prop_assert_eq!(Profile::parse(&format!("{text}\n")).unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Profile>(&json).unwrap(), p);
    }

    #[test]
    fn majority_is_anonymous_and_neutral((p, tau) in profile_with_candidate_perm()) {
        let q = p.apply_candidate_permutation(&tau).unwrap();
        prop_assert_eq!(majority_rule(&q), tau.apply_to_outcome(majority_rule(&p)));
        prop_assert_eq!(majority_rule(&p.canonicalize()), majority_rule(&p));
    }

    #[test]
    fn profile_index_matches_enumeration(m in 2u8..=4, n in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let all: Vec<Profile> = enumerate_profiles(m, n, false).collect();
        prop_assert_eq!(all.len() as u64, profile_count(m, n).unwrap());
        let i = pick.index(all.len());
        prop_assert_eq!(&profile_at(m, n, i as u64), &all[i]);
        let canon: Vec<Profile> = enumerate_profiles(m, n, true).collect();
        prop_assert_eq!(canon.len() as u64, canonical_count(m, n));
        prop_assert!(canon.iter().all(Profile::is_canonical));
        prop_assert!(canon.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_text_round_trips(t in random_table(3, 2)) {
        let text = t.to_text();
        let back = TabledFunction::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn witnesses_replay(t in random_table(2, 3), strict in any::<bool>()) {
        let clause = if strict { TieClause::Any } else { TieClause::Leaders };
        let checker = Checker::new().with_tie_clause(clause);
        for axiom in Axiom::ALL {
            let r = checker.check(axiom, &t, 2, 3).unwrap();
            prop_assert_eq!(r.pass, r.witness.is_none());
            if let Some(w) = r.witness {
                prop_assert_eq!(w.axiom(), axiom);
                prop_assert!(w.replay(&t, clause).unwrap(), "{:?} does not replay", w);
            }
        }
    }
}

const SEARCHABLE: [Axiom; 5] = [
    Axiom::Neutrality,
    Axiom::DuelProperty,
    Axiom::Pareto,
    Axiom::Reducibility,
    Axiom::PositiveResponsiveness,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_solutions_pass_the_checkers(
        m in 2u8..=3,
        n_max in 1usize..=3,
        mask in 0u8..32,
    ) {
        let axioms: Vec<Axiom> = SEARCHABLE
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        let spec = SearchSpec::new(m, n_max, axioms.clone()).with_limits(Limits {
            max_nodes: Some(200_000),
            max_solutions: Some(64),
            ..Limits::default()
        });
        let r = match enumerate_functions(&spec) {
            Err(SearchError::Infeasible { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let checker = Checker::new();
        let mut seen = HashSet::new();
        for t in &r.solutions {
            prop_assert!(t.is_complete());
            prop_assert!(seen.insert(t.to_text()));
            for &a in &axioms {
                prop_assert!(checker.check(a, t, m, n_max).unwrap().pass, "{} fails {}", t.to_text(), a);
            }
        }
        let majority_axioms = [Axiom::Neutrality, Axiom::DuelProperty, Axiom::Pareto, Axiom::Reducibility];
        if r.exhausted && majority_axioms.iter().all(|a| axioms.contains(a)) {
            let maj = TabledFunction::tabulate(&MAJORITY, m, n_max).unwrap();
            prop_assert!(r.solutions.contains(&maj));
        }
    }
}

#[test]
fn neutral_stream_is_closed_under_relabeling() {
    for (m, n_max) in [(2u8, 2usize), (3, 2), (4, 2)] {
        let tables: Vec<TabledFunction> = enumerate_neutral_functions(m, n_max).collect();
        let texts: HashSet<String> = tables.iter().map(TabledFunction::to_text).collect();
        assert_eq!(texts.len(), tables.len(), "duplicates at ({m},{n_max})");
        for t in &tables {
            for tau in CandidatePermutation::all(m) {
                let mut moved = TabledFunction::new(m, n_max);
                for (p, o) in t.entries() {
                    let q = p.apply_candidate_permutation(&tau).unwrap().canonicalize();
                    moved.assign(q, tau.apply_to_outcome(o)).unwrap();
                }
                assert!(texts.contains(&moved.to_text()));
            }
            assert!(
                Checker::new().check_neutrality(t, m, n_max).unwrap().pass,
                "{}",
                t.name()
            );
        }
    }
}
