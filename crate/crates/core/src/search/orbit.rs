//! Orbits of anonymity classes under candidate relabeling.

use std::collections::HashMap;

use crate::profile::{enumerate_profiles, Ballot, CandidatePermutation, Outcome, Profile};
use crate::rules::TabledFunction;

/// One orbit of canonical profiles under all candidate permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralOrbit {
    /// Lexicographically smallest canonical profile of the orbit.
    pub representative: Profile,
    /// Each member with a permutation `τ` such that `canonicalize(τ · representative) = member`.
    /// The representative comes first, paired with the identity.
    pub members: Vec<(Profile, CandidatePermutation)>,
    /// Permutations mapping the representative's class to itself.
    pub stabilizer: Vec<CandidatePermutation>,
    /// Outcomes fixed by every stabilizer element, ascending. A neutral
    /// function must give the representative one of these.
    pub fixed_outcomes: Vec<Outcome>,
}

impl NeutralOrbit {
    pub fn level(&self) -> usize {
        self.representative.n()
    }

    /// The outcome each member receives when the representative gets `o`.
    pub fn propagate(&self, o: Outcome) -> impl Iterator<Item = (&Profile, Outcome)> + '_ {
        self.members
            .iter()
            .map(move |(q, tau)| (q, tau.apply_to_outcome(o)))
    }
}

/// All orbits for `1 <= n <= n_max`, ordered by level then representative.
pub fn neutral_orbits(m: u8, n_max: usize) -> Vec<NeutralOrbit> {
    let perms = CandidatePermutation::all(m);
    let mut orbits = Vec::new();
    for n in 1..=n_max {
        let mut owner: HashMap<Profile, usize> = HashMap::new();
        for p in enumerate_profiles(m, n, true) {
            if owner.contains_key(&p) {
                continue;
            }
            let mut members: Vec<(Profile, CandidatePermutation)> = Vec::new();
            let mut stabilizer = Vec::new();
            for tau in &perms {
                let image = p.relabel(tau).canonicalize();
                if image == p {
                    stabilizer.push(tau.clone());
                }
                if !members.iter().any(|(q, _)| *q == image) {
                    members.push((image, tau.clone()));
                }
            }
            let fixed_outcomes = (0..=m)
                .map(Ballot::new)
                .filter(|&o| stabilizer.iter().all(|t| t.apply_to_outcome(o) == o))
                .collect();
            for (q, _) in &members {
                owner.insert(q.clone(), orbits.len());
            }
            orbits.push(NeutralOrbit {
                representative: p,
                members,
                stabilizer,
                fixed_outcomes,
            });
        }
    }
    orbits
}

/// Lazy stream of every anonymous, neutral function on `n <= n_max`, each
/// exactly once. Choices are enumerated in mixed-radix order with the first
/// orbit most significant.
#[derive(Debug, Clone)]
pub struct NeutralFunctions {
    m: u8,
    n_max: usize,
    orbits: Vec<NeutralOrbit>,
    digits: Option<Vec<usize>>,
}

impl NeutralFunctions {
    pub fn orbits(&self) -> &[NeutralOrbit] {
        &self.orbits
    }

    /// Total number of functions the stream yields, saturating at `u128::MAX`.
    pub fn space_size(&self) -> u128 {
        self.orbits.iter().fold(1u128, |acc, o| {
            acc.saturating_mul(o.fixed_outcomes.len() as u128)
        })
    }

    fn build(&self, digits: &[usize]) -> TabledFunction {
        let mut table = TabledFunction::new(self.m, self.n_max);
        for (orbit, &d) in self.orbits.iter().zip(digits) {
            for (q, o) in orbit.propagate(orbit.fixed_outcomes[d]) {
                table
                    .assign(q.clone(), o)
                    .expect("orbit members are canonical and in range");
            }
        }
        table
    }
}

impl Iterator for NeutralFunctions {
    type Item = TabledFunction;

    fn next(&mut self) -> Option<TabledFunction> {
        let digits = self.digits.take()?;
        let table = self.build(&digits);
        let mut succ = digits;
        let mut carried = true;
        for (i, d) in succ.iter_mut().enumerate().rev() {
            if *d + 1 < self.orbits[i].fixed_outcomes.len() {
                *d += 1;
                carried = false;
                break;
            }
            *d = 0;
        }
        if !carried {
            self.digits = Some(succ);
        }
        Some(table)
    }
}

pub fn enumerate_neutral_functions(m: u8, n_max: usize) -> NeutralFunctions {
    let orbits = if m >= 2 {
        neutral_orbits(m, n_max)
    } else {
        Vec::new()
    };
    let valid = m >= 2 && n_max >= 1;
    NeutralFunctions {
        m,
        n_max,
        digits: valid.then(|| vec![0; orbits.len()]),
        orbits,
    }
}

/// A bounded prefix of the neutral-function stream.
#[derive(Debug, Clone)]
pub struct NeutralEnumeration {
    pub functions: Vec<TabledFunction>,
    /// `false` when `limit` cut the stream short.
    pub complete: bool,
}

pub fn collect_neutral_functions(m: u8, n_max: usize, limit: usize) -> NeutralEnumeration {
    let mut stream = enumerate_neutral_functions(m, n_max);
    let functions: Vec<_> = stream.by_ref().take(limit).collect();
    let complete = stream.next().is_none();
    NeutralEnumeration {
        functions,
        complete,
    }
}
