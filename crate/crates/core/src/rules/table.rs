use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::profile::{enumerate_profiles, parse_ints, Ballot, Outcome, ParseError, Profile};

use super::{EvalError, SocialChoiceFunction};

/// An anonymous function given by an explicit outcome per canonical profile.
///
/// Entries exist for `1 <= n <= n_max`; a missing entry is unassigned.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TabledFunction {
    m: u8,
    n_max: usize,
    table: BTreeMap<Profile, Outcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("{0} is not in canonical (sorted) form")]
    NotCanonical(Profile),
    #[error("{profile} does not fit the table (m = {m}, n_max = {n_max})")]
    OutOfDomain {
        profile: Profile,
        m: u8,
        n_max: usize,
    },
    #[error("outcome {outcome} is outside [0, {m}]")]
    OutcomeOutOfRange { outcome: u8, m: u8 },
}

impl TabledFunction {
    /// An empty table. `m >= 2` is enforced by the profiles it will hold.
    pub fn new(m: u8, n_max: usize) -> Self {
        TabledFunction {
            m,
            n_max,
            table: BTreeMap::new(),
        }
    }

    /// Tabulates `f` on every canonical profile with `n <= n_max`.
    pub fn tabulate<F: SocialChoiceFunction + ?Sized>(
        f: &F,
        m: u8,
        n_max: usize,
    ) -> Result<Self, EvalError> {
        let mut t = TabledFunction::new(m, n_max);
        for n in 1..=n_max {
            for p in enumerate_profiles(m, n, true) {
                let o = f.evaluate(&p)?;
                t.table.insert(p, o);
            }
        }
        Ok(t)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn assign(&mut self, p: Profile, o: Outcome) -> Result<Option<Outcome>, TableError> {
        self.check_key(&p)?;
        if o.value() > self.m {
            return Err(TableError::OutcomeOutOfRange {
                outcome: o.value(),
                m: self.m,
            });
        }
        Ok(self.table.insert(p, o))
    }

    pub fn unassign(&mut self, p: &Profile) -> Option<Outcome> {
        self.table.remove(p)
    }

    /// Outcome stored for a canonical profile.
    pub fn get(&self, p: &Profile) -> Option<Outcome> {
        self.table.get(p).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Number of canonical profiles in the domain.
    pub fn domain_size(&self) -> u64 {
        (1..=self.n_max)
            .map(|n| crate::profile::canonical_count(self.m, n))
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.table.len() as u64 == self.domain_size()
    }

    /// Assigned entries in lexicographic order of their profiles.
    pub fn entries(&self) -> impl Iterator<Item = (&Profile, Outcome)> {
        self.table.iter().map(|(p, &o)| (p, o))
    }

    /// Lookup through the canonical form. Unassigned entries are an
    /// [`EvalError::Incomplete`], not an argument error.
    pub fn evaluate_tabled(&self, p: &Profile) -> Result<Outcome, EvalError> {
        if p.m() != self.m || p.n() > self.n_max {
            return Err(EvalError::OutOfDomain {
                profile: p.clone(),
                m: self.m,
                n_max: self.n_max,
            });
        }
        let key = p.canonicalize();
        self.get(&key).ok_or(EvalError::Incomplete(key))
    }

    fn check_key(&self, p: &Profile) -> Result<(), TableError> {
        if p.m() != self.m || p.n() > self.n_max {
            return Err(TableError::OutOfDomain {
                profile: p.clone(),
                m: self.m,
                n_max: self.n_max,
            });
        }
        if !p.is_canonical() {
            return Err(TableError::NotCanonical(p.clone()));
        }
        Ok(())
    }

    /// Header `"m n_max"`, then `"<ballots> -> <outcome>"` per assigned entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m, self.n_max);
        for (p, o) in self.entries() {
            let _ = writeln!(out, "{} -> {}", p.ballots_text(), o);
        }
        out
    }

    /// Parses the persistence format. Entries may appear in any order but
    /// must be canonical and unique.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "missing header \"m n_max\""))?;
        let header = parse_ints(header, 1)?;
        if header.len() != 2 {
            return Err(ParseError::new(1, 1, "header must be \"m n_max\""));
        }
        let (m_col, m) = header[0];
        if !(2..=u8::MAX as usize).contains(&m) {
            return Err(ParseError::new(
                1,
                m_col,
                format!("candidate count {m} is out of range"),
            ));
        }
        let mut table = TabledFunction::new(m as u8, header[1].1);

        for (line_no, line) in lines {
            let (lhs, rhs) = line.split_once(" -> ").ok_or_else(|| {
                ParseError::new(line_no, 1, "expected \"<profile> -> <outcome>\"")
            })?;
            let rhs_col = lhs.len() + 5;
            let values = parse_ints(lhs, line_no)?;
            let outcome = parse_ints(rhs, line_no)
                .map_err(|e| ParseError::new(line_no, rhs_col + e.column - 1, e.message))?;
            let &[(_, outcome)] = outcome.as_slice() else {
                return Err(ParseError::new(
                    line_no,
                    rhs_col,
                    "expected a single outcome",
                ));
            };
            if outcome > m {
                return Err(ParseError::new(
                    line_no,
                    rhs_col,
                    format!("outcome {outcome} is outside [0, {m}]"),
                ));
            }
            if let Some(&(col, v)) = values.iter().find(|(_, v)| *v > m) {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("ballot value {v} is outside [0, {m}]"),
                ));
            }
            let ballots = values.iter().map(|&(_, v)| Ballot::new(v as u8)).collect();
            let profile = Profile::from_ballots(m as u8, ballots)
                .map_err(|e| ParseError::new(line_no, 1, e.to_string()))?;
            let previous = table
                .assign(profile, Ballot::new(outcome as u8))
                .map_err(|e| ParseError::new(line_no, 1, e.to_string()))?;
            if previous.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate entry"));
            }
        }
        Ok(table)
    }
}

impl SocialChoiceFunction for TabledFunction {
    fn name(&self) -> &str {
        "table"
    }

    fn evaluate(&self, p: &Profile) -> Result<Outcome, EvalError> {
        self.evaluate_tabled(p)
    }

    fn claims_anonymous(&self) -> bool {
        true
    }
}
