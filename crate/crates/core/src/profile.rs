//! Ballots, profiles, tallies and the two permutation actions on profiles.
//!
//! Candidates are numbered `1..=m`; the value `0` is an abstention. An
//! [`Outcome`] lives in the same value space as a [`Ballot`], so outcomes of
//! sub-elections can be fed back in as ballots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised when constructing or transforming profiles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("candidate count must be at least 2, got {0}")]
    CandidateCount(usize),
    #[error("a profile needs at least one voter")]
    NoVoters,
    #[error("ballot value {value} is outside [0, {m}]")]
    BallotOutOfRange { value: usize, m: u8 },
    #[error("expected {expected} voters, got {found}")]
    VoterCountMismatch { expected: usize, found: usize },
    #[error("expected {expected} candidates, got {found}")]
    CandidateCountMismatch { expected: u8, found: u8 },
    #[error("voter index {index} is outside [1, {n}]")]
    VoterOutOfRange { index: usize, n: usize },
    #[error("cannot remove the only voter of a profile")]
    LastVoter,
    #[error("not a permutation of 1..={len}: {image:?}")]
    NotAPermutation { image: Vec<usize>, len: usize },
}

/// A text-format error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// One voter's choice: `0` abstains, `k` votes for candidate `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ballot(u8);

/// The result of aggregation; `0` is a tie or no decision.
pub type Outcome = Ballot;

impl Ballot {
    pub const ABSTAIN: Ballot = Ballot(0);

    pub const fn new(value: u8) -> Ballot {
        Ballot(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_abstention(self) -> bool {
        self.0 == 0
    }

    /// Human label used by the CLI.
    pub fn label(self) -> String {
        if self.0 == 0 {
            "tie / no decision".to_string()
        } else {
            format!("candidate {}", self.0)
        }
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Ballot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

impl<'de> Deserialize<'de> for Ballot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        u8::deserialize(d).map(Ballot)
    }
}

fn check_m(m: usize) -> Result<u8, ProfileError> {
    if m < 2 || m > u8::MAX as usize {
        return Err(ProfileError::CandidateCount(m));
    }
    Ok(m as u8)
}

/// Vote counts per candidate plus the number of abstentions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tally {
    m: u8,
    counts: Vec<usize>,
    abstentions: usize,
}

impl Tally {
    pub fn m(&self) -> u8 {
        self.m
    }

    /// `counts()[k - 1]` is the number of votes for candidate `k`.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn abstentions(&self) -> usize {
        self.abstentions
    }

    /// Votes for candidate `k` (1-based). Returns 0 for `k` outside `1..=m`.
    pub fn count(&self, k: u8) -> usize {
        if k == 0 {
            return 0;
        }
        self.counts.get(k as usize - 1).copied().unwrap_or(0)
    }

    pub fn voters(&self) -> usize {
        self.abstentions + self.counts.iter().sum::<usize>()
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Candidates attaining the maximum count, ascending.
    pub fn leaders(&self) -> Vec<u8> {
        let max = self.max_count();
        self.candidates()
            .filter(|&k| self.count(k) == max)
            .collect()
    }

    /// Candidates with at least one vote, ascending.
    pub fn support(&self) -> Vec<u8> {
        self.candidates().filter(|&k| self.count(k) > 0).collect()
    }

    fn candidates(&self) -> impl Iterator<Item = u8> {
        1..=self.m
    }
}

/// A row relabeling of candidates. Abstention is always fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidatePermutation {
    // image[k - 1] is where candidate k goes
    image: Vec<u8>,
}

impl CandidatePermutation {
    pub fn new(image: Vec<u8>) -> Result<Self, ProfileError> {
        check_m(image.len())?;
        let widened: Vec<usize> = image.iter().map(|&k| k as usize).collect();
        if !is_permutation(&widened) {
            return Err(ProfileError::NotAPermutation {
                len: widened.len(),
                image: widened,
            });
        }
        Ok(CandidatePermutation { image })
    }

    pub fn identity(m: u8) -> Self {
        CandidatePermutation {
            image: (1..=m).collect(),
        }
    }

    /// Swaps candidates `i` and `j`.
    pub fn transposition(m: u8, i: u8, j: u8) -> Result<Self, ProfileError> {
        let mut image: Vec<u8> = (1..=m).collect();
        for k in [i, j] {
            if k == 0 || k > m {
                return Err(ProfileError::BallotOutOfRange {
                    value: k as usize,
                    m,
                });
            }
        }
        image.swap(i as usize - 1, j as usize - 1);
        Self::new(image)
    }

    /// All `m!` permutations in lexicographic order of their image, identity first.
    pub fn all(m: u8) -> Vec<Self> {
        (1..=m)
            .permutations(m as usize)
            .map(|image| CandidatePermutation { image })
            .collect()
    }

    pub fn m(&self) -> u8 {
        self.image.len() as u8
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &k)| k as usize == i + 1)
    }

    /// `τ` acting on a single outcome or ballot. Values outside `1..=m` are unchanged.
    pub fn apply_to_outcome(&self, o: Outcome) -> Outcome {
        match o.0 {
            0 => o,
            k => self.image.get(k as usize - 1).map_or(o, |&t| Ballot(t)),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0u8; self.image.len()];
        for (i, &k) in self.image.iter().enumerate() {
            image[k as usize - 1] = i as u8 + 1;
        }
        CandidatePermutation { image }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        CandidatePermutation {
            image: other
                .image
                .iter()
                .map(|&k| self.image[k as usize - 1])
                .collect(),
        }
    }
}

impl fmt::Display for CandidatePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.image.iter().join(" "))
    }
}

impl Serialize for CandidatePermutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.image.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CandidatePermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let image = Vec::<u8>::deserialize(d)?;
        CandidatePermutation::new(image).map_err(serde::de::Error::custom)
    }
}

/// A column reordering of voters, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoterPermutation {
    image: Vec<usize>,
}

impl VoterPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self, ProfileError> {
        if image.is_empty() {
            return Err(ProfileError::NoVoters);
        }
        if !is_permutation(&image) {
            return Err(ProfileError::NotAPermutation {
                len: image.len(),
                image,
            });
        }
        Ok(VoterPermutation { image })
    }

    pub fn identity(n: usize) -> Self {
        VoterPermutation {
            image: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// The permutation that stably sorts `p` into its canonical form.
    pub fn sorting(p: &Profile) -> Self {
        let order: Vec<usize> = (0..p.n()).sorted_by_key(|&l| p.ballots[l]).collect();
        let mut image = vec![0; p.n()];
        for (target, &source) in order.iter().enumerate() {
            image[source] = target + 1;
        }
        VoterPermutation { image }
    }
}

impl Serialize for VoterPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.image.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VoterPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let image = Vec::<usize>::deserialize(d)?;
        VoterPermutation::new(image).map_err(serde::de::Error::custom)
    }
}

fn is_permutation(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    for &k in image {
        if k == 0 || k > image.len() || seen[k - 1] {
            return false;
        }
        seen[k - 1] = true;
    }
    true
}

/// An ordered sequence of `n >= 1` ballots over `m >= 2` candidates.
///
/// Profiles order by `m`, then lexicographically by ballots, so the
/// lexicographic order on shorter sequences comes first on a common prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    m: u8,
    ballots: Vec<Ballot>,
}

impl PartialOrd for Profile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Profile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.ballots.cmp(&other.ballots))
    }
}

impl Profile {
    pub fn new(m: usize, ballots: impl IntoIterator<Item = u8>) -> Result<Self, ProfileError> {
        let m = check_m(m)?;
        let ballots: Vec<Ballot> = ballots.into_iter().map(Ballot).collect();
        Self::from_ballots(m, ballots)
    }

    pub fn from_ballots(m: u8, ballots: Vec<Ballot>) -> Result<Self, ProfileError> {
        check_m(m as usize)?;
        if ballots.is_empty() {
            return Err(ProfileError::NoVoters);
        }
        if let Some(b) = ballots.iter().find(|b| b.0 > m) {
            return Err(ProfileError::BallotOutOfRange {
                value: b.0 as usize,
                m,
            });
        }
        Ok(Profile { m, ballots })
    }

    /// Construction for values already known to be in range.
    pub(crate) fn from_raw(m: u8, ballots: Vec<Ballot>) -> Self {
        debug_assert!(!ballots.is_empty() && ballots.iter().all(|b| b.0 <= m));
        Profile { m, ballots }
    }

    /// The all-abstention profile with `n` voters.
    pub fn abstaining(m: u8, n: usize) -> Result<Self, ProfileError> {
        Self::from_ballots(m, vec![Ballot::ABSTAIN; n])
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    /// Ballot of voter `l` (1-based).
    pub fn ballot(&self, l: usize) -> Option<Ballot> {
        l.checked_sub(1).and_then(|i| self.ballots.get(i).copied())
    }

    pub fn values(&self) -> impl Iterator<Item = u8> + '_ {
        self.ballots.iter().map(|b| b.0)
    }

    pub fn tally(&self) -> Tally {
        let mut counts = vec![0; self.m as usize];
        let mut abstentions = 0;
        for b in &self.ballots {
            match b.0 {
                0 => abstentions += 1,
                k => counts[k as usize - 1] += 1,
            }
        }
        Tally {
            m: self.m,
            counts,
            abstentions,
        }
    }

    pub fn is_all_abstention(&self) -> bool {
        self.ballots.iter().all(|b| b.is_abstention())
    }

    /// `Pσ`: the ballot of voter `l` moves to position `σ(l)`.
    pub fn apply_voter_permutation(&self, sigma: &VoterPermutation) -> Result<Self, ProfileError> {
        if sigma.n() != self.n() {
            return Err(ProfileError::VoterCountMismatch {
                expected: self.n(),
                found: sigma.n(),
            });
        }
        let mut ballots = vec![Ballot::ABSTAIN; self.n()];
        for (l, &target) in sigma.image.iter().enumerate() {
            ballots[target - 1] = self.ballots[l];
        }
        Ok(Profile::from_raw(self.m, ballots))
    }

    /// `τP`: every vote for `k` becomes a vote for `τ(k)`.
    pub fn apply_candidate_permutation(
        &self,
        tau: &CandidatePermutation,
    ) -> Result<Self, ProfileError> {
        if tau.m() != self.m {
            return Err(ProfileError::CandidateCountMismatch {
                expected: self.m,
                found: tau.m(),
            });
        }
        Ok(self.relabel(tau))
    }

    pub(crate) fn relabel(&self, tau: &CandidatePermutation) -> Self {
        let ballots = self
            .ballots
            .iter()
            .map(|&b| tau.apply_to_outcome(b))
            .collect();
        Profile::from_raw(self.m, ballots)
    }

    /// `P^{-l}`: the profile without voter `l` (1-based).
    pub fn remove_voter(&self, l: usize) -> Result<Self, ProfileError> {
        if self.n() == 1 {
            return Err(ProfileError::LastVoter);
        }
        if l == 0 || l > self.n() {
            return Err(ProfileError::VoterOutOfRange {
                index: l,
                n: self.n(),
            });
        }
        let mut ballots = self.ballots.clone();
        ballots.remove(l - 1);
        Ok(Profile::from_raw(self.m, ballots))
    }

    /// Copy of the profile with voter `l` (1-based) casting `b` instead.
    pub fn with_ballot(&self, l: usize, b: Ballot) -> Result<Self, ProfileError> {
        if l == 0 || l > self.n() {
            return Err(ProfileError::VoterOutOfRange {
                index: l,
                n: self.n(),
            });
        }
        if b.0 > self.m {
            return Err(ProfileError::BallotOutOfRange {
                value: b.0 as usize,
                m: self.m,
            });
        }
        let mut ballots = self.ballots.clone();
        ballots[l - 1] = b;
        Ok(Profile::from_raw(self.m, ballots))
    }

    /// Sorted representative of the anonymity class.
    pub fn canonicalize(&self) -> Self {
        let mut ballots = self.ballots.clone();
        ballots.sort_unstable();
        Profile::from_raw(self.m, ballots)
    }

    pub fn is_canonical(&self) -> bool {
        self.ballots.windows(2).all(|w| w[0] <= w[1])
    }

    /// The two-line text form without a trailing newline: `"m n\nb1 b2 ..."`.
    pub fn to_text(&self) -> String {
        format!("{} {}\n{}", self.m, self.n(), self.values().join(" "))
    }

    /// Ballots joined by single spaces.
    pub fn ballots_text(&self) -> String {
        self.values().join(" ")
    }

    /// Parses the two-line text format. A single trailing newline is accepted.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let lines: Vec<&str> = body.split('\n').collect();
        if lines.len() != 2 {
            return Err(ParseError::new(
                lines.len().min(2) + 1,
                1,
                format!("expected exactly 2 lines, found {}", lines.len()),
            ));
        }
        let header = parse_ints(lines[0], 1)?;
        if header.len() != 2 {
            return Err(ParseError::new(1, 1, "header must be \"m n\""));
        }
        let (m, n) = (header[0].1, header[1].1);
        let m = check_m(m).map_err(|e| ParseError::new(1, header[0].0, e.to_string()))?;
        let ballots = parse_ints(lines[1], 2)?;
        if ballots.len() != n {
            return Err(ParseError::new(
                2,
                1,
                format!("header declares {n} voters, found {}", ballots.len()),
            ));
        }
        let mut values = Vec::with_capacity(n);
        for (col, v) in ballots {
            if v > m as usize {
                return Err(ParseError::new(
                    2,
                    col,
                    format!("ballot value {v} is outside [0, {m}]"),
                ));
            }
            values.push(Ballot(v as u8));
        }
        Profile::from_ballots(m, values).map_err(|e| ParseError::new(2, 1, e.to_string()))
    }
}

/// Splits `line` on single spaces into `(column, value)` pairs.
pub(crate) fn parse_ints(line: &str, line_no: usize) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    if line.is_empty() {
        return Ok(out);
    }
    let mut col = 1;
    for token in line.split(' ') {
        if token.is_empty() || !token.bytes().all(|c| c.is_ascii_digit()) {
            return Err(ParseError::new(
                line_no,
                col,
                format!("expected a non-negative integer, found {token:?}"),
            ));
        }
        let v = token
            .parse::<usize>()
            .map_err(|e| ParseError::new(line_no, col, e.to_string()))?;
        out.push((col, v));
        col += token.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.values().join(","))
    }
}

impl FromStr for Profile {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Profile::parse(s)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Profile::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// `(m+1)^n`, or `None` on overflow.
pub fn profile_count(m: u8, n: usize) -> Option<u64> {
    (m as u64 + 1).checked_pow(u32::try_from(n).ok()?)
}

/// Number of canonical profiles: multisets of size `n` over `m + 1` values, `C(n+m, m)`.
pub fn canonical_count(m: u8, n: usize) -> u64 {
    let m = m as u64;
    let n = n as u64;
    // C(n+m, m) built incrementally; every prefix product is itself a binomial.
    (1..=m).fold(1u64, |acc, i| acc * (n + i) / i)
}

/// The profile with lexicographic rank `index` among all of `[0, m]^n`.
pub fn profile_at(m: u8, n: usize, mut index: u64) -> Profile {
    let base = m as u64 + 1;
    let mut ballots = vec![Ballot::ABSTAIN; n];
    for slot in ballots.iter_mut().rev() {
        *slot = Ballot((index % base) as u8);
        index /= base;
    }
    Profile::from_raw(m, ballots)
}

/// Lexicographic enumeration of `[0, m]^n`, optionally restricted to sorted profiles.
#[derive(Debug, Clone)]
pub struct Profiles {
    m: u8,
    canonical_only: bool,
    next: Option<Vec<Ballot>>,
}

impl Iterator for Profiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = succ.iter().rposition(|b| b.0 < self.m) {
            let bumped = Ballot(succ[i].0 + 1);
            let fill = if self.canonical_only {
                bumped
            } else {
                Ballot::ABSTAIN
            };
            succ[i] = bumped;
            succ[i + 1..].fill(fill);
            self.next = Some(succ);
        }
        Some(Profile::from_raw(self.m, current))
    }
}

pub fn enumerate_profiles(m: u8, n: usize, canonical_only: bool) -> Profiles {
    let valid = m >= 2 && n >= 1;
    Profiles {
        m,
        canonical_only,
        next: valid.then(|| vec![Ballot::ABSTAIN; n]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, b: &[u8]) -> Profile {
        Profile::new(m, b.iter().copied()).unwrap()
    }

    #[test]
    fn tally_counts() {
        let t = p(3, &[1, 1, 2]).tally();
        assert_eq!(t.counts(), &[2, 1, 0]);
        assert_eq!(t.abstentions(), 0);

        let t = p(2, &[0, 0]).tally();
        assert_eq!(t.counts(), &[0, 0]);
        assert_eq!(t.abstentions(), 2);

        let t = p(3, &[3, 0, 3, 1]).tally();
        assert_eq!(t.counts(), &[1, 0, 2]);
        assert_eq!(t.abstentions(), 1);
        assert_eq!(t.voters(), 4);
    }

    #[test]
    fn voter_permutation() {
        let base = p(3, &[1, 2, 0]);
        let id = VoterPermutation::identity(3);
        assert_eq!(base.apply_voter_permutation(&id).unwrap(), base);

        let swap = VoterPermutation::new(vec![2, 1]).unwrap();
        assert_eq!(
            p(2, &[1, 2]).apply_voter_permutation(&swap).unwrap(),
            p(2, &[2, 1])
        );

        let q = p(3, &[1, 1, 2]);
        let cyc = VoterPermutation::new(vec![3, 1, 2]).unwrap();
        let moved = q.apply_voter_permutation(&cyc).unwrap();
        assert_eq!(moved, p(3, &[1, 2, 1]));
        assert_eq!(moved.tally(), q.tally());

        assert!(matches!(
            q.apply_voter_permutation(&swap),
            Err(ProfileError::VoterCountMismatch { .. })
        ));
    }

    #[test]
    fn sorting_permutation_reaches_canonical_form() {
        let q = p(3, &[3, 0, 1, 0, 2]);
        let sigma = VoterPermutation::sorting(&q);
        assert_eq!(q.apply_voter_permutation(&sigma).unwrap(), q.canonicalize());
    }

    #[test]
    fn candidate_permutation() {
        let swap = CandidatePermutation::transposition(2, 1, 2).unwrap();
        assert_eq!(
            p(2, &[1, 2]).apply_candidate_permutation(&swap).unwrap(),
            p(2, &[2, 1])
        );
        assert_eq!(
            p(2, &[0, 0]).apply_candidate_permutation(&swap).unwrap(),
            p(2, &[0, 0])
        );
        let cyc = CandidatePermutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(
            p(3, &[3, 1]).apply_candidate_permutation(&cyc).unwrap(),
            p(3, &[1, 2])
        );
        assert!(matches!(
            p(3, &[1]).apply_candidate_permutation(&swap),
            Err(ProfileError::CandidateCountMismatch { .. })
        ));
        assert!(CandidatePermutation::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn permutation_on_outcomes() {
        let swap = CandidatePermutation::transposition(2, 1, 2).unwrap();
        assert_eq!(swap.apply_to_outcome(Ballot::ABSTAIN), Ballot::ABSTAIN);
        assert_eq!(swap.apply_to_outcome(Ballot::new(1)), Ballot::new(2));
        let id = CandidatePermutation::identity(3);
        assert_eq!(id.apply_to_outcome(Ballot::new(3)), Ballot::new(3));
    }

    #[test]
    fn permutation_group_basics() {
        let all = CandidatePermutation::all(3);
        assert_eq!(all.len(), 6);
        assert!(all[0].is_identity());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for a in &all {
            assert!(a.compose(&a.inverse()).is_identity());
        }
    }

    #[test]
    fn remove_voter_cases() {
        assert_eq!(p(2, &[1, 1, 2]).remove_voter(3).unwrap(), p(2, &[1, 1]));
        assert_eq!(p(2, &[1, 1, 2]).remove_voter(1).unwrap(), p(2, &[1, 2]));
        assert_eq!(p(2, &[0, 2]).remove_voter(2).unwrap(), p(2, &[0]));
        assert_eq!(p(2, &[1]).remove_voter(1), Err(ProfileError::LastVoter));
        assert!(matches!(
            p(2, &[1, 2]).remove_voter(3),
            Err(ProfileError::VoterOutOfRange { .. })
        ));
        assert!(matches!(
            p(2, &[1, 2]).remove_voter(0),
            Err(ProfileError::VoterOutOfRange { .. })
        ));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p(2, &[2, 0, 1]).canonicalize(), p(2, &[0, 1, 2]));
        assert_eq!(p(2, &[1, 1, 2]).canonicalize(), p(2, &[1, 1, 2]));
        assert_eq!(p(3, &[3, 3, 0, 1]).canonicalize(), p(3, &[0, 1, 3, 3]));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<_> = enumerate_profiles(2, 3, false).collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, q) in all.iter().enumerate() {
            assert_eq!(&profile_at(2, 3, i as u64), q);
        }
        let canon: Vec<_> = enumerate_profiles(2, 3, true).collect();
        assert_eq!(canon.len(), 10);
        assert_eq!(canon.len() as u64, canonical_count(2, 3));
        assert!(canon.iter().all(Profile::is_canonical));

        let singles: Vec<_> = enumerate_profiles(3, 1, false).collect();
        assert_eq!(
            singles,
            vec![p(3, &[0]), p(3, &[1]), p(3, &[2]), p(3, &[3])]
        );
        assert_eq!(enumerate_profiles(1, 2, false).count(), 0);
        assert_eq!(enumerate_profiles(2, 0, false).count(), 0);
    }

    #[test]
    fn validation() {
        assert_eq!(Profile::new(1, [1]), Err(ProfileError::CandidateCount(1)));
        assert_eq!(Profile::new(2, []), Err(ProfileError::NoVoters));
        assert!(matches!(
            Profile::new(2, [3]),
            Err(ProfileError::BallotOutOfRange { value: 3, m: 2 })
        ));
    }

    #[test]
    fn text_format() {
        let q = Profile::parse("3 3\n1 1 2").unwrap();
        assert_eq!(q, p(3, &[1, 1, 2]));
        assert_eq!(q.to_text(), "3 3\n1 1 2");
        assert_eq!(Profile::parse("3 3\n1 1 2\n").unwrap(), q);

        let err = Profile::parse("3 3\n1 4 2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = Profile::parse("3 3\n1  2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = Profile::parse("3 2\n1 2 3").unwrap_err();
        assert_eq!(err.line, 2);
        let err = Profile::parse("x 2\n1 2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = Profile::parse("1 1\n1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        assert!(Profile::parse("3 1").is_err());
        assert!(Profile::parse("3 0\n").is_err());
    }
}
