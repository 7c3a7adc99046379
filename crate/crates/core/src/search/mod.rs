//! Backtracking search over anonymous functions given as outcome tables.
//!
//! Anonymity is structural: the table has one cell per canonical profile.
//! Cells are filled level by level (`n = 1` upward), lexicographically within
//! a level, trying outcomes `0, 1, ..., m`. With neutrality requested the
//! search assigns whole orbits at once and only offers outcomes fixed by the
//! orbit representative's stabilizer.
//!
//! After each assignment the constraints touching the new cells are rechecked.
//! A reducibility equation is only judged once its cell, all of its one-voter-
//! smaller sub-cells, and the cell of its reduced profile are assigned; until
//! then it is deferred.

mod orbit;
mod verify;

pub use orbit::{
    collect_neutral_functions, enumerate_neutral_functions, neutral_orbits, NeutralEnumeration,
    NeutralFunctions, NeutralOrbit,
};
pub use verify::{
    classify, replay_induction_step, verify_independence, verify_majority_characterization,
    CaseCounts, CharacterizationVerdict, IndependenceEntry, IndependenceVerdict, InductionReplay,
    ProfileCase,
};

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{Axiom, TieClause};
use crate::profile::{canonical_count, enumerate_profiles, Ballot, Profile};
use crate::rules::TabledFunction;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("search space too large: {cells} table cells (limit {max_cells}), about 10^{log10_space:.1} tables")]
    Infeasible {
        cells: u64,
        max_cells: u64,
        log10_space: f64,
    },
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
}

/// Explicit resource limits. Hitting any of them yields a partial result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_nodes: Option<u64>,
    pub max_solutions: Option<usize>,
    /// Refuse outright above this many table cells.
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: None,
            max_solutions: None,
            max_cells: 4096,
        }
    }
}

/// Largest candidate count the orbit machinery accepts (`m!` permutations).
pub const MAX_CANDIDATES: u8 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub m: u8,
    pub n_max: usize,
    /// Requested axioms; empty means raw enumeration. `A` is accepted and
    /// always holds by construction.
    pub axioms: Vec<Axiom>,
    pub tie_clause: TieClause,
    pub limits: Limits,
    /// With pruning off, constraints are only checked on complete tables.
    pub pruning: bool,
}

impl SearchSpec {
    pub fn new(m: u8, n_max: usize, axioms: impl IntoIterator<Item = Axiom>) -> Self {
        let mut axioms: Vec<Axiom> = axioms.into_iter().collect();
        axioms.sort();
        axioms.dedup();
        SearchSpec {
            m,
            n_max,
            axioms,
            tie_clause: TieClause::default(),
            limits: Limits::default(),
            pruning: true,
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_tie_clause(mut self, tie_clause: TieClause) -> Self {
        self.tie_clause = tie_clause;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.pruning = false;
        self
    }

    fn wants(&self, axiom: Axiom) -> bool {
        self.axioms.contains(&axiom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub solutions: Vec<TabledFunction>,
    /// `true` iff the whole space was covered.
    pub exhausted: bool,
    pub nodes_explored: u64,
    /// Rejected candidate assignments, attributed to the first failing axiom.
    pub prune_counts: BTreeMap<Axiom, u64>,
}

/// Machine-readable summary of a search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub m: u8,
    pub n_max: usize,
    pub axioms: Vec<Axiom>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tie_clause: Option<TieClause>,
    pub solution_count: usize,
    pub exhausted: bool,
    pub nodes_explored: u64,
    pub prune_counts: BTreeMap<Axiom, u64>,
}

impl SearchResult {
    pub fn summary(&self, spec: &SearchSpec) -> SearchSummary {
        SearchSummary {
            m: spec.m,
            n_max: spec.n_max,
            axioms: spec.axioms.clone(),
            tie_clause: spec
                .wants(Axiom::PositiveResponsiveness)
                .then_some(spec.tie_clause),
            solution_count: self.solutions.len(),
            exhausted: self.exhausted,
            nodes_explored: self.nodes_explored,
            prune_counts: self.prune_counts.clone(),
        }
    }
}

/// Finds every anonymous function on `n <= n_max` satisfying `spec.axioms`.
pub fn enumerate_functions(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let mut engine = Engine::new(spec)?;
    let flow = engine.dfs(0);
    Ok(SearchResult {
        solutions: engine.solutions,
        exhausted: flow.is_continue(),
        nodes_explored: engine.nodes,
        prune_counts: engine.prune_counts,
    })
}

struct Cell {
    level: usize,
    values: Vec<u8>,
    /// `(ballot value, multiplicity, cell without one such ballot)`.
    subs: Vec<(u8, usize, usize)>,
    unary_dp: Vec<bool>,
    unary_po: Vec<bool>,
    /// `(k, cell with one ballot moved to k, tie clause applies)`.
    responsive: Vec<(u8, usize, bool)>,
}

struct Variable {
    level: usize,
    /// Member cells with the outcome map `o -> τ(o)`.
    members: Vec<(usize, Vec<u8>)>,
    domain: Vec<u8>,
}

struct Engine {
    m: u8,
    spec: SearchSpec,
    cells: Vec<Cell>,
    index: HashMap<Vec<u8>, usize>,
    by_level: Vec<Vec<usize>>,
    vars: Vec<Variable>,
    assigned: Vec<Option<u8>>,
    nodes: u64,
    prune_counts: BTreeMap<Axiom, u64>,
    solutions: Vec<TabledFunction>,
}

impl Engine {
    fn new(spec: &SearchSpec) -> Result<Self, SearchError> {
        let (m, n_max) = (spec.m, spec.n_max);
        if !(2..=MAX_CANDIDATES).contains(&m) {
            return Err(SearchError::InvalidSpec(format!(
                "m must be in [2, {MAX_CANDIDATES}], got {m}"
            )));
        }
        if n_max < 1 {
            return Err(SearchError::InvalidSpec("n_max must be at least 1".into()));
        }
        if let Some(a) = spec.axioms.iter().find(|a| **a == Axiom::TiedNoWin) {
            return Err(SearchError::InvalidSpec(format!(
                "axiom {a} is not searchable"
            )));
        }
        let cells_total: u64 = (1..=n_max).map(|n| canonical_count(m, n)).sum();
        if cells_total > spec.limits.max_cells {
            return Err(SearchError::Infeasible {
                cells: cells_total,
                max_cells: spec.limits.max_cells,
                log10_space: cells_total as f64 * ((m as f64) + 1.0).log10(),
            });
        }

        let mut cells = Vec::new();
        let mut index = HashMap::new();
        let mut by_level = vec![Vec::new(); n_max + 1];
        for (n, level) in by_level.iter_mut().enumerate().skip(1) {
            for p in enumerate_profiles(m, n, true) {
                let values: Vec<u8> = p.values().collect();
                index.insert(values.clone(), cells.len());
                level.push(cells.len());
                cells.push(Cell {
                    level: n,
                    unary_dp: duel_allowed(&p),
                    unary_po: pareto_allowed(&p),
                    values,
                    subs: Vec::new(),
                    responsive: Vec::new(),
                });
            }
        }
        for cell in &mut cells {
            let values = cell.values.clone();
            let mut subs = Vec::new();
            let mut responsive = Vec::new();
            let profile = Profile::from_raw(m, values.iter().copied().map(Ballot::new).collect());
            for (v, mult) in runs(&values) {
                if values.len() > 1 {
                    subs.push((v, mult, index[&replace_one(&values, v, None)]));
                }
            }
            for k in 1..=m {
                let applies = spec.tie_clause.applies(&profile, k);
                for (v, _) in runs(&values) {
                    if v != k {
                        responsive.push((k, index[&replace_one(&values, v, Some(k))], applies));
                    }
                }
            }
            cell.subs = subs;
            cell.responsive = responsive;
        }

        let vars = if spec.wants(Axiom::Neutrality) {
            neutral_orbits(m, n_max)
                .into_iter()
                .map(|orbit| Variable {
                    level: orbit.level(),
                    members: orbit
                        .members
                        .iter()
                        .map(|(q, tau)| {
                            let map = (0..=m)
                                .map(|o| tau.apply_to_outcome(Ballot::new(o)).value())
                                .collect();
                            let key: Vec<u8> = q.values().collect();
                            (index[&key], map)
                        })
                        .collect(),
                    domain: orbit.fixed_outcomes.iter().map(|o| o.value()).collect(),
                })
                .collect()
        } else {
            (0..cells.len())
                .map(|c| Variable {
                    level: cells[c].level,
                    members: vec![(c, (0..=m).collect())],
                    domain: (0..=m).collect(),
                })
                .collect()
        };

        let mut prune_counts = BTreeMap::new();
        for &a in &spec.axioms {
            if a != Axiom::Anonymity {
                prune_counts.insert(a, 0);
            }
        }

        Ok(Engine {
            m,
            spec: spec.clone(),
            assigned: vec![None; cells.len()],
            cells,
            index,
            by_level,
            vars,
            nodes: 0,
            prune_counts,
            solutions: Vec::new(),
        })
    }

    fn dfs(&mut self, var: usize) -> ControlFlow<()> {
        if var == self.vars.len() {
            if !self.spec.pruning && self.violation_in_table().is_some() {
                return ControlFlow::Continue(());
            }
            debug_assert!(self.violation_in_table().is_none());
            self.solutions.push(self.to_table());
            if self
                .spec
                .limits
                .max_solutions
                .is_some_and(|cap| self.solutions.len() >= cap)
            {
                return ControlFlow::Break(());
            }
            return ControlFlow::Continue(());
        }
        if self.spec.wants(Axiom::Neutrality) {
            let excluded = self.m as u64 + 1 - self.vars[var].domain.len() as u64;
            *self.prune_counts.entry(Axiom::Neutrality).or_default() += excluded;
        }
        for i in 0..self.vars[var].domain.len() {
            if self
                .spec
                .limits
                .max_nodes
                .is_some_and(|cap| self.nodes >= cap)
            {
                return ControlFlow::Break(());
            }
            self.nodes += 1;
            let o = self.vars[var].domain[i];
            for (c, map) in &self.vars[var].members {
                self.assigned[*c] = Some(map[o as usize]);
            }
            let verdict = if self.spec.pruning {
                self.violation_after(var)
            } else {
                None
            };
            let flow = match verdict {
                Some(axiom) => {
                    *self.prune_counts.entry(axiom).or_default() += 1;
                    ControlFlow::Continue(())
                }
                None => self.dfs(var + 1),
            };
            for (c, _) in &self.vars[var].members {
                self.assigned[*c] = None;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// First axiom violated by constraints touching the cells of `var`.
    fn violation_after(&self, var: usize) -> Option<Axiom> {
        let v = &self.vars[var];
        if self.spec.wants(Axiom::DuelProperty)
            && v.members.iter().any(|(c, _)| !self.unary_ok(*c, true))
        {
            return Some(Axiom::DuelProperty);
        }
        if self.spec.wants(Axiom::Pareto)
            && v.members.iter().any(|(c, _)| !self.unary_ok(*c, false))
        {
            return Some(Axiom::Pareto);
        }
        if self.spec.wants(Axiom::Reducibility) {
            for level in [v.level, v.level + 1] {
                if let Some(cells) = self.by_level.get(level) {
                    if cells.iter().any(|&c| self.rs_status(c) == Some(false)) {
                        return Some(Axiom::Reducibility);
                    }
                }
            }
        }
        if self.spec.wants(Axiom::PositiveResponsiveness)
            && self.by_level[v.level]
                .iter()
                .any(|&c| self.pr_status(c) == Some(false))
        {
            return Some(Axiom::PositiveResponsiveness);
        }
        None
    }

    /// Full recheck of a complete table.
    fn violation_in_table(&self) -> Option<Axiom> {
        let all = 0..self.cells.len();
        if self.spec.wants(Axiom::Neutrality) {
            // Orbit propagation guarantees it when pruning; verify for the unpruned path.
            for var in &self.vars {
                let (rep, _) = var.members[0];
                let o = self.assigned[rep]?;
                if !var.domain.contains(&o) {
                    return Some(Axiom::Neutrality);
                }
            }
        }
        if self.spec.wants(Axiom::DuelProperty) && all.clone().any(|c| !self.unary_ok(c, true)) {
            return Some(Axiom::DuelProperty);
        }
        if self.spec.wants(Axiom::Pareto) && all.clone().any(|c| !self.unary_ok(c, false)) {
            return Some(Axiom::Pareto);
        }
        if self.spec.wants(Axiom::Reducibility)
            && all.clone().any(|c| self.rs_status(c) != Some(true))
        {
            return Some(Axiom::Reducibility);
        }
        if self.spec.wants(Axiom::PositiveResponsiveness)
            && all.clone().any(|c| self.pr_status(c) != Some(true))
        {
            return Some(Axiom::PositiveResponsiveness);
        }
        None
    }

    fn unary_ok(&self, c: usize, duel: bool) -> bool {
        match self.assigned[c] {
            None => true,
            Some(o) if duel => self.cells[c].unary_dp[o as usize],
            Some(o) => self.cells[c].unary_po[o as usize],
        }
    }

    /// `Some(holds)` once the equation is decidable, `None` while deferred.
    fn rs_status(&self, c: usize) -> Option<bool> {
        let cell = &self.cells[c];
        if cell.level < 2 {
            return Some(true);
        }
        let lhs = self.assigned[c]?;
        let mut counts = vec![0usize; self.m as usize + 1];
        for &(_, mult, sub) in &cell.subs {
            counts[self.assigned[sub]? as usize] += mult;
        }
        let reduced: Vec<u8> = counts
            .iter()
            .enumerate()
            .flat_map(|(o, &k)| std::iter::repeat_n(o as u8, k))
            .collect();
        let rhs = self.assigned[self.index[&reduced]]?;
        Some(lhs == rhs)
    }

    fn pr_status(&self, c: usize) -> Option<bool> {
        let before = self.assigned[c]?;
        let mut decided = true;
        for &(k, target, tie_applies) in &self.cells[c].responsive {
            let binds = before == k || (before == 0 && tie_applies);
            if !binds {
                continue;
            }
            match self.assigned[target] {
                Some(after) if after != k => return Some(false),
                Some(_) => {}
                None => decided = false,
            }
        }
        decided.then_some(true)
    }

    fn to_table(&self) -> TabledFunction {
        let mut table = TabledFunction::new(self.m, self.spec.n_max);
        for (cell, o) in self.cells.iter().zip(&self.assigned) {
            let p = Profile::from_raw(
                self.m,
                cell.values.iter().copied().map(Ballot::new).collect(),
            );
            let o = o.expect("complete assignment");
            table
                .assign(p, Ballot::new(o))
                .expect("cells are canonical and in range");
        }
        table
    }
}

/// `(value, multiplicity)` runs of a sorted sequence.
fn runs(values: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, k)) if *last == v => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Sorted copy with one `v` removed, or replaced by `with`.
fn replace_one(values: &[u8], v: u8, with: Option<u8>) -> Vec<u8> {
    let mut out = values.to_vec();
    let i = out.iter().position(|&x| x == v).expect("value present");
    out.remove(i);
    if let Some(k) = with {
        let at = out.partition_point(|&x| x < k);
        out.insert(at, k);
    }
    out
}

/// Outcomes allowed on `p` by the duel property: the intersection of
/// `{0, i, j}` over every pair `i < j` for which `p` is a duel profile.
fn duel_allowed(p: &Profile) -> Vec<bool> {
    let m = p.m();
    let support = p.tally().support();
    let mut allowed = vec![true; m as usize + 1];
    for i in 1..=m {
        for j in i + 1..=m {
            if support.iter().all(|&k| k == i || k == j) {
                for (o, slot) in allowed.iter_mut().enumerate().skip(1) {
                    if o as u8 != i && o as u8 != j {
                        *slot = false;
                    }
                }
            }
        }
    }
    allowed
}

fn pareto_allowed(p: &Profile) -> Vec<bool> {
    let m = p.m();
    match p.tally().support().as_slice() {
        &[k] => (0..=m).map(|o| o == k).collect(),
        _ => vec![true; m as usize + 1],
    }
}
