//! Choose-one voting with abstentions over `m` candidates.
//!
//! The crate models profiles and social choice functions, checks the usual
//! axioms (anonymity, neutrality, the duel property, Pareto optimality,
//! reducibility to subsocieties, positive responsiveness) exhaustively on
//! bounded profile spaces, and searches the space of anonymous functions for
//! everything satisfying a chosen axiom set. At small scopes this certifies
//! that majority rule is the only function satisfying N, DP, PO and RS, and
//! that N, PO and RS are independent.
//!
//! ```
//! use maycheck::profile::Profile;
//! use maycheck::rules::{majority_rule, MAJORITY};
//! use maycheck::axioms::check_rs;
//!
//! let p: Profile = "3 3\n1 1 2".parse().unwrap();
//! assert_eq!(majority_rule(&p).value(), 1);
//! assert!(check_rs(&MAJORITY, 3, 3).unwrap().pass);
//! ```

pub mod axioms;
pub mod cli;
pub mod profile;
pub mod rules;
pub mod search;

pub use axioms::{Axiom, AxiomReport, Checker, TieClause, Witness};
pub use profile::{Ballot, CandidatePermutation, Outcome, Profile, Tally, VoterPermutation};
pub use rules::{SocialChoiceFunction, TabledFunction};
pub use search::{enumerate_functions, SearchResult, SearchSpec};
