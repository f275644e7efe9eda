//! The blob algebra `b_n` as a presented algebra and as a diagram algebra, with
//! walk-indexed bases, ideals, standard modules and the diamond-grid combinatorics.

pub mod basis;
pub mod diagram;
pub mod diamond;
pub mod error;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod ring;
pub mod tower;
mod union_find;
pub mod walk;
pub mod word;

use std::str::FromStr;

pub use basis::{regular_basis, squared_basis, SquaredBasis};
pub use diagram::{enumerate_bn, BlobDiagram, LinComb, LoopTally, ScaledDiagram};
pub use diamond::{envelope_word, pi, DiamondWalk};
pub use error::{Error, Result};
pub use presentation::{is_reduced_proxy, phi, phi_equal};
pub use report::{Check, Report};
pub use ring::{PrimeField, RingElem, DEFAULT_PRIME};
pub use tower::{Specialization, StandardModule, Tower};
pub use walk::{enumerate_walks, word_of_path, word_set, Walk};
pub use word::{Gen, Word};

/// Default seed for the random specializations.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Identities,
    Redux,
    Diamond,
    Walks,
    Ideals,
    Tower,
    Bases,
    Appendix,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Relations,
        Suite::Identities,
        Suite::Redux,
        Suite::Diamond,
        Suite::Walks,
        Suite::Ideals,
        Suite::Tower,
        Suite::Bases,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Identities => "identities",
            Suite::Redux => "redux",
            Suite::Diamond => "diamond",
            Suite::Walks => "walks",
            Suite::Ideals => "ideals",
            Suite::Tower => "tower",
            Suite::Bases => "bases",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite (or all of them) at strand count `n`.
pub fn run_suite(suite: Suite, n: usize, prime: u64, seed: u64) -> Result<Vec<Report>> {
    let tower = || Tower::new(n, prime, seed);
    Ok(match suite {
        Suite::Relations => vec![presentation::check_relations(n)?],
        Suite::Identities => vec![presentation::check_identities(n)?],
        Suite::Redux => {
            if n < 3 {
                let mut r = Report::new("redux", n);
                r.note("needs n >= 3");
                vec![r]
            } else {
                vec![presentation::check_redux(n)?]
            }
        }
        Suite::Diamond => vec![walk::check_diamonds(n)?],
        Suite::Walks => vec![walk::check_walks(n)?],
        Suite::Ideals => {
            let t = tower()?;
            vec![t.check_ideal_props()?, t.check_modules()?]
        }
        Suite::Tower => vec![tower()?.check_tower()?],
        Suite::Bases => vec![basis::verify_basis_exact(n)?, tower()?.check_filtration()?],
        Suite::Appendix => vec![diamond::check_diamond(n)?],
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, n, prime, seed)?);
            }
            out
        }
    })
}
