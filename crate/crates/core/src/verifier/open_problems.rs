//! Bounded counterexample searches for questions the theory leaves open.

use std::sync::Arc;

use serde::Serialize;

use super::families::{multi_tables, subsets, InstanceFamily};
use super::SEARCH_BUDGET;
use crate::adjacency::ProductKind;
use crate::error::{Error, Result};
use crate::lattice::DigitalImage;
use crate::maps::{exists_retraction, has_afpp, AfppOutcome};
use crate::multivalued::{is_continuous_multimap, MultiContinuity, MultiMap};
use crate::search::Search;
use crate::space::Space;

/// Ids accepted by [`search_open_problem`].
pub const OPEN_PROBLEMS: &[&str] = &[
    "tensor-retract-factor",
    "tensor-afpp-factor",
    "cartesian-afpp-factor",
    "tensor-multicont-converse",
    "cartesian-multicont-converse",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OpenProblemReport {
    /// Every instance of the family was examined.
    NoCounterexampleFound {
        instances: u64,
    },
    Counterexample {
        witness: String,
    },
    BudgetExceeded {
        instances: u64,
    },
}

enum Halt {
    Budget,
    Found(String),
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

struct Counter {
    used: u64,
    budget: u64,
}

impl Counter {
    fn tick(&mut self) -> std::result::Result<(), Halt> {
        if self.used >= self.budget {
            return Err(Halt::Budget);
        }
        self.used += 1;
        Ok(())
    }
}

fn settle<T>(s: Search<T>) -> std::result::Result<Option<T>, Halt> {
    match s {
        Search::Found(t) => Ok(Some(t)),
        Search::Exhausted => Ok(None),
        Search::BudgetExceeded => Err(Halt::Budget),
    }
}

fn product(a: &Arc<Space>, b: &Arc<Space>, kind: ProductKind) -> Result<Arc<Space>> {
    Ok(Space::product(&[a.as_ref(), b.as_ref()], kind)?.into_arc())
}

/// Runs the named search over pairs of images from `family`. `budget`
/// bounds the number of instances examined.
pub fn search_open_problem(id: &str, family: &InstanceFamily, budget: u64) -> Result<OpenProblemReport> {
    if !OPEN_PROBLEMS.contains(&id) {
        return Err(Error::UnknownCheck(id.to_string()));
    }
    let images = family.images()?;
    let mut counter = Counter { used: 0, budget };
    let result = match id {
        "tensor-retract-factor" => retract_factor(&images, &mut counter),
        "tensor-afpp-factor" => afpp_factor(&images, ProductKind::Tensor, &mut counter),
        "cartesian-afpp-factor" => afpp_factor(&images, ProductKind::Cartesian, &mut counter),
        "tensor-multicont-converse" => multicont_converse(&images, ProductKind::Tensor, &mut counter),
        _ => multicont_converse(&images, ProductKind::Cartesian, &mut counter),
    };
    match result {
        Ok(()) => Ok(OpenProblemReport::NoCounterexampleFound { instances: counter.used }),
        Err(Halt::Found(witness)) => Ok(OpenProblemReport::Counterexample { witness }),
        Err(Halt::Budget) => Ok(OpenProblemReport::BudgetExceeded { instances: counter.used }),
        Err(Halt::Failed(e)) => Err(e),
    }
}

/// A tensor-product retract whose factors are not all retracts.
fn retract_factor(images: &[Arc<Space>], c: &mut Counter) -> std::result::Result<(), Halt> {
    let mut retracts = Vec::new();
    for x in images {
        for a in subsets(x) {
            c.tick()?;
            let r = settle(exists_retraction(x, &a, SEARCH_BUDGET)?)?.is_some();
            retracts.push((x.clone(), a, r));
        }
    }
    for (x1, a1, r1) in &retracts {
        for (x2, a2, r2) in &retracts {
            if *r1 && *r2 {
                continue;
            }
            c.tick()?;
            let x = product(x1, x2, ProductKind::Tensor)?;
            let a = DigitalImage::product(&[a1, a2])?;
            if let Some(r) = settle(exists_retraction(&x, &a, SEARCH_BUDGET)?)? {
                let which = if *r1 { (a2, x2) } else { (a1, x1) };
                return Err(Halt::Found(format!(
                    "{a:?} is a retract of {x:?} via {r:?}, but {:?} is not a retract of {:?}",
                    which.0, which.1
                )));
            }
        }
    }
    Ok(())
}

fn afpp(x: &Arc<Space>) -> std::result::Result<bool, Halt> {
    match has_afpp(x, SEARCH_BUDGET) {
        AfppOutcome::Holds { .. } => Ok(true),
        AfppOutcome::Fails(_) => Ok(false),
        AfppOutcome::BudgetExceeded => Err(Halt::Budget),
    }
}

/// A product with the approximate fixed point property over a factor without it.
fn afpp_factor(images: &[Arc<Space>], kind: ProductKind, c: &mut Counter) -> std::result::Result<(), Halt> {
    let mut has = Vec::new();
    for x in images {
        c.tick()?;
        has.push(afpp(x)?);
    }
    for (i, x1) in images.iter().enumerate() {
        for (j, x2) in images.iter().enumerate() {
            if has[i] && has[j] {
                continue;
            }
            c.tick()?;
            let x = product(x1, x2, kind)?;
            if afpp(&x)? {
                let bad = if has[i] { x2 } else { x1 };
                return Err(Halt::Found(format!(
                    "{kind} product {x:?} has the property but the factor {bad:?} does not"
                )));
            }
        }
    }
    Ok(())
}

/// A continuous product multimap with a factor that is provably not
/// continuous (it fails to preserve connectivity). Factors have at most two
/// points on each side; the product search stops at `r = 2`.
fn multicont_converse(images: &[Arc<Space>], kind: ProductKind, c: &mut Counter) -> std::result::Result<(), Halt> {
    let small: Vec<&Arc<Space>> = images.iter().filter(|x| x.len() <= 2).collect();
    let mut maps = Vec::new();
    for x in &small {
        for y in &small {
            for t in multi_tables(x, y) {
                maps.push(MultiMap::from_table((*x).clone(), (*y).clone(), t)?);
            }
        }
    }
    for f1 in &maps {
        for f2 in &maps {
            if f1.is_connectivity_preserving() && f2.is_connectivity_preserving() {
                continue;
            }
            c.tick()?;
            let f = MultiMap::product(&[f1, f2], kind)?;
            match is_continuous_multimap(&f, 2, SEARCH_BUDGET)? {
                MultiContinuity::Generated { r, .. } => {
                    let bad = if f1.is_connectivity_preserving() { f2 } else { f1 };
                    return Err(Halt::Found(format!(
                        "{kind} product {f:?} is generated on S(X,{r}) but the factor {bad:?} from {:?} to {:?} does not preserve connectivity",
                        bad.domain(),
                        bad.codomain()
                    )));
                }
                MultiContinuity::BudgetExceeded { .. } => return Err(Halt::Budget),
                MultiContinuity::NoGeneratorUpTo { .. } => {}
            }
        }
    }
    Ok(())
}
