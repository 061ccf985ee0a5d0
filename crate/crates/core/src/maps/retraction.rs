use std::ops::ControlFlow;
use std::sync::Arc;

use super::DigitalMap;
use crate::error::{Error, Result};
use crate::lattice::DigitalImage;
use crate::search::{End, MapSearch, Order, Search};
use crate::space::Space;

/// Whether `r` is a continuous map onto `subset` that fixes every point of it.
pub fn is_retraction(r: &DigitalMap, subset: &DigitalImage) -> Result<bool> {
    if !subset.is_subset_of(r.domain().image()) {
        return Err(Error::InvalidArgument("retract is not a subset of the domain".into()));
    }
    if r.codomain().image() != subset || r.codomain().adjacency() != r.domain().adjacency() {
        return Ok(false);
    }
    let fixes = subset.points().iter().all(|a| r.apply(a).is_ok_and(|b| b == a));
    Ok(fixes && r.is_continuous())
}

/// Searches for a retraction of `space` onto `subset`.
///
/// Points of the subset are pinned; the rest are assigned breadth-first from
/// them so that continuity failures surface early. `budget` counts search
/// nodes.
pub fn exists_retraction(space: &Arc<Space>, subset: &DigitalImage, budget: u64) -> Result<Search<DigitalMap>> {
    let target = Arc::new(space.subspace(subset)?);
    let all: Vec<usize> = (0..target.len()).collect();
    let candidates = space
        .points()
        .iter()
        .map(|p| match target.index_of(p) {
            Some(j) => vec![j],
            None => all.clone(),
        })
        .collect();
    let mut found = None;
    let end = MapSearch::new(space, &target, candidates, Order::Bfs).with_budget(budget).run(&mut |t| {
        found = Some(t.to_vec());
        ControlFlow::Break(())
    });
    Ok(match (end, found) {
        (_, Some(t)) => Search::Found(DigitalMap::from_table_unchecked(space.clone(), target, t)),
        (End::BudgetExceeded, None) => Search::BudgetExceeded,
        _ => Search::Exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Point;

    #[test]
    fn endpoints_of_a_path_are_not_a_retract() {
        let x = Space::interval(0, 2).unwrap().into_arc();
        let ends = DigitalImage::from_ints(&[0, 2]).unwrap();
        assert_eq!(exists_retraction(&x, &ends, 1000).unwrap(), Search::Exhausted);
        let left = DigitalImage::from_ints(&[0, 1]).unwrap();
        let r = exists_retraction(&x, &left, 1000).unwrap().found().unwrap();
        assert!(is_retraction(&r, &left).unwrap());
        assert!(r.apply(&Point::from([2])).is_ok());
        assert_eq!(exists_retraction(&x, &left, 0).unwrap(), Search::BudgetExceeded);
    }
}
