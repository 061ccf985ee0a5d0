use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{same_space, DigitalMap};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::search::{End, MapSearch, Order};
use crate::space::Space;

/// A point `x` with `f(x)` equal or adjacent to `x`, if any.
pub fn approximate_fixed_point(f: &DigitalMap) -> Result<Option<Point>> {
    if !same_space(f.domain(), f.codomain()) {
        return Err(Error::SpaceMismatch("approximate fixed points need a self-map".into()));
    }
    let s = f.domain();
    Ok((0..s.len()).find(|&x| s.close(x, f.at(x))).map(|x| s.point(x).clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AfppOutcome {
    /// Every continuous self-map has an approximate fixed point.
    Holds {
        nodes: u64,
    },
    /// A continuous self-map without one.
    #[serde(serialize_with = "serialize_witness")]
    Fails(DigitalMap),
    BudgetExceeded,
}

fn serialize_witness<S: serde::Serializer>(f: &DigitalMap, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(f.domain().len()))?;
    for (x, y) in f.pairs() {
        m.serialize_entry(&x.to_string(), &y.to_string())?;
    }
    m.end()
}

/// Decides the approximate fixed point property by searching for a
/// continuous self-map that moves every point outside its closed
/// neighbourhood. `budget` counts search nodes.
pub fn has_afpp(space: &Arc<Space>, budget: u64) -> AfppOutcome {
    let n = space.len();
    let candidates = (0..n).map(|x| (0..n).filter(|&y| !space.close(x, y)).collect()).collect();
    let mut found = None;
    let mut search = MapSearch::new(space, space, candidates, Order::Bfs).with_budget(budget);
    let end = search.run(&mut |t| {
        found = Some(t.to_vec());
        ControlFlow::Break(())
    });
    match (end, found) {
        (_, Some(t)) => AfppOutcome::Fails(DigitalMap::from_table_unchecked(space.clone(), space.clone(), t)),
        (End::BudgetExceeded, None) => AfppOutcome::BudgetExceeded,
        _ => AfppOutcome::Holds { nodes: search.nodes() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DigitalImage;

    #[test]
    fn unit_interval_has_it_square_does_not() {
        let i = Space::interval(0, 1).unwrap().into_arc();
        assert!(matches!(has_afpp(&i, 100), AfppOutcome::Holds { .. }));
        let sq = Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1]).unwrap(), "c1").unwrap().into_arc();
        let AfppOutcome::Fails(f) = has_afpp(&sq, 1000) else { panic!("square with c1 lacks the property") };
        assert!(f.is_continuous());
        assert_eq!(approximate_fixed_point(&f).unwrap(), None);
        let two = Space::line(&[0, 2]).unwrap().into_arc();
        assert!(matches!(has_afpp(&two, 100), AfppOutcome::Fails(_)));
        assert_eq!(has_afpp(&two, 0), AfppOutcome::BudgetExceeded);
    }
}
