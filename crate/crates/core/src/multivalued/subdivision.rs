use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::MultiMap;
use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point};
use crate::maps::{same_space, DigitalMap};
use crate::search::{Cover, End, MapSearch, Order, Search};
use crate::space::Space;

/// A point of `Z^n_r`, stored as integer numerators over the common denominator `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    numerators: Point,
    r: usize,
}

impl ScaledPoint {
    pub fn numerators(&self) -> &Point {
        &self.numerators
    }

    pub fn denominator(&self) -> usize {
        self.r
    }

    /// Coordinate-wise floor.
    pub fn floor(&self) -> Point {
        let r = self.r as i64;
        Point::new(self.numerators.coords().iter().map(|z| z.div_euclid(r)).collect()).expect("nonempty")
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.numerators.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{z}/{}", self.r)?;
        }
        write!(f, ")")
    }
}

/// `S(X, r)`: every point of `X` replaced by an `r x ... x r` block of
/// points with spacing `1/r`. The adjacency is the one of `X`, applied to
/// numerators.
#[derive(Clone, Debug)]
pub struct Subdivision {
    base: Arc<Space>,
    r: usize,
    space: Arc<Space>,
    floor: Vec<usize>,
    fibres: Vec<Vec<usize>>,
}

/// Builds `S(X, r)` for `r >= 1`.
pub fn subdivide(base: &Arc<Space>, r: usize) -> Result<Subdivision> {
    if r == 0 {
        return Err(Error::InvalidArgument("subdivision factor must be at least 1".into()));
    }
    let ri = r as i64;
    let mut numerators = Vec::with_capacity(base.len() * r.pow(base.dim() as u32));
    for p in base.points() {
        let mut block = vec![Vec::new()];
        for &c in p.coords() {
            block = block
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (c * ri..(c + 1) * ri).map(move |z| {
                        let mut next = prefix.clone();
                        next.push(z);
                        next
                    })
                })
                .collect();
        }
        numerators.extend(block.into_iter().map(|v| Point::new(v).expect("nonempty")));
    }
    let space = Space::new(DigitalImage::new(numerators)?, base.adjacency().clone())?.into_arc();
    let mut fibres = vec![Vec::new(); base.len()];
    let floor: Vec<usize> = space
        .points()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let x = base.index_of(&floor_point(z, ri)).expect("block lies over a base point");
            fibres[x].push(i);
            x
        })
        .collect();
    Ok(Subdivision { base: base.clone(), r, space, floor, fibres })
}

fn floor_point(z: &Point, r: i64) -> Point {
    Point::new(z.coords().iter().map(|c| c.div_euclid(r)).collect()).expect("nonempty")
}

impl Subdivision {
    pub fn base(&self) -> &Arc<Space> {
        &self.base
    }

    pub fn factor(&self) -> usize {
        self.r
    }

    /// The subdivided points as a space of numerators.
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scaled_point(&self, i: usize) -> ScaledPoint {
        ScaledPoint { numerators: self.space.point(i).clone(), r: self.r }
    }

    pub fn scaled_points(&self) -> Vec<ScaledPoint> {
        (0..self.len()).map(|i| self.scaled_point(i)).collect()
    }

    /// Base index of `E_r` applied to subdivision index `i`.
    pub fn floor_index(&self, i: usize) -> usize {
        self.floor[i]
    }

    /// `E_r` as a map `S(X, r) -> X`.
    pub fn floor_map(&self) -> DigitalMap {
        DigitalMap::from_table_unchecked(self.space.clone(), self.base.clone(), self.floor.clone())
    }

    /// Subdivision indices lying over base index `x`.
    pub fn fibre(&self, x: usize) -> &[usize] {
        &self.fibres[x]
    }
}

/// The multivalued map `x -> f(E_r^{-1}(x))` induced by `f: S(X, r) -> Y`.
pub fn induced_multimap(f: &DigitalMap, sub: &Subdivision) -> Result<MultiMap> {
    if !same_space(f.domain(), &sub.space) {
        return Err(Error::SpaceMismatch("map is not defined on the subdivision".into()));
    }
    let table = (0..sub.base.len()).map(|x| sub.fibre(x).iter().map(|&i| f.at(i)).collect()).collect();
    MultiMap::from_table(sub.base.clone(), f.codomain().clone(), table)
}

/// Searches for a continuous `f: S(X, r) -> Y` inducing `map`.
pub fn find_generator(map: &MultiMap, r: usize, budget: u64) -> Result<Search<(Subdivision, DigitalMap)>> {
    let sub = subdivide(map.domain(), r)?;
    let candidates: Vec<Vec<usize>> = (0..sub.len()).map(|i| map.values_at(sub.floor[i]).to_vec()).collect();
    let cover = Cover {
        group_of: sub.floor.clone(),
        required: (0..sub.base.len()).map(|x| map.values_at(x).to_vec()).collect(),
    };
    let mut found = None;
    let end = MapSearch::new(&sub.space, map.codomain(), candidates, Order::Bfs)
        .with_cover(cover)
        .with_budget(budget)
        .run(&mut |t| {
            found = Some(t.to_vec());
            ControlFlow::Break(())
        });
    Ok(match (end, found) {
        (_, Some(t)) => {
            let f = DigitalMap::from_table_unchecked(sub.space.clone(), map.codomain().clone(), t);
            Search::Found((sub, f))
        }
        (End::BudgetExceeded, None) => Search::BudgetExceeded,
        _ => Search::Exhausted,
    })
}

/// Every continuous `f: S(X, r) -> Y` inducing `map`.
pub(crate) fn all_generators(map: &MultiMap, r: usize, budget: u64) -> Result<Search<(Subdivision, Vec<DigitalMap>)>> {
    let sub = subdivide(map.domain(), r)?;
    let candidates: Vec<Vec<usize>> = (0..sub.len()).map(|i| map.values_at(sub.floor[i]).to_vec()).collect();
    let cover = Cover {
        group_of: sub.floor.clone(),
        required: (0..sub.base.len()).map(|x| map.values_at(x).to_vec()).collect(),
    };
    let mut found = Vec::new();
    let end = MapSearch::new(&sub.space, map.codomain(), candidates, Order::Bfs)
        .with_cover(cover)
        .with_budget(budget)
        .run(&mut |t| {
            found.push(DigitalMap::from_table_unchecked(sub.space.clone(), map.codomain().clone(), t.to_vec()));
            ControlFlow::Continue(())
        });
    Ok(match end {
        End::BudgetExceeded => Search::BudgetExceeded,
        _ => Search::Found((sub, found)),
    })
}

/// Result of the bounded continuity search for a multivalued map.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MultiContinuity {
    /// A continuous generator exists on `S(X, r)`.
    Generated {
        r: usize,
        #[serde(skip)]
        generator: Option<DigitalMap>,
    },
    /// No generator on `S(X, r)` for any `r <= r_max`. This does not rule out
    /// a generator on a finer subdivision.
    NoGeneratorUpTo {
        r_max: usize,
    },
    BudgetExceeded {
        r: usize,
    },
}

impl MultiContinuity {
    pub fn is_generated(&self) -> bool {
        matches!(self, MultiContinuity::Generated { .. })
    }

    pub fn generator(&self) -> Option<&DigitalMap> {
        match self {
            MultiContinuity::Generated { generator, .. } => generator.as_ref(),
            _ => None,
        }
    }
}

/// Tries `r = 1, ..., r_max` in turn. `budget` applies to each `r` separately.
pub fn is_continuous_multimap(map: &MultiMap, r_max: usize, budget: u64) -> Result<MultiContinuity> {
    for r in 1..=r_max {
        match find_generator(map, r, budget)? {
            Search::Found((_, f)) => return Ok(MultiContinuity::Generated { r, generator: Some(f) }),
            Search::BudgetExceeded => return Ok(MultiContinuity::BudgetExceeded { r }),
            Search::Exhausted => {}
        }
    }
    Ok(MultiContinuity::NoGeneratorUpTo { r_max })
}

/// Whether `map` fixes every point of `subset` as a singleton, takes values
/// in `subset`, and has a continuous generator with `r <= r_max`.
pub fn is_multivalued_retraction(
    map: &MultiMap,
    subset: &DigitalImage,
    r_max: usize,
    budget: u64,
) -> Result<MultiContinuity> {
    if !subset.is_subset_of(map.domain().image()) {
        return Err(Error::InvalidArgument("retract is not a subset of the domain".into()));
    }
    let cod = map.codomain();
    let fixes = subset.points().iter().all(|a| {
        let x = map.domain().index_of(a).expect("subset of domain");
        map.values_at(x).len() == 1 && cod.point(map.values_at(x)[0]) == a
    });
    if cod.image() != subset || cod.adjacency() != map.domain().adjacency() || !fixes {
        return Ok(MultiContinuity::NoGeneratorUpTo { r_max: 0 });
    }
    is_continuous_multimap(map, r_max, budget)
}

/// Lifts a generator on `S(X, r)` to one on `S(X, r * s)` by composing with
/// the floor map `S(X, rs) -> S(X, r)`.
pub fn refine_generator(generator: &DigitalMap, coarse: &Subdivision, s: usize) -> Result<(Subdivision, DigitalMap)> {
    if !same_space(generator.domain(), &coarse.space) {
        return Err(Error::SpaceMismatch("generator is not defined on the subdivision".into()));
    }
    let fine = subdivide(&coarse.base, coarse.r * s)?;
    let si = s as i64;
    let table = fine
        .space
        .points()
        .iter()
        .map(|z| generator.at(coarse.space.index_of(&floor_point(z, si)).expect("coarse point exists")))
        .collect();
    let f = DigitalMap::from_table_unchecked(fine.space.clone(), generator.codomain().clone(), table);
    Ok((fine, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_floor() {
        let x = Space::with_spec(DigitalImage::new(vec![Point::from([0, 0]), Point::from([1, 1])]).unwrap(), "c2")
            .unwrap()
            .into_arc();
        let s = subdivide(&x, 3).unwrap();
        assert_eq!(s.len(), 18);
        assert!(s.scaled_points().iter().all(|p| x.image().contains(&p.floor())));
        assert_eq!(s.scaled_point(0).to_string(), "(0/3,0/3)");
        assert!(subdivide(&x, 0).is_err());
    }

    #[test]
    fn interval_onto_longer_interval() {
        let x = Space::interval(0, 1).unwrap().into_arc();
        let y = Space::interval(0, 2).unwrap().into_arc();
        let f = MultiMap::from_pairs(
            x,
            y,
            vec![
                (Point::from([0]), vec![Point::from([0]), Point::from([1])]),
                (Point::from([1]), vec![Point::from([2])]),
            ],
        )
        .unwrap();
        let c = is_continuous_multimap(&f, 3, 10_000).unwrap();
        let MultiContinuity::Generated { r: 2, generator: Some(g) } = c else { panic!("generated at r = 2") };
        let sub = subdivide(f.domain(), 2).unwrap();
        assert_eq!(induced_multimap(&g, &sub).unwrap(), f);
        let (fine, g4) = refine_generator(&g, &sub, 2).unwrap();
        assert!(g4.is_continuous());
        assert_eq!(induced_multimap(&g4, &fine).unwrap(), f);
    }
}
